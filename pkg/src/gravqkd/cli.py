"""Command-line frontend: single-shot queries, sweeps, figure presets, CSV.

Output schema is one fixed header; columns a subcommand does not produce
stay empty.  Numbers are serialized with repr(float), the shortest decimal
that round-trips double precision, so emitted files are byte-deterministic
and re-parse exactly.

Exit codes: 0 success, 2 configuration error, 3 numerical/physical domain
error.  Errors print one line to stderr: gravqkd: error: <category>: <message>.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import config as configmod
from . import freespace, keyrate, relativity
from .constants import C_LIGHT, GEO_HEIGHT
from .errors import ConfigError, DomainError

CSV_HEADER = ("h_m,theta_rad,delta,delta_sch,delta_rot,delta_h,theta_overlap,"
              "T_total,loss_db,r,s,t,lambda1,lambda2,lambda3,I_ab_bits,S_aE_bits,K_bits,mu")
_COLUMNS = CSV_HEADER.split(",")

COMMANDS = ("delta", "overlap", "link", "keyrate", "sweep", "reproduce")
FIGURES = ("fig1", "fig2", "fig3")

# Figure presets: applied after the config file, before explicit flags, so
# individual keys remain overridable.  The reference transmissivity for the
# fixed-loss sweeps is 1 dB; the bandwidth triple for fig2/fig3 is built in.
_FIG23_PRESET = {
    "run.mode": "gravity_only",
    "run.lambda3": "diagonal",
    "run.noise": "chi",
    "run.delta_method": "perturbative",
    "protocol.variance": 10.0,
    "protocol.excess_noise": 0.001,
    "protocol.transmissivity": 10.0 ** -0.1,
    "protocol.overlap": 1.0,
    "packet.omega0_hz": 5e14,
    "sweep.parameter": "height",
    "sweep.start": 0.0,
    "sweep.stop": GEO_HEIGHT,
    "sweep.points": 500,
}
PRESETS = {
    "fig1": {
        "run.mode": "full_link",
        "run.zenith": 0.0,
        "run.loss_model": "freespace",
        "sweep.parameter": "height",
        "sweep.start": 1e3,
        "sweep.stop": GEO_HEIGHT,
        "sweep.points": 200,
    },
    "fig2": _FIG23_PRESET,
    "fig3": _FIG23_PRESET,
}
FIG23_BANDWIDTHS_HZ = (0.8e6, 1.0e6, 1.2e6)


def _fmt(value):
    return "" if value is None else repr(float(value))


def _make_row(cols):
    return ",".join(_fmt(cols.get(name)) for name in _COLUMNS)


def _comment_header(config, extra=()):
    lines = []
    for name in sorted(config):
        if name == "run.out":
            # The destination path is plumbing, not a run parameter, and
            # would break byte-identity between runs to different places.
            continue
        value = config[name]
        if value is None:
            text = ""
        elif isinstance(value, float):
            text = repr(value)
        else:
            text = str(value)
        lines.append(f"# {name} = {text}")
    lines.append(f"# constants.c_m_per_s = {C_LIGHT!r}")
    for name, text in extra:
        lines.append(f"# {name} = {text}")
    return lines


def _emit(lines, out_path):
    text = "\n".join(lines) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


class _Objects:
    """Config dict resolved into the model value objects."""

    def __init__(self, config):
        try:
            self.earth = configmod.earth_from_config(config)
            self.packet = configmod.packet_from_config(config)
            self.setup = configmod.setup_from_config(config)
            self.protocol = configmod.protocol_from_config(config)
        except DomainError as exc:
            # Out-of-domain combinations of in-range values are still a
            # configuration problem when they come from config sources.
            raise ConfigError(str(exc)) from None
        self.config = config


def _resolved_shift(objects):
    # The shift a single-shot command reports: an explicit override wins
    # over the height-derived value.
    cfg = objects.config
    override = cfg["run.delta_override"]
    if override is not None:
        return relativity.FrequencyShift(override, None, None, None, "override")
    if cfg["run.delta_method"] == "exact":
        return relativity.delta_exact(objects.earth, cfg["run.height"])
    return relativity.delta_perturbative(objects.earth, cfg["run.height"])


def _shift_columns(shift):
    return {
        "delta": shift.delta_total,
        "delta_sch": shift.delta_schwarzschild,
        "delta_rot": shift.delta_rotation,
        "delta_h": shift.delta_higher,
    }


def _link_transmissivity(objects):
    cfg = objects.config
    geom = freespace.LinkGeometry(cfg["run.height"], cfg["run.zenith"],
                                  objects.earth.equatorial_radius)
    if cfg["run.loss_model"] == "fiber_equivalent":
        return freespace.fiber_equivalent_transmissivity(
            freespace.slant_distance(geom), cfg["setup.fiber_loss_db_per_km"])
    return freespace.total_transmissivity(geom, objects.setup)


def cmd_delta(objects):
    cfg = objects.config
    cols = {"h_m": cfg["run.height"], "theta_rad": cfg["run.zenith"]}
    cols.update(_shift_columns(_resolved_shift(objects)))
    return [CSV_HEADER, _make_row(cols)]


def cmd_overlap(objects):
    cfg = objects.config
    shift = _resolved_shift(objects)
    theta = relativity.overlap_closed_form(shift.delta_total, objects.packet)
    cols = {"h_m": cfg["run.height"], "theta_rad": cfg["run.zenith"],
            "theta_overlap": theta}
    cols.update(_shift_columns(shift))
    return [CSV_HEADER, _make_row(cols)]


def cmd_link(objects):
    cfg = objects.config
    t_total = _link_transmissivity(objects)
    cols = {"h_m": cfg["run.height"], "theta_rad": cfg["run.zenith"],
            "T_total": t_total,
            "loss_db": freespace.transmissivity_to_db(t_total)}
    return [CSV_HEADER, _make_row(cols)]


def cmd_keyrate(objects):
    cfg = objects.config
    cols = {"h_m": cfg["run.height"], "theta_rad": cfg["run.zenith"]}

    # Overlap: from an explicit shift override when given, else the
    # configured protocol overlap as-is.
    override = cfg["run.delta_override"]
    if override is not None:
        shift = relativity.FrequencyShift(override, None, None, None, "override")
        cols.update(_shift_columns(shift))
        theta = min(relativity.overlap_closed_form(override, objects.packet), 1.0)
    else:
        theta = objects.protocol.overlap

    if cfg["run.mode"] == "full_link":
        t_chan = _link_transmissivity(objects)
    else:
        t_chan = objects.protocol.transmissivity

    params = replace(objects.protocol, overlap=theta, transmissivity=t_chan)
    result = keyrate.key_rate(params)

    reference = keyrate.key_rate(replace(params, overlap=1.0)).key_rate
    mu = keyrate.change_rate_mu(result.key_rate, reference) if reference > 0.0 else None

    cols.update({
        "theta_overlap": theta,
        "T_total": t_chan,
        "loss_db": freespace.transmissivity_to_db(t_chan),
        "r": result.r, "s": result.s, "t": result.t,
        "lambda1": result.lambda1, "lambda2": result.lambda2, "lambda3": result.lambda3,
        "I_ab_bits": result.mutual_information,
        "S_aE_bits": result.holevo,
        "K_bits": result.key_rate,
        "mu": mu,
    })
    return [CSV_HEADER, _make_row(cols)]


def _point_columns(point):
    cols = {"h_m": point.height, "theta_rad": point.zenith_angle,
            "theta_overlap": point.overlap, "T_total": point.transmissivity,
            "mu": point.mu}
    if point.shift is not None:
        cols.update(_shift_columns(point.shift))
    if point.transmissivity is not None:
        cols["loss_db"] = freespace.transmissivity_to_db(point.transmissivity)
    if point.result is not None:
        result = point.result
        cols.update({
            "r": result.r, "s": result.s, "t": result.t,
            "lambda1": result.lambda1, "lambda2": result.lambda2,
            "lambda3": result.lambda3,
            "I_ab_bits": result.mutual_information,
            "S_aE_bits": result.holevo,
            "K_bits": result.key_rate,
        })
    return cols


def _sweep_spec(objects, grid):
    cfg = objects.config
    try:
        return keyrate.SweepSpec(
            parameter=cfg["sweep.parameter"],
            grid=grid,
            mode=cfg["run.mode"],
            protocol=objects.protocol,
            packet=objects.packet,
            earth=objects.earth,
            setup=objects.setup,
            height=cfg["run.height"],
            zenith_angle=cfg["run.zenith"],
            delta_method=cfg["run.delta_method"],
            loss_model=cfg["run.loss_model"],
            fiber_loss_db_per_km=cfg["setup.fiber_loss_db_per_km"],
        )
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def _linear_grid(cfg):
    return np.linspace(cfg["sweep.start"], cfg["sweep.stop"], cfg["sweep.points"])


def _log_grid(cfg):
    if cfg["sweep.start"] <= 0.0:
        raise ConfigError("sweep.start must be > 0 for a logarithmic grid")
    return np.geomspace(cfg["sweep.start"], cfg["sweep.stop"], cfg["sweep.points"])


def _sweep_lines(objects, grid, extra_comments=(), grid_note=None):
    spec = _sweep_spec(objects, grid)
    points = keyrate.run_sweep(spec)
    notes = list(extra_comments)
    if grid_note:
        notes.append(("grid", grid_note))
    lines = _comment_header(objects.config, notes)
    lines.append(CSV_HEADER)
    lines.extend(_make_row(_point_columns(p)) for p in points)
    return lines


def cmd_sweep(objects):
    return _sweep_lines(objects, _linear_grid(objects.config),
                        grid_note="linear sweep.start..sweep.stop, sweep.points values")


def cmd_reproduce(objects, figure):
    cfg = objects.config
    out_dir = cfg["run.out"]
    if not out_dir:
        raise ConfigError("reproduce writes multiple files: pass --out <directory>")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    if figure == "fig1":
        lines = _sweep_lines(objects, _log_grid(cfg),
                             grid_note="logarithmic sweep.start..sweep.stop, sweep.points values")
        path = out / "fig1.csv"
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    else:
        reference = keyrate.key_rate(replace(objects.protocol, overlap=1.0))
        extra = [("k_ref_bits", repr(reference.key_rate))] if figure == "fig3" else []
        for sigma in FIG23_BANDWIDTHS_HZ:
            sub_config = dict(cfg)
            sub_config["packet.sigma_hz"] = sigma
            sub_objects = _Objects(sub_config)
            lines = _sweep_lines(sub_objects, _linear_grid(sub_config),
                                 extra_comments=extra,
                                 grid_note="linear sweep.start..sweep.stop, sweep.points values")
            path = out / f"{figure}_sigma_{sigma / 1e6:g}MHz.csv"
            path.write_text("\n".join(lines) + "\n")
            written.append(path)

    return [f"wrote {p}" for p in written]


def _split_dotted(argv):
    # Dotted-key overrides are not statically declared anywhere argparse
    # could see, so pull them out first.  A dotted flag is --section.key,
    # value either inline (=) or the next token.
    plain = []
    dotted = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token.startswith("--") and "." in token.split("=", 1)[0]:
            name, eq, inline = token[2:].partition("=")
            if eq:
                dotted.append((name, inline))
            else:
                if i + 1 >= len(argv):
                    raise ConfigError(f"flag --{name} needs a value")
                dotted.append((name, argv[i + 1]))
                i += 1
        else:
            plain.append(token)
        i += 1
    return plain, dotted


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gravqkd",
        description="Satellite CV-QKD key rates under gravitational frequency shift.",
        epilog="Any configuration key is settable as --section.key value; "
               "see the config registry for the full list.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("figure", nargs="?", choices=FIGURES,
                        help="required for the reproduce command")
    parser.add_argument("--config", metavar="PATH", help="key = value config file")
    parser.add_argument("--out", metavar="PATH",
                        help="output file (directory for reproduce)")
    parser.add_argument("--mode", choices=keyrate.VALID_MODES)
    parser.add_argument("--lambda3", choices=keyrate.VALID_LAMBDA3_CONVENTIONS)
    parser.add_argument("--noise", choices=keyrate.VALID_NOISE_CONVENTIONS)
    parser.add_argument("--loss-model", dest="loss_model",
                        choices=keyrate.VALID_LOSS_MODELS)
    return parser


_NAMED_FLAG_KEYS = {
    "out": "run.out",
    "mode": "run.mode",
    "lambda3": "run.lambda3",
    "noise": "run.noise",
    "loss_model": "run.loss_model",
}


def _resolve(args, dotted):
    config = configmod.default_config()
    if args.config is not None:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        configmod.parse_config_text(config, text)
    if args.command == "reproduce":
        config.update(PRESETS[args.figure])
    for attr, key in _NAMED_FLAG_KEYS.items():
        value = getattr(args, attr)
        if value is not None:
            configmod.set_value(config, key, value)
    for name, text in dotted:
        configmod.set_value(config, name, text)
    return config


def _run(argv):
    plain, dotted = _split_dotted(argv)
    parser = _build_parser()
    args = parser.parse_args(plain)
    if args.command == "reproduce" and args.figure is None:
        raise ConfigError("reproduce needs a figure: fig1, fig2, or fig3")
    if args.command != "reproduce" and args.figure is not None:
        raise ConfigError(f"unexpected argument {args.figure!r} for {args.command}")

    config = _resolve(args, dotted)
    objects = _Objects(config)

    if args.command == "delta":
        lines = cmd_delta(objects)
    elif args.command == "overlap":
        lines = cmd_overlap(objects)
    elif args.command == "link":
        lines = cmd_link(objects)
    elif args.command == "keyrate":
        lines = cmd_keyrate(objects)
    elif args.command == "sweep":
        lines = cmd_sweep(objects)
    else:
        for line in cmd_reproduce(objects, args.figure):
            print(line)
        return 0

    _emit(lines, config["run.out"])
    return 0


def main(argv=None):
    try:
        return _run(sys.argv[1:] if argv is None else list(argv))
    except ConfigError as exc:
        print(f"gravqkd: error: config: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"gravqkd: error: domain: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
