"""Flat key = value configuration with defaults, file, and flag layers.

Keys are dotted (section.name) and live in a single registry that owns the
default, the parser, and the accepted range of each.  Precedence is
defaults < config file < command-line overrides.  Unknown keys and
out-of-range values raise ConfigError naming the key and what it accepts.
"""

import math
from dataclasses import dataclass

from .constants import C_LIGHT, EARTH_KERR_LENGTH, EARTH_MASS_LENGTH, EARTH_OMEGA, EARTH_RADIUS, GEO_HEIGHT
from .errors import ConfigError
from .freespace import OpticalSetup
from .keyrate import (
    VALID_DELTA_METHODS,
    VALID_LAMBDA3_CONVENTIONS,
    VALID_LOSS_MODELS,
    VALID_MODES,
    VALID_NOISE_CONVENTIONS,
    VALID_SWEEP_PARAMETERS,
    ProtocolParams,
)
from .relativity import EarthModel, WavePacket


def _parse_float(text):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def _parse_int(text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"not an integer: {text!r}") from None


def _parse_str(text):
    return text


def _parse_optional_float(text):
    if text.strip().lower() in ("", "none"):
        return None
    return _parse_float(text)


def _parse_optional_str(text):
    return text if text.strip() else None


@dataclass(frozen=True)
class ConfigKey:
    """One registry entry: default value, parser, and validity predicate."""

    default: object
    parse: callable
    accepts: str
    check: callable = lambda v: True


def _choice(options):
    return ConfigKey(options[0], _parse_str, "one of " + ", ".join(options),
                     lambda v, _o=options: v in _o)


REGISTRY = {
    "earth.mass_length": ConfigKey(EARTH_MASS_LENGTH, _parse_float,
                                   "geometrized mass in meters, > 0", lambda v: v > 0.0),
    "earth.radius": ConfigKey(EARTH_RADIUS, _parse_float,
                              "planet radius in meters, > 0", lambda v: v > 0.0),
    "earth.angular_velocity": ConfigKey(EARTH_OMEGA, _parse_float,
                                        "rotation rate in rad/s, >= 0", lambda v: v >= 0.0),
    "earth.kerr_length": ConfigKey(EARTH_KERR_LENGTH, _parse_float,
                                   "spin parameter in meters, >= 0", lambda v: v >= 0.0),
    "earth.orbit_direction": ConfigKey(1, _parse_int, "+1 or -1", lambda v: v in (1, -1)),
    "packet.omega0_hz": ConfigKey(5e14, _parse_float,
                                  "peak frequency in Hz, > 0", lambda v: v > 0.0),
    "packet.sigma_hz": ConfigKey(1e6, _parse_float,
                                 "bandwidth in Hz, > 0", lambda v: v > 0.0),
    "setup.efficiency": ConfigKey(0.4, _parse_float,
                                  "in (0, 1]", lambda v: 0.0 < v <= 1.0),
    "setup.alpha0": ConfigKey(5e-6, _parse_float,
                              "extinction in 1/m, >= 0", lambda v: v >= 0.0),
    "setup.scale_height": ConfigKey(6600.0, _parse_float,
                                    "meters, > 0", lambda v: v > 0.0),
    "setup.beam_waist": ConfigKey(0.2, _parse_float, "meters, > 0", lambda v: v > 0.0),
    "setup.aperture": ConfigKey(0.4, _parse_float, "meters, > 0", lambda v: v > 0.0),
    "setup.wavelength": ConfigKey(C_LIGHT / 5e14, _parse_float,
                                  "meters, > 0", lambda v: v > 0.0),
    "setup.fiber_loss_db_per_km": ConfigKey(0.2, _parse_float,
                                            "dB/km, >= 0", lambda v: v >= 0.0),
    "protocol.variance": ConfigKey(10.0, _parse_float,
                                   "shot-noise units, >= 1", lambda v: v >= 1.0),
    "protocol.excess_noise": ConfigKey(0.001, _parse_float,
                                       "shot-noise units, >= 0", lambda v: v >= 0.0),
    "protocol.transmissivity": ConfigKey(10.0 ** -0.1, _parse_float,
                                         "in (0, 1]", lambda v: 0.0 < v <= 1.0),
    "protocol.overlap": ConfigKey(1.0, _parse_float,
                                  "in [0, 1]", lambda v: 0.0 <= v <= 1.0),
    "sweep.parameter": _choice(VALID_SWEEP_PARAMETERS),
    "sweep.start": ConfigKey(0.0, _parse_float, "grid start value"),
    "sweep.stop": ConfigKey(GEO_HEIGHT, _parse_float, "grid stop value"),
    "sweep.points": ConfigKey(500, _parse_int, "grid size, >= 1", lambda v: v >= 1),
    "run.mode": _choice(VALID_MODES),
    "run.lambda3": _choice(VALID_LAMBDA3_CONVENTIONS),
    "run.noise": _choice(VALID_NOISE_CONVENTIONS),
    "run.loss_model": _choice(VALID_LOSS_MODELS),
    "run.delta_method": _choice(VALID_DELTA_METHODS),
    "run.height": ConfigKey(0.0, _parse_float, "meters, >= 0", lambda v: v >= 0.0),
    "run.zenith": ConfigKey(0.0, _parse_float, "radians in [0, pi/2)",
                            lambda v: 0.0 <= v < math.pi / 2.0),
    "run.delta_override": ConfigKey(None, _parse_optional_float,
                                    "dimensionless shift > -1, or empty",
                                    lambda v: v is None or v > -1.0),
    "run.out": ConfigKey(None, _parse_optional_str, "output path, or empty"),
}


def default_config():
    """Fresh dict of every key at its built-in default."""
    return {name: key.default for name, key in REGISTRY.items()}


def set_value(config, name, text):
    """Parse and validate one key = value assignment into `config`."""
    if name not in REGISTRY:
        raise ConfigError(f"unknown configuration key {name!r}")
    key = REGISTRY[name]
    try:
        value = key.parse(text)
    except ConfigError as exc:
        raise ConfigError(f"bad value for {name}: {exc} (accepts: {key.accepts})") from None
    if not key.check(value):
        raise ConfigError(f"value {value!r} out of range for {name} (accepts: {key.accepts})")
    config[name] = value


def parse_config_text(config, text):
    """Apply a config file's `key = value` lines on top of `config`.

    Blank lines are skipped; `#` starts a comment, full-line or trailing.
    """
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        name, _, value = line.partition("=")
        try:
            set_value(config, name.strip(), value.strip())
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None


def resolve_config(file_text=None, overrides=()):
    """Defaults, then file, then (key, value-text) overrides, in order."""
    config = default_config()
    if file_text is not None:
        parse_config_text(config, file_text)
    for name, text in overrides:
        set_value(config, name, text)
    return config


def earth_from_config(config):
    return EarthModel(
        mass_length=config["earth.mass_length"],
        equatorial_radius=config["earth.radius"],
        angular_velocity=config["earth.angular_velocity"],
        kerr_length=config["earth.kerr_length"],
        orbit_direction=config["earth.orbit_direction"],
    )


def packet_from_config(config):
    return WavePacket(
        peak_frequency=config["packet.omega0_hz"],
        bandwidth=config["packet.sigma_hz"],
    )


def setup_from_config(config):
    return OpticalSetup(
        setup_efficiency=config["setup.efficiency"],
        extinction_coefficient=config["setup.alpha0"],
        extinction_scale_height=config["setup.scale_height"],
        beam_waist=config["setup.beam_waist"],
        receiver_aperture=config["setup.aperture"],
        wavelength=config["setup.wavelength"],
    )


def protocol_from_config(config):
    return ProtocolParams(
        modulation_variance=config["protocol.variance"],
        excess_noise=config["protocol.excess_noise"],
        transmissivity=config["protocol.transmissivity"],
        overlap=config["protocol.overlap"],
        noise_convention=config["run.noise"],
        lambda3_convention=config["run.lambda3"],
    )
