"""Secret key rates for the satellite link, and parameter sweeps.

Protocol: Gaussian-modulated coherent states, homodyne detection, direct
reconciliation, collective attacks.  The asymptotic rate is

    K = I(a:b) - S(a:E)

with the mutual information and Holevo bound evaluated on the two-mode
state shared after the channel.  That state is fully described by the
scalar triple (r, s, t):

    r = V
    s = T [ (Theta^2 V + 1 - Theta^2) + noise ]
    t = Theta sqrt(T (V^2 - 1))

where `noise` is the input-referred channel noise chi = (1-T)/T + eps by
default, or bare eps under the epsilon_only convention.  Everything here is
a pure function of its arguments; sweeps evaluate points independently and
in grid order, so concurrent evaluation would be safe, but the sequential
loop is already far below the latency budget.
"""

import math
from dataclasses import dataclass, field, replace

from . import freespace, gaussian, relativity
from .errors import DomainError, GravQkdError
from .gaussian import _clamped_sqrt, entropy_g

VALID_NOISE_CONVENTIONS = ("chi", "epsilon_only")
VALID_LAMBDA3_CONVENTIONS = ("det", "diagonal")
VALID_SWEEP_PARAMETERS = ("height", "bandwidth", "variance", "excess_noise", "zenith_angle")
VALID_MODES = ("gravity_only", "full_link")
VALID_DELTA_METHODS = ("perturbative", "exact")
VALID_LOSS_MODELS = ("freespace", "fiber_equivalent")


@dataclass(frozen=True)
class ProtocolParams:
    """Protocol and channel parameters of a single key-rate evaluation.

    :param modulation_variance: V >= 1, shot-noise units.
    :param excess_noise: eps >= 0, shot-noise units.
    :param transmissivity: T in (0, 1].
    :param overlap: wave-packet overlap Theta in [0, 1].
    :param noise_convention: "chi" puts (1-T)/T + eps into s (the channel's
        derived covariance); "epsilon_only" puts bare eps there.
    :param lambda3_convention: "det" takes the conditional symplectic
        eigenvalue sqrt(det); "diagonal" reads the unmeasured-quadrature
        variance s directly.
    """

    modulation_variance: float = 10.0
    excess_noise: float = 0.001
    transmissivity: float = 10.0 ** -0.1
    overlap: float = 1.0
    noise_convention: str = "chi"
    lambda3_convention: str = "det"

    def __post_init__(self):
        if self.modulation_variance < 1.0:
            raise DomainError(
                f"modulation variance must be >= 1, got {self.modulation_variance!r}")
        if self.excess_noise < 0.0:
            raise DomainError(f"excess noise must be >= 0, got {self.excess_noise!r}")
        if not 0.0 < self.transmissivity <= 1.0:
            raise DomainError(
                f"transmissivity must be in (0, 1], got {self.transmissivity!r}")
        if not 0.0 <= self.overlap <= 1.0:
            raise DomainError(f"overlap must be in [0, 1], got {self.overlap!r}")
        if self.noise_convention not in VALID_NOISE_CONVENTIONS:
            raise DomainError(f"unknown noise convention {self.noise_convention!r}")
        if self.lambda3_convention not in VALID_LAMBDA3_CONVENTIONS:
            raise DomainError(f"unknown lambda3 convention {self.lambda3_convention!r}")


@dataclass(frozen=True)
class KeyRateResult:
    """All intermediate and final quantities of one key-rate evaluation.

    key_rate may be negative (infeasible protocol); effective_rate clamps
    at zero for plotting and throughput accounting.
    """

    r: float
    s: float
    t: float
    lambda1: float
    lambda2: float
    lambda3: float
    mutual_information: float
    holevo: float
    key_rate: float
    effective_rate: float


def noise_referred_input(params):
    """Channel noise referred to the input: chi = (1 - T)/T + eps."""
    t = params.transmissivity
    return (1.0 - t) / t + params.excess_noise


def _channel_noise(params):
    # The noise term entering s, per the selected convention.
    if params.noise_convention == "chi":
        return noise_referred_input(params)
    return params.excess_noise


def state_parameters(params):
    """The (r, s, t) triple describing the shared two-mode state."""
    v = params.modulation_variance
    t_chan = params.transmissivity
    th = params.overlap
    noise = _channel_noise(params)
    r = v
    s = t_chan * ((th * th * v + 1.0 - th * th) + noise)
    t = th * math.sqrt(t_chan * (v * v - 1.0))
    return r, s, t


def mutual_information(params):
    """I(a:b) = (1/2) log2( r / (r - t^2/s) ), bits per channel use."""
    r, s, t = state_parameters(params)
    if s <= 0.0:
        raise DomainError(f"receiver variance must be positive, got s = {s!r}")
    conditional = r - t * t / s
    if conditional <= 0.0:
        raise DomainError(
            f"unphysical correlation: conditional variance {conditional!r} <= 0")
    return 0.5 * math.log2(r / conditional)


def _lambda12(r, s, t):
    # Two-mode symplectic eigenvalues of the shared state, blocks
    # r*I, s*I, t*Z; delegated so the scalar route and the covariance
    # route run the same arithmetic.
    spec = gaussian.spectrum_from_standard_form(r, s, t)
    return spec.lambda1, spec.lambda2


def _lambda3(r, s, t, convention):
    # Spectrum value of the sender-conditioned receiver state.
    if convention == "det":
        return _clamped_sqrt(s * (s - t * t / r), s * s, "det of conditional state")
    if convention == "diagonal":
        return s
    raise DomainError(f"unknown lambda3 convention {convention!r}")


def holevo_bound(params):
    """Eve's information S(a:E) = g(lambda1) + g(lambda2) - g(lambda3), bits.

    Raises NumericalDomainError when an eigenvalue lands below 1 beyond
    rounding, which happens for the epsilon_only convention at low
    transmissivity: that parametrization does not describe a physical
    channel there.
    """
    r, s, t = state_parameters(params)
    lam1, lam2 = _lambda12(r, s, t)
    lam3 = _lambda3(r, s, t, params.lambda3_convention)
    return entropy_g(lam1) + entropy_g(lam2) - entropy_g(lam3)


def key_rate(params):
    """Full key-rate evaluation from the scalar (r, s, t) formulas.

    :param params: ProtocolParams.
    :return: KeyRateResult; key_rate = I - S, negative values preserved.
    """
    r, s, t = state_parameters(params)
    if s <= 0.0:
        raise DomainError(f"receiver variance must be positive, got s = {s!r}")
    conditional = r - t * t / s
    if conditional <= 0.0:
        raise DomainError(
            f"unphysical correlation: conditional variance {conditional!r} <= 0")
    info = 0.5 * math.log2(r / conditional)

    lam1, lam2 = _lambda12(r, s, t)
    lam3 = _lambda3(r, s, t, params.lambda3_convention)
    holevo = entropy_g(lam1) + entropy_g(lam2) - entropy_g(lam3)

    rate = info - holevo
    return KeyRateResult(
        r=r, s=s, t=t,
        lambda1=lam1, lambda2=lam2, lambda3=lam3,
        mutual_information=info, holevo=holevo,
        key_rate=rate, effective_rate=max(rate, 0.0),
    )


def key_rate_via_covariance(params):
    """Same result through the explicit covariance-matrix pipeline.

    Builds the TMSV, applies the thermal-loss channel and the overlap
    beamsplitter as matrix operations, then reads I and S off the matrices.
    Exists as an independent cross-check of the scalar formulas; the two
    paths agree to ~1e-12 in each output.
    """
    state = gaussian.make_tmsv(params.modulation_variance)
    state = gaussian.apply_thermal_loss(state, params.transmissivity, _channel_noise(params))
    state = gaussian.apply_overlap_beamsplitter(state, params.overlap)

    spectrum = gaussian.symplectic_spectrum(state)
    _, lam3 = gaussian.conditional_after_homodyne(
        state, measured=0, convention=params.lambda3_convention)
    holevo = (entropy_g(spectrum.lambda1) + entropy_g(spectrum.lambda2)
              - entropy_g(lam3))

    # Sender-side conditioning gives I; the diagonal reading of the witness
    # value is inert here (it is just r) and never raises.
    cond_a, _ = gaussian.conditional_after_homodyne(state, measured=1, convention="diagonal")
    sent = state.a_block[0, 0]
    if cond_a[0, 0] <= 0.0:
        raise DomainError(
            f"unphysical correlation: conditional variance {cond_a[0, 0]!r} <= 0")
    info = 0.5 * math.log2(sent / cond_a[0, 0])

    rate = info - holevo
    return KeyRateResult(
        r=state.a_block[0, 0], s=state.b_block[0, 0], t=state.c_block[0, 0],
        lambda1=spectrum.lambda1, lambda2=spectrum.lambda2, lambda3=lam3,
        mutual_information=info, holevo=holevo,
        key_rate=rate, effective_rate=max(rate, 0.0),
    )


def change_rate_mu(k_h, k_ref):
    """Relative key-rate change mu = (K(h) - K_ref) / K_ref.

    The reference is the same protocol with a perfect overlap Theta = 1.

    :param k_h: key rate with the actual overlap, bits.
    :param k_ref: reference key rate, bits, must be positive.
    """
    if k_ref <= 0.0:
        raise DomainError(
            f"reference key rate must be positive for a relative change, got {k_ref!r}")
    return (k_h - k_ref) / k_ref


@dataclass(frozen=True)
class SweepSpec:
    """A one-parameter sweep over the link model.

    parameter selects what the grid values mean: satellite height (m),
    packet bandwidth (Hz), modulation variance, excess noise, or zenith
    angle (rad).  Fixed quantities come from the snapshot fields.  In
    gravity_only mode the transmissivity stays at protocol.transmissivity
    and only the overlap tracks the frequency shift; full_link mode also
    recomputes T from the link budget (or the fiber-equivalent rule) at
    each point.
    """

    parameter: str = "height"
    grid: tuple = ()
    mode: str = "gravity_only"
    protocol: ProtocolParams = field(default_factory=ProtocolParams)
    packet: relativity.WavePacket = field(
        default_factory=lambda: relativity.WavePacket(5e14, 1e6))
    earth: relativity.EarthModel = field(default_factory=relativity.EarthModel)
    setup: freespace.OpticalSetup = field(default_factory=freespace.OpticalSetup)
    height: float = 0.0
    zenith_angle: float = 0.0
    delta_method: str = "perturbative"
    loss_model: str = "freespace"
    fiber_loss_db_per_km: float = 0.2

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(v) for v in self.grid))
        if self.parameter not in VALID_SWEEP_PARAMETERS:
            raise DomainError(f"unknown sweep parameter {self.parameter!r}")
        if self.mode not in VALID_MODES:
            raise DomainError(f"unknown sweep mode {self.mode!r}")
        if self.delta_method not in VALID_DELTA_METHODS:
            raise DomainError(f"unknown delta method {self.delta_method!r}")
        if self.loss_model not in VALID_LOSS_MODELS:
            raise DomainError(f"unknown loss model {self.loss_model!r}")
        if len(self.grid) == 0:
            raise DomainError("sweep grid must be nonempty")
        diffs = [b - a for a, b in zip(self.grid, self.grid[1:])]
        if any(d <= 0.0 for d in diffs) and any(d >= 0.0 for d in diffs):
            raise DomainError("sweep grid must be strictly monotone")
        if self.height < 0.0:
            raise DomainError(f"fixed height must be >= 0, got {self.height!r}")
        if self.fiber_loss_db_per_km < 0.0:
            raise DomainError("fiber attenuation must be >= 0")


@dataclass
class SweepPoint:
    """One evaluated sweep row; fields are None past the first failure.

    error carries the message of a per-point domain failure instead of
    aborting the sweep.
    """

    value: float
    height: float
    zenith_angle: float
    shift: relativity.FrequencyShift | None = None
    overlap: float | None = None
    transmissivity: float | None = None
    result: KeyRateResult | None = None
    mu: float | None = None
    error: str | None = None


def _point_inputs(spec, value):
    # Resolve the swept value into (height, zenith, packet, protocol).
    height = spec.height
    zenith = spec.zenith_angle
    packet = spec.packet
    protocol = spec.protocol
    if spec.parameter == "height":
        height = value
    elif spec.parameter == "zenith_angle":
        zenith = value
    elif spec.parameter == "bandwidth":
        packet = relativity.WavePacket(packet.peak_frequency, value, strict=packet.strict)
    elif spec.parameter == "variance":
        protocol = replace(protocol, modulation_variance=value)
    elif spec.parameter == "excess_noise":
        protocol = replace(protocol, excess_noise=value)
    return height, zenith, packet, protocol


def _point_transmissivity(spec, height, zenith):
    if spec.mode == "gravity_only":
        return spec.protocol.transmissivity
    geom = freespace.LinkGeometry(height, zenith, spec.earth.equatorial_radius)
    if spec.loss_model == "fiber_equivalent":
        return freespace.fiber_equivalent_transmissivity(
            freespace.slant_distance(geom), spec.fiber_loss_db_per_km)
    return freespace.total_transmissivity(geom, spec.setup)


def run_sweep(spec):
    """Evaluate the sweep point by point, never aborting on a domain error.

    :param spec: SweepSpec.
    :return: list of SweepPoint in grid order; deterministic.
    """
    reference_cache = {}
    points = []
    for value in spec.grid:
        point = None
        try:
            height, zenith, packet, protocol = _point_inputs(spec, value)
            point = SweepPoint(value=value, height=height, zenith_angle=zenith)

            shift = (relativity.delta_exact(spec.earth, height)
                     if spec.delta_method == "exact"
                     else relativity.delta_perturbative(spec.earth, height))
            point.shift = shift

            raw_overlap = relativity.overlap_closed_form(shift.delta_total, packet)
            # The closed form can exceed 1 by ~1e-12 for tiny negative
            # shifts; the protocol overlap is a bounded parameter.
            point.overlap = min(raw_overlap, 1.0)

            point.transmissivity = _point_transmissivity(spec, height, zenith)

            params = replace(protocol, overlap=point.overlap,
                             transmissivity=point.transmissivity)
            point.result = key_rate(params)

            ref_key = (params.modulation_variance, params.excess_noise,
                       params.transmissivity, params.noise_convention,
                       params.lambda3_convention)
            if ref_key not in reference_cache:
                try:
                    reference_cache[ref_key] = key_rate(
                        replace(params, overlap=1.0)).key_rate
                except GravQkdError as exc:
                    reference_cache[ref_key] = exc
            reference = reference_cache[ref_key]
            if isinstance(reference, GravQkdError):
                raise reference
            point.mu = change_rate_mu(point.result.key_rate, reference)
        except GravQkdError as exc:
            if point is None:
                point = SweepPoint(value=value, height=spec.height,
                                   zenith_angle=spec.zenith_angle)
            point.error = str(exc)
        points.append(point)
    return points
