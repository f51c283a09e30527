"""Frequency shift of light climbing from a rotating planet to a satellite,
and the resulting wave-packet overlap at the receiver.

Geometry: emitter fixed on the equator of a planet rotating at angular
velocity omega, receiver on a circular equatorial orbit at radius
r_B = r_A + h, co- or counter-rotating.  All mass quantities are
geometrized to lengths (GM/c^2, J/Mc) so metric expressions are ratios of
meters; the only explicit unit conversion is omega/c for the ground
observer's angular rate per meter of light travel.

The dimensionless shift is delta = sqrt(Omega_B / Omega_A) - 1: the square
root of the frequency ratio, which is the quantity the receiver-side mode
functions are rescaled by.  A positive delta is a blueshift of the received
packet relative to the local oscillator.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .constants import C_LIGHT, EARTH_KERR_LENGTH, EARTH_MASS_LENGTH, EARTH_OMEGA, EARTH_RADIUS
from .errors import DomainError, NumericalDomainError

# Narrowband floor: the Gaussian overlap model extends frequency integrals
# over the whole real axis, legitimate only for peak/bandwidth well above 1.
MIN_FREQUENCY_RATIO = 1e3


@dataclass(frozen=True)
class EarthModel:
    """Rotating-planet parameters in geometrized form.

    :param mass_length: GM/c^2 in meters.
    :param equatorial_radius: r_A in meters, emitter radius.
    :param angular_velocity: omega in rad/s, planet rotation rate.
    :param kerr_length: a = J/(Mc) in meters, spin parameter.
    :param orbit_direction: +1 for a co-rotating satellite, -1 for retrograde.
    """

    mass_length: float = EARTH_MASS_LENGTH
    equatorial_radius: float = EARTH_RADIUS
    angular_velocity: float = EARTH_OMEGA
    kerr_length: float = EARTH_KERR_LENGTH
    orbit_direction: int = +1

    def __post_init__(self):
        if self.mass_length <= 0.0:
            raise DomainError(f"mass_length must be positive, got {self.mass_length!r}")
        if self.equatorial_radius <= self.schwarzschild_radius:
            raise DomainError("equatorial radius must exceed the Schwarzschild radius")
        if self.kerr_length < 0.0:
            raise DomainError(f"kerr_length must be >= 0, got {self.kerr_length!r}")
        if self.orbit_direction not in (+1, -1):
            raise DomainError(f"orbit_direction must be +1 or -1, got {self.orbit_direction!r}")

    @property
    def schwarzschild_radius(self):
        """r_S = 2 GM/c^2 in meters."""
        return 2.0 * self.mass_length


EARTH = EarthModel()


@dataclass(frozen=True)
class WavePacket:
    """Gaussian wave packet of the signal pulses.

    peak_frequency and bandwidth are linear frequencies in Hz; only their
    ratio enters the overlap.  The narrowband check can be disabled for
    deliberately exaggerated test cases.

    :param peak_frequency: Omega_0 in Hz.
    :param bandwidth: sigma in Hz.
    :param strict: enforce peak_frequency/bandwidth > 1e3.
    """

    peak_frequency: float
    bandwidth: float
    strict: bool = True

    def __post_init__(self):
        if self.peak_frequency <= 0.0 or self.bandwidth <= 0.0:
            raise DomainError("peak_frequency and bandwidth must be positive")
        if self.strict and self.peak_frequency / self.bandwidth <= MIN_FREQUENCY_RATIO:
            raise DomainError(
                f"peak/bandwidth ratio {self.peak_frequency / self.bandwidth!r} "
                f"too small for the narrowband overlap model (need > {MIN_FREQUENCY_RATIO:g})")


@dataclass(frozen=True)
class FrequencyShift:
    """Shift parameter delta and, for the perturbative method, its parts.

    delta_total = delta_schwarzschild + delta_rotation + delta_higher holds
    exactly (floating-point sum) when method is "perturbative"; the exact
    method carries no decomposition and leaves the parts as None.
    """

    delta_total: float
    delta_schwarzschild: float | None
    delta_rotation: float | None
    delta_higher: float | None
    method: str


def frequency_ratio_exact(earth, height):
    """Exact ratio Omega_B / Omega_A on the rotating-planet metric.

    Emitter: at rest on the rotating surface, radius r_A, equator.
    Receiver: circular equatorial geodesic orbit at r_B = r_A + h, direction
    earth.orbit_direction.  The ratio is

        (1 + psi) / (C * sqrt(1 - 3M/r_B + 2 psi)),
        psi = eps * (a/r_B) * sqrt(M/r_B),

    with C the emitter's normalization

        C = [1 - (2M/r_A)(1 + 2 a w) + (r_A^2 + a^2 - 2 M a^2/r_A) w^2]^(-1/2),
        w = omega/c.

    :param earth: EarthModel.
    :param height: satellite height h above the surface, meters, >= 0.
    :return: dimensionless frequency ratio.
    """
    h = float(height)
    if h < 0.0:
        raise DomainError(f"height must be >= 0, got {h!r}")
    m = earth.mass_length
    r_a = earth.equatorial_radius
    r_b = r_a + h
    a = earth.kerr_length
    w = earth.angular_velocity / C_LIGHT
    eps = earth.orbit_direction

    psi = eps * (a / r_b) * math.sqrt(m / r_b)
    orbit_term = 1.0 - 3.0 * m / r_b + 2.0 * psi
    if orbit_term <= 0.0:
        raise DomainError(
            f"no stationary photon frequency at r_B = {r_b!r} m (radicand {orbit_term!r})")
    ground_term = (1.0 - (2.0 * m / r_a) * (1.0 + 2.0 * a * w)
                   + (r_a * r_a + a * a - 2.0 * m * a * a / r_a) * w * w)
    if ground_term <= 0.0:
        raise DomainError(
            f"emitter worldline not timelike (radicand {ground_term!r})")
    # C multiplies the denominator, so divide by it as 1/C = sqrt(ground_term).
    return (1.0 + psi) * math.sqrt(ground_term) / math.sqrt(orbit_term)


def delta_exact(earth, height):
    """Shift parameter from the exact metric ratio: sqrt(ratio) - 1."""
    ratio = frequency_ratio_exact(earth, height)
    return FrequencyShift(
        delta_total=math.sqrt(ratio) - 1.0,
        delta_schwarzschild=None,
        delta_rotation=None,
        delta_higher=None,
        method="exact",
    )


def delta_perturbative(earth, height):
    """Shift parameter expanded to leading orders in M/r and (r omega/c)^2.

    delta_schwarzschild = (1/8)(r_S/r_A)(1 - 2h/r_A)/(1 + h/r_A): the static
    gravitational part, zero at h = r_A/2 where the potential difference and
    the orbital time dilation cancel.

    delta_rotation = -(r_A omega/c)^2 / 4: ground-station velocity time
    dilation, height-independent.

    delta_higher = -(r_A omega/c)^2/4 * (3/4)(r_S/r_A) + M a omega/(r_A c):
    the spin-velocity cross terms, written in a form finite at omega = 0.

    :param earth: EarthModel.
    :param height: satellite height in meters, >= 0.
    :return: FrequencyShift with all three parts populated.
    """
    h = float(height)
    if h < 0.0:
        raise DomainError(f"height must be >= 0, got {h!r}")
    m = earth.mass_length
    r_a = earth.equatorial_radius
    r_s = earth.schwarzschild_radius
    v = earth.equatorial_radius * earth.angular_velocity / C_LIGHT

    d_sch = 0.125 * (r_s / r_a) * (1.0 - 2.0 * h / r_a) / (1.0 + h / r_a)
    d_rot = -v * v / 4.0
    d_high = (-v * v / 4.0) * 0.75 * (r_s / r_a) + m * earth.kerr_length * earth.angular_velocity / (r_a * C_LIGHT)
    return FrequencyShift(
        delta_total=d_sch + d_rot + d_high,
        delta_schwarzschild=d_sch,
        delta_rotation=d_rot,
        delta_higher=d_high,
        method="perturbative",
    )


def overlap_closed_form(delta, packet):
    """Overlap Theta of the shifted received packet with the sent one.

    A shift delta rescales the packet's frequency axis by (1 + delta); the
    surviving mode-match with the unshifted local oscillator is

        Theta = sqrt(2 / (1 + u^2)) * (1/u) * exp(-delta^2 R^2 / (4 (1 + u^2)))

    with u = 1 + delta and R = peak_frequency/bandwidth.  Theta = 1 iff
    delta = 0.  The value is returned as computed: for tiny negative delta
    the prefactor pushes it a hair above 1, and callers that feed it into a
    bounded parameter should clamp.

    :param delta: dimensionless shift, > -1.
    :param packet: WavePacket.
    """
    d = float(delta)
    u = 1.0 + d
    if u <= 0.0:
        raise DomainError(f"shift must satisfy 1 + delta > 0, got delta = {d!r}")
    ratio = packet.peak_frequency / packet.bandwidth
    arg = d * d * ratio * ratio / (4.0 * (1.0 + u * u))
    if arg > 745.0:
        # exp underflows; avoid 0 * huge-prefactor indeterminacy near u = 0.
        return 0.0
    return math.sqrt(2.0 / (1.0 + u * u)) / u * math.exp(-arg)


def overlap_quadrature_oracle(delta, packet):
    """Overlap by adaptive quadrature of the packet inner product.

    Independent of overlap_closed_form: numerically integrates the product
    of the received amplitude, the sent amplitude rescaled in frequency by
    (1 + delta) and renormalized by (1 + delta)^(-2), against the sent
    amplitude.  In the centered variable y = (Omega - Omega_0)/sigma the
    integrand is

        (2 pi)^(-1/2) exp(-y^2/4) exp(-((y - m)/(1 + delta))^2 / 4),
        m = delta * Omega_0 / sigma,

    integrated over |y| <= 40 (1 + |m|) and scaled by (1 + delta)^(-2).

    :param delta: dimensionless shift, > -1.
    :param packet: WavePacket.
    :return: Theta, matching the closed form to ~1e-12 relative.
    """
    d = float(delta)
    u = 1.0 + d
    if u <= 0.0:
        raise DomainError(f"shift must satisfy 1 + delta > 0, got delta = {d!r}")
    m = d * packet.peak_frequency / packet.bandwidth
    window = 40.0 * (1.0 + abs(m))

    norm = 1.0 / math.sqrt(2.0 * math.pi)

    def integrand(y):
        shifted = (y - m) / u
        return norm * np.exp(-0.25 * (y * y + shifted * shifted))

    # The product bump can be narrow and far from the window center; hand
    # quadpack the candidate feature locations or it may step right over it.
    features = [0.0, -5.0, 5.0, m, m - 5.0 * u, m + 5.0 * u, m / (1.0 + u * u)]
    points = sorted({p for p in features if -window < p < window})

    result = integrate.quad(integrand, -window, window, epsabs=0.0, epsrel=1e-12,
                            limit=400, points=points or None, full_output=1)
    if len(result) > 3:
        value, _, info, message = result[:4]
        raise NumericalDomainError(
            f"overlap quadrature did not converge after {info['neval']} evaluations: {message}")
    value, _, _ = result
    return float(value) / (u * u)
