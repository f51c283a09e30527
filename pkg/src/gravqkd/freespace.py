"""Free-space optical link budget from ground to satellite.

Transmissivity is the product of three factors: a fixed setup efficiency,
atmospheric extinction along the slant path through an exponential
atmosphere, and the fraction of a diffracting Gaussian beam caught by the
receiver aperture.  A flat dB-per-km rule is also provided as the
fiber-equivalent comparison channel.
"""

import math
from dataclasses import dataclass

from scipy import integrate

from .constants import C_LIGHT, EARTH_RADIUS
from .errors import DomainError, NumericalDomainError


@dataclass(frozen=True)
class LinkGeometry:
    """Ground-to-satellite geometry.

    :param height: satellite height h above the surface, meters.
    :param zenith_angle: theta in radians, 0 = straight up, < pi/2.
    :param ground_radius: planet radius r_A in meters.
    """

    height: float
    zenith_angle: float = 0.0
    ground_radius: float = EARTH_RADIUS

    def __post_init__(self):
        if self.height < 0.0:
            raise DomainError(f"height must be >= 0, got {self.height!r}")
        if not 0.0 <= self.zenith_angle < math.pi / 2.0:
            raise DomainError(
                f"zenith angle must be in [0, pi/2), got {self.zenith_angle!r}")
        if self.ground_radius <= 0.0:
            raise DomainError(f"ground radius must be positive, got {self.ground_radius!r}")

    @property
    def slant(self):
        """Line-of-sight distance to the satellite, meters."""
        return slant_distance(self)


@dataclass(frozen=True)
class OpticalSetup:
    """Hardware and atmosphere parameters of the optical link.

    :param setup_efficiency: lumped detector/optics efficiency T_eff in (0, 1].
    :param extinction_coefficient: sea-level extinction alpha_0 in 1/m.
    :param extinction_scale_height: exponential-atmosphere scale height, m.
    :param beam_waist: transmitter beam waist w_0, m.
    :param receiver_aperture: receiver aperture radius a_R, m.
    :param wavelength: optical wavelength, m.
    """

    setup_efficiency: float = 0.4
    extinction_coefficient: float = 5e-6
    extinction_scale_height: float = 6600.0
    beam_waist: float = 0.2
    receiver_aperture: float = 0.4
    wavelength: float = C_LIGHT / 5e14

    def __post_init__(self):
        if not 0.0 < self.setup_efficiency <= 1.0:
            raise DomainError(
                f"setup efficiency must be in (0, 1], got {self.setup_efficiency!r}")
        if self.extinction_coefficient < 0.0:
            raise DomainError("extinction coefficient must be >= 0")
        for name in ("extinction_scale_height", "beam_waist", "receiver_aperture", "wavelength"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be positive")

    @property
    def rayleigh_range(self):
        """Collimated-beam Rayleigh range pi w_0^2 / lambda, meters."""
        return math.pi * self.beam_waist ** 2 / self.wavelength


DEFAULT_SETUP = OpticalSetup()


def slant_distance(geom):
    """Straight-line path length from ground station to satellite.

    z(h, theta) = sqrt(h^2 + 2 h r_A + r_A^2 cos^2 theta) - r_A cos theta,
    the positive root of the Earth-center triangle.  Reduces to z = h at
    zenith and z = 0 on the ground.
    """
    h = geom.height
    r_a = geom.ground_radius
    cos_t = math.cos(geom.zenith_angle)
    return math.sqrt(h * h + 2.0 * h * r_a + r_a * r_a * cos_t * cos_t) - r_a * cos_t


def _altitude_along_path(xi, geom):
    # Altitude above the surface after traveling xi meters along the slant.
    r_a = geom.ground_radius
    cos_t = math.cos(geom.zenith_angle)
    return math.sqrt(r_a * r_a + xi * xi + 2.0 * r_a * xi * cos_t) - r_a


def _path_length_at_altitude(altitude, geom):
    # Inverse of _altitude_along_path: slant coordinate where the given
    # altitude is reached.
    r_a = geom.ground_radius
    cos_t = math.cos(geom.zenith_angle)
    return (-r_a * cos_t
            + math.sqrt(r_a * r_a * cos_t * cos_t + altitude * altitude + 2.0 * r_a * altitude))


def airmass_integral(geom, setup):
    """Equivalent sea-level path length through an exponential atmosphere.

    g(h, theta) = integral over the slant path of exp(-altitude/scale),
    meters.  Saturates at the scale height for vertical paths leaving the
    atmosphere entirely.
    """
    z = slant_distance(geom)
    if z == 0.0:
        return 0.0
    scale = setup.extinction_scale_height

    def integrand(xi):
        return math.exp(-_altitude_along_path(xi, geom) / scale)

    # The integrand dies within a few scale heights of altitude; mark where
    # that happens so the quadrature does not waste panels on the dead tail.
    points = [_path_length_at_altitude(k * scale, geom) for k in (1.0, 5.0, 20.0, 60.0)]
    points = sorted({p for p in points if 0.0 < p < z})

    result = integrate.quad(integrand, 0.0, z, epsabs=0.0, epsrel=1e-10,
                            limit=200, points=points or None, full_output=1)
    if len(result) > 3:
        value, _, info, message = result[:4]
        raise NumericalDomainError(
            f"airmass quadrature did not converge after {info['neval']} evaluations: {message}")
    return float(result[0])


def atmospheric_transmissivity(geom, setup):
    """exp(-alpha_0 * g(h, theta)): extinction over the slant path."""
    return math.exp(-setup.extinction_coefficient * airmass_integral(geom, setup))


def diffraction_transmissivity(geom, setup):
    """Fraction of the diffracted Gaussian beam caught by the aperture.

    Spot size w_d(z) = w_0 sqrt(1 + (z/z_R)^2); the captured fraction of a
    Gaussian spot by a centered circular aperture of radius a_R is
    1 - exp(-2 a_R^2 / w_d^2).
    """
    z = slant_distance(geom)
    zr = setup.rayleigh_range
    w_sq = setup.beam_waist ** 2 * (1.0 + (z / zr) ** 2)
    return 1.0 - math.exp(-2.0 * setup.receiver_aperture ** 2 / w_sq)


def total_transmissivity(geom, setup=DEFAULT_SETUP):
    """Product T_eff * T_atm * T_d of the link-budget factors."""
    return (setup.setup_efficiency
            * atmospheric_transmissivity(geom, setup)
            * diffraction_transmissivity(geom, setup))


def fiber_equivalent_transmissivity(distance, db_per_km=0.2):
    """Flat-attenuation comparison channel: 10^(-db_per_km * z_km / 10)."""
    if distance < 0.0:
        raise DomainError(f"distance must be >= 0, got {distance!r}")
    if db_per_km < 0.0:
        raise DomainError(f"attenuation must be >= 0, got {db_per_km!r}")
    return 10.0 ** (-db_per_km * (distance / 1000.0) / 10.0)


def transmissivity_to_db(transmissivity):
    """Loss in dB: -10 log10 T.  T must be in (0, 1]."""
    t = float(transmissivity)
    if t <= 0.0:
        raise DomainError(f"transmissivity must be positive, got {t!r}")
    if t > 1.0:
        raise DomainError(f"transmissivity must be <= 1, got {t!r}")
    # + 0.0 normalizes the -0.0 that -10 * log10(1.0) produces.
    return -10.0 * math.log10(t) + 0.0


def db_to_transmissivity(loss_db):
    """Inverse of transmissivity_to_db: 10^(-l/10) for l >= 0."""
    l_db = float(loss_db)
    if l_db < 0.0:
        raise DomainError(f"loss must be >= 0 dB, got {l_db!r}")
    return 10.0 ** (-l_db / 10.0)
