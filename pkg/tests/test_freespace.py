"""Tests for the free-space optical link budget: slant geometry,
atmospheric extinction along the path, diffraction loss, and the dB
conversions."""

import math

import numpy as np
import pytest

from gravqkd.constants import EARTH_RADIUS, GEO_HEIGHT
from gravqkd.errors import DomainError
from gravqkd.freespace import (
    DEFAULT_SETUP,
    LinkGeometry,
    OpticalSetup,
    airmass_integral,
    atmospheric_transmissivity,
    db_to_transmissivity,
    diffraction_transmissivity,
    fiber_equivalent_transmissivity,
    slant_distance,
    total_transmissivity,
    transmissivity_to_db,
)

HEIGHTS = [1e3, 1e4, 1e5, 5e5, 2e6, GEO_HEIGHT]
ZENITHS = [0.0, 0.3, 0.8, 1.2, 1.4]


class TestSlantDistance:
    @pytest.mark.parametrize("height", HEIGHTS)
    def test_vertical_equals_height(self, height):
        geom = LinkGeometry(height=height, zenith_angle=0.0)
        assert geom.slant == pytest.approx(height, rel=1e-12, abs=1e-6)

    def test_zero_height(self):
        assert slant_distance(LinkGeometry(height=0.0, zenith_angle=0.9)) == pytest.approx(
            0.0, abs=1e-6)

    @pytest.mark.parametrize("height", HEIGHTS)
    @pytest.mark.parametrize("zenith", ZENITHS)
    def test_law_of_cosines(self, height, zenith):
        # z is the positive root of z^2 + 2 z r_A cos(theta) - h^2 - 2 h r_A = 0
        r_a = EARTH_RADIUS
        roots = np.roots([1.0, 2.0 * r_a * math.cos(zenith), -height**2 - 2.0 * height * r_a])
        positive = max(roots)
        z = slant_distance(LinkGeometry(height=height, zenith_angle=zenith))
        assert z == pytest.approx(positive, rel=1e-10)

    def test_anchor_value(self):
        z = slant_distance(LinkGeometry(height=5e5, zenith_angle=math.pi / 3.0))
        assert z == pytest.approx(909424.9382619942, rel=1e-12)

    def test_grows_with_zenith(self):
        zs = [slant_distance(LinkGeometry(height=5e5, zenith_angle=th)) for th in ZENITHS]
        assert all(b > a for a, b in zip(zs, zs[1:]))

    def test_validation(self):
        with pytest.raises(DomainError):
            LinkGeometry(height=-1.0)
        with pytest.raises(DomainError):
            LinkGeometry(height=1e5, zenith_angle=math.pi / 2.0)
        with pytest.raises(DomainError):
            LinkGeometry(height=1e5, ground_radius=0.0)


class TestAirmass:
    @pytest.mark.parametrize("height", [1e3, 1e4, 5e5, GEO_HEIGHT])
    def test_vertical_closed_form(self, height):
        # straight up the integral is analytic:
        # integral exp(-xi/h_tilde) dxi = h_tilde (1 - exp(-z/h_tilde))
        geom = LinkGeometry(height=height, zenith_angle=0.0)
        scale = DEFAULT_SETUP.extinction_scale_height
        expect = scale * (1.0 - math.exp(-geom.slant / scale))
        assert airmass_integral(geom, DEFAULT_SETUP) == pytest.approx(expect, rel=1e-9)

    def test_zero_height(self):
        geom = LinkGeometry(height=0.0, zenith_angle=0.5)
        assert airmass_integral(geom, DEFAULT_SETUP) == pytest.approx(0.0, abs=1e-9)

    def test_saturates_above_atmosphere(self):
        # beyond a few scale heights the airmass stops growing
        low = airmass_integral(LinkGeometry(height=1e5), DEFAULT_SETUP)
        high = airmass_integral(LinkGeometry(height=GEO_HEIGHT), DEFAULT_SETUP)
        assert high == pytest.approx(low, rel=1e-6)

    def test_grows_with_zenith(self):
        vals = [airmass_integral(LinkGeometry(height=5e5, zenith_angle=th), DEFAULT_SETUP)
                for th in ZENITHS]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestAtmosphericTransmissivity:
    def test_geo_vertical_value(self):
        # full vertical column: T_atm = exp(-alpha0 * h_tilde) = exp(-0.033)
        geom = LinkGeometry(height=GEO_HEIGHT, zenith_angle=0.0)
        expect = math.exp(-DEFAULT_SETUP.extinction_coefficient
                          * DEFAULT_SETUP.extinction_scale_height)
        assert atmospheric_transmissivity(geom, DEFAULT_SETUP) == pytest.approx(
            expect, rel=1e-9)

    def test_no_extinction(self):
        setup = OpticalSetup(extinction_coefficient=0.0)
        geom = LinkGeometry(height=5e5, zenith_angle=0.7)
        assert atmospheric_transmissivity(geom, setup) == 1.0


class TestDiffractionTransmissivity:
    def test_at_source(self):
        # z = 0: spot size w0 = 0.2 m, aperture 0.4 m, T = 1 - exp(-8)
        geom = LinkGeometry(height=0.0, zenith_angle=0.0)
        assert diffraction_transmissivity(geom, DEFAULT_SETUP) == pytest.approx(
            1.0 - math.exp(-8.0), rel=1e-12)

    def test_at_rayleigh_range(self):
        # w(z_R) = sqrt(2) w0 halves the exponent
        geom = LinkGeometry(height=DEFAULT_SETUP.rayleigh_range, zenith_angle=0.0)
        assert diffraction_transmissivity(geom, DEFAULT_SETUP) == pytest.approx(
            1.0 - math.exp(-4.0), rel=1e-9)

    def test_far_field_rolloff(self):
        vals = [diffraction_transmissivity(LinkGeometry(height=h), DEFAULT_SETUP)
                for h in [1e6, 4e6, 1.6e7]]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-2

    def test_rayleigh_range_value(self):
        assert DEFAULT_SETUP.rayleigh_range == pytest.approx(
            math.pi * 0.2**2 / DEFAULT_SETUP.wavelength, rel=1e-12)


class TestTotalTransmissivity:
    def test_bounded_by_setup_efficiency(self):
        for h in HEIGHTS:
            t = total_transmissivity(LinkGeometry(height=h))
            assert 0.0 < t <= DEFAULT_SETUP.setup_efficiency

    def test_anchor_values(self):
        assert transmissivity_to_db(total_transmissivity(LinkGeometry(height=1e3))) \
            == pytest.approx(4.001007190991995, rel=1e-9)
        assert transmissivity_to_db(total_transmissivity(LinkGeometry(height=5e5))) \
            == pytest.approx(5.687492819993222, rel=1e-9)
        assert transmissivity_to_db(total_transmissivity(LinkGeometry(height=GEO_HEIGHT))) \
            == pytest.approx(39.739642013960534, rel=1e-9)

    def test_monotone_in_height(self):
        hs = np.geomspace(1e3, GEO_HEIGHT, 25)
        ts = [total_transmissivity(LinkGeometry(height=h)) for h in hs]
        assert all(b < a for a, b in zip(ts, ts[1:]))

    def test_monotone_in_zenith(self):
        ts = [total_transmissivity(LinkGeometry(height=5e5, zenith_angle=th))
              for th in ZENITHS]
        assert all(b < a for a, b in zip(ts, ts[1:]))

    def test_loss_slope_steepens_to_far_field(self):
        # in the far field the dB loss gains 20 log10(2) ~ 6.02 dB per
        # octave of height; near the Rayleigh range the slope is smaller
        def loss(h):
            return transmissivity_to_db(total_transmissivity(LinkGeometry(height=h)))
        early = loss(2e6) - loss(1e6)
        late = loss(3.2e7) - loss(1.6e7)
        assert early < late
        assert late == pytest.approx(20.0 * math.log10(2.0), abs=0.15)


class TestFiberEquivalent:
    def test_fifty_km_at_standard_attenuation(self):
        # 50 km * 0.2 dB/km = 10 dB -> T = 0.1
        assert fiber_equivalent_transmissivity(50e3, 0.2) == pytest.approx(0.1, rel=1e-12)

    def test_zero_distance(self):
        assert fiber_equivalent_transmissivity(0.0, 0.2) == 1.0

    def test_validation(self):
        with pytest.raises(DomainError):
            fiber_equivalent_transmissivity(-1.0, 0.2)
        with pytest.raises(DomainError):
            fiber_equivalent_transmissivity(1e3, -0.2)


class TestDecibelConversions:
    def test_unity_is_zero_db(self):
        db = transmissivity_to_db(1.0)
        assert db == 0.0
        # and positive zero, not -0.0, for stable text output
        assert math.copysign(1.0, db) > 0.0

    def test_ten_db(self):
        assert db_to_transmissivity(10.0) == pytest.approx(0.1, rel=1e-15)
        assert transmissivity_to_db(0.1) == pytest.approx(10.0, rel=1e-15)

    @pytest.mark.parametrize("t", [1.0, 0.5, 0.1, 1e-4, 1e-9])
    def test_roundtrip(self, t):
        assert db_to_transmissivity(transmissivity_to_db(t)) == pytest.approx(t, rel=1e-12)

    def test_validation(self):
        with pytest.raises(DomainError):
            transmissivity_to_db(0.0)
        with pytest.raises(DomainError):
            transmissivity_to_db(1.5)
        with pytest.raises(DomainError):
            db_to_transmissivity(-1.0)
