"""
Unit tests per il sistema di unità naturali
"""

import math

import pytest
from scipy import constants as codata

from src.risonanza_accelerata.core.errors import DomainError, UnitRoleError
from src.risonanza_accelerata.core.models import NaturalQuantity, UnitRole
from src.risonanza_accelerata.physics import units


@pytest.mark.unit
class TestPhysicalConstants:
    """Test per la tabella delle costanti"""

    def test_hbar_c(self):
        """ħc ≈ 197.327 MeV·fm"""
        assert units.CONSTANTS.hbar_c_ev_m == pytest.approx(1.973269804e-7, rel=1e-9)

    def test_constants_from_scipy(self):
        assert units.CONSTANTS.c_m_s == codata.c
        assert units.CONSTANTS.joule_per_ev == codata.e
        assert units.CONSTANTS.k_b_ev_k == pytest.approx(8.617333262e-5, rel=1e-9)

    def test_elementary_charge_natural(self):
        """e = √(4πα) ≈ 0.3028"""
        assert units.CONSTANTS.elementary_charge_natural == pytest.approx(0.30282212, rel=1e-6)

    def test_bohr_radius_natural(self):
        """a₀ ≈ 2.68×10⁻⁴ eV⁻¹"""
        assert units.CONSTANTS.bohr_radius_natural == pytest.approx(2.6817e-4, rel=1e-4)

    def test_constants_frozen(self):
        with pytest.raises(Exception):
            units.CONSTANTS.c_m_s = 1.0


@pytest.mark.unit
class TestConversions:
    """Test per le conversioni SI ↔ naturali"""

    def test_length_from_meters(self):
        """10⁻⁸ m ≈ 5.07×10⁻² eV⁻¹"""
        length = units.length_si_to_natural(1.0e-8)
        assert isinstance(length, NaturalQuantity)
        assert length.role is UnitRole.LENGTH
        assert length.value == pytest.approx(5.0677e-2, rel=1e-4)

    def test_acceleration_from_si(self):
        """10¹⁸ m/s² ≈ 2.2×10⁻⁶ eV"""
        a = units.acceleration_si_to_natural(1.0e18)
        assert a.role is UnitRole.ACCELERATION
        assert a.value == pytest.approx(2.1955e-6, rel=1e-4)

    def test_acceleration_scales_linearly(self):
        low = units.acceleration_si_to_natural(1.0e18).value
        high = units.acceleration_si_to_natural(1.0e20).value
        assert high == pytest.approx(100.0 * low, rel=1e-12)
        assert high == pytest.approx(2.195e-4, rel=1e-3)

    @pytest.mark.parametrize("meters", [1e-10, 1.5e-8, 3.2e-3, 7.0])
    def test_length_inverse(self, meters):
        natural = units.length_si_to_natural(meters)
        assert units.length_natural_to_si(natural) == pytest.approx(meters, rel=1e-12)

    @pytest.mark.parametrize("si", [1e10, 1e18, 1e22])
    def test_acceleration_inverse(self, si):
        natural = units.acceleration_si_to_natural(si)
        assert units.acceleration_natural_to_si(natural) == pytest.approx(si, rel=1e-12)

    def test_energy_keeps_sign(self):
        joules = units.energy_natural_to_joule(-9.89e-2)
        assert joules < 0
        assert units.energy_joule_to_natural(joules).value == pytest.approx(-9.89e-2, rel=1e-12)

    def test_temperature_inverse(self):
        natural = units.temperature_kelvin_to_natural(300.0)
        assert natural.value == pytest.approx(2.585e-2, rel=1e-3)
        assert units.temperature_natural_to_kelvin(natural) == pytest.approx(300.0, rel=1e-12)

    def test_zero_length_allowed(self):
        assert units.length_si_to_natural(0.0).value == 0.0

    @pytest.mark.parametrize(
        "function",
        [
            units.length_si_to_natural,
            units.acceleration_si_to_natural,
            units.temperature_kelvin_to_natural,
            units.unruh_temperature_si,
            units.unruh_temperature_cgs,
        ],
    )
    def test_negative_input_rejected(self, function):
        with pytest.raises(DomainError):
            function(-1.0)

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            units.length_si_to_natural(math.inf)

    @pytest.mark.parametrize("value", [math.inf, -math.inf, math.nan])
    @pytest.mark.parametrize(
        "function", [units.energy_natural_to_joule, units.energy_joule_to_natural]
    )
    def test_non_finite_energy_rejected(self, function, value):
        with pytest.raises(DomainError):
            function(value)


@pytest.mark.unit
class TestUnitRoles:
    """Test per il controllo dei ruoli dimensionali"""

    def test_wrong_role_rejected(self):
        length = units.length_si_to_natural(1e-8)
        with pytest.raises(UnitRoleError):
            units.unruh_temperature(length)

    def test_unit_role_error_is_domain_error(self):
        assert issubclass(UnitRoleError, DomainError)

    def test_bare_float_accepted(self):
        assert units.length_natural_to_si(1.0) == pytest.approx(units.CONSTANTS.hbar_c_ev_m)

    def test_magnitude(self):
        q = NaturalQuantity(value=2.5, role=UnitRole.ENERGY)
        assert units.magnitude(q, UnitRole.ENERGY) == 2.5
        assert float(q) == 2.5


@pytest.mark.unit
class TestUnruhTemperature:
    """Test per la temperatura di Unruh"""

    def test_natural(self):
        t = units.unruh_temperature(2.0 * math.pi)
        assert t.role is UnitRole.TEMPERATURE
        assert t.value == pytest.approx(1.0, rel=1e-15)

    def test_zero_acceleration(self):
        assert units.unruh_temperature(0.0).value == 0.0

    def test_si(self):
        """10²⁰ m/s² ≈ 0.405 K"""
        assert units.unruh_temperature_si(1.0e20) == pytest.approx(0.4055, rel=1e-3)

    def test_si_matches_closed_form(self):
        a = 3.0e19
        expected = codata.hbar * a / (2.0 * math.pi * codata.k * codata.c)
        assert units.unruh_temperature_si(a) == pytest.approx(expected, rel=1e-12)

    def test_cgs(self):
        assert units.unruh_temperature_cgs(1.0e22) == pytest.approx(
            units.unruh_temperature_si(1.0e20), rel=1e-12
        )
