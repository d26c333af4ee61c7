"""
Configurazione pytest e fixtures globali per tutti i test
"""

from pathlib import Path

import pytest
from click.testing import CliRunner
from hypothesis import HealthCheck, settings

from src.risonanza_accelerata.config.settings import configure, get_settings
from src.risonanza_accelerata.core.models import (
    Alignment,
    DipolePair,
    EmParams,
    PairGeometry,
    ScalarParams,
)
from src.risonanza_accelerata.physics.em_model import dipole_preset

# Profilo hypothesis condiviso; la fixture autouse agisce per test, non per esempio
settings.register_profile(
    "risonanza",
    suppress_health_check=[HealthCheck.function_scoped_fixture],
    deadline=None,
)
settings.load_profile("risonanza")


# Fixtures per configurazione
@pytest.fixture(autouse=True)
def default_settings():
    """Ripristina le impostazioni di default prima e dopo ogni test"""
    configure()
    yield get_settings()
    configure()


@pytest.fixture
def fast_settings():
    """Impostazioni con campionamento ridotto per la suite di validazione"""
    return configure(
        {
            "validation": {"property_samples": 50, "em_random_points": 5},
            "figure3": {"points": 31},
        }
    )


# Geometrie della figura: L = D = 7.5×10⁻², z = 2×10⁻², ω₀ = 4.17
@pytest.fixture
def figure3_perp() -> PairGeometry:
    """Coppia perpendicolare con i parametri della figura, atomi statici"""
    return PairGeometry(
        alignment=Alignment.PERPENDICULAR, separation=7.5e-2, z=2.0e-2, a=0.0
    )


@pytest.fixture
def figure3_par() -> PairGeometry:
    """Coppia parallela con i parametri della figura, atomi statici"""
    return PairGeometry(alignment=Alignment.PARALLEL, separation=7.5e-2, z=2.0e-2, a=0.0)


@pytest.fixture
def scalar_perp(figure3_perp) -> ScalarParams:
    return ScalarParams(geometry=figure3_perp, omega0=4.17)


@pytest.fixture
def scalar_par(figure3_par) -> ScalarParams:
    return ScalarParams(geometry=figure3_par, omega0=4.17)


@pytest.fixture
def unit_geometry_perp() -> PairGeometry:
    """Coppia perpendicolare con a = d = 1 e z = 1/2 (ℛ = 2)"""
    return PairGeometry(alignment=Alignment.PERPENDICULAR, separation=1.0, z=0.5, a=1.0)


@pytest.fixture
def unit_geometry_par() -> PairGeometry:
    """Coppia parallela con a = D = 1 e z = 1/2 (R = √2)"""
    return PairGeometry(alignment=Alignment.PARALLEL, separation=1.0, z=0.5, a=1.0)


@pytest.fixture
def generic_dipoles() -> DipolePair:
    """Dipoli con tutte le componenti non nulle"""
    return DipolePair(mu_a=(0.3, -1.2, 0.7), mu_b=(-0.8, 0.4, 1.1))


@pytest.fixture
def em_perp(unit_geometry_perp, generic_dipoles) -> EmParams:
    return EmParams(geometry=unit_geometry_perp, omega0=1.3, dipoles=generic_dipoles)


@pytest.fixture
def em_par(unit_geometry_par, generic_dipoles) -> EmParams:
    return EmParams(geometry=unit_geometry_par, omega0=1.3, dipoles=generic_dipoles)


@pytest.fixture
def cross_xz() -> DipolePair:
    return dipole_preset("cross-xz")


# Fixtures per la CLI
@pytest.fixture
def cli_runner() -> CliRunner:
    """Runner click con stderr separato da stdout"""
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # click >= 8.2 separa sempre gli stream
        return CliRunner()


@pytest.fixture
def fast_config_file(tmp_path) -> Path:
    """File key=value che riduce il campionamento della suite"""
    path = tmp_path / "rdd.conf"
    path.write_text(
        "# suite ridotta per i test\n"
        "validation.property_samples = 50\n"
        "validation.em_random_points = 5\n"
        "figure3.points = 31\n",
        encoding="utf-8",
    )
    return path
