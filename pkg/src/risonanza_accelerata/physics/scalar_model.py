"""
Interazione di risonanza con campo scalare.

Energia di due atomi accelerati nello stato simmetrico o antisimmetrico vicino
allo specchio, in forma chiusa e nei limiti statico, di zona lontana e di zona
intermedia. Entrambi gli allineamenti passano per lo stesso kernel K(d),
valutato alla distanza diretta (termine libero) e a quella dall'immagine
(termine di bordo).
"""

import math

from loguru import logger

from ..core.errors import DomainError
from ..core.models import EnergyBreakdown, ScalarParams, Zone
from ..core.utils import lorentz_factor
from .geometry import classify_zone, image_distance, light_cone_proper_time


def _check_kernel_args(a: float, d: float, omega: float) -> None:
    if d <= 0:
        raise DomainError(f"La distanza deve essere > 0, ricevuta {d}")
    if a < 0:
        raise DomainError(f"L'accelerazione deve essere >= 0, ricevuta {a}")
    if omega < 0:
        raise DomainError(f"La frequenza deve essere >= 0, ricevuta {omega}")


def _prefactor(p: ScalarParams) -> float:
    return int(p.sign) * p.lambda_sq / (16.0 * math.pi)


def scalar_kernel(a: float, d: float, omega0: float) -> float:
    """
    Kernel K(d) = cos((2ω₀/a)·asinh(a·d/2)) / (d·√(1 + a²d²/4)).

    Per a = 0 il ramo in serie restituisce esattamente cos(ω₀d)/d.

    Args:
        a: Accelerazione propria (eV)
        d: Distanza diretta o dall'immagine (eV⁻¹)
        omega0: Frequenza di transizione (eV)

    Returns:
        K(d) in eV
    """
    _check_kernel_args(a, d, omega0)
    phase = omega0 * light_cone_proper_time(a, d)
    return math.cos(phase) / (d * lorentz_factor(a, d))


def scalar_spectral_kernel(a: float, d: float, omega: float) -> float:
    """Peso in frequenza sin((2ω/a)·asinh(a·d/2)) / (d·√(1 + a²d²/4))"""
    _check_kernel_args(a, d, omega)
    phase = omega * light_cone_proper_time(a, d)
    return math.sin(phase) / (d * lorentz_factor(a, d))


def _static_kernel(d: float, omega0: float) -> float:
    return math.cos(omega0 * d) / d


def _far_zone_kernel(a: float, d: float, omega0: float) -> float:
    return math.cos((2.0 * omega0 / a) * math.log(0.5 * a * d)) / (d * d)


def _static_free_term(p: ScalarParams, direct: float) -> float:
    return -_prefactor(p) * _static_kernel(direct, p.omega0)


def _far_zone_terms(p: ScalarParams, direct: float, image: float) -> EnergyBreakdown:
    a = p.geometry.a
    if a == 0:
        raise DomainError("Le forme asintotiche richiedono a > 0")

    prefactor = int(p.sign) * p.lambda_sq / (8.0 * math.pi * a)
    return EnergyBreakdown.from_terms(
        free_term=-prefactor * _far_zone_kernel(a, direct, p.omega0),
        boundary_term=prefactor * _far_zone_kernel(a, image, p.omega0),
    )


def _warn_outside(p: ScalarParams, expected: Zone, form: str) -> None:
    zone = classify_zone(p.geometry)
    if zone is not expected:
        logger.warning(
            f"Forma {form} valutata in zona {zone.value} (attesa {expected.value})"
        )


def scalar_energy(p: ScalarParams) -> EnergyBreakdown:
    """
    Shift di energia in forma chiusa.

    free_term = −s·(λ²/16π)·K(diretta), boundary_term = +s·(λ²/16π)·K(immagine),
    con s = +1 per lo stato simmetrico e −1 per l'antisimmetrico.

    Args:
        p: Parametri del modello scalare

    Returns:
        EnergyBreakdown in eV
    """
    g = p.geometry
    distances = image_distance(g)
    prefactor = _prefactor(p)

    free = -prefactor * scalar_kernel(g.a, distances.direct, p.omega0)
    boundary = prefactor * scalar_kernel(g.a, distances.image, p.omega0)

    logger.debug(
        f"Scalare {g.alignment.value}: a={g.a:.6g}, d={distances.direct:.6g}, "
        f"d_img={distances.image:.6g} -> {free + boundary:.9g}"
    )
    return EnergyBreakdown.from_terms(free_term=free, boundary_term=boundary)


def scalar_energy_static(p: ScalarParams) -> EnergyBreakdown:
    """Limite di atomi a riposo: ignora l'accelerazione e usa cos(ω₀d)/d"""
    distances = image_distance(p.geometry)
    return EnergyBreakdown.from_terms(
        free_term=_static_free_term(p, distances.direct),
        boundary_term=_prefactor(p) * _static_kernel(distances.image, p.omega0),
    )


def scalar_energy_far_zone(p: ScalarParams) -> EnergyBreakdown:
    """
    Forma di zona lontana (distanze ≫ 1/a).

    free_term = −s·(λ²/8πa)·cos((2ω₀/a)·ln(a·d/2))/d², con il termine di bordo
    analogo alla distanza dall'immagine. La validità non è imposta.
    """
    distances = image_distance(p.geometry)
    _warn_outside(p, Zone.FAR, "di zona lontana")
    return _far_zone_terms(p, distances.direct, distances.image)


def scalar_energy_intermediate(p: ScalarParams) -> EnergyBreakdown:
    """
    Forma di zona intermedia (immagine ≫ 1/a ≫ distanza diretta).

    Il termine libero coincide con quello statico, il termine di bordo con
    quello di zona lontana. Il prefattore λ²/8π con 1/(2L) è scritto come
    λ²/16π con 1/L.
    """
    if p.geometry.a == 0:
        raise DomainError("Le forme asintotiche richiedono a > 0")

    distances = image_distance(p.geometry)
    _warn_outside(p, Zone.INTERMEDIATE, "di zona intermedia")
    far = _far_zone_terms(p, distances.direct, distances.image)
    return EnergyBreakdown.from_terms(
        free_term=_static_free_term(p, distances.direct),
        boundary_term=far.boundary_term,
    )
