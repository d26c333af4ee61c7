"""
Mappe di errore delle forme asintotiche scalari rispetto alla forma chiusa.
"""

import math
from collections import defaultdict
from typing import Callable, Dict, List, Sequence

from loguru import logger

from ..config.settings import get_settings
from ..core.errors import UsageError
from ..core.models import (
    Alignment,
    EnergyBreakdown,
    GridPoint,
    OracleReport,
    PairGeometry,
    Regime,
    ScalarParams,
)
from ..physics.geometry import image_distance, light_cone_proper_time
from ..physics.scalar_model import (
    scalar_energy,
    scalar_energy_far_zone,
    scalar_energy_intermediate,
)

DECADES = (1e2, 1e3, 1e4)

ASYMPTOTIC_FORMS: Dict[Regime, Callable[[ScalarParams], EnergyBreakdown]] = {
    Regime.FAR_ZONE: scalar_energy_far_zone,
    Regime.INTERMEDIATE: scalar_energy_intermediate,
}


def default_far_zone_grid() -> List[GridPoint]:
    """
    a = 1, distanza diretta su tre decadi, z pari alla separazione e
    ω₀·d ∈ {10⁻³, 10⁻², 10⁻¹}: la fase (2ω₀/a)·ln 2 resta trascurabile.
    """
    grid = []
    for alignment in Alignment:
        for distance in DECADES:
            for omega_d in (1e-3, 1e-2, 1e-1):
                grid.append(
                    GridPoint(
                        alignment=alignment,
                        a=1.0,
                        separation=distance,
                        z=distance,
                        omega0=omega_d / distance,
                    )
                )
    return grid


def default_intermediate_grid() -> List[GridPoint]:
    """a = 1, distanza dall'immagine su tre decadi con distanza diretta 1/immagine"""
    grid = []
    for alignment in Alignment:
        for image in DECADES:
            separation = 1.0 / image
            if alignment is Alignment.PERPENDICULAR:
                z = 0.5 * (image - separation)
            else:
                z = 0.5 * math.sqrt(image * image - separation * separation)
            grid.append(
                GridPoint(
                    alignment=alignment, a=1.0, separation=separation, z=z, omega0=1e-4
                )
            )
    return grid


def default_grid(regime: Regime) -> List[GridPoint]:
    if regime is Regime.FAR_ZONE:
        return default_far_zone_grid()
    return default_intermediate_grid()


def _passes_phase_filter(point: GridPoint, threshold: float) -> bool:
    distances = image_distance(point.geometry())
    for d in (distances.direct, distances.image):
        phase = point.omega0 * light_cone_proper_time(point.a, d)
        if abs(math.cos(phase)) <= threshold:
            return False
    return True


def _scale(regime: Regime, geometry: PairGeometry) -> float:
    """a·distanza che controlla il regime: diretta in zona lontana, immagine in quella intermedia"""
    distances = image_distance(geometry)
    d = distances.direct if regime is Regime.FAR_ZONE else distances.image
    return geometry.a * d


def _decade(x: float) -> int:
    return int(math.floor(math.log10(x) + 1e-9))


def asymptotic_error_map(
    regime: Regime, grid: Sequence[GridPoint]
) -> List[OracleReport]:
    """
    Errore relativo della forma asintotica sul totale esatto punto per punto,
    più un riepilogo per allineamento che verifica la decrescita del massimo
    errore per decade di a·distanza.

    Args:
        regime: FAR_ZONE o INTERMEDIATE
        grid: Punti (a, separazione, z, ω₀)

    Returns:
        Report dei punti seguiti dai riepiloghi di monotonia

    Raises:
        UsageError: se nessun punto supera il filtro di fase
    """
    validation = get_settings().validation
    asymptotic = ASYMPTOTIC_FORMS[regime]

    sampled = [
        p for p in grid if _passes_phase_filter(p, validation.phase_filter)
    ]
    if not sampled:
        raise UsageError(f"Griglia vuota dopo il filtro di fase per {regime.value}")
    logger.info(f"Mappa asintotica {regime.value}: {len(sampled)}/{len(grid)} punti")

    reports = []
    per_decade: Dict[Alignment, Dict[int, float]] = defaultdict(dict)

    for point in sampled:
        params = ScalarParams(geometry=point.geometry(), omega0=point.omega0)
        exact = scalar_energy(params).total
        approx = asymptotic(params).total
        rel_error = abs(approx - exact) / abs(exact)
        scale = _scale(regime, params.geometry)

        reports.append(
            OracleReport(
                case_id=(
                    f"asymptotic/{regime.value}/{point.alignment.value}/"
                    f"ad={scale:.0e}/w0={point.omega0:.3g}"
                ),
                model_value=approx,
                oracle_value=exact,
                rel_error=rel_error,
                tolerance=validation.asymptotic_tolerance,
                passed=rel_error <= validation.asymptotic_tolerance,
            )
        )
        decade = _decade(scale)
        worst = per_decade[point.alignment].get(decade, 0.0)
        per_decade[point.alignment][decade] = max(worst, rel_error)

    for alignment, decades in per_decade.items():
        ordered = [decades[k] for k in sorted(decades)]
        monotone = all(later < earlier for earlier, later in zip(ordered, ordered[1:]))
        if not monotone:
            logger.warning(
                f"Errore {regime.value}/{alignment.value} non decrescente: {ordered}"
            )
        reports.append(
            OracleReport(
                case_id=f"asymptotic/{regime.value}/{alignment.value}/monotone",
                model_value=float(len(ordered)),
                oracle_value=float(len(ordered)),
                rel_error=0.0 if monotone else 1.0,
                tolerance=0.0,
                passed=monotone,
            )
        )

    return reports
