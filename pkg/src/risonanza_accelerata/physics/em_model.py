"""
Interazione di risonanza con campo elettromagnetico.

Funzioni f_ij e h_ij dei quattro casi (perpendicolare/parallelo, bordo/libero),
tensori P_ij = f_ij·sinΘ − h_ij·cosΘ e shift di energia per orientazioni
arbitrarie dei dipoli.
"""

import math
from typing import Dict

import numpy as np
from loguru import logger

from ..core.errors import DomainError, UsageError
from ..core.models import (
    Alignment,
    BellSign,
    DipolePair,
    EmParams,
    EnergyBreakdown,
    SusceptibilityTensor,
    TensorCase,
)
from .geometry import image_distance, light_cone_proper_time

X, Y, Z = 0, 1, 2

DIPOLE_PRESETS: Dict[str, tuple] = {
    "cross-xz": ((1.0, 0.0, 0.0), (0.0, 0.0, 1.0)),
    "cross-xy": ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
    "cross-yz": ((0.0, 1.0, 0.0), (0.0, 0.0, 1.0)),
    "parallel-yy": ((0.0, 1.0, 0.0), (0.0, 1.0, 0.0)),
}


def _check_positive(value: float, name: str) -> None:
    if not value > 0:
        raise DomainError(f"{name} deve essere > 0, ricevuto {value}")


def fh_perp_boundary(a: float, R_img: float, omega: float) -> SusceptibilityTensor:
    """
    Funzioni f/h del termine di bordo, coppia perpendicolare.

    Args:
        a: Accelerazione propria (eV)
        R_img: Distanza dall'immagine ℛ = L + 2z (eV⁻¹)
        omega: Frequenza (eV)

    Returns:
        Tensore con coppie xx, yy, zz e xz simmetrica
    """
    _check_positive(R_img, "ℛ")
    R = R_img
    ar2 = a * a * R * R
    n2 = 1.0 + 0.25 * ar2
    n = math.sqrt(n2)
    n3, n4 = n2 * n, n2 * n2
    n5 = n4 * n
    w2 = omega * omega

    f = {
        "xx": omega * (1.0 + ar2) / (n4 * R**2),
        "yy": omega * (1.0 + 0.5 * ar2) / (n2 * R**2),
        "zz": omega * (2.0 + 0.25 * ar2 + 0.125 * ar2 * ar2) / (n4 * R**2),
        "xz": -a * omega * (1.0 - 0.5 * ar2) / (2.0 * n4 * R),
    }
    h = {
        "xx": -(1.0 + 0.5 * ar2 + 0.25 * ar2 * ar2) / (n5 * R**3) + w2 / (n3 * R),
        "yy": -1.0 / (n3 * R**3) + w2 / (n * R),
        "zz": -2.0 * (1.0 + 0.625 * ar2) / (n5 * R**3) + a * a * R * w2 / (4.0 * n3),
        "xz": a * (1.0 + ar2) / (2.0 * n5 * R**2) + a * w2 / (2.0 * n3),
    }
    return SusceptibilityTensor(
        case=TensorCase.PERP_BOUNDARY, f=f, h=h, symmetry={"xz": 1}
    )


def fh_perp_free(a: float, L: float, omega: float) -> SusceptibilityTensor:
    """
    Funzioni f/h del termine libero, coppia perpendicolare.

    Rispetto al bordo f_zz e h_zz cambiano segno e la coppia xz è antisimmetrica.
    Il termine ω² di h_yy porta N^{1/2} al denominatore.
    """
    _check_positive(L, "L")
    ar2 = a * a * L * L
    n2 = 1.0 + 0.25 * ar2
    n = math.sqrt(n2)
    n3, n4 = n2 * n, n2 * n2
    n5 = n4 * n
    w2 = omega * omega

    f = {
        "xx": omega * (1.0 + ar2) / (n4 * L**2),
        "yy": omega * (1.0 + 0.5 * ar2) / (n2 * L**2),
        "zz": -omega * (2.0 + 0.25 * ar2 + 0.125 * ar2 * ar2) / (n4 * L**2),
        "xz": a * omega * (1.0 - 0.5 * ar2) / (2.0 * n4 * L),
    }
    h = {
        "xx": -(1.0 + 0.5 * ar2 + 0.25 * ar2 * ar2) / (n5 * L**3) + w2 / (n3 * L),
        "yy": -1.0 / (n3 * L**3) + w2 / (math.sqrt(n) * L),
        "zz": 2.0 * (1.0 + 0.625 * ar2) / (n5 * L**3) - a * a * L * w2 / (4.0 * n3),
        "xz": -a * (1.0 + ar2) / (2.0 * n5 * L**2) - a * w2 / (2.0 * n3),
    }
    return SusceptibilityTensor(
        case=TensorCase.PERP_FREE, f=f, h=h, symmetry={"xz": -1}
    )


def fh_par_boundary(a: float, D: float, z: float, omega: float) -> SusceptibilityTensor:
    """
    Funzioni f/h del termine di bordo, coppia parallela.

    Usa R = √(D² + 4z²), Ñ = √(1 + a²R²/4) e il quadrato con segno
    R̃² = D² − 4z². Le espressioni di h_yy e h_zz mantengono i raggruppamenti
    originali in D², z² e R².

    Args:
        a: Accelerazione propria (eV)
        D: Separazione (eV⁻¹)
        z: Distanza dallo specchio (eV⁻¹)
        omega: Frequenza (eV)

    Returns:
        Tensore con sei coppie: xy e yz antisimmetriche, xz simmetrica
    """
    _check_positive(D, "D")
    _check_positive(z, "z")
    D2, z2 = D * D, z * z
    R2 = D2 + 4.0 * z2
    R = math.sqrt(R2)
    rt2 = D2 - 4.0 * z2
    ar2 = a * a * R2
    n2 = 1.0 + 0.25 * ar2
    n = math.sqrt(n2)
    n3, n4 = n2 * n, n2 * n2
    n5 = n4 * n
    R3, R4, R5 = R2 * R, R2 * R2, R2 * R2 * R
    w2 = omega * omega

    f = {
        "xx": omega * (1.0 + ar2) / (n4 * R2),
        "yy": omega
        * (4.0 * z2 - 2.0 * D2 - 0.25 * ar2 * (D2 - 12.0 * z2) - 0.125 * ar2 * ar2 * rt2)
        / (n4 * R4),
        "zz": omega
        * (
            z2 * (16.0 + 2.0 * ar2 + ar2 * ar2)
            - D2 * (2.0 + 1.5 * ar2 + 0.25 * ar2 * ar2)
        )
        / (2.0 * n4 * R4),
        "xy": -omega * a * D * (1.0 - 0.5 * ar2) / (2.0 * n4 * R2),
        "xz": -omega * a * z * (1.0 - 0.5 * ar2) / (n4 * R2),
        "yz": -2.0 * omega * z * D * (3.0 + ar2 + 0.25 * ar2 * ar2) / (n4 * R4),
    }
    h = {
        "xx": -(1.0 + 0.5 * ar2 + 0.25 * ar2 * ar2) / (n5 * R3) + w2 / (n3 * R),
        "yy": (2.0 * D2 - 4.0 * z2 + 0.25 * ar2 * (5.0 * D2 - 4.0 * z2)) / (n5 * R5)
        + w2 * (4.0 * z2 - 0.25 * ar2 * rt2) / (n3 * R3),
        "zz": (D2 * (1.0 + 0.25 * ar2) - 8.0 * z2 * (1.0 + 0.625 * ar2)) / (n5 * R5)
        + w2 * (a * a * z2 * R2 - D2 * (1.0 + 0.25 * ar2)) / (n3 * R3),
        "xy": a * D * (1.0 + ar2) / (2.0 * n5 * R3) + w2 * a * D / (2.0 * n3 * R),
        "xz": a * z * (1.0 + ar2) / (n5 * R3) + w2 * a * z / (n3 * R),
        "yz": 6.0 * z * D * (1.0 + 0.5 * ar2) / (n5 * R5)
        - 2.0 * w2 * z * D * (1.0 + 0.5 * ar2) / (n3 * R3),
    }
    return SusceptibilityTensor(
        case=TensorCase.PAR_BOUNDARY,
        f=f,
        h=h,
        symmetry={"xy": -1, "xz": 1, "yz": -1},
    )


def fh_par_free(a: float, D: float, omega: float) -> SusceptibilityTensor:
    """Caso libero parallelo: il caso libero perpendicolare con gli indici y e z scambiati"""
    perp = fh_perp_free(a, D, omega)

    def relabel(table: Dict[str, float]) -> Dict[str, float]:
        return {
            "xx": table["xx"],
            "yy": table["zz"],
            "zz": table["yy"],
            "xy": table["xz"],
        }

    return SusceptibilityTensor(
        case=TensorCase.PAR_FREE,
        f=relabel(perp.f),
        h=relabel(perp.h),
        symmetry={"xy": perp.symmetry["xz"]},
    )


def p_tensor(t: SusceptibilityTensor, a: float, d: float, omega0: float) -> np.ndarray:
    """
    Tensore P_ij = f_ij·sinΘ − h_ij·cosΘ con Θ = (2ω₀/a)·asinh(a·d/2).

    Il tensore ``t`` deve essere valutato a ω = ω₀ e ``d`` è la distanza del
    suo caso (ℛ o L per la coppia perpendicolare, R o D per quella parallela).
    """
    theta = omega0 * light_cone_proper_time(a, d)
    return t.f_matrix() * math.sin(theta) - t.h_matrix() * math.cos(theta)


def _diagonal(mu_a: np.ndarray, mu_b: np.ndarray, p: np.ndarray) -> float:
    return float(np.sum(mu_a * mu_b * np.diag(p)))


def em_energy_perp(p: EmParams) -> EnergyBreakdown:
    """
    Shift di energia per la coppia perpendicolare.

    boundary = ∓(1/4π)[Σ μᴬᵢμᴮᵢ Pᵇᵢᵢ ± (μᴬₓμᴮ_z + μᴬ_zμᴮₓ)Pᵇₓ_z]
    free     = ±(1/4π)[Σ μᴬᵢμᴮᵢ P⁰ᵢᵢ ± (μᴬₓμᴮ_z − μᴬ_zμᴮₓ)P⁰ₓ_z]
    con i segni superiori per lo stato simmetrico.

    Raises:
        UsageError: se la geometria non è perpendicolare
    """
    g = p.geometry
    if g.alignment is not Alignment.PERPENDICULAR:
        raise UsageError("em_energy_perp richiede una geometria perpendicolare")

    distances = image_distance(g)
    s = int(p.sign)
    mu_a, mu_b = p.dipoles.arrays()

    p_boundary = p_tensor(
        fh_perp_boundary(g.a, distances.image, p.omega0), g.a, distances.image, p.omega0
    )
    p_free = p_tensor(
        fh_perp_free(g.a, distances.direct, p.omega0), g.a, distances.direct, p.omega0
    )

    cross_b = (mu_a[X] * mu_b[Z] + mu_a[Z] * mu_b[X]) * p_boundary[X, Z]
    cross_0 = (mu_a[X] * mu_b[Z] - mu_a[Z] * mu_b[X]) * p_free[X, Z]

    boundary = -(s / (4.0 * math.pi)) * (_diagonal(mu_a, mu_b, p_boundary) + s * cross_b)
    free = (s / (4.0 * math.pi)) * (_diagonal(mu_a, mu_b, p_free) + s * cross_0)

    logger.debug(
        f"EM perp: a={g.a:.6g}, L={distances.direct:.6g}, ℛ={distances.image:.6g} "
        f"-> {free + boundary:.9g}"
    )
    return EnergyBreakdown.from_terms(free_term=free, boundary_term=boundary)


def em_energy_par(p: EmParams) -> EnergyBreakdown:
    """
    Shift di energia per la coppia parallela.

    Le due espressioni non portano il segno dello stato, quindi ``p.sign``
    non entra nel risultato. La fase del termine libero usa D, quella del
    termine di bordo R.

    Raises:
        UsageError: se la geometria non è parallela
        DomainError: se z = 0
    """
    g = p.geometry
    if g.alignment is not Alignment.PARALLEL:
        raise UsageError("em_energy_par richiede una geometria parallela")

    distances = image_distance(g)
    mu_a, mu_b = p.dipoles.arrays()

    p_boundary = p_tensor(
        fh_par_boundary(g.a, distances.direct, g.z, p.omega0),
        g.a,
        distances.image,
        p.omega0,
    )
    p_free = p_tensor(
        fh_par_free(g.a, distances.direct, p.omega0), g.a, distances.direct, p.omega0
    )

    xy = mu_a[X] * mu_b[Y] - mu_a[Y] * mu_b[X]
    xz = mu_a[X] * mu_b[Z] + mu_a[Z] * mu_b[X]
    yz = mu_a[Y] * mu_b[Z] - mu_a[Z] * mu_b[Y]

    boundary = -(1.0 / (4.0 * math.pi)) * (
        _diagonal(mu_a, mu_b, p_boundary)
        + xy * p_boundary[X, Y]
        + xz * p_boundary[X, Z]
        + yz * p_boundary[Y, Z]
    )
    free = (1.0 / (4.0 * math.pi)) * (_diagonal(mu_a, mu_b, p_free) + xy * p_free[X, Y])

    if p.sign is BellSign.ANTISYMMETRIC:
        logger.debug("Coppia parallela: il segno dello stato non entra nell'energia")

    return EnergyBreakdown.from_terms(free_term=free, boundary_term=boundary)


def em_energy(p: EmParams) -> EnergyBreakdown:
    """Shift di energia secondo l'allineamento della geometria"""
    if p.geometry.alignment is Alignment.PERPENDICULAR:
        return em_energy_perp(p)
    return em_energy_par(p)


def dipole_preset(name: str, magnitude: float = 1.0) -> DipolePair:
    """
    Orientazioni predefinite dei dipoli: cross-xz, cross-xy, cross-yz, parallel-yy.

    Raises:
        UsageError: per un nome sconosciuto
    """
    if name not in DIPOLE_PRESETS:
        raise UsageError(
            f"Preset sconosciuto '{name}', disponibili: {', '.join(DIPOLE_PRESETS)}"
        )
    mu_a, mu_b = DIPOLE_PRESETS[name]
    return DipolePair(mu_a=mu_a, mu_b=mu_b).scaled(magnitude, magnitude)


def implied_dipole_magnitude(target: float, p: EmParams) -> float:
    """
    Modulo comune dei due dipoli che riproduce |target| per bilinearità.

    Le direzioni sono prese da ``p.dipoles`` e normalizzate a modulo unitario.

    Raises:
        DomainError: se un dipolo è nullo o l'energia unitaria è zero
    """
    mu_a, mu_b = p.dipoles.arrays()
    norm_a, norm_b = float(np.linalg.norm(mu_a)), float(np.linalg.norm(mu_b))
    if norm_a == 0 or norm_b == 0:
        raise DomainError("Servono dipoli non nulli per fissarne il modulo")

    unit = p.model_copy(update={"dipoles": p.dipoles.scaled(1 / norm_a, 1 / norm_b)})
    unit_energy = abs(em_energy(unit).total)
    if unit_energy == 0:
        raise DomainError("L'energia per dipoli unitari è nulla")
    return math.sqrt(abs(target) / unit_energy)
