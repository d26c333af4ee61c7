"""
Utilità numeriche core.
Include i rami in serie delle funzioni iperboliche, il fattore di Lorentz
della traiettoria accelerata e le metriche di errore usate dagli oracoli.
"""

import math
from typing import Optional, Tuple

import numpy as np

DEFAULT_SERIES_THRESHOLD = 1e-4


def lorentz_factor(a: float, d: float) -> float:
    """
    Fattore N = √(1 + a²d²/4).

    Args:
        a: Accelerazione propria (eV)
        d: Distanza (eV⁻¹)

    Returns:
        N ≥ 1, esattamente 1 per a = 0
    """
    half = 0.5 * a * d
    return math.sqrt(1.0 + half * half)


def half_asinh_length(
    a: float, d: float, threshold: float = DEFAULT_SERIES_THRESHOLD
) -> float:
    """
    Calcola (2/a)·asinh(a·d/2), il tempo proprio di separazione sul cono di luce.

    Sotto la soglia su a·d usa lo sviluppo d(1 − (ad)²/24 + 3(ad)⁴/640),
    che per a = 0 restituisce esattamente d.

    Args:
        a: Accelerazione propria (eV)
        d: Distanza (eV⁻¹)
        threshold: Soglia su a·d per il ramo in serie

    Returns:
        Tempo proprio in eV⁻¹
    """
    ad = a * d
    if ad < threshold:
        u = ad * ad
        return d * (1.0 - u / 24.0 + 3.0 * u * u / 640.0)
    return (2.0 / a) * math.asinh(0.5 * ad)


def half_sinh_length(
    a: float, x: float, threshold: float = DEFAULT_SERIES_THRESHOLD
) -> float:
    """
    Calcola (2/a)·sinh(a·x/2) con ramo in serie x(1 + (ax)²/24 + (ax)⁴/1920).

    Args:
        a: Accelerazione propria (eV)
        x: Intervallo di tempo proprio (eV⁻¹), anche negativo
        threshold: Soglia su |a·x| per il ramo in serie

    Returns:
        Lunghezza in eV⁻¹, dispari in x
    """
    ax = a * x
    if abs(ax) < threshold:
        u = ax * ax
        return x * (1.0 + u / 24.0 + u * u / 1920.0)
    return (2.0 / a) * math.sinh(0.5 * ax)


def relative_error(
    model: float,
    oracle: float,
    envelope: Optional[float] = None,
    near_zero_fraction: float = 1e-3,
    zero_tolerance: float = 1e-30,
) -> Tuple[float, str]:
    """
    Errore tra modello e oracolo.

    Se l'oracolo è più piccolo di ``near_zero_fraction`` volte l'inviluppo,
    l'errore è scalato sull'inviluppo (il relativo puro perde significato vicino
    agli zeri della fase). Se entrambi i valori sono sotto ``zero_tolerance``
    l'errore è nullo.

    Returns:
        Coppia (errore, modalità) con modalità "relative", "envelope" o "zero"
    """
    if abs(oracle) <= zero_tolerance and abs(model) <= zero_tolerance:
        return 0.0, "zero"
    if envelope is not None and abs(oracle) < near_zero_fraction * envelope:
        return abs(model - oracle) / envelope, "envelope"
    if oracle == 0.0:
        return math.inf, "relative"
    return abs(model - oracle) / abs(oracle), "relative"


def max_matrix_error(
    model: np.ndarray,
    oracle: np.ndarray,
    envelope: float,
    near_zero_fraction: float = 1e-3,
    zero_tolerance: float = 1e-30,
) -> float:
    """Massimo errore componente per componente tra due matrici 3×3"""
    worst = 0.0
    for m, o in zip(np.ravel(model), np.ravel(oracle)):
        err, _ = relative_error(
            float(m), float(o), envelope, near_zero_fraction, zero_tolerance
        )
        worst = max(worst, err)
    return worst


def format_significant(value: float, digits: int = 9) -> str:
    """Formatta un numero con ``digits`` cifre significative"""
    return f"{value:.{digits}g}"


def all_finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)
