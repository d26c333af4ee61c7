"""
Oracoli indipendenti per le forme chiuse.

- Oracolo sul cono di luce per il kernel scalare: risolve numericamente
  l'equazione dell'intervallo sulla traiettoria di Rindler e applica lo
  jacobiano della delta, senza passare per la forma chiusa.
- Tensore di dipolo statico da manuale, per il limite a = 0 dei tensori P.
- Punti di riferimento delle funzioni f/h ad accelerazione finita,
  ridotti a mano.
"""

import math
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import root_scalar

from ..config.settings import get_settings
from ..core.errors import DomainError, OracleFailure
from ..core.models import TensorCase
from ..physics.geometry import rindler_interval

AXIS_VECTORS = {
    "x": (1.0, 0.0, 0.0),
    "y": (0.0, 1.0, 0.0),
    "z": (0.0, 0.0, 1.0),
}

# Riflessione nello specchio z = 0
MIRROR = np.diag([1.0, 1.0, -1.0])


def light_cone_crossing(a: float, d: float) -> Tuple[float, int]:
    """
    Tempo proprio Δτ* in cui (2/a)·sinh(a·Δτ*/2) = d.

    Bisezione su [0, d] fino ad ampiezza relativa ``bisection_xtol_rel``,
    poi rifinitura di Newton con derivata alle differenze centrali.

    Returns:
        Coppia (Δτ*, iterazioni totali)

    Raises:
        OracleFailure: se il root finding non converge entro il budget
    """
    numerics = get_settings().numerics
    d2 = d * d

    def interval_gap(dtau: float) -> float:
        return rindler_interval(a, dtau) ** 2 - d2

    def interval_slope(dtau: float) -> float:
        step = numerics.derivative_step_rel * dtau
        return (interval_gap(dtau + step) - interval_gap(dtau - step)) / (2.0 * step)

    try:
        bracket = root_scalar(
            interval_gap,
            bracket=(0.0, d),
            method="bisect",
            xtol=numerics.bisection_xtol_rel * d,
            maxiter=numerics.max_root_iterations,
        )
        remaining = numerics.max_root_iterations - bracket.iterations
        polished = root_scalar(
            interval_gap,
            x0=bracket.root,
            fprime=interval_slope,
            method="newton",
            xtol=numerics.newton_xtol_rel * d,
            maxiter=max(remaining, 1),
        )
    except (RuntimeError, ValueError, ZeroDivisionError) as e:
        raise OracleFailure(f"Root finding non convergente per a={a}, d={d}: {e}")

    if not polished.converged:
        raise OracleFailure(
            f"Newton non convergente per a={a}, d={d}: {polished.flag}"
        )
    return polished.root, bracket.iterations + polished.iterations


def scalar_delta_root_oracle(a: float, d: float, omega0: float) -> float:
    """
    Kernel scalare calcolato dall'oracolo sul cono di luce.

    Con F(Δτ) = Δt² − |Δx|² = (2/a)²sinh²(aΔτ/2) − d², la delta sul cono
    contribuisce 2·cos(ω₀Δτ*)/|F'(Δτ*)|, con F' stimata numericamente.

    Args:
        a: Accelerazione propria (eV), > 0
        d: Distanza (eV⁻¹), > 0
        omega0: Frequenza di transizione (eV)

    Returns:
        K(d) in eV
    """
    if d <= 0:
        raise DomainError(f"La distanza deve essere > 0, ricevuta {d}")
    if a <= 0:
        raise DomainError(f"L'oracolo richiede a > 0, ricevuta {a}")

    dtau, _ = light_cone_crossing(a, d)

    step = get_settings().numerics.derivative_step_rel * dtau
    slope = (
        rindler_interval(a, dtau + step) ** 2 - rindler_interval(a, dtau - step) ** 2
    ) / (2.0 * step)

    return 2.0 * math.cos(omega0 * dtau) / abs(slope)


def scalar_envelope(a: float, d: float) -> float:
    """Inviluppo locale 1/(d·√(1 + a²d²/4)) del kernel scalare"""
    return 1.0 / (d * math.sqrt(1.0 + 0.25 * a * a * d * d))


def _unit_vector(n_axis: Union[str, Sequence[float]]) -> np.ndarray:
    if isinstance(n_axis, str):
        if n_axis not in AXIS_VECTORS:
            raise DomainError(f"Asse sconosciuto: {n_axis}")
        n_axis = AXIS_VECTORS[n_axis]
    n = np.asarray(n_axis, dtype=float)
    norm = float(np.linalg.norm(n))
    if norm == 0:
        raise DomainError("La direzione deve essere non nulla")
    return n / norm


def em_static_oracle(
    d: float, n_axis: Union[str, Sequence[float]], omega0: float
) -> np.ndarray:
    """
    Tensore di risonanza statico tra dipoli a distanza d lungo n̂:

    V_ij = (δ_ij − 3n_in_j)(cos/d³ + ω₀sin/d²) − (δ_ij − n_in_j)ω₀²cos/d
    """
    if d <= 0:
        raise DomainError(f"La distanza deve essere > 0, ricevuta {d}")

    n = _unit_vector(n_axis)
    nn = np.outer(n, n)
    identity = np.eye(3)
    c, s = math.cos(omega0 * d), math.sin(omega0 * d)

    near = c / d**3 + omega0 * s / d**2
    radiative = omega0 * omega0 * c / d
    return (identity - 3.0 * nn) * near - (identity - nn) * radiative


def em_image_static_oracle(
    d_img: float, n_axis: Union[str, Sequence[float]], omega0: float
) -> np.ndarray:
    """Tensore statico verso il dipolo immagine, moltiplicato a destra per la riflessione"""
    return em_static_oracle(d_img, n_axis, omega0) @ MIRROR


def em_envelope(d: float, omega0: float) -> float:
    """Scala 1/d³ + ω₀/d² + ω₀²/d delle componenti del tensore statico"""
    return 1.0 / d**3 + omega0 / d**2 + omega0 * omega0 / d


class ReferencePoint(BaseModel):
    """Valori f/h ridotti a mano per un caso in un punto ad accelerazione finita"""

    model_config = ConfigDict(frozen=True)

    case: TensorCase
    label: str = Field(..., description="Etichetta del punto")
    args: Tuple[float, ...] = Field(..., description="Argomenti della funzione fh_*")
    f: Dict[str, float]
    h: Dict[str, float]


def _perp_points() -> List[ReferencePoint]:
    # a=1, d=1, ω=1: N² = 5/4
    n = math.sqrt(1.25)
    # a=2, d=1, ω=3: N² = 2
    m = math.sqrt(2.0)
    return [
        ReferencePoint(
            case=TensorCase.PERP_BOUNDARY,
            label="a1_d1_w1",
            args=(1.0, 1.0, 1.0),
            f={"xx": 1.28, "yy": 1.2, "zz": 1.52, "xz": -0.16},
            h={
                "xx": -1.75 / n**5 + 1.0 / n**3,
                "yy": -1.0 / n**3 + 1.0 / n,
                "zz": -3.25 / n**5 + 0.25 / n**3,
                "xz": 1.0 / n**5 + 0.5 / n**3,
            },
        ),
        ReferencePoint(
            case=TensorCase.PERP_BOUNDARY,
            label="a2_d1_w3",
            args=(2.0, 1.0, 3.0),
            f={"xx": 3.75, "yy": 4.5, "zz": 3.75, "xz": 0.75},
            h={
                "xx": -7.0 / m**5 + 9.0 / m**3,
                "yy": -1.0 / m**3 + 9.0 / m,
                "zz": -7.0 / m**5 + 9.0 / m**3,
                "xz": 5.0 / m**5 + 9.0 / m**3,
            },
        ),
        ReferencePoint(
            case=TensorCase.PERP_FREE,
            label="a1_d1_w1",
            args=(1.0, 1.0, 1.0),
            f={"xx": 1.28, "yy": 1.2, "zz": -1.52, "xz": 0.16},
            h={
                "xx": -1.75 / n**5 + 1.0 / n**3,
                "yy": -1.0 / n**3 + 1.0 / math.sqrt(n),
                "zz": 3.25 / n**5 - 0.25 / n**3,
                "xz": -1.0 / n**5 - 0.5 / n**3,
            },
        ),
        ReferencePoint(
            case=TensorCase.PERP_FREE,
            label="a2_d1_w3",
            args=(2.0, 1.0, 3.0),
            f={"xx": 3.75, "yy": 4.5, "zz": -3.75, "xz": -0.75},
            h={
                "xx": -7.0 / m**5 + 9.0 / m**3,
                "yy": -1.0 / m**3 + 9.0 / math.sqrt(m),
                "zz": 7.0 / m**5 - 9.0 / m**3,
                "xz": -5.0 / m**5 - 9.0 / m**3,
            },
        ),
        ReferencePoint(
            case=TensorCase.PAR_FREE,
            label="a1_d1_w1",
            args=(1.0, 1.0, 1.0),
            f={"xx": 1.28, "yy": -1.52, "zz": 1.2, "xy": 0.16},
            h={
                "xx": -1.75 / n**5 + 1.0 / n**3,
                "yy": 3.25 / n**5 - 0.25 / n**3,
                "zz": -1.0 / n**3 + 1.0 / math.sqrt(n),
                "xy": -1.0 / n**5 - 0.5 / n**3,
            },
        ),
    ]


def _par_boundary_points() -> List[ReferencePoint]:
    # D=0.6, z=0.4 ⇒ R=1, R̃² = −0.28
    n = math.sqrt(1.25)
    m = math.sqrt(2.0)
    points = []
    for omega in (1.0, 2.0):
        w2 = omega * omega
        points.append(
            ReferencePoint(
                case=TensorCase.PAR_BOUNDARY,
                label=f"a1_D0.6_z0.4_w{omega:g}",
                args=(1.0, 0.6, 0.4, omega),
                f={
                    "xx": 1.28 * omega,
                    "yy": 0.2208 * omega,
                    "zz": 0.5408 * omega,
                    "xy": -0.096 * omega,
                    "xz": -0.128 * omega,
                    "yz": -1.3056 * omega,
                },
                h={
                    "xx": -1.75 / n**5 + w2 / n**3,
                    "yy": 0.37 / n**5 + 0.71 * w2 / n**3,
                    "zz": -1.63 / n**5 - 0.29 * w2 / n**3,
                    "xy": 0.6 / n**5 + 0.3 * w2 / n**3,
                    "xz": 0.8 / n**5 + 0.4 * w2 / n**3,
                    "yz": 2.16 / n**5 - 0.72 * w2 / n**3,
                },
            )
        )
    points.append(
        ReferencePoint(
            case=TensorCase.PAR_BOUNDARY,
            label="a2_D0.6_z0.4_w1",
            args=(2.0, 0.6, 0.4, 1.0),
            f={
                "xx": 1.25,
                "yy": 0.51,
                "zz": 0.26,
                "xy": 0.15,
                "xz": 0.2,
                "yz": -1.32,
            },
            h={
                "xx": -7.0 / m**5 + 1.0 / m**3,
                "yy": 1.24 / m**5 + 0.92 / m**3,
                "zz": -3.76 / m**5 - 0.08 / m**3,
                "xy": 3.0 / m**5 + 0.6 / m**3,
                "xz": 4.0 / m**5 + 0.8 / m**3,
                "yz": 4.32 / m**5 - 1.44 / m**3,
            },
        )
    )
    return points


def tensor_reference_points() -> List[ReferencePoint]:
    """Tutti i punti di riferimento, nell'ordine in cui la suite li verifica"""
    return _perp_points() + _par_boundary_points()
