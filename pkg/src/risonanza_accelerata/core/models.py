"""
Modelli core del sistema.
Definisce le grandezze in unità naturali, la geometria della coppia di atomi,
i parametri dei due modelli di campo e i record dei risultati.
"""

import math
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

AXES = "xyz"


class UnitRole(str, Enum):
    """Ruoli dimensionali in unità ħ=c=k_B=1 (potenze di eV)"""

    ENERGY = "energy"  # eV
    LENGTH = "length"  # eV⁻¹
    ACCELERATION = "acceleration"  # eV
    TEMPERATURE = "temperature"  # eV


class Alignment(str, Enum):
    """Allineamento della coppia di atomi rispetto allo specchio"""

    PERPENDICULAR = "perp"
    PARALLEL = "par"


class BellSign(int, Enum):
    """Stato correlato simmetrico |ψ₊⟩ o antisimmetrico |ψ₋⟩"""

    SYMMETRIC = 1
    ANTISYMMETRIC = -1


class TensorCase(str, Enum):
    """Casi delle funzioni f/h: termine libero e immagine per le due coppie"""

    PERP_BOUNDARY = "perp_boundary"
    PERP_FREE = "perp_free"
    PAR_BOUNDARY = "par_boundary"
    PAR_FREE = "par_free"


class Regime(str, Enum):
    """Regimi asintotici del caso scalare"""

    FAR_ZONE = "far_zone"
    INTERMEDIATE = "intermediate"


class Zone(str, Enum):
    """Zona fissata dalla lunghezza di accelerazione z_a = 1/a"""

    NEAR = "near"
    INTERMEDIATE = "intermediate"
    FAR = "far"
    MIXED = "mixed"


class NaturalQuantity(BaseModel):
    """Grandezza scalare con ruolo dimensionale"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    value: float = Field(..., description="Modulo in potenze di eV")
    role: UnitRole = Field(..., description="Ruolo dimensionale")

    def __float__(self) -> float:
        return self.value


class PairGeometry(BaseModel):
    """
    Configurazione della coppia di atomi accelerati vicino allo specchio in z=0.

    z = 0 (atomo a contatto con lo specchio) è accettato: per il campo scalare i
    termini libero e di bordo si cancellano, mentre le funzioni f/h del bordo
    parallelo richiedono z > 0 e sollevano DomainError.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alignment: Alignment = Field(..., description="Perpendicolare o parallela")
    separation: float = Field(..., gt=0, description="L (perp) o D (par) in eV⁻¹")
    z: float = Field(
        ...,
        ge=0,
        description="Distanza dallo specchio dell'atomo più vicino in eV⁻¹ (0 = contatto)",
    )
    a: float = Field(default=0.0, ge=0, description="Accelerazione propria in eV")

    def with_acceleration(self, a: float) -> "PairGeometry":
        """Stessa geometria con un'altra accelerazione"""
        return PairGeometry(
            alignment=self.alignment, separation=self.separation, z=self.z, a=a
        )


class ImageDistances(BaseModel):
    """Distanza diretta e distanza dall'immagine speculare"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    direct: float = Field(..., description="L o D")
    image: float = Field(..., description="ℛ = L+2z oppure R = √(D²+4z²)")
    rtilde_sq: Optional[float] = Field(
        None, description="R̃² = D²−4z² con segno (solo parallelo)"
    )

    @model_validator(mode="after")
    def _image_not_shorter(self) -> "ImageDistances":
        if self.image < self.direct:
            raise ValueError("la distanza dall'immagine non può essere minore di quella diretta")
        return self


class EnergyBreakdown(BaseModel):
    """Termine libero, termine di bordo e totale dello shift di energia (eV)"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    free_term: float = Field(..., description="Termine dello spazio libero")
    boundary_term: float = Field(..., description="Termine dovuto allo specchio")
    total: float = Field(..., description="free_term + boundary_term")

    @classmethod
    def from_terms(cls, free_term: float, boundary_term: float) -> "EnergyBreakdown":
        return cls(
            free_term=free_term,
            boundary_term=boundary_term,
            total=free_term + boundary_term,
        )

    @model_validator(mode="after")
    def _total_is_sum(self) -> "EnergyBreakdown":
        if self.total != self.free_term + self.boundary_term:
            raise ValueError("total deve essere free_term + boundary_term")
        return self


class ScalarParams(BaseModel):
    """Parametri del modello con campo scalare"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    geometry: PairGeometry
    omega0: float = Field(..., gt=0, description="Frequenza di transizione ω₀ in eV")
    lambda_sq: float = Field(default=1.0, ge=0, description="Accoppiamento λ²")
    sign: BellSign = Field(default=BellSign.SYMMETRIC, description="Stato di Bell")


class DipolePair(BaseModel):
    """Momenti di dipolo di transizione (componenti x, y, z) degli atomi A e B"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    mu_a: Tuple[float, float, float] = Field(..., description="Dipolo di A in eV⁻¹")
    mu_b: Tuple[float, float, float] = Field(..., description="Dipolo di B in eV⁻¹")

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.mu_a, dtype=float), np.asarray(self.mu_b, dtype=float)

    def scaled(self, k_a: float = 1.0, k_b: float = 1.0) -> "DipolePair":
        return DipolePair(
            mu_a=tuple(k_a * c for c in self.mu_a),
            mu_b=tuple(k_b * c for c in self.mu_b),
        )


class EmParams(BaseModel):
    """Parametri del modello con campo elettromagnetico"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    geometry: PairGeometry
    omega0: float = Field(..., gt=0, description="Frequenza di transizione ω₀ in eV")
    dipoles: DipolePair
    sign: BellSign = Field(default=BellSign.SYMMETRIC, description="Stato di Bell")


class SusceptibilityTensor(BaseModel):
    """
    Funzioni f_ij e h_ij di un caso del tensore di suscettività.

    Sono memorizzate solo le coppie con primo indice <= secondo (xx, yy, zz, xy, xz, yz);
    ``symmetry`` dà il segno sotto lo scambio i↔j per ogni coppia fuori diagonale.
    Le coppie non elencate sono identicamente nulle.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    case: TensorCase
    f: Dict[str, float] = Field(..., description="Componenti f_ij")
    h: Dict[str, float] = Field(..., description="Componenti h_ij")
    symmetry: Dict[str, int] = Field(
        default_factory=dict, description="+1 simmetrica, -1 antisimmetrica"
    )

    @model_validator(mode="after")
    def _consistent_keys(self) -> "SusceptibilityTensor":
        if set(self.f) != set(self.h):
            raise ValueError("f e h devono popolare le stesse coppie")
        for pair in self.f:
            if len(pair) != 2 or AXES.index(pair[0]) > AXES.index(pair[1]):
                raise ValueError(f"coppia non canonica: {pair}")
            if pair[0] != pair[1] and self.symmetry.get(pair) not in (1, -1):
                raise ValueError(f"simmetria mancante per {pair}")
        return self

    def _component(self, table: Dict[str, float], i: str, j: str) -> float:
        if AXES.index(i) <= AXES.index(j):
            return table.get(i + j, 0.0)
        pair = j + i
        if pair not in table:
            return 0.0
        return self.symmetry[pair] * table[pair]

    def f_ij(self, i: str, j: str) -> float:
        return self._component(self.f, i, j)

    def h_ij(self, i: str, j: str) -> float:
        return self._component(self.h, i, j)

    def _matrix(self, table: Dict[str, float]) -> np.ndarray:
        return np.array(
            [[self._component(table, i, j) for j in AXES] for i in AXES], dtype=float
        )

    def f_matrix(self) -> np.ndarray:
        return self._matrix(self.f)

    def h_matrix(self) -> np.ndarray:
        return self._matrix(self.h)


class OracleReport(BaseModel):
    """Esito di un confronto modello/oracolo"""

    case_id: str = Field(..., description="Identificativo del caso")
    model_value: float = Field(..., description="Valore del modello")
    oracle_value: float = Field(..., description="Valore dell'oracolo")
    rel_error: float = Field(..., description="Errore (relativo o scalato sull'inviluppo)")
    tolerance: float = Field(..., description="Tolleranza applicata")
    passed: bool = Field(..., description="rel_error <= tolerance")
    informational: bool = Field(
        default=False, description="Non concorre all'esito complessivo"
    )

    def to_record(self) -> Dict[str, Union[str, float, bool, None]]:
        """Record JSON stretto: i valori non finiti diventano null"""

        def finite(value: float) -> Optional[float]:
            return value if math.isfinite(value) else None

        return {
            "case_id": self.case_id,
            "model": finite(self.model_value),
            "oracle": finite(self.oracle_value),
            "rel_error": finite(self.rel_error),
            "tolerance": finite(self.tolerance),
            "pass": self.passed,
        }


class GridPoint(BaseModel):
    """Punto di una griglia di confronto asintotico"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alignment: Alignment = Field(default=Alignment.PERPENDICULAR)
    a: float = Field(..., gt=0)
    separation: float = Field(..., gt=0)
    z: float = Field(..., ge=0)
    omega0: float = Field(..., gt=0)

    def geometry(self) -> PairGeometry:
        return PairGeometry(
            alignment=self.alignment, separation=self.separation, z=self.z, a=self.a
        )


class SweepParameter(str, Enum):
    """Parametro variato in uno sweep"""

    A = "a"
    SEPARATION = "separation"
    Z = "z"
    OMEGA0 = "omega0"


class SweepScale(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class SweepOutput(str, Enum):
    FREE = "free"
    BOUNDARY = "boundary"
    TOTAL = "total"
    STATIC_REFERENCE = "static_reference"


class SweepSpec(BaseModel):
    """Specifica di uno sweep su un parametro"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    swept_parameter: SweepParameter
    start: float = Field(..., description="Estremo inferiore")
    stop: float = Field(..., description="Estremo superiore")
    points: int = Field(..., ge=2, description="Numero di punti")
    scale: SweepScale = Field(default=SweepScale.LINEAR)
    fixed: Union[ScalarParams, EmParams] = Field(
        ..., description="Parametri fissi; il parametro variato viene sostituito"
    )
    outputs: List[SweepOutput] = Field(default_factory=lambda: list(SweepOutput))

    @model_validator(mode="after")
    def _valid_range(self) -> "SweepSpec":
        if not self.start < self.stop:
            raise ValueError("serve start < stop")
        if self.scale is SweepScale.LOG and self.start <= 0:
            raise ValueError("la scala logaritmica richiede start > 0")
        return self

    def grid(self) -> np.ndarray:
        if self.scale is SweepScale.LOG:
            return np.logspace(
                math.log10(self.start), math.log10(self.stop), self.points
            )
        return np.linspace(self.start, self.stop, self.points)
