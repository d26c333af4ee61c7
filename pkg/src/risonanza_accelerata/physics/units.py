"""
Sistema di unità naturali ħ = c = k_B = 1.
Tutte le grandezze sono potenze di eV; le conversioni verso e da SI usano una
sola tabella di costanti CODATA condivisa da modello e oracoli.
"""

import math
from typing import Union

from pydantic import BaseModel, ConfigDict, Field
from scipy import constants as codata

from ..core.errors import DomainError, UnitRoleError
from ..core.models import NaturalQuantity, UnitRole
from ..core.utils import all_finite

Magnitude = Union[float, NaturalQuantity]


class PhysicalConstants(BaseModel):
    """Tabella delle costanti usate per le conversioni"""

    model_config = ConfigDict(frozen=True)

    hbar_c_ev_m: float = Field(..., description="ħc in eV·m")
    hbar_ev_s: float = Field(..., description="ħ in eV·s")
    c_m_s: float = Field(..., description="Velocità della luce in m/s")
    k_b_ev_k: float = Field(..., description="Costante di Boltzmann in eV/K")
    joule_per_ev: float = Field(..., description="Carica elementare in C (J/eV)")
    fine_structure: float = Field(..., description="Costante di struttura fine α")
    bohr_radius_m: float = Field(..., description="Raggio di Bohr in m")

    @classmethod
    def from_codata(cls) -> "PhysicalConstants":
        return cls(
            hbar_c_ev_m=codata.hbar * codata.c / codata.e,
            hbar_ev_s=codata.hbar / codata.e,
            c_m_s=codata.c,
            k_b_ev_k=codata.k / codata.e,
            joule_per_ev=codata.e,
            fine_structure=codata.alpha,
            bohr_radius_m=codata.physical_constants["Bohr radius"][0],
        )

    @property
    def bohr_radius_natural(self) -> float:
        """Raggio di Bohr in eV⁻¹"""
        return self.bohr_radius_m / self.hbar_c_ev_m

    @property
    def elementary_charge_natural(self) -> float:
        """Carica elementare adimensionale e = √(4πα) (Heaviside-Lorentz)"""
        return math.sqrt(4.0 * math.pi * self.fine_structure)


CONSTANTS = PhysicalConstants.from_codata()


def as_quantity(value: float, role: UnitRole) -> NaturalQuantity:
    return NaturalQuantity(value=value, role=role)


def magnitude(value: Magnitude, role: UnitRole) -> float:
    """
    Estrae il modulo controllando il ruolo se la grandezza è etichettata.

    Raises:
        UnitRoleError: se il ruolo non corrisponde
    """
    if isinstance(value, NaturalQuantity):
        if value.role is not role:
            raise UnitRoleError(
                f"Attesa una grandezza di tipo {role.value}, ricevuta {value.role.value}"
            )
        return value.value
    return float(value)


def _finite(value: float, name: str) -> float:
    if not all_finite(value):
        raise DomainError(f"{name} deve essere finito, ricevuto {value}")
    return value


def _non_negative(value: float, name: str) -> float:
    _finite(value, name)
    if value < 0:
        raise DomainError(f"{name} deve essere >= 0, ricevuto {value}")
    return value


# Lunghezze


def length_si_to_natural(meters: float) -> NaturalQuantity:
    """Metri → eV⁻¹ dividendo per ħc"""
    _non_negative(meters, "La lunghezza")
    return as_quantity(meters / CONSTANTS.hbar_c_ev_m, UnitRole.LENGTH)


def length_natural_to_si(length: Magnitude) -> float:
    """eV⁻¹ → metri"""
    value = _non_negative(magnitude(length, UnitRole.LENGTH), "La lunghezza")
    return value * CONSTANTS.hbar_c_ev_m


# Accelerazioni


def acceleration_si_to_natural(m_per_s2: float) -> NaturalQuantity:
    """m/s² → eV moltiplicando per ħ/c"""
    _non_negative(m_per_s2, "L'accelerazione")
    return as_quantity(
        m_per_s2 * CONSTANTS.hbar_ev_s / CONSTANTS.c_m_s, UnitRole.ACCELERATION
    )


def acceleration_natural_to_si(a: Magnitude) -> float:
    """eV → m/s²"""
    value = _non_negative(magnitude(a, UnitRole.ACCELERATION), "L'accelerazione")
    return value * CONSTANTS.c_m_s / CONSTANTS.hbar_ev_s


# Energie


def energy_natural_to_joule(energy: Magnitude) -> float:
    """eV → J (le energie possono avere segno)"""
    value = _finite(magnitude(energy, UnitRole.ENERGY), "L'energia")
    return value * CONSTANTS.joule_per_ev


def energy_joule_to_natural(joules: float) -> NaturalQuantity:
    """J → eV"""
    _finite(joules, "L'energia")
    return as_quantity(joules / CONSTANTS.joule_per_ev, UnitRole.ENERGY)


# Temperature


def temperature_natural_to_kelvin(temperature: Magnitude) -> float:
    value = _non_negative(
        magnitude(temperature, UnitRole.TEMPERATURE), "La temperatura"
    )
    return value / CONSTANTS.k_b_ev_k


def temperature_kelvin_to_natural(kelvin: float) -> NaturalQuantity:
    _non_negative(kelvin, "La temperatura")
    return as_quantity(kelvin * CONSTANTS.k_b_ev_k, UnitRole.TEMPERATURE)


def unruh_temperature(a: Magnitude) -> NaturalQuantity:
    """
    Temperatura di Unruh T = a/(2π) in unità naturali.

    Args:
        a: Accelerazione propria in eV

    Returns:
        Temperatura in eV
    """
    value = _non_negative(magnitude(a, UnitRole.ACCELERATION), "L'accelerazione")
    return as_quantity(value / (2.0 * math.pi), UnitRole.TEMPERATURE)


def unruh_temperature_si(m_per_s2: float) -> float:
    """Temperatura di Unruh ħa/(2πk_Bc) in kelvin per a in m/s²"""
    return temperature_natural_to_kelvin(
        unruh_temperature(acceleration_si_to_natural(m_per_s2))
    )


def unruh_temperature_cgs(cm_per_s2: float) -> float:
    """Temperatura di Unruh in kelvin per a in cm/s²"""
    _non_negative(cm_per_s2, "L'accelerazione")
    return unruh_temperature_si(cm_per_s2 * 1e-2)
