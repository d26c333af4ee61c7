"""
Configurazione centralizzata del sistema.
Utilizza pydantic-settings per gestione di environment variables e file key=value.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..core.errors import ConfigFileError


class NumericsSettings(BaseModel):
    """Configurazione per i rami numerici"""

    # Ramo in serie per (2/a)sinh(ax/2) e (2/a)asinh(ax/2)
    series_threshold: float = Field(
        default=1e-4, description="Soglia su a·x sotto cui si usa la serie di Taylor"
    )

    # Root finding dell'oracolo sul cono di luce
    bisection_xtol_rel: float = Field(
        default=1e-3, description="Ampiezza relativa finale della bisezione"
    )
    newton_xtol_rel: float = Field(
        default=1e-12, description="Tolleranza relativa della rifinitura di Newton"
    )
    max_root_iterations: int = Field(
        default=200, description="Passi massimi bisezione + Newton"
    )
    derivative_step_rel: float = Field(
        default=1e-6, description="Passo relativo delle differenze centrali"
    )


class ValidationSettings(BaseModel):
    """Configurazione per la suite di validazione"""

    scalar_oracle_tolerance: float = Field(
        default=1e-6, description="Tolleranza oracolo delta-root vs forma chiusa"
    )
    em_static_tolerance: float = Field(
        default=1e-12, description="Tolleranza tensore statico da manuale"
    )
    inertial_tolerance: float = Field(
        default=1e-8, description="Tolleranza recupero inerziale"
    )
    series_tolerance: float = Field(
        default=1e-10, description="Tolleranza continuità ramo in serie"
    )
    asymptotic_tolerance: float = Field(
        default=1e-2, description="Tolleranza forme asintotiche"
    )
    pinned_tolerance: float = Field(
        default=1e-9, description="Tolleranza sui punti di riferimento delle funzioni f/h"
    )
    zero_tolerance: float = Field(
        default=1e-30, description="Tolleranza assoluta per confronti zero-zero"
    )
    near_zero_fraction: float = Field(
        default=1e-3,
        description="Frazione dell'inviluppo sotto cui si passa a tolleranza assoluta",
    )
    phase_filter: float = Field(
        default=0.5, description="Soglia |cos Θ| per il campionamento asintotico"
    )

    # Campionamento
    random_seed: int = Field(default=20180917, description="Seed per punti casuali")
    em_random_points: int = Field(
        default=20, description="Punti casuali (d, ω₀) per l'oracolo statico EM"
    )
    property_samples: int = Field(
        default=1000, description="Campioni per i controlli di segno e bilinearità"
    )

    # Griglia oracolo scalare
    scalar_ad_grid: List[float] = Field(
        default=[1e-3, 0.1, 1.0, 10.0, 100.0], description="Valori di a·d"
    )
    scalar_omega_d_grid: List[float] = Field(
        default=[0.1, 1.0, 10.0], description="Valori di ω₀·d"
    )


class Figure3Settings(BaseModel):
    """Configurazione per la riproduzione della figura dell'energia vs accelerazione"""

    separation: float = Field(default=7.5e-2, description="L = D in eV⁻¹")
    z: float = Field(default=2.0e-2, description="Distanza dallo specchio in eV⁻¹")
    omega0: float = Field(default=4.17, description="Frequenza di transizione in eV")
    lambda_sq: float = Field(default=1.0, gt=0, description="Accoppiamento λ²")
    a_from: float = Field(default=1e-8, description="Accelerazione minima in eV")
    a_to: float = Field(default=1e3, description="Accelerazione massima in eV")
    points: int = Field(default=221, description="Punti della griglia logaritmica")
    csv_name: str = Field(default="figure3.csv", description="Nome file CSV")
    script_name: str = Field(
        default="figure3_plot.py", description="Nome dello script di plot"
    )


class EstimateSettings(BaseModel):
    """Configurazione per la stima numerica della configurazione incrociata xz"""

    a: float = Field(default=2.2e-6, description="Accelerazione in eV")
    z: float = Field(default=5.07e-2, description="Distanza dallo specchio in eV⁻¹")
    separation: float = Field(default=7.5e-2, description="L in eV⁻¹")
    omega0: float = Field(default=4.17, description="ω₀ in eV")
    target_energy: float = Field(default=4.4e-10, description="Stima di riferimento in eV")
    band_decades: float = Field(
        default=2.0, description="Ampiezza della banda in ordini di grandezza"
    )


class Settings(BaseSettings):
    """Configurazione principale del sistema"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="RDD_",
        case_sensitive=False,
        env_nested_delimiter="__",
    )

    # Logging
    log_level: str = Field(default="WARNING", description="Livello di logging")
    log_format: str = Field(
        default="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>",
        description="Formato log",
    )

    # Output
    output_dir: Path = Field(
        default=Path("."), description="Directory di default per CSV e script"
    )
    sweep_workers: int = Field(
        default=4, description="Valutazioni concorrenti massime negli sweep"
    )

    # Sottoconfigurazioni
    numerics: NumericsSettings = Field(default_factory=NumericsSettings)
    validation: ValidationSettings = Field(default_factory=ValidationSettings)
    figure3: Figure3Settings = Field(default_factory=Figure3Settings)
    estimate: EstimateSettings = Field(default_factory=EstimateSettings)


# Istanza globale delle impostazioni
settings = Settings()


def get_settings() -> Settings:
    """Factory per ottenere le impostazioni"""
    return settings


def load_config_file(path: Path) -> Dict[str, Any]:
    """
    Legge un file di configurazione in formato key=value.

    Le chiavi puntate (es. ``figure3.points``) indirizzano i gruppi annidati.
    Righe vuote e commenti con ``#`` sono ignorati.

    Args:
        path: Percorso del file

    Returns:
        Dizionario annidato pronto per ``Settings(**...)``

    Raises:
        FileNotFoundError: se il file non esiste
        ConfigFileError: se una riga non è nel formato key=value
    """
    if not path.exists():
        raise FileNotFoundError(f"File di configurazione non trovato: {path}")

    values: Dict[str, Any] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigFileError(f"{path}:{lineno}: attesa una riga key=value")

        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigFileError(f"{path}:{lineno}: chiave vuota")

        node = values
        *groups, leaf = key.lower().split(".")
        for group in groups:
            node = node.setdefault(group, {})
            if not isinstance(node, dict):
                raise ConfigFileError(f"{path}:{lineno}: chiave in conflitto '{key}'")
        node[leaf] = value

    return values


def configure(overrides: Optional[Dict[str, Any]] = None) -> Settings:
    """
    Ricostruisce l'istanza globale.
    I valori passati (tipicamente da ``load_config_file``) hanno precedenza
    sulle variabili d'ambiente.
    """
    global settings

    settings = Settings(**(overrides or {}))
    return settings
