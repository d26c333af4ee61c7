"""
Sweep di parametri e scrittura dei CSV.
I punti sono valutati in parallelo; la tabella mantiene l'ordine della griglia.
"""

import asyncio
from pathlib import Path
from typing import Dict, List, Union

import numpy as np
import pandas as pd
from loguru import logger

from ..config.settings import Figure3Settings, get_settings
from ..core.models import (
    Alignment,
    EmParams,
    EnergyBreakdown,
    PairGeometry,
    ScalarParams,
    SweepOutput,
    SweepParameter,
    SweepSpec,
)
from ..physics.em_model import em_energy
from ..physics.scalar_model import scalar_energy, scalar_energy_static

Params = Union[ScalarParams, EmParams]

OUTPUT_COLUMNS: Dict[SweepOutput, str] = {
    SweepOutput.FREE: "free",
    SweepOutput.BOUNDARY: "boundary",
    SweepOutput.TOTAL: "total",
    SweepOutput.STATIC_REFERENCE: "static_total",
}

FIGURE3_SERIES = (
    ("scalar_perp", "perpendicolare, accelerati", "-"),
    ("scalar_par", "parallela, accelerati", "-"),
    ("static_perp", "perpendicolare, statici", "--"),
    ("static_par", "parallela, statici", "--"),
)


def with_parameter(fixed: Params, parameter: SweepParameter, value: float) -> Params:
    """Copia validata di ``fixed`` con un parametro sostituito"""
    data = fixed.model_dump()
    if parameter is SweepParameter.OMEGA0:
        data["omega0"] = value
    else:
        data["geometry"][parameter.value] = value
    return type(fixed).model_validate(data)


def evaluate(params: Params) -> EnergyBreakdown:
    """Energia in forma chiusa per il modello scalare o elettromagnetico"""
    if isinstance(params, ScalarParams):
        return scalar_energy(params)
    return em_energy(params)


def static_reference(params: Params) -> EnergyBreakdown:
    """Energia degli stessi atomi a riposo"""
    if isinstance(params, ScalarParams):
        return scalar_energy_static(params)
    return em_energy(
        params.model_copy(update={"geometry": params.geometry.with_acceleration(0.0)})
    )


def _row(spec: SweepSpec, value: float) -> Dict[str, float]:
    params = with_parameter(spec.fixed, spec.swept_parameter, value)
    energy = evaluate(params)
    values = {
        SweepOutput.FREE: energy.free_term,
        SweepOutput.BOUNDARY: energy.boundary_term,
        SweepOutput.TOTAL: energy.total,
    }
    if SweepOutput.STATIC_REFERENCE in spec.outputs:
        values[SweepOutput.STATIC_REFERENCE] = static_reference(params).total

    row = {"param": float(value)}
    for output in SweepOutput:
        if output in spec.outputs:
            row[OUTPUT_COLUMNS[output]] = values[output]
    return row


class SweepRunner:
    """Valutatore concorrente degli sweep"""

    def __init__(self):
        self.settings = get_settings()

    async def run(self, spec: SweepSpec) -> pd.DataFrame:
        """
        Valuta lo sweep.

        Args:
            spec: Specifica dello sweep

        Returns:
            DataFrame con colonne param e le uscite richieste, in ordine di griglia
        """
        grid = spec.grid()
        logger.info(
            f"Sweep su {spec.swept_parameter.value}: {len(grid)} punti "
            f"[{spec.start:g}, {spec.stop:g}] ({spec.scale.value})"
        )

        semaphore = asyncio.Semaphore(max(1, self.settings.sweep_workers))

        async def evaluate_single(value: float) -> Dict[str, float]:
            async with semaphore:
                return await asyncio.to_thread(_row, spec, float(value))

        # gather preserva l'ordine degli argomenti
        rows = await asyncio.gather(*(evaluate_single(v) for v in grid))
        columns = ["param"] + [OUTPUT_COLUMNS[o] for o in SweepOutput if o in spec.outputs]
        return pd.DataFrame(rows, columns=columns)


def run_sweep(spec: SweepSpec) -> pd.DataFrame:
    return asyncio.run(SweepRunner().run(spec))


def figure3_table(config: Figure3Settings) -> pd.DataFrame:
    """
    Energie scalari per λ² unitario in funzione di a, per entrambi gli
    allineamenti, accanto ai rispettivi valori statici.
    """
    accelerations = np.logspace(
        np.log10(config.a_from), np.log10(config.a_to), config.points
    )
    columns: Dict[str, List[float]] = {
        "a": [],
        "scalar_perp": [],
        "scalar_par": [],
        "static_perp": [],
        "static_par": [],
    }

    statics = {}
    for alignment in Alignment:
        base = ScalarParams(
            geometry=PairGeometry(
                alignment=alignment, separation=config.separation, z=config.z
            ),
            omega0=config.omega0,
            lambda_sq=config.lambda_sq,
        )
        statics[alignment] = (base, scalar_energy_static(base).total / config.lambda_sq)

    for a in accelerations:
        columns["a"].append(float(a))
        for alignment, key in (
            (Alignment.PERPENDICULAR, "perp"),
            (Alignment.PARALLEL, "par"),
        ):
            base, static_total = statics[alignment]
            params = base.model_copy(
                update={"geometry": base.geometry.with_acceleration(float(a))}
            )
            columns[f"scalar_{key}"].append(scalar_energy(params).total / config.lambda_sq)
            columns[f"static_{key}"].append(static_total)

    logger.info(f"Tabella della figura: {len(accelerations)} accelerazioni")
    return pd.DataFrame(columns)


def write_csv(table: pd.DataFrame, path: Path) -> Path:
    """
    Scrive il CSV: UTF-8, LF, punto decimale, 9 cifre significative.

    Raises:
        OSError: se il percorso non è scrivibile
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(
        path,
        index=False,
        float_format="%.9g",
        lineterminator="\n",
        encoding="utf-8",
    )
    logger.info(f"CSV scritto: {path} ({len(table)} righe)")
    return path
