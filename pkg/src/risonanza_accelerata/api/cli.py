"""
CLI per il calcolo dell'interazione di risonanza.
Comandi per energie puntuali, sweep, riproduzione della figura, validazione
e conversioni di unità.
"""

import functools
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import click
from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from ..config.settings import Figure3Settings, configure, get_settings, load_config_file
from ..core.errors import OracleFailure, RisonanzaError, UsageError
from ..core.models import (
    Alignment,
    BellSign,
    DipolePair,
    EmParams,
    PairGeometry,
    ScalarParams,
    SweepParameter,
    SweepScale,
    SweepSpec,
)
from ..core.utils import format_significant
from ..physics import units
from ..physics.em_model import DIPOLE_PRESETS, dipole_preset
from ..physics.geometry import classify_zone
from ..validation.suite import GROUPS, run_validation_suite, suite_passed
from .sweeps import FIGURE3_SERIES, evaluate, figure3_table, run_sweep, write_csv
from .templates import TemplateManager

console = Console()
err_console = Console(stderr=True)

EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

# Sezioni del file di configurazione che forniscono i default dei comandi
COMMAND_SECTIONS = ("energy", "sweep", "validate", "convert")

# Opzione della CLI corrispondente a ogni parametro variabile
SWEPT_OPTION = {
    SweepParameter.A: "a",
    SweepParameter.SEPARATION: "sep",
    SweepParameter.Z: "z",
    SweepParameter.OMEGA0: "omega0",
}

CONVERSIONS: Dict[str, Tuple[Callable[[float], Any], str, str]] = {
    "length-si": (units.length_si_to_natural, "m", "eV⁻¹"),
    "length-natural": (units.length_natural_to_si, "eV⁻¹", "m"),
    "acceleration-si": (units.acceleration_si_to_natural, "m/s²", "eV"),
    "acceleration-natural": (units.acceleration_natural_to_si, "eV", "m/s²"),
    "energy-joule": (units.energy_joule_to_natural, "J", "eV"),
    "energy-natural": (units.energy_natural_to_joule, "eV", "J"),
    "temperature-kelvin": (units.temperature_kelvin_to_natural, "K", "eV"),
    "temperature-natural": (units.temperature_natural_to_kelvin, "eV", "K"),
    "unruh": (units.unruh_temperature, "eV", "eV"),
    "unruh-si": (units.unruh_temperature_si, "m/s²", "K"),
    "unruh-cgs": (units.unruh_temperature_cgs, "cm/s²", "K"),
}


def _fail(message: str, code: int) -> None:
    err_console.print(f"❌ {message}", style="red", markup=False, highlight=False)
    sys.exit(code)


def handle_errors(func: Callable) -> Callable:
    """Traduce le eccezioni del dominio nei codici di uscita della CLI"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OracleFailure as e:
            _fail(str(e), EXIT_VALIDATION)
        except (RisonanzaError, ValidationError) as e:
            _fail(str(e), EXIT_USAGE)
        except OSError as e:
            _fail(f"Errore di I/O: {e}", EXIT_IO)

    return wrapper


def physics_options(func: Callable) -> Callable:
    """Opzioni comuni per definire un punto fisico"""
    options = [
        click.option(
            "--field",
            type=click.Choice(["scalar", "em"]),
            default="scalar",
            show_default=True,
            help="Campo accoppiato agli atomi",
        ),
        click.option(
            "--geometry",
            type=click.Choice([a.value for a in Alignment]),
            default=Alignment.PERPENDICULAR.value,
            show_default=True,
            help="Allineamento rispetto allo specchio",
        ),
        click.option("--a", "a", type=float, default=0.0, help="Accelerazione propria [eV]"),
        click.option("--sep", type=float, help="Separazione L o D [eV⁻¹]"),
        click.option("--z", "z", type=float, help="Distanza dallo specchio [eV⁻¹]"),
        click.option("--omega0", type=float, help="Frequenza di transizione [eV]"),
        click.option(
            "--state",
            type=click.Choice(["sym", "anti"]),
            default="sym",
            show_default=True,
            help="Stato simmetrico o antisimmetrico",
        ),
        click.option("--lambda-sq", type=float, help="Accoppiamento λ² (solo scalare, default 1)"),
        click.option("--dipole-a", help="Dipolo di A come x,y,z (solo em)"),
        click.option("--dipole-b", help="Dipolo di B come x,y,z (solo em)"),
        click.option(
            "--preset",
            type=click.Choice(list(DIPOLE_PRESETS)),
            help="Orientazione predefinita dei dipoli (solo em)",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _vector(text: str, flag: str) -> Tuple[float, float, float]:
    try:
        components = tuple(float(c) for c in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} deve essere nella forma x,y,z, ricevuto '{text}'")
    if len(components) != 3:
        raise UsageError(f"{flag} deve avere tre componenti, ricevuto '{text}'")
    return components


def build_params(
    field: str,
    geometry: str,
    a: float,
    sep: Optional[float],
    z: Optional[float],
    omega0: Optional[float],
    state: str,
    lambda_sq: Optional[float],
    dipole_a: Optional[str],
    dipole_b: Optional[str],
    preset: Optional[str],
):
    """
    Costruisce i parametri del modello dalle opzioni della CLI.

    Raises:
        UsageError: per opzioni mancanti o in contraddizione
    """
    missing = [
        flag
        for flag, value in (("--sep", sep), ("--z", z), ("--omega0", omega0))
        if value is None
    ]
    if missing:
        raise UsageError(f"Opzioni mancanti: {', '.join(missing)}")

    pair = PairGeometry(alignment=Alignment(geometry), separation=sep, z=z, a=a)
    sign = BellSign.SYMMETRIC if state == "sym" else BellSign.ANTISYMMETRIC

    if field == "scalar":
        if dipole_a or dipole_b or preset:
            raise UsageError("--dipole-a, --dipole-b e --preset valgono solo con --field em")
        return ScalarParams(
            geometry=pair,
            omega0=omega0,
            lambda_sq=1.0 if lambda_sq is None else lambda_sq,
            sign=sign,
        )

    if lambda_sq is not None:
        raise UsageError("--lambda-sq vale solo con --field scalar")
    if preset and (dipole_a or dipole_b):
        raise UsageError("--preset esclude --dipole-a e --dipole-b")
    if preset:
        dipoles = dipole_preset(preset)
    elif dipole_a and dipole_b:
        dipoles = DipolePair(
            mu_a=_vector(dipole_a, "--dipole-a"), mu_b=_vector(dipole_b, "--dipole-b")
        )
    else:
        raise UsageError("Con --field em servono --preset oppure --dipole-a e --dipole-b")
    return EmParams(geometry=pair, omega0=omega0, dipoles=dipoles, sign=sign)


def _significant(value: float) -> float:
    return float(format_significant(value))


@click.group()
@click.option(
    "--config",
    "config_file",
    type=click.Path(path_type=Path),
    help="File key=value con impostazioni e default dei comandi",
)
@click.option("--log-level", help="Livello di logging (default da RDD_LOG_LEVEL)")
@click.pass_context
def cli(ctx: click.Context, config_file: Optional[Path], log_level: Optional[str]):
    """Interazione di risonanza tra atomi accelerati vicino a uno specchio"""
    try:
        values = load_config_file(config_file) if config_file else {}
        command_defaults = {
            name: {k.replace("-", "_"): v for k, v in values.pop(name).items()}
            for name in COMMAND_SECTIONS
            if name in values
        }
        settings = configure(values)
    except (RisonanzaError, ValidationError, AttributeError) as e:
        _fail(f"Configurazione non valida: {e}", EXIT_USAGE)
    except OSError as e:
        _fail(f"Errore di I/O: {e}", EXIT_IO)

    ctx.default_map = command_defaults

    logger.remove()
    logger.add(
        sys.stderr,
        level=(log_level or settings.log_level).upper(),
        format=settings.log_format,
    )


@cli.command()
@physics_options
@click.option(
    "--units",
    "unit_system",
    type=click.Choice(["natural", "si"]),
    default="natural",
    show_default=True,
    help="Aggiunge i joule con si",
)
@click.option("--format", "-f", "output_format", type=click.Choice(["table", "json"]), default="table")
@handle_errors
def energy(unit_system: str, output_format: str, **options):
    """Shift di energia in un singolo punto"""
    params = build_params(**options)
    result = evaluate(params)
    zone = classify_zone(params.geometry)

    terms = (
        ("free", result.free_term),
        ("boundary", result.boundary_term),
        ("total", result.total),
    )

    if output_format == "json":
        output: Dict[str, Any] = {
            "field": options["field"],
            "geometry": options["geometry"],
            "state": options["state"],
            "zone": zone.value,
            "energy_ev": {name: _significant(value) for name, value in terms},
        }
        if unit_system == "si":
            output["energy_j"] = {
                name: _significant(units.energy_natural_to_joule(value))
                for name, value in terms
            }
        console.print_json(json.dumps(output, ensure_ascii=False))
        return

    table = Table(
        title=f"Campo {options['field']}, coppia {options['geometry']}, zona {zone.value}"
    )
    table.add_column("Termine", style="cyan")
    table.add_column("δE [eV]", style="green", justify="right")
    if unit_system == "si":
        table.add_column("δE [J]", style="yellow", justify="right")

    for name, value in terms:
        row = [name, format_significant(value)]
        if unit_system == "si":
            row.append(format_significant(units.energy_natural_to_joule(value)))
        table.add_row(*row)

    console.print(table)


@cli.command()
@physics_options
@click.option(
    "--param",
    "swept",
    type=click.Choice([p.value for p in SweepParameter]),
    required=True,
    help="Parametro variato",
)
@click.option("--from", "start", type=float, required=True, help="Estremo inferiore")
@click.option("--to", "stop", type=float, required=True, help="Estremo superiore")
@click.option("--points", type=int, default=50, show_default=True, help="Numero di punti")
@click.option(
    "--scale",
    type=click.Choice([s.value for s in SweepScale]),
    default=SweepScale.LINEAR.value,
    show_default=True,
)
@click.option("--output", "-o", type=click.Path(path_type=Path), help="CSV di output")
@handle_errors
def sweep(
    swept: str,
    start: float,
    stop: float,
    points: int,
    scale: str,
    output: Optional[Path],
    **options,
):
    """Sweep su un parametro con scrittura del CSV"""
    parameter = SweepParameter(swept)
    options[SWEPT_OPTION[parameter]] = start

    spec = SweepSpec(
        swept_parameter=parameter,
        start=start,
        stop=stop,
        points=points,
        scale=SweepScale(scale),
        fixed=build_params(**options),
    )
    out_path = output or get_settings().output_dir / "sweep.csv"
    write_csv(run_sweep(spec), out_path)
    console.print(f"💾 Sweep salvato in: {out_path}", style="yellow", markup=False)


@cli.command()
@click.option("--output-dir", type=click.Path(path_type=Path), help="Directory di output")
@click.option("--points", type=int, help="Punti della griglia in a")
@click.option("--a-from", type=float, help="Accelerazione minima [eV]")
@click.option("--a-to", type=float, help="Accelerazione massima [eV]")
@click.option("--sep", type=float, help="L = D [eV⁻¹]")
@click.option("--z", "z", type=float, help="Distanza dallo specchio [eV⁻¹]")
@click.option("--omega0", type=float, help="Frequenza di transizione [eV]")
@handle_errors
def figure3(output_dir: Optional[Path], sep: Optional[float], **overrides):
    """Energia scalare in funzione dell'accelerazione, con script di plot"""
    settings = get_settings()
    overrides["separation"] = sep
    updates = {k: v for k, v in overrides.items() if v is not None}
    config = Figure3Settings(**{**settings.figure3.model_dump(), **updates})
    out_dir = output_dir or settings.output_dir

    table = figure3_table(config)
    csv_path = write_csv(table, out_dir / config.csv_name)

    script = TemplateManager().render_plot_script(
        csv_name=config.csv_name,
        x_column="a",
        series=FIGURE3_SERIES,
        image_name=Path(config.csv_name).with_suffix(".png").name,
    )
    script_path = out_dir / config.script_name
    script_path.write_text(script, encoding="utf-8", newline="\n")
    logger.info(f"Script di plot scritto: {script_path}")

    console.print(
        f"📈 Statici: perp {format_significant(table['static_perp'].iloc[0])} eV/λ², "
        f"par {format_significant(table['static_par'].iloc[0])} eV/λ²",
        style="green",
        markup=False,
    )
    console.print(f"💾 CSV: {csv_path}", style="yellow", markup=False)
    console.print(f"🖼️ Script: {script_path}", style="yellow", markup=False)


@cli.command()
@click.option(
    "--filter",
    "groups",
    multiple=True,
    type=click.Choice(list(GROUPS)),
    help="Esegue solo i gruppi indicati (ripetibile)",
)
@click.option(
    "--format", "-f", "output_format", type=click.Choice(["jsonl", "table"]), default="jsonl"
)
@handle_errors
def validate(groups: Sequence[str], output_format: str):
    """Esegue la suite di validazione; esce con 0 solo se tutti i casi passano"""
    reports = run_validation_suite(list(groups) or None)

    if output_format == "jsonl":
        for report in reports:
            click.echo(json.dumps(report.to_record(), allow_nan=False))
    else:
        table = Table(title="Suite di validazione")
        table.add_column("Caso", style="cyan")
        table.add_column("Modello", justify="right")
        table.add_column("Oracolo", justify="right")
        table.add_column("Errore", justify="right")
        table.add_column("Esito")
        for report in reports:
            status = "info" if report.informational else ("ok" if report.passed else "FAIL")
            table.add_row(
                report.case_id,
                format_significant(report.model_value),
                format_significant(report.oracle_value),
                f"{report.rel_error:.2e}",
                status,
            )
        console.print(table)
        console.print(TemplateManager().render_validation_summary(reports), markup=False)

    sys.exit(0 if suite_passed(reports) else EXIT_VALIDATION)


@cli.command()
@click.argument("kind", type=click.Choice(list(CONVERSIONS)))
@click.argument("value", type=float)
@click.option("--format", "-f", "output_format", type=click.Choice(["table", "json"]), default="table")
@handle_errors
def convert(kind: str, value: float, output_format: str):
    """Conversioni tra SI e unità naturali e temperatura di Unruh"""
    function, unit_in, unit_out = CONVERSIONS[kind]
    result = float(function(value))

    if output_format == "json":
        output = {
            "kind": kind,
            "input": value,
            "input_unit": unit_in,
            "output": _significant(result),
            "output_unit": unit_out,
        }
        console.print_json(json.dumps(output, ensure_ascii=False))
    else:
        console.print(
            f"{format_significant(value)} {unit_in} → {format_significant(result)} {unit_out}",
            markup=False,
            highlight=False,
        )


if __name__ == "__main__":
    cli()
