"""Main CLI interface for coherent-calculus."""

import json
import sys
from pathlib import Path
from typing import Any, NoReturn, Optional

import click
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from . import __version__
from .core.console_logging import configure_logging
from .core.demos import DemoName, DemoResult, run_demo
from .core.errors import CoherentCalculusError
from .core.funcalc import (
    compare_spectra,
    dunford_riesz,
    jet_spectrum,
    require_disk_map,
    spectral_map_oracle,
    spectral_map_literal,
)
from .core.matrix_io import MatrixFileError, MatrixFileLoader
from .core.settings import SettingsError, SettingsLoader
from .core.spectrum_plot import PlotError, SpectrumPlotter
from .models.config import RunConfiguration
from .models.operators import Agreement, Contour, HoloMap, JetSpectrum
from .models.reports import SpectrumReport

# Tables go to stdout; diagnostics and confirmations to stderr so JSON stays clean
console = Console()
err_console = Console(stderr=True)

KNOWN_ERRORS = (CoherentCalculusError, MatrixFileError, SettingsError, PlotError)


def _fail(error: Exception) -> NoReturn:
    err_console.print(f"[red]Error:[/red] {escape(str(error))}")
    sys.exit(getattr(error, "exit_code", 1))


def _configured(config: RunConfiguration, **flags: Any) -> RunConfiguration:
    """Apply command-line overrides; invalid values are usage errors."""
    updated = config.with_overrides(**flags)
    if not updated.validate():
        raise click.UsageError(f"Invalid settings after overrides: {updated}")
    return updated


def _parse_poly(ctx: click.Context, param: click.Parameter, value: str) -> list[complex]:
    try:
        coeffs = [complex(part.strip().replace(" ", "")) for part in value.split(",")]
    except ValueError:
        raise click.BadParameter(
            f"expected comma-separated coefficients such as '0,0,1', got {value!r}"
        )
    if not any(coeffs):
        raise click.BadParameter("the zero polynomial has no spectral mapping")
    return coeffs


@click.group()
@click.version_option(__version__, prog_name="coherent-calculus")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, file_okay=True, dir_okay=False, readable=True, path_type=Path),
    help="YAML settings merged over the packaged defaults",
)
@click.option("--verbose", is_flag=True, help="Log numerical parameters at DEBUG level")
@click.option("--threads", type=click.IntRange(min=1), help="Workers for group convolutions")
@click.pass_context
def main(ctx: click.Context, config_path: Optional[Path], verbose: bool, threads: Optional[int]) -> None:
    """
    Coherent-state transforms, jet spectra of non-normal matrices and Weyl
    quantization, each checked against an independent oracle.
    """
    configure_logging(verbose)
    try:
        config = SettingsLoader(err_console).load(config_path)
    except SettingsError as e:
        _fail(e)
    ctx.obj = _configured(config, threads=threads)


def _spectrum_of(input_path: Path, config: RunConfiguration) -> tuple[JetSpectrum, int]:
    a = MatrixFileLoader(err_console).load_matrix(input_path)
    spectrum = jet_spectrum(a, config.spectrum.tol, config.spectrum.cluster_factor)
    return spectrum, a.n


@main.command()
@click.argument(
    "input_path",
    type=click.Path(exists=True, file_okay=True, dir_okay=False, readable=True, path_type=Path),
)
@click.option("--tol", type=float, help="Rank and cluster tolerance (default 1e-6)")
@click.option(
    "--svg",
    "svg_path",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    help="Also write a scatter plot of the spectrum",
)
@click.pass_obj
def spectrum(config: RunConfiguration, input_path: Path, tol: Optional[float], svg_path: Optional[Path]) -> None:
    """Print the jet spectrum of the matrix in INPUT_PATH as JSON."""
    config = _configured(config, tol=tol)
    try:
        result, n = _spectrum_of(input_path, config)
        report = SpectrumReport.from_spectrum(
            result,
            config.spectrum.tol,
            metadata={"n": n, "oracle": "rank sequence of reordered Schur blocks"},
        )
        if not report.validate(n):
            raise CoherentCalculusError(f"Block lengths sum to {report.n}, expected {n}")
        click.echo(report.to_json())
        if svg_path is not None:
            SpectrumPlotter(err_console).write(report, svg_path, title=input_path.stem)
            err_console.print(f"[green]Wrote[/green] {escape(str(svg_path))}")
    except KNOWN_ERRORS as e:
        _fail(e)


@main.command()
@click.argument(
    "input_path",
    type=click.Path(exists=True, file_okay=True, dir_okay=False, readable=True, path_type=Path),
)
@click.option(
    "--poly",
    required=True,
    callback=_parse_poly,
    help="Polynomial coefficients in increasing degree, e.g. '0,0,1' for z^2",
)
@click.option("--tol", type=float, help="Rank and cluster tolerance (default 1e-6)")
@click.option("--contour-nodes", type=int, help="Trapezoid nodes for phi(a) (default 256)")
@click.pass_obj
def specmap(
    config: RunConfiguration,
    input_path: Path,
    poly: list[complex],
    tol: Optional[float],
    contour_nodes: Optional[int],
) -> None:
    """Compare the literal spectral-mapping formula with the Jordan splitting of phi(a)."""
    config = _configured(config, tol=tol, contour_nodes=contour_nodes)
    phi = HoloMap.polynomial(poly)
    try:
        a = MatrixFileLoader(err_console).load_matrix(input_path)
        require_disk_map(phi)
        tol_used = config.spectrum.tol
        source = jet_spectrum(a, tol_used, config.spectrum.cluster_factor)
        literal = JetSpectrum.from_pairs(spectral_map_literal(phi, pair) for pair in source.pairs)
        oracle = spectral_map_oracle(phi, source)
        image = dunford_riesz(phi, a, Contour(config.quadrature.contour_nodes))
        computed = jet_spectrum(image, tol_used, config.spectrum.cluster_factor)
        comparisons = compare_spectra(phi, source)
    except KNOWN_ERRORS as e:
        _fail(e)

    matches = computed.matches(oracle, 1e3 * tol_used)
    document = {
        "source": SpectrumReport.from_spectrum(source, tol_used).to_dict(),
        "literal": SpectrumReport.from_spectrum(literal, tol_used).to_dict(),
        "oracle": SpectrumReport.from_spectrum(oracle, tol_used).to_dict(),
        "computed": SpectrumReport.from_spectrum(computed, tol_used).to_dict(),
        "comparisons": [
            {
                "re": round(row.source[0].real, 12) + 0.0,
                "im": round(row.source[0].imag, 12) + 0.0,
                "k": row.source[1],
                "degree": row.degree,
                "agreement": row.agreement.value,
            }
            for row in comparisons
        ],
        "oracle_matches_computed": matches,
    }
    click.echo(json.dumps(document, indent=2, sort_keys=True))

    for row in comparisons:
        lam, k = row.source
        if row.agreement is Agreement.DISAGREE:
            err_console.print(
                f"[yellow]Literal formula disagrees[/yellow] at ({lam:.6g}, {k}):"
                f" {row.literal[1]} vs Jordan blocks {[size for _, size in row.oracle]}"
            )
        elif row.agreement is Agreement.SET_LEVEL:
            err_console.print(
                f"[cyan]Set-level agreement[/cyan] at ({lam:.6g}, {k}):"
                f" {len(row.oracle)} blocks of length {row.literal[1]}"
            )
    if not matches:
        err_console.print("[red]Computed spectrum of phi(a) differs from the oracle[/red]")
        sys.exit(1)


def _display_demo(result: DemoResult) -> None:
    table = Table(title=f"Demo: {result.name.value}", show_header=True, header_style="bold")
    table.add_column("Check", style="cyan")
    table.add_column("Value", justify="right", no_wrap=True)
    table.add_column("Bound", justify="right", no_wrap=True)
    table.add_column("Status", no_wrap=True)
    for row in result.rows:
        style = "green" if row.passed else "red"
        comparison = ">" if row.expect_failure else "<="
        table.add_row(
            escape(row.check),
            f"{row.value:.3e}",
            f"{comparison} {row.bound:.1e}",
            f"[{style}]{row.status}[/{style}]",
        )
    console.print(table)
    for note in result.notes:
        console.print(f"[dim]{escape(note)}[/dim]")


@main.command()
@click.argument("name", type=click.Choice([d.value for d in DemoName]))
@click.option("--grid", type=int, help="Line grid size (default 256)")
@click.option("--hbar", type=float, help="Planck constant (default 1.0)")
@click.option("--box", type=int, help="Heisenberg box nodes per axis (default 64)")
@click.option("--contour-nodes", type=int, help="Circle samples (default 256)")
@click.pass_obj
def demo(
    config: RunConfiguration,
    name: str,
    grid: Optional[int],
    hbar: Optional[float],
    box: Optional[int],
    contour_nodes: Optional[int],
) -> None:
    """Run a named check suite and print its defects against their bounds."""
    config = _configured(config, grid=grid, hbar=hbar, box=box, contour_nodes=contour_nodes)
    try:
        result = run_demo(DemoName(name), config)
    except KNOWN_ERRORS as e:
        _fail(e)
    _display_demo(result)
    sys.exit(0 if result.passed else 1)


if __name__ == "__main__":
    main()
