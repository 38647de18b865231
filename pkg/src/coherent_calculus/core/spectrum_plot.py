"""Static SVG scatter plots of jet spectra."""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import jinja2
from rich.console import Console

from ..models.reports import SpectrumReport

LOGGER = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent.parent / "templates"
SPECTRUM_TEMPLATE = "spectrum.svg.j2"


class PlotError(Exception):
    """Raised when a plot cannot be rendered or written."""

    exit_code = 1


@dataclass(frozen=True)
class PlotFrame:
    """Pixel geometry: the square [-extent, extent]^2 drawn in a size x size canvas."""

    size: int = 480
    margin: int = 40
    extent: float = 1.1
    unit_marker: float = 5.0

    @property
    def center(self) -> float:
        return self.size / 2.0

    @property
    def scale(self) -> float:
        return (self.size / 2.0 - self.margin) / self.extent

    def to_pixels(self, z: complex) -> tuple[float, float]:
        return self.center + self.scale * z.real, self.center - self.scale * z.imag

    def marker_radius(self, k: int) -> float:
        """Marker area proportional to k."""
        return self.unit_marker * math.sqrt(k)


class SpectrumPlotter:
    """Renders a SpectrumReport to SVG with jinja2."""

    def __init__(
        self,
        console: Optional[Console] = None,
        template_dir: Path = TEMPLATE_DIR,
        frame: Optional[PlotFrame] = None,
    ):
        """Initialize the plotter."""
        self.console = console or Console(stderr=True)
        self.frame = frame or PlotFrame()
        if not template_dir.exists():
            raise PlotError(f"Template directory not found: {template_dir}")
        self.env = jinja2.Environment(
            loader=jinja2.FileSystemLoader(str(template_dir)),
            autoescape=jinja2.select_autoescape(["svg.j2", "xml"]),
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self.env.filters["px"] = lambda value: f"{value:.2f}"

    def markers(self, report: SpectrumReport) -> list[dict[str, object]]:
        rows = []
        for lam, k in report.pairs:
            x, y = self.frame.to_pixels(lam)
            r = self.frame.marker_radius(k)
            rows.append({"x": x, "y": y, "r": r, "k": k, "label_x": x + r + 2.0, "label_y": y - r})
        return rows

    def render(self, report: SpectrumReport, title: Optional[str] = None) -> str:
        """
        Render the scatter plot.

        Args:
            report: Spectrum to draw, one marker per pair.
            title: Caption; defaults to the report label.

        Returns:
            The SVG document.

        Raises:
            PlotError: If the template is missing or fails to render.
        """
        try:
            template = self.env.get_template(SPECTRUM_TEMPLATE)
        except jinja2.TemplateNotFound:
            raise PlotError(f"Template not found: {SPECTRUM_TEMPLATE}")
        except jinja2.TemplateSyntaxError as e:
            raise PlotError(f"Template syntax error in {SPECTRUM_TEMPLATE}: {e}")
        frame = self.frame
        try:
            return template.render(
                frame=frame,
                unit_radius=frame.scale,
                axis_min=frame.margin,
                axis_max=frame.size - frame.margin,
                markers=self.markers(report),
                title=title if title is not None else (report.label or "jet spectrum"),
                tol=report.tol,
            )
        except jinja2.TemplateError as e:
            raise PlotError(f"Template rendering error in {SPECTRUM_TEMPLATE}: {e}")

    def write(self, report: SpectrumReport, path: Path, title: Optional[str] = None) -> None:
        """
        Render and write the plot.

        Raises:
            PlotError: If rendering or writing fails.
        """
        svg = self.render(report, title)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(svg, encoding="utf-8")
        except OSError as e:
            raise PlotError(f"Error writing {path}: {e}")
        LOGGER.debug("Wrote %d markers to %s", len(report.pairs), path)
