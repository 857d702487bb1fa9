"""
Minimal SVG line plots (axes, ticks, polylines) for sweep and convergence curves.
"""
import logging
import xml.etree.ElementTree as ET
from typing import List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger("ZonalStab.Plot")

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:.3g}"


class SvgLinePlot:
    def __init__(self, title: str = "", xlabel: str = "", ylabel: str = "",
                 width: int = 640, height: int = 420, log_y: bool = False, floor: float = 1e-16):
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.width = width
        self.height = height
        self.log_y = log_y
        self.floor = floor
        self.margin = (70, 20, 40, 50)  # left, right, top, bottom
        self.series: List[Tuple[np.ndarray, np.ndarray, str]] = []

    def add_series(self, x: Sequence[float], y: Sequence[float], label: str = ""):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.shape != y.shape:
            raise ValueError("x and y must have the same length")
        keep = np.isfinite(x) & np.isfinite(y)
        self.series.append((x[keep], y[keep], label))

    def _transform_y(self, y: np.ndarray) -> np.ndarray:
        # log axis clamps non-positive values to the floor
        return np.log10(np.maximum(y, self.floor)) if self.log_y else y

    def _bounds(self) -> Tuple[float, float, float, float]:
        xs = np.concatenate([s[0] for s in self.series]) if self.series else np.array([0.0, 1.0])
        ys = np.concatenate([self._transform_y(s[1]) for s in self.series]) if self.series else np.array([0.0, 1.0])
        if len(xs) == 0:
            xs, ys = np.array([0.0, 1.0]), np.array([0.0, 1.0])
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ys.min()), float(ys.max())
        if x1 == x0:
            x0, x1 = x0 - 0.5, x1 + 0.5
        if y1 == y0:
            y0, y1 = y0 - 0.5, y1 + 0.5
        return x0, x1, y0, y1

    def _ticks(self, lo: float, hi: float, count: int = 5) -> np.ndarray:
        return np.linspace(lo, hi, count)

    def render(self) -> ET.Element:
        left, right, top, bottom = self.margin
        pw = self.width - left - right
        ph = self.height - top - bottom
        x0, x1, y0, y1 = self._bounds()

        def px(x):
            return left + (x - x0) / (x1 - x0) * pw

        def py(y):
            return top + ph - (y - y0) / (y1 - y0) * ph

        svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                         width=str(self.width), height=str(self.height),
                         viewBox=f"0 0 {self.width} {self.height}")
        ET.SubElement(svg, "rect", x="0", y="0", width=str(self.width), height=str(self.height), fill="white")

        axes = ET.SubElement(svg, "g", stroke="black", fill="none")
        ET.SubElement(axes, "path", d=f"M{left} {top}L{left} {top + ph}L{left + pw} {top + ph}")

        labels = ET.SubElement(svg, "g", fill="black", attrib={"font-family": "sans-serif", "font-size": "11"})
        for xv in self._ticks(x0, x1):
            X = px(xv)
            ET.SubElement(axes, "path", d=f"M{_fmt(X)} {top + ph}L{_fmt(X)} {top + ph + 5}")
            text = ET.SubElement(labels, "text", x=_fmt(X), y=str(top + ph + 18), attrib={"text-anchor": "middle"})
            text.text = _tick_label(xv)
        for yv in self._ticks(y0, y1):
            Y = py(yv)
            ET.SubElement(axes, "path", d=f"M{left - 5} {_fmt(Y)}L{left} {_fmt(Y)}")
            text = ET.SubElement(labels, "text", x=str(left - 8), y=_fmt(Y + 4), attrib={"text-anchor": "end"})
            text.text = f"1e{yv:.1f}" if self.log_y else _tick_label(yv)

        if self.title:
            t = ET.SubElement(labels, "text", x=str(self.width // 2), y="20", attrib={"text-anchor": "middle"})
            t.text = self.title
        if self.xlabel:
            t = ET.SubElement(labels, "text", x=str(left + pw // 2), y=str(self.height - 10),
                              attrib={"text-anchor": "middle"})
            t.text = self.xlabel
        if self.ylabel:
            t = ET.SubElement(labels, "text", x="14", y=str(top + ph // 2),
                              attrib={"text-anchor": "middle", "transform": f"rotate(-90 14 {top + ph // 2})"})
            t.text = self.ylabel

        for i, (x, y, label) in enumerate(self.series):
            if len(x) == 0:
                continue
            ty = self._transform_y(y)
            d = "M" + "L".join(f"{_fmt(px(a))} {_fmt(py(b))}" for a, b in zip(x, ty))
            ET.SubElement(svg, "path", d=d, fill="none", stroke=COLORS[i % len(COLORS)],
                          attrib={"stroke-width": "1.5"})
            if label:
                t = ET.SubElement(labels, "text", x=str(left + pw - 4), y=str(top + 14 * (i + 1)),
                                  fill=COLORS[i % len(COLORS)], attrib={"text-anchor": "end"})
                t.text = label
        return svg

    def save(self, filename: str):
        ET.ElementTree(self.render()).write(filename, encoding="utf-8", xml_declaration=True)
        logger.info(f"Plot: Wrote {filename}")


def plot_curve(filename: str, x, y, title: str = "", xlabel: str = "", ylabel: str = "",
               log_y: bool = False, label: Optional[str] = None):
    plot = SvgLinePlot(title=title, xlabel=xlabel, ylabel=ylabel, log_y=log_y)
    plot.add_series(x, y, label or "")
    plot.save(filename)
    return plot
