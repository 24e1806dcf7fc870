"""Grayscale SVG heatmap of a success grid.

Columns are the m values, rows the s/m ratios (largest at the top). Each
cell is one ``rect`` filled ``rgb(g,g,g)`` with g = round(255·rate), so a
rate of one is white and zero is black.

The document is assembled with ``xml.etree.ElementTree`` rather than a
plotting library: the output is exactly this fixed markup, one titled
``rect`` per cell plus tick and axis-label ``text`` elements.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Union

from spf_deconv.errors import DimensionError
from spf_deconv.harness.grid import SuccessGrid

CELL = 36
MARGIN_LEFT = 70
MARGIN_BOTTOM = 50
MARGIN_TOP = 10
MARGIN_RIGHT = 10

SVG_NS = "http://www.w3.org/2000/svg"


def gray_level(rate: float) -> int:
    return int(round(255 * min(1.0, max(0.0, rate))))


def build_heatmap(grid: SuccessGrid) -> ET.Element:
    """Build the SVG element tree for ``grid``."""
    if len(grid) == 0:
        raise DimensionError("cannot render an empty grid")
    ms, ratios = grid.m_axis, grid.ratio_axis
    width = MARGIN_LEFT + CELL * len(ms) + MARGIN_RIGHT
    height = MARGIN_TOP + CELL * len(ratios) + MARGIN_BOTTOM
    svg = ET.Element("svg", {
        "xmlns": SVG_NS,
        "width": str(width),
        "height": str(height),
        "viewBox": f"0 0 {width} {height}",
    })

    for row in grid:
        col = ms.index(row.m)
        level = len(ratios) - 1 - ratios.index(row.ratio)
        g = gray_level(row.success_rate)
        rect = ET.SubElement(svg, "rect", {
            "class": "cell",
            "x": str(MARGIN_LEFT + col * CELL),
            "y": str(MARGIN_TOP + level * CELL),
            "width": str(CELL),
            "height": str(CELL),
            "fill": f"rgb({g},{g},{g})",
            "stroke": "#808080",
            "stroke-width": "0.5",
        })
        ET.SubElement(rect, "title").text = (
            f"m={row.m} s={row.s}: {row.successes}/{row.trials}"
        )

    text_style = {"font-family": "sans-serif", "font-size": "10"}
    axis_y = MARGIN_TOP + CELL * len(ratios)
    for col, m in enumerate(ms):
        label = ET.SubElement(svg, "text", {
            **text_style,
            "class": "tick",
            "x": str(MARGIN_LEFT + col * CELL + CELL // 2),
            "y": str(axis_y + 14),
            "text-anchor": "middle",
        })
        label.text = str(m)
    for level, ratio in enumerate(reversed(ratios)):
        label = ET.SubElement(svg, "text", {
            **text_style,
            "class": "tick",
            "x": str(MARGIN_LEFT - 6),
            "y": str(MARGIN_TOP + level * CELL + CELL // 2 + 3),
            "text-anchor": "end",
        })
        label.text = f"{ratio:.3g}"

    x_label = ET.SubElement(svg, "text", {
        **text_style,
        "class": "axis-label",
        "x": str(MARGIN_LEFT + CELL * len(ms) // 2),
        "y": str(height - 10),
        "text-anchor": "middle",
    })
    x_label.text = "m"
    y_mid = MARGIN_TOP + CELL * len(ratios) // 2
    y_label = ET.SubElement(svg, "text", {
        **text_style,
        "class": "axis-label",
        "x": "14",
        "y": str(y_mid),
        "text-anchor": "middle",
        "transform": f"rotate(-90 14 {y_mid})",
    })
    y_label.text = "s/m"
    return svg


def render_heatmap(grid: SuccessGrid, path: Union[str, Path]) -> None:
    """Write the heatmap of ``grid`` as a standalone SVG file.

    Raises:
        DimensionError: For an empty grid.
        OSError: If the file cannot be written.
    """
    tree = ET.ElementTree(build_heatmap(grid))
    tree.write(str(path), encoding="utf-8", xml_declaration=True)
