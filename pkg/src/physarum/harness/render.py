"""_summary_
Renders run artifacts: PGM rasters, tube-network SVGs and the phase-space scatter.

Raster value mapping (one byte per cell):
    Empty 0, Front/Occupied 128 + owner mod 64, Tube 255, AbandonedTube 64;
    partitions: Boundary 255, regions 0;
    fields: min-max normalized to 0..255, a constant field renders as 0.

Graph SVGs are drawn in millimetres: simulated edges as <polyline> (abandoned
ones dashed), oracle overlay edges as solid <line> elements.

Functions:
    render_raster(data, path) -> str
    render_graph_svg(graph, path, overlay=None, extent=None) -> str
    render_phase_space_svg(reports, path, thresholds) -> str
"""

import logging
import os
import xml.etree.ElementTree as ET
from typing import Dict, List, Optional, Tuple, Union

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np

from physarum.engine.models import OccupancyState, Tag, TubeGraph
from physarum.environment.models import ChemicalField
from physarum.environment.pgm import write_pgm
from physarum.geometry.models import PlanarGraph, RasterPartition
from physarum.morphometrics.models import MorphologyReport, Thresholds

logger = logging.getLogger(__name__)

SVG_NS = 'http://www.w3.org/2000/svg'
SIM_STROKE = '#8a5a00'
ORACLE_STROKE = '#1f3fbf'
MARGIN_MM = 2.0

Raster = Union[OccupancyState, RasterPartition, ChemicalField, np.ndarray]


def occupancy_pixels(occupancy: OccupancyState) -> np.ndarray:
    tag = occupancy.tag
    pixels = np.zeros(tag.shape, dtype=np.uint8)
    claimed = (tag == Tag.FRONT) | (tag == Tag.OCCUPIED)
    pixels[claimed] = 128 + np.mod(occupancy.owner[claimed], 64)
    pixels[tag == Tag.TUBE] = 255
    pixels[tag == Tag.ABANDONED] = 64
    return pixels


def field_pixels(values: np.ndarray) -> np.ndarray:
    lo, hi = float(values.min()), float(values.max())
    if hi <= lo:
        return np.zeros(values.shape, dtype=np.uint8)
    return np.rint((values - lo) / (hi - lo) * 255.0).astype(np.uint8)


def render_raster(data: Raster, path: str) -> str:
    """
    Writes a binary PGM of an occupancy state, a raster partition or a field.
    Args:
        data (Raster): The grid data; a bare ndarray is treated as a field.
        path (str): Output file.
    Returns:
        str: The path written.
    Raises:
        TypeError: unsupported data.
    """
    if isinstance(data, OccupancyState):
        pixels = occupancy_pixels(data)
    elif isinstance(data, RasterPartition):
        pixels = data.to_pixels()
    elif isinstance(data, ChemicalField):
        pixels = field_pixels(data.concentration)
    elif isinstance(data, np.ndarray):
        pixels = field_pixels(data.astype(np.float64))
    else:
        raise TypeError(f'cannot render {type(data).__name__} as a raster')
    return write_pgm(pixels, path)


def _sim_lines(graph: Union[TubeGraph, PlanarGraph]) -> List[Tuple[List[Tuple[float, float]], bool]]:
    if isinstance(graph, PlanarGraph):
        return [([graph.nodes[i], graph.nodes[j]], False) for i, j in graph.edges]
    cs = graph.cell_size
    lines = []
    for edge_id in sorted(graph.edges):
        edge = graph.edges[edge_id]
        lines.append(([(x * cs, y * cs) for x, y in edge.polyline], edge.abandoned))
    return lines


def _fmt(value: float) -> str:
    return f'{value:.3f}'


def _bounds(points: List[Tuple[float, float]]) -> Tuple[float, float, float, float]:
    if not points:
        return (0.0, 0.0, 1.0, 1.0)
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


def render_graph_svg(graph: Union[TubeGraph, PlanarGraph], path: str,
                     overlay: Optional[PlanarGraph] = None,
                     extent: Optional[Tuple[float, float]] = None) -> str:
    """
    Draws a tube network, optionally over an oracle graph.
    Args:
        graph: Simulated network (TubeGraph) or any PlanarGraph.
        path (str): Output file.
        overlay (Optional[PlanarGraph]): Oracle edges, drawn as solid lines.
        extent (Optional[Tuple[float, float]]): Dish width and height in mm; the
            drawing's own bounds are used when omitted.
    Returns:
        str: The path written.
    """
    lines = _sim_lines(graph)
    oracle = [] if overlay is None else [(overlay.nodes[i], overlay.nodes[j])
                                         for i, j in overlay.edges]
    if extent is not None:
        x0, y0, x1, y1 = 0.0, 0.0, extent[0], extent[1]
    else:
        points = [p for line, _ in lines for p in line] + [p for pair in oracle for p in pair]
        x0, y0, x1, y1 = _bounds(points)
    x0, y0 = x0 - MARGIN_MM, y0 - MARGIN_MM
    width, height = x1 - x0 + MARGIN_MM, y1 - y0 + MARGIN_MM

    ET.register_namespace('', SVG_NS)
    root = ET.Element(f'{{{SVG_NS}}}svg', {
        'width': f'{_fmt(width)}mm', 'height': f'{_fmt(height)}mm',
        'viewBox': f'{_fmt(x0)} {_fmt(y0)} {_fmt(width)} {_fmt(height)}'})
    oracle_group = ET.SubElement(root, f'{{{SVG_NS}}}g', {
        'id': 'oracle', 'stroke': ORACLE_STROKE, 'stroke-width': '0.5', 'fill': 'none'})
    for (ax, ay), (bx, by) in oracle:
        ET.SubElement(oracle_group, f'{{{SVG_NS}}}line', {
            'x1': _fmt(ax), 'y1': _fmt(ay), 'x2': _fmt(bx), 'y2': _fmt(by)})
    sim_group = ET.SubElement(root, f'{{{SVG_NS}}}g', {
        'id': 'tubes', 'stroke': SIM_STROKE, 'stroke-width': '0.8', 'fill': 'none'})
    for polyline, abandoned in lines:
        attrs = {'points': ' '.join(f'{_fmt(x)},{_fmt(y)}' for x, y in polyline)}
        if abandoned:
            attrs['stroke-dasharray'] = '1.5,1'
        ET.SubElement(sim_group, f'{{{SVG_NS}}}polyline', attrs)

    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    ET.ElementTree(root).write(path, encoding='utf-8', xml_declaration=True)
    logger.debug('wrote %s: %d tube and %d oracle edges', path, len(lines), len(oracle))
    return path


def render_phase_space_svg(reports: Dict[str, MorphologyReport], path: str,
                           thresholds: Optional[Thresholds] = None) -> str:
    """Scatter of the morphology reports with the quadrant split lines."""
    thresholds = thresholds or Thresholds()
    plt.rcParams['svg.hashsalt'] = 'physarum'
    fig, ax = plt.subplots(figsize=(6, 5))
    for name in sorted(reports):
        report = reports[name]
        ax.scatter([report.mean_degree], [report.order_score], s=30)
        ax.annotate(f'{name} ({report.quadrant.value})',
                    (report.mean_degree, report.order_score),
                    textcoords='offset points', xytext=(4, 4), fontsize=7)
    ax.axvline(thresholds.degree_split, color='grey', linestyle='--', linewidth=0.8)
    ax.axhline(thresholds.order_split, color='grey', linestyle='--', linewidth=0.8)
    ax.set_xlabel('mean node degree')
    ax.set_ylabel('order score 1 / (1 + CV)')
    ax.set_ylim(0.0, 1.05)
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    return path
