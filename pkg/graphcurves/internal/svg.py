import io

import matplotlib
from matplotlib.figure import Figure
import networkx as nx

from graphcurves.config import config
from graphcurves.faithfulness import ComplexGraph, extract_graph
from graphcurves.graph_kernel import PlanarEmbedding
from graphcurves.internal.labels import natural_key
from graphcurves.tropical_geometry import BRANCH_POINT, CORNER, LANDING, RAY_ENDPOINT, SUBDIVISION, TropicalComplex

import logging
logger = logging.getLogger(__name__)

# marker, face colour per node tag
GLYPHS = {
    CORNER: ("s", "black"),
    BRANCH_POINT: ("o", "tab:red"),
    LANDING: ("D", "tab:blue"),
    SUBDIVISION: ("o", "white"),
    RAY_ENDPOINT: ("^", "tab:green"),
    "vertex": ("o", "black"),
}


def _figure():
    figure = Figure(figsize=(6, 6))
    axes = figure.subplots()
    axes.set_axis_off()
    axes.set_aspect("equal")
    return figure, axes


def _to_svg(figure) -> str:
    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": config.SVG_HASHSALT, "svg.fonttype": "none"}):
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def _draw_edges(axes, positions, edges, gid_prefix):
    for index, (u, v) in enumerate(edges, start=1):
        (x1, y1), (x2, y2) = positions[u], positions[v]
        line, = axes.plot([x1, x2], [y1, y2], color="0.3", linewidth=1.2, zorder=1)
        line.set_gid(f"{gid_prefix}-{index}")


def _draw_node(axes, position, node_id, tag):
    marker, colour = GLYPHS[tag]
    x, y = position
    glyph, = axes.plot([x], [y], marker=marker, markersize=8, markerfacecolor=colour,
                       markeredgecolor="black", linestyle="none", zorder=2)
    glyph.set_gid(f"node-{tag}-{node_id}")
    label = axes.annotate(node_id, (x, y), xytext=(5, 5), textcoords="offset points", fontsize=8)
    label.set_gid(f"label-{node_id}")


def _render_embedding(e: PlanarEmbedding) -> str:
    figure, axes = _figure()
    positions = nx.planar_layout(e.nx_embedding)
    _draw_edges(axes, positions, e.graph.edge_list(), "edge")
    for v in e.graph.vertex_ids:
        _draw_node(axes, positions[v], v, "vertex")
    for face in e.face_list:
        if face.is_outer:
            xs = [positions[v][0] for v in positions]
            ys = [positions[v][1] for v in positions]
            x, y = max(xs) + 0.15, max(ys) + 0.15
        else:
            x = sum(positions[v][0] for v in face.vertices) / face.length
            y = sum(positions[v][1] for v in face.vertices) / face.length
        text = axes.text(x, y, face.id, ha="center", va="center", fontsize=10, style="italic")
        text.set_gid(f"face-{face.id}")
    return _to_svg(figure)


def _render_graph(graph: nx.MultiGraph, tag_of) -> str:
    figure, axes = _figure()
    nodes = sorted(graph.nodes, key=natural_key)
    layout = nx.Graph()
    layout.add_nodes_from(nodes)
    layout.add_edges_from((u, v) for u, v in graph.edges() if u != v)
    positions = nx.spring_layout(layout, seed=config.LAYOUT_SEED) if nodes else {}
    edges = sorted(((u, v) for u, v in graph.edges()), key=lambda e: (natural_key(e[0]), natural_key(e[1])))
    _draw_edges(axes, positions, edges, "segment")
    for node in nodes:
        _draw_node(axes, positions[node], node, tag_of(node))
    return _to_svg(figure)


def render_svg(obj) -> str:
    """
    Draw an embedding, a tropical complex or a complex graph as an SVG document.

    Layouts are schematic: an embedding is drawn with networkx's planar layout and its faces labelled,
    a complex with a seeded force layout and one glyph per node tag. Node glyphs carry the id
    node-<tag>-<id>, face labels face-<id>
    """
    if isinstance(obj, PlanarEmbedding):
        return _render_embedding(obj)
    if isinstance(obj, TropicalComplex):
        graph = extract_graph(obj).graph
        return _render_graph(graph, lambda n: graph.nodes[n]["tag"])
    if isinstance(obj, ComplexGraph):
        graph = obj.graph
        return _render_graph(graph, lambda n: graph.nodes[n].get("tag", SUBDIVISION))
    raise TypeError(f"cannot render {type(obj).__name__}")
