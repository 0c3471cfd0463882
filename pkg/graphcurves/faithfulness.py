"""
Weak faithfulness of the tropicalized schön embedding.

The tropical complex is read as a multigraph, trees hanging off it are pruned, degree-2 nodes are
suppressed, and the resulting core is matched against the input graph. A match that sends every
interior vertex to the branch point of its line and every exterior vertex to the point where its
line meets the line of its interior neighbour is called well structured.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from graphcurves.exceptions import ComplexException, GraphCurvesException, NotPlanarException, StageFailure
from graphcurves.graph_kernel import Graph, PlanarEmbedding, classify_vertices, planar_embed, validate
from graphcurves.internal.labels import natural_key
from graphcurves.schoen import LineIdeal, build_schoen
from graphcurves.transformations import ReductionTrace, replay_inverse
from graphcurves.tropical_geometry import BRANCH_POINT, TropicalComplex, build_arrangement, tropicalize_line

import logging
logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class ComplexGraph:
    """
    A multigraph view of a tropical complex: one node per 0-cell, one edge per 1-cell.
    Edges are keyed by segment id; after degree-2 suppression an edge carries the list of
    segments it was made from in its 'segments' attribute
    """
    graph: nx.MultiGraph
    complex: Optional[TropicalComplex] = None

    @property
    def node_count(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def degree(self, node) -> int:
        return self.graph.degree(node)


def extract_graph(c: TropicalComplex) -> ComplexGraph:
    """
    :raises ComplexException: If a segment ends at a node the complex does not have
    """
    graph = nx.MultiGraph()
    for node in c.nodes:
        graph.add_node(node.id, tag=node.tag, support=node.cell.support)
    for segment in c.segments:
        for end in (segment.source, segment.target):
            if end not in graph:
                raise ComplexException(f"segment {segment.id} ends at unknown node {end}")
        graph.add_edge(segment.source, segment.target, key=segment.id, line=segment.line, segments=[segment.id])
    return ComplexGraph(graph, c)


@dataclass(frozen=True)
class PrunedTree:
    """ A tree cut off the complex graph. attachment is the core node it hung from, None if it was a whole component """
    attachment: Optional[str]
    nodes: Tuple[str, ...]
    edges: Tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.edges)


@dataclass
class PruneResult:
    core: ComplexGraph
    unsuppressed: ComplexGraph
    trees: List[PrunedTree] = field(default_factory=list)


def prune_modification(g: ComplexGraph) -> PruneResult:
    """
    Strip the trees glued onto the graph, then suppress degree-2 nodes.

    Leaves are removed until none remain; the removed material is grouped into trees by connected
    component. Suppression merges the two edges at a degree-2 node into one; a cycle made only of
    degree-2 nodes keeps one of them.
    """
    graph = g.graph.copy()
    removed_edges = []
    removed_nodes = []
    leaves = sorted((n for n in graph if graph.degree(n) <= 1), key=natural_key)
    while leaves:
        for leaf in leaves:
            if leaf not in graph:
                continue
            removed_edges.extend((u, v, k) for u, v, k in graph.edges(leaf, keys=True))
            removed_nodes.append(leaf)
            graph.remove_node(leaf)
        leaves = sorted((n for n in graph if graph.degree(n) <= 1), key=natural_key)

    trees = []
    if removed_edges or removed_nodes:
        forest = nx.MultiGraph()
        forest.add_nodes_from(removed_nodes)
        forest.add_edges_from(removed_edges)
        for component in sorted(nx.connected_components(forest), key=lambda c: min(natural_key(n) for n in c)):
            attachment = [n for n in component if n in graph]
            edges = sorted(k for u, v, k in forest.edges(component, keys=True))
            nodes = sorted((n for n in component if n not in graph), key=natural_key)
            trees.append(PrunedTree(attachment[0] if attachment else None, tuple(nodes), tuple(edges)))

    unsuppressed = ComplexGraph(graph.copy(), g.complex)
    core = graph
    changed = True
    while changed:
        changed = False
        for node in sorted(core.nodes, key=natural_key):
            edges = list(core.edges(node, keys=True, data=True))
            if len(edges) != 2 or core.degree(node) != 2:
                continue
            (_, a, key_a, data_a), (_, b, key_b, data_b) = edges
            if a == node or b == node:
                continue
            if a == b and core.number_of_nodes() <= 2:
                continue
            core.remove_node(node)
            core.add_edge(a, b, key=f"{key_a}+{key_b}", segments=data_a["segments"] + data_b["segments"])
            changed = True
            break

    logger.debug(f"pruned {len(trees)} trees, core has {core.number_of_nodes()} nodes and {core.number_of_edges()} edges")
    return PruneResult(ComplexGraph(core, g.complex), unsuppressed, trees)


def _simple(core: ComplexGraph) -> Optional[nx.Graph]:
    graph = nx.Graph()
    graph.add_nodes_from(core.graph.nodes(data=True))
    for u, v in core.graph.edges():
        if u == v or graph.has_edge(u, v):
            return None
        graph.add_edge(u, v)
    return graph


def graph_isomorphism(a: ComplexGraph, b: Graph, designated: Optional[Dict[str, str]] = None) -> Optional[Dict[str, str]]:
    """
    A bijection from the nodes of a to the vertices of b preserving adjacency, or None.

    :param designated: Optional vertex -> node map; when given, only isomorphisms that agree with it are accepted
    """
    simple = _simple(a)
    if simple is None:
        return None
    target = b.to_networkx()
    if designated is not None:
        for vertex, node in designated.items():
            if node in simple:
                simple.nodes[node]["designated"] = vertex
        for vertex in target:
            target.nodes[vertex]["designated"] = vertex
        matcher = isomorphism.GraphMatcher(simple, target,
                                           node_match=lambda x, y: x.get("designated") == y["designated"])
    else:
        matcher = isomorphism.GraphMatcher(simple, target)
    for mapping in matcher.isomorphisms_iter():
        return dict(mapping)
    return None


def designated_map(lines: Sequence[LineIdeal], complex: TropicalComplex, embedding: PlanarEmbedding) -> Dict[str, str]:
    """
    Where a well-structured map must send each vertex: an interior vertex to the branch point of its
    line, an exterior vertex v to the point where L_v meets L_u, u its interior neighbour.

    :raises ComplexException: If some exterior vertex's lines do not meet in exactly one node
    """
    classification = classify_vertices(embedding)
    result = {}
    for line in lines:
        v = line.vertex
        if classification.kinds[v] == "interior":
            result[v] = complex.branch_points[v]
            continue
        u = classification.interior_neighbor[v]
        shared = sorted(set(complex.line_nodes[v]) & set(complex.line_nodes[u]), key=natural_key)
        if len(shared) != 1:
            raise ComplexException(f"L_{v} and L_{u} meet in {len(shared)} nodes ({' '.join(shared) or 'none'}), expected one")
        result[v] = shared[0]
    return result


@dataclass
class FaithfulnessCertificate:
    """
    Result of certify().

    :param status: PASS or FAIL
    :param stage: The stage that failed, None on PASS
    :param core: The core graph after pruning and suppression
    :param iso: Core node -> graph vertex, None if no isomorphism was found
    :param trees: The pruned trees
    :param designated: Graph vertex -> node a well-structured map must use
    :param well_structured: Whether iso agrees with designated
    :param stage_log: One line per stage
    """
    status: str
    stage: Optional[str] = None
    core: Optional[ComplexGraph] = None
    unsuppressed: Optional[ComplexGraph] = None
    complex_graph: Optional[ComplexGraph] = None
    iso: Optional[Dict[str, str]] = None
    trees: List[PrunedTree] = field(default_factory=list)
    designated: Dict[str, str] = field(default_factory=dict)
    well_structured: bool = False
    stage_log: List[str] = field(default_factory=list)
    graph_name: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def raise_for_status(self):
        """ Raise StageFailure if the certificate is not a PASS """
        if not self.passed:
            raise StageFailure(self.stage_log[-1] if self.stage_log else "failed", self.stage or "certify")

    def to_dict(self):
        core = None
        if self.core is not None:
            nodes = sorted(self.core.graph.nodes, key=natural_key)
            edges = sorted((sorted((u, v), key=natural_key) for u, v in self.core.graph.edges()),
                           key=lambda e: (natural_key(e[0]), natural_key(e[1])))
            core = {"nodes": nodes, "edges": edges}
        iso = None
        if self.iso is not None:
            iso = sorted(([vertex, node] for node, vertex in self.iso.items()), key=lambda p: natural_key(p[0]))
        return {
            "graph": self.graph_name,
            "status": self.status,
            "stage": self.stage,
            "core": core,
            "iso": iso,
            "trees": [{"attachment": t.attachment, "size": t.size} for t in self.trees],
            "well_structured": self.well_structured,
            "stage_log": list(self.stage_log),
        }


def well_structured_check(cert: FaithfulnessCertificate, lines: Sequence[LineIdeal], complex: TropicalComplex,
                          embedding: PlanarEmbedding) -> bool:
    """
    Whether the certificate's isomorphism, read from graph to complex, is the designated map
    :raises ComplexException: If an exterior vertex has no single designated node
    """
    if cert.iso is None:
        raise ValueError("the certificate has no isomorphism")
    designated = designated_map(lines, complex, embedding)
    image = {vertex: node for node, vertex in cert.iso.items()}
    return image == designated


def _fail(cert, stage, message):
    cert.status = FAIL
    cert.stage = stage
    cert.stage_log.append(f"{stage}: FAIL {message}")
    logger.info(f"certify {cert.graph_name}: {stage} failed: {message}")
    return cert


def certify(embedding: PlanarEmbedding) -> FaithfulnessCertificate:
    """
    Run the whole pipeline on an embedding: validate, build the schön lines, tropicalize, build the
    arrangement, prune, match the core against the graph and check the map is well structured.
    Failures are reported in the certificate with the stage that failed
    """
    cert = FaithfulnessCertificate(status=FAIL, graph_name=embedding.graph.name)
    report = validate(embedding.graph)
    if not report.ok:
        return _fail(cert, "validate", "; ".join(report.violations))
    cert.stage_log.append("validate: ok")

    try:
        lines = build_schoen(embedding)
    except GraphCurvesException as err:
        return _fail(cert, "schoen", str(err))
    cert.stage_log.append(f"schoen: {len(lines)} lines")

    try:
        complex = build_arrangement([tropicalize_line(line) for line in lines])
    except GraphCurvesException as err:
        return _fail(cert, "arrangement", str(err))
    cert.stage_log.append(f"arrangement: {len(complex.nodes)} nodes, {len(complex.segments)} segments")

    complex_graph = extract_graph(complex)
    pruned = prune_modification(complex_graph)
    cert.complex_graph = complex_graph
    cert.core, cert.unsuppressed, cert.trees = pruned.core, pruned.unsuppressed, pruned.trees
    lost = [node for tree in pruned.trees for node in tree.nodes if complex_graph.graph.nodes[node]["tag"] == BRANCH_POINT]
    if lost:
        return _fail(cert, "prune", f"branch points pruned away: {' '.join(lost)}")
    cert.stage_log.append(f"prune: {len(pruned.trees)} trees, core {pruned.core.node_count} nodes {pruned.core.edge_count} edges")

    try:
        cert.designated = designated_map(lines, complex, embedding)
    except GraphCurvesException as err:
        return _fail(cert, "designated", str(err))

    cert.iso = graph_isomorphism(pruned.core, embedding.graph, designated=cert.designated)
    if cert.iso is None:
        cert.iso = graph_isomorphism(pruned.core, embedding.graph)
        if cert.iso is None:
            return _fail(cert, "isomorphism", "the core is not isomorphic to the graph")
        cert.stage_log.append("isomorphism: found")
        return _fail(cert, "well_structured", "homeomorphic, but no homeomorphism is well structured")
    cert.stage_log.append("isomorphism: found")

    cert.well_structured = well_structured_check(cert, lines, complex, embedding)
    if not cert.well_structured:
        return _fail(cert, "well_structured", "the isomorphism does not follow the designated map")
    cert.stage_log.append("well_structured: ok")
    cert.status = PASS
    logger.info(f"certify {embedding.graph.name}: PASS")
    return cert


def certify_graph(g: Graph, outer_hint=None) -> FaithfulnessCertificate:
    """ Embed the graph, then certify. A graph without a planar embedding fails at the planar_embed stage """
    try:
        embedding = planar_embed(g, outer_hint)
    except NotPlanarException as err:
        cert = FaithfulnessCertificate(status=FAIL, graph_name=g.name)
        return _fail(cert, "planar_embed", f"NotPlanar: {err}")
    except GraphCurvesException as err:
        cert = FaithfulnessCertificate(status=FAIL, graph_name=g.name)
        return _fail(cert, "planar_embed", str(err))
    return certify(embedding)


def constructive_pipeline(trace: ReductionTrace) -> List[FaithfulnessCertificate]:
    """
    Certify every embedding on the way from K4 back up to the traced graph.
    :raises StageFailure: Naming the first intermediate that does not PASS
    """
    certificates = []
    for index, embedding in enumerate(replay_inverse(trace)):
        cert = certify(embedding)
        if not cert.passed:
            raise StageFailure(f"step {index} ({len(embedding.graph.vertex_ids)} vertices): {cert.stage_log[-1]}",
                               cert.stage or "certify")
        certificates.append(cert)
    return certificates
