"""
Graphs, planar embeddings and faces.

A Graph is an immutable simple graph with alphanumeric vertex labels. A PlanarEmbedding
adds a rotation system (clockwise neighbour order at every vertex), a marked outer face
and optional face names. Faces are the closed walks of the rotation system; the outer
face is always called ``e`` and interior faces ``F1, F2, ...`` unless named explicitly.

Face walks follow the networkx convention: the half-edge after (v, w) is (w, u) where u
is the neighbour that precedes v in the clockwise order around w.
"""
import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from importlib import resources
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from graphcurves.config import config
from graphcurves.exceptions import (
    EmbeddingException,
    GraphFormatException,
    GraphHypothesisException,
    NotPlanarException,
)
from graphcurves.internal.labels import edge_label, is_label, natural_key

import logging
logger = logging.getLogger(__name__)

OUTER_FACE_ID = "e"

Dart = Tuple[str, str]


@dataclass(frozen=True)
class Graph:
    """
    A simple undirected graph.

    :param name: Display name, taken from the ``graph <name>`` header
    :param vertex_ids: Vertex labels in natural order
    :param edges: Unordered label pairs
    :param rotation: Clockwise neighbour order per vertex, if the input file gave one
    :param outer: Vertex sequence of the requested outer face, if the input file gave one
    :param face_names: (name, vertex sequence) pairs naming interior faces
    """
    name: str
    vertex_ids: Tuple[str, ...]
    edges: FrozenSet[FrozenSet[str]]
    rotation: Optional[Tuple[Tuple[str, Tuple[str, ...]], ...]] = None
    outer: Optional[Tuple[str, ...]] = None
    face_names: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()

    @classmethod
    def from_edges(cls, edges, name="graph"):
        """ Build a graph from an iterable of (u, v) pairs, rejecting loops and repeated pairs """
        pairs = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise GraphFormatException(f"loop at vertex {u}")
            pair = frozenset((u, v))
            if pair in pairs:
                raise GraphFormatException(f"duplicate edge {edge_label(u, v)}")
            pairs.add(pair)
        vertices = sorted({v for pair in pairs for v in pair}, key=natural_key)
        return cls(name=name, vertex_ids=tuple(vertices), edges=frozenset(pairs))

    @cached_property
    def adjacency(self) -> Dict[str, Tuple[str, ...]]:
        adjacency = {v: [] for v in self.vertex_ids}
        for pair in self.edges:
            u, v = tuple(pair)
            adjacency[u].append(v)
            adjacency[v].append(u)
        return {v: tuple(sorted(nbrs, key=natural_key)) for v, nbrs in adjacency.items()}

    def neighbors(self, v) -> Tuple[str, ...]:
        return self.adjacency[v]

    def degree(self, v) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def edge_list(self) -> List[Tuple[str, str]]:
        """ Edges as (u, v) with u before v, sorted in natural order """
        pairs = [tuple(sorted(pair, key=natural_key)) for pair in self.edges]
        return sorted(pairs, key=lambda p: (natural_key(p[0]), natural_key(p[1])))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph(name=self.name)
        graph.add_nodes_from(self.vertex_ids)
        graph.add_edges_from(self.edge_list())
        return graph


@dataclass(frozen=True)
class Face:
    """
    A face of a planar embedding.

    :param id: ``e`` for the outer face, otherwise the interior face name
    :param boundary: The closed walk of directed edges bounding the face
    :param is_outer: Whether this is the outer face
    """
    id: str
    boundary: Tuple[Dart, ...]
    is_outer: bool

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(u for u, _ in self.boundary)

    @property
    def length(self) -> int:
        return len(self.boundary)

    @property
    def canonical_walk(self) -> Tuple[str, ...]:
        return canonical_walk(self.vertices)

    def undirected_edges(self) -> FrozenSet[FrozenSet[str]]:
        return frozenset(frozenset(d) for d in self.boundary)


def canonical_walk(vertices: Sequence[str]) -> Tuple[str, ...]:
    """
    The lexicographically least rotation of a cyclic vertex sequence, over both directions,
    compared in natural label order
    """
    vertices = tuple(vertices)
    if not vertices:
        return vertices
    candidates = []
    for sequence in (vertices, tuple(reversed(vertices))):
        for i in range(len(sequence)):
            candidates.append(sequence[i:] + sequence[:i])
    return min(candidates, key=lambda seq: tuple(natural_key(v) for v in seq))


def _walk_key(vertices):
    return tuple(natural_key(v) for v in canonical_walk(vertices))


@dataclass(frozen=True)
class PlanarEmbedding:
    """
    A rotation system of a graph together with its outer face.

    :param graph: The embedded graph
    :param rotation: Clockwise neighbour order per vertex, in vertex order
    :param outer_dart: A half-edge on the outer face
    :param face_names: (dart, name) pairs naming interior faces by one of their half-edges
    """
    graph: Graph
    rotation: Tuple[Tuple[str, Tuple[str, ...]], ...]
    outer_dart: Dart
    face_names: Tuple[Tuple[Dart, str], ...] = field(default=())

    @cached_property
    def rotation_map(self) -> Dict[str, Tuple[str, ...]]:
        return dict(self.rotation)

    @cached_property
    def nx_embedding(self) -> nx.PlanarEmbedding:
        embedding = nx.PlanarEmbedding()
        embedding.set_data({v: list(nbrs) for v, nbrs in self.rotation})
        return embedding

    @cached_property
    def walks(self) -> List[Tuple[Dart, ...]]:
        """ All face walks in discovery order """
        seen = set()
        walks = []
        for v, nbrs in self.rotation:
            for w in nbrs:
                if (v, w) in seen:
                    continue
                nodes = self.nx_embedding.traverse_face(v, w, mark_half_edges=seen)
                walks.append(tuple((nodes[i], nodes[(i + 1) % len(nodes)]) for i in range(len(nodes))))
        return walks

    @cached_property
    def face_list(self) -> List[Face]:
        return _label_faces(self)

    @cached_property
    def face_by_id(self) -> Dict[str, Face]:
        return {face.id: face for face in self.face_list}

    @cached_property
    def face_of_dart(self) -> Dict[Dart, str]:
        return {dart: face.id for face in self.face_list for dart in face.boundary}

    @property
    def outer_face(self) -> Face:
        return self.face_by_id[OUTER_FACE_ID]

    @property
    def interior_faces(self) -> List[Face]:
        return [face for face in self.face_list if not face.is_outer]

    @property
    def genus(self) -> int:
        return len(self.graph.edges) - len(self.graph.vertex_ids) + 1

    def pred(self, v, w) -> str:
        """ The neighbour of v that precedes w in clockwise order """
        nbrs = self.rotation_map[v]
        return nbrs[nbrs.index(w) - 1]

    def succ(self, v, w) -> str:
        """ The neighbour of v that follows w in clockwise order """
        nbrs = self.rotation_map[v]
        return nbrs[(nbrs.index(w) + 1) % len(nbrs)]

    def vertex_faces(self, v) -> Tuple[str, ...]:
        """ Ids of the faces around v, one per outgoing half-edge, in clockwise order """
        return tuple(self.face_of_dart[(v, w)] for w in self.rotation_map[v])

    def edge_faces(self, u, v) -> Tuple[str, str]:
        """ The faces on the two sides of the edge u-v: the face of (u, v) first """
        return self.face_of_dart[(u, v)], self.face_of_dart[(v, u)]

    def with_outer(self, outer_hint: Sequence[str]) -> "PlanarEmbedding":
        """ The same rotation system with the outer face moved to the face on the given vertices """
        face = _match_face(self.walks, outer_hint)
        if face is None:
            raise EmbeddingException(f"no face has boundary vertices {' '.join(outer_hint)}")
        return self.with_outer_dart(face[0])

    def with_outer_dart(self, dart: Dart) -> "PlanarEmbedding":
        """ The same rotation system with the outer face moved to the face of the given half-edge """
        new_outer = self.face_of_dart[dart]
        names = tuple((d, name) for d, name in self.face_names if self.face_of_dart[d] != new_outer)
        return PlanarEmbedding(self.graph, self.rotation, dart, names)


def _match_face(walks, vertices):
    wanted = set(vertices)
    for walk in walks:
        if {u for u, _ in walk} == wanted and len(walk) == len(vertices):
            return walk
    return None


def _label_faces(embedding: PlanarEmbedding) -> List[Face]:
    named = {}
    outer_walk = None
    for walk in embedding.walks:
        if embedding.outer_dart in walk:
            outer_walk = walk
    if outer_walk is None:
        raise EmbeddingException(f"outer dart {embedding.outer_dart} is not a half-edge of the embedding")
    for dart, name in embedding.face_names:
        for walk in embedding.walks:
            if dart in walk:
                if walk is outer_walk:
                    raise EmbeddingException(f"face name {name} refers to the outer face")
                if walk in named and named[walk] != name:
                    raise EmbeddingException(f"face named both {named[walk]} and {name}")
                named[walk] = name
                break
        else:
            raise EmbeddingException(f"face name {name} refers to unknown half-edge {dart}")
    if len(set(named.values())) != len(named):
        raise EmbeddingException("two faces share a name")

    taken = set(named.values()) | {OUTER_FACE_ID}
    unnamed = sorted((w for w in embedding.walks if w is not outer_walk and w not in named),
                     key=lambda w: _walk_key([u for u, _ in w]))
    k = 1
    for walk in unnamed:
        while f"F{k}" in taken:
            k += 1
        named[walk] = f"F{k}"
        taken.add(f"F{k}")

    interior = [Face(named[w], _rotate_walk(w), False) for w in embedding.walks if w is not outer_walk]
    interior.sort(key=lambda f: natural_key(f.id))
    return interior + [Face(OUTER_FACE_ID, _rotate_walk(outer_walk), True)]


def _rotate_walk(walk):
    """ Start a dart walk at its least tail vertex, keeping orientation """
    start = min(range(len(walk)), key=lambda i: natural_key(walk[i][0]))
    return walk[start:] + walk[:start]


@dataclass(frozen=True)
class ValidationReport:
    """ Outcome of validate(). Failures are listed in violations rather than raised """
    simple: bool
    connected: bool
    cubic: bool
    bridgeless: bool
    edge_connectivity: int
    planar: bool
    three_connected: bool
    lemma39_ok: bool
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.simple and self.connected and self.cubic and self.planar and self.three_connected

    def to_dict(self):
        return {
            "simple": self.simple,
            "connected": self.connected,
            "cubic": self.cubic,
            "bridgeless": self.bridgeless,
            "edge_connectivity": self.edge_connectivity,
            "planar": self.planar,
            "three_connected": self.three_connected,
            "lemma39_ok": self.lemma39_ok,
            "violations": list(self.violations),
        }


@dataclass(frozen=True)
class VertexClassification:
    """ Exterior/interior split of the vertices, and the interior neighbour of each exterior vertex """
    kinds: Dict[str, str]
    interior_neighbor: Dict[str, str]

    @property
    def exterior(self) -> List[str]:
        return [v for v, kind in self.kinds.items() if kind == "exterior"]

    @property
    def interior(self) -> List[str]:
        return [v for v, kind in self.kinds.items() if kind == "interior"]


def parse_graph(text: str) -> Graph:
    """
    Parse the graph file format.

    Lines, blank lines and ``#`` comments aside::

        graph <name>
        edge u v            (or just: u v)
        rotation v: a b c   (clockwise neighbours of v; u-v edge ids are also accepted)
        outer: v1 v2 ... vk
        face <name>: v1 v2 ... vk

    :param text: The file contents
    :return: The parsed Graph
    :raises GraphFormatException: On malformed lines, loops, duplicate edges or unknown vertices
    """
    name = "graph"
    pairs = []
    seen = set()
    rotation_lines = []
    outer = None
    face_names = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        tokens = head.split()
        keyword = tokens[0]

        if keyword == "graph" and not rest:
            if len(tokens) != 2:
                raise GraphFormatException("expected 'graph <name>'", number)
            name = tokens[1]
        elif keyword == "rotation":
            if len(tokens) != 2 or not rest.strip():
                raise GraphFormatException("expected 'rotation v: n1 n2 n3'", number)
            rotation_lines.append((number, tokens[1], rest.split()))
        elif keyword == "outer" and len(tokens) == 1:
            outer = tuple(rest.split())
            if len(outer) < 3:
                raise GraphFormatException("an outer face needs at least three vertices", number)
        elif keyword == "face":
            if len(tokens) != 2 or not rest.strip():
                raise GraphFormatException("expected 'face <name>: v1 v2 ...'", number)
            if not is_label(tokens[1]) or tokens[1] == OUTER_FACE_ID:
                raise GraphFormatException(f"bad face name {tokens[1]!r}", number)
            face_names.append((tokens[1], tuple(rest.split())))
        else:
            if rest:
                raise GraphFormatException(f"unknown directive {keyword!r}", number)
            if keyword == "edge":
                tokens = tokens[1:]
            if len(tokens) != 2:
                raise GraphFormatException(f"malformed line {raw.strip()!r}", number)
            u, v = tokens
            if not is_label(u) or not is_label(v):
                raise GraphFormatException(f"labels must be alphanumeric: {raw.strip()!r}", number)
            if u == v:
                raise GraphFormatException(f"loop at vertex {u}", number)
            pair = frozenset((u, v))
            if pair in seen:
                raise GraphFormatException(f"duplicate edge {edge_label(u, v)}", number)
            seen.add(pair)
            pairs.append((u, v))

    if not pairs:
        raise GraphFormatException("the graph has no edges")
    graph = Graph.from_edges(pairs, name=name)
    vertices = set(graph.vertex_ids)

    rotation = None
    if rotation_lines:
        rotation_map = {}
        for number, v, entries in rotation_lines:
            if v not in vertices:
                raise GraphFormatException(f"rotation for unknown vertex {v}", number)
            nbrs = []
            for entry in entries:
                if "-" in entry:
                    ends = entry.split("-")
                    if len(ends) != 2 or v not in ends:
                        raise GraphFormatException(f"edge {entry} is not incident to {v}", number)
                    entry = ends[1] if ends[0] == v else ends[0]
                nbrs.append(entry)
            if sorted(nbrs, key=natural_key) != list(graph.neighbors(v)):
                raise GraphFormatException(f"rotation at {v} does not list exactly its neighbours", number)
            rotation_map[v] = tuple(nbrs)
        missing = [v for v in graph.vertex_ids if v not in rotation_map]
        if missing:
            raise GraphFormatException(f"rotation missing for vertices {' '.join(missing)}")
        rotation = tuple((v, rotation_map[v]) for v in graph.vertex_ids)

    for label in list(outer or ()) + [v for _, seq in face_names for v in seq]:
        if label not in vertices:
            raise GraphFormatException(f"unknown vertex {label} in face specification")

    return Graph(
        name=graph.name,
        vertex_ids=graph.vertex_ids,
        edges=graph.edges,
        rotation=rotation,
        outer=outer,
        face_names=tuple(face_names),
    )


def load_graph(path) -> Graph:
    """ Read and parse a graph file from disk """
    with open(path, encoding="utf-8") as f:
        return parse_graph(f.read())


BUNDLED_GRAPHS = ("k4", "prism", "sliced_prism", "cube", "petersen", "two_edge_connected")


def load_bundled(name: str) -> Graph:
    """
    Load one of the graphs shipped with the package
    :param name: One of BUNDLED_GRAPHS
    """
    if name not in BUNDLED_GRAPHS:
        raise ValueError(f"unknown bundled graph {name!r}, expected one of {', '.join(BUNDLED_GRAPHS)}")
    text = resources.files("graphcurves.data").joinpath(f"{name}.graph").read_text(encoding="utf-8")
    return parse_graph(text)


def format_graph(embedding: PlanarEmbedding) -> str:
    """ Serialise an embedding in the graph file format: edges, rotations, outer face and face names """
    lines = [f"graph {embedding.graph.name}"]
    lines += [f"edge {u} {v}" for u, v in embedding.graph.edge_list()]
    lines += [f"rotation {v}: {' '.join(nbrs)}" for v, nbrs in embedding.rotation]
    lines.append(f"outer: {' '.join(embedding.outer_face.vertices)}")
    lines += [f"face {face.id}: {' '.join(face.vertices)}" for face in embedding.interior_faces]
    return "\n".join(lines) + "\n"


def _require_connected(g: Graph):
    if not nx.is_connected(g.to_networkx()):
        raise GraphHypothesisException(f"graph {g.name} is not connected")


def genus(g: Graph) -> int:
    """ First Betti number |E| - |V| + 1 of a connected graph """
    _require_connected(g)
    return len(g.edges) - len(g.vertex_ids) + 1


def edge_connectivity(g: Graph, method: Optional[str] = None) -> int:
    """
    Size of a minimum edge cut.
    :param method: 'flow' (networkx max-flow) or 'brute' (try every small deletion set). Defaults to config.EDGE_CONNECTIVITY_METHOD
    :raises GraphHypothesisException: If the graph is disconnected
    """
    _require_connected(g)
    method = method or config.EDGE_CONNECTIVITY_METHOD
    graph = g.to_networkx()
    if method == "flow":
        return nx.edge_connectivity(graph)
    if method != "brute":
        raise ValueError(f"unknown edge connectivity method {method!r}")
    # The minimum degree bounds the connectivity, so only smaller cuts need to be tried
    min_degree = min(d for _, d in graph.degree())
    edges = g.edge_list()
    for size in range(1, min_degree):
        for cut in itertools.combinations(edges, size):
            reduced = graph.copy()
            reduced.remove_edges_from(cut)
            if not nx.is_connected(reduced):
                return size
    return min_degree


def validate(g: Graph) -> ValidationReport:
    """
    Check the hypotheses of the construction: simple, connected, cubic, bridgeless, planar and three-connected.
    Three-connectivity is read off the edge connectivity, which is equivalent for cubic graphs
    """
    violations = []
    graph = g.to_networkx()
    simple = all(len(pair) == 2 for pair in g.edges)
    if not simple:
        violations.append("graph has a loop")

    connected = nx.is_connected(graph)
    if not connected:
        violations.append("graph is not connected")

    bad_degrees = [v for v in g.vertex_ids if g.degree(v) != 3]
    cubic = not bad_degrees
    if not cubic:
        violations.append(f"vertices not of degree 3: {' '.join(bad_degrees)}")

    bridgeless = connected and not nx.has_bridges(graph)
    if connected and not bridgeless:
        bridges = [edge_label(u, v) for u, v in nx.bridges(graph)]
        violations.append(f"bridges: {' '.join(sorted(bridges))}")

    connectivity = edge_connectivity(g) if connected else 0
    three_connected = cubic and connectivity >= 3
    if cubic and connected and not three_connected:
        violations.append(f"edge connectivity is {connectivity}, need 3")

    planar, _ = nx.check_planarity(graph)
    if not planar:
        violations.append("graph is not planar")

    lemma39_ok = False
    if planar and connected and cubic and bridgeless:
        # hint-free copy; the file's outer, face and rotation lines never raise here
        embedding = planar_embed(replace(g, rotation=None, outer=None, face_names=()))
        lemma39_ok = all(check_lemma_3_9(embedding.with_outer_dart(face.boundary[0])) for face in embedding.face_list)
        if not lemma39_ok:
            violations.append("some choice of outer face has two non-adjacent exterior vertices on one interior face")

    report = ValidationReport(simple, connected, cubic, bridgeless, connectivity, planar,
                              three_connected, lemma39_ok, tuple(violations))
    logger.debug(f"validated {g.name}: {report}")
    return report


def planar_embed(g: Graph, outer_hint: Optional[Sequence[str]] = None) -> PlanarEmbedding:
    """
    Compute (or adopt) a planar embedding.

    A rotation system given in the input is trusted for its face structure but re-checked against Euler's
    formula. Otherwise networkx's left-right planarity test supplies one. The outer face is, in order of
    preference, outer_hint, the outer face named in the input, or the longest face (ties: least boundary).

    :raises NotPlanarException: With a Kuratowski subgraph as witness
    :raises EmbeddingException: If a given rotation system is inconsistent
    """
    _require_connected(g)
    graph = g.to_networkx()
    if g.rotation is not None:
        rotation = g.rotation
        probe = nx.PlanarEmbedding()
        probe.set_data({v: list(nbrs) for v, nbrs in rotation})
        try:
            probe.check_structure()
        except nx.NetworkXException as e:
            raise EmbeddingException(f"rotation system of {g.name} is not a planar embedding: {e}")
    else:
        planar, certificate = nx.check_planarity(graph, counterexample=True)
        if not planar:
            witness = sorted(tuple(sorted(e, key=natural_key)) for e in certificate.edges())
            raise NotPlanarException(f"graph {g.name} is not planar", witness=witness)
        data = certificate.get_data()
        rotation = tuple((v, tuple(data[v])) for v in g.vertex_ids)

    bare = PlanarEmbedding(g, rotation, rotation[0][0:1] + (rotation[0][1][0],))
    walks = bare.walks
    if len(g.vertex_ids) - len(g.edges) + len(walks) != 2:
        raise EmbeddingException(f"rotation system of {g.name} violates Euler's formula")

    hint = outer_hint or g.outer
    if hint:
        outer_walk = _match_face(walks, hint)
        if outer_walk is None:
            raise EmbeddingException(f"no face has boundary vertices {' '.join(hint)}")
    else:
        outer_walk = min(walks, key=lambda w: (-len(w), _walk_key([u for u, _ in w])))

    names = []
    for name, vertices in g.face_names:
        walk = _match_face(walks, vertices)
        if walk is None:
            raise EmbeddingException(f"face {name} does not match a face of the embedding")
        if walk is outer_walk:
            continue
        names.append((walk[0], name))

    embedding = PlanarEmbedding(g, rotation, outer_walk[0], tuple(names))
    logger.debug(f"embedded {g.name} with {len(walks)} faces, outer face {' '.join(embedding.outer_face.vertices)}")
    return embedding


def faces(e: PlanarEmbedding) -> List[Face]:
    """
    All faces of the embedding: interior faces in name order, then the outer face
    :raises EmbeddingException: If the rotation system is inconsistent
    """
    try:
        e.nx_embedding.check_structure()
    except nx.NetworkXException as err:
        raise EmbeddingException(f"inconsistent rotation system: {err}")
    face_list = e.face_list
    if sum(face.length for face in face_list) != 2 * len(e.graph.edges):
        raise EmbeddingException("face walks do not cover every half-edge once")
    return face_list


def exterior_vertices(e: PlanarEmbedding) -> FrozenSet[str]:
    return frozenset(e.outer_face.vertices)


def classify_vertices(e: PlanarEmbedding) -> VertexClassification:
    """
    Split vertices into exterior (on the outer face) and interior ones, and find the interior neighbour
    of every exterior vertex.
    :raises GraphHypothesisException: If an exterior vertex does not have exactly one interior neighbour
    """
    exterior = exterior_vertices(e)
    kinds = {v: ("exterior" if v in exterior else "interior") for v in e.graph.vertex_ids}
    interior_neighbor = {}
    for v in e.graph.vertex_ids:
        if kinds[v] != "exterior":
            continue
        inner = [w for w in e.graph.neighbors(v) if kinds[w] == "interior"]
        if len(inner) != 1:
            raise GraphHypothesisException(
                f"exterior vertex {v} has {len(inner)} interior neighbours ({' '.join(inner) or 'none'}), expected exactly one")
        interior_neighbor[v] = inner[0]
    return VertexClassification(kinds, interior_neighbor)


def check_lemma_3_9(e: PlanarEmbedding) -> bool:
    """ True iff every pair of exterior vertices on a common interior face is adjacent """
    exterior = exterior_vertices(e)
    for face in e.interior_faces:
        on_face = sorted(set(face.vertices) & exterior, key=natural_key)
        for u, v in itertools.combinations(on_face, 2):
            if not e.graph.has_edge(u, v):
                logger.debug(f"exterior vertices {u} and {v} share face {face.id} but are not adjacent")
                return False
    return True


def is_isomorphic(a: Graph, b: Graph) -> bool:
    """ Whether two graphs are isomorphic, ignoring labels and embeddings """
    return nx.is_isomorphic(a.to_networkx(), b.to_networkx())
