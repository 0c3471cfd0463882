"""
Local moves on embedded cubic graphs and the reduction of any valid graph to K4.

Three moves are supported, all acting on the rotation system directly so the planar
embedding, the outer face and the face names are carried along:

- Delta-Y contracts an interior triangular face to a single vertex (genus drops by one).
- Y-Delta blows a vertex up into a triangle (genus grows by one). It inverts Delta-Y.
- Contraction-elongation contracts an edge and splits the resulting 4-valent vertex the
  other way, so the edge now separates the two faces that used to sit at its ends.
"""
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from graphcurves.config import config
from graphcurves.exceptions import (
    MoveException,
    ReductionException,
    TraceException,
)
from graphcurves.graph_kernel import (
    OUTER_FACE_ID,
    Dart,
    Face,
    Graph,
    PlanarEmbedding,
    faces,
    is_isomorphic,
    load_bundled,
    planar_embed,
    validate,
)
from graphcurves.internal.labels import edge_label, fresh_labels, natural_key

import logging
logger = logging.getLogger(__name__)

DELTA_Y = "DY"
Y_DELTA = "YD"
CONTRACT_ELONGATE = "CE"

_SITE_KEYS = {DELTA_Y: "face", Y_DELTA: "vertex", CONTRACT_ELONGATE: "edge"}


@dataclass(frozen=True)
class MoveRecord:
    """
    One applied move.

    :param kind: DY, YD or CE
    :param site: Triangle face id (DY), vertex id (YD) or edge id u-v (CE)
    :param created: Ids of the vertices and faces the move introduced
    :param removed: Ids of the vertices and faces the move deleted
    :param attachments: (vertex, outside neighbour) pairs of the triangle involved in DY and YD, in
        clockwise order. Lets the inverse move restore the original labels exactly
    """
    kind: str
    site: str
    created: Tuple[str, ...] = ()
    removed: Tuple[str, ...] = ()
    attachments: Tuple[Tuple[str, str], ...] = ()

    def to_line(self) -> str:
        return f"{self.kind} {_SITE_KEYS[self.kind]}={self.site}"

    def to_dict(self):
        return {
            "kind": self.kind,
            "site": self.site,
            "created": list(self.created),
            "removed": list(self.removed),
        }


@dataclass(frozen=True)
class ReductionTrace:
    """
    A sequence of moves taking start to K4.
    intermediates[i] is the embedding after moves[i]
    """
    start: PlanarEmbedding
    moves: Tuple[MoveRecord, ...] = ()
    intermediates: Tuple[PlanarEmbedding, ...] = field(default=())

    @property
    def final(self) -> PlanarEmbedding:
        return self.intermediates[-1] if self.intermediates else self.start

    def to_dict(self):
        return {
            "start": self.start.graph.name,
            "moves": [move.to_dict() for move in self.moves],
            "intermediates": [
                {"vertices": len(emb.graph.vertex_ids), "edges": len(emb.graph.edges), "genus": emb.genus}
                for emb in self.intermediates
            ],
        }


def _graph_from_rotation(name, rotation: Dict[str, Sequence[str]]) -> Graph:
    pairs = {frozenset((v, w)) for v, nbrs in rotation.items() for w in nbrs}
    vertices = sorted(rotation, key=natural_key)
    return Graph(name=name, vertex_ids=tuple(vertices), edges=frozenset(pairs))


def _carry_dart(boundary: Sequence[Dart], dart_map: Callable[[Dart], Optional[Dart]]) -> Optional[Dart]:
    for dart in boundary:
        mapped = dart_map(dart)
        if mapped is not None:
            return mapped
    return None


def _rebuild(e: PlanarEmbedding, rotation, dart_map, extra_names=()) -> PlanarEmbedding:
    """ Build the embedding after a local move, carrying the outer face and every face name through dart_map """
    graph = _graph_from_rotation(e.graph.name, rotation)
    outer = _carry_dart(e.outer_face.boundary, dart_map)
    if outer is None:
        raise MoveException("the move would remove the outer face")
    names = []
    for face in e.interior_faces:
        dart = _carry_dart(face.boundary, dart_map)
        if dart is not None:
            names.append((dart, face.id))
    names.extend(extra_names)
    result = PlanarEmbedding(
        graph=graph,
        rotation=tuple((v, tuple(rotation[v])) for v in graph.vertex_ids),
        outer_dart=outer,
        face_names=tuple(names),
    )
    faces(result)
    return result


def _replace(nbrs, old, new):
    return tuple(new if w == old else w for w in nbrs)


def relabel(e: PlanarEmbedding, mapping: Dict[str, str]) -> PlanarEmbedding:
    """ Rename vertices. Vertices missing from mapping keep their label """
    rename = lambda v: mapping.get(v, v)
    rotation = {rename(v): tuple(rename(w) for w in nbrs) for v, nbrs in e.rotation}
    if len(rotation) != len(e.rotation):
        raise MoveException("relabelling is not injective")
    return _rebuild(e, rotation, lambda d: (rename(d[0]), rename(d[1])))


def delta_y(e: PlanarEmbedding, triangle: str, new_label: Optional[str] = None) -> PlanarEmbedding:
    """ Contract the interior triangular face triangle to one new vertex. See delta_y_record """
    return delta_y_record(e, triangle, new_label)[1]


def delta_y_record(e: PlanarEmbedding, triangle: str, new_label: Optional[str] = None) -> Tuple[MoveRecord, PlanarEmbedding]:
    """
    Delta-Y on an interior triangle.

    :param triangle: Id of an interior face of length 3
    :param new_label: Label for the new vertex. Defaults to the least unused v<k>
    :raises MoveException: If the face is not an interior triangle or the result would have a multi-edge
    """
    face = e.face_by_id.get(triangle)
    if face is None:
        raise MoveException(f"no face {triangle}")
    if face.is_outer:
        raise MoveException(f"face {triangle} is the outer face")
    if face.length != 3:
        raise MoveException(f"face {triangle} has length {face.length}, not 3")

    corners = [u for u, _ in face.boundary]
    corner_set = set(corners)
    outside = []
    for corner in corners:
        third = [w for w in e.rotation_map[corner] if w not in corner_set]
        if len(third) != 1:
            raise MoveException(f"vertex {corner} of face {triangle} is not cubic")
        outside.append(third[0])
    if len(set(outside)) != 3:
        raise MoveException(f"Delta-Y on {triangle} would create a multi-edge: outside neighbours {' '.join(outside)}")

    taken = set(e.graph.vertex_ids)
    n = new_label or fresh_labels(taken, 1, "v")[0]
    if n in taken - corner_set:
        raise MoveException(f"label {n} is already in use")

    rotation = {v: nbrs for v, nbrs in e.rotation if v not in corner_set}
    # Walking the triangle a -> b -> c puts a's outside neighbour, then b's, then c's, clockwise around n
    rotation[n] = tuple(outside)
    for corner, p in zip(corners, outside):
        rotation[p] = _replace(rotation[p], corner, n)

    def dart_map(dart):
        u, w = dart
        if u in corner_set and w in corner_set:
            return None
        return (n if u in corner_set else u, n if w in corner_set else w)

    result = _rebuild(e, rotation, dart_map)
    record = MoveRecord(DELTA_Y, triangle, created=(n,), removed=(triangle,) + tuple(corners),
                        attachments=tuple(zip(corners, outside)))
    logger.debug(f"Delta-Y on {triangle} ({' '.join(corners)}) -> {n}")
    return record, result


def y_delta(e: PlanarEmbedding, v: str, labels: Optional[Sequence[str]] = None,
            face_name: Optional[str] = None) -> PlanarEmbedding:
    """ Replace v by a triangle. See y_delta_record """
    return y_delta_record(e, v, labels, face_name)[1]


def y_delta_record(e: PlanarEmbedding, v: str, labels: Optional[Sequence[str]] = None,
                   face_name: Optional[str] = None) -> Tuple[MoveRecord, PlanarEmbedding]:
    """
    Y-Delta on a vertex.

    :param v: A cubic vertex, exterior or interior
    :param labels: Labels for the triangle's vertices, one per neighbour of v in clockwise order from
        the start of v's rotation, or a dict from neighbour to label. Defaults to the least unused v<k>
    :param face_name: Name of the new triangular face. Defaults to the least unused F<k>
    :raises MoveException: If v is not cubic or the result would not be simple
    """
    if v not in e.rotation_map:
        raise MoveException(f"no vertex {v}")
    outside = e.rotation_map[v]
    if len(outside) != 3:
        raise MoveException(f"vertex {v} has degree {len(outside)}, not 3")
    if len(set(outside)) != 3:
        raise MoveException(f"vertex {v} has a repeated neighbour")

    taken = set(e.graph.vertex_ids) - {v}
    if labels is None:
        new = fresh_labels(taken | {v}, 3, "v")
    elif isinstance(labels, dict):
        new = [labels[p] for p in outside]
    else:
        new = list(labels)
    if len(set(new)) != 3 or taken & set(new):
        raise MoveException(f"Y-Delta labels {' '.join(new)} clash with existing vertices")

    by_neighbour = dict(zip(outside, new))
    rotation = {w: nbrs for w, nbrs in e.rotation if w != v}
    for i, p in enumerate(outside):
        # Inverse of the Delta-Y rotation rule: a -> (b, c, a')
        rotation[new[i]] = (new[(i + 1) % 3], new[(i + 2) % 3], p)
        rotation[p] = _replace(rotation[p], v, new[i])

    def dart_map(dart):
        a, b = dart
        if a == v:
            return (by_neighbour[b], b)
        if b == v:
            return (a, by_neighbour[a])
        return dart

    names = {face.id for face in e.interior_faces}
    name = face_name or fresh_labels(names, 1, "F")[0]
    if name in names:
        raise MoveException(f"face name {name} is already in use")
    result = _rebuild(e, rotation, dart_map, extra_names=[((new[0], new[1]), name)])
    if not all(len(set(nbrs)) == 3 for nbrs in rotation.values()):
        raise MoveException(f"Y-Delta on {v} produced a graph that is not simple")
    record = MoveRecord(Y_DELTA, v, created=tuple(new) + (name,), removed=(v,),
                        attachments=tuple(zip(new, outside)))
    logger.debug(f"Y-Delta on {v} -> {' '.join(new)} with face {name}")
    return record, result


def _parse_edge(edge) -> Tuple[str, str]:
    if isinstance(edge, str):
        ends = edge.split("-")
        if len(ends) != 2:
            raise MoveException(f"bad edge id {edge!r}")
        edge = ends
    u, v = sorted(edge, key=natural_key)
    return u, v


@dataclass(frozen=True)
class _EdgeFaces:
    """ The four faces around an edge v1-v2: F3 on the side of v1 -> v2, F4 on the other, F1 and F2 at the ends """
    v1: str
    v2: str
    f1: str
    f2: str
    f3: str
    f4: str


def _edge_faces(e: PlanarEmbedding, v1, v2) -> _EdgeFaces:
    f3, f4 = e.edge_faces(v1, v2)
    end1 = [f for f in e.vertex_faces(v1) if f not in (f3, f4)]
    end2 = [f for f in e.vertex_faces(v2) if f not in (f3, f4)]
    if len(end1) != 1 or len(end2) != 1:
        raise MoveException(f"edge {edge_label(v1, v2)} does not have two distinct faces at each end")
    return _EdgeFaces(v1, v2, end1[0], end2[0], f3, f4)


def _is_eligible(e: PlanarEmbedding, v1, v2, require_interior=True) -> bool:
    try:
        around = _edge_faces(e, v1, v2)
    except MoveException:
        return False
    if around.f3 == around.f4 or around.f1 == around.f2:
        return False
    if require_interior and OUTER_FACE_ID in (around.f3, around.f4):
        return False
    return True


def eligible_edges(e: PlanarEmbedding) -> List[str]:
    """ Ids of the edges bordering two distinct interior faces whose end faces differ, in natural order """
    return [edge_label(u, v) for u, v in e.graph.edge_list() if _is_eligible(e, u, v)]


def contract_elongate(e: PlanarEmbedding, edge, require_interior: bool = True) -> PlanarEmbedding:
    """ Contraction-elongation on edge. See contract_elongate_record """
    return contract_elongate_record(e, edge, require_interior)[1]


def contract_elongate_record(e: PlanarEmbedding, edge, require_interior: bool = True) -> Tuple[MoveRecord, PlanarEmbedding]:
    """
    Contract the edge v1-v2 and split the 4-valent vertex transversally.

    With F3 the face of v1 -> v2, F4 the face of v2 -> v1, and F1, F2 the third faces at v1 and v2,
    the new edge separates F1 from F2 and its endpoints keep the labels v1 (faces F1 F2 F3) and
    v2 (faces F1 F2 F4). Applying the move twice on the same edge returns the input with v1 and v2 swapped.

    :param edge: 'u-v' or a (u, v) pair. v1 is the endpoint that comes first in natural order
    :param require_interior: Insist that both sides of the edge are interior faces
    :raises MoveException: If the edge is not eligible, or the result is not simple or not three-connected
    """
    v1, v2 = _parse_edge(edge)
    if not e.graph.has_edge(v1, v2):
        raise MoveException(f"no edge {edge_label(v1, v2)}")
    around = _edge_faces(e, v1, v2)
    if around.f3 == around.f4:
        raise MoveException(f"edge {edge_label(v1, v2)} has face {around.f3} on both sides")
    if require_interior and OUTER_FACE_ID in (around.f3, around.f4):
        raise MoveException(f"edge {edge_label(v1, v2)} lies on the outer face")
    if around.f1 == around.f2:
        raise MoveException(f"edge {edge_label(v1, v2)} has the same face {around.f1} at both ends, a multi-edge would result")

    rot1 = e.rotation_map[v1]
    rot2 = e.rotation_map[v2]
    i, j = rot1.index(v2), rot2.index(v1)
    x, y = rot1[(i + 1) % 3], rot1[(i + 2) % 3]
    z, u = rot2[(j + 1) % 3], rot2[(j + 2) % 3]
    if len({v2, u, x}) != 3 or len({v1, y, z}) != 3 or e.graph.has_edge(v1, u) or e.graph.has_edge(v2, y):
        raise MoveException(f"contraction-elongation on {edge_label(v1, v2)} would create a multi-edge")

    rotation = dict(e.rotation)
    rotation[v1] = (v2, u, x)
    rotation[v2] = (v1, y, z)
    rotation[y] = _replace(rotation[y], v1, v2)
    rotation[u] = _replace(rotation[u], v2, v1)

    moved = {(y, v1): (y, v2), (v1, y): (v2, y), (u, v2): (u, v1), (v2, u): (v1, u)}

    def dart_map(dart):
        if dart in ((v1, v2), (v2, v1)):
            return None
        return moved.get(dart, dart)

    result = _rebuild(e, rotation, dart_map)
    report = validate(result.graph)
    if not report.bridgeless or not report.three_connected:
        raise MoveException(f"contraction-elongation on {edge_label(v1, v2)} breaks three-connectivity: "
                            + "; ".join(report.violations))
    record = MoveRecord(CONTRACT_ELONGATE, edge_label(v1, v2),
                        created=(edge_label(v1, v2),), removed=(edge_label(v1, v2),))
    logger.debug(f"contraction-elongation on {edge_label(v1, v2)}: faces {around.f3}|{around.f4} -> {around.f1}|{around.f2}")
    return record, result


def apply_move(e: PlanarEmbedding, record: MoveRecord) -> PlanarEmbedding:
    """ Apply a move read from a trace file """
    if record.kind == DELTA_Y:
        return delta_y(e, record.site)
    if record.kind == Y_DELTA:
        return y_delta(e, record.site)
    if record.kind == CONTRACT_ELONGATE:
        return contract_elongate(e, record.site)
    raise TraceException(f"unknown move kind {record.kind!r}")


def _face_key(face: Face):
    return face.length, tuple(natural_key(v) for v in face.canonical_walk)


def _require_valid(e: PlanarEmbedding, context):
    report = validate(e.graph)
    if not report.ok:
        raise ReductionException(f"{context}: {'; '.join(report.violations)}", embedding=e)


def reduce_to_k4(e: PlanarEmbedding) -> ReductionTrace:
    """
    Reduce a valid embedding to K4.

    While the genus exceeds 3: Delta-Y on the least interior triangle if there is one, otherwise
    take the least interior face (by length, then boundary), shrink it to a triangle with
    contraction-elongations on its edges, and Delta-Y on it. Every intermediate is validated.

    :raises ReductionException: If no eligible edge is left, or an intermediate fails validation
    """
    _require_valid(e, f"{e.graph.name} is not a valid input")
    if e.genus < 3:
        raise ReductionException(f"genus {e.genus} is below 3", embedding=e)

    moves, intermediates = [], []
    current = e

    def step(record, result):
        nonlocal current
        _require_valid(result, f"after {record.to_line()}")
        moves.append(record)
        intermediates.append(result)
        current = result

    while current.genus > 3:
        triangles = [f for f in current.interior_faces if f.length == 3]
        if triangles:
            target = min(triangles, key=_face_key)
        else:
            target = min(current.interior_faces, key=_face_key)
            logger.debug(f"no interior triangle, shrinking {target.id} of length {target.length}")
            for _ in range(target.length - 3):
                step(*_shrink_face(current, target.id))
            target = current.face_by_id[target.id]
            if target.length != 3:
                raise ReductionException(f"face {target.id} still has length {target.length}", embedding=current)
        try:
            step(*delta_y_record(current, target.id))
        except MoveException as err:
            raise ReductionException(str(err), embedding=current)

    if not is_isomorphic(current.graph, load_bundled("k4")):
        raise ReductionException("reduction ended at a genus 3 graph that is not K4", embedding=current)
    logger.info(f"reduced {e.graph.name} to K4 in {len(moves)} moves")
    return ReductionTrace(e, tuple(moves), tuple(intermediates))


def _shrink_face(e: PlanarEmbedding, face_id: str) -> Tuple[MoveRecord, PlanarEmbedding]:
    face_edges = e.face_by_id[face_id].undirected_edges()
    candidates = [edge for edge in eligible_edges(e) if frozenset(edge.split("-")) in face_edges]
    failures = []
    for edge in candidates:
        try:
            return contract_elongate_record(e, edge)
        except MoveException as err:
            failures.append(str(err))
    raise ReductionException(f"no eligible interior edge on face {face_id}"
                             + (f" ({'; '.join(failures)})" if failures else ""), embedding=e)


def replay_inverse(t: ReductionTrace) -> List[PlanarEmbedding]:
    """
    Undo a reduction: start at its K4 and apply the inverse moves in reverse order.
    Returns the embeddings from K4 up to the start graph, each equal to the matching intermediate

    :raises TraceException: If a replayed embedding does not match the recorded one
    """
    sequence = [t.final]
    current = t.final
    recorded = [t.start] + list(t.intermediates)
    for index in range(len(t.moves) - 1, -1, -1):
        move = t.moves[index]
        try:
            current = _invert(current, move)
        except MoveException as err:
            raise TraceException(f"cannot invert {move.to_line()}: {err}")
        expected = recorded[index]
        if current.graph.edges != expected.graph.edges:
            raise TraceException(f"inverting {move.to_line()} did not restore the recorded embedding")
        sequence.append(current)
    return sequence


def _invert(e: PlanarEmbedding, move: MoveRecord) -> PlanarEmbedding:
    if move.kind == DELTA_Y:
        labels = {outside: corner for corner, outside in move.attachments}
        return y_delta(e, move.created[0], labels=labels, face_name=move.site)
    if move.kind == Y_DELTA:
        triangle = move.created[3]
        return delta_y(e, triangle, new_label=move.site)
    if move.kind == CONTRACT_ELONGATE:
        v1, v2 = _parse_edge(move.site)
        return relabel(contract_elongate(e, move.site, require_interior=False), {v1: v2, v2: v1})
    raise TraceException(f"unknown move kind {move.kind!r}")


def replay_trace(e: PlanarEmbedding, moves: Sequence[MoveRecord]) -> List[PlanarEmbedding]:
    """
    Apply moves read from a trace file, in order
    :return: The embeddings after each move, starting with e itself
    :raises TraceException: If a move does not apply
    """
    sequence = [e]
    for number, move in enumerate(moves, start=1):
        try:
            sequence.append(apply_move(sequence[-1], move))
        except MoveException as err:
            raise TraceException(f"move {number} ({move.to_line()}): {err}")
    return sequence


def trace_from_moves(e: PlanarEmbedding, moves: Sequence[MoveRecord]) -> ReductionTrace:
    """
    Apply moves read from a trace file and keep the full records, so the result can be inverted
    :raises TraceException: If a move does not apply
    """
    recorders = {DELTA_Y: delta_y_record, Y_DELTA: y_delta_record, CONTRACT_ELONGATE: contract_elongate_record}
    current = e
    records, intermediates = [], []
    for number, move in enumerate(moves, start=1):
        if move.kind not in recorders:
            raise TraceException(f"move {number}: unknown move kind {move.kind!r}")
        try:
            record, current = recorders[move.kind](current, move.site)
        except MoveException as err:
            raise TraceException(f"move {number} ({move.to_line()}): {err}")
        records.append(record)
        intermediates.append(current)
    return ReductionTrace(e, tuple(records), tuple(intermediates))


def format_trace(t: ReductionTrace) -> str:
    lines = [f"# reduction of {t.start.graph.name} to K4, {len(t.moves)} moves"]
    lines += [move.to_line() for move in t.moves]
    return "\n".join(lines) + "\n"


_TRACE_LINE = re.compile(r'^(DY|YD|CE)\s+(face|vertex|edge)=(\S+)$')


def parse_trace(text: str) -> List[MoveRecord]:
    """
    Parse the line-oriented trace format: one 'DY face=<id>', 'YD vertex=<v>' or 'CE edge=<u>-<v>' per line,
    '#' starts a comment
    :raises TraceException: On malformed lines
    """
    moves = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _TRACE_LINE.match(line)
        if not match or _SITE_KEYS[match.group(1)] != match.group(2):
            raise TraceException(f"line {number}: malformed move {raw.strip()!r}")
        kind, _, site = match.groups()
        if kind == CONTRACT_ELONGATE and len(site.split("-")) != 2:
            raise TraceException(f"line {number}: edge id must be <u>-<v>, got {site!r}")
        moves.append(MoveRecord(kind, site))
    return moves


def _normalized(g: Graph, name: str) -> Graph:
    mapping = {v: f"v{i}" for i, v in enumerate(g.vertex_ids, start=1)}
    return Graph.from_edges([(mapping[u], mapping[v]) for u, v in g.edge_list()], name=name)


def cubic_census(max_vertices: Optional[int] = None) -> Dict[int, List[Graph]]:
    """
    All cubic three-connected planar graphs with at most max_vertices vertices, up to isomorphism.

    Grown from K4: each order is closed under contraction-elongation on every edge, then Y-Delta on
    every vertex gives the seeds of the next order. Reduction to K4 runs these moves backwards, so
    nothing is missed.

    :return: Vertex count -> graphs with vertices v1..vn, named cubic<n>_<i>
    """
    max_vertices = max_vertices or config.CENSUS_MAX_VERTICES
    found: Dict[int, List[PlanarEmbedding]] = {}
    if max_vertices < 4:
        return {}
    seen: Dict[str, List[PlanarEmbedding]] = defaultdict(list)

    def add(emb, level):
        key = nx.weisfeiler_lehman_graph_hash(emb.graph.to_networkx())
        if any(is_isomorphic(emb.graph, other.graph) for other in seen[key]):
            return False
        seen[key].append(emb)
        level.append(emb)
        return True

    n = 4
    found[n] = []
    add(planar_embed(load_bundled("k4")), found[n])
    while True:
        level = found[n]
        queue = list(level)
        while queue:
            emb = queue.pop(0)
            for u, v in emb.graph.edge_list():
                if not _is_eligible(emb, u, v, require_interior=False):
                    continue
                try:
                    result = contract_elongate(emb, (u, v), require_interior=False)
                except MoveException:
                    continue
                if add(result, level):
                    queue.append(result)
        logger.info(f"census: {len(level)} graphs on {n} vertices")
        if n + 2 > max_vertices:
            break
        found[n + 2] = []
        for emb in level:
            for v in emb.graph.vertex_ids:
                add(y_delta(emb, v), found[n + 2])
        n += 2

    return {
        order: [_normalized(emb.graph, f"cubic{order}_{i}") for i, emb in enumerate(embs, start=1)]
        for order, embs in sorted(found.items())
    }
