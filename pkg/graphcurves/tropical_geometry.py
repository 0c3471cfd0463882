"""
Exact combinatorial model of the tropicalized schön arrangement.

Tropical projective space is modelled through its points' supports: a point has coordinates in
R ∪ {∞}, not all ∞, up to adding a constant, and its support is where it is finite. Under the
trivial valuation every set that occurs here is a union of atomic cells. An atomic cell is given by
a support S and a nonempty zero block Z ⊆ S: the points that are 0 on Z, equal to one common
parameter s > 0 on R = S \\ Z, and ∞ elsewhere. A cell with Z = S is a single point; otherwise it is
an open segment running from the point (S, S) at s = 0 to the point (Z, Z) as s grows.

Membership of a cell in the tropical hypersurface of a linear form depends only on these blocks,
so every check below is symbolic and exact.
"""
import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import sympy

from graphcurves.config import config
from graphcurves.exceptions import ComplexException, ComputationLimitException
from graphcurves.internal.labels import natural_key
from graphcurves.internal.serialization import rational_text
from graphcurves.schoen import TYPE_I, TYPE_II, GeneratorSet, LinearForm, LineIdeal

import logging
logger = logging.getLogger(__name__)

CORNER = "corner"
BRANCH_POINT = "branch-point"
LANDING = "landing"
RAY_ENDPOINT = "ray-endpoint"
SUBDIVISION = "subdivision"


def _faces(ids: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(ids), key=natural_key))


def _faces_key(ids: Sequence[str]):
    return len(ids), tuple(natural_key(f) for f in ids)


@dataclass(frozen=True)
class TropicalPoint:
    """
    A point of tropical projective space.

    :param support: The faces where the point is finite, in face order
    :param coords: The finite values on the support, shifted so the least is 0
    """
    support: Tuple[str, ...]
    coords: Tuple[sympy.Rational, ...]

    def __post_init__(self):
        if not self.support:
            raise ValueError("a tropical point needs a nonempty support")
        if len(self.support) != len(self.coords):
            raise ValueError("support and coordinates differ in length")
        if min(self.coords) != 0:
            raise ValueError("coordinates must be normalised to minimum 0")

    @classmethod
    def from_values(cls, values: Dict[str, Optional[object]]) -> "TropicalPoint":
        """ Build from face -> value, None meaning ∞. Shifts the finite values to minimum 0 """
        finite = {f: sympy.Rational(v) for f, v in values.items() if v is not None}
        if not finite:
            raise ValueError("a tropical point needs a finite coordinate")
        low = min(finite.values())
        support = _faces(finite)
        return cls(support, tuple(finite[f] - low for f in support))

    def value(self, face: str) -> Optional[sympy.Rational]:
        """ The coordinate at face, None for ∞ """
        if face in self.support:
            return self.coords[self.support.index(face)]
        return None

    def to_dict(self):
        return {"support": list(self.support), "coords": [rational_text(c) for c in self.coords]}


@dataclass(frozen=True)
class Cell:
    """
    An atomic cell: 0 on zero, one common positive value on the rest of support, ∞ elsewhere
    """
    support: Tuple[str, ...]
    zero: Tuple[str, ...]

    def __post_init__(self):
        if not self.zero or not set(self.zero) <= set(self.support):
            raise ValueError(f"bad cell: zero block {self.zero} in support {self.support}")

    @classmethod
    def of(cls, support, zero) -> "Cell":
        return cls(_faces(support), _faces(zero))

    @classmethod
    def point(cls, support) -> "Cell":
        return cls.of(support, support)

    @property
    def raised(self) -> Tuple[str, ...]:
        return tuple(f for f in self.support if f not in self.zero)

    @property
    def dimension(self) -> int:
        return 0 if not self.raised else 1

    @property
    def endpoints(self) -> Tuple["Cell", "Cell"]:
        """ The limits s -> 0 and s -> ∞ of a segment """
        return Cell.point(self.support), Cell.point(self.zero)

    def sample(self, s=1) -> TropicalPoint:
        """ The point of the cell with parameter s """
        return TropicalPoint(self.support, tuple(sympy.Integer(0) if f in self.zero else sympy.Rational(s)
                                                 for f in self.support))

    def text(self) -> str:
        if not self.raised:
            return "{" + ",".join(self.support) + "}"
        return "{" + ",".join(self.zero) + "|" + ",".join(self.raised) + "}"


def point_in_tropproj(p: TropicalPoint, factor: LinearForm) -> bool:
    """
    Whether p lies on the tropical hypersurface of a linear factor.
    A variable x_j contains exactly the points with x_j = ∞. A sum contains the points where the
    minimum over its terms is attained at least twice, or where every term is ∞
    """
    if factor.is_variable:
        return factor.support[0] not in p.support
    values = [p.value(f) for f in factor.support]
    finite = [v for v in values if v is not None]
    if not finite:
        return True
    return finite.count(min(finite)) >= 2


def cell_in_tropproj(cell: Cell, factor: LinearForm) -> bool:
    """ point_in_tropproj for every point of the cell at once """
    if factor.is_variable:
        return factor.support[0] not in cell.support
    terms = set(factor.support)
    at_zero = terms & set(cell.zero)
    if at_zero:
        return len(at_zero) >= 2
    at_raised = terms & set(cell.raised)
    if at_raised:
        return len(at_raised) >= 2
    return True


def point_in_polynomial_tropproj(p: TropicalPoint, poly: sympy.Poly) -> bool:
    """
    Direct evaluation for a polynomial with trivial valuation: the minimum of α·p over its
    monomials is attained twice, or every monomial is ∞ at p
    """
    values = []
    for exponents in poly.monoms():
        total = sympy.Integer(0)
        for symbol, power in zip(poly.gens, exponents):
            if power == 0:
                continue
            coordinate = p.value(str(symbol)[2:])
            if coordinate is None:
                total = None
                break
            total += power * coordinate
        if total is not None:
            values.append(total)
    if not values:
        return True
    return values.count(min(values)) >= 2


@dataclass(frozen=True)
class TropicalLineGeom:
    """
    The tropicalization of one line of the arrangement.

    A TypeI line is the closed simplex edge between two corners, subdivided at its midpoint.
    A TypeII line is a tripod in the 2-face of its sum form: the branch point, all coordinates 0,
    and three rays, each labelled by the pair of faces that stay at the minimum and ending at the
    boundary point with that pair as support.

    :param line: The vertex the line belongs to
    :param kind: TypeI or TypeII
    :param support: The two faces (TypeI) or the three faces of the sum form (TypeII)
    :param cells: The open 1-cells of the line
    """
    line: str
    kind: str
    support: Tuple[str, ...]
    cells: Tuple[Cell, ...]

    @property
    def points(self) -> Tuple[Cell, ...]:
        """ Every 0-cell of the line: endpoints of its 1-cells """
        seen = {}
        for cell in self.cells:
            for end in cell.endpoints:
                seen[end] = None
        return tuple(sorted(seen, key=lambda c: _faces_key(c.support)))

    @property
    def branch_point(self) -> Optional[Cell]:
        return Cell.point(self.support) if self.kind == TYPE_II else None

    @property
    def rays(self) -> Tuple[Cell, ...]:
        return self.cells if self.kind == TYPE_II else ()

    def valence(self, point: Cell) -> int:
        return sum(point in cell.endpoints for cell in self.cells)


def tropicalize_line(l: LineIdeal) -> TropicalLineGeom:
    """ Tropicalize a line ideal under the trivial valuation """
    if l.kind == TYPE_I:
        support = l.nonzero_faces
        if len(support) != 2:
            raise ComplexException(f"TypeI line L_{l.vertex} spans {len(support)} faces, expected 2")
        a, b = support
        cells = (Cell.of(support, (a,)), Cell.of(support, (b,)))
    else:
        support = _faces(v.face_id for v in l.sum_support)
        cells = tuple(Cell.of(support, pair) for pair in itertools.combinations(support, 2))
    return TropicalLineGeom(l.vertex, l.kind, _faces(support), cells)


@dataclass(frozen=True)
class Node:
    id: str
    cell: Cell
    tag: str
    lines: Tuple[str, ...]

    @property
    def point(self) -> TropicalPoint:
        return self.cell.sample()

    def to_dict(self):
        point = self.point
        return {"id": self.id, "support": list(point.support),
                "coords": [rational_text(c) for c in point.coords], "tag": self.tag}


@dataclass(frozen=True)
class Segment:
    id: str
    source: str
    target: str
    line: str
    cell: Cell

    @property
    def label(self) -> str:
        return ",".join(self.cell.zero)

    def to_dict(self):
        return {"from": self.source, "to": self.target, "line": self.line, "label": self.label}


@dataclass(frozen=True)
class TropicalComplex:
    """
    The union of the tropical lines as a 1-complex.

    :param nodes: 0-cells, ordered by support size then face names
    :param segments: 1-cells with the line that owns them
    :param line_kinds: Line id -> TypeI / TypeII
    :param branch_points: TypeII line id -> node id of its branch point
    :param line_nodes: Line id -> ids of the nodes on that line
    """
    nodes: Tuple[Node, ...] = ()
    segments: Tuple[Segment, ...] = ()
    line_kinds: Dict[str, str] = field(default_factory=dict)
    branch_points: Dict[str, str] = field(default_factory=dict)
    line_nodes: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def __hash__(self):
        return hash((self.nodes, self.segments))

    def node(self, node_id: str) -> Node:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise KeyError(node_id)

    def cells(self) -> List[Cell]:
        return [n.cell for n in self.nodes] + [s.cell for s in self.segments]

    def to_dict(self):
        return {
            "nodes": [n.to_dict() for n in self.nodes],
            "segments": [s.to_dict() for s in self.segments],
        }


def build_arrangement(lines: Sequence[TropicalLineGeom]) -> TropicalComplex:
    """
    Glue tropical lines into one complex. Distinct atomic cells are disjoint, so lines can only
    meet in shared 0-cells: TypeI edges at common corners, rays at common endpoints, and rays
    landing on the midpoint of a TypeI edge.

    :raises ComplexException: If two lines share a 1-cell
    """
    owner: Dict[Cell, str] = {}
    point_lines: Dict[Cell, List[str]] = {}
    midpoints, branch, ray_ends = set(), {}, set()
    for geom in lines:
        for cell in geom.cells:
            if cell in owner:
                raise ComplexException(f"lines L_{owner[cell]} and L_{geom.line} share the 1-cell {cell.text()}")
            owner[cell] = geom.line
        for point in geom.points:
            point_lines.setdefault(point, []).append(geom.line)
        if geom.kind == TYPE_I:
            midpoints.add(Cell.point(geom.support))
        else:
            branch[geom.line] = geom.branch_point
            ray_ends.update(ray.endpoints[1] for ray in geom.rays)

    ordered = sorted(point_lines, key=lambda c: _faces_key(c.support))
    branch_cells = set(branch.values())
    node_ids = {cell: f"n{i}" for i, cell in enumerate(ordered, start=1)}
    nodes = []
    for cell in ordered:
        if len(cell.support) == 1:
            tag = CORNER
        elif cell in branch_cells:
            tag = BRANCH_POINT
        elif cell in midpoints:
            tag = LANDING if cell in ray_ends else SUBDIVISION
        else:
            tag = RAY_ENDPOINT
        nodes.append(Node(node_ids[cell], cell, tag, tuple(point_lines[cell])))

    segments = []
    for i, (cell, line) in enumerate(sorted(owner.items(), key=lambda item: (_faces_key(item[0].support),
                                                                            _faces_key(item[0].zero))), start=1):
        source, target = cell.endpoints
        segments.append(Segment(f"s{i}", node_ids[source], node_ids[target], line, cell))

    line_nodes = {geom.line: tuple(node_ids[p] for p in geom.points) for geom in lines}
    complex_ = TropicalComplex(
        nodes=tuple(nodes),
        segments=tuple(segments),
        line_kinds={geom.line: geom.kind for geom in lines},
        branch_points={line: node_ids[cell] for line, cell in branch.items()},
        line_nodes=line_nodes,
    )
    logger.debug(f"arrangement of {len(lines)} lines: {len(nodes)} nodes, {len(segments)} segments")
    return complex_


@dataclass(frozen=True)
class SelectionPiece:
    """
    The intersection of one chosen factor per generator.

    Chosen variables force their coordinates to ∞, which leaves the closed simplex face on the
    remaining faces. A chosen sum form then cuts that face in its tropical hyperplane.

    :param choice: One selection reaching this piece, a factor per generator
    :param forced: Faces forced to ∞
    :param visible: The remaining faces
    :param sum_form: The support of the chosen sum form, if any
    :param dimension: Dimension of the piece, -1 when empty
    :param cells: The atomic cells of the piece, computed when its dimension is at most 1
    """
    choice: Tuple[LinearForm, ...]
    forced: Tuple[str, ...]
    visible: Tuple[str, ...]
    sum_form: Optional[Tuple[str, ...]]
    dimension: int
    cells: Tuple[Cell, ...] = ()

    def text(self) -> str:
        chosen = ", ".join(form.text() for form in self.choice)
        cut = f" cut by {'+'.join(self.sum_form)}" if self.sum_form else ""
        return f"({chosen}) -> face {{{','.join(self.visible)}}}{cut}, dimension {self.dimension}"

    def to_dict(self):
        return {
            "choice": [list(form.support) for form in self.choice],
            "forced": list(self.forced),
            "visible": list(self.visible),
            "sum_form": list(self.sum_form) if self.sum_form else None,
            "dimension": self.dimension,
            "cells": [cell.text() for cell in self.cells],
        }


def _piece(choice, forced, sum_form, scope) -> SelectionPiece:
    visible = tuple(f for f in scope if f not in forced)
    restricted = [f for f in (sum_form or ()) if f in visible]
    if not visible:
        dimension = -1
    elif sum_form is None or not restricted:
        dimension = len(visible) - 1
    else:
        dimension = len(visible) - 2
    cells = []
    if dimension <= 1:
        form = LinearForm(tuple(sum_form)) if sum_form else None
        for size in range(1, len(visible) + 1):
            for support in itertools.combinations(visible, size):
                for zsize in range(1, size + 1):
                    for zero in itertools.combinations(support, zsize):
                        cell = Cell.of(support, zero)
                        if form is None or cell_in_tropproj(cell, form):
                            cells.append(cell)
    return SelectionPiece(tuple(choice), _faces(forced), visible,
                          tuple(sum_form) if sum_form else None, dimension, tuple(cells))


def enumerate_selection_pieces(gens: GeneratorSet) -> List[SelectionPiece]:
    """
    One piece per choice of a factor from each generator, deduplicated by the forced faces and the
    chosen sum form.

    :raises ComputationLimitException: If the distinct states exceed config.SELECTION_STATE_LIMIT
    :raises ValueError: If a choice combines two different sum forms
    """
    scope = tuple(v.face_id for v in gens.variables)
    # state: (forced faces, sum form support or None) -> first choice reaching it
    states: Dict[Tuple[FrozenSet[str], Optional[Tuple[str, ...]]], Tuple[LinearForm, ...]] = {(frozenset(), None): ()}
    for gen in gens.generators:
        next_states = {}
        for (forced, sum_form), choice in states.items():
            for factor in gen.factors:
                if factor.is_variable:
                    key = (forced | {factor.support[0]}, sum_form)
                else:
                    if sum_form is not None and sum_form != factor.support:
                        raise ValueError(f"a selection combines the sum forms {'+'.join(sum_form)} and {factor.text()}")
                    key = (forced, factor.support)
                if key not in next_states:
                    next_states[key] = choice + (factor,)
        if len(next_states) > config.SELECTION_STATE_LIMIT:
            raise ComputationLimitException(f"more than {config.SELECTION_STATE_LIMIT} selection states")
        states = next_states
    pieces = [_piece(choice, forced, sum_form, scope) for (forced, sum_form), choice in states.items()]
    pieces.sort(key=lambda p: (_faces_key(p.forced), p.sum_form or ()))
    return pieces


@dataclass(frozen=True)
class BasisCertificate:
    """
    Outcome of the tropical basis check. On failure, reason says what went wrong and piece or
    cell holds the witness
    """
    passed: bool
    pieces: int = 0
    reason: str = ""
    piece: Optional[SelectionPiece] = None
    cell: Optional[Cell] = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self):
        return {
            "status": self.status,
            "pieces": self.pieces,
            "reason": self.reason,
            "piece": self.piece.to_dict() if self.piece else None,
            "cell": self.cell.text() if self.cell else None,
        }


def tropical_basis_check(gens: GeneratorSet, complex: TropicalComplex) -> BasisCertificate:
    """
    Certify that the generators form a tropical basis of the arrangement: every cell of the complex
    lies on the tropical hypersurface of each generator, and every selection piece is at most
    one-dimensional and made of cells of the complex. Returns the first violation
    """
    cells = complex.cells()
    for cell in cells:
        for index, gen in enumerate(gens.generators):
            if not any(cell_in_tropproj(cell, factor) for factor in gen.factors):
                return BasisCertificate(False, reason=f"cell {cell.text()} is not on the hypersurface of generator {index + 1}",
                                        cell=cell)

    known = set(cells)
    pieces = enumerate_selection_pieces(gens)
    for piece in pieces:
        if piece.dimension > 1:
            return BasisCertificate(False, len(pieces), f"selection piece of dimension {piece.dimension}: {piece.text()}",
                                    piece=piece)
        missing = [cell for cell in piece.cells if cell not in known]
        if missing:
            return BasisCertificate(False, len(pieces), f"selection piece {piece.text()} leaves the complex at {missing[0].text()}",
                                    piece=piece, cell=missing[0])
    logger.debug(f"tropical basis check passed over {len(pieces)} selection pieces")
    return BasisCertificate(True, len(pieces))
