"""
The schön embedding of a graph curve and its Stanley-Reisner presentation.

Every vertex v of the embedded graph gives a line L_v in projective space of dimension g - 1,
with one coordinate x_F per interior face F:

- an exterior vertex lies on two interior faces, and L_v is cut out by the g - 2 other variables;
- an interior vertex lies on three interior faces F, F', F'', and L_v is cut out by the g - 3 other
  variables together with x_F + x_F' + x_F''.

The union of these lines is generated by the minimal non-faces of the complex M dual to the
embedding, read as monomials in which the outer face variable is replaced by minus the sum of all
interior face variables.
"""
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Sequence, Tuple

import networkx as nx
import sympy

from graphcurves.exceptions import GraphHypothesisException
from graphcurves.graph_kernel import OUTER_FACE_ID, PlanarEmbedding, classify_vertices
from graphcurves.internal.labels import natural_key

import logging
logger = logging.getLogger(__name__)

TYPE_I = "TypeI"
TYPE_II = "TypeII"


def face_symbol(face_id: str) -> sympy.Symbol:
    return sympy.Symbol(f"x_{face_id}")


@dataclass(frozen=True)
class FaceVariable:
    """ The coordinate x_F belonging to the interior face F """
    face_id: str

    @property
    def name(self) -> str:
        return f"x_{{{self.face_id}}}"

    @property
    def symbol(self) -> sympy.Symbol:
        return face_symbol(self.face_id)


def _sorted_faces(face_ids) -> Tuple[str, ...]:
    return tuple(sorted(face_ids, key=natural_key))


def face_variables(e: PlanarEmbedding) -> Tuple[FaceVariable, ...]:
    """ One variable per interior face, in face name order """
    return tuple(FaceVariable(f.id) for f in e.interior_faces)


@dataclass(frozen=True)
class LinearForm:
    """
    A linear form with all coefficients equal, given by its support.
    A single face is the variable x_F; larger supports are sums of variables
    """
    support: Tuple[str, ...]

    @property
    def is_variable(self) -> bool:
        return len(self.support) == 1

    def expr(self):
        return sympy.Add(*[face_symbol(f) for f in self.support])

    def text(self) -> str:
        return "+".join(FaceVariable(f).name for f in self.support)


@dataclass(frozen=True)
class LineIdeal:
    """
    The ideal of the line L_v.

    :param vertex: The vertex v
    :param kind: TypeI for exterior vertices, TypeII for interior ones
    :param zero_vars: The variables in the ideal
    :param sum_support: The three faces of the sum form, TypeII only
    :param scope: All face ids of the ambient space, in order
    """
    vertex: str
    kind: str
    zero_vars: Tuple[FaceVariable, ...]
    sum_support: Tuple[FaceVariable, ...] = ()
    scope: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == TYPE_I and self.sum_support:
            raise ValueError(f"TypeI line L_{self.vertex} cannot have a sum form")
        if self.kind == TYPE_II and len(self.sum_support) != 3:
            raise ValueError(f"TypeII line L_{self.vertex} needs a sum form on three faces")
        if set(self.zero_vars) & set(self.sum_support):
            raise ValueError(f"generators of L_{self.vertex} do not have disjoint supports")

    @property
    def forms(self) -> Tuple[LinearForm, ...]:
        """ Generators of the ideal: the sum form first (TypeII), then the variables """
        forms = []
        if self.sum_support:
            forms.append(LinearForm(tuple(v.face_id for v in self.sum_support)))
        forms.extend(LinearForm((v.face_id,)) for v in self.zero_vars)
        return tuple(forms)

    @property
    def nonzero_faces(self) -> Tuple[str, ...]:
        """ Faces whose coordinates are not forced to vanish on the line """
        zero = {v.face_id for v in self.zero_vars}
        return tuple(f for f in self.scope if f not in zero)

    def to_dict(self):
        return {
            "vertex": self.vertex,
            "kind": self.kind,
            "zero_vars": [v.face_id for v in self.zero_vars],
            "sum_support": [v.face_id for v in self.sum_support],
        }


def format_ideal(line: LineIdeal) -> str:
    """ E.g. L_{v1} = ⟨x_{F1}+x_{F2}+x_{F3}, x_{F4}, x_{F5}⟩ """
    return f"L_{{{line.vertex}}} = ⟨{', '.join(form.text() for form in line.forms)}⟩"


def build_schoen(e: PlanarEmbedding) -> List[LineIdeal]:
    """
    The line ideals of the schön embedding, one per vertex, in vertex order.

    :raises GraphHypothesisException: If an exterior vertex does not lie on exactly two interior faces,
        an interior vertex not on three, or an exterior vertex lacks a unique interior neighbour
    """
    classification = classify_vertices(e)
    variables = face_variables(e)
    scope = tuple(v.face_id for v in variables)
    g = len(variables)
    lines = []
    for v in e.graph.vertex_ids:
        incident = set(e.vertex_faces(v)) - {OUTER_FACE_ID}
        zero = tuple(var for var in variables if var.face_id not in incident)
        if classification.kinds[v] == "exterior":
            if len(incident) != 2:
                raise GraphHypothesisException(f"exterior vertex {v} lies on {len(incident)} interior faces, expected 2")
            lines.append(LineIdeal(v, TYPE_I, zero, scope=scope))
        else:
            if len(incident) != 3:
                raise GraphHypothesisException(f"interior vertex {v} lies on {len(incident)} interior faces, expected 3")
            support = tuple(var for var in variables if var.face_id in incident)
            lines.append(LineIdeal(v, TYPE_II, zero, support, scope=scope))
    if len(lines) != 2 * g - 2:
        raise GraphHypothesisException(f"{len(lines)} lines for genus {g}, expected {2 * g - 2}")
    logger.debug(f"schön embedding of {e.graph.name}: {len(lines)} lines in {g} variables")
    return lines


@dataclass(frozen=True)
class DualComplexM:
    """
    The simplicial complex dual to the embedding: one vertex per face (the outer face is ``e``),
    one triangle per vertex of the graph on the three faces around it.

    :param vertices: Face ids, interior faces in name order then ``e``
    :param facets: Graph vertex -> the facet it spans
    """
    vertices: Tuple[str, ...]
    facets: Dict[str, FrozenSet[str]]

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.facets.items()))))

    def is_face(self, subset) -> bool:
        subset = frozenset(subset)
        return any(subset <= facet for facet in self.facets.values())

    @cached_property
    def minimal_non_faces(self) -> List[Tuple[str, ...]]:
        """ Subsets that are not faces but all of whose proper subsets are, by increasing size """
        order = {f: i for i, f in enumerate(self.vertices)}
        faces_prev = {frozenset((v,)) for v in self.vertices if self.is_face((v,))}
        non_faces = [(v,) for v in self.vertices if frozenset((v,)) not in faces_prev]
        size = 2
        while faces_prev:
            faces_now = set()
            for subset in itertools.combinations(self.vertices, size):
                members = frozenset(subset)
                # Pruning: every subset one smaller must already be a face
                if not all(members - {v} in faces_prev for v in members):
                    continue
                if self.is_face(members):
                    faces_now.add(members)
                else:
                    non_faces.append(tuple(sorted(members, key=order.get)))
            faces_prev = faces_now
            size += 1
        return non_faces

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "facets": {v: _sorted_outer_last(facet) for v, facet in self.facets.items()},
            "minimal_non_faces": [list(n) for n in self.minimal_non_faces],
        }


def _sorted_outer_last(face_ids):
    return sorted(face_ids, key=lambda f: (f == OUTER_FACE_ID, natural_key(f)))


def dual_complex(e: PlanarEmbedding) -> DualComplexM:
    """
    :raises GraphHypothesisException: If a vertex lies on fewer than three distinct faces
    """
    facets = {}
    for v in e.graph.vertex_ids:
        around = e.vertex_faces(v)
        if len(set(around)) != 3:
            raise GraphHypothesisException(f"vertex {v} lies on {len(set(around))} distinct faces, expected 3")
        facets[v] = frozenset(around)
    vertices = tuple(f.id for f in e.interior_faces) + (OUTER_FACE_ID,)
    return DualComplexM(vertices, facets)


def sign_normalized(poly: sympy.Poly) -> sympy.Poly:
    """ poly or -poly, whichever has a positive coefficient on its lex-least monomial """
    if poly.is_zero:
        return poly
    _, least = poly.terms(order="lex")[-1]
    return poly if least > 0 else -poly


@dataclass(frozen=True)
class Generator:
    """
    A product of linear forms. Its polynomial is signed so the term with the lex-least monomial,
    variables ranked in the order they are passed, has a positive coefficient.

    :param factors: The linear factors, variables first in face order, then sum forms
    :param non_face: The minimal non-face of M it came from, if any
    """
    factors: Tuple[LinearForm, ...]
    non_face: Tuple[str, ...] = ()

    def polynomial(self, variables: Sequence[FaceVariable]) -> sympy.Poly:
        product = sympy.Mul(*[form.expr() for form in self.factors])
        return sign_normalized(sympy.Poly(product, *[v.symbol for v in variables], domain=sympy.QQ))

    @property
    def sum_forms(self) -> Tuple[LinearForm, ...]:
        return tuple(f for f in self.factors if not f.is_variable)

    def structure(self):
        """ The multiset of factor supports, used to compare generators up to renaming variables """
        return tuple(sorted(tuple(sorted(f.support)) for f in self.factors))


def make_generator(factors: Sequence[Sequence[str]], non_face=()) -> Generator:
    """ Build a generator from factor supports, e.g. [["F2"], ["F4"]] for x_F2 x_F4 """
    forms = [LinearForm(_sorted_faces(support)) for support in factors]
    forms.sort(key=lambda f: (not f.is_variable, tuple(natural_key(x) for x in f.support)))
    return Generator(tuple(forms), tuple(non_face))


@dataclass(frozen=True)
class GeneratorSet:
    """ Polynomials in the face variables, each a product of linear forms """
    variables: Tuple[FaceVariable, ...]
    generators: Tuple[Generator, ...]

    def polynomials(self) -> List[sympy.Poly]:
        return [gen.polynomial(self.variables) for gen in self.generators]

    def without(self, index: int) -> "GeneratorSet":
        """ The same set with one generator dropped """
        return GeneratorSet(self.variables, self.generators[:index] + self.generators[index + 1:])

    def replaced(self, index: int, generator: Generator) -> "GeneratorSet":
        return GeneratorSet(self.variables, self.generators[:index] + (generator,) + self.generators[index + 1:])

    def to_dict(self):
        return {
            "variables": [v.face_id for v in self.variables],
            "generators": [
                {
                    "non_face": list(gen.non_face),
                    "factors": [list(f.support) for f in gen.factors],
                    "text": format_poly(poly),
                }
                for gen, poly in zip(self.generators, self.polynomials())
            ],
        }


def stanley_reisner_generators(m: DualComplexM) -> GeneratorSet:
    """
    One generator per minimal non-face of M: the product of its face variables, with x_e replaced
    by the sum of all interior face variables (the sign disappears in normalisation).
    Generators without x_e come first, then by face names
    """
    interior = tuple(f for f in m.vertices if f != OUTER_FACE_ID)
    generators = []
    for non_face in m.minimal_non_faces:
        factors = [(f,) if f != OUTER_FACE_ID else interior for f in non_face]
        generators.append(make_generator(factors, non_face))
    generators.sort(key=lambda gen: (OUTER_FACE_ID in gen.non_face,
                                     tuple(natural_key(f) for f in gen.non_face)))
    logger.debug(f"{len(generators)} Stanley-Reisner generators")
    return GeneratorSet(tuple(FaceVariable(f) for f in interior), tuple(generators))


def _reduce_modulo(poly: sympy.Poly, line: LineIdeal):
    substitutions = {v.symbol: 0 for v in line.zero_vars}
    if line.sum_support:
        *rest, last = [v.symbol for v in line.sum_support]
        substitutions[last] = -sympy.Add(*rest)
    return sympy.expand(poly.as_expr().subs(substitutions, simultaneous=True))


def containment_failures(gens: GeneratorSet, lines: Sequence[LineIdeal]) -> List[Tuple[int, str]]:
    """ (generator index, vertex) for every generator that does not vanish on L_vertex """
    failures = []
    for index, poly in enumerate(gens.polynomials()):
        for line in lines:
            if _reduce_modulo(poly, line) != 0:
                failures.append((index, line.vertex))
    return failures


def verify_containment(gens: GeneratorSet, lines: Sequence[LineIdeal]) -> bool:
    """ True iff every generator lies in every line ideal """
    failures = containment_failures(gens, lines)
    for index, vertex in failures:
        logger.debug(f"generator {index} does not vanish on L_{vertex}")
    return not failures


def line_dual_graph(lines: Sequence[LineIdeal]) -> nx.Graph:
    """
    Intersection graph of the arrangement: L_u and L_v are adjacent iff they meet in a point,
    that is, their combined forms have rank one less than the number of variables
    """
    graph = nx.Graph()
    graph.add_nodes_from(line.vertex for line in lines)
    if not lines:
        return graph
    scope = lines[0].scope
    index = {f: i for i, f in enumerate(scope)}

    def rows(line):
        result = []
        for form in line.forms:
            row = [0] * len(scope)
            for f in form.support:
                row[index[f]] = 1
            result.append(row)
        return result

    for a, b in itertools.combinations(lines, 2):
        rank = sympy.Matrix(rows(a) + rows(b)).rank()
        if rank == len(scope) - 1:
            graph.add_edge(a.vertex, b.vertex)
    return graph


def is_earnest(e: PlanarEmbedding) -> bool:
    """ Whether the intersection graph of the schön lines is isomorphic to the graph itself """
    return nx.is_isomorphic(line_dual_graph(build_schoen(e)), e.graph.to_networkx())


def generator_sets_equivalent(a: GeneratorSet, b: GeneratorSet) -> bool:
    """ Whether some bijection between the variables of a and of b carries one set onto the other """
    if len(a.variables) != len(b.variables) or len(a.generators) != len(b.generators):
        return False
    target = sorted(gen.structure() for gen in b.generators)
    source_ids = [v.face_id for v in a.variables]
    target_ids = [v.face_id for v in b.variables]
    for image in itertools.permutations(target_ids):
        mapping = dict(zip(source_ids, image))
        mapped = sorted(
            make_generator([[mapping[f] for f in form.support] for form in gen.factors]).structure()
            for gen in a.generators
        )
        if mapped == target:
            return True
    return False


def _monomial_text(symbols, exponents) -> str:
    parts = []
    for symbol, power in zip(symbols, exponents):
        if power == 0:
            continue
        name = str(symbol)
        if name.startswith("x_"):
            name = f"x_{{{name[2:]}}}"
        parts.append(name if power == 1 else f"{name}^{power}")
    return "".join(parts)


def format_poly(poly: sympy.Poly) -> str:
    """ Terms in lex order, written as in x_{F1}^2 + x_{F1}x_{F2} - x_{F3} """
    if poly.is_zero:
        return "0"
    text = ""
    for exponents, coefficient in poly.terms(order="lex"):
        monomial = _monomial_text(poly.gens, exponents)
        magnitude = abs(coefficient)
        body = monomial if magnitude == 1 and monomial else (
            f"{magnitude}{monomial}" if monomial else f"{magnitude}")
        if not text:
            text = body if coefficient > 0 else f"-{body}"
        else:
            text += f" + {body}" if coefficient > 0 else f" - {body}"
    return text
