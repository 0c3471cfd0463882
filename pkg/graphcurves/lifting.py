"""
Valued scalars and the weight homogenization that degenerates a curve to its schön embedding.

Scalars are finite sums c_1 t^{a_1} + ... + c_k t^{a_k} with rational coefficients and rational
exponents in the uniformizer t. A polynomial over them is homogenized for the weight vector that is
zero on every face variable and -1 on t: each piece c t^a of a coefficient picks up h^a. Setting h = 1
gives the original polynomial back, setting h = 0 keeps the valuation-zero pieces, read in the
residue field.
"""
import re
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from graphcurves.exceptions import NotIntegralException, PolynomialFormatException
from graphcurves.internal.labels import natural_key
from graphcurves.internal.serialization import rational_text
from graphcurves.schoen import GeneratorSet, face_symbol, sign_normalized

import logging
logger = logging.getLogger(__name__)

HOMOGENIZING_VARIABLE = "h"
BUNDLED_QUADRICS = "cube_quadrics.txt"


def _rational(value) -> sympy.Rational:
    value = sympy.Rational(value)
    if not value.is_rational:
        raise ValueError(f"{value} is not an exact rational")
    return value


@dataclass(frozen=True)
class ValuedScalar:
    """
    A finite sum of rational multiples of rational powers of t.
    terms holds (coefficient, exponent) pairs with nonzero coefficients and strictly increasing exponents
    """
    terms: Tuple[Tuple[sympy.Rational, sympy.Rational], ...] = ()

    @classmethod
    def of(cls, pairs) -> "ValuedScalar":
        """ Normalise (coefficient, exponent) pairs: equal exponents are merged and zeros dropped """
        collected: Dict[sympy.Rational, sympy.Rational] = {}
        for coefficient, exponent in pairs:
            exponent = _rational(exponent)
            collected[exponent] = collected.get(exponent, sympy.Integer(0)) + _rational(coefficient)
        return cls(tuple((c, a) for a, c in sorted(collected.items()) if c != 0))

    @classmethod
    def constant(cls, c) -> "ValuedScalar":
        return cls.of([(c, 0)])

    @classmethod
    def monomial(cls, c, a) -> "ValuedScalar":
        """ c t^a """
        return cls.of([(c, a)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def valuation(self):
        """ The least exponent, sympy.oo for zero """
        if self.is_zero:
            return sympy.oo
        return self.terms[0][1]

    @property
    def is_integral(self) -> bool:
        """ Whether the scalar lies in the ring of integers """
        return self.is_zero or self.valuation >= 0

    def coefficient(self, exponent) -> sympy.Rational:
        exponent = _rational(exponent)
        for c, a in self.terms:
            if a == exponent:
                return c
        return sympy.Integer(0)

    def residue(self) -> sympy.Rational:
        """
        The image in the residue field
        :raises NotIntegralException: If the scalar has negative valuation
        """
        if not self.is_integral:
            raise NotIntegralException(f"{self.text()} has valuation {rational_text(self.valuation)} < 0")
        return self.coefficient(0)

    def __add__(self, other: "ValuedScalar") -> "ValuedScalar":
        return ValuedScalar.of(self.terms + other.terms)

    def __neg__(self) -> "ValuedScalar":
        return ValuedScalar(tuple((-c, a) for c, a in self.terms))

    def __sub__(self, other: "ValuedScalar") -> "ValuedScalar":
        return self + (-other)

    def __mul__(self, other: "ValuedScalar") -> "ValuedScalar":
        return ValuedScalar.of((c1 * c2, a1 + a2) for c1, a1 in self.terms for c2, a2 in other.terms)

    def text(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for c, a in self.terms:
            if a == 0:
                body = rational_text(abs(c))
            else:
                power = "t" if a == 1 else f"t^{rational_text(a)}"
                body = power if abs(c) == 1 else f"{rational_text(abs(c))} {power}"
            pieces.append((c < 0, body))
        text = ("-" if pieces[0][0] else "") + pieces[0][1]
        for negative, body in pieces[1:]:
            text += f" - {body}" if negative else f" + {body}"
        return text


def valuation(s: ValuedScalar):
    return s.valuation


def standard_weight(variable_count: int) -> Tuple[sympy.Rational, ...]:
    """ Weight zero on every face variable, -1 on the uniformizer """
    return tuple([sympy.Integer(0)] * variable_count + [sympy.Integer(-1)])


@dataclass(frozen=True)
class WeightedPolynomial:
    """
    A polynomial in face variables and h with ValuedScalar coefficients.

    :param variables: Face ids, e.g. ("F1", "F2")
    :param terms: (face exponents, h exponent, coefficient) with distinct monomials and nonzero coefficients
    :param weight: The weight vector it was homogenized for, None if it has not been homogenized
    """
    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Tuple[int, ...], sympy.Rational, ValuedScalar], ...]
    weight: Optional[Tuple[sympy.Rational, ...]] = None

    @classmethod
    def of(cls, variables, terms, weight=None) -> "WeightedPolynomial":
        """ Normalise: equal monomials are merged, zero coefficients dropped, terms sorted """
        variables = tuple(variables)
        collected: Dict[Tuple[Tuple[int, ...], sympy.Rational], ValuedScalar] = {}
        for alpha, b, c in terms:
            alpha = tuple(int(x) for x in alpha)
            if len(alpha) != len(variables):
                raise ValueError(f"monomial {alpha} does not match variables {variables}")
            if any(x < 0 for x in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            b = _rational(b)
            if b < 0:
                raise ValueError(f"negative h exponent {b}")
            key = (alpha, b)
            collected[key] = collected.get(key, ValuedScalar()) + c
        ordered = sorted(((alpha, b, c) for (alpha, b), c in collected.items() if not c.is_zero),
                         key=lambda term: (tuple(-x for x in term[0]), term[1]))
        return cls(variables, tuple(ordered), tuple(weight) if weight is not None else None)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_homogenized(self) -> bool:
        return self.weight is not None

    @property
    def is_integral(self) -> bool:
        return all(c.is_integral for _, _, c in self.terms)

    @property
    def symbols(self) -> List[sympy.Symbol]:
        return [face_symbol(f) for f in self.variables]

    def text(self) -> str:
        """ The polynomial in the grammar parse_polynomial reads """
        if self.is_zero:
            return "0"
        out = ""
        for alpha, b, c in self.terms:
            monomial = []
            for face, power in zip(self.variables, alpha):
                if power:
                    monomial.append(f"x_{face}" if power == 1 else f"x_{face}^{power}")
            if b:
                monomial.append("h" if b == 1 else f"h^{rational_text(b)}")
            for negative, piece in _signed_pieces(c):
                body = " ".join(([piece] if piece != "1" or not monomial else []) + monomial)
                if not out:
                    out = f"-{body}" if negative else body
                else:
                    out += f" - {body}" if negative else f" + {body}"
        return out


def _signed_pieces(c: ValuedScalar):
    for coefficient, a in c.terms:
        parts = []
        if abs(coefficient) != 1 or a == 0:
            parts.append(rational_text(abs(coefficient)))
        if a != 0:
            parts.append("t" if a == 1 else f"t^{rational_text(a)}")
        yield coefficient < 0, " ".join(parts) if parts else "1"


def _residue_poly(variables: Sequence[str], pieces) -> sympy.Poly:
    """ Poly over QQ from (face exponents, rational coefficient) pairs """
    symbols = [face_symbol(f) for f in variables]
    expr = sympy.Add(*[c * sympy.Mul(*[s ** p for s, p in zip(symbols, alpha)]) for alpha, c in pieces])
    return sympy.Poly(expr, *symbols, domain=sympy.QQ)


def homogenize_weight(f: WeightedPolynomial, w: Optional[Sequence] = None) -> WeightedPolynomial:
    """
    Give every piece c t^a of every coefficient the factor h^a.

    :param w: Must be the weight (0, ..., 0, -1); defaults to it
    :raises NotIntegralException: If a coefficient has negative valuation
    """
    weight = standard_weight(len(f.variables))
    if w is not None and tuple(_rational(x) for x in w) != weight:
        raise ValueError("only the weight (0, ..., 0, -1) is supported")
    if f.is_homogenized or any(b != 0 for _, b, _ in f.terms):
        raise ValueError("polynomial is already homogenized")
    terms = []
    for alpha, _, c in f.terms:
        if not c.is_integral:
            raise NotIntegralException(f"coefficient {c.text()} of {_monomial_name(f.variables, alpha)} is not integral")
        for coefficient, a in c.terms:
            terms.append((alpha, a, ValuedScalar.monomial(coefficient, a)))
    return WeightedPolynomial.of(f.variables, terms, weight)


def _monomial_name(variables, alpha) -> str:
    return " ".join(f"x_{face}^{p}" if p > 1 else f"x_{face}" for face, p in zip(variables, alpha) if p) or "1"


def specialize_h(f: WeightedPolynomial, k) -> WeightedPolynomial:
    """ Substitute h = t^k, k >= 0: the fiber over y = k of the degeneration family """
    k = _rational(k)
    if k < 0:
        raise ValueError(f"h = t^{k} needs k >= 0")
    terms = [(alpha, 0, c * ValuedScalar.monomial(1, k * b)) for alpha, b, c in f.terms]
    return WeightedPolynomial.of(f.variables, terms)


def at_h1(f: WeightedPolynomial) -> WeightedPolynomial:
    """ The generic fiber h = 1 """
    return specialize_h(f, 0)


def fiber_at_h0(f: WeightedPolynomial) -> sympy.Poly:
    """
    Keep the terms free of h and reduce their coefficients to the residue field
    :raises NotIntegralException: If a kept coefficient is not integral
    """
    if not f.is_homogenized:
        raise ValueError("fiber_at_h0 needs a homogenized polynomial")
    return _residue_poly(f.variables, [(alpha, c.residue()) for alpha, b, c in f.terms if b == 0])


def initial_form(f: WeightedPolynomial, w: Sequence) -> sympy.Poly:
    """
    Residues of the terms c x^α minimizing w_1 α_1 + ... + w_g α_g - w_{g+1} val(c).

    The last entry of w is the weight of the uniformizer, so (0, ..., 0, -1) selects the terms of least
    valuation. Powers of h do not take part.

    :raises NotIntegralException: If a minimizing coefficient is not integral
    """
    weight = tuple(_rational(x) for x in w)
    if len(weight) != len(f.variables) + 1:
        raise ValueError(f"weight of length {len(weight)} for {len(f.variables)} variables")
    if f.is_zero:
        raise ValueError("the initial form of zero is undefined")
    *on_variables, on_t = weight
    scored = []
    for alpha, _, c in f.terms:
        score = sum((wi * ai for wi, ai in zip(on_variables, alpha)), sympy.Integer(0)) - on_t * c.valuation
        scored.append((score, alpha, c))
    least = min(score for score, _, _ in scored)
    pieces: Dict[Tuple[int, ...], sympy.Rational] = {}
    for score, alpha, c in scored:
        if score == least:
            pieces[alpha] = pieces.get(alpha, sympy.Integer(0)) + c.residue()
    return _residue_poly(f.variables, list(pieces.items()))


def tropicalize_polynomial(f: WeightedPolynomial, point: Mapping[str, Optional[object]]):
    """
    The tropical evaluation min over terms of val(c) + α·point.

    :param point: Face id (and optionally 'h') to a rational coordinate, None meaning ∞
    :return: A rational, or sympy.oo when every term is infinite
    """
    best = sympy.oo
    for alpha, b, c in f.terms:
        total = c.valuation
        for face, power in zip(f.variables, alpha):
            if power == 0:
                continue
            coordinate = point.get(face)
            if coordinate is None:
                total = sympy.oo
                break
            total += power * _rational(coordinate)
        if total != sympy.oo and b != 0:
            coordinate = point.get(HOMOGENIZING_VARIABLE, 0)
            total = sympy.oo if coordinate is None else total + b * _rational(coordinate)
        best = min(best, total)
    return best


_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+-])|(?P<number>\d+(?:/\d+)?)|x_(?:\{(?P<braced>[A-Za-z0-9]+)\}|(?P<face>[A-Za-z0-9]+))"
    r"|(?P<t>t)|(?P<h>h)|(?P<star>\*))"
    r"(?:\^(?:\{(?P<bexp>-?\d+(?:/\d+)?)\}|(?P<exp>-?\d+(?:/\d+)?)))?"
)


class _Term:
    def __init__(self, count):
        self.sign = 1
        self.coefficient = sympy.Integer(1)
        self.t_power = sympy.Integer(0)
        self.alpha = [0] * count
        self.h_power = sympy.Integer(0)
        self.empty = True


def parse_polynomial(text: str, variables: Sequence[str], weight: Optional[Sequence] = None) -> WeightedPolynomial:
    """
    Parse a sum of terms c t^a x_F1^2 x_F3 h^b.

    Coefficients are rationals like 3 or 3/4, exponents of t may be negative or fractional, exponents of
    h are nonnegative rationals. A polynomial mentioning h is taken to be homogenized for the standard
    weight unless weight says otherwise.

    :raises PolynomialFormatException: On text outside the grammar or an unknown variable
    """
    variables = tuple(variables)
    index = {face: i for i, face in enumerate(variables)}
    terms = []
    term = _Term(len(variables))
    uses_h = False
    pos = 0
    text = text.strip()
    if not text:
        raise PolynomialFormatException("empty polynomial")

    def finish(current):
        if current.empty:
            raise PolynomialFormatException(f"missing term before position {pos} in {text!r}")
        coefficient = ValuedScalar.monomial(current.sign * current.coefficient, current.t_power)
        terms.append((tuple(current.alpha), current.h_power, coefficient))

    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise PolynomialFormatException(f"unexpected {text[pos:].strip()[:10]!r} at position {pos}")
        exponent_text = match.group("bexp") or match.group("exp")
        exponent = sympy.Rational(exponent_text) if exponent_text is not None else None
        if match.group("sign"):
            if exponent is not None:
                raise PolynomialFormatException(f"exponent on a sign at position {pos}")
            if not term.empty:
                finish(term)
                term = _Term(len(variables))
            if match.group("sign") == "-":
                term.sign = -term.sign
        elif match.group("number"):
            if exponent is not None:
                raise PolynomialFormatException(f"exponent on a number at position {pos}")
            term.coefficient *= sympy.Rational(match.group("number"))
            term.empty = False
        elif match.group("t"):
            term.t_power += 1 if exponent is None else exponent
            term.empty = False
        elif match.group("h"):
            power = sympy.Integer(1) if exponent is None else exponent
            if power < 0:
                raise PolynomialFormatException(f"negative power of h at position {pos}")
            term.h_power += power
            term.empty = False
            uses_h = True
        elif match.group("star"):
            if exponent is not None:
                raise PolynomialFormatException(f"exponent on '*' at position {pos}")
        else:
            face = match.group("braced") or match.group("face")
            if face not in index:
                raise PolynomialFormatException(f"unknown variable x_{face}, expected one of "
                                                f"{', '.join('x_' + v for v in variables)}")
            power = sympy.Integer(1) if exponent is None else exponent
            if power < 0 or power.q != 1:
                raise PolynomialFormatException(f"x_{face} needs a nonnegative integer exponent, got {power}")
            term.alpha[index[face]] += int(power)
            term.empty = False
        pos = match.end()
    finish(term)

    if weight is None and uses_h:
        weight = standard_weight(len(variables))
    return WeightedPolynomial.of(variables, terms, weight)


def parse_polynomial_file(text: str, variables: Sequence[str]) -> Dict[str, WeightedPolynomial]:
    """
    Read 'name: polynomial' lines. Blank lines and lines starting with # are skipped
    :raises PolynomialFormatException: On a malformed line, with its line number
    """
    result: Dict[str, WeightedPolynomial] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, colon, body = line.partition(":")
        name = name.strip()
        if not colon or not name:
            raise PolynomialFormatException(f"line {number}: expected 'name: polynomial'")
        if name in result:
            raise PolynomialFormatException(f"line {number}: {name} defined twice")
        try:
            result[name] = parse_polynomial(body, variables)
        except PolynomialFormatException as err:
            raise PolynomialFormatException(f"line {number}: {err}")
    return result


def infer_variables(text: str) -> Tuple[str, ...]:
    """ The face ids mentioned in polynomial text, in natural order """
    found = {m.group(1) or m.group(2) for m in re.finditer(r"x_(?:\{([A-Za-z0-9]+)\}|([A-Za-z0-9]+))", text)}
    return tuple(sorted(found, key=natural_key))


def load_bundled_quadrics() -> Dict[str, WeightedPolynomial]:
    """ The three cube quadrics q1, q2, q3, homogenized """
    text = resources.files("graphcurves.data").joinpath(BUNDLED_QUADRICS).read_text()
    return parse_polynomial_file(text, ("F1", "F2", "F3", "F4", "F5"))


def schoen_deformation_mismatches(quadrics: Sequence[WeightedPolynomial], gens: GeneratorSet) -> List[str]:
    """
    Why the fibers over h = 0 fail to be the generators, one message per problem; empty when they match.
    :raises ValueError: If the quadrics and generators use different variables
    """
    faces = tuple(v.face_id for v in gens.variables)
    for q in quadrics:
        if tuple(q.variables) != faces:
            raise ValueError(f"quadric variables {q.variables} do not match generator variables {faces}")
    expected = [sign_normalized(p) for p in gens.polynomials()]
    fibers = [sign_normalized(fiber_at_h0(q)) for q in quadrics]
    problems = []
    if len(fibers) != len(expected):
        problems.append(f"{len(fibers)} quadrics for {len(expected)} generators")
    unmatched = list(expected)
    for index, fiber in enumerate(fibers):
        if fiber.is_zero:
            problems.append(f"quadric {index + 1} has zero fiber over h = 0")
            continue
        for candidate in unmatched:
            if candidate == fiber:
                unmatched.remove(candidate)
                break
        else:
            problems.append(f"quadric {index + 1} reduces to {fiber.as_expr()}, which is not a generator")
    for candidate in unmatched:
        problems.append(f"generator {candidate.as_expr()} is not the reduction of any quadric")
    return problems


def check_schoen_deformation(quadrics: Sequence[WeightedPolynomial], gens: GeneratorSet) -> bool:
    """ Whether the quadrics reduce over h = 0 to the generators, up to sign and order """
    problems = schoen_deformation_mismatches(quadrics, gens)
    for problem in problems:
        logger.info(problem)
    return not problems
