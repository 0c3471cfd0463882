import pytest
import sympy

from graphcurves.exceptions import NotIntegralException, PolynomialFormatException
from graphcurves.lifting import (
    ValuedScalar,
    WeightedPolynomial,
    at_h1,
    check_schoen_deformation,
    fiber_at_h0,
    homogenize_weight,
    infer_variables,
    initial_form,
    load_bundled_quadrics,
    parse_polynomial,
    parse_polynomial_file,
    schoen_deformation_mismatches,
    specialize_h,
    standard_weight,
    tropicalize_polynomial,
    valuation,
)
from graphcurves.schoen import face_symbol

FACES = ("F1", "F2", "F3", "F4", "F5")
X1, X2, X3 = (face_symbol(f) for f in ("F1", "F2", "F3"))


def _random_scalar(rng, pieces=3):
    exponents = [0, 0, 1, 2, 3, sympy.Rational(1, 2), sympy.Rational(5, 3)]
    pairs = [(rng.choice([-3, -2, -1, 1, 2, 5]), rng.choice(exponents)) for _ in range(rng.randint(1, pieces))]
    return ValuedScalar.of(pairs)


def _random_polynomial(rng, variables=("F1", "F2", "F3")):
    terms = []
    for _ in range(rng.randint(1, 4)):
        alpha = tuple(rng.randint(0, 2) for _ in variables)
        terms.append((alpha, 0, _random_scalar(rng)))
    return WeightedPolynomial.of(variables, terms)


class TestValuedScalar:
    def test_valuation(self):
        s = ValuedScalar.of([(3, 2), (-1, sympy.Rational(1, 2))])
        assert valuation(s) == sympy.Rational(1, 2)
        assert s.is_integral

    def test_cancellation(self):
        """ Equal exponents merge; a sum that cancels is zero with infinite valuation """
        s = ValuedScalar.of([(1, 1), (-1, 1)])
        assert s.is_zero
        assert valuation(s) == sympy.oo

    def test_residue(self):
        assert ValuedScalar.of([(5, 0), (1, 1)]).residue() == 5
        assert ValuedScalar.monomial(2, 3).residue() == 0
        with pytest.raises(NotIntegralException):
            ValuedScalar.monomial(1, -1).residue()

    def test_text(self):
        assert ValuedScalar.monomial(-3, 2).text() == "-3 t^2"
        assert ValuedScalar.of([(2, 0), (-1, 1)]).text() == "2 - t"
        assert ValuedScalar().text() == "0"

    def test_arithmetic(self):
        a = ValuedScalar.of([(1, 0), (1, 1)])
        b = ValuedScalar.of([(1, 0), (-1, 1)])
        assert a * b == ValuedScalar.of([(1, 0), (-1, 2)])
        assert (a - a).is_zero
        assert a + b == ValuedScalar.constant(2)

    def test_valuation_rules(self, rng):
        """ val(ab) = val(a) + val(b); val(a + b) >= min, with equality when the valuations differ """
        for _ in range(10000):
            a, b = _random_scalar(rng), _random_scalar(rng)
            if a.is_zero or b.is_zero:
                continue
            assert valuation(a * b) == valuation(a) + valuation(b)
            total = a + b
            low = min(valuation(a), valuation(b))
            assert valuation(total) >= low
            if valuation(a) != valuation(b):
                assert valuation(total) == low


class TestHomogenizeWeight:
    def test_pieces_get_powers_of_h(self):
        f = parse_polynomial("t^2 x_F1 + 3 x_F2 + t x_F1", ("F1", "F2"))
        hom = homogenize_weight(f)
        assert hom.is_homogenized
        assert hom.text() == "t x_F1 h + t^2 x_F1 h^2 + 3 x_F2"

    def test_h_equal_one_gives_back_the_input(self):
        f = parse_polynomial("t^2 x_F1 + 3 x_F2 + t x_F1 - 1/2 x_F1 x_F2", ("F1", "F2"))
        assert at_h1(homogenize_weight(f)) == f

    def test_fiber_is_the_initial_form(self):
        f = parse_polynomial("t^2 x_F1 + 3 x_F2 + t x_F1", ("F1", "F2"))
        expected = sympy.Poly(3 * X2, X1, X2, domain=sympy.QQ)
        assert fiber_at_h0(homogenize_weight(f)) == expected
        assert initial_form(f, standard_weight(2)) == expected

    def test_not_integral(self):
        with pytest.raises(NotIntegralException):
            homogenize_weight(parse_polynomial("t^-1 x_F1 + x_F2", ("F1", "F2")))

    def test_only_the_standard_weight(self):
        f = parse_polynomial("x_F1 + t x_F2", ("F1", "F2"))
        with pytest.raises(ValueError):
            homogenize_weight(f, (1, 0, -1))
        assert homogenize_weight(f, (0, 0, -1)) == homogenize_weight(f)

    def test_twice(self):
        hom = homogenize_weight(parse_polynomial("x_F1 + t x_F2", ("F1", "F2")))
        with pytest.raises(ValueError):
            homogenize_weight(hom)

    def test_random_agreement(self, rng):
        """ On random integral polynomials: h = 1 restores f, h = 0 gives the initial form, tropical values agree """
        weight = standard_weight(3)
        for _ in range(1000):
            f = _random_polynomial(rng)
            if f.is_zero:
                continue
            hom = homogenize_weight(f)
            assert at_h1(hom) == f
            assert fiber_at_h0(hom) == initial_form(f, weight)
            point = {"F1": rng.randint(0, 4), "F2": None if rng.random() < 0.2 else rng.randint(0, 4), "F3": 0}
            assert tropicalize_polynomial(hom, dict(point, h=0)) == tropicalize_polynomial(f, point)


class TestInitialForm:
    def test_weights_on_variables(self):
        f = parse_polynomial("x_F1 + 2 x_F2 + t x_F3", ("F1", "F2", "F3"))
        assert initial_form(f, (0, 0, 0, -1)) == sympy.Poly(X1 + 2 * X2, X1, X2, X3, domain=sympy.QQ)
        assert initial_form(f, (1, 0, 0, -1)) == sympy.Poly(2 * X2, X1, X2, X3, domain=sympy.QQ)
        assert initial_form(f, (-1, 0, 0, -1)) == sympy.Poly(X1, X1, X2, X3, domain=sympy.QQ)

    def test_bad_weight_length(self):
        with pytest.raises(ValueError):
            initial_form(parse_polynomial("x_F1", ("F1", "F2")), (0, -1))


class TestSpecialize:
    def test_q1_at_two(self):
        """ h = t^2 triples every valuation: t^17 h^17 becomes t^51 """
        q1 = load_bundled_quadrics()["q1"]
        special = specialize_h(q1, 2)
        coefficient = next(c for alpha, _, c in special.terms if alpha == (0, 0, 0, 2, 0))
        assert valuation(coefficient) == 51
        assert not special.is_homogenized

    def test_negative_k(self):
        with pytest.raises(ValueError):
            specialize_h(load_bundled_quadrics()["q1"], -1)


class TestTropicalizePolynomial:
    def test_minimum(self):
        f = parse_polynomial("t^2 x_F1 + x_F2", ("F1", "F2"))
        assert tropicalize_polynomial(f, {"F1": 0, "F2": 5}) == 2
        assert tropicalize_polynomial(f, {"F1": 0, "F2": None}) == 2
        assert tropicalize_polynomial(f, {"F1": None, "F2": None}) == sympy.oo


class TestQuadrics:
    def test_bundled(self):
        quadrics = load_bundled_quadrics()
        assert list(quadrics) == ["q1", "q2", "q3"]
        assert all(q.is_homogenized and q.is_integral for q in quadrics.values())
        assert all(q.variables == FACES for q in quadrics.values())

    def test_fibers(self):
        symbols = [face_symbol(f) for f in FACES]
        x1, x2, x3, x4, x5 = symbols
        fibers = [fiber_at_h0(q) for q in load_bundled_quadrics().values()]
        assert fibers == [
            sympy.Poly(x2 * x4, *symbols, domain=sympy.QQ),
            sympy.Poly(x3 * x5, *symbols, domain=sympy.QQ),
            sympy.Poly(x1 * (x1 + x2 + x3 + x4 + x5), *symbols, domain=sympy.QQ),
        ]

    def test_deformation(self, cube, generators):
        quadrics = list(load_bundled_quadrics().values())
        assert check_schoen_deformation(quadrics, generators(cube))
        assert schoen_deformation_mismatches(quadrics, generators(cube)) == []

    def test_wrong_fiber(self, cube, generators):
        """ A quadric reducing to a product of adjacent faces matches no generator """
        quadrics = list(load_bundled_quadrics().values())
        quadrics[0] = parse_polynomial("t x_F1^2 h + x_F2 x_F3", FACES)
        problems = schoen_deformation_mismatches(quadrics, generators(cube))
        assert len(problems) == 2
        assert problems[0].startswith("quadric 1 reduces to")
        assert not check_schoen_deformation(quadrics, generators(cube))

    def test_missing_quadric(self, cube, generators):
        quadrics = list(load_bundled_quadrics().values())[:2]
        problems = schoen_deformation_mismatches(quadrics, generators(cube))
        assert problems[0] == "2 quadrics for 3 generators"

    def test_variable_mismatch(self, k4, generators):
        with pytest.raises(ValueError):
            check_schoen_deformation(list(load_bundled_quadrics().values()), generators(k4))

    def test_text_reparses(self):
        q1 = load_bundled_quadrics()["q1"]
        assert parse_polynomial(q1.text(), FACES) == q1


class TestParsePolynomial:
    def test_grammar(self):
        f = parse_polynomial("3/4 t^{-1/2} x_{F1}^2 * x_F2 - x_F2", ("F1", "F2"))
        coefficient = next(c for alpha, _, c in f.terms if alpha == (2, 1))
        assert coefficient == ValuedScalar.monomial(sympy.Rational(3, 4), sympy.Rational(-1, 2))
        assert not f.is_integral
        assert not f.is_homogenized

    @pytest.mark.parametrize("text", ["", "x_F9", "x_F1^-1", "x_F1 +", "h^-1 x_F1", "x_F1 @ x_F2", "x_F1^1/2"])
    def test_errors(self, text):
        with pytest.raises(PolynomialFormatException):
            parse_polynomial(text, ("F1", "F2"))

    def test_file(self):
        polys = parse_polynomial_file("# two\nq1: x_F1 + t x_F2\n\nq2: x_F2\n", ("F1", "F2"))
        assert list(polys) == ["q1", "q2"]

    @pytest.mark.parametrize("text, line", [("q1: x_F1\nq2 x_F2\n", 2), ("q1: x_F1\nq1: x_F2\n", 2),
                                            ("q1: x_F1\n\nq2: x_F7\n", 3)])
    def test_file_errors(self, text, line):
        with pytest.raises(PolynomialFormatException) as err:
            parse_polynomial_file(text, ("F1", "F2"))
        assert str(err.value).startswith(f"line {line}:")

    def test_infer_variables(self):
        assert infer_variables("t x_F10 + x_{F2} h") == ("F2", "F10")
