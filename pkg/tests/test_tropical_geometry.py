import pytest
import sympy

from graphcurves.exceptions import ComplexException, ComputationLimitException
from graphcurves.graph_kernel import Graph, load_bundled, planar_embed
from graphcurves.schoen import TYPE_II, FaceVariable, LinearForm, LineIdeal, build_schoen, make_generator
from graphcurves.tropical_geometry import (
    BRANCH_POINT,
    CORNER,
    LANDING,
    RAY_ENDPOINT,
    Cell,
    TropicalPoint,
    build_arrangement,
    cell_in_tropproj,
    enumerate_selection_pieces,
    point_in_polynomial_tropproj,
    point_in_tropproj,
    tropical_basis_check,
    tropicalize_line,
)

SUM = LinearForm(("F1", "F2", "F3"))


def _tags(complex_):
    return [node.tag for node in complex_.nodes]


class TestTropicalPoint:
    def test_normalisation(self):
        """ Finite values are shifted to minimum 0 and ∞ coordinates leave the support """
        p = TropicalPoint.from_values({"F1": 3, "F2": 5, "F3": None})
        assert p.support == ("F1", "F2")
        assert p.coords == (0, 2)
        assert p.value("F3") is None

    def test_rejects_unnormalised(self):
        with pytest.raises(ValueError):
            TropicalPoint(("F1",), (sympy.Integer(1),))

    def test_all_infinite(self):
        with pytest.raises(ValueError):
            TropicalPoint.from_values({"F1": None})


class TestPointInTropproj:
    def test_minimum_twice(self):
        assert point_in_tropproj(TropicalPoint.from_values({"F1": 0, "F2": 0, "F3": 1}), SUM)

    def test_minimum_once(self):
        assert not point_in_tropproj(TropicalPoint.from_values({"F1": 0, "F2": 1, "F3": 2}), SUM)

    def test_infinite_terms_ignored(self):
        """ With x_F3 = ∞ the minimum of the two finite terms decides """
        assert point_in_tropproj(TropicalPoint.from_values({"F1": 4, "F2": 4, "F3": None}), SUM)
        assert not point_in_tropproj(TropicalPoint.from_values({"F1": 0, "F2": 1, "F3": None}), SUM)

    def test_all_terms_infinite(self):
        assert point_in_tropproj(TropicalPoint.from_values({"F4": 0}), SUM)

    def test_variable(self):
        """ The hypersurface of x_F is the boundary where x_F = ∞ """
        x1 = LinearForm(("F1",))
        assert point_in_tropproj(TropicalPoint.from_values({"F2": 0}), x1)
        assert not point_in_tropproj(TropicalPoint.from_values({"F1": 0, "F2": 0}), x1)


class TestCellInTropproj:
    def test_examples(self):
        assert cell_in_tropproj(Cell.of(("F1", "F2", "F3"), ("F1", "F2")), SUM)
        assert not cell_in_tropproj(Cell.of(("F1", "F2", "F3"), ("F1",)), SUM)
        assert cell_in_tropproj(Cell.point(("F2", "F3")), SUM)

    def test_agrees_with_sample_points(self, rng):
        """ A cell is on the hypersurface iff every (equivalently, a random) point of it is """
        faces = ["F1", "F2", "F3", "F4", "F5"]
        for _ in range(2000):
            support = rng.sample(faces, rng.randint(1, 5))
            zero = rng.sample(support, rng.randint(1, len(support)))
            cell = Cell.of(support, zero)
            form = LinearForm(tuple(sorted(rng.sample(faces, rng.randint(1, 4)))))
            s = sympy.Rational(rng.randint(1, 50), rng.randint(1, 7))
            assert cell_in_tropproj(cell, form) == point_in_tropproj(cell.sample(s), form)


class TestTropicalizeLine:
    def test_type_one(self, cube):
        """ L_v5 is the edge between the corners F2 and F5, in two halves """
        line = tropicalize_line(next(l for l in build_schoen(cube) if l.vertex == "v5"))
        assert line.support == ("F2", "F5")
        assert {cell.text() for cell in line.cells} == {"{F2|F5}", "{F5|F2}"}
        assert line.branch_point is None
        midpoint = Cell.point(("F2", "F5"))
        assert line.valence(midpoint) == 2

    def test_type_two(self, cube):
        """ L_v1 is a tripod in the face F1 F2 F3 """
        line = tropicalize_line(next(l for l in build_schoen(cube) if l.vertex == "v1"))
        assert line.branch_point == Cell.point(("F1", "F2", "F3"))
        assert line.valence(line.branch_point) == 3
        assert {ray.endpoints[1].support for ray in line.rays} == {("F1", "F2"), ("F1", "F3"), ("F2", "F3")}


class TestBuildArrangement:
    def test_k4(self, k4, arrangement):
        """ Three corners, three landing midpoints and the branch point """
        complex_ = arrangement(k4)
        assert len(complex_.nodes) == 7
        assert len(complex_.segments) == 9
        assert _tags(complex_) == [CORNER] * 3 + [LANDING] * 3 + [BRANCH_POINT]
        assert complex_.node("n7").cell.support == ("F1", "F2", "F3")
        assert complex_.branch_points == {"v4": "n7"}

    def test_cube(self, cube, arrangement):
        complex_ = arrangement(cube)
        assert len(complex_.nodes) == 16
        assert len(complex_.segments) == 20
        assert _tags(complex_) == [CORNER] * 4 + [RAY_ENDPOINT] * 4 + [LANDING] * 4 + [BRANCH_POINT] * 4
        assert [complex_.node(f"n{i}").cell.support for i in range(1, 5)] == [("F2",), ("F3",), ("F4",), ("F5",)]
        assert complex_.node("n5").cell.support == ("F1", "F2")
        assert complex_.node("n10").cell.support == ("F2", "F5")
        assert complex_.branch_points == {"v1": "n13", "v2": "n15", "v3": "n16", "v4": "n14"}

    def test_tripod(self):
        """ A single TypeII line is a star with three ray endpoints """
        variables = tuple(FaceVariable(f) for f in ("F1", "F2", "F3"))
        line = LineIdeal("v1", TYPE_II, (), variables, scope=("F1", "F2", "F3"))
        complex_ = build_arrangement([tropicalize_line(line)])
        assert len(complex_.nodes) == 4
        assert len(complex_.segments) == 3
        assert sorted(_tags(complex_)) == sorted([BRANCH_POINT] + [RAY_ENDPOINT] * 3)

    def test_shared_cell(self, cube):
        """ The same line twice overlaps in a 1-cell """
        line = tropicalize_line(build_schoen(cube)[0])
        with pytest.raises(ComplexException):
            build_arrangement([line, line])

    def test_relabelling_invariance(self, cube, arrangement):
        """ Renaming the faces of the cube does not change the shape of the complex """
        bare = planar_embed(Graph.from_edges(load_bundled("cube").edge_list()), ("v5", "v6", "v7", "v8"))
        a, b = arrangement(cube), arrangement(bare)
        assert (len(a.nodes), len(a.segments)) == (len(b.nodes), len(b.segments))
        assert sorted(_tags(a)) == sorted(_tags(b))

    def test_polynomial_hypersurfaces_contain_the_complex(self, cube, arrangement, generators):
        """ Direct evaluation of each generator confirms the nodes and segment samples lie on its hypersurface """
        complex_ = arrangement(cube)
        polys = generators(cube).polynomials()
        points = [node.point for node in complex_.nodes] + [seg.cell.sample(sympy.Rational(3, 2)) for seg in complex_.segments]
        for point in points:
            assert all(point_in_polynomial_tropproj(point, poly) for poly in polys)


class TestSelectionPieces:
    def test_k4(self, k4, generators):
        """ Four choices: three simplex edges and the tropical line in the plane """
        pieces = enumerate_selection_pieces(generators(k4))
        assert len(pieces) == 4
        assert pieces[0].sum_form == ("F1", "F2", "F3")
        assert pieces[0].dimension == 1
        assert [p.forced for p in pieces[1:]] == [("F1",), ("F2",), ("F3",)]
        assert all(p.dimension == 1 for p in pieces)

    def test_cube_states_are_deduplicated(self, cube, generators):
        """ Two factors from each of the three generators give eight distinct pieces """
        pieces = enumerate_selection_pieces(generators(cube))
        keys = {(p.forced, p.sum_form) for p in pieces}
        assert len(keys) == len(pieces)
        assert len(pieces) == 8

    def test_state_limit(self, cube, generators, restore_config):
        restore_config.SELECTION_STATE_LIMIT = 2
        with pytest.raises(ComputationLimitException):
            enumerate_selection_pieces(generators(cube))


class TestTropicalBasisCheck:
    @pytest.mark.parametrize("name", ["k4", "prism", "sliced_prism", "cube"])
    def test_pass(self, embed, arrangement, generators, name):
        e = embed(name)
        certificate = tropical_basis_check(generators(e), arrangement(e))
        assert certificate.status == "PASS"
        assert certificate.pieces > 0

    def test_dropping_a_generator(self, cube, arrangement, generators):
        """ Without x_F1 times the sum, forcing F2 and F3 to ∞ leaves a whole triangle """
        certificate = tropical_basis_check(generators(cube).without(2), arrangement(cube))
        assert certificate.status == "FAIL"
        assert certificate.piece is not None
        assert certificate.piece.dimension == 2

    def test_wrong_generator(self, cube, arrangement, generators):
        """ x_F2 x_F3 is finite on the midpoint of L_v6 """
        gens = generators(cube).replaced(0, make_generator([["F2"], ["F3"]]))
        certificate = tropical_basis_check(gens, arrangement(cube))
        assert certificate.status == "FAIL"
        assert certificate.cell is not None
        assert set(certificate.cell.support) >= {"F2", "F3"}
        assert certificate.to_dict()["status"] == "FAIL"
