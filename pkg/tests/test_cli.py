import json

import pytest

from graphcurves.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_run_config
from graphcurves.graph_kernel import format_graph, load_bundled, planar_embed
from graphcurves.internal.svg import render_svg
from graphcurves.lifting import load_bundled_quadrics
from graphcurves.transformations import format_trace, reduce_to_k4

from conftest import VALID_GRAPHS, census_graphs

GRAPH_COMMANDS = ("validate", "faces", "schoen", "srgens", "reduce", "tropicalize", "certify", "basischeck", "render")


class TestExitStatus:
    @pytest.mark.parametrize("name", VALID_GRAPHS)
    @pytest.mark.parametrize("command", GRAPH_COMMANDS)
    def test_valid_graphs(self, capsys, command, name):
        assert main([command, name]) == EXIT_OK

    @pytest.mark.parametrize("command", GRAPH_COMMANDS)
    def test_petersen(self, capsys, command):
        """ Petersen is not planar, so every graph command fails """
        assert main([command, "petersen"]) == EXIT_FAIL

    @pytest.mark.parametrize("command", ["validate", "schoen", "srgens", "reduce", "tropicalize", "certify", "basischeck"])
    def test_two_edge_connected(self, capsys, command):
        assert main([command, "two_edge_connected"]) == EXIT_FAIL

    def test_two_edge_connected_still_embeds(self, capsys):
        """ The graph is planar, so listing and drawing its faces works """
        assert main(["faces", "two_edge_connected"]) == EXIT_OK
        assert main(["render", "two_edge_connected"]) == EXIT_OK
        assert main(["render", "two_edge_connected", "--what", "core"]) == EXIT_FAIL

    def test_help(self, capsys):
        assert main(["--help"]) == EXIT_OK


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate", "cube"],
        ["validate"],
        ["validate", "no_such_graph"],
        ["validate", "cube", "--format", "svg"],
        ["render", "cube", "--format", "json"],
        ["render", "cube", "--what", "everything"],
        ["census", "--max-vertices", "eight"],
        ["faces", "cube", "--outer", "v1 v2 v8"],
        ["liftcheck", "missing_quadrics.txt"],
    ])
    def test_status_two(self, capsys, argv):
        assert main(argv) == EXIT_USAGE

    def test_missing_trace_file(self, capsys, tmp_path):
        assert main(["reduce", "cube", "--trace", str(tmp_path / "absent.trace")]) == EXIT_USAGE

    def test_malformed_graph_file(self, capsys, tmp_path):
        path = tmp_path / "broken.graph"
        path.write_text("graph broken\nedge v1\n")
        assert main(["validate", str(path)]) == EXIT_USAGE

    def test_outer_line_matching_no_face(self, capsys, tmp_path):
        """ validate still reports on the graph; faces rejects the embedding hint """
        path = tmp_path / "prism.graph"
        path.write_text("".join(f"{u} {v}\n" for u, v in load_bundled("prism").edge_list()) + "outer: a1 a2 b3\n")
        assert main(["validate", str(path)]) == EXIT_OK
        assert "status: PASS" in capsys.readouterr().out
        assert main(["faces", str(path)]) == EXIT_USAGE

    def test_bad_configuration(self, capsys, restore_config):
        restore_config.EDGE_CONNECTIVITY_METHOD = "magic"
        assert main(["validate", "cube"]) == EXIT_USAGE
        assert "EDGE_CONNECTIVITY_METHOD" in capsys.readouterr().err

    def test_quadrics_for_another_graph(self, capsys):
        """ The cube quadrics use five face variables, K4 has three """
        assert main(["liftcheck", "--graph", "k4"]) == EXIT_USAGE


class TestParseRunConfig:
    def test_defaults(self):
        rc = parse_run_config(["render", "cube"])
        assert rc.format == "svg"
        assert rc.what == "embedding"
        assert parse_run_config(["validate", "cube"]).format == "text"

    def test_outer(self):
        assert parse_run_config(["faces", "cube", "--outer", "v5,v6 v7 v8"]).outer == ("v5", "v6", "v7", "v8")

    def test_trace_without_path(self):
        assert parse_run_config(["certify", "cube", "--trace"]).trace == "auto"
        assert parse_run_config(["certify", "cube"]).trace is None


class TestTextOutput:
    def test_validate(self, capsys):
        main(["validate", "cube"])
        out = capsys.readouterr().out
        assert "edge connectivity: 3" in out
        assert out.rstrip().endswith("status: PASS")

    def test_validate_two_edge_connected(self, capsys):
        main(["validate", "two_edge_connected"])
        out = capsys.readouterr().out
        assert "edge connectivity: 2" in out
        assert "status: FAIL" in out

    def test_faces(self, capsys):
        main(["faces", "cube"])
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("F1: v1 ")
        assert set(lines[0].split()[1:]) == {"v1", "v2", "v3", "v4"}
        assert lines[-1].startswith("e: v5 ")
        assert len(lines) == 6

    def test_schoen(self, capsys):
        main(["schoen", "k4"])
        assert capsys.readouterr().out.splitlines()[-1] == "L_{v4} = ⟨x_{F1}+x_{F2}+x_{F3}⟩"

    def test_srgens(self, capsys):
        main(["srgens", "cube"])
        assert capsys.readouterr().out.splitlines()[:2] == ["x_{F2}x_{F4}", "x_{F3}x_{F5}"]

    def test_reduce(self, capsys):
        main(["reduce", "cube"])
        out = capsys.readouterr().out
        assert "CE edge=v1-v2" in out
        assert "# step 3: 4 vertices, genus 3" in out

    def test_certify(self, capsys):
        main(["certify", "k4"])
        out = capsys.readouterr().out
        assert "status: PASS" in out
        assert "v4 -> n7" in out

    def test_basischeck(self, capsys):
        main(["basischeck", "k4"])
        out = capsys.readouterr().out
        assert "status: PASS" in out
        assert "selection pieces: 4" in out


class TestJsonOutput:
    def test_parses(self, capsys):
        assert main(["certify", "cube", "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["status"] == "PASS"
        assert data["graph"] == "cube"

    @pytest.mark.parametrize("command", ["schoen", "srgens", "tropicalize", "certify", "reduce"])
    def test_deterministic(self, capsys, command):
        """ Two runs print byte-identical JSON """
        main([command, "sliced_prism", "--format", "json"])
        first = capsys.readouterr().out
        main([command, "sliced_prism", "--format", "json"])
        assert capsys.readouterr().out == first

    def test_faces(self, capsys):
        main(["faces", "prism", "--format", "json"])
        data = json.loads(capsys.readouterr().out)
        assert data["genus"] == 4
        assert [f["outer"] for f in data["faces"]].count(True) == 1


class TestRender:
    def test_complex_glyphs(self, capsys):
        """ K4's complex has one branch point and three corners """
        main(["render", "k4", "--what", "complex"])
        svg = capsys.readouterr().out
        assert svg.count('id="node-branch-point-n7"') == 1
        assert svg.count('id="node-corner-') == 3

    def test_embedding_face_labels(self, capsys):
        main(["render", "cube"])
        svg = capsys.readouterr().out
        for face in ("F1", "F2", "F3", "F4", "F5", "e"):
            assert f'id="face-{face}"' in svg

    def test_core(self, capsys):
        assert main(["render", "cube", "--what", "core"]) == EXIT_OK
        assert "<svg" in capsys.readouterr().out

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "cube.svg"
        assert main(["render", "cube", "--out", str(path)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert path.read_text().lstrip().startswith("<?xml")

    def test_unknown_object(self):
        with pytest.raises(TypeError):
            render_svg("cube")

    def test_deterministic(self, capsys):
        main(["render", "prism", "--what", "complex"])
        first = capsys.readouterr().out
        main(["render", "prism", "--what", "complex"])
        assert capsys.readouterr().out == first


class TestTrace:
    def test_certify_auto(self, capsys):
        """ Every step from K4 back to the cube is certified """
        assert main(["certify", "cube", "--trace"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4
        assert all(line.endswith("PASS") for line in lines)
        assert sorted(int(line.split()[2]) for line in lines) == [4, 6, 8, 8]

    def test_replay_file(self, capsys, tmp_path, cube):
        path = tmp_path / "cube.trace"
        path.write_text(format_trace(reduce_to_k4(cube)))
        assert main(["reduce", "cube", "--trace", str(path)]) == EXIT_OK
        assert main(["certify", "cube", "--trace", str(path)]) == EXIT_OK

    def test_trace_not_ending_at_k4(self, capsys, tmp_path):
        path = tmp_path / "short.trace"
        path.write_text("CE edge=v1-v2\n")
        assert main(["reduce", "cube", "--trace", str(path)]) == EXIT_FAIL
        assert "not K4" in capsys.readouterr().out

    def test_inapplicable_trace(self, capsys, tmp_path):
        """ Delta-Y on a square face cannot be replayed """
        path = tmp_path / "bad.trace"
        path.write_text("DY face=F1\n")
        assert main(["reduce", "cube", "--trace", str(path)]) == EXIT_USAGE


class TestLiftcheck:
    def test_bundled(self, capsys):
        assert main(["liftcheck"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "q1 at h = 0: x_{F2}x_{F4}" in out
        assert out.rstrip().endswith("status: PASS")

    def test_wrong_fiber(self, capsys, tmp_path):
        quadrics = load_bundled_quadrics()
        path = tmp_path / "quadrics.txt"
        path.write_text(f"q1: t x_F1^2 h + x_F2 x_F3\nq2: {quadrics['q2'].text()}\nq3: {quadrics['q3'].text()}\n")
        assert main(["liftcheck", str(path)]) == EXIT_FAIL
        assert "status: FAIL" in capsys.readouterr().out

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "quadrics.txt"
        path.write_text("q1 x_F1\n")
        assert main(["liftcheck", str(path)]) == EXIT_USAGE


class TestCensus:
    def test_up_to_twelve(self, capsys):
        assert main(["census", "--max-vertices", "12"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == [
            "4 vertices: 1 graphs, 1 PASS",
            "6 vertices: 1 graphs, 1 PASS",
            "8 vertices: 2 graphs, 2 PASS",
            "10 vertices: 5 graphs, 5 PASS",
            "12 vertices: 14 graphs, 14 PASS",
        ]

    @pytest.mark.parametrize("index", [0, 1])
    def test_certify_trace_on_eight_vertices(self, capsys, tmp_path, index):
        """ Both eight-vertex graphs certify at every step of their reduction """
        g = census_graphs(8)[2 + index]
        path = tmp_path / f"{g.name}.graph"
        path.write_text(format_graph(planar_embed(g)))
        assert main(["certify", str(path), "--trace"]) == EXIT_OK
        assert all(line.endswith("PASS") for line in capsys.readouterr().out.splitlines())
