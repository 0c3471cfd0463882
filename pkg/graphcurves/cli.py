"""
Command line front end.

    graphcurves <subcommand> [graph] [--outer "v5 v6 v7 v8"] [--format text|json|svg] [--out path] [--trace [path]]

A graph is a path to a graph file or the name of a bundled graph (k4, prism, sliced_prism, cube,
petersen, two_edge_connected). Exit status is 0 on success or PASS, 1 when the mathematics fails
(a hypothesis is violated, a certificate FAILs) and 2 on usage or input errors.
"""
import argparse
import logging
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from graphcurves.config import config
from graphcurves.exceptions import (
    ConfigurationException,
    EmbeddingException,
    GraphCurvesException,
    GraphFormatException,
    PolynomialFormatException,
    TraceException,
)
from graphcurves.faithfulness import certify_graph, constructive_pipeline
from graphcurves.graph_kernel import (
    BUNDLED_GRAPHS,
    Graph,
    PlanarEmbedding,
    is_isomorphic,
    load_bundled,
    load_graph,
    planar_embed,
    validate,
)
from graphcurves.internal.serialization import dumps
from graphcurves.internal.svg import render_svg
from graphcurves.lifting import fiber_at_h0, load_bundled_quadrics, parse_polynomial_file, schoen_deformation_mismatches
from graphcurves.schoen import build_schoen, dual_complex, format_ideal, format_poly, stanley_reisner_generators
from graphcurves.transformations import cubic_census, format_trace, parse_trace, reduce_to_k4, trace_from_moves
from graphcurves.tropical_geometry import build_arrangement, tropical_basis_check, tropicalize_line

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

SUBCOMMANDS = ("validate", "faces", "schoen", "srgens", "reduce", "tropicalize", "certify",
               "basischeck", "liftcheck", "render", "census")
# the constructive pipeline computes its own reduction when --trace is given without a path
_AUTO_TRACE = "auto"

# input problems, reported with exit status 2. Every other GraphCurvesException is a mathematical failure
_INPUT_ERRORS = (GraphFormatException, EmbeddingException, TraceException, PolynomialFormatException,
                 ConfigurationException, OSError)


@dataclass
class RunConfig:
    """ One parsed invocation """
    subcommand: str
    input: Optional[str] = None
    outer: Optional[Tuple[str, ...]] = None
    format: str = "text"
    out: Optional[str] = None
    trace: Optional[str] = None
    what: str = "embedding"
    graph: str = "cube"
    max_vertices: Optional[int] = None
    verbose: int = 0


class InputError(Exception):
    """ A graph or file named on the command line cannot be used """
    pass


class Failure(Exception):
    """ The requested check ran and failed; carries the output to print """
    def __init__(self, output):
        super().__init__("failed")
        self.output = output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--outer", help="vertices of the face to use as outer face, e.g. 'v5 v6 v7 v8'")
    common.add_argument("--format", choices=("text", "json", "svg"), default=None, help="output format")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")

    parser = argparse.ArgumentParser(prog="graphcurves", description="Tropical schön embeddings of planar cubic graphs")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    helps = {
        "validate": "check the hypotheses: simple, cubic, planar, three-connected",
        "faces": "list the faces of the planar embedding",
        "schoen": "print the line ideals of the schön embedding",
        "srgens": "print the Stanley-Reisner generators",
        "reduce": "reduce to K4 with Delta-Y and contraction-elongation, or replay --trace",
        "tropicalize": "build the tropical complex of the line arrangement",
        "certify": "certify weak faithfulness; with --trace, certify every step back from K4",
        "basischeck": "check that the generators form a tropical basis",
        "liftcheck": "check that the quadrics reduce to the generators over h = 0",
        "render": "draw the embedding, complex or core as SVG",
        "census": "generate all cubic three-connected planar graphs and certify each",
    }
    for name in SUBCOMMANDS:
        command = sub.add_parser(name, parents=[common], help=helps[name], description=helps[name])
        if name == "liftcheck":
            command.add_argument("input", nargs="?", help="quadric file; defaults to the bundled cube quadrics")
            command.add_argument("--graph", default="cube", help="graph whose generators the quadrics deform")
        elif name == "census":
            command.add_argument("--max-vertices", type=int, default=None, dest="max_vertices")
        else:
            command.add_argument("input", help="graph file or bundled graph name")
        if name in ("reduce", "certify"):
            command.add_argument("--trace", nargs="?", const=_AUTO_TRACE, help="trace file to replay")
        if name == "render":
            command.add_argument("--what", choices=("embedding", "complex", "core"), default="embedding")
    return parser


def parse_run_config(argv: Sequence[str]) -> RunConfig:
    """ :raises SystemExit: With status 2 on usage errors, as argparse does """
    args = build_parser().parse_args(list(argv))
    default_format = "svg" if args.subcommand == "render" else "text"
    run_config = RunConfig(
        subcommand=args.subcommand,
        input=getattr(args, "input", None),
        outer=tuple(args.outer.replace(",", " ").split()) if args.outer else None,
        format=args.format or default_format,
        out=args.out,
        trace=getattr(args, "trace", None),
        what=getattr(args, "what", "embedding"),
        graph=getattr(args, "graph", "cube"),
        max_vertices=getattr(args, "max_vertices", None),
        verbose=args.verbose,
    )
    if (run_config.format == "svg") != (run_config.subcommand == "render"):
        raise InputError(f"--format {run_config.format} is not available for {run_config.subcommand}")
    return run_config


def load_input_graph(spec: str) -> Graph:
    """ A path if the file exists, otherwise a bundled graph name (a trailing .graph is ignored) """
    if os.path.isfile(spec):
        return load_graph(spec)
    name = os.path.basename(spec)
    if name.endswith(".graph"):
        name = name[:-len(".graph")]
    if name in BUNDLED_GRAPHS:
        return load_bundled(name)
    raise InputError(f"{spec}: no such file or bundled graph ({', '.join(BUNDLED_GRAPHS)})")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as err:
        raise InputError(f"{path}: {err.strerror}")


def _embedding(rc: RunConfig, g: Optional[Graph] = None) -> PlanarEmbedding:
    return planar_embed(g or load_input_graph(rc.input), rc.outer)


def _valid_embedding(rc: RunConfig) -> PlanarEmbedding:
    g = load_input_graph(rc.input)
    report = validate(g)
    if not report.ok:
        raise Failure(_emit(rc, report.to_dict(), [f"{g.name}: not a valid input"] + list(report.violations)))
    return _embedding(rc, g)


def _emit(rc: RunConfig, payload, text_lines: List[str]) -> str:
    if rc.format == "json":
        return dumps(payload)
    return "\n".join(text_lines) + "\n"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_validate(rc: RunConfig) -> Tuple[int, str]:
    g = load_input_graph(rc.input)
    report = validate(g)
    lines = [
        f"graph: {g.name}",
        f"simple: {_yes(report.simple)}",
        f"connected: {_yes(report.connected)}",
        f"cubic: {_yes(report.cubic)}",
        f"bridgeless: {_yes(report.bridgeless)}",
        f"edge connectivity: {report.edge_connectivity}",
        f"planar: {_yes(report.planar)}",
        f"three-connected: {_yes(report.three_connected)}",
        f"exterior pairs adjacent on every outer face: {_yes(report.lemma39_ok)}",
    ] + [f"violation: {v}" for v in report.violations]
    lines.append(f"status: {'PASS' if report.ok else 'FAIL'}")
    return (EXIT_OK if report.ok else EXIT_FAIL), _emit(rc, dict(report.to_dict(), graph=g.name), lines)


def cmd_faces(rc: RunConfig) -> Tuple[int, str]:
    e = _embedding(rc)
    payload = [{"id": f.id, "vertices": list(f.vertices), "length": f.length, "outer": f.is_outer}
               for f in e.face_list]
    lines = [f"{f.id}: {' '.join(f.vertices)}" for f in e.face_list]
    return EXIT_OK, _emit(rc, {"graph": e.graph.name, "genus": e.genus, "faces": payload}, lines)


def cmd_schoen(rc: RunConfig) -> Tuple[int, str]:
    e = _valid_embedding(rc)
    lines = build_schoen(e)
    return EXIT_OK, _emit(rc, {"graph": e.graph.name, "lines": [line.to_dict() for line in lines]},
                          [format_ideal(line) for line in lines])


def cmd_srgens(rc: RunConfig) -> Tuple[int, str]:
    e = _valid_embedding(rc)
    m = dual_complex(e)
    gens = stanley_reisner_generators(m)
    payload = dict(gens.to_dict(), graph=e.graph.name, minimal_non_faces=[list(f) for f in m.minimal_non_faces])
    return EXIT_OK, _emit(rc, payload, [format_poly(p) for p in gens.polynomials()])


def cmd_reduce(rc: RunConfig) -> Tuple[int, str]:
    e = _valid_embedding(rc)
    if rc.trace and rc.trace != _AUTO_TRACE:
        trace = trace_from_moves(e, parse_trace(_read(rc.trace)))
        if not is_isomorphic(trace.final.graph, load_bundled("k4")):
            lines = [f"trace ends at a graph with {len(trace.final.graph.vertex_ids)} vertices that is not K4"]
            return EXIT_FAIL, _emit(rc, dict(trace.to_dict(), status="FAIL"), lines)
    else:
        trace = reduce_to_k4(e)
    lines = format_trace(trace).splitlines()
    lines += [f"# step {i}: {len(emb.graph.vertex_ids)} vertices, genus {emb.genus}"
              for i, emb in enumerate(trace.intermediates, start=1)]
    return EXIT_OK, _emit(rc, dict(trace.to_dict(), status="PASS", trace=[m.to_line() for m in trace.moves]), lines)


def _complex(e: PlanarEmbedding):
    return build_arrangement([tropicalize_line(line) for line in build_schoen(e)])


def cmd_tropicalize(rc: RunConfig) -> Tuple[int, str]:
    e = _valid_embedding(rc)
    complex = _complex(e)
    lines = [f"{n.id} {n.tag} {n.cell.text()}" for n in complex.nodes]
    lines += [f"{s.id} {s.source}-{s.target} L_{s.line} [{s.label}]" for s in complex.segments]
    return EXIT_OK, _emit(rc, dict(complex.to_dict(), graph=e.graph.name), lines)


def _certificate_lines(cert) -> List[str]:
    lines = [f"graph: {cert.graph_name}", f"status: {cert.status}"]
    lines += [f"  {entry}" for entry in cert.stage_log]
    if cert.iso is not None:
        image = sorted(((vertex, node) for node, vertex in cert.iso.items()))
        lines += [f"  {vertex} -> {node}" for vertex, node in image]
    return lines


def cmd_certify(rc: RunConfig) -> Tuple[int, str]:
    if rc.trace:
        e = _valid_embedding(rc)
        if rc.trace == _AUTO_TRACE:
            trace = reduce_to_k4(e)
        else:
            trace = trace_from_moves(e, parse_trace(_read(rc.trace)))
        certificates = constructive_pipeline(trace)
        lines = []
        for step, cert in enumerate(certificates):
            lines.append(f"step {step}: {len(cert.iso)} vertices {cert.status}")
        payload = {"status": "PASS", "steps": [cert.to_dict() for cert in certificates]}
        return EXIT_OK, _emit(rc, payload, lines)
    cert = certify_graph(load_input_graph(rc.input), rc.outer)
    code = EXIT_OK if cert.passed else EXIT_FAIL
    return code, _emit(rc, cert.to_dict(), _certificate_lines(cert))


def cmd_basischeck(rc: RunConfig) -> Tuple[int, str]:
    e = _valid_embedding(rc)
    gens = stanley_reisner_generators(dual_complex(e))
    result = tropical_basis_check(gens, _complex(e))
    lines = [f"status: {result.status}", f"selection pieces: {result.pieces}"]
    if result.reason:
        lines.append(f"reason: {result.reason}")
    return (EXIT_OK if result.passed else EXIT_FAIL), _emit(rc, result.to_dict(), lines)


def cmd_liftcheck(rc: RunConfig) -> Tuple[int, str]:
    e = _valid_embedding(RunConfig(rc.subcommand, input=rc.graph, outer=rc.outer, format=rc.format))
    gens = stanley_reisner_generators(dual_complex(e))
    if rc.input:
        variables = tuple(v.face_id for v in gens.variables)
        quadrics = parse_polynomial_file(_read(rc.input), variables)
    else:
        quadrics = load_bundled_quadrics()
    try:
        problems = schoen_deformation_mismatches(list(quadrics.values()), gens)
    except ValueError as err:
        raise InputError(str(err))
    fibers = {name: format_poly(fiber_at_h0(q)) for name, q in quadrics.items()}
    lines = [f"{name} at h = 0: {fiber}" for name, fiber in fibers.items()]
    lines += [f"problem: {p}" for p in problems]
    status = "FAIL" if problems else "PASS"
    lines.append(f"status: {status}")
    payload = {"status": status, "graph": e.graph.name, "fibers": fibers, "problems": problems}
    return (EXIT_FAIL if problems else EXIT_OK), _emit(rc, payload, lines)


def cmd_render(rc: RunConfig) -> Tuple[int, str]:
    if rc.what == "embedding":
        return EXIT_OK, render_svg(_embedding(rc))
    if rc.what == "complex":
        return EXIT_OK, render_svg(_complex(_valid_embedding(rc)))
    cert = certify_graph(load_input_graph(rc.input), rc.outer)
    if cert.core is None:
        raise Failure(_emit(RunConfig("render"), None, _certificate_lines(cert)))
    return (EXIT_OK if cert.passed else EXIT_FAIL), render_svg(cert.core)


def cmd_census(rc: RunConfig) -> Tuple[int, str]:
    census = cubic_census(rc.max_vertices)
    counts, failures, lines = {}, [], []
    for order, graphs in census.items():
        passed = 0
        for g in graphs:
            cert = certify_graph(g)
            if cert.passed:
                passed += 1
            else:
                failures.append({"graph": g.name, "stage": cert.stage})
        counts[str(order)] = len(graphs)
        lines.append(f"{order} vertices: {len(graphs)} graphs, {passed} PASS")
    lines += [f"FAIL {f['graph']} at {f['stage']}" for f in failures]
    payload = {"counts": counts, "failures": failures, "status": "FAIL" if failures else "PASS"}
    return (EXIT_FAIL if failures else EXIT_OK), _emit(rc, payload, lines)


COMMANDS = {
    "validate": cmd_validate,
    "faces": cmd_faces,
    "schoen": cmd_schoen,
    "srgens": cmd_srgens,
    "reduce": cmd_reduce,
    "tropicalize": cmd_tropicalize,
    "certify": cmd_certify,
    "basischeck": cmd_basischeck,
    "liftcheck": cmd_liftcheck,
    "render": cmd_render,
    "census": cmd_census,
}


def _configure_logging(verbose: int):
    level = config.LOG_LEVEL
    if verbose == 1:
        level = "INFO"
    elif verbose > 1:
        level = "DEBUG"
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)


def _write(rc: RunConfig, output: str):
    if rc.out:
        with open(rc.out, "w", encoding="utf-8") as f:
            f.write(output)
    else:
        sys.stdout.write(output)


def run(argv: Sequence[str]) -> int:
    """
    Run one subcommand
    :return: The exit status
    """
    try:
        rc = parse_run_config(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code else EXIT_OK
    except InputError as err:
        print(f"graphcurves: {err}", file=sys.stderr)
        return EXIT_USAGE

    _configure_logging(rc.verbose)
    try:
        config.validate()
        code, output = COMMANDS[rc.subcommand](rc)
    except Failure as failure:
        code, output = EXIT_FAIL, failure.output
    except (InputError, *_INPUT_ERRORS) as err:
        print(f"graphcurves {rc.subcommand}: {err}", file=sys.stderr)
        return EXIT_USAGE
    except GraphCurvesException as err:
        print(f"graphcurves {rc.subcommand}: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_FAIL

    try:
        _write(rc, output)
    except OSError as err:
        print(f"graphcurves: cannot write {rc.out}: {err.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """ Console entry point. Tests call it with an argument list and read the returned status """
    code = run(sys.argv[1:] if argv is None else argv)
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
