"""Command-line front end: ``spexlab <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 capacity or
budget exhausted (result unknown), 4 failed internal re-verification.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    all_bounds,
    clique_vector_check,
    double_eigenvector_identity,
    feng_yu_bound,
    hong_nikiforov_bound,
    motzkin_straus_check,
    wilf_bound,
)
from .embed import DEFAULT_BUDGET, FactorQuery, contains_spanning, find_factor
from .errors import (
    BudgetExceeded,
    CapacityExceeded,
    ConvergenceFailure,
    InternalAssertion,
    InvalidParameter,
    SpexError,
)
from .families import ExtremalH, parse_family
from .graph import Graph, graph6_decode, graph6_encode, read_graph6_lines
from .lemmas import (
    DEFAULT_EPSILON,
    EXHAUSTIVE_LIMIT,
    check_adjacency_chain,
    check_q_chain,
    degree_histogram,
    parse_case,
    reports_to_csv,
    verify_corollary,
)
from .search import parse_objective, search_extremal
from .spectra import DEFAULT_SETTINGS, SolverSettings, dominant_eigenpair, parse_kind

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAPACITY, EXIT_INTERNAL = 0, 1, 2, 3, 4
TOL_ENV = "SPEXLAB_SOLVER_TOL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- plumbing --------------------------------------------------------------------------

def solver_settings() -> SolverSettings:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_SETTINGS
    try:
        tol = float(raw)
    except ValueError:
        raise InvalidParameter(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise InvalidParameter(f"{TOL_ENV} must be positive, got {raw!r}")
    return SolverSettings(tol=tol, max_iter=DEFAULT_SETTINGS.max_iter)


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the clock for byte-reproducible runs
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        moment = _dt.datetime.now(tz=_dt.timezone.utc)
    return moment.isoformat(timespec="seconds")


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def manifest(command: str, parameters: dict, settings: SolverSettings, inputs: dict[str, bytes]) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "artifact_version": __version__,
        "solver_settings": {"tolerance": settings.tol, "iteration_cap": settings.max_iter},
        "timestamp": _timestamp(),
        "input_digests": {name: "sha256:" + hashlib.sha256(data).hexdigest() for name, data in sorted(inputs.items())},
    }


def write_output(path: str, text: str) -> None:
    """Write ``text`` to ``path`` atomically, or to stdout for ``-``."""
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent if str(target.parent) else ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        # mkstemp creates 0600; give the result the permissions a plain open() would
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _load_graphs(path: str) -> tuple[list[Graph], bytes]:
    data = _read_input(path)
    return read_graph6_lines(data.decode("ascii", errors="replace").splitlines()), data


def _graph_arg(text: str) -> tuple[Graph, bytes]:
    """A literal graph6 string, or the first graph of an existing file."""
    if os.path.isfile(text):
        graphs, data = _load_graphs(text)
        if not graphs:
            raise InvalidParameter(f"{text} contains no graphs")
        return graphs[0], data
    return graph6_decode(text), text.encode("ascii", errors="replace")


def _pattern_arg(text: str) -> Graph:
    if ":" in text:
        return parse_family(text).build()
    return graph6_decode(text)


# -- subcommands ------------------------------------------------------------------------

def cmd_construct(args, settings):
    spec = parse_family(args.family)
    g = spec.build()
    text = graph6_encode(g) + "\n"
    write_output(args.out, text)
    if args.out != "-":
        meta = manifest("construct", {"family": str(spec)}, settings, {})
        write_output(args.out + ".manifest.json", _json(meta))
    return EXIT_OK


def cmd_spectra(args, settings):
    kind = parse_kind(args.matrix)
    graphs, data = _load_graphs(args.input)
    records = []
    for i, g in enumerate(graphs):
        res = dominant_eigenpair(g, kind, settings)
        rec = {"index": i, "graph6": graph6_encode(g), "matrix": str(kind), "value": res.value,
               "residual": res.residual, "iterations": res.iterations,
               "support_component": res.support_component}
        if args.with_vector:
            rec["vector"] = [float(v) for v in res.vector]
        records.append(rec)
    params = {"matrix": str(kind), "with_vector": args.with_vector}
    write_output(args.out, _json({"manifest": manifest("spectra", params, settings, {"in": data}), "records": records}))
    return EXIT_OK


_CHECKS = {
    "hong": lambda g, s: [hong_nikiforov_bound(g, s)],
    "wilf": lambda g, s: [wilf_bound(g, s)],
    "fengyu": lambda g, s: [feng_yu_bound(g, s)],
    "ms": lambda g, s: [motzkin_straus_check(g, np.full(g.n, 1.0 / g.n))],
    "cv": lambda g, s: [clique_vector_check(g, s)],
    "all": lambda g, s: all_bounds(g, s),
}


def cmd_bounds(args, settings):
    graphs, data = _load_graphs(args.input)
    records = []
    for i, g in enumerate(graphs):
        for rep in _CHECKS[args.check](g, settings):
            records.append({"index": i, **rep.to_dict()})
    params = {"check": args.check}
    write_output(args.out, _json({"manifest": manifest("bounds", params, settings, {"in": data}), "records": records}))
    return EXIT_OK


def cmd_identity(args, settings):
    g, gdata = _graph_arg(args.g)
    h, hdata = _graph_arg(args.h)
    rep = double_eigenvector_identity(g, h, settings)
    meta = manifest("identity", {"g": graph6_encode(g), "h": graph6_encode(h)}, settings, {"g": gdata, "h": hdata})
    write_output(args.out, _json({"manifest": meta, "report": rep.to_dict()}))
    return EXIT_OK


def cmd_contains(args, settings):
    graphs, data = _load_graphs(args.g)
    f = _pattern_arg(args.f)
    records = []
    unknown = False
    for i, g in enumerate(graphs):
        rec = {"index": i, "graph6": graph6_encode(g)}
        try:
            w = contains_spanning(g, f, args.budget)
        except BudgetExceeded as exc:
            unknown = True
            rec.update(contains=None, status="unknown", expansions=exc.expansions)
        else:
            rec.update(contains=w is not None, status="decided")
            if args.witness:
                rec["witness"] = list(w.mapping) if w is not None else None
        records.append(rec)
    params = {"f": args.f, "witness": args.witness, "budget": args.budget}
    write_output(args.out, _json({"manifest": manifest("contains", params, settings, {"g": data}), "records": records}))
    return EXIT_CAPACITY if unknown else EXIT_OK


def cmd_factor(args, settings):
    graphs, data = _load_graphs(args.input)
    query = FactorQuery(args.a, args.b)
    records = []
    for i, g in enumerate(graphs):
        edges = find_factor(g, query, precheck=not args.no_precheck)
        rec = {"index": i, "graph6": graph6_encode(g), "has_factor": edges is not None}
        if args.witness:
            rec["factor_edges"] = [list(e) for e in edges] if edges is not None else None
        records.append(rec)
    params = {"a": args.a, "b": args.b, "precheck": not args.no_precheck, "witness": args.witness}
    write_output(args.out, _json({"manifest": manifest("factor", params, settings, {"in": data}), "records": records}))
    return EXIT_OK


def _witness_path(out: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    if out == "-":
        return "search-witnesses.g6"
    p = Path(out)
    return str(p.with_suffix(".g6")) if p.suffix != ".g6" else str(p) + ".witnesses.g6"


def cmd_search(args, settings):
    family = parse_family(args.family)
    objective = parse_objective(args.objective)
    inputs = {}
    stream = None
    if args.stream:
        stream, inputs["stream"] = _load_graphs(args.stream)
    if args.emax is not None and not args.dense:
        raise UsageError("--emax only applies with --dense")
    outcome = search_extremal(args.n, family, objective, dense_mode=args.dense, e_max=args.emax,
                              workers=args.workers, stream=stream, settings=settings)
    params = {"n": args.n, "family": str(family), "objective": objective.value, "dense": args.dense,
              "emax": outcome.e_max, "stream": bool(args.stream)}
    meta = manifest("search", params, settings, inputs)
    witness_file = _witness_path(args.out, args.witness_out)
    doc = {"manifest": meta, "outcome": outcome.to_dict(), "witness_file": witness_file}
    witness_text = "".join(w + "\n" for w in outcome.witnesses)
    write_output(witness_file, witness_text)
    write_output(args.out, _json(doc))
    return EXIT_OK


def _lemma_target(text: str) -> tuple[Graph, int | None, str]:
    kind, sep, rest = text.partition(":")
    if kind == "h" and sep:
        spec = parse_family(text)
        assert isinstance(spec, ExtremalH)
        return spec.build(), spec.k, str(spec)
    if kind in ("graph6", "g6") and sep:
        return graph6_decode(rest), None, f"graph6:{rest}"
    raise InvalidParameter(f"lemma target must be h:<n>,<delta> or graph6:<s>, got {text!r}")


def cmd_lemmas(args, settings):
    g, delta_default, target = _lemma_target(args.target)
    delta_f = args.deltaF if args.deltaF is not None else delta_default
    if delta_f is None:
        raise UsageError("--deltaF is required for graph6 targets")
    params = {"target": target, "chain": args.chain, "deltaF": delta_f}
    doc = {"degree_histogram": {str(k): v for k, v in degree_histogram(g).items()}}
    if args.chain == "adj":
        reports = check_adjacency_chain(g, delta_f, settings)
    else:
        eps = DEFAULT_EPSILON if args.eps is None else args.eps
        params["eps"] = eps
        reports, part, entries = check_q_chain(g, delta_f, eps, settings)
        doc["partition"] = part.to_dict()
        doc["vertex_entries"] = [e.to_dict() for e in entries]
    doc["reports"] = [r.to_dict() for r in reports]
    doc["manifest"] = manifest("lemmas", params, settings, {})
    if args.csv:
        write_output(args.csv, reports_to_csv(reports))
    write_output(args.out, _json(doc))
    return EXIT_OK


def cmd_corollary(args, settings):
    case = parse_case(args.case)
    reports = verify_corollary(case, args.exhaustive_limit, settings)
    params = {"case": args.case, "exhaustive_limit": args.exhaustive_limit}
    doc = {"manifest": manifest("corollary", params, settings, {}), "reports": [r.to_dict() for r in reports]}
    write_output(args.out, _json(doc))
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spexlab", description="Spectral extremal problems for spanning subgraphs.")
    p.add_argument("--version", action="version", version=f"spexlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out_arg(sp):
        sp.add_argument("--out", default="-", help="output path, '-' for stdout")

    sp = sub.add_parser("construct", help="write a family member as graph6")
    sp.add_argument("--family", required=True)
    out_arg(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("spectra", help="dominant eigenpair per graph")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--matrix", default="adj", help="adj | q | alpha:<a>")
    sp.add_argument("--json", action="store_true", help="JSON output (the only format)")
    sp.add_argument("--with-vector", action="store_true")
    out_arg(sp)
    sp.set_defaults(func=cmd_spectra)

    sp = sub.add_parser("bounds", help="evaluate spectral bounds")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--check", choices=sorted(_CHECKS), default="all")
    out_arg(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("identity", help="replay the double-eigenvector identities")
    sp.add_argument("--g", required=True)
    sp.add_argument("--h", required=True)
    out_arg(sp)
    sp.set_defaults(func=cmd_identity)

    sp = sub.add_parser("contains", help="spanning containment of F in each graph")
    sp.add_argument("--g", required=True, help="graph6 file of host graphs")
    sp.add_argument("--f", required=True, help="family spec or graph6 string")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    out_arg(sp)
    sp.set_defaults(func=cmd_contains)

    sp = sub.add_parser("factor", help="[a, b]-factor existence per graph")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--no-precheck", action="store_true", help="always run the matching reduction")
    sp.add_argument("--witness", action="store_true")
    out_arg(sp)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("search", help="exhaustive extremal search")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--family", required=True)
    sp.add_argument("--objective", required=True, help="edges | lambda | q")
    sp.add_argument("--dense", action="store_true")
    sp.add_argument("--emax", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--stream", help="graph6 file scanned instead of the internal generator")
    sp.add_argument("--witness-out", help="graph6 file for the witnesses")
    out_arg(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("lemmas", help="proof-chain diagnostics")
    sp.add_argument("--target", required=True, help="h:<n>,<delta> | graph6:<s>")
    sp.add_argument("--chain", choices=("adj", "q"), required=True)
    sp.add_argument("--eps", type=float)
    sp.add_argument("--deltaF", type=int)
    sp.add_argument("--csv", help="also write a CSV summary here")
    out_arg(sp)
    sp.set_defaults(func=cmd_lemmas)

    sp = sub.add_parser("corollary", help="corollary construction checks")
    sp.add_argument("--case", required=True, help="cyclepower:n,k | factor:n,a,b | cliquefactor:n,r")
    sp.add_argument("--exhaustive-limit", type=int, default=EXHAUSTIVE_LIMIT)
    out_arg(sp)
    sp.set_defaults(func=cmd_corollary)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "workers", 1) < 1:
        print("spexlab: error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        settings = solver_settings()
        return args.func(args, settings)
    except UsageError as exc:
        print(f"spexlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityExceeded, BudgetExceeded, ConvergenceFailure) as exc:
        print(f"spexlab: unknown result: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InternalAssertion as exc:
        print(f"spexlab: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SpexError, ValueError) as exc:
        print(f"spexlab: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"spexlab: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
