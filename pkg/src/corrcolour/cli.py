"""Command-line interface.

Exit codes: 0 success, 1 a bound or theorem check failed, 2 malformed input
or unmet preconditions, 3 a budget cut a computation short, 64 unknown bound.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import random
import sys
from collections.abc import Iterable, Iterator, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import corpus
from .bounds import (
    Threshold,
    alon_furedi,
    alon_furedi_parameters,
    birkhoff_lewis_threshold,
    euler_girth_slack,
    local_girth_bound,
    thm_extension_3cc_bound,
    thm_extension_5cc_bound,
    thm_planar_3cc_girth5_bound,
    thm_planar_5cc_bound,
    verify_bound,
)
from .correspondence import (
    CorrespondenceAssignment,
    from_lists,
    identity_assignment,
    local_girth_lists,
    random_permutation_assignment,
)
from .counting import CountResult, count_colourings, count_extensions, enumerate_colourings, gauge_fixed_assignments
from .errors import BudgetExceeded, GraphError, PreconditionViolation, TheoremFalsified
from .extension import extend_3cc_girth5, extend_5cc
from .families import named
from .graph import INFINITY, Graph, SubgraphRef, edge_girth, girth, vertex_girth
from .graph6 import encode_graph6, parse_graph6
from .io import IngestError, ingest
from .plane import PlaneGraph
from .structure import cheeger_disk_check, deficiency, deletable_subgraph_search, is_critical, parse_rational

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_PARSE = 2
EXIT_TRUNCATED = 3
EXIT_UNKNOWN_BOUND = 64

BOUNDS = (
    "thm1.6",
    "thm1.10",
    "thm3.2",
    "thm4.5",
    "alonfuredi",
    "birkhoff",
    "localgirth",
    "prop6.3",
    "cheeger52",
    "cheeger270",
)

VERIFY_CSV_FIELDS = ("graph_id", "bound_name", "count", "holds")


class UsageError(Exception):
    """A request that cannot be served; mapped to exit code 2."""


@dataclass(frozen=True)
class Instance:
    graph_id: str
    graph: Graph
    embedding: PlaneGraph | None = None
    assignment: CorrespondenceAssignment | None = None


# -- argument helpers --------------------------------------------------------


def rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def integer(text: str) -> int:
    x = rational(text)
    if x.denominator != 1:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(x)


def vertex_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None


def colouring_arg(text: str) -> dict[int, int]:
    out = {}
    if not text.strip():
        return out
    for item in text.split(","):
        try:
            v, c = item.split(":")
            out[int(v)] = int(c)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected v:c pairs, got {item!r}") from None
    return out


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--budget", type=integer, default=10**7, help="search nodes or assignments allowed")
    g.add_argument("--seed", type=integer, default=0, help="seed for every random choice")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--out", help="write the report here instead of standard output")
    g.add_argument("--workers", type=integer, default=1, help="worker processes for instance-level parallelism")
    src = p.add_argument_group("inputs")
    src.add_argument("--graph", action="append", default=[], help="named family such as c5, w6, grid(2,3)")
    src.add_argument("--graph6", action="append", default=[], help="graph6 string")
    src.add_argument("--input", action="append", default=[], help="graph6, embedding or assignment file")
    src.add_argument("--corpus", choices=sorted(corpus.CORPORA))
    src.add_argument("--max-vertices", type=integer)
    src.add_argument("--connected", action="store_true", help="keep only connected corpus graphs")
    src.add_argument("--assignment", default="identity", help="identity, random, or an assignment JSON file")
    src.add_argument("--k", type=integer, default=None, help="list size for generated assignments")
    src.add_argument("--samples", type=integer, default=0, help="extra seeded random permutation assignments")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="corrcolour", description="Correspondence colouring verification tools")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("count", parents=[common], help="count (L,M)-colourings")

    p = sub.add_parser("extend", parents=[common], help="extend a precolouring")
    p.add_argument("--mode", choices=("5cc", "3cc"), default="5cc")
    p.add_argument("--s", type=vertex_list, default=[], help="vertices of the precoloured subgraph")
    p.add_argument("--phi", type=colouring_arg, default={}, help="precolouring as v:c,v:c")
    p.add_argument("--independent", type=vertex_list, default=[], help="outer vertices allowed lists of size 2")

    p = sub.add_parser("verify", parents=[common], help="check a bound against oracle counts")
    p.add_argument("--bound", required=True, help=", ".join(BOUNDS))
    p.add_argument("--s", type=vertex_list, default=None, help="precoloured vertices for extension bounds")
    p.add_argument("--exhaustive", action="store_true", help="thm1.10: minimise over all permutation assignments")
    p.add_argument("--inject-count", type=integer, default=None, help="replace every oracle count (self-test)")

    p = sub.add_parser("search", parents=[common], help="stream criticality or deletability certificates")
    p.add_argument("--kind", choices=("critical", "deletable"), default="deletable")
    p.add_argument("--h", type=vertex_list, default=[], help="vertices of h (deletable search)")
    p.add_argument("--s", type=vertex_list, default=[], help="vertices of s (criticality)")
    p.add_argument("--s-edges", default=None, help="edges of s as u-v,u-v (default: induced on --s)")
    p.add_argument("--r", type=integer, default=5)

    p = sub.add_parser("deficiency", parents=[common], help="def_g(G|H) and d_{g,eps}(G|H)")
    p.add_argument("--h", type=vertex_list, default=[], help="vertices of the induced subgraph h")
    p.add_argument("--g-param", type=integer, default=3)
    p.add_argument("--epsilon", type=rational, default=Fraction(0))

    sub.add_parser("girth", parents=[common], help="girth, vertex girths and edge girths")
    return parser


# -- inputs ------------------------------------------------------------------


def load_instances(args) -> list[Instance]:
    out: list[Instance] = []
    pending_assignment: CorrespondenceAssignment | None = None
    for name in args.graph:
        pg = named(name)
        out.append(Instance(name, pg.graph, pg))
    for text in args.graph6:
        g = parse_graph6(text)
        out.append(Instance(text.strip(), g))
    for path in args.input:
        data = ingest(path)
        for i, g in enumerate(data.graphs):
            out.append(Instance(encode_graph6(g), g))
        for i, pg in enumerate(data.embeddings):
            label = f"{path}[{i}]" if len(data.embeddings) > 1 else path
            out.append(Instance(label, pg.graph, pg))
        if data.assignments:
            pending_assignment = data.assignments[-1]
    if args.corpus:
        for g in corpus.load(args.corpus, max_vertices=args.max_vertices, connected=args.connected or None):
            out.append(Instance(encode_graph6(g), g))
    if not out:
        raise UsageError("no input graphs; use --graph, --graph6, --input or --corpus")
    if args.assignment not in ("identity", "random"):
        data = ingest(args.assignment)
        if not data.assignments:
            raise IngestError("file holds no assignment", args.assignment)
        pending_assignment = data.assignments[-1]
    if pending_assignment is not None:
        out = [Instance(x.graph_id, x.graph, x.embedding, pending_assignment) for x in out]
    return out


def _rng(seed: int, graph_id: str) -> random.Random:
    return random.Random(f"{seed}:{graph_id}")


def assignments_for(inst: Instance, args, k: int) -> Iterator[tuple[str, CorrespondenceAssignment]]:
    """Named assignments: a file assignment, or identity and/or seeded random ones."""
    if inst.assignment is not None:
        yield "file", inst.assignment
        return
    if args.assignment == "identity":
        yield "identity", identity_assignment(inst.graph, k)
    rng = _rng(args.seed, inst.graph_id)
    samples = args.samples if args.assignment == "identity" else max(1, args.samples)
    for i in range(samples):
        yield f"random#{i}", random_permutation_assignment(inst.graph, k, rng)


# -- output ------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if x == INFINITY:
        return "inf"
    raise TypeError(type(x).__name__)


def render(rows: Iterable[Mapping], fmt: str, fields: Iterable[str] | None = None) -> str:
    rows = list(rows)
    if fmt == "json":
        return "".join(json.dumps(r, sort_keys=True, default=_jsonable) + "\n" for r in rows)
    buf = _io.StringIO()
    if fields is None:
        names: list[str] = []
        for r in rows:
            names.extend(k for k in r if k not in names)
        fields = names
    writer = csv.DictWriter(buf, fieldnames=list(fields), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _csv_cell(v) for k, v in r.items()})
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, default=_jsonable)
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if v == INFINITY:
        return "inf"
    return v


def write_report(args, rows: list[Mapping], fields=None) -> None:
    text = render(rows, args.format, fields)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map(fn, items: list, workers: int) -> list:
    """Apply ``fn`` to every item, keeping input order whatever the completion order."""
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- count -------------------------------------------------------------------


def _count_task(job) -> list[dict]:
    inst, args = job
    k = args.k if args.k is not None else 5
    rows = []
    for label, a in assignments_for(inst, args, k):
        res = count_colourings(inst.graph, a, budget=args.budget)
        rows.append({"graph_id": inst.graph_id, "assignment": label, **res.to_json()})
    return rows


def cmd_count(args) -> int:
    instances = load_instances(args)
    rows = [r for chunk in _map(_count_task, [(x, args) for x in instances], args.workers) for r in chunk]
    write_report(args, rows, ("graph_id", "assignment", "count", "explored_nodes", "truncated"))
    return EXIT_TRUNCATED if any(r["truncated"] for r in rows) else EXIT_OK


# -- extend ------------------------------------------------------------------


def cmd_extend(args) -> int:
    rows = []
    for inst in load_instances(args):
        if inst.embedding is None:
            raise UsageError(f"{inst.graph_id}: extension needs a plane embedding")
        k = args.k if args.k is not None else (5 if args.mode == "5cc" else 3)
        a = inst.assignment or identity_assignment(inst.graph, k)
        s = SubgraphRef.induced(inst.graph, args.s)
        if args.mode == "5cc":
            col = extend_5cc(inst.embedding, a, s, args.phi)
        else:
            col = extend_3cc_girth5(inst.embedding, a, s, args.independent, args.phi)
        rows.append({"graph_id": inst.graph_id, "colouring": {str(v): c for v, c in col.items()}})
    write_report(args, rows)
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def _verdict_row(inst: Instance, bound: str, label: str, count, threshold: Threshold, inject) -> dict:
    if inject is not None:
        count = CountResult(inject, 0, False)
    verdict = verify_bound(count, threshold, bound)
    row = {"graph_id": inst.graph_id, "assignment": label, **verdict.to_json()}
    row["count"] = row.pop("oracle_count")
    return row


def _extension_rows(inst: Instance, args, bound: str) -> list[dict]:
    five = bound == "thm3.2"
    g = inst.graph
    if not five and girth(g) < 5:
        return []
    k = 5 if five else 3
    svs = args.s if args.s is not None else ([g.vertices[0]] if g.v else [])
    s = SubgraphRef.induced(g, svs)
    threshold = thm_extension_5cc_bound(g, s) if five else thm_extension_3cc_bound(g, s)
    rows = []
    for label, a in assignments_for(inst, args, k):
        for phi in enumerate_colourings(s.as_graph(), a.restrict(s.vertex_subset)):
            res = count_extensions(g, a, s, phi, budget=args.budget)
            if res.count == 0 and not res.truncated:
                continue
            tag = label + " phi=" + ",".join(f"{v}:{c}" for v, c in sorted(phi.items()))
            rows.append(_verdict_row(inst, bound, tag, res, threshold, args.inject_count))
    return rows


def _verify_task(job) -> list[dict]:
    inst, args = job
    bound = args.bound
    g = inst.graph
    inject = args.inject_count
    if bound in ("thm1.6", "thm1.10"):
        five = bound == "thm1.6"
        if not five and girth(g) < 5:
            return []
        threshold = thm_planar_5cc_bound(g.v) if five else thm_planar_3cc_girth5_bound(g.v)
        k = 5 if five else 3
        if args.exhaustive:
            best = None
            checked = 0
            for a in gauge_fixed_assignments(g, k, args.budget):
                checked += 1
                res = count_colourings(g, a, budget=args.budget)
                if best is None or res.count < best.count:
                    best = res
            return [_verdict_row(inst, bound, f"min over {checked}", best, threshold, inject)]
        return [
            _verdict_row(inst, bound, label, count_colourings(g, a, budget=args.budget), threshold, inject)
            for label, a in assignments_for(inst, args, k)
        ]
    if bound in ("thm3.2", "thm4.5"):
        return _extension_rows(inst, args, bound)
    if bound == "alonfuredi":
        k = args.k if args.k is not None else 3
        lists = inst.assignment.lists if inst.assignment is not None else {v: range(k) for v in g.vertices}
        a = from_lists(g, lists)
        s_sum, n, d, t = alon_furedi_parameters(g, a.lists)
        if t < 2:
            return []
        res = count_colourings(g, a, budget=args.budget)
        if res.count == 0 and not res.truncated:
            return []
        return [_verdict_row(inst, bound, "lists", res, alon_furedi(s_sum, n, d, t), inject)]
    if bound == "birkhoff":
        if g.v < 3:
            return []
        res = count_colourings(g, identity_assignment(g, 5), budget=args.budget)
        return [_verdict_row(inst, bound, "identity", res, birkhoff_lewis_threshold(g.v), inject)]
    if bound == "localgirth":
        a = from_lists(g, local_girth_lists(g))
        res = count_colourings(g, a, budget=args.budget)
        return [_verdict_row(inst, bound, "local_girth_lists", res, local_girth_bound(g.v), inject)]
    if bound == "prop6.3":
        if girth(g) == INFINITY:
            return []
        slack = euler_girth_slack(g)
        return [
            {
                "graph_id": inst.graph_id,
                "bound_name": bound,
                "count": f"{slack.numerator}/{slack.denominator}",
                "holds": slack >= 2,
            }
        ]
    if bound in ("cheeger52", "cheeger270"):
        if inst.embedding is None:
            raise UsageError(f"{inst.graph_id}: the disk check needs a plane embedding")
        c = 52 if bound == "cheeger52" else 270
        verdict = cheeger_disk_check(inst.embedding, None, c)
        return [
            {
                "graph_id": inst.graph_id,
                "bound_name": bound,
                "count": verdict.interior,
                "holds": verdict.holds,
                "vacuous": verdict.vacuous,
                "boundary": verdict.boundary,
            }
        ]
    raise AssertionError(bound)


def cmd_verify(args) -> int:
    if args.bound not in BOUNDS:
        print(f"corrcolour verify: unknown bound {args.bound!r}; choose from {', '.join(BOUNDS)}", file=sys.stderr)
        return EXIT_UNKNOWN_BOUND
    instances = load_instances(args)
    rows = [r for chunk in _map(_verify_task, [(x, args) for x in instances], args.workers) for r in chunk]
    fields = VERIFY_CSV_FIELDS
    write_report(args, rows, fields)
    if any(r["holds"] is False for r in rows):
        return EXIT_FALSIFIED
    if any(r["holds"] is None for r in rows):
        return EXIT_TRUNCATED
    return EXIT_OK


# -- search ------------------------------------------------------------------


def _parse_edges(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        try:
            u, v = item.split("-")
            out.append((int(u), int(v)))
        except ValueError:
            raise UsageError(f"expected edges as u-v, got {item!r}") from None
    return out


def cmd_search(args) -> int:
    rows = []
    incomplete = False
    for inst in load_instances(args):
        g = inst.graph
        if args.kind == "critical":
            if inst.assignment is None:
                raise UsageError("criticality search needs --assignment FILE")
            if args.s_edges is not None:
                s = SubgraphRef.from_edges(g, _parse_edges(args.s_edges), args.s)
            else:
                s = SubgraphRef.induced(g, args.s)
            try:
                res = is_critical(g, s, inst.assignment, args.budget)
            except BudgetExceeded:
                rows.append({"graph_id": inst.graph_id, "kind": "critical", "truncated": True})
                incomplete = True
                continue
            if res.critical:
                rows.append({"graph_id": inst.graph_id, "kind": "critical", **res.to_json()})
        else:
            res = deletable_subgraph_search(g, args.h, args.r, args.budget, seed=args.seed)
            if res.found is not None:
                rows.append(
                    {
                        "graph_id": inst.graph_id,
                        "kind": "deletable",
                        "witness": sorted(res.found),
                        "exhaustive": res.exhaustive,
                        "checked": res.checked,
                    }
                )
            elif not res.exhaustive:
                rows.append({"graph_id": inst.graph_id, "kind": "deletable", "truncated": True})
                incomplete = True
    write_report(args, rows)
    return EXIT_TRUNCATED if incomplete else EXIT_OK


# -- deficiency and girth ----------------------------------------------------


def cmd_deficiency(args) -> int:
    rows = []
    for inst in load_instances(args):
        rep = deficiency(inst.graph, SubgraphRef.induced(inst.graph, args.h), args.g_param, args.epsilon)
        rows.append({"graph_id": inst.graph_id, **rep.to_json()})
    write_report(args, rows)
    return EXIT_OK


def cmd_girth(args) -> int:
    rows = []
    for inst in load_instances(args):
        g = inst.graph
        rows.append(
            {
                "graph_id": inst.graph_id,
                "girth": girth(g),
                "vertex_girth": {str(v): vertex_girth(g, v) for v in g.vertices},
                "edge_girth": {f"{u},{v}": edge_girth(g, (u, v)) for u, v in g.sorted_edges()},
            }
        )
    write_report(args, rows)
    return EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "extend": cmd_extend,
    "verify": cmd_verify,
    "search": cmd_search,
    "deficiency": cmd_deficiency,
    "girth": cmd_girth,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except TheoremFalsified as exc:
        print(f"corrcolour: theorem falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (IngestError, GraphError, PreconditionViolation, UsageError, KeyError, ValueError) as exc:
        print(f"corrcolour: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"corrcolour: {exc}", file=sys.stderr)
        return EXIT_TRUNCATED
