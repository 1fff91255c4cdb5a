"""Command-line interface.  Every command prints JSON (or DOT) on stdout."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import builders
from .engine import (
    count_words,
    directly_accessible_controls,
    enumerate_language,
    explicit_graph,
    member,
    sorted_words,
    strongly_connected,
    summary_graph,
)
from .graph import DirectedGraph, Edge, GraphError, LabelledGraph, export_dot
from .model import SpecError, graph_from_json, load_spec, spec_to_json, validate
from .recode import NotExportable, export_finite_type_dyck, recoded_spec, resolving_radius
from .semigroup import ZERO, semigroup_alphabet, semigroup_reduce
from .separation import ConstantsNotFound, cross_check, decide_forward_separated
from .sofic import NotFound, build_y_presentation, test_projection_hypothesis, visibility_constants


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _spec(args):
    return load_spec(_read(args.file))


def _graph(path: str | None) -> DirectedGraph:
    if path is None:
        return builders.golden_mean_graph()
    try:
        obj = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON: {exc}") from exc
    return graph_from_json(obj, "graph")


def _word(text: str) -> list[str]:
    return [s for s in text.split(",") if s] if text else []


def cmd_validate(args):
    report = validate(_spec(args))
    return _dump(report.to_json()), 0 if report.ok else 1


def cmd_words(args):
    words = sorted_words(enumerate_language(_spec(args), args.n))
    return _dump({"n": args.n, "words": [list(w) for w in words]}), 0


def cmd_count(args):
    return _dump({"n": args.n, "counts": count_words(_spec(args), args.n)}), 0


def cmd_member(args):
    return _dump({"member": member(_spec(args), _word(args.w))}), 0


def cmd_connected(args):
    return _dump(strongly_connected(_spec(args)).to_json()), 0


def cmd_hypotheses(args):
    spec = _spec(args)
    report = validate(spec)
    consts = visibility_constants(spec, args.cap)
    return _dump({
        "visibility_constants": consts.to_json() if isinstance(consts, NotFound) else {"found": True, **consts.to_json()},
        "projection_hypothesis": test_projection_hypothesis(spec),
        "hypothesis_h": report.hypothesis_h,
        "discordance": report.condition_b,
        "validation": report.to_json(),
        "directly_accessible_controls": sorted(directly_accessible_controls(spec)),
    }), 0


def cmd_separated(args):
    spec = _spec(args)
    consts = visibility_constants(spec, args.cap)
    verdict = decide_forward_separated(spec, consts)
    out = {**verdict.to_json(), "constants": consts.to_json()}
    if args.brute is not None:
        out["brute_force"] = cross_check(spec, verdict, args.brute, args.depth)
    return _dump(out), 0


def cmd_recode(args):
    spec = _spec(args)
    report = resolving_radius(spec, args.cap)
    return _dump({"report": report.to_json(), "recoded": spec_to_json(recoded_spec(spec))}), 0


def cmd_export_ftd(args):
    return _dump(export_finite_type_dyck(_spec(args)).to_json()), 0


def cmd_semigroup(args):
    spec = _spec(args)
    gens = semigroup_alphabet(spec)
    word = _word(args.w)
    for sym in word:
        if sym not in gens:
            raise ValueError(f"symbol {sym!r} not in alphabet")
    x = semigroup_reduce(spec.base, [gens[s] for s in word])
    return _dump({"admissible": x is not ZERO, "normal_form": str(x)}), 0


def _sizes(items: list[str]) -> dict[str, int]:
    sizes = {}
    for item in items or ["1=2"]:
        key, sep, val = item.partition("=")
        if not sep or not val.isdigit():
            raise UsageError(f"--I expects K=<int>, got {item!r}")
        sizes[key] = int(val)
    return sizes


def cmd_example(args):
    fam = args.family
    if fam == "dyck":
        spec = builders.build_dyck(args.n)
    elif fam == "product":
        spec = builders.build_product(_graph(args.g), args.m)
    elif fam == "beal-heller":
        spec = builders.build_beal_heller(_sizes(args.I))
    elif fam == "markov-dyck":
        spec = builders.build_markov_dyck(_graph(args.g))
    elif fam == "combined":
        spec = builders.build_combined(_graph(args.g), _graph(args.h))
    else:
        spec = builders.FAMILIES[fam]()
    return _dump(spec_to_json(spec)), 0


def cmd_dot(args):
    spec = _spec(args)
    if args.what == "y":
        return export_dot(build_y_presentation(spec), "Y"), 0
    if args.what == "summary":
        edges, labels = [], {}
        for u, moves in sorted(summary_graph(spec).items()):
            for label, targets in sorted(moves.items()):
                for v in sorted(targets):
                    eid = f"{u}|{label}|{v}"
                    edges.append(Edge(eid, u, v))
                    labels[eid] = label
        g = DirectedGraph(frozenset(spec.all_controls), tuple(edges))
        return export_dot(LabelledGraph(g, frozenset(labels.values()), labels), "summary"), 0
    states, trans = explicit_graph(spec, args.depth)
    edges, labels = [], {}
    for s, sym, t in trans:
        eid = f"{s}|{sym}"
        edges.append(Edge(eid, str(s), str(t)))
        labels[eid] = sym
    g = DirectedGraph(frozenset(str(s) for s in states), tuple(edges))
    return export_dot(LabelledGraph(g, spec.alphabet, labels), "automaton"), 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shannonpda", description="Pushdown Shannon graphs: languages, hypotheses, separation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-f", "--file", required=True, help="spec JSON file, or - for stdin")
        sp.set_defaults(func=fn)
        return sp

    with_file("validate", cmd_validate, "check conditions (a), (b), (c) and (h)")
    for name, fn in (("words", cmd_words), ("count", cmd_count)):
        with_file(name, fn, f"{name} of length <= N").add_argument("-n", type=int, required=True)
    with_file("member", cmd_member, "is a word admissible").add_argument("-w", required=True, help="comma-separated symbols")
    with_file("connected", cmd_connected, "strong connectedness")
    with_file("hypotheses", cmd_hypotheses, "visibility constants and hypotheses").add_argument("--cap", type=int, default=16)
    sp = with_file("separated", cmd_separated, "forward separation verdict")
    sp.add_argument("--cap", type=int, default=16)
    sp.add_argument("--brute", type=int, metavar="L", help="cross-check with brute force up to length L")
    sp.add_argument("--depth", type=int, default=4, help="stack depth of the brute-force sample")
    with_file("recode", cmd_recode, "resolving radius and tagged spec").add_argument("--cap", type=int, default=8)
    with_file("export-ftd", cmd_export_ftd, "finite-type-Dyck export")
    with_file("semigroup", cmd_semigroup, "reduce a word in the graph inverse semigroup").add_argument("-w", required=True)
    sp = with_file("dot", cmd_dot, "DOT rendering")
    sp.add_argument("--what", choices=["y", "summary", "automaton"], default="y")
    sp.add_argument("--depth", type=int, default=2)

    ex = sub.add_parser("example", help="emit a built-in spec")
    ex.set_defaults(func=cmd_example)
    ex.add_argument("family", choices=sorted(builders.FAMILIES))
    ex.add_argument("--n", type=int, default=2, help="dyck: number of bracket pairs")
    ex.add_argument("--m", type=int, default=2, help="product: number of stack loops")
    ex.add_argument("-g", help="graph JSON (default: golden mean)")
    ex.add_argument("--h", help="combined: control graph JSON (default: golden mean)")
    ex.add_argument("--I", action="append", metavar="K=N", help="beal-heller block sizes")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, code = args.func(args)
    except UsageError as exc:
        sys.stderr.write(json.dumps({"error": "usage", "message": str(exc)}, sort_keys=True) + "\n")
        return 2
    except (SpecError, GraphError, ConstantsNotFound, NotExportable, ValueError, OSError) as exc:
        kind = type(exc).__name__
        sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}, sort_keys=True) + "\n")
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
