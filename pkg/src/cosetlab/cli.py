"""Command-line interface: ``cosetlab <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import conjectures as cj
from .config import CONVENTION, Caps, hard_order_cap
from .coset_monoid import CosetMonoid, check_dictionary, emit_idempotent_dot
from .group_core import CapExceeded, FiniteGroup, ParseError, load_group, preset
from .inverse_monoid import (
    FiniteInverseMonoid,
    MonoidAxiomError,
    format_imonoid,
    parse_imonoid,
)
from .lemmas import _jsonable
from .nilpotency import g_lengths
from .series import (
    FactorCatalog,
    IdempotentSeries,
    chain_condition_report,
    composition_series,
    defect,
    factors,
    is_series,
    refine_chain,
    series_isomorphic,
    shortest_subcentral_series,
)
from .subgroup_lattice import emit_lattice_dot, enumerate_subgroups
from .verify import DEFAULT_CORPUS, corpus_entries, dumps, format_matrix, matrix_ok, run_verify


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers

def _order_cap(args, default: Optional[int] = None) -> int:
    hard = hard_order_cap()
    cap = args.max_order if args.max_order is not None else (default or hard)
    if cap > hard:
        raise CapExceeded(f"--max-order {cap} exceeds the hard cap {hard} (set COSETLAB_CAP_ORDER to raise it)")
    return cap


def _group(args, default_cap: Optional[int] = None) -> FiniteGroup:
    if args.group and args.preset:
        raise UsageError("give only one of --group and --preset")
    if args.preset:
        G = preset(args.preset)
    elif args.group:
        G = load_group(args.group)
    else:
        raise UsageError("a group is required (--group or --preset)")
    cap = _order_cap(args, default_cap)
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
    return G


def _coset_monoid(G: FiniteGroup) -> CosetMonoid:
    return CosetMonoid(enumerate_subgroups(G))


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _header(G: Optional[FiniteGroup] = None) -> dict:
    out = {"schema": 1, "convention": CONVENTION}
    if G is not None:
        out["group"] = G.name
        out["order"] = G.order
    return out


# ------------------------------------------------------------------ subcommands

def cmd_analyze(args) -> int:
    G = _group(args)
    lat = enumerate_subgroups(G)
    K = CosetMonoid(lat)
    S = K.monoid
    dual, why = S.is_dual_isomorphism()
    rep = g_lengths(S)
    report = _header(G) | {
        "subgroups": len(lat),
        "normal_subgroups": int(lat.normal.sum()),
        "monoid_size": S.size,
        "idempotents": len(S.E),
        "central_idempotents": int(sum(S.central[e] for e in S.E)),
        "dual_isomorphism": dual,
        "dictionary": check_dictionary(K),
        "classification": rep.as_dict(),
        "chain_conditions": chain_condition_report(S),
        "subnormal_defects": {str(h): lat.subnormal_defect(h) for h in range(len(lat))},
    }
    if args.json:
        _emit(args, dumps(_jsonable(report)))
        return 0
    c = rep
    lines = [
        f"# {CONVENTION}",
        f"group {G.name}: order {G.order}, {len(lat)} subgroups ({report['normal_subgroups']} normal)",
        f"K({G.name}): {S.size} elements, {len(S.E)} idempotents, {report['central_idempotents']} central",
        f"theta dual isomorphism: {dual}" + ("" if dual else f" ({why})"),
        f"dictionary: {'ok' if report['dictionary']['ok'] else 'FAILED'}",
        f"G-nilpotent length: {c.g_nilpotent_length}  (nilpotency class {c.unit_nilpotency_class})",
        f"G-solvable length:  {c.g_solvable_length}  (derived length {c.unit_derived_length})",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_coset_monoid(args) -> int:
    G = _group(args)
    K = _coset_monoid(G)
    text = format_imonoid(K.monoid)
    sidecar = _header(G) | {
        "identity": K.monoid.identity,
        "zero": K.monoid.zero,
        "subgroups": [sorted(m) for m in K.lattice.members],
        "element_labels": list(G.labels),
        "elements": K.element_sidecar(),
    }
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        side = args.sidecar or args.out + ".json"
        Path(side).write_text(dumps(sidecar), encoding="utf-8")
    else:
        sys.stdout.write(text)
        if args.sidecar:
            Path(args.sidecar).write_text(dumps(sidecar), encoding="utf-8")
    return 0


def _monoid_from_args(args) -> tuple[FiniteInverseMonoid, Optional[FiniteGroup]]:
    if getattr(args, "monoid", None):
        path = Path(args.monoid)
        return parse_imonoid(path.read_text(encoding="utf-8"), name=path.stem), None
    G = _group(args)
    return _coset_monoid(G).monoid, G


def _series_json(S: FiniteInverseMonoid, ser: IdempotentSeries, catalog: FactorCatalog) -> dict:
    return {
        "chain": list(ser.chain),
        "collapsed": list(ser.collapsed()),
        "length": ser.length,
        "factors": [
            {"e": d.e, "f": d.f, "size": d.size, "unit_order": d.unit_order,
             "iso_class": d.iso_class, "fingerprint": _jsonable(d.fingerprint)}
            for d in factors(S, ser, catalog)
        ],
    }


def cmd_series(args) -> int:
    S, G = _monoid_from_args(args)
    catalog = FactorCatalog(S)
    out = _header(G) | {"monoid": S.name, "kind": args.kind, "dual_isomorphism": S.is_dual_isomorphism()[0]}
    if args.defect is not None:
        e = args.defect
        if not (0 <= e < S.size and S.is_idempotent[e]):
            raise UsageError(f"{e} is not an idempotent index")
        path = shortest_subcentral_series(S, e)
        out["defect"] = {"idempotent": e, "defect": defect(S, e), "series": list(path) if path else None}
    if args.refine is not None:
        chain = [int(x) for x in args.refine.split(",") if x.strip()]
        ser = refine_chain(S, chain)
        ok, why = is_series(S, ser.chain, "subcentral", full=True)
        out["refinement"] = _series_json(S, ser, catalog) | {"input": chain, "valid": ok}
    if args.composition or (args.defect is None and args.refine is None):
        series, truncated = composition_series(S, args.kind, cap=args.cap)
        out["composition"] = {
            "count": len(series),
            "truncated": truncated,
            "series": [_series_json(S, s, catalog) for s in series],
        }
        if series:
            out["composition"]["matchings_to_first"] = [
                series_isomorphic(series[0], s, catalog)[1] for s in series
            ]
    _emit(args, dumps(_jsonable(out)))
    return 0


def cmd_classify(args) -> int:
    S, G = _monoid_from_args(args)
    rep = g_lengths(S)
    _emit(args, dumps(_jsonable(_header(G) | {"classification": rep.as_dict()})))
    return 0


def _caps(args, default_order: int = 24) -> Caps:
    kw = {"max_order": _order_cap(args, default_order)}
    if getattr(args, "max_tuples", None) is not None:
        kw["max_tuples"] = args.max_tuples
    return Caps(**kw)


def cmd_verify(args) -> int:
    caps = _caps(args)
    if args.corpus:
        entries = corpus_entries(directory=args.corpus)
    elif args.group or args.preset:
        names = [args.preset] if args.preset else [args.group]
        entries = [(n, n) for n in names]
    else:
        entries = corpus_entries(DEFAULT_CORPUS)
    matrix = run_verify(entries, caps, jobs=args.jobs)
    _emit(args, dumps(matrix) if args.json else format_matrix(matrix))
    return 0 if matrix_ok(matrix) else 1


def _probe_one(problem: str, S: FiniteInverseMonoid, args, caps: Caps) -> cj.ProbeResult:
    if problem == "1":
        return cj.probe_problem1(S)
    if problem == "3":
        return cj.probe_problem3(S, k=args.k, caps=caps)
    if problem == "4a":
        return cj.probe_problem4a(S)
    return cj.probe_problem6(S)


def _limit(d: dict, limit: Optional[int]) -> dict:
    if limit is not None and len(d["witnesses"]) > limit:
        d["witnesses_total"] = len(d["witnesses"])
        d["witnesses"] = d["witnesses"][:limit]
    return d


def cmd_probe(args) -> int:
    if args.problem in ("2", "5"):
        _emit(args, dumps({"schema": 1, "problem": args.problem, "status": "not finitely probeable",
                           "reason": cj.NOT_PROBEABLE[args.problem]}))
        return 0
    caps = _caps(args)
    if args.group or args.preset:
        targets = [(None, _group(args, caps.max_order))]
    else:
        entries = corpus_entries(directory=args.corpus) if args.corpus else corpus_entries(DEFAULT_CORPUS)
        targets = []
        for name, source in entries:
            src = source.split(":", 1)[1]
            try:
                G = load_group(src)
            except (ValueError, OSError) as err:
                targets.append((f"{name}: {err}", None))
                continue
            targets.append((None, G))
    results = []
    for err, G in targets:
        if G is None:
            results.append({"error": err})
            continue
        if G.order > caps.max_order:
            results.append(cj.ProbeResult(args.problem, G.name, skipped=f"cap: group order {G.order} exceeds {caps.max_order}").as_dict())
            continue
        S = _coset_monoid(G).monoid
        results.append(_limit(_probe_one(args.problem, S, args, caps).as_dict(), args.witness_limit))
    out = {"schema": 1, "convention": CONVENTION, "problem": args.problem, "results": results,
           "not_probeable": cj.NOT_PROBEABLE}
    if args.problem == "4a":
        vals = [r["summary"]["max_difference"] for r in results
                if r.get("skipped") is None and "summary" in r and r["summary"].get("max_difference") is not None]
        out["empirical_k"] = max(vals) if vals else None
    _emit(args, dumps(_jsonable(out)))
    return 0


def cmd_dot(args) -> int:
    G = _group(args)
    lat = enumerate_subgroups(G)
    if args.target == "subgroup-lattice":
        _emit(args, emit_lattice_dot(lat))
    else:
        _emit(args, emit_idempotent_dot(CosetMonoid(lat)))
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group spec: preset name, inline spec, or spec file")
    common.add_argument("--preset", help="preset group name, e.g. S4 or C2xC4")
    common.add_argument("--corpus", help="directory of group spec files")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--max-order", type=int, dest="max_order", help="group order cap")
    common.add_argument("--json", action="store_true", help="JSON output where text is the default")

    p = argparse.ArgumentParser(prog="cosetlab", description="Coset monoids, idempotent series and G-nilpotency checks.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common], help="summary of a group and its coset monoid")

    cm = sub.add_parser("coset-monoid", parents=[common], help="emit K(G) as an imonoid table")
    cm.add_argument("--sidecar", help="path of the JSON sidecar (default: <out>.json)")

    se = sub.add_parser("series", parents=[common], help="idempotent series reports")
    se.add_argument("--monoid", help="imonoid table file instead of a group")
    se.add_argument("--kind", choices=["subcentral", "central"], default="subcentral")
    se.add_argument("--composition", action="store_true", help="enumerate composition series")
    se.add_argument("--refine", help="comma-separated subcentral idempotents to refine")
    se.add_argument("--defect", type=int, help="idempotent index whose defect to report")
    se.add_argument("--cap", type=int, default=Caps().series, help="composition series cap")

    cl = sub.add_parser("classify", parents=[common], help="G-nilpotent/G-solvable classification")
    cl.add_argument("--monoid", help="imonoid table file instead of a group")

    ve = sub.add_parser("verify", parents=[common], help="run every check over a corpus")
    ve.add_argument("--jobs", type=int, default=1)

    pr = sub.add_parser("probe", parents=[common], help="finite probes of the open problems")
    pr.add_argument("--problem", required=True, choices=["1", "2", "3", "4a", "5", "6"])
    pr.add_argument("--k", type=int, choices=[5, 7], default=7)
    pr.add_argument("--max-tuples", type=int, dest="max_tuples")
    pr.add_argument("--witness-limit", type=int, dest="witness_limit", default=None)

    do = sub.add_parser("dot", parents=[common], help="Hasse diagram in DOT")
    do.add_argument("target", choices=["subgroup-lattice", "idempotent-order"])
    return p


COMMANDS = {
    "analyze": cmd_analyze,
    "coset-monoid": cmd_coset_monoid,
    "series": cmd_series,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "probe": cmd_probe,
    "dot": cmd_dot,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 2
    except (UsageError, CapExceeded, MonoidAxiomError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
