"""Run every lemma and theorem check over a corpus of groups."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .config import CONVENTION, Caps
from .coset_monoid import CosetMonoid, check_dictionary
from .group_core import CapExceeded, FiniteGroup, load_group, parse_group, preset
from .inverse_monoid import FiniteInverseMonoid
from .lemmas import CheckResult, failed, passed, run_lemma_checks, skipped
from .nilpotency import (
    StepOracle,
    aabtrans_check,
    central_chains,
    fasec_check,
    g_lengths,
    gnilu_check,
    niliff_check,
    nilsubc_check,
    nseq_check,
    nsl1eq_check,
    sei_check,
    snchr_check,
    subcanti_check,
)
from .subgroup_lattice import enumerate_subgroups

SCHEMA = 1

DEFAULT_CORPUS = tuple(f"C{n}" for n in range(1, 13)) + (
    "V4", "S3", "D4", "D5", "D6", "Q8", "A4", "S4", "C2xC4", "C2xC2xC2", "S3xC2",
)

COLUMNS = (
    "dictionary",
    "fgeq-i", "fgeq-ii", "fgeq-iii",
    "thecon-i", "thecon-ii", "thecon-iii", "thecon-iv", "thecon-v",
    "phie", "iso2", "iso2pe-i", "iso2pe-ii", "subcs", "schre", "jorh", "jorhex",
    "nseq", "sei", "nsl1eq", "gnilu", "fasec", "niliff", "snchr",
    "aabtrans", "subcanti", "nilsubc",
)

NOTES = {
    "nilsubc": "parts (i)-(iii) only; E-reflexivity is not checked",
    "problems": "problems 2 and 5 are not finitely probeable",
}


def _from_pair(ok: bool, witness, n: int = 1) -> CheckResult:
    return passed(n) if ok else failed(n, witness)


def nilpotency_checks(S: FiniteInverseMonoid, G: Optional[FiniteGroup], caps: Caps = Caps()) -> dict[str, CheckResult]:
    """Checks relating G-nilpotent/G-solvable structure to the unit group."""
    out: dict[str, CheckResult] = {}
    oracle = StepOracle(S)
    rep = g_lengths(S, oracle)
    dual = S.is_dual_isomorphism()[0]

    chains, truncated = central_chains(S, cap=caps.central_chains)
    bad = next((w for c in chains for ok, w in [nseq_check(S, c, oracle)] if not ok), None)
    out["nseq"] = failed(len(chains), bad) if bad else passed(len(chains), truncated=truncated)

    if rep.g_nilpotent:
        ok, w, n = sei_check(S, chains, oracle)
        out["sei"] = _from_pair(ok, w, n)
    else:
        out["sei"] = skipped("hypothesis unmet: not G-nilpotent")

    out["nsl1eq"] = _from_pair(*nsl1eq_check(rep))

    if rep.g_nilpotent or rep.g_solvable:
        out["gnilu"] = _from_pair(*gnilu_check(S, rep), n=len(S.E))
    else:
        out["gnilu"] = skipped("hypothesis unmet: neither G-nilpotent nor G-solvable")

    if S.is_factorizable:
        ok, w, n = fasec_check(S)
        out["fasec"] = _from_pair(ok, w, n)
    else:
        out["fasec"] = skipped("hypothesis unmet: not factorizable")

    out["niliff"] = _from_pair(*niliff_check(S, rep)) if dual else skipped("hypothesis unmet: theta is not a dual isomorphism")

    if G is None:
        out["snchr"] = skipped("no underlying group")
    else:
        out["snchr"] = _from_pair(*snchr_check(G, S, rep))

    ok, w, n = aabtrans_check(S)
    out["aabtrans"] = _from_pair(ok, w, n)
    ok, w, n = subcanti_check(S)
    out["subcanti"] = _from_pair(ok, w, n)

    if not rep.g_nilpotent:
        out["nilsubc"] = skipped("hypothesis unmet: not G-nilpotent")
    elif not dual:
        out["nilsubc"] = skipped("hypothesis unmet: theta is not a dual isomorphism")
    else:
        out["nilsubc"] = _from_pair(*nilsubc_check(S, rep), n=len(S.E))
    return out


def check_monoid(S: FiniteInverseMonoid, G: Optional[FiniteGroup] = None, caps: Caps = Caps()) -> dict[str, CheckResult]:
    """Every lemma and theorem column except the coset dictionary."""
    cells = run_lemma_checks(S, caps)
    cells.update(nilpotency_checks(S, G, caps))
    return cells


def dictionary_cell(K: CosetMonoid) -> CheckResult:
    rep = check_dictionary(K)
    if rep["ok"]:
        return passed(len(rep["checks"]))
    return failed(len(rep["checks"]), rep["witnesses"])


@dataclass
class Row:
    group: str
    status: str  # ok | error | skipped
    order: Optional[int] = None
    subgroups: Optional[int] = None
    monoid_size: Optional[int] = None
    error: Optional[str] = None
    cells: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        return {k: v for k, v in d.items() if v is not None}


def verify_group(name: str, G: FiniteGroup, caps: Caps = Caps()) -> Row:
    if G.order > caps.max_order:
        reason = f"cap: group order {G.order} exceeds {caps.max_order}"
        return Row(name, "skipped", order=G.order, error=reason,
                   cells={c: skipped(reason).as_dict() for c in COLUMNS})
    lat = enumerate_subgroups(G)
    K = CosetMonoid(lat)
    cells = {"dictionary": dictionary_cell(K)}
    cells.update(check_monoid(K.monoid, G, caps))
    return Row(name, "ok", order=G.order, subgroups=len(lat), monoid_size=K.monoid.size,
               cells={c: cells[c].as_dict() for c in COLUMNS})


def _verify_entry(entry: tuple[str, str], caps: Caps) -> Row:
    name, source = entry
    try:
        G = _load_entry(source)
        return verify_group(name, G, caps)
    except (ValueError, OSError, CapExceeded) as err:
        return Row(name, "error", error=f"{type(err).__name__}: {err}")


def _load_entry(source: str) -> FiniteGroup:
    if source.startswith("file:"):
        path = Path(source[5:])
        return parse_group(path.read_text(encoding="utf-8"), name=path.stem)
    if source.startswith("preset:"):
        return preset(source[7:])
    return load_group(source)


def corpus_entries(names=None, directory: Optional[str] = None) -> list[tuple[str, str]]:
    """(row name, source) pairs; a directory contributes one row per file."""
    if directory is not None:
        files = sorted(p for p in Path(directory).iterdir() if p.is_file())
        return [(p.stem, f"file:{p}") for p in files]
    names = DEFAULT_CORPUS if names is None else names
    return [(n, f"preset:{n}") for n in names]


def run_verify(entries: list[tuple[str, str]], caps: Caps = Caps(), jobs: int = 1) -> dict:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_verify_entry, entries, [caps] * len(entries)))
    else:
        rows = [_verify_entry(e, caps) for e in entries]
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in rows:
        for cell in r.cells.values():
            counts[cell["status"]] += 1
    counts["errors"] = sum(r.status == "error" for r in rows)
    return {
        "schema": SCHEMA,
        "convention": CONVENTION,
        "caps": asdict(caps),
        "columns": list(COLUMNS),
        "notes": NOTES,
        "rows": [r.as_dict() for r in rows],
        "summary": counts,
    }


def matrix_ok(matrix: dict) -> bool:
    s = matrix["summary"]
    return s["fail"] == 0 and s["errors"] == 0


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def format_matrix(matrix: dict) -> str:
    """Compact text table: one line per group, one character per column."""
    mark = {"pass": ".", "fail": "F", "skipped": "s"}
    lines = [f"# {matrix['convention']}", "# columns: " + " ".join(matrix["columns"])]
    for row in matrix["rows"]:
        if row["status"] == "error":
            lines.append(f"{row['group']:>10}  ERROR {row['error']}")
            continue
        cells = "".join(mark[row["cells"][c]["status"]] for c in matrix["columns"])
        lines.append(f"{row['group']:>10}  {cells}")
    s = matrix["summary"]
    lines.append(f"pass={s['pass']} fail={s['fail']} skipped={s['skipped']} errors={s['errors']}")
    return "\n".join(lines) + "\n"
