"""Replay every bundled reference value and report pass/fail per claim.

Two scopes: ``quick`` covers everything that runs in seconds to a couple of
minutes; ``full`` adds the two 2^36 sweeps and the (3, 9) exhaustive search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .addcode import (
    TypeClass,
    classify_type,
    code_from_graph,
    is_symplectic_self_dual,
    low_support_min_weight,
    min_distance,
    weight_distribution,
)
from .fixtures import FixtureSet, default_fixtures
from .invariants import graph_invariants
from .metacirculant import validate_spec, valence
from .quantum import derive_table78, from_self_dual_code
from .search import SearchTask, class_by_enumerator, exhaustive_search

PASS, FAIL, DISCREPANCY, TIMEOUT = "pass", "FAIL", "documented discrepancy", "timeout"


@dataclass(frozen=True)
class Check:
    claim: str
    status: str
    detail: str = ""
    source: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def _check(claim: str, ok: bool, detail: str = "", source: str = "") -> Check:
    return Check(claim, PASS if ok else FAIL, detail, source)


@dataclass
class VerifyReport:
    scope: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.failed]

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "ok": self.ok,
            "seconds": round(self.seconds, 2),
            "checks": [c.__dict__ for c in self.checks],
        }

    def format(self) -> str:
        width = max((len(c.claim) for c in self.checks), default=0)
        lines = []
        for c in self.checks:
            line = f"[{c.status:>4}] {c.claim:<{width}}"
            if c.source:
                line += f"  ({c.source})"
            if c.detail:
                line += f"  {c.detail}"
            lines.append(line)
        n_fail = len(self.failures())
        lines.append(f"{len(self.checks)} checks, {n_fail} failed, {self.seconds:.1f}s")
        return "\n".join(lines)


def _edge_diff(built: set, table: set, limit: int = 10) -> str:
    missing = sorted(table - built)
    extra = sorted(built - table)
    parts = []
    if missing:
        parts.append(f"in table only: {missing[:limit]}" + (" ..." if len(missing) > limit else ""))
    if extra:
        parts.append(f"built only: {extra[:limit]}" + (" ..." if len(extra) > limit else ""))
    return "; ".join(parts)


def check_edges(fx: FixtureSet, name: str) -> Check:
    p = fx.preset(name)
    built = set(p.graph().edges())
    table = fx.edges(name)
    ok = built == table
    detail = f"{len(built)} edges" if ok else _edge_diff(built, table)
    return _check(f"{name}: edge set equals table", ok, detail, p.edges_file or "")


def check_fixture_integrity(fx: FixtureSet) -> list[Check]:
    bad = fx.checksum_mismatches()
    out = [_check("fixture checksums", not bad, ", ".join(bad) if bad else "", "SHA256SUMS")]
    for name, p in fx.presets.items():
        res = validate_spec(p.spec)
        out.append(_check(f"{name}: spec valid", res.ok, "; ".join(res.violations), "presets.json"))
    return out


def check_petersen(fx: FixtureSet) -> list[Check]:
    p = fx.preset("petersen")
    g = p.graph()
    inv = graph_invariants(g, budget=10_000)
    return [
        check_edges(fx, "petersen"),
        _check(
            "petersen: 3-regular, girth 5, |Aut| 120",
            (inv.valence, inv.girth, inv.automorphism_order) == (3, 5, 120),
            f"valence {inv.valence}, girth {inv.girth}, |Aut| {inv.automorphism_order}",
        ),
    ]


def _distribution_check(fx: FixtureSet, key: str, computed) -> Check:
    table = fx.weights(key)
    ok = computed == table
    detail = "" if ok else _wd_diff(computed, table)
    return _check(f"{key}: weight distribution equals table", ok, detail, f"weights.json:{key}")


def _wd_diff(computed, table) -> str:
    diffs = [
        f"wt {w}: computed {computed[w]} vs table {table[w]}"
        for w in range(table.length + 1)
        if computed[w] != table[w]
    ]
    return "; ".join(diffs[:8])


def check_code(fx: FixtureSet, name: str, weights_key: str | None) -> list[Check]:
    """Exact distance, Type, self-duality and (optionally) the full enumerator."""
    p = fx.preset(name)
    code = code_from_graph(p.graph())
    out = [_check(f"{name}: symplectic self-dual", is_symplectic_self_dual(code))]
    rep = classify_type(p.spec, code)
    out.append(
        _check(
            f"{name}: {p.type}",
            rep.type.value == p.type,
            f"Delta_S={rep.delta_s} -> {rep.type.value}",
            "presets.json",
        )
    )
    if weights_key is not None:
        t = time.perf_counter()
        wd = weight_distribution(code)
        secs = time.perf_counter() - t
        out.append(_distribution_check(fx, weights_key, wd))
        for w, note in fx.weight_anomalies(weights_key).items():
            out.append(
                Check(
                    f"{weights_key}: printed cell at weight {w}",
                    DISCREPANCY if wd[w] == int(note["stored"]) else FAIL,
                    f"printed {note['printed']!r}, computed {wd[w]}",
                    f"weights.json:{weights_key}",
                )
            )
        if rep.type is TypeClass.TYPE_II:
            out.append(_check(f"{name}: Type II iff all weights even", wd.all_even))
        out.append(Check(f"{name}: sweep time", PASS, f"{secs:.1f}s"))
    res = min_distance(code)
    out.append(_check(f"{name}: d = {p.d}", res.weight == p.d, f"computed {res.weight}", "presets.json"))
    q = from_self_dual_code(code, res.weight, verified=True, name=name)
    out.append(_check(f"{name}: [[{code.length},0,{p.d}]]", q.triple == (code.length, 0, p.d), str(q)))
    return out


def check_g27(fx: FixtureSet) -> list[Check]:
    out = check_code(fx, "g27_1", "c27_1") + check_code(fx, "g27_2", "c27_2")
    out += [check_edges(fx, "g27_1"), check_edges(fx, "g27_2")]
    a, b = fx.weights("c27_1"), fx.weights("c27_2")
    same = all(a[w] == b[w] for w in range(0, 28, 2))
    out.append(_check("c27_1 and c27_2 agree on even weights", same, source="weights.json"))
    return out


def check_g36_structure(fx: FixtureSet) -> list[Check]:
    out = []
    for name in ("g36_1", "g36_2"):
        p = fx.preset(name)
        code = code_from_graph(p.graph())
        rep = classify_type(p.spec, code)
        out.append(check_edges(fx, name))
        out.append(_check(f"{name}: symplectic self-dual", is_symplectic_self_dual(code)))
        out.append(
            _check(
                f"{name}: TypeII with Delta_S 13",
                (rep.type.value, rep.delta_s) == ("TypeII", 13),
                f"{rep.type.value}, Delta_S={rep.delta_s}",
            )
        )
    return out


def check_sweep36(fx: FixtureSet) -> list[Check]:
    return check_code(fx, "g36_1", "c36_1") + check_code(fx, "g36_2", "c36_2")


def check_large_graph(fx: FixtureSet, name: str, t: int = 3) -> list[Check]:
    p = fx.preset(name)
    g = p.graph()
    code = code_from_graph(g)
    rep = classify_type(p.spec, code)
    row = fx.table6()[name]
    bound = low_support_min_weight(code, t)
    return [
        check_edges(fx, name),
        _check(f"{name}: symplectic self-dual, rank {code.length}", is_symplectic_self_dual(code)),
        _check(f"{name}: {p.type}", rep.type.value == p.type, f"Delta_S={rep.delta_s}", "presets.json"),
        _check(
            f"{name}: valence formula {row['valence']}",
            valence(p.spec) == row["valence"] and set(g.degrees().tolist()) == {row["valence"]},
            f"formula {valence(p.spec)}",
            "table6.json",
        ),
        _check(
            f"{name}: no codeword of weight < {p.d} from <= {t} generators",
            bound >= p.d,
            f"low-support bound {bound}",
            "presets.json",
        ),
    ]


def check_table6(fx: FixtureSet, *, aut_budget: int = 200_000) -> list[Check]:
    out = []
    for name, row in fx.table6().items():
        p = fx.preset(name)
        inv = graph_invariants(p.graph(), budget=aut_budget)
        got = (inv.valence, inv.diameter, inv.girth, inv.clique_number)
        want = (row["valence"], row["diameter"], row["girth"], row["clique"])
        out.append(
            _check(
                f"{name}: valence/diameter/girth/clique {want}",
                got == want,
                f"computed {got}",
                "table6.json",
            )
        )
        if inv.automorphism_order is None:
            out.append(Check(f"{name}: |Aut| {row['aut']}", TIMEOUT, f"budget {aut_budget}", "table6.json"))
        else:
            out.append(
                _check(
                    f"{name}: |Aut| {row['aut']}",
                    inv.automorphism_order == row["aut"],
                    f"computed {inv.automorphism_order}",
                    "table6.json",
                )
            )
    return out


def check_table7(fx: FixtureSet) -> list[Check]:
    seed, rows = fx.table7()
    derived = derive_table78(seed)
    out = []
    for (name, want, rule), got in zip(rows, derived):
        out.append(_check(f"{name}: {want}", got.triple == want.triple, f"{rule}; derived {got}", "table7.json"))
    out.append(_check("table7: nine rows", len(derived) == len(rows) == 9))
    return out


def check_exhaustive27(fx: FixtureSet, workers: int = 1) -> list[Check]:
    task = SearchTask(3, 9, d_target=9)
    hits = exhaustive_search(task, workers=workers)
    classes = class_by_enumerator(hits)
    sizes = sorted(len(c) for c in classes)
    out = [
        _check("(3,9) search: 216 hits with d >= 9", len(hits) == 216, f"{len(hits)} hits"),
        _check("(3,9) search: 2 enumerator classes of 108", sizes == [108, 108], f"class sizes {sizes}"),
    ]
    fams = fx.families()
    by_key = {h.spec.key(): h.class_key for h in hits}
    for fam in ("f27_1", "f27_2"):
        keys = {s.key() for s in fams[fam]}
        found = keys <= by_key.keys()
        one_class = len({by_key.get(k) for k in keys}) == 1
        out.append(
            _check(
                f"{fam}: listed specs are hits in a single class",
                found and one_class and len(keys) == 108,
                f"{len(keys)} specs",
                "families.json",
            )
        )
    return out


def check_families(fx: FixtureSet) -> list[Check]:
    out = []
    for fam, specs in fx.families().items():
        bad = [str(s) for s in specs if not validate_spec(s).ok]
        out.append(_check(f"{fam}: {len(specs)} listed specs valid", not bad, "; ".join(bad[:3]), "families.json"))
    return out


def _quick(fx: FixtureSet) -> Iterable[Callable[[], list[Check]]]:
    yield lambda: check_fixture_integrity(fx)
    yield lambda: check_petersen(fx)
    yield lambda: check_code(fx, "g12", "c12")
    yield lambda: check_g27(fx)
    yield lambda: check_g36_structure(fx)
    for name in ("g78", "g90", "g91", "g93", "g96"):
        yield lambda name=name: check_large_graph(fx, name)
    yield lambda: check_table6(fx)
    yield lambda: check_table7(fx)
    yield lambda: check_families(fx)


def _full(fx: FixtureSet, workers: int) -> Iterable[Callable[[], list[Check]]]:
    yield from _quick(fx)
    yield lambda: check_sweep36(fx)
    yield lambda: check_exhaustive27(fx, workers)


def verify(
    scope: str = "quick",
    fixtures: FixtureSet | None = None,
    *,
    workers: int = 1,
    progress: Callable[[Check], None] | None = None,
) -> VerifyReport:
    if scope not in ("quick", "full"):
        raise ValueError(f"unknown scope {scope!r}")
    fx = fixtures or default_fixtures()
    report = VerifyReport(scope)
    t0 = time.perf_counter()
    groups = _quick(fx) if scope == "quick" else _full(fx, workers)
    for group in groups:
        try:
            checks = group()
        except Exception as exc:  # a crash in one group must not hide the others
            checks = [Check("check group raised", FAIL, f"{type(exc).__name__}: {exc}")]
        for c in checks:
            report.checks.append(c)
            if progress:
                progress(c)
    report.seconds = time.perf_counter() - t0
    return report


__all__ = [
    "Check",
    "DISCREPANCY",
    "FAIL",
    "PASS",
    "TIMEOUT",
    "VerifyReport",
    "check_code",
    "check_edges",
    "check_exhaustive27",
    "check_large_graph",
    "check_sweep36",
    "check_table6",
    "check_table7",
    "verify",
]
