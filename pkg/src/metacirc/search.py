"""Exhaustive and randomized searches over metacirculant parameter space."""

from __future__ import annotations

import itertools
import json
import logging
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .addcode import (
    WeightDistribution,
    code_from_graph,
    delta_s,
    low_support_min_weight,
    min_distance,
    sweep_budget,
    truncated_weight_counts,
    weight_distribution,
)
from .metacirculant import MetacirculantSpec, build_graph, valence

log = logging.getLogger(__name__)


def units(n: int) -> list[int]:
    return [a for a in range(1, n) if math.gcd(a, n) == 1] if n > 1 else [0]


def _orbits(n: int, mult: int, skip_zero: bool = False) -> list[tuple[int, ...]]:
    """Orbits of x -> mult*x on Z_n, each sorted, listed by least element."""
    seen = set()
    out = []
    for x in range(n):
        if x in seen or (skip_zero and x == 0):
            continue
        orbit = []
        y = x
        while y not in orbit:
            orbit.append(y)
            y = y * mult % n
        seen.update(orbit)
        out.append(tuple(sorted(orbit)))
    return out


def s_set_orbits(m: int, n: int, alpha: int) -> list[list[tuple[int, ...]]]:
    """For each S_k the orbits whose unions are exactly the admissible sets.

    S_0: +-pairs without 0. S_k, k < m/2: orbits of alpha^m. S_{m/2} (m even):
    orbits of -alpha^(m/2), whose square is alpha^m.
    """
    out = [_orbits(n, n - 1 if n > 1 else 0, skip_zero=True)]
    for k in range(1, m // 2 + 1):
        if m % 2 == 0 and k == m // 2:
            gen = (-pow(alpha, m // 2, n)) % n
        else:
            gen = pow(alpha, m, n)
        out.append(_orbits(n, gen))
    return out


def _unions(orbits: list[tuple[int, ...]]) -> list[frozenset[int]]:
    choices = []
    for mask in range(1 << len(orbits)):
        choices.append(frozenset(x for i, o in enumerate(orbits) if mask >> i & 1 for x in o))
    return sorted(choices, key=lambda s: sorted(s))


def count_specs(m: int, n: int, alpha: int) -> int:
    return math.prod(2 ** len(o) for o in s_set_orbits(m, n, alpha))


def enumerate_specs(m: int, n: int, alpha: int) -> Iterator[MetacirculantSpec]:
    """Every valid S-set tuple once, lexicographic in (S_0, S_1, ...)."""
    if math.gcd(alpha, n) != 1:
        raise ValueError(f"alpha={alpha} is not a unit mod {n}")
    per_set = [_unions(o) for o in s_set_orbits(m, n, alpha)]
    for sets in itertools.product(*per_set):
        yield MetacirculantSpec(m, n, alpha % n, tuple(sets))


def sample_spec(m: int, n: int, alpha: int, rng: np.random.Generator) -> MetacirculantSpec:
    """Uniform over valid specs: each orbit included independently with p = 1/2."""
    sets = []
    for orbits in s_set_orbits(m, n, alpha):
        keep = rng.integers(0, 2, size=len(orbits))
        sets.append(frozenset(x for o, b in zip(orbits, keep) if b for x in o))
    return MetacirculantSpec(m, n, alpha % n, tuple(sets))


@dataclass(frozen=True)
class SearchTask:
    m: int
    n: int
    d_target: int
    alphas: tuple[int, ...] = ()  # empty: every unit of Z_n
    mode: str = "exhaustive"
    seed: int | None = None
    iterations: int = 0
    type_filter: str | None = None  # "TypeI" / "TypeII"
    valence_min: int | None = None
    valence_max: int | None = None
    screen_t: int = 3
    # weight-distribution fingerprint per hit: "full", a weight cutoff, or None
    fingerprint: str | int | None = "full"

    def __post_init__(self):
        if self.d_target < 1:
            raise ValueError("d_target must be >= 1")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "random" and self.seed is None:
            raise ValueError("randomized search needs an explicit seed")
        if self.mode == "random" and self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        for a in self.alphas:
            if math.gcd(a, self.n) != 1:
                raise ValueError(f"alpha={a} is not a unit mod {self.n}")

    @property
    def length(self) -> int:
        return self.m * self.n

    def alpha_list(self) -> list[int]:
        return sorted(set(self.alphas)) if self.alphas else units(self.n)


@dataclass(frozen=True)
class SearchHit:
    spec: MetacirculantSpec
    distance: int
    exact: bool = True
    weight_distribution: WeightDistribution | None = field(default=None, compare=False)
    class_key: str | None = None
    index: int = -1

    def to_json(self) -> dict:
        out = {"spec": self.spec.to_json(), "d": self.distance, "exact": self.exact, "index": self.index}
        if self.weight_distribution is not None:
            out["wd"] = self.weight_distribution.to_json()
        out["class_key"] = self.class_key
        return out

    @classmethod
    def from_json(cls, obj: dict) -> SearchHit:
        wd = WeightDistribution.from_json(obj["wd"]) if obj.get("wd") else None
        return cls(
            MetacirculantSpec.from_json(obj["spec"]),
            obj["d"],
            obj.get("exact", True),
            wd,
            obj.get("class_key"),
            obj.get("index", -1),
        )


def _passes_filters(task: SearchTask, spec: MetacirculantSpec) -> bool:
    if task.valence_min is not None or task.valence_max is not None:
        v = valence(spec)
        if task.valence_min is not None and v < task.valence_min:
            return False
        if task.valence_max is not None and v > task.valence_max:
            return False
    if task.type_filter is not None:
        type2 = spec.length % 2 == 0 and delta_s(spec) % 2 == 1
        if (task.type_filter == "TypeII") != type2:
            return False
    return True


def evaluate_spec(task: SearchTask, spec: MetacirculantSpec, index: int = -1) -> SearchHit | None:
    """Screening pipeline: filters, low-support bound, aborting distance, exact d."""
    if not _passes_filters(task, spec):
        return None
    code = code_from_graph(build_graph(spec))
    t = min(task.screen_t, code.rows)
    bound = low_support_min_weight(code, t)
    if bound is not None and bound < task.d_target:
        return None
    if code.length > sweep_budget():
        # beyond the exact-distance budget only the low-support bound is known
        return SearchHit(spec, bound, exact=False, index=index)
    res = min_distance(code, abort_below=task.d_target)
    if res.aborted:
        return None
    wd = None
    if task.fingerprint == "full":
        wd = weight_distribution(code)
    elif task.fingerprint is not None:
        wd = truncated_weight_counts(code, int(task.fingerprint))
    key = wd.fingerprint() if wd is not None else None
    return SearchHit(spec, res.weight, True, wd, key, index)


def _indexed_specs(task: SearchTask) -> Iterator[tuple[int, MetacirculantSpec]]:
    i = 0
    for alpha in task.alpha_list():
        for spec in enumerate_specs(task.m, task.n, alpha):
            yield i, spec
            i += 1


def _eval_chunk(args) -> tuple[int, list[SearchHit]]:
    task, chunk = args
    return chunk[-1][0], [h for i, spec in chunk if (h := evaluate_spec(task, spec, i)) is not None]


def _chunks(items, size):
    it = iter(items)
    while batch := list(itertools.islice(it, size)):
        yield batch


def exhaustive_search(
    task: SearchTask,
    *,
    workers: int = 1,
    results_path: str | Path | None = None,
    checkpoint_path: str | Path | None = None,
    chunk_size: int = 256,
    progress=None,
) -> list[SearchHit]:
    """Evaluate every valid spec for each alpha; hits sorted by enumeration index.

    With ``results_path`` each hit is appended as one JSON line as soon as its
    chunk completes; ``checkpoint_path`` records the last finished index so an
    interrupted run resumes where it stopped.
    """
    if task.mode != "exhaustive":
        raise ValueError("task is not in exhaustive mode")
    if task.length > sweep_budget():
        from .addcode import BudgetExceeded

        raise BudgetExceeded(f"exhaustive search needs exact distances; length {task.length} exceeds the cap")
    done = -1
    hits: list[SearchHit] = []
    if checkpoint_path and Path(checkpoint_path).exists():
        done = json.loads(Path(checkpoint_path).read_text())["last_index"]
        if results_path and Path(results_path).exists():
            for line in Path(results_path).read_text().splitlines():
                if line.strip():
                    h = SearchHit.from_json(json.loads(line))
                    if h.index <= done:
                        hits.append(h)
        # drop anything written after the checkpoint
        if results_path:
            _rewrite(results_path, hits)
    elif results_path:
        Path(results_path).write_text("")
    pending = ((i, s) for i, s in _indexed_specs(task) if i > done)
    batches = ((task, chunk) for chunk in _chunks(pending, chunk_size))
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        results = pool.map(_eval_chunk, batches) if pool else map(_eval_chunk, batches)
        for last, chunk_hits in results:
            hits.extend(chunk_hits)
            if results_path and chunk_hits:
                with open(results_path, "a") as fh:
                    for h in chunk_hits:
                        fh.write(json.dumps(h.to_json()) + "\n")
                    fh.flush()
            if checkpoint_path:
                Path(checkpoint_path).write_text(json.dumps({"last_index": last}))
            if progress:
                progress(last, len(hits))
    finally:
        if pool:
            pool.shutdown()
    return sorted(hits, key=lambda h: h.index)


def _rewrite(path, hits):
    with open(path, "w") as fh:
        for h in hits:
            fh.write(json.dumps(h.to_json()) + "\n")


def random_search(task: SearchTask, *, results_path: str | Path | None = None) -> list[SearchHit]:
    """Sample ``iterations`` specs from a seeded generator and keep survivors.

    Returns distinct hits ordered by decreasing distance, then spec.
    """
    if task.mode != "random":
        raise ValueError("task is not in random mode")
    rng = np.random.default_rng(task.seed)
    alphas = task.alpha_list()
    found: dict[tuple, SearchHit] = {}
    for it in range(task.iterations):
        alpha = alphas[int(rng.integers(len(alphas)))]
        spec = sample_spec(task.m, task.n, alpha, rng)
        if spec.key() in found:
            continue
        hit = evaluate_spec(task, spec, it)
        if hit is not None:
            found[spec.key()] = hit
            log.info("iteration %d: %s d=%s", it, spec, hit.distance)
    hits = sorted(found.values(), key=lambda h: (-h.distance, h.spec.key()))
    if results_path:
        _rewrite(results_path, hits)
    return hits


def class_by_enumerator(hits: Sequence[SearchHit]) -> list[list[SearchHit]]:
    """Group hits with identical weight distributions.

    Equal enumerators are necessary for equivalence, not sufficient; the
    classes are an upper bound on the number of inequivalent codes.
    """
    groups: dict[str, list[SearchHit]] = defaultdict(list)
    for h in hits:
        if h.weight_distribution is None and h.class_key is None:
            raise ValueError(f"hit {h.spec} carries no weight distribution")
        key = h.class_key or h.weight_distribution.fingerprint()
        groups[key].append(h)
    return sorted(groups.values(), key=lambda g: (-len(g), g[0].index, g[0].spec.key()))
