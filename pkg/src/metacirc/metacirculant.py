"""Metacirculant graphs: parameter validation, construction, closed-form facts."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class InvalidSpecError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid metacirculant spec: " + "; ".join(self.violations))


@dataclass(frozen=True)
class MetacirculantSpec:
    """Parameters (m, n, alpha, S_0, ..., S_{m//2}) of a metacirculant graph."""

    m: int
    n: int
    alpha: int
    s_sets: tuple[frozenset[int], ...]

    @classmethod
    def make(cls, m: int, n: int, alpha: int, s_sets: Iterable[Iterable[int]]) -> MetacirculantSpec:
        """Build a spec, reducing elements mod n and rejecting duplicates."""
        if n < 1:
            raise ValueError("n must be positive")
        reduced = []
        for k, s in enumerate(s_sets):
            items = [int(x) % n for x in s]
            if len(set(items)) != len(items):
                raise ValueError(f"duplicate elements in S_{k} after reduction mod {n}")
            reduced.append(frozenset(items))
        return cls(int(m), int(n), int(alpha) % n, tuple(reduced))

    @classmethod
    def from_json(cls, obj: dict | str) -> MetacirculantSpec:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls.make(obj["m"], obj["n"], obj["alpha"], obj["s"])

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "alpha": self.alpha, "s": [sorted(s) for s in self.s_sets]}

    @property
    def length(self) -> int:
        return self.m * self.n

    def key(self) -> tuple:
        return (self.m, self.n, self.alpha, tuple(tuple(sorted(s)) for s in self.s_sets))

    def __str__(self) -> str:
        sets = ", ".join("{" + ",".join(map(str, sorted(s))) + "}" for s in self.s_sets)
        return f"Gamma({self.m}, {self.n}, {self.alpha}, {sets})"


def _scale(s: Iterable[int], c: int, n: int) -> frozenset[int]:
    return frozenset(c * x % n for x in s)


@dataclass
class ValidationResult:
    violations: list[str] = field(default_factory=list)
    # every checked condition name -> whether it held
    conditions: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def _check(self, name: str, holds: bool) -> None:
        self.conditions[name] = holds
        if not holds:
            self.violations.append(name)


def validate_spec(spec: MetacirculantSpec) -> ValidationResult:
    """Check the four S-set conditions and that alpha is a unit of Z_n.

    Never raises; each failed condition is named in ``violations``.
    """
    res = ValidationResult()
    m, n, alpha = spec.m, spec.n, spec.alpha
    res._check("m >= 2", m >= 2)
    res._check("n >= 1", n >= 1)
    res._check(f"{m // 2 + 1} S-sets", len(spec.s_sets) == m // 2 + 1)
    if not res.ok:
        return res
    res._check("gcd(alpha, n) = 1", math.gcd(alpha, n) == 1)
    s0 = spec.s_sets[0]
    res._check("S0 = -S0", _scale(s0, -1, n) == s0)
    res._check("0 not in S0", 0 not in s0)
    am = pow(alpha, m, n)
    for k in range(1, m // 2 + 1):
        sk = spec.s_sets[k]
        res._check(f"alpha^m S{k} = S{k}", _scale(sk, am, n) == sk)
    if m % 2 == 0:
        half = spec.s_sets[m // 2]
        res._check(
            f"alpha^(m/2) S{m // 2} = -S{m // 2}",
            _scale(half, pow(alpha, m // 2, n), n) == _scale(half, -1, n),
        )
    return res


@dataclass(frozen=True, eq=False)
class BitGraph:
    """Simple graph held as a dense 0/1 adjacency matrix."""

    adjacency: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> BitGraph:
        """Edges given 1-indexed."""
        a = np.zeros((vertex_count, vertex_count), dtype=bool)
        for u, v in edges:
            a[u - 1, v - 1] = a[v - 1, u - 1] = True
        return cls(a)

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    def is_simple(self) -> bool:
        a = self.adjacency
        return bool((a == a.T).all() and not a.diagonal().any())

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted 1-indexed pairs (u, v) with u < v."""
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(u) + 1, int(v) + 1) for u, v in zip(us, vs)]

    @property
    def edge_count(self) -> int:
        return int(np.triu(self.adjacency, 1).sum())

    def neighbor_masks(self) -> list[int]:
        """Row i as a Python int bit mask over vertices 0..N-1."""
        weights = 1 << np.arange(self.vertex_count, dtype=object)
        return [int(weights[row].sum()) for row in self.adjacency]

    def __eq__(self, other) -> bool:
        return isinstance(other, BitGraph) and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self) -> int:
        return hash(self.adjacency.tobytes())


LABELINGS = ("layer", "index")


def vertex_label(i: int, j: int, m: int, n: int, labeling: str = "layer") -> int:
    """1-based label of vertex (i, j).

    "layer": i*n + j + 1, layers consecutive. "index": j*m + i + 1, the
    layers interleaved (the order some published edge tables use).
    """
    if labeling == "layer":
        return i * n + j + 1
    if labeling == "index":
        return j * m + i + 1
    raise ValueError(f"unknown labeling {labeling!r}")


def build_graph(
    spec: MetacirculantSpec,
    *,
    labeling: str = "layer",
    exponent_offset: int = 0,
    override: bool = False,
) -> BitGraph:
    """(i, j) ~ (i+k, h) iff h - j in alpha^(i + exponent_offset) S_k.

    ``exponent_offset=1`` numbers layers from 1 in the exponent; the result is
    isomorphic to the default via j -> alpha*j on every layer.
    Raises InvalidSpecError unless the spec validates or ``override`` is set;
    with the override the adjacency rule must still come out symmetric.
    """
    check = validate_spec(spec)
    if not check.ok and not override:
        raise InvalidSpecError(check.violations)
    if len(spec.s_sets) != spec.m // 2 + 1:
        raise InvalidSpecError(check.violations)
    m, n, alpha = spec.m, spec.n, spec.alpha
    N = m * n
    directed = np.zeros((N, N), dtype=bool)
    j = np.arange(n)
    for k, sk in enumerate(spec.s_sets):
        if not sk:
            continue
        s = np.array(sorted(sk))
        for i in range(m):
            mult = pow(alpha, i + exponent_offset, n)
            h = (j[:, None] + mult * s[None, :]) % n
            directed[i * n + j[:, None], ((i + k) % m) * n + h] = True
    # intra-layer and antipodal blocks are generated from both ends and must agree
    two_way = directed & ~_one_way_mask(m, n)
    if not np.array_equal(two_way, two_way.T):
        raise InvalidSpecError(["adjacency rule is not symmetric"])
    if directed.diagonal().any():
        raise InvalidSpecError(["adjacency rule creates loops"])
    adj = directed | directed.T
    if labeling != "layer":
        perm = np.array([vertex_label(i, jj, m, n, labeling) - 1 for i in range(m) for jj in range(n)])
        out = np.zeros_like(adj)
        out[np.ix_(perm, perm)] = adj
        adj = out
    return BitGraph(adj)


def _one_way_mask(m: int, n: int) -> np.ndarray:
    """Blocks (i, i+k) with 0 < k < m/2, generated in one direction only."""
    mask = np.zeros((m * n, m * n), dtype=bool)
    for i in range(m):
        for k in range(1, (m + 1) // 2):
            c = (i + k) % m
            mask[i * n : (i + 1) * n, c * n : (c + 1) * n] = True
    return mask


def valence(spec: MetacirculantSpec) -> int:
    """Common degree from the S-set sizes."""
    if not validate_spec(spec).ok:
        raise InvalidSpecError(validate_spec(spec).violations)
    m = spec.m
    sizes = [len(s) for s in spec.s_sets]
    if m == 2:
        return sizes[0] + sizes[1]
    if m % 2 == 0:
        return sizes[0] + sizes[m // 2] + 2 * sum(sizes[1 : m // 2])
    return sizes[0] + 2 * sum(sizes[1:])


def intra_layer_edges(graph: BitGraph, m: int, n: int, labeling: str = "layer") -> int:
    a = graph.adjacency
    total = 0
    for i in range(m):
        idx = [vertex_label(i, j, m, n, labeling) - 1 for j in range(n)]
        total += int(np.triu(a[np.ix_(idx, idx)], 1).sum())
    return total


def is_multipartite(spec: MetacirculantSpec, *, cross_check: bool = True) -> bool:
    """True iff S_0 is empty; optionally confirms no edge inside any layer."""
    result = not spec.s_sets[0]
    if result and cross_check:
        g = build_graph(spec, override=True)
        if intra_layer_edges(g, spec.m, spec.n):
            raise AssertionError("empty S0 but the built graph has intra-layer edges")
    return result


def euler_phi(n: int) -> int:
    result, p, x = n, 2, n
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            result -= result // p
        p += 1
    if x > 1:
        result -= result // x
    return result


def circulant_isomorphism_guaranteed(m: int, n: int) -> bool:
    """Sufficient condition for every (m, n)-metacirculant to be circulant."""
    return math.gcd(m, n) == 1 and math.gcd(m, euler_phi(n)) == 1


def circular_distance(a: int, n: int) -> int:
    a %= n
    return a if a <= n / 2 else n - a


def build_circulant(n: int, s: Iterable[int]) -> BitGraph:
    """x ~ y iff |x - y|_n in S, with S inside {1, ..., n/2}."""
    s = set(s)
    bad = [x for x in s if not 0 < x <= n / 2]
    if bad:
        raise ValueError(f"connection set elements out of range (0, n/2]: {sorted(bad)}")
    x = np.arange(n)
    dist = np.vectorize(lambda d: circular_distance(int(d), n))((x[None, :] - x[:, None]) % n)
    return BitGraph(np.isin(dist, list(s)))


def format_edges(edges: Iterable[tuple[int, int]]) -> str:
    return "".join(f"{u} {v}\n" for u, v in sorted((min(e), max(e)) for e in edges))


def parse_edges(text: str) -> set[tuple[int, int]]:
    out = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise ValueError(f"line {lineno}: loop {u}")
        out.add((min(u, v), max(u, v)))
    return out
