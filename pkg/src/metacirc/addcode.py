"""Additive codes over GF(4) from graphs: self-duality, weights, distance."""

from __future__ import annotations

import enum
import hashlib
import json
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .algebra import SYMBOLS, F4Vector
from .metacirculant import BitGraph, MetacirculantSpec

DEFAULT_BUDGET = 40
# Gray walk keeps each part in one machine word and counts 2**rows steps
HARD_SWEEP_LIMIT = 63


class BudgetExceeded(RuntimeError):
    """Full enumeration refused for this length."""


def sweep_budget() -> int:
    return int(os.environ.get("METACIRC_BUDGET_L", DEFAULT_BUDGET))


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a (rows, length) 0/1 matrix into (rows, words) uint64, LSB first."""
    rows, length = bits.shape
    words = max(1, -(-length // 64))
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :length] = bits
    packed = np.packbits(padded.reshape(rows, words, 64), axis=2, bitorder="little")
    return packed.view("<u8").reshape(rows, words).astype(np.uint64)


def gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


@dataclass(frozen=True, eq=False)
class AdditiveCode:
    """F2-span of generator rows a + w*b, given as two 0/1 matrices."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.uint8) & 1
        b = np.asarray(self.b, dtype=np.uint8) & 1
        if a.shape != b.shape or a.ndim != 2:
            raise ValueError("a and b parts must be matrices of the same shape")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> int:
        return self.a.shape[1]

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    def generator(self, i: int) -> F4Vector:
        """Generator ``i`` (1-based)."""
        bits = self.a[i - 1] | (self.b[i - 1] << 1)
        return F4Vector.from_symbols(bits.tolist())

    def generators(self) -> list[F4Vector]:
        return [self.generator(i) for i in range(1, self.rows + 1)]

    @cached_property
    def packed(self) -> tuple[np.ndarray, np.ndarray]:
        return pack_rows(self.a), pack_rows(self.b)

    @property
    def is_graph_form(self) -> bool:
        """b-part is the identity, so every codeword's weight is >= its support."""
        return self.rows == self.length and np.array_equal(self.b, np.eye(self.length, dtype=np.uint8))

    def codeword(self, selection) -> F4Vector:
        """Sum of the generators whose (0-based) indices are selected."""
        sel = np.zeros(self.rows, dtype=np.uint8)
        sel[list(selection)] = 1
        a = (sel @ self.a) & 1
        b = (sel @ self.b) & 1
        return F4Vector.from_symbols((a | (b << 1)).tolist())

    def dump(self) -> str:
        """One line per generator over the symbols 0, 1, w, W."""
        sym = self.a | (self.b << 1)
        return "".join("".join(SYMBOLS[int(x)] for x in row) + "\n" for row in sym)


def code_from_graph(graph: BitGraph) -> AdditiveCode:
    """Rows of A(G) + w I."""
    if not graph.is_simple():
        raise ValueError("graph must be symmetric with zero diagonal")
    n = graph.vertex_count
    return AdditiveCode(graph.adjacency.astype(np.uint8), np.eye(n, dtype=np.uint8))


def is_symplectic_self_dual(code: AdditiveCode) -> bool:
    """Generators pairwise orthogonal and the rows (a|b) of full rank length."""
    if code.rows < code.length:
        return False
    a = code.a.astype(np.int64)
    b = code.b.astype(np.int64)
    gram = (a @ b.T + b @ a.T) & 1
    if gram.any():
        return False
    stacked = np.concatenate([code.a, code.b], axis=1)
    weights = 1 << np.arange(stacked.shape[1], dtype=object)
    masks = [int(weights[row.astype(bool)].sum()) for row in stacked]
    return gf2_rank(masks) == code.length


@dataclass(frozen=True)
class WeightDistribution:
    length: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.length + 1:
            raise ValueError("need one count per weight 0..length")

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    @property
    def min_distance(self) -> int | None:
        return next((w for w, c in enumerate(self.counts) if w and c), None)

    @property
    def all_even(self) -> bool:
        return all(c == 0 for w, c in enumerate(self.counts) if w % 2)

    def to_json(self) -> dict:
        return {"length": self.length, "counts": {str(w): str(c) for w, c in self.nonzero().items()}}

    @classmethod
    def from_json(cls, obj: dict) -> WeightDistribution:
        counts = [0] * (obj["length"] + 1)
        for w, c in obj["counts"].items():
            counts[int(w)] = int(c)
        return cls(obj["length"], tuple(counts))

    @classmethod
    def from_dict(cls, length: int, counts: dict[int, int]) -> WeightDistribution:
        return cls.from_json({"length": length, "counts": counts})

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def truncated_weight_counts(code: AdditiveCode, max_weight: int) -> WeightDistribution:
    """Exact counts for weights 0..max_weight of a graph-form code.

    Higher weights are reported as zero. Only codewords from at most
    max_weight generators can qualify, so the cost is sum C(rows, s), s <= max_weight.
    """
    if not code.is_graph_form:
        raise ValueError("truncated counts need a graph-form code")
    max_weight = min(max_weight, code.length)
    pa, pb = code.packed
    counts = np.zeros(max_weight + 1, dtype=np.int64)
    counts[0] = 1
    for s in range(1, max_weight + 1):
        if pa.shape[1] == 1:
            _kernels._level_walk_1w(pa[:, 0].copy(), pb[:, 0].copy(), s, 0, np.zeros(s, np.int64), counts)
        else:
            _kernels.level_weight_counts(pa, pb, s, counts)
    full = [int(c) for c in counts] + [0] * (code.length - max_weight)
    return WeightDistribution(code.length, tuple(full))


def _check_budget(code: AdditiveCode, budget: int | None) -> None:
    limit = sweep_budget() if budget is None else budget
    if code.rows > min(limit, HARD_SWEEP_LIMIT) or code.length > 64:
        raise BudgetExceeded(
            f"full enumeration over 2^{code.rows} codewords exceeds the length cap {min(limit, HARD_SWEEP_LIMIT)}"
        )


def _split_bits(rows: int) -> int:
    return min(6, max(0, rows - 10))


def weight_distribution(code: AdditiveCode, *, budget: int | None = None) -> WeightDistribution:
    """Exact weight counts over all 2^rows codewords (Gray-code walk)."""
    _check_budget(code, budget)
    pa, pb = code.packed
    counts = _kernels.gray_weight_counts(
        np.ascontiguousarray(pa[:, 0]), np.ascontiguousarray(pb[:, 0]), code.length, _split_bits(code.rows)
    )
    return WeightDistribution(code.length, tuple(int(c) for c in counts))


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of a distance computation.

    ``weight`` is the minimum nonzero weight, or with ``aborted`` set the
    first weight seen below the screening threshold. ``witness`` lists the
    1-based generator indices summed to reach it.
    """

    weight: int
    aborted: bool = False
    witness: tuple[int, ...] = ()


def _level(code: AdditiveCode, size: int, abort_below: int) -> tuple[int, tuple[int, ...]]:
    pa, pb = code.packed
    witness = np.zeros(max(size, 1), dtype=np.int64)
    if pa.shape[1] == 1:
        w = _kernels._level_walk_1w(pa[:, 0].copy(), pb[:, 0].copy(), size, abort_below, witness, _EMPTY)
    else:
        w = _kernels.level_min_weight(pa, pb, size, abort_below, witness)
    return int(w), tuple(int(i) + 1 for i in witness[:size])


_NONE = 1 << 30
_EMPTY = np.zeros(0, dtype=np.int64)


def low_support_min_weight(code: AdditiveCode, t: int, *, witness: bool = False):
    """Minimum nonzero weight over codewords that use at most t generators.

    An upper bound on the minimum distance, tight when t = rows.
    """
    if not 0 <= t <= code.rows:
        raise ValueError(f"support bound t={t} outside 0..{code.rows}")
    best, best_w = _NONE, ()
    for s in range(1, t + 1):
        w, wit = _level(code, s, 0)
        if w < best:
            best, best_w = w, wit
    result = best if best < _NONE else None
    return (result, best_w) if witness else result


def min_distance(
    code: AdditiveCode, abort_below: int | None = None, *, budget: int | None = None
) -> DistanceResult:
    """Least nonzero codeword weight.

    Graph-form codes are searched by increasing number of summed generators,
    stopping once that number reaches the best weight found (a codeword from
    s generators weighs at least s). Other codes fall back to a Gray walk.
    With ``abort_below`` the search returns at the first weight under it.
    """
    _check_budget(code, budget)
    threshold = abort_below or 0
    if code.is_graph_form:
        best, best_w = _NONE, ()
        s = 1
        while s < best and s <= code.rows:
            w, wit = _level(code, s, threshold)
            if w < best:
                best, best_w = w, wit
                if best < threshold:
                    return DistanceResult(best, True, best_w)
            s += 1
        return DistanceResult(best, False, best_w)
    pa, pb = code.packed
    w, sel = _kernels.gray_min_weight(
        np.ascontiguousarray(pa[:, 0]), np.ascontiguousarray(pb[:, 0]), threshold
    )
    if w == _NONE:
        raise ValueError("code has no nonzero codeword")
    sel = int(sel)
    wit = tuple(i + 1 for i in range(code.rows) if sel >> i & 1)
    return DistanceResult(int(w), bool(threshold and w < threshold), wit)


class TypeClass(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"


class TypeMismatchError(AssertionError):
    pass


@dataclass(frozen=True)
class TypeReport:
    type: TypeClass
    delta_s: int
    all_degrees_odd: bool

    def to_json(self) -> dict:
        return {"type": self.type.value, "delta_s": self.delta_s, "all_degrees_odd": self.all_degrees_odd}


def delta_s(spec: MetacirculantSpec) -> int:
    m = spec.m
    if m % 2:
        return len(spec.s_sets[0])
    return len(spec.s_sets[0]) + len(spec.s_sets[m // 2])


def classify_type(spec: MetacirculantSpec, code: AdditiveCode) -> TypeReport:
    """Type II iff the length is even and |S_0| (+ |S_{m/2}|) is odd.

    Cross-checked against every vertex having odd degree in the code's graph.
    """
    d = delta_s(spec)
    even_length = spec.length % 2 == 0
    by_delta = even_length and d % 2 == 1
    degrees = code.a.sum(axis=1)
    odd = bool((degrees % 2 == 1).all())
    if code.length != spec.length:
        raise ValueError("code length differs from the spec's vertex count")
    if by_delta != odd:
        raise TypeMismatchError(f"Delta_S={d} disagrees with the degree parity of the graph")
    return TypeReport(TypeClass.TYPE_II if by_delta else TypeClass.TYPE_I, d, odd)
