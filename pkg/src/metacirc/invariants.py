"""Graph invariants: diameter, girth, clique number, automorphism group order."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metacirculant import BitGraph, intra_layer_edges

DISCONNECTED = "disconnected"


@dataclass(frozen=True)
class GraphInvariants:
    valence: int | None  # None when the graph is not regular
    diameter: int | str  # DISCONNECTED when some pair is unreachable
    girth: int | None  # None for a forest
    clique_number: int
    automorphism_order: int | None
    automorphism_status: str  # "exact", "timeout" or "skipped"
    multipartite: bool | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def eccentricities(nbrs: list[int]) -> list[int | None]:
    n = len(nbrs)
    full = (1 << n) - 1
    out = []
    for s in range(n):
        seen = frontier = 1 << s
        depth = 0
        while seen != full:
            nxt = 0
            for v in _bits(frontier):
                nxt |= nbrs[v]
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
            depth += 1
        out.append(depth if seen == full else None)
    return out


def diameter(nbrs: list[int]) -> int | str:
    ecc = eccentricities(nbrs)
    if any(e is None for e in ecc):
        return DISCONNECTED
    return max(ecc, default=0)


def girth(nbrs: list[int]) -> int | None:
    """Shortest cycle length by BFS from every vertex."""
    n = len(nbrs)
    best = None
    for s in range(n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for u in queue:
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in _bits(nbrs[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cycle = dist[u] + dist[w] + 1
                    if best is None or cycle < best:
                        best = cycle
        if best == 3:
            break
    return best


def clique_number(nbrs: list[int]) -> int:
    """Maximum clique size by branch and bound with a greedy colouring bound."""
    n = len(nbrs)
    if n == 0:
        return 0
    best = 1

    def colour_order(cand: int) -> list[tuple[int, int]]:
        order = []
        colour = 0
        uncoloured = cand
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~nbrs[v] & ~low
                uncoloured &= ~low
                order.append((v, colour))
        return order

    def expand(size: int, cand: int) -> None:
        nonlocal best
        for v, colour in reversed(colour_order(cand)):
            if size + colour <= best:
                return
            sub = cand & nbrs[v]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best


class SearchBudgetExhausted(RuntimeError):
    pass


class _Refiner:
    """Equitable refinement of ordered partitions, with a node budget."""

    def __init__(self, adjacency: np.ndarray, budget: int):
        self.adj = adjacency.astype(np.int64)
        self.n = adjacency.shape[0]
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExhausted(self.nodes)

    def refine(self, cells: list[np.ndarray]) -> tuple[list[np.ndarray], tuple]:
        trace = []
        while True:
            onehot = np.zeros((self.n, len(cells)), dtype=np.int64)
            for c, cell in enumerate(cells):
                onehot[cell, c] = 1
            counts = self.adj @ onehot
            new = []
            for cell in cells:
                if len(cell) == 1:
                    new.append(cell)
                    continue
                keys, inverse = np.unique(counts[cell], axis=0, return_inverse=True)
                inverse = inverse.reshape(-1)
                if len(keys) == 1:
                    new.append(cell)
                    continue
                for g in range(len(keys)):
                    part = cell[inverse == g]
                    new.append(part)
                    trace.append((len(part), keys[g].tobytes()))
            if len(new) == len(cells):
                quotient = counts[[c[0] for c in new]].tobytes()
                return new, (tuple(trace), tuple(len(c) for c in new), quotient)
            cells = new

    @staticmethod
    def individualize(cells: list[np.ndarray], c: int, v: int) -> list[np.ndarray]:
        cell = cells[c]
        return cells[:c] + [np.array([v]), cell[cell != v]] + cells[c + 1 :]

    @staticmethod
    def target_cell(cells: list[np.ndarray]) -> int | None:
        sizes = [(len(cell), i) for i, cell in enumerate(cells) if len(cell) > 1]
        return min(sizes)[1] if sizes else None

    def isomorphism(self, p1, p2) -> np.ndarray | None:
        """Automorphism mapping ordered partition p1 onto p2, if one exists."""
        self.tick()
        c = self.target_cell(p1)
        if c is None:
            perm = np.empty(self.n, dtype=np.int64)
            for x, y in zip(p1, p2):
                perm[x[0]] = y[0]
            if np.array_equal(self.adj[np.ix_(perm, perm)], self.adj):
                return perm
            return None
        q1, t1 = self.refine(self.individualize(p1, c, int(p1[c][0])))
        for w in p2[c]:
            q2, t2 = self.refine(self.individualize(p2, c, int(w)))
            if t1 != t2:
                continue
            found = self.isomorphism(q1, q2)
            if found is not None:
                return found
        return None


def automorphism_order(graph: BitGraph, budget: int = 50_000) -> int | None:
    """|Aut(G)| as a product of stabilizer-chain orbit sizes.

    Returns None when the search exceeds ``budget`` tree nodes.
    """
    n = graph.vertex_count
    if n == 0:
        return 1
    r = _Refiner(graph.adjacency, budget)
    try:
        cells, _ = r.refine([np.arange(n)])
        order = 1
        while (c := r.target_cell(cells)) is not None:
            cell = cells[c]
            v = int(cell[0])
            pv, tv = r.refine(r.individualize(cells, c, v))
            parent = list(range(n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for w in cell[1:]:
                w = int(w)
                if find(w) == find(v):
                    continue
                pw, tw = r.refine(r.individualize(cells, c, w))
                if tw != tv:
                    continue
                g = r.isomorphism(pv, pw)
                if g is None:
                    continue
                for x in range(n):
                    a, b = find(x), find(int(g[x]))
                    if a != b:
                        parent[a] = b
            root = find(v)
            order *= sum(1 for x in cell if find(int(x)) == root)
            cells = pv
        return order
    except SearchBudgetExhausted:
        return None


def graph_invariants(
    graph: BitGraph,
    *,
    compute_aut: bool = True,
    budget: int = 50_000,
    layers: tuple[int, int] | None = None,
    labeling: str = "layer",
) -> GraphInvariants:
    if graph.vertex_count == 0:
        raise ValueError("graph has no vertices")
    nbrs = graph.neighbor_masks()
    degrees = set(int(d) for d in graph.degrees())
    aut = automorphism_order(graph, budget) if compute_aut else None
    status = "skipped" if not compute_aut else ("exact" if aut is not None else "timeout")
    multipartite = None
    if layers is not None:
        multipartite = intra_layer_edges(graph, *layers, labeling=labeling) == 0
    return GraphInvariants(
        valence=degrees.pop() if len(degrees) == 1 else None,
        diameter=diameter(nbrs),
        girth=girth(nbrs),
        clique_number=clique_number(nbrs),
        automorphism_order=aut,
        automorphism_status=status,
        multipartite=multipartite,
    )
