"""Weightings, blow-ups G(w) and exact k-clique counts of blow-ups.

Counts are plain Python ints, so they never overflow. ``count_cliques_formula``
works on the base graph only; ``count_cliques_oracle`` builds G(w) and counts
its cliques directly, and is kept deliberately naive so the two can be
compared.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .graph import Graph, cliques_by_size, count_cliques, independence_number, is_independent, max_independent_set, to_mask


class WeightingError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""

    def __init__(self, message: str, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class Weighting:
    """Non-negative integer weight per vertex; ``m`` is the total."""

    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if any(x < 0 for x in w):
            raise WeightingError(f"weights must be non-negative: {list(w)}")
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return sum(self.weights)

    @property
    def n(self) -> int:
        return len(self.weights)

    def __getitem__(self, v):
        return self.weights[v]

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)

    def support(self) -> list[int]:
        return [v for v, x in enumerate(self.weights) if x]

    def support_mask(self) -> int:
        return to_mask(self.support())

    def replace(self, changes: dict[int, int]) -> "Weighting":
        w = list(self.weights)
        for v, x in changes.items():
            w[v] = x
        return Weighting(tuple(w))

    def to_dict(self) -> dict:
        return {"weights": list(self.weights)}

    @classmethod
    def from_dict(cls, d: dict) -> "Weighting":
        try:
            return cls(tuple(d["weights"]))
        except (KeyError, TypeError) as exc:
            raise WeightingError(f"weighting JSON must look like {{\"weights\": [...]}}: {exc}") from None

    @classmethod
    def parse(cls, text: str) -> "Weighting":
        """Parse either ``"3,0,3"`` or a JSON weighting object."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_dict(json.loads(text))
        if not text:
            return cls(())
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError:
            raise WeightingError(f"cannot parse weights {text!r}") from None

    def __str__(self):
        return ",".join(map(str, self.weights))


def as_weighting(w) -> Weighting:
    return w if isinstance(w, Weighting) else Weighting(tuple(w))


def _check_size(g: Graph, w: Weighting):
    if len(w) != g.n:
        raise WeightingError(f"weighting has {len(w)} entries but graph has {g.n} vertices")


# the blow-up itself


@dataclass(frozen=True)
class BlowupGraph:
    """G(w) with vertices (v, i), i = 1..w(v); ``graph`` uses positions in ``vertices``."""

    base: Graph
    w: Weighting
    vertices: tuple[tuple[int, int], ...]
    graph: Graph

    def index(self, vertex: tuple[int, int]) -> int:
        return self._index[vertex]

    @property
    def _index(self):
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {p: i for i, p in enumerate(self.vertices)}
            object.__setattr__(self, "_index_cache", cache)
        return cache


def build_blowup(g: Graph, w) -> BlowupGraph:
    w = as_weighting(w)
    _check_size(g, w)
    vertices = tuple((v, i) for v in range(g.n) for i in range(1, w[v] + 1))
    edges = []
    for a in range(len(vertices)):
        u, _ = vertices[a]
        for b in range(a + 1, len(vertices)):
            v, _ = vertices[b]
            if u == v or g.has_edge(u, v):
                edges.append((a, b))
    return BlowupGraph(g, w, vertices, Graph(len(vertices), edges))


# counting


@lru_cache(maxsize=None)
def compositions(k: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """Compositions of k into ``parts`` positive parts, in colex order."""
    if parts == 0:
        return ((),) if k == 0 else ()
    if parts == 1:
        return ((k,),) if k >= 1 else ()
    out = []
    # colex: compare from the last part backwards
    for last in range(1, k - parts + 2):
        for head in compositions(k - last, parts - 1):
            out.append(head + (last,))
    return tuple(out)


@lru_cache(maxsize=65536)
def binom(n: int, k: int) -> int:
    return comb(n, k)


def clique_contribution(weights: Sequence[int], k: int) -> int:
    """Number of k-cliques of G(w) meeting every blob K^v of one base clique.

    Sum over compositions k_1 + ... + k_i = k (k_j >= 1) of prod C(w_j, k_j).
    """
    total = 0
    for parts in compositions(k, len(weights)):
        prod = 1
        for x, kj in zip(weights, parts):
            if kj > x:
                prod = 0
                break
            prod *= binom(x, kj)
        total += prod
    return total


def count_cliques_formula(g: Graph, w, k: int) -> int:
    """pi_k(G(w)) from the base graph: sum over cliques of g of at most k
    vertices, of the per-clique composition sums.

    Base cliques touching a zero-weight vertex contribute nothing and are
    skipped by restricting the clique search to the support.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    w = as_weighting(w)
    _check_size(g, w)
    support = w.support_mask()
    total = 0
    for size, cliques in cliques_by_size(g, k, within=support).items():
        for c in cliques:
            total += clique_contribution([w[v] for v in c], k)
    return total


def count_cliques_oracle(g: Graph, w, k: int, max_blowup: int = 25) -> int:
    """pi_k(G(w)) by building G(w) and enumerating its k-cliques directly."""
    w = as_weighting(w)
    _check_size(g, w)
    if w.m > max_blowup:
        raise BudgetExceeded(f"blow-up has {w.m} vertices, budget is {max_blowup}", w.m, max_blowup)
    return count_cliques(build_blowup(g, w).graph, k)


def count_edges_formula(g: Graph, w) -> int:
    """Edges of G(w): sum_v C(w(v), 2) + sum_{uv in E} w(u) w(v)."""
    w = as_weighting(w)
    _check_size(g, w)
    return sum(binom(x, 2) for x in w) + sum(w[u] * w[v] for u, v in g.edges())


class CliqueCounter:
    """pi_k(G(w)) for many weightings of one graph.

    Precomputes the base cliques of size <= k once; cliques are grouped by
    their largest vertex so a partial weighting (assigned in index order)
    can be scored incrementally.
    """

    def __init__(self, g: Graph, k: int):
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        self.g = g
        self.k = k
        by_last: list[list[tuple[int, ...]]] = [[] for _ in range(g.n)]
        for cliques in cliques_by_size(g, k).values():
            for c in cliques:
                by_last[c[-1]].append(c)
        self.by_last = by_last

    def added_by(self, v: int, weights: Sequence[int]) -> int:
        """Contribution of the base cliques whose largest vertex is ``v``."""
        if weights[v] == 0:
            return 0
        total = 0
        for c in self.by_last[v]:
            ws = [weights[u] for u in c]
            if 0 in ws:
                continue
            total += clique_contribution(ws, self.k)
        return total

    def __call__(self, w) -> int:
        ws = tuple(w)
        return sum(self.added_by(v, ws) for v in range(self.g.n))


# uniform weightings


def uniform_multiset(size: int, m: int) -> tuple[int, int, int]:
    """(floor, ceil, r): ``size - r`` entries get floor and ``r`` get ceil."""
    q, r = divmod(m, size)
    return q, q + (1 if r else 0), r


def uniform_weighting(g: Graph, support: Iterable[int], m: int) -> Weighting:
    """Weighting uniform on ``support``; the ceiling weights go to its
    lexicographically first ``m mod |support|`` vertices."""
    support = sorted(set(support))
    if m < 0:
        raise WeightingError(f"m must be non-negative, got {m}")
    for v in support:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range for n={g.n}")
    if not support:
        if m > 0:
            raise WeightingError("cannot spread positive weight over an empty support")
        return Weighting((0,) * g.n)
    q, r = divmod(m, len(support))
    w = [0] * g.n
    for j, v in enumerate(support):
        w[v] = q + 1 if j < r else q
    return Weighting(tuple(w))


def is_uniform_on(w, support: Iterable[int]) -> bool:
    w = as_weighting(w)
    support = set(support)
    if not support:
        return w.m == 0
    if any(w[v] for v in range(len(w)) if v not in support):
        return False
    q, r = divmod(w.m, len(support))
    vals = [w[v] for v in support]
    return all(x in (q, q + 1) for x in vals) and sum(1 for x in vals if x == q + 1) == r


def is_uniform_alpha(g: Graph, w) -> bool:
    """True iff w is uniform on some maximum independent set of g."""
    w = as_weighting(w)
    _check_size(g, w)
    if w.m == 0:
        return True
    alpha = independence_number(g)
    s = w.support()
    if not is_independent(g, s):
        return False
    q, r = divmod(w.m, alpha)
    if q == 0:
        # m < alpha: m unit weights, and the support must extend to a maximum independent set
        if any(w[v] != 1 for v in s):
            return False
        closed = to_mask(s)
        for v in s:
            closed |= g.adj[v]
        return len(s) + independence_number(g, within=g.vertex_mask & ~closed) == alpha
    return len(s) == alpha and is_uniform_on(w, s)


def uniform_alpha_weighting(g: Graph, m: int) -> Weighting:
    """The uniform-alpha weighting on the lexicographically smallest maximum independent set."""
    return uniform_weighting(g, max_independent_set(g), m)


def balanced_value(size: int, m: int, k: int) -> int:
    """pi_k of a weighting uniform on an independent set of ``size`` vertices."""
    q, c, r = uniform_multiset(size, m)
    return (size - r) * binom(q, k) + r * binom(c, k)
