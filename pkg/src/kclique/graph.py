"""Simple graphs on vertices 0..n-1 with bitset adjacency.

Besides the container itself this module holds the exact searches the rest of
the package leans on: k-clique enumeration, maximum independent sets,
maximum k-clique independent sets and chordality recognition.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Immutable simple undirected graph.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask. Labels are optional
    per-vertex tags and never take part in vertex identity.
    """

    __slots__ = ("n", "adj", "labels", "_edges")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        adj = [0] * n
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise GraphError(f"{len(labels)} labels for {n} vertices")
            if len(set(labels)) != n:
                raise GraphError("vertex labels must be unique")
        self.n = n
        self.adj = tuple(adj)
        self.labels = labels
        self._edges = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[int], labels: Optional[Sequence[str]] = None) -> "Graph":
        n = len(adj)
        edges = [(u, v) for u in range(n) for v in bits(adj[u] >> (u + 1) << (u + 1))]
        return cls(n, edges, labels)

    # basic queries

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))
            )
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self.edges())

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled to 0..len-1. Returns it with the old indices."""
        old = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(old)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        labels = [self.labels[v] for v in old] if self.labels is not None else None
        return Graph(len(old), edges, labels), old

    def complement(self) -> "Graph":
        full = self.vertex_mask
        return Graph.from_adjacency([full & ~self.adj[v] & ~(1 << v) for v in range(self.n)])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj and self.labels == other.labels

    def __hash__(self):
        return hash((self.n, self.adj, self.labels))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges())})"

    # serialization

    def to_dict(self) -> dict:
        d = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Graph":
        try:
            n = d["n"]
            edges = d.get("edges", [])
        except (KeyError, TypeError, AttributeError) as exc:
            raise GraphError(f"graph JSON must be an object with 'n' and 'edges': {exc}") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphError("'n' must be an integer")
        seen = set()
        for e in edges:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise GraphError(f"edge {e!r} does not have two endpoints")
            key = (min(e), max(e))
            if key in seen:
                raise GraphError(f"duplicate edge {list(key)}")
            seen.add(key)
        return cls(n, edges, d.get("labels"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid graph JSON: {exc}") from None
        return cls.from_dict(d)

    def digest(self) -> str:
        """Short stable hash of the canonical JSON form (used to tag reports)."""
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


def popcount(mask: int) -> int:
    return mask.bit_count()


def _check_vertices(g: Graph, s: Iterable[int]) -> list[int]:
    s = list(s)
    for v in s:
        if not (0 <= v < g.n):
            raise IndexError(f"vertex {v} out of range for n={g.n}")
    return s


# cliques


@dataclass(frozen=True)
class CliqueSet:
    """The k-cliques of a graph as sorted vertex tuples, in lexicographic order."""

    k: int
    members: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item):
        return tuple(sorted(item)) in set(self.members)


def iter_cliques(g: Graph, k: int, within: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Yield k-cliques as increasing vertex tuples, in lexicographic order.

    Extension always goes to higher-indexed common neighbours, so each clique
    is produced exactly once.
    """
    if k < 1:
        raise ValueError(f"clique size must be at least 1, got {k}")
    pool = g.vertex_mask if within is None else within
    adj = g.adj

    def extend(clique, cand, depth):
        if depth == k:
            yield tuple(clique)
            return
        need = k - depth
        for v in bits(cand):
            rest = cand & adj[v] & ~((1 << (v + 1)) - 1)
            if need > 1 and popcount(rest) < need - 1:
                continue
            clique.append(v)
            yield from extend(clique, rest, depth + 1)
            clique.pop()

    yield from extend([], pool, 0)


def enumerate_cliques(g: Graph, k: int) -> CliqueSet:
    """All k-element vertex sets of ``g`` inducing complete subgraphs."""
    return CliqueSet(k, tuple(iter_cliques(g, k)))


def count_cliques(g: Graph, k: int) -> int:
    return sum(1 for _ in iter_cliques(g, k))


def cliques_by_size(g: Graph, max_size: int, within: Optional[int] = None) -> dict[int, list[tuple[int, ...]]]:
    """Cliques of every size 1..max_size, grouped by size."""
    out: dict[int, list[tuple[int, ...]]] = {i: [] for i in range(1, max_size + 1)}
    pool = g.vertex_mask if within is None else within
    adj = g.adj

    def grow(clique, cand):
        out[len(clique)].append(tuple(clique))
        if len(clique) == max_size:
            return
        for v in bits(cand):
            clique.append(v)
            grow(clique, cand & adj[v] & ~((1 << (v + 1)) - 1))
            clique.pop()

    for v in bits(pool):
        grow([v], pool & adj[v] & ~((1 << (v + 1)) - 1))
    return out


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    s = _check_vertices(g, s)
    mask = to_mask(s)
    return all((g.adj[v] | (1 << v)) & mask == mask for v in s)


# independence


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    s = _check_vertices(g, s)
    mask = to_mask(s)
    return all(g.adj[v] & mask == 0 for v in s)


def is_k_clique_independent(g: Graph, s: Iterable[int], k: int) -> bool:
    """True iff no k vertices of ``s`` form a k-clique of ``g``."""
    s = _check_vertices(g, s)
    return next(iter_cliques(g, k, within=to_mask(s)), None) is None


def _mis_size(adj: Sequence[int], cand: int) -> int:
    """Independence number of the subgraph induced by ``cand``."""
    best = 0

    def search(cand, size):
        nonlocal best
        while True:
            if cand == 0:
                if size > best:
                    best = size
                return
            if size + popcount(cand) <= best:
                return
            # vertices of degree <= 1 inside cand can always be taken
            forced = None
            pivot, pivot_deg = -1, -1
            for v in bits(cand):
                d = popcount(adj[v] & cand)
                if d <= 1:
                    forced = v
                    break
                if d > pivot_deg:
                    pivot, pivot_deg = v, d
            if forced is None:
                break
            cand &= ~(adj[forced] | (1 << forced))
            size += 1
        search(cand & ~(adj[pivot] | (1 << pivot)), size + 1)
        search(cand & ~(1 << pivot), size)

    search(cand, 0)
    return best


def independence_number(g: Graph, within: Optional[int] = None) -> int:
    return _mis_size(g.adj, g.vertex_mask if within is None else within)


def max_independent_set(g: Graph, within: Optional[int] = None) -> list[int]:
    """A maximum independent set; the lexicographically smallest sorted one.

    Built greedily: a vertex is taken whenever doing so still leaves room for
    an independent set of maximum size.
    """
    pool = g.vertex_mask if within is None else within
    alpha = _mis_size(g.adj, pool)
    chosen: list[int] = []
    cand = pool
    for v in bits(pool):
        if not cand >> v & 1:
            continue
        rest = cand & ~(g.adj[v] | (1 << v)) & ~((1 << v) - 1)
        if len(chosen) + 1 + _mis_size(g.adj, rest) == alpha:
            chosen.append(v)
            cand = rest
            if len(chosen) == alpha:
                break
        else:
            cand &= ~(1 << v)
    return chosen


def max_k_clique_independent_set(g: Graph, k: int) -> list[int]:
    """A largest vertex set containing no k-clique of ``g``.

    Exhaustive include-first search over vertices in index order; the first
    set found of each new record size is therefore the lexicographically
    smallest of that size.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if k == 2:
        return max_independent_set(g)
    n = g.n
    adj = g.adj
    best: list[int] = []
    chosen: list[int] = []

    def closes_clique(v, chosen_mask):
        # adding v creates a k-clique iff chosen ∩ N(v) holds a (k-1)-clique
        return next(iter_cliques(g, k - 1, within=chosen_mask & adj[v]), None) is not None

    def search(i, chosen_mask):
        nonlocal best
        if len(chosen) + (n - i) <= len(best):
            return
        if i == n:
            best = list(chosen)
            return
        if not closes_clique(i, chosen_mask):
            chosen.append(i)
            search(i + 1, chosen_mask | (1 << i))
            chosen.pop()
        search(i + 1, chosen_mask)

    search(0, 0)
    return best


def k_clique_independence_number(g: Graph, k: int) -> int:
    return len(max_k_clique_independent_set(g, k))


def k_clique_independent_sets(g: Graph, k: int) -> list[int]:
    """Every non-empty k-clique independent set, as bitmasks (exhaustive, small n)."""
    cliques = [to_mask(c) for c in iter_cliques(g, k)]
    return [s for s in range(1, 1 << g.n) if not any(c & s == c for c in cliques)]


# chordality


@dataclass(frozen=True)
class EliminationOrdering:
    """Vertex sequence v_1..v_n in which every v_i together with its
    neighbours later in the sequence forms a clique."""

    order: tuple[int, ...]

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self.order)


def is_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(g.n)):
        return False
    later = g.vertex_mask
    for v in order:
        closed = (g.adj[v] | (1 << v)) & later
        if not all((g.adj[u] | (1 << u)) & closed == closed for u in bits(closed)):
            return False
        later &= ~(1 << v)
    return True


def find_elimination_ordering(g: Graph) -> Optional[EliminationOrdering]:
    """Perfect elimination ordering via maximum cardinality search, or None.

    The reversed visit order of MCS is checked against the defining clique
    condition directly; None means ``g`` is not chordal.
    """
    weight = [0] * g.n
    unvisited = g.vertex_mask
    visit: list[int] = []
    while unvisited:
        v = max(bits(unvisited), key=lambda u: (weight[u], -u))
        visit.append(v)
        unvisited &= ~(1 << v)
        for u in bits(g.adj[v] & unvisited):
            weight[u] += 1
    order = visit[::-1]
    if not is_elimination_ordering(g, order):
        return None
    return EliminationOrdering(tuple(order))


def is_chordal(g: Graph) -> bool:
    return find_elimination_ordering(g) is not None


# small named graphs, used by tests and the CLI


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def prism_graph() -> Graph:
    """Two triangles 0-1-2 and 3-4-5 joined by the matching 0-3, 1-4, 2-5."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
