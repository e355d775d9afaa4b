"""Special graph families: Sperner graphs B_n, complete multipartite graphs,
and small exhaustive graph corpora."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional

from .blowup import Weighting, as_weighting
from .graph import Graph, bits, find_elimination_ordering

MAX_SPERNER_N = 5
UP = "up"
DOWN = "down"


class FamilyError(ValueError):
    pass


def subset_label(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in bits(mask)) + "}"


@dataclass(frozen=True)
class SpernerGraph:
    """B_n: one vertex per subset of [n], edges between strictly nested subsets.

    Vertices are ordered by (level, bitmask); element i of [n] is bit i-1.
    """

    n: int
    graph: Graph
    masks: tuple[int, ...]

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.masks)

    def level(self, i: int) -> list[int]:
        return [v for v, m in enumerate(self.masks) if m.bit_count() == i]

    def vertex_of(self, mask: int) -> int:
        return self.masks.index(mask)

    @property
    def middle(self) -> int:
        return (self.n + 1) // 2


def build_sperner(n: int) -> SpernerGraph:
    if not 1 <= n <= MAX_SPERNER_N:
        raise FamilyError(f"n must be in 1..{MAX_SPERNER_N}, got {n}")
    masks = sorted(range(1 << n), key=lambda s: (s.bit_count(), s))
    edges = [
        (i, j)
        for i, j in combinations(range(len(masks)), 2)
        if masks[i] != masks[j] and masks[i] & masks[j] in (masks[i], masks[j])
    ]
    g = Graph(len(masks), edges, [subset_label(s) for s in masks])
    return SpernerGraph(n, g, tuple(masks))


def middle_level(b: SpernerGraph) -> list[int]:
    """Vertices at level ceil(n/2)."""
    return b.level(b.middle)


def complement_weighting(b: SpernerGraph, w) -> Weighting:
    """w'(X) = w([n] minus X)."""
    w = as_weighting(w)
    if len(w) != b.graph.n:
        raise FamilyError(f"weighting has {len(w)} entries, B_{b.n} has {b.graph.n} vertices")
    full = (1 << b.n) - 1
    return Weighting(tuple(w[b.vertex_of(full ^ m)] for m in b.masks))


def is_sperner_graph(g: Graph) -> Optional[SpernerGraph]:
    """The SpernerGraph whose graph equals ``g`` (ignoring labels), if any."""
    n = g.n.bit_length() - 1
    if g.n != 1 << n or not 1 <= n <= MAX_SPERNER_N:
        return None
    b = build_sperner(n)
    return b if b.graph.adj == g.adj else None


# level matchings


@dataclass(frozen=True)
class LevelMatching:
    """Injection from level r of B_n into level r+1 (up) or r-1 (down),
    compatible with containment. ``pairs`` holds (source, target) vertices."""

    r: int
    direction: str
    pairs: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


def hall_level_matching(b: SpernerGraph, r: int, direction: str) -> LevelMatching:
    """Saturating matching of level r into the adjacent level.

    Up requires r < n/2, down requires r > n/2; in both cases the target
    level is at least as large and a saturating matching exists. Sources are
    processed in vertex order and each tries targets in vertex order
    (Kuhn's augmenting paths), which makes the result deterministic.
    """
    n = b.n
    if direction == UP:
        if not 2 * r < n or r < 0:
            raise FamilyError(f"up-matching needs 0 <= r < n/2 (r={r}, n={n})")
        target_level = r + 1
    elif direction == DOWN:
        if not 2 * r > n or r > n:
            raise FamilyError(f"down-matching needs n/2 < r <= n (r={r}, n={n})")
        target_level = r - 1
    else:
        raise FamilyError(f"direction must be 'up' or 'down', got {direction!r}")

    sources = b.level(r)
    targets = b.level(target_level)
    options = {s: [t for t in targets if b.graph.has_edge(s, t)] for s in sources}
    match_of_target: dict[int, int] = {}

    def augment(s, seen):
        for t in options[s]:
            if t in seen:
                continue
            seen.add(t)
            if t not in match_of_target or augment(match_of_target[t], seen):
                match_of_target[t] = s
                return True
        return False

    for s in sources:
        if not augment(s, set()):
            raise FamilyError(f"level {r} of B_{n} cannot be saturated {direction}")
    pairs = tuple(sorted((s, t) for t, s in match_of_target.items()))
    return LevelMatching(r, direction, pairs)


# complete multipartite graphs


@dataclass(frozen=True)
class MultipartiteSpec:
    """Part sizes, stored in non-increasing order."""

    part_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(sorted((int(x) for x in self.part_sizes), reverse=True))
        if not sizes:
            raise FamilyError("a complete multipartite graph needs at least one part")
        if sizes[-1] < 1:
            raise FamilyError(f"part sizes must be positive: {list(sizes)}")
        object.__setattr__(self, "part_sizes", sizes)

    @classmethod
    def parse(cls, text: str) -> "MultipartiteSpec":
        try:
            return cls(tuple(int(x) for x in text.split(",") if x.strip()))
        except ValueError:
            raise FamilyError(f"cannot parse part sizes {text!r}") from None

    def parts(self) -> list[list[int]]:
        """Vertex lists I_1, ..., I_r of the graph built by build_multipartite."""
        out, start = [], 0
        for size in self.part_sizes:
            out.append(list(range(start, start + size)))
            start += size
        return out


def build_multipartite(spec) -> Graph:
    """Parts occupy consecutive vertex ranges, largest part first.

    Labels read "<part>.<member>", both 1-based.
    """
    if not isinstance(spec, MultipartiteSpec):
        spec = MultipartiteSpec(tuple(spec))
    parts = spec.parts()
    part_of = {v: j for j, p in enumerate(parts) for v in p}
    n = sum(spec.part_sizes)
    edges = [(u, v) for u, v in combinations(range(n), 2) if part_of[u] != part_of[v]]
    labels = [f"{part_of[v] + 1}.{v - parts[part_of[v]][0] + 1}" for v in range(n)]
    return Graph(n, edges, labels)


def multipartite_parts(g: Graph) -> Optional[list[list[int]]]:
    """Maximal partite sets of g, largest first (ties by smallest vertex),
    or None if g is not complete multipartite."""
    if g.n == 0:
        return None
    full = g.vertex_mask
    parts, seen = [], 0
    for v in range(g.n):
        if seen >> v & 1:
            continue
        part = full & ~g.adj[v]
        # v's non-neighbours must form an independent set sharing v's neighbourhood
        for u in bits(part):
            if g.adj[u] != g.adj[v]:
                return None
        parts.append(list(bits(part)))
        seen |= part
    parts.sort(key=lambda p: (-len(p), p[0]))
    return parts


# exhaustive corpora


def canonical_form(g: Graph) -> tuple[int, ...]:
    """Lexicographically smallest sorted edge code over all relabellings (small n)."""
    n = g.n
    best = None
    edges = g.edges()
    for perm in permutations(range(n)):
        code = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or code < best:
            best = code
    return tuple(x for e in best for x in e) if best else ()


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    reach, frontier = 1, 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~reach
        reach |= nxt
    return reach == g.vertex_mask


def all_graphs(n: int, connected: bool = False) -> list[Graph]:
    """One representative per isomorphism class of graphs on n vertices.

    The representative is the relabelling with the smallest edge code. The
    generator tries every edge subset and every relabelling, so it is capped
    at n <= 5.
    """
    if not 0 <= n <= 5:
        raise FamilyError("exhaustive graph generation is limited to 0 <= n <= 5")
    pairs = list(combinations(range(n), 2))
    reps: dict[tuple[int, ...], Graph] = {}
    for chosen in range(1 << len(pairs)):
        g = Graph(n, [pairs[i] for i in range(len(pairs)) if chosen >> i & 1])
        if connected and not is_connected(g):
            continue
        key = canonical_form(g)
        if key not in reps:
            flat = list(key)
            reps[key] = Graph(n, list(zip(flat[::2], flat[1::2])))
    return sorted(reps.values(), key=lambda g: (g.num_edges, g.edges()))


def graph_corpus(max_n: int, connected: bool = False, min_n: int = 1) -> list[Graph]:
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(all_graphs(n, connected))
    return out


def chordal_corpus(max_n: int) -> list[Graph]:
    return [g for g in graph_corpus(max_n) if find_elimination_ordering(g) is not None]


def integer_partitions(n: int, largest: Optional[int] = None) -> list[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            out.append((first,) + rest)
    return out


def multipartite_corpus(max_n: int) -> list[MultipartiteSpec]:
    return [MultipartiteSpec(p) for n in range(1, max_n + 1) for p in integer_partitions(n)]
