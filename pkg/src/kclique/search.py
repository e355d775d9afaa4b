"""Exact minimisation of pi_k(G(w)) over m-weightings.

``brute_force_min`` is the oracle: it walks every weak composition of m over
the vertices. The ``minimize_*`` functions instead follow the constructive
shifting arguments for Sperner graphs, complete multipartite graphs and
chordal graphs, and return the full sequence of weightings they pass through
so that monotonicity can be audited step by step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .blowup import (
    BudgetExceeded,
    CliqueCounter,
    Weighting,
    as_weighting,
    balanced_value,
    clique_contribution,
    count_cliques_formula,
    uniform_weighting,
)
from .families import DOWN, UP, MultipartiteSpec, SpernerGraph, hall_level_matching, multipartite_parts
from .graph import (
    Graph,
    bits,
    find_elimination_ordering,
    independence_number,
    k_clique_independent_sets,
    max_independent_set,
    max_k_clique_independent_set,
)
from .reports import VerificationReport
from .shifting import LEMMA3, ShiftSpec, multi_shift, validate_shift

DEFAULT_MAX_WEIGHTINGS = 10**7
DEFAULT_CAP = 1000


class NotChordal(ValueError):
    pass


class NotMultipartite(ValueError):
    pass


def num_weightings(n: int, m: int) -> int:
    """Number of m-weightings of an n-vertex graph, C(m + n - 1, n - 1)."""
    if n == 0:
        return 1 if m == 0 else 0
    return comb(m + n - 1, n - 1)


def weak_compositions(m: int, n: int) -> Iterable[tuple[int, ...]]:
    """All n-tuples of non-negative integers summing to m, in colex order."""
    if n == 0:
        if m == 0:
            yield ()
        return
    for last in range(m + 1):
        for head in weak_compositions(m - last, n - 1):
            yield head + (last,)


# brute force


@dataclass
class SearchResult:
    m: int
    k: int
    min_value: int
    minimizers: list[Weighting]
    num_minimizers: int
    visited: int
    pruned: int
    cap: int

    @property
    def capped(self) -> bool:
        return self.num_minimizers > len(self.minimizers)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "min": str(self.min_value),
            "minimizers": [list(w) for w in self.minimizers],
            "num_minimizers": self.num_minimizers,
            "minimizer_cap": self.cap,
            "visited": self.visited,
            "pruned": self.pruned,
        }


def brute_force_min(
    g: Graph,
    m: int,
    k: int,
    max_weightings: int = DEFAULT_MAX_WEIGHTINGS,
    cap: int = DEFAULT_CAP,
    prune: bool = True,
) -> SearchResult:
    """Exact minimum of pi_k(G(w)) over all m-weightings, with its minimizers.

    Vertices are assigned from the last to the first, so complete weightings
    come out in colex order. The partial value (pi_k with unassigned
    vertices at zero) only grows as weights are added, so a partial
    weighting already above the best complete value is cut; ``pruned``
    counts the complete weightings skipped this way, and
    ``visited + pruned`` always equals the number of m-weightings.
    Minimizers are kept in enumeration order, at most ``cap`` of them.
    """
    n = g.n
    total = num_weightings(n, m)
    if total > max_weightings:
        raise BudgetExceeded(f"{total} weightings exceed the budget of {max_weightings}", total, max_weightings)
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")

    # cliques keyed by their smallest vertex: complete once that vertex is assigned
    counter = CliqueCounter(g, k)
    by_first: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for lst in counter.by_last:
        for c in lst:
            by_first[c[0]].append(c)

    def added(v, weights):
        if weights[v] == 0:
            return 0
        s = 0
        for c in by_first[v]:
            ws = [weights[u] for u in c]
            if 0 not in ws:
                s += clique_contribution(ws, k)
        return s

    best = None
    minimizers: list[Weighting] = []
    count = 0
    visited = 0
    pruned = 0
    weights = [0] * n

    def assign(v, remaining, value):
        nonlocal best, count, visited, pruned
        if prune and best is not None and value > best:
            pruned += num_weightings(v + 1, remaining)
            return
        if v == 0:
            weights[0] = remaining
            value += added(0, weights)
            visited += 1
            if best is None or value < best:
                best = value
                minimizers.clear()
                count = 0
            if value == best:
                count += 1
                if len(minimizers) < cap:
                    minimizers.append(Weighting(tuple(weights)))
            weights[0] = 0
            return
        for x in range(remaining + 1):
            weights[v] = x
            assign(v - 1, remaining - x, value + added(v, weights))
        weights[v] = 0

    if n == 0:
        if m != 0:
            raise ValueError("an empty graph only has the 0-weighting")
        return SearchResult(m, k, 0, [Weighting(())], 1, 1, 0, cap)
    assign(n - 1, m, 0)
    return SearchResult(m, k, best, minimizers, count, visited, pruned, cap)


# traces


@dataclass
class TraceStep:
    """One move of a structured minimizer.

    kind is "shift" (simultaneous a -> b pairs), "relocate" (moving a
    weighting supported on an independent set onto another one) or
    "balance" (one unit of weight from a heavier to a lighter vertex of an
    independent set). ``moves`` lists the (source, target) vertex pairs.
    """

    kind: str
    moves: tuple[tuple[int, int], ...]
    before: int
    after: int
    weights: Weighting

    @property
    def spec(self) -> ShiftSpec:
        return ShiftSpec(tuple(a for a, _ in self.moves), tuple(b for _, b in self.moves))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "moves": [list(p) for p in self.moves],
            "before": str(self.before),
            "after": str(self.after),
            "weights": list(self.weights),
        }


@dataclass
class ShiftTrace:
    k: int
    start: Weighting
    steps: list[TraceStep] = field(default_factory=list)
    final: Optional[Weighting] = None
    start_value: int = 0

    @property
    def final_value(self) -> int:
        return self.steps[-1].after if self.steps else self.start_value

    @property
    def monotone(self) -> bool:
        prev = self.start_value
        for s in self.steps:
            if s.before != prev or s.after > s.before:
                return False
            prev = s.after
        return True

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "start": list(self.start),
            "start_value": str(self.start_value),
            "final": list(self.final) if self.final is not None else None,
            "final_value": str(self.final_value),
            "monotone": self.monotone,
            "trace": [s.to_dict() for s in self.steps],
        }


class _Tracer:
    """Carries the current weighting and records each step with its pi_k values."""

    def __init__(self, g: Graph, w: Weighting, k: int):
        self.g = g
        self.counter = CliqueCounter(g, k)
        self.w = w
        self.value = self.counter(w)
        self.trace = ShiftTrace(k=k, start=w, start_value=self.value)

    def record(self, kind, moves, new_w):
        after = self.counter(new_w)
        self.trace.steps.append(TraceStep(kind, tuple(moves), self.value, after, new_w))
        self.w, self.value = new_w, after

    def shift(self, spec: ShiftSpec):
        report = validate_shift(self.g, self.w, spec, LEMMA3)
        if not report.valid:
            raise AssertionError(f"constructed shift is invalid: {report.failures}")
        self.record("shift", spec.pairs(), multi_shift(self.g, self.w, spec, LEMMA3))

    def relocate(self, target: Sequence[int], within: Optional[int] = None):
        """Move a weighting supported on an independent set onto ``target``.

        Only support vertices inside the bitmask ``within`` (default: all)
        take part. Those already in ``target`` stay put; the others go, in
        order, to the unused target vertices.
        """
        support = [v for v in self.w.support() if within is None or within >> v & 1]
        tset = set(target)
        if len(support) > len(target):
            raise AssertionError("support larger than the relocation target")
        if all(v in tset for v in support):
            return
        free = [t for t in target if t not in support]
        moves = []
        changes = {}
        for v in support:
            if v in tset:
                continue
            t = free.pop(0)
            moves.append((v, t))
            changes[v] = 0
            changes[t] = self.w[v]
        self.record("relocate", moves, self.w.replace(changes))

    def balance(self, vertices: Sequence[int]):
        """Unit moves from heaviest to lightest until uniform on ``vertices``.

        ``vertices`` must be independent and contain the support of the
        current weighting on them.
        """
        vertices = sorted(vertices)
        if not vertices:
            return
        total = sum(self.w[v] for v in vertices)
        q, r = divmod(total, len(vertices))
        while True:
            ws = [self.w[v] for v in vertices]
            lo, hi = min(ws), max(ws)
            heavy = vertices[ws.index(hi)]
            if lo < q:
                light = vertices[ws.index(lo)]
            elif hi > q + 1:
                light = vertices[ws.index(q)]
            else:
                return
            self.record("balance", [(heavy, light)], self.w.replace({heavy: self.w[heavy] - 1, light: self.w[light] + 1}))

    def finish(self) -> ShiftTrace:
        self.trace.final = self.w
        return self.trace


def _start(g: Graph, m: int, start) -> Weighting:
    if start is None:
        return uniform_weighting(g, range(g.n), m)
    w = as_weighting(start)
    if len(w) != g.n:
        raise ValueError(f"start weighting has {len(w)} entries but graph has {g.n} vertices")
    if w.m != m:
        raise ValueError(f"start weighting has total {w.m}, expected m={m}")
    return w


# structured minimizers


def minimize_sperner(b: SpernerGraph, m: int, k: int, start=None) -> ShiftTrace:
    """Shift weight level by level onto level ceil(n/2) of B_n, then balance.

    While the lowest occupied level is below the middle, the whole level is
    shifted one level up along a saturating containment matching; then the
    highest occupied level is shifted down the same way. Each such shift
    satisfies the multi-edge shift conditions (both levels are antichains,
    and supersets of b_i are supersets of a_i), so pi_k never increases.
    The default start is uniform on all of B_n.
    """
    g = b.graph
    t = _Tracer(g, _start(g, m, start), k)
    mid = b.middle
    levels = b.levels

    def occupied():
        return sorted({levels[v] for v in t.w.support()})

    while occupied() and occupied()[0] < mid:
        low = occupied()[0]
        pairs = hall_level_matching(b, low, UP).pairs
        t.shift(ShiftSpec(tuple(a for a, _ in pairs), tuple(c for _, c in pairs)))
    while occupied() and occupied()[-1] > mid:
        high = occupied()[-1]
        pairs = hall_level_matching(b, high, DOWN).pairs
        t.shift(ShiftSpec(tuple(a for a, _ in pairs), tuple(c for _, c in pairs)))
    t.balance(b.level(mid))
    return t.finish()


def _parts_for(g: Graph, parts) -> list[list[int]]:
    found = multipartite_parts(g)
    if found is None:
        raise NotMultipartite("graph is not complete multipartite")
    if parts is None:
        return found
    if isinstance(parts, MultipartiteSpec):
        given = parts.parts()
    else:
        given = [sorted(p) for p in parts]
    if sorted(map(sorted, given)) != sorted(map(sorted, found)):
        raise NotMultipartite(f"parts {given} do not match the graph's partite sets {found}")
    return sorted((sorted(p) for p in given), key=lambda p: (-len(p), p[0]))


def minimize_multipartite(g: Graph, parts=None, m: int = 0, k: int = 2, start=None) -> ShiftTrace:
    """Empty the highest-indexed occupied part onto the previous one, repeatedly,
    then balance on the largest part I_1.

    Parts are ordered largest first. The i-th vertex of I_s is paired with
    the i-th vertex of I_(s-1), which exists because |I_(s-1)| >= |I_s|.
    """
    parts = _parts_for(g, parts)
    t = _Tracer(g, _start(g, m, start), k)
    part_of = {v: j for j, p in enumerate(parts) for v in p}

    while True:
        occupied = [part_of[v] for v in t.w.support()]
        if not occupied or max(occupied) == 0:
            break
        s = max(occupied)
        a = parts[s]
        t.shift(ShiftSpec(tuple(a), tuple(parts[s - 1][: len(a)])))
    t.balance(parts[0])
    return t.finish()


def minimize_chordal(g: Graph, m: int, k: int, start=None) -> ShiftTrace:
    """Constructive minimizer for chordal graphs, unrolled into an explicit stack of
    removed vertices.

    Descent, on the subgraph induced by the active vertices (elimination
    order restricted to them, v_1 first):
      * no edges left: stop;
      * v_1 isolated: park v_1 (its weight stays) and drop it;
      * otherwise shift the weight of its first later neighbour v_h onto
        v_1 and drop v_h.
    The base is balanced, then each frame is unwound: the vertex is put back,
    the weighting (now on an independent set) is relocated onto the
    lexicographically smallest maximum independent set of the active
    subgraph, and balanced there.

    Parked vertices are non-adjacent to everything still active, so every
    step is also monotone for pi_k of the whole graph.
    """
    ordering = find_elimination_ordering(g)
    if ordering is None:
        raise NotChordal("graph is not chordal")
    t = _Tracer(g, _start(g, m, start), k)
    active = g.vertex_mask
    frames: list[int] = []

    while True:
        seq = [v for v in ordering.order if active >> v & 1]
        if all(g.adj[v] & active == 0 for v in seq):
            break
        v1 = seq[0]
        if g.adj[v1] & active == 0:
            frames.append(v1)
            active &= ~(1 << v1)
            continue
        vh = next(v for v in seq[1:] if g.has_edge(v1, v))
        t.shift(ShiftSpec((vh,), (v1,)))
        frames.append(vh)
        active &= ~(1 << vh)

    t.balance(list(bits(active)))
    for v in reversed(frames):
        active |= 1 << v
        target = max_independent_set(g, within=active)
        t.relocate(target, within=active)
        t.balance(target)
    return t.finish()


def minimize_edgeless(g: Graph, m: int, k: int, start=None) -> ShiftTrace:
    """Unit balancing on a graph without edges."""
    if g.num_edges:
        raise ValueError("graph has edges")
    t = _Tracer(g, _start(g, m, start), k)
    t.balance(range(g.n))
    return t.finish()


# strict gap for k >= 3


def strict_gap_check(g: Graph, m: int, k: int, claim: str = "strict_gap", instance: Optional[dict] = None) -> VerificationReport:
    """Compare a uniform-alpha weighting with a weighting uniform on a largest
    k-clique independent set (lexicographically smallest one).

    The expected outcome under k >= 3 and m >= k * alpha_k is a strict
    inequality in favour of the uniform-alpha weighting.
    """
    mis = max_independent_set(g)
    kcis = max_k_clique_independent_set(g, k)
    w_alpha = uniform_weighting(g, mis, m)
    w_kcis = uniform_weighting(g, kcis, m)
    ua = count_cliques_formula(g, w_alpha, k)
    uk = count_cliques_formula(g, w_kcis, k)
    hyp = k >= 3 and m >= k * len(kcis)
    inst = dict(instance or {})
    inst.update({"graph": g.digest(), "n": g.n, "m": m, "k": k})
    return VerificationReport(
        claim=claim,
        instance=inst,
        values={
            "alpha": len(mis),
            "alpha_k": len(kcis),
            "uniform_alpha": ua,
            "uniform_alpha_k": uk,
        },
        verdict="pass" if ua < uk else "fail",
        details=(
            f"uniform on max independent set {mis} gives {ua}; "
            f"uniform on largest {k}-clique independent set {kcis} (lexicographically first) gives {uk}"
        ),
        hypotheses_met=hyp,
        weightings={"uniform_alpha": list(w_alpha), "uniform_alpha_k": list(w_kcis)},
    )


# conjecture sweep


def best_uniform_on_kci(g: Graph, m: int, k: int) -> tuple[int, Weighting]:
    """Smallest pi_k over all weightings uniform on some k-clique independent set.

    Every non-empty k-clique independent set and every placement of the
    ceiling weights is tried (exhaustive; small graphs only).
    """
    counter = CliqueCounter(g, k)
    best, best_w = None, None
    for s in k_clique_independent_sets(g, k):
        members = list(bits(s))
        q, r = divmod(m, len(members))
        for heavy in combinations(members, r):
            w = [0] * g.n
            for v in members:
                w[v] = q
            for v in heavy:
                w[v] += 1
            val = counter(w)
            if best is None or val < best:
                best, best_w = val, Weighting(tuple(w))
    if best is None:
        # only the empty graph has no non-empty k-clique independent set
        best, best_w = 0, Weighting(())
    return best, best_w


@dataclass
class SweepRow:
    graph: str
    n: int
    edges: int
    m: int
    k: int
    min_value: int
    uniform_alpha_value: int
    best_kci_value: int
    best_kci_weighting: Weighting

    @property
    def conjecture_holds(self) -> bool:
        return self.best_kci_value <= self.min_value

    @property
    def uniform_alpha_minimal(self) -> bool:
        return self.uniform_alpha_value <= self.min_value

    def sort_key(self):
        return (self.n, self.edges, self.graph, self.m, self.k)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "n": self.n,
            "edges": self.edges,
            "m": self.m,
            "k": self.k,
            "min": str(self.min_value),
            "uniform_alpha": str(self.uniform_alpha_value),
            "best_uniform_kci": str(self.best_kci_value),
            "best_uniform_kci_weighting": list(self.best_kci_weighting),
            "conjecture_holds": self.conjecture_holds,
            "uniform_alpha_minimal": self.uniform_alpha_minimal,
        }

    CSV_FIELDS = (
        "graph", "n", "edges", "m", "k", "min", "uniform_alpha", "best_uniform_kci",
        "conjecture_holds", "uniform_alpha_minimal",
    )

    def csv_row(self) -> list:
        d = self.to_dict()
        return [d[f] for f in self.CSV_FIELDS]


@dataclass
class SweepReport:
    rows: list[SweepRow]
    skipped: list[dict]

    @property
    def violations(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.conjecture_holds]

    @property
    def uniform_alpha_nonminimal(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.uniform_alpha_minimal]

    def to_dict(self) -> dict:
        return {
            "instances": len(self.rows),
            "violations": [r.to_dict() for r in self.violations],
            "uniform_alpha_nonminimal": [r.to_dict() for r in self.uniform_alpha_nonminimal],
            "skipped": self.skipped,
            "rows": [r.to_dict() for r in self.rows],
        }


def sweep_instance(g: Graph, m: int, k: int, max_weightings: int = DEFAULT_MAX_WEIGHTINGS, name: Optional[str] = None) -> SweepRow:
    res = brute_force_min(g, m, k, max_weightings=max_weightings, cap=1)
    alpha = independence_number(g) if g.n else 0
    ua = balanced_value(alpha, m, k) if alpha else 0
    best, best_w = best_uniform_on_kci(g, m, k)
    return SweepRow(
        graph=name or g.digest(),
        n=g.n,
        edges=g.num_edges,
        m=m,
        k=k,
        min_value=res.min_value,
        uniform_alpha_value=ua,
        best_kci_value=best,
        best_kci_weighting=best_w,
    )


def conjecture_sweep(
    graphs: Sequence[Graph],
    m_range: Iterable[int],
    k_range: Iterable[int],
    max_weightings: int = DEFAULT_MAX_WEIGHTINGS,
    names: Optional[Sequence[str]] = None,
) -> SweepReport:
    """For every (graph, m, k): exact minimum versus the best weighting uniform
    on a k-clique independent set, and versus the uniform-alpha value.

    Instances over budget are skipped and listed. Rows are sorted so the
    report does not depend on input order.
    """
    m_range, k_range = list(m_range), list(k_range)
    rows, skipped = [], []
    for idx, g in enumerate(graphs):
        name = names[idx] if names is not None else g.digest()
        for m in m_range:
            for k in k_range:
                try:
                    rows.append(sweep_instance(g, m, k, max_weightings, name))
                except BudgetExceeded as exc:
                    skipped.append({"graph": name, "m": m, "k": k, "required": exc.required, "budget": exc.budget})
    rows.sort(key=SweepRow.sort_key)
    skipped.sort(key=lambda d: (d["graph"], d["m"], d["k"]))
    return SweepReport(rows, skipped)
