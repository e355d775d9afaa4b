"""Weight shifting along edges.

``shift_edge`` is the single-edge move: all weight of ``a`` goes to its
neighbour ``b``. ``multi_shift`` moves weight simultaneously along r disjoint
pairs a_i -> b_i and is only carried out when the pairs pass
``validate_shift``; under those conditions the number of k-cliques of the
blow-up cannot increase for any k >= 2. ``build_injection_certificate``
checks that claim on explicit blow-ups by constructing the clique injection
from G(w') into G(w).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .blowup import BudgetExceeded, Weighting, as_weighting, build_blowup, count_cliques_formula, count_edges_formula
from .graph import Graph, bits, is_independent, iter_cliques, to_mask

LEMMA3 = "lemma3"
LEMMA4 = "lemma4"
MODES = (LEMMA3, LEMMA4)


class ShiftError(ValueError):
    pass


class InvalidShift(ShiftError):
    """A multi-edge shift whose preconditions do not hold."""

    def __init__(self, validation: "ShiftValidation"):
        super().__init__(f"shift preconditions fail: {validation.failures}")
        self.validation = validation


class CertificateError(AssertionError):
    pass


@dataclass(frozen=True)
class ShiftSpec:
    """Pairs (a_i, b_i): weight of a_i is moved onto b_i."""

    a_list: tuple[int, ...]
    b_list: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a_list)
        b = tuple(int(x) for x in self.b_list)
        object.__setattr__(self, "a_list", a)
        object.__setattr__(self, "b_list", b)
        if len(a) != len(b):
            raise ShiftError(f"A has {len(a)} vertices but B has {len(b)}")
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise ShiftError("A and B must consist of distinct vertices")
        if set(a) & set(b):
            raise ShiftError(f"A and B overlap in {sorted(set(a) & set(b))}")

    @property
    def r(self) -> int:
        return len(self.a_list)

    def pairs(self):
        return zip(self.a_list, self.b_list)

    def to_dict(self) -> dict:
        return {"A": list(self.a_list), "B": list(self.b_list)}

    @classmethod
    def from_dict(cls, d: dict) -> "ShiftSpec":
        try:
            return cls(tuple(d["A"]), tuple(d["B"]))
        except (KeyError, TypeError) as exc:
            raise ShiftError(f"shift JSON must have 'A' and 'B' lists: {exc}") from None


@dataclass
class ShiftValidation:
    mode: str
    cond_edges: bool
    cond_B: bool
    cond_neighborhood: bool
    failures: list[tuple[str, int, int]] = field(default_factory=list)
    a_independent: bool = True

    @property
    def valid(self) -> bool:
        return self.cond_edges and self.cond_B and self.cond_neighborhood

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "valid": self.valid,
            "cond_edges": self.cond_edges,
            "cond_B": self.cond_B,
            "cond_neighborhood": self.cond_neighborhood,
            "A_independent": self.a_independent,
            "failures": [list(f) for f in self.failures],
        }


def _check(g: Graph, w: Weighting, spec: Optional[ShiftSpec] = None):
    if len(w) != g.n:
        raise ShiftError(f"weighting has {len(w)} entries but graph has {g.n} vertices")
    if spec is not None:
        for v in spec.a_list + spec.b_list:
            if not 0 <= v < g.n:
                raise IndexError(f"vertex {v} out of range for n={g.n}")


# single-edge shifts


def shift_edge(g: Graph, w, a: int, b: int) -> Weighting:
    """w_ab: zero at a, w(a) + w(b) at b."""
    w = as_weighting(w)
    _check(g, w)
    if not g.has_edge(a, b):
        raise ShiftError(f"{a}{b} is not an edge")
    return w.replace({a: 0, b: w[a] + w[b]})


def katona_best_edge_shift(g: Graph, w, a: int, b: int) -> Weighting:
    """The better of w_ab and w_ba for edge counts; ties go to w_ab.

    One of the two never has more edges than w, so the result never does.
    """
    w_ab = shift_edge(g, w, a, b)
    w_ba = shift_edge(g, w, b, a)
    if count_edges_formula(g, w_ba) < count_edges_formula(g, w_ab):
        return w_ba
    return w_ab


# multi-edge shifts


def validate_shift(g: Graph, w, spec: ShiftSpec, mode: str = LEMMA3) -> ShiftValidation:
    """Check the three shift conditions literally, collecting witnesses.

    1. a_i b_i is an edge for every i.
    2. lemma3: B is independent.
       lemma4: whenever b_i b_j is an edge, so are a_i a_j, a_i b_j and a_j b_i.
    3. N(b_i) minus A and minus the zero-weight vertices of w lies in N(a_i).

    Witnesses are (condition, pair index, offending vertex).
    """
    if mode not in MODES:
        raise ShiftError(f"unknown mode {mode!r}; expected one of {MODES}")
    w = as_weighting(w)
    _check(g, w, spec)
    failures: list[tuple[str, int, int]] = []

    cond_edges = True
    for i, (a, b) in enumerate(spec.pairs()):
        if not g.has_edge(a, b):
            cond_edges = False
            failures.append(("edges", i, b))

    cond_b = True
    pairs = list(spec.pairs())
    for i in range(spec.r):
        for j in range(i + 1, spec.r):
            (ai, bi), (aj, bj) = pairs[i], pairs[j]
            if not g.has_edge(bi, bj):
                continue
            if mode == LEMMA3:
                cond_b = False
                failures.append(("B_independent", i, bj))
                continue
            for x, y in ((ai, aj), (ai, bj), (aj, bi)):
                if not g.has_edge(x, y):
                    cond_b = False
                    failures.append(("pair_edges", i, y if x == ai else x))

    excluded = to_mask(spec.a_list) | to_mask(v for v in range(g.n) if w[v] == 0)
    cond_nb = True
    for i, (a, b) in enumerate(spec.pairs()):
        outside = g.adj[b] & ~excluded & ~g.adj[a]
        for v in bits(outside):
            cond_nb = False
            failures.append(("neighborhood", i, v))

    return ShiftValidation(
        mode=mode,
        cond_edges=cond_edges,
        cond_B=cond_b,
        cond_neighborhood=cond_nb,
        failures=failures,
        a_independent=is_independent(g, spec.a_list),
    )


def apply_shift(w, spec: ShiftSpec) -> Weighting:
    """The shifted weighting, without any precondition check."""
    w = as_weighting(w)
    changes = {a: 0 for a in spec.a_list}
    for a, b in spec.pairs():
        changes[b] = w[b] + w[a]
    return w.replace(changes)


def multi_shift(g: Graph, w, spec: ShiftSpec, mode: Optional[str] = None) -> Weighting:
    """Shift along every pair of ``spec`` at once.

    With ``mode=None`` the spec is accepted if it passes either the lemma3 or
    the lemma4 conditions. Raises InvalidShift otherwise.
    """
    w = as_weighting(w)
    modes = MODES if mode is None else (mode,)
    report = None
    for md in modes:
        report = validate_shift(g, w, spec, md)
        if report.valid:
            return apply_shift(w, spec)
    raise InvalidShift(report)


# injection certificate


@dataclass
class InjectionCertificate:
    """Vertex map phi: V(G(w')) -> V(G(w)) and its verification verdicts."""

    k: int
    phi: dict[tuple[int, int], tuple[int, int]]
    bijective: bool
    cliques_preserved: bool
    injective: bool
    cliques_after: int
    cliques_before: int

    @property
    def verified(self) -> bool:
        return self.bijective and self.cliques_preserved and self.injective

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "bijective": self.bijective,
            "cliques_preserved": self.cliques_preserved,
            "injective": self.injective,
            "cliques_after": self.cliques_after,
            "cliques_before": self.cliques_before,
            "phi": [[list(src), list(dst)] for src, dst in sorted(self.phi.items()) if src != dst],
        }


def build_injection_certificate(
    g: Graph, w, spec: ShiftSpec, k: int, mode: Optional[str] = None, max_blowup: int = 40
) -> InjectionCertificate:
    """Construct phi and the induced clique map Phi, and verify them.

    phi sends the copies (b_j, i) with w(b_j) < i <= w(b_j) + w(a_j) to
    (a_j, i - w(b_j)) and fixes every other vertex. Copies are 1-based.
    Raises CertificateError if any check fails.
    """
    w = as_weighting(w)
    w_new = multi_shift(g, w, spec, mode)
    if w.m > max_blowup:
        raise BudgetExceeded(f"blow-up has {w.m} vertices, budget is {max_blowup}", w.m, max_blowup)
    old = build_blowup(g, w)
    new = build_blowup(g, w_new)

    moved = {b: (a, w[b]) for a, b in spec.pairs()}
    phi: dict[tuple[int, int], tuple[int, int]] = {}
    for v, i in new.vertices:
        if v in moved and i > moved[v][1]:
            a, base = moved[v]
            phi[(v, i)] = (a, i - base)
        else:
            phi[(v, i)] = (v, i)

    old_index = {p: j for j, p in enumerate(old.vertices)}
    images = set(phi.values())
    bijective = len(images) == len(phi) == len(old.vertices) and images == set(old_index)

    old_cliques = {frozenset(c) for c in iter_cliques(old.graph, k)}
    mapped = set()
    preserved = True
    count_after = 0
    for c in iter_cliques(new.graph, k):
        count_after += 1
        image = frozenset(old_index[phi[new.vertices[j]]] for j in c)
        if len(image) != k or image not in old_cliques:
            preserved = False
        mapped.add(image)
    injective = len(mapped) == count_after

    cert = InjectionCertificate(
        k=k,
        phi=phi,
        bijective=bijective,
        cliques_preserved=preserved,
        injective=injective,
        cliques_after=count_after,
        cliques_before=len(old_cliques),
    )
    if not cert.verified:
        raise CertificateError(f"injection certificate failed: {cert.to_dict()}")
    return cert


def shift_effect(g: Graph, w, spec: ShiftSpec, k: int) -> tuple[int, int]:
    """(pi_k before, pi_k after) for an unchecked shift."""
    w = as_weighting(w)
    return count_cliques_formula(g, w, k), count_cliques_formula(g, apply_shift(w, spec), k)
