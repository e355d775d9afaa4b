"""Reproductions of the worked examples and per-instance checks of the
minimisation results, each returning a VerificationReport."""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Optional

from .blowup import (
    Weighting,
    balanced_value,
    count_cliques_formula,
    count_cliques_oracle,
    uniform_weighting,
)
from .families import (
    DOWN,
    UP,
    FamilyError,
    MultipartiteSpec,
    build_multipartite,
    build_sperner,
    hall_level_matching,
    middle_level,
)
from .graph import (
    Graph,
    empty_graph,
    find_elimination_ordering,
    independence_number,
    is_independent,
    k_clique_independence_number,
    max_independent_set,
    path_graph,
    prism_graph,
)
from .reports import FAIL, PASS, VerificationReport
from .search import (
    DEFAULT_MAX_WEIGHTINGS,
    brute_force_min,
    minimize_chordal,
    minimize_edgeless,
    minimize_multipartite,
    minimize_sperner,
    num_weightings,
    strict_gap_check,
    weak_compositions,
)
from .shifting import CertificateError, ShiftSpec, apply_shift, build_injection_certificate, shift_edge, validate_shift

REPRODUCE_CLAIMS = ("counterexample1", "figure1", "remark2_counts")
VERIFY_CLAIMS = ("t3", "t4", "t5", "t6", "t8", "t9", "lemma1", "lemma2", "lemma3", "lemma8")
DEFAULT_MAX_BLOWUP = 25

PRISM_WEIGHTINGS = {
    "a": (1, 1, 1, 1, 1, 1),
    "b": (2, 0, 1, 1, 1, 1),
    "c": (1, 0, 1, 1, 2, 1),
}


class UnknownClaim(ValueError):
    pass


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# reproductions


def reproduce_path_gap(k: int = 3, max_blowup: int = DEFAULT_MAX_BLOWUP) -> VerificationReport:
    """Path a-b-c with m = 3k: (k, k, k) against (2k, 0, k)."""
    g = path_graph(3)
    w_uniform = Weighting((k, k, k))
    w_shifted = shift_edge(g, w_uniform, 1, 0)
    values = {
        "pi_uniform": count_cliques_formula(g, w_uniform, k),
        "pi_shifted": count_cliques_formula(g, w_shifted, k),
        "closed_uniform": 2 * comb(2 * k, k) - comb(k, k),
        "closed_shifted": comb(2 * k, k) + comb(k, k),
    }
    ok = values["pi_uniform"] == values["closed_uniform"] and values["pi_shifted"] == values["closed_shifted"]
    if 3 * k <= max_blowup:
        values["oracle_uniform"] = count_cliques_oracle(g, w_uniform, k, max_blowup)
        values["oracle_shifted"] = count_cliques_oracle(g, w_shifted, k, max_blowup)
        ok = ok and values["oracle_uniform"] == values["pi_uniform"] and values["oracle_shifted"] == values["pi_shifted"]
    ok = ok and values["pi_shifted"] < values["pi_uniform"]
    return VerificationReport(
        claim="counterexample1",
        instance={"graph": "path3", "k": k, "m": 3 * k, "hypotheses": "k >= 3"},
        values=values,
        verdict=_verdict(ok),
        hypotheses_met=k >= 3,
        details="uniform on V(G) (the largest k-clique independent set) has more k-cliques than (2k, 0, k)",
        weightings={"uniform": list(w_uniform), "shifted": list(w_shifted)},
    )


def reproduce_prism_shifts(max_blowup: int = DEFAULT_MAX_BLOWUP) -> VerificationReport:
    """Prism with unit weights, and the two single-edge shifts of vertex 1."""
    g = prism_graph()
    expected = {"a": 2, "b": 3, "c": 4}
    derived = {
        "a": PRISM_WEIGHTINGS["a"],
        "b": tuple(shift_edge(g, PRISM_WEIGHTINGS["a"], 1, 0)),
        "c": tuple(shift_edge(g, PRISM_WEIGHTINGS["a"], 1, 4)),
    }
    values = {}
    ok = derived == PRISM_WEIGHTINGS
    for key, w in PRISM_WEIGHTINGS.items():
        f = count_cliques_formula(g, w, 3)
        o = count_cliques_oracle(g, w, 3, max_blowup)
        values[f"pi3_{key}"] = f
        values[f"oracle_pi3_{key}"] = o
        ok = ok and f == o == expected[key]
    return VerificationReport(
        claim="figure1",
        instance={"graph": "prism", "k": 3, "m": 6},
        values=values,
        verdict=_verdict(ok),
        details="single-edge shifts from unit weights raise the triangle count 2 -> 3 and 2 -> 4",
        weightings={key: list(w) for key, w in PRISM_WEIGHTINGS.items()},
    )


def reproduce_uniform_counts(m: int = 7, n: int = 3) -> VerificationReport:
    """Uniform weighting of an n-set: n - r vertices at floor, r at ceiling."""
    if n < 1:
        raise ValueError("n must be positive")
    w = uniform_weighting(empty_graph(n), range(n), m)
    q, r = divmod(m, n)
    values = {
        "floor": q,
        "r": r,
        "n_minus_r": n - r,
        "count_floor": sum(1 for x in w if x == q),
        "count_ceil": sum(1 for x in w if x == q + 1),
    }
    ok = values["count_floor"] == n - r and values["count_ceil"] == r and sum(w) == m
    return VerificationReport(
        claim="remark2_counts",
        instance={"m": m, "n": n},
        values=values,
        verdict=_verdict(ok),
        weightings={"uniform": list(w)},
    )


def reproduce(claim: str, **params) -> VerificationReport:
    if claim == "counterexample1":
        return reproduce_path_gap(params.get("k") or 3, params.get("max_blowup") or DEFAULT_MAX_BLOWUP)
    if claim == "figure1":
        return reproduce_prism_shifts(params.get("max_blowup") or DEFAULT_MAX_BLOWUP)
    if claim == "remark2_counts":
        m = params.get("m")
        n = params.get("n")
        return reproduce_uniform_counts(7 if m is None else m, 3 if n is None else n)
    raise UnknownClaim(f"unknown claim {claim!r}; expected one of {REPRODUCE_CLAIMS}")


# per-instance verification


def _instance(g: Graph, **kw) -> dict:
    d = {"graph": g.digest(), "n": g.n, "edges": [list(e) for e in g.edges()]}
    d.update(kw)
    return d


def _against_brute(claim, g, m, k, candidate, trace=None, max_weightings=DEFAULT_MAX_WEIGHTINGS, extra_details=""):
    """Candidate weighting (and optional minimizer trace) versus the brute-force minimum."""
    res = brute_force_min(g, m, k, max_weightings=max_weightings, cap=1)
    cand = count_cliques_formula(g, candidate, k)
    values = {"brute_force_min": res.min_value, "candidate": cand, "weightings_enumerated": res.visited + res.pruned}
    ok = cand == res.min_value
    weightings = {"candidate": list(candidate), "a_minimizer": list(res.minimizers[0])}
    if trace is not None:
        values["trace_final"] = trace.final_value
        values["trace_steps"] = len(trace.steps)
        ok = ok and trace.monotone and trace.final_value == res.min_value
        values["trace_monotone"] = int(trace.monotone)
        weightings["trace_final"] = list(trace.final)
    return VerificationReport(
        claim=claim,
        instance=_instance(g, m=m, k=k),
        values=values,
        verdict=_verdict(ok),
        details=extra_details,
        weightings=weightings,
    )


def check_uniform_alpha_edges(g: Graph, m: int, max_weightings=DEFAULT_MAX_WEIGHTINGS) -> VerificationReport:
    """Edge count: a uniform-alpha weighting is a minimizer."""
    cand = uniform_weighting(g, max_independent_set(g), m)
    return _against_brute("t3", g, m, 2, cand, max_weightings=max_weightings, extra_details="uniform-alpha vs brute force, k=2")


def check_sperner_middle(n: int, m: int, k: int, max_weightings=DEFAULT_MAX_WEIGHTINGS) -> VerificationReport:
    b = build_sperner(n)
    cand = uniform_weighting(b.graph, middle_level(b), m)
    trace = minimize_sperner(b, m, k)
    rep = _against_brute("t4", b.graph, m, k, cand, trace, max_weightings, f"uniform on level {b.middle} of B_{n}")
    rep.instance["sperner_n"] = n
    return rep


def check_multipartite(sizes, m: int, k: int, max_weightings=DEFAULT_MAX_WEIGHTINGS) -> VerificationReport:
    spec = sizes if isinstance(sizes, MultipartiteSpec) else MultipartiteSpec(tuple(sizes))
    g = build_multipartite(spec)
    cand = uniform_weighting(g, spec.parts()[0], m)
    trace = minimize_multipartite(g, spec, m, k)
    rep = _against_brute("t5", g, m, k, cand, trace, max_weightings, "uniform on the largest part")
    rep.instance["part_sizes"] = list(spec.part_sizes)
    return rep


def check_chordal(g: Graph, m: int, k: int, max_weightings=DEFAULT_MAX_WEIGHTINGS) -> VerificationReport:
    if find_elimination_ordering(g) is None:
        return VerificationReport("t6", _instance(g, m=m, k=k), {}, FAIL, "graph is not chordal", hypotheses_met=False)
    cand = uniform_weighting(g, max_independent_set(g), m)
    trace = minimize_chordal(g, m, k)
    return _against_brute("t6", g, m, k, cand, trace, max_weightings, "uniform-alpha and chordal minimizer vs brute force")


def _with_oracle(rep: VerificationReport, g: Graph, k: int, max_blowup: int) -> VerificationReport:
    """Recount both weightings of a strict-gap report on explicit blow-ups, when small enough."""
    m = rep.instance["m"]
    if m > max_blowup:
        rep.extra["oracle"] = f"skipped: m={m} exceeds blow-up budget {max_blowup}"
        return rep
    for key in ("uniform_alpha", "uniform_alpha_k"):
        rep.values[f"oracle_{key}"] = count_cliques_oracle(g, rep.weightings[key], k, max_blowup)
    ok = (
        rep.values["oracle_uniform_alpha"] == rep.values["uniform_alpha"]
        and rep.values["oracle_uniform_alpha_k"] == rep.values["uniform_alpha_k"]
        and rep.values["uniform_alpha"] < rep.values["uniform_alpha_k"]
    )
    rep.verdict = _verdict(ok)
    return rep


def check_sperner_gap(n: int, m: Optional[int], k: int, max_blowup: int = DEFAULT_MAX_BLOWUP) -> VerificationReport:
    """B_n, k >= 3, m >= k * alpha_k: uniform-alpha strictly beats uniform on a largest k-clique independent set.

    ``m=None`` means m = k * alpha_k(B_n).
    """
    b = build_sperner(n)
    if m is None:
        m = k * k_clique_independence_number(b.graph, k)
    rep = strict_gap_check(b.graph, m, k, claim="t8", instance={"sperner_n": n})
    rep.hypotheses_met = rep.hypotheses_met and n >= 2
    return _with_oracle(rep, b.graph, k, max_blowup)


def check_multipartite_gap(sizes, m: Optional[int], k: int, max_blowup: int = DEFAULT_MAX_BLOWUP) -> VerificationReport:
    spec = sizes if isinstance(sizes, MultipartiteSpec) else MultipartiteSpec(tuple(sizes))
    g = build_multipartite(spec)
    if m is None:
        m = k * k_clique_independence_number(g, k)
    rep = strict_gap_check(g, m, k, claim="t9", instance={"part_sizes": list(spec.part_sizes)})
    strictly_largest = len(spec.part_sizes) == 1 or spec.part_sizes[0] > spec.part_sizes[1]
    rep.hypotheses_met = rep.hypotheses_met and strictly_largest
    return _with_oracle(rep, g, k, max_blowup)


def check_edgeless_balance(n: int, m: int, k: int, max_weightings=DEFAULT_MAX_WEIGHTINGS) -> VerificationReport:
    g = empty_graph(n)
    cand = uniform_weighting(g, range(n), m)
    trace = minimize_edgeless(g, m, k)
    rep = _against_brute("lemma1", g, m, k, cand, trace, max_weightings, "balanced weights on an edgeless graph")
    rep.values["balanced_value"] = balanced_value(n, m, k)
    if rep.values["balanced_value"] != rep.values["brute_force_min"]:
        rep.verdict = FAIL
    return rep


def check_independent_supports(g: Graph, m: int, k: int, max_weightings=DEFAULT_MAX_WEIGHTINGS) -> VerificationReport:
    """Every weighting supported on an independent set is no better than
    uniform on a maximum independent set."""
    alpha = independence_number(g)
    target = uniform_weighting(g, max_independent_set(g), m)
    target_value = count_cliques_formula(g, target, k)
    checked, smallest = 0, None
    for size in range(1, alpha + 1):
        for support in combinations(range(g.n), size):
            if not is_independent(g, support):
                continue
            if num_weightings(size, m) > max_weightings:
                continue
            for ws in weak_compositions(m, size):
                w = [0] * g.n
                for v, x in zip(support, ws):
                    w[v] = x
                val = count_cliques_formula(g, w, k)
                checked += 1
                if smallest is None or val < smallest:
                    smallest = val
    ok = smallest is not None and target_value <= smallest
    return VerificationReport(
        claim="lemma2",
        instance=_instance(g, m=m, k=k),
        values={"uniform_on_max_independent": target_value, "min_over_independent_supports": smallest or 0, "checked": checked},
        verdict=_verdict(ok),
        weightings={"uniform_on_max_independent": list(target)},
    )


def check_shift(g: Graph, w, spec: ShiftSpec, k: int, mode: Optional[str] = None, max_blowup: int = 40) -> VerificationReport:
    """Validate a shift, build the clique injection, and compare counts."""
    w = Weighting(tuple(w))
    modes = ("lemma3", "lemma4") if mode is None else (mode,)
    validation = None
    for md in modes:
        validation = validate_shift(g, w, spec, md)
        if validation.valid:
            break
    inst = _instance(g, k=k, m=w.m, weights=list(w), A=list(spec.a_list), B=list(spec.b_list))
    before = count_cliques_formula(g, w, k)
    if not validation.valid:
        return VerificationReport(
            "lemma3", inst, {"pi_before": before}, FAIL, "shift preconditions do not hold",
            hypotheses_met=False, extra={"validation": validation.to_dict()},
        )
    w_new = apply_shift(w, spec)
    after = count_cliques_formula(g, w_new, k)
    values = {"pi_before": before, "pi_after": after}
    extra = {"validation": validation.to_dict()}
    ok = after <= before
    if w.m <= max_blowup:
        try:
            cert = build_injection_certificate(g, w, spec, k, validation.mode, max_blowup)
            values["certificate_cliques_after"] = cert.cliques_after
            values["certificate_cliques_before"] = cert.cliques_before
            extra["certificate"] = {key: v for key, v in cert.to_dict().items() if key != "phi"}
            ok = ok and cert.cliques_after == after and cert.cliques_before == before
        except CertificateError as exc:
            extra["certificate"] = str(exc)
            ok = False
    else:
        extra["certificate"] = f"skipped: m={w.m} exceeds blow-up budget {max_blowup}"
    return VerificationReport("lemma3", inst, values, _verdict(ok), weightings={"after": list(w_new)}, extra=extra)


def check_level_matching(n: int, r: int, direction: str) -> VerificationReport:
    b = build_sperner(n)
    inst = {"sperner_n": n, "r": r, "direction": direction}
    try:
        lm = hall_level_matching(b, r, direction)
    except FamilyError as exc:
        applicable = (direction == UP and 0 <= r and 2 * r < n) or (direction == DOWN and 2 * r > n and r <= n)
        return VerificationReport("lemma8", inst, {}, FAIL, str(exc), hypotheses_met=applicable)
    source = b.level(r)
    targets = [t for _, t in lm.pairs]
    ok = (
        sorted(s for s, _ in lm.pairs) == source
        and len(set(targets)) == len(targets)
        and all(b.graph.has_edge(s, t) for s, t in lm.pairs)
        and all((b.masks[s] & b.masks[t]) == (b.masks[s] if direction == UP else b.masks[t]) for s, t in lm.pairs)
    )
    return VerificationReport(
        "lemma8", inst, {"level_size": len(source), "matched": len(lm.pairs)}, _verdict(ok),
        extra={"pairs": [[b.graph.label(s), b.graph.label(t)] for s, t in lm.pairs]},
    )
