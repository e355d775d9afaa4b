"""Acceptance gate: the ten end-to-end criteria at their stated tolerances.

Each test records one line in RESULTS; conftest prints them in the terminal
summary, and running this file directly prints them too.
"""

import itertools
import random
import time
from math import comb

import pytest

from kclique.blowup import count_cliques_formula, count_cliques_oracle, uniform_weighting
from kclique.families import (
    DOWN,
    UP,
    build_multipartite,
    build_sperner,
    chordal_corpus,
    graph_corpus,
    middle_level,
    multipartite_corpus,
)
from kclique.graph import Graph, independence_number, is_independent, path_graph, prism_graph
from kclique.search import SweepReport, SweepRow, brute_force_min, conjecture_sweep, minimize_chordal, minimize_multipartite
from kclique.shifting import LEMMA3, LEMMA4, ShiftSpec, build_injection_certificate, multi_shift, validate_shift
from kclique.verify import PRISM_WEIGHTINGS, check_level_matching, check_sperner_gap

pytestmark = pytest.mark.acceptance

RESULTS = []


def record(number, ok, elapsed, limit, detail):
    ok = ok and elapsed < limit
    RESULTS.append(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  ({elapsed:.2f}s, limit {limit:g}s)  {detail}")
    return ok


def timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


def uniform_alpha_values(g, m, k):
    """pi_k of every uniform-alpha weighting (every maximum independent set,
    every placement of the ceiling weights)."""
    alpha = independence_number(g)
    q, r = divmod(m, alpha)
    out = set()
    for s in itertools.combinations(range(g.n), alpha):
        if not is_independent(g, s):
            continue
        for heavy in itertools.combinations(s, r):
            w = [0] * g.n
            for v in s:
                w[v] = q + (v in heavy)
            out.add(count_cliques_formula(g, w, k))
    return out


# 1. path counterexample


def criterion_1():
    g = path_graph(3)
    got = []
    ok = True
    for k in (3, 4, 5):
        uni, shifted = (k, k, k), (2 * k, 0, k)
        f = (count_cliques_formula(g, uni, k), count_cliques_formula(g, shifted, k))
        o = (count_cliques_oracle(g, uni, k), count_cliques_oracle(g, shifted, k))
        closed = (2 * comb(2 * k, k) - 1, comb(2 * k, k) + 1)
        ok = ok and f == o == closed
        got.append(f"k={k}: {f[0]} vs {f[1]}")
    ok = ok and got == ["k=3: 39 vs 21", "k=4: 139 vs 71", "k=5: 503 vs 253"]
    return ok, "; ".join(got)


def test_criterion_1_counterexample_values():
    ok, detail, t = timed(criterion_1)
    assert record(1, ok, t, 1, detail), detail


# 2. prism sequence


def criterion_2():
    g = prism_graph()
    seq_f = [count_cliques_formula(g, PRISM_WEIGHTINGS[x], 3) for x in "abc"]
    seq_o = [count_cliques_oracle(g, PRISM_WEIGHTINGS[x], 3) for x in "abc"]
    return seq_f == seq_o == [2, 3, 4], f"formula {seq_f}, oracle {seq_o}"


def test_criterion_2_prism_sequence():
    ok, detail, t = timed(criterion_2)
    assert record(2, ok, t, 1, detail), detail


# 3. formula against explicit blow-up


def criterion_3(instances=10_000):
    rng = random.Random(3)
    bad = 0
    for _ in range(instances):
        n = rng.randint(1, 6)
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < rng.random()])
        m = rng.randint(0, 10)
        w = [0] * n
        for _ in range(m):
            w[rng.randrange(n)] += 1
        k = rng.randint(1, 5)
        if count_cliques_formula(g, w, k) != count_cliques_oracle(g, w, k):
            bad += 1
    return bad == 0, f"{instances} random instances, {bad} discrepancies"


def test_criterion_3_formula_oracle_equivalence():
    ok, detail, t = timed(criterion_3)
    assert record(3, ok, t, 300, detail), detail


# 4. Sperner graphs


def criterion_4():
    bad, count = [], 0
    for n in (2, 3):
        b = build_sperner(n)
        for m in range(1, 7):
            w = uniform_weighting(b.graph, middle_level(b), m)
            for k in (2, 3):
                count += 1
                if count_cliques_formula(b.graph, w, k) != brute_force_min(b.graph, m, k).min_value:
                    bad.append((n, m, k))
    return not bad, f"{count} instances, violations {bad}"


def test_criterion_4_sperner_middle_level():
    ok, detail, t = timed(criterion_4)
    assert record(4, ok, t, 600, detail), detail


# 5. multipartite and chordal minimizers


def criterion_5():
    rng = random.Random(5)
    bad, count = [], 0

    def random_start(n, m):
        w = [0] * n
        for _ in range(m):
            w[rng.randrange(n)] += 1
        return w

    cases = [("multipartite", build_multipartite(s)) for s in multipartite_corpus(5)]
    cases += [("chordal", g) for g in chordal_corpus(5)]
    for kind, g in cases:
        for m in range(1, 7):
            for k in (2, 3):
                best = brute_force_min(g, m, k).min_value
                for start in (None, random_start(g.n, m)):
                    if kind == "multipartite":
                        tr = minimize_multipartite(g, m=m, k=k, start=start)
                    else:
                        tr = minimize_chordal(g, m, k, start=start)
                    count += 1
                    if not tr.monotone or tr.final_value != best:
                        bad.append((kind, g.edges(), m, k))
    return not bad, f"{count} traces ({len(cases)} graphs), failures {bad[:3]}"


def test_criterion_5_structured_minimizers():
    ok, detail, t = timed(criterion_5)
    assert record(5, ok, t, 900, detail), detail


# 6. edges: uniform-alpha is optimal


def criterion_6():
    bad, count = [], 0
    for n in range(1, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            for m in range(1, 7):
                count += 1
                if min(uniform_alpha_values(g, m, 2)) != brute_force_min(g, m, 2).min_value:
                    bad.append((g.edges(), m))
    return not bad, f"{count} labelled instances, violations {bad[:3]}"


def test_criterion_6_uniform_alpha_for_edges():
    ok, detail, t = timed(criterion_6)
    assert record(6, ok, t, 600, detail), detail


# 7. strict gap on Sperner graphs


def criterion_7():
    r2 = check_sperner_gap(2, 9, 3)
    r3 = check_sperner_gap(3, None, 3)
    ok = (
        r2.values["uniform_alpha"] == r2.values["oracle_uniform_alpha"] == 14
        and r2.values["uniform_alpha_k"] == r2.values["oracle_uniform_alpha_k"] == 39
        and r2.passed
        and r2.hypotheses_met
        and r3.passed
        and r3.hypotheses_met
        and "oracle_uniform_alpha" in r3.values
    )
    return ok, (
        f"B_2 m=9: {r2.values['uniform_alpha']} < {r2.values['uniform_alpha_k']}; "
        f"B_3 alpha_3={r3.values['alpha_k']} m={r3.instance['m']}: "
        f"{r3.values['uniform_alpha']} < {r3.values['uniform_alpha_k']}"
    )


def test_criterion_7_strict_gap():
    ok, detail, t = timed(criterion_7)
    assert record(7, ok, t, 600, detail), detail


# 8. injection certificates


def random_valid_spec(rng, g, w):
    edges = list(g.edges())
    rng.shuffle(edges)
    mode = rng.choice((LEMMA3, LEMMA4))
    a_list, b_list, used = [], [], set()
    for u, v in edges:
        if rng.random() < 0.5:
            u, v = v, u
        if u in used or v in used:
            continue
        trial = ShiftSpec(tuple(a_list + [u]), tuple(b_list + [v]))
        if validate_shift(g, w, trial, mode).valid:
            a_list.append(u)
            b_list.append(v)
            used |= {u, v}
    if not a_list:
        return None, mode
    return ShiftSpec(tuple(a_list), tuple(b_list)), mode


def criterion_8(target=150):
    rng = random.Random(8)
    done, failures, multi = 0, 0, 0
    while done < target:
        n = rng.randint(2, 6)
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.6])
        m = rng.randint(1, 12)
        w = [0] * n
        for _ in range(m):
            w[rng.randrange(n)] += 1
        spec, mode = random_valid_spec(rng, g, w)
        if spec is None:
            continue
        k = rng.randint(2, 4)
        try:
            cert = build_injection_certificate(g, w, spec, k, mode)
            after = count_cliques_formula(g, multi_shift(g, w, spec, mode), k)
            before = count_cliques_formula(g, w, k)
            if not (cert.verified and cert.cliques_after == after <= before == cert.cliques_before):
                failures += 1
        except AssertionError:
            failures += 1
        done += 1
        multi += spec.r > 1
    return failures == 0, f"{done} valid specs ({multi} with r > 1), {failures} failures"


def test_criterion_8_injection_certificates():
    ok, detail, t = timed(criterion_8)
    assert record(8, ok, t, 600, detail), detail


# 9. level matchings


def criterion_9():
    count, bad = 0, []
    for n in range(1, 6):
        for r in range(n + 1):
            for direction in (UP, DOWN):
                applicable = 2 * r < n if direction == UP else 2 * r > n
                if not applicable:
                    continue
                count += 1
                rep = check_level_matching(n, r, direction)
                if not (rep.passed and rep.values["matched"] == comb(n, r)):
                    bad.append((n, r, direction))
    return not bad, f"{count} (n, r, direction) cases saturated, failures {bad}"


def test_criterion_9_level_matchings():
    ok, detail, t = timed(criterion_9)
    assert record(9, ok, t, 60, detail), detail


# 10. conjecture sweep and flagging


def criterion_10():
    graphs = graph_corpus(4, connected=True)
    report = conjecture_sweep(graphs, range(1, 7), (2, 3))
    # the flag must agree with an independent enumeration of uniform-alpha weightings
    by_digest = {g.digest(): g for g in graphs}
    flag_errors = 0
    for row in report.rows:
        g = by_digest[row.graph]
        minimal = min(uniform_alpha_values(g, row.m, row.k)) == row.min_value
        flag_errors += minimal != row.uniform_alpha_minimal
    # and a row with no minimal uniform-alpha weighting must be flagged
    planted = SweepRow("planted", 3, 2, 9, 3, 14, 15, 14, uniform_weighting(path_graph(3), [0, 2], 9))
    flagged = SweepReport(report.rows + [planted], []).uniform_alpha_nonminimal
    machinery = planted in flagged and planted.conjecture_holds
    ok = not report.violations and flag_errors == 0 and machinery and not report.skipped
    return ok, (
        f"{len(report.rows)} instances, {len(report.violations)} violations, "
        f"{len(report.uniform_alpha_nonminimal)} uniform-alpha non-minimal (reported), "
        f"flag mismatches {flag_errors}, planted row flagged {machinery}"
    )


def test_criterion_10_conjecture_sweep():
    ok, detail, t = timed(criterion_10)
    assert record(10, ok, t, 600, detail), detail


if __name__ == "__main__":
    limits = {1: 1, 2: 1, 3: 300, 4: 600, 5: 900, 6: 600, 7: 600, 8: 600, 9: 60, 10: 600}
    for i in range(1, 11):
        ok, detail, t = timed(globals()[f"criterion_{i}"])
        record(i, ok, t, limits[i], detail)
        print(RESULTS[-1])
