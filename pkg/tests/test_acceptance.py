"""Acceptance suite.

Each test prints one PASS/FAIL line per criterion (run with ``-s`` to see the
lines for passing tests; pytest shows captured output for failing ones).

Criteria:
  1. the fast manipulation search agrees with brute force everywhere
     (exhaustive m=4 state space, 10k random instances at m=5 and at m=6);
  2. truthful elections always return the full-information Borda winner;
  3. safe queries (both candidates possible winners) are never manipulable;
  4. pairwise score-difference extremes are exact against enumeration;
  5. desk-scale manipulation-rate statistics on the bundled 10-candidate
     sample (means <= 0.02 per manipulative setting; careful-random <= random);
  6. outcome-impact bounds on the same sweep;
  7. the expected-score policy queries less than the random policy;
  8. trace invariants: possible-winner order preservation and strict segment
     growth at each manipulation, at every round of every manipulative run.
"""

import itertools
import random
from collections import defaultdict

import numpy as np
import pytest

from iterborda.borda import borda_winner, pair_diff_matrix
from iterborda.center import CenterState, Policy, run_election
from iterborda.experiment import ExperimentConfig, derive_seed, run_experiment
from iterborda.manipulation import (
    find_manipulation,
    order_pw,
    segment_total,
)
from iterborda.oracle import enumerate_extensions, oracle_manipulation, random_instance
from iterborda.preflib import bundled, sample_profiles
from iterborda.prefs import InconsistencyError, LinearOrder, close, is_extension, project
from iterborda.voter import MANIPULATIVE, TRUTHFUL, VoterState

RANDOM_INSTANCES_PER_M = 10_000  # criterion 1, at m=5 and at m=6
SCORE_BOUND_INSTANCES = 12_000  # criterion 4, m in 3..6
TRUTHFUL_ELECTIONS = 1_000  # criterion 2

SWEEP_VOTER_COUNTS = list(range(4, 21))
SWEEP_PROFILE_SETS = 5
SWEEP_REPS = 10
ALL_POLICIES = [("es", False), ("es", True), ("random", False), ("random", True)]


def _report(criterion: int, ok: bool, detail: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")
    return ok


# ---------------------------------------------------------------------------
# criteria 1 and 3 share one instance sweep


def _all_small_closures(m: int, max_pairs: int):
    """Every distinct consistent closure reachable from <= max_pairs pairs."""
    ordered = [(a, b) for a in range(m) for b in range(m) if a != b]
    seen = {}
    for k in range(max_pairs + 1):
        for combo in itertools.combinations(ordered, k):
            try:
                q = close(combo, m)
            except InconsistencyError:
                continue
            seen[frozenset(q.pairs())] = q
    return list(seen.values())


def _check_instance(p, q, pw, cj, ck, failures, safe_failures):
    fast = find_manipulation(p, q, pw, cj, ck)
    slow = oracle_manipulation(p, q, pw, cj, ck)
    if fast.changed != slow.changed or fast.distance != slow.distance:
        failures.append((list(p.ranking), sorted(q.pairs()), sorted(pw), (cj, ck),
                         (fast.changed, fast.distance), (slow.changed, slow.distance)))
    if cj in pw and ck in pw and fast.changed:
        safe_failures.append((list(p.ranking), sorted(q.pairs()), sorted(pw), (cj, ck)))


@pytest.fixture(scope="module")
def oracle_sweep():
    failures = []
    safe_failures = []
    checked = 0
    safe_checked = 0

    # exhaustive m=4: every ranking x every small closure it extends x every
    # open query pair x every nonempty possible-winner set
    m = 4
    perms = [LinearOrder(perm) for perm in itertools.permutations(range(m))]
    pw_sets = [set(s) for size in range(1, m + 1)
               for s in itertools.combinations(range(m), size)]
    for q in _all_small_closures(m, max_pairs=3):
        open_pairs = q.unresolved_pairs()
        for p in perms:
            if not is_extension(p, q):
                continue
            for a, b in open_pairs:
                cj, ck = (a, b) if p.prefers(a, b) else (b, a)
                for pw in pw_sets:
                    _check_instance(p, q, pw, cj, ck, failures, safe_failures)
                    checked += 1
                    safe_checked += cj in pw and ck in pw

    # random instances at m=5 and m=6
    for m in (5, 6):
        rng = random.Random(derive_seed("acceptance-oracle", m))
        for _ in range(RANDOM_INSTANCES_PER_M):
            p, q, pw, cj, ck = random_instance(m, rng)
            _check_instance(p, q, pw, cj, ck, failures, safe_failures)
            checked += 1
            safe_checked += cj in pw and ck in pw

    return {
        "failures": failures,
        "safe_failures": safe_failures,
        "checked": checked,
        "safe_checked": safe_checked,
    }


def test_criterion_1_oracle_equivalence(oracle_sweep):
    failures = oracle_sweep["failures"]
    ok = _report(
        1,
        not failures,
        f"search vs oracle agreement on {oracle_sweep['checked']} instances "
        f"({len(failures)} mismatches)",
    )
    assert ok, f"first mismatch: {failures[:1]}"


def test_criterion_3_safe_query_immunity(oracle_sweep):
    bad = oracle_sweep["safe_failures"]
    assert oracle_sweep["safe_checked"] > 10_000  # the sweep must cover safe queries
    ok = _report(
        3,
        not bad,
        f"{oracle_sweep['safe_checked']} safe queries, {len(bad)} manipulated",
    )
    assert ok, f"first safe-query manipulation: {bad[:1]}"


# ---------------------------------------------------------------------------


def test_criterion_2_truthful_correctness():
    rng = random.Random(derive_seed("acceptance-truthful"))
    policies = [Policy(sel, careful) for sel, careful in ALL_POLICIES]
    runs = 0
    mismatches = 0
    while runs < TRUTHFUL_ELECTIONS:
        m = rng.randint(2, 7)
        n = rng.randint(1, 10)
        profiles = [LinearOrder(rng.sample(range(m), m)) for _ in range(n)]
        expected = borda_winner(profiles)
        for policy in policies:
            result = run_election(
                profiles, TRUTHFUL, policy, random.Random(rng.getrandbits(64))
            )
            runs += 1
            mismatches += result.winner != expected
    ok = _report(2, mismatches == 0, f"{runs} truthful elections, {mismatches} wrong winners")
    assert ok


def test_criterion_4_score_bound_exactness():
    rng = random.Random(derive_seed("acceptance-bounds"))
    bad = 0
    for i in range(SCORE_BOUND_INSTANCES):
        m = 3 + (i % 4)
        p, q, _, _, _ = random_instance(m, rng)
        ranks = np.array([e.rank_of for e in enumerate_extensions(q)])
        sigma = m - ranks
        spread = sigma[:, :, None] - sigma[:, None, :]
        brute_max = spread.max(axis=0)
        brute_min = spread.min(axis=0)
        fast_max = pair_diff_matrix(q)
        off = ~np.eye(m, dtype=bool)
        if not np.array_equal(brute_max[off], fast_max[off]):
            bad += 1
        # min_pair_diff(c, c2) is -max_pair_diff(c2, c)
        if not np.array_equal(brute_min[off], (-fast_max.T)[off]):
            bad += 1
    ok = _report(
        4,
        bad == 0,
        f"pairwise extremes vs enumeration on {SCORE_BOUND_INSTANCES} closures "
        f"({bad} mismatches)",
    )
    assert ok


# ---------------------------------------------------------------------------
# criteria 5-7 share one experiment sweep


@pytest.fixture(scope="module")
def sweep_records():
    cfg = ExperimentConfig(
        dataset="unused",
        voter_counts=SWEEP_VOTER_COUNTS,
        policies=ALL_POLICIES,
        behaviors=[TRUTHFUL, MANIPULATIVE],
        profile_sets=SWEEP_PROFILE_SETS,
        reps_per_set=SWEEP_REPS,
        base_seed=20240520,
        workers=2,
    )
    return run_experiment(cfg, ds=bundled("sample10"))


def _policy_key(record):
    return ("careful-" if record.careful else "") + record.policy


def _group_means(records, behavior, value):
    groups = defaultdict(list)
    for rec in records:
        if rec.behavior == behavior:
            groups[_policy_key(rec)].append(value(rec))
    return {key: sum(vals) / len(vals) for key, vals in groups.items()}


def test_criterion_5_manipulation_rate(sweep_records):
    means = _group_means(
        sweep_records, MANIPULATIVE, lambda r: r.manipulated_count / r.queries_issued
    )
    problems = []
    for key in ("es", "careful-es", "careful-random", "random"):
        bound_ok = means[key] <= 0.02
        _report(5, bound_ok, f"mean manipulation ratio {key}+M = {means[key]:.4f} (bound 0.02)")
        if not bound_ok:
            problems.append(f"{key}+M mean {means[key]:.4f} > 0.02")
    order_ok = means["careful-random"] <= means["random"]
    _report(
        5,
        order_ok,
        f"ordering careful-random+M ({means['careful-random']:.4f}) <= "
        f"random+M ({means['random']:.4f})",
    )
    if not order_ok:
        problems.append("careful-random+M exceeds random+M")
    assert not problems, "; ".join(problems)


def test_criterion_6_outcome_impact(sweep_records):
    means = _group_means(
        sweep_records, MANIPULATIVE, lambda r: float(r.outcome_changed)
    )
    bound_ok = means["random"] <= 0.25
    order_ok = means["careful-random"] <= means["random"]
    _report(6, bound_ok, f"outcome-change proportion random+M = {means['random']:.4f} (bound 0.25)")
    _report(
        6,
        order_ok,
        f"ordering careful-random+M ({means['careful-random']:.4f}) <= "
        f"random+M ({means['random']:.4f})",
    )
    assert bound_ok and order_ok


def test_criterion_7_query_count_direction(sweep_records):
    means = _group_means(
        sweep_records, TRUTHFUL, lambda r: r.queries_issued / r.max_queries
    )
    ok = means["es"] < means["random"]
    _report(
        7,
        ok,
        f"mean fraction queried es+T = {means['es']:.4f} < random+T = {means['random']:.4f}",
    )
    assert ok


def test_criterion_8_trace_invariants(sweep_records):
    # Part 1: every manipulative run of the sweep already executed with the
    # runtime invariant checks armed (run_election default); reaching this
    # point with a full record set means none of them tripped.
    expected = (
        len(SWEEP_VOTER_COUNTS) * SWEEP_PROFILE_SETS * SWEEP_REPS * len(ALL_POLICIES) * 2
    )
    assert len(sweep_records) == expected

    # Part 2: independent replay of a subsample, checking all voters at all
    # rounds: the current ranking orders the live possible-winner set exactly
    # as the true ranking does, and the inter-possible-winner span total for
    # a queried voter never shrinks, growing strictly at each manipulation.
    ds = bundled("sample10")
    violations = 0
    rounds_checked = 0
    manipulations_seen = 0
    for trial in range(12):
        rng = random.Random(derive_seed("acceptance-replay", trial))
        profiles = sample_profiles(ds, 4 + trial, rng)
        voters = [VoterState(p) for p in profiles]
        state = CenterState(len(profiles), ds.m)
        policy = Policy("random" if trial % 2 else "es", careful=trial % 3 == 0)
        while state.necessary_winner() is None:
            pw = state.pw_cache
            query = state.select_query(policy, rng)
            vs = voters[query.voter]
            pw_seen = order_pw(vs.p_current, pw)
            total_before = segment_total(vs.p_current, pw_seen)
            answer, manipulated = vs.respond(query.cj, query.ck, pw, MANIPULATIVE)
            manipulations_seen += manipulated
            total_after = segment_total(vs.p_current, pw_seen)
            if manipulated:
                if not total_after > total_before:
                    violations += 1
            elif total_after != total_before:
                violations += 1
            state.apply_response(query, answer, manipulated)
            for voter in voters:
                rounds_checked += 1
                if project(voter.p_current, state.pw_cache) != project(
                    voter.p_true, state.pw_cache
                ):
                    violations += 1
    assert manipulations_seen > 0
    ok = _report(
        8,
        violations == 0,
        f"possible-winner order and span growth over {rounds_checked} "
        f"voter-rounds, {manipulations_seen} manipulations ({violations} violations)",
    )
    assert ok
