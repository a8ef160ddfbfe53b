"""The voting center: query selection, response bookkeeping, election loop.

The center knows nothing about the voters beyond their answers.  It keeps one
transitively closed relation per voter, recomputes the possible-winner set
after every answer, and stops as soon as a necessary winner exists.  Round
cost is kept flat by caching each voter's pairwise score-difference matrix
and the unresolved query pool, updating only what an answer touches.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .borda import (
    PossibleWinnerView,
    necessary_winner_from_total,
    pair_diff_matrix,
    possible_winners_from_total,
    score_bounds_vectors,
)
from .manipulation import order_pw, segment_total
from .prefs import (
    CandidateId,
    LinearOrder,
    PartialOrder,
    add_preference,
    project,
)
from .voter import BEHAVIORS, VoterState

ES = "es"
RANDOM = "random"
SELECTORS = (ES, RANDOM)


class NoQueriesLeftError(RuntimeError):
    """Every pair of every voter is already resolved."""


class TraceInvariantError(AssertionError):
    """A voter's behaviour broke an invariant the theory guarantees."""


@dataclass(frozen=True)
class Policy:
    """Query-selection policy: base selector plus the careful restriction."""

    selector: str = RANDOM
    careful: bool = False

    def __post_init__(self):
        if self.selector not in SELECTORS:
            raise ValueError(f"selector must be one of {SELECTORS}, got {self.selector!r}")

    @property
    def name(self) -> str:
        return ("careful-" if self.careful else "") + self.selector


@dataclass(frozen=True)
class Query:
    voter: int
    cj: CandidateId
    ck: CandidateId


@dataclass(frozen=True)
class TraceStep:
    """One round of the loop: what was asked, answered, and known at the time."""

    query: Query
    response: tuple[CandidateId, CandidateId]
    manipulated: bool
    pw: frozenset[CandidateId]


@dataclass
class ElectionResult:
    """Outcome and full trace of a single election run."""

    winner: CandidateId
    queries_issued: int
    max_queries: int
    manipulated_count: int
    trace: list[TraceStep] = field(repr=False)


def is_safe(query: Query, pw: frozenset[CandidateId] | set[CandidateId]) -> bool:
    """A query is safe when both its candidates are possible winners."""
    return query.cj in pw and query.ck in pw


class CenterState:
    """Per-voter partial knowledge plus the caches derived from it."""

    def __init__(self, n: int, m: int):
        if n < 1 or m < 2:
            raise ValueError("need at least one voter and two candidates")
        self.n = n
        self.m = m
        self.qs: list[PartialOrder] = [PartialOrder(m) for _ in range(n)]
        self.history: list[TraceStep] = []
        self.round = 0
        # unresolved (a < b) pair -> voters for whom it is still open
        self._pair_voters: dict[tuple[int, int], list[int]] = {
            (a, b): list(range(n)) for a in range(m) for b in range(a + 1, m)
        }
        self._unresolved_total = n * m * (m - 1) // 2
        self._diffs = [pair_diff_matrix(q) for q in self.qs]
        self._total = np.sum(self._diffs, axis=0, dtype=np.int64)
        # per-voter sigma_min + sigma_max vectors, and their sum (ES heuristic)
        self._mid = [np.full(m, 1 + m, dtype=np.int64) for _ in range(n)]
        self._mid_total = np.full(m, n * (1 + m), dtype=np.int64)
        self.pw_cache: frozenset[CandidateId] = possible_winners_from_total(self._total)

    def unresolved(self) -> list[Query]:
        """Every query the center could still usefully ask."""
        return [
            Query(v, a, b)
            for (a, b), voters in self._pair_voters.items()
            for v in voters
        ]

    def unresolved_count(self) -> int:
        return self._unresolved_total

    def necessary_winner(self) -> CandidateId | None:
        return necessary_winner_from_total(self._total)

    def view(self, current_orders: Sequence[LinearOrder]) -> PossibleWinnerView:
        """Bundle the possible winners with their per-voter ordering."""
        return PossibleWinnerView(
            self.pw_cache,
            tuple(order_pw(p, self.pw_cache) for p in current_orders),
        )

    def _full_pool(self):
        return [(pair, voters) for pair, voters in self._pair_voters.items() if voters]

    def select_query(self, policy: Policy, rng: random.Random) -> Query:
        """Draw the next query under the policy, uniformly within its pool.

        ES restricts the pool to queries touching the candidate with the
        highest summed score-bound midpoint (lowest id on ties), falling back
        to the full pool if that candidate is fully resolved.  A careful
        center further restricts to safe queries while any exist.
        """
        if self._unresolved_total == 0:
            raise NoQueriesLeftError("all pairs resolved for all voters")
        if policy.selector == ES:
            star = int(np.argmax(self._mid_total))
            pool = []
            for x in range(self.m):
                if x == star:
                    continue
                pair = (x, star) if x < star else (star, x)
                voters = self._pair_voters[pair]
                if voters:
                    pool.append((pair, voters))
            if not pool:
                pool = self._full_pool()
        else:
            pool = self._full_pool()
        if policy.careful:
            pw = self.pw_cache
            safe = [(pair, vs) for pair, vs in pool if pair[0] in pw and pair[1] in pw]
            if safe:
                pool = safe
        r = rng.randrange(sum(len(vs) for _, vs in pool))
        for (a, b), voters in pool:
            if r < len(voters):
                return Query(voters[r], a, b)
            r -= len(voters)
        raise AssertionError("unreachable")

    def apply_response(
        self,
        query: Query,
        response: tuple[CandidateId, CandidateId],
        manipulated: bool = False,
    ) -> None:
        """Fold an answer into the queried voter's relation and refresh caches.

        Raises ``InconsistencyError`` if the answer contradicts the closure of
        the voter's earlier answers (a lying or erroneous voter).
        """
        a, b = response
        if {a, b} != {query.cj, query.ck}:
            raise ValueError("response candidates do not match the query")
        v = query.voter
        old = self.qs[v]
        if old.mat[a, b]:
            raise ValueError("query was already resolved for this voter")
        new = add_preference(old, a, b)  # raises InconsistencyError on conflict
        for x, y in np.argwhere(new.mat & ~old.mat):
            pair = (int(x), int(y)) if x < y else (int(y), int(x))
            self._pair_voters[pair].remove(v)
            self._unresolved_total -= 1
        self.qs[v] = new
        fresh = pair_diff_matrix(new)
        self._total += fresh - self._diffs[v]
        self._diffs[v] = fresh
        smin, smax = score_bounds_vectors(new)
        mid = (smin + smax).astype(np.int64)
        self._mid_total += mid - self._mid[v]
        self._mid[v] = mid
        pw_at_issue = self.pw_cache
        self.pw_cache = possible_winners_from_total(self._total)
        self.history.append(TraceStep(query, (a, b), manipulated, pw_at_issue))
        self.round += 1


def run_election(
    profiles: Sequence[LinearOrder],
    behavior: str,
    policy: Policy,
    rng: random.Random,
    check_invariants: bool = True,
) -> ElectionResult:
    """Run one election to termination and return its outcome and trace.

    Loops compute-possible-winners / select-query / voter-responds /
    incorporate-answer until a necessary winner exists, which is guaranteed
    within n*m*(m-1)/2 queries.  ``check_invariants`` enforces at runtime that
    manipulations keep the possible winners in the voter's original order and
    strictly widen their span, and that every voter's current ranking still
    orders the final possible winners exactly as her true ranking does.
    """
    if behavior not in BEHAVIORS:
        raise ValueError(f"unknown behavior {behavior!r}")
    n = len(profiles)
    if n == 0:
        raise ValueError("need at least one voter")
    m = profiles[0].m
    if any(p.m != m for p in profiles):
        raise ValueError("all profiles must rank the same candidates")

    voters = [VoterState(p) for p in profiles]
    state = CenterState(n, m)
    max_queries = n * m * (m - 1) // 2

    while True:
        winner = state.necessary_winner()
        if winner is not None:
            break
        if state.round >= max_queries:
            raise AssertionError("election failed to terminate within the query bound")
        pw = state.pw_cache
        query = state.select_query(policy, rng)
        vs = voters[query.voter]
        before = vs.p_current
        answer, manipulated = vs.respond(query.cj, query.ck, pw, behavior)
        if check_invariants and manipulated:
            pw_seen = order_pw(before, pw)
            if order_pw(vs.p_current, pw) != pw_seen:
                raise TraceInvariantError("manipulation reordered the possible winners")
            if segment_total(vs.p_current, pw_seen) <= segment_total(before, pw_seen):
                raise TraceInvariantError("manipulation did not widen the possible-winner span")
        state.apply_response(query, answer, manipulated)

    if check_invariants:
        # Current rankings only ever change against the possible winners they
        # saw, and the set shrinks monotonically, so agreement on the final
        # set certifies agreement at every earlier round.
        final_pw = state.pw_cache
        for vs in voters:
            if project(vs.p_current, final_pw) != project(vs.p_true, final_pw):
                raise TraceInvariantError(
                    "a voter's current ranking orders the possible winners "
                    "differently from her true ranking"
                )

    manipulated_count = sum(1 for step in state.history if step.manipulated)
    return ElectionResult(
        winner=winner,
        queries_issued=state.round,
        max_queries=max_queries,
        manipulated_count=manipulated_count,
        trace=state.history,
    )
