"""Certify or refute robustness of degree statistics under ball deletions.

A graph has an r-robust average degree >= d when deleting any single
radius-r ball leaves average degree at least d.  The sequential variant
(r, d, dtilde, s) additionally requires, after every sequence of s ball
deletions, average degree >= d and second order average degree <= dtilde.
Balls are measured in the metric of the graph surviving at that step; the
original-host metric is available as an off-by-default strict mode.

Degree statistics are exact rationals throughout, so threshold
comparisons never depend on floating-point rounding.  A sequence that
empties the graph (at any step) fails the average-degree requirement; an
edgeless but nonempty remainder has average degree 0 and its second order
average degree requirement is treated as vacuously satisfied.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, PreconditionError, ResourceLimitError
from .graph import Graph, delete_ball

DEFAULT_SEQUENCE_CAP = 10**6

CERTIFIED_EXHAUSTIVE = "certified-exhaustive"
CERTIFIED_SAMPLED = "certified-sampled"
REFUTED = "refuted"


@dataclass(frozen=True)
class RobustnessCertificate:
    """Outcome of a robustness check.

    ``worst_sequence`` lists the deletion centers as pairs
    ``(id in the then-current graph, id in the original graph)``.  For a
    refutation it is the lexicographically first violating sequence and
    replaying it reproduces ``violation`` exactly; for a certification it
    is the sequence attaining the minimum average degree.
    """

    r: int
    s: int
    required_d: float | Fraction
    required_dtilde: float | Fraction
    status: str
    worst_sequence: tuple[tuple[int, int], ...]
    achieved_min_avg_degree: Fraction | None
    achieved_max_second_order: Fraction | None
    sequences_examined: int
    violation: str | None = None

    @property
    def certified(self) -> bool:
        return self.status in (CERTIFIED_EXHAUSTIVE, CERTIFIED_SAMPLED)


def _ball_vertices(graph: Graph, survivors: list[int], center: int, r: int,
                   original_metric: bool) -> set[int]:
    """Vertices of the radius-r ball around ``center`` among ``survivors``."""
    if original_metric:
        allowed = None
    else:
        allowed = set(survivors)
    dist = {center: 0}
    queue = deque([center])
    while queue:
        u = queue.popleft()
        if dist[u] == r:
            continue
        for w in graph.neighbors(u):
            if allowed is not None and w not in allowed:
                continue
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    alive = set(survivors)
    return {u for u in dist if u in alive}


def _remainder_stats(graph: Graph, survivors: list[int]):
    """(order, degree sum, degree-square sum) of the induced survivor graph."""
    alive = set(survivors)
    m1 = 0
    m2 = 0
    for v in survivors:
        d = sum(1 for w in graph.neighbors(v) if w in alive)
        m1 += d
        m2 += d * d
    return len(survivors), m1, m2


def _evaluate_remainder(graph: Graph, survivors: list[int], d, dtilde):
    """Return (avg, second_order, violation_reason) for a finished sequence."""
    if not survivors:
        return None, None, "empty remainder fails the average-degree requirement"
    order, m1, m2 = _remainder_stats(graph, survivors)
    avg = Fraction(m1, order)
    if avg < d:
        return avg, None, f"average degree {avg} < required {d}"
    if m1 == 0:
        # edgeless remainder: second order average degree is undefined and
        # treated as vacuously within bounds.
        return avg, None, None
    second = Fraction(m2, m1)
    if second > dtilde:
        return avg, second, f"second order average degree {second} > allowed {dtilde}"
    return avg, second, None


def _current_id(survivors: list[int], center: int) -> int:
    return sorted(survivors).index(center)


def _exhaustive_walk(graph: Graph, r: int, s: int, d, dtilde, cap: int,
                     original_metric: bool):
    """Depth-first enumeration of all deletion sequences in ascending-id order.

    Yields bookkeeping via a result dict: first (lexicographically
    smallest) violation, extremal statistics over complete sequences, and
    the number of sequences examined.
    """
    result = {
        "violation": None,
        "violating_sequence": None,
        "violating_avg": None,
        "violating_second": None,
        "min_avg": None,
        "min_avg_sequence": None,
        "max_second": None,
        "count": 0,
    }

    def note_sequence(prefix, survivors) -> bool:
        """Record one finished sequence; True means a violation was found."""
        result["count"] += 1
        if result["count"] > cap:
            raise ResourceLimitError(
                f"more than {cap} deletion sequences; rerun in sampled mode"
            )
        avg, second, reason = _evaluate_remainder(graph, survivors, d, dtilde)
        if reason is not None:
            result["violation"] = reason
            result["violating_sequence"] = tuple(prefix)
            result["violating_avg"] = avg
            result["violating_second"] = second
            return True
        if result["min_avg"] is None or avg < result["min_avg"]:
            result["min_avg"] = avg
            result["min_avg_sequence"] = tuple(prefix)
        if second is not None:
            if result["max_second"] is None or second > result["max_second"]:
                result["max_second"] = second
        return False

    def recurse(prefix, survivors, depth) -> bool:
        if depth == s or not survivors:
            # an emptied graph ends the sequence early and fails the check
            return note_sequence(prefix, survivors)
        for center in sorted(survivors):
            cur = _current_id(survivors, center)
            ball_set = _ball_vertices(graph, survivors, center, r, original_metric)
            rest = [u for u in survivors if u not in ball_set]
            prefix.append((cur, center))
            stop = recurse(prefix, rest, depth + 1)
            prefix.pop()
            if stop:
                return True
        return False

    recurse([], list(graph.vertices), 0)
    return result


def check_robust(
    graph: Graph,
    r: int,
    d,
    dtilde,
    s: int,
    mode: str = "exhaustive",
    seed: int | None = None,
    trials: int | None = None,
    sequence_cap: int = DEFAULT_SEQUENCE_CAP,
    original_metric: bool = False,
) -> RobustnessCertificate:
    """Certify or refute the (r, d, dtilde, s) sequential-deletion requirement.

    Exhaustive mode enumerates every sequence of s centers, where center i
    ranges over the vertices surviving the first i-1 deletions.  Sampled
    mode draws ``trials`` random sequences with uniformly random surviving
    centers; it can refute but certifies only as ``certified-sampled``.
    """
    if s < 1:
        raise InputError("s must be at least 1")
    if r < 0:
        raise InputError("radius must be nonnegative")
    if mode == "exhaustive":
        res = _exhaustive_walk(graph, r, s, d, dtilde, sequence_cap, original_metric)
        if res["violation"] is not None:
            return RobustnessCertificate(
                r, s, d, dtilde, REFUTED,
                res["violating_sequence"],
                res["violating_avg"], res["violating_second"], res["count"],
                violation=res["violation"],
            )
        return RobustnessCertificate(
            r, s, d, dtilde, CERTIFIED_EXHAUSTIVE,
            res["min_avg_sequence"] or (),
            res["min_avg"], res["max_second"], res["count"],
        )
    if mode == "sampled":
        if not trials:
            raise InputError("sampled mode needs a positive number of trials")
        rng = random.Random(seed)
        min_avg = None
        min_avg_seq: tuple = ()
        max_second = None
        for trial in range(trials):
            survivors = list(graph.vertices)
            prefix = []
            for _ in range(s):
                if not survivors:
                    break
                center = rng.choice(sorted(survivors))
                prefix.append((_current_id(survivors, center), center))
                ball_set = _ball_vertices(graph, survivors, center, r, original_metric)
                survivors = [u for u in survivors if u not in ball_set]
            avg, second, reason = _evaluate_remainder(graph, survivors, d, dtilde)
            if reason is not None:
                return RobustnessCertificate(
                    r, s, d, dtilde, REFUTED, tuple(prefix),
                    avg, second, trial + 1,
                    violation=reason,
                )
            if min_avg is None or avg < min_avg:
                min_avg, min_avg_seq = avg, tuple(prefix)
            if second is not None and (max_second is None or second > max_second):
                max_second = second
        return RobustnessCertificate(
            r, s, d, dtilde, CERTIFIED_SAMPLED, min_avg_seq,
            min_avg, max_second, trials,
        )
    raise InputError(f"unknown mode {mode!r} (expected 'exhaustive' or 'sampled')")


def r_robust_average_degree(graph: Graph, r: int):
    """The largest d such that every single radius-r ball deletion keeps
    average degree >= d: the minimum remainder average degree.

    Returns ``-inf`` when some deletion empties the graph (no requirement
    with d >= 0 can hold).
    """
    if r < 0:
        raise InputError("radius must be nonnegative")
    worst = None
    for v in graph.vertices:
        rest = delete_ball(graph, v, r)
        if rest.n == 0:
            return -math.inf
        avg = Fraction(2 * rest.edge_count, rest.n)
        if worst is None or avg < worst:
            worst = avg
    if worst is None:
        raise PreconditionError("graph has no vertices")
    return worst


def max_robust_params(
    graph: Graph,
    r: int,
    s: int,
    sequence_cap: int = DEFAULT_SEQUENCE_CAP,
    original_metric: bool = False,
) -> tuple[Fraction, Fraction]:
    """Tightest certifiable parameters for s sequential deletions.

    ``d_max`` is the minimum remainder average degree over all sequences
    and ``dtilde_min`` the maximum remainder second order average degree,
    so ``check_robust(graph, r, d_max, dtilde_min, s)`` certifies.  Raises
    when some sequence empties the graph, since then no average-degree
    requirement is satisfiable.
    """
    if s < 1:
        raise InputError("s must be at least 1")
    res = _exhaustive_walk(
        graph, r, s, Fraction(-1), Fraction(10**9), sequence_cap, original_metric
    )
    if res["violation"] is not None:
        raise PreconditionError(
            f"no certifiable parameters: {res['violation']} "
            f"(sequence {res['violating_sequence']})"
        )
    if res["min_avg"] is None:
        raise PreconditionError("graph has no deletion sequences to certify")
    dtilde_min = res["max_second"] if res["max_second"] is not None else Fraction(0)
    return res["min_avg"], dtilde_min
