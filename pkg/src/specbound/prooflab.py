"""Executable replica of the unraveled-ball bound's proof machinery.

The argument rests on a Markov chain over the 2|E| ordered edges: start
uniformly, then step to a uniformly random non-backtracking continuation.
Uniform is stationary, vertex marginals are d(v)/|W1|, and consecutive
pairs are uniform again.  A test vector built from these probabilities
and a path eigenvector realizes the bound as a Rayleigh quotient on the
forest of walk subtrees; this module recomputes every identity in that
chain and reports each one with both sides and errors.

Walk probabilities are products of exact rationals (1/|W1| times the
per-step 1/(d-1) factors) converted to floating point only once, so the
identity checks carry no accumulated rounding from the probability side.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bounds import thm1_rhs
from .cover import WalkForest, all_nb_edge_walks, unraveled_ball, walk_forest
from .errors import InputError, PreconditionError, ResourceLimitError
from .graph import (
    EdgeWeights,
    Graph,
    VertexWeighting,
    ball,
    connected_components,
    induced_subgraph,
    resolve_weights,
)
from .spectra import path_spectral_data, spectral_radius

DEFAULT_I_MAX = 6
DEFAULT_MAX_R = 4
DEFAULT_MAX_W1 = 4000


def _require_chain_ready(graph: Graph, what: str) -> None:
    if graph.n == 0 or graph.min_degree() < 2:
        raise PreconditionError(f"{what} needs minimum degree >= 2")


@dataclass(frozen=True)
class NbChainFacts:
    """Exact distributions of the non-backtracking edge chain.

    ``edge_dist[(i, e)]`` is Pr(the i-th edge state equals e),
    ``vertex_dist[(i, v)]`` the law of its terminal vertex, and
    ``pair_dist[(i, e)]`` the law of the consecutive terminal pair,
    recomputed independently through the one-step conditional sum.
    """

    w1_size: int
    edge_dist: dict[tuple[int, tuple[int, int]], float]
    vertex_dist: dict[tuple[int, int], float]
    pair_dist: dict[tuple[int, tuple[int, int]], float]


def nb_transition_check(graph: Graph) -> bool:
    """Build the edge-chain transition matrix and verify its stationarity.

    Entries are 1/(d(v)-1) from (u, v) to (v, z) with z != u.  Checks that
    every row sums to 1 and that the uniform distribution is stationary,
    both to 1e-12.  Minimum degree >= 2 keeps the chain free of absorbing
    states.
    """
    _require_chain_ready(graph, "the non-backtracking chain")
    w1 = all_nb_edge_walks(graph)
    index = {e: i for i, e in enumerate(w1)}
    m = len(w1)
    P = np.zeros((m, m))
    for (u, v), i in index.items():
        out = 1.0 / (graph.degree(v) - 1)
        for z in graph.neighbors(v):
            if z != u:
                P[i, index[(v, z)]] = out
    if np.max(np.abs(P.sum(axis=1) - 1.0)) > 1e-12:
        return False
    uniform = np.full(m, 1.0 / m)
    return bool(np.max(np.abs(uniform @ P - uniform)) <= 1e-12)


def chain_facts(graph: Graph, i_max: int = DEFAULT_I_MAX) -> NbChainFacts:
    """Exact forward distributions of the edge chain for steps 1..i_max.

    Asserts the closed forms: edge and vertex laws are uniform and
    degree-proportional at every step, and the pair law (recomputed by the
    conditional sum over predecessors) is uniform from step 2 on.  The
    dynamic program runs in exact rationals, so these hold exactly; the
    returned maps are floats.
    """
    _require_chain_ready(graph, "the non-backtracking chain")
    if i_max < 1:
        raise InputError("i_max must be at least 1")
    w1 = all_nb_edge_walks(graph)
    m = len(w1)
    index = {e: i for i, e in enumerate(w1)}
    uniform = Fraction(1, m)

    edge_dist: dict[tuple[int, tuple[int, int]], float] = {}
    vertex_dist: dict[tuple[int, int], float] = {}
    pair_dist: dict[tuple[int, tuple[int, int]], float] = {}

    current = [uniform] * m
    prev: list[Fraction] | None = None
    for i in range(1, i_max + 1):
        if i > 1:
            prev = current
            nxt = [Fraction(0)] * m
            for (u, v), idx in index.items():
                share = prev[idx] / (graph.degree(v) - 1)
                for z in graph.neighbors(v):
                    if z != u:
                        nxt[index[(v, z)]] += share
            current = nxt
        for e, idx in index.items():
            if current[idx] != uniform:
                raise AssertionError(
                    f"edge law at step {i} is not uniform: Pr({e}) = {current[idx]}"
                )
            edge_dist[(i, e)] = float(current[idx])
        for v in graph.vertices:
            p = sum(current[index[(u, v)]] for u in graph.neighbors(v))
            if p != Fraction(graph.degree(v), m):
                raise AssertionError(
                    f"vertex law at step {i} is not d(v)/|W1| at vertex {v}"
                )
            vertex_dist[(i, v)] = float(p)
        if i >= 2:
            # independent route: sum the one-step conditionals over the
            # predecessor edge's law at step i-1.
            for (v1, v2), idx in index.items():
                total = Fraction(0)
                for u in graph.neighbors(v1):
                    if u != v2:
                        total += prev[index[(u, v1)]] / (graph.degree(v1) - 1)
                if total != uniform:
                    raise AssertionError(
                        f"pair law at step {i} is not uniform on ({v1}, {v2})"
                    )
                pair_dist[(i, (v1, v2))] = float(total)
    return NbChainFacts(m, edge_dist, vertex_dist, pair_dist)


def simulate_chain(graph: Graph, i: int, samples: int, seed: int) -> Counter:
    """Monte-Carlo vertex frequencies of X_i; smoke-test companion to the DP."""
    _require_chain_ready(graph, "the non-backtracking chain")
    w1 = all_nb_edge_walks(graph)
    rng = random.Random(seed)
    counts: Counter = Counter()
    for _ in range(samples):
        u, v = w1[rng.randrange(len(w1))]
        for _ in range(i - 1):
            choices = [z for z in graph.neighbors(v) if z != u]
            u, v = v, choices[rng.randrange(len(choices))]
        counts[v] += 1
    return counts


@dataclass(frozen=True)
class TestVector:
    """The proof's test vector on the walk forest.

    Node ``omega`` at depth i carries x_i * sqrt(g(v_i) Pr(Y_i = omega)),
    with x the positive top eigenvector of the path on r+1 vertices and
    the probability taken along the walk.  All entries are positive.
    """

    values: np.ndarray
    r: int
    g: VertexWeighting
    path_vector: tuple[float, ...]
    forest: WalkForest


def _walk_probabilities(graph: Graph, forest: WalkForest) -> list[Fraction]:
    m = len(forest.edge_walks)
    probs: list[Fraction] = [Fraction(0)] * forest.forest.n
    for node in range(forest.forest.n):
        parent = forest.parents[node]
        if parent < 0:
            probs[node] = Fraction(1, m)
        else:
            branch = graph.degree(forest.covering[parent]) - 1
            probs[node] = probs[parent] / branch
    return probs


def build_test_vector(
    graph: Graph,
    weights: EdgeWeights | None,
    g: VertexWeighting,
    r: int,
    forest: WalkForest | None = None,
    node_cap: int | None = None,
) -> TestVector:
    """Assemble the test vector on walk_forest(graph, weights, r)."""
    _require_chain_ready(graph, "the test vector")
    if len(connected_components(graph)) != 1:
        raise PreconditionError("the test vector needs a connected graph")
    if r < 1:
        raise InputError("radius must be at least 1")
    if len(g) != graph.n:
        raise InputError("vertex weighting must cover every vertex")
    if forest is None:
        forest = walk_forest(graph, weights, r, node_cap=node_cap)
    _, xs = path_spectral_data(r + 1)
    probs = _walk_probabilities(graph, forest)
    values = np.empty(forest.forest.n)
    for node in range(forest.forest.n):
        depth = forest.depth(node)
        values[node] = xs[depth - 1] * math.sqrt(
            g[forest.covering[node]] * float(probs[node])
        )
    return TestVector(values, r, g, xs, forest)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    relation: str  # "eq" or "ge"
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class IdentityReport:
    passed: bool
    checks: tuple[IdentityCheck, ...]
    context: dict
    instance: dict | None = None

    def check(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "passed": self.passed,
            "checks": [c.to_json_dict() for c in self.checks],
            "context": self.context,
            "instance": self.instance,
        }


def _eq_check(name: str, lhs: float, rhs: float, tol: float) -> IdentityCheck:
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    rel_err = abs_err / scale
    return IdentityCheck(name, "eq", lhs, rhs, abs_err, rel_err, rel_err <= tol)


def _ge_check(name: str, lhs: float, rhs: float, tol: float) -> IdentityCheck:
    gap = lhs - rhs
    scale = max(abs(lhs), abs(rhs), 1.0)
    return IdentityCheck(name, "ge", lhs, rhs, gap, gap / scale, gap >= -tol * scale)


def identity_suite(
    graph: Graph,
    weights: EdgeWeights | None,
    g: VertexWeighting,
    r: int,
    tol: float = 1e-9,
    max_r: int = DEFAULT_MAX_R,
    max_w1: int = DEFAULT_MAX_W1,
    node_cap: int | None = None,
    _test_vector: TestVector | None = None,
) -> IdentityReport:
    """Verify the full identity chain behind the unraveled-ball bound.

    (a) the path-eigenvector identity sum(2 x_{i-1} x_i) = lambda sum(x_i^2);
    (b) <f, f> equals its closed form sum_i x_i^2 * sum_v g(v) d(v) / |W1|;
    (c) <f, A(w) f> equals its closed form through the edge-walk sum;
    (d) the Rayleigh quotient of f on the forest equals the bound value;
    (e) some component's radius dominates the quotient, and its terminal
        vertex's unraveled ball dominates that component in turn, with the
        plain ball dominating the unraveled ball on top.

    Every comparison is relative with tolerance ``tol``.  A failed check
    is reported, not raised; the report then embeds the full instance.
    """
    if r > max_r:
        raise ResourceLimitError(f"identity suite limited to r <= {max_r}, got {r}")
    weights = resolve_weights(graph, weights)
    if 2 * graph.edge_count > max_w1:
        raise ResourceLimitError(
            f"identity suite limited to |W1| <= {max_w1}, got {2 * graph.edge_count}"
        )
    tv = _test_vector if _test_vector is not None else build_test_vector(
        graph, weights, g, r, node_cap=node_cap
    )
    forest = tv.forest
    xs = tv.path_vector
    f = tv.values
    m = len(forest.edge_walks)

    lam_path = 2.0 * math.cos(math.pi / (r + 2))
    sum_x_sq = sum(x * x for x in xs)
    sum_2xx = sum(2.0 * xs[i - 1] * xs[i] for i in range(1, len(xs)))

    checks = [
        _eq_check("eq1-path-identity", sum_2xx, lam_path * sum_x_sq, tol)
    ]

    # (b) squared norm of f against its stationary closed form
    ff = float(f @ f)
    gd = sum(g[v] * graph.degree(v) for v in graph.vertices)
    checks.append(_eq_check("eq2-norm", ff, sum_x_sq * gd / m, tol))

    # (c) quadratic form against the edge-walk sum
    faf = 0.0
    for a, b in forest.forest.edges():
        faf += 2.0 * f[a] * f[b] * forest.weights.get(a, b)
    edge_sum = sum(
        math.sqrt(graph.degree(v1) - 1.0)
        * weights.get(v1, v2)
        * math.sqrt(g[v1] * g[v2])
        for v1, v2 in forest.edge_walks
    )
    checks.append(_eq_check("eq3-quadratic-form", faf, sum_2xx * edge_sum / m, tol))

    # (d) the quotient reproduces the bound exactly
    quotient = faf / ff
    bound = thm1_rhs(graph, weights, g, r)
    checks.append(_eq_check("rayleigh-equals-bound", quotient, bound, tol))

    # (e) winner component: its restricted quotient is at least the global
    # one, its radius dominates that, and the embedding chain holds.
    best_idx = None
    best_quot = -math.inf
    for idx, (start, end) in enumerate(forest.components):
        num = 0.0
        den = 0.0
        for node in range(start, end):
            den += f[node] * f[node]
            parent = forest.parents[node]
            if parent >= 0:
                num += 2.0 * f[parent] * f[node] * forest.weights.get(parent, node)
        q = num / den
        if q > best_quot:
            best_quot, best_idx = q, idx
    start, end = forest.components[best_idx]
    comp = induced_subgraph(forest.forest, range(start, end))
    comp_lam = spectral_radius(comp, forest.weights.restrict(comp))
    checks.append(_ge_check("component-quotient", best_quot, quotient, tol))
    checks.append(_ge_check("component-radius", comp_lam, quotient, tol))

    e_star = forest.edge_walks[best_idx]
    v_star = e_star[1]
    ub = unraveled_ball(graph, weights, v_star, r, node_cap=node_cap)
    ub_lam = spectral_radius(ub.tree, ub.weights)
    checks.append(_ge_check("unraveled-ball-dominates", ub_lam, comp_lam, tol))

    host_ball = ball(graph, v_star, r)
    ball_lam = spectral_radius(host_ball, weights.restrict(host_ball))
    checks.append(_ge_check("ball-dominates-cover", ball_lam, ub_lam, tol))

    passed = all(c.ok for c in checks)
    context = {
        "n": graph.n,
        "edges": graph.edge_count,
        "w1_size": m,
        "forest_nodes": forest.forest.n,
        "r": r,
        "quotient": quotient,
        "bound": bound,
        "winning_edge_walk": list(e_star),
        "witness_vertex": v_star,
        "component_radius": comp_lam,
        "unraveled_ball_radius": ub_lam,
        "ball_radius": ball_lam,
    }
    instance = None
    if not passed:
        instance = {
            "n": graph.n,
            "edges": graph.edges(),
            "weights": {f"{u},{v}": w for (u, v), w in sorted(weights.items())},
            "g": list(g.values),
            "r": r,
        }
    return IdentityReport(passed, tuple(checks), context, instance)
