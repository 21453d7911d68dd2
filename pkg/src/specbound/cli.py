"""Command-line front end: graph generation, verification runs, report emission.

Exit codes: 0 all verdicts pass, 1 at least one verdict failed (the
serialized witness is still emitted), 2 input or precondition error,
3 resource cap exceeded.

Reproducibility: one 64-bit seed governs a run; every sub-task derives
its own stream by hashing (seed, task label), so reports for identical
(config, seed) pairs are byte-identical on a platform.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import random
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from . import prooflab, robustness, spectra
from .cover import unraveled_ball
from .errors import (
    InputError,
    NumericError,
    PreconditionError,
    ResourceLimitError,
    SpecboundError,
)
from .graph import (
    EdgeWeights,
    Graph,
    VertexWeighting,
    ball,
    connected_components,
    format_edge_list,
    parse_edge_list,
)

SCHEMA_VERSION = 1


# -- seed plumbing ------------------------------------------------------------

def derive_seed(seed: int, label: str) -> int:
    """64-bit stream seed for a sub-task, stable across platforms."""
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(seed: int, label: str) -> random.Random:
    return random.Random(derive_seed(seed, label))


# -- generators ---------------------------------------------------------------

def _cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> Graph:
    if n < 1:
        raise InputError("path needs at least 1 vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _complete(n: int) -> Graph:
    if n < 1:
        raise InputError("complete graph needs at least 1 vertex")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _star(leaves: int) -> Graph:
    if leaves < 1:
        raise InputError("star needs at least 1 leaf")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def _gnp(n: int, p: float, rng: random.Random, connected: bool) -> Graph:
    if n < 1:
        raise InputError("gnp needs at least 1 vertex")
    if not 0.0 <= p <= 1.0:
        raise InputError("gnp probability must lie in [0, 1]")
    for _ in range(10_000):
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        if not connected or len(connected_components(g)) == 1:
            return g
    raise ResourceLimitError("gnp rejection sampling found no connected graph in 10000 tries")


def _random_regular(n: int, d: int, rng: random.Random) -> Graph:
    if d < 0 or d >= n:
        raise InputError(f"regular degree {d} infeasible for {n} vertices")
    if (n * d) % 2 != 0:
        raise InputError(f"n*d = {n * d} is odd; no {d}-regular graph on {n} vertices")
    for _ in range(10_000):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges: set[tuple[int, int]] = set()
        good = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or ((u, v) if u < v else (v, u)) in edges:
                good = False
                break
            edges.add((u, v) if u < v else (v, u))
        if good:
            return Graph(n, sorted(edges))
    raise ResourceLimitError("pairing model produced no simple graph in 10000 tries")


def generate(spec: str, seed: int = 0, connected: bool = False) -> Graph:
    """Deterministic graph from a generator spec string.

    Specs: ``cycle:n``, ``path:n``, ``complete:n``, ``petersen``,
    ``star:k`` (k leaves), ``gnp:n:p``, ``random-regular:n:d``.
    """
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "cycle":
            return _cycle(int(parts[1]))
        if kind == "path":
            return _path(int(parts[1]))
        if kind == "complete":
            return _complete(int(parts[1]))
        if kind == "petersen":
            return petersen()
        if kind == "star":
            return _star(int(parts[1]))
        if kind == "gnp":
            rng = derive_rng(seed, f"gen:{spec}")
            return _gnp(int(parts[1]), float(parts[2]), rng, connected)
        if kind == "random-regular":
            rng = derive_rng(seed, f"gen:{spec}")
            return _random_regular(int(parts[1]), int(parts[2]), rng)
    except (IndexError, ValueError):
        raise InputError(f"malformed graph spec {spec!r}") from None
    raise InputError(f"unknown graph spec {spec!r}")


def generate_weights(wspec: str | None, graph: Graph, seed: int = 0) -> EdgeWeights | None:
    """Weights from a spec: ``unit``, ``normalized`` (w0), or ``uniform:lo:hi``."""
    if wspec is None or wspec == "none":
        return None
    if wspec == "unit":
        return EdgeWeights.uniform(graph)
    if wspec in ("normalized", "w0"):
        return spectra.normalized_weights(graph)
    if wspec.startswith("uniform:"):
        parts = wspec.split(":")
        try:
            lo, hi = float(parts[1]), float(parts[2])
        except (IndexError, ValueError):
            raise InputError(f"malformed weights spec {wspec!r}") from None
        if not (0.0 < lo <= hi):
            raise InputError("uniform weight bounds must satisfy 0 < lo <= hi")
        rng = derive_rng(seed, f"weights:{wspec}")
        return EdgeWeights({e: rng.uniform(lo, hi) for e in graph.edges()})
    raise InputError(f"unknown weights spec {wspec!r}")


# -- shared random corpora (also used by the acceptance tests) -----------------

def random_connected_min2(rng: random.Random, n_lo: int = 4, n_hi: int = 12) -> Graph:
    """A connected random graph with minimum degree >= 2, by rejection."""
    while True:
        n = rng.randint(n_lo, n_hi)
        p = rng.uniform(0.3, 0.7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph(n, edges)
        if g.min_degree() >= 2 and len(connected_components(g)) == 1:
            return g


def random_min2_possibly_disconnected(rng: random.Random) -> Graph:
    """Minimum degree >= 2; one third of draws are two-component unions."""
    if rng.random() < 1.0 / 3.0:
        a = random_connected_min2(rng, 4, 7)
        b = random_connected_min2(rng, 4, 7)
        return disjoint_union(a, b)
    return random_connected_min2(rng)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    edges = a.edges() + [(u + a.n, v + a.n) for u, v in b.edges()]
    return Graph(a.n + b.n, edges)


def random_weights(rng: random.Random, graph: Graph, lo: float = 0.01, hi: float = 2.0) -> EdgeWeights:
    return EdgeWeights({e: rng.uniform(lo, hi) for e in graph.edges()})


def random_vertex_weighting(rng: random.Random, n: int, lo: float = 0.01, hi: float = 1.0) -> VertexWeighting:
    return VertexWeighting([rng.uniform(lo, hi) for _ in range(n)])


def random_robust_instance(rng: random.Random):
    """(graph, r, s, certificate) with exhaustively certified tight parameters.

    Mixes two shapes: dense connected graphs checked at radius 1, and
    disjoint unions of cliques checked at radius 2 (each radius-2 ball
    swallows exactly one clique).  Rejection keeps only instances whose
    tightest certified average degree is at least 2, as the eigenvalue
    bounds require.
    """
    while True:
        s = rng.choice([2, 3])
        if rng.random() < 0.5:
            r = 1
            g = random_connected_min2(rng, 8, 12)
        else:
            r = 2
            sizes = [rng.choice([4, 5]) for _ in range(s + rng.choice([0, 1]))]
            g = _complete(sizes[0])
            for sz in sizes[1:]:
                g = disjoint_union(g, _complete(sz))
        if g.n < max(3, s):
            continue
        try:
            d_max, dt_min = robustness.max_robust_params(g, r, s - 1)
        except PreconditionError:
            continue
        if d_max < 2:
            continue
        cert = robustness.check_robust(g, r, d_max, dt_min, s - 1)
        if not cert.certified:
            continue
        return g, r, s, cert


# -- JSON forms ----------------------------------------------------------------

def _jsonable(value):
    if isinstance(value, Fraction):
        return {"fraction": f"{value.numerator}/{value.denominator}", "value": float(value)}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def graph_to_json_dict(graph: Graph, weights: EdgeWeights | None = None) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "type": "graph",
        "n": graph.n,
        "edges": [[u, v] for u, v in graph.edges()],
    }
    if weights is not None:
        weights.validate_for(graph)
        doc["weights"] = [weights.get(u, v) for u, v in graph.edges()]
    return doc


def graph_from_json_dict(doc: dict) -> tuple[Graph, EdgeWeights | None]:
    if doc.get("schema") != SCHEMA_VERSION:
        raise InputError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("type") != "graph":
        raise InputError(f"expected a graph document, got type {doc.get('type')!r}")
    edges = [tuple(e) for e in doc["edges"]]
    graph = Graph(int(doc["n"]), edges)
    weights = None
    if "weights" in doc:
        vals = doc["weights"]
        if len(vals) != len(edges):
            raise InputError("weights array length must match edges array length")
        weights = EdgeWeights({e: w for e, w in zip(edges, vals)})
    return graph, weights


def unraveled_ball_to_json_dict(ub) -> dict:
    doc = graph_to_json_dict(ub.tree, ub.weights)
    doc["type"] = "unraveled-ball"
    doc["root"] = ub.root
    doc["radius"] = ub.radius
    doc["label"] = [list(w) for w in ub.labels]
    doc["covering"] = list(ub.covering)
    return doc


def verdict_to_json_dict(v, instance: dict | None = None) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "type": "bound-verdict",
        "theorem_id": v.theorem_id,
        "lhs": v.lhs,
        "rhs": v.rhs,
        "margin": v.margin,
        "passed": v.passed,
        "witness": _jsonable(v.witness),
        "params": _jsonable(v.params),
        "flags": list(v.flags),
        "sub_verdicts": {k: verdict_to_json_dict(sv) for k, sv in v.sub_verdicts.items()},
        "details": _jsonable(v.details),
    }
    if instance is not None:
        doc["instance"] = _jsonable(instance)
    return doc


VERDICT_CSV_HEADER = "theorem_id,lhs,rhs,margin,passed,witness"


def verdict_to_csv_row(v) -> str:
    witness = "" if v.witness is None else str(v.witness).replace(",", ";").replace(" ", "")
    return f"{v.theorem_id},{v.lhs!r},{v.rhs!r},{v.margin!r},{int(v.passed)},{witness}"


def certificate_to_json_dict(cert) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "type": "robustness-certificate",
        "r": cert.r,
        "s": cert.s,
        "required_d": _jsonable(cert.required_d),
        "required_dtilde": _jsonable(cert.required_dtilde),
        "status": cert.status,
        "worst_sequence": [list(p) for p in cert.worst_sequence],
        "achieved_min_avg_degree": _jsonable(cert.achieved_min_avg_degree),
        "achieved_max_second_order": _jsonable(cert.achieved_max_second_order),
        "sequences_examined": cert.sequences_examined,
        "violation": cert.violation,
    }


def dump_report(doc, path: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- command helpers ------------------------------------------------------------

def _load_graph(args) -> tuple[Graph, EdgeWeights | None]:
    if getattr(args, "input", None):
        with open(args.input) as fh:
            text = fh.read()
        if args.input.endswith(".json"):
            return graph_from_json_dict(json.loads(text))
        return parse_edge_list(text)
    if getattr(args, "graph", None):
        g = generate(args.graph, args.seed, connected=getattr(args, "connected", False))
        return g, None
    raise InputError("provide --graph SPEC or --input PATH")


def _resolve_instance(args) -> tuple[Graph, EdgeWeights | None]:
    graph, file_weights = _load_graph(args)
    wspec = getattr(args, "weights", None)
    if wspec:
        return graph, generate_weights(wspec, graph, args.seed)
    return graph, file_weights


def _vertex_weighting(args, graph: Graph) -> VertexWeighting:
    gspec = getattr(args, "g", "uniform") or "uniform"
    if gspec == "uniform":
        return VertexWeighting.uniform(graph.n)
    if gspec == "degrees":
        return VertexWeighting.from_degrees(graph)
    raise InputError(f"unknown vertex weighting spec {gspec!r}")


def cmd_gen(args) -> int:
    graph, _ = _load_graph(args)
    weights = generate_weights(args.weights, graph, args.seed) if args.weights else None
    if args.format == "edges":
        text = format_edge_list(graph, weights)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        dump_report(graph_to_json_dict(graph, weights), args.output)
    return 0


def cmd_unravel(args) -> int:
    graph, weights = _resolve_instance(args)
    ub = unraveled_ball(graph, weights, args.vertex, args.r, node_cap=args.max_nodes)
    dump_report(unraveled_ball_to_json_dict(ub), args.output)
    return 0


def cmd_spectrum(args) -> int:
    graph, weights = _resolve_instance(args)
    if args.matrix == "normalized-laplacian":
        spec = spectra.normalized_laplacian_spectrum(graph)
    elif args.matrix == "weighted-adjacency":
        spec = spectra.spectrum(
            spectra.weighted_adjacency(graph, weights), source="weighted-adjacency"
        )
    else:
        spec = spectra.spectrum(
            spectra.weighted_adjacency(graph, None), source="adjacency"
        )
    dump_report(spec.to_json_dict(), args.output)
    return 0


def _instance_doc(graph, weights, g=None, **params) -> dict:
    doc = {"graph": graph_to_json_dict(graph, weights)}
    if g is not None:
        doc["g"] = list(g.values)
    doc.update(params)
    return doc


def cmd_bounds(args) -> int:
    graph, weights = _resolve_instance(args)
    thm = args.thm
    if thm == "1":
        g = _vertex_weighting(args, graph)
        verdict = bounds_mod.verify_thm1(graph, weights, g, args.r, tol=args.tol)
        instance = _instance_doc(graph, weights, g, r=args.r)
    elif thm == "coro1":
        verdict = bounds_mod.verify_coro1(graph, args.r, tol=args.tol)
        instance = _instance_doc(graph, None, r=args.r)
    elif thm == "coro2":
        trend = bounds_mod.coro2_trend(graph, args.rmax)
        floor = [bounds_mod.coro1_rhs(graph, r) for r, _ in trend]
        monotone = all(b >= a - args.tol for (_, a), (_, b) in zip(trend, trend[1:]))
        dominated = all(v >= f - args.tol for (_, v), f in zip(trend, floor))
        doc = {
            "schema": SCHEMA_VERSION,
            "type": "trend",
            "theorem_id": "Coro2-trend",
            "values": [[r, v] for r, v in trend],
            "coro1_rhs": floor,
            "monotone": monotone,
            "dominates_coro1": dominated,
            "instance": _instance_doc(graph, None, r_max=args.rmax),
        }
        dump_report(doc, args.output)
        return 0 if (monotone and dominated) else 1
    elif thm == "3":
        verdict = bounds_mod.verify_thm3(graph, args.r, tol=args.tol)
        instance = _instance_doc(graph, None, r=args.r)
    elif thm in ("lemma4", "2"):
        d_max, dt_min = robustness.max_robust_params(graph, args.r, args.s - 1)
        cert = robustness.check_robust(graph, args.r, d_max, dt_min, args.s - 1)
        if thm == "lemma4":
            verdict = bounds_mod.verify_lemma4(graph, args.r, args.s, cert, tol=args.tol)
        else:
            verdict = bounds_mod.verify_thm2(graph, args.r, args.s, cert, tol=args.tol)
        instance = _instance_doc(
            graph, None, r=args.r, s=args.s, certificate=certificate_to_json_dict(cert)
        )
    elif thm == "alon-boppana":
        verdict = bounds_mod.verify_alon_boppana(graph, args.k, tol=args.tol)
        instance = _instance_doc(graph, None, k=args.k)
    elif thm == "jiang":
        verdict = bounds_mod.verify_jiang(graph, args.r, tol=args.tol)
        instance = _instance_doc(graph, None, r=args.r)
    elif thm == "hoory":
        if args.c is None:
            raise InputError("--c is required for this bound (no default constant)")
        verdict = bounds_mod.verify_hoory(graph, args.r, args.c, tol=args.tol)
        instance = _instance_doc(graph, None, r=args.r, c=args.c)
    elif thm == "young":
        if args.c is None:
            raise InputError("--c is required for this bound (no default constant)")
        verdict = bounds_mod.verify_young(graph, args.r, args.c, tol=args.tol)
        instance = _instance_doc(graph, None, r=args.r, c=args.c)
    elif thm == "norm-ab":
        verdict = bounds_mod.verify_norm_ab(graph, tol=args.tol)
        instance = _instance_doc(graph, None)
    else:
        raise InputError(f"unknown --thm value {thm!r}")

    doc = verdict_to_json_dict(verdict, instance=instance)
    if args.format == "csv":
        text = VERDICT_CSV_HEADER + "\n" + verdict_to_csv_row(verdict) + "\n"
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        dump_report(doc, args.output)
    return 0 if verdict.passed else 1


def cmd_robust(args) -> int:
    graph, _ = _resolve_instance(args)
    cert = robustness.check_robust(
        graph,
        args.r,
        args.d,
        args.dtilde,
        args.s,
        mode=args.mode,
        seed=args.seed,
        trials=args.trials,
        original_metric=args.original_metric,
    )
    dump_report(certificate_to_json_dict(cert), args.output)
    return 0 if cert.certified else 1


def cmd_prooflab(args) -> int:
    graph, weights = _resolve_instance(args)
    g = _vertex_weighting(args, graph)
    report = prooflab.identity_suite(graph, weights, g, args.r, tol=args.tol)
    doc = report.to_json_dict()
    doc["chain_ok"] = prooflab.nb_transition_check(graph)
    dump_report(doc, args.output)
    return 0 if (report.passed and doc["chain_ok"]) else 1


# -- the aggregate property suite ------------------------------------------------

def _suite_sizes(size: str) -> dict:
    if size == "small":
        return {"thm1": 15, "identity": 8, "lemma1": 15, "thm3": 15, "robust": 8, "coro2_rmax": 5}
    if size == "full":
        return {"thm1": 200, "identity": 200, "lemma1": 100, "thm3": 100, "robust": 50, "coro2_rmax": 8}
    raise InputError(f"unknown suite size {size!r} (expected 'small' or 'full')")


def suite_run(seed: int, size: str = "small", negative_control: bool = False):
    """Run the randomized property corpus; returns (rows, report_doc).

    Each row is (check name, instances, failures, worst margin).  Any
    theorem failure embeds its serialized instance in the report.
    """
    sizes = _suite_sizes(size)
    rows = []
    failures_doc = []

    if negative_control:
        rng = derive_rng(seed, "suite:negative-control")
        g = random_connected_min2(rng)
        weights = {e: rng.uniform(0.1, 2.0) for e in g.edges()}
        first = next(iter(weights))
        weights[first] = -weights[first]
        EdgeWeights(weights)  # raises InputError: weights must be positive
        raise NumericError("negative control failed to trigger the weight check")

    def record(name, outcomes):
        margins = [m for _, m in outcomes]
        bad = [inst for inst, m in outcomes if m < -1e-9]
        rows.append((name, len(outcomes), len(bad), min(margins) if margins else 0.0))
        for inst in bad:
            failures_doc.append({"check": name, "instance": _jsonable(inst)})

    # closed-form goldens
    golden = []
    for n in range(5, 9):
        ub = unraveled_ball(_cycle(n), None, 0, 2)
        lam = spectra.spectral_radius(ub.tree, ub.weights)
        golden.append((f"cycle:{n}", lam - 2.0 * math.cos(math.pi / 6.0)))
    rad, _ = spectra.path_spectral_data(5)
    golden.append(("path:5", -abs(spectra.spectral_radius(_path(5), None) - rad)))
    record("goldens", [(name, -abs(m)) for name, m in golden])

    rng = derive_rng(seed, "suite:thm1")
    outcomes = []
    for _ in range(sizes["thm1"]):
        g = random_connected_min2(rng)
        w = random_weights(rng, g)
        vw = random_vertex_weighting(rng, g.n)
        r = rng.choice([1, 2, 3])
        v = bounds_mod.verify_thm1(g, w, vw, r)
        outcomes.append((_instance_doc(g, w, vw, r=r), v.margin))
    record("verify_thm1", outcomes)

    rng = derive_rng(seed, "suite:identity")
    outcomes = []
    for _ in range(sizes["identity"]):
        g = random_connected_min2(rng, 4, 10)
        w = random_weights(rng, g)
        vw = random_vertex_weighting(rng, g.n)
        r = rng.choice([1, 2, 3])
        rep = prooflab.identity_suite(g, w, vw, r)
        worst = min((-c.rel_err if c.relation == "eq" else c.rel_err) for c in rep.checks)
        outcomes.append((rep.instance or {}, worst if not rep.passed else max(worst, 0.0)))
    record("identity_suite", outcomes)

    rng = derive_rng(seed, "suite:lemma1")
    outcomes = []
    for _ in range(sizes["lemma1"]):
        g = random_connected_min2(rng, 4, 10)
        w = random_weights(rng, g)
        v = rng.randrange(g.n)
        r = rng.choice([1, 2, 3])
        b = ball(g, v, r)
        ub = unraveled_ball(g, w, v, r)
        lam_ball = spectra.spectral_radius(b, w.restrict(b))
        lam_cover = spectra.spectral_radius(ub.tree, ub.weights)
        outcomes.append((_instance_doc(g, w, r=r, v=v), lam_ball - lam_cover))
    record("lemma1_radius", outcomes)

    rng = derive_rng(seed, "suite:thm3")
    outcomes = []
    for _ in range(sizes["thm3"]):
        g = random_min2_possibly_disconnected(rng)
        r = rng.choice([1, 2, 3])
        v = bounds_mod.verify_thm3(g, r)
        worst = min([v.margin] + [sv.margin for sv in v.sub_verdicts.values()])
        outcomes.append((_instance_doc(g, None, r=r), worst))
    record("verify_thm3", outcomes)

    rng = derive_rng(seed, "suite:lemma4")
    outcomes_l4 = []
    outcomes_t2 = []
    vacuous = 0
    for _ in range(sizes["robust"]):
        g, r, s, cert = random_robust_instance(rng)
        v4 = bounds_mod.verify_lemma4(g, r, s, cert)
        v2 = bounds_mod.verify_thm2(g, r, s, cert)
        if "vacuous" in v2.flags:
            vacuous += 1
        inst = _instance_doc(g, None, r=r, s=s)
        outcomes_l4.append((inst, v4.margin))
        outcomes_t2.append((inst, v2.margin))
    record("verify_lemma4", outcomes_l4)
    record("verify_thm2", outcomes_t2)

    outcomes = []
    for g, name in ((petersen(), "petersen"), (_complete(4), "complete:4")):
        trend = bounds_mod.coro2_trend(g, sizes["coro2_rmax"])
        floor = [bounds_mod.coro1_rhs(g, r) for r, _ in trend]
        worst = min(
            min(b - a for (_, a), (_, b) in zip(trend, trend[1:])),
            min(v - f for (_, v), f in zip(trend, floor)),
        )
        outcomes.append(({"graph": name}, worst))
    record("coro2_trend", outcomes)

    cert = robustness.check_robust(petersen(), 1, 2, 2, 1)
    refute = robustness.check_robust(_cycle(6), 1, 2, 2, 1)
    empty = robustness.check_robust(_complete(4), 1, 2, 3, 1)
    ok = (
        cert.status == "certified-exhaustive"
        and refute.status == "refuted"
        and refute.achieved_min_avg_degree == Fraction(4, 3)
        and empty.status == "refuted"
    )
    record("robust_goldens", [({"check": "petersen/c6/k4"}, 0.0 if ok else -1.0)])

    report = {
        "schema": SCHEMA_VERSION,
        "type": "suite-report",
        "seed": seed,
        "size": size,
        "vacuous_thm2_instances": vacuous,
        "rows": [
            {"check": name, "instances": k, "failures": f, "worst_margin": m}
            for name, k, f, m in rows
        ],
        "failures": failures_doc,
    }
    return rows, report


def cmd_suite(args) -> int:
    rows, report = suite_run(args.seed, args.size, negative_control=args.negative_control)
    width = max(len(name) for name, *_ in rows)
    print(f"{'check'.ljust(width)}  instances  failures  worst margin")
    for name, k, f, m in rows:
        print(f"{name.ljust(width)}  {k:9d}  {f:8d}  {m: .3e}")
    failed = sum(f for _, _, f, _ in rows)
    print(f"vacuous thm2 instances: {report['vacuous_thm2_instances']}")
    print("suite: " + ("PASS" if failed == 0 else f"FAIL ({failed} failures)"))
    if args.output:
        dump_report(report, args.output)
    return 0 if failed == 0 else 1


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specbound",
        description="Verify spectral bounds on finite graphs: unraveled balls, "
        "weighted spectra, robustness certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, weights_default=None):
        p.add_argument("--graph", help="generator spec, e.g. cycle:6, gnp:10:0.5, petersen")
        p.add_argument("--input", help="path to an edge-list or .json graph file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--weights", default=weights_default,
                       help="unit | normalized | uniform:lo:hi")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("-o", "--output", help="write the JSON report here")

    p = sub.add_parser("gen", help="generate a graph")
    common(p)
    p.add_argument("--connected", action="store_true",
                   help="condition gnp on connectivity (rejection sampling)")
    p.add_argument("--format", choices=("json", "edges"), default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("unravel", help="build an unraveled ball")
    common(p)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-nodes", type=int, default=None)
    p.set_defaults(func=cmd_unravel)

    p = sub.add_parser("spectrum", help="eigenvalues of a graph matrix")
    common(p)
    p.add_argument("--matrix", choices=("adjacency", "weighted-adjacency", "normalized-laplacian"),
                   default="adjacency")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bounds", help="verify one bound on one instance")
    common(p, weights_default="unit")
    p.add_argument("--thm", required=True,
                   choices=("1", "coro1", "coro2", "3", "lemma4", "2",
                            "alon-boppana", "jiang", "hoory", "young", "norm-ab"))
    p.add_argument("--g", default="uniform", help="vertex weighting: uniform | degrees")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--rmax", type=int, default=6)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("robust", help="certify or refute ball-deletion robustness")
    common(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--dtilde", type=float, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--original-metric", action="store_true",
                   help="measure deletion balls in the original graph metric")
    p.set_defaults(func=cmd_robust)

    p = sub.add_parser("prooflab", help="run the identity chain on one instance")
    common(p, weights_default="unit")
    p.add_argument("--g", default="uniform")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_prooflab)

    p = sub.add_parser("suite", help="run the randomized property corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", choices=("small", "full"), default="small")
    p.add_argument("--negative-control", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
