"""Non-backtracking walks, unraveled balls, and the edge-walk forest.

An unraveled ball of radius r at v is the tree of all non-backtracking
walks of length at most r starting at v, with adjacency given by simple
extension.  The covering map sends each walk to its terminal vertex and
lifts edge weights from the base graph.

Walk enumeration extends walks in ascending neighbor order, so node ids,
labels, and every report derived from them are deterministic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import InputError, PreconditionError, ResourceLimitError
from .graph import EdgeWeights, Graph, resolve_weights

DEFAULT_NODE_CAP = 2_000_000
NODE_CAP_ENV = "SPECBOUND_MAX_NODES"


def resolve_node_cap(node_cap: int | None) -> int:
    if node_cap is not None:
        return int(node_cap)
    env = os.environ.get(NODE_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{NODE_CAP_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_NODE_CAP


def nb_walks(graph: Graph, v: int, r: int, node_cap: int | None = None) -> list[list[tuple[int, ...]]]:
    """All non-backtracking walks from ``v`` grouped by length 0..r.

    A walk (v_0, ..., v_i) is non-backtracking when v_j != v_{j+2} for all
    j; length <= 1 is vacuously fine.  Group i holds every walk of length
    exactly i, in lexicographic extension order.
    """
    graph._check_vertex(v)
    if r < 0:
        raise InputError("walk length bound must be nonnegative")
    cap = resolve_node_cap(node_cap)
    groups: list[list[tuple[int, ...]]] = [[(v,)]]
    total = 1
    for _ in range(r):
        frontier = groups[-1]
        nxt: list[tuple[int, ...]] = []
        for walk in frontier:
            last = walk[-1]
            prev = walk[-2] if len(walk) >= 2 else None
            for u in graph.neighbors(last):
                if u != prev:
                    nxt.append(walk + (u,))
                    total += 1
                    if total > cap:
                        raise ResourceLimitError(
                            f"walk enumeration at vertex {v}, radius {r} "
                            f"exceeds the node cap of {cap}"
                        )
        groups.append(nxt)
    return groups


def all_nb_edge_walks(graph: Graph) -> list[tuple[int, int]]:
    """All 2|E| length-1 walks (ordered edges), lexicographically sorted."""
    return [(u, w) for u in graph.vertices for w in graph.neighbors(u)]


@dataclass(frozen=True)
class UnraveledBall:
    """Rooted tree of non-backtracking walks with covering data.

    ``labels[i]`` is the walk at node i, ``covering[i]`` its terminal
    vertex in the base graph, ``parents[i]`` the tree parent (-1 at the
    root).  ``weights`` are the lifted edge weights on ``tree`` and
    ``source_weights`` the base-graph weights they were lifted from.
    """

    tree: Graph
    root: int
    labels: tuple[tuple[int, ...], ...]
    covering: tuple[int, ...]
    parents: tuple[int, ...]
    weights: EdgeWeights
    source_weights: EdgeWeights
    radius: int

    def depth(self, node: int) -> int:
        return len(self.labels[node]) - 1


def unraveled_ball(
    graph: Graph,
    weights: EdgeWeights | None,
    v: int,
    r: int,
    node_cap: int | None = None,
) -> UnraveledBall:
    """Build the radius-r unraveled ball at v with lifted weights."""
    graph._check_vertex(v)
    if r < 0:
        raise InputError("radius must be nonnegative")
    weights = resolve_weights(graph, weights)
    cap = resolve_node_cap(node_cap)

    labels: list[tuple[int, ...]] = [(v,)]
    parents: list[int] = [-1]
    edges: list[tuple[int, int]] = []
    lifted: dict[tuple[int, int], float] = {}
    frontier = [0]
    for _ in range(r):
        nxt: list[int] = []
        for nid in frontier:
            walk = labels[nid]
            last = walk[-1]
            prev = walk[-2] if len(walk) >= 2 else None
            for u in graph.neighbors(last):
                if u == prev:
                    continue
                child = len(labels)
                if child + 1 > cap:
                    raise ResourceLimitError(
                        f"unraveled ball at vertex {v}, radius {r} "
                        f"exceeds the node cap of {cap}"
                    )
                labels.append(walk + (u,))
                parents.append(nid)
                edges.append((nid, child))
                lifted[(nid, child)] = weights.get(last, u)
                nxt.append(child)
        frontier = nxt

    tree = Graph(len(labels), edges)
    return UnraveledBall(
        tree=tree,
        root=0,
        labels=tuple(labels),
        covering=tuple(walk[-1] for walk in labels),
        parents=tuple(parents),
        weights=EdgeWeights(lifted),
        source_weights=weights,
        radius=r,
    )


@dataclass(frozen=True)
class WalkForest:
    """Disjoint union of the subtrees hanging below each length-1 walk.

    The component for the ordered edge e = (v0, v1) consists of every
    non-backtracking walk of length 1..r+1 whose first step is e; its
    vertex set over all e is the union of the walk sets W_1..W_{r+1}.
    ``components[j]`` is the contiguous node-id range [start, end) of the
    component rooted at ``edge_walks[j]``.
    """

    forest: Graph
    labels: tuple[tuple[int, ...], ...]
    covering: tuple[int, ...]
    parents: tuple[int, ...]
    weights: EdgeWeights
    source_weights: EdgeWeights
    radius: int
    edge_walks: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, int], ...]

    def depth(self, node: int) -> int:
        """Walk length of the node's label (1 at component roots)."""
        return len(self.labels[node]) - 1


def walk_forest(
    graph: Graph,
    weights: EdgeWeights | None,
    r: int,
    node_cap: int | None = None,
) -> WalkForest:
    """One tree per ordered edge, holding its walk extensions up to length r+1."""
    if r < 0:
        raise InputError("radius must be nonnegative")
    if graph.n == 0 or graph.min_degree() < 1:
        raise PreconditionError("walk forest needs minimum degree >= 1")
    weights = resolve_weights(graph, weights)
    cap = resolve_node_cap(node_cap)

    labels: list[tuple[int, ...]] = []
    parents: list[int] = []
    edges: list[tuple[int, int]] = []
    lifted: dict[tuple[int, int], float] = {}
    edge_walks = all_nb_edge_walks(graph)
    spans: list[tuple[int, int]] = []

    for e in edge_walks:
        start = len(labels)
        labels.append(e)
        parents.append(-1)
        if len(labels) > cap:
            raise ResourceLimitError(
                f"walk forest at radius {r} exceeds the node cap of {cap}"
            )
        frontier = [start]
        for _ in range(r):
            nxt: list[int] = []
            for nid in frontier:
                walk = labels[nid]
                last, prev = walk[-1], walk[-2]
                for u in graph.neighbors(last):
                    if u == prev:
                        continue
                    child = len(labels)
                    if child + 1 > cap:
                        raise ResourceLimitError(
                            f"walk forest at radius {r} exceeds the node cap of {cap}"
                        )
                    labels.append(walk + (u,))
                    parents.append(nid)
                    edges.append((nid, child))
                    lifted[(nid, child)] = weights.get(last, u)
                    nxt.append(child)
            frontier = nxt
        spans.append((start, len(labels)))

    forest = Graph(len(labels), edges)
    return WalkForest(
        forest=forest,
        labels=tuple(labels),
        covering=tuple(walk[-1] for walk in labels),
        parents=tuple(parents),
        weights=EdgeWeights(lifted),
        source_weights=weights,
        radius=r,
        edge_walks=tuple(edge_walks),
        components=tuple(spans),
    )


def covering_map_check(unraveled: UnraveledBall, graph: Graph) -> bool:
    """True iff the covering map is a local isomorphism with matching weights.

    At every non-leaf node the covered neighbors must biject onto the
    base-graph neighborhood of the covered vertex, and each lifted edge
    weight must equal the base weight of its covered edge.
    """
    tree, cov = unraveled.tree, unraveled.covering
    if len(cov) != tree.n or len(unraveled.labels) != tree.n:
        return False
    for node in tree.vertices:
        if unraveled.depth(node) >= unraveled.radius:
            continue
        covered = [cov[w] for w in tree.neighbors(node)]
        if len(set(covered)) != len(covered):
            return False
        if sorted(covered) != list(graph.neighbors(cov[node])):
            return False
    for a, b in tree.edges():
        try:
            lifted = unraveled.weights.get(a, b)
            base = unraveled.source_weights.get(cov[a], cov[b])
        except InputError:
            return False
        if lifted != base:
            return False
    return True


def perturb_lifted_weight(unraveled: UnraveledBall, factor: float = 2.0) -> UnraveledBall:
    """Copy with one lifted weight scaled; a negative control for the map check."""
    items = sorted(unraveled.weights.items())
    if not items:
        raise InputError("no lifted weights to perturb")
    (key, value) = items[0]
    bad = dict(items)
    bad[key] = value * factor
    return replace(unraveled, weights=EdgeWeights(bad))


# -- canonical rooted-tree encoding ------------------------------------------

def _tree_centers(tree: Graph) -> list[int]:
    """The 1 or 2 middle vertices found by iteratively stripping leaves."""
    if tree.n == 1:
        return [0]
    deg = tree.degree_sequence()
    alive = tree.n
    layer = [v for v in tree.vertices if deg[v] <= 1]
    removed = [False] * tree.n
    while alive > 2:
        if not layer:
            raise InputError("graph is not a tree (contains a cycle)")
        nxt = []
        for v in layer:
            removed[v] = True
            alive -= 1
            for u in tree.neighbors(v):
                if not removed[u]:
                    deg[u] -= 1
                    if deg[u] == 1:
                        nxt.append(u)
        layer = nxt
    return [v for v in tree.vertices if not removed[v]]


def tree_canonical_form(
    tree: Graph,
    weights: EdgeWeights | None = None,
    root: int | None = None,
) -> str:
    """Canonical string encoding of a (weighted) tree.

    Child encodings are sorted at every node and edge weights are
    quantized to 12 significant digits, so two trees are isomorphic (as
    rooted trees when ``root`` is given, as free trees otherwise) exactly
    when their encodings match.
    """
    if tree.n == 0:
        raise InputError("cannot encode the empty tree")
    if tree.edge_count != tree.n - 1:
        raise InputError("graph is not a tree (wrong edge count)")
    weights = resolve_weights(tree, weights)

    def encode(node: int, parent: int) -> str:
        parts = []
        for child in tree.neighbors(node):
            if child == parent:
                continue
            w = weights.get(node, child)
            parts.append(f"{w:.12g}{encode(child, node)}")
        return "(" + ",".join(sorted(parts)) + ")"

    if root is not None:
        tree._check_vertex(root)
        form = encode(root, -1)
        if form.count("(") != tree.n:
            raise InputError("graph is not a tree (disconnected)")
        return form
    centers = _tree_centers(tree)
    forms = [encode(c, -1) for c in centers]
    if forms[0].count("(") != tree.n:
        raise InputError("graph is not a tree (disconnected)")
    return f"{len(centers)}|{min(forms)}"


def trees_isomorphic(
    tree_a: Graph,
    weights_a: EdgeWeights | None,
    tree_b: Graph,
    weights_b: EdgeWeights | None,
) -> bool:
    """Free-tree isomorphism (weights included) via canonical encodings."""
    if tree_a.n != tree_b.n or tree_a.edge_count != tree_b.edge_count:
        return False
    return tree_canonical_form(tree_a, weights_a) == tree_canonical_form(tree_b, weights_b)
