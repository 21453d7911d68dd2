"""Finite simple undirected graphs, positive edge weights, and degree statistics.

Vertices are dense integer ids ``0..n-1``.  Graphs produced by
``induced_subgraph`` (and everything built on it: balls, 2-cores,
components) carry ``original_ids`` mapping each vertex back to its id in
the parent graph, so witnesses stay reportable in parent coordinates.
Degree statistics are exact :class:`~fractions.Fraction` values; callers
needing floats convert explicitly.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from .errors import InputError, PreconditionError


class Graph:
    """Immutable simple undirected graph on vertex ids ``0..n-1``."""

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        original_ids: Sequence[int] | None = None,
    ):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) uses a vertex outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InputError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
            m += 1
        self.n = n
        self.edge_count = m
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        if original_ids is None:
            self.original_ids: tuple[int, ...] = tuple(range(n))
        else:
            ids = tuple(int(x) for x in original_ids)
            if len(ids) != n:
                raise InputError("original_ids length must equal vertex count")
            self.original_ids = ids

    @property
    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbor ids of ``v``."""
        self._check_vertex(v)
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        nbrs = self._adj[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edges(self) -> list[tuple[int, int]]:
        """All edges as pairs ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(len(nbrs) for nbrs in self._adj)

    def degree_sequence(self) -> list[int]:
        return [len(nbrs) for nbrs in self._adj]

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InputError(f"unknown vertex id {v!r} (graph has {self.n} vertices)")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class EdgeWeights:
    """Strictly positive weights on an edge set, keyed by unordered vertex pair."""

    def __init__(self, mapping: Mapping[tuple[int, int], float]):
        weights: dict[tuple[int, int], float] = {}
        for (u, v), w in mapping.items():
            if u == v:
                raise InputError(f"weight on self-loop at vertex {u}")
            w = float(w)
            if not w > 0.0:
                raise InputError(f"edge weights must be positive, got {w} on ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            if key in weights:
                raise InputError(f"duplicate weight for edge ({key[0]}, {key[1]})")
            weights[key] = w
        self._w = weights

    @classmethod
    def uniform(cls, graph: Graph, value: float = 1.0) -> "EdgeWeights":
        return cls({e: value for e in graph.edges()})

    def get(self, u: int, v: int) -> float:
        key = (u, v) if u < v else (v, u)
        try:
            return self._w[key]
        except KeyError:
            raise InputError(f"no weight defined for edge ({key[0]}, {key[1]})") from None

    def items(self):
        return self._w.items()

    def __len__(self) -> int:
        return len(self._w)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        u, v = pair
        return ((u, v) if u < v else (v, u)) in self._w

    def validate_for(self, graph: Graph) -> None:
        """Check the weight domain is exactly the edge set of ``graph``."""
        edge_set = set(graph.edges())
        for key in self._w:
            if key not in edge_set:
                raise InputError(f"weight given for non-edge ({key[0]}, {key[1]})")
        for e in edge_set:
            if e not in self._w:
                raise InputError(f"no weight defined for edge ({e[0]}, {e[1]})")

    def restrict(self, subgraph: Graph) -> "EdgeWeights":
        """Weights for an induced subgraph, looked up via its ``original_ids``."""
        ids = subgraph.original_ids
        return EdgeWeights(
            {(a, b): self.get(ids[a], ids[b]) for a, b in subgraph.edges()}
        )


class VertexWeighting:
    """Strictly positive function on all vertices of a graph."""

    def __init__(self, values: Sequence[float]):
        vals = tuple(float(x) for x in values)
        for i, x in enumerate(vals):
            if not x > 0.0:
                raise InputError(f"vertex weights must be positive, got {x} at vertex {i}")
        self.values = vals

    @classmethod
    def uniform(cls, n: int, value: float = 1.0) -> "VertexWeighting":
        return cls([value] * n)

    @classmethod
    def from_degrees(cls, graph: Graph) -> "VertexWeighting":
        if graph.min_degree() < 1:
            raise PreconditionError("degree weighting needs every vertex to have degree >= 1")
        return cls([graph.degree(v) for v in graph.vertices])

    def __getitem__(self, v: int) -> float:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)


def resolve_weights(graph: Graph, weights: EdgeWeights | None) -> EdgeWeights:
    """Missing weights mean the unweighted case: every edge gets weight 1."""
    if weights is None:
        return EdgeWeights.uniform(graph)
    weights.validate_for(graph)
    return weights


# -- degree statistics ------------------------------------------------------

def average_degree(graph: Graph) -> Fraction:
    """``2|E| / |V|`` as an exact rational; undefined on the empty graph."""
    if graph.n == 0:
        raise PreconditionError("average degree of the empty graph is undefined")
    return Fraction(2 * graph.edge_count, graph.n)


def second_order_average_degree(graph: Graph) -> Fraction:
    """``sum(d(u)^2) / sum(d(u))`` as an exact rational; needs at least one edge."""
    degs = graph.degree_sequence()
    total = sum(degs)
    if total == 0:
        raise PreconditionError("second order average degree needs at least one edge")
    return Fraction(sum(d * d for d in degs), total)


# -- distance, balls, induced subgraphs -------------------------------------

def distances_from(graph: Graph, v: int) -> list[int]:
    """BFS distances from ``v``; ``-1`` marks unreachable vertices."""
    graph._check_vertex(v)
    dist = [-1] * graph.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in graph.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph on ``vertices``; its ``original_ids`` map back to ``graph``."""
    chosen = sorted(set(vertices))
    for v in chosen:
        graph._check_vertex(v)
    index = {v: i for i, v in enumerate(chosen)}
    sub_edges = [
        (index[u], index[v])
        for u in chosen
        for v in graph.neighbors(u)
        if u < v and v in index
    ]
    return Graph(len(chosen), sub_edges, original_ids=chosen)


def ball(graph: Graph, v: int, r: int) -> Graph:
    """Induced subgraph on vertices within distance ``r`` of ``v``."""
    if r < 0:
        raise InputError("ball radius must be nonnegative")
    dist = distances_from(graph, v)
    return induced_subgraph(graph, [u for u in graph.vertices if 0 <= dist[u] <= r])


def delete_ball(graph: Graph, v: int, r: int) -> Graph:
    """Induced subgraph on vertices at distance > r from ``v``; may be empty."""
    if r < 0:
        raise InputError("ball radius must be nonnegative")
    dist = distances_from(graph, v)
    return induced_subgraph(graph, [u for u in graph.vertices if dist[u] < 0 or dist[u] > r])


def connected_components(graph: Graph) -> list[Graph]:
    """Components as induced subgraphs, ordered by their smallest vertex id."""
    seen = [False] * graph.n
    parts: list[Graph] = []
    for start in graph.vertices:
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in graph.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        parts.append(induced_subgraph(graph, comp))
    return parts


def two_core(graph: Graph) -> Graph:
    """Maximal induced subgraph with minimum degree >= 2 (possibly empty).

    Computed as the fixed point of repeatedly deleting vertices of degree
    at most 1.
    """
    alive = [True] * graph.n
    deg = graph.degree_sequence()
    queue = deque(v for v in graph.vertices if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in graph.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                if deg[w] <= 1:
                    queue.append(w)
    return induced_subgraph(graph, [v for v in graph.vertices if alive[v]])


# -- edge-list text format ---------------------------------------------------
#
# First content line: "n m".  Then m lines "u v" or "u v weight" (weight a
# positive decimal).  0-based ids; full-line "#" comments and blank lines
# are allowed anywhere.

def parse_edge_list(text: str) -> tuple[Graph, EdgeWeights | None]:
    lines = text.splitlines()
    content: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        content.append((lineno, stripped))
    if not content:
        raise InputError("edge list is empty (line 1: expected 'n m' header)")

    lineno, header = content[0]
    parts = header.split()
    if len(parts) != 2:
        raise InputError(f"line {lineno}: expected 'n m' header, got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise InputError(f"line {lineno}: expected integers in 'n m' header") from None
    if len(content) - 1 != m:
        raise InputError(
            f"line {lineno}: header promises {m} edges, found {len(content) - 1}"
        )

    edges: list[tuple[int, int]] = []
    weights: dict[tuple[int, int], float] = {}
    weighted: bool | None = None
    for lineno, line in content[1:]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise InputError(f"line {lineno}: expected 'u v' or 'u v weight', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: vertex ids must be integers") from None
        has_w = len(parts) == 3
        if weighted is None:
            weighted = has_w
        elif weighted != has_w:
            raise InputError(f"line {lineno}: mixed weighted and unweighted edge lines")
        if has_w:
            try:
                w = float(parts[2])
            except ValueError:
                raise InputError(f"line {lineno}: weight must be a decimal number") from None
            if not w > 0.0:
                raise InputError(f"line {lineno}: weight must be positive, got {w}")
            weights[(u, v) if u < v else (v, u)] = w
        edges.append((u, v))

    try:
        graph = Graph(n, edges)
    except InputError as exc:
        raise InputError(f"invalid edge list: {exc}") from None
    return graph, (EdgeWeights(weights) if weighted else None)


def format_edge_list(graph: Graph, weights: EdgeWeights | None = None) -> str:
    lines = [f"{graph.n} {graph.edge_count}"]
    for u, v in graph.edges():
        if weights is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {weights.get(u, v)!r}")
    return "\n".join(lines) + "\n"
