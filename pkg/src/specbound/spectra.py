"""Symmetric-matrix spectra for weighted graphs.

Two independent numerical routes are kept deliberately separate:

* :func:`spectrum` — a dense cyclic Jacobi eigensolver (full spectrum,
  eigenvectors on request), adequate for the desk-scale matrices this
  toolkit targets;
* :func:`spectral_radius` — shifted power iteration over adjacency lists,
  which handles the large sparse trees produced by unraveled balls.

The two must agree to 1e-9 on the top eigenvalue; tests enforce it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InputError, NumericError, PreconditionError
from .graph import (
    EdgeWeights,
    Graph,
    VertexWeighting,
    connected_components,
    resolve_weights,
)

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
POWER_TOL = 1e-12
POWER_MAX_ITER = 100_000

SOURCE_TAGS = ("adjacency", "weighted-adjacency", "normalized-laplacian")


@dataclass(frozen=True)
class Spectrum:
    """Full ordered eigenvalue list of a symmetric matrix.

    ``values`` are sorted descending for (weighted-)adjacency sources and
    ascending for the normalized Laplacian, matching the usual orderings
    of lambda_1 >= ... >= lambda_n and mu_1 <= ... <= mu_n.
    """

    values: tuple[float, ...]
    source: str
    residual: float

    @property
    def order(self) -> int:
        return len(self.values)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "source": self.source,
            "order": self.order,
            "eigenvalues": list(self.values),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class ClosedWalkTable:
    """Total closed-walk weights t_{2k}(v) = (A^{2k})_{vv} for k = 1..k_max."""

    base_vertex: int
    values: dict[int, float]


def _as_symmetric(matrix) -> np.ndarray:
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix entries must be finite")
    if arr.size and not np.array_equal(arr, arr.T):
        if np.max(np.abs(arr - arr.T)) > 1e-13 * max(1.0, float(np.max(np.abs(arr)))):
            raise InputError("matrix is not symmetric")
        arr = 0.5 * (arr + arr.T)
    return arr


def jacobi_eigensystem(
    matrix,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Sweeps rotations over all (p, q) pairs until the off-diagonal
    Frobenius norm drops below ``tol`` times the matrix norm.  Returns
    unsorted eigenvalues and the orthogonal matrix of column eigenvectors.
    """
    A = _as_symmetric(matrix).copy()
    n = A.shape[0]
    V = np.eye(n)
    if n <= 1:
        return np.diag(A).copy(), V
    norm = float(np.linalg.norm(A))
    if norm == 0.0:
        return np.zeros(n), V

    def offdiag() -> float:
        return float(np.linalg.norm(A - np.diag(np.diag(A))))

    for _ in range(max_sweeps):
        if offdiag() <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if not math.isfinite(tau):
                    t = 0.0
                elif abs(tau) > 1e8:
                    # sqrt(1 + tau^2) == |tau| at double precision; avoids overflow
                    t = 0.5 / tau
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        off = offdiag()
        if off > tol * norm:
            raise ConvergenceError(
                f"Jacobi sweeps exhausted: off-diagonal norm {off:.3e} > {tol * norm:.3e}"
            )
    return np.diag(A).copy(), V


def spectrum(matrix, source: str = "adjacency") -> Spectrum:
    """All eigenvalues of a symmetric matrix with solver residual attached."""
    if source not in SOURCE_TAGS:
        raise InputError(f"unknown spectrum source {source!r}")
    M = _as_symmetric(matrix)
    vals, vecs = jacobi_eigensystem(M)
    if M.size:
        resid_mat = M @ vecs - vecs * vals
        residual = float(np.max(np.linalg.norm(resid_mat, axis=0))) if M.shape[0] else 0.0
    else:
        residual = 0.0
    ascending = source == "normalized-laplacian"
    ordered = np.sort(vals)
    if not ascending:
        ordered = ordered[::-1]
    return Spectrum(tuple(float(x) for x in ordered), source, residual)


# -- graph matrices ----------------------------------------------------------

def weighted_adjacency(graph: Graph, weights: EdgeWeights | None) -> np.ndarray:
    """Dense symmetric matrix with entry (u, v) = w(uv) on edges, 0 elsewhere."""
    weights = resolve_weights(graph, weights)
    A = np.zeros((graph.n, graph.n))
    for u, v in graph.edges():
        w = weights.get(u, v)
        A[u, v] = w
        A[v, u] = w
    return A


def normalized_weights(graph: Graph) -> EdgeWeights:
    """The degree-normalized weighting w0(uv) = 1/sqrt(d(u) d(v))."""
    return EdgeWeights(
        {
            (u, v): 1.0 / math.sqrt(graph.degree(u) * graph.degree(v))
            for u, v in graph.edges()
        }
    )


def normalized_laplacian_spectrum(graph: Graph) -> Spectrum:
    """Eigenvalues of I - D^{-1/2} A D^{-1/2}, ascending.

    Computed as 1 minus the weighted-adjacency eigenvalues under the
    normalized weighting, then cross-checked against a direct eigensolve
    of the Laplacian matrix itself; disagreement beyond 1e-9 raises.
    """
    if graph.n == 0:
        raise InputError("normalized Laplacian of the empty graph is undefined")
    if graph.min_degree() < 1:
        raise InputError("normalized Laplacian needs every vertex to have degree >= 1")
    w0 = normalized_weights(graph)
    adj_spec = spectrum(weighted_adjacency(graph, w0), source="weighted-adjacency")
    mu = tuple(1.0 - lam for lam in adj_spec.values)

    degs = np.array(graph.degree_sequence(), dtype=float)
    inv_sqrt = 1.0 / np.sqrt(degs)
    A = weighted_adjacency(graph, EdgeWeights.uniform(graph))
    lap = np.eye(graph.n) - (inv_sqrt[:, None] * A) * inv_sqrt[None, :]
    direct = spectrum(lap, source="normalized-laplacian")
    drift = max(abs(a - b) for a, b in zip(mu, direct.values))
    if drift > 1e-9:
        raise NumericError(
            f"normalized Laplacian routes disagree by {drift:.3e} (> 1e-9)"
        )
    return Spectrum(mu, "normalized-laplacian", max(adj_spec.residual, direct.residual))


# -- power iteration ---------------------------------------------------------

def _edge_arrays(graph: Graph, weights: EdgeWeights, vertex_ids):
    index = {v: i for i, v in enumerate(vertex_ids)}
    src, dst, wts = [], [], []
    for a, b in graph.edges():
        if a in index and b in index:
            w = weights.get(a, b)
            src.extend((index[a], index[b]))
            dst.extend((index[b], index[a]))
            wts.extend((w, w))
    return (
        np.array(src, dtype=np.intp),
        np.array(dst, dtype=np.intp),
        np.array(wts, dtype=float),
    )


def _power_top_eigenpair(nc, src, dst, wts, tol, max_iter):
    """Perron pair of a nonnegative symmetric operator given as edge arrays.

    Iterates on the shifted operator A + rho*I with rho the maximum row
    sum, which keeps iterates in the nonnegative cone and defeats the
    +/-lambda_1 oscillation of bipartite graphs.  Stops when the Rayleigh
    residual ||Ax - theta*x|| falls below tol * max(1, rho).
    """
    if len(src) == 0:
        return 0.0, np.full(nc, 1.0 / math.sqrt(nc)), 0.0
    row_sums = np.bincount(dst, weights=wts, minlength=nc)
    rho = float(row_sums.max())
    scale = max(1.0, rho)
    x = np.full(nc, 1.0 / math.sqrt(nc))
    res = math.inf
    for _ in range(max_iter):
        ax = np.bincount(dst, weights=wts * x[src], minlength=nc)
        theta = float(x @ ax)
        res = float(np.linalg.norm(ax - theta * x))
        if res <= tol * scale:
            return theta, x, res
        y = ax + rho * x
        x = y / np.linalg.norm(y)
    raise ConvergenceError(
        f"power iteration hit {max_iter} iterations with residual {res:.3e} "
        f"(target {tol * scale:.3e})"
    )


def spectral_radius(
    graph: Graph,
    weights: EdgeWeights | None = None,
    tol: float = POWER_TOL,
    max_iter: int = POWER_MAX_ITER,
) -> float:
    """Largest eigenvalue of the weighted adjacency matrix.

    Equals the spectral radius since the matrix is nonnegative.  Runs one
    power iteration per connected component and takes the maximum; the
    per-component restriction keeps a genuine Perron gap in view.
    """
    if graph.n == 0:
        raise PreconditionError("spectral radius of the empty graph is undefined")
    weights = resolve_weights(graph, weights)
    best = 0.0
    for comp in connected_components(graph):
        src, dst, wts = _edge_arrays(graph, weights, comp.original_ids)
        lam, _, _ = _power_top_eigenpair(comp.n, src, dst, wts, tol, max_iter)
        best = max(best, lam)
    return best


def top_eigenpair(
    graph: Graph,
    weights: EdgeWeights | None = None,
    tol: float = POWER_TOL,
    max_iter: int = POWER_MAX_ITER,
) -> tuple[float, np.ndarray]:
    """Spectral radius together with a nonnegative unit eigenvector.

    For disconnected graphs the vector is supported on a component
    attaining the radius.
    """
    if graph.n == 0:
        raise PreconditionError("spectral radius of the empty graph is undefined")
    weights = resolve_weights(graph, weights)
    best = None
    for comp in connected_components(graph):
        src, dst, wts = _edge_arrays(graph, weights, comp.original_ids)
        lam, vec, _ = _power_top_eigenpair(comp.n, src, dst, wts, tol, max_iter)
        if best is None or lam > best[0]:
            best = (lam, comp, vec)
    lam, comp, vec = best
    full = np.zeros(graph.n)
    for i, v in enumerate(comp.original_ids):
        full[v] = vec[i]
    return lam, full


def closed_walk_weight(
    graph: Graph,
    weights: EdgeWeights | None,
    v: int,
    k_max: int,
) -> ClosedWalkTable:
    """t_{2k}(v) for k = 1..k_max via 2k matrix-vector products from e_v."""
    graph._check_vertex(v)
    if k_max < 0:
        raise InputError("k_max must be nonnegative")
    A = weighted_adjacency(graph, weights)
    x = np.zeros(graph.n)
    x[v] = 1.0
    table: dict[int, float] = {}
    for step in range(1, 2 * k_max + 1):
        x = A @ x
        if step % 2 == 0:
            table[step // 2] = float(x[v])
    return ClosedWalkTable(base_vertex=v, values=table)


def rayleigh_quotient(matrix, f) -> float:
    """<f, Mf> / <f, f> for a symmetric matrix and a nonzero vector."""
    M = _as_symmetric(matrix)
    vec = np.asarray(f, dtype=float)
    if vec.ndim != 1 or vec.shape[0] != M.shape[0]:
        raise InputError("vector length must match the matrix order")
    denom = float(vec @ vec)
    if denom == 0.0:
        raise InputError("Rayleigh quotient of the zero vector is undefined")
    return float(vec @ (M @ vec)) / denom


def path_spectral_data(m: int) -> tuple[float, tuple[float, ...]]:
    """Spectral radius and positive top eigenvector of the path on m vertices.

    radius = 2 cos(pi/(m+1)); eigenvector entries x_j = sin(j*pi/(m+1)).
    """
    if m < 1:
        raise InputError("path must have at least one vertex")
    radius = 2.0 * math.cos(math.pi / (m + 1))
    vector = tuple(math.sin(j * math.pi / (m + 1)) for j in range(1, m + 1))
    return radius, vector


def path_vector_identity_gap(vector, radius: float) -> float:
    """Absolute defect of sum(2 x_{i-1} x_i) = radius * sum(x_i^2)."""
    xs = list(vector)
    lhs = sum(2.0 * xs[i - 1] * xs[i] for i in range(1, len(xs)))
    rhs = radius * sum(x * x for x in xs)
    return abs(lhs - rhs)
