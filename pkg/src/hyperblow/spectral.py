"""Spectral radius of uniform hypergraphs by shifted tensor power iteration.

The adjacency tensor is never materialized: ``A x^{r-1}`` at vertex v is the
sum over edges e containing v of the product of x over e - {v}, which is one
pass over the edge list.

The same kernel drives the quotient (class-constant) system of a blow-up.
With class weights n_j, the blow-up eigen-equation restricted to class
constant vectors is

    lambda * x_i^{r-1} = sum_{e in E(base), i in e} prod_{j in e - i} n_j x_j,

i.e. the base contraction evaluated at ``n * x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .hypergraph import UniformHypergraph, components, induced_on, is_connected

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000
SHIFT = 1.0


class ConvergenceError(RuntimeError):
    """A solve did not reach its tolerance within the iteration budget."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class SpectralResult:
    """Outcome of one power-iteration solve.

    ``vector`` is the Perron vector estimate, scaled so that sum(x_v^r) = 1
    over the vertices it describes (for a quotient solve: sum(n_i x_i^r) = 1,
    so expanding it class-constantly gives a unit vector of the blow-up).
    ``residual`` is the max-norm of ``A x^{r-1} - rho x^{[r-1]}``.
    """

    rho: float
    vector: np.ndarray
    iterations: int
    residual: float
    bracket: tuple[float, float]
    converged: bool
    history: tuple[tuple[float, float], ...] = field(default=(), repr=False)


class _Contraction:
    """Precomputed scatter plan for ``y_v = sum_{e ∋ v} prod_{u in e-v} w_u``."""

    def __init__(self, edges: np.ndarray, order: int):
        self.edges = edges
        self.order = order
        m, r = edges.shape
        flat_targets = edges.reshape(-1)
        # stable sort keeps edge order inside each vertex segment
        self.perm = np.argsort(flat_targets, kind="stable")
        sorted_targets = flat_targets[self.perm]
        self.verts, self.starts = np.unique(sorted_targets, return_index=True)

    def __call__(self, w: np.ndarray) -> np.ndarray:
        """``w`` has shape (batch, order); returns the same shape."""
        batch = w.shape[0]
        out = np.zeros((batch, self.order))
        if self.edges.shape[0] == 0:
            return out
        P = w[:, self.edges]
        left = np.ones_like(P)
        right = np.ones_like(P)
        np.cumprod(P[..., :-1], axis=-1, out=left[..., 1:])
        right[..., :-1] = np.cumprod(P[..., :0:-1], axis=-1)[..., ::-1]
        residues = (left * right).reshape(batch, -1)[:, self.perm]
        out[:, self.verts] = np.add.reduceat(residues, self.starts, axis=1)
        return out


def _as_vector(G: UniformHypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (G.order,):
        raise ValueError(f"expected a vector of length {G.order}, got shape {x.shape}")
    if np.any(x < 0):
        raise ValueError("vector must be entrywise nonnegative")
    return x


def apply_adjacency(G: UniformHypergraph, x) -> np.ndarray:
    """Return ``A(G) x^{r-1}``."""
    x = _as_vector(G, x)
    return _Contraction(G.edge_array, G.order)(x[None, :])[0]


def rayleigh_value(G: UniformHypergraph, x) -> float:
    """``A(G) x^r = r * sum_e prod_{u in e} x_u`` for x on the unit r-power sphere."""
    x = _as_vector(G, x)
    norm = math.fsum(x ** G.rank)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"x must satisfy sum(x^r) = 1, got {norm!r}")
    if G.num_edges == 0:
        return 0.0
    return G.rank * math.fsum(np.prod(x[G.edge_array], axis=1))


def residual(G: UniformHypergraph, x, rho: float) -> float:
    x = _as_vector(G, x)
    return float(np.max(np.abs(apply_adjacency(G, x) - rho * x ** (G.rank - 1))))


def _iterate(
    op: _Contraction,
    weights: np.ndarray,
    r: int,
    tol: float,
    max_iter: int,
    sigma: float = SHIFT,
    trace: bool = False,
) -> list[SpectralResult]:
    """Shifted power iteration, run for a batch of weight vectors at once.

    Each row of ``weights`` is an independent problem on the same edge
    structure; rows leave the active set as soon as their bracket closes, so
    every result is the one a single-row run would produce.
    """
    batch, t = weights.shape
    x = np.repeat((1.0 / weights.sum(axis=1, keepdims=True)) ** (1.0 / r), t, axis=1)
    active = np.arange(batch)
    results: list[SpectralResult | None] = [None] * batch
    histories: list[list[tuple[float, float]]] = [[] for _ in range(batch)]
    lo = hi = np.zeros(batch)

    for it in range(1, max_iter + 1):
        w = weights[active]
        ax = op(w * x)
        xr1 = x ** (r - 1)
        ratio = ax / xr1
        lo = ratio.min(axis=1)
        hi = ratio.max(axis=1)
        if trace:
            for k, row in enumerate(active):
                histories[row].append((float(lo[k]), float(hi[k])))
        done = hi - lo <= tol * np.maximum(1.0, hi)
        for k in np.flatnonzero(done):
            row = active[k]
            rho = 0.5 * (lo[k] + hi[k])
            res = float(np.max(np.abs(ax[k] - rho * xr1[k])))
            results[row] = SpectralResult(
                float(rho), x[k].copy(), it, res, (float(lo[k]), float(hi[k])), True, tuple(histories[row])
            )
        keep = ~done
        if not keep.any():
            return results
        active, x, ax, xr1 = active[keep], x[keep], ax[keep], xr1[keep]
        lo, hi = lo[keep], hi[keep]
        w = weights[active]
        x = (ax + sigma * xr1) ** (1.0 / (r - 1))
        x /= ((w * x**r).sum(axis=1, keepdims=True)) ** (1.0 / r)

    # out of budget: report the bracket at the last evaluated vector
    w = weights[active]
    ax = op(w * x)
    xr1 = x ** (r - 1)
    ratio = ax / xr1
    lo, hi = ratio.min(axis=1), ratio.max(axis=1)
    for k, row in enumerate(active):
        rho = 0.5 * (lo[k] + hi[k])
        res = float(np.max(np.abs(ax[k] - rho * xr1[k])))
        results[row] = SpectralResult(
            float(rho), x[k].copy(), max_iter, res, (float(lo[k]), float(hi[k])), False, tuple(histories[row])
        )
    return results


def _connected_radius(G, tol, max_iter, trace) -> SpectralResult:
    op = _Contraction(G.edge_array, G.order)
    return _iterate(op, np.ones((1, G.order)), G.rank, tol, max_iter, trace=trace)[0]


def spectral_radius(
    G: UniformHypergraph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    trace: bool = False,
) -> SpectralResult:
    """Spectral radius and Perron vector of ``A(G)``.

    For a disconnected hypergraph the component with the largest radius wins;
    its Perron vector is embedded and every other entry is zero.
    Non-convergence is reported through ``converged=False``, never raised.
    """
    if G.num_edges == 0:
        raise ValueError("spectral radius needs at least one edge")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if is_connected(G):
        return _connected_radius(G, tol, max_iter, trace)

    best = None
    for comp in components(G):
        sub, back = induced_on(G, comp)
        if sub.num_edges == 0:
            continue
        res = _connected_radius(sub, tol, max_iter, trace)
        if best is None or res.rho > best[0].rho:
            best = (res, back)
    res, back = best
    x = np.zeros(G.order)
    x[np.array(back) - 1] = res.vector[: len(back)]
    return SpectralResult(
        res.rho, x, res.iterations, residual(G, x, res.rho), res.bracket, res.converged, res.history
    )


@dataclass(frozen=True)
class QuotientSystem:
    """Class-constant reduction of the blow-up ``base o weights``."""

    base: UniformHypergraph
    weights: tuple[int, ...]

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != self.base.order:
            raise ValueError(f"expected {self.base.order} weights, got {len(weights)}")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be positive integers")

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return apply_adjacency(self.base, np.asarray(self.weights) * x)

    def residual(self, x, rho: float) -> float:
        x = np.asarray(x, dtype=float)
        return float(np.max(np.abs(self.apply(x) - rho * x ** (self.base.rank - 1))))

    def expand(self, x) -> np.ndarray:
        """Class-constant blow-up vector, in the vertex order used by ``blow_up``."""
        return np.repeat(np.asarray(x, dtype=float), self.weights)


def quotient_spectral_radius(
    Q: QuotientSystem,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    trace: bool = False,
) -> SpectralResult:
    """Spectral radius of ``Q.base o Q.weights`` using t variables instead of n."""
    return quotient_spectral_radii(Q.base, [Q.weights], tol, max_iter, trace)[0]


def quotient_spectral_radii(
    base: UniformHypergraph,
    weight_rows: Sequence[Sequence[int]],
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    trace: bool = False,
) -> list[SpectralResult]:
    """Batched form of :func:`quotient_spectral_radius` over one base."""
    if base.num_edges == 0:
        raise ValueError("spectral radius needs at least one edge")
    if not is_connected(base):
        raise ValueError("quotient solve needs a connected base hypergraph")
    if tol <= 0:
        raise ValueError("tol must be positive")
    weights = np.array(weight_rows, dtype=float).reshape(-1, base.order)
    if weights.size and weights.min() < 1:
        raise ValueError("weights must be positive integers")
    if len(weights) == 0:
        return []
    op = _Contraction(base.edge_array, base.order)
    return _iterate(op, weights, base.rank, tol, max_iter, trace=trace)
