"""Multilinear edge polynomials over the probability simplex.

``evaluate`` and ``gradient`` treat the edge polynomial as a function on all
of R^m (finite-difference oracles need off-simplex points); the simplex
constraint is enforced where it belongs, at ``SimplexPoint`` construction and
inside ``maximize``.  Exact arithmetic is used automatically when the input
weights are Fractions or ints, which is how the blowup identity is checked
without tolerances.

The maximizer is honest about its limits: for at most ``support_limit``
vertices it enumerates supports and runs a projected-gradient ascent on each
(certificate gap 0 when every inner problem converged), beyond that it falls
back to seeded multistart ascent and reports the complete-graph value as the
remaining gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Callable, Optional, Sequence

import numpy as np

from .isomorphism import enumerate_rgraphs
from .morphism import FamilySpec, is_free
from .rgraph import RGraph

SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class SimplexPoint:
    """Nonnegative weights summing to 1 within 1e-12."""

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise ValueError("simplex weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > SIMPLEX_TOL:
            raise ValueError(f"weights sum to {sum(self.weights)!r}, not 1")

    @property
    def dimension(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class LagrangianResult:
    value: float
    maximizer: SimplexPoint
    method: str  # "support-enumeration" | "multistart-ascent"
    gap: float
    converged: bool


def _weights(x) -> Sequence:
    if isinstance(x, SimplexPoint):
        return x.weights
    return x


def _is_exact(seq) -> bool:
    return all(isinstance(w, (int, Fraction)) for w in seq)


@lru_cache(maxsize=4096)
def _edge_array(g: RGraph) -> np.ndarray:
    return np.array(g.edges, dtype=np.intp).reshape(len(g.edges), g.r)


def evaluate(g: RGraph, x) -> float | Fraction:
    """The edge polynomial: sum over edges of the product of vertex weights.

    Exact (Fraction) arithmetic when all weights are exact, floats otherwise.
    """
    w = _weights(x)
    if len(w) != g.n:
        raise ValueError(f"need {g.n} weights, got {len(w)}")
    if not g.edges:
        return Fraction(0) if _is_exact(w) else 0.0
    if _is_exact(w):
        return sum(prod(Fraction(w[v]) for v in e) for e in g.edges)
    arr = np.asarray(w, dtype=float)
    return float(np.prod(arr[_edge_array(g)], axis=1).sum())


def gradient(g: RGraph, x) -> np.ndarray | tuple:
    """Per-vertex partials; component i is the link polynomial of vertex i."""
    w = _weights(x)
    if len(w) != g.n:
        raise ValueError(f"need {g.n} weights, got {len(w)}")
    if _is_exact(w):
        out = [Fraction(0)] * g.n
        for e in g.edges:
            vals = [Fraction(w[v]) for v in e]
            for i, v in enumerate(e):
                out[v] += prod(vals[:i] + vals[i + 1 :])
        return tuple(out)
    arr = np.asarray(w, dtype=float)
    grad = np.zeros(g.n)
    if not g.edges:
        return grad
    E = _edge_array(g)
    P = arr[E]
    left = np.ones_like(P)
    left[:, 1:] = np.cumprod(P[:, :-1], axis=1)
    right = np.ones_like(P)
    right[:, :-1] = np.cumprod(P[:, :0:-1], axis=1)[:, ::-1]
    np.add.at(grad, E, left * right)
    return grad


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the standard simplex (sort-based)."""
    a = -np.sort(-v)
    cut = (np.cumsum(a) - 1.0) / np.arange(1, len(v) + 1)
    for k in range(len(v) - 1, -1, -1):
        if a[k] > cut[k]:
            return np.maximum(v - cut[k], 0.0)
    return np.full(len(v), 1.0 / len(v))


def lambda_complete(m: int, r: int) -> Fraction:
    """Exact simplex maximum of the complete r-graph polynomial: C(m,r)/m^r."""
    if m < r or r < 2:
        raise ValueError(f"need m >= r >= 2, got m={m}, r={r}")
    return Fraction(comb(m, r), m**r)


def _check_on_simplex(x: Sequence, tol: float = 1e-9) -> None:
    if any(w < -tol for w in x) or abs(sum(x) - 1.0) > tol:
        raise ValueError("point is not on the simplex")


def maclaurin_residual(m: int, r: int, x) -> float:
    """Slack of the complete-graph bound
    ``L + C(m,r)/(m^(r-1)(m-1)) * sum (x_i - 1/m)^2 <= C(m,r)/m^r``;
    nonnegative up to rounding, zero at the uniform point and at unit vectors.
    """
    if m < r or r < 2 or m < 2:
        raise ValueError(f"need m >= r >= 2, got m={m}, r={r}")
    w = _weights(x)
    if len(w) != m:
        raise ValueError(f"need {m} weights, got {len(w)}")
    _check_on_simplex(w)
    from .constructions import complete_rgraph

    val = evaluate(complete_rgraph(m, r), [float(t) for t in w])
    coef = comb(m, r) / (m ** (r - 1) * (m - 1))
    spread = sum((float(t) - 1.0 / m) ** 2 for t in w)
    return comb(m, r) / m**r - val - coef * spread


def semibipartite_residual(r: int, x: float) -> float:
    """Slack of the one-variable semibipartite density bound; nonnegative on
    [0, 1] with equality at x = 1/r and x = 1."""
    if r < 2:
        raise ValueError("need r >= 2")
    if not -1e-12 <= x <= 1 + 1e-12:
        raise ValueError("x must lie in [0, 1]")
    lhs = x * (1 - x) ** (r - 1) / factorial(r - 1)
    lhs += (1 - 1 / r) ** (r - 3) * (x - 1 / r) ** 2 / factorial(r)
    rhs = (1 - 1 / r) ** (r - 1) / factorial(r)
    return rhs - lhs


# ---------------------------------------------------------------------------
# maximization


def _connected_support(edge_masks: list[int], support: int) -> bool:
    verts = [v for v in range(support.bit_length()) if (support >> v) & 1]
    if not verts:
        return False
    seen = 1 << verts[0]
    frontier = True
    while frontier:
        frontier = False
        for m in edge_masks:
            if m & seen and m & ~seen:
                seen |= m
                frontier = True
    return seen & support == support


def _ascent(
    E: Optional[np.ndarray], k: int, x0: np.ndarray, tol: float, max_iter: int
) -> tuple[np.ndarray, float, bool]:
    def val(x: np.ndarray) -> float:
        if E is None:
            return 0.0
        return float(np.prod(x[E], axis=1).sum())

    def grd(x: np.ndarray) -> np.ndarray:
        g = np.zeros(k)
        if E is None:
            return g
        P = x[E]
        left = np.ones_like(P)
        left[:, 1:] = np.cumprod(P[:, :-1], axis=1)
        right = np.ones_like(P)
        right[:, :-1] = np.cumprod(P[:, :0:-1], axis=1)[:, ::-1]
        np.add.at(g, E, left * right)
        return g

    x = x0.copy()
    fx = val(x)
    converged = False
    for _ in range(max_iter):
        g = grd(x)
        free = x > 1e-14
        mu = g[free].mean() if free.any() else 0.0
        resid = np.where(free, g - mu, np.maximum(g - mu, 0.0))
        if float(np.linalg.norm(resid)) <= tol:
            converged = True
            break
        t = 1.0
        moved = False
        while t > 1e-16:
            xn = project_to_simplex(x + t * g)
            fn = val(xn)
            if fn > fx and fn >= fx + 1e-4 * float(g @ (xn - x)):
                x, fx = xn, fn
                moved = True
                break
            t *= 0.5
        if not moved:
            converged = True  # no ascent direction left at working precision
            break
    return x, fx, converged


def maximize(
    g: RGraph,
    *,
    restarts: int = 64,
    seed: int = 0,
    support_limit: int = 12,
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> LagrangianResult:
    """Best simplex value found for the edge polynomial of ``g``.

    The uniform point and all unit vectors are always evaluated, so the result
    dominates both.  Supports whose induced graph is edgeless, has an isolated
    vertex, or is disconnected are skipped during support enumeration: their
    optima are attained on smaller supports that are enumerated anyway.
    """
    m = g.n
    if m < 1:
        raise ValueError("maximize needs at least one vertex")
    masks = list(g.edge_masks)

    best_x = np.full(m, 1.0 / m)
    best_val = float(evaluate(g, best_x))
    all_converged = True
    for v in range(m):
        unit = np.zeros(m)
        unit[v] = 1.0
        uv = float(evaluate(g, unit))
        if uv > best_val:
            best_val, best_x = uv, unit

    if m <= support_limit:
        method = "support-enumeration"
        for support in range(1, 1 << m):
            sub_masks = [mk for mk in masks if mk & ~support == 0]
            if not sub_masks:
                continue
            covered = 0
            for mk in sub_masks:
                covered |= mk
            if covered != support or not _connected_support(sub_masks, support):
                continue
            verts = [v for v in range(m) if (support >> v) & 1]
            pos = {v: i for i, v in enumerate(verts)}
            k = len(verts)
            E = np.array(
                [[pos[v] for v in range(m) if (mk >> v) & 1] for mk in sub_masks],
                dtype=np.intp,
            )
            x0 = np.full(k, 1.0 / k)
            x, fx, conv = _ascent(E, k, x0, tol, max_iter)
            all_converged = all_converged and conv
            if fx > best_val:
                full = np.zeros(m)
                full[verts] = x
                best_val, best_x = fx, full
        gap = 0.0 if all_converged else max(0.0, comb(m, g.r) / m**g.r - best_val)
    else:
        method = "multistart-ascent"
        rng = np.random.default_rng(seed)
        E = _edge_array(g) if g.edges else None
        for _ in range(restarts):
            x0 = rng.dirichlet(np.ones(m))
            x, fx, conv = _ascent(E, m, x0, tol, max_iter)
            all_converged = all_converged and conv
            if fx > best_val:
                best_val, best_x = fx, x
        gap = max(0.0, comb(m, g.r) / m**g.r - best_val)

    best_x = project_to_simplex(best_x)
    point = SimplexPoint(tuple(float(t) for t in best_x))
    return LagrangianResult(float(evaluate(g, point)), point, method, gap, all_converged)


# ---------------------------------------------------------------------------
# supremum estimation over a free class


@dataclass(frozen=True)
class FreeLagrangianBound:
    """A certified *lower* bound for the supremum of the Lagrangian over the
    family-free graphs: the maximum over all enumerated patterns."""

    value: float
    witness: RGraph
    scanned: int
    p_max: int


def max_lagrangian_over_free(
    fam: FamilySpec,
    p_max: int,
    extra_filter: Optional[Callable[[RGraph], bool]] = None,
    *,
    seed: int = 0,
) -> FreeLagrangianBound:
    """Maximize the Lagrangian over family-free patterns on ``p_max`` labeled
    vertices (smaller patterns appear padded with isolated vertices, which do
    not change the value), optionally restricted by ``extra_filter``."""
    patterns = enumerate_rgraphs(p_max, fam.r, lambda h: is_free(h, fam), monotone=True)
    best: Optional[tuple[float, RGraph]] = None
    scanned = 0
    for p in patterns:
        if extra_filter is not None and not extra_filter(p):
            continue
        scanned += 1
        res = maximize(p, seed=seed)
        if best is None or res.value > best[0]:
            best = (res.value, p)
    if best is None:
        raise ValueError("no pattern passed the filters")
    return FreeLagrangianBound(best[0], best[1], scanned, p_max)
