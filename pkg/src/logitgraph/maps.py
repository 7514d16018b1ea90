"""Softmax displacement maps, their Jacobians, and the water-filling limit.

The central object is the map ``g_map(n, v) = v + softmax(n*v)``, which is
invertible for every ``n > 0``. Its inverse is computed numerically by
``h_numeric``; as ``n`` grows the inverse approaches the exact water-filling
map ``h_exact``, with a uniform error controlled by ``epsilon_bound``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidInputError


def _as_vector(v, name="v"):
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError(f"{name} must be a nonempty 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} must be finite")
    return arr


def softmax(v):
    """Overflow-safe softmax: subtracts the max coordinate before exponentiating."""
    v = np.asarray(v, dtype=float)
    e = np.exp(v - v.max())
    return e / e.sum()


def g_map(n, v):
    """Displace ``v`` by the softmax of ``n*v``: returns ``v + softmax(n*v)``.

    The coordinate sum grows by exactly 1 and the displacement has Euclidean
    norm at most 1 (it is a probability vector).
    """
    v = _as_vector(v)
    if not (n > 0 and math.isfinite(n)):
        raise InvalidInputError(f"n must be positive and finite, got {n}")
    return v + softmax(n * v)


def g_jacobian(n, v):
    """Jacobian of ``g_map`` at ``v``: ``I + n*(diag(s) - s s^T)`` with ``s = softmax(n*v)``.

    Symmetric positive definite; every column sums to 1.
    """
    v = _as_vector(v)
    if not (n > 0 and math.isfinite(n)):
        raise InvalidInputError(f"n must be positive and finite, got {n}")
    s = softmax(n * v)
    return np.eye(v.size) + n * (np.diag(s) - np.outer(s, s))


def is_cl_matrix(m):
    """True iff ``m`` has positive diagonal, negative off-diagonal, positive column sums.

    Matrices of this form are strictly column diagonally dominant, hence
    invertible. Raises on non-square input.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {m.shape}")
    d = m.shape[0]
    diag = np.diagonal(m)
    if not np.all(diag > 0):
        return False
    off = m[~np.eye(d, dtype=bool)]
    if off.size and not np.all(off < 0):
        return False
    return bool(np.all(m.sum(axis=0) > 0))


def alpha_star(y):
    """Water level: the unique ``a`` with ``sum(max(y_i - a, 0)) = 1``.

    Computed by the sort rule: sort descending, take the largest ``k`` with
    ``y_(k) > (sum of top k - 1)/k``, return that threshold. ``y - min(y, a)``
    is then the Euclidean projection of ``y`` onto the probability simplex.
    """
    y = _as_vector(y, "y")
    u = np.sort(y)[::-1]
    css = np.cumsum(u)
    ks = np.arange(1, y.size + 1)
    thresholds = (css - 1.0) / ks
    k = int(np.nonzero(u > thresholds)[0].max()) + 1
    return float(thresholds[k - 1])


@dataclass(frozen=True, eq=False)
class SimplexProjection:
    """Water-filling split of a vector ``y``.

    ``h_value = min(y, alpha_star)`` coordinatewise; ``residual = y - h_value``
    is a probability vector (the simplex projection of ``y``).
    """

    alpha_star: float
    h_value: np.ndarray
    residual: np.ndarray


def h_exact(y):
    """Clip ``y`` at its water level and return the split as a SimplexProjection."""
    y = _as_vector(y, "y")
    a = alpha_star(y)
    h = np.minimum(y, a)
    return SimplexProjection(alpha_star=a, h_value=h, residual=y - h)


def h_numeric(n, y, tol=1e-10, max_iter=200):
    """Invert ``g_map``: find ``x`` with ``max|g_map(n, x) - y| <= tol``.

    Damped Newton iteration with backtracking on the residual norm. The
    Jacobian is symmetric positive definite, so the Newton direction is always
    a descent direction for the residual and the iteration converges from any
    start; the water-filling value warm-starts it for ``n >= 1``.

    Raises ConvergenceError (carrying the best iterate and its residual) if the
    tolerance is not reached within ``max_iter`` iterations.
    """
    y = _as_vector(y, "y")
    if not (n > 0 and math.isfinite(n)):
        raise InvalidInputError(f"n must be positive and finite, got {n}")
    if not tol > 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")

    d = y.size
    x = h_exact(y).h_value.copy() if n >= 1.0 else y - 1.0 / d
    r = y - g_map(n, x)
    best_x, best_res = x, float(np.abs(r).max())

    for iteration in range(max_iter):
        res_inf = float(np.abs(r).max())
        if res_inf < best_res:
            best_x, best_res = x, res_inf
        if res_inf <= tol:
            return x
        jac = g_jacobian(n, x)
        try:
            step = np.linalg.solve(jac, r)
        except np.linalg.LinAlgError:
            step = r
        r_norm = float(np.linalg.norm(r))
        t = 1.0
        while True:
            x_new = x + t * step
            r_new = y - g_map(n, x_new)
            if float(np.linalg.norm(r_new)) <= (1.0 - 1e-4 * t) * r_norm or t < 1e-12:
                break
            t *= 0.5
        if t < 1e-12 and float(np.linalg.norm(r_new)) >= r_norm:
            break  # at the floating-point floor for this y
        x, r = x_new, r_new

    res_inf = float(np.abs(r).max())
    if res_inf <= tol:
        return x
    if res_inf < best_res:
        best_x, best_res = x, res_inf
    raise ConvergenceError(
        f"softmax-displacement inversion stalled at residual {best_res:.3e} (tol {tol:.3e})",
        best=best_x,
        residual=best_res,
        iterations=max_iter,
    )


@dataclass(frozen=True)
class ConvergenceBound:
    """Uniform error level for the numeric inverse at parameter ``n``.

    ``epsilon_star`` solves ``eps * (1 + exp(eps*n)) = 1``; the inverse of
    ``g_map`` differs from the water-filling map by at most ``d * epsilon_star``
    in sup norm on vectors of length ``d``.
    """

    n: float
    epsilon_star: float

    def uniform_bound(self, d):
        return d * self.epsilon_star


def _eps_equation_log(eps, n):
    # log of eps*(1+exp(eps*n)); stable for large eps*n
    t = eps * n
    softplus = t + math.log1p(math.exp(-t)) if t > 0 else math.log1p(math.exp(t))
    return math.log(eps) + softplus


def epsilon_bound(n):
    """Solve ``eps*(1+exp(eps*n)) = 1`` for the unique root in (0, 0.5].

    The left side is strictly increasing in ``eps``, so bisection converges;
    the bracket is refined to full double precision. ``n = 0`` gives exactly 0.5.
    """
    if n < 0 or not math.isfinite(n):
        raise InvalidInputError(f"n must be nonnegative and finite, got {n}")
    if n == 0:
        return ConvergenceBound(n=0.0, epsilon_star=0.5)
    lo, hi = 1e-300, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _eps_equation_log(mid, n) > 0.0:
            hi = mid
        else:
            lo = mid
    # pick the endpoint with the smaller defining-equation residual
    root = min((lo, hi), key=lambda e: abs(math.expm1(_eps_equation_log(e, n))))
    return ConvergenceBound(n=float(n), epsilon_star=root)
