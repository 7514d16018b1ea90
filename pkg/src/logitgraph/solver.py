"""Logit equilibrium solvers: damped iteration, Newton, and continuation in ``n``.

All solvers measure convergence with the same sup-norm fixed-point gap that
``logit_residual`` reports, so any returned solution can be re-verified
independently. The tracer follows the branch that starts at the uniform
profile (the limit of the response map as ``n`` goes to 0) and raises the
precision multiplicatively with an adaptive step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidInputError, PathFailureError
from .games import (
    Game,
    MixedProfile,
    _logit_gap,
    _profile_vectors,
    deviation_payoffs,
    nash_residual,
)
from .maps import softmax


def _response(n, game, vectors):
    """Softmax response of every player to the others' mixtures; uniform at n = 0."""
    return [softmax(n * deviation_payoffs(game, i, vectors)) for i in range(game.form.num_players)]


def logit_response(n, game, x):
    """Best-response smoothing: per player, softmax of ``n`` times the deviation payoffs.

    ``n = 0`` returns the uniform profile for any game. The output is strictly
    positive and on the simplex.
    """
    if n < 0:
        raise InvalidInputError(f"n must be nonnegative, got {n}")
    vectors = _profile_vectors(game.form, x)
    return MixedProfile(tuple(_response(n, game, vectors)))


def _stack(vectors):
    return np.concatenate(vectors)


def _unstack(form, flat):
    out, pos = [], 0
    for m in form.action_counts:
        out.append(flat[pos : pos + m])
        pos += m
    return out


def _response_jacobian_fd(n, game, vectors, fd_step):
    """Central-difference Jacobian of the stacked response map."""
    base = _stack(vectors)
    size = base.size
    jac = np.empty((size, size))
    for k in range(size):
        bump = np.zeros(size)
        bump[k] = fd_step
        plus = _stack(_response(n, game, _unstack(game.form, base + bump)))
        minus = _stack(_response(n, game, _unstack(game.form, base - bump)))
        jac[:, k] = (plus - minus) / (2.0 * fd_step)
    return jac


def solve_fixed_point(n, game, x0, damping=0.5, tol=1e-10, max_iter=5000):
    """Damped iteration ``x <- (1-damping)*x + damping*response(x)`` until the gap <= tol.

    Raises ConvergenceError carrying the best iterate if the budget runs out;
    callers typically fall back to ``trace_logit_path``.
    """
    if not (0.0 < damping <= 1.0):
        raise InvalidInputError(f"damping must be in (0, 1], got {damping}")
    if not (n > 0 and tol > 0 and max_iter > 0):
        raise InvalidInputError("n, tol, and max_iter must be positive")
    vectors = [np.array(v, dtype=float) for v in _profile_vectors(game.form, x0)]
    best_vecs, best_gap = vectors, np.inf
    for iteration in range(max_iter + 1):
        resp = _response(n, game, vectors)
        gap = max(float(np.abs(v - r).max()) for v, r in zip(vectors, resp))
        if gap < best_gap:
            best_vecs, best_gap = vectors, gap
        if gap <= tol:
            return MixedProfile(tuple(vectors))
        if iteration == max_iter:
            break
        vectors = [(1.0 - damping) * v + damping * r for v, r in zip(vectors, resp)]
    raise ConvergenceError(
        f"fixed-point iteration stalled at gap {best_gap:.3e} (tol {tol:.3e})",
        best=best_vecs,
        residual=best_gap,
        iterations=max_iter,
    )


def _newton_solve(n, game, vectors, tol, max_iter, fd_step, damping):
    """Newton on the fixed-point gap with damped-response fallback steps.

    Returns (vectors, iterations used). Raises ConvergenceError on budget
    exhaustion.
    """
    vectors = [np.array(v, dtype=float) for v in vectors]
    best_vecs, best_gap = vectors, np.inf
    for iteration in range(max_iter + 1):
        resp = _response(n, game, vectors)
        gap = max(float(np.abs(v - r).max()) for v, r in zip(vectors, resp))
        if gap < best_gap:
            best_vecs, best_gap = vectors, gap
        if gap <= tol:
            return vectors, iteration
        if iteration == max_iter:
            break
        moved = False
        residual_vec = _stack(vectors) - _stack(resp)
        try:
            jac = np.eye(residual_vec.size) - _response_jacobian_fd(n, game, vectors, fd_step)
            step = np.linalg.solve(jac, -residual_vec)
        except np.linalg.LinAlgError:
            step = None
        if step is not None and np.all(np.isfinite(step)):
            base = _stack(vectors)
            t = 1.0
            for _ in range(25):
                cand = _unstack(game.form, base + t * step)
                cand_gap = _logit_gap(game, cand, n)
                if cand_gap <= (1.0 - 1e-4 * t) * gap:
                    vectors = [np.array(v) for v in cand]
                    moved = True
                    break
                t *= 0.5
        if not moved:
            # Newton rejected: take a damped response step instead
            vectors = [(1.0 - damping) * v + damping * r for v, r in zip(vectors, resp)]
    raise ConvergenceError(
        f"newton solve stalled at gap {best_gap:.3e} (tol {tol:.3e}) for n={n}",
        best=best_vecs,
        residual=best_gap,
        iterations=max_iter,
    )


def solve_newton(n, game, x0, tol=1e-10, max_iter=100, fd_step=1e-7, damping=0.5):
    """Newton refinement of a logit equilibrium from an interior start ``x0``.

    The residual map is the fixed-point gap; its Jacobian is built by central
    finite differences (step ``fd_step``). Steps that fail to reduce the gap
    are replaced by damped response steps.
    """
    if not (n > 0 and tol > 0):
        raise InvalidInputError("n and tol must be positive")
    vectors = _profile_vectors(game.form, x0)
    solution, _ = _newton_solve(n, game, vectors, tol, max_iter, fd_step, damping)
    return MixedProfile(tuple(solution))


@dataclass(frozen=True, eq=False)
class PathEntry:
    """One solved point along a continuation path."""

    n: float
    profile: MixedProfile
    residual: float


@dataclass(frozen=True, eq=False)
class PathTrace:
    """Solutions at strictly increasing precisions, plus the terminal Nash gap."""

    entries: tuple[PathEntry, ...]
    game: Game
    terminal_nash_residual: float

    def __post_init__(self):
        ns = [e.n for e in self.entries]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise InvalidInputError("path entries must have strictly increasing n")
        for e in self.entries:
            recomputed = _logit_gap(self.game, e.profile.vectors, e.n)
            if abs(recomputed - e.residual) > 1e-12:
                raise InvalidInputError(
                    f"entry at n={e.n}: stored residual {e.residual:.3e} "
                    f"!= recomputed {recomputed:.3e}"
                )


MAX_PROFILE_STEP = 0.5  # declared sup-norm limit on accepted per-step movement


def trace_logit_path(game, n_final, n_start=1e-3, tol=1e-10, max_corrector_iter=200):
    """Follow logit equilibria from near-zero precision up to ``n_final``.

    Starts at the uniform profile, advances ``n`` by an adaptive multiplicative
    factor (initially 1.5, shrunk by half on corrector failure or when the
    solution moves more than ``MAX_PROFILE_STEP`` in sup norm, grown by 1.2 on
    fast success), and corrects each predictor with the Newton solver. The
    returned trace ends exactly at ``n_final``.

    If the corrector still converges far from the predictor at the minimal
    step, the branch through the previous point ends there and the move is
    accepted as a branch jump; every recorded point is a genuine solution at
    its ``n`` either way. Raises PathFailureError (carrying the partial trace)
    if the corrector keeps failing as the step factor underflows below 1e-12
    relative.
    """
    if not (0 < n_start < n_final):
        raise InvalidInputError(f"need 0 < n_start < n_final, got {n_start}, {n_final}")
    if not tol > 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")

    entries = []

    def partial():
        if entries:
            terminal = nash_residual(game, entries[-1].profile)
        else:
            terminal = nash_residual(game, MixedProfile.uniform(game.form))
        return PathTrace(entries=tuple(entries), game=game, terminal_nash_residual=terminal)

    def record(n_value, vectors):
        profile = MixedProfile(tuple(vectors))
        entries.append(
            PathEntry(n=n_value, profile=profile, residual=_logit_gap(game, vectors, n_value))
        )
        return profile

    vectors = list(MixedProfile.uniform(game.form).vectors)
    try:
        vectors, _ = _newton_solve(n_start, game, vectors, tol, max_corrector_iter, 1e-7, 0.5)
    except ConvergenceError as exc:
        raise PathFailureError(
            f"correction failed at starting precision n={n_start}",
            partial_trace=partial(),
            best=exc.best,
            residual=exc.residual,
        ) from exc
    record(n_start, vectors)

    n = n_start
    factor = 1.5
    while n < n_final:
        target = min(n * factor, n_final)
        try:
            new_vectors, iters = _newton_solve(
                target, game, vectors, tol, max_corrector_iter, 1e-7, 0.5
            )
        except ConvergenceError as exc:
            factor = 1.0 + 0.5 * (factor - 1.0)
            if factor - 1.0 < 1e-12:
                raise PathFailureError(
                    f"step size underflow near n={n}",
                    partial_trace=partial(),
                    best=exc.best,
                    residual=exc.residual,
                ) from exc
            continue
        moved = max(
            float(np.abs(a - b).max()) for a, b in zip(new_vectors, vectors)
        )
        jumped = moved > MAX_PROFILE_STEP
        if jumped:
            factor = 1.0 + 0.5 * (factor - 1.0)
            if factor - 1.0 >= 1e-12:
                continue  # smaller precision step keeps a continuous branch inside the limit
            # converged far from the predictor even at the minimal step: the
            # branch ends here, accept the jump and restart the step size
        vectors = new_vectors
        n = target
        record(n, vectors)
        if jumped:
            factor = 1.5
        elif iters <= 5:
            factor = min(1.0 + 1.2 * (factor - 1.0), 8.0)
    return partial()


def approximate_nash(game, n_final, tol=1e-10):
    """Terminal profile of the continuation path and its Nash residual.

    The profile solves the softmax fixed point at ``n_final``, so every action
    carries positive probability (entries can still round to zero in floating
    point once ``n_final`` times the payoff gap passes the exp underflow
    threshold). Path failures propagate.
    """
    trace = trace_logit_path(game, n_final, tol=tol)
    terminal = trace.entries[-1]
    return terminal.profile, trace.terminal_nash_residual
