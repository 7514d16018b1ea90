"""Reproducible numerical certificates: uniform approximation and rank checks.

``convergence_study`` measures how far the Nash reconstruction sits from the
logit reconstruction of the same targets as the precision grows, and checks
the measured profile gaps against the proven per-player bound.
``immersion_rank_check`` certifies that the logit reconstruction, read as a
parametrization of the logit graph by payoff space, has full-rank derivative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidInputError
from .games import StrategicGameForm, TargetPoint, _lift_bar, _split_payoff
from .graph_maps import graph_point_gap, phi_inv, phi_n_inv
from .maps import epsilon_bound

RANK_SAMPLE_BOX = 2.0  # coordinate box for rank-check sampling
RANK_SOLVE_TOL = 1e-13  # inner inversion tolerance, kept far below fd_step


def sample_target_points(form, samples, seed, bound_box):
    """Draw targets with entries uniform in [-bound_box, bound_box].

    The zero-mean components are projected exactly after sampling, so every
    draw is a valid TargetPoint. Deterministic in ``seed``.
    """
    if samples < 1:
        raise InvalidInputError(f"samples must be >= 1, got {samples}")
    if not bound_box > 0:
        raise InvalidInputError(f"bound_box must be positive, got {bound_box}")
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(samples):
        tilde = []
        for i in range(form.num_players):
            raw = rng.uniform(-bound_box, bound_box, size=form.profile_count)
            zero_mean, _ = _split_payoff(form, raw, i)
            tilde.append(zero_mean)
        y_bar = tuple(rng.uniform(-bound_box, bound_box, size=m) for m in form.action_counts)
        points.append(TargetPoint(form=form, tilde_u=tuple(tilde), y_bar=y_bar))
    return points


@dataclass(frozen=True)
class ReportRow:
    """Per-precision suprema over the sampled targets."""

    n: float
    sup_gap_x: float
    sup_gap_full: float
    lemma_bound: float


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
    """Gap suprema per precision; the profile-gap bound is enforced on emit."""

    form: StrategicGameForm
    seed: int
    samples: int
    rows: tuple[ReportRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        ns = [r.n for r in self.rows]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise InvalidInputError("report rows must be sorted by strictly increasing n")
        for r in self.rows:
            if r.sup_gap_x < 0 or r.sup_gap_full < 0:
                raise InvalidInputError("gaps must be nonnegative")
            if r.sup_gap_x > r.lemma_bound * (1.0 + 1e-6):
                raise InvalidInputError(
                    f"profile gap {r.sup_gap_x:.6e} exceeds bound {r.lemma_bound:.6e} at n={r.n}"
                )


def convergence_study(form, n_list, samples, seed, bound_box=10.0):
    """Supremum reconstruction gaps over sampled targets, per precision.

    For each target the Nash point is reconstructed once; the logit point is
    reconstructed at every ``n`` in ``n_list`` (ascending). ``sup_gap_x`` is
    the largest sup-norm profile difference, ``sup_gap_full`` the largest
    Euclidean gap over all payoff and probability coordinates, and
    ``lemma_bound`` the proven ceiling ``max_i |A_i| * epsilon_star(n)`` for
    the profile part. Deterministic in ``seed``.
    """
    n_list = [float(n) for n in n_list]
    if not n_list:
        raise InvalidInputError("n_list must be nonempty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])) or n_list[0] <= 0:
        raise InvalidInputError("n_list must be positive and strictly ascending")
    points = sample_target_points(form, samples, seed, bound_box)
    nash_points = [phi_inv(t) for t in points]
    rows = []
    for n in n_list:
        bound = max(form.action_counts) * epsilon_bound(n).epsilon_star
        sup_x, sup_full = 0.0, 0.0
        for index, (t, p_nash) in enumerate(zip(points, nash_points)):
            try:
                p_logit = phi_n_inv(n, t, tol=1e-12)
            except ConvergenceError as exc:
                raise ConvergenceError(
                    f"logit reconstruction failed (seed={seed}, sample={index}, n={n})",
                    best=exc.best,
                    residual=exc.residual,
                    iterations=exc.iterations,
                ) from exc
            gap_x = max(
                float(np.abs(a - b).max())
                for a, b in zip(p_nash.profile.vectors, p_logit.profile.vectors)
            )
            sup_x = max(sup_x, gap_x)
            sup_full = max(sup_full, graph_point_gap(p_nash, p_logit))
        rows.append(ReportRow(n=n, sup_gap_x=sup_x, sup_gap_full=sup_full, lemma_bound=bound))
    return ConvergenceReport(form=form, seed=int(seed), samples=int(samples), rows=tuple(rows))


@dataclass(frozen=True, eq=False)
class RankReport:
    """Smallest singular value of the reconstruction derivative over samples."""

    n: float
    form: StrategicGameForm
    sample_points: int
    expected_rank: int
    min_singular_value: float
    fd_step: float
    threshold: float = 1e-6

    def __post_init__(self):
        if self.expected_rank != self.form.payoff_coordinate_count:
            raise InvalidInputError(
                "expected_rank must equal the form's payoff coordinate count"
            )

    @property
    def passed(self):
        return self.min_singular_value > self.threshold


def _logit_parametrization(n, form, stacked_payoffs, tol):
    """Map payoff coordinates through the logit reconstruction.

    The input vector is read as one flat payoff tensor per player; its split
    coordinates form the target, whose logit reconstruction is returned as
    (all payoff entries, then all probability entries).
    """
    size = form.profile_count
    tilde, bars = [], []
    for i in range(form.num_players):
        t, b = _split_payoff(form, stacked_payoffs[i * size : (i + 1) * size], i)
        tilde.append(t)
        bars.append(b)
    target = TargetPoint(form=form, tilde_u=tuple(tilde), y_bar=tuple(bars))
    point = phi_n_inv(n, target, tol=tol)
    return np.concatenate(list(point.game.payoffs) + list(point.profile.vectors))


def target_to_payoff_coordinates(t):
    """Inverse of the split chart: lift each ``y_bar`` and add the zero-mean part."""
    return np.concatenate(
        [
            np.asarray(t.tilde_u[i], dtype=float) + _lift_bar(t.form, t.y_bar[i], i)
            for i in range(t.form.num_players)
        ]
    )


def immersion_rank_check(n, form, sample_points, seed, fd_step=1e-6):
    """Certify full column rank of the logit-reconstruction derivative.

    At each sampled target, builds the central finite-difference Jacobian of
    the payoff-coordinates-to-(payoffs, probabilities) reconstruction and
    records the smallest singular value seen. Full column rank at every sample
    certifies the reconstruction is an immersion there, hence that the logit
    graph has the dimension of payoff space. Deterministic in ``seed``.
    """
    if not n > 0:
        raise InvalidInputError(f"n must be positive, got {n}")
    if sample_points < 1:
        raise InvalidInputError(f"sample_points must be >= 1, got {sample_points}")
    if not 1e-9 <= fd_step <= 1e-3:
        raise InvalidInputError(f"fd_step must lie in [1e-9, 1e-3], got {fd_step}")
    points = sample_target_points(form, sample_points, seed, RANK_SAMPLE_BOX)
    in_dim = form.payoff_coordinate_count
    out_dim = in_dim + sum(form.action_counts)
    min_sv = np.inf
    for t in points:
        base = target_to_payoff_coordinates(t)
        jac = np.empty((out_dim, in_dim))
        for k in range(in_dim):
            bump = np.zeros(in_dim)
            bump[k] = fd_step
            plus = _logit_parametrization(n, form, base + bump, RANK_SOLVE_TOL)
            minus = _logit_parametrization(n, form, base - bump, RANK_SOLVE_TOL)
            jac[:, k] = (plus - minus) / (2.0 * fd_step)
        singular_values = np.linalg.svd(jac, compute_uv=False)
        min_sv = min(min_sv, float(singular_values.min()))
    return RankReport(
        n=float(n),
        form=form,
        sample_points=int(sample_points),
        expected_rank=in_dim,
        min_singular_value=min_sv,
        fd_step=float(fd_step),
    )
