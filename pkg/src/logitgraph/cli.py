"""Command-line front end for batch use of the library.

Subcommands: ``decompose``, ``solve``, ``trace``, ``invert-nash``,
``invert-logit``, ``verify``, ``study``. Exit codes: 0 success, 1 validation
or usage error, 2 convergence failure.
"""

from __future__ import annotations

import argparse
import sys

from . import io as formats
from .errors import ConvergenceError, InvalidInputError, ParseError
from .games import MixedProfile, StrategicGameForm, _logit_gap, km_decompose
from .graph_maps import phi_inv, phi_n_inv
from .solver import PathEntry, solve_newton, trace_logit_path
from .studies import convergence_study
from .verification import run_property_suite


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_global_options(parser, suppress):
    # the same flags live on the main parser (with real defaults) and on every
    # subparser (suppressed defaults), so they work before or after the command
    tol_default = argparse.SUPPRESS if suppress else 1e-10
    text_default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--tol", type=float, default=tol_default, help="solver tolerance")
    parser.add_argument(
        "--out", default=text_default, help="write output to this path instead of stdout"
    )
    parser.add_argument(
        "--format", choices=("json", "csv"), default=text_default, help="output format"
    )


def _build_parser():
    parser = _Parser(prog="logitgraph", description=__doc__)
    _add_global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _add_global_options(p, suppress=True)
        return p

    p = command("decompose", "split a game into mean and zero-mean payoff parts")
    p.add_argument("game", help="path to a game JSON file")

    p = command("solve", "logit equilibrium at a fixed precision, via the tracer")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("game")

    p = command("trace", "follow logit equilibria up to a final precision")
    p.add_argument("--n-final", type=float, required=True)
    p.add_argument("game")

    p = command("invert-nash", "reconstruct the Nash graph point of a target")
    p.add_argument("--project-tilde", action="store_true")
    p.add_argument("target", help="path to a target JSON file")

    p = command("invert-logit", "reconstruct the logit graph point of a target")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--project-tilde", action="store_true")
    p.add_argument("target")

    p = command("verify", "run the desk-scale property suite")
    p.add_argument("game", help="path to a game JSON file, or 'none'")

    p = command("study", "uniform-approximation study over sampled targets")
    p.add_argument("--form", required=True, help="players:actions, e.g. 2:2,2")
    p.add_argument("--n-list", required=True, help="comma-separated ascending precisions")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bound-box", type=float, default=10.0)

    return parser


def _read(path):
    try:
        with open(path, "rb") as handle:
            return handle.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from exc


def _parse_form(text):
    head, _, tail = text.partition(":")
    try:
        players = int(head)
        counts = tuple(int(part) for part in tail.split(","))
    except ValueError as exc:
        raise InvalidInputError(f"--form: expected players:m1,m2,...  got {text!r}") from exc
    return StrategicGameForm(players, counts)


def _parse_n_list(text):
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise InvalidInputError(f"--n-list: expected comma-separated numbers, got {text!r}") from exc


def _solve_at(game, n, tol):
    """Terminal point of the trace at n; direct solve when n is below the trace start."""
    if n > 1e-3:
        trace = trace_logit_path(game, n_final=n, tol=tol)
        return trace.entries[-1]
    profile = solve_newton(n, game, MixedProfile.uniform(game.form), tol=tol)
    return PathEntry(n=n, profile=profile, residual=_logit_gap(game, profile.vectors, n))


def _dispatch(args):
    fmt = args.format
    if args.command == "decompose":
        rep = km_decompose(formats.parse_game(_read(args.game)))
        if fmt == "csv":
            return formats.km_representation_to_csv(rep), 0
        return formats.km_representation_to_json(rep) + "\n", 0

    if args.command == "solve":
        if not args.n > 0:
            raise InvalidInputError(f"--n must be positive, got {args.n}")
        game = formats.parse_game(_read(args.game))
        entry = _solve_at(game, args.n, args.tol)
        if fmt == "csv":
            return formats.solution_to_csv(entry.n, entry.profile, entry.residual), 0
        return formats.solution_to_json(entry.n, entry.profile, entry.residual) + "\n", 0

    if args.command == "trace":
        game = formats.parse_game(_read(args.game))
        trace = trace_logit_path(game, n_final=args.n_final, tol=args.tol)
        if fmt == "json":
            return formats.trace_to_json(trace) + "\n", 0
        return formats.trace_to_csv(trace), 0

    if args.command == "invert-nash":
        target = formats.parse_target_point(_read(args.target), project_tilde=args.project_tilde)
        point = phi_inv(target)
        if fmt == "csv":
            return formats.graph_point_to_csv(point), 0
        return formats.graph_point_to_json(point) + "\n", 0

    if args.command == "invert-logit":
        if not args.n > 0:
            raise InvalidInputError(f"--n must be positive, got {args.n}")
        target = formats.parse_target_point(_read(args.target), project_tilde=args.project_tilde)
        point = phi_n_inv(args.n, target, tol=args.tol)
        if fmt == "csv":
            return formats.graph_point_to_csv(point), 0
        return formats.graph_point_to_json(point) + "\n", 0

    if args.command == "verify":
        game = None if args.game == "none" else formats.parse_game(_read(args.game))
        results = run_property_suite(game)
        lines = [
            f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results
        ]
        code = 0 if all(r.passed for r in results) else 1
        return "\n".join(lines) + "\n", code

    if args.command == "study":
        form = _parse_form(args.form)
        report = convergence_study(
            form, _parse_n_list(args.n_list), args.samples, args.seed, args.bound_box
        )
        if fmt == "csv":
            return formats.convergence_report_to_csv(report), 0
        return formats.convergence_report_to_json(report) + "\n", 0

    raise InvalidInputError(f"unknown command {args.command!r}")


def run_cli(argv, stdout=None, stderr=None):
    """Run one invocation; returns the exit code without calling sys.exit."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(parser.format_usage())
        stderr.write(f"error: {exc}\n")
        return 1
    try:
        text, code = _dispatch(args)
    except (ParseError, InvalidInputError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except ConvergenceError as exc:
        stderr.write(f"convergence failure: {exc}\n")
        return 2
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            stderr.write(f"error: cannot write {args.out}: {exc.strerror}\n")
            return 1
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
