"""Command-line surface: simulate chains, emit trade-off curve data,
certify observed tuples, and run the oracle verification suite.

Exit codes: 0 success, 2 configuration or domain errors, 3 inconsistent
observations, 4 oracle verification failure.  The default RNG seed can be
overridden with the SEQBELL_SEED environment variable; an explicit --seed
wins over both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

from . import oracle
from .bell import bell_functional, run_sequence
from .certify import (
    CertificationResult,
    certify_chsh_pair,
    certify_elegant_pair,
    certify_elegant_triple,
)
from .closedform import (
    CHSH_OPT,
    ELEGANT_OPT,
    chsh_tradeoff,
    elegant_tradeoff2,
    elegant_value,
)
from .errors import InconsistencyError, SeqbellError
from .models import chsh_optimal_model, elegant_optimal_model

_SEED_ENV = "SEQBELL_SEED"
_PRECISION = 9


def _default_seed() -> int:
    return int(os.environ.get(_SEED_ENV, oracle.DEFAULT_SEED))


@dataclass
class RunConfig:
    """Parsed invocation; exactly one subcommand per run."""

    subcommand: str
    functional: Optional[str] = None
    lambdas: List[float] = field(default_factory=list)
    observed: List[float] = field(default_factory=list)
    grid: int = 101
    dim: int = 2
    seed: int = oracle.DEFAULT_SEED
    observers: int = 2
    restarts: int = oracle.DEFAULT_RESTARTS
    out: Optional[str] = None
    fmt: str = "csv"


def _fmt(x: float) -> str:
    return f"{x:.{_PRECISION}f}"


def _write(config: RunConfig, text: str) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _run_simulate(config: RunConfig) -> int:
    if not config.lambdas:
        raise SeqbellError("simulate requires --lambdas")
    functional = bell_functional(config.functional)
    if config.functional == "chsh":
        model = chsh_optimal_model(config.dim)
    else:
        model = elegant_optimal_model(config.dim)
    transcript = run_sequence(functional, model, config.lambdas)
    if config.fmt == "json":
        _write(config, json.dumps(asdict(transcript)) + "\n")
    else:
        rows = [
            (k + 1, _fmt(lam), _fmt(value))
            for k, (lam, value) in enumerate(zip(transcript.lambdas, transcript.values))
        ]
        _write(config, _csv_text(("observer", "lambda", "value"), rows))
    return 0


def _curve_rows(config: RunConfig):
    n = config.grid
    if config.functional == "chsh":
        header = ("input_value", "value_2", "lambda_1")
        rows = []
        for i in range(n):
            b1 = CHSH_OPT * i / (n - 1)
            rows.append((_fmt(b1), _fmt(chsh_tradeoff(b1)), _fmt(b1 / CHSH_OPT)))
        return header, rows
    if config.observers == 2:
        header = ("input_value", "value_2", "lambda_1")
        rows = []
        for i in range(n):
            e1 = ELEGANT_OPT * i / (n - 1)
            rows.append((_fmt(e1), _fmt(elegant_tradeoff2(e1)), _fmt(e1 / ELEGANT_OPT)))
        return header, rows
    header = ("input_value", "value_2", "value_3", "lambda_1", "lambda_2")
    rows = []
    for i in range(n):
        lam1 = i / (n - 1)
        for j in range(n):
            lam2 = j / (n - 1)
            rows.append(
                (
                    _fmt(elegant_value(1, [lam1])),
                    _fmt(elegant_value(2, [lam1, lam2])),
                    _fmt(elegant_value(3, [lam1, lam2, 1.0])),
                    _fmt(lam1),
                    _fmt(lam2),
                )
            )
    return header, rows


def _run_curve(config: RunConfig) -> int:
    if config.grid < 2:
        raise SeqbellError("curve requires --grid of at least 2")
    header, rows = _curve_rows(config)
    if config.fmt == "json":
        payload = [dict(zip(header, map(float, row))) for row in rows]
        _write(config, json.dumps(payload) + "\n")
    else:
        _write(config, _csv_text(header, rows))
    return 0


def _certification(config: RunConfig) -> CertificationResult:
    observed = config.observed
    if config.functional == "chsh":
        if len(observed) != 2:
            raise SeqbellError("certify chsh requires --observed b1,b2")
        return certify_chsh_pair(*observed)
    if len(observed) == 2:
        return certify_elegant_pair(*observed)
    if len(observed) == 3:
        return certify_elegant_triple(*observed)
    raise SeqbellError("certify elegant requires --observed e1,e2 or e1,e2,e3")


def _run_certify(config: RunConfig) -> int:
    result = _certification(config)
    if config.fmt == "csv":
        intervals = {index: (lo, hi) for index, lo, hi in result.lambda_intervals}
        rows = []
        for index, estimate in result.lambda_estimates:
            lo, hi = intervals.get(index, ("", ""))
            rows.append(
                (
                    index,
                    _fmt(estimate),
                    _fmt(lo) if lo != "" else "",
                    _fmt(hi) if hi != "" else "",
                    result.consistent,
                    _fmt(result.residual),
                )
            )
        text = _csv_text(
            ("index", "lambda", "lower", "upper", "consistent", "residual"), rows
        )
    else:
        text = json.dumps(asdict(result)) + "\n"
    _write(config, text)
    return 0


def _run_verify(config: RunConfig) -> int:
    reports = oracle.run_verification_suite(
        seed=config.seed, restarts=config.restarts, grid_points=config.grid
    )
    lines = [report.to_json() for report in reports]
    _write(config, "\n".join(lines) + "\n")
    failed = [report for report in reports if not report.ok]
    for report in failed:
        print(
            f"verification failed: {report.target} "
            f"(gap {report.gap:.3e} > {report.tolerance:.1e})",
            file=sys.stderr,
        )
    return 4 if failed else 0


def run(config: RunConfig) -> int:
    """Execute one parsed invocation; returns the process exit code."""
    try:
        if config.subcommand == "simulate":
            return _run_simulate(config)
        if config.subcommand == "curve":
            return _run_curve(config)
        if config.subcommand == "certify":
            return _run_certify(config)
        if config.subcommand == "verify":
            return _run_verify(config)
        raise SeqbellError(f"unknown subcommand {config.subcommand!r}")
    except InconsistencyError as exc:
        print(f"inconsistent observations: {exc}", file=sys.stderr)
        return 3
    except SeqbellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _csv_floats(text: str) -> List[float]:
    return [float(part) for part in text.split(",") if part.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqbell",
        description=(
            "Sequential Bell tests with unsharp measurements: simulation, "
            "trade-off curves, certification, verification."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, functional=True):
        if functional:
            p.add_argument("functional", choices=("chsh", "elegant"))
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument(
            "--format",
            dest="fmt",
            choices=("csv", "json"),
            help="output format",
        )

    p_sim = sub.add_parser("simulate", help="run a sequential chain")
    add_common(p_sim)
    p_sim.add_argument(
        "--lambdas",
        type=_csv_floats,
        required=True,
        help="comma-separated unsharpness parameters, one per observer",
    )
    p_sim.add_argument("--dim", type=int, choices=(2, 4), default=2)

    p_curve = sub.add_parser("curve", help="emit trade-off curve data")
    add_common(p_curve)
    p_curve.add_argument("--grid", type=int, default=101)
    p_curve.add_argument(
        "--observers",
        type=int,
        choices=(2, 3),
        default=2,
        help="2 for the pair curve, 3 for the elegant surface",
    )

    p_cert = sub.add_parser("certify", help="certify an observed value tuple")
    add_common(p_cert)
    p_cert.add_argument(
        "--observed",
        type=_csv_floats,
        required=True,
        help="comma-separated observed values, one per observer",
    )

    p_ver = sub.add_parser("verify", help="run the oracle verification suite")
    add_common(p_ver, functional=False)
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument("--restarts", type=int, default=oracle.DEFAULT_RESTARTS)
    p_ver.add_argument("--grid", type=int, default=21)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    config = RunConfig(subcommand=args.subcommand)
    config.functional = getattr(args, "functional", None)
    config.lambdas = getattr(args, "lambdas", []) or []
    config.observed = getattr(args, "observed", []) or []
    config.grid = getattr(args, "grid", config.grid)
    config.dim = getattr(args, "dim", config.dim)
    config.observers = getattr(args, "observers", config.observers)
    config.restarts = getattr(args, "restarts", config.restarts)
    config.out = getattr(args, "out", None)
    seed = getattr(args, "seed", None)
    config.seed = _default_seed() if seed is None else seed
    fmt = getattr(args, "fmt", None)
    if fmt is None:
        fmt = "json" if args.subcommand in ("certify", "verify") else "csv"
    config.fmt = fmt
    return config


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(parse_config(argv)))


if __name__ == "__main__":
    main()
