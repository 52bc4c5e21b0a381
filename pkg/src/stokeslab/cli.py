"""Command-line interface: solve, continue, analyze, verify."""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .babenko import SolverConfig, WaveState, diagnose, newton_solve
from .branch_io import (
    BranchParseError,
    _atomic_write,
    _dump_record,
    _fmt,
    load_branch,
    store_branch,
)
from .continuation import BranchEntry, WaveBranch, continue_branch
from .exponents import find_exponents, grant_lhs
from .fits import (
    cancellation_check,
    crest_fit,
    lemma_remainder_report,
    log_case_check,
    measured_action_coefficient,
)
from .exponents import predicted_action_coefficient
from .grids import make_grid, profile_from_cosines
from .operators import DepthMode

__all__ = ["RunConfig", "run", "main"]

LEMMA_RESOLUTIONS = [2048, 8192, 32768]
LEMMA_GUARD = 0.4
ACTION_EXPONENTS = (1.0 / 3.0, 1.0 / 2.0, 2.0 / 3.0, 4.0 / 3.0, 5.0 / 3.0)


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: one command plus its numeric and path options."""

    command: str
    n: int = 256
    mode: DepthMode = DepthMode.infinite()
    height: float | None = None
    to_height: float | None = None
    tol: float = 1e-12
    branch: str | None = None
    out: str | None = None
    window: tuple[float, float] | None = None
    subleading: bool = False

    def __post_init__(self) -> None:
        if self.n % 2 != 0:
            raise ValueError(f"grid size must be even, got {self.n}")
        needs_branch = self.command in ("solve", "continue", "analyze")
        if needs_branch and not self.branch:
            raise ValueError(f"{self.command} requires --branch")
        if self.command in ("analyze", "verify") and not self.out:
            raise ValueError(f"{self.command} requires --out")


def _solver_config(cfg: RunConfig) -> SolverConfig:
    return SolverConfig(n=cfg.n, newton_tol=cfg.tol)


def _solve(cfg: RunConfig) -> int:
    if cfg.height is None:
        raise ValueError("solve requires --height")
    grid = make_grid(cfg.n)
    initial = WaveState(
        profile_from_cosines(grid, [0.0, cfg.height / 2.0]), 1.0, cfg.mode
    )
    state = newton_solve(initial, _solver_config(cfg), height=cfg.height)
    entry = BranchEntry(cfg.height, state, diagnose(state))
    store_branch(WaveBranch([entry]), cfg.branch)
    print(
        f"solved s={_fmt(cfg.height)} c={_fmt(state.speed)} "
        f"residual={entry.diagnostics.residual_norm:.3e} -> {cfg.branch}"
    )
    return 0


def _continue(cfg: RunConfig) -> int:
    if cfg.to_height is None:
        raise ValueError("continue requires --to-height")
    path = Path(cfg.branch)
    if not path.exists():
        raise ValueError(f"branch file {path} does not exist; run solve first")
    branch = load_branch(path)
    if not len(branch):
        raise ValueError(f"branch file {path} is empty; run solve first")
    last = branch.last()
    n_file = last.state.grid.n
    if cfg.n != RunConfig.n and cfg.n != n_file:
        raise ValueError(f"--n {cfg.n} conflicts with branch file grid size {n_file}")
    if cfg.mode != RunConfig.mode and cfg.mode != last.state.mode:
        raise ValueError(
            f"--mode {cfg.mode.token()} conflicts with branch file mode "
            f"{last.state.mode.token()}"
        )
    solver = SolverConfig(n=n_file, newton_tol=cfg.tol)
    previous = None
    if len(branch) > 1:
        prev = branch.entries[-2]
        previous = (prev.state, prev.height)
    extended = continue_branch(
        last.state, cfg.to_height, solver, previous=previous
    )
    new_entries = extended.entries[1:]  # entry 0 repeats the seed
    if new_entries:
        text = path.read_text() + "".join(_dump_record(e) + "\n" for e in new_entries)
        _atomic_write(path, text)
    print(
        f"continued to s={_fmt(extended.last().height)} in {len(new_entries)} steps "
        f"(stop: {extended.stop_reason}) -> {path}"
    )
    return 0


def _analyze(cfg: RunConfig) -> int:
    branch = load_branch(cfg.branch)
    if not len(branch):
        raise ValueError(f"branch file {cfg.branch} is empty")
    header = "s,c,crest_gap,beta,A,rms"
    if cfg.subleading:
        header += ",B,mu"
    lines = [header]
    rows = []
    for entry in branch.entries:
        try:
            fit = crest_fit(
                entry.state.profile,
                entry.state.speed,
                window=cfg.window,
                subleading=cfg.subleading,
            )
            row = [
                entry.height,
                entry.state.speed,
                entry.diagnostics.crest_gap,
                fit.beta,
                fit.A,
                fit.rms_residual,
            ]
            if cfg.subleading:
                row += [
                    fit.B if fit.B is not None else float("nan"),
                    fit.mu if fit.mu is not None else float("nan"),
                ]
        except ValueError:
            row = [entry.height, entry.state.speed, entry.diagnostics.crest_gap] + [
                float("nan")
            ] * (5 if cfg.subleading else 3)
        rows.append(row)
        lines.append(",".join(_fmt(v) for v in row))
    _atomic_write(Path(cfg.out), "\n".join(lines) + "\n")

    final = rows[-1]
    print(f"analyzed {len(rows)} states from {cfg.branch}")
    print(
        f"  s in [{rows[0][0]:.6g}, {final[0]:.6g}], "
        f"c in [{min(r[1] for r in rows):.6g}, {max(r[1] for r in rows):.6g}]"
    )
    print(
        f"  steepest state: crest_gap={final[2]:.6g} beta={final[3]:.6g} "
        f"A={final[4]:.6g}"
    )
    print(f"wrote {cfg.out}")
    return 0


def _verify(cfg: RunConfig) -> int:
    roots = find_exponents()
    report: dict = {
        "find_exponents": dataclasses.asdict(roots),
        "grant_lhs_at_first_root": grant_lhs(2.0 / 3.0),
    }

    n = cfg.n if cfg.n != RunConfig.n else 16384
    actions = []
    for p in ACTION_EXPONENTS:
        predicted = predicted_action_coefficient(p)
        measured = measured_action_coefficient(p, n, window=cfg.window)
        actions.append(
            {
                "p": p,
                "predicted": predicted,
                "measured": measured,
                "relative_error": abs(measured - predicted) / abs(predicted),
            }
        )
    report["action_coefficients"] = actions
    report["log_case"] = dataclasses.asdict(log_case_check(n, window=cfg.window))

    cases = [(nu, signed) for nu in (1.0 / 3.0, 0.5, 2.0 / 3.0) for signed in (False, True)]
    workers = max(1, int(os.environ.get("STOKESLAB_THREADS", "1")))

    def lemma(case):
        nu, signed = case
        return lemma_remainder_report(
            nu, signed, 1.0, LEMMA_RESOLUTIONS, inner_guard=LEMMA_GUARD
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lemma, cases))
    else:
        reports = [lemma(c) for c in cases]
    report["lemma_remainders"] = [dataclasses.asdict(r) for r in reports]
    report["cancellation"] = dataclasses.asdict(cancellation_check(1.0, n))

    _atomic_write(Path(cfg.out), json.dumps(report, indent=2) + "\n")
    second = roots.grant_roots[0] if roots.grant_roots else float("nan")
    print(f"beta_root = {roots.beta_root!r}")
    print(f"subleading exponent root = {second!r} (rounds to {second:.3f})")
    print(f"wrote {cfg.out}")
    return 0


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    handler = {
        "solve": _solve,
        "continue": _continue,
        "analyze": _analyze,
        "verify": _verify,
    }[config.command]
    return handler(config)


def _parse_window(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"window must be 'a:b', got {text!r}") from exc
    return (lo, hi)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stokeslab",
        description="Spectral traveling-wave solver and crest-singularity diagnostics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, default=RunConfig.n, help="grid size (even)")
        p.add_argument(
            "--mode",
            type=DepthMode.from_token,
            default=RunConfig.mode,
            help="deep | depth=<h> | toy",
        )
        p.add_argument("--tol", type=float, default=RunConfig.tol)
        p.add_argument("--branch", help="branch file (JSON lines)")
        p.add_argument("--out", help="output file")
        p.add_argument("--window", type=_parse_window, help="fit window 'a:b'")
        p.add_argument("--subleading", action="store_true")

    p_solve = sub.add_parser("solve", help="solve one wave at a fixed height")
    add_common(p_solve)
    p_solve.add_argument("--height", type=float, required=True)

    p_cont = sub.add_parser("continue", help="extend a stored branch toward a height")
    add_common(p_cont)
    p_cont.add_argument("--to-height", type=float, required=True, dest="to_height")

    p_an = sub.add_parser("analyze", help="fit crest expansions along a stored branch")
    add_common(p_an)

    p_ver = sub.add_parser("verify", help="run the exponent and lemma verification suite")
    add_common(p_ver)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    options = {k: v for k, v in vars(args).items() if k in fields and v is not None}
    try:
        config = RunConfig(**options)
        return run(config)
    except (ValueError, BranchParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
