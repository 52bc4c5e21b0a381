"""Branch continuation in crest-to-trough height.

Height is the continuation parameter (speed is an unknown along the
branch, and is known to turn around near the peaked limit).  Steps follow
a deterministic ladder: grow by a fixed factor after every success, halve
on failure.  Because the next step depends only on the last two heights,
resuming a stored branch reproduces the remaining schedule exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .babenko import (
    ConvergenceError,
    Diagnostics,
    SingularJacobianError,
    SolverConfig,
    WaveState,
    crest_trough_height,
    diagnose,
    newton_solve,
)
from .grids import profile_from_cosines

__all__ = ["BranchEntry", "WaveBranch", "continue_branch"]

GROWTH = 1.3
MIN_STEP = 1e-6


@dataclass(frozen=True)
class BranchEntry:
    """One converged state with its diagnostics and height parameter."""

    height: float
    state: WaveState
    diagnostics: Diagnostics


@dataclass
class WaveBranch:
    """Ordered branch of converged states with strictly increasing height."""

    entries: list[BranchEntry] = field(default_factory=list)
    truncated: bool = False
    stop_reason: str = ""

    def __post_init__(self) -> None:
        h = self.heights()
        if np.any(np.diff(h) <= 0):
            raise ValueError("branch heights must be strictly increasing")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def heights(self) -> np.ndarray:
        return np.array([e.height for e in self.entries])

    def speeds(self) -> np.ndarray:
        return np.array([e.state.speed for e in self.entries])

    def last(self) -> BranchEntry:
        if not self.entries:
            raise ValueError("branch is empty")
        return self.entries[-1]


def _predict(
    last: WaveState, last_h: float, prev: WaveState | None, prev_h: float | None, new_h: float
) -> WaveState:
    """Secant extrapolation of cosine coefficients and speed; linear scaling
    of the profile when only one state is known (exact at the branch foot)."""
    a1 = last.profile.cosine_coeffs()
    if prev is None:
        a = a1 * (new_h / last_h)
        c = last.speed
    else:
        a0 = prev.profile.cosine_coeffs()
        w = (new_h - last_h) / (last_h - prev_h)
        a = a1 + w * (a1 - a0)
        c = last.speed + w * (last.speed - prev.speed)
    return WaveState(profile_from_cosines(last.grid, a), c, last.mode)


def continue_branch(
    seed: WaveState,
    target_height: float,
    config: SolverConfig,
    *,
    initial_step: float | None = None,
    growth: float = GROWTH,
    max_step: float | None = None,
    previous: tuple[WaveState, float] | None = None,
) -> WaveBranch:
    """Continue a converged seed state toward ``target_height``.

    Heights are sampled on the ladder described in the module docstring and
    the target acts as a stopping bound (the branch ends at the last ladder
    point not beyond it).  Continuation also stops, with the branch marked
    truncated, when

    * the spectral tail of a converged state exceeds ``config.tail_abort``
      ("tail_abort"),
    * a converged discrete state violates the Bernoulli ceiling
      max eta <= c^2/2 and so cannot be a traveling wave; the offender is
      discarded ("ceiling_crossed"),
    * step halving collapses below the minimum step ("step_collapse").

    ``previous`` (state, height) rebuilds predictor and step size when
    resuming a stored branch; with the same step parameters the resumed run
    replays a fresh one exactly.

    Raises ConvergenceError if the very first step fails outright, and
    ValueError if the target does not exceed the seed height.
    """
    if growth <= 1.0:
        raise ValueError("step growth factor must exceed 1")
    seed_h = crest_trough_height(seed.profile)
    if not target_height > seed_h:
        raise ValueError(
            f"target height {target_height} must exceed the seed height {seed_h:.6g}"
        )

    def capped(s: float) -> float:
        return min(s, max_step) if max_step is not None else s

    branch = WaveBranch()
    branch.entries.append(BranchEntry(seed_h, seed, diagnose(seed)))
    if branch.entries[0].diagnostics.tail_fraction > config.tail_abort:
        branch.truncated = True
        branch.stop_reason = "tail_abort"
        return branch

    prev_state: WaveState | None = None
    prev_h: float | None = None
    if previous is not None:
        prev_state, prev_h = previous
        step = capped((seed_h - prev_h) * growth)
    else:
        step = capped(initial_step if initial_step is not None else 0.5 * seed_h)

    last_state, last_h = seed, seed_h
    first_attempt = True
    while True:
        if last_h + step > target_height:
            # never clamp onto the target: the ladder must not depend on it,
            # so that resuming a stored branch replays a fresh run exactly
            branch.stop_reason = "target_reached"
            return branch
        new_h = last_h + step
        guess = _predict(last_state, last_h, prev_state, prev_h, new_h)
        failure = ""
        try:
            state = newton_solve(guess, config, height=new_h)
            diag = diagnose(state)
            if diag.crest_gap <= 0.0:
                # converged onto a spurious discrete family above the
                # Bernoulli ceiling; a smaller step may stay on the branch
                failure = "ceiling_crossed"
        except (ConvergenceError, SingularJacobianError):
            # overshooting the reachable part of the branch can diverge or
            # land on a degenerate linearization; both mean "step too big"
            if first_attempt:
                raise
            failure = "step_collapse"
        if failure:
            step *= 0.5
            if step < MIN_STEP:
                branch.truncated = True
                branch.stop_reason = failure
                return branch
            continue
        first_attempt = False
        branch.entries.append(BranchEntry(new_h, state, diag))
        prev_state, prev_h = last_state, last_h
        last_state, last_h = state, new_h
        if diag.tail_fraction > config.tail_abort:
            branch.truncated = True
            branch.stop_reason = "tail_abort"
            return branch
        step = capped(step * growth)
