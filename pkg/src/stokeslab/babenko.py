"""Residual, Jacobian, Newton solver and diagnostics for Babenko's equation.

The steady-wave profile in holomorphic coordinates satisfies

    (c^2 K - 1) eta - eta K eta - (1/2) K eta^2 = 0,

with K the depth-dependent multiplier.  The solver works in the even
(cosine) subspace with the crest pinned at u = 0, which removes the
translational degeneracy, and treats quadratic terms alias-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .grids import Grid, PeriodicProfile, profile_from_cosines
from .operators import (
    DepthMode,
    _apply_half,
    _from_fine,
    _pad_length,
    _to_fine,
    apply_multiplier,
    dealiased_product,
    hilbert_multiplier,
    k_multiplier,
)

__all__ = [
    "WaveState",
    "Diagnostics",
    "SolverConfig",
    "SurfaceCurve",
    "ConvergenceError",
    "SingularJacobianError",
    "residual",
    "deviation",
    "fixed_point_map",
    "jacobian_apply",
    "newton_solve",
    "diagnose",
    "physical_surface",
    "crest_trough_height",
]


class ConvergenceError(RuntimeError):
    """Newton iteration failed to reach the residual tolerance."""

    def __init__(self, message: str, residual_norm: float):
        super().__init__(message)
        self.residual_norm = residual_norm


class SingularJacobianError(RuntimeError):
    """The linearized system is singular (e.g. at the flat-state bifurcation)."""


@dataclass(frozen=True)
class WaveState:
    """Candidate traveling wave: profile eta(u), speed c, depth regime."""

    profile: PeriodicProfile
    speed: float
    mode: DepthMode

    @property
    def grid(self) -> Grid:
        return self.profile.grid


@dataclass(frozen=True)
class Diagnostics:
    """Per-state health indicators.

    crest_gap is c^2/2 - max eta, the distance to the Bernoulli ceiling that
    closes only in the peaked limit; tail_fraction is the energy share of
    the top 10% of modes and flags loss of spectral resolution.
    """

    residual_norm: float
    mean_zero_value: float
    crest_gap: float
    tail_fraction: float


@dataclass(frozen=True)
class SolverConfig:
    """Newton/continuation knobs."""

    n: int = 256
    newton_tol: float = 1e-12
    max_iters: int = 25
    dealias: bool = True
    tail_abort: float = 0.01

    def __post_init__(self) -> None:
        if self.n % 2 != 0 or self.n < 4:
            raise ValueError(f"grid size must be even and at least 4, got {self.n}")
        if not (self.newton_tol > 0 and self.tail_abort > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


def _product(f: np.ndarray, g: np.ndarray, dealias: bool) -> np.ndarray:
    return dealiased_product(f, g) if dealias else f * g


def residual(state: WaveState, dealias: bool = True) -> PeriodicProfile:
    """Pointwise Babenko residual (c^2 K - 1) eta - eta K eta - K eta^2 / 2."""
    eta = state.profile.values
    half = k_multiplier(state.mode, state.grid.n).half
    k_eta = _apply_half(eta, half)
    quad = _product(eta, k_eta, dealias) + 0.5 * _apply_half(
        _product(eta, eta, dealias), half
    )
    vals = state.speed**2 * k_eta - eta - quad
    return PeriodicProfile(state.grid, vals)


def deviation(state: WaveState) -> PeriodicProfile:
    """Deviation from the Bernoulli ceiling, c^2/2 - eta."""
    return PeriodicProfile(state.grid, 0.5 * state.speed**2 - state.profile.values)


def fixed_point_map(dev: PeriodicProfile, c: float, dealias: bool = True) -> PeriodicProfile:
    """Deep-water fixed-point map c^2/2 + K(dev^2)/2 + dev K dev.

    The deviation of a deep-water solution is a fixed point; equivalently
    dev - fixed_point_map(dev, c) equals the Babenko residual of the state
    eta = c^2/2 - dev, pointwise to round-off.
    """
    half = k_multiplier(DepthMode.infinite(), dev.n).half
    d = dev.values
    k_d = _apply_half(d, half)
    vals = 0.5 * c**2 + 0.5 * _apply_half(_product(d, d, dealias), half) + _product(
        d, k_d, dealias
    )
    return PeriodicProfile(dev.grid, vals)


def jacobian_apply(
    state: WaveState, direction: PeriodicProfile, dealias: bool = True
) -> PeriodicProfile:
    """Directional derivative of the residual at eta along a perturbation."""
    if direction.n != state.grid.n:
        raise ValueError("direction and state live on different grids")
    eta = state.profile.values
    delta = direction.values
    half = k_multiplier(state.mode, state.grid.n).half
    k_eta = _apply_half(eta, half)
    k_delta = _apply_half(delta, half)
    vals = (
        state.speed**2 * k_delta
        - delta
        - _product(delta, k_eta, dealias)
        - _product(eta, k_delta, dealias)
        - _apply_half(_product(eta, delta, dealias), half)
    )
    return PeriodicProfile(state.grid, vals)


def crest_trough_height(profile: PeriodicProfile) -> float:
    """Crest-to-trough height eta(0) - eta(pi).

    The solver produces even single-crest profiles with the crest at the
    origin, for which this equals max eta - min eta.
    """
    vals = profile.interpolate(np.array([0.0, np.pi]))
    return float(vals[0] - vals[1])


def _cosines_of(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Cosine coefficients a_0 .. a_{n/2-1} of (batched) sample rows."""
    n = grid.n
    k = np.arange(n // 2)
    phase = np.exp(-1j * k * grid.origin)
    c = np.fft.rfft(values, axis=-1)[..., : n // 2] / n * phase
    a = 2.0 * c.real
    a[..., 0] *= 0.5
    return a


_BASIS_CACHE: dict[int, np.ndarray] = {}


def _cosine_basis(grid: Grid) -> np.ndarray:
    """Rows cos(k u_j), k = 0 .. n/2 - 1, cached per grid size."""
    n = grid.n
    basis = _BASIS_CACHE.get(n)
    if basis is None:
        k = np.arange(n // 2)
        basis = np.cos(np.outer(k, grid.points))
        basis.flags.writeable = False
        if len(_BASIS_CACHE) > 8:
            _BASIS_CACHE.clear()
        _BASIS_CACHE[n] = basis
    return basis


def _assemble_system(
    a: np.ndarray,
    c: float,
    mode: DepthMode,
    grid: Grid,
    height_target: float | None,
    dealias: bool,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Jacobian and residual of the cosine-space system.

    Returns (J, rhs, residual_max_norm).  In fixed-height mode the system is
    bordered with the speed column and the linear height row.
    """
    n = grid.n
    m = n // 2
    half = k_multiplier(mode, n).half
    eta = profile_from_cosines(grid, a).values
    k_eta = _apply_half(eta, half)

    if dealias:
        pad = _pad_length(n)
        basis_fine = _to_fine(_cosine_basis(grid), n, pad)
        eta_fine = _to_fine(eta, n, pad)
        k_eta_fine = _to_fine(k_eta, n, pad)
        eta_sq = _from_fine(eta_fine * eta_fine, n, pad)
        eta_k_eta = _from_fine(eta_fine * k_eta_fine, n, pad)
        prod_eta_basis = _from_fine(eta_fine[None, :] * basis_fine, n, pad)
        prod_keta_basis = _from_fine(k_eta_fine[None, :] * basis_fine, n, pad)
    else:
        basis = _cosine_basis(grid)
        eta_sq = eta * eta
        eta_k_eta = eta * k_eta
        prod_eta_basis = eta[None, :] * basis
        prod_keta_basis = k_eta[None, :] * basis

    res_vals = c**2 * k_eta - eta - eta_k_eta - 0.5 * _apply_half(eta_sq, half)
    res_norm = float(np.abs(res_vals).max())

    basis = _cosine_basis(grid)
    k_basis = _apply_half(basis, half)
    if dealias:
        k_basis_fine = _to_fine(k_basis, n, pad)
        prod_eta_kbasis = _from_fine(eta_fine[None, :] * k_basis_fine, n, pad)
    else:
        prod_eta_kbasis = eta[None, :] * k_basis

    columns = (
        c**2 * k_basis
        - basis
        - prod_keta_basis
        - prod_eta_kbasis
        - _apply_half(prod_eta_basis, half)
    )
    jac = _cosines_of(columns, grid).T  # equations x unknowns

    rhs = _cosines_of(res_vals, grid)
    if height_target is None:
        return jac, rhs, res_norm

    height_err = 2.0 * a[1::2].sum() - height_target
    speed_col = _cosines_of(2.0 * c * k_eta, grid)
    height_row = np.zeros(m + 1)
    height_row[1:m:2] = 2.0
    bordered = np.zeros((m + 1, m + 1))
    bordered[:m, :m] = jac
    bordered[:m, m] = speed_col
    bordered[m, :] = height_row
    rhs_full = np.concatenate([rhs, [height_err]])
    return bordered, rhs_full, max(res_norm, abs(height_err))


def _solve_checked(jac: np.ndarray, rhs: np.ndarray, res_norm: float) -> np.ndarray:
    """LU solve that treats a collapsed pivot as a singular linearization.

    FFT round-off turns analytically zero Jacobian entries into ~1e-16
    noise, so plain LAPACK happily factors the bifurcation-point system;
    the relative pivot ratio catches it.
    """
    try:
        lu, piv = scipy.linalg.lu_factor(jac)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise SingularJacobianError(
            f"singular linearization (residual {res_norm:.3e})"
        ) from exc
    diag = np.abs(np.diag(lu))
    if diag.min() <= 1e-13 * diag.max():
        raise SingularJacobianError(
            f"singular linearization (residual {res_norm:.3e}); "
            "the linearized operator annihilates a resolved mode"
        )
    step = scipy.linalg.lu_solve((lu, piv), rhs)
    if not np.all(np.isfinite(step)):
        raise SingularJacobianError("non-finite Newton update")
    return step


def newton_solve(
    initial: WaveState,
    config: SolverConfig,
    height: float | None = None,
) -> WaveState:
    """Newton-solve Babenko's equation in the even cosine subspace.

    With ``height`` given, the crest-to-trough height is constrained to it
    and the speed becomes an unknown (bordered system); otherwise the speed
    is held fixed.  The Jacobian is factored at least once even when the
    initial residual already meets the tolerance, so a singular
    linearization (the flat-state bifurcation) is always reported.
    """
    grid = initial.grid
    a = initial.profile.cosine_coeffs()
    c = float(initial.speed)
    if height is not None and not height > 0:
        raise ValueError(f"height constraint must be positive, got {height}")

    for iteration in range(config.max_iters + 1):
        jac, rhs, res_norm = _assemble_system(
            a, c, initial.mode, grid, height, config.dealias
        )
        if not np.isfinite(res_norm) or res_norm > 1e6:
            raise ConvergenceError(
                f"diverged at iteration {iteration} (residual {res_norm:.3e})",
                residual_norm=res_norm,
            )
        converged = res_norm <= config.newton_tol
        if converged and iteration > 0:
            break
        if not converged and iteration == config.max_iters:
            raise ConvergenceError(
                f"no convergence after {config.max_iters} iterations "
                f"(last residual {res_norm:.3e})",
                residual_norm=res_norm,
            )
        step = _solve_checked(jac, rhs, res_norm)
        if converged:
            break
        if height is None:
            a = a - step
        else:
            a = a - step[:-1]
            c = c - float(step[-1])

    return WaveState(profile_from_cosines(grid, a), c, initial.mode)


def diagnose(state: WaveState) -> Diagnostics:
    """Residual norm, mean-zero constraint value, crest gap and tail energy."""
    eta = state.profile.values
    half = k_multiplier(state.mode, state.grid.n).half
    res_norm = residual(state).max_norm()
    mean_zero = float(np.mean(eta * (1.0 + _apply_half(eta, half))))
    crest = max(float(eta.max()), float(state.profile.interpolate(0.0)))
    crest_gap = 0.5 * state.speed**2 - crest

    spec = state.profile.spectrum()
    energy = np.abs(spec[1:]) ** 2
    cut = int(np.ceil(0.9 * (state.grid.n // 2))) - 1
    total = float(energy.sum())
    tail = float(energy[cut:].sum()) / total if total > 0 else 0.0
    return Diagnostics(res_norm, mean_zero, crest_gap, tail)


@dataclass(frozen=True)
class SurfaceCurve:
    """Physical free surface samples and a crest-angle estimate in degrees."""

    x: np.ndarray
    y: np.ndarray
    crest_angle_deg: float


def physical_surface(state: WaveState, angle_window: float = 0.1) -> SurfaceCurve:
    """Reconstruct the physical surface x = u - H[eta], y = eta (deep water).

    The interior crest angle is estimated from one-sided secants: on each
    side of the crest, the chord from the sample adjacent to the crest
    (u = +/- spacing/2) to the sample nearest |u| = angle_window.  A flat
    profile reports 180 degrees; as the window shrinks on a crest wedge the
    estimate approaches the wedge angle (120 degrees in the peaked limit).
    """
    if state.mode.kind != "infinite":
        raise ValueError("physical reconstruction is defined for deep water only")
    u = state.grid.points
    n = state.grid.n
    h_eta = apply_multiplier(state.profile, hilbert_multiplier(n))
    x = u - h_eta.values
    y = state.profile.values

    window = max(abs(angle_window), 1.5 * state.grid.spacing)
    slopes = []
    for inner, outer_target in ((n // 2, window), (n // 2 - 1, -window)):
        j = int(np.argmin(np.abs(u - outer_target)))
        dx = x[j] - x[inner]
        dy = y[j] - y[inner]
        slopes.append(abs(dy / dx) if dx != 0.0 else 0.0)
    angle = 180.0 - np.degrees(np.arctan(slopes[0]) + np.arctan(slopes[1]))
    x.flags.writeable = False
    return SurfaceCurve(x, y, float(angle))
