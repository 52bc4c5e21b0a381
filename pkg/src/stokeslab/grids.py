"""Staggered periodic grids and sampled 2*pi-periodic profiles.

Everything downstream lives on the fundamental domain (-pi, pi) with a
uniform grid offset by half a spacing, so the points u = 0 and u = +/-pi,
where fractional-power profiles are singular, are never sampled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Grid", "PeriodicProfile", "make_grid", "sample_power"]


@dataclass(frozen=True)
class Grid:
    """Uniform staggered grid u_j = -pi + (j + 1/2) * spacing, j = 0 .. n-1."""

    n: int

    def __post_init__(self) -> None:
        if self.n % 2 != 0 or self.n < 4:
            raise ValueError(f"grid size must be even and at least 4, got {self.n}")
        pts = -np.pi + (np.arange(self.n) + 0.5) * (2.0 * np.pi / self.n)
        pts.flags.writeable = False
        object.__setattr__(self, "_points", pts)

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.n

    @property
    def points(self) -> np.ndarray:
        return self._points  # type: ignore[attr-defined]

    @property
    def origin(self) -> float:
        """Leftmost sample point, -pi + spacing/2."""
        return float(self._points[0])  # type: ignore[attr-defined]


def make_grid(n: int) -> Grid:
    """Build the staggered grid with ``n`` samples (``n`` even, >= 4)."""
    return Grid(int(n))


@dataclass(frozen=True)
class PeriodicProfile:
    """Real samples of a 2*pi-periodic function on a staggered grid.

    Instances are immutable; the value array is copied and marked read-only
    on construction, so profiles can be shared freely across threads.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float)
        if vals.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} sample values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("profile values must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def sample(cls, grid: Grid, fn) -> "PeriodicProfile":
        """Sample a callable on the grid points."""
        return cls(grid, fn(grid.points))

    @property
    def n(self) -> int:
        return self.grid.n

    def mean(self) -> float:
        return float(self.values.mean())

    def max_norm(self) -> float:
        return float(np.abs(self.values).max())

    def spectrum(self) -> np.ndarray:
        """One-sided spectral coefficients c_k, k = 0 .. n/2.

        c_k is the coefficient of exp(i*k*u) in the band-limited interpolant,
        with the half-spacing grid offset folded in.  For a real profile the
        negative side is conj-symmetric and is not stored.
        """
        n = self.grid.n
        k = np.arange(n // 2 + 1)
        phase = np.exp(-1j * k * self.grid.origin)
        return np.fft.rfft(self.values) / n * phase

    def interpolate(self, u) -> np.ndarray | float:
        """Evaluate the band-limited interpolant at arbitrary points.

        Exact at the grid points; the shared Nyquist bin is rendered as the
        real cosine mode relative to the grid offset, which is the unique
        real interpolant consistent with the samples.
        """
        u_arr = np.atleast_1d(np.asarray(u, dtype=float))
        n = self.grid.n
        raw = np.fft.rfft(self.values)
        k = np.arange(1, n // 2)
        # interior modes appear twice, DC once, Nyquist as a cosine
        phases = np.exp(1j * np.outer(k, u_arr - self.grid.origin))
        out = (
            raw[0].real
            + 2.0 * (raw[1 : n // 2, None] * phases).real.sum(axis=0)
            + raw[n // 2].real * np.cos((n // 2) * (u_arr - self.grid.origin))
        ) / n
        if np.isscalar(u) or np.ndim(u) == 0:
            return float(out[0])
        return out

    def cosine_coeffs(self) -> np.ndarray:
        """Cosine coefficients a_k, k = 0 .. n/2 - 1, of the even part.

        The profile is represented as a_0 + sum a_k cos(k u).  The Nyquist
        cosine is degenerate on a staggered grid and is dropped; solver
        states are built without Nyquist content so the projection is exact
        for them.
        """
        c = self.spectrum()
        a = 2.0 * c.real[: self.grid.n // 2]
        a[0] = c.real[0]
        return a


def profile_from_cosines(grid: Grid, coeffs: np.ndarray) -> PeriodicProfile:
    """Build the profile a_0 + sum_{k>=1} a_k cos(k u) from coefficients.

    ``coeffs`` holds a_0 .. a_{m} with m <= n/2 - 1; missing high modes are
    zero.  Inverse of :meth:`PeriodicProfile.cosine_coeffs`.
    """
    n = grid.n
    a = np.asarray(coeffs, dtype=float)
    if a.ndim != 1 or a.size > n // 2:
        raise ValueError(f"need at most {n // 2} cosine coefficients, got {a.size}")
    raw = np.zeros(n // 2 + 1, dtype=complex)
    k = np.arange(a.size)
    raw[: a.size] = 0.5 * a * n * np.exp(1j * k * grid.origin)
    raw[0] = a[0] * n
    return PeriodicProfile(grid, np.fft.irfft(raw, n))


def sample_power(p: float, grid: Grid, signed: bool = False) -> PeriodicProfile:
    """Sample |u|^p (or |u|^p sgn u) on the grid, periodically extended.

    Requires p > -1 so the function is integrable; the staggered grid
    guarantees u = 0 is never evaluated.
    """
    if not p > -1.0:
        raise ValueError(f"exponent must exceed -1 for integrability, got {p}")
    u = grid.points
    vals = np.abs(u) ** p
    if signed:
        vals = vals * np.sign(u)
    return PeriodicProfile(grid, vals)
