"""Fourier-multiplier operators, dealiased products, and the p.v. Hilbert oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import polygamma

from .grids import Grid, PeriodicProfile

__all__ = [
    "DepthMode",
    "SpectralMultiplier",
    "k_multiplier",
    "hilbert_multiplier",
    "derivative_multiplier",
    "apply_multiplier",
    "dealiased_product",
    "hilbert_pv_quadrature",
]


@dataclass(frozen=True)
class DepthMode:
    """Water-depth regime selecting the pseudo-differential symbol."""

    kind: str
    depth: float | None = None

    _KINDS = ("finite", "infinite", "toy")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown depth mode {self.kind!r}")
        if self.kind == "finite":
            if self.depth is None or not (self.depth > 0):
                raise ValueError("finite depth requires h > 0")
        elif self.depth is not None:
            raise ValueError(f"{self.kind} mode takes no depth parameter")

    @classmethod
    def finite(cls, h: float) -> "DepthMode":
        return cls("finite", float(h))

    @classmethod
    def infinite(cls) -> "DepthMode":
        return cls("infinite")

    @classmethod
    def toy(cls) -> "DepthMode":
        return cls("toy")

    def token(self) -> str:
        """Short text form used by the CLI and the branch file format."""
        if self.kind == "finite":
            return f"depth={self.depth:.17g}"
        return "deep" if self.kind == "infinite" else "toy"

    @classmethod
    def from_token(cls, token: str) -> "DepthMode":
        token = token.strip()
        if token in ("deep", "infinite"):
            return cls.infinite()
        if token == "toy":
            return cls.toy()
        if token.startswith("depth="):
            try:
                return cls.finite(float(token[len("depth=") :]))
            except ValueError as exc:
                raise ValueError(f"bad depth token {token!r}") from exc
        raise ValueError(f"unknown depth mode token {token!r}")


@dataclass(frozen=True)
class SpectralMultiplier:
    """Diagonal operator in Fourier space, given by its symbol on k = 0 .. n/2.

    ``parity`` records how the symbol extends to negative wavenumbers:
    "even" means symbol(-k) = symbol(k) (real values), "odd" means
    symbol(-k) = -symbol(k) (imaginary values).  Both extensions map real
    fields to real fields.  Odd multipliers carry 0 at the shared Nyquist
    bin, which cannot represent an odd symbol on an even grid.
    """

    n: int
    half: np.ndarray
    parity: str

    def __post_init__(self) -> None:
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        half = np.asarray(self.half, dtype=complex)
        if half.shape != (self.n // 2 + 1,):
            raise ValueError("symbol array must have length n/2 + 1")
        half = half.copy()
        half.flags.writeable = False
        object.__setattr__(self, "half", half)

    def symbol(self, k: int) -> complex:
        """Two-sided symbol value at integer wavenumber k, |k| <= n/2."""
        if abs(k) > self.n // 2:
            raise ValueError(f"wavenumber {k} outside |k| <= {self.n // 2}")
        val = self.half[abs(k)]
        if self.parity == "odd" and k < 0:
            val = -val
        return complex(val)


def k_multiplier(mode: DepthMode, n: int) -> SpectralMultiplier:
    """Depth-dependent wave operator: k coth(h k), |k| deep water, k^2 toy.

    The zero mode is annihilated in every regime (the naive finite-depth
    limit of k coth(h k) at k = 0 is 1/h, but the operator is defined with
    symbol 0 there).
    """
    if n % 2 != 0 or n < 4:
        raise ValueError(f"grid size must be even and at least 4, got {n}")
    k = np.arange(n // 2 + 1, dtype=float)
    if mode.kind == "finite":
        half = np.zeros_like(k)
        half[1:] = k[1:] / np.tanh(mode.depth * k[1:])
    elif mode.kind == "infinite":
        half = k.copy()
    else:
        half = k**2
    half[0] = 0.0
    return SpectralMultiplier(n, half.astype(complex), "even")


def hilbert_multiplier(n: int) -> SpectralMultiplier:
    """Periodic Hilbert transform, symbol i sgn(k), zero at k = 0."""
    half = np.full(n // 2 + 1, 1j)
    half[0] = 0.0
    half[-1] = 0.0
    return SpectralMultiplier(n, half, "odd")


def derivative_multiplier(n: int) -> SpectralMultiplier:
    """Spectral derivative d/du, symbol i k."""
    half = 1j * np.arange(n // 2 + 1, dtype=float)
    half[-1] = 0.0
    return SpectralMultiplier(n, half, "odd")


def apply_multiplier(f: PeriodicProfile, m: SpectralMultiplier) -> PeriodicProfile:
    """Apply a diagonal Fourier operator to a profile."""
    if f.n != m.n:
        raise ValueError(f"profile has {f.n} samples but multiplier expects {m.n}")
    out = _apply_half(f.values, m.half)
    return PeriodicProfile(f.grid, out)


def _apply_half(values: np.ndarray, half: np.ndarray) -> np.ndarray:
    """rfft-space application of a one-sided symbol; works on batched rows."""
    n = values.shape[-1]
    return np.fft.irfft(np.fft.rfft(values, axis=-1) * half, n, axis=-1)


def _pad_length(n: int) -> int:
    """Smallest even padded size >= 3n/2 (alias-free for quadratic terms)."""
    m = (3 * n + 1) // 2
    return m + (m % 2)


def _to_fine(values: np.ndarray, n: int, m: int) -> np.ndarray:
    """Band-limited interpolation from n to m > n samples (rfft zero padding)."""
    rhat = np.fft.rfft(values, axis=-1)
    pad = np.zeros(values.shape[:-1] + (m // 2 + 1,), dtype=complex)
    pad[..., : n // 2] = rhat[..., : n // 2]
    pad[..., n // 2] = 0.5 * rhat[..., n // 2]
    return np.fft.irfft(pad, m, axis=-1) * (m / n)


def _from_fine(values_fine: np.ndarray, n: int, m: int) -> np.ndarray:
    """Project fine-grid samples back to the n lowest modes."""
    rhat = np.fft.rfft(values_fine, axis=-1)[..., : n // 2 + 1] * (n / m)
    return np.fft.irfft(rhat, n, axis=-1)


def dealiased_product(f_values: np.ndarray, g_values: np.ndarray) -> np.ndarray:
    """Alias-free pointwise product, projected back to the working band.

    The factors are interpolated onto a grid of >= 3n/2 points, multiplied
    there, and truncated, so quadratic terms never fold spurious energy
    into the resolved modes.  Supports batched rows in either factor.
    """
    n = f_values.shape[-1]
    if g_values.shape[-1] != n:
        raise ValueError("factors must share the sample count")
    m = _pad_length(n)
    return _from_fine(_to_fine(f_values, n, m) * _to_fine(g_values, n, m), n, m)


def hilbert_pv_quadrature(f: PeriodicProfile, u: float, terms: int) -> float:
    """Principal-value evaluation of the periodic Hilbert transform.

    Discretizes (1/pi) sum_n p.v. integral of f(u') / (u' - u + 2 pi n)
    directly: the integrand is singularity-subtracted (f(u') -> f(u') -
    f(u)), the images |n| <= terms are summed explicitly and quadratured by
    the midpoint rule on the staggered grid, the subtracted constant
    integrates to a closed-form log, and the neglected far images are
    restored through a two-term trigamma tail expansion.  Serves as an
    oracle for the i sgn(k) symbol form, sharing nothing with the FFT path
    except the sample values (and the sample of f' at u when u lies on the
    grid, where the subtracted integrand has a removable point).
    """
    u = float(u)
    if not (-np.pi < u < np.pi):
        raise ValueError(f"evaluation point must lie in (-pi, pi), got {u}")
    terms = int(terms)
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")

    grid = f.grid
    pts = grid.points
    x = pts - u
    on_node = np.abs(x) < 0.5 * grid.spacing * 1e-8

    # truncated image kernel sum_{|n| <= terms} 1/(x + 2 pi n)
    kernel = np.zeros_like(x)
    central = np.where(on_node, 1.0, x)  # placeholder at the removable node
    kernel += np.where(on_node, 0.0, 1.0 / central)
    for img in range(1, terms + 1):
        shift = 2.0 * np.pi * img
        kernel += 1.0 / (x + shift) + 1.0 / (x - shift)

    # asymptotic tail of the far images: pairs sum to -2x / (4 pi^2 n^2 - x^2)
    s2 = float(polygamma(1, terms + 1))
    s4 = float(polygamma(3, terms + 1)) / 6.0
    kernel += -(x * s2) / (2.0 * np.pi**2) - (x**3 * s4) / (8.0 * np.pi**4)

    f_u = float(f.interpolate(u))
    integrand = (f.values - f_u) * kernel
    if np.any(on_node):
        # limit of (f(u') - f(u)) / (u' - u) as u' -> u
        fprime = apply_multiplier(f, derivative_multiplier(grid.n))
        integrand[on_node] = fprime.values[on_node]
    body = grid.spacing * float(integrand.sum())

    # subtracted constant: per-image logs telescope, tail moments in closed form
    width = (2 * terms + 1) * np.pi
    const = f_u * (
        np.log((width - u) / (width + u))
        + s2 * u / np.pi
        + s4 * u * (np.pi**2 + u**2) / (4.0 * np.pi**3)
    )
    return (body + const) / np.pi
