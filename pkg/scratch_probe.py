"""Dev probe: pv-quadrature accuracy vs symbol Hilbert transform."""
import numpy as np

from stokeslab import (
    PeriodicProfile,
    apply_multiplier,
    hilbert_multiplier,
    hilbert_pv_quadrature,
    make_grid,
    sample_power,
)

rng = np.random.default_rng(42)

# 1) cos at u=0.7, N=512, terms=64 -> -sin(0.7), tol 1e-6
g = make_grid(512)
f = PeriodicProfile.sample(g, np.cos)
got = hilbert_pv_quadrature(f, 0.7, 64)
print("cos@0.7 terms=64:", got, "exact:", -np.sin(0.7), "err:", abs(got + np.sin(0.7)))

# constant
c = PeriodicProfile(g, np.ones(512))
print("const@0.3 terms=64:", hilbert_pv_quadrature(c, 0.3, 64))

# 2) random trig poly degree <= N/4, compare at several points vs symbol form
deg = 128
a = rng.standard_normal(deg + 1)
b = rng.standard_normal(deg + 1)
a /= np.abs(a).sum() ** 0  # keep O(1) coefficients
u_pts = g.points


def trig(u):
    ks = np.arange(deg + 1)
    return (a[None, :] * np.cos(np.outer(u, ks)) + b[None, :] * np.sin(np.outer(u, ks))).sum(axis=1)


fp = PeriodicProfile(g, trig(u_pts))
hf = apply_multiplier(fp, hilbert_multiplier(512))
for terms in (8, 16, 32, 64, 128, 256, 512):
    errs = []
    for idx in (10, 100, 200, 256, 300, 400, 500):
        got = hilbert_pv_quadrature(fp, float(u_pts[idx]), terms)
        errs.append(abs(got - hf.values[idx]))
    # off-grid points too
    for uo in (-2.5, -1.1, 0.33, 0.7, 2.9):
        got = hilbert_pv_quadrature(fp, uo, terms)
        ref = float(np.interp(0, [0], [0]))  # placeholder
        # reference via symbol interpolation
        ref = float(hf.interpolate(uo))
        errs.append(abs(got - ref))
    print(f"terms={terms:4d} max err = {max(errs):.3e}")

# 3) singular profile |u|^{-1/3} cross-check at nearest grid point to 0.5
fs = sample_power(-1.0 / 3.0, g)
hs = apply_multiplier(fs, hilbert_multiplier(512))
idx = int(np.argmin(np.abs(u_pts - 0.5)))
got = hilbert_pv_quadrature(fs, float(u_pts[idx]), 64)
print("singular@~0.5:", got, "symbol:", hs.values[idx], "err:", abs(got - hs.values[idx]))
