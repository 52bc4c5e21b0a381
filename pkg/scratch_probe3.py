"""Dev probe: crest-angle slope structure for the synthetic cusp."""
import numpy as np

from stokeslab import DepthMode, PeriodicProfile, apply_multiplier, hilbert_multiplier, make_grid

for N in (4096, 16384):
    for A in (0.5, 2.0):
        g = make_grid(N)
        u = g.points
        eta = PeriodicProfile(g, 0.5 - A * np.abs(u) ** (2.0 / 3.0))
        h = apply_multiplier(eta, hilbert_multiplier(N)).values
        x = u - h
        y = eta.values
        y0 = 0.5  # exact crest value
        right = np.where(u > 0)[0]
        sl = (y[right] - y0) / x[right]
        # report slope at a few distances
        print(f"N={N} A={A}")
        for target in (u[right][0], 1e-3, 5e-3, 2e-2, 0.1, 0.4):
            i = np.argmin(np.abs(u[right] - target))
            s = abs(sl[i])
            ang = 180 - 2 * np.degrees(np.arctan(s))
            print(f"  u={u[right][i]:.5f} slope={s:.4f} angle_if_sym={ang:.2f}")
        mx = np.abs(sl[np.abs(u[right]) <= 0.5]).max()
        print(f"  max|slope| in window 0.5: {mx:.4f} -> angle {180-2*np.degrees(np.arctan(mx)):.2f}")
