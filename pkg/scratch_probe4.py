"""Dev probe: full deep-water branch at N=1024 - steepness, trends, timing."""
import time

import numpy as np

from stokeslab import DepthMode, make_grid, profile_from_cosines
from stokeslab.babenko import SolverConfig, WaveState, newton_solve, physical_surface, crest_trough_height
from stokeslab.continuation import continue_branch

t0 = time.time()
N = 1024
g = make_grid(N)
deep = DepthMode.infinite()
cfg = SolverConfig(n=N, newton_tol=1e-11, max_iters=30)

s0 = 0.002
seed = newton_solve(WaveState(profile_from_cosines(g, [0.0, s0 / 2]), 1.0, deep), cfg, height=s0)
branch = continue_branch(seed, 0.95, cfg)
t1 = time.time()
print(f"branch: {len(branch)} states, stop={branch.stop_reason}, truncated={branch.truncated}, {t1-t0:.1f}s")


def beta_fit(entry, lo, hi):
    st = entry.state
    u = st.grid.points
    dev = 0.5 * st.speed**2 - st.profile.values
    m = (np.abs(u) >= lo) & (np.abs(u) <= hi) & (dev > 0)
    X = np.vstack([np.log(np.abs(u[m])), np.ones(m.sum())]).T
    coef, *_ = np.linalg.lstsq(X, np.log(dev[m]), rcond=None)
    return coef[0]


du = g.spacing
for e in branch.entries[:: max(1, len(branch) // 15)] + branch.entries[-5:]:
    ang = physical_surface(e.state, angle_window=0.1).crest_angle_deg
    b_def = beta_fit(e, 10 * du, 0.1)
    b_alt = beta_fit(e, 0.05, 0.3)
    print(
        f"s={e.height:.5f} c={e.state.speed:.8f} res={e.diagnostics.residual_norm:.2e} "
        f"tail={e.diagnostics.tail_fraction:.2e} gap={e.diagnostics.crest_gap:.5f} "
        f"angle={ang:7.2f} beta(10du,0.1)={b_def:.4f} beta(.05,.3)={b_alt:.4f}"
    )
print("total", time.time() - t0, "s")
