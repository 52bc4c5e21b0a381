"""Dev probe: Babenko residual/Jacobian/Newton sanity."""
import numpy as np

from stokeslab import DepthMode, PeriodicProfile, make_grid, profile_from_cosines
from stokeslab.babenko import (
    SolverConfig,
    WaveState,
    deviation,
    diagnose,
    fixed_point_map,
    jacobian_apply,
    newton_solve,
    physical_surface,
    residual,
    crest_trough_height,
    SingularJacobianError,
)

g = make_grid(256)
deep = DepthMode.infinite()

# residual of eps*cos(u) at c=1: expect -eps^2 (1 + 2 cos 2u)/2
eps = 0.01
st = WaveState(PeriodicProfile.sample(g, lambda u: eps * np.cos(u)), 1.0, deep)
r = residual(st)
expect = -(eps**2) * (1.0 + 2.0 * np.cos(2 * g.points)) / 2.0
print("residual example err:", np.abs(r.values - expect).max())

# fixed-point identity: dev - T dev == residual(c^2/2 - dev)
rng = np.random.default_rng(0)
coeffs = rng.standard_normal(12) * 0.05
dev = profile_from_cosines(g, np.concatenate([[0.7], coeffs]))
c = 1.3
lhs = dev.values - fixed_point_map(dev, c).values
st2 = WaveState(PeriodicProfile(g, 0.5 * c**2 - dev.values), c, deep)
rhs = residual(st2).values
print("fixed-point identity err:", np.abs(lhs - rhs).max())

# jacobian vs central FD
eta = profile_from_cosines(g, np.concatenate([[0.01], 0.05 * rng.standard_normal(20)]))
st3 = WaveState(eta, 1.1, deep)
d = profile_from_cosines(g, 0.03 * rng.standard_normal(24))
jd = jacobian_apply(st3, d).values
h = 1e-6
rp = residual(WaveState(PeriodicProfile(g, eta.values + h * d.values), 1.1, deep)).values
rm = residual(WaveState(PeriodicProfile(g, eta.values - h * d.values), 1.1, deep)).values
fd = (rp - rm) / (2 * h)
print("jacobian FD rel err:", np.abs(jd - fd).max() / np.abs(fd).max())

# newton fixed-height at the foot
cfg = SolverConfig(n=256)
s = 0.002
init = WaveState(profile_from_cosines(g, [0.0, s / 2]), 1.0, deep)
sol = newton_solve(init, cfg, height=s)
dg = diagnose(sol)
print("foot solve: c =", sol.speed, "resid:", dg.residual_norm, "mz:", dg.mean_zero_value,
      "height err:", crest_trough_height(sol.profile) - s)

# trivial solve fixed speed 0.5 at N=8
g8 = make_grid(8)
st0 = WaveState(PeriodicProfile(g8, np.zeros(8)), 0.5, deep)
sol0 = newton_solve(st0, SolverConfig(n=8))
print("trivial solve max|eta|:", np.abs(sol0.profile.values).max())

# singular at bifurcation
try:
    newton_solve(WaveState(PeriodicProfile(g8, np.zeros(8)), 1.0, deep), SolverConfig(n=8))
    print("BUG: no singular error")
except SingularJacobianError as e:
    print("singular at c=1:", type(e).__name__)

# physical surface of a*cos u
a0 = 0.1
sta = WaveState(PeriodicProfile.sample(g, lambda u: a0 * np.cos(u)), 1.0, deep)
surf = physical_surface(sta)
print("x err:", np.abs(surf.x - (g.points + a0 * np.sin(g.points))).max(),
      "angle:", surf.crest_angle_deg)

# flat surface
stf = WaveState(PeriodicProfile(g, np.zeros(256)), 1.0, deep)
print("flat angle:", physical_surface(stf).crest_angle_deg)

# synthetic cusp: eta = c^2/2 - A|u|^{2/3}
from stokeslab import sample_power
g4 = make_grid(4096)
A = 0.5
cc = 1.0
cusp = PeriodicProfile(g4, 0.5 * cc**2 - A * np.abs(g4.points) ** (2.0 / 3.0))
stc = WaveState(cusp, cc, deep)
for w in (0.5, 0.2, 0.05, 0.02):
    print(f"cusp angle (window {w}):", physical_surface(stc, angle_window=w).crest_angle_deg)
