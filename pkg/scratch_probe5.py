"""Dev probe: exponents and fits - all acceptance-relevant numbers."""
import time

import numpy as np

from stokeslab.exponents import find_exponents, grant_lhs, predicted_action_coefficient
from stokeslab.fits import (
    cancellation_check,
    crest_fit,
    lemma_remainder_report,
    log_case_check,
    measured_action_coefficient,
)
from stokeslab.grids import PeriodicProfile, make_grid

t0 = time.time()
r = find_exponents()
print(f"beta_root={r.beta_root!r} err={abs(r.beta_root - 2/3):.2e}")
print(f"grant_roots={r.grant_roots} below_half={r.beta_roots_below_half}")
print(f"grant_lhs(2/3)={grant_lhs(2/3):.3e}  grant_lhs(1.469)={grant_lhs(1.469):.4f}")
print(f"[exponents {time.time()-t0:.2f}s]")

t0 = time.time()
for p in (1/3, 1/2, 2/3, 4/3, 5/3):
    pred = predicted_action_coefficient(p)
    meas = measured_action_coefficient(p, 16384)
    print(f"p={p:.4f} pred={pred:+.6f} meas={meas:+.6f} rel_err={abs(meas-pred)/abs(pred):.2%}")
rep = log_case_check(16384)
print(f"log case: a={rep.log_coefficient:.6f} (2/pi={2/np.pi:.6f}) rel="
      f"{abs(rep.log_coefficient-2/np.pi)/(2/np.pi):.2%} quad_log={rep.quadratic_log_coefficient:.2e}")
rep2 = log_case_check(16384, (10*2*np.pi/16384, 0.05))
print(f"log case half window: rel={abs(rep2.log_coefficient-2/np.pi)/(2/np.pi):.2%}")
print(f"[action {time.time()-t0:.2f}s]")

t0 = time.time()
for nu in (1/3, 1/2, 2/3):
    for signed in (False, True):
        rep = lemma_remainder_report(nu, signed, 1.0, [2048, 8192, 32768])
        print(f"nu={nu:.3f} signed={signed}: sups={[f'{s:.4f}' for s in rep.remainder_sup]} "
              f"ratio={rep.convergence_ratio:.3f} dd={[f'{d:.2f}' for d in rep.divided_diff_sup]}")
print(f"[lemma {time.time()-t0:.2f}s]")

t0 = time.time()
for A in (1.0, 2.0):
    rep = cancellation_check(A, 16384)
    exp = rep.expected_magnitude
    print(f"A={A}: prod={rep.product_coefficient:+.5f} (exp {-exp:+.5f}, "
          f"{abs(rep.product_coefficient+exp)/exp:.2%}) half={rep.half_square_coefficient:+.5f} "
          f"({abs(rep.half_square_coefficient-exp)/exp:.2%}) sum={rep.sum_coefficient:+.2e} "
          f"({abs(rep.sum_coefficient)/exp:.3%})")
print(f"[cancel {time.time()-t0:.2f}s]")

t0 = time.time()
g = make_grid(8192)
u = g.points
prof = PeriodicProfile(g, 0.5 - 2.0 * np.abs(u) ** (2/3))
fit = crest_fit(prof, 1.0)
print(f"pure: A={fit.A!r} beta={fit.beta!r} errs=({abs(fit.A-2):.2e},{abs(fit.beta-2/3):.2e}) rms={fit.rms_residual:.2e}")
prof2 = PeriodicProfile(g, 0.5 - np.abs(u) ** (2/3) - 0.5 * np.abs(u) ** 1.469)
fit2 = crest_fit(prof2, 1.0, subleading=True)
print(f"two-term: beta={fit2.beta:.6f} (err {abs(fit2.beta-2/3):.2e}) mu={fit2.mu} "
      f"(err {abs(fit2.mu-1.469):.2e}) B={fit2.B:.4f} ok={fit2.subleading_converged}")
# scale consistency
lam = 3.7
prof3 = PeriodicProfile(g, 0.5 - lam**(2/3) * 2.0 * np.abs(u) ** (2/3))
fit3 = crest_fit(prof3, 1.0)
print(f"scaled: A ratio={fit3.A / fit.A / lam**(2/3)!r} beta={fit3.beta!r}")
print(f"[crest {time.time()-t0:.2f}s]")
