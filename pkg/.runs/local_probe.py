import sys, time
sys.path.insert(0, '/root/pkg/src')
from fractions import Fraction as F
import fivepoint.localconv as lc
from fivepoint.cli import _LOCAL_POTENTIALS
for name in ("g4", "g6", "g5flat", "g10sharp", "g3"):
    Fp, lam = _LOCAL_POTENTIALS[name]
    caps = {"g3": (F(316), F(1))}.get(name, (F(45893), F(38)))
    t0 = time.time()
    rep = lc.m3_chain(Fp, lambda_bound=lam, mu3_cap=caps[0], mid_cap=caps[1])
    print(name, "ok:", rep.ok, "grad0:", rep.gradient_zero, "lam:", rep.lambda_ok,
          "mu3: %.1f" % float(rep.mu3), "mid: %.4g" % float(rep.mu_mid_bound),
          "tail: %.6g" % float(rep.tail_bound), "total: %.1f" % float(rep.total_bound),
          "chain:", rep.chain_ok, "%.1fs" % (time.time()-t0), flush=True)
