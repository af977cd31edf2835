import sys, time
sys.path.insert(0, '/root/pkg/src')
from fivepoint.symcheck import _b4_phi, check_b43
t0 = time.time()
phi = _b4_phi(6, -1)
print("phi terms:", len(phi), "build %.1fs" % (time.time()-t0))
t0 = time.time()
rep = check_b43(phi)
print("counts:", rep.phi_terms, rep.minus_one_monomials, rep.psi_terms,
      "expected", rep.expected)
print("divisible:", rep.divisible_ok, "psi_aaa_wpd:", rep.psi_aaa_wpd,
      "battery:", rep.battery_ok, "final:", rep.final_ok, "%.1fs" % (time.time()-t0))
