import sys, time
sys.path.insert(0, '/root/pkg/src')
from fivepoint.endgame import run_c2, compute_shin
t0 = time.time()
stats, pending = run_c2(certificate_path="/root/pkg/.runs/c2_cert.jsonl")
print("halted:", stats.halted, "steps:", stats.steps, "partition:", stats.passed)
print("passed_by:", stats.passed_by)
print("wall: %.1f s" % (time.time() - t0))
t0 = time.time()
br = compute_shin(6)
print("shin bracket:", float(br.lo), float(br.hi), "width:", float(br.width()))
print("contains 15.0480773927797:", br.contains_decimal())
print("witness x:", br.witness_x, "segments:", br.positive_segments)
print("shin wall: %.1f s" % (time.time() - t0))
