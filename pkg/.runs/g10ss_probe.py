import sys, time
sys.path.insert(0, '/root/pkg/src')
from fivepoint.mainsearch import SearchConfig, run_main
cfg = SearchConfig(potential="g10sharpsharp",
                   certificate_path="/root/pkg/.runs/g10ss_cert.jsonl",
                   checkpoint_path="/root/pkg/.runs/g10ss_cp.txt",
                   checkpoint_every=200000)
t0 = time.time()
stats, pending = run_main(cfg)
print("HALTED" if stats.halted else "ABORTED")
print("processed:", stats.processed)
print("passed:", stats.passed)
print("passed_by:", stats.passed_by)
print("subdivisions:", stats.subdivisions)
print("confirm_failures:", stats.confirm_failures)
print("wall: %.1f s" % (time.time() - t0))
