import subprocess, sys
sys.exit(subprocess.call([sys.executable, "-m", "pytest", "-q", "-s",
    "tests/test_acceptance.py::test_local_convexity_certification",
    "tests/test_localconv.py::test_hessian_matches_finite_differences"],
    cwd="/root/pkg"))
