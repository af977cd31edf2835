import subprocess, sys
cmd = [sys.executable, "-m", "pytest", "-q", "-s",
       "tests/test_acceptance.py::test_endgame_verification_halts",
       "tests/test_acceptance.py::test_compute_shin_six_digits",
       "tests/test_acceptance.py::test_b43_pipeline_counts",
       "tests/test_acceptance.py::test_interpolation_matrices_and_positivity",
       "tests/test_acceptance.py::test_lemma_e_monte_carlo_10k",
       "tests/test_localconv.py",
      ]
sys.exit(subprocess.call(cmd, cwd="/root/pkg"))
