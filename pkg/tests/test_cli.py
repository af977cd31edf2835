import csv
import json
import os
from fractions import Fraction as F

import pytest

from fivepoint.cli import (RunConfig, dispatch, sample_coefficients,
                           sample_comparison, sample_competition,
                           sample_transition)


def test_config_roundtrip():
    cfg = RunConfig(command="verify-main", potential="g5flat", types=(1, 5),
                    budget=123, float_filter=False,
                    certificate_path="/tmp/c.jsonl")
    assert RunConfig.from_json(cfg.to_json()) == cfg


def test_dispatch_usage_error():
    with pytest.raises(SystemExit):
        dispatch(["frobnicate"])


def test_verify_main_budgeted(tmp_path):
    cp = str(tmp_path / "cp.txt")
    rc = dispatch(["verify", "main", "--potential", "g4", "--budget", "5",
                   "--checkpoint", cp])
    assert rc == 3  # aborted, resumable
    assert os.path.exists(cp)
    rc2 = dispatch(["verify", "main", "--resume", cp])
    # resuming with the stored budget keeps aborting; just confirm it runs
    assert rc2 in (0, 3)


def test_check_interpolation_p2():
    assert dispatch(["check", "interpolation", "--pair", "p2"]) == 0


def test_check_symmetrization_quick():
    assert dispatch(["check", "symmetrization", "--lemma", "b1"]) == 0
    assert dispatch(["check", "symmetrization", "--lemma", "b2"]) == 0


def test_check_c21():
    assert dispatch(["check", "c21"]) == 0


def test_replay_roundtrip(tmp_path):
    from fivepoint.mainsearch import SCALE
    cert = str(tmp_path / "cert.jsonl")
    region = (SCALE * 7 // 8, SCALE // 16,
              -SCALE // 16, -SCALE * 13 // 16, SCALE // 16,
              -SCALE * 7 // 8, 0, SCALE // 16,
              0, SCALE * 3 // 4, SCALE // 16)
    from fivepoint.mainsearch import SearchConfig, run_main
    run_main(SearchConfig(potential="g10sharpsharp", certificate_path=cert),
             pending=[region])
    assert dispatch(["replay", cert, "--potential", "g10sharpsharp"]) == 0


def test_export_plots(tmp_path):
    out = str(tmp_path / "coeff.csv")
    assert dispatch(["export", "plots", "--kind", "coefficients",
                     "--pair", "p1", "--out", out]) == 0
    with open(out) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["s", "a0", "a1", "a2", "a3", "a4"]
    assert len(rows) > 100
    # a0 column equals 4^(-s/2)
    for row in rows[1:10]:
        s, a0 = float(row[0]), float(row[1])
        assert abs(a0 - 4 ** (-s / 2)) < 1e-9


def test_comparison_vanishes_at_interpolation_nodes():
    rows = sample_comparison("p1", 2.0, samples=400)
    vals = {round(r, 4): v for r, v in rows}
    for node in (2 ** 0.5, 3 ** 0.5, 2.0):
        close = min(rows, key=lambda rv: abs(rv[0] - node))
        assert abs(close[1]) < 5e-3
    # nonnegative on the sampled range (the forcing property at s = 2)
    assert min(v for _, v in rows) > -1e-9


def test_competition_curves():
    rows = sample_competition("g10sharpsharp")
    assert min(v for _, v in rows) > 0  # TBP wins under this judge
    rows2 = sample_competition("g2")
    assert min(v for _, v in rows2) > 0  # TBP never loses under G2
    rows10 = sample_competition("g10")
    assert min(v for _, v in rows10) < 0  # TBP loses under G10 somewhere


def test_transition_curve_crosses_near_shin():
    rows = sample_transition(15.0, 15.1, samples=50)
    before = [v for s, v in rows if s < 15.048]
    after = [v for s, v in rows if s > 15.0482]
    assert min(before) > 0 and min(after) < 0


def test_server_endpoints():
    from fastapi.testclient import TestClient
    from fivepoint.server import build_app
    client = TestClient(build_app())
    r = client.post("/hybrid/solve", json={"pair": "p1", "certify": False})
    assert r.status_code == 200
    body = r.json()
    assert F(body["matrix"][0][2]) == 1  # a0 row: 4^(-s/2)
    assert len(body["s"]) == len(body["curves"]["a1"])
    r2 = client.post("/hybrid/solve",
                     json={"gamma3": [[4, "1"]], "gamma4": [[6, "1"]],
                           "s_lo": "1", "s_hi": "6", "certify": False})
    assert r2.status_code == 200
    bad = client.post("/hybrid/solve", json={"gamma3": [[0, "x"]],
                                             "gamma4": []})
    assert bad.status_code == 400
    r3 = client.get("/curves", params={"kind": "comparison", "s": 2.0,
                                       "pair": "p1"})
    assert r3.status_code == 200 and len(r3.json()["rows"]) > 10
    r4 = client.get("/competition", params={"hybrid": "g2"})
    assert r4.status_code == 200
    assert min(v for _, v in r4.json()["rows"]) > 0
    bad2 = client.get("/competition", params={"hybrid": "wat"})
    assert bad2.status_code == 400
    r5 = client.get("/shin", params={"digits": 2})
    assert r5.status_code == 200
    lo, hi = F(r5.json()["lo"]), F(r5.json()["hi"])
    assert lo < F("15.0480773927797") < hi


def test_server_idempotent_solves():
    from fastapi.testclient import TestClient
    from fivepoint.server import build_app
    client = TestClient(build_app())
    body = {"gamma3": [[5, "1"], [1, "-25"]], "gamma4": [[10, "1"], [2, "68"],
            [5, "13"]], "s_lo": "13", "s_hi": "15", "certify": False}
    r1 = client.post("/hybrid/solve", json=body).json()
    r2 = client.post("/hybrid/solve", json=body).json()
    assert r1 == r2
