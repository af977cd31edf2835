"""HTTP/JSON backend for the hybrid-design studio.

All mathematics runs server-side; the browser only renders samples and
verdicts returned here.  Responses are pure functions of the request (the
transition bracket is cached after its first computation)."""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import endgame, interp
from .cli import (sample_coefficients, sample_comparison, sample_competition,
                  sample_transition, _lambda_value)
from .potential import Potential, parse_potential, tbp_reference


def _parse_coeff_list(entries) -> Potential:
    """[[k, 'c'], ...] with exact rational strings -> hybrid potential."""
    coeffs: Dict[int, Fraction] = {}
    for k, c in entries:
        k = int(k)
        if k < 1:
            raise ValueError("G_k indices start at 1")
        coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(str(c))
    m = max(coeffs)
    return Potential.hybrid([coeffs.get(k, Fraction(0)) for k in range(1, m + 1)])


def _custom_pair(gamma3, gamma4, lo, hi) -> interp.ForcingPair:
    return interp.ForcingPair("custom", _parse_coeff_list(gamma3),
                              _parse_coeff_list(gamma4),
                              (Fraction(str(lo)), Fraction(str(hi))))


def build_app():
    from fastapi import FastAPI, HTTPException
    from fastapi.middleware.cors import CORSMiddleware

    app = FastAPI(title="fivepoint studio backend")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    shin_cache: Dict[int, endgame.ShinBracket] = {}
    shin_lock = threading.Lock()

    def resolve_pair(body: dict) -> interp.ForcingPair:
        if "pair" in body and body["pair"]:
            pid = body["pair"]
            if pid not in interp.PAIRS:
                raise HTTPException(400, f"unknown pair {pid!r}")
            return interp.PAIRS[pid]
        try:
            return _custom_pair(body["gamma3"], body["gamma4"],
                                body.get("s_lo", "0"), body.get("s_hi", "6"))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise HTTPException(400, f"malformed hybrid spec: {exc}")

    @app.post("/hybrid/solve")
    def hybrid_solve(body: dict):
        pair = resolve_pair(body)
        try:
            M = interp.solve_lambda(pair)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        lo, hi = pair.interval
        if lo >= hi:
            raise HTTPException(400, "empty exponent interval")
        samples = int(body.get("samples", 120))
        if not (2 <= samples <= 2000):
            raise HTTPException(400, "samples out of range")
        exps = [interp.coefficient_expsum(pair, i, M) for i in range(5)]
        start = lo if lo > 0 or hi <= 0 else Fraction(1, 100)
        svals = [start + (hi - start) * j / samples for j in range(samples + 1)]
        svals = [s for s in svals if s != 0]
        curves = {f"a{i}": [exps[i].eval_float(float(s)) for s in svals]
                  for i in range(5)}
        positivity = {}
        certified = bool(body.get("certify", True))
        if certified:
            plo = start if pair.pair_id == "p1" else lo
            plo = max(plo, Fraction(1, 4)) if lo == 0 else plo
            for i in range(1, 5):
                run = interp.prove_expsum_positive(exps[i], (plo, hi))
                positivity[f"a{i}"] = {"positive": run.ok,
                                       "pieces": run.pieces,
                                       "interval": [str(plo), str(hi)]}
        return {
            "pair": pair.pair_id,
            "matrix": [[str(v) for v in row] for row in M],
            "s": [float(s) for s in svals],
            "curves": curves,
            "positivity": positivity,
        }

    @app.get("/curves")
    def curves(kind: str, s: float = 2.0, pair: str = "p1",
               samples: int = 200):
        if kind == "coefficients":
            if pair not in interp.PAIRS:
                raise HTTPException(400, f"unknown pair {pair!r}")
            rows = sample_coefficients(pair, samples)
            return {"columns": ["s", "a0", "a1", "a2", "a3", "a4"],
                    "rows": rows}
        if kind == "comparison":
            if pair not in interp.PAIRS:
                raise HTTPException(400, f"unknown pair {pair!r}")
            rows = sample_comparison(pair, s, samples)
            return {"columns": ["r", "value"], "rows": rows}
        if kind == "transition":
            return {"columns": ["s", "value"], "rows": sample_transition()}
        raise HTTPException(400, f"unknown curve kind {kind!r}")

    @app.get("/competition")
    def competition(hybrid: str, samples: int = 200):
        try:
            rows = sample_competition(hybrid, samples)
        except (ValueError, ZeroDivisionError) as exc:
            raise HTTPException(400, f"malformed hybrid spec: {exc}")
        ref = 0.0
        return {"columns": ["t", "value"], "rows": rows, "reference": ref}

    @app.get("/shin")
    def shin(digits: int = 4):
        digits = max(1, min(digits, 8))
        with shin_lock:
            if digits not in shin_cache:
                shin_cache[digits] = endgame.compute_shin(digits)
            br = shin_cache[digits]
        return {"lo": str(br.lo), "hi": str(br.hi),
                "lo_decimal": float(br.lo), "hi_decimal": float(br.hi),
                "width": float(br.width()),
                "witness_x": str(br.witness_x)}

    return app
