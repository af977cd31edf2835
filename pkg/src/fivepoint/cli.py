"""Command-line front end: verification drivers, certificate replay, plot
exports, configuration round-trip, and the HTTP service launcher."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import endgame, interp, localconv, mainsearch, symcheck
from .potential import (G3, G4, G5_FLAT, G6, G10_SHARP, Potential,
                        parse_potential, potential_name, tbp_reference)


@dataclass
class RunConfig:
    """Everything a long run needs; round-trips losslessly through JSON."""

    command: str = "verify-main"
    potential: str = "g4"
    types: Tuple[int, ...] = tuple(range(8))
    budget: Optional[int] = None
    margin_log2: int = -50
    float_filter: bool = True
    pow_bits: int = 32
    certificate_path: Optional[str] = None
    checkpoint_path: Optional[str] = None
    output_path: Optional[str] = None

    def to_json(self) -> str:
        d = asdict(self)
        d["types"] = list(self.types)
        return json.dumps(d, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "RunConfig":
        d = json.loads(text)
        d["types"] = tuple(d["types"])
        return RunConfig(**d)


def _search_config(cfg: RunConfig) -> mainsearch.SearchConfig:
    return mainsearch.SearchConfig(
        potential=cfg.potential, types=cfg.types, margin_log2=cfg.margin_log2,
        budget=cfg.budget, float_filter=cfg.float_filter,
        certificate_path=cfg.certificate_path,
        checkpoint_path=cfg.checkpoint_path)


def cmd_verify_main(args) -> int:
    cfg = RunConfig(command="verify-main", potential=args.potential,
                    types=tuple(int(t) for t in args.types.split(",")),
                    budget=args.budget, float_filter=not args.no_float_filter,
                    certificate_path=args.certificate,
                    checkpoint_path=args.checkpoint,
                    margin_log2=args.margin_log2)
    scfg = _search_config(cfg)
    if args.resume:
        scfg2, stats, pending = mainsearch.load_checkpoint(args.resume)
        stats, pending = mainsearch.run_main(scfg2, pending=pending, stats=stats)
    else:
        stats, pending = mainsearch.run_main(scfg)
    print(f"potential={cfg.potential} halted={stats.halted} "
          f"processed={stats.processed} passed={stats.passed}")
    for why, n in sorted(stats.passed_by.items()):
        print(f"  passed[{why}] = {n}")
    print(f"  subdivisions = {stats.subdivisions} "
          f"confirm_failures = {stats.confirm_failures} "
          f"wall = {stats.wall_seconds:.1f}s")
    return 0 if stats.halted else 3


def cmd_verify_endgame(args) -> int:
    stats, pending = endgame.run_c2(bits=args.bits,
                                    certificate_path=args.certificate,
                                    budget=args.budget)
    print(f"endgame halted={stats.halted} steps={stats.steps} "
          f"partition={stats.passed} wall={stats.wall_seconds:.1f}s")
    for why, n in sorted(stats.passed_by.items()):
        print(f"  passed[{why}] = {n}")
    return 0 if stats.halted else 3


def cmd_check_interpolation(args) -> int:
    rep = interp.check_interpolation(args.pair, long_run=args.long)
    print(f"pair={rep.pair_id} matrix_published={rep.matrix_published} "
          f"identities={rep.matching_identities} psi_roots={rep.psi_roots_1_2}")
    for name, run in sorted(rep.coefficient_positivity.items()):
        print(f"  positivity[{name}] ok={run.ok} pieces={run.pieces}")
    for name, ta in sorted(rep.taylor.items()):
        print(f"  taylor[{name}] leading={ta.leading} "
              f"positive={ta.positive_on_quarter}")
    if rep.a222:
        print("  a222:", {k: v for k, v in rep.a222.items()
                          if not isinstance(v, list)})
    print("OK" if rep.ok else "FAILED")
    return 0 if rep.ok else 1


_LOCAL_POTENTIALS = {
    "g4": (G4, Fraction(39)),
    "g6": (G6, Fraction(39)),
    "g5flat": (G5_FLAT, Fraction(39)),
    "g10sharp": (Potential.hybrid([Fraction(c, 32) for c in
                                   (0, 68, 0, 0, 13, 0, 0, 0, 0, 1)]),
                 Fraction(39)),
    "g3": (G3, Fraction(14)),
}


def cmd_check_local(args) -> int:
    F, lam = _LOCAL_POTENTIALS[args.potential]
    caps = {"g3": (Fraction(316), Fraction(1))}.get(
        args.potential, (Fraction(45893), Fraction(38)))
    rep = localconv.m3_chain(F, lambda_bound=lam, mu3_cap=caps[0],
                             mid_cap=caps[1])
    print(f"potential={args.potential} gradient_zero={rep.gradient_zero} "
          f"char_poly_rational={rep.char_poly_rational} "
          f"lambda>{lam}={rep.lambda_ok}")
    print(f"  mu3={float(rep.mu3):.1f} mid<=cap={rep.mu_terms_ok} "
          f"tail={float(rep.tail_bound):.6g} total={float(rep.total_bound):.1f} "
          f"< 2^12*lambda={rep.chain_ok}")
    print("OK" if rep.ok else "FAILED")
    return 0 if rep.ok else 1


def cmd_check_symmetrization(args) -> int:
    fns = {"b1": symcheck.check_b1, "b2": symcheck.check_b2,
           "b3": symcheck.check_b3, "b42": symcheck.check_b42,
           "b43": symcheck.check_b43,
           "appendix": symcheck.check_appendix_b22_b23}
    rep = fns[args.lemma]()
    for k, v in vars(rep).items():
        print(f"  {k} = {v}")
    print("OK" if rep.ok else "FAILED")
    return 0 if rep.ok else 1


def cmd_check_endgame_part(part: str, args) -> int:
    if part == "c1":
        rep = endgame.check_c1()
    elif part == "c21":
        rep = endgame.check_c21_bounds()
    else:
        rep = endgame.check_c3()
    for k, v in vars(rep).items():
        print(f"  {k} = {v}")
    print("OK" if rep.ok else "FAILED")
    return 0 if rep.ok else 1


def cmd_compute_shin(args) -> int:
    br = endgame.compute_shin(args.digits)
    print(f"shin in ({br.lo}, {br.hi})")
    print(f"decimal: ({float(br.lo):.13f}, {float(br.hi):.13f}) "
          f"width={float(br.width()):.2e}")
    print(f"upper witness x = {br.witness_x}")
    ok = br.width() <= Fraction(1, 10 ** args.digits)
    return 0 if ok else 3


def cmd_replay(args) -> int:
    with open(args.certificate) as f:
        first = json.loads(f.readline())
    if len(first.get("b", [])) == 11:
        cfg = mainsearch.SearchConfig(potential=args.potential,
                                      margin_log2=args.margin_log2)
        n = mainsearch.replay_certificate(args.certificate, cfg)
    else:
        n = _replay_c2(args.certificate)
    print(f"replayed {n} records: all verified")
    return 0


def _replay_c2(path: str) -> int:
    from .endgame import FIFTEEN_PLUS, PSI4HAT, PSI4_LO, theta
    count = 0
    hat_lo, hat_hi = PSI4HAT
    with open(path) as f:
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            s_lo, s_len, x_lo, y_lo, side = (Fraction(v) for v in rec["b"])
            why = rec["why"]
            s_hi = s_lo + s_len
            if why == "irrelevant":
                ok = (s_hi <= 13 or s_lo >= FIFTEEN_PLUS
                      or x_lo + side < PSI4_LO or y_lo + side < PSI4_LO)
            elif why == "sweet-spot":
                ok = (s_lo >= 15 and hat_lo <= x_lo and x_lo + side <= hat_hi
                      and hat_lo <= y_lo and y_lo + side <= hat_hi)
            elif why == "vertices":
                penalty = s_len * s_len / 512 + side * side
                ok = all(theta(s, vx, vy, 32).lo > penalty
                         for s in (s_lo, s_hi)
                         for vx in (x_lo, x_lo + side)
                         for vy in (y_lo, y_lo + side))
            else:
                ok = False
            if not ok:
                raise ValueError(f"certificate record failed: {rec}")
            count += 1
    return count


# ----------------------------------------------------------------------------
# plot exports (sampled curves; 64-bit values from rigorous midpoints)


def sample_coefficients(pair_id: str, samples: int = 120):
    pair = interp.PAIRS[pair_id]
    M = interp.solve_lambda(pair)
    exps = [interp.coefficient_expsum(pair, i, M) for i in range(5)]
    lo, hi = pair.interval
    lo = lo if lo > 0 or pair_id == "aux" else Fraction(1, 100)
    rows = []
    for j in range(samples + 1):
        s = lo + (hi - lo) * j / samples
        if s == 0:
            continue
        rows.append([float(s)] + [e.eval_float(float(s)) for e in exps])
    return rows


def _lambda_value(pair_id: str, s: float, r: float) -> float:
    pair = interp.PAIRS[pair_id]
    M = interp.solve_lambda(pair)
    a = [interp.coefficient_expsum(pair, i, M).eval_float(s) for i in range(5)]
    basis = (None, Potential.gk(1), Potential.gk(2), pair.gamma3, pair.gamma4)
    t = 4 - r * r
    total = a[0]
    for j in range(1, 5):
        val = sum(float(c) * t ** (k + 1) for k, c in enumerate(basis[j].coeffs))
        total += a[j] * val
    return total


def sample_comparison(pair_id: str, s: float, samples: int = 200):
    """1 - Lambda_s(r)/R_s(r) over r in (0, 2]."""
    rows = []
    sign = interp.PAIRS[pair_id].sign
    for j in range(1, samples + 1):
        r = 2 * j / samples
        rs = sign * r ** (-s)
        rows.append([r, 1.0 - _lambda_value(pair_id, s, r) / rs])
    return rows


def sample_competition(pot_spec: str, samples: int = 200):
    """Energy of the diagonal family minus the reference, over the diagonal."""
    F = parse_potential(pot_spec)
    rows = []
    for j in range(samples + 1):
        t = 43 / 64 + (1 - 43 / 64) * j / samples
        a = (1 + t * t) ** 2 / (16 * t * t)
        b = (1 + t * t) / 4
        c = (1 + t * t) ** 2 / (8 * t * t)
        if F.kind == "hybrid":
            def gval(q):
                tt = 4 - 1 / q  # 4 - r^2 for r^2 = 1/q
                return sum(float(ck) * tt ** (k + 1)
                           for k, ck in enumerate(F.coeffs))
            val = (2 * gval(a) + 4 * gval(b) + 4 * gval(c)
                   - float(tbp_reference(F)))
        else:
            s = float(F.s)
            val = (2 * a ** (s / 2) + 4 * b ** (s / 2) + 4 * c ** (s / 2)
                   - (6 * 2 ** (-s / 2) + 3 * 3 ** (-s / 2) + 4 ** (-s / 2)))
        rows.append([t, val])
    return rows


def sample_transition(s_lo: float = 14.5, s_hi: float = 15.5,
                      samples: int = 100):
    """min over the diagonal of Theta(s, t, t): crosses 0 at the transition."""
    rows = []
    for j in range(samples + 1):
        s = s_lo + (s_hi - s_lo) * j / samples
        best = None
        for k in range(257):
            t = 43 / 64 + (1 - 43 / 64) * k / 256
            a = (1 + t * t) ** 2 / (16 * t * t)
            b = (1 + t * t) / 4
            c = (1 + t * t) ** 2 / (8 * t * t)
            v = (2 * a ** (s / 2) + 4 * b ** (s / 2) + 4 * c ** (s / 2)
                 - (6 * 2 ** (-s / 2) + 3 * 3 ** (-s / 2) + 4 ** (-s / 2)))
            best = v if best is None else min(best, v)
        rows.append([s, best])
    return rows


def cmd_export_plots(args) -> int:
    if args.kind == "coefficients":
        rows = sample_coefficients(args.pair)
        header = ["s", "a0", "a1", "a2", "a3", "a4"]
    elif args.kind == "comparison":
        rows = sample_comparison(args.pair, args.s)
        header = ["r", "value"]
    elif args.kind == "competition":
        rows = sample_competition(args.potential)
        header = ["t", "value"]
    else:
        rows = sample_transition()
        header = ["s", "value"]
    with open(args.out, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .server import build_app
    import uvicorn
    app = build_app()
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fivepoint",
                                description="rigorous 5-point energy toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="long verification runs")
    vs = v.add_subparsers(dest="what", required=True)
    vm = vs.add_parser("main")
    vm.add_argument("--potential", default="g4")
    vm.add_argument("--types", default="0,1,2,3,4,5,6,7")
    vm.add_argument("--budget", type=int, default=None)
    vm.add_argument("--margin-log2", type=int, default=-50)
    vm.add_argument("--no-float-filter", action="store_true")
    vm.add_argument("--certificate", default=None)
    vm.add_argument("--checkpoint", default=None)
    vm.add_argument("--resume", default=None)
    vm.set_defaults(fn=cmd_verify_main)
    ve = vs.add_parser("endgame")
    ve.add_argument("--bits", type=int, default=32)
    ve.add_argument("--budget", type=int, default=None)
    ve.add_argument("--certificate", default=None)
    ve.set_defaults(fn=cmd_verify_endgame)

    c = sub.add_parser("check", help="targeted verification checks")
    cs = c.add_subparsers(dest="what", required=True)
    ci = cs.add_parser("interpolation")
    ci.add_argument("--pair", choices=("p1", "p2", "p3", "aux"), required=True)
    ci.add_argument("--long", action="store_true")
    ci.set_defaults(fn=cmd_check_interpolation)
    cl = cs.add_parser("local")
    cl.add_argument("--potential", choices=tuple(_LOCAL_POTENTIALS), required=True)
    cl.set_defaults(fn=cmd_check_local)
    cy = cs.add_parser("symmetrization")
    cy.add_argument("--lemma", choices=("b1", "b2", "b3", "b42", "b43",
                                        "appendix"), required=True)
    cy.set_defaults(fn=cmd_check_symmetrization)
    for part in ("c1", "c21", "c3"):
        cp = cs.add_parser(part)
        cp.set_defaults(fn=lambda a, part=part: cmd_check_endgame_part(part, a))

    m = sub.add_parser("compute")
    ms = m.add_subparsers(dest="what", required=True)
    msh = ms.add_parser("shin")
    msh.add_argument("--digits", type=int, default=6)
    msh.set_defaults(fn=cmd_compute_shin)

    r = sub.add_parser("replay")
    r.add_argument("certificate")
    r.add_argument("--potential", default="g4")
    r.add_argument("--margin-log2", type=int, default=-50)
    r.set_defaults(fn=cmd_replay)

    e = sub.add_parser("export")
    es = e.add_subparsers(dest="what", required=True)
    ep = es.add_parser("plots")
    ep.add_argument("--kind", choices=("coefficients", "comparison",
                                       "competition", "transition"),
                    required=True)
    ep.add_argument("--pair", default="p1")
    ep.add_argument("--s", type=float, default=2.0)
    ep.add_argument("--potential", default="g10sharpsharp")
    ep.add_argument("--out", required=True)
    ep.set_defaults(fn=cmd_export_plots)

    s = sub.add_parser("serve")
    s.add_argument("--port", type=int, default=8777)
    s.add_argument("--host", default="127.0.0.1")
    s.set_defaults(fn=cmd_serve)
    return p


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
