#!/usr/bin/env python3
"""Hunt transition-exponent digits: print nested brackets at increasing
precision, with wall times."""

import argparse
import time

from fivepoint.endgame import compute_shin


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-digits", type=int, default=8)
    args = ap.parse_args()
    for digits in range(1, args.max_digits + 1):
        t0 = time.time()
        br = compute_shin(digits)
        print(f"digits={digits}: ({float(br.lo):.14f}, {float(br.hi):.14f}) "
              f"width={float(br.width()):.2e} [{time.time()-t0:.1f}s]")


if __name__ == "__main__":
    main()
