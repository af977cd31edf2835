#!/usr/bin/env python3
"""Regenerate every CSV the studio compares against, into plots/."""

import os

from fivepoint.cli import dispatch


def main():
    os.makedirs("plots", exist_ok=True)
    for pair in ("p1", "p2", "p3"):
        dispatch(["export", "plots", "--kind", "coefficients", "--pair", pair,
                  "--out", f"plots/coefficients-{pair}.csv"])
        dispatch(["export", "plots", "--kind", "comparison", "--pair", pair,
                  "--s", "2.0", "--out", f"plots/comparison-{pair}.csv"])
    for pot in ("g2", "g10", "g10sharpsharp"):
        dispatch(["export", "plots", "--kind", "competition", "--potential",
                  pot, "--out", f"plots/competition-{pot}.csv"])
    dispatch(["export", "plots", "--kind", "transition",
              "--out", "plots/transition.csv"])


if __name__ == "__main__":
    main()
