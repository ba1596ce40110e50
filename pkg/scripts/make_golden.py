#!/usr/bin/env python3
"""Regenerate tests/golden/limits_hadamard.json.

Two kinds of pinned numbers:

- ``limits``: integrals of density powers and the limiting entropy constants,
  from an independent high-precision oracle (mpmath tanh-sinh quadrature on
  the angle-substituted integral at 40 significant digits) — NOT from the
  package's own quadrature.  The angle form removes the endpoint square-root
  singularity analytically, so the oracle converges cleanly; its values were
  cross-checked against Gauss-Jacobi quadrature with the endpoint weight
  built into the rule and against scipy's QAWS algorithm, all three agreeing
  to ~1e-12 or better.
- ``stats_evolve``: finite-n centered statistics computed through the direct
  evolution route, pinning the closed-form route used by the series builders.

Run from the repository root:  python3 scripts/make_golden.py
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import mpmath as mp

from qwentropy import make_state, named_coin, renyi, run, tsallis

mp.mp.dps = 40

COIN = named_coin("hadamard")
STATES = {
    "sym": make_state(2**-0.5, 1j * 2**-0.5),  # drift 0
    "left": make_state(1, 0),  # drift 1
}
DRIFTS = {"sym": 0.0, "left": 1.0}
ORDERS = (0.5, 1.5)
STAT_NS = (256, 512)


def oracle_integral(alpha: float, a2, drift) -> mp.mpf:
    """integral of f^alpha via x = |a| sin(theta); the square-root endpoint
    factor becomes |a| cos(theta) and cancels analytically."""
    a, b = mp.sqrt(a2), mp.sqrt(1 - a2)
    alpha = mp.mpf(alpha)

    def g(t):
        x = a * mp.sin(t)
        base = b * (1 - drift * x) / (mp.pi * (1 - x * x))
        return base**alpha * (a * mp.cos(t)) ** (1 - alpha)

    return mp.re(mp.quad(g, [-mp.pi / 2, mp.pi / 2]))


def main() -> None:
    a2 = mp.mpf(1) / 2
    limits: dict = {}
    for state_key, drift in DRIFTS.items():
        limits[state_key] = {}
        for alpha in ORDERS:
            value = oracle_integral(alpha, a2, mp.mpf(drift))
            r = mp.log(value, 2) / (1 - mp.mpf(alpha))
            t = (value - 1) / (1 - mp.mpf(alpha))
            limits[state_key][str(alpha)] = {
                "integral": float(value),
                "renyi": float(r),
                "tsallis": float(t),
                "integral_str": mp.nstr(value, 25),
            }

    stats: dict = {"renyi": {}, "tsallis": {}}
    for alpha in ORDERS:
        stats["renyi"][str(alpha)] = {}
        stats["tsallis"][str(alpha)] = {}
        for n in STAT_NS:
            dist = run(COIN, STATES["sym"], n)
            half = math.log2(n / 2.0)
            stats["renyi"][str(alpha)][str(n)] = renyi(dist, alpha) - half
            scale = (n / 2.0) ** (1.0 - alpha)
            const = 1.0 / (1.0 - alpha)
            stats["tsallis"][str(alpha)][str(n)] = (tsallis(dist, alpha) + const) / scale - const

    payload = {
        "comment": "regenerate with scripts/make_golden.py; limits from the "
        "independent mpmath oracle, stats_evolve from the direct evolution route",
        "coin": "hadamard",
        "limits": limits,
        "stats_evolve": stats,
    }
    out = Path(__file__).resolve().parent.parent / "tests" / "golden" / "limits_hadamard.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
