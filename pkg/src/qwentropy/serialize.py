"""Text formats: CSV/JSON rendering of results and parsing of input literals.

CSV uses '.' decimals, no locale, a header row always, and 17-significant-
digit floats so values round-trip bit-exactly through text.  JSON carries
native floats (shortest round-trip representation).
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Sequence

import numpy as np

from .coin import QubitState, make_state
from .convergence import Report
from .entropy import EnsemblePrior
from .errors import BadParameter
from .evolve import Distribution


def fmt_float(x: float) -> str:
    """17-significant-digit decimal rendering (bit-exact round trip)."""
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def distribution_to_csv(dist: Distribution) -> str:
    rows = [(int(x), fmt_float(p)) for x, p in zip(dist.support, dist.probs)]
    return _csv_text(("position", "probability"), rows)


def distribution_to_json(dist: Distribution) -> dict:
    return {
        "n": int(dist.n),
        "support": [int(x) for x in dist.support],
        "probs": [float(p) for p in dist.probs],
    }


def entropy_table_to_csv(rows: Sequence[dict], variants: Sequence[str]) -> str:
    header = ["n", "alpha", "tsallis", "renyi"] + [f"conditional_{v}" for v in variants]
    out = []
    for row in rows:
        rec = [row["n"], fmt_float(row["alpha"]), fmt_float(row["tsallis"]), fmt_float(row["renyi"])]
        for v in variants:
            rec.append(fmt_float(row["conditional"][v]))
        out.append(rec)
    return _csv_text(header, out)


def limit_table_to_csv(rows: Sequence[dict], variants: Sequence[str]) -> str:
    header = ["alpha", "integral", "integral_error", "renyi_limit", "tsallis_limit"] + [
        f"conditional_{v}" for v in variants
    ]
    out = []
    for row in rows:
        rec = [
            fmt_float(row["alpha"]),
            fmt_float(row["integral"]),
            fmt_float(row["integral_error"]),
            fmt_float(row["renyi_limit"]),
            fmt_float(row["tsallis_limit"]),
        ]
        for v in variants:
            rec.append(fmt_float(row["conditional"][v]))
        out.append(rec)
    return _csv_text(header, out)


def report_to_csv(report: Report) -> str:
    rows = []
    for s in report.series:
        for n, finite, gap in zip(s.schedule, s.finite_values, s.gaps):
            rows.append((s.label, n, fmt_float(finite), fmt_float(s.limit_value), fmt_float(gap)))
    return _csv_text(("series_id", "n", "finite_value", "limit_value", "gap"), rows)


def report_to_json(report: Report) -> dict:
    return {
        "threshold": report.threshold,
        "note": report.note,
        "series": [
            {
                "label": s.label,
                "alpha": s.alpha,
                "schedule": list(s.schedule),
                "finite_values": list(s.finite_values),
                "smoothed_values": None if s.smoothed_values is None else list(s.smoothed_values),
                "limit_value": s.limit_value,
                "gaps": list(s.gaps),
            }
            for s in report.series
        ],
        "verdicts": [
            {
                "label": v.label,
                "alpha": v.alpha,
                "first_gap": v.first_gap,
                "final_gap": v.final_gap,
                "threshold": v.threshold,
                "trend": v.trend,
                "below_threshold": v.below_threshold,
                "verdict": v.verdict,
            }
            for v in report.verdicts
        ],
    }


def to_json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2, allow_nan=True) + "\n"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_complex(text: str) -> complex:
    """Parse a Python complex literal such as '0.6', '0.8j', or '0.6+0.8j'."""
    try:
        return complex(str(text).strip().replace(" ", ""))
    except ValueError as exc:
        raise BadParameter(f"cannot parse complex literal {text!r}") from exc


_NAMED_STATES = ("left", "right", "symmetric", "random")


def parse_state(text: str, rng: np.random.Generator | None = None) -> QubitState:
    """Parse 'left' | 'right' | 'symmetric' | 'random' | 'alpha,beta' into a state.

    'random' draws a Haar-uniform state and needs an ``rng``; the CLI wires
    ``--seed`` through here.
    """
    key = text.strip().lower()
    if key == "left":
        return make_state(1, 0)
    if key == "right":
        return make_state(0, 1)
    if key == "symmetric":
        s = np.sqrt(np.longdouble(2)) / 2
        return make_state(s, s * 1j)
    if key == "random":
        if rng is None:
            raise BadParameter("state 'random' requires --seed")
        from .coin import random_state

        return random_state(rng)
    parts = text.split(",")
    if len(parts) != 2:
        raise BadParameter(
            f"state must be one of {_NAMED_STATES} or 'alpha,beta' complex literals, got {text!r}"
        )
    return make_state(parse_complex(parts[0]), parse_complex(parts[1]))


def parse_ensemble(text: str) -> EnsemblePrior:
    """Parse the ensemble JSON: [{"alpha": "re+imj", "beta": "re+imj", "weight": w}, ...]."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadParameter(f"ensemble is not valid JSON: {exc}") from exc
    if not isinstance(data, list) or not data:
        raise BadParameter("ensemble JSON must be a nonempty list of entries")
    states = []
    weights = []
    for i, entry in enumerate(data):
        if not isinstance(entry, dict) or not {"alpha", "beta", "weight"} <= set(entry):
            raise BadParameter(f"ensemble entry {i} must have keys alpha, beta, weight")
        states.append(make_state(parse_complex(entry["alpha"]), parse_complex(entry["beta"])))
        weight = entry["weight"]
        if not isinstance(weight, (int, float)) or isinstance(weight, bool) or not math.isfinite(weight):
            raise BadParameter(f"ensemble entry {i} weight must be a finite number, got {weight!r}")
        weights.append(float(weight))
    return EnsemblePrior(states=tuple(states), weights=np.array(weights, dtype=np.float64))


def parse_schedule(text: str) -> tuple[int, ...]:
    """Parse a comma-separated list of step counts."""
    try:
        return tuple(int(part.strip()) for part in str(text).split(",") if part.strip())
    except ValueError as exc:
        raise BadParameter(f"cannot parse schedule {text!r}: comma-separated integers expected") from exc
