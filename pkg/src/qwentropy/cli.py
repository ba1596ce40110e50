"""Command line interface: a thin client over the operation layer.

Runs in-process by default; ``--server URL`` posts the same request models to
a running service instead.  Exit codes: 0 success, 2 invalid input or config,
3 numeric/runtime failure, 4 divergent integral (order outside the convergent
range).  Diagnostics go to stderr; stdout carries data only with ``--out -``.

An optional JSON config file (``--config``) supplies any long-flag value by
its flag name (``{"coin": "hadamard", "alpha": [0.5, 2]}``); explicit flags
override the file.  The environment variable ``QWENTROPY_OUT_DIR`` prefixes
relative output paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from . import errors as _errors
from .convergence import DEFAULT_THRESHOLD, ConvergenceSeries, Report, SeriesVerdict
from .errors import BadParameter, DivergentIntegral, InputError, NumericError
from .evolve import Distribution
from .serialize import (
    distribution_to_csv,
    distribution_to_json,
    entropy_table_to_csv,
    limit_table_to_csv,
    parse_schedule,
    report_to_csv,
    report_to_json,
    to_json_text,
)
from .service import ops
from .service.models import (
    CoinSpec,
    ConvergeRequest,
    ConvergeResponse,
    EntropyRequest,
    EntropyResponse,
    LimitRequest,
    LimitResponse,
    SimulateRequest,
    SimulateResponse,
    StateSpec,
)

_OUT_DIR_ENV = "QWENTROPY_OUT_DIR"
_HTTP_TIMEOUT = 600.0

_DEFAULTS: dict[str, Any] = {
    "coin": None,
    "a": None,
    "b": None,
    "delta": "1",
    "state": None,
    "ensemble": None,
    "alpha": None,
    "n": None,
    "schedule": None,
    "method": "evolve",
    "variant": None,
    "statistic": None,
    "threshold": DEFAULT_THRESHOLD,
    "parity_average": True,
    "out": "-",
    "format": "csv",
    "jobs": 1,
    "seed": None,
    "server": None,
    "config": None,
    "host": "127.0.0.1",
    "port": 8000,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_coin_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--coin", help="named coin: 'hadamard' or 'rotation(<angle>)'")
    p.add_argument("--a", help="coin entry a as a complex literal (with --b)")
    p.add_argument("--b", help="coin entry b as a complex literal (with --a)")
    p.add_argument("--delta", help="coin determinant, unit-modulus complex literal (default 1)")


def _add_state_flags(p: argparse.ArgumentParser, ensemble: bool) -> None:
    p.add_argument(
        "--state", help="initial state: 'left' | 'right' | 'symmetric' | 'random' | 'alpha,beta'"
    )
    if ensemble:
        p.add_argument(
            "--ensemble",
            help="ensemble of initial states: JSON file path or inline JSON "
            '[{"alpha": "...", "beta": "...", "weight": w}, ...]',
        )


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output path, or '-' for stdout (default '-')")
    p.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    p.add_argument("--jobs", type=int, help="worker pool size for independent per-n tasks")
    p.add_argument("--seed", type=int, help="seed for random coin/state sampling")
    p.add_argument("--config", help="JSON config file; explicit flags override it")
    p.add_argument("--server", help="base URL of a running service; default runs in-process")


def _add_schedule_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", action="append", type=int, help="step count (repeatable)")
    p.add_argument("--schedule", help="comma-separated step counts, e.g. 128,256,512")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwentropy",
        description="Quantum-walk position distributions, entropies, and limit checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="position distribution after n steps")
    _add_coin_flags(p)
    _add_state_flags(p, ensemble=False)
    _add_schedule_flags(p)
    p.add_argument("--method", choices=["evolve", "closedform"], help="computation route")
    _add_io_flags(p)

    p = sub.add_parser("entropy", help="tsallis/renyi (and conditional) entropy table")
    _add_coin_flags(p)
    _add_state_flags(p, ensemble=True)
    _add_schedule_flags(p)
    p.add_argument("--alpha", action="append", help="entropy order (repeatable)")
    p.add_argument("--variant", action="append", help="conditional variant C|JA|RW|A|H (repeatable)")
    p.add_argument("--method", choices=["evolve", "closedform"], help="computation route")
    _add_io_flags(p)

    p = sub.add_parser("limit", help="limiting constants from the weak-limit density")
    _add_coin_flags(p)
    _add_state_flags(p, ensemble=True)
    p.add_argument("--alpha", action="append", help="entropy order (repeatable)")
    p.add_argument("--variant", action="append", help="conditional variant C|JA|RW|A|H (repeatable)")
    _add_io_flags(p)

    p = sub.add_parser("converge", help="finite-n statistics against their limits")
    _add_coin_flags(p)
    _add_state_flags(p, ensemble=True)
    _add_schedule_flags(p)
    p.add_argument("--alpha", action="append", help="entropy order (repeatable)")
    p.add_argument("--variant", action="append", help="conditional variant C|JA|RW|A|H (repeatable)")
    p.add_argument(
        "--statistic", action="append", choices=["renyi", "tsallis"], help="statistic family (repeatable)"
    )
    p.add_argument("--threshold", type=float, help="final-gap verdict threshold (default 0.05)")
    p.add_argument(
        "--no-parity-average",
        dest="parity_average",
        action="store_const",
        const=False,
        help="skip the even/odd smoothed column",
    )
    _add_io_flags(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", help="bind address (default 127.0.0.1)")
    p.add_argument("--port", type=int, help="bind port (default 8000)")
    p.add_argument("--config", help="JSON config file; explicit flags override it")

    return parser


# ---------------------------------------------------------------------------
# Config merge
# ---------------------------------------------------------------------------


def _load_config(path: Optional[str]) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise BadParameter(f"cannot read config file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise BadParameter(f"config file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise BadParameter(f"config file {path!r} must hold a JSON object")
    unknown = sorted(set(data) - set(_DEFAULTS))
    if unknown:
        raise BadParameter(f"unknown config keys {unknown}")
    return data


def _effective(args: argparse.Namespace) -> dict[str, Any]:
    """defaults < config file < explicit flags."""
    flags = {k: v for k, v in vars(args).items() if k != "command" and v is not None}
    cfg = dict(_DEFAULTS)
    cfg.update(_load_config(flags.get("config") or None))
    cfg.update(flags)
    return cfg


def _as_list(value: Any) -> list:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def _parse_orders(cfg: dict[str, Any]) -> list[float]:
    raw = _as_list(cfg["alpha"])
    if not raw:
        raise BadParameter("need at least one --alpha")
    orders = []
    for item in raw:
        try:
            orders.append(float(item))
        except (TypeError, ValueError) as exc:
            raise BadParameter(f"cannot parse order {item!r} as a number") from exc
    return orders


def _parse_cli_schedule(cfg: dict[str, Any], required: bool) -> Optional[list[int]]:
    ns = [int(n) for n in _as_list(cfg["n"])]
    if not ns and cfg["schedule"] is not None:
        raw = cfg["schedule"]
        ns = [int(n) for n in raw] if isinstance(raw, (list, tuple)) else list(parse_schedule(raw))
        if not ns:
            raise BadParameter("schedule is empty")
    if not ns:
        if required:
            raise BadParameter("need step counts: --n (repeatable) or --schedule")
        return None
    return ns


def _coin_spec(cfg: dict[str, Any]) -> CoinSpec:
    return CoinSpec(
        name=cfg["coin"],
        a=None if cfg["a"] is None else str(cfg["a"]),
        b=None if cfg["b"] is None else str(cfg["b"]),
        delta=str(cfg["delta"]),
    )


def _state_spec(cfg: dict[str, Any]) -> Optional[StateSpec]:
    raw = cfg["state"]
    if raw is None:
        return None
    text = str(raw)
    if "," in text:
        alpha, _, beta = text.partition(",")
        return StateSpec(alpha=alpha, beta=beta)
    return StateSpec(name=text)


def _ensemble_entries(cfg: dict[str, Any]) -> Optional[list[dict[str, Any]]]:
    raw = cfg["ensemble"]
    if raw is None:
        return None
    if isinstance(raw, str):
        text = raw.strip()
        if not text.startswith("["):
            try:
                text = Path(text).read_text()
            except OSError as exc:
                raise BadParameter(f"cannot read ensemble file {raw!r}: {exc}") from exc
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BadParameter(f"ensemble is not valid JSON: {exc}") from exc
    if not isinstance(raw, list) or not raw:
        raise BadParameter("ensemble must be a nonempty JSON list of entries")
    entries = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or not {"alpha", "beta", "weight"} <= set(entry):
            raise BadParameter(f"ensemble entry {i} must have keys alpha, beta, weight")
        entries.append(
            {"alpha": str(entry["alpha"]), "beta": str(entry["beta"]), "weight": entry["weight"]}
        )
    return entries


# ---------------------------------------------------------------------------
# Transport: in-process by default, HTTP with --server
# ---------------------------------------------------------------------------

_EXIT_BY_STATUS = {422: 2, 400: 4}


class _Client:
    def __init__(self, server: Optional[str]):
        self.server = server.rstrip("/") if server else None

    def _post(self, name: str, request, response_model):
        import httpx

        resp = httpx.post(
            f"{self.server}/v1/{name}",
            json=request.model_dump(mode="json"),
            timeout=_HTTP_TIMEOUT,
        )
        if resp.status_code != 200:
            try:
                body = resp.json()
            except ValueError:
                body = {}
            name_ = str(body.get("error", ""))
            detail = body.get("detail", resp.text)
            cls = getattr(_errors, name_, None)
            if not (isinstance(cls, type) and issubclass(cls, Exception)):
                fallback = {422: BadParameter, 400: DivergentIntegral}
                cls = fallback.get(resp.status_code, NumericError)
            raise cls(str(detail))
        return response_model.model_validate(resp.json())

    def simulate(self, req: SimulateRequest) -> SimulateResponse:
        if self.server:
            return self._post("simulate", req, SimulateResponse)
        return ops.run_simulate(req)

    def entropy(self, req: EntropyRequest) -> EntropyResponse:
        if self.server:
            return self._post("entropy", req, EntropyResponse)
        return ops.run_entropy(req)

    def limit(self, req: LimitRequest) -> LimitResponse:
        if self.server:
            return self._post("limit", req, LimitResponse)
        return ops.run_limit(req)

    def converge(self, req: ConvergeRequest) -> ConvergeResponse:
        if self.server:
            return self._post("converge", req, ConvergeResponse)
        return ops.run_converge(req)


def _fan_out(worker, items: Sequence, jobs: int) -> list:
    """Map preserving order; a pool only when it can actually help."""
    if jobs <= 1 or len(items) <= 1:
        return [worker(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, items))


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _resolve_out(path: str) -> Optional[Path]:
    if path == "-":
        return None
    p = Path(path)
    out_dir = os.environ.get(_OUT_DIR_ENV)
    if out_dir and not p.is_absolute():
        p = Path(out_dir) / p
    return p


def _write(text: str, target: Optional[Path]) -> None:
    if target is None:
        sys.stdout.write(text)
        return
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)
    print(f"wrote {target}", file=sys.stderr)


def _suffixed(target: Path, n: int) -> Path:
    return target.with_name(f"{target.stem}_n{n}{target.suffix}")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_simulate(cfg: dict[str, Any]) -> int:
    state = _state_spec(cfg)
    if state is None:
        raise BadParameter("simulate needs --state")
    schedule = _parse_cli_schedule(cfg, required=True)
    client = _Client(cfg["server"])

    def one(n: int) -> SimulateResponse:
        return client.simulate(
            SimulateRequest(
                coin=_coin_spec(cfg), state=state, schedule=[n], method=cfg["method"], seed=cfg["seed"]
            )
        )

    responses = _fan_out(one, schedule, int(cfg["jobs"]))
    dists = [d for resp in responses for d in resp.distributions]
    target = _resolve_out(cfg["out"])
    rendered = []
    for payload in dists:
        dist = Distribution(
            n=payload.n,
            support=np.asarray(payload.support, dtype=np.int64),
            probs=np.asarray(payload.probs, dtype=np.float64),
        )
        rendered.append(
            distribution_to_csv(dist) if cfg["format"] == "csv" else distribution_to_json(dist)
        )
    if target is None:
        if cfg["format"] == "csv":
            sys.stdout.write("\n".join(rendered) if len(rendered) > 1 else rendered[0])
        else:
            payload = rendered[0] if len(rendered) == 1 else rendered
            sys.stdout.write(to_json_text(payload))
        return 0
    for dist, text in zip(dists, rendered):
        path = target if len(rendered) == 1 else _suffixed(target, dist.n)
        _write(text if cfg["format"] == "csv" else to_json_text(text), path)
    return 0


def cmd_entropy(cfg: dict[str, Any]) -> int:
    schedule = _parse_cli_schedule(cfg, required=True)
    client = _Client(cfg["server"])

    def request(ns: list[int]) -> EntropyRequest:
        return EntropyRequest(
            coin=_coin_spec(cfg),
            state=_state_spec(cfg),
            ensemble=_ensemble_entries(cfg),
            orders=_parse_orders(cfg),
            schedule=ns,
            variants=_as_list(cfg["variant"]) or None,
            method=cfg["method"],
            seed=cfg["seed"],
        )

    jobs = int(cfg["jobs"])
    if jobs > 1 and len(schedule) > 1:
        responses = _fan_out(lambda n: client.entropy(request([n])), schedule, jobs)
        variants = responses[0].variants
        rows = [row for resp in responses for row in resp.rows]
    else:
        resp = client.entropy(request(schedule))
        variants, rows = resp.variants, resp.rows
    if cfg["format"] == "csv":
        text = entropy_table_to_csv([r.model_dump() for r in rows], variants)
    else:
        text = to_json_text({"variants": variants, "rows": [r.model_dump() for r in rows]})
    _write(text, _resolve_out(cfg["out"]))
    return 0


def cmd_limit(cfg: dict[str, Any]) -> int:
    client = _Client(cfg["server"])
    resp = client.limit(
        LimitRequest(
            coin=_coin_spec(cfg),
            state=_state_spec(cfg),
            ensemble=_ensemble_entries(cfg),
            orders=_parse_orders(cfg),
            variants=_as_list(cfg["variant"]) or None,
            seed=cfg["seed"],
        )
    )
    if cfg["format"] == "csv":
        text = limit_table_to_csv([r.model_dump() for r in resp.rows], resp.variants)
    else:
        text = to_json_text({"variants": resp.variants, "rows": [r.model_dump() for r in resp.rows]})
    _write(text, _resolve_out(cfg["out"]))
    return 0


def cmd_converge(cfg: dict[str, Any]) -> int:
    client = _Client(cfg["server"])
    resp = client.converge(
        ConvergeRequest(
            coin=_coin_spec(cfg),
            state=_state_spec(cfg),
            ensemble=_ensemble_entries(cfg),
            orders=_parse_orders(cfg),
            schedule=_parse_cli_schedule(cfg, required=False),
            variants=_as_list(cfg["variant"]) or None,
            statistics=_as_list(cfg["statistic"]) or ["renyi", "tsallis"],
            threshold=float(cfg["threshold"]),
            parity_average=bool(cfg["parity_average"]),
            seed=cfg["seed"],
        )
    )
    report = Report(
        series=tuple(
            ConvergenceSeries(
                label=s.label,
                alpha=s.alpha,
                schedule=tuple(s.schedule),
                finite_values=tuple(s.finite_values),
                limit_value=s.limit_value,
                gaps=tuple(s.gaps),
                smoothed_values=None if s.smoothed_values is None else tuple(s.smoothed_values),
            )
            for s in resp.series
        ),
        verdicts=tuple(
            SeriesVerdict(
                label=v.label,
                alpha=v.alpha,
                first_gap=v.first_gap,
                final_gap=v.final_gap,
                threshold=v.threshold,
                trend=v.trend,
                below_threshold=v.below_threshold,
                verdict=v.verdict,
            )
            for v in resp.verdicts
        ),
        threshold=resp.threshold,
        note=resp.note,
    )
    target = _resolve_out(cfg["out"])
    if cfg["format"] == "json":
        _write(to_json_text(report_to_json(report)), target)
        return 0
    verdict_text = to_json_text(
        {"threshold": report.threshold, "note": report.note, "verdicts": report_to_json(report)["verdicts"]}
    )
    if target is None:
        sys.stdout.write(report_to_csv(report))
        sys.stderr.write(verdict_text)
        return 0
    _write(report_to_csv(report), target)
    _write(verdict_text, target.with_name(target.name + ".verdicts.json"))
    return 0


def cmd_serve(cfg: dict[str, Any]) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=str(cfg["host"]), port=int(cfg["port"]))
    return 0


_COMMANDS = {
    "simulate": cmd_simulate,
    "entropy": cmd_entropy,
    "limit": cmd_limit,
    "converge": cmd_converge,
    "serve": cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _effective(args)
        return _COMMANDS[args.command](cfg)
    except DivergentIntegral as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (InputError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # transport failures and the like
        import httpx

        if isinstance(exc, httpx.HTTPError):
            print(f"error: cannot reach server: {exc}", file=sys.stderr)
            return 3
        raise


if __name__ == "__main__":
    sys.exit(main())
