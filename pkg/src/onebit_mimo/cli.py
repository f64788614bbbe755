"""Command-line client for the simulation service.

Subcommands mirror the service endpoints one-to-one. By default requests are
dispatched to an in-process service instance (no socket involved); pass
--server to target a running deployment instead. Powers are given in dB here
and converted exactly once, at the service boundary.

Exit codes: 0 success, 2 argument/usage errors, 1 runtime failures.
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

_CONFIG_KEYS = {
    "m": str,
    "k": int,
    "rho_p_db": float,
    "pt_db": str,
    "trials": int,
    "seed": int,
    "mode": str,
    "threads": int,
    "out": str,
    "server": str,
    "et_db": float,
    "eu_db": float,
    "target_per_user": float,
    "target_sum_rate": float,
}


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def load_config_file(path: str) -> dict:
    """Flat key-value config file: one `key = value` per line, # comments."""
    values = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            for sep in ("=", ":"):
                if sep in line:
                    key, _, val = line.partition(sep)
                    break
            else:
                raise ValueError(f"{path}:{lineno}: expected `key = value`, got {raw.strip()!r}")
            key = key.strip().replace("-", "_")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = _CONFIG_KEYS[key](val.strip())
    return values


class ServiceClient:
    """Thin HTTP client; runs the ASGI app in-process when no server is given."""

    def __init__(self, server: str | None = None):
        self.server = server

    def post(self, path: str, payload: dict) -> httpx.Response:
        if self.server:
            with httpx.Client(base_url=self.server, timeout=None) as client:
                return client.post(path, json=payload)

        async def _dispatch():
            from .service.app import create_app

            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://onebit-mimo.local", timeout=None
            ) as client:
                return await client.post(path, json=payload)

        return asyncio.run(_dispatch())


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _call(client: ServiceClient, path: str, payload: dict) -> dict:
    try:
        resp = client.post(path, payload)
    except httpx.HTTPError as exc:
        raise CliError(f"service request failed: {exc}", 1) from exc
    if resp.status_code in (400, 422):
        raise CliError(f"invalid arguments: {resp.json().get('detail')}", 2)
    if resp.status_code != 200:
        raise CliError(f"service error {resp.status_code}: {resp.text}", 1)
    return resp.json()


def _effective(args: argparse.Namespace, config: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


def _write_output(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as exc:
        raise CliError(f"cannot write output file {path!r}: {exc}", 1) from exc


def _print_rate_report(body: dict) -> None:
    req = body["request"]
    print(
        f"scenario: M={req['m']} K={req['k']} rho_p={req['rho_p_db']}dB "
        f"P_t={req['p_t_db']}dB trials={req['trials']} seed={req['seed']} mode={req['mode']}"
    )
    for method in ("closed_form", "use_and_forget", "conventional", "monte_carlo"):
        rep = body[method]
        mean_user = rep["sum_rate"] / len(rep["per_user_rate"])
        line = f"{method:<15s} sum_rate={rep['sum_rate']:.4f}  per_user={mean_user:.4f}"
        if rep["sum_stderr"] is not None:
            line += f"  stderr={rep['sum_stderr']:.4f}"
        print(line)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onebit-mimo",
        description="One-bit DAC massive MIMO downlink: rate reports and experiment sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mc: bool):
        p.add_argument("--k", type=int)
        p.add_argument("--rho-p-db", dest="rho_p_db", type=float)
        p.add_argument("--config", help="flat key=value config file; flags override it")
        p.add_argument("--server", help="base URL of a running service (default: in-process)")
        if mc:
            p.add_argument("--trials", type=int)
            p.add_argument("--seed", type=int)
            p.add_argument("--mode", choices=("simulated", "gaussian"))
            p.add_argument("--threads", type=int)

    p_rate = sub.add_parser("rate", help="single-point rate report, all four methods")
    p_rate.add_argument("--m", type=int)
    p_rate.add_argument("--pt-db", dest="pt_db", type=float)
    common(p_rate, mc=True)

    p_plan = sub.add_parser("plan", help="antennas required to hit a per-user rate target")
    p_plan.add_argument("--target-per-user", dest="target_per_user", type=float)
    p_plan.add_argument("--pt-db", dest="pt_db", type=float)
    common(p_plan, mc=False)

    p_rvp = sub.add_parser("rate-vs-power", help="sum rate vs P_t sweep (CSV)")
    p_rvp.add_argument("--m", type=_int_list, help="comma-separated antenna counts")
    p_rvp.add_argument("--pt-db", dest="pt_db", type=_float_list, help="comma-separated dB grid")
    p_rvp.add_argument("--out")
    common(p_rvp, mc=True)

    p_ps = sub.add_parser("power-scaling", help="sum rate vs M under 1/M and 1/sqrt(M) scaling (CSV)")
    p_ps.add_argument("--m", type=_int_list, help="comma-separated antenna counts")
    p_ps.add_argument("--et-db", dest="et_db", type=float)
    p_ps.add_argument("--eu-db", dest="eu_db", type=float)
    p_ps.add_argument("--out")
    common(p_ps, mc=True)

    p_ac = sub.add_parser("antenna-comparison", help="one-bit vs conventional sum rate per M (CSV)")
    p_ac.add_argument("--m", type=_int_list, help="comma-separated antenna counts")
    p_ac.add_argument("--pt-db", dest="pt_db", type=float)
    p_ac.add_argument("--target-sum-rate", dest="target_sum_rate", type=float)
    p_ac.add_argument("--out")
    common(p_ac, mc=False)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _run_command(args: argparse.Namespace) -> int:
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        config = load_config_file(args.config) if getattr(args, "config", None) else {}
    except (OSError, ValueError) as exc:
        raise CliError(f"bad --config file: {exc}", 2) from exc
    client = ServiceClient(_effective(args, config, "server", None))

    def mc_fields():
        return {
            "trials": _effective(args, config, "trials", 2000),
            "seed": _effective(args, config, "seed", 0),
            "mode": _effective(args, config, "mode", "simulated"),
            "threads": _effective(args, config, "threads", 1),
        }

    def scenario_fields():
        return {
            "k": _effective(args, config, "k", 10),
            "rho_p_db": _effective(args, config, "rho_p_db", 10.0),
        }

    if args.command == "rate":
        m = _effective(args, config, "m", None)
        if m is None:
            raise CliError("--m is required (flag or config file)", 2)
        payload = {
            "m": int(m),
            "p_t_db": _effective(args, config, "pt_db", 10.0),
            **scenario_fields(),
            **mc_fields(),
        }
        _print_rate_report(_call(client, "/v1/rate", payload))
        return 0

    if args.command == "plan":
        target = _effective(args, config, "target_per_user", None)
        if target is None:
            raise CliError("--target-per-user is required (flag or config file)", 2)
        payload = {
            "target_per_user_rate": float(target),
            "p_t_db": _effective(args, config, "pt_db", 10.0),
            **scenario_fields(),
        }
        body = _call(client, "/v1/plan", payload)
        print(f"target_per_user={body['target_per_user_rate']} bits/s/Hz")
        print(f"one_bit       m={body['one_bit_m']}")
        print(f"conventional  m={body['conventional_m']}")
        print(f"antenna_ratio {body['antenna_ratio']:.4f}")
        return 0

    if args.command == "rate-vs-power":
        m_list = _effective(args, config, "m", "32,64,128")
        pt_grid = _effective(args, config, "pt_db", "-10,-5,0,5,10")
        payload = {
            "m_list": _int_list(m_list) if isinstance(m_list, str) else m_list,
            "p_t_db_grid": _float_list(pt_grid) if isinstance(pt_grid, str) else pt_grid,
            **scenario_fields(),
            **mc_fields(),
        }
        body = _call(client, "/v1/sweeps/rate-vs-power", payload)
        out = _effective(args, config, "out", "rate_vs_power.csv")
        _write_output(out, body["csv"])
        print(f"wrote {len(body['rows'])} rows to {out}")
        return 0

    if args.command == "power-scaling":
        m_grid = _effective(args, config, "m", "16,32,64,128,256")
        payload = {
            "m_grid": _int_list(m_grid) if isinstance(m_grid, str) else m_grid,
            "e_t_db": _effective(args, config, "et_db", 10.0),
            "e_u_db": _effective(args, config, "eu_db", 10.0),
            **scenario_fields(),
            **mc_fields(),
        }
        body = _call(client, "/v1/sweeps/power-scaling", payload)
        out = _effective(args, config, "out", "power_scaling.csv")
        _write_output(out, body["csv"])
        print(f"wrote {len(body['rows'])} rows to {out}")
        return 0

    if args.command == "antenna-comparison":
        m_grid = _effective(args, config, "m", ",".join(str(m) for m in range(20, 501, 20)))
        payload = {
            "m_grid": _int_list(m_grid) if isinstance(m_grid, str) else m_grid,
            "p_t_db": _effective(args, config, "pt_db", 10.0),
            "target_sum_rate": _effective(args, config, "target_sum_rate", 35.0),
            **scenario_fields(),
        }
        body = _call(client, "/v1/sweeps/antenna-comparison", payload)
        out = _effective(args, config, "out", "antenna_comparison.csv")
        _write_output(out, body["csv"])
        crossing = body["crossing"]
        print(f"wrote {len(body['rows'])} rows to {out}")
        print(
            f"crossing at {crossing['target_sum_rate']} bits/s/Hz: "
            f"one_bit m={crossing['one_bit_m']} conventional m={crossing['conventional_m']}"
        )
        return 0

    raise CliError(f"unknown command {args.command!r}", 2)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return _run_command(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
