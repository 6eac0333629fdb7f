"""Command-line client.

The CLI is a thin client of the HTTP service: by default it talks to the
in-process app over an ASGI transport, and --server points it at a remote
instance instead. Exit codes: 0 success, 2 configuration error, 3 numerical
failure.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys

import httpx

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


class CliFailure(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    response = client.post(path, json=payload)
    if response.status_code == 422:
        detail = response.json().get("detail", response.text)
        raise CliFailure(f"invalid request: {detail}", EXIT_CONFIG)
    if response.status_code >= 500:
        detail = response.json().get("detail", response.text)
        raise CliFailure(f"numerical failure: {detail}", EXIT_NUMERICAL)
    response.raise_for_status()
    return response.json()


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _signal_csv(coeffs: list[dict]) -> str:
    return "\n".join(f"{c['re']:.17g},{c['im']:.17g}" for c in coeffs) + "\n"


def _read_signal_csv(path: str) -> list[dict]:
    samples = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            re_s, im_s = line.split(",")
            samples.append({"re": float(re_s), "im": float(im_s)})
    return samples


def _curves_csv(curves: dict) -> str:
    from .harness import CSV_HEADER

    lines = [CSV_HEADER]
    for name in sorted(curves):
        for pt in curves[name]["points"]:
            lines.append(
                f"{pt['snr_db']:.6g},{name},{pt['bits_sent']},{pt['bit_errors']},"
                f"{pt['ber']:.12g},{pt['ber_ci_halfwidth']:.12g},{pt['wall_time_s']:.6f}"
            )
    return "\n".join(lines) + "\n"


def _load_json_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliFailure(f"cannot read {path}: {exc}", EXIT_CONFIG)


def _cmd_encode(args, client) -> None:
    payload = {"bits": args.bits, "k": args.k, "radius": args.radius}
    data = _post(client, "/encode", payload)
    if args.format == "json":
        _write_output(json.dumps(data, indent=2) + "\n", args.out)
    else:
        _write_output(_signal_csv(data["coeffs"]), args.out)
    if args.codebook_out:
        with open(args.codebook_out, "w") as fh:
            json.dump(data["codebook"], fh, indent=2)


def _cmd_decode(args, client) -> None:
    payload = {
        "samples": _read_signal_csv(args.input),
        "codebook": _load_json_file(args.codebook),
        "decoder": args.decoder,
    }
    if args.channel:
        payload["channel"] = _load_json_file(args.channel)
    data = _post(client, "/decode", payload)
    if args.format == "json":
        _write_output(json.dumps(data, indent=2) + "\n", args.out)
    else:
        _write_output(data["bits"] + "\n", args.out)


def _resolve_workers(args) -> int:
    env = os.environ.get("MOCZ_WORKERS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliFailure(f"bad MOCZ_WORKERS value {env!r}", EXIT_CONFIG)
    return max(1, args.workers)


def _cmd_simulate(args, client) -> None:
    config = _load_json_file(args.config)
    if args.seed is not None:
        config["seed"] = args.seed
    data = _post(client, "/simulate", {"config": config, "workers": _resolve_workers(args)})
    if args.format == "json":
        _write_output(json.dumps(data["curves"], indent=2) + "\n", args.out)
    else:
        _write_output(_curves_csv(data["curves"]), args.out)


def _cmd_sweep(args, client) -> None:
    spec = _load_json_file(args.config)
    base = spec.get("base", {})
    grid = spec.get("grid", {})
    if not isinstance(base, dict) or not isinstance(grid, dict):
        raise CliFailure("sweep config needs 'base' object and 'grid' object", EXIT_CONFIG)
    keys = sorted(grid)
    combos = list(itertools.product(*(grid[k] for k in keys))) if keys else [()]
    workers = _resolve_workers(args)
    results = {}
    for combo in combos:
        config = dict(base)
        config.update(dict(zip(keys, combo)))
        if args.seed is not None:
            config["seed"] = args.seed
        label = ",".join(f"{k}={v}" for k, v in zip(keys, combo)) or "base"
        data = _post(client, "/simulate", {"config": config, "workers": workers})
        results[label] = data["curves"]
    if args.format == "json":
        _write_output(json.dumps(results, indent=2) + "\n", args.out)
    else:
        sections = [f"# {label}\n{_curves_csv(curves)}" for label, curves in results.items()]
        _write_output("".join(sections), args.out)


def _cmd_bounds(args, client) -> None:
    payload = {"delta": args.delta if args.delta == "max" else float(args.delta), "theta_grid": args.theta_grid}
    if args.codebook:
        payload["codebook"] = _load_json_file(args.codebook)
        if args.word:
            payload["word"] = args.word
    elif args.zeros:
        zero_spec = _load_json_file(args.zeros)
        payload["zeros"] = zero_spec["zeros"]
        if "leading" in zero_spec:
            payload["leading"] = zero_spec["leading"]
    else:
        raise CliFailure("bounds requires --codebook or --zeros", EXIT_CONFIG)
    data = _post(client, "/bounds", payload)
    _write_output(json.dumps(data, indent=2) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mocz", description="modulation-on-zeros toolkit")
    parser.add_argument("--server", help="base URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="map a bit word to a transmit signal")
    p.add_argument("--bits", required=True, help="binary string or 0x-prefixed hex")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--radius", default="optimal:1", help="number or optimal:<lambda>")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--codebook-out", help="also write the codebook JSON here")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="decode a received block")
    p.add_argument("--input", required=True, help="CSV file with one re,im pair per line")
    p.add_argument("--codebook", required=True, help="codebook JSON file")
    p.add_argument("--decoder", choices=["rfmd", "ml", "dizet", "dizet_dft"], default="dizet")
    p.add_argument("--channel", help="channel JSON {L,p,N0}; required for ml")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("simulate", help="run a Monte Carlo BER experiment")
    p.add_argument("--config", required=True, help="experiment config JSON file")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="run a cartesian product of experiment configs")
    p.add_argument("--config", required=True, help="JSON file with 'base' and 'grid'")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("bounds", help="robustness certificates for a zero set")
    p.add_argument("--codebook", help="codebook JSON file")
    p.add_argument("--word", help="bit word selecting the codeword (default all ones)")
    p.add_argument("--zeros", help="JSON file {zeros:[{re,im}], leading:{re,im}}")
    p.add_argument("--delta", default="max", help="ball radius or 'max' for dmin/2")
    p.add_argument("--theta-grid", type=int, default=10_000)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with _client(args.server) as client:
            args.func(args, client)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except httpx.HTTPError as exc:
        print(f"error: transport failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
