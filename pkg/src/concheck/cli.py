"""Command-line client for the verification service.

The CLI is a thin HTTP client: by default it mounts the FastAPI app
in-process (no server needed); pass --server to talk to a running instance.
Exit codes are a stable contract: 0 success, 1 constraint violation,
2 input/usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import httpx

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service import app

    return TestClient(app)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SystemExit(f"concheck: cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        print(f"concheck: {path} is not valid JSON: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT) from None


def _emit(payload, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        _emit_text(payload)


def _emit_text(payload):
    if "status" in payload:
        print(f"status: {payload['status']}")
        if payload.get("constraint") is not None:
            print("constraint: " + json.dumps(payload["constraint"]))
        if payload.get("morphism"):
            print(f"morphism: {payload['morphism']}")
        if payload.get("witness"):
            print("witness: " + json.dumps(payload["witness"], default=str))
    elif "relations" in payload:
        for rel in payload["relations"]:
            print(json.dumps(rel))
    elif "suite" in payload:
        verdict = "pass" if payload["passed"] else "FAIL"
        print(f"suite {payload['suite']}: {verdict} ({payload['cases']} cases, seed {payload['seed']})")
        for name, part in payload.get("parts", {}).items():
            line = f"  {name}: {part['cases']} cases, {part['failures']} failures"
            if part.get("skipped_arity_pairs"):
                line += f", {part['skipped_arity_pairs']} cross-arity pairs skipped"
            print(line)
        if payload.get("witness"):
            print("  expected witness: " + json.dumps(payload["witness"], default=str))
        for failure in payload.get("failures", []):
            print("  failure: " + json.dumps(failure, default=str))
    else:
        print(json.dumps(payload, indent=2, default=str))


def _request(client, method: str, url: str, body) -> tuple[int, dict]:
    response = client.request(method, url, json=body)
    try:
        payload = response.json()
    except ValueError:
        print(f"concheck: bad response from server: {response.text}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT) from None
    return response.status_code, payload


def cmd_check(args, client) -> int:
    circuit = _read_json(args.file)
    status, payload = _request(client, "POST", "/check", {"circuit": circuit})
    if status != 200:
        _print_error(payload)
        return EXIT_INPUT
    _emit(payload, args.format)
    return EXIT_OK if payload["status"] == "ok" else EXIT_VIOLATION


def cmd_rel(args, client) -> int:
    body = {"relations": [_read_json(path) for path in args.files]}
    if args.src:
        body["src"] = args.src.split(",")
    if args.dst:
        body["dst"] = args.dst.split(",")
    status, payload = _request(client, "POST", f"/rel/{args.op}", body)
    if status != 200:
        _print_error(payload)
        return EXIT_INPUT
    _emit(payload, args.format)
    return EXIT_OK


def cmd_oracle(args, client) -> int:
    body = {"seed": args.seed}
    if args.cap is not None:
        body["cap"] = args.cap
    status, payload = _request(client, "POST", f"/oracle/{args.suite}", body)
    if status != 200:
        _print_error(payload)
        return EXIT_INPUT
    _emit(payload, args.format)
    return EXIT_OK if payload["passed"] else EXIT_VIOLATION


def cmd_serve(args, client) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _print_error(payload):
    detail = payload.get("detail", payload)
    error = payload.get("error", "error")
    print(f"concheck: {error}: {detail}", file=sys.stderr)
    if payload.get("witness"):
        print(f"concheck: witness: {payload['witness']}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concheck",
        description="verify composable constraints on finite structures",
    )
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="verify a circuit file")
    p_check.add_argument("file")
    p_check.set_defaults(func=cmd_check)

    p_rel = sub.add_parser("rel", help="relation operations")
    p_rel.add_argument("op", choices=("compose", "meet", "converse", "generators"))
    p_rel.add_argument("files", nargs="*", help="relation JSON files (pipeline order)")
    p_rel.add_argument("--src", help="comma-separated labels (generators)")
    p_rel.add_argument("--dst", help="comma-separated labels (generators)")
    p_rel.set_defaults(func=cmd_rel)

    p_oracle = sub.add_parser("oracle", help="run an evidence suite")
    p_oracle.add_argument(
        "suite", choices=("laxity", "intersectability", "atomicity", "timesym", "csp")
    )
    p_oracle.add_argument("--cap", type=int, default=None)
    p_oracle.add_argument("--seed", type=int, default=1729)
    p_oracle.set_defaults(func=cmd_oracle)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    client = None if args.command == "serve" else _client(args.server)
    try:
        return args.func(args, client)
    except SystemExit as exc:
        code = exc.code
        if isinstance(code, str):
            print(code, file=sys.stderr)
            return EXIT_INPUT
        return EXIT_INPUT if code is None else int(code)
    finally:
        if client is not None:
            client.close()


if __name__ == "__main__":
    sys.exit(main())
