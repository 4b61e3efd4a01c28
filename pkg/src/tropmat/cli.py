"""Thin command-line client for the HTTP service.

Every subcommand builds one JSON request and posts it to the service: by
default an in-process instance of the app (no server needed), or a remote
one with --server.  Output is canonical JSON on stdout (JSON-lines for
`lab`); errors are JSON objects on stderr.  Exit codes: 0 success, 1 a
verification suite or verified identity failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

import httpx

PATHS = {
    "stiefel": "/stiefel",
    "check-pluecker": "/check-pluecker",
    "underlying": "/underlying",
    "dapx": "/dapx",
    "decompose": "/decompose",
    "is-minimal": "/is-minimal",
    "minimize": "/minimize",
    "extend": "/extend",
    "collide": "/collide",
    "certificates": "/certificates",
    "meet": "/meet",
    "present-min": "/present-min",
    "verify": "/verify",
    "lab": "/lab",
    "gen": "/gen",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropmat",
        description="exact min-plus presentations of transversal valuated matroids",
    )
    parser.add_argument("--server", help="base URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="input JSON file, or - for stdin")
        return p

    with_input("stiefel", "valuated matroid of a matrix presentation")
    p = sub.add_parser("check-pluecker", help="3-term relations of a candidate function")
    p.add_argument("input", help="valuated-matroid JSON file, or - for stdin")
    p = sub.add_parser("underlying", help="underlying matroid of a valuated matroid")
    p.add_argument("input", help="valuated-matroid JSON file, or - for stdin")
    with_input("dapx", "distinguished apex matrix and its decomposition")
    p = with_input("decompose", "decompose a presentation against an apex matrix")
    p.add_argument("--apex-of", help="matrix file whose apex is the reference")
    with_input("is-minimal", "test minimality of a presentation")
    p = with_input("minimize", "minimal presentation of the same valuated matroid")
    p.add_argument("--keep", help="column label whose membership per row is preserved")
    p = with_input("extend", "extension by a new column")
    p.add_argument("--x", required=True, help='column as a JSON list, e.g. \'["1","0"]\'')
    with_input("collide", "two columns with equal extensions (non-minimal input)")
    with_input("certificates", "injectivity certificates or a collision witness")
    p = with_input("meet", "greatest lower bound of two extensions")
    p.add_argument("--x", required=True, help="first column as a JSON list")
    p.add_argument("--y", required=True, help="second column as a JSON list")
    with_input("present-min", "re-present an extension over a minimal base (last column is *)")

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("suite", choices=["different", "minimal", "join", "fo-maximal", "decompose"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--inf-prob", default="1/4")
    p.add_argument("--grid", help="comma-separated rational grid, e.g. -1,0,1/2,1")

    p = sub.add_parser("lab", help="search minima of extensions from different presentations")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pinned", choices=["u23"], help="run the pinned regression instance instead")

    p = sub.add_parser("gen", help="generate a seeded corpus of presentations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inf-prob", default="1/4")
    p.add_argument("--grid")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise ValueError(f"cannot read {path!r}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad JSON in {path!r}: {exc}") from None


def _parse_list(text: str, what: str) -> list:
    try:
        out = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad JSON for {what}: {exc}") from None
    if not isinstance(out, list):
        raise ValueError(f"{what} must be a JSON list")
    return out


def _payload(args: argparse.Namespace) -> dict:
    cmd = args.command
    if cmd in ("stiefel", "dapx", "is-minimal", "collide", "certificates"):
        return {"matrix": _read_json(args.input)}
    if cmd == "check-pluecker":
        return _read_json(args.input)
    if cmd == "underlying":
        return {"mu": _read_json(args.input)}
    if cmd == "decompose":
        payload = {"matrix": _read_json(args.input)}
        if args.apex_of:
            payload["apex_of"] = _read_json(args.apex_of)
        return payload
    if cmd == "minimize":
        return {"matrix": _read_json(args.input), "keep": args.keep}
    if cmd == "extend":
        return {"matrix": _read_json(args.input), "x": _parse_list(args.x, "--x")}
    if cmd == "meet":
        return {
            "matrix": _read_json(args.input),
            "x": _parse_list(args.x, "--x"),
            "y": _parse_list(args.y, "--y"),
        }
    if cmd == "present-min":
        return {"matrix": _read_json(args.input)}
    if cmd == "verify":
        payload = {
            "suite": args.suite,
            "n": args.n,
            "d": args.d,
            "count": args.count,
            "seed": args.seed,
            "trials": args.trials,
            "inf_probability": args.inf_prob,
        }
        if args.grid:
            payload["value_grid"] = args.grid.split(",")
        return payload
    if cmd == "lab":
        return {
            "n": args.n,
            "d": args.d,
            "trials": args.trials,
            "seed": args.seed,
            "pinned": args.pinned,
        }
    if cmd == "gen":
        payload = {
            "n": args.n,
            "d": args.d,
            "count": args.count,
            "seed": args.seed,
            "inf_probability": args.inf_prob,
        }
        if args.grid:
            payload["value_grid"] = args.grid.split(",")
        return payload
    raise ValueError(f"unhandled command {cmd}")


def _post(args: argparse.Namespace, path: str, payload: dict) -> tuple[int, Any]:
    def decode(resp: httpx.Response) -> Any:
        try:
            return resp.json()
        except ValueError:
            return {"error": {"kind": "input", "message": resp.text.strip() or "empty response"}}

    if args.server:
        resp = httpx.post(args.server.rstrip("/") + path, json=payload, timeout=None)
        return resp.status_code, decode(resp)

    import asyncio

    from .service.app import app

    async def go() -> tuple[int, Any]:
        transport = httpx.ASGITransport(app=app, raise_app_exceptions=False)
        async with httpx.AsyncClient(transport=transport, base_url="http://service") as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, decode(resp)

    return asyncio.run(go())


def _fail(obj: Any, code: int) -> int:
    print(json.dumps(obj, sort_keys=True), file=sys.stderr)
    return code


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    try:
        payload = _payload(args)
    except ValueError as exc:
        return _fail({"error": {"kind": "input", "message": str(exc)}}, 2)

    try:
        status, body = _post(args, PATHS[args.command], payload)
    except httpx.HTTPError as exc:
        return _fail({"error": {"kind": "input", "message": f"transport: {exc}"}}, 2)

    if status == 422:  # request model validation
        return _fail({"error": {"kind": "input", "message": json.dumps(body, sort_keys=True)}}, 2)
    if status != 200:
        kind = body.get("error", {}).get("kind", "input") if isinstance(body, dict) else "input"
        return _fail(body, 1 if kind == "theorem" else 2)

    if args.command == "lab":
        for report in body["reports"]:
            print(json.dumps(report, sort_keys=True, separators=(",", ":")))
        return 0
    print(json.dumps(body, sort_keys=True, indent=2))
    if args.command == "verify" and not body.get("ok", False):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
