"""Thin command-line client for the evaluation service.

Every subcommand talks HTTP to the FastAPI app: against a remote server
when --server is given, otherwise against an in-process ASGI transport, so
no separate daemon is needed for local use.  Exit codes: 0 all contracts
met, 1 a mathematical contract violated (or turning point not found),
2 usage or transport error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import BinaryIO

import httpx

from . import __version__
from .formatting import SCAN_CSV_HEADER, fmt_real, scan_obj_csv

_TIMEOUT = httpx.Timeout(timeout=3600.0, connect=30.0)

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_USAGE = 2


def _parse_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            lo = hi = float(parts[0])
        elif len(parts) == 2:
            lo, hi = float(parts[0]), float(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi' or a single value, got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rct-hyper",
        description="Evaluate F(a,b;c;x), check transformation identities, "
                    "classify (a,b) regions, scan inequality claims, and "
                    "locate quotient turning points.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_format: str) -> None:
        p.add_argument("--format", choices=("plain", "csv", "json"), default=default_format)
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
        p.add_argument("--server", metavar="URL",
                       help="base URL of a running service; defaults to in-process")

    p = sub.add_parser("eval", help="evaluate F(a,b;c;x)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    common(p, "plain")

    p = sub.add_parser("verify", help="max residual of one exact identity over a grid")
    p.add_argument("--name", required=True,
                   choices=("rct1", "rct2", "landen1", "landen2", "drct"))
    p.add_argument("--n", type=int, default=99, help="grid size (points k/(n+1))")
    p.add_argument("--tol", type=float, help="override the residual contract")
    common(p, "plain")

    p = sub.add_parser("classify", help="region membership of (a,b)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--eps", type=float, default=0.0, help="boundary widening band")
    common(p, "plain")

    p = sub.add_parser("scan", help="scan one claim over an (a,b) grid")
    p.add_argument("--claim", required=True,
                   choices=("T2.1", "T2.2", "C2.3", "T2.4",
                            "T2.5.1", "T2.5.2", "T2.5.3", "T2.5.4",
                            "L3.1f", "L3.1g", "L3.2J"))
    p.add_argument("--a", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--b", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--na", type=int, required=True)
    p.add_argument("--nb", type=int, required=True)
    p.add_argument("--nr", type=int, default=200, help="r-grid density per point")
    p.add_argument("--tol", type=float, default=1e-9, help="margin tolerance")
    common(p, "csv")

    p = sub.add_parser("turning-point", help="locate the interior extremum of f or g")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--which", choices=("f", "g"), default="f")
    common(p, "plain")

    p = sub.add_parser("serve", help="run the HTTP service with uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _open_out(args) -> BinaryIO:
    if getattr(args, "out", None):
        return open(args.out, "wb")
    return sys.stdout.buffer


def _client(args) -> httpx.AsyncClient:
    server = getattr(args, "server", None)
    if server:
        return httpx.AsyncClient(base_url=server.rstrip("/"), timeout=_TIMEOUT)
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())
    return httpx.AsyncClient(transport=transport, base_url="http://rct-hyper.internal",
                             timeout=_TIMEOUT)


def _fail(resp: httpx.Response) -> int:
    try:
        detail = resp.json().get("detail", resp.text)
    except (ValueError, AttributeError):
        detail = resp.text
    print(f"error ({resp.status_code}): {detail}", file=sys.stderr)
    return EXIT_USAGE


def _emit(out: BinaryIO, text: str) -> None:
    out.write(text.encode("utf-8"))


def _scalar_report(out: BinaryIO, fmt: str, fields: list[tuple[str, object]]) -> None:
    def cell(v: object) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return fmt_real(v)
        return str(v)

    if fmt == "json":
        _emit(out, json.dumps(dict(fields), separators=(",", ":")) + "\n")
    elif fmt == "csv":
        _emit(out, ",".join(k for k, _ in fields) + "\n")
        _emit(out, ",".join(cell(v) for _, v in fields) + "\n")
    else:
        for k, v in fields:
            _emit(out, f"{k}={cell(v)}\n")


async def _cmd_eval(args, client: httpx.AsyncClient, out: BinaryIO) -> int:
    resp = await client.post("/eval", json={"a": args.a, "b": args.b, "c": args.c, "x": args.x})
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    _scalar_report(out, args.format, [("value", body["value"]),
                                      ("abs_err_estimate", body["abs_err_estimate"]),
                                      ("method", body["method"])])
    return EXIT_OK


async def _cmd_verify(args, client: httpx.AsyncClient, out: BinaryIO) -> int:
    payload = {"name": args.name, "n": args.n}
    if args.tol is not None:
        payload["tol"] = args.tol
    resp = await client.post("/verify", json=payload)
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    _scalar_report(out, args.format, [
        ("name", body["name"]),
        ("max_residual", body["max_residual"]),
        ("worst_r", body["worst_r"]),
        ("n_points", body["n_points"]),
        ("contract", body["contract"]),
        ("within_contract", body["within_contract"]),
    ])
    return EXIT_OK if body["within_contract"] else EXIT_CONTRACT


async def _cmd_classify(args, client: httpx.AsyncClient, out: BinaryIO) -> int:
    resp = await client.post("/classify", json={"a": args.a, "b": args.b, "eps": args.eps})
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    if args.format == "plain":
        parts = list(body["labels"])
        if body["equality_point"]:
            parts.append("equality-point")
        _emit(out, ",".join(parts) + "\n")
    else:
        _scalar_report(out, args.format, [
            ("a", args.a), ("b", args.b),
            ("regions", ";".join(body["labels"])),
            ("equality_point", body["equality_point"]),
        ])
    return EXIT_OK


async def _cmd_turning_point(args, client: httpx.AsyncClient, out: BinaryIO) -> int:
    resp = await client.post("/turning-point",
                             json={"a": args.a, "b": args.b, "which": args.which})
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    if not body["found"]:
        _emit(out, "not-found: " + (body.get("detail") or "quotient is monotone") + "\n")
        return EXIT_CONTRACT
    _scalar_report(out, args.format, [
        ("r0", body["r0"]),
        ("bracket_lo", body["bracket_lo"]),
        ("bracket_hi", body["bracket_hi"]),
        ("kind", body["kind"]),
        ("derivative_residual", body["derivative_residual"]),
    ])
    return EXIT_OK


async def _cmd_scan(args, client: httpx.AsyncClient, out: BinaryIO) -> int:
    payload = {
        "claim": args.claim,
        "a": {"lo": args.a[0], "hi": args.a[1]},
        "b": {"lo": args.b[0], "hi": args.b[1]},
        "na": args.na, "nb": args.nb, "nr": args.nr, "tol": args.tol,
    }
    as_csv = args.format in ("csv", "plain")
    inconsistent = 0
    # always stream ndjson so rows carry region_consistent for the exit code
    async with client.stream("POST", "/scan", params={"format": "json"}, json=payload) as resp:
        if resp.status_code != 200:
            await resp.aread()
            return _fail(resp)
        if as_csv:
            _emit(out, SCAN_CSV_HEADER + "\n")
        buf = b""
        async for chunk in resp.aiter_bytes():
            buf += chunk
            while b"\n" in buf:
                line, buf = buf.split(b"\n", 1)
                if not line.strip():
                    continue
                obj = json.loads(line)
                if obj.get("region_consistent") is False:
                    inconsistent += 1
                if as_csv:
                    _emit(out, scan_obj_csv(obj) + "\n")
                else:
                    _emit(out, line.decode("utf-8") + "\n")
    return EXIT_CONTRACT if inconsistent else EXIT_OK


async def _dispatch(args) -> int:
    handlers = {
        "eval": _cmd_eval,
        "verify": _cmd_verify,
        "classify": _cmd_classify,
        "scan": _cmd_scan,
        "turning-point": _cmd_turning_point,
    }
    out = _open_out(args)
    try:
        async with _client(args) as client:
            return await handlers[args.command](args, client, out)
    finally:
        out.flush()
        if out is not sys.stdout.buffer:
            out.close()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return EXIT_OK
    try:
        return asyncio.run(_dispatch(args))
    except httpx.HTTPError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
