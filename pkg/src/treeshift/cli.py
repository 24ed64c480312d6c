"""Command-line client for the tree-shift service.

Every subcommand builds a request, sends it to the service — in-process by
default (ASGI transport, no socket), or to a remote instance via --server —
and prints the JSON (or flattened CSV) response. Exit codes: 0 success,
1 computation/domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import os
import sys
from typing import Optional, Tuple

import httpx

DEFAULT_DEPTH = 32
_TIMEOUT = 600.0


def _tree_arg(value: str):
    """Inline gallery string, path to a JSON spec file, or a JSON object literal."""
    text = value.strip()
    if text.startswith("gallery:"):
        return text
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise argparse.ArgumentTypeError(f"bad tree JSON: {exc}") from exc
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise argparse.ArgumentTypeError(f"bad tree spec file {text}: {exc}") from exc
    raise argparse.ArgumentTypeError(
        f"{value!r} is neither a gallery: reference, a JSON object, nor an existing file"
    )


def _json_arg(value: str) -> dict:
    try:
        out = json.loads(value)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"bad JSON: {exc}") from exc
    if not isinstance(out, dict):
        raise argparse.ArgumentTypeError("expected a JSON object")
    return out


def _int_list_arg(value: str):
    try:
        return [int(x) for x in value.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {value!r}") from exc


def _vertex_arg(value: str):
    parts = value.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"vertex must be level:index, got {value!r}")
    try:
        return [int(parts[0]), int(parts[1])]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vertex {value!r}") from exc


# ---------------------------------------------------------------------------
# Transport
# ---------------------------------------------------------------------------

def _request(method: str, path: str, payload: Optional[dict], server: Optional[str]) -> Tuple[int, dict]:
    if server:
        url = server.rstrip("/") + path
        with httpx.Client(timeout=_TIMEOUT) as client:
            r = client.request(method, url, json=payload)
            return r.status_code, r.json()

    async def _go() -> Tuple[int, dict]:
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://treeshift.local", timeout=_TIMEOUT
        ) as client:
            r = await client.request(method, path, json=payload)
            return r.status_code, r.json()

    return asyncio.run(_go())


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _flatten(prefix: str, obj, rows: list) -> None:
    if isinstance(obj, dict):
        for key in sorted(obj):
            sub = f"{prefix}.{key}" if prefix else str(key)
            _flatten(sub, obj[key], rows)
    elif isinstance(obj, list):
        for i, item in enumerate(obj):
            _flatten(f"{prefix}[{i}]", item, rows)
    else:
        rows.append((prefix, "" if obj is None else obj))


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "csv":
        rows: list = []
        _flatten("", payload, rows)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in rows:
            writer.writerow([key, value])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _run(method: str, path: str, payload: Optional[dict], args: argparse.Namespace) -> int:
    status, body = _request(method, path, payload, args.server)
    if status == 200:
        _emit(body, args.format)
        return 0
    if isinstance(body, dict) and "error" in body:
        err = body["error"]
        sys.stderr.write(f"error ({err.get('type', 'unknown')}): {err.get('message', '')}\n")
        return 1
    sys.stderr.write(f"error: HTTP {status}: {json.dumps(body, sort_keys=True)}\n")
    return 1 if status == 400 else 2 if status == 422 else 1


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------

def _common(sp: argparse.ArgumentParser, tree: bool = True) -> None:
    if tree:
        sp.add_argument("--tree", type=_tree_arg, required=True,
                        help="gallery:<name>?k=v, JSON object, or path to a spec file")
        sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                        help=f"levels to cover, 0..depth (default {DEFAULT_DEPTH})")
    sp.add_argument("--server", default=None,
                    help="base URL of a running service; default runs in-process")
    sp.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeshift",
        description="Shift operators on discrete Hardy spaces over rooted trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("describe", help="materialize a tree and report its level structure")
    _common(sp)
    sp.add_argument("--histogram-levels", type=int, default=8)

    sp = sub.add_parser("norm", help="operator norm of S^m or B^m")
    _common(sp)
    sp.add_argument("--op", choices=("S", "B"), required=True)
    sp.add_argument("--power", type=int, default=1)
    sp.add_argument("--p", type=float, default=1.0)

    sp = sub.add_parser("radius", help="spectral radius estimate from power norms")
    _common(sp)
    sp.add_argument("--op", choices=("S", "B"), required=True)
    sp.add_argument("--p", type=float, default=1.0)
    sp.add_argument("--max-power", type=int, default=12)

    sp = sub.add_parser("witness", help="eigenfunctions and (non-)surjectivity witnesses")
    _common(sp)
    sp.add_argument("--kind", required=True,
                    choices=("eigenfunction_B", "resolvent_S", "blowup_S", "point_spectrum_S"))
    sp.add_argument("--lambda", dest="lam", default=None,
                    help='scalar: "3/4", "2", or "0.3+0.2i"')
    sp.add_argument("--vertex", type=_vertex_arg, default=None,
                    help="level:index of the target vertex (resolvent witnesses)")
    sp.add_argument("--p", type=float, default=1.0)
    sp.add_argument("--mode", choices=("auto", "exact", "complex"), default="auto")
    sp.add_argument("--summary", action="store_true",
                    help="omit the witness function entries from the output")
    sp.add_argument("--max-entries", type=int, default=200_000)

    sp = sub.add_parser("hypercyclic", help="hypercyclicity verdict plus right-inverse suite")
    _common(sp)
    sp.add_argument("--op", choices=("S", "B"), required=True)
    sp.add_argument("--samples", type=int, default=25)
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-suite", action="store_true")

    sp = sub.add_parser("gallery", help="built-in tree families")
    gal = sp.add_subparsers(dest="gallery_command", required=True)
    gl = gal.add_parser("list", help="list families with their headline claims")
    _common(gl, tree=False)
    gt = gal.add_parser("self-test", help="cross-check certified level data against counting")
    _common(gt, tree=False)
    gt.add_argument("--name", required=True)
    gt.add_argument("--params", type=_json_arg, default={})
    gt.add_argument("--depth", type=int, default=None)
    gt.add_argument("--max-power", type=int, default=3)
    gt.add_argument("--p-values", type=_int_list_arg, default=[1, 2])

    sp = sub.add_parser("verify", help="randomized lower bounds against the norm formulas")
    _common(sp)
    sp.add_argument("--op", choices=("S", "B"), required=True)
    sp.add_argument("--power", type=int, default=1)
    sp.add_argument("--p", type=float, default=1.0)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--no-extremal", action="store_true")
    sp.add_argument("--max-level", type=int, default=None)

    sp = sub.add_parser("apply", help="apply S^m or B^m to a function file")
    _common(sp)
    sp.add_argument("--op", choices=("S", "B"), required=True)
    sp.add_argument("--power", type=int, default=1)
    sp.add_argument("--function", required=True, help="path to a JSON function file")
    sp.add_argument("--out", default=None, help="write the result here instead of stdout")

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return parser


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _cmd_describe(args) -> int:
    payload = {"tree": args.tree, "depth": args.depth,
               "histogram_levels": args.histogram_levels}
    return _run("POST", "/describe", payload, args)


def _cmd_norm(args) -> int:
    payload = {"tree": args.tree, "depth": args.depth, "op": args.op,
               "power": args.power, "p": args.p}
    return _run("POST", "/norm", payload, args)


def _cmd_radius(args) -> int:
    payload = {"tree": args.tree, "depth": args.depth, "op": args.op,
               "p": args.p, "max_power": args.max_power}
    return _run("POST", "/radius", payload, args)


def _cmd_witness(args) -> int:
    payload = {"tree": args.tree, "depth": args.depth, "kind": args.kind,
               "lam": args.lam, "vertex": args.vertex, "p": args.p, "mode": args.mode,
               "include_function": not args.summary, "max_entries": args.max_entries}
    return _run("POST", "/witness", payload, args)


def _cmd_hypercyclic(args) -> int:
    payload = {"tree": args.tree, "depth": args.depth, "op": args.op,
               "suite": not args.no_suite, "samples": args.samples,
               "n_max": args.n_max, "p": args.p, "seed": args.seed}
    return _run("POST", "/hypercyclic", payload, args)


def _cmd_gallery(args) -> int:
    if args.gallery_command == "list":
        return _run("GET", "/gallery/list", None, args)
    payload = {"name": args.name, "params": args.params, "depth": args.depth,
               "max_power": args.max_power, "p_values": args.p_values}
    return _run("POST", "/gallery/self_test", payload, args)


def _cmd_verify(args) -> int:
    payload = {"tree": args.tree, "depth": args.depth, "op": args.op,
               "power": args.power, "p": args.p, "trials": args.trials,
               "seed": args.seed, "extremal": not args.no_extremal,
               "max_level": args.max_level}
    return _run("POST", "/verify", payload, args)


def _cmd_apply(args) -> int:
    try:
        with open(args.function, "r", encoding="utf-8") as fh:
            entries = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: cannot read function file {args.function}: {exc}\n")
        return 1
    payload = {"tree": args.tree, "depth": args.depth, "op": args.op,
               "power": args.power, "function": entries}
    status, body = _request("POST", "/apply", payload, args.server)
    if status != 200:
        if isinstance(body, dict) and "error" in body:
            err = body["error"]
            sys.stderr.write(f"error ({err.get('type', 'unknown')}): {err.get('message', '')}\n")
        else:
            sys.stderr.write(f"error: HTTP {status}: {json.dumps(body, sort_keys=True)}\n")
        return 1 if status != 422 else 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(body, fh, sort_keys=True, indent=2)
            fh.write("\n")
        return 0
    _emit(body, args.format)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_DISPATCH = {
    "describe": _cmd_describe,
    "norm": _cmd_norm,
    "radius": _cmd_radius,
    "witness": _cmd_witness,
    "hypercyclic": _cmd_hypercyclic,
    "gallery": _cmd_gallery,
    "verify": _cmd_verify,
    "apply": _cmd_apply,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except httpx.HTTPError as exc:
        sys.stderr.write(f"error: transport failure: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
