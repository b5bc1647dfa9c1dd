"""Command-line front end.

The CLI is a thin client over the service layer: each subcommand builds
the same request document the HTTP endpoints accept and dispatches it
in-process by default, or to a running server with ``--server URL``.
Output is canonical JSON (sorted keys), byte-identical for identical
inputs.

Exit codes: 0 the command ran (verdicts live in the report), 2 input
error (bad JSON, schema violation, unknown fixture, precondition
failure, size cap), 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request

from fastapi import HTTPException

from . import service
from .jsonio import dumps_canonical

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3


class CliInputError(ValueError):
    pass


def _read_datum_file(path: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        raise CliInputError(f"cannot read {path!r}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliInputError(
            f"input JSON error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def _datum_payload(args) -> dict:
    if getattr(args, "fixture", None):
        return {"fixture": args.fixture}
    if getattr(args, "input", None):
        return {"datum": _read_datum_file(args.input)}
    raise CliInputError("provide --fixture ID or --input FILE")


def _split_csv(text: str) -> list[str]:
    return [piece.strip() for piece in text.split(",") if piece.strip()]


def _parse_lines_option(text: str) -> list[list[str]]:
    lines = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        quad = _split_csv(chunk)
        if len(quad) != 4:
            raise CliInputError(f"line {chunk!r} needs four parameters a,b,c,d")
        lines.append(quad)
    if not lines:
        raise CliInputError("empty --lines option")
    return lines


def _parse_charge1_option(text: str) -> dict:
    vectors: dict[str, list[str]] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise CliInputError(f"charge-1 chunk {chunk!r} must look like x=1,0")
        name, _, value = chunk.partition("=")
        name = name.strip()
        if name not in ("x", "y", "z", "w"):
            raise CliInputError(f"unknown charge-1 vector {name!r}")
        vectors[name] = _split_csv(value)
    missing = {"x", "y", "z", "w"} - vectors.keys()
    if missing:
        raise CliInputError(f"missing charge-1 vectors: {', '.join(sorted(missing))}")
    return vectors


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_LOCAL_ENDPOINTS = {
    "/check": (service.check, service.CheckRequest),
    "/monad": (service.monad, service.MonadRequest),
    "/deform": (service.deform, service.DeformRequest),
    "/du": (service.du, service.DuRequest),
    "/rank0": (service.rank0_endpoint, service.Rank0Request),
}


def _dispatch_local(path: str, payload: dict | None) -> dict:
    if path == "/fixtures":
        return service.fixtures()
    endpoint, request_model = _LOCAL_ENDPOINTS[path]
    try:
        request = request_model(**(payload or {}))
    except Exception as exc:  # pydantic validation
        raise CliInputError(str(exc)) from None
    result = endpoint(request)
    return result if isinstance(result, dict) else result.model_dump()


def _dispatch_remote(server: str, path: str, payload: dict | None) -> dict:
    url = server.rstrip("/") + path
    if payload is None:
        request = urllib.request.Request(url)
    else:
        request = urllib.request.Request(
            url,
            data=json.dumps(payload).encode("utf-8"),
            headers={"Content-Type": "application/json"},
        )
    try:
        with urllib.request.urlopen(request) as response:
            return json.loads(response.read().decode("utf-8"))
    except urllib.error.HTTPError as exc:
        body = exc.read().decode("utf-8", errors="replace")
        if exc.code >= 500:
            raise service.InvariantViolation(f"server error {exc.code}: {body}") from None
        raise CliInputError(f"server rejected the request ({exc.code}): {body}") from None
    except urllib.error.URLError as exc:
        raise CliInputError(f"cannot reach server {server!r}: {exc.reason}") from None


def _dispatch(args, path: str, payload: dict | None) -> dict:
    if getattr(args, "server", None):
        return _dispatch_remote(args.server, path, payload)
    return _dispatch_local(path, payload)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_check(args) -> dict:
    payload = _datum_payload(args)
    payload["max_c"] = args.max_c
    return _dispatch(args, "/check", payload)


def _cmd_monad(args) -> dict:
    payload = _datum_payload(args)
    if args.eval:
        point = _split_csv(args.eval)
        if len(point) != 4:
            raise CliInputError("--eval needs four comma-separated coordinates")
        payload["point"] = point
    if args.line:
        points = [p for p in args.line.split(";") if p.strip()]
        if len(points) != 2:
            raise CliInputError("--line needs two points separated by ';'")
        payload["line"] = [_split_csv(p) for p in points]
    payload["include_minors"] = bool(args.minors)
    payload["include_matrices"] = not args.no_matrices
    return _dispatch(args, "/monad", payload)


def _cmd_deform(args) -> dict:
    payload = _datum_payload(args)
    payload["include_complex"] = bool(getattr(args, "complex", False))
    return _dispatch(args, "/deform", payload)


def _cmd_du(args) -> dict:
    payload = _datum_payload(args)
    payload["require_stable"] = not args.allow_unstable
    payload["include_polystable"] = bool(args.polystable)
    return _dispatch(args, "/du", payload)


def _cmd_rank0(args) -> dict:
    payload: dict = {}
    if args.lines:
        payload["lines"] = _parse_lines_option(args.lines)
        if args.traces is not None:
            payload["traces"] = args.traces
    if args.charge1:
        payload["charge1"] = _parse_charge1_option(args.charge1)
    if args.c2_fixtures:
        payload["c2_fixtures"] = True
        payload["samples_per_ideal"] = args.samples
        payload["intersection_samples"] = args.intersection_samples
        payload["seed"] = args.seed
    if not payload:
        raise CliInputError("provide --lines, --charge1 or --c2-fixtures")
    return _dispatch(args, "/rank0", payload)


def _cmd_fixtures(args) -> dict:
    return _dispatch(args, "/fixtures", None)


def _cmd_serve(args) -> dict:
    import uvicorn

    uvicorn.run("adhmkit.service:app", host=args.host, port=args.port)
    return {}


def _add_datum_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", metavar="FILE",
                        help="datum JSON file ('-' for stdin)")
    parser.add_argument("--fixture", metavar="ID", help="built-in fixture id")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adhmkit",
        description=(
            "Exact-arithmetic analysis of ADHM data on the projective line "
            "and the associated framed perverse instantons."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="compact single-line JSON output")
    common.add_argument("--server", metavar="URL",
                        help="send the request to a running service instead "
                             "of computing in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", parents=[common],
                             help="ADHM equation, stability suite, "
                                  "pointwise loci and Chern data")
    _add_datum_options(p_check)
    p_check.add_argument("--max-c", type=int, default=8,
                         help="cap on the charge for Krylov enumerations")
    p_check.set_defaults(handler=_cmd_check)

    p_monad = sub.add_parser("monad", parents=[common], help="monad construction, framing "
                                           "certificate, degeneracy analysis")
    _add_datum_options(p_monad)
    p_monad.add_argument("--eval", metavar="X0,X1,X2,X3",
                         help="evaluate the monad at a point")
    p_monad.add_argument("--line", metavar="P0;P1",
                         help="restrict to the line through two points")
    p_monad.add_argument("--minors", action="store_true",
                         help="include the degeneracy minors")
    p_monad.add_argument("--no-matrices", action="store_true",
                         help="omit the alpha/beta matrices")
    p_monad.set_defaults(handler=_cmd_monad)

    p_deform = sub.add_parser("deform", parents=[common], help="deformation cohomology and the "
                                             "submersion criterion")
    _add_datum_options(p_deform)
    p_deform.add_argument("--complex", action="store_true",
                          help="dump the two differentials")
    p_deform.set_defaults(handler=_cmd_deform)

    p_du = sub.add_parser("du", parents=[common], help="regular quotient plus rank-0 remainder")
    _add_datum_options(p_du)
    p_du.add_argument("--allow-unstable", action="store_true",
                      help="decompose even when the datum is not stable")
    p_du.add_argument("--polystable", action="store_true",
                      help="include the reachable/unobservable splitting "
                           "verdict")
    p_du.set_defaults(handler=_cmd_du)

    p_rank0 = sub.add_parser("rank0", parents=[common], help="rank-0 module invariants")
    p_rank0.add_argument("--lines", metavar="A,B,C,D;...",
                         help="line configuration (affine parameters)")
    p_rank0.add_argument("--traces", type=int, metavar="N",
                         help="word-length cap for trace invariants")
    p_rank0.add_argument("--charge1", metavar="x=..;y=..;z=..;w=..",
                         help="charge-1 framing vectors")
    p_rank0.add_argument("--c2-fixtures", action="store_true",
                         help="run the charge-2 component certifications")
    p_rank0.add_argument("--samples", type=int, default=50,
                         help="samples per component ideal")
    p_rank0.add_argument("--intersection-samples", type=int, default=20)
    p_rank0.add_argument("--seed", type=int, default=0)
    p_rank0.set_defaults(handler=_cmd_rank0)

    p_fixtures = sub.add_parser("fixtures", parents=[common], help="list built-in fixtures")
    p_fixtures.set_defaults(handler=_cmd_fixtures)

    p_serve = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HTTPException as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return EXIT_INPUT if exc.status_code < 500 else EXIT_INVARIANT
    except service.InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.command != "serve":
        print(dumps_canonical(report, compact=args.json))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
