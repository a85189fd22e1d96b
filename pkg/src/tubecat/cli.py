"""Command-line front end; the service mode reuses the same handlers."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import api, exchange
from .mutation import InternalInvariantError as MutationInvariantError
from .oracle import InternalInvariantError as OracleInvariantError
from .smc import InternalInvariantError as SmcInvariantError, VerificationError
from .wire import SCHEMA, WireError, smc_from_triples_json, smc_to_wire

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_NOT_SMC = 2
EXIT_INTERNAL = 3

log = logging.getLogger("tubecat")


def _setup_logging() -> None:
    level = os.environ.get("TUBECAT_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _parse_triple(text: str) -> dict:
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise WireError(f"expected j,t[,k] at {text!r}")
    try:
        nums = [int(x) for x in parts]
    except ValueError as exc:
        raise WireError(f"non-integer component in {text!r}") from exc
    return {"j": nums[0], "t": nums[1], "k": nums[2] if len(nums) == 3 else 0}


def _smc_payload(args: argparse.Namespace) -> dict:
    try:
        triples = json.loads(args.smc)
    except json.JSONDecodeError as exc:
        raise WireError(f"--smc: invalid JSON at position {exc.pos}") from exc
    return smc_to_wire(smc_from_triples_json(args.p, triples, "--smc"))


def _emit(args: argparse.Namespace, result: dict, human) -> None:
    if getattr(args, "format", "table") == "json":
        print(json.dumps(result, sort_keys=True))
    else:
        human(result)


def _fmt_obj(o: dict) -> str:
    tag = f"S{o['j']}"
    if o["t"] > 1:
        tag += f"^({o['t']})"
    if o.get("k"):
        tag += f"[{o['k']}]"
    return tag


def _fmt_smc(w: dict) -> str:
    return "{" + ", ".join(_fmt_obj(o) for o in w["objects"]) + "}"


def cmd_hom(args) -> int:
    payload = {"p": args.p, "from": _parse_triple(args.src), "to": _parse_triple(args.dst)}
    if args.degree is not None:
        payload["degree"] = args.degree
    result = api.dispatch("hom", payload)

    def human(res):
        if not res["degrees"]:
            print("all graded homs vanish")
        for n, d in res["degrees"]:
            print(f"degree {n}: dim {d}")

    _emit(args, result, human)
    return EXIT_OK


def cmd_verify(args) -> int:
    result = api.dispatch("verify", _wrap_smc(args))
    _emit(args, result, lambda res: print(f"ok: {_fmt_smc(res['smc'])}"))
    return EXIT_OK


def cmd_classify(args) -> int:
    result = api.dispatch("classify", _wrap_smc(args))

    def human(res):
        print(f"smc:       {_fmt_smc(res['smc'])}")
        print(f"tube rank: {res['rank']} at shift {res['shift_norm']}")
        print(f"segments:  {res['segments'] or 'none (standard heart)'}")
        print(f"tube part: {', '.join(_fmt_obj(o) for o in res['x_tube'])}")
        for i, blk in enumerate(res["pre_smc"]):
            print(f"block {i}:   {', '.join(_fmt_obj(o) for o in blk)}")

    _emit(args, result, human)
    return EXIT_OK


def _wrap_smc(args) -> dict:
    return {"smc": _smc_payload(args)}


def cmd_mutate(args) -> int:
    payload = _wrap_smc(args)
    payload["at"] = args.at
    payload["dir"] = args.dir
    result = api.dispatch("mutate", payload)

    def human(res):
        print(f"mutated {_fmt_obj(res['mutated'])} ({res['dir']})")
        print(_fmt_smc(res["smc"]))

    _emit(args, result, human)
    return EXIT_OK


def cmd_extquiver(args) -> int:
    payload = _wrap_smc(args)
    payload["gentle"] = bool(args.gentle)
    result = api.dispatch("extquiver", payload)
    if args.format == "dot":
        from .extquiver import GradedQuiver, quiver_to_dot
        q = GradedQuiver(tuple(result["vertices"]),
                         tuple(tuple(a) for a in result["arrows"]))
        print(quiver_to_dot(q), end="")
        return EXIT_OK

    def human(res):
        names = res["vertices"]
        for s, t, d in res["arrows"]:
            print(f"{names[s]} -> {names[t]}  degree {d}")
        if "gentle" in res:
            g = res["gentle"]
            print(f"gentle one-cycle quiver of rank {g['rank']}")
            for a in g["arrows"]:
                print(f"  {names[a['src']]} -> {names[a['tgt']]}"
                      f"  degree {a['degree']} [{a['kind']}/{a['color']}]")

    _emit(args, result, human)
    return EXIT_OK


def cmd_eg(args) -> int:
    payload = {"start": _smc_payload(args), "radius": args.radius}
    if args.window is not None:
        payload["window"] = args.window
    if args.format == "dot":
        from .wire import smc_from_wire
        start = smc_from_wire(payload["start"], "start")
        window = args.window if args.window is not None else args.radius + max(
            abs(o["k"]) for o in payload["start"]["objects"]) + 1
        g = exchange.explore(start, args.radius, window)
        print(exchange.to_dot(g), end="")
        return EXIT_OK
    result = api.dispatch("explore", payload)

    def human(res):
        print(f"{len(res['vertices'])} vertices, {len(res['edges'])} edges "
              f"(radius {res['radius']}, window {res['window']})")

    _emit(args, result, human)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    payload = {"p": args.p, "window": args.window, "kmax": args.kmax}
    if args.group_by:
        payload["group_by"] = args.group_by
    result = api.dispatch("enumerate", payload)

    def human(res):
        print(f"{res['count']} collections (window {res['window']}, kmax {res['kmax']})")
        if "classes" in res:
            print(f"{len(res['classes'])} classes")
            for c in res["classes"]:
                print(f"  {c['count']:5d}  {c['shape']}")

    _emit(args, result, human)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve
    serve(host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tubecat",
                                 description="computations with simple-minded "
                                             "collections in tube categories")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_fmt(sp, choices=("table", "json")):
        sp.add_argument("--format", choices=choices, default="table")

    sp = sub.add_parser("hom", help="graded hom dimensions between stalk objects")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--from", dest="src", required=True, metavar="j,t,k")
    sp.add_argument("--to", dest="dst", required=True, metavar="j,t,k")
    sp.add_argument("--degree", type=int)
    add_fmt(sp)
    sp.set_defaults(func=cmd_hom)

    for name, func, extra in (
        ("verify", cmd_verify, ()),
        ("classify", cmd_classify, ()),
    ):
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--smc", required=True, help='JSON triples [[j,t,k],...]')
        add_fmt(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("mutate", help="left/right mutation at an index")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--smc", required=True)
    sp.add_argument("--at", type=int, required=True)
    sp.add_argument("--dir", choices=("left", "right"), default="left")
    add_fmt(sp)
    sp.set_defaults(func=cmd_mutate)

    sp = sub.add_parser("extquiver", help="Ext-quiver (and gentle structure) of an SMC")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--smc", required=True)
    sp.add_argument("--gentle", action="store_true")
    add_fmt(sp, ("table", "json", "dot"))
    sp.set_defaults(func=cmd_extquiver)

    sp = sub.add_parser("eg", help="bounded exchange-graph exploration")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--smc", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--window", type=int)
    add_fmt(sp, ("table", "json", "dot"))
    sp.set_defaults(func=cmd_eg)

    sp = sub.add_parser("enumerate", help="bounded enumeration of all SMCs")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--window", type=int, required=True)
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--group-by", choices=("preclass",), dest="group_by")
    add_fmt(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("serve", help="local JSON service for scripts and the explorer UI")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8421)
    sp.set_defaults(func=cmd_serve)
    return ap


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except WireError as exc:
        print(json.dumps({"schema": SCHEMA, "error": {"type": "invalid-input",
                                                      "message": str(exc)}}))
        return EXIT_INVALID_INPUT
    except VerificationError as exc:
        print(json.dumps({"schema": SCHEMA, "error": {"type": "not-simple-minded",
                                                      "message": str(exc)}}))
        return EXIT_NOT_SMC
    except (MutationInvariantError, OracleInvariantError, SmcInvariantError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": {"type": "internal-invariant",
                                                      "message": str(exc)}}))
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
