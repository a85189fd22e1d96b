"""Operation handlers shared verbatim by the CLI JSON mode and the service.

Each handler takes a parsed payload and returns a JSON-ready dict carrying
the schema version, so service responses and CLI output cannot diverge.
"""

from __future__ import annotations

from typing import Callable

from . import exchange
from .derived import graded_hom
from .extquiver import associated_quiver, ext_quiver_of, gentle_of
from .mutation import mutate
from .smc import Smc, classify, enumerate_smcs, verify
from .wire import SCHEMA, WireError, smc_from_wire, smc_to_wire, stalk_from_wire, stalk_to_wire


def _int_field(payload: dict, name: str, default: int | None = None,
               minimum: int | None = None) -> int:
    if name not in payload:
        if default is None:
            raise WireError(f"missing field {name!r}")
        return default
    v = payload[name]
    if isinstance(v, bool) or not isinstance(v, int):
        raise WireError(f"{name}: expected an integer")
    if minimum is not None and v < minimum:
        raise WireError(f"{name}: must be >= {minimum}")
    return v


def handle_hom(payload: dict) -> dict:
    p = _int_field(payload, "p", minimum=1)
    src = stalk_from_wire(p, payload.get("from"), "from")
    tgt = stalk_from_wire(p, payload.get("to"), "to")
    extra = set(payload) - {"p", "from", "to", "degree"}
    if extra:
        raise WireError(f"unknown fields {sorted(extra)}")
    if "degree" in payload:
        n = _int_field(payload, "degree")
        degrees = [[n, graded_hom(src, tgt, n)]]
    else:
        lo = src.k - tgt.k
        degrees = [[n, graded_hom(src, tgt, n)] for n in (lo, lo + 1)
                   if graded_hom(src, tgt, n) > 0]
    return {"schema": SCHEMA, "p": p, "from": stalk_to_wire(src),
            "to": stalk_to_wire(tgt), "degrees": degrees}


def handle_verify(payload: dict) -> dict:
    x = smc_from_wire(payload.get("smc"), "smc")
    verified = verify(x)
    return {"schema": SCHEMA, "ok": True, "smc": smc_to_wire(verified)}


def _classification_dict(x) -> dict:
    cert = x.certificate
    return {
        "shift_norm": cert.shift_norm,
        "rank": cert.rank,
        "segments": [{"a": s.a, "l": s.l} for s in cert.segments],
        "x_tube": [stalk_to_wire(o) for o in cert.x_tube],
        "pre_smc": [[stalk_to_wire(o) for o in blk] for blk in cert.pre.blocks],
    }


def handle_classify(payload: dict) -> dict:
    x = verify(smc_from_wire(payload.get("smc"), "smc"))
    out = {"schema": SCHEMA, "ok": True, "smc": smc_to_wire(x)}
    out.update(_classification_dict(x))
    return out


def handle_mutate(payload: dict) -> dict:
    x = smc_from_wire(payload.get("smc"), "smc")
    at = _int_field(payload, "at", minimum=0)
    direction = payload.get("dir", "left")
    if direction not in ("left", "right"):
        raise WireError("dir: expected 'left' or 'right'")
    members = sorted(x.objects, key=lambda o: (o.k, o.inner.j, o.inner.t))
    if at >= len(members):
        raise WireError(f"at: index {at} out of range")
    ordered = verify(x)
    out = mutate(Smc(tuple(members), ordered.certificate), at, direction)
    return {"schema": SCHEMA, "smc": smc_to_wire(out), "at": at, "dir": direction,
            "mutated": stalk_to_wire(members[at])}


def handle_extquiver(payload: dict) -> dict:
    x = verify(smc_from_wire(payload.get("smc"), "smc"))
    q = ext_quiver_of(x)
    out = {"schema": SCHEMA, "vertices": list(q.vertices),
           "arrows": [list(a) for a in q.arrows]}
    if payload.get("gentle"):
        g = gentle_of(x)
        out["gentle"] = {
            "rank": g.rank,
            "cycle": list(g.cycle),
            "vertices": list(g.labels),
            "arrows": [{"src": a.src, "tgt": a.tgt, "degree": a.degree,
                        "kind": a.kind, "color": a.color} for a in g.arrows],
        }
        qa = associated_quiver(g)
        out["associated_arrows"] = [list(a) for a in qa.arrows]
    return out


def handle_explore(payload: dict) -> dict:
    start = smc_from_wire(payload.get("start"), "start")
    radius = _int_field(payload, "radius", minimum=0)
    window = _int_field(payload, "window", default=radius + max(
        abs(o.k) for o in start.objects) + 1)
    g = exchange.explore(start, radius, window)
    out = exchange.to_json_dict(g)
    out["schema"] = SCHEMA
    return out


def handle_enumerate(payload: dict) -> dict:
    p = _int_field(payload, "p", minimum=1)
    window = _int_field(payload, "window", minimum=0)
    kmax = _int_field(payload, "kmax", default=window, minimum=0)
    smcs = enumerate_smcs(p, window, kmax)
    out = {"schema": SCHEMA, "p": p, "window": window, "kmax": kmax,
           "count": len(smcs), "smcs": [smc_to_wire(x) for x in smcs]}
    if payload.get("group_by") == "preclass":
        groups: dict[str, int] = {}
        for x in smcs:
            cert = x.certificate or classify(x)
            sig = []
            for seg, blk in zip(cert.segments, cert.pre.blocks):
                base = (seg.a - seg.l + 1) % p
                sig.append((seg.l, tuple(sorted(
                    (((o.inner.j - o.inner.t + 1) - base) % p, o.inner.t) for o in blk))))
            key = repr(tuple(sorted(sig)))
            groups[key] = groups.get(key, 0) + 1
        out["classes"] = [{"shape": k, "count": v} for k, v in sorted(groups.items())]
    return out


HANDLERS: dict[str, Callable[[dict], dict]] = {
    "hom": handle_hom,
    "verify": handle_verify,
    "classify": handle_classify,
    "mutate": handle_mutate,
    "extquiver": handle_extquiver,
    "explore": handle_explore,
    "enumerate": handle_enumerate,
}


def dispatch(op: str, payload: dict) -> dict:
    if op not in HANDLERS:
        raise WireError(f"unknown operation {op!r}")
    return HANDLERS[op](payload)
