"""Wire schema shared by the CLI and the HTTP service.

Collections travel as {"p": int, "objects": [{"j","t","k"}]}.  Parsing is
strict: unknown fields are rejected so clients and core cannot drift
silently, and every response carries the schema version.
"""

from __future__ import annotations

from typing import Any

from .derived import StalkObject, stalk
from .smc import Smc

SCHEMA = "tubecat/1"


class WireError(ValueError):
    """Malformed request payload."""


def _require_keys(d: dict, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(d, dict):
        raise WireError(f"{where}: expected an object, got {type(d).__name__}")
    unknown = set(d) - allowed
    if unknown:
        raise WireError(f"{where}: unknown fields {sorted(unknown)}")
    missing = required - set(d)
    if missing:
        raise WireError(f"{where}: missing fields {sorted(missing)}")


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise WireError(f"{where}: expected an integer, got {value!r}")
    return value


def stalk_from_wire(p: int, d: dict, where: str = "object") -> StalkObject:
    _require_keys(d, {"j", "t", "k"}, {"j", "t"}, where)
    j = _as_int(d["j"], f"{where}.j")
    t = _as_int(d["t"], f"{where}.t")
    k = _as_int(d.get("k", 0), f"{where}.k")
    if not 0 <= j < p:
        raise WireError(f"{where}.j: {j} out of range for rank {p}")
    if t < 1:
        raise WireError(f"{where}.t: length must be >= 1")
    return stalk(p, j, t, k)


def stalk_to_wire(o: StalkObject) -> dict:
    return {"j": o.inner.j, "t": o.inner.t, "k": o.k}


def smc_from_wire(d: dict, where: str = "smc") -> Smc:
    _require_keys(d, {"p", "objects"}, {"p", "objects"}, where)
    p = _as_int(d["p"], f"{where}.p")
    if p < 1:
        raise WireError(f"{where}.p: rank must be >= 1")
    objs = d["objects"]
    if not isinstance(objs, list):
        raise WireError(f"{where}.objects: expected a list")
    members = tuple(stalk_from_wire(p, o, f"{where}.objects[{i}]")
                    for i, o in enumerate(objs))
    if len(members) != p:
        raise WireError(f"{where}: expected {p} objects, got {len(members)}")
    return Smc(members)


def smc_to_wire(x: Smc) -> dict:
    return {"p": x.p,
            "objects": [stalk_to_wire(o) for o in sorted(
                x.objects, key=lambda o: (o.k, o.inner.j, o.inner.t))]}


def smc_from_triples_json(p: int, triples: Any, where: str = "smc") -> Smc:
    """Compact CLI form: [[j, t, k], ...]."""
    if not isinstance(triples, list):
        raise WireError(f"{where}: expected a list of [j, t, k] triples")
    members = []
    for i, item in enumerate(triples):
        if not isinstance(item, list) or len(item) not in (2, 3):
            raise WireError(f"{where}[{i}]: expected [j, t, k]")
        j, t = (_as_int(v, f"{where}[{i}]") for v in item[:2])
        k = _as_int(item[2], f"{where}[{i}]") if len(item) == 3 else 0
        members.append({"j": j, "t": t, "k": k})
    return smc_from_wire({"p": p, "objects": members}, where)
