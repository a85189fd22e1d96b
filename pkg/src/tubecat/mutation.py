"""Left and right mutation of simple-minded collections.

Left mutation at member i shifts it once and replaces every other member by
the cone of its minimal left approximation into the extension closure of the
mutated one.  For stalk members of length at most p the approximation target
is a single copy (graded homs here are at most one-dimensional), so each
cone is computed by the closed-form kernel/cokernel or extension-middle
rules, optionally cross-checked against the explicit-matrix oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import socle_index
from .derived import StalkObject, cone_alignments, cone_summands, graded_hom, shift
from . import oracle
from .smc import Smc, VerificationError, classify, verify


class UnsupportedCaseError(RuntimeError):
    """An approximation of multiplicity >= 2 arose; not produced by valid SMCs."""


class InternalInvariantError(RuntimeError):
    """Mutation of a verified SMC produced something invalid; indicates a bug."""


class CapExhaustedError(RuntimeError):
    def __init__(self, message: str, state: Smc):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class MutationStep:
    index: int
    direction: str  # "left" | "right"
    before: Smc
    after: Smc


def _cone_of_unique_map(src: StalkObject, tgt: StalkObject, oracle_check: bool) -> StalkObject:
    aligns = cone_alignments(src, tgt)
    if len(aligns) != 1:
        raise UnsupportedCaseError(
            f"approximation {src} -> {tgt} has multiplicity {len(aligns)}")
    parts = cone_summands(src, tgt, aligns[0])
    if oracle_check and oracle.cone_parts(src, tgt, aligns[0]) != parts:
        raise InternalInvariantError(f"oracle disagrees on cone of {src} -> {tgt}")
    if len(parts) != 1:
        raise InternalInvariantError(
            f"cone of {src} -> {tgt} is decomposable: {parts}")
    return parts[0]


def mutate_left(x: Smc, i: int, *, validate: bool = True, oracle_check: bool = False) -> Smc:
    """Left mutation at slot i; every other member becomes the cone of its
    approximation into the mutated one."""
    target = x.objects[i]
    new = list(x.objects)
    new[i] = shift(target, 1)
    for j, obj in enumerate(x.objects):
        if j == i:
            continue
        d = graded_hom(obj, target, 1)  # Hom(obj[-1], target)
        if d == 0:
            continue
        if d > 1:
            raise UnsupportedCaseError(
                f"dim Hom({obj}[-1], {target}) = {d}; minimal approximation not add-unique")
        new[j] = _cone_of_unique_map(shift(obj, -1), target, oracle_check)
    out = Smc(tuple(new))
    if validate:
        try:
            out = Smc(out.objects, classify(out))
        except VerificationError as exc:
            raise InternalInvariantError(f"left mutation broke the SMC axioms: {exc}") from exc
    return out


def mutate_right(x: Smc, i: int, *, validate: bool = True, oracle_check: bool = False) -> Smc:
    """Right mutation at slot i; inverse to left mutation at the same slot."""
    target = x.objects[i]
    new = list(x.objects)
    new[i] = shift(target, -1)
    for j, obj in enumerate(x.objects):
        if j == i:
            continue
        d = graded_hom(target, obj, 1)  # Hom(target, obj[1])
        if d == 0:
            continue
        if d > 1:
            raise UnsupportedCaseError(
                f"dim Hom({target}, {obj}[1]) = {d}; minimal approximation not add-unique")
        cone = _cone_of_unique_map(target, shift(obj, 1), oracle_check)
        new[j] = shift(cone, -1)
    out = Smc(tuple(new))
    if validate:
        try:
            out = Smc(out.objects, classify(out))
        except VerificationError as exc:
            raise InternalInvariantError(f"right mutation broke the SMC axioms: {exc}") from exc
    return out


def mutate(x: Smc, i: int, direction: str, **kw) -> Smc:
    if direction == "left":
        return mutate_left(x, i, **kw)
    if direction == "right":
        return mutate_right(x, i, **kw)
    raise ValueError(f"unknown direction {direction!r}")


def is_two_term(x: Smc) -> bool:
    """Cohomology concentrated in degrees 0 and -1, i.e. all shifts in {0, 1}."""
    return all(o.k in (0, 1) for o in x.objects)


def _member_key(o: StalkObject) -> tuple[int, int, int]:
    return (o.k, o.inner.j, o.inner.t)


def path_to_standard(x: Smc, cap: int = 50) -> list[MutationStep]:
    """A mutation sequence from x to the standard collection of simples.

    Strategy: while the tube part is proper, mutate at the block member
    closest to merging into it (left mutations for members hanging below the
    tube shift, right mutations for exchanged members hanging above); once
    everything is a shifted copy of the simples, walk the shift down or up
    one level at a time through the two-term band.
    """
    steps: list[MutationStep] = []
    cur = verify(x) if x.certificate is None else x

    def apply(direction: str, idx: int) -> None:
        nonlocal cur
        if len(steps) >= cap:
            cert = classify(cur)
            raise CapExhaustedError(
                f"no path within {cap} steps: tube rank {cert.rank}, "
                f"shifts {sorted(o.k for o in cur.objects)}", cur)
        nxt = mutate(cur, idx, direction)
        steps.append(MutationStep(idx, direction, cur, nxt))
        cur = nxt

    while True:
        cert = cur.certificate or classify(cur)
        if cert.rank == cur.p:
            s = cert.shift_norm
            if s == 0:
                return steps
            direction = "right" if s > 0 else "left"
            while any(o.k == s for o in cur.objects):
                idx = min((i for i, o in enumerate(cur.objects) if o.k == s),
                          key=lambda i: _member_key(cur.objects[i]))
                apply(direction, idx)
            continue
        tube = set(cert.x_tube)
        sn = cert.shift_norm
        anchors = {seg.a % cur.p for seg in cert.segments}
        tile_starts = {seg.tile_start % cur.p for seg in cert.segments}
        best = None
        for i, o in enumerate(cur.objects):
            if o in tube:
                continue
            q = o.k - sn
            # only the key members (top at an anchor, or an exchanged image
            # rooted at a tile start) walk into the tube part
            if q < 0 and o.inner.j in anchors:
                dist = -q
            elif q >= 1 and socle_index(o.inner) in tile_starts:
                dist = q
            else:
                continue
            key = (dist, _member_key(o))
            if best is None or key < best[0]:
                best = (key, i, q)
        if best is None:
            raise InternalInvariantError("proper tube part but no key block member")
        _, idx, q = best
        apply("left" if q < 0 else "right", idx)
