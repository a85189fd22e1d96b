"""Simple-minded collections in the derived category of a rank-p tube.

A simple-minded collection (SMC) is a set of p stalk objects with no
negative-degree homs, one-dimensional endomorphism rings, no degree-0 homs
between distinct members, and generating the derived category.  Every SMC
decomposes into a "tube part" (the simples of a tube subcategory, all at one
shift, whose supports tile Z/p) and type-A blocks hanging inside the tiles;
`classify` recovers that structure and `assemble_smc` rebuilds the collection
from it.  The two maps are mutually inverse, which is what certifies the
generation axiom: a collection of the classified shape always generates,
and a collection admitting no such shape is not an SMC.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .core import TubeObject, socle_index
from .derived import StalkObject, graded_hom, hom_degrees, shift, stalk, tau_derived
from . import oracle


class VerificationError(Exception):
    """The collection is not a simple-minded collection."""


class AxiomViolation(VerificationError):
    def __init__(self, axiom: int, x: StalkObject, y: StalkObject, degree: int, dim: int):
        self.axiom = axiom
        self.pair = (x, y)
        self.degree = degree
        self.dim = dim
        super().__init__(
            f"axiom {axiom} fails: dim Hom^({degree})({x}, {y}) = {dim}")


class ClassificationFailure(VerificationError):
    pass


class InternalInvariantError(RuntimeError):
    """A structural guarantee was violated; indicates a bug, not bad input."""


@dataclass(frozen=True, order=True)
class Segment:
    """A run of simples S_{a-l+1}, ..., S_a excluded by a heart's tube part."""

    a: int
    l: int

    def covers(self, p: int) -> list[int]:
        return [(self.a - i) % p for i in range(self.l)]

    @property
    def tile_start(self) -> int:
        # the block tile extends one step below the run, down to its socle slot
        return self.a - self.l


@dataclass(frozen=True)
class PreSmc:
    """Type-A collections attached to a system of disjoint runs of simples.

    blocks[i] is a simple-minded collection of the triangulated subcategory
    generated by the simples of segments[i]; shifts are normalized so the
    ambient tube part sits at shift 0.
    """

    p: int
    segments: tuple[Segment, ...]
    blocks: tuple[tuple[StalkObject, ...], ...]

    def members(self) -> tuple[StalkObject, ...]:
        return tuple(x for blk in self.blocks for x in blk)


@dataclass(frozen=True)
class Classification:
    """Certificate attached to a verified SMC."""

    p: int
    shift_norm: int
    segments: tuple[Segment, ...]
    x_tube: tuple[StalkObject, ...]
    pre: PreSmc

    @property
    def rank(self) -> int:
        return len(self.x_tube)


class Smc:
    """A collection of exactly p stalk objects, optionally with its certificate.

    Member order is positional identity: mutation at index i replaces the
    object at slot i.  Equality and hashing ignore order and certificate.
    """

    __slots__ = ("p", "objects", "certificate")

    def __init__(self, objects: Sequence[StalkObject], certificate: Optional[Classification] = None):
        objects = tuple(objects)
        if not objects:
            raise ValueError("empty collection")
        p = objects[0].p
        if any(o.p != p for o in objects):
            raise ValueError("mixed tube ranks in one collection")
        self.p = p
        self.objects = objects
        self.certificate = certificate

    def key(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(sorted((o.k, o.inner.j, o.inner.t) for o in self.objects))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Smc) and self.p == other.p and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.p, self.key()))

    def __repr__(self) -> str:
        return "{" + ", ".join(str(o) for o in sorted(self.objects)) + "}"

    def sorted(self) -> "Smc":
        return Smc(tuple(sorted(self.objects, key=lambda o: (o.k, o.inner.j, o.inner.t))),
                   self.certificate)


def simples_smc(p: int, k: int = 0) -> Smc:
    """The standard collection: all p simples placed at shift k."""
    return Smc(tuple(stalk(p, j, 1, k) for j in range(p)))


def smc_from_triples(p: int, triples: Iterable[tuple[int, int, int]]) -> Smc:
    return Smc(tuple(stalk(p, j, t, k) for (j, t, k) in triples))


def pair_violation(x: StalkObject, y: StalkObject) -> Optional[AxiomViolation]:
    """First axiom-1/2 violation witnessed by the ordered pair (x, y)."""
    for n, d in hom_degrees(x, y):
        if n < 0:
            return AxiomViolation(1, x, y, n, d)
        if n == 0 and x != y:
            return AxiomViolation(2, x, y, 0, d)
    return None


def verify_axioms(objects: Sequence[StalkObject]) -> None:
    """Check SMC axioms 1 and 2 on all ordered pairs; raise on failure."""
    for x in objects:
        if graded_hom(x, x, 0) != 1:
            raise AxiomViolation(2, x, x, 0, graded_hom(x, x, 0))
    for x in objects:
        for y in objects:
            if x == y:
                continue
            bad = pair_violation(x, y)
            if bad is not None:
                raise bad


# ---------------------------------------------------------------------------
# the object-level assignment between type-A collections and SMC members
# ---------------------------------------------------------------------------

def _segment_of_top(segments: Sequence[Segment], p: int, j: int) -> Optional[Segment]:
    for seg in segments:
        if j % p == seg.a % p:
            return seg
    return None


def _supported_in_segment(x: TubeObject, seg: Segment) -> bool:
    off = (socle_index(x) - (seg.a - seg.l + 1)) % x.p
    return off + x.t <= seg.l


def _supported_in_tile(x: TubeObject, seg: Segment, p: int) -> bool:
    off = (socle_index(x) - seg.tile_start) % p
    return off + x.t <= seg.l + 1


def f_map(x: StalkObject, segments: Sequence[Segment]) -> StalkObject:
    """Exchange a type-A object for its image among the SMC members.

    Objects whose top is a segment anchor S_a trade their top part for the
    complementary piece of the tile, one shift up; everything else is fixed.
    """
    p = x.p
    if not any(_supported_in_segment(x.inner, seg) for seg in segments):
        raise ValueError(f"{x} is not supported in the given segments")
    seg = _segment_of_top(segments, p, x.inner.j)
    if seg is None:
        return x
    t = x.inner.t
    return stalk(p, seg.a - t, seg.l + 1 - t, x.k + 1)


def f_inverse(x: StalkObject, segments: Sequence[Segment]) -> StalkObject:
    """Inverse assignment: recognized by the socle sitting at a tile start."""
    p = x.p
    if not any(_supported_in_tile(x.inner, seg, p) for seg in segments):
        raise ValueError(f"{x} is not supported in the tiles of the given segments")
    for seg in segments:
        if socle_index(x.inner) == seg.tile_start % p:
            t = x.inner.t
            if t > seg.l:
                raise ValueError(f"{x} covers a whole tile; not in the assignment's range")
            return stalk(p, seg.a, seg.l + 1 - t, x.k - 1)
    return x


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def _interval(x: TubeObject) -> tuple[int, int]:
    return socle_index(x), x.t


def _tilings(p: int, items: list[tuple[int, tuple[int, int]]]) -> list[tuple[int, ...]]:
    """Exact covers of Z/p by the given (index, (start, length)) intervals."""
    by_start: dict[int, list[tuple[int, int]]] = {}
    for idx, (s, t) in items:
        by_start.setdefault(s, []).append((idx, t))
    covers: list[tuple[int, ...]] = []

    first_candidates = [(idx, s, t) for idx, (s, t) in items if (0 - s) % p < t]

    def walk(chosen: list[int], pos: int, covered: int, stop: int) -> None:
        if covered == p:
            if pos % p == stop % p:
                covers.append(tuple(sorted(chosen)))
            return
        for idx, t in by_start.get(pos % p, []):
            if covered + t <= p:
                walk(chosen + [idx], pos + t, covered + t, stop)

    for idx, s, t in first_candidates:
        walk([idx], s + t, t, s)
    # each cover is found once: the tile containing residue 0 is unique in it
    return sorted(set(covers))


def _type_a_shape_ok(members: list[tuple[int, int, int]], lo: int, hi: int) -> bool:
    """Recursive tiling test for a type-A collection given as (lo, hi, shift) intervals.

    A collection of the right size is of simple-minded shape iff its maximal
    members tile the interval and, inside each tile, the collection obtained
    by trading socle-sharing members for their complements is again of that
    shape one level down.
    """
    n = hi - lo + 1
    if len(members) != max(n, 0):
        return False
    if n <= 0:
        return True
    if len({(m[0], m[1]) for m in members}) != len(members):
        return False
    pool = list(members)
    pos = lo
    while pos <= hi:
        starters = [m for m in pool if m[0] == pos]
        if not starters:
            return False
        tile = max(starters, key=lambda m: m[1])
        if any(pos <= m[0] <= tile[1] < m[1] for m in pool):
            return False
        inside = [m for m in pool if pos <= m[0] and m[1] <= tile[1] and m != tile]
        mapped = [(m[1] + 1, tile[1], m[2] - 1) if m[0] == pos else m for m in inside]
        if not _type_a_shape_ok(mapped, pos + 1, tile[1]):
            return False
        pool = [m for m in pool if not (pos <= m[0] <= tile[1])]
        pos = tile[1] + 1
    return not pool


def _linearize(x: StalkObject, seg: Segment) -> tuple[int, int, int]:
    p = x.p
    lo = (socle_index(x.inner) - (seg.a - seg.l + 1)) % p
    return lo, lo + x.inner.t - 1, x.k


def check_type_a_smc(u: Sequence[StalkObject], seg: Segment) -> bool:
    """Is u a simple-minded collection of the type-A subcategory of a segment?

    Checks support, the key necessary condition (some member has top at the
    anchor), pairwise axioms, and the recursive tiling shape that certifies
    generation.
    """
    if len(u) != seg.l:
        return False
    if not all(_supported_in_segment(x.inner, seg) for x in u):
        return False
    p = u[0].p if u else 0
    if u and not any(x.inner.j == seg.a % p for x in u):
        return False
    try:
        verify_axioms(u)
    except AxiomViolation:
        return False
    return _type_a_shape_ok([_linearize(x, seg) for x in u], 0, seg.l - 1)


def _segments_from_tiles(p: int, tiles: list[tuple[int, int]]) -> tuple[Segment, ...]:
    segs = []
    for s, t in tiles:
        if t >= 2:
            segs.append(Segment((s + t - 1) % p, t - 1))
    return tuple(sorted(segs))


def classify(x: Smc | Sequence[StalkObject]) -> Classification:
    """Recover the certificate of an SMC, or reject the collection.

    Finds the unique subset of members sitting at one shift whose supports
    tile Z/p (the simples of the maximal tube subcategory), peels the
    remaining members back through the inverse assignment, and checks that
    each segment's collection is a type-A SMC.
    """
    objects = x.objects if isinstance(x, Smc) else tuple(x)
    if not objects:
        raise ClassificationFailure("empty collection")
    p = objects[0].p
    if len(objects) != p:
        raise ClassificationFailure(f"expected {p} members, got {len(objects)}")
    verify_axioms(objects)

    by_shift: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for i, o in enumerate(objects):
        by_shift.setdefault(o.k, []).append((i, _interval(o.inner)))

    candidates: list[tuple[int, tuple[int, ...]]] = []
    for k in sorted(by_shift):
        for cover in _tilings(p, by_shift[k]):
            candidates.append((k, cover))
    failures: list[str] = []
    for k, cover in candidates:
        try:
            return _complete(p, objects, k, cover)
        except ClassificationFailure as exc:
            failures.append(str(exc))
    detail = f" ({failures[0]})" if failures else ""
    raise ClassificationFailure(f"no tube part found: not an SMC{detail}")


def _complete(p: int, objects: tuple[StalkObject, ...], shift_norm: int,
              cover: tuple[int, ...]) -> Classification:
    tube_members = sorted((objects[i] for i in cover),
                          key=lambda o: socle_index(o.inner))
    tiles = [(socle_index(o.inner), o.inner.t) for o in tube_members]
    segments = _segments_from_tiles(p, tiles)

    rest = [objects[i] for i in range(p) if i not in cover]
    blocks: dict[Segment, list[StalkObject]] = {seg: [] for seg in segments}
    for m in rest:
        home = None
        for seg in segments:
            if _supported_in_tile(m.inner, seg, p):
                home = seg
                break
        if home is None:
            raise ClassificationFailure(f"{m} is not supported inside a single tile")
        rel = shift(m, -shift_norm)
        if socle_index(m.inner) == home.tile_start % p:
            if rel.k < 1:
                raise ClassificationFailure(f"{m} has a tile-socle support but nonpositive shift")
            u = f_inverse(rel, [home])
        else:
            u = rel
        blocks[home].append(u)

    block_tuple = []
    for seg in segments:
        u = tuple(sorted(blocks[seg], key=lambda o: (o.k, o.inner.j, o.inner.t)))
        if not check_type_a_smc(u, seg):
            raise ClassificationFailure(
                f"members over segment S_{seg.a} (run {seg.l}) are not a type-A SMC")
        block_tuple.append(u)

    pre = PreSmc(p, segments, tuple(block_tuple))
    return Classification(p, shift_norm, segments, tuple(tube_members), pre)


def verify(x: Smc) -> Smc:
    """Verify x is an SMC; returns a copy carrying its certificate."""
    cert = classify(x)
    return Smc(x.objects, cert)


def extract_x_tube(x: Smc) -> tuple[tuple[StalkObject, ...], int]:
    """The maximal tube-simple subset of a verified collection, with its rank."""
    cert = x.certificate or classify(x)
    return cert.x_tube, cert.rank


# ---------------------------------------------------------------------------
# assembly (inverse of classification)
# ---------------------------------------------------------------------------

def _validate_segments(p: int, segments: Sequence[Segment]) -> tuple[Segment, ...]:
    segs = tuple(sorted(Segment(s.a % p, s.l) for s in segments))
    used: set[int] = set()
    for seg in segs:
        if not 1 <= seg.l < p:
            raise ValueError(f"segment length {seg.l} out of range for rank {p}")
        run = set(seg.covers(p))
        extra = {seg.tile_start % p}
        if (run | extra) & used:
            raise ValueError("segments overlap or touch; runs must be separated")
        used |= run | extra
    return segs


def assemble_smc(pre: PreSmc) -> Smc:
    """Build the SMC attached to a pre-SMC; inverse to classify."""
    p = pre.p
    segments = _validate_segments(p, pre.segments)
    if len(segments) != len(pre.blocks):
        raise ValueError("one block per segment required")
    if not segments:
        if any(pre.blocks):
            raise ValueError("blocks given without segments")
        out = simples_smc(p)
        cert = Classification(p, 0, (), out.objects, pre)
        return Smc(out.objects, cert)

    members: list[StalkObject] = []
    x_tube: list[StalkObject] = []
    in_runs = {r for seg in segments for r in seg.covers(p)}
    anchors = {seg.tile_start % p for seg in segments}
    for b in range(p):
        if b not in in_runs and b not in anchors:
            member = stalk(p, b, 1, 0)
            members.append(member)
            x_tube.append(member)
    for seg, block in zip(segments, pre.blocks):
        if not check_type_a_smc(block, seg):
            raise ValueError(
                f"block over segment S_{seg.a} (run {seg.l}) is not a type-A SMC")
        tile = stalk(p, seg.a, seg.l + 1, 0)
        members.append(tile)
        x_tube.append(tile)
        for u in block:
            members.append(f_map(u, [seg]) if u.k >= 0 else u)

    try:
        verify_axioms(members)
    except AxiomViolation as exc:  # assembled shapes always satisfy the axioms
        raise InternalInvariantError(f"assembled collection fails axioms: {exc}") from exc
    x_tube.sort(key=lambda o: socle_index(o.inner))
    cert = Classification(p, 0, segments, tuple(x_tube), pre)
    return Smc(tuple(members), cert).sorted()


# ---------------------------------------------------------------------------
# thick closure (independent bounded generation oracle)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThickClosureResult:
    objects: frozenset[StalkObject]
    generates: bool
    exhausted: bool


@lru_cache(maxsize=None)
def _cone_cache(xi: TubeObject, yi: TubeObject, e: int) -> tuple[StalkObject, ...]:
    out: list[StalkObject] = []
    src = StalkObject(xi, 0)
    tgt = StalkObject(yi, e)
    if e == 0:
        from .core import hom_alignments
        for s in hom_alignments(xi, yi):
            out.extend(oracle.cone_parts(src, tgt, s))
    elif e == 1:
        for mid in oracle.extension_middle_oracle(xi, yi):
            out.extend(StalkObject(z, 1) for z, m in mid.items() for _ in range(m))
    return tuple(out)


def _cone_summands_oracle(src: StalkObject, tgt: StalkObject) -> list[StalkObject]:
    """Summands of cones over a basis of Hom(src, tgt), by explicit matrices."""
    base = _cone_cache(src.inner, tgt.inner, tgt.k - src.k)
    return [shift(z, src.k) for z in base]


def thick_closure(objects: Sequence[StalkObject], *, length_cap: Optional[int] = None,
                  window: Optional[tuple[int, int]] = None) -> ThickClosureResult:
    """Bounded fixpoint under shifts, summands and cones of degree-0/1 maps.

    Objects of length above 2p generate nothing new, so the default length
    cap is 2p; the default shift window is [min k - p, max k + p], expanded
    once if the verdict is inconclusive.  A "generates" verdict is reliable;
    a negative one only means "not within bounds".
    """
    p = objects[0].p
    cap = length_cap if length_cap is not None else 2 * p
    ks = [o.k for o in objects]
    if window is None:
        window = (min(ks) - p, max(ks) + p)

    def run(win: tuple[int, int]) -> ThickClosureResult:
        exhausted = False
        current: set[StalkObject] = set()

        def admit(o: StalkObject) -> Optional[StalkObject]:
            nonlocal exhausted
            if o.inner.t > cap or not win[0] <= o.k <= win[1]:
                exhausted = True
                return None
            return o

        frontier = {o for o in objects if admit(o)}
        while frontier:
            current |= frontier
            fresh: set[StalkObject] = set()

            def add(o: StalkObject) -> None:
                kept = admit(o)
                if kept is not None and kept not in current and kept not in fresh:
                    fresh.add(kept)

            for x in list(current):
                for n in (-1, 1):
                    add(shift(x, n))
            pairs = [(x, y) for x in current for y in current
                     if x in frontier or y in frontier]
            for x, y in pairs:
                for n in (0, 1):
                    if graded_hom(x, y, n) > 0:
                        for z in _cone_summands_oracle(x, StalkObject(y.inner, y.k + n)):
                            add(z)
            frontier = fresh
        simple_js = {o.inner.j for o in current if o.inner.t == 1}
        return ThickClosureResult(frozenset(current), len(simple_js) == p, exhausted)

    res = run(window)
    if not res.generates and res.exhausted:
        res = run((window[0] - p, window[1] + p))
    return res


# ---------------------------------------------------------------------------
# normal forms and bounded enumeration
# ---------------------------------------------------------------------------

def normalize_shift(x: Smc) -> Smc:
    """Shift so the tube part sits at shift 0."""
    cert = x.certificate or classify(x)
    return verify(Smc(tuple(shift(o, -cert.shift_norm) for o in x.objects))).sorted()


def normalize(x: Smc) -> Smc:
    """Canonical form: tube part at shift 0, then the lex-least rotation."""
    base = normalize_shift(x)
    best = None
    for r in range(x.p):
        cand = Smc(tuple(tau_derived(o, r) for o in base.objects))
        if best is None or cand.key() < best.key():
            best = cand
    return verify(best).sorted()


@lru_cache(maxsize=None)
def _type_a_collections(p: int, l: int, window: int, kmax: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """All type-A SMCs over a length-l segment, in (lo, hi, k) coordinates.

    Shifts range over [-window, window]; pairwise shift gaps are capped by
    kmax, bounding the table parameters.
    """
    intervals = [(lo, hi) for lo in range(l) for hi in range(lo, l)]
    seg = Segment(l - 1, l) if l else None  # anchor segment [0, l-1] inside T_p
    candidates = [(lo, hi, k) for (lo, hi) in intervals for k in range(-window, window + 1)]
    out = []
    for combo in itertools.combinations(candidates, l):
        shifts = [m[2] for m in combo]
        if max(shifts) - min(shifts) > kmax:
            continue
        if not _type_a_shape_ok(list(combo), 0, l - 1):
            continue
        u = tuple(stalk(p, hi + (seg.a - seg.l + 1), hi - lo + 1, k) for (lo, hi, k) in combo)
        if check_type_a_smc(tuple(sorted(u, key=lambda o: (o.k, o.inner.j, o.inner.t))), seg):
            out.append(combo)
    return tuple(out)


def _subset_segments(p: int, subset: frozenset[int]) -> Optional[tuple[Segment, ...]]:
    """Write a proper subset of simples as disjoint runs, top anchor + length."""
    if not subset:
        return ()
    if len(subset) >= p:
        return None
    segs = []
    for a in sorted(subset):
        if (a + 1) % p in subset:
            continue  # not the top of its run
        l = 1
        while (a - l) % p in subset:
            l += 1
        segs.append(Segment(a % p, l))
    return tuple(sorted(segs))


def enumerate_pre_smcs(p: int, window: int, kmax: int) -> list[PreSmc]:
    """Every pre-SMC with block shifts in [-window, window] and gaps <= kmax."""
    out: list[PreSmc] = []
    seen: set[frozenset[Segment]] = set()
    for bits in range(2 ** p - 1):
        subset = frozenset(i for i in range(p) if bits >> i & 1)
        segments = _subset_segments(p, subset)
        if segments is None or frozenset(segments) in seen:
            continue
        seen.add(frozenset(segments))
        per_segment = []
        for seg in segments:
            base = (seg.a - seg.l + 1) % p
            translated = []
            for combo in _type_a_collections(p, seg.l, window, kmax):
                translated.append(tuple(
                    stalk(p, base + hi, hi - lo + 1, k) for (lo, hi, k) in combo))
            per_segment.append(translated)
        for blocks in itertools.product(*per_segment):
            blocks = tuple(tuple(sorted(b, key=lambda o: (o.k, o.inner.j, o.inner.t)))
                           for b in blocks)
            out.append(PreSmc(p, segments, blocks))
    return out


def enumerate_smcs(p: int, window: int, kmax: int) -> list[Smc]:
    """Assemble every bounded pre-SMC; each SMC appears exactly once."""
    out = []
    seen = set()
    for pre in enumerate_pre_smcs(p, window, kmax):
        x = assemble_smc(pre)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out
