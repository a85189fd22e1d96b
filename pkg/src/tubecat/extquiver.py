"""Ext-quivers of SMCs and graded gentle one-cycle quivers.

The Ext-quiver of an SMC has one arrow of degree k per basis element of a
positive-degree graded hom.  Structurally it is always the associated quiver
of a gentle one-cycle datum read off from the members' supports:

* members sharing a socle residue form a chain ordered by length, with
  arrows up the chain (degrees = shift gaps);
* members sharing a top residue form a chain with arrows down the chain;
* at every cut between residues m and m+1, the longest member rooted at m+1
  points to the longest member topped at m (degree = shift gap plus one) --
  these cut arrows include the degree-1 cycle on the tube part, and the
  loop when a single member wraps the whole circle.

Valid compositions ("unicolored paths") are exactly: socle-chain arrows,
then at most one cut arrow, then top-chain arrows.  Quiver mutation acts on
the placement data alone, with no hom computations; agreement with SMC-side
mutation is what check_compatibility tests.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from .core import socle_index
from .derived import graded_hom, stalk
from .mutation import mutate_left, mutate_right
from .smc import Smc, classify


class GentleStructureError(ValueError):
    """The placements do not form a graded gentle one-cycle quiver."""


@dataclass(frozen=True)
class GradedQuiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, int, int], ...]  # (src, tgt, degree), multiplicity by repetition

    def arrow_multiset(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(sorted(self.arrows))

    def total_arrows(self) -> int:
        return len(self.arrows)


def ext_quiver_of(x: Smc) -> GradedQuiver:
    """Arrows of degree k >= 1 counted by graded hom dimensions."""
    members = sorted(x.objects, key=lambda o: (o.k, o.inner.j, o.inner.t))
    arrows = []
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            lo = a.k - b.k
            for n in (lo, lo + 1):
                if n >= 1:
                    for _ in range(graded_hom(a, b, n)):
                        arrows.append((i, j, n))
    return GradedQuiver(tuple(str(m) for m in members), tuple(sorted(arrows)))


def _signature(q: GradedQuiver) -> list[tuple]:
    outs: dict[int, list] = defaultdict(list)
    ins: dict[int, list] = defaultdict(list)
    loops: dict[int, list] = defaultdict(list)
    for s, t, d in q.arrows:
        if s == t:
            loops[s].append(d)
        else:
            outs[s].append(d)
            ins[t].append(d)
    return [(tuple(sorted(outs[v])), tuple(sorted(ins[v])), tuple(sorted(loops[v])))
            for v in range(len(q.vertices))]


def graded_quiver_isomorphic(a: GradedQuiver, b: GradedQuiver) -> Optional[dict[int, int]]:
    """Brute-force isomorphism over vertex bijections with signature pruning."""
    if len(a.vertices) != len(b.vertices) or len(a.arrows) != len(b.arrows):
        return None
    siga, sigb = _signature(a), _signature(b)
    n = len(a.vertices)
    targets = {i: [j for j in range(n) if sigb[j] == siga[i]] for i in range(n)}
    if any(not t for t in targets.values()):
        return None
    b_arrows = sorted(b.arrows)
    for perm in itertools.permutations(range(n)):
        if any(perm[i] not in targets[i] for i in range(n)):
            continue
        mapped = sorted((perm[s], perm[t], d) for s, t, d in a.arrows)
        if mapped == b_arrows:
            return {i: perm[i] for i in range(n)}
    return None


# ---------------------------------------------------------------------------
# gentle one-cycle quivers
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Placement:
    """Support of one member: socle residue, length, shift."""

    start: int
    length: int
    k: int

    def end(self, p: int) -> int:
        return (self.start + self.length - 1) % p

    def label(self, p: int) -> str:
        return str(stalk(p, self.start + self.length - 1, self.length, self.k))


@dataclass(frozen=True)
class GentleArrow:
    src: int
    tgt: int
    degree: int
    kind: str   # "socle" | "top" | "cut"
    color: str  # "straight" | "curly" | "dotted" | "loop"


@dataclass(frozen=True)
class GentleOneCycleQuiver:
    p: int
    placements: tuple[Placement, ...]
    arrows: tuple[GentleArrow, ...]
    rank: int
    cycle: tuple[int, ...]  # vertex indices around the cycle, in tile order

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(pl.label(self.p) for pl in self.placements)


def _arrow_slots(s: int, t: int, kind: str) -> tuple[tuple[int, str], tuple[int, str]]:
    if kind == "socle":
        return (s, "socle"), (t, "socle")
    if kind == "top":
        return (s, "top"), (t, "top")
    return (s, "socle"), (t, "top")


def _color_arrows(n: int, raw: list[tuple[int, int, int, str]]) -> list[GentleArrow]:
    """Deterministic three-coloring of the slot classes.

    Each vertex has a socle-side and a top-side slot which must get distinct
    colors; an arrow identifies the slots it runs along, so slot classes are
    merged with union-find and greedily colored.  Loops are marked as such:
    their compositions are governed by the cut rule, not a color.
    """
    parent: dict[tuple[int, str], tuple[int, str]] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry, key=str)] = min(rx, ry, key=str)

    for v in range(n):
        find((v, "socle"))
        find((v, "top"))
    for s, t, _, kind in raw:
        if s != t:
            union(*_arrow_slots(s, t, kind))

    classes = sorted({find((v, side)) for v in range(n) for side in ("socle", "top")},
                     key=str)
    conflicts: dict[tuple[int, str], set[tuple[int, str]]] = defaultdict(set)
    for v in range(n):
        a, b = find((v, "socle")), find((v, "top"))
        if a != b:
            conflicts[a].add(b)
            conflicts[b].add(a)
    palette = ("straight", "curly", "dotted")
    chosen: dict[tuple[int, str], str] = {}
    for cls in classes:
        used = {chosen[c] for c in conflicts[cls] if c in chosen}
        chosen[cls] = next(c for c in palette if c not in used)

    out = []
    for s, t, d, kind in raw:
        if s == t:
            out.append(GentleArrow(s, t, d, kind, "loop"))
        else:
            slot = _arrow_slots(s, t, kind)[0]
            out.append(GentleArrow(s, t, d, kind, chosen[find(slot)]))
    return out


def gentle_from_placements(p: int, placements: tuple[Placement, ...]) -> GentleOneCycleQuiver:
    """Assemble chains and cuts; validates degrees, arrow count and connectivity."""
    n = len(placements)
    by_start: dict[int, list[int]] = defaultdict(list)
    by_end: dict[int, list[int]] = defaultdict(list)
    for i, pl in enumerate(placements):
        if not (1 <= pl.length <= p):
            raise GentleStructureError(f"length {pl.length} out of range")
        by_start[pl.start % p].append(i)
        by_end[pl.end(p)].append(i)

    raw: list[tuple[int, int, int, str]] = []
    for s, chain in by_start.items():
        chain.sort(key=lambda i: placements[i].length)
        for a, b in zip(chain, chain[1:]):
            deg = placements[a].k - placements[b].k
            if deg < 1:
                raise GentleStructureError("socle chain shifts must strictly drop outward")
            raw.append((a, b, deg, "socle"))
    for e, chain in by_end.items():
        chain.sort(key=lambda i: -placements[i].length)
        for a, b in zip(chain, chain[1:]):
            deg = placements[a].k - placements[b].k
            if deg < 1:
                raise GentleStructureError("top chain shifts must strictly drop inward")
            raw.append((a, b, deg, "top"))
    for m in range(p):
        right = by_start.get((m + 1) % p)
        left = by_end.get(m)
        if right and left:
            src = max(right, key=lambda i: placements[i].length)
            tgt = max(left, key=lambda i: placements[i].length)
            deg = 1 + placements[src].k - placements[tgt].k
            if deg < 1:
                raise GentleStructureError("cut arrow would have nonpositive degree")
            raw.append((src, tgt, deg, "cut"))

    if len(raw) != n:
        raise GentleStructureError(f"{len(raw)} arrows for {n} vertices; not a one-cycle quiver")
    # connectivity and the unique cycle (peel leaves of the underlying graph)
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for s, t, _, _ in raw:
        if s != t:
            adj[s].add(t)
            adj[t].add(s)
    reached = {0}
    stack = [0]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    if len(reached) != n:
        raise GentleStructureError("quiver is not connected")
    degree = {i: 0 for i in range(n)}
    for s, t, _, _ in raw:
        if s != t:
            degree[s] += 1
            degree[t] += 1
        else:
            degree[s] += 2
    alive = set(range(n))
    trimmed = True
    while trimmed:
        trimmed = False
        for v in sorted(alive):
            if degree[v] == 1:
                alive.discard(v)
                for s, t, _, _ in raw:
                    if s == v and t in alive:
                        degree[t] -= 1
                    elif t == v and s in alive:
                        degree[s] -= 1
                trimmed = True
    cycle_vertices = sorted(alive)
    if not cycle_vertices:
        raise GentleStructureError("no cycle found")
    # order the cycle by walking cut arrows between surviving vertices
    cyc_arrows = [(s, t) for s, t, _, kind in raw
                  if kind == "cut" and s in alive and t in alive]
    order = [cycle_vertices[0]]
    nxt_of = {s: t for s, t in cyc_arrows}
    while len(order) < len(cycle_vertices):
        cur = nxt_of.get(order[-1])
        if cur is None or cur in order:
            raise GentleStructureError("cycle does not close through cut arrows")
        order.append(cur)
    arrows = _color_arrows(n, raw)
    return GentleOneCycleQuiver(p, placements, tuple(arrows), len(order), tuple(order))


def gentle_of(x: Smc) -> GentleOneCycleQuiver:
    """The gentle one-cycle quiver of a verified SMC, from member supports."""
    if x.certificate is None:
        classify(x)  # verification gate
    members = sorted(x.objects, key=lambda o: (o.k, o.inner.j, o.inner.t))
    placements = tuple(Placement(socle_index(o.inner), o.inner.t, o.k) for o in members)
    return gentle_from_placements(x.p, placements)


_NEXT_KINDS = {"socle": ("socle", "cut"), "cut": ("top",), "top": ("top",)}


def associated_quiver(g: GentleOneCycleQuiver) -> GradedQuiver:
    """One arrow per valid path: socle-chain run, at most one cut, top-chain run."""
    out_by_src: dict[int, list[GentleArrow]] = defaultdict(list)
    for a in g.arrows:
        out_by_src[a.src].append(a)
    arrows: list[tuple[int, int, int]] = []

    def extend(start: int, at: int, deg: int, kind: str) -> None:
        arrows.append((start, at, deg))
        for nxt in out_by_src[at]:
            if nxt.kind in _NEXT_KINDS[kind]:
                extend(start, nxt.tgt, deg + nxt.degree, nxt.kind)

    for a in g.arrows:
        extend(a.src, a.tgt, a.degree, a.kind)
    return GradedQuiver(g.labels, tuple(sorted(arrows)))


def quiver_mutate(g: GentleOneCycleQuiver, v: int, direction: str = "left") -> GentleOneCycleQuiver:
    """Combinatorial mutation on the placement data, no hom computations.

    Left mutation at v raises its shift; the at-most-three members reacting
    to it trade support: the inner socle-sharer keeps the complementary top
    part, the outer top-sharer is cut below v's socle, and the cut partner
    absorbs v's support.  Right mutation is the inverse rewiring.
    """
    p = g.p
    pls = list(g.placements)
    me = pls[v]
    end = me.end(p)
    new = list(pls)
    if direction == "left":
        new[v] = Placement(me.start, me.length, me.k + 1)
        for i, o in enumerate(pls):
            if i == v:
                continue
            if o.start == me.start and o.length < me.length and o.k == me.k + 1:
                new[i] = Placement((me.start + o.length) % p, me.length - o.length, me.k)
            elif o.end(p) == end and o.length > me.length and o.k == me.k + 1:
                new[i] = Placement(o.start, o.length - me.length, me.k + 1)
            elif o.start == (end + 1) % p and o.k == me.k:
                new[i] = Placement(me.start, me.length + o.length, me.k)
    elif direction == "right":
        new[v] = Placement(me.start, me.length, me.k - 1)
        for i, o in enumerate(pls):
            if i == v:
                continue
            if o.end(p) == end and o.length < me.length and o.k == me.k - 1:
                new[i] = Placement(me.start, (o.start - me.start) % p, me.k)
            elif o.start == me.start and o.length > me.length and o.k == me.k - 1:
                new[i] = Placement((me.start + me.length) % p, o.length - me.length, me.k - 1)
            elif o.end(p) == (me.start - 1) % p and o.k == me.k:
                new[i] = Placement(o.start, o.length + me.length, me.k)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    try:
        return gentle_from_placements(p, tuple(new))
    except GentleStructureError as exc:
        raise GentleStructureError(
            f"mutation at vertex {v} ({direction}) left the gentle class: {exc}") from exc


@dataclass(frozen=True)
class CompatibilityReport:
    ok: bool
    smc_side: GradedQuiver
    quiver_side: GradedQuiver
    mapping: Optional[dict[int, int]]

    def __bool__(self) -> bool:
        return self.ok


def check_compatibility(x: Smc, i: int, direction: str = "left") -> CompatibilityReport:
    """Mutate on both sides and compare Ext-quivers up to graded isomorphism."""
    if direction == "left":
        lhs = ext_quiver_of(mutate_left(x, i))
    else:
        lhs = ext_quiver_of(mutate_right(x, i))
    g = gentle_of(x)
    member = x.objects[i]
    pl = Placement(socle_index(member.inner), member.inner.t, member.k)
    v = g.placements.index(pl)
    rhs = associated_quiver(quiver_mutate(g, v, direction))
    mapping = graded_quiver_isomorphic(lhs, rhs)
    return CompatibilityReport(mapping is not None, lhs, rhs, mapping)


def quiver_to_dot(q: GradedQuiver, name: str = "extquiver") -> str:
    lines = [f"digraph {name} {{"]
    for i, lbl in enumerate(q.vertices):
        lines.append(f'  n{i} [label="{lbl}"];')
    for s, t, d in sorted(q.arrows):
        lines.append(f'  n{s} -> n{t} [label="{d}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
