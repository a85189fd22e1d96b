"""Bounded exploration of the exchange graph of simple-minded collections.

Vertices are SMCs (exact objects, no quotient by shift or rotation), directed
edges are left mutations.  The full graph is infinite; a shift window is the
only termination mechanism and is recorded in every export.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .derived import StalkObject, shift, stalk
from .mutation import is_two_term, mutate_left, mutate_right
from .smc import Smc, VerificationError, classify, simples_smc, verify


@dataclass
class ExchangeGraph:
    p: int
    vertices: list[Smc]
    edges: set[tuple[int, int, tuple[int, int, int]]]  # (from, to, mutated member)
    radius: Optional[int] = None
    window: Optional[int] = None
    pruned: set[int] = field(default_factory=set)

    def vertex_index(self, x: Smc) -> Optional[int]:
        try:
            return self.vertices.index(x)
        except ValueError:
            return None

    def undirected_adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.vertices))}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def _within(x: Smc, window: Optional[int]) -> bool:
    return window is None or all(abs(o.k) <= window for o in x.objects)


def _triple(o: StalkObject) -> tuple[int, int, int]:
    return (o.inner.j, o.inner.t, o.k)


def explore(start: Smc, radius: int, window: Optional[int] = None) -> ExchangeGraph:
    """Breadth-first neighborhood of start under left and right mutations.

    Mutations leaving the shift window are pruned (recorded per vertex, not
    fatal).  Right mutations are recorded as the left edge they invert.
    """
    start = verify(start).sorted()
    if not _within(start, window):
        raise ValueError("start lies outside the shift window")
    g = ExchangeGraph(start.p, [start], set(), radius=radius, window=window)
    index = {start: 0}
    frontier = deque([(start, 0)])
    while frontier:
        cur, depth = frontier.popleft()
        if depth >= radius:
            continue
        ci = index[cur]
        for i in range(cur.p):
            for direction in ("left", "right"):
                if direction == "left":
                    cand = mutate_left(cur, i).sorted()
                else:
                    cand = mutate_right(cur, i).sorted()
                if not _within(cand, window):
                    g.pruned.add(ci)
                    continue
                if cand not in index:
                    index[cand] = len(g.vertices)
                    g.vertices.append(cand)
                    frontier.append((cand, depth + 1))
                ni = index[cand]
                if direction == "left":
                    g.edges.add((ci, ni, _triple(cur.objects[i])))
                else:
                    # a right mutation inverts the left edge cand -> cur whose
                    # mutated member is the once-lowered slot-i object
                    g.edges.add((ni, ci, _triple(shift(cur.objects[i], -1))))
    return g


def two_term_candidates(p: int) -> list[Smc]:
    """All 2-term SMCs, by brute force over stalks with length <= p, shift 0 or 1."""
    pool = [stalk(p, j, t, k) for j in range(p) for t in range(1, p + 1) for k in (0, 1)]
    out = []
    for combo in itertools.combinations(pool, p):
        try:
            cert = classify(combo)
        except VerificationError:
            continue
        out.append(Smc(combo, cert).sorted())
    return out


def two_term_subgraph(p: int) -> ExchangeGraph:
    """The full finite subgraph on 2-term SMCs with 2-term-preserving left edges."""
    vertices = sorted(two_term_candidates(p), key=lambda v: v.key())
    index = {v: i for i, v in enumerate(vertices)}
    edges: set[tuple[int, int, tuple[int, int, int]]] = set()
    for v in vertices:
        for i in range(p):
            out = mutate_left(v, i, validate=False).sorted()
            if is_two_term(out):
                if out not in index:
                    raise RuntimeError(f"2-term mutation left the candidate set: {out}")
                edges.add((index[v], index[out], _triple(v.objects[i])))
    return ExchangeGraph(p, list(vertices), edges)


def two_term_connected(g: ExchangeGraph) -> bool:
    """Every vertex reaches the shifted standard collection by left mutations
    and the standard one by right mutations, inside the 2-term subgraph."""
    p = g.p
    x0 = simples_smc(p).sorted()
    x0_up = Smc(tuple(stalk(p, j, 1, 1) for j in range(p))).sorted()
    i0 = g.vertex_index(x0)
    i1 = g.vertex_index(x0_up)
    if i0 is None or i1 is None:
        return False
    fwd: dict[int, set[int]] = {i: set() for i in range(len(g.vertices))}
    bwd: dict[int, set[int]] = {i: set() for i in range(len(g.vertices))}
    for u, v, _ in g.edges:
        fwd[u].add(v)
        bwd[v].add(u)

    def closure(adj: dict[int, set[int]], src: int) -> set[int]:
        seen = {src}
        queue = deque([src])
        while queue:
            cur = queue.popleft()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    reaches_top = closure(bwd, i1)      # can left-mutate into the shifted standard
    reached_from_base = closure(fwd, i0)  # reachable from the standard by left steps
    n = len(g.vertices)
    return len(reaches_top) == n and len(reached_from_base) == n


@dataclass
class ConnectivityReport:
    components: list[list[int]]
    connected: bool
    witness: Optional[list[int]]  # path between two components if disconnected


def connectivity_report(g: ExchangeGraph) -> ConnectivityReport:
    """Underlying-undirected components, with a counterexample pair if split."""
    adj = g.undirected_adjacency()
    seen: set[int] = set()
    components: list[list[int]] = []
    for i in range(len(g.vertices)):
        if i in seen:
            continue
        comp = []
        queue = deque([i])
        seen.add(i)
        while queue:
            cur = queue.popleft()
            comp.append(cur)
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        components.append(sorted(comp))
    connected = len(components) <= 1
    witness = None if connected else [components[0][0], components[1][0]]
    return ConnectivityReport(components, connected, witness)


def path_between(g: ExchangeGraph, u: int, v: int) -> Optional[list[int]]:
    """Shortest undirected path between vertex indices, or None."""
    adj = g.undirected_adjacency()
    parent = {u: u}
    queue = deque([u])
    while queue:
        cur = queue.popleft()
        if cur == v:
            path = [v]
            while path[-1] != u:
                path.append(parent[path[-1]])
            return path[::-1]
        for nxt in sorted(adj[cur]):
            if nxt not in parent:
                parent[nxt] = cur
                queue.append(nxt)
    return None


def _sorted_vertex_order(g: ExchangeGraph) -> list[int]:
    return sorted(range(len(g.vertices)), key=lambda i: g.vertices[i].key())


def to_dot(g: ExchangeGraph) -> str:
    """Deterministic DOT export: one node per SMC, edge label = mutated member."""
    order = _sorted_vertex_order(g)
    rank_of = {old: new for new, old in enumerate(order)}
    lines = ["digraph exchange {"]
    if g.window is not None or g.radius is not None:
        lines.append(f'  graph [comment="radius={g.radius} window={g.window}"];')
    for old in order:
        lines.append(f'  n{rank_of[old]} [label="{g.vertices[old]!r}"];')
    for u, v, (j, t, k) in sorted(g.edges, key=lambda e: (rank_of[e[0]], rank_of[e[1]], e[2])):
        label = str(stalk(g.p, j, t, k))
        lines.append(f'  n{rank_of[u]} -> n{rank_of[v]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(g: ExchangeGraph) -> dict:
    order = _sorted_vertex_order(g)
    rank_of = {old: new for new, old in enumerate(order)}
    return {
        "p": g.p,
        "radius": g.radius,
        "window": g.window,
        "vertices": [[list(_triple(o)) for o in sorted(g.vertices[old].objects)]
                     for old in order],
        "edges": sorted([rank_of[u], rank_of[v], list(lbl)] for u, v, lbl in g.edges),
        "pruned": sorted(rank_of[i] for i in g.pruned),
    }


def to_json(g: ExchangeGraph) -> str:
    return json.dumps(to_json_dict(g), sort_keys=True)
