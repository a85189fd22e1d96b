"""Ground truth by explicit linear algebra on nilpotent cyclic-quiver representations.

Every closed-form count in `core`/`derived` is validated against this module:
Hom spaces are intertwiner solution spaces, decompositions come from rank
differences of path composites, cones from explicit kernels, cokernels and
extension middle terms.

Arithmetic is exact over a prime field.  All structure constants are small
integers, so ranks match the characteristic-0 values; as a guard, every rank
is computed over two independent primes and must agree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .core import TubeObject
from .derived import StalkObject

_PRIMES = (46337, 65521)


class NotNilpotentError(ValueError):
    """The representation is not nilpotent (not an object of the tube)."""


class InternalInvariantError(RuntimeError):
    """A cross-check between independent computations disagreed."""


def _mat(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def _rref(a: np.ndarray, q: int) -> tuple[int, list[int], np.ndarray]:
    """Reduced row echelon form mod q; returns (rank, pivot columns, rref)."""
    a = np.array(a, dtype=np.int64) % q
    rows, cols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), q - 2, q)) % q
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % q
        pivots.append(c)
        r += 1
    return r, pivots, a


def rank(a: np.ndarray) -> int:
    """Rank over the rationals, computed mod two primes with agreement check."""
    if a.size == 0:
        return 0
    r0, _, _ = _rref(a, _PRIMES[0])
    r1, _, _ = _rref(a, _PRIMES[1])
    if r0 != r1:
        raise InternalInvariantError(f"modular rank mismatch: {r0} vs {r1}")
    return r0


def nullspace(a: np.ndarray, q: int = _PRIMES[0]) -> np.ndarray:
    """Columns form a basis of the right kernel mod q."""
    rows, cols = a.shape
    if cols == 0:
        return _mat(0, 0)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots, red = _rref(a, q)
    free = [c for c in range(cols) if c not in pivots]
    basis = _mat(cols, len(free))
    for idx, c in enumerate(free):
        basis[c, idx] = 1
        for row_i, piv_c in enumerate(pivots):
            basis[piv_c, idx] = (-red[row_i, c]) % q
    return basis


def solve(a: np.ndarray, b: np.ndarray, q: int = _PRIMES[0]) -> np.ndarray:
    """One solution X of A X = B mod q; raises if inconsistent."""
    rows, acols = a.shape
    bcols = b.shape[1]
    if acols == 0:
        if np.any(b % q):
            raise InternalInvariantError("inconsistent linear system")
        return _mat(0, bcols)
    aug = np.concatenate([a, b], axis=1) % q
    r, pivots, red = _rref(aug, q)
    x = _mat(acols, bcols)
    for row_i, piv_c in enumerate(pivots):
        if piv_c >= acols:
            raise InternalInvariantError("inconsistent linear system")
        x[piv_c] = red[row_i, acols:]
    return x


@dataclass(frozen=True)
class NilpRep:
    """Representation of the cyclic quiver with arrows i -> i-1.

    mats[i] is the map at vertex i, of shape (dims[i-1], dims[i]).  Only
    nilpotent representations are tube objects; decompose() verifies this.
    """

    p: int
    dims: tuple[int, ...]
    mats: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.dims) != self.p or len(self.mats) != self.p:
            raise ValueError("dims/mats must have length p")
        for i in range(self.p):
            want = (self.dims[(i - 1) % self.p], self.dims[i])
            if self.mats[i].shape != want:
                raise ValueError(f"map at vertex {i} has shape {self.mats[i].shape}, want {want}")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)


def _levels(x: TubeObject) -> list[list[int]]:
    """Per-vertex lists of chain levels 1..t (socle to top), in increasing order."""
    per_vertex: list[list[int]] = [[] for _ in range(x.p)]
    for r in range(1, x.t + 1):
        per_vertex[(x.j - x.t + r) % x.p].append(r)
    return per_vertex


def realize(x: TubeObject) -> NilpRep:
    """The uniserial representation of S_j^(t): basis shifts along the chain."""
    levels = _levels(x)
    dims = tuple(len(lv) for lv in levels)
    pos = {}
    for v, lv in enumerate(levels):
        for idx, r in enumerate(lv):
            pos[r] = (v, idx)
    mats = [_mat(dims[(i - 1) % x.p], dims[i]) for i in range(x.p)]
    for r in range(2, x.t + 1):
        v, col = pos[r]
        v_prev, row = pos[r - 1]
        mats[v][row, col] = 1
    return NilpRep(x.p, dims, tuple(mats))


def direct_sum(*reps: NilpRep) -> NilpRep:
    p = reps[0].p
    if any(r.p != p for r in reps):
        raise ValueError("rank mismatch in direct sum")
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(p))
    mats = []
    for i in range(p):
        m = _mat(dims[(i - 1) % p], dims[i])
        row = col = 0
        for r in reps:
            h, w = r.mats[i].shape
            m[row:row + h, col:col + w] = r.mats[i]
            row += h
            col += w
        mats.append(m)
    return NilpRep(p, dims, tuple(mats))


def _intertwiner_matrix(a: NilpRep, b: NilpRep) -> np.ndarray:
    """Coefficient matrix of f_{i-1} A_i = B_i f_i over the unknowns f_i."""
    p = a.p
    offsets = []
    total = 0
    for i in range(p):
        offsets.append(total)
        total += b.dims[i] * a.dims[i]
    n_rows = sum(b.dims[(i - 1) % p] * a.dims[i] for i in range(p))
    sys = _mat(n_rows, total)
    row = 0
    for i in range(p):
        j = (i - 1) % p
        blk_rows = b.dims[j] * a.dims[i]
        if blk_rows == 0:
            continue
        if b.dims[j] and a.dims[j] and a.dims[i]:
            coeff = np.kron(np.eye(b.dims[j], dtype=np.int64), a.mats[i].T)
            sys[row:row + blk_rows, offsets[j]:offsets[j] + b.dims[j] * a.dims[j]] += coeff
        if b.dims[j] and b.dims[i] and a.dims[i]:
            coeff = np.kron(b.mats[i], np.eye(a.dims[i], dtype=np.int64))
            sys[row:row + blk_rows, offsets[i]:offsets[i] + b.dims[i] * a.dims[i]] -= coeff
        row += blk_rows
    return sys


def hom_space_dim(a: NilpRep, b: NilpRep) -> int:
    """Dimension of the space of intertwiners a -> b (exact)."""
    if a.p != b.p:
        raise ValueError("rank mismatch")
    n_unknowns = sum(b.dims[i] * a.dims[i] for i in range(a.p))
    if n_unknowns == 0:
        return 0
    return n_unknowns - rank(_intertwiner_matrix(a, b))


def _composite_ranks(rep: NilpRep) -> list[list[int]]:
    """ranks[j][s] = rank of the s-step path composite out of vertex j."""
    p = rep.p
    total = rep.total_dim
    q = _PRIMES[0]
    ranks = []
    for j in range(p):
        cur = np.eye(rep.dims[j], dtype=np.int64)
        row = [rep.dims[j]]
        for s in range(1, total + 2):
            cur = (rep.mats[(j - s + 1) % p] @ cur) % q
            row.append(rank(cur))
        ranks.append(row)
    return ranks


def decompose(rep: NilpRep) -> Counter[TubeObject]:
    """Multiset of uniserials whose direct sum is isomorphic to rep.

    Multiplicity of S_j^(t) is recovered from rank differences of path
    composites (Jordan block counting along the cycle).
    """
    p = rep.p
    total = rep.total_dim
    if total == 0:
        return Counter()
    ranks = _composite_ranks(rep)
    if any(ranks[j][total] != 0 for j in range(p)):
        raise NotNilpotentError("path composites do not vanish")
    out: Counter[TubeObject] = Counter()
    for j in range(p):
        nxt = (j + 1) % p
        for t in range(1, total + 1):
            m = ranks[j][t - 1] - ranks[j][t] - ranks[nxt][t] + ranks[nxt][t + 1]
            if m < 0:
                raise InternalInvariantError(f"negative multiplicity at (j={j}, t={t})")
            if m:
                out[TubeObject(p, j, t)] += m
    if sum(x.t * m for x, m in out.items()) != total:
        raise InternalInvariantError("block lengths do not sum to the total dimension")
    return out


def canonical_hom(x: TubeObject, y: TubeObject, s: int) -> tuple[np.ndarray, ...]:
    """Matrices of the basis map realize(x) -> realize(y) with image length s.

    Sends the top s chain levels of x onto the bottom s levels of y.
    """
    a, b = realize(x), realize(y)
    la, lb = _levels(x), _levels(y)
    pos_a = {r: (v, i) for v, lv in enumerate(la) for i, r in enumerate(lv)}
    pos_b = {r: (v, i) for v, lv in enumerate(lb) for i, r in enumerate(lv)}
    mats = [_mat(b.dims[v], a.dims[v]) for v in range(x.p)]
    for r in range(x.t - s + 1, x.t + 1):
        va, ia = pos_a[r]
        vb, ib = pos_b[r - (x.t - s)]
        if va != vb:
            raise ValueError(f"alignment {s} is not a valid map {x} -> {y}")
        mats[va][ib, ia] = 1
    return tuple(mats)


def compose(f: tuple[np.ndarray, ...], g: tuple[np.ndarray, ...]) -> tuple[np.ndarray, ...]:
    """Vertexwise product f after g."""
    return tuple((fi @ gi) % _PRIMES[0] for fi, gi in zip(f, g))


def is_zero_map(f: tuple[np.ndarray, ...]) -> bool:
    return all(not np.any(fi % _PRIMES[0]) for fi in f)


def kernel_rep(a: NilpRep, f: tuple[np.ndarray, ...]) -> NilpRep:
    """Subrepresentation on the vertexwise kernels of an intertwiner out of a."""
    q = _PRIMES[0]
    bases = [nullspace(fi, q) for fi in f]
    dims = tuple(b.shape[1] for b in bases)
    mats = []
    for i in range(a.p):
        j = (i - 1) % a.p
        img = (a.mats[i] @ bases[i]) % q
        mats.append(solve(bases[j], img, q))
    return NilpRep(a.p, dims, tuple(mats))


def cokernel_rep(b: NilpRep, f: tuple[np.ndarray, ...]) -> NilpRep:
    """Quotient representation of b by the vertexwise images of an intertwiner."""
    q = _PRIMES[0]
    p = b.p
    im_bases = []
    comp_bases = []
    for i in range(p):
        _, piv_cols, _ = _rref(f[i], q)
        im = f[i][:, piv_cols] if piv_cols else _mat(b.dims[i], 0)
        _, piv_rows, _ = _rref(im.T, q)
        comp = [r for r in range(b.dims[i]) if r not in piv_rows]
        comp_mat = _mat(b.dims[i], len(comp))
        for idx, r in enumerate(comp):
            comp_mat[r, idx] = 1
        im_bases.append(im)
        comp_bases.append(comp_mat)
    dims = tuple(c.shape[1] for c in comp_bases)
    mats = []
    for i in range(p):
        j = (i - 1) % p
        img = (b.mats[i] @ comp_bases[i]) % q
        full = np.concatenate([im_bases[j], comp_bases[j]], axis=1)
        coords = solve(full, img, q)
        mats.append(coords[im_bases[j].shape[1]:, :])
    return NilpRep(p, dims, tuple(mats))


def ext_class_reps(x: TubeObject, y: TubeObject) -> list[tuple[np.ndarray, ...]]:
    """Cocycles phi_i: X_i -> Y_{i-1} spanning Ext^1(x, y) modulo coboundaries."""
    a, b = realize(x), realize(y)
    p = x.p
    n_phi = sum(b.dims[(i - 1) % p] * a.dims[i] for i in range(p))
    n_g = sum(b.dims[i] * a.dims[i] for i in range(p))
    if n_phi == 0:
        return []
    # coboundary of g: (g_{i-1} A_i - B_i g_i)_i, same layout as the intertwiner system
    dmat = _intertwiner_matrix(a, b) if n_g else _mat(n_phi, 0)
    base_rank = rank(dmat) if n_g else 0
    classes: list[tuple[np.ndarray, ...]] = []
    cur = dmat
    cur_rank = base_rank
    for idx in range(n_phi):
        e = _mat(n_phi, 1)
        e[idx, 0] = 1
        aug = np.concatenate([cur, e], axis=1)
        r = rank(aug)
        if r > cur_rank:
            cur, cur_rank = aug, r
            classes.append(_unflatten_phi(e[:, 0], a, b))
    return classes


def _unflatten_phi(vec: np.ndarray, a: NilpRep, b: NilpRep) -> tuple[np.ndarray, ...]:
    p = a.p
    mats = []
    off = 0
    for i in range(p):
        j = (i - 1) % p
        n = b.dims[j] * a.dims[i]
        mats.append(vec[off:off + n].reshape(b.dims[j], a.dims[i]).astype(np.int64))
        off += n
    return tuple(mats)


def middle_term_rep(x: TubeObject, y: TubeObject, phi: tuple[np.ndarray, ...]) -> NilpRep:
    """Middle of the extension 0 -> y -> E -> x -> 0 attached to the cocycle phi."""
    a, b = realize(x), realize(y)
    p = x.p
    dims = tuple(b.dims[i] + a.dims[i] for i in range(p))
    mats = []
    for i in range(p):
        j = (i - 1) % p
        m = _mat(dims[j], dims[i])
        m[:b.dims[j], :b.dims[i]] = b.mats[i]
        m[:b.dims[j], b.dims[i]:] = phi[i]
        m[b.dims[j]:, b.dims[i]:] = a.mats[i]
        mats.append(m)
    return NilpRep(p, dims, tuple(mats))


def extension_middle_oracle(x: TubeObject, y: TubeObject) -> list[Counter[TubeObject]]:
    """Decomposed middle terms for a basis of Ext^1(x, y)."""
    return [decompose(middle_term_rep(x, y, phi)) for phi in ext_class_reps(x, y)]


def cone_parts(src: StalkObject, tgt: StalkObject, s: int) -> tuple[StalkObject, ...]:
    """Cone of the alignment-s basis map src -> tgt, by explicit matrices.

    Mirrors derived.cone_summands but goes through realize/kernel/cokernel
    (degree 0) or an explicit extension middle (degree 1).  For degree 1 the
    Ext space must be one-dimensional, so the class is unique up to scalar.
    """
    e = tgt.k - src.k
    if e == 0:
        f = canonical_hom(src.inner, tgt.inner, s)
        ker = decompose(kernel_rep(realize(src.inner), f))
        cok = decompose(cokernel_rep(realize(tgt.inner), f))
        out = [StalkObject(z, src.k + 1) for z, m in ker.items() for _ in range(m)]
        out += [StalkObject(z, src.k) for z, m in cok.items() for _ in range(m)]
        return tuple(sorted(out))
    if e == 1:
        classes = ext_class_reps(src.inner, tgt.inner)
        if len(classes) != 1:
            raise ValueError(f"Ext^1({src.inner}, {tgt.inner}) has dimension {len(classes)}, need 1")
        mid = decompose(middle_term_rep(src.inner, tgt.inner, classes[0]))
        return tuple(sorted(StalkObject(z, src.k + 1) for z, m in mid.items() for _ in range(m)))
    raise ValueError(f"no nonzero maps {src} -> {tgt}")


def cone_cohomology(x: TubeObject, y: TubeObject, f: tuple[np.ndarray, ...] | None,
                    phi: tuple[np.ndarray, ...] | None = None,
                    ) -> tuple[Counter[TubeObject], Counter[TubeObject]]:
    """Cohomology of the cone of an explicit map, as (H^-1, H^0) multisets.

    For an intertwiner f: x -> y the cone splits as ker[1] (+) coker; for an
    extension class phi in Ext^1(x, y) it is the middle term, concentrated in
    one degree.  Exactly one of f, phi must be given.
    """
    if (f is None) == (phi is None):
        raise ValueError("pass exactly one of an intertwiner or an extension class")
    if f is not None:
        a, b = realize(x), realize(y)
        for i in range(x.p):
            if not np.array_equal((f[(i - 1) % x.p] @ a.mats[i]) % _PRIMES[0],
                                  (b.mats[i] @ f[i]) % _PRIMES[0]):
                raise ValueError("not an intertwiner")
        return decompose(kernel_rep(a, f)), decompose(cokernel_rep(b, f))
    return Counter(), decompose(middle_term_rep(x, y, phi))


def sequence_is_exact(terms: list[tuple[np.ndarray, ...]], reps: list[NilpRep]) -> bool:
    """Check exactness of a chain of intertwiners via ranks and compositions.

    terms[i] is a map reps[i] -> reps[i+1]; the chain is treated as an exact
    sequence with zero objects on both ends.
    """
    n = len(terms)
    rank_of = [sum(int(rank(m)) for m in f) for f in terms]
    for i in range(n - 1):
        comp = compose(terms[i + 1], terms[i])
        if not is_zero_map(comp):
            return False
    # exactness at inner term i+1: dim ker(next) = rank(prev)
    for i in range(n - 1):
        mid_dim = reps[i + 1].total_dim
        if mid_dim - rank_of[i + 1] != rank_of[i]:
            return False
    if reps[0].total_dim != rank_of[0]:
        return False  # leftmost map must be injective
    if reps[-1].total_dim != rank_of[-1]:
        return False  # rightmost map must be surjective
    return True
