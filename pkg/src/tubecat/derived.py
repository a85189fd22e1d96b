"""Stalk objects of the bounded derived category of a rank-p tube.

The derived category is the repetitive category of shifted tube copies:
every indecomposable is a stalk S_j^(t)[k], and

    Hom(S_{j1}^(t1)[k1], S_{j2}^(t2)[k2]) = Ext^{k2-k1}(S_{j1}^(t1), S_{j2}^(t2)),

so graded homs are concentrated in at most two consecutive degrees
(the tube is hereditary).  Convention: H^{-k}(S[k]) = S.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    RankMismatchError,
    TubeObject,
    dim_vector,
    ext1_dim,
    ext_alignments,
    extension_middle,
    cokernel_of_hom,
    hom_alignments,
    hom_dim,
    kernel_of_hom,
    tau,
)


@dataclass(frozen=True, order=True)
class StalkObject:
    """S_j^(t)[k]: a tube object placed in cohomological degree -k."""

    inner: TubeObject
    k: int = 0

    @property
    def p(self) -> int:
        return self.inner.p

    def __str__(self) -> str:
        return str(self.inner) + (f"[{self.k}]" if self.k else "")


def stalk(p: int, j: int, t: int, k: int = 0) -> StalkObject:
    return StalkObject(TubeObject(p, j, t), k)


def shift(x: StalkObject, n: int = 1) -> StalkObject:
    return StalkObject(x.inner, x.k + n)


def tau_derived(x: StalkObject, n: int = 1) -> StalkObject:
    return StalkObject(tau(x.inner, n), x.k)


def graded_hom(x: StalkObject, y: StalkObject, n: int) -> int:
    """dim Hom(x, y[n])."""
    if x.p != y.p:
        raise RankMismatchError(f"rank mismatch: {x.p} vs {y.p}")
    e = n + y.k - x.k
    if e == 0:
        return hom_dim(x.inner, y.inner)
    if e == 1:
        return ext1_dim(x.inner, y.inner)
    return 0


def hom_degrees(x: StalkObject, y: StalkObject) -> list[tuple[int, int]]:
    """All (degree, dim) with dim Hom(x, y[degree]) > 0; at most two entries."""
    out = []
    for e in (0, 1):
        n = e + x.k - y.k
        d = graded_hom(x, y, n)
        if d:
            out.append((n, d))
    return out


def k0_class(x: StalkObject) -> tuple[int, ...]:
    """Class in the Grothendieck group: (-1)^k times the dimension vector."""
    sign = -1 if x.k % 2 else 1
    return tuple(sign * d for d in dim_vector(x.inner))


def euler_form(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Euler form of the cyclic quiver with arrows i -> i-1.

    <a, b> = sum_i a_i b_i - sum_i a_i b_{i-1}; equals hom - ext^1 on
    dimension vectors of nilpotent representations.
    """
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    p = len(a)
    return sum(a[i] * b[i] - a[i] * b[(i - 1) % p] for i in range(p))


def cone_summands(src: StalkObject, tgt: StalkObject, s: int) -> tuple[StalkObject, ...]:
    """Indecomposable summands of the cone of the alignment-s basis map src -> tgt.

    Requires Hom(src, tgt) nonzero, i.e. tgt.k - src.k in {0, 1}.  For a map
    inside one tube copy the cone is ker[1] (+) coker; for a degree-1 class
    it is the extension middle term shifted once.
    """
    e = tgt.k - src.k
    if e == 0:
        ker = kernel_of_hom(src.inner, tgt.inner, s)
        cok = cokernel_of_hom(src.inner, tgt.inner, s)
        out = [StalkObject(z, src.k + 1) for z in ker] + [StalkObject(z, src.k) for z in cok]
    elif e == 1:
        out = [StalkObject(z, src.k + 1) for z in extension_middle(src.inner, tgt.inner, s)]
    else:
        raise ValueError(f"no nonzero maps {src} -> {tgt}")
    return tuple(sorted(out))


def cone_alignments(src: StalkObject, tgt: StalkObject) -> list[int]:
    """Alignments indexing the basis of Hom(src, tgt) (empty when it vanishes)."""
    e = tgt.k - src.k
    if e == 0:
        return hom_alignments(src.inner, tgt.inner)
    if e == 1:
        return ext_alignments(src.inner, tgt.inner)
    return []
