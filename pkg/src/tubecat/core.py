"""Arithmetic of the abelian tube category of rank p.

The tube of rank p is the category of nilpotent representations of the
cyclic quiver with p vertices.  Its indecomposables are the uniserial
objects S_j^(t) (top simple index j mod p, length t >= 1), with AR
translation tau(S_i) = S_{i-1}.  Everything here is closed-form
combinatorics on (p, j, t); explicit matrices live in `oracle`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


class RankMismatchError(ValueError):
    """Two objects live in tubes of different rank."""


@dataclass(frozen=True, order=True)
class TubeObject:
    """The uniserial S_j^(t): unique indecomposable with top S_j and length t."""

    p: int
    j: int
    t: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"tube rank must be >= 1, got {self.p}")
        if self.t < 1:
            raise ValueError(f"length must be >= 1, got {self.t}")
        object.__setattr__(self, "j", self.j % self.p)

    def __str__(self) -> str:
        return f"S{self.j}" + (f"^({self.t})" if self.t > 1 else "")


def tau(x: TubeObject, n: int = 1) -> TubeObject:
    """AR translation applied n times: shifts the top index down by n."""
    return TubeObject(x.p, x.j - n, x.t)


def top(x: TubeObject) -> TubeObject:
    return TubeObject(x.p, x.j, 1)


def soc(x: TubeObject) -> TubeObject:
    """Socle S_{j-t+1}: the bottom factor of the uniserial chain."""
    return TubeObject(x.p, x.j - x.t + 1, 1)


def socle_index(x: TubeObject) -> int:
    return (x.j - x.t + 1) % x.p


def factors(x: TubeObject) -> Counter[int]:
    """Multiset of composition factor indices j-t+1, ..., j (mod p)."""
    out: Counter[int] = Counter()
    for r in range(x.t):
        out[(x.j - r) % x.p] += 1
    return out


def dim_vector(x: TubeObject) -> tuple[int, ...]:
    """Dimension vector over the p vertices (composition factor multiplicities)."""
    base, extra = divmod(x.t, x.p)
    v = [base] * x.p
    for r in range(extra):
        v[(x.j - r) % x.p] += 1
    return tuple(v)


def _count_congruent(m: int, r: int, p: int) -> int:
    # number of s with 1 <= s <= m and s = r (mod p)
    if m < 1:
        return 0
    r %= p
    if r == 0:
        r = p
    return 0 if r > m else (m - r) // p + 1


def hom_alignments(x: TubeObject, y: TubeObject) -> list[int]:
    """Lengths s of the common subquotients realizing a basis of Hom(x, y).

    A nonzero map x -> y factors as (quotient of x of length s) = (subobject
    of y of length s); the alignment condition is s = j_x - j_y + t_y (mod p)
    with 1 <= s <= min(t_x, t_y).  One basis morphism per valid s.
    """
    if x.p != y.p:
        raise RankMismatchError(f"rank mismatch: {x.p} vs {y.p}")
    p = x.p
    m = min(x.t, y.t)
    r = (x.j - y.j + y.t) % p
    if r == 0:
        r = p
    return list(range(r, m + 1, p))


def hom_dim(x: TubeObject, y: TubeObject) -> int:
    """dim Hom(x, y), by counting common quotient-of-x / sub-of-y alignments."""
    if x.p != y.p:
        raise RankMismatchError(f"rank mismatch: {x.p} vs {y.p}")
    return _count_congruent(min(x.t, y.t), x.j - y.j + y.t, x.p)


def ext1_dim(x: TubeObject, y: TubeObject) -> int:
    """dim Ext^1(x, y) via AR duality: Ext^1(x, y) = D Hom(y, tau x)."""
    return hom_dim(y, tau(x, 1))


def ext_alignments(x: TubeObject, y: TubeObject) -> list[int]:
    """Alignments of Hom(y, tau x), indexing a basis of Ext^1(x, y)."""
    return hom_alignments(y, tau(x, 1))


def kernel_of_hom(x: TubeObject, y: TubeObject, s: int) -> list[TubeObject]:
    """Kernel of the alignment-s basis map x -> y (empty list for a mono)."""
    if x.t == s:
        return []
    return [TubeObject(x.p, x.j - s, x.t - s)]


def cokernel_of_hom(x: TubeObject, y: TubeObject, s: int) -> list[TubeObject]:
    """Cokernel of the alignment-s basis map x -> y (empty list for an epi)."""
    if y.t == s:
        return []
    return [TubeObject(y.p, y.j, y.t - s)]


def extension_middle(x: TubeObject, y: TubeObject, s: int) -> list[TubeObject]:
    """Middle term of the extension of x by y attached to alignment s.

    s runs over ext_alignments(x, y); the non-split extension glues the top
    t_y + 1 - s layers of y under x and leaves a length s - 1 quotient of y:

        0 -> y -> S_{j_x}^(t_x + t_y + 1 - s)  (+)  S_{j_y}^(s-1) -> x -> 0

    Validated exhaustively against the explicit-matrix oracle in the tests.
    """
    out = [TubeObject(x.p, x.j, x.t + y.t + 1 - s)]
    if s > 1:
        out.append(TubeObject(y.p, y.j, s - 1))
    return out


@dataclass(frozen=True)
class ExactSequence:
    """An exact sequence in the tube; each term is a tuple of summands."""

    family: int
    terms: tuple[tuple[TubeObject, ...], ...]

    def alternating_dim_sum(self) -> tuple[int, ...]:
        p = self.terms[0][0].p if self.terms and self.terms[0] else 1
        total = [0] * p
        sign = 1
        for term in self.terms:
            for summand in term:
                for i, d in enumerate(dim_vector(summand)):
                    total[i] += sign * d
            sign = -sign
        return tuple(total)


def fundamental_sequences(x: TubeObject) -> list[ExactSequence]:
    """The four standard exact sequences instantiated at x = S_j^(t).

    (1) 0 -> S_{j-1}^(t) -> S_j^(t+1) -> S_j -> 0
    (2) 0 -> S_{j-t}     -> S_j^(t+1) -> S_j^(t) -> 0
    (3) 0 -> S_j^(t) -> S_{j+1}^(t+1) (+) S_j^(t-1) -> S_{j+1}^(t) -> 0
    (4) 0 -> S_{j-t+1} -> S_j^(t) -> S_{j+1}^(t) -> S_{j+1} -> 0

    The length-0 summand in (3) at t = 1 is the zero object and is dropped.
    """
    p, j, t = x.p, x.j, x.t
    mid3: tuple[TubeObject, ...] = (TubeObject(p, j + 1, t + 1),)
    if t > 1:
        mid3 = mid3 + (TubeObject(p, j, t - 1),)
    return [
        ExactSequence(1, (
            (TubeObject(p, j - 1, t),),
            (TubeObject(p, j, t + 1),),
            (TubeObject(p, j, 1),),
        )),
        ExactSequence(2, (
            (TubeObject(p, j - t, 1),),
            (TubeObject(p, j, t + 1),),
            (TubeObject(p, j, t),),
        )),
        ExactSequence(3, (
            (TubeObject(p, j, t),),
            mid3,
            (TubeObject(p, j + 1, t),),
        )),
        ExactSequence(4, (
            (TubeObject(p, j - t + 1, 1),),
            (TubeObject(p, j, t),),
            (TubeObject(p, j + 1, t),),
            (TubeObject(p, j + 1, 1),),
        )),
    ]
