import pytest

from tubecat.core import (
    RankMismatchError,
    TubeObject,
    dim_vector,
    ext1_dim,
    factors,
    fundamental_sequences,
    hom_dim,
    soc,
    tau,
    top,
)


def test_top_index_normalized_mod_p():
    assert TubeObject(3, 5, 2) == TubeObject(3, 2, 2)
    assert TubeObject(3, -1, 1).j == 2


def test_invalid_objects_rejected():
    with pytest.raises(ValueError):
        TubeObject(0, 0, 1)
    with pytest.raises(ValueError):
        TubeObject(3, 0, 0)


def test_tau_shifts_top_index():
    assert tau(TubeObject(3, 2, 1)) == TubeObject(3, 1, 1)
    assert tau(TubeObject(5, 0, 4), 0) == TubeObject(5, 0, 4)
    assert tau(TubeObject(3, 2, 2), 3) == TubeObject(3, 2, 2)


def test_top_soc_factors():
    assert soc(TubeObject(3, 2, 3)) == TubeObject(3, 0, 1)
    assert top(TubeObject(3, 1, 2)) == TubeObject(3, 1, 1)
    assert factors(TubeObject(3, 1, 1)) == {1: 1}
    assert factors(TubeObject(2, 0, 4)) == {0: 2, 1: 2}


def test_dim_vector_counts_factors():
    assert dim_vector(TubeObject(3, 2, 3)) == (1, 1, 1)
    assert dim_vector(TubeObject(2, 0, 4)) == (2, 2)
    assert dim_vector(TubeObject(3, 1, 2)) == (1, 1, 0)


def test_hom_dim_small_cases():
    # the top projection S_j^(t) -> S_j always exists
    for t in range(1, 7):
        assert hom_dim(TubeObject(3, 1, t), TubeObject(3, 1, 1)) == 1
    # endomorphism rings: k for t <= p, growing with full turns
    assert hom_dim(TubeObject(3, 0, 3), TubeObject(3, 0, 3)) == 1
    assert hom_dim(TubeObject(3, 0, 6), TubeObject(3, 0, 6)) == 2
    assert hom_dim(TubeObject(2, 0, 4), TubeObject(2, 0, 4)) == 2


def test_hom_dim_rank_mismatch():
    with pytest.raises(RankMismatchError):
        hom_dim(TubeObject(2, 0, 1), TubeObject(3, 0, 1))


def test_ext1_between_simples():
    # one arrow's worth of extensions S_j on top of S_{j-1}
    for p in (2, 3, 5):
        for j in range(p):
            assert ext1_dim(TubeObject(p, j, 1), TubeObject(p, j - 1, 1)) == 1
            if p >= 2:
                assert ext1_dim(TubeObject(p, j, 1), TubeObject(p, j, 1)) == 0


def test_ext1_self_extension_of_full_turn():
    assert ext1_dim(TubeObject(3, 2, 3), TubeObject(3, 2, 3)) == 1
    assert ext1_dim(TubeObject(2, 0, 2), TubeObject(2, 0, 2)) == 1
    assert ext1_dim(TubeObject(3, 2, 2), TubeObject(3, 2, 2)) == 0


def test_hom_nonvanishing_criterion():
    # Hom(x, y) != 0 iff top(x) is a factor of y and soc(y) is a factor of x
    for p in (2, 3, 4):
        objs = [TubeObject(p, j, t) for j in range(p) for t in range(1, 2 * p + 1)]
        for x in objs:
            for y in objs:
                expected = x.j in factors(y) and (y.j - y.t + 1) % p in factors(x)
                assert (hom_dim(x, y) > 0) == expected, (x, y)


def test_tau_equivariance():
    objs = [TubeObject(3, j, t) for j in range(3) for t in range(1, 7)]
    for x in objs:
        for y in objs:
            assert hom_dim(tau(x), tau(y)) == hom_dim(x, y)
            assert ext1_dim(tau(x), tau(y)) == ext1_dim(x, y)


def test_fundamental_sequences_dimension_additivity():
    for p in (2, 3, 5):
        for j in range(p):
            for t in range(1, 11):
                for seq in fundamental_sequences(TubeObject(p, j, t)):
                    assert seq.alternating_dim_sum() == (0,) * p, (p, j, t, seq.family)


def test_fundamental_sequence_shapes():
    seqs = {s.family: s for s in fundamental_sequences(TubeObject(3, 1, 1))}
    assert seqs[1].terms == (
        (TubeObject(3, 0, 1),), (TubeObject(3, 1, 2),), (TubeObject(3, 1, 1),))
    # t = 1 drops the zero summand in the middle of family (3)
    assert seqs[3].terms[1] == (TubeObject(3, 2, 2),)
    assert len(seqs[4].terms) == 4
