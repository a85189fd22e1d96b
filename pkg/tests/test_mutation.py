from tubecat.derived import shift, stalk
from tubecat.mutation import (
    is_two_term,
    mutate_left,
    mutate_right,
    path_to_standard,
)
from tubecat.smc import Smc, classify, enumerate_smcs, simples_smc, smc_from_triples


def _det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = 0
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in mat[1:]]
        total += (-1) ** c * mat[0][c] * _det(minor)
    return total


def test_rank_two_left_mutation_matches_known_edge():
    x0 = simples_smc(2)
    i = x0.objects.index(stalk(2, 1, 1))
    got = mutate_left(x0, i, oracle_check=True)
    assert got == Smc((stalk(2, 0, 2, 0), stalk(2, 1, 1, 1)))


def test_left_mutation_with_no_incoming_maps_only_shifts():
    x = Smc((stalk(3, 2, 3, 0), stalk(3, 1, 2, 3), stalk(3, 1, 1, 1)))
    i = x.objects.index(stalk(3, 1, 2, 3))
    got = mutate_left(x, i)
    assert got == Smc((stalk(3, 2, 3, 0), stalk(3, 1, 2, 4), stalk(3, 1, 1, 1)))


def test_full_length_member_mutation_cuts_the_tower():
    # mutation at a full-turn member replaces socle-sharing members by quotients
    x = Smc((stalk(2, 1, 2, 0), stalk(2, 0, 1, 1)))
    i = x.objects.index(stalk(2, 1, 2, 0))
    got = mutate_left(x, i, oracle_check=True)
    assert got == Smc((stalk(2, 1, 2, 1), stalk(2, 1, 1, 0)))


def test_mutations_are_mutually_inverse_exhaustively():
    for x in enumerate_smcs(2, 2, 2) + enumerate_smcs(3, 1, 1):
        for i in range(x.p):
            left = mutate_left(x, i, oracle_check=True)
            back = mutate_right(left, i, oracle_check=True)
            assert back == x, (x, i)
            right = mutate_right(x, i)
            assert mutate_left(right, i) == x, (x, i)


def test_mutation_output_always_verifies():
    for x in enumerate_smcs(3, 1, 1):
        for i in range(x.p):
            out = mutate_left(x, i)
            assert out.certificate is not None
            assert classify(out).p == 3


def test_k0_lattice_preserved_up_to_unimodular_change():
    from tubecat.derived import k0_class
    for x in enumerate_smcs(2, 2, 2):
        base = [list(k0_class(o)) for o in x.objects]
        assert abs(_det(base)) == 1
        for i in range(x.p):
            out = mutate_left(x, i)
            mat = [list(k0_class(o)) for o in out.objects]
            assert abs(_det(mat)) == 1, (x, i)


def test_is_two_term():
    assert is_two_term(simples_smc(3))
    assert is_two_term(Smc((stalk(2, 0, 2, 0), stalk(2, 1, 1, 1))))
    assert not is_two_term(Smc((stalk(3, 2, 3, 0), stalk(3, 1, 2, 2), stalk(3, 1, 1, -1))))


def test_two_term_preservation_rule():
    # left mutation at a shift-0 member of a two-term SMC stays two-term
    for x in enumerate_smcs(2, 1, 1):
        if not is_two_term(x):
            continue
        for i, o in enumerate(x.objects):
            if o.k == 0:
                assert is_two_term(mutate_left(x, i)), (x, i)
            if o.k == 1:
                assert is_two_term(mutate_right(x, i)), (x, i)


def test_path_to_standard_trivial():
    assert path_to_standard(simples_smc(3)) == []


def test_path_to_standard_single_step():
    x = Smc((stalk(2, 0, 2, 0), stalk(2, 1, 1, 1)))
    steps = path_to_standard(x)
    assert len(steps) == 1
    assert steps[0].direction == "right"
    assert steps[0].after == simples_smc(2)


def test_path_to_standard_from_shifted_standard():
    for s in (-2, -1, 1, 2):
        x = Smc(tuple(shift(o, s) for o in simples_smc(2).objects))
        steps = path_to_standard(x)
        assert steps and steps[-1].after == simples_smc(2)


def test_path_to_standard_exhaustive_small():
    for p, w in ((2, 2), (3, 2)):
        for x in enumerate_smcs(p, w, w):
            steps = path_to_standard(x, cap=50)
            final = steps[-1].after if steps else x
            assert final == simples_smc(p), x


def test_path_to_standard_seven_tube_example():
    x = smc_from_triples(7, [(1, 2, 0), (5, 4, 0), (6, 1, 0),
                             (0, 1, 1), (3, 1, -1), (4, 1, -1), (5, 1, -1)])
    steps = path_to_standard(x, cap=50)
    assert steps[-1].after == simples_smc(7)
