from tubecat.derived import stalk
from tubecat.extquiver import (
    GradedQuiver,
    associated_quiver,
    check_compatibility,
    ext_quiver_of,
    gentle_of,
    graded_quiver_isomorphic,
    quiver_mutate,
    quiver_to_dot,
)
from tubecat.smc import Smc, enumerate_smcs, simples_smc, smc_from_triples


def _arrow_set(q: GradedQuiver):
    name = q.vertices
    return sorted((name[s], name[t], d) for s, t, d in q.arrows)


def test_standard_collection_is_a_degree_one_cycle():
    for p in (1, 2, 3, 5):
        q = ext_quiver_of(simples_smc(p))
        assert len(q.arrows) == p
        assert all(d == 1 for _, _, d in q.arrows)
        # each vertex has exactly one outgoing and one incoming arrow
        outs = sorted(s for s, _, _ in q.arrows)
        ins = sorted(t for _, t, _ in q.arrows)
        assert outs == list(range(p)) and ins == list(range(p))


def test_rank_one_quiver_with_loop_and_double_arrow():
    # tube part wrapping the whole circle: loop of degree 1, and the
    # socle-sharing member maps in twice, in consecutive degrees
    delta, k = 1, 2
    x = Smc((stalk(3, 2, 3, 0), stalk(3, 1, 2, delta + 1), stalk(3, 1, 1, delta + 1 - k)))
    q = ext_quiver_of(x)
    assert _arrow_set(q) == sorted([
        ("S2^(3)", "S2^(3)", 1),
        ("S1^(2)[2]", "S2^(3)", delta + 1),
        ("S1^(2)[2]", "S2^(3)", delta + 2),
        ("S1^(2)[2]", "S1", k),
    ])


def test_gentle_of_rank_two_heart():
    delta = 0
    x = Smc((stalk(3, 2, 2, 0), stalk(3, 0, 1, 0), stalk(3, 1, 1, delta + 1)))
    g = gentle_of(x)
    assert g.rank == 2
    kinds = sorted((a.kind, a.degree) for a in g.arrows)
    assert kinds == [("cut", 1), ("cut", 1), ("socle", delta + 1)]
    q = associated_quiver(g)
    # the composite through the cycle adds the trailing cut arrow
    assert ("S1[1]", "S0", delta + 2) in _arrow_set(q)
    assert graded_quiver_isomorphic(q, ext_quiver_of(x))


def test_gentle_of_seven_tube_example():
    x = smc_from_triples(7, [(1, 2, 0), (5, 4, 0), (6, 1, 0),
                             (0, 1, 1), (3, 1, -1), (4, 1, -1), (5, 1, -1)])
    g = gentle_of(x)
    assert g.rank == 3
    assert len(g.arrows) == 7
    assert graded_quiver_isomorphic(associated_quiver(g), ext_quiver_of(x))


def test_associated_quiver_of_pure_cycle_is_itself():
    g = gentle_of(simples_smc(4))
    q = associated_quiver(g)
    assert len(q.arrows) == 4
    assert all(d == 1 for _, _, d in q.arrows)


def test_colors_alternate_along_the_cycle():
    g = gentle_of(simples_smc(4))
    cycle_colors = [a.color for a in g.arrows if a.kind == "cut"]
    assert len(cycle_colors) == 4
    assert len(set(cycle_colors)) >= 2
    for a in g.arrows:
        assert a.color in ("straight", "curly", "dotted")


def test_loop_is_marked():
    x = Smc((stalk(3, 2, 3, 0), stalk(3, 1, 2, 1), stalk(3, 1, 1, 0)))
    g = gentle_of(x)
    loops = [a for a in g.arrows if a.src == a.tgt]
    assert len(loops) == 1 and loops[0].color == "loop" and loops[0].degree == 1


def test_gentle_structure_realizes_every_ext_quiver():
    for p, w in ((2, 2), (3, 1)):
        for x in enumerate_smcs(p, w, w):
            g = gentle_of(x)
            assert graded_quiver_isomorphic(associated_quiver(g), ext_quiver_of(x)), x


def test_arrow_count_conservation():
    from tubecat.derived import graded_hom
    for x in enumerate_smcs(3, 1, 1):
        q = ext_quiver_of(x)
        total = 0
        for a in x.objects:
            for b in x.objects:
                for n in range(1, 12):
                    total += graded_hom(a, b, n)
        assert q.total_arrows() == total


def test_quiver_mutation_matches_smc_mutation_on_standard():
    x0 = simples_smc(3)
    g = gentle_of(x0)
    from tubecat.mutation import mutate_left
    for v in range(3):
        member = sorted(x0.objects, key=lambda o: (o.k, o.inner.j, o.inner.t))[v]
        i = x0.objects.index(member)
        lhs = ext_quiver_of(mutate_left(x0, i))
        rhs = associated_quiver(quiver_mutate(g, v, "left"))
        assert graded_quiver_isomorphic(lhs, rhs)


def test_quiver_mutation_inverts():
    for x in enumerate_smcs(2, 1, 1):
        g = gentle_of(x)
        for v in range(len(g.placements)):
            back = quiver_mutate(quiver_mutate(g, v, "left"), v, "right")
            assert sorted(back.placements) == sorted(g.placements), (x, v)


def test_check_compatibility_sweep_small():
    for x in enumerate_smcs(3, 1, 1):
        for i in range(x.p):
            rep = check_compatibility(x, i)
            assert rep.ok, (x, i, rep.smc_side, rep.quiver_side)


def test_check_compatibility_right_direction():
    for x in enumerate_smcs(2, 1, 1):
        for i in range(x.p):
            assert check_compatibility(x, i, "right").ok


def test_graded_quiver_isomorphism_negative():
    a = GradedQuiver(("x", "y"), ((0, 1, 1),))
    b = GradedQuiver(("x", "y"), ((0, 1, 2),))
    assert graded_quiver_isomorphic(a, b) is None


def test_quiver_dot_export():
    dot = quiver_to_dot(ext_quiver_of(simples_smc(2)))
    assert dot.startswith("digraph extquiver {")
    assert '[label="1"]' in dot
