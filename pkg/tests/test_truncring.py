import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdgpaths.lattice import Lattice
from bdgpaths.space import Basepoints, GroupPresentation, builtin_space, fundamental_presentation
from bdgpaths.truncring import (RingMismatch, TruncPoly, act_left, act_right, antipode, build_ring,
                                graded_piece, ideal_quotient, invert_class, magnus, path_class)


def poly(n, g, terms):
    return TruncPoly(n, g, {tuple(w): c for w, c in terms.items()})


def space_ring(name, n):
    ss, bp = builtin_space(name)
    gp = fundamental_presentation(ss, bp)
    return gp, build_ring(gp, n)


def words(g, max_len=6):
    letters = [i for i in range(1, g + 1)] + [-i for i in range(1, g + 1)]
    return st.lists(st.sampled_from(letters), max_size=max_len).map(tuple)


# x -> (0,), y -> (1,)
X, Y = (0,), (1,)


def test_magnus_examples():
    assert magnus((1,), 2, 1) == poly(2, 1, {(): 1, X: 1})
    assert magnus((-1,), 2, 1) == poly(2, 1, {(): 1, X: -1, (0, 0): 1})
    assert magnus((1, 2, -1, -2), 2, 2) == poly(2, 2, {(): 1, (0, 1): 1, (1, 0): -1})
    assert magnus((), 3, 2) == TruncPoly.one(3, 2)


@settings(max_examples=100, deadline=None)
@given(words(2), words(2), st.integers(0, 4))
def test_magnus_multiplicative(u, v, n):
    assert magnus(u + v, n, 2) == magnus(u, n, 2) * magnus(v, n, 2)
    assert magnus(u, n, 2).augmentation() == 1


def test_free_ring_ranks():
    gp = GroupPresentation(ngens=2, relators=())
    for n in (1, 2, 3):
        ring = build_ring(gp, n)
        assert ring.ideal.rank == 0
        assert ring.group.invariants() == (sum(2 ** k for k in range(n + 1)), ())
        for k in range(1, n + 1):
            assert graded_piece(ring, k).invariants() == (2 ** k, ())


def test_torus_ring_rank():
    _, ring = space_ring("torus", 2)
    assert ring.group.invariants() == (6, ())
    assert graded_piece(ring, 2).invariants() == (3, ())


def test_trivial_group_ring():
    gp = GroupPresentation(ngens=1, relators=((1,),))
    for n in (1, 2, 3):
        assert build_ring(gp, n).group.invariants() == (1, ())


def test_build_ring_rejects_zero():
    with pytest.raises(ValueError):
        build_ring(GroupPresentation(ngens=1, relators=()), 0)


def test_mul_examples():
    gp = GroupPresentation(ngens=2, relators=())
    ring = build_ring(gp, 2)
    p = poly(2, 2, {X: 3, (0, 1): -2})
    assert ring.mul(p, ring.one()) == p
    lhs = ring.mul(ring.magnus((1,)), ring.magnus((2,)))
    assert lhs == poly(2, 2, {(): 1, X: 1, Y: 1, (0, 1): 1})


def test_torus_commutes_at_degree_two():
    _, ring = space_ring("torus", 2)
    a, b = ring.one() + ring.letter(0), ring.one() + ring.letter(1)
    assert ring.equal(a * b, b * a)
    assert not ring.equal(ring.letter(0), ring.letter(1))


def test_ring_mismatch():
    gp = GroupPresentation(ngens=2, relators=())
    ring = build_ring(gp, 2)
    with pytest.raises(RingMismatch):
        ring.mul(ring.one(), TruncPoly.one(3, 2))


def test_augmentation():
    u, v = magnus((1, -2, 1), 3, 2), magnus((2, 2), 3, 2)
    assert TruncPoly.one(3, 2).augmentation() == 1
    assert u.augmentation() == 1
    assert (u * 3 - v * 2).augmentation() == 1


@settings(max_examples=50, deadline=None)
@given(words(2), words(2))
def test_augmentation_is_multiplicative(u, v):
    p = magnus(u, 3, 2) * 2 - magnus(v, 3, 2)
    q = magnus(v, 3, 2) * 5 + magnus(u, 3, 2)
    assert (p * q).augmentation() == p.augmentation() * q.augmentation()


@pytest.mark.parametrize("name", ["circle", "wedge2", "torus", "genus1", "sphere2"])
def test_first_quotient_is_h1(name):
    gp, ring = space_ring(name, 1)
    assert ideal_quotient(ring, 1).is_isomorphic(gp.abelianization())


def test_wedge2_ideal_quotient():
    _, ring = space_ring("wedge2", 2)
    assert ideal_quotient(ring, 1).invariants() == (6, ())


def test_k_out_of_range():
    _, ring = space_ring("wedge2", 2)
    with pytest.raises(ValueError):
        graded_piece(ring, 3)
    with pytest.raises(ValueError):
        ideal_quotient(ring, 0)


@pytest.mark.parametrize("name,n", [("wedge2", 3), ("torus", 3), ("genus1", 2), ("sphere2", 2)])
def test_filtration_matches_graded_pieces(name, n):
    _, ring = space_ring(name, n)
    total = ideal_quotient(ring, 1).invariants()
    pieces = [graded_piece(ring, k).invariants() for k in range(1, n + 1)]
    assert total[0] == sum(p[0] for p in pieces)
    for k in range(1, n):
        assert ideal_quotient(ring, k).rank == sum(p[0] for p in pieces[k - 1:])


@pytest.mark.parametrize("name,n", [("torus", 3), ("genus1", 2), ("sphere2", 3)])
def test_ideal_is_two_sided(name, n):
    _, ring = space_ring(name, n)
    for v in ring.ideal.basis:
        p = ring.poly(v)
        for i in range(ring.g):
            x = ring.letter(i)
            assert ring.in_ideal(x * p)
            assert ring.in_ideal(p * x)


def test_path_class_actions():
    gp, ring = space_ring("wedge2", 2)
    bp = Basepoints(gp.anchor, gp.anchor)
    c = path_class((), ring, bp)
    assert act_right(c, ring.one()) == c
    p, q = ring.magnus((1, 2)), ring.magnus((-2,)) + ring.letter(0)
    w = path_class((2, -1, 1, 1), ring, bp)
    assert act_right(act_right(w, p), q) == act_right(w, ring.mul(p, q))


def test_left_right_submodules_agree():
    gp, ring = space_ring("wedge2", 2)
    bp = Basepoints(gp.anchor, gp.anchor)
    rng = random.Random(7)
    ideal_basis = [ring.poly(v) for v in ring.words_from(1)]
    for _ in range(10):
        w = tuple(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 5)))
        c = path_class(w, ring, bp)
        left = Lattice([ring.vector(act_left(c, p).poly) for p in ideal_basis] + list(ring.ideal.basis), ring.dim)
        right = Lattice([ring.vector(act_right(c, p).poly) for p in ideal_basis] + list(ring.ideal.basis), ring.dim)
        assert left == right


def test_path_class_requires_anchor():
    ss, bp = builtin_space("interval_wedge1")
    gp = fundamental_presentation(ss, bp)
    ring = build_ring(gp, 1)
    with pytest.raises(ValueError):
        path_class((), ring, Basepoints(bp.b, bp.a))


def test_invert_examples():
    gp, ring = space_ring("circle", 2)
    bp = Basepoints(gp.anchor, gp.anchor)
    assert invert_class(path_class((), ring, bp)) == path_class((), ring, bp)
    assert invert_class(path_class((1,), ring, bp)).poly == poly(2, 1, {(): 1, X: -1, (0, 0): 1})


def test_invert_distinct_endpoints_swaps_tags():
    ss, bp = builtin_space("interval_wedge1")
    gp = fundamental_presentation(ss, bp)
    c = path_class((1,), build_ring(gp, 2), bp)
    inv = invert_class(c)
    assert (inv.source, inv.target) == (bp.b, bp.a)
    assert invert_class(inv) == c


@settings(max_examples=50, deadline=None)
@given(words(2), words(2))
def test_antipode_properties(u, v):
    gp = GroupPresentation(ngens=2, relators=())
    ring = build_ring(gp, 3)
    bp = Basepoints(0, 0)
    c = path_class(u, ring, bp)
    assert invert_class(invert_class(c)) == c
    # anti-homomorphism and agreement with group inversion
    assert antipode(magnus(u, 3, 2) * magnus(v, 3, 2)) == antipode(magnus(v, 3, 2)) * antipode(magnus(u, 3, 2))
    assert antipode(magnus(u, 3, 2)) == magnus(tuple(-x for x in reversed(u)), 3, 2)
