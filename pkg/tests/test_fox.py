import random

import pytest

from bdgpaths.fox import (ModelError, fox_derivative, fox_matrix, homology_model, loop_model,
                          path_model, ring_truncation, truncate)
from bdgpaths.lattice import FgAbGroup
from bdgpaths.space import attach_whisker, builtin_space, fundamental_presentation
from bdgpaths.truncring import (TruncPoly, build_ring, graded_piece, ideal_quotient, magnus,
                                path_class, ring_at)

LOOP_SPACES = ["circle", "wedge2", "torus", "genus1", "sphere2"]


def setup(name):
    ss, bp = builtin_space(name)
    return ss, bp, fundamental_presentation(ss, bp)


def random_words(g, count, seed, max_len=5):
    rng = random.Random(seed)
    letters = [i for i in range(1, g + 1)] + [-i for i in range(1, g + 1)]
    return [tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len))) for _ in range(count)]


def test_fox_derivative_examples():
    _, _, gp = setup("wedge2")
    ring = build_ring(gp, 2)
    assert fox_derivative((1,), 0, ring) == ring.one()
    assert fox_derivative((1, 2), 1, ring) == magnus((1,), 2, 2)
    assert fox_derivative((1, 2), 0, ring) == ring.one()
    assert fox_derivative((-1,), 0, ring) == -magnus((-1,), 2, 2)
    with pytest.raises(ModelError):
        fox_derivative((1,), 5, ring)


def test_commutator_derivative():
    _, _, gp = setup("wedge2")
    ring = build_ring(gp, 2)
    r = (1, 2, -1, -2)
    d = fox_derivative(r, 0, ring)
    # 1 - x y x^-1 truncated
    assert d == ring.one() - magnus((1, 2, -1), 2, 2)
    total = sum((fox_derivative(r, e, ring) * ring.letter(e) for e in range(2)), TruncPoly.zero(2, 2))
    assert total == magnus(r, 2, 2) - ring.one()


@pytest.mark.parametrize("name", LOOP_SPACES + ["genus2", "interval_wedge2"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_fundamental_identity(name, n):
    _, _, gp = setup(name)
    ring = build_ring(gp, n)
    mat = fox_matrix(gp, ring)
    for j, r in enumerate(gp.relators):
        total = TruncPoly.zero(n, gp.ngens)
        for e in range(gp.ngens):
            total = total + mat[e][j] * ring.letter(e)
        assert ring.equal(total, magnus(r, n, gp.ngens) - ring.one())


@pytest.mark.parametrize("name,ranks", [
    ("circle", [1, 2, 3]),
    ("wedge2", [2, 6, 14]),
    ("torus", [2, 5, 9]),
    ("sphere2", [0, 0, 0]),
])
def test_loop_model_values(name, ranks):
    _, bp, gp = setup(name)
    for n, r in enumerate(ranks, start=1):
        assert loop_model(gp, None, n).group.invariants() == (r, ())


@pytest.mark.parametrize("name", LOOP_SPACES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_loop_model_is_ideal_quotient(name, n):
    _, _, gp = setup(name)
    ring = build_ring(gp, n)
    assert loop_model(gp, ring, n).group.is_isomorphic(ideal_quotient(ring, 1))


@pytest.mark.parametrize("name,ranks", [("interval_wedge1", [2, 3, 4]), ("interval_wedge2", [3, 7, 15])])
def test_path_model_values(name, ranks):
    _, bp, gp = setup(name)
    for n, r in enumerate(ranks, start=1):
        assert path_model(gp, None, n).group.invariants() == (r, ())


def test_path_model_quotient_by_distinguished():
    _, bp, gp = setup("interval_wedge2")
    m = path_model(gp, None, 2)
    quotient = FgAbGroup(m.group.dim, list(m.group.relation_lattice.basis) + [m.distinguished()],
                         m.group.subgroup_lattice().basis)
    _, _, gw = setup("wedge2")
    assert quotient.is_isomorphic(loop_model(gw, None, 2).group)


def test_path_model_errors():
    _, _, gp = setup("wedge2")
    with pytest.raises(ModelError):
        path_model(gp, None, 1)
    _, _, gp = setup("interval_wedge1")
    with pytest.raises(ModelError):
        loop_model(gp, build_ring(gp, 2), 1)


def test_kappa_examples():
    _, bp, gp = setup("wedge2")
    ring = build_ring(gp, 1)
    m = loop_model(gp, ring, 1)
    assert m.kappa(path_class((), ring, bp)) == (0,) * m.group.ngens
    # at n = 1 the model is H1 on the edge basis
    assert m.ambient(magnus((1,), 1, 2)) == [1, 0]
    assert m.ambient(magnus((2,), 1, 2)) == [0, 1]
    assert m.kappa(path_class((1,), ring, bp)) != m.kappa(path_class((2,), ring, bp))


def test_kappa_refpath_is_distinguished():
    _, bp, gp = setup("interval_wedge1")
    for n in (1, 2, 3):
        ring = build_ring(gp, n)
        m = path_model(gp, ring, n)
        assert m.kappa(path_class((), ring, bp)) == m.group.reduce(m.distinguished())


@pytest.mark.parametrize("name", LOOP_SPACES + ["interval_wedge1", "interval_wedge2"])
@pytest.mark.parametrize("n", [1, 2])
def test_kappa_surjective_with_expected_kernel(name, n):
    _, bp, gp = setup(name)
    ring = build_ring(gp, n)
    m = homology_model(gp, n, bp.a, bp.b)
    k = m.kappa_hom(ring)
    assert k.is_well_defined() and k.is_surjective()
    ker = k.kernel()
    if bp.same:
        assert ker.invariants() == (1, ())
        assert ker.contains(ring.vector(ring.one()))
    else:
        assert ker.is_trivial()


def test_kappa_additive():
    _, bp, gp = setup("torus")
    ring = build_ring(gp, 2)
    m = loop_model(gp, ring, 2)
    for u, v in zip(random_words(2, 10, 1), random_words(2, 10, 2)):
        p, q = path_class(u, ring, bp), path_class(v, ring, bp)
        lhs = m.kappa(p + q)
        rhs = m.group.normalize([a + b for a, b in zip(m.kappa(p), m.kappa(q))])
        assert lhs == rhs


def test_truncation_examples():
    _, bp, gp = setup("wedge2")
    t = truncate(loop_model(gp, None, 2), loop_model(gp, None, 1))
    assert t.is_well_defined() and t.is_surjective()
    assert t.kernel().invariants() == (4, ())
    t0 = truncate(loop_model(gp, None, 1), loop_model(gp, None, 0))
    assert t0.src.ngens == 2 and t0.dst.is_trivial()


def test_truncation_to_degree_zero_path():
    _, bp, gp = setup("interval_wedge1")
    t0 = truncate(path_model(gp, None, 1), path_model(gp, None, 0))
    assert t0.dst.invariants() == (1, ())
    assert t0.is_surjective()
    assert t0.kernel().invariants() == (1, ())


def test_truncation_rejects_gaps():
    _, _, gp = setup("wedge2")
    with pytest.raises(ModelError):
        truncate(loop_model(gp, None, 3), loop_model(gp, None, 1))


@pytest.mark.parametrize("name", ["wedge2", "torus", "interval_wedge1"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_ladder(name, n):
    _, bp, gp = setup(name)
    mn, mm = homology_model(gp, n, bp.a, bp.b), homology_model(gp, n - 1, bp.a, bp.b)
    tau = truncate(mn, mm)
    assert tau.is_well_defined() and tau.is_surjective()
    # kernel of tau is A_n
    assert tau.kernel().is_isomorphic(graded_piece(build_ring(gp, n), n))
    ring_n, ring_m = build_ring(gp, n), ring_at(gp, n - 1)
    rt = ring_truncation(ring_n, ring_m)
    for w in random_words(gp.ngens, 20, n):
        v = ring_n.vector(magnus(w, n, gp.ngens))
        lhs = tau(mn.ambient(magnus(w, n, gp.ngens)))
        rhs = mm.group.reduce(mm.ambient(ring_m.poly(rt.apply(v))))
        assert lhs == rhs
    # ker(kappa_n) maps isomorphically onto ker(kappa_{n-1})
    if n >= 2:
        kn = mn.kappa_hom(ring_n).kernel()
        km = mm.kappa_hom(ring_m).kernel()
        restricted = FgAbGroup(ring_m.dim, ring_m.ideal.basis, [rt.apply(v) for v in kn.subgroup_lattice().basis])
        assert same_subgroup(restricted, km)
        assert kn.is_isomorphic(km)


def same_subgroup(g1, g2):
    return g1.subgroup_lattice() + g1.relation_lattice == g2.subgroup_lattice() + g2.relation_lattice


def test_ladder_on_x():
    _, bp, gp = setup("wedge2")
    m2, m1 = loop_model(gp, None, 2), loop_model(gp, None, 1)
    x = magnus((1,), 2, 2)
    assert truncate(m2, m1)(m2.ambient(x)) == m1.kappa_poly(x.truncate(1))


def test_poly_of_inverts_kappa():
    for name in ("torus", "interval_wedge1"):
        _, bp, gp = setup(name)
        m = homology_model(gp, 2, bp.a, bp.b)
        for gen in m.group.generators():
            q = m.poly_of(gen)
            assert m.kappa_poly(q) == m.group.reduce(gen)


def test_whisker_model_matches_interval_wedge():
    ss, bp = builtin_space("wedge1")
    ss2, bp2 = attach_whisker(ss, bp.a)
    gp = fundamental_presentation(ss2, bp2)
    assert path_model(gp, None, 2).group.invariants() == (3, ())
    assert bp2.a != bp2.b
