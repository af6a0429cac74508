import pytest

from bdgpaths.checks import chain_kappa_compare, make_context
from bdgpaths.oracle import (ResourceLimitError, absolute_homology, chain_class, connectivity_check,
                             euler_ok, kappa_chain, product, relative_complex, relative_homology,
                             subspace, tensor_power_check)
from bdgpaths.space import Basepoints, SpaceError, builtin_space


def space(name):
    return builtin_space(name)


def test_product_counts():
    ss, _ = space("circle")
    assert product(ss, 2).counts() == (1, 3, 2)
    ss, _ = space("wedge2")
    assert product(ss, 2).counts() == (1, 8, 8)


@pytest.mark.parametrize("name", ["circle", "wedge2", "torus", "sphere2", "interval_wedge1"])
def test_power_one_is_the_space(name):
    ss, _ = space(name)
    assert product(ss, 1).counts() == ss.counts()


@pytest.mark.parametrize("name,n", [("circle", 3), ("wedge2", 3), ("torus", 2), ("sphere2", 2),
                                    ("interval_wedge1", 3), ("genus1", 2)])
def test_euler_characteristic_is_multiplicative(name, n):
    ss, _ = space(name)
    assert euler_ok(ss, n)


def test_cap_is_enforced():
    ss, _ = space("torus")
    with pytest.raises(ResourceLimitError):
        product(ss, 3, cap=50)


def test_subspace_n1_both_is_the_two_vertices():
    ss, bp = space("interval_wedge1")
    sub = subspace(product(ss, 1), "both", bp)
    assert sub.count(0) == 2 and sub.count(1) == 0


def test_subspace_circle_upper():
    ss, bp = space("circle")
    pss = product(ss, 2)
    sub = subspace(pss, "upper", bp)
    assert sub.count(1) == 2 and sub.count(2) == 0
    names = sorted(tuple(sub.loci(pss.simplices[1][i])) for i in sub.members[1])
    assert names == [("x1=a",), ("x1=x2",)]


def test_subspace_circle_both():
    ss, bp = space("circle")
    sub = subspace(product(ss, 2), "both", bp)
    assert sub.count(1) == 3 and sub.count(2) == 0


@pytest.mark.parametrize("variant", ["upper", "lower", "both"])
@pytest.mark.parametrize("name", ["wedge2", "torus", "interval_wedge1"])
def test_subspaces_are_face_closed(name, variant):
    ss, bp = space(name)
    assert subspace(product(ss, 2), variant, bp).is_face_closed()


def test_subspace_errors():
    ss, bp = space("circle")
    with pytest.raises(SpaceError):
        subspace(product(ss, 2), "middle", bp)
    with pytest.raises(SpaceError):
        subspace(product(ss, 2), "both", Basepoints(0, 4))


@pytest.mark.parametrize("name,n", [("circle", 3), ("wedge2", 2), ("torus", 2), ("interval_wedge2", 2)])
def test_dd_is_zero(name, n):
    ss, bp = space(name)
    rc = relative_complex(ss, n, "both", bp)
    assert all(rc.check_dd(k) for k in range(1, n + 2))


def test_relative_homology_examples():
    ss, bp = space("circle")
    assert relative_homology(ss, 1, 1, "upper", bp) == (1, ())
    ss, bp = space("wedge2")
    assert relative_homology(ss, 2, 2, "both", bp) == (6, ())
    assert relative_homology(ss, 2, 1, "both", bp) == (0, ())


def test_absolute_homology():
    ss, _ = space("genus2")
    assert absolute_homology(ss, 1).invariants() == (4, ())
    assert absolute_homology(ss, 2).invariants() == (1, ())
    ss, _ = space("sphere2")
    assert absolute_homology(ss, 2).invariants() == (1, ())


@pytest.mark.parametrize("name,n", [("wedge2", 2), ("wedge2", 3), ("interval_wedge1", 2), ("torus", 2)])
def test_connectivity(name, n):
    ss, bp = space(name)
    rep = connectivity_check(relative_complex(ss, n, "both", bp, maxdim=n), n)
    assert rep.ok, rep


def test_connectivity_n1():
    ss, bp = space("wedge2")
    rep = connectivity_check(relative_complex(ss, 1, "both", bp, maxdim=1), 1)
    assert rep.ok and set(rep.groups) == {0}


@pytest.mark.parametrize("name,rank", [("circle", 1), ("wedge2", 4), ("torus", 4)])
def test_tensor_power(name, rank):
    ss, bp = space(name)
    rep = tensor_power_check(ss, bp, 2)
    assert rep.ok
    assert rep.top == (rank, ())


def test_kappa_chain_constant_path_is_zero():
    ss, bp = space("wedge2")
    assert kappa_chain([], 2, ss, bp.a) == {}


def test_kappa_chain_single_edge_n1():
    ss, bp = space("wedge2")
    chain = kappa_chain([0], 1, ss, bp.a)
    assert chain == {((1, 0, (0, 1)),): 1}


def test_kappa_chain_single_edge_n2():
    ss, bp = space("circle")
    chain = kappa_chain([0], 2, ss, bp.a)
    assert len(chain) == 1
    (t, c), = chain.items()
    assert c == 1
    # one of the two nondegenerate 2-simplices over (x, x)
    pss = product(ss, 2)
    assert t in pss.index[2]
    rc = relative_complex(ss, 2, "both", bp)
    assert rc.chain_boundary(chain, 2) == {}
    assert chain_class(rc, chain, 2) != (0,) * rc.homology_group(2).ngens


def test_kappa_chain_bad_path():
    ss, bp = space("interval_wedge1")
    e = next(i for i in range(ss.count(1)) if ss.edge_ends(i) == (bp.a, bp.b))
    with pytest.raises(SpaceError):
        kappa_chain([e, e], 1, ss, bp.a)
    with pytest.raises(SpaceError):
        kappa_chain([], 1, ss, bp.a, bp.b)


@pytest.mark.parametrize("name,distinct", [("wedge2", False), ("wedge2", True), ("torus", False),
                                           ("interval_wedge2", True)])
@pytest.mark.parametrize("n", [1, 2])
def test_chain_kappa_matches_algebraic(name, distinct, n):
    ss, bp = space(name)
    res = chain_kappa_compare(make_context(ss, bp, distinct), n)
    assert res.same_kernel and res.surjective
