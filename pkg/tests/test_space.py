import json

import pytest

from bdgpaths.oracle import absolute_homology
from bdgpaths.space import (Basepoints, SimplicialSet, SpaceError, attach_whisker, builtin_space,
                            edge_path_to_word, from_dict, fundamental_presentation, load_space_file,
                            parse_space_name, product_presentation, to_dict, validate)
from bdgpaths.truncring import build_ring, graded_piece

BUILTINS = ["circle", "wedge1", "wedge2", "wedge3", "torus", "genus1", "genus2", "sphere2",
            "interval_wedge1", "interval_wedge2"]


def test_minimal_circle_validates():
    ss = SimplicialSet((("v",), ("x",)), (((),), (((0, 0, (0,)), (0, 0, (0,))),)))
    assert validate(ss).ok


def test_missing_vertex_is_reported():
    ss = SimplicialSet((("v",), ("x",)), (((),), (((0, 3, (0,)), (0, 0, (0,))),)))
    report = validate(ss)
    assert not report.ok
    assert "missing" in report.violations[0]


def test_disconnected_is_reported():
    ss = SimplicialSet((("a", "b"),), (((), ()),))
    report = validate(ss)
    assert not report.ok and "connected" in report.violations[0]


def test_simplicial_identity_violation():
    # a triangle whose faces do not agree on a shared vertex
    data = {"simplices": [["p", "q"], [{"name": "e", "faces": ["q", "p"]},
                                        {"name": "l", "faces": ["p", "p"]}],
                          [{"name": "t", "faces": ["l", "l", "e"]}]]}
    with pytest.raises(SpaceError):
        from_dict(data)


def test_wedge2_counts():
    ss, bp = builtin_space("wedge2")
    assert ss.counts() == (1, 2)
    assert bp == Basepoints(0, 0)


def test_torus_counts():
    ss, _ = builtin_space("torus")
    assert ss.counts() == (1, 3, 2)
    assert ss.euler_characteristic() == 0
    assert absolute_homology(ss, 1).invariants() == (2, ())
    assert absolute_homology(ss, 2).invariants() == (1, ())


def test_interval_wedge1_shape():
    ss, bp = builtin_space("interval_wedge1")
    assert ss.counts() == (2, 2)
    assert bp.a != bp.b
    e = next(i for i in range(ss.count(1)) if ss.edge_ends(i) == (bp.a, bp.b))
    assert e is not None
    loops = [i for i in range(ss.count(1)) if ss.edge_ends(i) == (bp.a, bp.a)]
    assert len(loops) == 1


def test_genus_and_sphere_counts():
    ss, _ = builtin_space("genus2")
    assert ss.euler_characteristic() == -2
    ss, _ = builtin_space("sphere2")
    assert ss.counts() == (1, 0, 1)


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_h1_matches_abelianization(name):
    ss, bp = builtin_space(name)
    gp = fundamental_presentation(ss, bp)
    assert absolute_homology(ss, 1).is_isomorphic(gp.abelianization())


def test_unknown_space():
    with pytest.raises(SpaceError):
        builtin_space("klein")
    with pytest.raises(SpaceError):
        parse_space_name("wedge")
    assert parse_space_name("wedge(3)") == ("wedge", 3)
    assert parse_space_name("genus_2") == ("genus", 2)


def test_circle_presentation():
    ss, bp = builtin_space("circle")
    gp = fundamental_presentation(ss, bp)
    assert gp.ngens == 1 and gp.relators == ()


def test_torus_presentation():
    ss, bp = builtin_space("torus")
    gp = fundamental_presentation(ss, bp)
    assert gp.abelianization().invariants() == (2, ())
    ring = build_ring(gp, 2)
    assert graded_piece(ring, 1).invariants() == (2, ())
    assert graded_piece(ring, 2).invariants() == (3, ())


def test_sphere_presentation_kills_generators():
    ss, bp = builtin_space("sphere2")
    gp = fundamental_presentation(ss, bp)
    assert gp.abelianization().is_trivial()
    assert graded_piece(build_ring(gp, 1), 1).is_trivial()


def test_refpath_for_distinct_endpoints():
    ss, bp = builtin_space("interval_wedge1")
    gp = fundamental_presentation(ss, bp)
    assert len(gp.refpath) == 1
    e, sign = gp.refpath[0]
    assert sign == 1 and ss.edge_ends(e) == (bp.a, bp.b)


def test_edge_path_words():
    ss, bp = builtin_space("wedge2")
    gp = fundamental_presentation(ss, bp)
    x, y = gp.generators
    assert edge_path_to_word([], gp, ss) == ()
    assert edge_path_to_word([(x, 1)], gp, ss) == (1,)
    assert edge_path_to_word([(x, 1), (x, -1)], gp, ss) == ()
    # traversal x then y is the composition-order word y x
    assert edge_path_to_word([(x, 1), (y, 1)], gp, ss) == (2, 1)


def test_edge_path_disconnected():
    ss, bp = builtin_space("interval_wedge1")
    gp = fundamental_presentation(ss, bp)
    e = gp.refpath[0][0]
    with pytest.raises(SpaceError):
        edge_path_to_word([(e, 1), (e, 1)], gp, ss)


def test_edge_path_tree_edges_vanish():
    ss, bp = builtin_space("interval_wedge1")
    gp = fundamental_presentation(ss, bp)
    e = gp.refpath[0][0]
    assert edge_path_to_word([(e, 1)], gp, ss) == ()


@pytest.mark.parametrize("name", BUILTINS)
def test_dict_round_trip(name, tmp_path):
    ss, bp = builtin_space(name)
    path = tmp_path / "space.json"
    path.write_text(json.dumps(to_dict(ss, bp)))
    ss2, bp2 = load_space_file(str(path))
    assert ss2 == ss and bp2 == bp


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SpaceError):
        load_space_file(str(path))
    with pytest.raises(SpaceError):
        from_dict({"simplices": [["v"], [{"name": "x", "faces": ["w", "v"]}]]})


def test_whisker():
    ss, bp = builtin_space("wedge2")
    ss2, bp2 = attach_whisker(ss, bp.a)
    assert ss2.counts() == (2, 3)
    assert ss2.edge_ends(2) == (bp.a, bp2.b)
    gp = fundamental_presentation(ss2, bp2)
    assert gp.ngens == 2


def test_product_presentation():
    ss, bp = builtin_space("circle")
    gp2 = product_presentation(fundamental_presentation(ss, bp))
    assert gp2.ngens == 2
    assert gp2.abelianization().invariants() == (2, ())
