import pytest
from hypothesis import given, settings, strategies as st
from math import gcd

from nscurves.arrangement import face_data
from nscurves.curve import boundary_parallel_curve, dehn_twist, torus_slope
from nscurves.pairconfig import (PairConfiguration, algebraic_intersection,
                                 cut_components, draw_pair,
                                 find_complement_curve, intersection_number)
from nscurves.curve import twist_generators
from conftest import sample_curves, seeded


def test_equal_classes_drawn_disjoint(s11):
    m = torus_slope(s11, 1, 0)
    cfg = draw_pair(m, torus_slope(s11, 1, 0))
    assert cfg.count() == 0
    assert len(cfg.drawing.strands) == 2


def test_small_vertex_counts(s11):
    cfg = draw_pair(torus_slope(s11, 1, 0), torus_slope(s11, 0, 1))
    assert cfg.count() == 1
    cfg2 = draw_pair(torus_slope(s11, 1, 0), torus_slope(s11, 1, 2))
    assert cfg2.count() == 2
    signs = [v.sign_ab for v in cfg2.vertices]
    assert signs[0] == signs[1]


def test_symmetry_and_self(s11):
    a, b = torus_slope(s11, 3, 2), torus_slope(s11, 1, -1)
    assert intersection_number(a, b) == intersection_number(b, a)
    assert intersection_number(a, a) == 0


def test_convention_confluence(s11, s20):
    pairs = [(torus_slope(s11, 2, 1), torus_slope(s11, -1, 3))]
    cs = sample_curves(s20, 11, 4, complexity_bound=100)
    pairs += [(cs[0], cs[1]), (cs[2], cs[3])]
    for a, b in pairs:
        one = PairConfiguration(a, b, convention="ab").count()
        two = PairConfiguration(a, b, convention="ba").count()
        assert one == two


def test_algebraic_properties(s11):
    m = torus_slope(s11, 1, 0).oriented()
    l = torus_slope(s11, 0, 1).oriented()
    assert algebraic_intersection(m, l) == -algebraic_intersection(l, m)
    assert algebraic_intersection(m, l.reversed()) == \
        -algebraic_intersection(m, l)
    c = torus_slope(s11, 1, 2).oriented()
    assert abs(algebraic_intersection(m, c)) == 2


@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(
    lambda pq: pq != (0, 0) and gcd(*pq) == 1),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(
    lambda pq: pq != (0, 0) and gcd(*pq) == 1))
@settings(max_examples=25, deadline=None)
def test_algebraic_matches_determinant(s11, pq, rs):
    a = torus_slope(s11, *pq).oriented()
    b = torus_slope(s11, *rs).oriented()
    alg = algebraic_intersection(a, b)
    geo = intersection_number(a.curve, b.curve)
    assert abs(alg) <= geo
    assert abs(alg) == abs(pq[0] * rs[1] - pq[1] * rs[0])


def test_cut_components_examples(s11, s12, s20):
    assert cut_components(s11, torus_slope(s11, 1, 0)) == 1
    assert cut_components(s12, boundary_parallel_curve(s12, 1)) == 2
    # a separating curve on the closed genus-2 surface cuts it in two
    from nscurves.pairconfig import find_separating_complement
    gens = dict(twist_generators(s20))
    sep = find_separating_complement(draw_pair(gens["A"], gens["B"]))
    assert sep is not None and sep.cls.is_zero()
    assert cut_components(s20, sep) == 2
    assert cut_components(s20, dehn_twist(sep, gens["C"], 1)) == 2


def test_complement_curve_genus2(s20):
    gens = dict(twist_generators(s20))
    a, b = gens["A"], gens["B"]
    assert intersection_number(a, b) == 1
    c = find_complement_curve(draw_pair(a, b))
    assert c is not None
    assert not c.is_separating()
    assert intersection_number(c, a) == 0
    assert intersection_number(c, b) == 0


def test_complement_curve_none_on_torus(s11):
    cfg = draw_pair(torus_slope(s11, 1, 0), torus_slope(s11, 0, 1))
    assert find_complement_curve(cfg) is None


def test_complement_for_disjoint_pair(s20):
    gens = dict(twist_generators(s20))
    a, c_ = gens["A"], gens["C"]
    assert intersection_number(a, c_) == 0
    comp = find_complement_curve(draw_pair(a, c_))
    assert comp is not None
    assert cut_components(s20, comp) == 1
    assert intersection_number(comp, a) == 0
    assert intersection_number(comp, c_) == 0


def test_faces_are_bigon_free(s11, s20):
    pairs = [(torus_slope(s11, 1, 0), torus_slope(s11, 2, 3))]
    cs = sample_curves(s20, 13, 2, complexity_bound=80)
    pairs.append((cs[0], cs[1]))
    for a, b in pairs:
        cfg = draw_pair(a, b)
        faces = cfg.faces()
        assert not any(f.is_bigon for f in faces)
        # Euler count of the complement plus the curve graph recovers chi(S)
        n_vert = cfg.count()
        n_edges = 2 * n_vert if n_vert else 0
        loops = 2 if n_vert == 0 else 0
        chi_graph = n_vert - n_edges - loops
        assert chi_graph + sum(f.chi for f in faces) == \
            a.surface.euler_characteristic()


def test_config_export(s11):
    cfg = draw_pair(torus_slope(s11, 1, 0), torus_slope(s11, 1, 2))
    doc = cfg.to_json()
    assert doc["schema"].startswith("nscurves.pairconfig/")
    assert len(doc["vertices"]) == 2
    assert {a["role"] for a in doc["arcs"]} == {"a", "b"}
    assert all("chi" in f for f in doc["faces"])
