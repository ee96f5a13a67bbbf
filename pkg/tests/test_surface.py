import pytest

from nscurves.errors import NSCurvesError
from nscurves.surface import build_surface, parse_surface_spec, validate


@pytest.mark.parametrize("g,b,chi", [(2, 0, -2), (1, 1, -1), (1, 2, -2),
                                     (2, 1, -3), (3, 0, -4)])
def test_euler_characteristic(g, b, chi):
    s = build_surface(g, b)
    assert s.euler_characteristic() == chi
    assert len(s.boundary_cycles) == b
    assert validate(s) == []


def test_genus_zero_rejected():
    with pytest.raises(NSCurvesError):
        build_surface(0, 2)


def test_deterministic_construction():
    a = build_surface(2, 1)
    b = build_surface(2, 1)
    assert a is b  # cached
    # structural identity independent of the cache
    c = parse_surface_spec("g2b1")
    assert c.glue == a.glue
    assert [e.front for e in c.edges] == [e.front for e in a.edges]


def test_vertex_structure():
    # closed surfaces have one vertex; bounded ones keep all on the boundary
    assert build_surface(2, 0).nvertices == 1
    s = build_surface(1, 2)
    on_bd = set()
    for cyc in s.boundary_cycles:
        for (t, side) in cyc:
            on_bd.add(s.vertex_of_corner[(t, side)])
            on_bd.add(s.vertex_of_corner[(t, (side + 1) % 3)])
    assert on_bd == set(range(s.nvertices))


def test_validate_reports_missing_gluing():
    s = build_surface(2, 0)
    glue = dict(s.glue)
    (t, side) = next(iter(glue))
    partner = glue.pop((t, side))
    glue.pop(partner)
    from nscurves.surface import Surface
    broken = Surface(2, 0, s.ntri, glue, {k: True for k in glue}, check=False)
    problems = validate(broken)
    assert any("boundary cycle count" in p for p in problems)


def test_validate_reports_orientation_violation():
    s = build_surface(1, 1)
    from nscurves.surface import Surface
    flags = {k: True for k in s.glue}
    (t, side) = next(iter(s.glue))
    partner = s.glue[(t, side)]
    flags[(t, side)] = False
    flags[partner] = False
    broken = Surface(1, 1, s.ntri, dict(s.glue), flags, check=False)
    problems = validate(broken)
    assert any("orientation violation" in p for p in problems)


def test_word_generator_count():
    # free rank 2g+b-1 for bounded surfaces, 2g generators for closed ones
    for (g, b) in [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (3, 2)]:
        s = build_surface(g, b)
        assert len(s.word_gen_edges) == 2 * g + max(b - 1, 0)


def test_relators_only_for_closed():
    assert len(build_surface(2, 0).vertex_relators) == 1
    assert len(build_surface(2, 0).vertex_relators[0]) == 8
    assert build_surface(2, 1).vertex_relators == []


def test_json_export():
    s = build_surface(1, 2)
    doc = s.to_json()
    assert doc["schema"].startswith("nscurves.surface/")
    assert doc["genus"] == 1
    assert len(doc["triangles"]) == s.ntri
    assert len(doc["boundary_cycles"]) == 2


def test_spec_parse_errors():
    with pytest.raises(NSCurvesError):
        parse_surface_spec("x2y0")
    assert parse_surface_spec("g2b0").spec_name == "g2b0"
