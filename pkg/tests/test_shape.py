import cmath
import math
import xml.etree.ElementTree as ET

import pytest

from conftest import general_position_quadruple, rand_complex, random_moebius
from fourpoints.errors import ConcyclicInput, DegenerateInput, DomainError
from fourpoints.forms import Edwards, Hesse, branch_points
from fourpoints.invariants import j_close, j_of_points
from fourpoints.moebius import apply, cross_ratio, cross_ratio_orbit
from fourpoints.numerics import INF, RHO
from fourpoints.shape import (
    Circle,
    Line,
    SvgOptions,
    apex_from_angles,
    circumcircle,
    cross_ratio_geometric,
    curvilinear_triangles,
    is_concyclic,
    shape_of,
    shape_svg,
    triangle_angles,
)

SVG = "{http://www.w3.org/2000/svg}"


def test_circumcircle_unit():
    c = circumcircle(1, 1j, -1)
    assert isinstance(c, Circle)
    assert abs(c.center) < 1e-15 and c.radius == pytest.approx(1)


def test_circumcircle_collinear_is_line():
    c = circumcircle(0, 1 + 1j, 3 + 3j)
    assert isinstance(c, Line)
    assert c.distance(-2 - 2j) < 1e-12


def test_circumcircle_random(rng):
    for _ in range(100):
        z = [rand_complex(rng) for _ in range(3)]
        c = circumcircle(*z)
        assert max(c.distance(w) for w in z) <= 1e-9 * max(1, getattr(c, "radius", 1))


def test_circumcircle_repeated_point():
    with pytest.raises(DegenerateInput):
        circumcircle(1, 1, 2)


def test_is_concyclic_examples():
    assert is_concyclic([1, 1j, -1, -1j])
    assert is_concyclic([0, 1, 2, INF])
    assert not is_concyclic([0, 1, 1j, INF])
    assert not is_concyclic([0, 1, RHO, 2])


def test_triangle_angles_sum(rng):
    for _ in range(100):
        a = triangle_angles(*(rand_complex(rng) for _ in range(3)))
        assert sum(a) == pytest.approx(math.pi)


def test_shape_equilateral():
    s = shape_of([0, 1, -RHO**2, INF])
    assert s.angles == pytest.approx((math.pi / 3,) * 3)


def test_shape_right_isoceles():
    s = shape_of([0, 1, 1j, INF])
    assert sorted(s.angles) == pytest.approx([math.pi / 4, math.pi / 4, math.pi / 2])
    assert s.angles[0] == pytest.approx(math.pi / 2)


def test_shape_orientation_relabels():
    s = shape_of([0, 1, -1j, INF])
    assert s.relabeled
    assert s.vertices == (0, -1j, 1)
    assert s.same_angles(shape_of([0, -1j, 1, INF]))


def test_shape_concyclic_raises():
    with pytest.raises(ConcyclicInput):
        shape_of([1, 1j, -1, -1j])
    with pytest.raises(ConcyclicInput):
        curvilinear_triangles([0, 1, 5, INF])


def test_shape_near_concyclic_flag():
    assert shape_of([1, 1j, -1, -1j * (1 + 1e-8)]).near_concyclic
    assert not shape_of([0, 1, 1j, INF]).near_concyclic


def test_apex_examples():
    assert apex_from_angles(math.pi / 3, math.pi / 3) == pytest.approx(-RHO**2)
    assert apex_from_angles(math.pi / 2, math.pi / 4) == pytest.approx(1j)
    assert apex_from_angles(math.pi / 4, math.pi / 2) == pytest.approx(1 + 1j)
    with pytest.raises(DomainError):
        apex_from_angles(2, 2)


def test_apex_remeasured(rng):
    for _ in range(200):
        a, b = rng.uniform(0.05, 1.5, size=2)
        lam = apex_from_angles(a, b)
        assert lam.imag > 0
        got = triangle_angles(0, 1, lam)
        assert got == pytest.approx((a, b, math.pi - a - b), abs=1e-12)


def test_four_triangles_share_angles(rng):
    for _ in range(500):
        tris = curvilinear_triangles(general_position_quadruple(rng))
        keys = [t.canonical_key() for t in tris]
        for k in keys[1:]:
            assert max(abs(x - y) for x, y in zip(k, keys[0])) <= 1e-8


def test_four_triangles_with_infinity():
    tris = curvilinear_triangles([0, 1, 1j, INF])
    assert tris[3].apex is INF
    for t in tris:
        assert t.same_angles(tris[3], 1e-12)


def test_geometric_cross_ratio_matches_ordering(rng):
    for _ in range(200):
        z = general_position_quadruple(rng)
        s = shape_of(z)
        v1, v2, v3 = s.vertices
        want = cross_ratio(v1, v2, z[3], v3)
        assert abs(cross_ratio_geometric(z) - want) <= 1e-8 * max(1, abs(want))
        assert cross_ratio_orbit(cross_ratio(*z)).contains(cross_ratio_geometric(z), 1e-8)


def test_shape_is_moebius_invariant(rng):
    for _ in range(200):
        z = general_position_quadruple(rng)
        m = random_moebius(rng)
        w = [apply(m, p) for p in z]
        assert shape_of(z).same_angles(shape_of(w), 1e-7)


def test_shape_ignores_labels(rng):
    for _ in range(100):
        z = general_position_quadruple(rng)
        perm = rng.permutation(4)
        assert shape_of(z).same_angles(shape_of([z[i] for i in perm]), 1e-7)


def test_mirror_image_has_other_shape():
    z = [0, 1, 0.3 + 0.8j, INF]
    zbar = [p if p is INF else p.conjugate() for p in z]
    assert not shape_of(z).same_angles(shape_of(zbar))
    assert not j_close(j_of_points(z), j_of_points(zbar))


def test_shape_equality_iff_j_equality(rng):
    agree = 0
    total = 0
    for _ in range(250):
        z = general_position_quadruple(rng, min_im=1e-2)
        m = random_moebius(rng)
        perm = rng.permutation(4)
        same = [apply(m, z[i]) for i in perm]
        other = [p + 1e-3 * rand_complex(rng) for p in z]
        for w in (same, other):
            s_eq = shape_of(z).same_angles(shape_of(w), 1e-7)
            j_eq = j_close(j_of_points(z), j_of_points(w), 1e-8)
            agree += s_eq == j_eq
            total += 1
    assert agree == total


def test_conformality_at_vertices(rng):
    # angles between circle arcs at a vertex survive the inversion z -> 1/(z - p4)
    for _ in range(50):
        z = general_position_quadruple(rng)
        m = random_moebius(rng)
        w = [apply(m, p) for p in z]
        if any(p is INF for p in w):
            continue
        a = shape_of(z).canonical_key()
        b = shape_of(w).canonical_key()
        assert a == pytest.approx(b, abs=1e-7)


def _parse(svg):
    root = ET.fromstring(svg.encode())
    assert root.tag == SVG + "svg"
    return root


@pytest.mark.parametrize(
    "pts",
    [
        [0, 1, 1j, INF],
        [0.2 + 0.1j, 1, -0.7 + 0.9j, -0.3 - 1.1j],
        list(branch_points(Edwards(1.34023 + 1.032j))),
        list(branch_points(Hesse(-2.39882 + 1.27189j))),
    ],
)
def test_svg_well_formed(pts):
    svg = shape_svg(pts, SvgOptions(title="demo & test"))
    root = _parse(svg)
    tris = root.findall(f".//{SVG}g[@class='triangle']")
    assert len(tris) == 4
    assert all(t.findall(f"{SVG}polyline") for t in tris)
    assert len(root.findall(f".//{SVG}g[@id='circumcircles']/*")) == 4
    assert svg == shape_svg(pts, SvgOptions(title="demo & test"))


def test_svg_marks_infinity():
    root = _parse(shape_svg([0, 1, 1j, INF]))
    texts = [t.text for t in root.iter(SVG + "text")]
    assert "z4 = ∞" in texts
    markers = root.find(f".//{SVG}g[@id='points']")
    assert len(markers.findall(f"{SVG}circle")) == 3


def test_svg_rejects_concyclic():
    with pytest.raises(ConcyclicInput):
        shape_svg([1, 1j, -1, -1j])
