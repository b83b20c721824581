import math
import os

import pytest

import hypcone


def test_isometry_roundtrip():
    g = hypcone.rotation((0j, None), math.pi / 2)
    c = hypcone.classify(g)
    assert c["kind"] == "elliptic"
    assert c["angle"] == pytest.approx(math.pi / 2, abs=1e-14)
    assert hypcone.axis(g) == (0j, None)
    p = g.apply([1.0, 0.0, 1.0])
    assert hypcone.hyperbolic_distance(p, [0.0, 1.0, 1.0]) < 1e-12


def test_axes_meet():
    vertical = (0j, None)
    g1 = hypcone.rotation(vertical, math.pi)
    g2 = hypcone.rotation((-1 + 0j, 1 + 0j), math.pi)
    point = hypcone.axes_meet_point(g1, g2)
    assert point is not None
    assert hypcone.hyperbolic_distance(point, [0.0, 0.0, 1.0]) < 1e-10
    assert hypcone.axes_meet_point(g1, hypcone.rotation((1 + 0j, 4 + 0j), math.pi)) is None


def test_tube():
    t = hypcone.Tube(1.0, 1.0, math.pi)
    assert hypcone.area(t) / hypcone.volume(t) == pytest.approx(2 / math.tanh(1.0), rel=1e-14)
    w, h = hypcone.boundary_rectangle(t)
    assert w == pytest.approx(math.pi * math.sinh(1.0), rel=1e-15)
    assert hypcone.area(hypcone.cusp_opening_family("angle_pinch", 7)) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(hypcone.HypconeError):
        hypcone.Tube(-1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        hypcone.cusp_opening_family("bogus", 1)


def test_smoothing():
    p = hypcone.SmoothingProfile.standard()
    assert p.epsilon == 0.1
    k = hypcone.sectional_curvatures(p, 1.0)
    assert all(abs(x + 1) < 1e-12 for x in k)
    report = hypcone.negativity_check(p, 100)
    assert report["max"] < 0
    assert report["oracle_consistent"]


def test_volume():
    a = hypcone.APolynomial.figure_eight()
    length, L = hypcone.core_length(a, math.pi / 2)
    assert length == pytest.approx(2 * math.acosh(2), rel=1e-12)
    assert abs(L.imag) < 1e-12
    assert 6 * hypcone.lobachevsky(math.pi / 3) == pytest.approx(2.029883212819, abs=1e-12)
    star, criterion = hypcone.deformation_range(a)
    assert abs(star - 2 * math.pi / 3) < 1e-9
    data = os.environ.get("HYPCONE_DATA_DIR")
    if data:
        assert len(hypcone.APolynomial.load(os.path.join(data, "figure8.apoly")).terms) == 7
    with pytest.raises(hypcone.HypconeError, match="DegenerateSubstitution"):
        hypcone.core_length(hypcone.APolynomial.parse("1 0 1\n0 0 -1\n"), 1.0)


def test_gh():
    x = hypcone.MetricSpace([[0, 1], [1, 0]])
    y = hypcone.MetricSpace([[0]])
    assert not hypcone.is_eps_approximation([(0, 0), (1, 0)], x, y, 0.5)
    assert hypcone.is_eps_approximation([(0, 0), (1, 0)], x, y, 1.2)
    assert hypcone.min_eps(x, y) == (1.0, True)
    line = hypcone.MetricSpace([[abs(i - j) for j in range(11)] for i in range(11)])
    assert hypcone.covering_number(line, 10.5, 1.0) == 11


def test_classify():
    assert hypcone.gauss_bonnet_defect(2, [math.pi] * 4) == pytest.approx(0.0, abs=1e-14)
    assert hypcone.classify_surface(2, [math.pi / 2, math.pi / 2, math.pi]) == "triple_sphere"
    third = 2 * math.pi / 3
    assert hypcone.tetrahedron_regime(third, third, third, 0.0) == "ideal"
    assert hypcone.tetrahedron_regime(third, third, third, 0.1) == "truncated"
    g = hypcone.gram_matrix(third, third, third, 0.0)
    assert g[0][1] == pytest.approx(-0.5, abs=1e-15)
