from fractions import Fraction

import numpy as np
import pytest

from conftest import random_patch
from toricqh import SelfExponent, ToricPatch, depth_basis, toric_basis
from toricqh.energy import solve_inner
from toricqh.patch import (
    DegenerateMetric,
    MassPoint,
    ZeroWeight,
    area,
    evaluate,
    mean_curvature,
    patch_first_derivative_paper,
    patch_map,
    patch_second_derivatives_paper,
    sample,
    tessellate,
)


def test_zero_control_gives_zero_maps(basis1):
    patch = ToricPatch(basis1, {k: MassPoint(0, 0, 0, 0) for k in basis1.keys()})
    assert all(c.is_zero() for c in patch_map(patch))
    puu, pvv = patch_second_derivatives_paper(patch)
    assert all(c.is_zero() for c in puu + pvv)


def test_constant_control(basis1):
    q = (0.5, -2.0, 3.25)
    patch = ToricPatch.from_points(basis1, {k: q for k in basis1.keys()})
    x, y, z, w = patch_map(patch)
    total = basis1.total()
    assert w == total and x == total * Fraction(q[0]) and z == total * Fraction(q[2])
    for u, v in [(0.3, 0.4), (Fraction(1), Fraction(1)), (2.0, 0.5)]:
        assert np.allclose(evaluate(patch, u, v), q, atol=1e-14)


def test_weight_at_origin(basis1):
    patch = random_patch(basis1)
    assert patch_map(patch)[3].eval(0, 0) == 1


@pytest.mark.parametrize("name,d", [("trap1", 1), ("trap2", 1), ("hexagon", 1), ("hexagon", 2), ("square", 2)])
def test_corner_interpolation(name, d, request):
    poly = request.getfixturevalue(name)
    basis = depth_basis(toric_basis(poly, SelfExponent()), d)
    patch = random_patch(basis, seed=3)
    for vert in poly.hull_vertices:
        p = evaluate(patch, *vert)
        ctrl = patch.control[(d * vert[0], d * vert[1])].point
        assert tuple(p) == ctrl


def test_evaluate_matches_component_division(basis1):
    patch = random_patch(basis1, seed=5)
    cu, cv = basis1.domain.centroid()
    comps = [c.eval(cu, cv) for c in patch_map(patch)]
    expected = [float(comps[i] / comps[3]) for i in range(3)]
    assert np.array_equal(evaluate(patch, cu, cv), expected)
    assert np.allclose(evaluate(patch, float(cu), float(cv)), expected, rtol=1e-12)


def test_zero_weight_detected(square):
    basis = toric_basis(square)
    patch = ToricPatch(basis, {k: MassPoint(1, 1, 1, 0) for k in basis.keys()})
    with pytest.raises(ZeroWeight):
        evaluate(patch, 0.5, 0.5)
    with pytest.raises(ValueError):
        MassPoint(0, 0, 0, -1)


@pytest.mark.parametrize("name,d", [("square", 1), ("square", 2), ("trap1", 1), ("trap2", 1), ("hexagon", 1), ("hexagon", 2)])
def test_derivative_routes_agree(name, d, request):
    basis = depth_basis(toric_basis(request.getfixturevalue(name)), d)
    patch = random_patch(basis, seed=11, weights={k: 1 + (k[0] % 2) for k in basis.keys()})
    comps = patch_map(patch)
    puu, pvv = patch_second_derivatives_paper(patch)
    assert puu == tuple(c.derivative("u", 2) for c in comps)
    assert pvv == tuple(c.derivative("v", 2) for c in comps)
    assert patch_first_derivative_paper(patch, "u") == tuple(c.derivative("u") for c in comps)
    assert patch_first_derivative_paper(patch, "v") == tuple(c.derivative("v") for c in comps)


def test_affine_invariance(trap2, basis2):
    patch = random_patch(basis2, seed=2)
    a = np.array([[1.0, 2.0, 0.5], [0.0, -1.0, 3.0], [2.0, 0.0, 1.0]])
    t = np.array([0.3, -1.2, 4.0])
    moved = ToricPatch.from_points(basis2, {k: a @ np.array(patch.control[k].point) + t for k in basis2.keys()})
    for u, v in [(0.5, 0.5), (2.0, 1.0), (Fraction(7, 3), Fraction(1, 2))]:
        assert np.allclose(evaluate(moved, u, v), a @ evaluate(patch, u, v) + t, atol=1e-12)


def _flat_patch(basis, d=1):
    return ToricPatch.from_points(basis, {k: (k[0] / d, k[1] / d, 0.0) for k in basis.keys()})


@pytest.mark.parametrize("name", ["trap1", "trap2", "hexagon"])
def test_planar_patch_has_zero_mean_curvature(name, request):
    basis = toric_basis(request.getfixturevalue(name))
    patch = ToricPatch.from_points(basis, {k: (k[0] + 0.3 * k[1], 2 * k[1] - k[0], 0.0) for k in basis.keys()})
    cu, cv = basis.domain.centroid()
    for u, v in [(float(cu), float(cv)), (0.8, 0.6), (1.1, 1.0)]:
        assert abs(mean_curvature(patch, u, v)) < 1e-9


def test_curved_cap_has_curvature(square):
    # raised middle row and column of the control net: a curved cap
    basis = depth_basis(toric_basis(square), 2)
    patch = ToricPatch.from_points(basis, {k: (k[0] / 2, k[1] / 2, float((k[0] == 1) + (k[1] == 1))) for k in basis.keys()})
    s = sample(patch, 0.5, 0.5)
    assert s.mean_curvature != 0
    assert np.isclose(np.linalg.norm(s.unit_normal), 1)


def test_flat_square_area(square):
    patch = _flat_patch(toric_basis(square))
    assert area(patch) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        area(patch, 0)


def test_flat_hexagon_area(hexagon):
    # a rational reparameterisation of the flat hexagon, so quadrature is inexact
    patch = _flat_patch(toric_basis(hexagon))
    assert area(patch) == pytest.approx(3.0, rel=1e-5)
    assert abs(area(patch, 16) - 3.0) < abs(area(patch, 8) - 3.0)


def test_degenerate_metric(square):
    basis = toric_basis(square)
    patch = ToricPatch.from_points(basis, {k: (float(k[0]), 0.0, 0.0) for k in basis.keys()})
    with pytest.raises(DegenerateMetric):
        sample(patch, 0.5, 0.5)


def test_tessellate_triangle():
    from toricqh.lattice import convex_hull

    basis = toric_basis(convex_hull([(0, 0), (1, 0), (0, 1)]))
    mesh = tessellate(random_patch(basis), 1)
    assert len(mesh.params) == 3 and len(mesh.triangles) == 1
    with pytest.raises(ValueError):
        tessellate(random_patch(basis), 0)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_tessellate_hexagon_is_a_disk(hex2, n):
    patch = random_patch(hex2, seed=4)
    mesh = tessellate(patch, n)
    v, e, f = len(mesh.params), len(mesh.edges), len(mesh.triangles)
    assert v - e + f == 1
    assert f == 4 * n * n
    # consistent counterclockwise winding in the parameter plane
    for a, b, c in mesh.triangles:
        pa, pb, pc = (mesh.params[i] for i in (a, b, c))
        assert (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pc[0] - pa[0]) * (pb[1] - pa[1]) > 0


def test_mesh_corners_hit_control_points(hex2, hexagon):
    patch = random_patch(hex2, seed=8)
    mesh = tessellate(patch, 4)
    for vert in hexagon.hull_vertices:
        idx = mesh.params.index((Fraction(vert[0]), Fraction(vert[1])))
        assert tuple(mesh.positions[idx]) == patch.control[(2 * vert[0], 2 * vert[1])].point


def test_area_quasi_minimality(basis1):
    """Moving the inner point away from the solved position mostly grows the area."""
    rng = np.random.default_rng(20)
    base = ToricPatch.from_points(basis1, {
        k: (k[0], k[1], 0.3 * (k[0] - 1.5) ** 2 - 0.4 * (k[1] - 1) ** 2) for k in basis1.keys()
    })
    solved = solve_inner(base).patch
    a0 = area(solved)
    p = np.array(solved.control[(1, 1)].point)
    wins = 0
    for _ in range(20):
        step = rng.normal(size=3)
        step /= np.linalg.norm(step)
        moved = solved.with_control({(1, 1): MassPoint.from_point(p + step)})
        wins += a0 <= area(moved) * (1 + 1e-6)
    assert wins > 10
