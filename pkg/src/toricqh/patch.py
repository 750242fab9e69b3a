"""Toric Bezier patches: mass-point evaluation, derivatives, curvature, meshes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Mapping

import numpy as np

from .basis import BasisFunctionSet, first_derivative_terms, second_derivative_terms
from .lattice import classify
from .poly import Poly2

ZERO_WEIGHT_EPS = 1e-12


class ZeroWeight(ArithmeticError):
    pass


class DegenerateMetric(ArithmeticError):
    pass


@dataclass(frozen=True)
class MassPoint:
    """Weighted control point (w*x, w*y, w*z, w)."""

    wx: float
    wy: float
    wz: float
    w: float

    def __post_init__(self):
        if self.w < 0:
            raise ValueError(f"negative weight {self.w}")

    @classmethod
    def from_point(cls, p, w=1.0) -> MassPoint:
        x, y, z = p
        return cls(w * x, w * y, w * z, w)

    @property
    def point(self) -> tuple[float, float, float]:
        if self.w == 0:
            raise ZeroWeight("mass-point with zero weight has no affine position")
        return (self.wx / self.w, self.wy / self.w, self.wz / self.w)

    def as_tuple(self):
        return (self.wx, self.wy, self.wz, self.w)


@dataclass(frozen=True)
class SurfaceSample:
    u: float
    v: float
    position: np.ndarray
    unit_normal: np.ndarray
    mean_curvature: float


@dataclass(frozen=True, eq=False)
class ToricPatch:
    basis: BasisFunctionSet
    control: Mapping
    boundary_keys: frozenset = field(init=False)
    inner_keys: frozenset = field(init=False)

    def __post_init__(self):
        keys = set(self.basis.functions)
        if set(self.control) != keys:
            missing = sorted(keys - set(self.control))
            extra = sorted(set(self.control) - keys)
            raise ValueError(f"control keys mismatch: missing {missing}, extra {extra}")
        boundary, inner = classify(self.basis.index_polygon)
        object.__setattr__(self, "boundary_keys", boundary)
        object.__setattr__(self, "inner_keys", inner)

    @classmethod
    def from_points(cls, basis, points: Mapping, weights: Mapping | float = 1.0) -> ToricPatch:
        control = {}
        for k, p in points.items():
            w = weights if not isinstance(weights, Mapping) else weights.get(k, 1.0)
            control[k] = MassPoint.from_point(p, w)
        return cls(basis, control)

    def with_control(self, updates: Mapping) -> ToricPatch:
        control = dict(self.control)
        control.update(updates)
        return ToricPatch(self.basis, control)

    def keys(self):
        return self.basis.keys()

    def mass_matrix(self) -> np.ndarray:
        """Rows of (wx, wy, wz, w) in ``keys()`` order."""
        return np.array([self.control[k].as_tuple() for k in self.keys()], dtype=float)

    @cached_property
    def components(self) -> tuple[Poly2, Poly2, Poly2, Poly2]:
        return patch_map(self)

    @cached_property
    def _jets(self):
        # (value, du, dv, duu, duv, dvv) arrays per component, float evaluation
        out = []
        for comp in self.components:
            polys = (
                comp,
                comp.derivative("u"),
                comp.derivative("v"),
                comp.derivative("u", 2),
                comp.derivative("u").derivative("v"),
                comp.derivative("v", 2),
            )
            out.append([p.to_arrays() for p in polys])
        return out

    def jet(self, u, v) -> np.ndarray:
        """6 x 4 array of the component polynomials and their derivatives."""
        u, v = float(u), float(v)
        res = np.empty((6, 4))
        for c, comp in enumerate(self._jets):
            for r, (a, b, coef) in enumerate(comp):
                res[r, c] = float(np.sum(coef * u**a * v**b)) if coef.size else 0.0
        return res


def patch_map(patch: ToricPatch) -> tuple[Poly2, Poly2, Poly2, Poly2]:
    """Four polynomials sum_gamma beta_gamma * (wx, wy, wz, w)_gamma."""
    comps = [Poly2(), Poly2(), Poly2(), Poly2()]
    for k, f in patch.basis.functions.items():
        m = patch.control[k].as_tuple()
        for c in range(4):
            if m[c]:
                comps[c] = comps[c] + f * Fraction(m[c])
    return tuple(comps)


def evaluate(patch: ToricPatch, u, v, eps: float = ZERO_WEIGHT_EPS) -> np.ndarray:
    """Affine surface point; exact arithmetic when (u, v) are rational."""
    if isinstance(u, Rational) and isinstance(v, Rational):
        vals = [c.eval(u, v) for c in patch.components]
        if abs(vals[3]) < eps:
            raise ZeroWeight(f"weight component vanishes at ({u}, {v})")
        return np.array([float(vals[c] / vals[3]) for c in range(3)])
    vals = patch.jet(u, v)[0]
    if abs(vals[3]) < eps:
        raise ZeroWeight(f"weight component vanishes at ({u}, {v})")
    return vals[:3] / vals[3]


def patch_first_derivative_paper(patch: ToricPatch, var: str) -> tuple[Poly2, ...]:
    terms = first_derivative_terms(patch.basis, var)
    return _combine(patch, terms)


def patch_second_derivatives_paper(patch: ToricPatch):
    """(P_uu, P_vv) as 4-tuples of polynomials via the convolution formulas."""
    puu = _combine(patch, second_derivative_terms(patch.basis, "u"))
    pvv = _combine(patch, second_derivative_terms(patch.basis, "v"))
    return puu, pvv


def _combine(patch, terms: Mapping) -> tuple[Poly2, ...]:
    comps = [Poly2(), Poly2(), Poly2(), Poly2()]
    for k, f in terms.items():
        m = patch.control[k].as_tuple()
        for c in range(4):
            if m[c]:
                comps[c] = comps[c] + f * Fraction(m[c])
    return tuple(comps)


def _affine_jet(patch: ToricPatch, u, v, eps=ZERO_WEIGHT_EPS):
    """Position and its first/second derivatives by the quotient rule."""
    j = patch.jet(u, v)
    W, Wu, Wv, Wuu, Wuv, Wvv = j[:, 3]
    if abs(W) < eps:
        raise ZeroWeight(f"weight component vanishes at ({u}, {v})")
    X, Xu, Xv, Xuu, Xuv, Xvv = (j[r, :3] for r in range(6))
    x = X / W
    xu = (Xu - x * Wu) / W
    xv = (Xv - x * Wv) / W
    xuu = (Xuu - 2 * xu * Wu - x * Wuu) / W
    xuv = (Xuv - xu * Wv - xv * Wu - x * Wuv) / W
    xvv = (Xvv - 2 * xv * Wv - x * Wvv) / W
    return x, xu, xv, xuu, xuv, xvv


def sample(patch: ToricPatch, u, v, eps: float = 1e-14) -> SurfaceSample:
    x, xu, xv, xuu, xuv, xvv = _affine_jet(patch, u, v)
    E, F, G = xu @ xu, xu @ xv, xv @ xv
    det = E * G - F * F
    if det <= eps * max(1.0, E * G):
        raise DegenerateMetric(f"first fundamental form is singular at ({u}, {v})")
    n = np.cross(xu, xv)
    n /= np.linalg.norm(n)
    L, M, N = xuu @ n, xuv @ n, xvv @ n
    H = (E * N - 2 * F * M + G * L) / (2 * det)
    return SurfaceSample(float(u), float(v), x, n, float(H))


def mean_curvature(patch: ToricPatch, u, v) -> float:
    return sample(patch, u, v).mean_curvature


def _triangle_rule(order: int):
    """Collapsed Gauss-Legendre rule on the reference triangle."""
    x, w = np.polynomial.legendre.leggauss(order)
    x = (x + 1) / 2
    w = w / 2
    s = np.repeat(x, order)
    t = np.tile(x, order) * (1 - s)
    weights = np.repeat(w, order) * np.tile(w, order) * (1 - s)
    return s, t, weights


def area(patch: ToricPatch, quadrature_order: int = 8) -> float:
    """Surface area by Gauss quadrature on the fan triangulation of the hull."""
    if quadrature_order < 1:
        raise ValueError("quadrature_order must be >= 1")
    s, t, w = _triangle_rule(quadrature_order)
    total = 0.0
    for p0, p1, p2 in patch.basis.domain.fan():
        p0, p1, p2 = (np.asarray(p, float) for p in (p0, p1, p2))
        e1, e2 = p1 - p0, p2 - p0
        jac = abs(e1[0] * e2[1] - e1[1] * e2[0])
        for sk, tk, wk in zip(s, t, w):
            uv = p0 + sk * e1 + tk * e2
            _, xu, xv, *_ = _affine_jet(patch, uv[0], uv[1])
            total += wk * jac * np.linalg.norm(np.cross(xu, xv))
    return float(total)


@dataclass
class Mesh:
    params: list  # (u, v) as Fractions
    positions: np.ndarray
    triangles: list

    @property
    def edges(self) -> set:
        out = set()
        for a, b, c in self.triangles:
            for x, y in ((a, b), (b, c), (c, a)):
                out.add((min(x, y), max(x, y)))
        return out


def tessellate(patch: ToricPatch, subdivisions: int) -> Mesh:
    """Uniformly refined fan triangulation, evaluated at exact parameters."""
    if subdivisions < 1:
        raise ValueError("subdivisions must be >= 1")
    n = subdivisions
    index: dict = {}
    params: list = []
    triangles: list = []

    def vid(p):
        if p not in index:
            index[p] = len(params)
            params.append(p)
        return index[p]

    for p0, p1, p2 in patch.basis.domain.fan():
        def at(a, b):
            return (
                p0[0] + Fraction(a * (p1[0] - p0[0]) + b * (p2[0] - p0[0]), n),
                p0[1] + Fraction(a * (p1[1] - p0[1]) + b * (p2[1] - p0[1]), n),
            )

        for a in range(n):
            for b in range(n - a):
                triangles.append((vid(at(a, b)), vid(at(a + 1, b)), vid(at(a, b + 1))))
                if a + b < n - 1:
                    triangles.append((vid(at(a + 1, b)), vid(at(a + 1, b + 1)), vid(at(a, b + 1))))
    positions = np.array([evaluate(patch, u, v) for u, v in params])
    return Mesh(params, positions, triangles)
