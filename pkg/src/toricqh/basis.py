"""Toric Bernstein bases over lattice polygons and their depth-d convolutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Mapping

from .lattice import (
    InvalidDepth,
    LatticePoint,
    LatticePolygon,
    convex_hull,
    dilate,
    trapezoid_points,
)
from .poly import ONE, Poly2


class NormalizationNotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class Unit:
    tag = "unit"

    def constant(self, point, polygon) -> Fraction:
        return Fraction(1)


@dataclass(frozen=True)
class SelfExponent:
    """c = prod_k e_k^(-e_k) with e_k the edge values at the point.

    Makes every corner function equal to 1 at its own corner.
    """

    tag = "self-exponent"

    def constant(self, point, polygon) -> Fraction:
        c = Fraction(1)
        for e in polygon.edge_values(point):
            if e > 0:
                c /= Fraction(e) ** e
        return c


@dataclass(frozen=True)
class TrapezoidTensor:
    """[C(n,j)/n^n] * [C(w,i)/w^w] with row width w = m + p*n - p*j."""

    n: int
    m: int
    p: int
    tag = "trapezoid-tensor"

    def check(self, polygon) -> None:
        if set(polygon.points) != trapezoid_points(self.n, self.m, self.p):
            raise NormalizationNotApplicable(
                f"domain is not the trapezoid (n={self.n}, m={self.m}, p={self.p})"
            )

    def constant(self, point, polygon) -> Fraction:
        i, j = point
        w = self.m + self.p * self.n - self.p * j
        row = Fraction(comb(self.n, j), self.n**self.n)
        col = Fraction(comb(w, i), w**w) if w > 0 else Fraction(1)
        return row * col

    @classmethod
    def detect(cls, points) -> TrapezoidTensor:
        """Recover (n, m, p) from a trapezoid-family point set."""
        pts = set(points)
        n = max(j for _, j in pts)
        if n < 1 or min(j for _, j in pts) != 0:
            raise NormalizationNotApplicable("point set is not a trapezoid-family domain")
        m = max(i for i, j in pts if j == n)
        w0 = max(i for i, j in pts if j == 0)
        p, rem = divmod(w0 - m, n)
        if rem or p < 1 or m < 0 or pts != trapezoid_points(n, m, p):
            raise NormalizationNotApplicable("point set is not a trapezoid-family domain")
        return cls(n, m, p)


@dataclass(frozen=True)
class Explicit:
    constants: Mapping[LatticePoint, Fraction] = field(hash=False, compare=True)
    tag = "explicit"

    def __post_init__(self):
        for k, c in self.constants.items():
            if Fraction(c) <= 0:
                raise ValueError(f"normalizing constant at {k} must be positive, got {c}")

    def constant(self, point, polygon) -> Fraction:
        try:
            return Fraction(self.constants[point])
        except KeyError:
            raise NormalizationNotApplicable(f"no normalizing constant for {point}") from None


Normalization = Unit | SelfExponent | TrapezoidTensor | Explicit


@dataclass(frozen=True, eq=False)
class BasisFunctionSet:
    """Basis of depth ``depth``, keyed by the points of sigma^depth.

    The functions are polynomials on the hull of ``sigma`` (the parameter
    domain for every depth); ``index_polygon`` is the hull of sigma^depth,
    which only organises the control net. ``base`` holds the depth-1
    functions used by the convolution-based derivative formulas.
    """

    sigma: LatticePolygon
    depth: int
    functions: dict
    normalization: Normalization
    base: dict

    @property
    def domain(self) -> LatticePolygon:
        return self.sigma

    @cached_property
    def index_polygon(self) -> LatticePolygon:
        if self.depth == 1:
            return self.sigma
        return convex_hull(self.functions)

    def keys(self):
        return sorted(self.functions)

    def at_depth(self, k: int) -> dict:
        """Depth-k functions of the same family; depth 0 is {(0,0): 1}."""
        if k < 0:
            raise InvalidDepth(f"depth must be >= 0, got {k}")
        cache = self.__dict__.setdefault("_depth_cache", {0: {(0, 0): ONE}, 1: self.base})
        if self.depth not in cache:
            cache[self.depth] = self.functions
        if k not in cache:
            lower = self.at_depth(k - 1)
            cache[k] = convolve_arrays(lower, self.base)
        return cache[k]

    def total(self) -> Poly2:
        return sum(self.functions.values(), Poly2())


def edge_exponents(polygon: LatticePolygon, point) -> tuple[int, ...]:
    return polygon.edge_values(point)


def toric_basis(domain: LatticePolygon, norm: Normalization | None = None) -> BasisFunctionSet:
    """c * prod_k L_k(u,v)^L_k(point) for every point of the domain."""
    norm = SelfExponent() if norm is None else norm
    if isinstance(norm, TrapezoidTensor):
        norm.check(domain)
    lines = [e.as_poly() for e in domain.edges]
    powers: list[dict[int, Poly2]] = [{} for _ in lines]
    functions = {}
    for pt in domain.points:
        f = Poly2.const(norm.constant(pt, domain))
        for k, e in enumerate(domain.edge_values(pt)):
            if e:
                if e not in powers[k]:
                    powers[k][e] = lines[k] ** e
                f = f * powers[k][e]
        functions[pt] = f
    return BasisFunctionSet(domain, 1, functions, norm, functions)


def convolve_arrays(p: Mapping, q: Mapping) -> dict:
    """(P conv Q)_c = sum over a + b = c of P_a * Q_b."""
    out: dict = {}
    for a, pa in p.items():
        for b, qb in q.items():
            c = (a[0] + b[0], a[1] + b[1])
            prod = pa * qb
            out[c] = out[c] + prod if c in out else prod
    return out


def depth_basis(base: BasisFunctionSet, d: int) -> BasisFunctionSet:
    if base.depth != 1:
        raise InvalidDepth("depth_basis expects a depth-1 basis")
    if d < 1:
        raise InvalidDepth(f"depth must be >= 1, got {d}")
    if d == 1:
        return base
    functions = base.base
    for _ in range(d - 1):
        functions = convolve_arrays(functions, base.base)
    assert set(functions) == dilate(base.sigma.points, d)
    return BasisFunctionSet(base.sigma, d, functions, base.normalization, base.base)


def first_derivative_terms(basis: BasisFunctionSet, var: str) -> dict:
    """d * sum_i dbeta_i * beta^{d-1}_{gamma - sigma_i} for every gamma."""
    d = basis.depth
    lower = basis.at_depth(d - 1)
    dbase = {s: f.derivative(var) for s, f in basis.base.items()}
    out = {}
    for g in basis.functions:
        acc = Poly2()
        for s, ds in dbase.items():
            other = lower.get((g[0] - s[0], g[1] - s[1]))
            if other is not None and ds:
                acc = acc + ds * other
        out[g] = acc * d
    return out


def xi_coefficients(basis: BasisFunctionSet, var: str) -> dict:
    """sum_i d2beta_i * beta^{d-1}_{gamma - sigma_i}."""
    lower = basis.at_depth(basis.depth - 1)
    d2 = {s: f.derivative(var, 2) for s, f in basis.base.items()}
    out = {}
    for g in basis.functions:
        acc = Poly2()
        for s, dd in d2.items():
            other = lower.get((g[0] - s[0], g[1] - s[1]))
            if other is not None and dd:
                acc = acc + dd * other
        out[g] = acc
    return out


def eta_coefficients(basis: BasisFunctionSet, var: str) -> dict:
    """sum_{i,k} dbeta_i * dbeta_k * beta^{d-2}_{gamma - sigma_i - sigma_k}.

    The double sum runs over all ordered pairs, including i == k; dropping
    the diagonal would break equality with the true second derivative.
    Zero for d < 2.
    """
    d = basis.depth
    if d < 2:
        return {g: Poly2() for g in basis.functions}
    lower = basis.at_depth(d - 2)
    d1 = {s: f.derivative(var) for s, f in basis.base.items()}
    # pair products depend only on sigma_i + sigma_k
    pair: dict = {}
    for s, ds in d1.items():
        for t, dt in d1.items():
            if ds and dt:
                key = (s[0] + t[0], s[1] + t[1])
                prod = ds * dt
                pair[key] = pair[key] + prod if key in pair else prod
    out = {}
    for g in basis.functions:
        acc = Poly2()
        for st, prod in pair.items():
            other = lower.get((g[0] - st[0], g[1] - st[1]))
            if other is not None:
                acc = acc + prod * other
        out[g] = acc
    return out


def second_derivative_terms(basis: BasisFunctionSet, var: str) -> dict:
    """d * xi + d(d-1) * eta, i.e. the second derivative of each beta^d_gamma."""
    d = basis.depth
    xi = xi_coefficients(basis, var)
    eta = eta_coefficients(basis, var)
    return {g: xi[g] * d + eta[g] * (d * (d - 1)) for g in basis.functions}
