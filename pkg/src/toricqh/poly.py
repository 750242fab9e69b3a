"""Sparse bivariate polynomials in (u, v) with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational

import numpy as np

Exponent = tuple[int, int]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    # floats convert exactly (binary expansion), never via decimal strings
    return Fraction(float(x))


class Poly2:
    """Immutable polynomial stored as {(a, b): coefficient} for u^a v^b."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (a, b), c in terms.items():
                c = _frac(c)
                if c:
                    if a < 0 or b < 0:
                        raise ValueError(f"negative exponent {(a, b)}")
                    clean[(int(a), int(b))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly2 is immutable")

    # construction
    @classmethod
    def const(cls, c) -> Poly2:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> Poly2:
        return cls({(a, b): c})

    @classmethod
    def linear(cls, alpha, beta, gamma) -> Poly2:
        return cls({(1, 0): alpha, (0, 1): beta, (0, 0): gamma})

    @classmethod
    def coerce(cls, x) -> Poly2:
        return x if isinstance(x, Poly2) else cls.const(x)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: bool(self.terms)

    def degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def coefficient(self, a: int, b: int) -> Fraction:
        return self.terms.get((a, b), Fraction(0))

    def __len__(self):
        return len(self.terms)

    # ring operations
    def __add__(self, other):
        other = Poly2.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly2.coerce(other))

    def __rsub__(self, other):
        return Poly2.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            c = _frac(other)
            return Poly2({k: c * v for k, v in self.terms.items()})
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return Poly2(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / _frac(other))

    def __pow__(self, e: int):
        if e < 0 or int(e) != e:
            raise ValueError("exponent must be a non-negative integer")
        result, base = Poly2.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self.terms == other.terms
        try:
            return self.terms == Poly2.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    # calculus
    def derivative(self, var: str, order: int = 1) -> Poly2:
        if order < 1:
            raise ValueError("derivative order must be >= 1")
        if var not in ("u", "v"):
            raise ValueError(f"unknown variable {var!r}")
        idx = 0 if var == "u" else 1
        out = {}
        for k, c in self.terms.items():
            e = k[idx]
            if e < order:
                continue
            falling = factorial(e) // factorial(e - order)
            nk = (e - order, k[1]) if idx == 0 else (k[0], e - order)
            out[nk] = c * falling
        return Poly2(out)

    def laplacian(self) -> Poly2:
        return self.derivative("u", 2) + self.derivative("v", 2)

    def compose(self, u_sub: Poly2, v_sub: Poly2) -> Poly2:
        """Substitute u -> u_sub, v -> v_sub."""
        if not self.terms:
            return Poly2()
        max_a = max(a for a, _ in self.terms)
        max_b = max(b for _, b in self.terms)
        upow = [Poly2.const(1)]
        for _ in range(max_a):
            upow.append(upow[-1] * u_sub)
        vpow = [Poly2.const(1)]
        for _ in range(max_b):
            vpow.append(vpow[-1] * v_sub)
        out = Poly2()
        for (a, b), c in self.terms.items():
            out = out + (upow[a] * vpow[b]) * c
        return out

    # evaluation
    def __call__(self, u, v):
        return self.eval(u, v)

    def eval(self, u, v):
        """Exact for rational inputs, double precision otherwise."""
        if isinstance(u, Rational) and isinstance(v, Rational):
            u, v = Fraction(u), Fraction(v)
            return sum((c * u**a * v**b for (a, b), c in self.terms.items()), Fraction(0))
        u, v = float(u), float(v)
        return float(sum(float(c) * u**a * v**b for (a, b), c in self.terms.items()))

    def to_arrays(self):
        """(a, b, c) numpy arrays for vectorised float evaluation."""
        if not self.terms:
            return np.zeros(0, int), np.zeros(0, int), np.zeros(0)
        ks = sorted(self.terms)
        a = np.array([k[0] for k in ks])
        b = np.array([k[1] for k in ks])
        c = np.array([float(self.terms[k]) for k in ks])
        return a, b, c

    def primitive(self) -> tuple[Fraction, dict]:
        """Return (scale, integer_terms) with self == scale * integer_terms."""
        if not self.terms:
            return Fraction(0), {}
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // _gcd(den, c.denominator)
        return Fraction(1, den), {k: int(c * den) for k, c in self.terms.items()}

    # text
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (a, b) in sorted(self.terms):
            c = self.terms[(a, b)]
            mono = "*".join(
                f"{name}^{e}" if e > 1 else name for name, e in (("u", a), ("v", b)) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"Poly2({str(self)!r})"

    _TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*((?:[uv](?:\^\d+)?\*?)*)\s*")

    @classmethod
    def parse(cls, text: str) -> Poly2:
        """Inverse of ``str``; accepts e.g. ``"4 - 4*v + v^2"``."""
        text = text.strip()
        if text == "0":
            return cls()
        terms: dict = {}
        pos = 0
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            sign, coef, mono = m.groups()
            if coef is None and not mono:
                raise ValueError(f"empty term in {text!r}")
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            a = b = 0
            for var, e in re.findall(r"([uv])(?:\^(\d+))?", mono or ""):
                if var == "u":
                    a += int(e or 1)
                else:
                    b += int(e or 1)
            terms[(a, b)] = terms.get((a, b), 0) + c
            pos = m.end()
        return cls(terms)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


U = Poly2.monomial(1, 0)
V = Poly2.monomial(0, 1)
ONE = Poly2.const(1)
ZERO = Poly2()


def poly_arith(p: Poly2, q: Poly2, op: str) -> Poly2:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_pow(p: Poly2, e: int) -> Poly2:
    return p**e


def poly_derivative(p: Poly2, var: str, order: int = 1) -> Poly2:
    return p.derivative(var, order)


def poly_eval(p: Poly2, u, v):
    return p.eval(u, v)


def reference_triangle_moment(a: int, b: int) -> Fraction:
    """Integral of s^a t^b over the triangle (0,0), (1,0), (0,1)."""
    return Fraction(factorial(a) * factorial(b), factorial(a + b + 2))


class PolygonMoments:
    """Exact monomial integrals over a lattice polygon, filled lazily.

    Each hull fan triangle is pulled back to the reference triangle by an
    affine map; ``u^a v^b`` then becomes a polynomial in (s, t) that is
    integrated term by term.
    """

    def __init__(self, polygon, start: int = 0):
        self.polygon = polygon
        self._triangles = []
        for p0, p1, p2 in polygon.fan(start):
            jac = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1])
            us = Poly2({(0, 0): p0[0], (1, 0): p1[0] - p0[0], (0, 1): p2[0] - p0[0]})
            vs = Poly2({(0, 0): p0[1], (1, 0): p1[1] - p0[1], (0, 1): p2[1] - p0[1]})
            self._triangles.append((abs(jac), [Poly2.const(1)], [Poly2.const(1)], us, vs))
        self._cache: dict[Exponent, Fraction] = {}

    @staticmethod
    def _power(cache, base, e):
        while len(cache) <= e:
            cache.append(cache[-1] * base)
        return cache[e]

    def __getitem__(self, key: Exponent) -> Fraction:
        val = self._cache.get(key)
        if val is None:
            a, b = key
            val = Fraction(0)
            for jac, upow, vpow, us, vs in self._triangles:
                integrand = self._power(upow, us, a) * self._power(vpow, vs, b)
                val += jac * sum(
                    (c * reference_triangle_moment(s, t) for (s, t), c in integrand.terms.items()),
                    Fraction(0),
                )
            self._cache[key] = val
        return val

    def integrate(self, p: Poly2) -> Fraction:
        return sum((c * self[k] for k, c in p.terms.items()), Fraction(0))


@lru_cache(maxsize=64)
def polygon_moments(polygon, start: int = 0) -> PolygonMoments:
    return PolygonMoments(polygon, start)


def integrate_over_polygon(p: Poly2, domain, start: int = 0) -> Fraction:
    """Exact integral of ``p`` over the hull of ``domain``."""
    return polygon_moments(domain, start).integrate(p)
