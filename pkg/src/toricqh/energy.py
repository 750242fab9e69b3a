"""Quasi-harmonic and Dirichlet energies as Gram quadratic forms; inner-point solves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .basis import BasisFunctionSet
from .patch import (
    DegenerateMetric,
    MassPoint,
    ToricPatch,
    ZeroWeight,
    area,
    sample,
)
from .poly import polygon_moments

QUASI_HARMONIC = "quasi-harmonic"
DIRICHLET = "dirichlet"
FUNCTIONALS = (QUASI_HARMONIC, DIRICHLET)

FIXED_WEIGHTS = "fixed_weights_points_only"
FULL_MASS_POINTS = "full_mass_points"
WEIGHT_MODES = (FIXED_WEIGHTS, FULL_MASS_POINTS)

CONDITION_LIMIT = 1e14


class SingularSystem(np.linalg.LinAlgError):
    pass


def _check_functional(functional):
    if functional not in FUNCTIONALS:
        raise ValueError(f"unknown functional {functional!r}; expected one of {FUNCTIONALS}")


@dataclass(frozen=True, eq=False)
class GramMatrix:
    keys: tuple
    entries: tuple  # tuple of tuples of Fraction
    functional: str

    def __getitem__(self, pair):
        a, b = pair
        idx = self.index
        return self.entries[idx[a]][idx[b]]

    @property
    def index(self) -> dict:
        return {k: n for n, k in enumerate(self.keys)}

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def is_symmetric(self) -> bool:
        n = len(self.keys)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def min_eigenvalue_ratio(self) -> float:
        ev = np.linalg.eigvalsh(self.to_numpy())
        top = max(abs(ev).max(), 1e-300)
        return float(ev.min() / top)


def _operator_terms(basis: BasisFunctionSet, functional: str) -> dict:
    if functional == QUASI_HARMONIC:
        return {k: (f.laplacian(),) for k, f in basis.functions.items()}
    return {k: (f.derivative("u"), f.derivative("v")) for k, f in basis.functions.items()}


@lru_cache(maxsize=32)
def gram(basis: BasisFunctionSet, functional: str = QUASI_HARMONIC) -> GramMatrix:
    """Exact Gram matrix of the basis under the chosen differential operator.

    quasi-harmonic: integral of lap(b_l) * lap(b_g);
    dirichlet: integral of grad(b_l) . grad(b_g).
    """
    _check_functional(functional)
    keys = tuple(basis.keys())
    moments = polygon_moments(basis.domain)
    ops = _operator_terms(basis, functional)
    # integer-scaled terms keep the double loop in machine-friendly ints
    prim = {k: [p.primitive() for p in ops[k]] for k in keys}
    n = len(keys)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            total = Fraction(0)
            for (sa, ta), (sb, tb) in zip(prim[keys[i]], prim[keys[j]]):
                if not ta or not tb:
                    continue
                acc: dict = {}
                for (a1, b1), c1 in ta.items():
                    for (a2, b2), c2 in tb.items():
                        key = (a1 + a2, b1 + b2)
                        acc[key] = acc.get(key, 0) + c1 * c2
                total += sa * sb * sum((c * moments[key] for key, c in acc.items() if c), Fraction(0))
            rows[i][j] = rows[j][i] = total
    return GramMatrix(keys, tuple(tuple(r) for r in rows), functional)


@dataclass
class ConstraintTable:
    """Each inner point as a linear combination of boundary points."""

    rows: dict  # inner key -> {boundary key: coefficient}
    boundary: tuple
    functional: str
    weight_mode: str

    def row_sum(self, key) -> float:
        return float(sum(self.rows[key].values()))

    def to_csv(self) -> str:
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["inner"] + [f"{i},{j}" for i, j in self.boundary])
        for key in sorted(self.rows):
            row = self.rows[key]
            writer.writerow([f"{key[0]},{key[1]}"] + [format(row[b], ".10g") for b in self.boundary])
        return buf.getvalue()


@dataclass
class InnerSolution:
    patch: ToricPatch
    table: ConstraintTable
    residual: float
    condition: float


def _split(g: GramMatrix, patch: ToricPatch):
    idx = g.index
    inner = sorted(patch.inner_keys)
    boundary = sorted(patch.boundary_keys)
    return inner, boundary, [idx[k] for k in inner], [idx[k] for k in boundary]


def _solve_exact(a: list, b: list) -> list:
    """Gauss-Jordan over Fractions with full pivoting; returns a^-1 b."""
    n = len(a)
    m = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    cols = list(range(n))
    for c in range(n):
        piv = max(((r, k) for r in range(c, n) for k in range(c, n)), key=lambda rk: abs(aug[rk[0]][cols[rk[1]]]))
        r, k = piv
        if aug[r][cols[k]] == 0:
            raise SingularSystem("inner Gram block is singular")
        aug[c], aug[r] = aug[r], aug[c]
        cols[c], cols[k] = cols[k], cols[c]
        pv = aug[c][cols[c]]
        aug[c] = [x / pv for x in aug[c]]
        for rr in range(n):
            if rr != c and aug[rr][cols[c]]:
                f = aug[rr][cols[c]]
                aug[rr] = [x - f * y for x, y in zip(aug[rr], aug[c])]
    sol = [[Fraction(0)] * m for _ in range(n)]
    for c in range(n):
        sol[cols[c]] = aug[c][n:]
    return sol


def constraint_matrix(g: GramMatrix, inner_idx, boundary_idx, exact: bool = False):
    """R = -G_II^-1 G_IB and the condition estimate of G_II."""
    if exact:
        gii = [[g.entries[i][j] for j in inner_idx] for i in inner_idx]
        gib = [[-g.entries[i][j] for j in boundary_idx] for i in inner_idx]
        sol = _solve_exact(gii, gib)
        r = np.array([[float(x) for x in row] for row in sol])
        cond = float(np.linalg.cond(np.array([[float(x) for x in row] for row in gii])))
        return r, cond
    full = g.to_numpy()
    gii = full[np.ix_(inner_idx, inner_idx)]
    gib = full[np.ix_(inner_idx, boundary_idx)]
    cond = float(np.linalg.cond(gii))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularSystem(f"inner Gram block is numerically singular (cond={cond:.3g})")
    return np.linalg.solve(gii, -gib), cond


def solve_inner(
    patch: ToricPatch,
    functional: str = QUASI_HARMONIC,
    weight_mode: str = FIXED_WEIGHTS,
    exact: bool = False,
) -> InnerSolution:
    """Minimise the energy over inner mass-points with the boundary held fixed.

    In fixed-weights mode only the weighted positions of inner points are
    unknown and their weights are kept; in full mode the weights are solved
    for as well.
    """
    _check_functional(functional)
    if weight_mode not in WEIGHT_MODES:
        raise ValueError(f"unknown weight mode {weight_mode!r}")
    boundary_keys = tuple(sorted(patch.boundary_keys))
    if not patch.inner_keys:
        return InnerSolution(patch, ConstraintTable({}, boundary_keys, functional, weight_mode), 0.0, 1.0)
    g = gram(patch.basis, functional)
    inner, boundary, ii, bi = _split(g, patch)
    r, cond = constraint_matrix(g, ii, bi, exact=exact)

    mb = np.array([patch.control[k].as_tuple() for k in boundary])
    mi = r @ mb
    updates = {}
    for n, k in enumerate(inner):
        if weight_mode == FIXED_WEIGHTS:
            updates[k] = MassPoint(*mi[n, :3], patch.control[k].w)
        else:
            if mi[n, 3] < 0:
                raise ZeroWeight(f"solved weight at {k} is negative ({mi[n, 3]:.6g})")
            updates[k] = MassPoint(*mi[n])
    solved = patch.with_control(updates)

    # coefficients on affine points: w_l p_l = sum_g R_lg w_g p_g
    rows = {}
    for n, k in enumerate(inner):
        wl = solved.control[k].w
        if abs(wl) < 1e-300:
            raise ZeroWeight(f"inner weight at {k} is zero; affine table undefined")
        rows[k] = {b: float(r[n, m] * patch.control[b].w / wl) for m, b in enumerate(boundary)}
    table = ConstraintTable(rows, tuple(boundary), functional, weight_mode)
    return InnerSolution(solved, table, gradient_residual(solved, functional, weight_mode), cond)


def _coords(weight_mode):
    return slice(0, 3) if weight_mode == FIXED_WEIGHTS else slice(0, 4)


def energy(patch: ToricPatch, functional: str = QUASI_HARMONIC, weight_mode: str = FIXED_WEIGHTS) -> float:
    """Quadratic-form energy of the mass-point polynomial surface.

    Fixed-weights mode sums the three weighted spatial coordinates only.
    The Dirichlet value carries its conventional factor 1/2.
    """
    g = gram(patch.basis, functional).to_numpy()
    m = patch.mass_matrix()[:, _coords(weight_mode)]
    val = float(np.einsum("ic,ij,jc->", m, g, m))
    return 0.5 * val if functional == DIRICHLET else val


def gradient_residual(patch: ToricPatch, functional: str = QUASI_HARMONIC, weight_mode: str = FIXED_WEIGHTS) -> float:
    """Max-norm of 2 G M over free rows, relative to 2 |G|_max |M|_max."""
    if not patch.inner_keys:
        return 0.0
    g = gram(patch.basis, functional)
    gm = g.to_numpy()
    m = patch.mass_matrix()[:, _coords(weight_mode)]
    idx = g.index
    rows = [idx[k] for k in sorted(patch.inner_keys)]
    grad = 2 * gm[rows] @ m
    scale = 2 * np.abs(gm).max() * max(np.abs(m).max(), 1.0)
    return float(np.abs(grad).max() / scale)


def curvature_samples(patch: ToricPatch, points=None) -> dict:
    """Mean curvature at the parameter site gamma/d of each lattice index.

    None where the metric degenerates (typically at hull corners).
    """
    d = patch.basis.depth
    out = {}
    for k in points if points is not None else patch.keys():
        try:
            out[k] = sample(patch, Fraction(k[0], d), Fraction(k[1], d)).mean_curvature
        except (DegenerateMetric, ZeroWeight):
            out[k] = None
    return out


def compare_functionals(
    patch: ToricPatch, weight_mode: str = FIXED_WEIGHTS, quadrature_order: int = 8
) -> dict:
    """Solve the same boundary under both functionals and collect diagnostics."""
    report = {}
    for functional in FUNCTIONALS:
        sol = solve_inner(patch, functional, weight_mode)
        report[functional] = {
            "residual": sol.residual,
            "condition": sol.condition,
            "energy_quasi_harmonic": energy(sol.patch, QUASI_HARMONIC, weight_mode),
            "energy_dirichlet": energy(sol.patch, DIRICHLET, weight_mode),
            "area": area(sol.patch, quadrature_order),
            "inner": {k: sol.patch.control[k].point for k in sorted(sol.patch.inner_keys)},
            "mean_curvature": curvature_samples(sol.patch),
            "solution": sol,
        }
    return report
