"""JSON patch documents: parsing, validation and serialisation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .basis import (
    BasisFunctionSet,
    Explicit,
    NormalizationNotApplicable,
    SelfExponent,
    TrapezoidTensor,
    Unit,
    depth_basis,
    toric_basis,
)
from .energy import FIXED_WEIGHTS, FUNCTIONALS, QUASI_HARMONIC, WEIGHT_MODES
from .lattice import DegenerateHull, InvalidDepth, convex_hull
from .patch import MassPoint, ToricPatch


class ValidationError(ValueError):
    pass


def key_to_str(k) -> str:
    return f"{k[0]},{k[1]}"


def str_to_key(s: str):
    try:
        i, j = s.split(",")
        return (int(i), int(j))
    except ValueError:
        raise ValidationError(f"lattice key {s!r} is not of the form 'i,j'") from None


def _fraction(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ValidationError(f"rational {x!r} must be an integer or a 'p/q' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse rational {x!r}") from None


@dataclass
class PatchDocument:
    points: list
    depth: int = 1
    normalization: object = "self-exponent"
    weights: object = "equal"
    boundary: dict = field(default_factory=dict)
    inner: dict = field(default_factory=dict)
    verify: bool = False
    functional: str = QUASI_HARMONIC
    weight_mode: str = FIXED_WEIGHTS
    exact_solve: bool = False
    subdivisions: int = 8
    quadrature_order: int = 8

    # parsing
    @classmethod
    def from_dict(cls, raw: dict) -> PatchDocument:
        if not isinstance(raw, dict):
            raise ValidationError("document must be a JSON object")
        known = {"points", "depth", "normalization", "weights", "boundary", "inner", "verify",
                 "functional", "solver", "mesh", "quadrature_order"}
        unknown = set(raw) - known
        if unknown:
            raise ValidationError(f"unknown document fields: {sorted(unknown)}")
        if "points" not in raw:
            raise ValidationError("document needs 'points'")
        try:
            points = [(int(i), int(j)) for i, j in raw["points"]]
        except (TypeError, ValueError):
            raise ValidationError("'points' must be a list of [i, j] integer pairs") from None
        solver = raw.get("solver", {})
        mesh = raw.get("mesh", {})
        doc = cls(
            points=points,
            depth=raw.get("depth", 1),
            normalization=raw.get("normalization", "self-exponent"),
            weights=raw.get("weights", "equal"),
            boundary={str_to_key(k): list(v) for k, v in raw.get("boundary", {}).items()},
            inner={str_to_key(k): list(v) for k, v in raw.get("inner", {}).items()},
            verify=bool(raw.get("verify", False)),
            functional=raw.get("functional", QUASI_HARMONIC),
            weight_mode=solver.get("weight_mode", FIXED_WEIGHTS),
            exact_solve=bool(solver.get("exact", False)),
            subdivisions=mesh.get("subdivisions", 8),
            quadrature_order=raw.get("quadrature_order", 8),
        )
        doc.validate()
        return doc

    @classmethod
    def load(cls, path) -> PatchDocument:
        with open(path, encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"invalid JSON: {exc}") from None
        return cls.from_dict(raw)

    def to_dict(self) -> dict:
        out = {"points": [list(p) for p in self.points], "depth": self.depth}
        norm = self.normalization
        if isinstance(norm, dict):
            norm = {k: str(Fraction(v)) for k, v in sorted(norm.items(), key=lambda kv: str_to_key(kv[0]))}
        out["normalization"] = norm
        out["weights"] = self.weights if self.weights == "equal" else {
            key_to_str(k): v for k, v in sorted(self._weight_map().items())
        }
        out["boundary"] = {key_to_str(k): v for k, v in sorted(self.boundary.items())}
        if self.inner:
            out["inner"] = {key_to_str(k): v for k, v in sorted(self.inner.items())}
        if self.verify:
            out["verify"] = True
        out["functional"] = self.functional
        out["solver"] = {"weight_mode": self.weight_mode, "exact": self.exact_solve}
        out["mesh"] = {"subdivisions": self.subdivisions}
        out["quadrature_order"] = self.quadrature_order
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    # validation
    def _weight_map(self) -> dict:
        if self.weights == "equal":
            return {}
        if not isinstance(self.weights, dict):
            raise ValidationError("'weights' must be \"equal\" or a map of 'i,j' -> weight")
        return {(str_to_key(k) if isinstance(k, str) else k): float(w) for k, w in self.weights.items()}

    def normalization_strategy(self):
        norm = self.normalization
        if isinstance(norm, dict):
            return Explicit({str_to_key(k): _fraction(v) for k, v in norm.items()})
        if norm == "self-exponent":
            return SelfExponent()
        if norm == "unit":
            return Unit()
        if norm == "trapezoid-tensor":
            return TrapezoidTensor.detect(self.points)
        raise ValidationError(f"unknown normalization {norm!r}")

    def validate(self) -> None:
        if not isinstance(self.depth, int) or self.depth < 1:
            raise ValidationError(f"depth must be a positive integer, got {self.depth!r}")
        if self.functional not in FUNCTIONALS:
            raise ValidationError(f"functional must be one of {FUNCTIONALS}")
        if self.weight_mode not in WEIGHT_MODES:
            raise ValidationError(f"weight_mode must be one of {WEIGHT_MODES}")
        if not isinstance(self.subdivisions, int) or self.subdivisions < 1:
            raise ValidationError("mesh.subdivisions must be a positive integer")
        if not isinstance(self.quadrature_order, int) or self.quadrature_order < 1:
            raise ValidationError("quadrature_order must be a positive integer")
        basis = self.basis()
        from .lattice import classify

        boundary, inner = classify(basis.index_polygon)
        for name, table, allowed in (("boundary", self.boundary, boundary), ("inner", self.inner, inner)):
            stray = sorted(set(table) - allowed)
            if stray:
                raise ValidationError(f"{name} assigns points outside the {name} set: {stray}")
            for k, val in table.items():
                if len(val) not in (3, 4) or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in val):
                    raise ValidationError(f"{name} point {key_to_str(k)} must be [x, y, z] or [x, y, z, w]")
        missing = sorted(boundary - set(self.boundary))
        if missing:
            raise ValidationError(f"boundary points without mass-points: {missing}")
        if self.inner and not self.verify:
            raise ValidationError("inner points are unknowns; set \"verify\": true to supply them")
        if self.verify and set(self.inner) != inner:
            raise ValidationError("verify mode needs every inner point assigned")
        for k, w in self._weight_map().items():
            if w < 0:
                raise ValidationError(f"weight at {key_to_str(k)} is negative")

    # model construction
    def basis(self) -> BasisFunctionSet:
        cache = self.__dict__.get("_basis")
        if cache is None:
            try:
                polygon = convex_hull(self.points)
                cache = depth_basis(toric_basis(polygon, self.normalization_strategy()), self.depth)
            except (DegenerateHull, InvalidDepth, NormalizationNotApplicable) as exc:
                raise ValidationError(str(exc)) from None
            self.__dict__["_basis"] = cache
        return cache

    def weight(self, k) -> float:
        val = self.boundary.get(k) or self.inner.get(k)
        if val is not None and len(val) == 4:
            return float(val[3])
        return self._weight_map().get(k, 1.0)

    def patch(self, initial_inner=None) -> ToricPatch:
        """Build the patch; inner points default to the mean boundary point."""
        basis = self.basis()
        control = {}
        for k, val in self.boundary.items():
            control[k] = MassPoint.from_point(val[:3], self.weight(k))
        inner_keys = set(basis.functions) - set(self.boundary)
        if self.inner:
            for k, val in self.inner.items():
                control[k] = MassPoint.from_point(val[:3], self.weight(k))
        else:
            start = initial_inner
            if start is None:
                pts = [v[:3] for v in self.boundary.values()]
                start = [sum(c) / len(pts) for c in zip(*pts)]
            for k in inner_keys:
                control[k] = MassPoint.from_point(start, self.weight(k))
        return ToricPatch(basis, control)

    def with_solution(self, patch: ToricPatch) -> PatchDocument:
        """Copy of this document with the patch's inner points filled in."""
        if not patch.inner_keys:
            return PatchDocument(**{k: v for k, v in self.__dict__.items() if not k.startswith("_")})
        inner = {}
        for k in sorted(patch.inner_keys):
            m = patch.control[k]
            pt = [float(x) for x in m.point]
            inner[k] = pt + [float(m.w)] if self.weight_mode != FIXED_WEIGHTS else pt
        fields = {k: v for k, v in self.__dict__.items() if not k.startswith("_")}
        fields.update(inner=inner, verify=True)
        return PatchDocument(**fields)


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
