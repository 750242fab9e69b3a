"""Command line interface: ``toricqh {basis,constraints,solve,mesh,energy,compare} DOC``."""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .energy import (
    DIRICHLET,
    QUASI_HARMONIC,
    SingularSystem,
    compare_functionals,
    energy,
    gradient_residual,
    solve_inner,
)
from .document import PatchDocument, ValidationError, key_to_str
from .patch import DegenerateMetric, Mesh, ZeroWeight, area, tessellate

EXIT_OK, EXIT_VALIDATION, EXIT_SINGULAR, EXIT_IO = 0, 2, 3, 4


def basis_text(doc: PatchDocument) -> str:
    basis = doc.basis()
    lines = [f"# normalization: {basis.normalization.tag}", f"# depth: {basis.depth}"]
    for k in basis.keys():
        lines.append(f"{key_to_str(k)}: {basis.functions[k]}")
    return "\n".join(lines) + "\n"


def mesh_obj(mesh: Mesh) -> str:
    out = ["# toricqh mesh", f"# vertices {len(mesh.params)} faces {len(mesh.triangles)}"]
    for x, y, z in mesh.positions:
        out.append(f"v {float(x)!r} {float(y)!r} {float(z)!r}")
    for u, v in mesh.params:
        out.append(f"vt {float(u)!r} {float(v)!r}")
    for a, b, c in mesh.triangles:
        out.append(f"f {a + 1}/{a + 1} {b + 1}/{b + 1} {c + 1}/{c + 1}")
    return "\n".join(out) + "\n"


def _solved(doc: PatchDocument):
    patch = doc.patch()
    if doc.verify:
        return patch, None
    sol = solve_inner(patch, doc.functional, doc.weight_mode, exact=doc.exact_solve)
    return sol.patch, sol


def run_report(doc: PatchDocument, before, sol, seconds: float) -> dict:
    basis = doc.basis()
    return {
        "normalization": basis.normalization.tag,
        "depth": basis.depth,
        "functional": doc.functional,
        "weight_mode": doc.weight_mode,
        "exact_solve": doc.exact_solve,
        "initial_inner": "given" if doc.verify else "boundary-mean",
        "energy_before": energy(before, doc.functional, doc.weight_mode),
        "energy_after": energy(sol.patch, doc.functional, doc.weight_mode),
        "gradient_residual": sol.residual,
        "condition_estimate": sol.condition,
        "seconds": seconds,
    }


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {key_to_str(k) if isinstance(k, tuple) else k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def cmd_basis(doc, args):
    _emit(basis_text(doc), args.output)


def cmd_constraints(doc, args):
    sol = solve_inner(doc.patch(), doc.functional, doc.weight_mode, exact=doc.exact_solve)
    _emit(sol.table.to_csv(), args.output)


def cmd_solve(doc, args):
    start = time.perf_counter()
    before = doc.patch()
    sol = solve_inner(before, doc.functional, doc.weight_mode, exact=doc.exact_solve)
    solved = doc.with_solution(sol.patch)
    report = run_report(doc, before, sol, time.perf_counter() - start)
    if args.output:
        _emit(solved.dumps(), args.output)
        if args.report:
            _emit(json.dumps(report, indent=2) + "\n", args.report)
        else:
            sys.stderr.write(json.dumps(report) + "\n")
    else:
        _emit(json.dumps({"document": solved.to_dict(), "report": report}, indent=2) + "\n", None)


def cmd_mesh(doc, args):
    patch, _ = _solved(doc)
    n = args.subdivisions or doc.subdivisions
    _emit(mesh_obj(tessellate(patch, n)), args.output)


def cmd_energy(doc, args):
    patch, _ = _solved(doc)
    out = {
        "quasi_harmonic": energy(patch, QUASI_HARMONIC, doc.weight_mode),
        "dirichlet": energy(patch, DIRICHLET, doc.weight_mode),
        "area": area(patch, doc.quadrature_order),
        "gradient_residual": gradient_residual(patch, doc.functional, doc.weight_mode),
    }
    _emit(json.dumps(out, indent=2) + "\n", args.output)


def cmd_compare(doc, args):
    report = compare_functionals(doc.patch(), doc.weight_mode, doc.quadrature_order)
    for entry in report.values():
        entry.pop("solution")
    _emit(json.dumps(_jsonable(report), indent=2) + "\n", args.output)


COMMANDS = {
    "basis": (cmd_basis, "write every basis polynomial in canonical text form"),
    "constraints": (cmd_constraints, "write the constraint table as CSV"),
    "solve": (cmd_solve, "solve for inner points; write the solved document and a run report"),
    "mesh": (cmd_mesh, "tessellate the solved patch to Wavefront OBJ"),
    "energy": (cmd_energy, "print quasi-harmonic and Dirichlet energies and area"),
    "compare": (cmd_compare, "quasi-harmonic vs Dirichlet extremals side by side"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricqh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("document", help="patch document (UTF-8 JSON)")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        if name == "solve":
            p.add_argument("--report", help="write the run report here")
        if name == "mesh":
            p.add_argument("--subdivisions", type=int, help="override mesh.subdivisions")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = PatchDocument.load(args.document)
        if getattr(args, "subdivisions", None) is not None and args.subdivisions < 1:
            raise ValidationError("--subdivisions must be >= 1")
        COMMANDS[args.command][0](doc, args)
    except (ValidationError, ZeroWeight, DegenerateMetric) as exc:
        print(f"toricqh: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SingularSystem as exc:
        print(f"toricqh: singular system: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except OSError as exc:
        print(f"toricqh: io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
