from pathlib import Path

import numpy as np
import pytest

from toricqh import SelfExponent, ToricPatch, TrapezoidTensor, convex_hull, depth_basis, toric_basis
from toricqh.lattice import hexagon_points, trapezoid_points, unit_square_points

WORKED = Path(__file__).resolve().parent.parent / "worked"


@pytest.fixture(scope="session")
def worked_dir():
    return WORKED


@pytest.fixture(scope="session")
def trap1():
    return convex_hull(trapezoid_points(2, 1, 1))


@pytest.fixture(scope="session")
def trap2():
    return convex_hull(trapezoid_points(2, 3, 1))


@pytest.fixture(scope="session")
def hexagon():
    return convex_hull(hexagon_points())


@pytest.fixture(scope="session")
def square():
    return convex_hull(unit_square_points())


@pytest.fixture(scope="session")
def basis1(trap1):
    return toric_basis(trap1, SelfExponent())


@pytest.fixture(scope="session")
def basis2(trap2):
    return toric_basis(trap2, TrapezoidTensor(2, 3, 1))


@pytest.fixture(scope="session")
def hex2(hexagon):
    return depth_basis(toric_basis(hexagon), 2)


def random_patch(basis, seed=0, weights=1.0):
    rng = np.random.default_rng(seed)
    return ToricPatch.from_points(basis, {k: rng.normal(size=3) for k in basis.keys()}, weights)


# one pass/fail line per acceptance criterion in the terminal summary
_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
