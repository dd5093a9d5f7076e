import os

import pytest
from hypothesis import HealthCheck, settings

from mps import PrimeField, Rationals, make_ring

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=300)
settings.load_profile(os.environ.get("MPS_HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def qq_xy():
    return make_ring("x,y")


@pytest.fixture
def qq_xyz():
    return make_ring("x,y,z")


@pytest.fixture
def f101_xyz():
    return make_ring("x,y,z", PrimeField(101))


@pytest.fixture
def rationals():
    return Rationals()


# finite maps and algebras used across several test modules

from mps import Ideal, PolyMatrix  # noqa: E402
from mps.multipoint import FiniteMapSpec, algebra_from_data, algebra_from_map  # noqa: E402


def map_spec(target, source, images, source_ideal=(), components=()):
    R = make_ring(target)
    S = make_ring(source)
    return FiniteMapSpec(
        R, S, Ideal.parse(S, list(source_ideal)), {k: S.parse(v) for k, v in images.items()}, list(components)
    )


def cusp_algebra():
    return algebra_from_map(map_spec("x,y", "t", {"x": "t^2", "y": "t^3"}), "cusp")


def t34_algebra():
    return algebra_from_map(map_spec("x,y", "t", {"x": "t^3", "y": "t^4"}), "t34")


def t345_algebra():
    return algebra_from_map(map_spec("x,y,z", "t", {"x": "t^3", "y": "t^4", "z": "t^5"}), "t345")


def planes_algebra():
    R = make_ring("x,y,z")
    one, zero = "1", "0"
    mult = [[[one if (i == j == k) else zero for k in range(3)] for j in range(3)] for i in range(3)]
    return algebra_from_data(
        R,
        ["e1", "e2", "e3"],
        PolyMatrix.diagonal(R, R.gens()),
        [[[R.parse(c) for c in v] for v in row] for row in mult],
        [R.one()] * 3,
        "triple_planes",
    )


@pytest.fixture(scope="module")
def cusp():
    return cusp_algebra()


@pytest.fixture(scope="module")
def t34():
    return t34_algebra()


@pytest.fixture(scope="module")
def t345():
    return t345_algebra()


@pytest.fixture(scope="module")
def planes():
    return planes_algebra()


# one line per acceptance criterion, repeated in the terminal summary

ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
