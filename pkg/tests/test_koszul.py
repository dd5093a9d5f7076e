import itertools

import pytest

from mps import Ideal, QuotientRing, make_ring
from mps.ideals import Submodule
from mps.linkage import (
    KoszulComplexSpec,
    grade_in_quotient,
    homology_dims,
    koszul_differential,
    koszul_homology,
    koszul_identity_checks,
    nonvanishing_range,
)


def spec(vars, defining, elements):
    R = make_ring(vars)
    ctx = QuotientRing(R, Ideal.parse(R, defining))
    return KoszulComplexSpec(ctx, [R.parse(f) for f in elements])


def test_differential_shapes_and_square():
    s = spec("x,y,z", [], ["x", "y", "z"])
    assert [s.rank(i) for i in range(4)] == [1, 3, 3, 1]
    d1 = s.differential(1)
    assert (d1.nrows, d1.ncols) == (1, 3)
    assert s.squares_to_zero()
    d = koszul_differential(s.ctx.ring, s.elements, 2)
    assert (s.differential(1) * d).is_zero()


def test_regular_sequence_has_only_h0():
    s = spec("x,y", [], ["x", "y"])
    H = [koszul_homology(s, i) for i in range(3)]
    assert H[0].dimension == 1
    assert H[1].is_zero and H[2].is_zero


def test_h1_of_x_on_the_axes():
    s = spec("x,y", ["x*y"], ["x"])
    H1 = koszul_homology(s, 1)
    R = s.ctx.ring
    assert (H1.cycles + H1.boundaries).equals(Submodule.ideal_times_free(Ideal.parse(R, ["y", "x*y"]), 1))


def test_nonvanishing_range_plane():
    nz, g = nonvanishing_range(spec("x,y,z", ["z"], ["x", "y"]))
    assert (nz, g) == ([0], 2)


def test_nonvanishing_range_axes():
    nz, g = nonvanishing_range(spec("x,y", ["x*y"], ["x"]))
    assert (nz, g) == ([0, 1], 0)


@pytest.mark.parametrize(
    "vars,defining,elements,dims",
    [
        ("x", ["x^3"], ["x"], [1, 1]),
        ("x", ["x^3"], ["x^2"], [2, 2]),
        ("x", ["x^2"], ["x", "x"], [1, 2, 1]),
        ("x,y,z", ["x^2", "y^2", "z^2"], ["x", "y", "z"], [1, 3, 3, 1]),
    ],
)
def test_artinian_identities(vars, defining, elements, dims):
    k = koszul_identity_checks(spec(vars, defining, elements))
    assert k.dims == dims
    assert k.dims_by_presentation == dims
    assert k.euler_characteristic == 0
    assert k.top_is_annihilator and k.bottom_is_quotient


def test_top_homology_is_the_annihilator():
    s = spec("x", ["x^3"], ["x"])
    H1 = koszul_homology(s, 1)
    R = s.ctx.ring
    assert (H1.cycles + H1.boundaries).equals(Submodule.ideal_times_free(Ideal.parse(R, ["x^2"]), 1))
    s = spec("x", ["x^2"], ["x", "x"])
    H2 = koszul_homology(s, 2)
    assert (H2.cycles + H2.boundaries).equals(Submodule.ideal_times_free(Ideal.parse(R, ["x"]), 1))


def test_grade_in_quotient():
    s = spec("x,y,z", ["z"], ["x", "y"])
    assert grade_in_quotient(s.ctx, s.ctx.ideal(s.elements)) == 2


@pytest.mark.parametrize(
    "vars,defining,elements",
    [("x,y,z", ["x^2", "y^2", "z^2"], ["x", "y", "z"]), ("x,y", ["x^2", "y^3"], ["x", "y^2", "x*y"])],
)
def test_dims_do_not_depend_on_generator_order(vars, defining, elements):
    base = homology_dims(spec(vars, defining, elements))
    for perm in itertools.permutations(elements):
        assert homology_dims(spec(vars, defining, list(perm))) == base
