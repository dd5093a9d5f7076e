import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mps import Ideal, ModulePresentation, PolyMatrix, PrimeField, make_ring
from mps.determinantal import (
    MinorCache,
    buchsbaum_rim_checks,
    buchsbaum_rim_delta,
    build_delta,
    fitting_chain_holds,
    fitting_ideal,
    minor,
    minors_ideal,
    random_check_matrix,
    row_relation_check,
    square_presentation,
    sylvester_check,
    sylvester_trials,
)
from mps.errors import BadRange, BadSize, IndexOutOfRange, NonSquareSelection, NoRegularSquareMinor

F101 = PrimeField(101)


def M(ring, rows):
    return PolyMatrix.parse(ring, rows)


def diag(ring):
    return PolyMatrix.diagonal(ring, ring.gens())


def cusp_psi(ring):
    return M(ring, [["y", "-x"], ["-x^2", "y"]])


def test_minor_examples(qq_xy, qq_xyz):
    X = M(qq_xy, [["x", "y"], ["y", "x^2"]])
    assert minor(X, [0, 1], [0, 1]) == qq_xy.parse("x^3 - y^2")
    assert minor(diag(qq_xyz), [0, 1], [0, 1]) == qq_xyz.parse("x*y")
    assert minor(X, [1], [0]) == qq_xy.var("y")


def test_minor_index_errors(qq_xy):
    X = cusp_psi(qq_xy)
    with pytest.raises(IndexOutOfRange):
        minor(X, [0, 2], [0, 1])
    with pytest.raises(NonSquareSelection):
        minor(X, [0, 1], [0])


def test_minors_ideal_examples(qq_xy, qq_xyz):
    D = diag(qq_xyz)
    assert minors_ideal(D, 2).equals(Ideal.parse(qq_xyz, ["x*y", "y*z", "z*x"]))
    assert minors_ideal(D, 3).equals(Ideal.parse(qq_xyz, ["x*y*z"]))
    P = M(qq_xy, [["y", "-x", "0"], ["0", "y", "-x"], ["-x^2", "0", "y"]])
    # sympy: the nine 2x2 minors reduce to x^2, xy, y^2
    assert sorted(minors_ideal(P, 2).basis_strings()) == ["x*y", "x^2", "y^2"]
    with pytest.raises(BadSize):
        minors_ideal(D, 4)


def test_fitting_examples(qq_xy, qq_xyz):
    psi = cusp_psi(qq_xy)
    assert fitting_ideal(psi, 0).equals(Ideal.parse(qq_xy, ["y^2 - x^3"]))
    assert fitting_ideal(psi, 1).equals(Ideal.parse(qq_xy, ["x", "y"]))
    assert fitting_ideal(psi, 2).is_unit()
    D = diag(qq_xyz)
    assert fitting_ideal(D, 0).equals(Ideal.parse(qq_xyz, ["x*y*z"]))
    assert fitting_ideal(D, 1).equals(Ideal.parse(qq_xyz, ["x*y", "y*z", "z*x"]))
    assert fitting_ideal(D, 2).equals(Ideal.parse(qq_xyz, ["x", "y", "z"]))
    assert fitting_ideal(D, 3).is_unit()
    with pytest.raises(BadRange):
        fitting_ideal(D, -1)


def test_fitting_of_presentation_with_more_relations(qq_xy):
    P = ModulePresentation(qq_xy, ["a", "b"], M(qq_xy, [["x", "y", "0"], ["0", "x", "y"]]))
    assert fitting_ideal(P, 0).equals(Ideal.parse(qq_xy, ["x", "y"]) ** 2)
    assert fitting_chain_holds(P)


def test_sylvester_examples(qq_xyz):
    D = diag(qq_xyz)
    assert sylvester_check(D, 2, (0, 1), (0, 1), (0, 2), (1, 2))
    assert sylvester_check(D, 2, (0, 1), (1, 2), (0, 1), (1, 2))


def test_row_relation_examples(qq_xy, qq_xyz):
    assert row_relation_check(cusp_psi(qq_xy), 1, (0,), (1,), 1)
    assert row_relation_check(diag(qq_xyz), 2, (1, 2), (1, 2), 0)
    with pytest.raises(IndexOutOfRange):
        row_relation_check(diag(qq_xyz), 2, (1, 2), (1, 2), 1)


def test_sylvester_random_suite_small():
    R = make_ring("t,s", F101)
    syl, total, row, row_total = sylvester_trials(R, 4, 6, 2, 30, seed=3, prime=101, row_relations=15)
    assert (syl, total, row, row_total) == (30, 30, 15, 15)


def test_sylvester_membership_is_not_vacuous():
    # a single product of minors is generally not in I_{p+1}; the relation is
    rng = random.Random(11)
    R = make_ring("t,s", F101)
    hits = 0
    for _ in range(5):
        X = random_check_matrix(R, 4, 6, 2, rng, 101)
        cache = MinorCache(X)
        I3 = minors_ideal(X, 3, cache)
        prod = cache.det((0, 1), (0, 1)) * cache.det((2, 3), (2, 3))
        hits += not I3.contains(prod)
        assert sylvester_check(X, 2, (0, 1), (2, 3), (0, 1), (2, 3), modulus=I3, cache=cache)
    assert hits > 0


def test_build_delta_examples(qq_xyz):
    D = diag(qq_xyz)
    assert build_delta(D, 2, (1, 2), {(1, 2): 1}) == qq_xyz.parse("y*z")
    assert build_delta(D, 2, (1, 2), {(0, 1): 0, (1, 2): 0}).is_zero()
    X = M(qq_xyz, [["x", "0", "0"], ["x", "y", "0"], ["x", "y", "z"]])
    d = build_delta(X, 2, (1, 2), {(0, 1): 2, (1, 2): 3, (0, 2): 1})
    assert d == 2 * minor(X, [1, 2], [0, 1]) + 3 * minor(X, [1, 2], [1, 2]) + minor(X, [1, 2], [0, 2])


def cusp_presentation(ring, extra=False):
    psi = cusp_psi(ring)
    if extra:
        x, y = ring.gens()
        c1, c2 = psi.columns()
        psi = PolyMatrix.from_columns(ring, [c1, c2, [x * a + y * b for a, b in zip(c1, c2)]], 2)
    return ModulePresentation(ring, ["1", "t"], psi)


def test_square_presentation_examples(qq_xy):
    P = cusp_presentation(qq_xy)
    assert square_presentation(P) is P
    Q = square_presentation(cusp_presentation(qq_xy, extra=True))
    assert Q.relations.to_strings() == P.relations.to_strings()
    bad = ModulePresentation(qq_xy, ["a", "b"], M(qq_xy, [["x"], ["y"]]))
    with pytest.raises(NoRegularSquareMinor):
        square_presentation(bad)


def test_buchsbaum_rim_examples(qq_xy, qq_xyz):
    assert buchsbaum_rim_checks(cusp_psi(qq_xy), 2) == (True, True)
    assert buchsbaum_rim_checks(diag(qq_xyz), 3) == (True, True)
    assert buchsbaum_rim_checks(diag(qq_xyz), 2) == (True, True)
    delta = buchsbaum_rim_delta(cusp_psi(qq_xy), 2)
    assert (delta.nrows, delta.ncols) == (2, 2)
    with pytest.raises(BadRange):
        buchsbaum_rim_delta(cusp_psi(qq_xy), 3)


# properties

R = make_ring("x,y,z", F101)
BASE = [
    PolyMatrix.parse(R, [["x", "y", "z"], ["y", "z", "x^2"]]),
    PolyMatrix.parse(R, [["x", "0", "y"], ["0", "y", "z"], ["z", "x", "0"]]),
]


def _det_mod(rows, p=101):
    import sympy

    return int(sympy.Matrix(rows).det()) % p


def invertible(rng, n):
    while True:
        rows = [[rng.randrange(101) for _ in range(n)] for _ in range(n)]
        if _det_mod(rows):
            return PolyMatrix(R, [[R.const(F101.from_int(c)) for c in row] for row in rows])


@given(st.integers(0, 1), st.integers(0, 2 ** 32))
def test_minors_invariant_under_row_and_column_operations(which, seed):
    X = BASE[which]
    rng = random.Random(seed)
    U = invertible(rng, X.nrows)
    V = invertible(rng, X.ncols)
    Y = U * X * V
    for q in range(1, min(X.nrows, X.ncols) + 1):
        assert minors_ideal(Y, q).equals(minors_ideal(X, q))


@given(st.integers(0, 1))
def test_fitting_chain(which):
    assert fitting_chain_holds(BASE[which])


@given(st.integers(0, 1), st.integers(0, 100), st.integers(0, 2))
def test_fitting_commutes_with_specialization(which, c, i):
    X = BASE[which]
    point = {"z": R.const(F101.from_int(c))}
    special = X.map_entries(lambda e: e.substitute(point, R))
    lhs = fitting_ideal(special, i)
    rhs = Ideal(R, [g.substitute(point, R) for g in fitting_ideal(X, i).gens])
    assert lhs.equals(rhs)
