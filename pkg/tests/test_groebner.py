import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mps import Ideal, PrimeField, make_ring
from mps.errors import RingMismatch
from mps.groebner import buchberger, groebner, normal_form, syzygies, syzygies_by_elimination
from mps.ideals import Submodule
from mps.polyring import MonomialOrder, Vector


def strs(polys):
    return sorted(str(p) for p in polys)


def test_normal_form_examples(qq_xy):
    x, y = qq_xy.gens()
    assert normal_form(x * x, [x]).is_zero()
    assert normal_form(x * x + y, [x]) == y
    cusp = qq_xy.parse("y^2 - x^3")
    assert normal_form(cusp, buchberger([cusp])).is_zero()


def test_normal_form_cofactors_reconstruct(qq_xy):
    f = qq_xy.parse("x^3*y + 2*x*y^2 - y + 5")
    G = [qq_xy.parse("x*y - 1"), qq_xy.parse("y^2 - x")]
    rem, qs = normal_form(f, G, cofactors=True)
    assert sum((q * g for q, g in zip(qs, G)), rem) == f


def test_normal_form_rejects_foreign_ring(qq_xy):
    other = make_ring("x,y", PrimeField(7))
    with pytest.raises(RingMismatch):
        normal_form(qq_xy.var("x"), [other.var("x")])


def test_already_reduced_basis(qq_xy):
    assert strs(buchberger(qq_xy.gens())) == ["x", "y"]


def test_lex_basis_example():
    R = make_ring("x,y", order="lex")
    G = buchberger([R.parse("x*y - 1"), R.parse("y^2 - 1")])
    # sympy.groebner([x*y-1, y**2-1], x, y, order="lex") -> [x - y, y**2 - 1]
    assert strs(G) == ["x - y", "y^2 - 1"]


def test_reduce_generator_by_x(qq_xy):
    G = buchberger([qq_xy.parse("y^2 - x^3"), qq_xy.var("x")])
    assert strs(G) == ["x", "y^2"]


def test_basis_is_monic_and_interreduced(qq_xyz):
    gens = [qq_xyz.parse(s) for s in ["2*x^2*y - z", "3*x*y^2 - x", "y*z - 4"]]
    gb = groebner(gens)
    G = gb.generators
    for i, g in enumerate(G):
        assert qq_xyz.field.is_one(g.lc())
        others = G[:i] + G[i + 1:]
        if others:
            assert normal_form(g, others) == g


def test_koszul_syzygy(qq_xy):
    x, y = qq_xy.gens()
    S = syzygies([x, y])
    assert len(S.vectors) == 1
    v = S.vectors[0].to_polys()
    assert v == [y, -x] or v == [-y, x]


def test_syzygy_of_power_and_variable(qq_xy):
    x, _ = qq_xy.gens()
    S = syzygies([x * x, x])
    M = Submodule(qq_xy, 2, S.vectors)
    assert M.contains(Vector.from_polys([qq_xy.one(), -x]))


def test_hilbert_burch_syzygies_over_f101():
    names = ["a11", "a12", "a13", "a21", "a22", "a23"]
    R = make_ring(names, PrimeField(101))
    a11, a12, a13, a21, a22, a23 = R.gens()
    # maximal minors, dropping column 1, 2, 3 in turn (sympy Matrix.det oracle)
    minors = [a12 * a23 - a13 * a22, a11 * a23 - a13 * a21, a11 * a22 - a12 * a21]
    S = syzygies(minors)
    rows = Submodule(R, 3, [Vector.from_polys([a11, -a12, a13]), Vector.from_polys([a21, -a22, a23])])
    for r in rows.gens:
        assert r.dot(minors).is_zero()
    assert Submodule(R, 3, S.vectors).equals(rows)


def test_syzygy_routes_agree(qq_xyz):
    gens = [qq_xyz.parse(s) for s in ["x*y", "y*z", "z*x", "x^2 - y^2"]]
    schreyer = Submodule(qq_xyz, 4, syzygies(gens).vectors)
    elim = Submodule(qq_xyz, 4, syzygies_by_elimination(gens))
    assert schreyer.equals(elim)


def test_module_basis_membership(qq_xy):
    x, y = qq_xy.gens()
    v1 = Vector.from_polys([x, y])
    v2 = Vector.from_polys([y, x])
    gb = groebner([v1, v2])
    assert gb.contains(Vector.from_polys([x * x - y * y, 0 * x]))
    assert not gb.contains(Vector.from_polys([x, 0 * x]))


# property tests

R3 = make_ring("x,y,z")
R3_LEX = R3.with_order(MonomialOrder("lex"))


@st.composite
def small_polys(draw, ring=R3, max_terms=3, max_deg=2):
    f = ring.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(ring.nvars))
        f = f + ring.monomial(e, ring.field.from_int(draw(st.integers(-3, 3))))
    return f


ideal_gens = st.lists(small_polys(), min_size=1, max_size=3)


@given(ideal_gens)
def test_groebner_idempotent(gens):
    G = groebner(gens, R3).generators
    if not G:
        return
    assert buchberger(G) == G


@given(ideal_gens)
def test_groebner_matches_sympy(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    x, y, z = sympy.symbols("x y z")
    ours = buchberger(gens)
    theirs = sympy.groebner(
        [sympy.sympify(str(g).replace("^", "**")) for g in gens], x, y, z, order="grevlex", domain="QQ"
    )
    assert {sympy.expand(sympy.sympify(str(p).replace("^", "**"))) for p in ours} == set(theirs.exprs)


CATALOG_IDEALS = [
    ["y^2 - x^3"],
    ["x*y", "y*z", "z*x"],
    ["x^2", "x*y", "y^2"],
    ["x^3 - y*z", "x^2*y - z^2", "y^2 - x*z"],
    ["x", "y", "z"],
]


@given(st.sampled_from(CATALOG_IDEALS), st.lists(small_polys(), min_size=1, max_size=3), small_polys())
def test_membership_independent_of_order(texts, cofs, noise):
    I = Ideal.parse(R3, texts)
    f = noise
    for c, g in zip(cofs, I.gens):
        f = f + c * g
    I_lex = Ideal(R3_LEX, [g.change_ring(R3_LEX) for g in I.gens])
    assert I.contains(f) == I_lex.contains(f.change_ring(R3_LEX))


@given(ideal_gens)
def test_syzygies_contract_to_zero(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    for v in syzygies(gens, certify=False).vectors:
        assert v.dot(gens).is_zero()
