"""Linkage by minors, conductor identities, Rees charts and Koszul homology.

Every quotient-ring computation happens in the ambient polynomial ring
with the defining ideal absorbed (see :class:`mps.ideals.QuotientRing`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field, replace
from itertools import combinations
from typing import Sequence

from .determinantal import MinorCache, build_delta, minors_ideal
from .dimension import codim_grade, free_resolution, krull_dim, length_artinian
from .errors import (
    BudgetExhausted,
    InputError,
    NoPrincipalGenerator,
    NotArtinian,
    RegularityCertificationFailed,
)
from .groebner import syzygies
from .ideals import (
    FractionalIdeal,
    Ideal,
    QuotientRing,
    Stabilized,
    Submodule,
    _fresh,
    annihilator_of_cokernel,
    colon_element,
    eliminate,
    frac_power_stabilize,
    ideal_colon,
    ideal_saturate,
)
from .matrices import ModulePresentation, PolyMatrix
from .polyring import Poly, Ring, Vector

DEFAULT_SEARCH_BUDGET = 20


def _minors_or(X: PolyMatrix, q: int) -> Ideal:
    if q > min(X.nrows, X.ncols):
        return Ideal(X.ring, [])
    return minors_ideal(X, q)


# ---------------------------------------------------------------------------
# linkage instances


@dataclass
class Hypotheses:
    grade: dict  # i -> (computed, expected)
    last_rows: dict  # i -> bool

    @property
    def grades_hold(self) -> bool:
        return all(c == e for c, e in self.grade.values())

    @property
    def last_rows_hold(self) -> bool:
        return all(self.last_rows.values())

    @property
    def admissible(self) -> bool:
        return self.grades_hold and self.last_rows_hold


@dataclass
class LinkageInstance:
    X: PolyMatrix
    p: int
    hypotheses: Hypotheses
    ctx: QuotientRing
    J: Ideal
    delta: Poly | None = None
    coeffs: dict = dc_field(default_factory=dict)
    I: Ideal | None = None
    fast_path: bool = False

    @property
    def last_rows(self) -> tuple:
        m = self.X.nrows
        return tuple(range(m - self.p, m))


def theorem59_hypotheses(X: PolyMatrix, p: int) -> LinkageInstance:
    """Grade and last-rows conditions for ``i = p, p+1``; ``X_i`` is the
    submatrix of the last ``i`` rows."""
    m, n = X.nrows, X.ncols
    if not (n >= m >= 2 and 1 <= p < m):
        raise InputError(f"need n >= m >= 2 and 1 <= p < m (m={m}, n={n}, p={p})")
    cache = MinorCache(X)
    grade, last = {}, {}
    ideals = {}
    for i in (p, p + 1):
        Ii = minors_ideal(X, i, cache)
        ideals[i] = Ii
        g = codim_grade(Ii) if Ii.gens and not Ii.is_unit() else (0 if not Ii.gens else None)
        grade[i] = (g, n - i + 1)
        Xi = X.select_rows(list(range(m - i, m)))
        last[i] = _minors_or(Xi, i).equals(Ii)
    hyp = Hypotheses(grade, last)
    defining = ideals[p + 1]
    if not defining.gens or defining.is_unit():
        raise InputError("I_{p+1}(X) must be a proper nonzero ideal")
    ctx = QuotientRing(X.ring, defining)
    return LinkageInstance(X, p, hyp, ctx, ctx.absorb(ideals[p]))


def _delta_family(inst: LinkageInstance, coeffs: dict) -> tuple[Poly, Ideal]:
    X, p = inst.X, inst.p
    cache = MinorCache(X)
    delta = build_delta(X, p, inst.last_rows, coeffs, cache)
    gens = [build_delta(X, p, rows, coeffs, cache) for rows in combinations(range(X.nrows), p)]
    return delta, inst.ctx.ideal([g for g in gens if g])


def find_regular_delta(inst: LinkageInstance, seed: int = 0, budget: int = DEFAULT_SEARCH_BUDGET) -> LinkageInstance:
    """Single minors of the last ``p`` rows first; then seeded coefficient
    vectors with entries in ``0..3``."""
    X, p = inst.X, inst.p
    cols = list(combinations(range(X.ncols), p))
    cache = MinorCache(X)
    for k in cols:
        d = cache.det(inst.last_rows, k)
        if d and inst.ctx.is_regular(d):
            delta, I = _delta_family(inst, {k: 1})
            return replace(inst, coeffs={k: 1}, delta=delta, I=I, fast_path=True)
    rng = random.Random(seed)
    for _ in range(budget):
        coeffs = {k: rng.randint(0, 3) for k in cols}
        coeffs = {k: a for k, a in coeffs.items() if a}
        if not coeffs:
            continue
        delta = build_delta(X, p, inst.last_rows, coeffs, cache)
        if delta and inst.ctx.is_regular(delta):
            delta, I = _delta_family(inst, coeffs)
            return replace(inst, coeffs=coeffs, delta=delta, I=I, fast_path=False)
    raise BudgetExhausted(budget)


def with_delta(inst: LinkageInstance, coeffs: dict) -> LinkageInstance:
    """Use the given coefficients; the resulting Delta must be A-regular."""
    delta, I = _delta_family(inst, coeffs)
    if not delta or not inst.ctx.is_regular(delta):
        raise RegularityCertificationFailed(f"{delta} is not regular on the quotient ring")
    return replace(inst, coeffs=dict(coeffs), delta=delta, I=I, fast_path=False)


@dataclass
class LinkageVerdict:
    product: bool  # IJ = Delta J
    colon: bool  # J = (Delta) : I
    delta_in_I: bool
    I_in_J: bool
    J_in_colon: bool


def verify_linkage(inst: LinkageInstance) -> LinkageVerdict:
    if inst.delta is None:
        raise InputError("no Delta chosen for this instance")
    ctx, J, I, d = inst.ctx, inst.J, inst.I, inst.delta
    expected = build_delta(inst.X, inst.p, inst.last_rows, inst.coeffs)
    if d != expected or not ctx.is_regular(d):
        raise RegularityCertificationFailed(f"{d} is not an A-regular element of the prescribed form")
    dI = ctx.ideal([d])
    IJ = ctx.absorb(I * J)
    dJ = ctx.absorb(J.scale(d))
    colon = ctx.colon(dI, I)
    return LinkageVerdict(
        product=IJ.equals(dJ),
        colon=colon.equals(J),
        delta_in_I=I.contains(d),
        I_in_J=J.contains_ideal(I),
        J_in_colon=colon.contains_ideal(J),
    )


# ---------------------------------------------------------------------------
# Rees algebra and its chart


@dataclass
class ReesAlgebra:
    ring: Ring  # T block then ambient variables
    ideal: Ideal
    tvars: list


def rees_algebra(ctx: QuotientRing, gens: Sequence[Poly], prefix: str = "T") -> ReesAlgebra:
    """Kernel of ``R[T_1..T_s] -> A[w]``, ``T_i -> w g_i``, by eliminating ``w``."""
    R = ctx.ring
    taken = set(R.vars) | set(R.field.params)
    tv = []
    k = 0
    while len(tv) < len(gens):
        name = f"{prefix}{k}"
        if name not in taken:
            tv.append(name)
        k += 1
    w = _fresh("w", taken | set(tv))
    big = R.extend([w] + tv)
    W = big.var(w)
    rels = [big(g) for g in ctx.defining.gens]
    rels += [big.var(t) - W * big(g) for t, g in zip(tv, gens)]
    target = R.extend(tv)
    K = eliminate(Ideal(big, rels), [w], keep_ring=target)
    return ReesAlgebra(target, K, tv)


@dataclass
class ChartCheck:
    chart: Ideal  # Rees ideal with the Delta coordinate set to 1
    saturation: Ideal  # (J_A + (Delta T_i - g_i)) : Delta^inf
    equal: bool
    relations_vanish: bool
    degree: int | None  # least n with T-degree n+1 monomials reducing to degree <= n
    agrees_with_stabilization: bool | None


def _chart_degree(chart: Ideal, tvars: list, bound: int) -> int | None:
    R = chart.ring
    idx = [R.vars.index(t) for t in tvars]
    for n in range(0, bound + 1):
        ok = True
        for combo in _monomials(len(tvars), n + 1):
            exp = [0] * R.nvars
            for i, e in zip(idx, combo):
                exp[i] = e
            h = chart.reduce(R.monomial(tuple(exp)))
            if any(sum(e[i] for i in idx) > n for e in h.terms):
                ok = False
                break
        if ok:
            return n
    return None


def _monomials(k: int, d: int):
    if k == 0:
        if d == 0:
            yield ()
        return
    for a in range(d, -1, -1):
        for rest in _monomials(k - 1, d - a):
            yield (a,) + rest


def rees_chart_check(ctx: QuotientRing, gens: Sequence[Poly], delta: Poly,
                     stabilized: Stabilized | None = None, bound: int = 6) -> ChartCheck:
    """Two constructions of ``A[I/Delta]`` compared.

    Route one sets ``T_0 = 1`` in the Rees ideal of ``(Delta, g_1..g_s)``;
    route two saturates ``J_A + (Delta T_i - g_i)`` by ``Delta``.  The chart
    relations are also pushed into ``A`` (homogenized by ``Delta``) and must
    vanish there."""
    R = ctx.ring
    gens = [g for g in gens if g and g != delta]
    rees = rees_algebra(ctx, [delta] + gens)
    t0 = rees.tvars[0]
    rest = rees.tvars[1:]
    chart_ring = R.extend(rest)
    chart_gens = [g.substitute({t0: chart_ring.one()}, chart_ring) for g in rees.ideal.gens]
    chart = Ideal(chart_ring, [g for g in chart_gens if g])
    sat_gens = [chart_ring(g) for g in ctx.defining.gens]
    sat_gens += [chart_ring(delta) * chart_ring.var(t) - chart_ring(g) for t, g in zip(rest, gens)]
    sat, _ = ideal_saturate(Ideal(chart_ring, sat_gens), Ideal(chart_ring, [chart_ring(delta)]))
    equal = chart.equals(sat)
    # T_i -> g_i / Delta, cleared by Delta^deg
    vanish = True
    tidx = [chart_ring.vars.index(t) for t in rest]
    for q in chart.gens:
        deg = max(sum(e[i] for i in tidx) for e in q.terms)
        images = {t: R(g) for t, g in zip(rest, gens)}
        total = R.zero()
        for e, c in q.terms.items():
            d = sum(e[i] for i in tidx)
            mono = Poly(chart_ring, {e: c}).substitute(images, R)
            total = total + mono * (R(delta) ** (deg - d))
        if not ctx.defining.contains(total):
            vanish = False
            break
    degree = _chart_degree(chart, rest, bound)
    agree = None
    if stabilized is not None and degree is not None:
        agree = max(degree, 1) == stabilized.exponent
    return ChartCheck(chart, sat, equal, vanish, degree, agree)


# ---------------------------------------------------------------------------
# conductor identities


@dataclass
class ConductorVerdict:
    algebra: Stabilized
    conductor: FractionalIdeal
    conductor_is_J: bool
    JB_is_J: bool
    B_is_J_colon_J: bool
    B_is_A_colon_J: bool
    chart: ChartCheck | None

    @property
    def all_hold(self) -> bool:
        ok = self.conductor_is_J and self.JB_is_J and self.B_is_J_colon_J and self.B_is_A_colon_J
        if self.chart is not None:
            ok = ok and self.chart.equal and self.chart.relations_vanish and bool(self.chart.agrees_with_stabilization)
        return ok


def lemma45_suite(ctx: QuotientRing, I: Ideal, J: Ideal, delta: Poly, seed: int = 0,
                  bound: int = 6, rees: bool = True) -> ConductorVerdict:
    """``B = A[I/Delta]``, ``C = A : B`` and the identities tying them to ``J``."""
    stab = frac_power_stabilize(ctx, I, delta, bound=bound)
    B = stab.algebra
    A1 = FractionalIdeal.unit(ctx)
    Jf = FractionalIdeal.of_ideal(ctx, J)
    C = A1.colon(B, seed=seed)
    chart = None
    if rees:
        gens = [g for g in I.gens if not ctx.defining.contains(g)]
        chart = rees_chart_check(ctx, gens, delta, stab, bound)
    return ConductorVerdict(
        algebra=stab,
        conductor=C,
        conductor_is_J=C.equals(Jf),
        JB_is_J=(Jf * B).equals(Jf),
        B_is_J_colon_J=B.equals(Jf.colon(Jf, seed=seed)),
        B_is_A_colon_J=B.equals(A1.colon(Jf, seed=seed)),
        chart=chart,
    )


@dataclass
class SelfLinkage:
    t: Poly
    principal: bool
    regular: bool
    self_linked: bool


def self_linkage_check(ctx: QuotientRing, J: Ideal, B: FractionalIdeal, seed: int = 0,
                       budget: int = DEFAULT_SEARCH_BUDGET) -> SelfLinkage:
    """Find ``t`` in ``J`` with ``J B = t B``; then test ``J = (t) : J``."""
    Jf = FractionalIdeal.of_ideal(ctx, J)
    JB = Jf * B
    gens = [g for g in J.gens if not ctx.defining.contains(g)]
    cands = list(gens)
    rng = random.Random(seed)
    F = ctx.ring.field
    for _ in range(budget):
        t = ctx.ring.zero()
        for g in gens:
            t = t + g.scale(F.from_int(rng.randint(0, 3)))
        if t:
            cands.append(t)
    for t in cands:
        if not ctx.is_regular(t):
            continue
        tB = FractionalIdeal(ctx, B.num.scale(t), B.den, certify=False)
        if tB.equals(JB):
            linked = ctx.colon(ctx.ideal([t]), J).equals(ctx.absorb(J))
            return SelfLinkage(t, True, True, linked)
    raise NoPrincipalGenerator(budget)


# ---------------------------------------------------------------------------
# Koszul homology


def _subsets(n: int, i: int) -> list:
    return list(combinations(range(n), i))


def koszul_differential(ring: Ring, f: Sequence[Poly], i: int) -> PolyMatrix:
    """``d_i : K_i -> K_{i-1}`` on exterior bases ordered lexicographically."""
    n = len(f)
    src = _subsets(n, i)
    dst = _subsets(n, i - 1)
    pos = {s: r for r, s in enumerate(dst)}
    rows = [[ring.zero() for _ in src] for _ in dst]
    for c, S in enumerate(src):
        for j, s in enumerate(S):
            T = S[:j] + S[j + 1:]
            v = f[s] if j % 2 == 0 else -f[s]
            rows[pos[T]][c] = rows[pos[T]][c] + v
    return PolyMatrix(ring, rows, len(src))


@dataclass
class KoszulComplexSpec:
    ctx: QuotientRing
    elements: list

    def __post_init__(self):
        self.elements = [self.ctx.ring(f) for f in self.elements]

    @property
    def n(self) -> int:
        return len(self.elements)

    def rank(self, i: int) -> int:
        return len(_subsets(self.n, i)) if 0 <= i <= self.n else 0

    def differential(self, i: int) -> PolyMatrix:
        return koszul_differential(self.ctx.ring, self.elements, i)

    def squares_to_zero(self) -> bool:
        for i in range(2, self.n + 1):
            if not (self.differential(i - 1) * self.differential(i)).is_zero():
                return False
        return True


@dataclass
class KoszulHomology:
    i: int
    cycles: Submodule
    boundaries: Submodule
    presentation: ModulePresentation
    dimension: int | None  # over the coefficient field, when finite

    @property
    def is_zero(self) -> bool:
        return self.boundaries.contains_module(self.cycles)


def _cycles(spec: KoszulComplexSpec, i: int) -> Submodule:
    R = spec.ctx.ring
    c = spec.rank(i)
    if i == 0:
        return Submodule(R, 1, [Vector.unit(R, 1, 0)])
    D = spec.differential(i)
    d = spec.rank(i - 1)
    JA = Submodule.ideal_times_free(spec.ctx.defining, d)
    cols = D.column_vectors() + list(JA.gens)
    syz = syzygies(cols, R)
    return Submodule(R, c, [Vector.from_polys(v.to_polys()[:c], R) for v in syz.vectors])


def _boundaries(spec: KoszulComplexSpec, i: int) -> Submodule:
    R = spec.ctx.ring
    c = spec.rank(i)
    JA = Submodule.ideal_times_free(spec.ctx.defining, c)
    if i == spec.n:
        return JA
    return Submodule(R, c, spec.differential(i + 1).column_vectors()) + JA


def koszul_homology(spec: KoszulComplexSpec, i: int) -> KoszulHomology:
    """``H_i = Z_i / B_i`` over the ambient ring with ``J_A`` absorbed."""
    if not 0 <= i <= spec.n:
        raise InputError(f"Koszul index {i} outside 0..{spec.n}")
    R = spec.ctx.ring
    Z = _cycles(spec, i)
    Bd = _boundaries(spec, i)
    g = len(Z.gens)
    cols = list(Z.gens) + list(Bd.gens)
    if g:
        syz = syzygies(cols, R)
        rel = [v.to_polys()[:g] for v in syz.vectors]
        rel = [c for c in rel if any(c)]
    else:
        rel = []
    labels = [f"z{k}" for k in range(g)]
    pres = ModulePresentation(R, labels, PolyMatrix.from_columns(R, rel, g))
    dim = None
    if Bd.contains_module(Z):
        dim = 0
    else:
        try:
            dim = _homology_length(Z, Bd)
        except NotArtinian:
            dim = None
    return KoszulHomology(i, Z, Bd, pres, dim)


def _homology_length(Z: Submodule, Bd: Submodule) -> int:
    """``len(F/B) - len(F/Z)``, F the ambient free module."""
    lb = Bd.length()
    lz = 0 if Z.is_everything() else Z.length()
    return lb - lz


def homology_dims(spec: KoszulComplexSpec) -> list:
    return [koszul_homology(spec, i).dimension for i in range(spec.n + 1)]


@dataclass
class KoszulIdentities:
    top_is_annihilator: bool
    euler_characteristic: int | None
    bottom_is_quotient: bool
    dims: list
    dims_by_presentation: list


def koszul_identity_checks(spec: KoszulComplexSpec) -> KoszulIdentities:
    ctx = spec.ctx
    R = ctx.ring
    n = spec.n
    I = ctx.ideal(spec.elements)
    Hs = [koszul_homology(spec, i) for i in range(n + 1)]
    top = Hs[n]
    ann = ctx.colon(ctx.defining, I) if spec.elements else Ideal(R, [R.one()])
    top_ok = top.cycles.equals(Submodule.ideal_times_free(ann, 1))
    bottom_ok = Hs[0].boundaries.equals(Submodule.ideal_times_free(I, 1))
    dims = [h.dimension for h in Hs]
    by_pres = []
    for h in Hs:
        try:
            by_pres.append(length_artinian(h.presentation) if h.presentation.ngens else 0)
        except NotArtinian:
            by_pres.append(None)
    chi = None
    if all(d is not None for d in dims):
        chi = sum((-1) ** i * d for i, d in enumerate(dims))
    return KoszulIdentities(top_ok, chi, bottom_ok, dims, by_pres)


def grade_in_quotient(ctx: QuotientRing, I: Ideal) -> int:
    """``dim A - dim A/I`` (valid for Cohen-Macaulay ``A``)."""
    return krull_dim(ctx.defining) - krull_dim(ctx.absorb(I))


def nonvanishing_range(spec: KoszulComplexSpec) -> tuple[list, int]:
    """Indices with nonzero homology, and the grade of the ideal."""
    nz = [i for i in range(spec.n + 1) if not koszul_homology(spec, i).is_zero]
    return nz, grade_in_quotient(spec.ctx, spec.ctx.ideal(spec.elements))


# ---------------------------------------------------------------------------
# specialization and strongly perfect instances


def _regular_sequence(base: Ideal, seq: Sequence[Poly]) -> bool:
    """Whether ``seq`` is regular on ``R/base`` (iterated colons)."""
    R = base.ring
    cur = base
    for a in seq:
        a = R(a)
        if cur.gens and cur.contains(a):
            return False
        if cur.gens:
            if not colon_element(cur, a).equals(cur):
                return False
        cur = Ideal(R, list(cur.gens) + [a])
        if cur.is_unit():
            return False
    return True


@dataclass
class SpecializationVerdict:
    lhs: Ideal
    rhs: Ideal
    equal: bool


def prop55_specialization_check(ctx: QuotientRing, deltas: Sequence[Poly], I: Ideal,
                                a_seq: Sequence[Poly]) -> SpecializationVerdict:
    """Image of ``(Delta) : I`` in ``A/(a)`` against ``(Delta bar) : (I bar)``."""
    R = ctx.ring
    zero = Ideal(R, [])
    IA = ctx.absorb(I)
    for base, what in ((zero, "the ambient ring"), (ctx.defining, "A"), (IA, "A/I")):
        if not _regular_sequence(base, a_seq):
            raise RegularityCertificationFailed(f"a-sequence is not regular on {what}")
    abar = Ideal(R, list(ctx.defining.gens) + [R(a) for a in a_seq])
    if not _regular_sequence(abar, deltas):
        raise RegularityCertificationFailed("Delta-sequence is not regular on A/(a)")
    if not _regular_sequence(ctx.defining, deltas):
        raise RegularityCertificationFailed("Delta-sequence is not regular on A")
    D = ctx.ideal(deltas)
    lhs = ideal_colon(D, IA) + abar
    rhs = ideal_colon(D + abar, IA + abar)
    return SpecializationVerdict(lhs, rhs, lhs.equals(rhs))


def generic_matrix(field, rows: int, cols: int, name: str = "x") -> PolyMatrix:
    from .polyring import make_ring

    names = [f"{name}{i + 1}{j + 1}" for i in range(rows) for j in range(cols)]
    R = make_ring(names, field)
    return PolyMatrix(R, [[R.var(f"{name}{i + 1}{j + 1}") for j in range(cols)] for i in range(rows)])


@dataclass
class HomologyPerfection:
    i: int
    nonzero: bool
    pd: int | None
    grade: int | None


@dataclass
class Prop57Verdict:
    p: int
    n: int
    grade_I: int
    modules: list  # HomologyPerfection per Koszul index

    def pd_values(self) -> list:
        return [m.pd for m in self.modules if m.nonzero]

    def all_pd_equal(self, value: int) -> bool:
        return all(m.pd == value for m in self.modules if m.nonzero)

    def all_perfect(self) -> bool:
        return all(m.pd == m.grade for m in self.modules if m.nonzero)


def prop57_instance_check(p: int, n: int, field=None) -> Prop57Verdict:
    """Generic ``(p+1) x n`` matrix, ``A = B/I_{p+1}``, ``I = I_p`` of the
    first ``p`` columns; pd and annihilator grade of every Koszul module
    of the maximal-minor generators of ``I``."""
    from .fields import Rationals

    if not (p + 1 <= n <= 4 and 1 <= p <= 2):
        raise InputError("instances are limited to p <= 2 and p + 1 <= n <= 4")
    X = generic_matrix(field or Rationals(), p + 1, n)
    R = X.ring
    ctx = QuotientRing(R, minors_ideal(X, p + 1))
    Y = X.select_columns(list(range(p)))
    cache = MinorCache(Y)
    gens = [cache.det(rows, tuple(range(p))) for rows in combinations(range(p + 1), p)]
    spec = KoszulComplexSpec(ctx, gens)
    g = grade_in_quotient(ctx, ctx.ideal(gens))
    mods = []
    for i in range(spec.n + 1):
        H = koszul_homology(spec, i)
        if H.is_zero:
            mods.append(HomologyPerfection(i, False, None, None))
            continue
        res = free_resolution(H.presentation, minimize_at_origin=True)
        ann = annihilator_of_cokernel(H.presentation.submodule())
        mods.append(HomologyPerfection(i, True, res.pd, codim_grade(ann)))
    return Prop57Verdict(p, n, g, mods)
