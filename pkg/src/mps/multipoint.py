"""Finite maps, their pushforward algebras and the multiple-point ideals.

A finite map ``f: X -> Y`` with ``Y`` affine space over a field is handled
through the ``R``-algebra ``B = S/I_X`` (``R`` the target ring).  Maps given
by polynomial images are turned into a :class:`FiniteAlgebra` (module
generators, relations, multiplication table); algebras that are awkward as
a single affine quotient (several disjoint branches) can be supplied
directly in the same form.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .determinantal import fitting_ideal, minors_ideal, prune_columns, square_presentation
from .dimension import codim_grade, length_artinian, local_length
from .errors import (
    CertificationError,
    HypothesisViolation,
    InputError,
    NoPrimitiveFound,
    NoRegularSquareMinor,
)
from .ideals import (
    Ideal,
    Submodule,
    annihilator_of_cokernel,
    graph_ideal,
    ideal_colon,
    kernel_of_map,
    module_intersect,
    radical_contains,
)
from .groebner import syzygies
from .matrices import ModulePresentation, PolyMatrix
from .polyring import Poly, Ring, Vector, monomial_str

DEFAULT_PRIMITIVE_BUDGET = 20


@dataclass(frozen=True)
class Component:
    """A designated component: prime ``P`` of the target, independent set
    ``invert`` and the multiplicity index ``r`` it is attached to."""

    prime: Ideal
    invert: tuple = ()
    r: int = 1
    name: str = ""


@dataclass
class FiniteMapSpec:
    target: Ring
    source: Ring
    source_ideal: Ideal
    images: dict  # target variable -> Poly in source
    components: list = dc_field(default_factory=list)

    def __post_init__(self):
        for x in self.target.vars:
            if x not in self.images:
                raise InputError(f"no image given for {x}")
        self.images = {x: self.source(self.images[x]) for x in self.target.vars}
        if self.source_ideal.ring != self.source:
            raise InputError("source ideal must live in the source ring")
        if self.source_ideal.gens and self.source_ideal.is_unit():
            raise InputError("source ideal must be proper")

    def graph(self) -> Ideal:
        return graph_ideal(self.source_ideal, self.images, self.target)


def check_finite(spec: FiniteMapSpec) -> tuple[bool, list]:
    """Finiteness through the graph ideal: every source variable needs a
    pure-power leading monomial.  Returns the standard source monomials."""
    G = spec.graph()
    m = spec.source.nvars
    pure_u = []
    for g in G.gb.elts:
        e = g.lead[1]
        if not any(e[m:]):
            pure_u.append(e[:m])
    for j in range(m):
        if not any(e[j] and sum(e) == e[j] for e in pure_u):
            return False, []
    from .dimension import standard_terms

    basis = standard_terms(pure_u, m)
    basis.sort(key=lambda e: (sum(e), tuple(-a for a in e)))
    return True, basis


@dataclass
class FiniteAlgebra:
    """``B`` as an ``R``-module with an algebra structure.

    ``relations`` has one row per generator; ``mult[i][j]`` and ``unit`` are
    coordinate vectors (lists of target polynomials)."""

    ring: Ring
    labels: list
    relations: PolyMatrix
    mult: list
    unit: list
    spec: FiniteMapSpec | None = None
    basis: list | None = None  # exponent tuples of the source monomials
    graph: Ideal | None = None
    name: str = ""

    @property
    def rank(self) -> int:
        return len(self.labels)

    def presentation(self) -> ModulePresentation:
        return ModulePresentation(self.ring, list(self.labels), self.relations, self.mult, self.unit)

    def relation_module(self) -> Submodule:
        return Submodule.from_columns(self.ring, self.rank, self.relations.columns())

    def multiply(self, v: Sequence[Poly], w: Sequence[Poly]) -> list:
        R = self.ring
        out = [R.zero()] * self.rank
        for i, a in enumerate(v):
            if not a:
                continue
            for j, b in enumerate(w):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] = out[k] + ab * c
        return out

    def coords(self, f: Poly) -> list:
        """Coordinates of a source element (maps only)."""
        if self.graph is None:
            raise InputError("coordinates of source elements need a map")
        return _coords(self.graph.reduce(self.graph.ring(f)), self.basis, self.spec.source.nvars, self.ring)

    def kernel_of_structure_map(self) -> Ideal:
        """``{r in R : r * 1 = 0 in B}``: first coordinates of syzygies of
        ``[unit | relations]``."""
        cols = [self.unit] + self.relations.columns()
        syz = syzygies([Vector.from_polys(c, self.ring) for c in cols], self.ring)
        return Ideal(self.ring, [v.component(0) for v in syz.vectors])


def _coords(h: Poly, basis: list, m: int, R: Ring) -> list:
    index = {e: i for i, e in enumerate(basis)}
    coords: list = [dict() for _ in basis]
    for e, c in h.terms.items():
        k = index.get(e[:m])
        if k is None:
            raise CertificationError("normal form left a non-standard source monomial")
        coords[k][e[m:]] = c
    return [Poly(R, d) for d in coords]


def algebra_from_map(spec: FiniteMapSpec, name: str = "") -> FiniteAlgebra:
    ok, basis = check_finite(spec)
    if not ok:
        raise InputError("the map is not finite")
    G = spec.graph()
    GR = G.ring
    m = spec.source.nvars
    R = spec.target
    mono = [GR.monomial(e + (0,) * R.nvars) for e in basis]
    cols = []
    for j, b in enumerate(mono):
        for x in R.vars:
            h = G.reduce(GR.var(x) * b)
            c = _coords(h, basis, m, R)
            c[j] = c[j] - R.var(x)
            if any(c):
                cols.append([-a for a in c])
    N = len(basis)
    relations = prune_columns(PolyMatrix.from_columns(R, cols, N))
    mult = [[_coords(G.reduce(a * b), basis, m, R) for b in mono] for a in mono]
    unit = _coords(G.reduce(GR.one()), basis, m, R)
    labels = [monomial_str(e, spec.source.vars) or "1" for e in basis]
    alg = FiniteAlgebra(R, labels, relations, mult, unit, spec, basis, G, name)
    _certify_relations(alg, mono)
    return alg


def _certify_relations(alg: FiniteAlgebra, mono: list):
    G = alg.graph
    GR = G.ring
    for col in alg.relations.columns():
        total = GR.zero()
        for c, b in zip(col, mono):
            if c:
                total = total + GR(c) * b
        if G.reduce(total):
            raise CertificationError("relation column does not vanish in the algebra")


def algebra_from_data(ring: Ring, labels: Sequence[str], relations: PolyMatrix, mult, unit, name: str = "") -> FiniteAlgebra:
    """An algebra supplied directly (e.g. a disjoint union of branches)."""
    N = len(labels)
    if relations.nrows != N or len(unit) != N or len(mult) != N:
        raise InputError("algebra data sizes do not match the generator count")
    conv = [[[ring(c) for c in mult[i][j]] for j in range(N)] for i in range(N)]
    return FiniteAlgebra(ring, list(labels), relations, conv, [ring(c) for c in unit], name=name)


def module_presentation(alg: FiniteAlgebra, square: bool = False) -> ModulePresentation:
    P = alg.presentation()
    return square_presentation(P) if square else P


# ---------------------------------------------------------------------------
# curvilinearity


def _algebra_graph(alg: FiniteAlgebra) -> tuple[Ideal, list[str]]:
    """``B`` as ``R[b_1..b_N]`` modulo multiplication, module relations and
    ``sum unit_k b_k = 1``."""
    R = alg.ring
    taken = set(R.vars) | set(R.field.params)
    names = []
    k = 0
    while len(names) < alg.rank:
        cand = f"b{k}"
        if cand not in taken:
            names.append(cand)
        k += 1
    big = R.extend(names)
    bs = [big.var(n) for n in names]
    gens = []
    N = alg.rank
    for i in range(N):
        for j in range(i, N):
            g = bs[i] * bs[j]
            for k2, c in enumerate(alg.mult[i][j]):
                if c:
                    g = g - big(c) * bs[k2]
            gens.append(g)
    for col in alg.relations.columns():
        g = big.zero()
        for c, b in zip(col, bs):
            if c:
                g = g + big(c) * b
        gens.append(g)
    u = -big.one()
    for c, b in zip(alg.unit, bs):
        if c:
            u = u + big(c) * b
    gens.append(u)
    return Ideal(big, gens), names


def check_curvilinear(alg: FiniteAlgebra) -> bool:
    """``Fitt_1`` of the relative differentials plus the graph ideal is the
    unit ideal (differential corank at most one everywhere)."""
    if alg.spec is not None:
        G = alg.graph
        names = list(alg.spec.source.vars)
    else:
        G, names = _algebra_graph(alg)
    GR = G.ring
    rows = [[g.derivative(v) for g in G.gens] for v in names]
    J = PolyMatrix(GR, rows)
    F1 = fitting_ideal(J, 1)
    return (F1 + G).is_unit()


# ---------------------------------------------------------------------------
# primitive elements


@dataclass
class Primitive:
    coords: list  # coordinates of a
    expression: str
    attempts: int
    powers: list  # coordinate vectors of a^0 .. a^{N-1}
    psi: PolyMatrix  # presentation on the power basis
    square: bool  # False when the module has no square presentation

    def phi(self, r: int) -> PolyMatrix:
        n = self.psi.nrows
        return self.psi.select_rows(list(range(r - 1, n)))


def _candidate_vectors(alg: FiniteAlgebra) -> list[tuple[str, list]]:
    if alg.spec is not None:
        src = alg.spec.source
        GR = alg.graph.ring
        return [(v, alg.coords(GR.var(v))) for v in src.vars]
    R = alg.ring
    out = []
    for k, lab in enumerate(alg.labels):
        out.append((lab, [R.one() if i == k else R.zero() for i in range(alg.rank)]))
    return out


def _power_coords(alg: FiniteAlgebra, a: list) -> list:
    powers = [list(alg.unit)]
    for _ in range(alg.rank - 1):
        powers.append(alg.multiply(powers[-1], a))
    return powers


def _spans(alg: FiniteAlgebra, powers: list) -> bool:
    cols = powers + alg.relations.columns()
    return Submodule.from_columns(alg.ring, alg.rank, cols).is_everything()


def power_basis_presentation(alg: FiniteAlgebra, powers: list) -> tuple[PolyMatrix, bool]:
    """Relations among ``1, a, ..., a^{N-1}``: the first ``N`` coordinates of
    the syzygies of ``[powers | relations]``, reduced to a square matrix
    when one exists."""
    R = alg.ring
    N = alg.rank
    cols = powers + alg.relations.columns()
    syz = syzygies([Vector.from_polys(c, R) for c in cols], R)
    kept = [v.to_polys()[:N] for v in syz.vectors]
    M = prune_columns(PolyMatrix.from_columns(R, kept, N))
    labels = ["1"] + [f"a^{i}" if i > 1 else "a" for i in range(1, N)]
    try:
        return square_presentation(ModulePresentation(R, labels, M)).relations, True
    except NoRegularSquareMinor:
        return M, False


def find_primitive(alg: FiniteAlgebra, seed: int = 0, budget: int = DEFAULT_PRIMITIVE_BUDGET) -> Primitive:
    """Single candidates first, then seeded combinations with coefficients
    in ``0..3``."""
    cands = _candidate_vectors(alg)
    R = alg.ring
    F = R.field
    attempts = 0
    trials: list[tuple[str, list]] = list(cands)
    rng = random.Random(seed)
    for _ in range(budget):
        cs = [rng.randint(0, 3) for _ in cands]
        if not any(cs):
            continue
        vec = [R.zero()] * alg.rank
        for c, (_, v) in zip(cs, cands):
            if c:
                vec = [a + b.scale(F.from_int(c)) for a, b in zip(vec, v)]
        expr = " + ".join(f"{c}*{lab}" if c != 1 else lab for c, (lab, _) in zip(cs, cands) if c)
        trials.append((expr, vec))
    for expr, vec in trials:
        attempts += 1
        powers = _power_coords(alg, vec)
        if _spans(alg, powers):
            psi, square = power_basis_presentation(alg, powers)
            # Fitting ideals do not depend on the presentation
            if not fitting_ideal(psi, 0).equals(fitting_ideal(alg.presentation(), 0)):
                raise CertificationError("power-basis presentation changed Fitt_0")
            return Primitive(vec, expr, attempts, powers, psi, square)
    raise NoPrimitiveFound(attempts)


# ---------------------------------------------------------------------------
# multiple-point ideals


def target_ideal_Nr(alg: FiniteAlgebra, r: int) -> Ideal:
    if r < 1:
        raise InputError("r must be at least 1")
    return fitting_ideal(alg.presentation(), r - 1)


def source_ideal_Mr(alg: FiniteAlgebra, r: int):
    """``f^{-1} N_r``: an ideal of the source ring for maps, otherwise the
    submodule ``N_r B + relations`` of ``R^N``."""
    N = target_ideal_Nr(alg, r)
    if alg.spec is not None:
        spec = alg.spec
        gens = [g.substitute(spec.images, spec.source) for g in N.gens]
        return Ideal(spec.source, gens + list(spec.source_ideal.gens))
    return Submodule.ideal_times_free(N, alg.rank) + alg.relation_module()


def extended_module(alg: FiniteAlgebra, I: Ideal) -> Submodule:
    """``I B`` inside ``R^N``, relations included (so ``R^N / it = B / IB``)."""
    return Submodule.ideal_times_free(I, alg.rank) + alg.relation_module()


@dataclass
class ImageVerdicts:
    image: Ideal
    annihilator: Ideal
    fitt0: Ideal
    ann_equals_image: bool
    fitt0_in_image: bool
    same_support: bool
    fitt0_equals_image: bool


def scheme_image_and_annihilator(alg: FiniteAlgebra) -> ImageVerdicts:
    via_module = alg.kernel_of_structure_map()
    if alg.spec is not None:
        spec = alg.spec
        Z = kernel_of_map(spec.source_ideal, spec.images, spec.target)
        if not Z.equals(via_module):
            raise CertificationError("kernel by elimination and by module colon disagree")
    else:
        Z = via_module
    F0 = fitting_ideal(alg.presentation(), 0)
    F1 = fitting_ideal(alg.presentation(), 1)
    Ann = ideal_colon(F0, F1)
    support = all(radical_contains(F0, g) for g in Z.gens) and all(radical_contains(Z, g) for g in F0.gens)
    return ImageVerdicts(
        image=Z,
        annihilator=Ann,
        fitt0=F0,
        ann_equals_image=Ann.equals(Z),
        fitt0_in_image=Z.contains_ideal(F0),
        same_support=support,
        fitt0_equals_image=F0.equals(Z),
    )


@dataclass
class AdjointVerdict:
    adjoint: Ideal
    conductor: object
    by_fitting1: Ideal
    by_quotient_fitting0: Ideal
    by_annihilator: Ideal
    agree: bool


def adjoint_conductor(alg: FiniteAlgebra) -> AdjointVerdict:
    img = scheme_image_and_annihilator(alg)
    if not img.fitt0_equals_image:
        raise HypothesisViolation("Fitt_0 differs from the scheme-theoretic image")
    P = alg.presentation()
    first = fitting_ideal(P, 1)
    with_unit = alg.relations.hstack(PolyMatrix.from_columns(alg.ring, [alg.unit], alg.rank))
    second = fitting_ideal(with_unit, 0)
    third = annihilator_of_cokernel(Submodule.from_columns(alg.ring, alg.rank, with_unit.columns()))
    agree = first.equals(second) and first.equals(third)
    if alg.spec is not None:
        spec = alg.spec
        conductor = Ideal(spec.source, [g.substitute(spec.images, spec.source) for g in first.gens]
                          + list(spec.source_ideal.gens))
    else:
        conductor = extended_module(alg, first)
    return AdjointVerdict(first, conductor, first, second, third, agree)


def gruson_peskine_check(alg: FiniteAlgebra, r: int, prim: Primitive) -> tuple[bool, Ideal, Ideal]:
    """``Fitt_{r-1}(B)`` against ``Fitt_0(M_r)`` with ``M_r`` presented by the
    last ``N - r + 1`` rows of the power-basis matrix."""
    N = alg.rank
    if not 1 <= r <= N:
        raise InputError(f"r must lie in 1..{N}")
    lhs = fitting_ideal(prim.psi, r - 1)
    rhs = minors_ideal(prim.phi(r), N - r + 1)
    return lhs.equals(rhs), lhs, rhs


def _origin(R: Ring) -> Ideal:
    return Ideal(R, R.gens())


@dataclass
class LengthCheck:
    r: int
    component: str
    lhs: int
    rhs: int
    holds: bool
    hypothesis: bool
    note: str = ""


def length_relation_check(alg: FiniteAlgebra, r: int, component: Component | None = None) -> LengthCheck:
    R = alg.ring
    comp = component or Component(_origin(R), (), r, "origin")
    N_r = target_ideal_Nr(alg, r)
    hyp = (
        not N_r.is_unit()
        and codim_grade(N_r) == r
        and codim_grade(comp.prime) == r
        and comp.prime.contains_ideal(N_r)
    )
    lhs = local_length(extended_module(alg, N_r), comp.prime, comp.invert)
    base = local_length(N_r, comp.prime, comp.invert)
    rhs = r * base
    note = "" if hyp else "codimension hypothesis fails; check is informative only"
    return LengthCheck(r, comp.name or "origin", lhs, rhs, lhs == rhs, hyp, note)


@dataclass
class ExactSequenceCheck:
    r: int
    length_B: int
    length_R: int
    length_M: int
    additive: bool
    kernel_free: bool

    @property
    def holds(self) -> bool:
        return self.additive and self.kernel_free


def exact_sequence_36_check(alg: FiniteAlgebra, r: int, prim: Primitive) -> ExactSequenceCheck:
    """Length additivity for ``0 -> Rbar^{r-1} -> B/FB -> M_r/F M_r -> 0`` and
    injectivity of the first map."""
    R = alg.ring
    N = alg.rank
    F = fitting_ideal(prim.psi, r - 1)
    psi_mod = Submodule.from_columns(R, N, prim.psi.columns()) + Submodule.ideal_times_free(F, N)
    phi = prim.phi(r)
    q = phi.nrows
    phi_mod = Submodule.from_columns(R, q, phi.columns()) + Submodule.ideal_times_free(F, q)
    lB = psi_mod.length()
    lR = length_artinian(F)
    lM = phi_mod.length()
    additive = lB == (r - 1) * lR + lM
    if r == 1:
        kernel_free = True
    else:
        E = Submodule(R, N, [Vector.unit(R, N, i) for i in range(r - 1)])
        K = module_intersect(psi_mod, E)
        proj = Submodule(R, r - 1, [Vector.from_polys(v.to_polys()[:r - 1], R) for v in K.gens])
        kernel_free = proj.equals(Submodule.ideal_times_free(F, r - 1))
    return ExactSequenceCheck(r, lB, lR, lM, additive, kernel_free)


# ---------------------------------------------------------------------------
# report


@dataclass
class MultipointReport:
    name: str
    rank: int
    labels: list
    N: dict  # r -> Ideal
    M: dict  # r -> Ideal or Submodule
    codim: dict
    perfect: dict  # r -> (bool, pd, grade)
    lengths: list
    gruson_peskine: dict
    timing: float


def analyze(alg: FiniteAlgebra, rs: Sequence[int] | None = None, seed: int = 0,
            budget: int = DEFAULT_PRIMITIVE_BUDGET) -> MultipointReport:
    from .dimension import is_perfect

    t0 = time.perf_counter()
    rs = list(rs) if rs else list(range(1, alg.rank + 1))
    N, M, codim, perfect, gp = {}, {}, {}, {}, {}
    prim = None
    try:
        prim = find_primitive(alg, seed, budget)
    except NoPrimitiveFound:
        prim = None
    for r in rs:
        I = target_ideal_Nr(alg, r)
        N[r] = I
        M[r] = source_ideal_Mr(alg, r)
        codim[r] = codim_grade(I) if not I.is_unit() else None
        perfect[r] = is_perfect(I) if not I.is_unit() else None
        if prim is not None:
            gp[r] = gruson_peskine_check(alg, r, prim)[0]
    comps = [c for c in (alg.spec.components if alg.spec else []) if c.r in rs]
    lengths = [length_relation_check(alg, c.r, c) for c in comps]
    return MultipointReport(alg.name, alg.rank, alg.labels, N, M, codim, perfect, lengths, gp,
                            time.perf_counter() - t0)
