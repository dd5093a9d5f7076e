"""Ideals, submodules, quotient rings and fractional ideals.

Quotient rings are never modelled separately: an ideal of ``A = R/J_A`` is
an ideal of ``R`` containing ``J_A``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    CertificationError,
    InputError,
    IrregularDenominator,
    NoStabilization,
    RingMismatch,
    SaturationBound,
    ZeroColonDivisor,
)
from .groebner import GroebnerBasis, TermOrder, groebner, normal_form, syzygies
from .polyring import GREVLEX, Poly, Ring, Vector

DEFAULT_SATURATION_BOUND = 30


def _fresh(name: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    k = 0
    cand = name
    while cand in taken:
        k += 1
        cand = f"{name}{k}"
    return cand


class Ideal:
    """Ideal given by generators; the reduced GB under the ring order is
    computed on first use and cached."""

    def __init__(self, ring: Ring, gens: Iterable = ()):
        self.ring = ring
        out = []
        for g in gens:
            g = ring(g)
            if g:
                out.append(g)
        self.gens: tuple[Poly, ...] = tuple(out)
        self._gb: GroebnerBasis | None = None

    @classmethod
    def parse(cls, ring: Ring, texts: Sequence[str]) -> Ideal:
        return cls(ring, [ring.parse(t) for t in texts])

    # Groebner basis
    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner(self.gens, self.ring, TermOrder(self.ring, "top"), rank=0)
        return self._gb

    def basis(self) -> list[Poly]:
        """Reduced GB, increasing leading monomials."""
        return self.gb.generators

    def basis_strings(self) -> list[str]:
        return [str(g) for g in self.basis()]

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and self.gb.is_unit()

    def contains(self, f) -> bool:
        f = self.ring(f)
        if not f:
            return True
        if not self.gens:
            return False
        return self.gb.contains(f)

    def reduce(self, f) -> Poly:
        f = self.ring(f)
        if not self.gens:
            return f
        return self.gb.reduce(f)

    def contains_ideal(self, other: Ideal) -> bool:
        _same(self, other)
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: Ideal) -> bool:
        _same(self, other)
        if not self.gens or not other.gens:
            return not self.gens and not other.gens
        if self.ring == other.ring:
            return self.basis() == other.basis()
        return self.contains_ideal(other) and other.contains_ideal(self)

    # constructions
    def __add__(self, other: Ideal) -> Ideal:
        _same(self, other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: Ideal) -> Ideal:
        _same(self, other)
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __pow__(self, k: int) -> Ideal:
        if k < 0:
            raise InputError("negative ideal power")
        result = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            result = result * self
            result = Ideal(self.ring, _dedupe(result.gens))
        return result

    def scale(self, f: Poly) -> Ideal:
        return Ideal(self.ring, [f * g for g in self.gens])

    def change_ring(self, ring: Ring) -> Ideal:
        return Ideal(ring, [g.change_ring(ring) for g in self.gens])

    def map(self, images: Mapping[str, Poly], target: Ring) -> Ideal:
        return Ideal(target, [g.substitute(images, target) for g in self.gens])

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _same(I: Ideal, J: Ideal):
    if I.ring.vars != J.ring.vars or I.ring.field != J.ring.field:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def _dedupe(polys):
    seen = set()
    out = []
    for p in polys:
        k = frozenset(p.terms.items())
        if k not in seen:
            seen.add(k)
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# operations named after the operation list


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


def ideal_power(I: Ideal, k: int) -> Ideal:
    return I ** k


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I.equals(J)


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True when ``J`` is contained in ``I``."""
    return I.contains_ideal(J)


def eliminate(I: Ideal, drop: Iterable[str], keep_ring: Ring | None = None) -> Ideal:
    """``I`` intersected with the polynomial ring in the remaining variables."""
    drop = [v for v in I.ring.vars if v in set(drop)]
    remaining = [v for v in I.ring.vars if v not in set(drop)]
    if not drop:
        return Ideal(I.ring, I.basis()) if keep_ring is None else I.change_ring(keep_ring)
    elim_ring = I.ring.block_order(drop)
    gb = groebner([g.change_ring(elim_ring) for g in I.gens], elim_ring, rank=0) if I.gens else None
    target = keep_ring or Ring(I.ring.field, tuple(remaining), GREVLEX)
    if gb is None:
        return Ideal(target, [])
    kept = [g for g in gb.generators if not (g.variables() & set(drop))]
    return Ideal(target, [g.change_ring(target) for g in kept])


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    if not I.gens or not J.gens:
        return Ideal(I.ring, [])
    t = _fresh("t", I.ring.vars + I.ring.field.params)
    big = I.ring.extend([t])
    tv = big.var(t)
    gens = [tv * big(g) for g in I.gens] + [(1 - tv) * big(g) for g in J.gens]
    return eliminate(Ideal(big, gens), [t], keep_ring=I.ring)


def exact_quotient(f: Poly, g: Poly) -> Poly:
    rem, (q,) = normal_form(f, [g], cofactors=True)
    if rem:
        raise CertificationError(f"{g} does not divide {f}")
    return q


def colon_element(I: Ideal, g: Poly) -> Ideal:
    """(I : g) = (I intersect (g)) / g."""
    if not g:
        raise ZeroColonDivisor("colon by zero")
    inter = ideal_intersect(I, Ideal(I.ring, [g]))
    return Ideal(I.ring, [exact_quotient(h, g) for h in inter.basis()])


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    if not J.gens:
        raise ZeroColonDivisor("colon by the zero ideal")
    if J.is_unit():
        return Ideal(I.ring, I.basis() if I.gens else [])
    result = None
    for g in J.gens:
        c = colon_element(I, g)
        result = c if result is None else ideal_intersect(result, c)
    return Ideal(I.ring, result.basis())


def ideal_saturate(I: Ideal, J: Ideal, bound: int = DEFAULT_SATURATION_BOUND) -> tuple[Ideal, int]:
    """Return ``(I : J^inf, k)`` with ``k`` the least index where the chain
    ``I : J^k`` becomes stationary."""
    current = Ideal(I.ring, I.basis() if I.gens else [])
    for k in range(bound + 1):
        nxt = ideal_colon(current, J)
        if nxt.equals(current):
            return current, k
        current = nxt
    raise SaturationBound(bound)


def radical_contains(I: Ideal, f: Poly) -> bool:
    """Rabinowitsch: ``f`` is in the radical iff ``I + (1 - w f)`` is the unit ideal."""
    f = I.ring(f)
    if not f:
        return True
    w = _fresh("w", I.ring.vars + I.ring.field.params)
    big = I.ring.extend([w])
    gens = [big(g) for g in I.gens] + [big.one() - big.var(w) * big(f)]
    return Ideal(big, gens).is_unit()


def graph_ring(source: Ring, target: Ring) -> Ring:
    """Ring on source then target variables with the source block leading."""
    clash = set(source.vars) & set(target.vars)
    if clash:
        raise InputError(f"source and target share variables {sorted(clash)}")
    if source.field != target.field:
        raise RingMismatch("source and target fields differ")
    names = source.vars + target.vars
    from .polyring import MonomialOrder

    m = source.nvars
    order = MonomialOrder("block", (tuple(range(m)), tuple(range(m, len(names)))), "grevlex")
    return Ring(source.field, names, order)


def graph_ideal(source_ideal: Ideal, images: Mapping[str, Poly], target: Ring) -> Ideal:
    G = graph_ring(source_ideal.ring, target)
    gens = [G(g) for g in source_ideal.gens]
    for x in target.vars:
        gens.append(G.var(x) - G(images[x]))
    return Ideal(G, gens)


def kernel_of_map(source_ideal: Ideal, images: Mapping[str, Poly], target: Ring) -> Ideal:
    """Kernel of ``R -> S/I_X`` sending ``x_i`` to ``images[x_i]``."""
    G = graph_ideal(source_ideal, images, target)
    return eliminate(G, source_ideal.ring.vars, keep_ring=target)


# ---------------------------------------------------------------------------
# submodules of free modules


class Submodule:
    """Submodule of ``R^rank`` given by generator vectors."""

    def __init__(self, ring: Ring, rank: int, gens: Iterable[Vector]):
        self.ring = ring
        self.rank = rank
        self.gens = tuple(v for v in gens if v)
        for v in self.gens:
            if v.rank != rank:
                raise InputError("vector rank does not match the free module")
        self._gb: GroebnerBasis | None = None

    @classmethod
    def from_columns(cls, ring: Ring, rows: int, columns: Sequence[Sequence[Poly]]) -> Submodule:
        return cls(ring, rows, [Vector.from_polys([ring(c) for c in col], ring) for col in columns])

    @classmethod
    def ideal_times_free(cls, I: Ideal, rank: int) -> Submodule:
        """``I * R^rank``."""
        ring = I.ring
        out = []
        for i in range(rank):
            for g in I.gens:
                polys = [ring.zero()] * rank
                polys[i] = g
                out.append(Vector.from_polys(polys, ring))
        return cls(ring, rank, out)

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner(self.gens, self.ring, TermOrder(self.ring, "top"), rank=self.rank)
        return self._gb

    def __add__(self, other: Submodule) -> Submodule:
        return Submodule(self.ring, self.rank, self.gens + other.gens)

    def contains(self, v: Vector) -> bool:
        if not v:
            return True
        if not self.gens:
            return False
        return self.gb.contains(v)

    def contains_module(self, other: Submodule) -> bool:
        return all(self.contains(v) for v in other.gens)

    def equals(self, other: Submodule) -> bool:
        return self.contains_module(other) and other.contains_module(self)

    def is_everything(self) -> bool:
        return all(self.contains(Vector.unit(self.ring, self.rank, i)) for i in range(self.rank))

    def standard_terms(self, limit: int = 100000):
        """Standard (position, monomial) pairs of ``R^rank / self``; raises
        ``NotArtinian`` if infinitely many."""
        from .dimension import standard_terms

        return standard_terms(self.gb.leads() if self.gens else [], self.ring.nvars, self.rank, limit)

    def length(self) -> int:
        return len(self.standard_terms())

    def columns(self) -> list[list[Poly]]:
        return [v.to_polys() for v in self.gens]


def module_intersect(M: Submodule, N: Submodule) -> Submodule:
    """Via syzygies of the concatenated generator list."""
    k = len(M.gens)
    if not M.gens or not N.gens:
        return Submodule(M.ring, M.rank, [])
    syz = syzygies(list(M.gens) + list(N.gens), M.ring)
    out = []
    for s in syz.vectors:
        coeffs = s.to_polys()[:k]
        v = None
        for c, g in zip(coeffs, M.gens):
            if c:
                term = g.scale(c)
                v = term if v is None else v + term
        if v is not None and v:
            out.append(v)
    return Submodule(M.ring, M.rank, out)


def module_colon_element(N: Submodule, g: Poly) -> Submodule:
    """{v in R^rank : g v in N}."""
    ring, r = N.ring, N.rank
    scaled = [Vector.from_polys([g if j == i else ring.zero() for j in range(r)], ring) for i in range(r)]
    syz = syzygies(scaled + list(N.gens), ring)
    out = []
    for s in syz.vectors:
        coeffs = s.to_polys()[:r]
        v = Vector.from_polys(coeffs, ring)
        if v:
            out.append(v)
    return Submodule(ring, r, out)


def module_colon(N: Submodule, J: Ideal) -> Submodule:
    result = None
    for g in J.gens:
        c = module_colon_element(N, g)
        result = c if result is None else module_intersect(result, c)
    if result is None:
        raise ZeroColonDivisor("colon by the zero ideal")
    return result


def module_saturate(N: Submodule, J: Ideal, bound: int = DEFAULT_SATURATION_BOUND) -> tuple[Submodule, int]:
    current = N
    for k in range(bound + 1):
        nxt = module_colon(current, J)
        if nxt.equals(current):
            return current, k
        current = nxt
    raise SaturationBound(bound)


def annihilator_of_cokernel(N: Submodule) -> Ideal:
    """Ann(R^rank / N) as the intersection of the colons (N : e_i)."""
    ring, r = N.ring, N.rank
    result = None
    for i in range(r):
        e = Vector.unit(ring, r, i)
        syz = syzygies([e] + list(N.gens), ring)
        I = Ideal(ring, [s.to_polys()[0] for s in syz.vectors])
        result = I if result is None else ideal_intersect(result, I)
    return result


# ---------------------------------------------------------------------------
# quotient rings and fractional ideals


@dataclass
class QuotientRing:
    """``A = ring / defining``."""

    ring: Ring
    defining: Ideal

    def __post_init__(self):
        if self.defining.is_unit():
            raise InputError("defining ideal of a quotient ring must be proper")

    def ideal(self, gens: Iterable) -> Ideal:
        """Preimage in the ambient ring of the A-ideal generated by ``gens``."""
        return Ideal(self.ring, list(gens) + list(self.defining.gens))

    def absorb(self, I: Ideal) -> Ideal:
        return I + self.defining

    def colon(self, I: Ideal, J: Ideal) -> Ideal:
        return ideal_colon(self.absorb(I), self.absorb(J))

    def is_regular(self, z: Poly) -> bool:
        """z is A-regular iff (J_A : z) = J_A."""
        z = self.ring(z)
        if not z or self.defining.contains(z):
            return False
        return colon_element(self.defining, z).equals(self.defining)

    def equal(self, I: Ideal, J: Ideal) -> bool:
        return self.absorb(I).equals(self.absorb(J))

    def contains(self, I: Ideal, J: Ideal) -> bool:
        return self.absorb(I).contains_ideal(J)

    def regular_element(self, I: Ideal, seed: int = 0, budget: int = 20) -> Poly:
        """An A-regular element of ``I``: generators first, then seeded
        combinations with coefficients in 0..3."""
        for g in I.gens:
            if self.is_regular(g):
                return g
        rng = random.Random(seed)
        for _ in range(budget):
            f = self.ring.zero()
            for g in I.gens:
                f = f + g.scale(self.ring.field.from_int(rng.randint(0, 3)))
            if f and self.is_regular(f):
                return f
        raise IrregularDenominator("no regular element found in the ideal")


class FractionalIdeal:
    """``num / den`` inside the total quotient ring of ``A``.

    The numerator always contains ``J_A``; the denominator is certified
    A-regular on construction.  Nothing is simplified automatically.
    """

    def __init__(self, ctx: QuotientRing, num: Ideal, den: Poly, certify: bool = True):
        self.ctx = ctx
        self.num = ctx.absorb(num)
        self.den = ctx.ring(den)
        if certify and not ctx.is_regular(self.den):
            raise IrregularDenominator(f"{self.den} is not regular on the quotient ring")

    @classmethod
    def unit(cls, ctx: QuotientRing) -> FractionalIdeal:
        return cls(ctx, Ideal(ctx.ring, [ctx.ring.one()]), ctx.ring.one(), certify=False)

    @classmethod
    def of_ideal(cls, ctx: QuotientRing, I: Ideal) -> FractionalIdeal:
        return cls(ctx, I, ctx.ring.one(), certify=False)

    def _check(self, other: FractionalIdeal):
        if other.ctx.ring != self.ctx.ring or not other.ctx.defining.equals(self.ctx.defining):
            raise RingMismatch("fractional ideals over different quotient rings")

    def __mul__(self, other: FractionalIdeal) -> FractionalIdeal:
        self._check(other)
        return FractionalIdeal(self.ctx, self.num * other.num, self.den * other.den, certify=False)

    def __add__(self, other: FractionalIdeal) -> FractionalIdeal:
        self._check(other)
        num = self.num.scale(other.den) + other.num.scale(self.den)
        return FractionalIdeal(self.ctx, num, self.den * other.den, certify=False)

    def __pow__(self, k: int) -> FractionalIdeal:
        return FractionalIdeal(self.ctx, self.num ** k, self.den ** k, certify=False)

    def equals(self, other: FractionalIdeal) -> bool:
        self._check(other)
        return self.ctx.equal(self.num.scale(other.den), other.num.scale(self.den))

    def contains(self, other: FractionalIdeal) -> bool:
        """other is contained in self."""
        self._check(other)
        return self.ctx.contains(self.num.scale(other.den), other.num.scale(self.den))

    def contains_element(self, f: Poly, d: Poly | None = None) -> bool:
        d = self.ctx.ring.one() if d is None else d
        return self.ctx.absorb(self.num.scale(d)).contains(f * self.den)

    def colon(self, other: FractionalIdeal, seed: int = 0) -> FractionalIdeal:
        """{x : x * other is contained in self}.

        A regular element g of other's numerator bounds denominators:
        every such x equals y/(den*g) with y in (g*den_other*num : num_other).
        """
        self._check(other)
        g = self.ctx.regular_element(other.num, seed=seed)
        num = self.ctx.colon(self.num.scale(g * other.den), other.num)
        return FractionalIdeal(self.ctx, num, self.den * g, certify=False)

    def __str__(self):
        return f"{self.num} / ({self.den})"


def frac_ops(F: FractionalIdeal, G: FractionalIdeal, op: str, k: int = 1):
    if op == "mul":
        return F * G
    if op == "add":
        return F + G
    if op == "colon":
        return F.colon(G)
    if op == "eq":
        return F.equals(G)
    if op == "power":
        return F ** k
    raise InputError(f"unknown fractional-ideal operation {op!r}")


@dataclass
class Stabilized:
    algebra: FractionalIdeal
    exponent: int


def frac_power_stabilize(ctx: QuotientRing, I: Ideal, delta: Poly, bound: int = 6) -> Stabilized:
    """``A[I/delta]`` as the first ``F_n = (I^n + J_A)/delta^n`` with
    ``F_{n+1} = F_n``."""
    delta = ctx.ring(delta)
    if not ctx.absorb(I).contains(delta):
        raise InputError("delta must lie in I")
    if not ctx.is_regular(delta):
        raise IrregularDenominator(f"{delta} is not regular on the quotient ring")
    F1 = FractionalIdeal(ctx, I, delta, certify=False)
    Fn = F1
    for n in range(1, bound + 1):
        nxt = Fn * F1
        if nxt.equals(Fn):
            return Stabilized(Fn, n)
        Fn = FractionalIdeal(ctx, Ideal(ctx.ring, _dedupe(ctx.absorb(nxt.num).basis())), nxt.den, certify=False)
    raise NoStabilization(bound)
