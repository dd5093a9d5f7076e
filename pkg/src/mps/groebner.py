"""Groebner bases for ideals and submodules of free modules.

Everything runs on term dicts ``{(comp, exp): coeff}``; an ideal is the rank
one case.  Pair management follows Gebauer and Moeller (chain criterion plus
the coprime criterion for ideals) with the normal selection strategy.
Syzygies come from Schreyer's construction: each S-pair reduction gives a
syzygy of the basis, and cofactor tracking maps it back to the input list.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import CertificationError, InputError, RingMismatch
from .polyring import Poly, Ring, Vector

# ---------------------------------------------------------------------------
# term orders on free modules


class TermOrder:
    """Order on terms ``(comp, exp)`` of ``R^rank``.

    ``top`` compares monomials first and positions second, ``pot`` the other
    way round, and ``schreyer`` compares ``m*lead(g_i)`` in a base order with
    ties broken by position.  Earlier positions are larger throughout.
    """

    def __init__(self, ring: Ring, kind: str = "top", leads=None, base: TermOrder | None = None):
        if kind not in ("top", "pot", "schreyer"):
            raise InputError(f"unknown module order {kind!r}")
        if kind == "schreyer" and (leads is None or base is None):
            raise InputError("Schreyer order needs leading terms and a base order")
        self.ring = ring
        self.kind = kind
        self.leads = tuple(leads) if leads is not None else None
        self.base = base
        self._key: dict = {}
        self._neg: dict = {}

    def signature(self):
        base = self.base.signature() if self.base else None
        return (self.ring, self.kind, self.leads, base)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self.signature() == other.signature()

    def __hash__(self):
        return hash((self.kind, self.leads))

    def key(self, t):
        k = self._key.get(t)
        if k is None:
            comp, exp = t
            if self.kind == "top":
                k = self.ring.key(exp) + (-comp,)
            elif self.kind == "pot":
                k = (-comp,) + self.ring.key(exp)
            else:
                lc, le = self.leads[comp]
                k = self.base.key((lc, tuple(a + b for a, b in zip(exp, le)))) + (-comp,)
            self._key[t] = k
        return k

    def negkey(self, t):
        k = self._neg.get(t)
        if k is None:
            k = self._neg[t] = tuple(-v for v in self.key(t))
        return k

    def lead(self, terms: dict):
        return max(terms, key=self.key)


def schreyer_order(vectors: Sequence[dict], order: TermOrder, ring: Ring) -> TermOrder:
    """Order on the free module indexing ``vectors`` induced by their leads."""
    leads = [order.lead(v) if v else (0, (0,) * ring.nvars) for v in vectors]
    return TermOrder(ring, "schreyer", leads, order)


# ---------------------------------------------------------------------------
# low level helpers


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _axpy(dst: dict, src: dict, c, shift, F, p):
    """dst -= c * x^shift * src  (in place)."""
    for (comp, e), v in src.items():
        t = (comp, tuple(a + b for a, b in zip(e, shift)))
        old = dst.get(t)
        if p:
            nv = ((old or 0) - c * v) % p
            if nv:
                dst[t] = nv
            elif old is not None:
                del dst[t]
        else:
            nv = -(c * v) if old is None else old - c * v
            if F.is_zero(nv):
                if old is not None:
                    del dst[t]
            else:
                dst[t] = nv


def _scale(src: dict, c, F):
    p = F.modulus
    if p:
        return {t: v * c % p for t, v in src.items()}
    return {t: v * c for t, v in src.items()}


class _Elt:
    __slots__ = ("terms", "lead", "inv_lc", "rep")

    def __init__(self, terms, lead, inv_lc, rep=None):
        self.terms = terms
        self.lead = lead
        self.inv_lc = inv_lc
        self.rep = rep


def _make_elt(terms: dict, order: TermOrder, F, rep=None, monic=True) -> _Elt:
    lead = order.lead(terms)
    lc = terms[lead]
    if monic and not F.is_one(lc):
        inv = F.inv(lc)
        terms = _scale(terms, inv, F)
        if rep is not None:
            rep = _scale(rep, inv, F)
        return _Elt(terms, lead, F.one(), rep)
    return _Elt(terms, lead, F.inv(lc), rep)


class _Divisors:
    """Lookup of a basis element whose lead divides a term."""

    def __init__(self, elts: Sequence[_Elt]):
        self.elts = list(elts)
        self.by_comp: dict = {}
        for i, g in enumerate(self.elts):
            self.by_comp.setdefault(g.lead[0], []).append((g.lead[1], i))

    def add(self, g: _Elt):
        self.elts.append(g)
        self.by_comp.setdefault(g.lead[0], []).append((g.lead[1], len(self.elts) - 1))

    def find(self, t):
        for e, i in self.by_comp.get(t[0], ()):
            if _divides(e, t[1]):
                return i
        return None


def _reduce(f: dict, divs: _Divisors, order: TermOrder, F, full=True, record=None):
    """Reduce the term dict ``f`` (consumed) and return the remainder.

    ``record`` collects ``(index, shift, q)`` so that
    ``f = sum q*x^shift*divs[index] + remainder``.
    """
    p = F.modulus
    neg = order.negkey
    heap = [(neg(t), t) for t in f]
    heapq.heapify(heap)
    rem = {}
    elts = divs.elts
    while heap:
        _, t = heapq.heappop(heap)
        c = f.get(t)
        if c is None:
            continue
        i = divs.find(t)
        if i is None:
            if not full:
                rem.update(f)
                return rem
            rem[t] = c
            del f[t]
            continue
        g = elts[i]
        shift = _sub(t[1], g.lead[1])
        q = c if F.is_one(g.inv_lc) else (c * g.inv_lc % p if p else c * g.inv_lc)
        del f[t]
        for (comp, e), v in g.terms.items():
            nt = (comp, tuple(a + b for a, b in zip(e, shift)))
            if nt == t:
                continue
            old = f.get(nt)
            if p:
                nv = ((old or 0) - q * v) % p
                if nv:
                    f[nt] = nv
                    if old is None:
                        heapq.heappush(heap, (neg(nt), nt))
                elif old is not None:
                    del f[nt]
            else:
                nv = -(q * v) if old is None else old - q * v
                if F.is_zero(nv):
                    if old is not None:
                        del f[nt]
                else:
                    f[nt] = nv
                    if old is None:
                        heapq.heappush(heap, (neg(nt), nt))
        if record is not None:
            record.append((i, shift, q))
    return rem


def _rep_after(rep: dict | None, record, elts: Sequence[_Elt], F):
    """Representation of a remainder given the representation of the input."""
    if rep is None:
        return None
    out = dict(rep)
    p = F.modulus
    for i, shift, q in record:
        _axpy(out, elts[i].rep, q, shift, F, p)
    return out


# ---------------------------------------------------------------------------
# Buchberger


@dataclass
class _Pair:
    i: int
    j: int
    lcm: tuple
    comp: int


def buchberger_terms(gens: Sequence[dict], order: TermOrder, F, track: bool = False, ideal: bool | None = None):
    """Reduced Groebner basis of term dicts.

    Returns a list of :class:`_Elt` sorted by increasing lead.  With
    ``track`` each element carries ``rep``: its expression in terms of the
    inputs as a term dict over ``R^len(gens)``.
    """
    nv = order.ring.nvars
    zero_exp = (0,) * nv
    if ideal is None:
        ideal = all(c == 0 for g in gens for (c, _) in g)
    elts: list[_Elt] = []
    active: list[int] = []
    pairs: list = []  # heap of (selection key, i, j, lcm, comp)

    def push_pairs(h: int):
        nonlocal active, pairs
        hg = elts[h]
        hc, he = hg.lead
        cand = []
        for g in active:
            gc, ge = elts[g].lead
            if gc == hc:
                cand.append((g, _lcm(ge, he)))
        keep = []
        for idx, (g, L) in enumerate(cand):
            if ideal and _coprime(elts[g].lead[1], he):
                keep.append((g, L))
                continue
            redundant = any(_divides(L2, L) for _, L2 in cand[idx + 1:]) or any(
                _divides(L2, L) for _, L2 in keep
            )
            if not redundant:
                keep.append((g, L))
        new = [(g, L) for g, L in keep if not (ideal and _coprime(elts[g].lead[1], he))]
        survivors = []
        for entry in pairs:
            _, i, j, L, comp = entry
            if comp == hc and _divides(he, L):
                if _lcm(elts[i].lead[1], he) != L and _lcm(elts[j].lead[1], he) != L:
                    continue
            survivors.append(entry)
        for g, L in new:
            t = (hc, L)
            survivors.append(((sum(L), order.key(t), g, h), g, h, L, hc))
        heapq.heapify(survivors)
        pairs = survivors
        active = [g for g in active if not (elts[g].lead[0] == hc and _divides(he, elts[g].lead[1]))]
        active.append(h)

    def active_divs():
        return _Divisors([elts[g] for g in active]), list(active)

    def add_element(terms: dict, rep):
        h = len(elts)
        elts.append(_make_elt(terms, order, F, rep))
        push_pairs(h)

    # feed the inputs one by one, reducing against what is already there
    for k, g in enumerate(gens):
        if not g:
            continue
        rep = {(k, zero_exp): F.one()} if track else None
        d, idx = active_divs()
        record = [] if track else None
        r = _reduce(dict(g), d, order, F, full=True, record=record)
        if r:
            if track:
                rep = _rep_after(rep, record, d.elts, F)
            add_element(r, rep)

    while pairs:
        _, i, j, L, comp = heapq.heappop(pairs)
        gi, gj = elts[i], elts[j]
        si = _sub(L, gi.lead[1])
        sj = _sub(L, gj.lead[1])
        s: dict = {}
        _axpy(s, gi.terms, F.from_int(-1), si, F, F.modulus)
        _axpy(s, gj.terms, F.one(), sj, F, F.modulus)
        rep = None
        if track:
            rep = {}
            _axpy(rep, gi.rep, F.from_int(-1), si, F, F.modulus)
            _axpy(rep, gj.rep, F.one(), sj, F, F.modulus)
        if not s:
            continue
        d, _ = active_divs()
        record = [] if track else None
        r = _reduce(s, d, order, F, full=True, record=record)
        if r:
            if track:
                rep = _rep_after(rep, record, d.elts, F)
            add_element(r, rep)

    # interreduce the minimal basis
    basis = [elts[g] for g in active]
    basis.sort(key=lambda g: order.key(g.lead))
    out = []
    for k, g in enumerate(basis):
        others = _Divisors(basis[:k] + basis[k + 1:])
        record = [] if track else None
        terms = _reduce(dict(g.terms), others, order, F, full=True, record=record)
        rep = _rep_after(g.rep, record, others.elts, F) if track else None
        out.append(_make_elt(terms, order, F, rep))
    return out


# ---------------------------------------------------------------------------
# public wrappers


def poly_terms(f: Poly) -> dict:
    return {(0, e): c for e, c in f.terms.items()}


def terms_poly(ring: Ring, terms: dict) -> Poly:
    return Poly(ring, {e: c for (_, e), c in terms.items()})


def vector_terms(v: Vector) -> dict:
    return dict(v.terms)


@dataclass
class GroebnerBasis:
    """Reduced, monic Groebner basis of an ideal (``rank`` 0) or submodule."""

    ring: Ring
    order: TermOrder
    rank: int  # 0 for ideals
    elts: list = dc_field(repr=False)

    @property
    def is_ideal(self) -> bool:
        return self.rank == 0

    @property
    def generators(self) -> list:
        if self.is_ideal:
            return [terms_poly(self.ring, g.terms) for g in self.elts]
        return [Vector(self.ring, self.rank, dict(g.terms)) for g in self.elts]

    def __len__(self):
        return len(self.elts)

    def leads(self):
        return [g.lead for g in self.elts]

    def _terms(self, f) -> dict:
        if isinstance(f, Poly):
            if f.ring.vars != self.ring.vars or f.ring.field != self.ring.field:
                raise RingMismatch(f"{f.ring} vs {self.ring}")
            return poly_terms(f)
        if isinstance(f, Vector):
            return vector_terms(f)
        return dict(f)

    def reduce_terms(self, terms: dict) -> dict:
        return _reduce(dict(terms), _Divisors(self.elts), self.order, self.ring.field)

    def reduce(self, f):
        r = self.reduce_terms(self._terms(f))
        if isinstance(f, Poly) or (self.is_ideal and not isinstance(f, Vector)):
            return terms_poly(self.ring, r)
        return Vector(self.ring, self.rank, r)

    def contains(self, f) -> bool:
        return not self.reduce_terms(self._terms(f))

    def is_unit(self) -> bool:
        z = (0,) * self.ring.nvars
        return any(g.lead[1] == z for g in self.elts) and self.is_ideal

    def __str__(self):
        return "\n".join(str(g) for g in self.generators)


def groebner(gens: Sequence, ring: Ring | None = None, order: TermOrder | None = None, rank: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of polynomials or vectors."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise InputError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring.vars != ring.vars or g.ring.field != ring.field:
            raise RingMismatch(f"{g.ring} vs {ring}")
    if rank is None:
        rank = gens[0].rank if gens and isinstance(gens[0], Vector) else 0
    order = order or TermOrder(ring, "top")
    terms = [poly_terms(g) if isinstance(g, Poly) else vector_terms(g) for g in gens]
    elts = buchberger_terms(terms, order, ring.field, ideal=(rank == 0))
    return GroebnerBasis(ring, order, rank, elts)


def buchberger(gens: Sequence[Poly]) -> list[Poly]:
    """Reduced GB of an ideal under the ring's order, increasing leads."""
    return groebner(gens).generators


def normal_form(f, G: Sequence, cofactors: bool = False):
    """Division of ``f`` by the list ``G`` (not necessarily a Groebner basis).

    With ``cofactors`` returns ``(remainder, [q_1, ..., q_s])`` such that
    ``f = sum q_i G_i + remainder``.
    """
    if not G:
        raise InputError("normal form against an empty list")
    ring = G[0].ring
    F = ring.field
    is_poly = isinstance(f, Poly)
    for g in list(G) + [f]:
        if g.ring.vars != ring.vars or g.ring.field != F:
            raise RingMismatch(f"{g.ring} vs {ring}")
    order = TermOrder(ring, "top")
    elts = []
    index = []
    for k, g in enumerate(G):
        t = poly_terms(g) if isinstance(g, Poly) else vector_terms(g)
        if t:
            elts.append(_make_elt(t, order, F, monic=False))
            index.append(k)
    record = [] if cofactors else None
    ft = poly_terms(f) if is_poly else vector_terms(f)
    r = _reduce(ft, _Divisors(elts), order, F, record=record)
    rem = terms_poly(ring, r) if is_poly else Vector(ring, f.rank, r)
    if not cofactors:
        return rem
    qs = [dict() for _ in G]
    for i, shift, q in record:
        d = qs[index[i]]
        old = d.get(shift)
        nv = F.add(old, q) if old is not None else q
        if F.is_zero(nv):
            d.pop(shift, None)
        else:
            d[shift] = nv
    return rem, [Poly(ring, d) for d in qs]


# ---------------------------------------------------------------------------
# syzygies


@dataclass
class SyzygyModule:
    """First syzygies of an ordered list of generators."""

    ring: Ring
    source_rank: int  # number of generators
    vectors: list  # list of Vector in R^source_rank

    def matrix_columns(self) -> list[list[Poly]]:
        return [v.to_polys() for v in self.vectors]


def _as_terms(gens, ring):
    out = []
    for g in gens:
        if isinstance(g, Poly):
            out.append(poly_terms(ring(g)))
        else:
            out.append(vector_terms(g))
    return out


def syzygy_terms(gens: Sequence[dict], ring: Ring, order: TermOrder) -> list[dict]:
    """Schreyer syzygies of term dicts; returned over ``R^len(gens)``."""
    F = ring.field
    p = F.modulus
    zero = (0,) * ring.nvars
    ideal = all(c == 0 for g in gens for (c, _) in g)
    basis = buchberger_terms(gens, order, F, track=True, ideal=ideal)
    divs = _Divisors(basis)
    out: list[dict] = []

    # syzygies among basis elements, pushed through the representation matrix
    for j in range(len(basis)):
        for i in range(j):
            gi, gj = basis[i], basis[j]
            if gi.lead[0] != gj.lead[0]:
                continue
            L = _lcm(gi.lead[1], gj.lead[1])
            si, sj = _sub(L, gi.lead[1]), _sub(L, gj.lead[1])
            spoly: dict = {}
            _axpy(spoly, gi.terms, F.from_int(-1), si, F, p)
            _axpy(spoly, gj.terms, F.one(), sj, F, p)
            record = []
            rem = _reduce(spoly, divs, order, F, record=record)
            if rem:
                raise CertificationError("S-pair of a Groebner basis did not reduce to zero")
            syz: dict = {}
            _axpy(syz, gi.rep, F.from_int(-1), si, F, p)
            _axpy(syz, gj.rep, F.one(), sj, F, p)
            for k, shift, q in record:
                _axpy(syz, basis[k].rep, q, shift, F, p)
            if syz:
                out.append(syz)

    # columns of (I - A*B): each input rewritten through the basis
    for l, g in enumerate(gens):
        vec = {(l, zero): F.one()}
        if g:
            record = []
            rem = _reduce(dict(g), divs, order, F, record=record)
            if rem:
                raise CertificationError("input generator not in its own ideal")
            for k, shift, q in record:
                _axpy(vec, basis[k].rep, q, shift, F, p)
        if vec:
            out.append(vec)

    # drop duplicates, keep a deterministic order
    seen = set()
    uniq = []
    for v in out:
        key = frozenset(v.items())
        if key not in seen:
            seen.add(key)
            uniq.append(v)
    return uniq


def contract(vec: dict, gens: Sequence[dict], F) -> dict:
    """sum_l vec_l * gens_l as a term dict."""
    p = F.modulus
    out: dict = {}
    minus_one = F.from_int(-1)
    for (l, e), c in vec.items():
        _axpy(out, gens[l], F.mul(minus_one, c), e, F, p)
    return out


def syzygies(gens: Sequence, ring: Ring | None = None, certify: bool = True) -> SyzygyModule:
    """First syzygy module of an ordered list of polynomials or vectors.

    With ``certify`` every syzygy is contracted against the generators and
    checked to vanish exactly.
    """
    gens = list(gens)
    if ring is None:
        ring = gens[0].ring
    terms = _as_terms(gens, ring)
    order = TermOrder(ring, "top")
    out = syzygy_terms(terms, ring, order)
    if certify:
        for v in out:
            if contract(v, terms, ring.field):
                raise CertificationError("syzygy does not contract to zero")
    return SyzygyModule(ring, len(gens), [Vector(ring, len(gens), v) for v in out])


def syzygies_by_elimination(gens: Sequence, ring: Ring | None = None) -> list[Vector]:
    """Independent route: GB of (g_i, e_i) in R^r + R^s under position over
    term with the R^r block first; basis vectors with zero R^r part generate
    the syzygies."""
    gens = list(gens)
    ring = ring or gens[0].ring
    F = ring.field
    zero = (0,) * ring.nvars
    terms = _as_terms(gens, ring)
    r = max((c for g in terms for (c, _) in g), default=-1) + 1
    s = len(gens)
    aug = []
    for l, g in enumerate(terms):
        t = dict(g)
        t[(r + l, zero)] = F.one()
        aug.append(t)
    order = _EliminationOrder(ring, r)
    basis = buchberger_terms(aug, order, F, ideal=False)
    out = []
    for g in basis:
        if all(c >= r for (c, _) in g.terms):
            out.append(Vector(ring, s, {(c - r, e): v for (c, e), v in g.terms.items()}))
    return out


class _EliminationOrder(TermOrder):
    """Terms in positions < split dominate; top order inside each part."""

    def __init__(self, ring: Ring, split: int):
        super().__init__(ring, "top")
        self.split = split

    def signature(self):
        return (self.ring, "elim", self.split)

    def key(self, t):
        k = self._key.get(t)
        if k is None:
            comp, exp = t
            k = (1 if comp < self.split else 0,) + self.ring.key(exp) + (-comp,)
            self._key[t] = k
        return k


def submodule_contains(gb: GroebnerBasis, vectors: Sequence[Vector]) -> bool:
    return all(gb.contains(v) for v in vectors)
