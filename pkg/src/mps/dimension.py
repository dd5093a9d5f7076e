"""Krull dimension, codimension, lengths and free resolutions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import (
    CertificationError,
    InputError,
    MinimizationOutsideOrigin,
    NotArtinian,
    NotArtinianAfterLocalization,
    NotIndependent,
    UnitIdeal,
)
from .fields import FunctionField
from .groebner import syzygies
from .ideals import Ideal, Submodule, ideal_saturate, module_saturate
from .matrices import ModulePresentation, PolyMatrix
from .polyring import Poly, Ring, Vector


def _lead_exps(I: Ideal) -> list[tuple]:
    return [g.lead[1] for g in I.gb.elts] if I.gens else []


def independent_sets(leads: Sequence[tuple], nvars: int, size: int):
    """Variable subsets of ``size`` avoided by every leading monomial."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    for S in combinations(range(nvars), size):
        s = set(S)
        if not any(sup <= s for sup in supports):
            yield S


def krull_dim(I: Ideal) -> int:
    """Dimension of R/I from maximal independent sets of the initial ideal;
    -1 for the unit ideal."""
    if not I.gens:
        return I.ring.nvars
    if I.is_unit():
        return -1
    leads = _lead_exps(I)
    for d in range(I.ring.nvars, -1, -1):
        for _ in independent_sets(leads, I.ring.nvars, d):
            return d
    return 0


def codim_grade(I: Ideal) -> int:
    """Codimension; over a polynomial ring this is the grade."""
    if I.is_unit():
        raise UnitIdeal("grade of the unit ideal is undefined here")
    return I.ring.nvars - krull_dim(I)


def standard_terms(leads: Sequence[tuple], nvars: int, rank: int = 0, limit: int = 200000):
    """Standard terms of a monomial (sub)module given by its leads.

    ``leads`` holds exponent tuples for ideals (``rank == 0``) or
    ``(comp, exp)`` pairs for submodules of ``R^rank``.  Raises
    ``NotArtinian`` when the quotient is infinite dimensional.
    """
    if rank == 0:
        groups = {0: list(leads)}
        comps = [0]
    else:
        groups = {}
        for c, e in leads:
            groups.setdefault(c, []).append(e)
        comps = list(range(rank))
    out = []
    for c in comps:
        ls = groups.get(c, [])
        if any(not any(e) for e in ls):
            continue
        for i in range(nvars):
            if not any(e[i] and sum(e) == e[i] for e in ls):
                raise NotArtinian("quotient is not finite dimensional")
        stack = [(0,) * nvars]
        seen = {stack[0]}
        while stack:
            m = stack.pop()
            if any(all(a <= b for a, b in zip(e, m)) for e in ls):
                continue
            out.append((c, m) if rank else m)
            if len(out) > limit:
                raise NotArtinian("standard monomial enumeration exceeded its limit")
            for i in range(nvars):
                nm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nm not in seen:
                    seen.add(nm)
                    stack.append(nm)
    return sorted(out)


def length_artinian(M) -> int:
    """Length of R/I, of R^r/N, or of the cokernel of a presentation."""
    if isinstance(M, Ideal):
        if not M.gens:
            raise NotArtinian("zero ideal")
        return len(standard_terms(_lead_exps(M), M.ring.nvars))
    if isinstance(M, ModulePresentation):
        M = M.submodule()
    if isinstance(M, Submodule):
        leads = M.gb.leads() if M.gens else []
        return len(standard_terms(leads, M.ring.nvars, M.rank))
    raise InputError(f"cannot take the length of {type(M).__name__}")


# ---------------------------------------------------------------------------
# generic-point lengths


def push_ring(ring: Ring, invert: Sequence[str]) -> Ring:
    """Move the variables ``invert`` into a rational function field."""
    invert = [v for v in ring.vars if v in set(invert)]
    if not invert:
        return ring
    if ring.field.params:
        raise InputError("function fields nest at most one level")
    rest = tuple(v for v in ring.vars if v not in invert)
    if not rest:
        raise InputError("cannot invert every variable")
    K = FunctionField(ring.field, tuple(invert))
    return Ring(K, rest)


def push_poly(f: Poly, target: Ring) -> Poly:
    K = target.field
    src = f.ring
    if not K.params:
        return f.change_ring(target)
    pidx = [src.vars.index(v) for v in K.params]
    ridx = [src.vars.index(v) for v in target.vars]
    Pr = K.poly_ring
    out: dict = {}
    for e, c in f.terms.items():
        ne = tuple(e[i] for i in ridx)
        pe = tuple(e[i] for i in pidx)
        coeff = K.from_base(c) * K.from_polys(Pr({pe: Pr.domain.one}), Pr.one)
        old = out.get(ne)
        out[ne] = coeff if old is None else old + coeff
    return Poly(target, {e: c for e, c in out.items() if not K.is_zero(c)})


def check_independent(P: Ideal, invert: Sequence[str]):
    idx = {P.ring.vars.index(v) for v in invert}
    for e in _lead_exps(P):
        if {i for i, k in enumerate(e) if k} <= idx:
            raise NotIndependent(f"{sorted(invert)} is not independent modulo the prime")


def local_length(M, P: Ideal, invert: Sequence[str] = ()) -> int:
    """Length at the prime ``P`` after inverting the independent set ``invert``.

    ``M`` is an ideal (meaning R/M), a submodule N (meaning R^r/N) or a
    presentation.  The length is that of the P-torsion part, computed as
    ``length(total) - length(total / saturation by P)``.
    """
    check_independent(P, invert)
    ring = P.ring
    target = push_ring(ring, invert)
    Pp = Ideal(target, [push_poly(g, target) for g in P.gens])
    if isinstance(M, ModulePresentation):
        M = M.submodule()
    try:
        if isinstance(M, Ideal):
            Ip = Ideal(target, [push_poly(g, target) for g in M.gens])
            total = length_artinian(Ip)
            sat, _ = ideal_saturate(Ip, Pp)
            rest = 0 if sat.is_unit() else length_artinian(sat)
            return total - rest
        if isinstance(M, Submodule):
            Np = Submodule(target, M.rank, [
                Vector.from_polys([push_poly(p, target) for p in v.to_polys()], target) for v in M.gens
            ])
            total = length_artinian(Np)
            sat, _ = module_saturate(Np, Pp)
            rest = 0 if sat.is_everything() else length_artinian(sat)
            return total - rest
    except NotArtinian as exc:
        raise NotArtinianAfterLocalization(str(exc)) from exc
    raise InputError(f"cannot localize {type(M).__name__}")


# ---------------------------------------------------------------------------
# free resolutions


@dataclass
class FreeResolution:
    ring: Ring
    maps: list  # PolyMatrix list: maps[0] : F_1 -> F_0, ...
    minimized: bool

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def pd(self) -> int:
        return len(self.maps)

    def betti(self) -> list[int]:
        if not self.maps:
            return []
        return [self.maps[0].nrows] + [m.ncols for m in self.maps]

    def composites_vanish(self) -> bool:
        return all((a * b).is_zero() for a, b in zip(self.maps, self.maps[1:]))


def _constant_pivot(M: PolyMatrix):
    """First entry that is a nonzero constant, scanning columns left to right."""
    for j in range(M.ncols):
        for i in range(M.nrows):
            e = M.rows[i][j]
            if e and e.is_constant():
                return i, j
    return None


def _check_origin(M: PolyMatrix):
    for row in M.rows:
        for e in row:
            if e and not e.is_constant() and not e.ring.field.is_zero(e.constant_term()):
                raise MinimizationOutsideOrigin(f"entry {e} is a unit at the origin but not constant")


def _prune(maps: list, k: int) -> bool:
    """Split off one unit pivot of ``maps[k]``; returns False if none."""
    M = maps[k]
    piv = _constant_pivot(M)
    if piv is None:
        return False
    r, c = piv
    R = M.ring
    F = R.field
    u_inv = F.inv(M.rows[r][c].constant_term())
    col = M.column(c)
    row = M.rows[r]
    new_rows = []
    for i in range(M.nrows):
        if i == r:
            continue
        factor = col[i].scale(u_inv) if col[i] else None
        new_row = []
        for j in range(M.ncols):
            if j == c:
                continue
            e = M.rows[i][j]
            if factor is not None and row[j]:
                e = e - factor * row[j]
            new_row.append(e)
        new_rows.append(new_row)
    maps[k] = PolyMatrix(R, new_rows, M.ncols - 1)
    if k + 1 < len(maps):
        nxt = maps[k + 1]
        maps[k + 1] = PolyMatrix(R, [rw for i, rw in enumerate(nxt.rows) if i != c], nxt.ncols)
    if k > 0:
        prev = maps[k - 1]
        maps[k - 1] = PolyMatrix(R, [[e for j, e in enumerate(rw) if j != r] for rw in prev.rows], prev.ncols - 1)
    return True


def free_resolution(M, minimize_at_origin: bool = True, max_length: int | None = None) -> FreeResolution:
    """Resolution of R/I (ideal input) or of a presentation's cokernel by
    iterated syzygies, pruning constant pivots as they appear."""
    if isinstance(M, Ideal):
        ring = M.ring
        first = PolyMatrix(ring, [list(M.gens)]) if M.gens else None
        if first is None:
            return FreeResolution(ring, [], minimize_at_origin)
    elif isinstance(M, ModulePresentation):
        ring = M.ring
        first = M.relations
    elif isinstance(M, PolyMatrix):
        ring = M.ring
        first = M
    else:
        raise InputError(f"cannot resolve {type(M).__name__}")
    bound = max_length if max_length is not None else ring.nvars + 1
    maps = [first]
    if minimize_at_origin:
        _check_origin(first)
        while _prune(maps, 0):
            pass
    while True:
        last = maps[-1]
        if last.ncols == 0:
            break
        cols = [Vector.from_polys(c, ring) for c in last.columns()]
        syz = syzygies(cols, ring) if cols else None
        vecs = [v for v in syz.vectors if v] if syz else []
        if not vecs:
            break
        nxt = PolyMatrix.from_columns(ring, [v.to_polys() for v in vecs])
        maps.append(nxt)
        if minimize_at_origin:
            _check_origin(nxt)
            k = len(maps) - 1
            changed = True
            while changed:
                changed = False
                for idx in range(k, -1, -1):
                    if idx < len(maps) and _prune(maps, idx):
                        changed = True
                        break
        # a map with no columns ends the complex
        while maps and maps[-1].ncols == 0:
            maps.pop()
        if len(maps) > bound:
            raise CertificationError("resolution longer than the number of variables")
    res = FreeResolution(ring, [m for m in maps if m.ncols > 0], minimize_at_origin)
    if not res.composites_vanish():
        raise CertificationError("resolution maps do not compose to zero")
    if minimize_at_origin:
        for m in res.maps:
            for row in m.rows:
                for e in row:
                    if e and not e.ring.field.is_zero(e.constant_term()):
                        raise CertificationError("minimized resolution has a unit entry")
    return res


def is_perfect(I: Ideal) -> tuple[bool, int, int]:
    """``(pd == grade, pd, grade)`` for R/I at the origin."""
    res = free_resolution(I, minimize_at_origin=True)
    g = codim_grade(I)
    return res.pd == g, res.pd, g


def module_pd(P: ModulePresentation | PolyMatrix) -> int:
    return free_resolution(P, minimize_at_origin=True).pd
