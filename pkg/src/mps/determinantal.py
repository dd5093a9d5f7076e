"""Minors, determinantal and Fitting ideals, and the identities built on them.

Row and column indices are 0-based throughout the Python API.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Mapping, Sequence

from .errors import BadRange, BadSize, IndexOutOfRange, NoRegularSquareMinor, NonSquareSelection
from .ideals import Ideal, Submodule
from .matrices import ModulePresentation, PolyMatrix
from .polyring import Poly, Ring, Vector


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


class MinorCache:
    """Memoized Laplace expansion for one matrix."""

    def __init__(self, X: PolyMatrix):
        self.X = X
        self.memo: dict = {}

    def det(self, rows: tuple, cols: tuple) -> Poly:
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        X = self.X
        R = X.ring
        if not rows:
            val = R.one()
        elif len(rows) == 1:
            val = X.rows[rows[0]][cols[0]]
        else:
            # expand along the sparsest row
            best = min(rows, key=lambda i: sum(1 for j in cols if X.rows[i][j]))
            pos = rows.index(best)
            rest = rows[:pos] + rows[pos + 1:]
            val = R.zero()
            for c_pos, j in enumerate(cols):
                e = X.rows[best][j]
                if not e:
                    continue
                sub = self.det(rest, cols[:c_pos] + cols[c_pos + 1:])
                if not sub:
                    continue
                term = e * sub
                val = val - term if (pos + c_pos) % 2 else val + term
        self.memo[key] = val
        return val

    def signed(self, rows: Sequence[int], cols: Sequence[int]) -> Poly:
        """Determinant with rows taken in the given (possibly unsorted) order."""
        srt = tuple(sorted(rows))
        if len(set(srt)) != len(srt):
            return self.X.ring.zero()
        d = self.det(srt, tuple(sorted(cols)))
        return d if _perm_sign(rows) * _perm_sign(cols) > 0 else -d


def _check_indices(X: PolyMatrix, rows: Sequence[int], cols: Sequence[int], increasing: bool = True):
    if len(rows) != len(cols):
        raise NonSquareSelection(f"{len(rows)} rows but {len(cols)} columns")
    for i in rows:
        if not 0 <= i < X.nrows:
            raise IndexOutOfRange(f"row index {i} outside 0..{X.nrows - 1}")
    for j in cols:
        if not 0 <= j < X.ncols:
            raise IndexOutOfRange(f"column index {j} outside 0..{X.ncols - 1}")
    if increasing:
        for seq in (rows, cols):
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise IndexOutOfRange(f"indices {list(seq)} are not strictly increasing")


def minor(X: PolyMatrix, rows: Sequence[int], cols: Sequence[int], cache: MinorCache | None = None) -> Poly:
    _check_indices(X, rows, cols)
    cache = cache or MinorCache(X)
    return cache.det(tuple(rows), tuple(cols))


def minors_ideal(X: PolyMatrix, q: int, cache: MinorCache | None = None) -> Ideal:
    if q <= 0:
        return Ideal(X.ring, [X.ring.one()])
    if q > min(X.nrows, X.ncols):
        raise BadSize(f"no {q}x{q} minors in a {X.nrows}x{X.ncols} matrix")
    cache = cache or MinorCache(X)
    gens = []
    seen = set()
    for rows in combinations(range(X.nrows), q):
        for cols in combinations(range(X.ncols), q):
            d = cache.det(rows, cols)
            if d and d not in seen:
                seen.add(d)
                gens.append(d)
    return Ideal(X.ring, gens)


def _minors_or_zero(X: PolyMatrix, q: int) -> Ideal:
    if q <= 0:
        return Ideal(X.ring, [X.ring.one()])
    if q > min(X.nrows, X.ncols):
        return Ideal(X.ring, [])
    return minors_ideal(X, q)


def fitting_ideal(P: ModulePresentation | PolyMatrix, i: int) -> Ideal:
    """``Fitt_i`` of the cokernel: minors of size ``m - i`` for ``m`` generators."""
    if i < 0:
        raise BadRange("Fitting index must be non-negative")
    M = P.relations if isinstance(P, ModulePresentation) else P
    m = P.ngens if isinstance(P, ModulePresentation) else M.nrows
    if m - i <= 0:
        return Ideal(M.ring, [M.ring.one()])
    if M.ncols == 0:
        return Ideal(M.ring, [])
    return _minors_or_zero(M, m - i)


def fitting_chain_holds(P: ModulePresentation | PolyMatrix) -> bool:
    m = P.ngens if isinstance(P, ModulePresentation) else P.nrows
    chain = [fitting_ideal(P, i) for i in range(m + 1)]
    return all(b.contains_ideal(a) for a, b in zip(chain, chain[1:]))


# ---------------------------------------------------------------------------
# Sylvester-type relations among p x p minors


def _validate_p(X: PolyMatrix, p: int, *index_lists):
    if not 1 <= p < min(X.nrows, X.ncols) + 1:
        raise BadRange(f"p = {p} out of range for a {X.nrows}x{X.ncols} matrix")
    for idx in index_lists:
        if len(idx) != p:
            raise NonSquareSelection(f"index list {list(idx)} does not have length {p}")


def sylvester_check(X: PolyMatrix, p: int, i, j, k, l, modulus: Ideal | None = None,
                    cache: MinorCache | None = None) -> bool:
    """Whether ``d_i^k d_j^l - d_j^k d_i^l`` lies in ``I_{p+1}(X)``."""
    _validate_p(X, p, i, j, k, l)
    for rows, cols in ((i, k), (j, l)):
        _check_indices(X, rows, cols)
    cache = cache or MinorCache(X)
    diff = cache.det(tuple(i), tuple(k)) * cache.det(tuple(j), tuple(l)) - \
        cache.det(tuple(j), tuple(k)) * cache.det(tuple(i), tuple(l))
    if not diff:
        return True
    I = modulus if modulus is not None else _minors_or_zero(X, p + 1)
    return I.contains(diff)


def row_relation_check(X: PolyMatrix, p: int, i, k, extra_row: int, modulus: Ideal | None = None,
                       cache: MinorCache | None = None) -> bool:
    """Whether ``d_i^k R_e - sum_j (-1)^(j+p) d_{i e \\ i_j}^k R_{i_j}`` vanishes
    componentwise modulo ``I_{p+1}(X)`` (``e`` = extra_row, ``j`` 1-based)."""
    _validate_p(X, p, i, k)
    _check_indices(X, i, k)
    if extra_row in i or not 0 <= extra_row < X.nrows:
        raise IndexOutOfRange(f"extra row {extra_row} must be a fresh row index")
    cache = cache or MinorCache(X)
    I = modulus if modulus is not None else _minors_or_zero(X, p + 1)
    ext = list(i) + [extra_row]
    coeffs = []
    for jj in range(1, p + 1):
        rows = ext[:jj - 1] + ext[jj:]
        sgn = 1 if (jj + p) % 2 == 0 else -1
        d = cache.signed(rows, list(k))
        coeffs.append((d if sgn > 0 else -d, i[jj - 1]))
    lead = cache.det(tuple(i), tuple(k))
    for col in range(X.ncols):
        v = lead * X.rows[extra_row][col]
        for d, row in coeffs:
            if d and X.rows[row][col]:
                v = v - d * X.rows[row][col]
        if v and not I.contains(v):
            return False
    return True


def random_check_matrix(ring: Ring, m: int, n: int, rank: int, rng: random.Random, prime: int) -> PolyMatrix:
    """``A + t B + s C`` with ``A`` of rank ``rank`` and ``B, C`` constant.

    ``ring`` has two variables playing ``t`` and ``s``; low-rank ``A``
    makes the congruences modulo ``I_{rank+1}`` non-vacuous."""
    t, s = ring.gens()
    F = ring.field
    U = [[rng.randrange(prime) for _ in range(rank)] for _ in range(m)]
    V = [[rng.randrange(prime) for _ in range(n)] for _ in range(rank)]
    rows = []
    for a in range(m):
        row = []
        for b in range(n):
            base = sum(U[a][c] * V[c][b] for c in range(rank)) % prime
            e = ring.const(F.from_int(base)) + t.scale(F.from_int(rng.randrange(prime))) \
                + s.scale(F.from_int(rng.randrange(prime)))
            row.append(e)
        rows.append(row)
    return PolyMatrix(ring, rows)


def _rand_subset(rng: random.Random, n: int, p: int) -> tuple:
    return tuple(sorted(rng.sample(range(n), p)))


def sylvester_trials(ring: Ring, m: int, n: int, p: int, trials: int, seed: int, prime: int,
                     row_relations: int = 0) -> tuple[int, int, int, int]:
    """Randomized instances of both minor identities.

    Returns ``(sylvester_passed, sylvester_total, row_passed, row_total)``."""
    rng = random.Random(seed)
    syl_ok = row_ok = 0
    row_total = 0
    for t in range(trials):
        X = random_check_matrix(ring, m, n, p, rng, prime)
        cache = MinorCache(X)
        I = minors_ideal(X, p + 1, cache)
        i, j = _rand_subset(rng, m, p), _rand_subset(rng, m, p)
        k, l = _rand_subset(rng, n, p), _rand_subset(rng, n, p)
        syl_ok += sylvester_check(X, p, i, j, k, l, modulus=I, cache=cache)
        if t < row_relations:
            rest = [r for r in range(m) if r not in i]
            e = rng.choice(rest)
            row_total += 1
            row_ok += row_relation_check(X, p, i, k, e, modulus=I, cache=cache)
    return syl_ok, trials, row_ok, row_total


def sylvester_on_matrix(X: PolyMatrix, p: int, trials: int, seed: int) -> tuple[int, int, int, int]:
    """Seeded random index choices for both identities on one fixed matrix."""
    rng = random.Random(seed)
    cache = MinorCache(X)
    I = _minors_or_zero(X, p + 1)
    m, n = X.nrows, X.ncols
    syl_ok = row_ok = row_total = 0
    for _ in range(trials):
        i, j = _rand_subset(rng, m, p), _rand_subset(rng, m, p)
        k, l = _rand_subset(rng, n, p), _rand_subset(rng, n, p)
        syl_ok += sylvester_check(X, p, i, j, k, l, modulus=I, cache=cache)
        rest = [r for r in range(m) if r not in i]
        if rest:
            row_total += 1
            row_ok += row_relation_check(X, p, i, k, rng.choice(rest), modulus=I, cache=cache)
    return syl_ok, trials, row_ok, row_total


# ---------------------------------------------------------------------------
# Delta and square presentations


def build_delta(X: PolyMatrix, p: int, rows: Sequence[int], coeffs: Mapping[tuple, object],
                cache: MinorCache | None = None) -> Poly:
    """``sum_k a^k d_rows^k`` over column p-subsets ``k``."""
    _validate_p(X, p, rows)
    cache = cache or MinorCache(X)
    R = X.ring
    out = R.zero()
    for k, a in coeffs.items():
        _check_indices(X, rows, k)
        a = R(a)
        if a:
            out = out + a * cache.det(tuple(rows), tuple(k))
    return out


def _span_contains(ring: Ring, rank: int, cols: list, extra: list) -> bool:
    if not extra:
        return True
    S = Submodule.from_columns(ring, rank, cols)
    return all(S.contains(Vector.from_polys(c, ring)) for c in extra)


def prune_columns(M: PolyMatrix) -> PolyMatrix:
    """Drop zero columns and columns lying in the span of the others."""
    cols = [c for c in M.columns() if any(c)]
    j = len(cols) - 1
    while j >= 0 and len(cols) > 1:
        others = cols[:j] + cols[j + 1:]
        if _span_contains(M.ring, M.nrows, others, [cols[j]]):
            cols = others
        j -= 1
    return PolyMatrix.from_columns(M.ring, cols, M.nrows)


def square_presentation(P: ModulePresentation) -> ModulePresentation:
    """Pick ``m`` columns with nonzero determinant spanning all the others."""
    M = P.relations
    m = P.ngens
    if M.ncols < m:
        raise NoRegularSquareMinor(f"{M.ncols} relations cannot present with a regular {m}x{m} minor")
    cols = M.columns()
    if M.ncols == m:
        if minor(M, list(range(m)), list(range(m))):
            return P
        raise NoRegularSquareMinor("the square relation matrix is singular")
    cache = MinorCache(M)
    for pick in combinations(range(M.ncols), m):
        if not cache.det(tuple(range(m)), pick):
            continue
        rest = [cols[j] for j in range(M.ncols) if j not in pick]
        if _span_contains(M.ring, m, [cols[j] for j in pick], rest):
            return P.with_relations(M.select_columns(pick))
    raise NoRegularSquareMinor("no square column selection is regular and spans the relations")


# ---------------------------------------------------------------------------
# Buchsbaum-Rim type map


def buchsbaum_rim_delta(psi: PolyMatrix, r: int) -> PolyMatrix:
    """Matrix of ``delta : R^{q * C(n, q)} -> R^n`` with ``q = n - r + 1``.

    The basis element ``e_i (x) e_k`` (``i`` a row of the last-``q``-row
    block ``phi``, ``k`` a ``q``-subset of columns) maps to
    ``sum_j (-1)^j d_i^{k minus k_j} e_{k_j}``, the minor taken in ``phi``
    with row ``i`` deleted."""
    n = psi.nrows
    if psi.ncols != n:
        raise BadSize("psi must be square")
    if not 2 <= r <= n:
        raise BadRange(f"r = {r} outside 2..{n}")
    q = n - r + 1
    phi_rows = list(range(r - 1, n))
    cache = MinorCache(psi)
    R = psi.ring
    cols = []
    for i in phi_rows:
        keep = tuple(x for x in phi_rows if x != i)
        for k in combinations(range(n), q):
            col = [R.zero()] * n
            for jj, kj in enumerate(k, start=1):
                rest = k[:jj - 1] + k[jj:]
                d = cache.det(keep, rest)
                col[kj] = d if jj % 2 == 0 else -d
            cols.append(col)
    return PolyMatrix.from_columns(R, cols, n)


def buchsbaum_rim_checks(psi: PolyMatrix, r: int) -> tuple[bool, bool]:
    """``(image of phi.delta == I_q(phi) R^q, psi.delta lands in I_q(psi) R^n)``."""
    n = psi.nrows
    q = n - r + 1
    delta = buchsbaum_rim_delta(psi, r)
    phi = psi.select_rows(list(range(r - 1, n)))
    img = phi * delta
    target = Submodule.ideal_times_free(minors_ideal(phi, q), q)
    first = Submodule.from_columns(psi.ring, q, img.columns()).equals(target)
    big = Submodule.ideal_times_free(minors_ideal(psi, q), n)
    second = all(big.contains(Vector.from_polys(c, psi.ring)) for c in (psi * delta).columns())
    return first, second
