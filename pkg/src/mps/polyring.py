"""Polynomial rings, monomial orders, sparse polynomials and the parser.

A polynomial is a dict ``{exponent tuple: coefficient}`` wrapped in
:class:`Poly`.  Monomial orders are realised as sort keys: a larger key means
a larger monomial, so ``max(terms, key=ring.key)`` is the leading term.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DivisionByZero,
    InputError,
    LengthMismatch,
    PolySyntaxError,
    RingMismatch,
    UnknownVariable,
)
from .fields import Field, Rationals, field_from_descriptor

# ---------------------------------------------------------------------------
# monomial orders


def _lex_key(exp):
    return exp


def _grevlex_key(exp):
    return (sum(exp),) + tuple(-e for e in reversed(exp))


_INNER = {"lex": _lex_key, "grevlex": _grevlex_key}


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or a block order.

    For a block order ``blocks`` holds tuples of variable positions; the
    monomial keys of the blocks are concatenated, so earlier blocks dominate.
    """

    kind: str = "grevlex"
    blocks: tuple[tuple[int, ...], ...] = ()
    inner: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise InputError(f"unknown monomial order {self.kind!r}")
        if self.inner not in _INNER:
            raise InputError(f"unknown inner order {self.inner!r}")

    def key_function(self, nvars: int):
        if self.kind != "block":
            return _INNER[self.kind]
        flat = sorted(i for b in self.blocks for i in b)
        if flat != list(range(nvars)):
            raise InputError("block order must partition the variables")
        inner = _INNER[self.inner]
        blocks = self.blocks

        def key(exp):
            out = ()
            for b in blocks:
                out += inner(tuple(exp[i] for i in b))
            return out

        return key

    def compare(self, m1: Sequence[int], m2: Sequence[int]) -> str:
        """Return ``"LT"``, ``"EQ"`` or ``"GT"``."""
        if len(m1) != len(m2):
            raise LengthMismatch(f"{len(m1)} vs {len(m2)}")
        key = self.key_function(len(m1))
        k1, k2 = key(tuple(m1)), key(tuple(m2))
        return "LT" if k1 < k2 else ("GT" if k1 > k2 else "EQ")


def order_compare(m1, m2, order: MonomialOrder) -> str:
    return order.compare(m1, m2)


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class Ring:
    field: Field
    vars: tuple[str, ...]
    order: MonomialOrder = GREVLEX
    _cache: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.vars:
            raise InputError("a ring needs at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise InputError("duplicate variable names")
        if set(self.vars) & set(self.field.params):
            raise InputError("variables clash with field parameters")
        for v in self.vars:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise InputError(f"bad variable name {v!r}")
        object.__setattr__(self, "_keyfn", self.order.key_function(len(self.vars)))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def key(self, exp):
        k = self._cache.get(exp)
        if k is None:
            k = self._cache[exp] = self._keyfn(exp)
        return k

    def with_order(self, order: MonomialOrder) -> Ring:
        return Ring(self.field, self.vars, order)

    def with_field(self, field: Field) -> Ring:
        return Ring(field, self.vars, self.order)

    def block_order(self, first: Iterable[str], inner: str = "grevlex") -> Ring:
        """Same variables, block order with ``first`` leading."""
        first = [v for v in self.vars if v in set(first)]
        rest = [v for v in self.vars if v not in set(first)]
        blocks = tuple(
            tuple(self.vars.index(v) for v in b) for b in (first, rest) if b
        )
        return Ring(self.field, self.vars, MonomialOrder("block", blocks, inner))

    def extend(self, new_vars: Sequence[str], front: bool = True, order: MonomialOrder | None = None) -> Ring:
        """Ring with extra variables; by default they form a leading block."""
        names = tuple(new_vars) + self.vars if front else self.vars + tuple(new_vars)
        if order is None:
            k = len(new_vars)
            if front:
                blocks = (tuple(range(k)), tuple(range(k, len(names))))
            else:
                n = self.nvars
                blocks = (tuple(range(n, len(names))), tuple(range(n)))
            order = MonomialOrder("block", blocks, "grevlex")
        return Ring(self.field, names, order)

    # element constructors
    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c) -> Poly:
        F = self.field
        if isinstance(c, int):
            c = F.from_int(c)
        if F.is_zero(c):
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> Poly:
        i = self.vars.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {exp: self.field.one()})

    def gens(self) -> list[Poly]:
        return [self.var(v) for v in self.vars]

    def monomial(self, exp, c=None) -> Poly:
        if c is not None and self.field.is_zero(c):
            return Poly(self, {})
        return Poly(self, {tuple(exp): self.field.one() if c is None else c})

    def parse(self, text: str) -> Poly:
        return parse_polynomial(text, self)

    def __call__(self, x) -> Poly:
        if isinstance(x, Poly):
            if x.ring == self:
                return x
            return x.change_ring(self)
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def descriptor(self) -> dict:
        d = {"field": self.field.descriptor(), "vars": list(self.vars)}
        o = self.order
        if o.kind == "block":
            d["order"] = {
                "block": [[self.vars[i] for i in b] for b in o.blocks],
                "inner": o.inner,
            }
        else:
            d["order"] = o.kind
        return d

    def __str__(self):
        return f"{self.field}[{','.join(self.vars)}]"


def ring_from_descriptor(desc: Mapping) -> Ring:
    field = field_from_descriptor(desc.get("field", {"kind": "QQ"}))
    names = tuple(desc["vars"])
    o = desc.get("order", "grevlex")
    if isinstance(o, str):
        order = MonomialOrder(o)
    else:
        blocks = tuple(tuple(names.index(v) for v in b) for b in o["block"])
        order = MonomialOrder("block", blocks, o.get("inner", "grevlex"))
    return Ring(field, names, order)


def make_ring(vars: str | Sequence[str], field: Field | None = None, order: str = "grevlex") -> Ring:
    """Convenience: ``make_ring("x,y,z")``."""
    if isinstance(vars, str):
        vars = [v.strip() for v in vars.split(",") if v.strip()]
    return Ring(field or Rationals(), tuple(vars), MonomialOrder(order))


# ---------------------------------------------------------------------------
# polynomials


def _add_exp(a, b):
    return tuple(map(operator.add, a, b))


class Poly:
    """Sparse polynomial; treat instances as immutable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def sorted_terms(self) -> list:
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lm(self) -> tuple:
        key = self.ring.key
        return max(self.terms, key=key)

    def lc(self):
        return self.terms[self.lm()]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.ring.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(v for v, k in zip(self.ring.vars, e) if k)
        return used

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # arithmetic
    def _check(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, str):
            return self.ring.parse(other)
        return self.ring.const(other)

    def __add__(self, other):
        other = self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = F.add(v, c)
                if F.is_zero(v):
                    del out[e]
                else:
                    out[e] = v
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> Poly:
        F = self.ring.field
        if F.is_zero(c):
            return Poly(self.ring, {})
        return Poly(self.ring, {e: F.mul(v, c) for e, v in self.terms.items()})

    def mul_term(self, exp, c) -> Poly:
        F = self.ring.field
        return Poly(self.ring, {_add_exp(e, exp): F.mul(v, c) for e, v in self.terms.items()})

    def __mul__(self, other):
        other = self._check(other)
        if not self.terms or not other.terms:
            return Poly(self.ring, {})
        F = self.ring.field
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        p = F.modulus
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = _add_exp(ea, eb)
                v = ca * cb
                old = out.get(e)
                out[e] = v if old is None else old + v
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if not F.is_zero(c)}
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self) -> Poly:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, str)):
            return self == self._check(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.vars, frozenset(self.terms.items())))
        return self._hash

    # substitution and ring changes
    def substitute(self, images: Mapping[str, Poly], target: Ring | None = None) -> Poly:
        """Ring map sending each variable to ``images[var]`` (identity if the
        name is absent and exists in the target)."""
        if target is None:
            first = next(iter(images.values()), None)
            target = first.ring if isinstance(first, Poly) else self.ring
        vals = []
        for v in self.ring.vars:
            if v in images:
                vals.append(target(images[v]))
            else:
                vals.append(target.var(v))
        F = target.field
        result = target.zero()
        powers: dict = {}
        for e, c in self.terms.items():
            t = target.const(_convert_coeff(c, self.ring.field, F))
            for i, k in enumerate(e):
                if k:
                    pk = powers.get((i, k))
                    if pk is None:
                        pk = powers[(i, k)] = vals[i] ** k
                    t = t * pk
            result = result + t
        return result

    def change_ring(self, target: Ring) -> Poly:
        """Re-express in a ring sharing variable names (any order/superset)."""
        if target == self.ring:
            return self
        pos = {v: i for i, v in enumerate(target.vars)}
        idx = [pos.get(v) for v in self.ring.vars]
        F = target.field
        out = {}
        n = target.nvars
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise RingMismatch(f"variable {self.ring.vars[i]} missing in {target}")
                    ne[idx[i]] = k
            out[tuple(ne)] = _convert_coeff(c, self.ring.field, F)
        return Poly(target, out)

    def derivative(self, var: str) -> Poly:
        i = self.ring.vars.index(var)
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                v = F.mul(c, F.from_int(e[i]))
                if not F.is_zero(v):
                    out[ne] = v
        return Poly(self.ring, out)

    def evaluate(self, point: Mapping[str, object]) -> Poly:
        """Substitute field constants for some variables."""
        images = {v: self.ring.const(c) for v, c in point.items()}
        return self.substitute(images, self.ring)

    # printing
    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"Poly({poly_to_str(self)!r})"


def _convert_coeff(c, src: Field, dst: Field):
    if src == dst:
        return c
    if dst.params and not src.params:
        # base field into a function field
        return dst.from_base(c)
    if src.modulus is None and dst.modulus is None and not src.params and not dst.params:
        return c
    raise RingMismatch(f"cannot convert coefficients from {src} to {dst}")


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InputError(f"unknown operation {op!r}")


def monomial_str(exp, names) -> str:
    return "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k)


def poly_to_str(f: Poly) -> str:
    if not f.terms:
        return "0"
    F = f.ring.field
    names = f.ring.vars
    parts = []
    for e, c in f.sorted_terms():
        neg, mag = F.signed_str(c)
        mono = monomial_str(e, names)
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# free module elements


class Vector:
    """Element of a free module ``R^rank``: dict ``{(comp, exp): coeff}``."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring: Ring, rank: int, terms: dict):
        self.ring = ring
        self.rank = rank
        self.terms = terms

    @classmethod
    def from_polys(cls, polys: Sequence[Poly], ring: Ring | None = None) -> Vector:
        ring = ring or polys[0].ring
        terms = {}
        for i, f in enumerate(polys):
            f = ring(f)
            for e, c in f.terms.items():
                terms[(i, e)] = c
        return cls(ring, len(polys), terms)

    @classmethod
    def unit(cls, ring: Ring, rank: int, i: int) -> Vector:
        return cls(ring, rank, {(i, (0,) * ring.nvars): ring.field.one()})

    def component(self, i: int) -> Poly:
        return Poly(self.ring, {e: c for (k, e), c in self.terms.items() if k == i})

    def to_polys(self) -> list[Poly]:
        out = [dict() for _ in range(self.rank)]
        for (k, e), c in self.terms.items():
            out[k][e] = c
        return [Poly(self.ring, d) for d in out]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Vector)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __add__(self, other: Vector) -> Vector:
        return Vector.from_polys([a + b for a, b in zip(self.to_polys(), other.to_polys())], self.ring)

    def __sub__(self, other: Vector) -> Vector:
        return Vector.from_polys([a - b for a, b in zip(self.to_polys(), other.to_polys())], self.ring)

    def scale(self, f: Poly) -> Vector:
        return Vector.from_polys([f * a for a in self.to_polys()], self.ring)

    def dot(self, gens: Sequence[Poly]) -> Poly:
        """Contract against a list of ring elements."""
        total = self.ring.zero()
        for a, g in zip(self.to_polys(), gens):
            if a:
                total = total + a * g
        return total

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.to_polys()) + ")"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
            start = m.start(m.lastindex)
            kind = ("int", "name", "op")[m.lastindex - 1]
            value = m.group(m.lastindex)
            if value == "**":
                value = "^"
            self.tokens.append((kind, value, start))
            pos = m.end()
        self.i = 0
        self.end = len(text)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", None, self.end)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolySyntaxError("empty expression", 0)
        result = self.expr()
        kind, value, pos = self.peek()
        if kind != "eof":
            raise PolySyntaxError(f"unexpected token {value!r}", pos)
        return result

    def expr(self) -> Poly:
        kind, value, _ = self.peek()
        sign = 1
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                t = self.term()
                result = result + t if value == "+" else result - t
            else:
                return result

    def term(self) -> Poly:
        result = self.factor()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.factor()
            elif kind == "op" and value == "/":
                self.take()
                _, _, dpos = self.peek()
                d = self.factor()
                if not d.is_constant():
                    raise PolySyntaxError("division by a non-constant", dpos)
                if d.is_zero():
                    raise DivisionByZero(f"division by zero at position {dpos}")
                result = result.scale(self.ring.field.inv(d.constant_term()))
            else:
                return result

    def factor(self) -> Poly:
        base = self.atom()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value == "^":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise PolySyntaxError("exponent must be a nonnegative integer", p2)
                base = base ** int(v2)
            else:
                return base

    def atom(self) -> Poly:
        kind, value, pos = self.take()
        ring = self.ring
        if kind == "int":
            return ring.const(ring.field.from_int(int(value)))
        if kind == "name":
            if value in ring.vars:
                return ring.var(value)
            if value in ring.field.params:
                return ring.const(ring.field.param(value))
            raise UnknownVariable(value, pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            k2, v2, p2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise PolySyntaxError("expected ')'", p2)
            return inner
        if kind == "op" and value == "-":
            # unary minus inside a product, e.g. "x*-y"
            return -self.factor()
        if kind == "eof":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected token {value!r}", pos)


def parse_polynomial(text: str, ring: Ring) -> Poly:
    return _Parser(text, ring).parse()


def parse_many(texts: Iterable[str], ring: Ring) -> list[Poly]:
    return [parse_polynomial(t, ring) for t in texts]
