"""Exact coefficient fields.

Three kinds are supported: the rationals (values are ``gmpy2.mpq``), prime
fields (values are Python ints in ``[0, p)``) and rational function fields
over either of those (values are :class:`RationalFunction`).  Polynomials
store raw values; the field object carries the arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import re
from typing import Any

import gmpy2
from gmpy2 import mpq
from sympy.polys.domains import GF, ZZ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import ring as sympy_ring

from .errors import DivisionByZero, FieldMismatch, InputError


class Field:
    """Common interface.  Subclasses are frozen dataclasses, so equal
    descriptors compare and hash equal."""

    modulus: int | None = None
    params: tuple[str, ...] = ()

    # construction
    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def from_ratio(self, num: int, den: int):
        if den == 0:
            raise DivisionByZero("zero denominator")
        return self.div(self.from_int(num), self.from_int(den))

    # arithmetic on raw values
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def canon(self, a):
        return a

    def contains(self, a) -> bool:
        raise NotImplementedError

    # printing
    def signed_str(self, a) -> tuple[bool, str]:
        """Return ``(negative, magnitude)`` for printing a coefficient."""
        raise NotImplementedError

    def to_str(self, a) -> str:
        neg, mag = self.signed_str(a)
        return "-" + mag if neg else mag

    def descriptor(self) -> dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    def from_int(self, n: int):
        return mpq(n)

    def from_ratio(self, num: int, den: int):
        if den == 0:
            raise DivisionByZero("zero denominator")
        return mpq(num, den)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def canon(self, a):
        return mpq(a)

    def contains(self, a) -> bool:
        return isinstance(a, type(mpq(0)))

    def signed_str(self, a):
        return (a < 0, str(abs(a)))

    def descriptor(self):
        return {"kind": "QQ"}

    def __str__(self):
        return "QQ"


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p, 50))


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not (_is_prime(self.p) and self.p < 2**31):
            raise InputError(f"{self.p} is not a prime below 2^31")

    @property
    def modulus(self):  # type: ignore[override]
        return self.p

    def from_int(self, n: int):
        return int(n) % self.p

    def from_ratio(self, num: int, den: int):
        if den % self.p == 0:
            raise DivisionByZero("denominator vanishes mod p")
        return num * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def canon(self, a):
        return int(a) % self.p

    def contains(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.p

    def signed_str(self, a):
        # symmetric representative reads better (x - y rather than x + 100*y)
        if a > self.p // 2:
            return (True, str(self.p - a))
        return (False, str(a))

    def descriptor(self):
        return {"kind": "Fp", "p": self.p}

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class FunctionField(Field):
    base: Field
    params: tuple[str, ...]
    _ring: Any = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if isinstance(self.base, FunctionField):
            raise InputError("function fields nest at most one level")
        if not self.params or len(set(self.params)) != len(self.params):
            raise InputError("function field needs distinct parameter names")
        domain = ZZ if isinstance(self.base, Rationals) else GF(self.base.modulus)
        pring = sympy_ring(",".join(self.params), domain, grevlex)[0]
        object.__setattr__(self, "_ring", pring)

    @property
    def poly_ring(self):
        return self._ring

    def _make(self, num, den) -> RationalFunction:
        return RationalFunction.normalized(self, num, den)

    def from_int(self, n: int):
        R = self._ring
        return RationalFunction(self, R(int(n) % self.base.modulus if self.base.modulus else int(n)), R.one)

    def from_ratio(self, num: int, den: int):
        if self.base.modulus:
            return self.from_base(self.base.from_ratio(num, den))
        if den == 0:
            raise DivisionByZero("zero denominator")
        R = self._ring
        return self._make(R(num), R(den))

    def from_base(self, c) -> RationalFunction:
        """Embed an element of the base field."""
        R = self._ring
        if self.base.modulus:
            return RationalFunction(self, R(int(c)), R.one)
        c = mpq(c)
        return self._make(R(int(c.numerator)), R(int(c.denominator)))

    def param(self, name: str) -> RationalFunction:
        R = self._ring
        return RationalFunction(self, R.gens[self.params.index(name)], R.one)

    def from_polys(self, num, den) -> RationalFunction:
        return self._make(num, den)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        return a.inverse()

    def is_zero(self, a) -> bool:
        return not a.num

    def is_one(self, a) -> bool:
        return a.num == a.den

    def canon(self, a):
        return self._make(a.num, a.den)

    def contains(self, a) -> bool:
        return isinstance(a, RationalFunction) and a.field == self

    def signed_str(self, a):
        if a.den == self._ring.one and a.num.is_ground:
            c = self._ground_int(a.num.LC)
            return (c < 0, str(abs(c)))
        num = "(" + self.poly_str(a.num) + ")"
        if a.den == self._ring.one:
            return (False, num)
        return (False, num + "/(" + self.poly_str(a.den) + ")")

    def _ground_int(self, c) -> int:
        v = int(self._ring.domain.to_sympy(c))
        if self.base.modulus:
            v %= self.base.modulus
            if v > self.base.modulus // 2:
                v -= self.base.modulus
        return v

    def poly_str(self, f) -> str:
        """Print a parameter polynomial in the package's grammar."""
        if not f:
            return "0"
        out = []
        for exps, c in f.terms():
            v = self._ground_int(c)
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.params, exps) if e
            )
            mag = abs(v)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not out:
                out.append(("-" if v < 0 else "") + body)
            else:
                out.append((" - " if v < 0 else " + ") + body)
        return "".join(out)

    def descriptor(self):
        return {"kind": "Frac", "base": self.base.descriptor(), "params": list(self.params)}

    def __str__(self):
        return f"{self.base}({','.join(self.params)})"


class RationalFunction:
    """Reduced quotient of two parameter polynomials.

    Canonical form: numerator and denominator coprime (content included over
    the integers), denominator with positive (over ZZ) or unit (over GF(p))
    leading coefficient under grevlex.  Equality is structural.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FunctionField, num, den):
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def normalized(cls, field: FunctionField, num, den) -> RationalFunction:
        R = field.poly_ring
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return cls(field, R.zero, R.one)
        _, num, den = num.cofactors(den)
        lc = den.LC
        if field.base.modulus:
            if lc != R.domain.one:
                inv = R.domain.revert(lc)
                num, den = num.mul_ground(inv), den.mul_ground(inv)
        elif lc < 0:
            num, den = -num, -den
        return cls(field, num, den)

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return self.field.from_base(other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFunction.normalized(self.field, self.num + o.num, self.den)
        return RationalFunction.normalized(
            self.field, self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.num or not o.num:
            return self.field.zero()
        return RationalFunction.normalized(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RationalFunction.normalized(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))

    def __repr__(self):
        return self.field.to_str(self)


# ---------------------------------------------------------------------------
# descriptors and checked element wrapper


def field_from_descriptor(desc: dict) -> Field:
    kind = desc.get("kind")
    if kind == "QQ":
        return Rationals()
    if kind == "Fp":
        return PrimeField(int(desc["p"]))
    if kind == "Frac":
        return FunctionField(field_from_descriptor(desc["base"]), tuple(desc["params"]))
    raise InputError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> Field:
    """Short command-line spelling: ``QQ``, ``GF(101)``/``F101``, or a
    ``QQ(z,w)`` style function field."""
    s = text.replace(" ", "")
    m = re.fullmatch(r"(.+)\(([A-Za-z_][\w,]*)\)", s)
    if m:
        return FunctionField(parse_field(m.group(1)), tuple(m.group(2).split(",")))
    if s.upper() in ("QQ", "Q"):
        return Rationals()
    if s.upper().startswith("GF("):
        return PrimeField(int(s[3:].rstrip(")")))
    if s[:1] in "Ff" and s[1:].isdigit():
        return PrimeField(int(s[1:]))
    raise InputError(f"cannot parse field {text!r}")


@dataclass(frozen=True)
class FieldElement:
    """A value tagged with its field; mixing fields raises ``FieldMismatch``."""

    field: Field
    value: Any

    def _check(self, other: FieldElement):
        if not isinstance(other, FieldElement):
            raise FieldMismatch("operand is not a field element")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __str__(self):
        return self.field.to_str(self.value)


def field_ops(a: FieldElement, b: FieldElement, op: str):
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "eq":
        return a.value == b.value
    raise InputError(f"unknown field operation {op!r}")
