"""Exact scalar arithmetic over the rationals and prime fields F_p.

Internally every module works with *raw* scalars: Python ``int`` residues in
``[0, p)`` for prime characteristic; in characteristic zero a reduced
:class:`fractions.Fraction`, or a plain ``int`` when the value is integral.
:class:`Scalar` wraps a raw value together with its
field for user-facing arithmetic where mixing fields must be caught.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RawScalar = Union[int, Fraction]


class FieldMismatchError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The coefficient field: ``char == 0`` is Q, otherwise F_char.

    ``alg_closed`` is user-declared metadata only.  It carries no
    computational content; it merely unlocks reporting Z(k[G]) as a product
    of copies of k.
    """

    char: int = 0
    alg_closed: bool = False

    def __post_init__(self):
        if not isinstance(self.char, int) or isinstance(self.char, bool):
            raise TypeError(f"characteristic must be an integer, got {self.char!r}")
        if self.char != 0 and not is_prime(self.char):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.char}")

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        if "char" not in data:
            raise KeyError("char")
        return cls(int(data["char"]), bool(data.get("alg_closed", False)))

    def to_json(self) -> dict:
        out = {"char": self.char}
        if self.alg_closed:
            out["alg_closed"] = True
        return out

    def __str__(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"

    # raw arithmetic -----------------------------------------------------
    # Characteristic 0 keeps integral values as plain ints (a Fraction with
    # denominator 1 is demoted); int and Fraction compare and hash alike.

    @property
    def zero(self) -> RawScalar:
        return 0

    @property
    def one(self) -> RawScalar:
        return 1

    def coerce(self, x) -> RawScalar:
        """Bring an int, Fraction or string like ``"3/4"`` into the field."""
        if type(x) is int:
            return x % self.char if self.char else x
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatchError("field mismatch")
            return x.value
        if isinstance(x, str):
            x = Fraction(x)
        if self.char == 0:
            return _demote(Fraction(x))
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ZeroDivisionError("division by zero")
            return x.numerator * pow(x.denominator, -1, self.char) % self.char
        return int(x) % self.char

    def add(self, a: RawScalar, b: RawScalar) -> RawScalar:
        if self.char:
            return (a + b) % self.char
        r = a + b
        return r if type(r) is int else _demote(r)

    def sub(self, a: RawScalar, b: RawScalar) -> RawScalar:
        if self.char:
            return (a - b) % self.char
        r = a - b
        return r if type(r) is int else _demote(r)

    def mul(self, a: RawScalar, b: RawScalar) -> RawScalar:
        if self.char:
            return (a * b) % self.char
        r = a * b
        return r if type(r) is int else _demote(r)

    def neg(self, a: RawScalar) -> RawScalar:
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a: RawScalar) -> RawScalar:
        if a == 0:
            raise ZeroDivisionError("division by zero")
        if self.char == 0:
            return _demote(1 / Fraction(a))
        return pow(int(a), -1, self.char)

    def is_zero(self, a: RawScalar) -> bool:
        return a == 0

    def is_coprime_to(self, n: int) -> bool:
        """True iff ``n`` is invertible in the field."""
        if n < 1:
            raise ValueError("n must be a positive integer")
        return self.char == 0 or n % self.char != 0

    def scalar(self, x) -> "Scalar":
        return Scalar(self.coerce(x), self)


RATIONALS = Field(0)


def _demote(x: Fraction) -> RawScalar:
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class Scalar:
    """A field element that knows its field; arithmetic refuses to mix fields."""

    value: RawScalar
    field: Field

    def _check(self, other) -> RawScalar:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError("field mismatch")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.add(self.value, b), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.sub(self.value, b), self.field)

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.mul(self.value, b), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def inverse(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.mul(self.value, self.field.inv(b)), self.field)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Scalar({self.value}, {self.field})"

    def __str__(self):
        return str(self.value)


def arithmetic(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Apply ``op`` in {'add', 'mul', 'neg', 'inv'} to scalars of one field."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


def format_scalar(x: RawScalar) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)
