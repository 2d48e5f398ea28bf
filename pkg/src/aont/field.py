"""Arithmetic in prime fields GF(p) and binary extension fields GF(2^r).

Elements are handled as plain ints by the :class:`FiniteField` methods (the
fast path used by matrix code); :class:`FieldElement` wraps an int with its
field for operator syntax.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadResidueClass, DivisionByZero, FieldMismatch, NotPrime, ParseError
from .gf2 import _clmul, _divmod

# Default irreducible (in fact primitive) moduli for GF(2^r), as coefficient bit-vectors.
DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_gf2(poly: int) -> bool:
    """True iff ``poly`` (bit-vector, degree r >= 1) has no factor of degree <= r/2."""
    r = poly.bit_length() - 1
    if r < 1:
        return False
    for d in range(1, r // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if _divmod(poly, f)[1] == 0:
                return False
    return True


class FiniteField:
    """GF(p) for prime ``p``, or GF(2^r) with a given irreducible modulus."""

    def __init__(self, characteristic: int, degree: int = 1, modulus: int | None = None):
        if not is_prime(characteristic):
            raise NotPrime(f"{characteristic} is not prime")
        if degree < 1:
            raise ValueError("extension degree must be >= 1")
        if degree > 1 and characteristic != 2:
            raise ValueError("only binary extension fields are supported")
        self.characteristic = characteristic
        self.degree = degree
        self.order = characteristic ** degree
        self.modulus = None
        if degree > 1:
            if modulus is None:
                if degree not in DEFAULT_MODULI:
                    raise ValueError(f"no default modulus for GF(2^{degree})")
                modulus = DEFAULT_MODULI[degree]
            if modulus.bit_length() - 1 != degree:
                raise ValueError(f"modulus degree must be {degree}")
            if not is_irreducible_gf2(modulus):
                raise ValueError(f"modulus {bin(modulus)} is reducible")
            self.modulus = modulus

    @classmethod
    def from_spec(cls, spec: str) -> "FiniteField":
        """Parse ``"p:<prime>"`` or ``"2^<r>[:<modulus-bits>]"``.

        Modulus bits are written lowest degree first, like polynomial bit-strings.
        """
        spec = spec.strip()
        m = re.fullmatch(r"p:(\d+)", spec)
        if m:
            return cls(int(m.group(1)))
        m = re.fullmatch(r"2\^(\d+)(?::([01]+))?", spec)
        if m:
            r = int(m.group(1))
            modulus = None
            if m.group(2):
                modulus = sum(1 << i for i, c in enumerate(m.group(2)) if c == "1")
            return cls(2, r, modulus)
        raise ParseError(f"bad field spec {spec!r}")

    def __eq__(self, other):
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.characteristic, self.degree, self.modulus) == (
            other.characteristic, other.degree, other.modulus)

    def __hash__(self):
        return hash((self.characteristic, self.degree, self.modulus))

    def __repr__(self):
        if self.degree == 1:
            return f"FiniteField(p:{self.characteristic})"
        return f"FiniteField(2^{self.degree}, modulus={bin(self.modulus)})"

    # int-level arithmetic

    def add(self, a: int, b: int) -> int:
        if self.degree > 1:
            return a ^ b
        return (a + b) % self.characteristic

    def neg(self, a: int) -> int:
        if self.degree > 1:
            return a
        return (-a) % self.characteristic

    def sub(self, a: int, b: int) -> int:
        if self.degree > 1:
            return a ^ b
        return (a - b) % self.characteristic

    def mul(self, a: int, b: int) -> int:
        if self.degree > 1:
            return _divmod(_clmul(a, b), self.modulus)[1]
        return (a * b) % self.characteristic

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.degree == 1:
            return pow(a, e, self.characteristic)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        if self.degree == 1:
            return pow(a, -1, self.characteristic)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        return range(self.order)

    def element(self, value: int) -> "FieldElement":
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not a canonical element of {self!r}")
        return FieldElement(self, value)

    def __call__(self, value: int) -> "FieldElement":
        if self.degree == 1:
            value %= self.characteristic
        return self.element(value)

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.order - 1
        order = n
        for q in prime_factors(n):
            while order % q == 0 and self.pow(a, order // q) == 1:
                order //= q
        return order


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    value: int

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field(other).value
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._check(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._check(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._check(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._check(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._check(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def field_add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def field_sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def field_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def field_inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def field_div(x: FieldElement, y: FieldElement) -> FieldElement:
    return x / y


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest positive integer generating the multiplicative group mod ``p``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable: every prime field has a generator")


def primitive_element(p: int) -> FieldElement:
    return FieldElement(FiniteField(p), primitive_root(p))


def two_squares_decomposition(p: int, nu: int, f: int | None = None) -> tuple[int, int]:
    """``(alpha, beta)`` with ``alpha^2 + beta^2 = p``, ``alpha = 1 mod 4`` and
    ``nu^f = alpha / beta (mod p)``, where ``f = (p - 1) / 4``.

    Brute force over ``|alpha| <= sqrt(p)``; fine for desk-scale primes.
    """
    if p % 4 != 1 or not is_prime(p):
        raise BadResidueClass(f"{p} is not a prime congruent to 1 mod 4")
    if f is None:
        f = (p - 1) // 4
    if f != (p - 1) // 4:
        raise ValueError(f"f must be (p-1)/4 = {(p - 1) // 4}")
    target = pow(nu, f, p)
    root = math.isqrt(p)
    for alpha in range(-root, root + 1):
        if alpha % 4 != 1:
            continue
        rest = p - alpha * alpha
        beta = math.isqrt(rest)
        if beta * beta != rest or beta == 0:
            continue
        for b in (beta, -beta):
            if (alpha - target * b) % p == 0:
                return alpha, b
    raise BadResidueClass(f"no admissible (alpha, beta) for p={p}, nu={nu}")
