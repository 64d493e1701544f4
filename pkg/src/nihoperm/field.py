"""Arithmetic in binary fields GF(2^n), n = 2m.

Elements are plain ints whose bit i is the coefficient of z^i in the
polynomial basis over the fixed reduction polynomial of the field.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

MAX_M = 16

# Used to build exp/log tables; above this size arithmetic stays bitwise.
TABLE_MAX_N = 20

# Lowest-weight irreducible per even degree: trinomial with the smallest
# middle term, otherwise the lexicographically smallest pentanomial.
IRREDUCIBLE = {
    2: 0x7,  # x^2 + x + 1
    4: 0x13,  # x^4 + x + 1
    6: 0x43,  # x^6 + x + 1
    8: 0x11B,  # x^8 + x^4 + x^3 + x + 1
    10: 0x409,  # x^10 + x^3 + 1
    12: 0x1009,  # x^12 + x^3 + 1
    14: 0x4021,  # x^14 + x^5 + 1
    16: 0x1002B,  # x^16 + x^5 + x^3 + x + 1
    18: 0x40009,  # x^18 + x^3 + 1
    20: 0x100009,  # x^20 + x^3 + 1
    22: 0x400003,  # x^22 + x + 1
    24: 0x100001B,  # x^24 + x^4 + x^3 + x + 1
    26: 0x400001B,  # x^26 + x^4 + x^3 + x + 1
    28: 0x10000003,  # x^28 + x + 1
    30: 0x40000003,  # x^30 + x + 1
    32: 0x10000008D,  # x^32 + x^7 + x^3 + x^2 + 1
}


class FieldError(ValueError):
    """Invalid field construction or undefined field operation."""


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division (n < 2^33 here)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def clmul(a: int, b: int) -> int:
    """Carryless product of two GF(2)[z] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def poly_mod(a: int, p: int) -> int:
    """Remainder of a modulo p in GF(2)[z]."""
    dp = p.bit_length()
    while a.bit_length() >= dp:
        a ^= p << (a.bit_length() - dp)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _mulmod(a: int, b: int, p: int, n: int) -> int:
    r = 0
    top = 1 << n
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= p
    return r


def is_irreducible(p: int) -> bool:
    """Rabin's test: z^(2^n) = z mod p and gcd(z^(2^(n/r)) - z, p) = 1 for primes r | n."""
    n = p.bit_length() - 1
    if n < 1:
        return False

    def frob_z(k):
        x = 2
        for _ in range(k):
            x = _mulmod(x, x, p, n)
        return x

    if n == 1:
        return True
    if frob_z(n) != 2:
        return False
    return all(poly_gcd(p, frob_z(n // r) ^ 2) == 1 for r in prime_factors(n))


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) with n = 2m, defined by an irreducible ``reduction_poly``."""

    m: int
    n: int
    reduction_poly: int

    def __post_init__(self):
        if self.n != 2 * self.m:
            raise FieldError(f"n must equal 2m, got m={self.m}, n={self.n}")
        if self.reduction_poly.bit_length() - 1 != self.n:
            raise FieldError("reduction polynomial has wrong degree")
        if not is_irreducible(self.reduction_poly):
            raise FieldError(f"{self.reduction_poly:#x} is not irreducible")

    @property
    def q(self) -> int:
        return 1 << self.n

    @property
    def order(self) -> int:
        """Size of the multiplicative group, q - 1."""
        return (1 << self.n) - 1

    @property
    def sub_order(self) -> int:
        """2^m - 1, order of the multiplicative group of GF(2^m)."""
        return (1 << self.m) - 1

    @property
    def circle_order(self) -> int:
        """2^m + 1, order of the unit circle U."""
        return (1 << self.m) + 1

    def __repr__(self):
        return f"FieldSpec(m={self.m}, n={self.n}, reduction_poly={self.reduction_poly:#x})"

    def elements(self) -> range:
        return range(self.q)

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        tables = self.tables
        if tables is None:
            return _mulmod(a, b, self.reduction_poly, self.n)
        if a == 0 or b == 0:
            return 0
        exp, log = tables
        return exp[(log[a] + log[b]) % self.order]

    def mul_bitwise(self, a: int, b: int) -> int:
        """Shift-and-add product with interleaved reduction; never uses tables."""
        return _mulmod(a, b, self.reduction_poly, self.n)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def normalize_exponent(self, e: int) -> int:
        return e % self.order

    def pow(self, a: int, e: int) -> int:
        """a**e with e reduced modulo q - 1; 0**e is 0 unless e = 0 mod q - 1."""
        e %= self.order
        if a == 0:
            if e == 0:
                raise FieldError("0 raised to an exponent divisible by q-1 is undefined")
            return 0
        tables = self.tables
        if tables is not None:
            exp, log = tables
            return exp[log[a] * e % self.order]
        return self.pow_sqmul(a, e)

    def pow_sqmul(self, a: int, e: int) -> int:
        """Square-and-multiply power for a != 0, independent of the tables."""
        if a == 0:
            raise FieldError("pow_sqmul expects a nonzero base")
        e %= self.order
        r = 1
        while e:
            if e & 1:
                r = self.mul_bitwise(r, a)
            a = self.mul_bitwise(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^n)")
        return self.pow(a, self.order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(2^k)."""
        for _ in range(k % self.n):
            a = self.mul(a, a)
        return a

    def trace(self, a: int) -> int:
        """Absolute trace a + a^2 + ... + a^(2^(n-1)), returned as 0 or 1."""
        t = 0
        x = a
        for _ in range(self.n):
            t ^= x
            x = self.mul(x, x)
        if t not in (0, 1):
            raise AssertionError(f"trace landed outside GF(2): {t}")
        return t

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        k = self.order
        for r in prime_factors(self.order):
            while k % r == 0 and self.pow_sqmul(a, k // r) == 1:
                k //= r
        return k

    @functools.cached_property
    def primitive_element(self) -> int:
        """Smallest element, by bit pattern, generating the multiplicative group."""
        order = self.order
        factors = prime_factors(order)
        for g in range(2, self.q):
            if all(self.pow_sqmul(g, order // r) != 1 for r in factors):
                return g
        return 1  # GF(2) only; unreachable for n >= 2

    @functools.cached_property
    def tables(self) -> tuple[list[int], list[int]] | None:
        """(exp, log) tables w.r.t. the primitive element, or None for large n.

        exp has length q - 1; log[0] is a sentinel and must not be used.
        """
        if self.n > TABLE_MAX_N:
            return None
        g = self.primitive_element
        order = self.order
        exp = [0] * order
        log = [0] * self.q
        x = 1
        if g == 2:
            top, p = self.q, self.reduction_poly
            for k in range(order):
                exp[k] = x
                log[x] = k
                x <<= 1
                if x & top:
                    x ^= p
        else:
            for k in range(order):
                exp[k] = x
                log[x] = k
                x = self.mul_bitwise(x, g)
        if x != 1:
            raise AssertionError("primitive element does not have full order")
        return exp, log


@functools.lru_cache(maxsize=None)
def make_field(m: int) -> FieldSpec:
    """GF(2^(2m)) over the built-in low-weight irreducible of degree 2m."""
    if not isinstance(m, int) or not 1 <= m <= MAX_M:
        raise FieldError(f"m must be an integer in [1, {MAX_M}], got {m!r}")
    n = 2 * m
    try:
        return FieldSpec(m=m, n=n, reduction_poly=IRREDUCIBLE[n])
    except FieldError as exc:
        raise FieldError(f"built-in table entry for degree {n} is corrupted: {exc}") from exc
