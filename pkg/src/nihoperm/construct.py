"""Exponent triples (d1, d2, d3) whose all-ones trinomials permute GF(2^(2m)).

With Q = 2^m + 1, I = 2^i, J = 2^j the exponents are

    d1 = I/2 - J/2 + u*Q
    d2 = I/2 + J/2 + (u - J/2)*Q
    d3 = -(I/2 + J/2) + (u + I/2)*Q

and x^d1 + x^d2 + x^d3 permutes the field whenever gcd(d1, 2^(2m) - 1) = 1
(condition C1) and gcd(2^i - 2^j, Q) = 1 (condition C2).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Iterable, Iterator, Sequence

from .field import FieldSpec, make_field
from .numtheory import mod_inverse

log = logging.getLogger(__name__)


class ConstructionError(ValueError):
    pass


class ConditionC1Failed(ConstructionError):
    def __init__(self, gcd_value: int, d1: int, order: int):
        super().__init__(f"gcd(d1={d1}, {order}) = {gcd_value} != 1")
        self.gcd = gcd_value


class ConditionC2Failed(ConstructionError):
    def __init__(self, gcd_value: int, k: int, Q: int):
        super().__init__(f"gcd(2^{k} - 1, {Q}) = {gcd_value} != 1")
        self.gcd = gcd_value


class DegenerateZeroExponent(ConstructionError):
    def __init__(self, normalized: tuple[int, int, int]):
        super().__init__(f"normalized exponents {normalized} contain 0")
        self.normalized = normalized


@dataclass(frozen=True)
class ExponentTriple:
    m: int
    i: int
    j: int
    u: int
    d1: int
    d2: int
    d3: int
    nd1: int
    nd2: int
    nd3: int
    t: int
    L: int
    L1: int
    L2: int
    a: int
    degenerate_collision: bool

    @property
    def Q(self) -> int:
        return (1 << self.m) + 1

    @property
    def I(self) -> int:  # noqa: E743
        return 1 << self.i

    @property
    def J(self) -> int:
        return 1 << self.j

    @property
    def raw(self) -> tuple[int, int, int]:
        return self.d1, self.d2, self.d3

    @property
    def normalized(self) -> tuple[int, int, int]:
        return self.nd1, self.nd2, self.nd3

    @property
    def field(self) -> FieldSpec:
        return make_field(self.m)


def raw_exponents(m: int, i: int, j: int, u: int) -> tuple[int, int, int]:
    Q = (1 << m) + 1
    hi, hj = 1 << (i - 1), 1 << (j - 1)
    return (
        hi - hj + u * Q,
        hi + hj + (u - hj) * Q,
        -(hi + hj) + (u + hi) * Q,
    )


def condition_c2_gcd(m: int, i: int, j: int) -> int:
    return gcd((1 << abs(i - j)) - 1, (1 << m) + 1)


def derive_exponents(m: int, i: int, j: int, u: int) -> ExponentTriple:
    if m < 1 or i < 1 or j < 1:
        raise ValueError("m, i, j must be positive")
    if i == j:
        raise ValueError("i and j must differ")
    Q = (1 << m) + 1
    order = (1 << (2 * m)) - 1
    I, J = 1 << i, 1 << j

    g2 = condition_c2_gcd(m, i, j)
    if g2 != 1:
        raise ConditionC2Failed(g2, abs(i - j), Q)

    d1, d2, d3 = raw_exponents(m, i, j, u)
    nd = (d1 % order, d2 % order, d3 % order)
    g1 = gcd(nd[0], order)
    if g1 != 1:
        raise ConditionC1Failed(g1, d1, order)
    if 0 in nd:
        raise DegenerateZeroExponent(nd)

    t = mod_inverse(J - I, Q)
    return ExponentTriple(
        m=m, i=i, j=j, u=u,
        d1=d1, d2=d2, d3=d3,
        nd1=nd[0], nd2=nd[1], nd3=nd[2],
        t=t,
        L=t * J,
        L1=(I + J) // 2,
        L2=(I - J) // 2,
        a=mod_inverse(2 * t, Q),
        degenerate_collision=len(set(nd)) < 3,
    )


@dataclass
class EnumerationSummary:
    total: int = 0
    yielded: int = 0
    c1_failed: int = 0
    c2_failed: int = 0
    degenerate: int = 0
    # informational subsets of the counts above
    same_ij: int = 0
    zero_exponent: int = 0

    def merge(self, other: "EnumerationSummary") -> "EnumerationSummary":
        return EnumerationSummary(**{k: getattr(self, k) + getattr(other, k) for k in vars(self)})

    def as_dict(self) -> dict[str, int]:
        return dict(vars(self))


def default_ranges(m: int) -> tuple[range, range, range]:
    """i, j in [1, 2m] and u in [0, 2^m]."""
    return range(1, 2 * m + 1), range(1, 2 * m + 1), range(0, (1 << m) + 1)


def enumerate_triples(
    m: int,
    i_range: Iterable[int],
    j_range: Iterable[int],
    u_range: Iterable[int],
    summary: EnumerationSummary | None = None,
) -> Iterator[ExponentTriple]:
    """Yield every valid, non-degenerate triple over the grid.

    Rejected grid points are tallied in ``summary``; i == j counts as a C2
    failure since gcd(2^0 - 1, Q) = Q.
    """
    if summary is None:
        summary = EnumerationSummary()
    i_range, j_range, u_range = list(i_range), list(j_range), list(u_range)
    for i in i_range:
        for j in j_range:
            for u in u_range:
                summary.total += 1
                if i == j:
                    summary.c2_failed += 1
                    summary.same_ij += 1
                    continue
                try:
                    triple = derive_exponents(m, i, j, u)
                except ConditionC2Failed:
                    summary.c2_failed += 1
                    continue
                except ConditionC1Failed:
                    summary.c1_failed += 1
                    continue
                except DegenerateZeroExponent as exc:
                    log.info("m=%d i=%d j=%d u=%d: %s", m, i, j, u, exc)
                    summary.degenerate += 1
                    summary.zero_exponent += 1
                    continue
                if triple.degenerate_collision:
                    summary.degenerate += 1
                    continue
                summary.yielded += 1
                yield triple


@dataclass(frozen=True)
class SparsePolynomial:
    """Sum of monomials x^e with coefficient 1 over ``field``.

    Exponents are kept as given (after reduction mod q - 1 by the caller);
    repeated exponents cancel in pairs when evaluated.
    """

    exponents: tuple[int, ...]
    field: FieldSpec = dc_field(compare=True)
    degenerate_collision: bool = False
    _effective: tuple[int, ...] = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        exps = tuple(self.exponents)
        if not exps:
            raise ValueError("polynomial needs at least one term")
        if any(e < 1 for e in exps):
            raise ValueError("exponents must be positive (no constant terms)")
        object.__setattr__(self, "exponents", exps)
        counts = Counter(exps)
        eff = tuple(sorted(e for e, c in counts.items() if c % 2))
        object.__setattr__(self, "_effective", eff)
        if len(counts) < len(exps):
            object.__setattr__(self, "degenerate_collision", True)

    @property
    def effective_exponents(self) -> tuple[int, ...]:
        """Exponents left after characteristic-2 cancellation."""
        return self._effective

    def __call__(self, x: int) -> int:
        if x == 0:
            return 0
        F = self.field
        tables = F.tables
        if tables is None:
            acc = 0
            for e in self._effective:
                acc ^= F.pow(x, e)
            return acc
        exp, logt = tables
        order = F.order
        lx = logt[x]
        acc = 0
        for e in self._effective:
            acc ^= exp[lx * e % order]
        return acc

    def __str__(self):
        return " + ".join(f"x^{e}" for e in self.exponents)


# Alias for the three-term case.
SparseTrinomial = SparsePolynomial


def as_polynomial(triple: ExponentTriple) -> SparsePolynomial:
    return SparsePolynomial(triple.normalized, triple.field, triple.degenerate_collision)


def canonicalize(exponents: Sequence[int], field: FieldSpec) -> tuple[int, ...]:
    """Smallest sorted exponent tuple over the orbit e -> 2e mod (q - 1)."""
    order = field.order
    best = None
    for s in range(field.n):
        mult = 1 << s
        cand = tuple(sorted(e * mult % order for e in exponents))
        if best is None or cand < best:
            best = cand
    return best
