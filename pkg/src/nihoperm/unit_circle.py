"""The unit circle U = {x : x^(2^m+1) = 1} of GF(2^(2m)) and fractional maps on it."""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from math import gcd
from typing import Callable, Sequence

from .field import FieldSpec, prime_factors


class PoleError(ArithmeticError):
    """The denominator of a fraction vanishes at a point of U."""

    def __init__(self, point: int, fraction: "FractionMap"):
        super().__init__(f"{fraction} has a pole at {point:#x}")
        self.point = point
        self.fraction = fraction


@dataclass(frozen=True)
class UnitCircle:
    field: FieldSpec
    order: int
    generator: int
    elements: tuple[int, ...] = dc_field(repr=False)

    def __contains__(self, x: int) -> bool:
        return in_unit_circle(self.field, x)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order

    @functools.cached_property
    def index(self) -> dict[int, int]:
        """Element -> discrete log base ``generator``."""
        return {u: k for k, u in enumerate(self.elements)}


@functools.lru_cache(maxsize=None)
def build_unit_circle(field: FieldSpec) -> UnitCircle:
    order = field.circle_order
    gen = field.pow(field.primitive_element, field.sub_order)
    # order is checked against its proper divisors, not assumed
    for r in prime_factors(order):
        if field.pow(gen, order // r) == 1:
            raise AssertionError("unit circle generator has deficient order")
    elements = [1]
    for _ in range(order - 1):
        elements.append(field.mul(elements[-1], gen))
    if field.mul(elements[-1], gen) != 1 or len(set(elements)) != order:
        raise AssertionError("unit circle enumeration is inconsistent")
    return UnitCircle(field, order, gen, tuple(elements))


def in_unit_circle(field: FieldSpec, x: int) -> bool:
    return x != 0 and field.pow(x, field.circle_order) == 1


def _eval_sparse(field: FieldSpec, exponents: Sequence[int], x: int) -> int:
    acc = 0
    for e in exponents:
        acc ^= 1 if e == 0 else field.pow(x, e)
    return acc


def _fmt(exponents: Sequence[int]) -> str:
    terms = []
    for e in sorted(exponents, reverse=True):
        terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
    return "+".join(terms) or "0"


@dataclass(frozen=True)
class FractionMap:
    """numerator(x) / denominator(x), both sums of monomials with coefficient 1.

    Exponent 0 is the constant term 1.  Exponents may be negative; on U they
    act modulo 2^m + 1.
    """

    numerator: tuple[int, ...]
    denominator: tuple[int, ...] = (0,)

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        if not self.denominator:
            raise ValueError("denominator must have at least one term")

    def __str__(self):
        return f"({_fmt(self.numerator)})/({_fmt(self.denominator)})"


@dataclass(frozen=True)
class FractionValue:
    value: int
    in_circle: bool


def eval_fraction(f: FractionMap, U: UnitCircle, x: int) -> FractionValue:
    field = U.field
    if not in_unit_circle(field, x):
        raise ValueError(f"{x:#x} is not on the unit circle")
    den = _eval_sparse(field, f.denominator, x)
    if den == 0:
        raise PoleError(x, f)
    y = field.mul(_eval_sparse(field, f.numerator, x), field.inv(den))
    return FractionValue(y, in_unit_circle(field, y))


@dataclass
class PermutationCertificate:
    """Image table of a map on U, with the first failure if any."""

    images: dict[int, int]
    permutes: bool
    reason: str | None = None
    witness: tuple[int, ...] | None = None


def map_permutes_circle(g: Callable[[int], int], U: UnitCircle) -> PermutationCertificate:
    """Check that g maps U into U bijectively, scanning U in generator order."""
    seen: dict[int, int] = {}
    images: dict[int, int] = {}
    for u in U.elements:
        y = g(u)
        images[u] = y
        if not in_unit_circle(U.field, y):
            return PermutationCertificate(images, False, "image outside U", (u, y))
        if y in seen:
            return PermutationCertificate(images, False, "collision", (seen[y], u))
        seen[y] = u
    return PermutationCertificate(images, True)


def fraction_permutes(f: FractionMap, U: UnitCircle) -> PermutationCertificate:
    """Evaluate f on all of U; raises PoleError at the first pole."""
    return map_permutes_circle(lambda u: eval_fraction(f, U, u).value, U)


def tu_fraction(k: int) -> FractionMap:
    """(x^(2^k+1) + x^(2^k) + 1) / (x^(2^k+1) + x + 1)."""
    if k < 1:
        raise ValueError("k must be positive")
    K = 1 << k
    return FractionMap((K + 1, K, 0), (K + 1, 1, 0))


def tu_condition(m: int, k: int) -> bool:
    """gcd(2^k - 1, 2^m + 1) = 1, under which tu_fraction(k) permutes U."""
    return gcd((1 << k) - 1, (1 << m) + 1) == 1


# Predicates for the "condition" tags of the shipped fraction table.
CONDITIONS: dict[str, Callable[[int, int | None], bool]] = {
    "always": lambda m, k: True,
    "m_odd": lambda m, k: m % 2 == 1,
    "gcd3m_is_1": lambda m, k: gcd(3, m) == 1,
    "m_2_or_4_mod_6": lambda m, k: m % 6 in (2, 4),
    "gcd_2k_minus_1": lambda m, k: tu_condition(m, k),
    "gcd_2k_plus_1": lambda m, k: gcd((1 << k) + 1, (1 << m) + 1) == 1,
}


@dataclass(frozen=True)
class FractionRow:
    name: str
    condition: str
    asserted: bool
    numerator: tuple[int, ...] | None = None
    denominator: tuple[int, ...] | None = None
    family: str | None = None

    def applies(self, m: int, k: int | None = None) -> bool:
        return CONDITIONS[self.condition](m, k)

    def fraction(self, k: int | None = None) -> FractionMap:
        if self.family == "tu":
            if k is None:
                raise ValueError(f"row {self.name} needs a k")
            return tu_fraction(k)
        return FractionMap(self.numerator, self.denominator)


def load_fraction_table() -> list[FractionRow]:
    """Read the shipped fraction fixtures (data/fractions.json)."""
    text = resources.files("nihoperm").joinpath("data/fractions.json").read_text("utf-8")
    rows = []
    for raw in json.loads(text)["rows"]:
        if raw["condition"] not in CONDITIONS:
            raise ValueError(f"unknown condition tag {raw['condition']!r}")
        rows.append(
            FractionRow(
                name=raw["name"],
                condition=raw["condition"],
                asserted=raw["asserted"],
                numerator=tuple(raw["numerator"]) if raw.get("numerator") is not None else None,
                denominator=tuple(raw["denominator"]) if raw.get("denominator") is not None else None,
                family=raw.get("family"),
            )
        )
    return rows
