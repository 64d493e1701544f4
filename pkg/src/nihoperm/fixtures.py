"""Known all-ones permutation trinomials of GF(2^(2m)), as exponent formulas in m.

Rows flagged ``from_construction`` are the ones the unit-circle construction
is credited with; the others come from the literature and serve only as
extra oracle fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True)
class TrinomialRow:
    name: str
    formula: str
    exponents: Callable[[int], tuple[int, int, int]]
    condition: Callable[[int], bool]
    condition_text: str
    from_construction: bool

    def normalized(self, m: int) -> tuple[int, int, int]:
        """Exponents reduced into [1, q - 1]; x^(q-1) is kept apart from the constant 1."""
        order = (1 << (2 * m)) - 1
        return tuple((e - 1) % order + 1 for e in self.exponents(m))


def _odd(m):
    return m % 2 == 1


def _h(m):
    return 1 << ((m + 1) // 2)


TABLE1 = [
    TrinomialRow(
        "t1", "x + x^3 + x^(2^((m+1)/2)+2)",
        lambda m: (1, 3, _h(m) + 2), _odd, "m odd", False,
    ),
    TrinomialRow(
        "t2", "x^(3*2^((m+1)/2)+4) + x^(2^((m+1)/2)+2) + x^(2^((m+1)/2))",
        lambda m: (3 * _h(m) + 4, _h(m) + 2, _h(m)), _odd, "m odd", False,
    ),
    TrinomialRow(
        "t3", "x + x^(2^((m+1)/2)-1) + x^(2^m-2^((m+1)/2)+1)",
        lambda m: (1, _h(m) - 1, (1 << m) - _h(m) + 1), _odd, "m odd", False,
    ),
    TrinomialRow(
        "t4", "x + x^3 + x^(2^m-2^((m+3)/2)+2)",
        lambda m: (1, 3, (1 << m) - (1 << ((m + 3) // 2)) + 2), _odd, "m odd", False,
    ),
    TrinomialRow(
        "t5", "x + x^(2^((m+1)/2)-1) + x^(2^m-2^(m/2)+1)",
        # 2^(m/2) is not an integer power for odd m; floor(m/2) is used
        lambda m: (1, _h(m) - 1, (1 << m) - (1 << (m // 2)) + 1), _odd, "m odd", False,
    ),
    TrinomialRow(
        "t6", "x^(2^(m/2)+4) + x^(2^(m/2+1)+3) + x^(2^(m/2+2)+1)",
        lambda m: ((1 << (m // 2)) + 4, (1 << (m // 2 + 1)) + 3, (1 << (m // 2 + 2)) + 1),
        lambda m: m % 4 == 2, "m = 2 mod 4", False,
    ),
    TrinomialRow(
        "t7", "x^5 + x^(2^(m/2)+4) + x^(5*2^(m/2))",
        lambda m: (5, (1 << (m // 2)) + 4, 5 * (1 << (m // 2))),
        lambda m: m % 8 == 4, "m = 4 mod 8", True,
    ),
    TrinomialRow(
        "t8", "x^9 + x^(8+7*2^m) + x^(9*2^m)",
        lambda m: (9, 8 + 7 * (1 << m), 9 * (1 << m)),
        lambda m: m % 4 == 2, "m = 2 mod 4", True,
    ),
]


def table1_rows(from_construction: bool | None = None) -> list[TrinomialRow]:
    if from_construction is None:
        return list(TABLE1)
    return [r for r in TABLE1 if r.from_construction == from_construction]
