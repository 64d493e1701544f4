"""Compositional inverses.

For f(x) = x^r h(x^s) permuting GF(q) with s | q - 1, gcd(r, q - 1) = 1 and
h(0) != 0, let g(x) = x^r h(x)^s on mu_(q-1)/s and l its inverse there.
Then

    f^-1(x) = (x^(q-s) h(l(x^s))^(s-1))^r' * l(x^s),   r r' = 1 mod q - 1.

For the trinomials with i = j + m - 1, g on U is the monomial x^(2^(m-1) 2^(j-1)),
so l(x) = x^(r1 r2) with r1 = 1/2^(m-1) and r2 = 1/2^(j-1) modulo 2^m + 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Callable, Mapping, Sequence

import numpy as np

from .construct import (
    ConditionC1Failed,
    ConditionC2Failed,
    ExponentTriple,
    condition_c2_gcd,
    derive_exponents,
    raw_exponents,
)
from .field import FieldSpec, make_field
from .numtheory import mod_inverse
from .unit_circle import UnitCircle, map_permutes_circle
from .verify import permutes_via_subgroup

__all__ = [
    "InverseParams",
    "InversePreconditionError",
    "RoundtripReport",
    "compose_inverse",
    "interpolate",
    "inverse_on_subgroup_bruteforce",
    "inverse_params_special",
    "mod_inverse",
    "special_g",
    "theorem_inverse",
    "verify_roundtrip",
]

EXHAUSTIVE_ROUNDTRIP_MAX_N = 20


class InversePreconditionError(ValueError):
    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}")
        self.name = name


@dataclass(frozen=True)
class InverseParams:
    m: int
    j: int
    i: int
    u: int
    Q: int
    s: int
    d1: int
    r1: int
    r2: int
    r3: int
    triple: ExponentTriple

    @property
    def r_prime(self) -> int:
        """Inverse of r = d1 modulo q - 1 (equal to r3)."""
        return self.r3

    @property
    def g_inverse_exponent(self) -> int:
        return self.r1 * self.r2 % self.Q

    @property
    def h_exponents(self) -> tuple[int, int, int]:
        return (0, -(1 << (self.j - 1)), 1 << (self.i - 1))

    def as_dict(self) -> dict:
        return {
            "m": self.m, "i": self.i, "j": self.j, "u": self.u,
            "Q": self.Q, "s": self.s, "d1": self.d1,
            "exponents": list(self.triple.normalized),
            "r1": self.r1, "r2": self.r2, "r3": self.r3,
            "g_inverse_exponent": self.g_inverse_exponent,
        }


def inverse_params_special(m: int, j: int, u: int | None = None) -> InverseParams:
    """Parameters of the closed-form inverse for i = j + m - 1.

    Without ``u`` the smallest u >= 0 satisfying gcd(d1, q - 1) = 1 is used.
    Odd m always fails: gcd(2^(m-1) - 1, 2^m + 1) = 3 then.
    """
    if m < 2 or j < 1:
        raise ValueError("need m >= 2 and j >= 1")
    i = j + m - 1
    Q = (1 << m) + 1
    g2 = condition_c2_gcd(m, i, j)
    if g2 != 1:
        raise ConditionC2Failed(g2, m - 1, Q)
    if u is None:
        order = (1 << (2 * m)) - 1
        # d1 mod q-1 has period 2^m - 1 in u
        u = next(
            (v for v in range((1 << m) - 1) if gcd(raw_exponents(m, i, j, v)[0], order) == 1),
            None,
        )
        if u is None:
            d1 = raw_exponents(m, i, j, 0)[0]
            raise ConditionC1Failed(gcd(d1, order), d1, order)
    triple = derive_exponents(m, i, j, u)
    field = triple.field
    return InverseParams(
        m=m, j=j, i=i, u=u, Q=Q,
        s=field.sub_order,
        d1=triple.nd1,
        r1=mod_inverse(1 << (m - 1), Q),
        r2=mod_inverse(pow(2, j - 1, Q), Q),
        r3=mod_inverse(triple.nd1, field.order),
        triple=triple,
    )


def _eval_h(field: FieldSpec, h_exponents: Sequence[int], z: int) -> int:
    acc = 0
    for e in h_exponents:
        if e == 0:
            acc ^= 1
        elif z != 0:
            acc ^= field.pow(z, e)
    return acc


def special_g(params: InverseParams) -> Callable[[int], int]:
    """g(x) = x^d1 (1 + x^(-2^(j-1)) + x^(2^(i-1)))^(2^m - 1), as a map on U."""
    field = make_field(params.m)
    h = params.h_exponents

    def g(x):
        return field.mul(field.pow(x, params.d1), field.pow(_eval_h(field, h, x), params.s))

    return g


def inverse_on_subgroup_bruteforce(g: Callable[[int], int], U: UnitCircle) -> dict[int, int]:
    """Lookup table g(u) -> u, after confirming g permutes U."""
    cert = map_permutes_circle(g, U)
    if not cert.permutes:
        raise ValueError(f"map does not permute U: {cert.reason} at {cert.witness}")
    return {y: u for u, y in cert.images.items()}


def compose_inverse(
    r: int,
    h_exponents: Sequence[int],
    s: int,
    l: Callable[[int], int] | Mapping[int, int],
    field: FieldSpec,
) -> Callable[[int], int]:
    """Evaluator for the inverse of f(x) = x^r h(x^s); ``l`` inverts g on mu_(q-1)/s."""
    order = field.order
    if s < 1 or order % s:
        raise InversePreconditionError("s_divides", f"s={s} does not divide q-1={order}")
    if gcd(r, order) != 1:
        raise InversePreconditionError("gcd_r", f"gcd(r={r}, {order}) != 1")
    if sum(1 for e in h_exponents if e == 0) % 2 == 0:
        raise InversePreconditionError("h0_nonzero", "h has no constant term")
    if not permutes_via_subgroup(r, h_exponents, order // s, field).verdict:
        raise InversePreconditionError("f_permutes", "x^r h(x^s) is not a permutation")
    lookup = l.__getitem__ if isinstance(l, Mapping) else l
    r_prime = mod_inverse(r, order) if order > 1 else 1
    alpha_exp = field.q - s

    def finv(x: int) -> int:
        if x == 0:
            return 0
        z = lookup(field.pow(x, s))
        inner = field.mul(field.pow(x, alpha_exp), field.pow(_eval_h(field, h_exponents, z), s - 1))
        return field.mul(field.pow(inner, r_prime), z)

    return finv


def theorem_inverse(params: InverseParams) -> Callable[[int], int]:
    """Full-field inverse of x^d1 + x^d2 + x^d3 for i = j + m - 1, with l(x) = x^(r1 r2)."""
    field = make_field(params.m)
    e = params.g_inverse_exponent

    def l(x):
        return field.pow(x, e)

    return compose_inverse(params.d1, params.h_exponents, params.s, l, field)


@dataclass
class RoundtripReport:
    ok: bool
    witness: dict | None = None
    points: int = 0
    exhaustive: bool = True

    def __bool__(self):
        return self.ok


def verify_roundtrip(
    f: Callable[[int], int],
    finv: Callable[[int], int],
    field: FieldSpec,
    *,
    samples: int = 10_000,
    seed: int = 0,
    sample_only: bool = False,
) -> RoundtripReport:
    """Check f(finv(x)) = x and finv(f(x)) = x on the whole field (n <= 20)
    or on ``samples`` random points (also when ``sample_only`` is set)."""
    if field.n <= EXHAUSTIVE_ROUNDTRIP_MAX_N and not sample_only:
        points = range(field.q)
        exhaustive = True
    else:
        rng = random.Random(seed)
        points = [rng.randrange(field.q) for _ in range(samples)]
        exhaustive = False
    count = 0
    for x in points:
        count += 1
        y = f(finv(x))
        if y != x:
            return RoundtripReport(False, {"x": x, "direction": "f(finv(x))", "got": y}, count, exhaustive)
        y = finv(f(x))
        if y != x:
            return RoundtripReport(False, {"x": x, "direction": "finv(f(x))", "got": y}, count, exhaustive)
    return RoundtripReport(True, None, count, exhaustive)


def interpolate(f: Callable[[int], int], field: FieldSpec) -> list[int]:
    """Coefficients c_0..c_(q-1) of the reduced polynomial agreeing with f (n <= 12)."""
    if field.n > 12:
        raise ValueError("dense interpolation limited to n <= 12")
    exp_t, log_t = field.tables
    N = field.order
    expa = np.asarray(exp_t, dtype=np.int64)
    xs = np.arange(1, field.q)
    vals = np.array([f(int(x)) for x in xs], dtype=np.int64)
    nz = vals != 0
    lf = np.asarray(log_t, dtype=np.int64)[vals[nz]]
    lx = np.asarray(log_t, dtype=np.int64)[xs[nz]]
    coeffs = [0] * field.q
    c0 = f(0)
    coeffs[0] = c0
    total = int(np.bitwise_xor.reduce(vals)) if vals.size else 0
    coeffs[N] = total ^ c0
    for k in range(1, N):
        terms = expa[(lf - k * lx) % N]
        coeffs[k] = int(np.bitwise_xor.reduce(terms)) if terms.size else 0
    return coeffs


def eval_dense(coeffs: Sequence[int], x: int, field: FieldSpec) -> int:
    """Horner evaluation of a dense coefficient vector."""
    acc = 0
    for c in reversed(coeffs):
        acc = field.mul(acc, x) ^ c
    return acc
