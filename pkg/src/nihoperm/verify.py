"""Permutation verifiers.

Three independent routes decide whether a sparse all-ones polynomial permutes
GF(2^n):

* ``permutes_exhaustive`` evaluates on every element with a presence bitmap;
* ``permutes_expsum`` counts solutions on the unit circle, one count per
  scaling element delta (the Walsh sum equals (N(delta) - 1) * 2^m);
* ``permutes_via_subgroup`` checks x^r h(x)^s on the order-d subgroup.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Any, Callable, Sequence

import numpy as np

from .construct import ExponentTriple, SparsePolynomial
from .field import FieldSpec

EXHAUSTIVE_MAX_N = 24
EXPSUM_MAX_M = 8
METHODS = ("exhaustive", "expsum", "subgroup")


class DomainTooLarge(ValueError):
    pass


class MethodInapplicable(ValueError):
    """The chosen criterion does not apply to this polynomial."""


@dataclass
class VerificationReport:
    method: str
    verdict: bool
    witness: Any = None
    elapsed: float = 0.0
    details: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.verdict and self.witness is None:
            raise ValueError("a negative verdict needs a witness")

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "is_permutation": self.verdict,
            "witness": self.witness,
            "elapsed": self.elapsed,
            **self.details,
        }


def permutes_exhaustive(f: Callable[[int], int], field: FieldSpec) -> VerificationReport:
    """Scan x = 0, 1, ..., q-1 and stop at the first repeated image.

    The witness is the pair (x, y), x < y, f(x) = f(y) with the smallest y.
    """
    if field.n > EXHAUSTIVE_MAX_N:
        raise DomainTooLarge(f"exhaustive check limited to n <= {EXHAUSTIVE_MAX_N}")
    start = time.perf_counter()
    q = field.q
    seen = bytearray(q)
    for y in range(q):
        img = f(y)
        if seen[img]:
            x = next(x for x in range(y) if f(x) == img)
            return VerificationReport(
                "exhaustive", False, {"x": x, "y": y, "image": img}, time.perf_counter() - start
            )
        seen[img] = 1
    return VerificationReport("exhaustive", True, None, time.perf_counter() - start)


def _as_exponents(poly, field: FieldSpec | None) -> tuple[tuple[int, ...], FieldSpec]:
    if isinstance(poly, ExponentTriple):
        return poly.normalized, poly.field
    if isinstance(poly, SparsePolynomial):
        return poly.exponents, poly.field
    if field is None:
        raise TypeError("a field is required when passing bare exponents")
    return tuple(poly), field


def _cancelled(exponents: Sequence[int], order: int) -> tuple[int, ...]:
    """Residues mod ``order`` that survive pairwise cancellation, first-seen order."""
    out: list[int] = []
    for e in exponents:
        r = e % order
        if r in out:
            out.remove(r)
        else:
            out.append(r)
    return tuple(out)


def is_niho(exponents: Sequence[int], field: FieldSpec) -> bool:
    s = field.sub_order
    return len({e % s for e in exponents}) <= 1


def permutes_expsum(poly, field: FieldSpec | None = None, *, chunk: int = 4096) -> VerificationReport:
    """Solution-count criterion over the unit circle.

    With d1 the first exponent coprime to q - 1, for each delta count the
    lambda in U with G(lambda) in GF(2^m), where
    G(lambda) = sum_k delta^(d1 - dk) lambda^dk.  The polynomial permutes
    the field iff every count is exactly 1.  delta = 0 uses 0^e = 0 for
    e != 0 mod q - 1.
    """
    exponents, field = _as_exponents(poly, field)
    if field.m > EXPSUM_MAX_M:
        raise DomainTooLarge(f"expsum check limited to m <= {EXPSUM_MAX_M}")
    if not is_niho(exponents, field):
        raise MethodInapplicable("exponents are not congruent modulo 2^m - 1")
    start = time.perf_counter()
    N = field.order
    exps = _cancelled(exponents, N)
    lead = next((e for e in exps if gcd(e, N) == 1), None)
    if lead is None:
        raise MethodInapplicable("no exponent is coprime to q - 1")
    exps = (lead,) + tuple(e for e in exps if e != lead)
    coef = [(lead - e) % N for e in exps]

    exp_t, log_t = field.tables
    expa = np.asarray(exp_t, dtype=np.int64)
    loga = np.asarray(log_t, dtype=np.int64)
    Q = field.circle_order
    # U = (2^m - 1)-th powers, so its logs are the multiples of 2^m - 1
    log_u = np.arange(Q, dtype=np.int64) * field.sub_order
    frob = np.zeros(field.q, dtype=np.int64)
    frob[1:] = expa[(loga[1:] << field.m) % N]

    def counts(log_delta: np.ndarray | None) -> np.ndarray:
        rows = 1 if log_delta is None else len(log_delta)
        g = np.zeros((rows, Q), dtype=np.int64)
        for e, c in zip(exps, coef):
            if log_delta is None:
                if c != 0:
                    continue  # 0^c = 0
                g ^= expa[(log_u * e) % N][None, :]
            else:
                g ^= expa[(log_delta[:, None] * c + log_u[None, :] * e) % N]
        return np.count_nonzero(g == frob[g], axis=1)

    zero_count = int(counts(None)[0])
    if zero_count != 1:
        return VerificationReport(
            "expsum", False, {"delta": 0, "count": zero_count}, time.perf_counter() - start
        )
    deltas = np.arange(1, field.q, dtype=np.int64)
    for lo in range(0, len(deltas), chunk):
        block = deltas[lo : lo + chunk]
        c = counts(loga[block])
        bad = np.flatnonzero(c != 1)
        if bad.size:
            k = int(bad[0])
            return VerificationReport(
                "expsum",
                False,
                {"delta": int(block[k]), "count": int(c[k])},
                time.perf_counter() - start,
            )
    return VerificationReport("expsum", True, None, time.perf_counter() - start)


def _eval_h(field: FieldSpec, h_exponents: Sequence[int], z: int) -> int:
    acc = 0
    for e in h_exponents:
        acc ^= 1 if e == 0 else field.pow(z, e)
    return acc


def permutes_via_subgroup(
    r: int, h_exponents: Sequence[int], d: int, field: FieldSpec
) -> VerificationReport:
    """Decide whether x^r h(x^((q-1)/d)) permutes the field by checking that
    gcd(r, (q-1)/d) = 1 and x^r h(x)^((q-1)/d) permutes the order-d subgroup.
    """
    order = field.order
    if d < 1 or order % d:
        raise ValueError(f"d={d} does not divide q-1={order}")
    start = time.perf_counter()
    s = order // d
    g = gcd(r, s)
    if g != 1:
        return VerificationReport(
            "subgroup", False, {"condition": 1, "gcd": g}, time.perf_counter() - start
        )
    zeta = field.pow(field.primitive_element, s)
    seen: dict[int, int] = {}
    z = 1
    for _ in range(d):
        hz = _eval_h(field, h_exponents, z)
        if hz == 0:
            return VerificationReport(
                "subgroup", False, {"condition": 2, "h_zero_at": z}, time.perf_counter() - start
            )
        img = field.mul(field.pow(z, r), field.pow(hz, s))
        if img in seen:
            return VerificationReport(
                "subgroup",
                False,
                {"condition": 2, "x": seen[img], "y": z, "image": img},
                time.perf_counter() - start,
            )
        seen[img] = z
        z = field.mul(z, zeta)
    return VerificationReport("subgroup", True, None, time.perf_counter() - start)


def niho_subgroup_form(exponents: Sequence[int], field: FieldSpec) -> tuple[int, tuple[int, ...], int]:
    """Write sum x^dk as x^r h(x^(2^m-1)) with d = 2^m + 1.

    Returns (r, h_exponents, d); h exponents are reduced modulo 2^m + 1.
    """
    if not is_niho(exponents, field):
        raise MethodInapplicable("exponents are not congruent modulo 2^m - 1")
    N, s, Q = field.order, field.sub_order, field.circle_order
    exps = [e % N for e in exponents]
    r = exps[0]
    h = tuple(((e - r) // s) % Q for e in exps)
    return r, h, Q


def triple_subgroup_form(triple: ExponentTriple) -> tuple[int, tuple[int, ...], int]:
    """x^d1 (1 + (x^(2^m-1))^(-2^(j-1)) + (x^(2^m-1))^(2^(i-1)))."""
    Q = triple.Q
    return triple.nd1, (0, -(1 << (triple.j - 1)) % Q, (1 << (triple.i - 1)) % Q), Q


def verify(poly, method: str, field: FieldSpec | None = None) -> VerificationReport:
    """Dispatch one of the three verifiers on a sparse all-ones polynomial."""
    exponents, field = _as_exponents(poly, field)
    if method == "exhaustive":
        return permutes_exhaustive(SparsePolynomial(exponents, field), field)
    if method == "expsum":
        return permutes_expsum(exponents, field)
    if method == "subgroup":
        if isinstance(poly, ExponentTriple):
            return permutes_via_subgroup(*triple_subgroup_form(poly), field)
        effective = _cancelled(exponents, field.order)
        if not effective:
            raise MethodInapplicable("polynomial cancels to zero")
        r, h, d = niho_subgroup_form(effective, field)
        return permutes_via_subgroup(r, h, d, field)
    raise ValueError(f"unknown method {method!r}")


def _binomial_conditions(r: int, d: int, a: int, field: FieldSpec) -> tuple[bool, dict]:
    """-a not in mu_d, gcd(r, (q-1)/d) = 1, gcd(2d, 2r + (q-1)/d) <= 2."""
    s = field.order // d
    neg_a = a  # -a = a in characteristic 2
    conds = {
        "minus_a_outside_mu_d": field.pow(neg_a, d) != 1,
        "gcd_r_s": gcd(r, s) == 1,
        "gcd_2d": gcd(2 * d, 2 * r + s) <= 2,
    }
    return all(conds.values()), conds


def binomial_criterion(r: int, d: int, a: int, field: FieldSpec) -> VerificationReport:
    """Permutation test for x^r (x^((q-1)/d) + a).

    The closed-form criterion needs mu_(2d) inside the field, i.e. 2d | q-1,
    which never holds when q is even; the check then falls back to
    exhaustive evaluation and says so in ``details['path']``.
    """
    order = field.order
    if d < 1 or order % d:
        raise ValueError(f"d={d} does not divide q-1={order}")
    if a == 0:
        raise ValueError("a = 0 gives a monomial, not a binomial")
    s = order // d
    if order % (2 * d) == 0:
        mu_2d_gen = field.pow(field.primitive_element, order // (2 * d))
        eta, applicable = 1, True
        for _ in range(2 * d):
            v = eta ^ field.mul(a, field.inv(eta))
            if v == 0 or field.pow(v, s) != 1:
                applicable = False
                break
            eta = field.mul(eta, mu_2d_gen)
        if applicable:
            start = time.perf_counter()
            ok, conds = _binomial_conditions(r, d, a, field)
            return VerificationReport(
                "binomial",
                ok,
                None if ok else {k: v for k, v in conds.items() if not v},
                time.perf_counter() - start,
                {"path": "criterion"},
            )
        reason = "hypothesis on mu_2d fails"
    else:
        reason = "2d does not divide q-1"

    def f(x):
        if x == 0:
            return 0
        return field.mul(field.pow(x, r), field.pow(x, s) ^ a)

    rep = permutes_exhaustive(f, field)
    rep.method = "binomial"
    rep.details = {"path": "exhaustive-fallback", "reason": reason}
    return rep


def scan_all_ones_binomials(field: FieldSpec) -> list[tuple[int, int]]:
    """All unordered pairs 1 <= e1 < e2 <= q-1 with x^e1 + x^e2 a permutation."""
    hits = []
    top = field.order
    for e1 in range(1, top + 1):
        for e2 in range(e1 + 1, top + 1):
            if permutes_exhaustive(SparsePolynomial((e1, e2), field), field).verdict:
                hits.append((e1, e2))
    return hits
