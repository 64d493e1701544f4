import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from nihoperm.construct import SparsePolynomial, as_polynomial, default_ranges, derive_exponents, enumerate_triples
from nihoperm.field import make_field
from nihoperm.verify import (
    DomainTooLarge,
    MethodInapplicable,
    VerificationReport,
    binomial_criterion,
    niho_subgroup_form,
    permutes_exhaustive,
    permutes_expsum,
    permutes_via_subgroup,
    scan_all_ones_binomials,
    triple_subgroup_form,
    verify,
)

from conftest import brute_force_permutes, naive_eval


def random_niho(rng, field, terms=3):
    """Distinct exponents e + k*(2^m - 1), the first one coprime to q - 1."""
    N, s, Q = field.order, field.sub_order, field.circle_order
    while True:
        e = rng.randrange(1, s + 1)
        ks = [rng.randrange(Q) for _ in range(terms)]
        exps = tuple((e + k * s - 1) % N + 1 for k in ks)
        if len(set(exps)) == terms and gcd(exps[0], N) == 1:
            return exps


def test_report_requires_witness_on_false():
    with pytest.raises(ValueError):
        VerificationReport("exhaustive", False)
    assert VerificationReport("exhaustive", True).as_dict()["is_permutation"]


@pytest.mark.parametrize("e, expected", [(1, True), (2, True), (3, False)])
def test_exhaustive_monomial_examples(e, expected):
    F = make_field(2)
    rep = permutes_exhaustive(lambda x: F.pow(x, e) if x else 0, F)
    assert rep.verdict is expected
    if not expected:
        w = rep.witness
        assert w["x"] < w["y"]
        assert naive_eval((3,), w["x"], F) == naive_eval((3,), w["y"], F) == w["image"]


def test_exhaustive_witness_is_first_collision():
    F = make_field(2)
    rep = permutes_exhaustive(lambda x: naive_eval((3,), x, F), F)
    imgs = [naive_eval((3,), x, F) for x in F.elements()]
    y = next(y for y in range(F.q) if imgs[y] in imgs[:y])
    assert rep.witness["y"] == y
    assert rep.witness["x"] == imgs.index(imgs[y])


def test_exhaustive_domain_limit():
    with pytest.raises(DomainTooLarge):
        permutes_exhaustive(lambda x: x, make_field(13))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_monomial_law(m):
    F = make_field(m)
    for d in range(1, F.q):
        rep = permutes_exhaustive(SparsePolynomial((d,), F), F)
        assert rep.verdict == (gcd(d, F.order) == 1), d


def test_monomial_law_n12():
    F = make_field(6)
    # random exponents plus small prime factors of 4095 and a unit
    rng = random.Random(12)
    for d in rng.sample(range(1, F.q), 60) + [3, 5, 7, 13, 4094]:
        assert permutes_exhaustive(SparsePolynomial((d,), F), F).verdict == (gcd(d, F.order) == 1)


def test_expsum_example_m2():
    F = make_field(2)
    ex = permutes_exhaustive(SparsePolynomial((4, 13, 7), F), F)
    es = permutes_expsum((4, 13, 7), F)
    assert ex.verdict and es.verdict


def test_expsum_collapsed_monomial():
    F = make_field(2)
    # the two x^4 terms cancel, leaving x^7
    assert permutes_expsum((7, 4, 4), F).verdict
    assert permutes_expsum((7,), F).verdict


def _find_niho_non_permutation(F):
    N, s = F.order, F.sub_order
    for e in range(1, N + 1):
        if gcd(e, N) != 1:
            continue
        for k2 in range(F.circle_order):
            for k3 in range(k2 + 1, F.circle_order):
                exps = (e, (e + k2 * s - 1) % N + 1, (e + k3 * s - 1) % N + 1)
                if len(set(exps)) == 3 and not brute_force_permutes(exps, F):
                    return exps
    raise AssertionError("none found")


def test_expsum_non_permutation_witness():
    F = make_field(2)
    exps = _find_niho_non_permutation(F)
    rep = permutes_expsum(exps, F)
    assert not rep.verdict
    assert rep.witness["count"] != 1
    assert 0 <= rep.witness["delta"] < F.q


def test_expsum_rejects_non_niho():
    with pytest.raises(MethodInapplicable):
        permutes_expsum((1, 2, 4), make_field(2))


def test_expsum_domain_limit():
    with pytest.raises(DomainTooLarge):
        permutes_expsum((1,), make_field(9))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_expsum_agrees_with_exhaustive_random(m):
    F = make_field(m)
    rng = random.Random(100 + m)
    verdicts = []
    for _ in range(200):
        exps = random_niho(rng, F)
        ex = permutes_exhaustive(SparsePolynomial(exps, F), F).verdict
        assert permutes_expsum(exps, F).verdict == ex, exps
        verdicts.append(ex)
    assert True in verdicts and False in verdicts


@pytest.mark.parametrize("m", [2, 3, 4])
def test_all_verifiers_agree_on_construction(m):
    F = make_field(m)
    seen = set()
    for t in enumerate_triples(m, *default_ranges(m)):
        if t.normalized in seen:
            continue
        seen.add(t.normalized)
        verdicts = {meth: verify(t, meth).verdict for meth in ("exhaustive", "expsum", "subgroup")}
        assert set(verdicts.values()) == {True}, (t, verdicts)


def test_subgroup_identity():
    F = make_field(2)
    for d in (1, 3, 5, 15):
        assert permutes_via_subgroup(1, (0,), d, F).verdict


def test_subgroup_condition_one():
    F = make_field(2)
    rep = permutes_via_subgroup(3, (0,), 5, F)  # gcd(3, 15/5) = 3
    assert not rep.verdict
    assert rep.witness == {"condition": 1, "gcd": 3}


def test_subgroup_rejects_bad_d():
    with pytest.raises(ValueError):
        permutes_via_subgroup(1, (0,), 4, make_field(2))


def test_subgroup_form_example():
    t = derive_exponents(2, 1, 2, 1)
    r, h, d = triple_subgroup_form(t)
    assert (r, d) == (4, 5)
    assert h == (0, 3, 1)
    F = t.field
    # x^r h(x^(2^m - 1)) reproduces the trinomial pointwise
    for x in range(1, F.q):
        y = F.pow(x, F.sub_order)
        hy = 0
        for e in h:
            hy ^= F.pow(y, e) if e else 1
        assert F.mul(F.pow(x, r), hy) == naive_eval(t.normalized, x, F)
    assert permutes_via_subgroup(r, h, d, F).verdict == permutes_exhaustive(as_polynomial(t), F).verdict


def test_niho_subgroup_form_rejects_non_niho():
    with pytest.raises(MethodInapplicable):
        niho_subgroup_form((1, 2), make_field(2))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_subgroup_agrees_on_random_niho(m):
    F = make_field(m)
    rng = random.Random(m)
    for _ in range(100):
        exps = random_niho(rng, F)
        assert verify(exps, "subgroup", F).verdict == permutes_exhaustive(SparsePolynomial(exps, F), F).verdict


def test_verify_unknown_method():
    with pytest.raises(ValueError):
        verify((1,), "hermite", make_field(2))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_frobenius_invariance(m):
    F = make_field(m)
    rng = random.Random(7 * m)
    for _ in range(50):
        exps = tuple(rng.randrange(1, F.q) for _ in range(3))
        doubled = tuple((2 * e - 1) % F.order + 1 for e in exps)
        a = permutes_exhaustive(SparsePolynomial(exps, F), F).verdict
        b = permutes_exhaustive(SparsePolynomial(doubled, F), F).verdict
        assert a == b


@settings(max_examples=50, deadline=None)
@given(exps=st.lists(st.integers(1, 15), min_size=1, max_size=3))
def test_exhaustive_matches_naive_oracle(exps):
    F = make_field(2)
    assert permutes_exhaustive(SparsePolynomial(exps, F), F).verdict == brute_force_permutes(exps, F)


def test_binomial_scan_n4_pair_count():
    F = make_field(2)
    pairs = [(a, b) for a in range(1, F.q) for b in range(a + 1, F.q)]
    assert len(pairs) == 105
    assert not any(brute_force_permutes(p, F) for p in pairs)
    assert scan_all_ones_binomials(F) == []


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_no_all_ones_permutation_binomials(m):
    assert scan_all_ones_binomials(make_field(m)) == []


def test_binomial_criterion_falls_back():
    F = make_field(2)
    rep = binomial_criterion(1, 5, 1, F)
    assert rep.details["path"] == "exhaustive-fallback"
    assert rep.details["reason"] == "2d does not divide q-1"
    # x (x^3 + 1) = x^4 + x
    assert rep.verdict == brute_force_permutes((4, 1), F)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_binomial_criterion_matches_exhaustive(m):
    F = make_field(m)
    rng = random.Random(m)
    divisors = [d for d in range(1, F.order + 1) if F.order % d == 0]
    for _ in range(40):
        r = rng.randrange(1, F.order)
        d = rng.choice(divisors)
        a = rng.randrange(1, F.q)
        s = F.order // d

        def f(x):
            return 0 if x == 0 else F.mul(F.pow(x, r), F.pow(x, s) ^ a)

        assert binomial_criterion(r, d, a, F).verdict == permutes_exhaustive(f, F).verdict


def test_binomial_criterion_rejects():
    F = make_field(2)
    with pytest.raises(ValueError):
        binomial_criterion(1, 5, 0, F)
    with pytest.raises(ValueError):
        binomial_criterion(1, 4, 1, F)
