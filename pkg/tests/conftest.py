"""Independent oracles: schoolbook arithmetic on coefficient lists, no tables."""

import pytest

ACCEPTANCE_LINES: list[str] = []


def bits(a):
    out = []
    while a:
        out.append(a & 1)
        a >>= 1
    return out


def unbits(coeffs):
    return sum(c << k for k, c in enumerate(coeffs))


def naive_mul(a, b, poly):
    """Schoolbook product of coefficient lists, then long division by poly."""
    A, B = bits(a), bits(b)
    prod = [0] * (len(A) + len(B))
    for s, x in enumerate(A):
        for t, y in enumerate(B):
            prod[s + t] ^= x & y
    P = bits(poly)
    deg = len(P) - 1
    for k in range(len(prod) - 1, deg - 1, -1):
        if prod[k]:
            for s, c in enumerate(P):
                prod[k - deg + s] ^= c
    return unbits(prod[:deg])


def naive_pow(a, e, field):
    """a^e by repeated schoolbook multiplication, e >= 0 reduced mod q - 1."""
    e %= field.order
    r = 1
    base = a
    while e:
        if e & 1:
            r = naive_mul(r, base, field.reduction_poly)
        base = naive_mul(base, base, field.reduction_poly)
        e >>= 1
    return r


def naive_eval(exponents, x, field):
    if x == 0:
        return 0
    acc = 0
    for e in exponents:
        acc ^= naive_pow(x, e, field)
    return acc


def brute_force_permutes(exponents, field):
    return len({naive_eval(exponents, x, field) for x in range(field.q)}) == field.q


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
