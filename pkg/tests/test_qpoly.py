import random
from fractions import Fraction

import pytest

from qcongruence.qpoly import (
    BothZero,
    DivisionByZeroPoly,
    UPoly,
    cyclotomic,
    div_binomial,
    divisible_by_cyclo_power,
    divrem,
    divisors,
    euler_phi,
    exact_div,
    mobius,
    poly_gcd,
    q_integer,
    reduce_mod_cyclo_power,
)


def P(*coeffs):
    return UPoly(coeffs)


def rand_poly(rng, deg, lo=-9, hi=9):
    return UPoly([rng.randint(lo, hi) for _ in range(deg + 1)])


def test_ring_basics():
    a = P(1, 2, 3)
    b = P(0, -1)
    assert a + b == P(1, 1, 3)
    assert a - a == UPoly()
    assert a * UPoly() == UPoly()
    assert (a * b).c == [0, -1, -2, -3]
    assert -b == P(0, 1)
    assert P(0, 0, 0) == UPoly()


def test_mul_matches_schoolbook_random():
    rng = random.Random(7)
    for _ in range(30):
        a = rand_poly(rng, rng.randint(0, 12))
        b = rand_poly(rng, rng.randint(0, 12))
        expected = [0] * (a.degree + b.degree + 2)
        for i, x in enumerate(a.c):
            for j, y in enumerate(b.c):
                expected[i + j] += x * y
        assert (a * b) == UPoly(expected)


def test_cyclotomic_small():
    assert cyclotomic(1) == P(-1, 1)
    assert cyclotomic(2) == P(1, 1)
    assert cyclotomic(6) == P(1, -1, 1)
    # derived by dividing (q^12-1)(q^2-1) by (q^6-1)(q^4-1)
    num = P(*([-1] + [0] * 11 + [1])) * P(-1, 0, 1)
    den = P(*([-1] + [0] * 5 + [1])) * P(*([-1] + [0] * 3 + [1]))
    assert cyclotomic(12) == exact_div(num, den)
    assert cyclotomic(12) == P(1, 0, -1, 0, 1)


def test_cyclotomic_value_at_one():
    # Phi_n(1) = p for prime powers n = p^s, else 1 (n > 1)
    for n in range(2, 101):
        val = cyclotomic(n).evaluate(1)
        facs = {p for p in range(2, n + 1) if n % p == 0 and mobius(p) == -1}
        primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % r for r in range(2, p))]
        if len(primes) == 1:
            assert val == primes[0]
        else:
            assert val == 1
        assert facs is not None  # silence lint on helper


def test_cyclotomic_product_is_q_integer():
    for n in range(1, 101):
        prod = UPoly([1])
        for d in divisors(n):
            if d > 1:
                prod = prod * cyclotomic(d)
        assert prod == q_integer(n)


def test_q_integer():
    assert q_integer(0) == UPoly()
    assert q_integer(1) == P(1)
    assert q_integer(5) == P(1, 1, 1, 1, 1)
    assert q_integer(5).evaluate(1) == 5


def test_divrem_examples():
    q_, r = divrem(P(-1, 0, 1), P(-1, 1))
    assert q_ == P(1, 1) and r == UPoly()
    q_, r = divrem(P(0, 0, 0, 1), P(1, 0, 1))
    assert q_ == P(0, 1) and r == P(0, -1)
    q_, r = divrem(P(5), P(1, 1))
    assert q_ == UPoly() and r == P(5)
    with pytest.raises(DivisionByZeroPoly):
        divrem(P(1), UPoly())


def test_divrem_reconstruction_random():
    rng = random.Random(11)
    for _ in range(50):
        a = rand_poly(rng, rng.randint(0, 15))
        b = rand_poly(rng, rng.randint(0, 8))
        if b.is_zero():
            continue
        q_, r = divrem(a, b)
        assert b * q_ + r == a
        assert r.degree < b.degree


def test_div_binomial_matches_divrem():
    rng = random.Random(13)
    for _ in range(40):
        quot = rand_poly(rng, rng.randint(0, 20))
        c = rng.choice([1, -1, 2, Fraction(1, 3)])
        t = rng.randint(1, 4)
        binom = UPoly([1] + [0] * (t - 1) + [-c])
        prod = quot * binom
        assert div_binomial(prod, c, t) == quot


def test_gcd_examples():
    assert poly_gcd(P(-1, 0, 1), P(-1, 0, 0, 1)) == P(-1, 1)
    assert poly_gcd(cyclotomic(5), cyclotomic(7)) == UPoly([1])
    a = P(*([-1] + [0] * 3 + [1]))  # q^4 - 1
    b = P(*([-1] + [0] * 5 + [1]))  # q^6 - 1
    assert poly_gcd(a, b) == P(-1, 0, 1)
    with pytest.raises(BothZero):
        poly_gcd(UPoly(), UPoly())


def test_gcd_divides_both_random():
    rng = random.Random(17)
    for _ in range(25):
        g = rand_poly(rng, rng.randint(0, 4))
        if g.is_zero():
            g = P(1, 1)
        a = g * rand_poly(rng, rng.randint(0, 5))
        b = g * rand_poly(rng, rng.randint(0, 5))
        if a.is_zero() and b.is_zero():
            continue
        h = poly_gcd(a, b)
        if not a.is_zero():
            assert divrem(a, h)[1].is_zero()
        if not b.is_zero():
            assert divrem(b, h)[1].is_zero()
        # gcd must be divisible by the planted common factor
        assert divrem(h, poly_gcd(g, g))[1].is_zero()


def test_evaluate():
    assert q_integer(5).evaluate(1) == 5
    assert cyclotomic(6).evaluate(2) == 3
    assert UPoly().evaluate(Fraction(3, 2)) == 0
    assert P(1, 2).evaluate(Fraction(1, 2)) == 2


def test_reduce_mod_cyclo_power_agrees_with_divrem():
    rng = random.Random(19)
    for d in (1, 2, 3, 5, 6, 12):
        mod = cyclotomic(d)
        for e in (1, 2, 3):
            m = mod**e
            for _ in range(8):
                a = rand_poly(rng, rng.randint(0, 60))
                assert reduce_mod_cyclo_power(a, d, e) == divrem(a, m)[1]


def test_divisible_by_cyclo_power():
    a = cyclotomic(5) ** 3 * P(2, 0, 1)
    assert divisible_by_cyclo_power(a, 5, 3)
    assert not divisible_by_cyclo_power(a, 5, 4)
    assert divisible_by_cyclo_power(a, 5, 1)
    assert not divisible_by_cyclo_power(a, 7, 1)


def test_phi_n_of_minus_q_is_phi_2n():
    # for odd n > 1, Phi_n(-q) = +-Phi_{2n}(q)
    for n in range(3, 32, 2):
        phi_n = cyclotomic(n)
        neg = UPoly([(-1) ** i * c for i, c in enumerate(phi_n.c)])
        phi_2n = cyclotomic(2 * n)
        assert neg == phi_2n or neg == -phi_2n


def test_euler_phi_degree():
    for n in range(1, 60):
        assert cyclotomic(n).degree == euler_phi(n)
