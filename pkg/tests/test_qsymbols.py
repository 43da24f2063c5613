from fractions import Fraction
from math import comb

import pytest

from qcongruence.qpoly import UPoly, ONE, cyclotomic, exact_div
from qcongruence.ratfun import APoly, RatFun
from qcongruence.qsymbols import (
    NotFiniteError,
    PochSpec,
    QFrac,
    QProduct,
    cyclotomic_factors_of_binomial,
    expand_binomial_times_cyclotomics,
    one_minus,
    poch,
    poch_f,
    q_bracket,
    qbinomial,
    sum_qproducts,
)


def rf(coeffs) -> RatFun:
    return RatFun.from_upoly(UPoly(coeffs))


def direct_poch_ratfun(spec: PochSpec, k: int) -> RatFun:
    """Independent oracle: multiply the defining factors as rational functions."""
    base_c = spec.base_coeff
    acc = RatFun.const(1)
    if k >= 0:
        rng = [spec.qoffset + j * spec.qstep for j in range(k)]
        invert = False
    else:
        rng = [spec.qoffset - j * spec.qstep for j in range(1, -k + 1)]
        invert = True
    for t in rng:
        # factor 1 - base_c * a^aexp * q^t as a RatFun
        qpart = RatFun.q_power(t)
        apart = RatFun.const(1)
        if spec.aexp == 1:
            apart = RatFun(APoly([UPoly([]), ONE]), APoly.const(1))
        elif spec.aexp == -1:
            apart = RatFun(APoly.const(1), APoly([UPoly([]), ONE]))
        factor = RatFun.const(1) - RatFun.const(base_c) * apart * qpart
        acc = acc / factor if invert else acc * factor
    return acc


def test_poch_simple_product():
    # (q; q^2)_2 = (1-q)(1-q^3)
    p = poch(PochSpec(qoffset=1, qstep=2), 2)
    assert p.cyclo_multiset() == {1: 2, 3: 1}
    assert p.to_ratfun() == rf([1, -1, 0, -1, 1])


def test_poch_a_factor():
    p = poch(PochSpec(aexp=1, qoffset=1, qstep=2), 1)
    assert p.alin == {(1, 1, 1): 1}
    assert p.to_ratfun() == RatFun(APoly([UPoly([1]), UPoly([0, -1])]), APoly.const(1))


def test_zero_reciprocal_convention():
    # 1/(q^4;q^4)_{-1} = 0 because (q^4;q^4)_{-1} contains a vanishing factor
    p = poch(PochSpec(qoffset=4, qstep=4), -1)
    assert p.zero_reciprocal
    assert p.invert().is_zero()
    with pytest.raises(NotFiniteError):
        p.to_ratfun()


def test_negative_index_is_reciprocal_product():
    # (a; q)_{-1} = 1/(1 - a/q) = q/(q - a); the displayed closed form with
    # a^{+n} would give -a^2 q/(a - q) instead, the regression pins the
    # direct reciprocal-product value.
    p = poch(PochSpec(aexp=1, qoffset=0, qstep=1), -1)
    got = p.to_ratfun()
    num = APoly.from_upoly(UPoly([0, -1]))
    den = APoly([UPoly([0, -1]), ONE])  # a - q
    assert got == RatFun(num, den)  # -q/(a - q), i.e. 1/(1 - a/q)


def test_poch_oracle_against_direct_product():
    specs = [
        PochSpec(qoffset=1, qstep=2),
        PochSpec(sign=-1, qoffset=1, qstep=2),
        PochSpec(qoffset=2, qstep=4),
        PochSpec(sign=-1, qoffset=4, qstep=4),
        PochSpec(aexp=1, qoffset=1, qstep=2),
        PochSpec(aexp=-1, qoffset=1, qstep=2),
        PochSpec(aexp=1, qoffset=6, qstep=6),
        PochSpec(aexp=-1, qoffset=6, qstep=6),
        PochSpec(scale=Fraction(2), qoffset=2, qstep=4),
        PochSpec(sign=-1, scale=Fraction(1, 3), qoffset=1, qstep=1),
    ]
    for spec in specs:
        for k in (0, 1, 2, 5, 9):
            assert poch(spec, k).to_ratfun() == direct_poch_ratfun(spec, k)
        for k in (-1, -2, -4):
            p = poch(spec, k)
            if p.zero_reciprocal:
                continue
            assert p.to_ratfun() == direct_poch_ratfun(spec, k)


def test_qbinomial():
    assert qbinomial(2, 1) == UPoly([1, 1])
    assert qbinomial(4, 2) == UPoly([1, 1, 2, 1, 1])
    assert qbinomial(3, 5).is_zero()
    assert qbinomial(5, -1).is_zero()
    for n in range(9):
        for m in range(n + 1):
            assert qbinomial(n, m) == qbinomial(n, n - m)
            assert qbinomial(n, m).evaluate(1) == comb(n, m)


def test_cyclotomic_factorization_of_binomials():
    for j in range(1, 201):
        plus = expand_binomial_times_cyclotomics(1, j)
        assert plus == UPoly([-1] + [0] * (j - 1) + [1])  # q^j - 1
        minus = expand_binomial_times_cyclotomics(-1, j)
        assert minus == UPoly([1] + [0] * (j - 1) + [1])  # q^j + 1
    assert cyclotomic_factors_of_binomial(1, 6) == {1: 1, 2: 1, 3: 1, 6: 1}
    assert cyclotomic_factors_of_binomial(-1, 3) == {2: 1, 6: 1}


def test_phi_multiplicity_lookup():
    p = poch(PochSpec(qoffset=2, qstep=2), 8)  # (q^2;q^2)_8
    for d in (1, 2, 3, 5, 7, 8, 16):
        direct = sum(m for dd, m in p.cyclo_multiset().items() if dd == d)
        assert p.phi_multiplicity(d) == direct


def test_q_bracket():
    assert q_bracket(1).to_ratfun() == RatFun.const(1)
    assert q_bracket(5).to_ratfun() == rf([1, 1, 1, 1, 1])
    assert q_bracket(0).is_zero()
    # [m] for negative m: (1 - q^m)/(1 - q) = -q^m [ -m ]
    got = q_bracket(-3).to_ratfun()
    expected = RatFun(APoly.from_upoly(UPoly([-1, -1, -1])), APoly.from_upoly(UPoly([0, 0, 0, 1])))
    assert got == expected


def test_substitute_a_on_qproduct():
    p = poch(PochSpec(aexp=1, qoffset=6, qstep=6), 2)  # (aq^6;q^6)_2
    s = p.substitute_a(1, -6)  # a := q^{-6}: first factor becomes zero
    assert s.is_zero()
    s2 = p.substitute_a(Fraction(2), 0)
    assert s2.to_ratfun() == poch(PochSpec(scale=Fraction(2), qoffset=6, qstep=6), 2).to_ratfun()


def raw_pair_sum(terms):
    """Oracle: accumulate num/den with plain polynomial arithmetic, no gcd."""
    num, den = APoly([]), APoly.const(1)
    for t in terms:
        tn, td = t.split()
        tn_p, td_p = tn.to_apoly(), td.to_apoly()
        num = num * td_p + tn_p * den
        den = den * td_p
    return num, den


def assert_qfrac_equals_pair(frac, num, den):
    # cross-multiplied equality avoids any normalization
    assert frac.num * den == num * frac.den.to_apoly()


def test_sum_qproducts_matches_raw_sum():
    # sum of factored terms with growing denominators
    def term(k):
        t = poch(PochSpec(qoffset=1, qstep=2), k)
        t = t * poch(PochSpec(qoffset=2, qstep=2), k).invert()
        t = t * QProduct.q_power(k * k)
        t = t * q_bracket(3 * k + 1)
        return t

    terms = [term(k) for k in range(6)]
    got = sum_qproducts(terms)
    assert_qfrac_equals_pair(got, *raw_pair_sum(terms))


def test_sum_qproducts_with_a_symbolic():
    def term(k):
        t = poch(PochSpec(aexp=1, qoffset=1, qstep=2), k)
        t = t * poch(PochSpec(aexp=-1, qoffset=1, qstep=2), k)
        t = t * poch(PochSpec(qoffset=2, qstep=2), k).invert()
        t = t * poch(PochSpec(aexp=1, qoffset=4, qstep=4), k).invert()
        t = t * QProduct.q_power(k)
        return t

    terms = [term(k) for k in range(5)]
    got = sum_qproducts(terms)
    assert_qfrac_equals_pair(got, *raw_pair_sum(terms))
    # the reduced form agrees with a small direct RatFun sum on a prefix
    small = terms[:3]
    want = RatFun.zero()
    for t in small:
        want = want + t.to_ratfun()
    assert sum_qproducts(small).to_ratfun() == want


def test_qfrac_substitute_raw():
    f = QFrac.from_qproduct(poch(PochSpec(aexp=1, qoffset=1, qstep=2), 2) * poch(PochSpec(qoffset=2, qstep=2), 2).invert())
    num, den = f.substitute_raw(1, 3)  # a := q^3
    direct = poch(PochSpec(qoffset=4, qstep=2), 2).to_ratfun() / poch(PochSpec(qoffset=2, qstep=2), 2).to_ratfun()
    assert RatFun(APoly.from_upoly(num), APoly.from_upoly(den)) == direct


def test_one_minus_constant_fold():
    p = one_minus(Fraction(1, 2), 0)
    assert p.to_ratfun() == RatFun.const(Fraction(1, 2))
    z = one_minus(1, 0)
    assert z.is_zero()
