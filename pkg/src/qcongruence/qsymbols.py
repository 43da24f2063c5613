"""Factored q-products: Pochhammer symbols, q-binomials, q-brackets.

A ``QProduct`` is a term kept in factored form,

    coeff * q^qpow * a^apow * prod (1 - c*q^t)^m * prod (a-linear)^m,

with the a-linear factors canonicalized to either (1 - c*a*q^t) or
(a - c*q^t), t >= 0.  Factors with negative q-exponents are rewritten on
insertion (e.g. 1 - c*q^{-t} = -c*q^{-t} * (1 - c^{-1} q^t)), so keys always
have t >= 1 for the a-free factors and t >= 0 for the a-linear ones.

Keeping terms factored is what makes the congruence engine cheap: the
multiplicity of a cyclotomic Phi_d inside a denominator is read off the
(1 +- q^t) keys by divisor lookup instead of polynomial gcd, and consecutive
summands of a hypergeometric term ratio differ by a handful of factors, so a
truncated sum expands in time linear in the result size.

Negative Pochhammer indices follow the reciprocal-product definition
(x; q)_{-n} = prod_{j=1..n} (1 - x q^{-j})^{-1}; when a factor vanishes the
resulting value is the distinguished *zero-reciprocal* element, whose
reciprocal is 0 (so terms guarded by such symbols drop out of sums).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qpoly import UPoly, ZERO, ONE, cyclotomic, divisors, exact_div, _tidy
from .ratfun import APoly, RatFun


class NotFiniteError(ArithmeticError):
    """Raised when a zero-reciprocal product is used as a finite value."""


def _frac(x) -> Fraction | int:
    return _tidy(x if isinstance(x, Fraction) else Fraction(x))


@dataclass(frozen=True)
class PochSpec:
    """Base of a Pochhammer symbol: sign * scale * a^aexp * q^qoffset, step qstep.

    ``sign`` covers (-q; ...) style bases; ``scale`` admits sampled rational
    parameters such as (b q^2; q^4)_k with b = 2.
    """

    sign: int = 1
    aexp: int = 0
    qoffset: int = 0
    qstep: int = 1
    scale: Fraction | int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")
        if self.aexp not in (-1, 0, 1):
            raise ValueError("aexp must be in {-1, 0, 1}")
        if self.qstep < 1:
            raise ValueError("qstep must be >= 1")
        if not self.scale or self.scale < 0:
            raise ValueError("scale must be a positive rational; use sign")

    @property
    def base_coeff(self) -> Fraction | int:
        return _frac(self.sign * Fraction(self.scale))


class QProduct:
    __slots__ = ("coeff", "qpow", "apow", "qlin", "alin", "zero_reciprocal")

    def __init__(self, coeff=1, qpow=0, apow=0, qlin=None, alin=None, zero_reciprocal=False):
        self.coeff = _frac(coeff) if coeff else 0
        self.qpow = qpow
        self.apow = apow
        self.qlin = qlin or {}  # (c, t) -> mult, factor (1 - c q^t), t >= 1
        self.alin = alin or {}  # (aexp, c, t) -> mult
        self.zero_reciprocal = zero_reciprocal

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def one() -> "QProduct":
        return QProduct(1)

    @staticmethod
    def zero() -> "QProduct":
        return QProduct(0)

    @staticmethod
    def constant(c) -> "QProduct":
        return QProduct(c)

    @staticmethod
    def q_power(t: int) -> "QProduct":
        return QProduct(1, qpow=t)

    @staticmethod
    def a_power(j: int) -> "QProduct":
        return QProduct(1, apow=j)

    def is_zero(self) -> bool:
        return not self.zero_reciprocal and self.coeff == 0

    def copy(self) -> "QProduct":
        return QProduct(self.coeff, self.qpow, self.apow, dict(self.qlin), dict(self.alin), self.zero_reciprocal)

    # -- factor insertion -----------------------------------------------------

    def _mul_factor(self, c, aexp: int, t: int, mult: int) -> None:
        """Multiply in (1 - c * a^aexp * q^t)^mult, canonicalizing in place."""
        if mult == 0 or self.is_zero():
            return
        c = _frac(c)
        if not c:
            return  # the factor is 1
        if t < 0:
            # 1 - c x q^-u = -c x q^-u (1 - c^-1 x^-1 q^u), x = a^aexp
            u = -t
            self.coeff = _frac(Fraction(self.coeff) * Fraction(-c) ** mult)
            self.qpow -= u * mult
            self.apow += aexp * mult
            c = _frac(1 / Fraction(c))
            aexp = -aexp
            t = u
        if aexp == 0:
            if t == 0:
                val = 1 - c
                if val == 0:
                    if mult > 0:
                        if self.zero_reciprocal:
                            raise NotFiniteError("indeterminate 0 * infinity")
                        self.coeff = 0
                    else:
                        self.zero_reciprocal = True
                    return
                self.coeff = _frac(Fraction(self.coeff) * Fraction(val) ** mult)
                return
            key = (c, t)
            m = self.qlin.get(key, 0) + mult
            if m:
                self.qlin[key] = m
            else:
                self.qlin.pop(key, None)
            return
        if aexp == -1:
            # 1 - c a^-1 q^t = a^-1 (a - c q^t)
            self.apow -= mult
            key = (-1, c, t)
        else:
            key = (1, c, t)
        m = self.alin.get(key, 0) + mult
        if m:
            self.alin[key] = m
        else:
            self.alin.pop(key, None)

    def _mul_alin_key(self, key, mult: int) -> None:
        m = self.alin.get(key, 0) + mult
        if m:
            self.alin[key] = m
        else:
            self.alin.pop(key, None)

    # -- ring operations ------------------------------------------------------

    def __mul__(self, other: "QProduct") -> "QProduct":
        if self.is_zero() or other.is_zero():
            if self.zero_reciprocal or other.zero_reciprocal:
                raise NotFiniteError("0 times an infinite product")
            return QProduct.zero()
        out = self.copy()
        out.coeff = _frac(Fraction(out.coeff) * Fraction(other.coeff)) if other.coeff != 1 else out.coeff
        out.qpow += other.qpow
        out.apow += other.apow
        out.zero_reciprocal = self.zero_reciprocal or other.zero_reciprocal
        for (c, t), m in other.qlin.items():
            mm = out.qlin.get((c, t), 0) + m
            if mm:
                out.qlin[(c, t)] = mm
            else:
                out.qlin.pop((c, t), None)
        for key, m in other.alin.items():
            out._mul_alin_key(key, m)
        return out

    def invert(self) -> "QProduct":
        if self.zero_reciprocal:
            return QProduct.zero()
        if self.is_zero():
            out = QProduct(1)
            out.zero_reciprocal = True
            return out
        out = QProduct(
            _frac(1 / Fraction(self.coeff)),
            -self.qpow,
            -self.apow,
            {k: -m for k, m in self.qlin.items()},
            {k: -m for k, m in self.alin.items()},
        )
        return out

    def __pow__(self, e: int) -> "QProduct":
        if e == 0:
            return QProduct.one()
        base = self if e > 0 else self.invert()
        out = base.copy()
        n = abs(e)
        if n > 1:
            out.coeff = _frac(Fraction(base.coeff) ** n)
            out.qpow *= n
            out.apow *= n
            out.qlin = {k: m * n for k, m in base.qlin.items()}
            out.alin = {k: m * n for k, m in base.alin.items()}
        return out

    # -- structure queries ----------------------------------------------------

    def phi_multiplicity(self, d: int) -> int:
        """Multiplicity of Phi_d in the product (a-linear and scaled factors
        never contain a cyclotomic)."""
        total = 0
        for (c, t), m in self.qlin.items():
            if c == 1:
                if t % d == 0:
                    total += m
            elif c == -1:
                if (2 * t) % d == 0 and t % d != 0:
                    total += m
        return total

    def cyclo_multiset(self) -> dict[int, int]:
        """Signed multiset of cyclotomic indices carried by the +-1 factors."""
        out: dict[int, int] = {}
        for (c, t), m in self.qlin.items():
            if c == 1:
                for d in divisors(t):
                    out[d] = out.get(d, 0) + m
            elif c == -1:
                for d in divisors(2 * t):
                    if t % d:
                        out[d] = out.get(d, 0) + m
        return {d: m for d, m in out.items() if m}

    def split(self) -> tuple["QProduct", "QProduct"]:
        """(numerator, denominator), both with nonnegative powers/multiplicities.

        The rational coefficient stays on the numerator.
        """
        if self.zero_reciprocal:
            raise NotFiniteError("cannot split an infinite product")
        num = QProduct(self.coeff, max(self.qpow, 0), max(self.apow, 0))
        den = QProduct(1, max(-self.qpow, 0), max(-self.apow, 0))
        for key, m in self.qlin.items():
            (num if m > 0 else den).qlin[key] = abs(m)
        for key, m in self.alin.items():
            (num if m > 0 else den).alin[key] = abs(m)
        return num, den

    # -- conversions ----------------------------------------------------------

    def to_apoly(self) -> APoly:
        """Expand; requires a polynomial (no negative multiplicities/powers)."""
        if self.zero_reciprocal:
            raise NotFiniteError("zero-reciprocal product is not a polynomial")
        if self.coeff == 0:
            return APoly([])
        if self.qpow < 0 or self.apow < 0:
            raise ValueError("negative power in to_apoly")
        if any(m < 0 for m in self.qlin.values()) or any(m < 0 for m in self.alin.values()):
            raise ValueError("negative multiplicity in to_apoly")
        acc = APoly.from_upoly(UPoly.monomial(self.coeff, self.qpow)).shift_a(self.apow)
        for (c, t), m in sorted(self.qlin.items(), key=lambda kv: kv[0][1]):
            for _ in range(m):
                acc = acc.mul_q_binomial(c, t)
        for (aexp, c, t), m in sorted(self.alin.items(), key=lambda kv: (kv[0][2], kv[0][0])):
            for _ in range(m):
                acc = acc.mul_a_binomial(aexp, c, t)
        return acc

    def to_ratfun(self) -> RatFun:
        if self.zero_reciprocal:
            raise NotFiniteError("zero-reciprocal product has no rational-function value")
        num, den = self.split()
        return RatFun(num.to_apoly(), den.to_apoly())

    def substitute_a(self, c, e: int = 0) -> "QProduct":
        """Specialize a := c * q^e; the result carries no a-linear factors."""
        if self.zero_reciprocal or self.is_zero():
            return self.copy()
        c = _frac(c)
        out = QProduct(self.coeff, self.qpow, 0)
        out.qlin = dict(self.qlin)
        if self.apow:
            out.coeff = _frac(Fraction(out.coeff) * Fraction(c) ** self.apow)
            out.qpow += e * self.apow
        # inverted factors first, so a genuine 0/0 raises instead of hiding
        for (aexp, c1, t), m in sorted(self.alin.items(), key=lambda kv: kv[1]):
            if aexp == 1:
                # (1 - c1 a q^t) -> (1 - c1*c q^{t+e})
                out._mul_factor(_frac(Fraction(c1) * Fraction(c)), 0, t + e, m)
            else:
                # (a - c1 q^t) -> c q^e (1 - (c1/c) q^{t-e})
                out.coeff = _frac(Fraction(out.coeff) * Fraction(c) ** m)
                out.qpow += e * m
                out._mul_factor(_frac(Fraction(c1) / Fraction(c)), 0, t - e, m)
            if out.is_zero():
                return out
        return out

    def evaluate_complex(self, q: complex, a: complex | None = None) -> complex:
        if self.zero_reciprocal:
            raise NotFiniteError("zero-reciprocal product has no numeric value")
        if self.coeff == 0:
            return 0j
        val = complex(Fraction(self.coeff)) * q**self.qpow
        if self.apow:
            val *= a**self.apow
        for (c, t), m in self.qlin.items():
            val *= (1 - complex(Fraction(c)) * q**t) ** m
        for (aexp, c, t), m in self.alin.items():
            base = 1 - complex(Fraction(c)) * a * q**t if aexp == 1 else a - complex(Fraction(c)) * q**t
            val *= base**m
        return val

    def delta(self, prev: "QProduct") -> tuple:
        """Factor-level difference self/prev for the incremental sum engine.

        Returns (coeff_ratio, dqpow, dapow, mul_ops, div_ops) where the ops
        are lists of ("q", c, t) / ("a", aexp, c, t) factor applications.
        """
        ratio = _frac(Fraction(self.coeff) / Fraction(prev.coeff))
        mul_ops: list[tuple] = []
        div_ops: list[tuple] = []
        keys = set(self.qlin) | set(prev.qlin)
        for key in keys:
            d = self.qlin.get(key, 0) - prev.qlin.get(key, 0)
            ops = mul_ops if d > 0 else div_ops
            for _ in range(abs(d)):
                ops.append(("q", key[0], key[1]))
        keys = set(self.alin) | set(prev.alin)
        for key in keys:
            d = self.alin.get(key, 0) - prev.alin.get(key, 0)
            ops = mul_ops if d > 0 else div_ops
            for _ in range(abs(d)):
                ops.append(("a", key[0], key[1], key[2]))
        return ratio, self.qpow - prev.qpow, self.apow - prev.apow, mul_ops, div_ops

    def __repr__(self) -> str:
        if self.zero_reciprocal:
            return "QProduct(<zero-reciprocal>)"
        bits = [f"{self.coeff}"]
        if self.qpow:
            bits.append(f"q^{self.qpow}")
        if self.apow:
            bits.append(f"a^{self.apow}")
        for (c, t), m in sorted(self.qlin.items()):
            bits.append(f"(1-{c}q^{t})^{m}")
        for (aexp, c, t), m in sorted(self.alin.items()):
            f = f"(1-{c}aq^{t})" if aexp == 1 else f"(a-{c}q^{t})"
            bits.append(f"{f}^{m}")
        return "QProduct(" + " ".join(bits) + ")"


def poch(spec: PochSpec, k: int) -> QProduct:
    """(base; q^qstep)_k as a factored product; negative k by the reciprocal
    product, possibly yielding the zero-reciprocal element."""
    out = QProduct.one()
    base = spec.base_coeff
    if k >= 0:
        for j in range(k):
            out._mul_factor(base, spec.aexp, spec.qoffset + j * spec.qstep, 1)
            if out.is_zero():
                # later factors no longer matter
                return out
    else:
        for j in range(1, -k + 1):
            out._mul_factor(base, spec.aexp, spec.qoffset - j * spec.qstep, -1)
    return out


def poch_f(k: int, *, scale=1, aexp: int = 0, offset: int = 0, step: int = 1) -> QProduct:
    """Shorthand Pochhammer: scale may be any nonzero rational (sign folded in)."""
    scale = Fraction(scale)
    sign = 1 if scale > 0 else -1
    return poch(PochSpec(sign=sign, aexp=aexp, qoffset=offset, qstep=step, scale=abs(scale)), k)


def q_bracket(m: int) -> QProduct:
    """[m] = (1 - q^m)/(1 - q) as a factored product; works for any integer m."""
    out = QProduct.one()
    if m == 0:
        return QProduct.zero()
    out._mul_factor(1, 0, m, 1)
    out._mul_factor(1, 0, 1, -1)
    return out


def one_minus(c, t: int, aexp: int = 0) -> QProduct:
    """(1 - c * a^aexp * q^t) as a QProduct."""
    out = QProduct.one()
    out._mul_factor(c, aexp, t, 1)
    return out


_QFACT: list[UPoly] = [ONE]


def _q_factorial_poly(n: int) -> UPoly:
    """(q; q)_n expanded, cached incrementally."""
    while len(_QFACT) <= n:
        j = len(_QFACT)
        _QFACT.append(_QFACT[-1].sub_shifted(_QFACT[-1], j, 1))
    return _QFACT[n]


@lru_cache(maxsize=None)
def qbinomial(n: int, m: int) -> UPoly:
    """Gaussian binomial coefficient; zero outside 0 <= m <= n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if m < 0 or m > n:
        return ZERO
    return exact_div(_q_factorial_poly(n), _q_factorial_poly(m) * _q_factorial_poly(n - m))


def cyclotomic_factors_of_binomial(sign: int, j: int) -> dict[int, int]:
    """Cyclotomic factorization of (1 - q^j) [sign=+1] or (1 + q^j) [sign=-1].

    (1 - q^j) = -prod_{d|j} Phi_d up to sign bookkeeping handled by the
    caller's tests; here only the index multiset is returned.
    """
    if sign == 1:
        return {d: 1 for d in divisors(j)}
    return {d: 1 for d in divisors(2 * j) if j % d}


def expand_binomial_times_cyclotomics(sign: int, j: int) -> UPoly:
    """Multiply the claimed Phi_d factors back together (oracle for tests)."""
    acc = ONE
    for d, m in cyclotomic_factors_of_binomial(sign, j).items():
        for _ in range(m):
            acc = acc * cyclotomic(d)
    return acc


class QFrac:
    """An exact fraction (expanded APoly numerator) / (factored denominator).

    The denominator is a QProduct with coefficient 1 and only nonnegative
    powers and multiplicities, so cyclotomic multiplicities and coprimality
    facts are direct lookups.  Sums built by :func:`sum_qproducts` land here.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: APoly, den: QProduct) -> None:
        self.num = num
        self.den = den

    @staticmethod
    def zero() -> "QFrac":
        return QFrac(APoly([]), QProduct.one())

    @staticmethod
    def from_qproduct(qp: QProduct) -> "QFrac":
        num, den = qp.split()
        return QFrac(num.to_apoly(), den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __sub__(self, other: "QFrac") -> "QFrac":
        den = _factored_lcm(self.den, other.den)
        left = _apply_cofactor(self.num, den, self.den)
        right = _apply_cofactor(other.num, den, other.den)
        return QFrac(left - right, den)

    def to_ratfun(self) -> RatFun:
        """Reduce to a canonical RatFun using the known denominator factors.

        The a-linear denominator factors are irreducible bivariates, so trial
        division settles them; what remains is an a-free denominator handled
        by a univariate gcd against the numerator's a-free content.  No
        bivariate gcd is ever needed.
        """
        from fractions import Fraction as _F

        from .qpoly import poly_gcd
        from .ratfun import _graded_leading_coeff, _rows_gcd

        num = self.num
        if num.is_zero():
            return RatFun.zero()
        den = self.den.copy()
        for key in list(den.alin):
            aexp, c, t = key
            while den.alin.get(key, 0) > 0:
                try:
                    num = num.div_a_binomial(aexp, c, t)
                except ValueError:
                    break
                den.alin[key] -= 1
                if not den.alin[key]:
                    del den.alin[key]
        # powers of a and q cancel against the numerator's valuations
        aval = next(j for j, r in enumerate(num.rows) if not r.is_zero())
        cut = min(aval, den.apow)
        if cut:
            num = APoly(num.rows[cut:])
            den.apow -= cut
        qval = min(
            next(i for i, x in enumerate(r.c) if x) for r in num.rows if not r.is_zero()
        )
        cut = min(qval, den.qpow)
        if cut:
            num = APoly([UPoly(r.c[cut:]) if not r.is_zero() else r for r in num.rows])
            den.qpow -= cut
        # a-free remainder of the denominator
        afree = UPoly.monomial(1, den.qpow)
        for (c, t), m in sorted(den.qlin.items(), key=lambda kv: kv[0][1]):
            for _ in range(m):
                afree = afree.sub_shifted(afree, t, c)
        g = poly_gcd(_rows_gcd(num), afree)
        if g.degree > 0:
            num = APoly([exact_div(r, g) if not r.is_zero() else r for r in num.rows])
            afree = exact_div(afree, g)
        rest = QProduct(1, 0, den.apow)
        rest.alin = den.alin
        den_apoly = rest.to_apoly() * afree
        lead = _graded_leading_coeff(den_apoly)
        if lead != 1:
            inv = 1 / _F(lead)
            num = num * inv
            den_apoly = den_apoly * inv
        return RatFun(num, den_apoly, reduced=True)

    def phi_mult_den(self, d: int) -> int:
        return self.den.phi_multiplicity(d)

    def substitute_raw(self, c, e: int = 0) -> tuple[UPoly, UPoly]:
        """a := c*q^e without reduction; returns (num, den) UPoly pair.

        Raises :class:`~qcongruence.ratfun.DenominatorVanishes` if the
        substituted denominator is zero.
        """
        from .ratfun import DenominatorVanishes

        nnum, nshift = self.num.substitute(c, e)
        dsub = self.den.substitute_a(c, e)
        if dsub.is_zero():
            raise DenominatorVanishes("denominator vanishes under substitution")
        dpoly = dsub.copy()
        dqpow = dpoly.qpow
        dpoly.qpow = 0
        dupoly = dpoly.to_apoly().as_upoly()
        # value = (nnum / q^nshift) / (dupoly * q^dqpow)
        total = -nshift - dqpow
        if total >= 0:
            return nnum.shift(total), dupoly
        return nnum, dupoly.shift(-total)

    def evaluate_a(self, value: Fraction) -> tuple[UPoly, UPoly]:
        """Specialize a at a rational; unreduced (num, den) pair."""
        return self.substitute_raw(value, 0)


def _factored_lcm(a: QProduct, b: QProduct) -> QProduct:
    out = QProduct(1, max(a.qpow, b.qpow), max(a.apow, b.apow))
    out.qlin = dict(a.qlin)
    for key, m in b.qlin.items():
        if out.qlin.get(key, 0) < m:
            out.qlin[key] = m
    out.alin = dict(a.alin)
    for key, m in b.alin.items():
        if out.alin.get(key, 0) < m:
            out.alin[key] = m
    return out


def _cofactor_ops(target: QProduct, have: QProduct) -> tuple[int, int, list[tuple]]:
    """Factor operations lifting a numerator over `have` to one over `target`."""
    ops: list[tuple] = []
    for key, m in target.qlin.items():
        d = m - have.qlin.get(key, 0)
        for _ in range(d):
            ops.append(("q", key[0], key[1]))
    for key, m in target.alin.items():
        d = m - have.alin.get(key, 0)
        for _ in range(d):
            ops.append(("a", key[0], key[1], key[2]))
    return target.qpow - have.qpow, target.apow - have.apow, ops


def _apply_cofactor(num: APoly, target: QProduct, have: QProduct) -> APoly:
    dq, da, ops = _cofactor_ops(target, have)
    out = num
    if dq:
        out = out.shift_q(dq)
    if da:
        out = out.shift_a(da)
    for op in ops:
        if op[0] == "q":
            out = out.mul_q_binomial(op[1], op[2])
        else:
            out = out.mul_a_binomial(op[1], op[2], op[3])
    return out


def sum_qproducts(terms) -> QFrac:
    """Exact sum of factored terms over a running common denominator.

    Consecutive nonzero terms are expanded incrementally through their
    factor-level delta (hypergeometric term ratios touch only a few factors),
    falling back to a full expansion when the delta is not polynomial.
    """
    num = APoly([])
    den = QProduct.one()
    prev: QProduct | None = None
    expanded: APoly | None = None
    for t in terms:
        if t is None or t.is_zero():
            continue
        t_num, t_den = t.split()
        new_den = _factored_lcm(den, t_den)
        if not num.is_zero():
            num = _apply_cofactor(num, new_den, den)
        expanded = _expand_term(t_num, prev, expanded)
        prev = t_num
        contrib = _apply_cofactor(expanded, new_den, t_den)
        num = contrib if num.is_zero() else num + contrib
        den = new_den
    return QFrac(num, den)


def _expand_term(t_num: QProduct, prev: QProduct | None, expanded: APoly | None) -> APoly:
    if prev is None:
        return t_num.to_apoly()
    try:
        ratio, dq, da, mul_ops, div_ops = t_num.delta(prev)
        if dq < 0 or da < 0:
            raise ValueError("negative power delta")
        out = expanded
        for op in div_ops:
            if op[0] == "q":
                out = out.div_q_binomial(op[1], op[2])
            else:
                out = out.div_a_binomial(op[1], op[2], op[3])
        if dq:
            out = out.shift_q(dq)
        if da:
            out = out.shift_a(da)
        if ratio != 1:
            out = out * ratio
        for op in mul_ops:
            if op[0] == "q":
                out = out.mul_q_binomial(op[1], op[2])
            else:
                out = out.mul_a_binomial(op[1], op[2], op[3])
        return out
    except ValueError:
        return t_num.to_apoly()
