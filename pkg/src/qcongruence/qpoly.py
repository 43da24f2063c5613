"""Univariate polynomials in q over the exact rationals.

The representation is dense: a list of coefficients indexed by the exponent
of q, with no trailing zeros (the zero polynomial is the empty list).
Coefficients are Python ints wherever possible and ``Fraction`` only when a
genuine rational appears; the two interoperate transparently, and keeping the
integer fast path matters because the congruence engine pushes polynomials of
degree in the thousands through this module.

Besides ring arithmetic this module provides cyclotomic polynomials (cached),
q-integers, division with remainder, subresultant gcd, and a fast remainder
modulo powers of a cyclotomic polynomial: to reduce A(q) mod Phi_d(q)^e,
first reduce mod (q^d - 1)^e by rewriting A in base q^d - a linear-time
fold - and only then divide the small leftover by Phi_d^e.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd as int_gcd


class DivisionByZeroPoly(ZeroDivisionError):
    """Polynomial division by the zero polynomial."""


class BothZero(ValueError):
    """gcd(0, 0) is undefined."""


class UPoly:
    """Dense polynomial in q; ``c[i]`` is the coefficient of q^i."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()) -> None:
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.c = c

    @staticmethod
    def _raw(c: list) -> "UPoly":
        # trusted constructor: caller guarantees no trailing zeros
        p = UPoly.__new__(UPoly)
        p.c = c
        return p

    @staticmethod
    def monomial(coeff, exp: int) -> "UPoly":
        if not coeff:
            return UPoly._raw([])
        if exp < 0:
            raise ValueError("negative exponent in UPoly")
        return UPoly._raw([0] * exp + [coeff])

    @staticmethod
    def const(coeff) -> "UPoly":
        return UPoly._raw([coeff] if coeff else [])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def leading(self):
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def constant(self):
        return self.c[0] if self.c else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            if len(self.c) != len(other.c):
                return False
            return all(x == y for x, y in zip(self.c, other.c))
        if isinstance(other, (int, Fraction)):
            return self == UPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(Fraction(x) for x in self.c))

    def __add__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = a[:]
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return UPoly(out)

    def __radd__(self, other) -> "UPoly":
        return self.__add__(other)

    def __sub__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other)
        out = self.c[:]
        b = other.c
        if len(b) > len(out):
            out.extend([0] * (len(b) - len(out)))
        for i, x in enumerate(b):
            out[i] = out[i] - x
        return UPoly(out)

    def __rsub__(self, other) -> "UPoly":
        return (-self).__add__(other)

    def __neg__(self) -> "UPoly":
        return UPoly._raw([-x for x in self.c])

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return UPoly._raw([])
            return UPoly._raw([x * other for x in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return UPoly._raw([])
        # iterate over the operand with fewer nonzero entries
        na = sum(1 for x in a if x)
        nb = sum(1 for x in b if x)
        if na > nb:
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return UPoly(out)

    def __rmul__(self, other) -> "UPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative power")
        result = UPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, t: int) -> "UPoly":
        """Multiply by q^t (t >= 0)."""
        if not self.c or t == 0:
            return self
        return UPoly._raw([0] * t + self.c)

    def sub_shifted(self, other: "UPoly", t: int, coeff=1) -> "UPoly":
        """self - coeff * q^t * other, in one pass."""
        out = self.c[:]
        b = other.c
        need = t + len(b)
        if need > len(out):
            out.extend([0] * (need - len(out)))
        for i, x in enumerate(b):
            if x:
                out[t + i] = out[t + i] - coeff * x
        return UPoly(out)

    def evaluate(self, x):
        """Horner evaluation at an exact scalar."""
        acc = 0
        for coeff in reversed(self.c):
            acc = acc * x + coeff
        return acc

    def evaluate_complex(self, x: complex) -> complex:
        acc = 0j
        for coeff in reversed(self.c):
            acc = acc * x + complex(coeff)
        return acc

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive; 0 for zero."""
        if not self.c:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for x in self.c:
            f = Fraction(x)
            num_gcd = int_gcd(num_gcd, f.numerator)
            den_lcm = den_lcm * f.denominator // int_gcd(den_lcm, f.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> "UPoly":
        c = self.content()
        if not c:
            return self
        inv = 1 / c
        return UPoly._raw([_tidy(x * inv) for x in self.c])

    def monic(self) -> "UPoly":
        if not self.c:
            return self
        lead = self.c[-1]
        if lead == 1:
            return self
        inv = Fraction(1) / Fraction(lead)
        return UPoly._raw([_tidy(x * inv) for x in self.c])

    def __repr__(self) -> str:
        if not self.c:
            return "UPoly(0)"
        parts = []
        for i, x in enumerate(self.c):
            if x:
                parts.append(f"{x}*q^{i}" if i else f"{x}")
        return "UPoly(" + " + ".join(parts) + ")"


def _tidy(x):
    """Collapse integral Fractions back to int to keep the fast path."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


ZERO = UPoly._raw([])
ONE = UPoly._raw([1])
Q = UPoly._raw([0, 1])


def divrem(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    """Quotient and remainder with deg R < deg B."""
    if b.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    if a.degree < b.degree:
        return ZERO, a
    rem = a.c[:]
    bc = b.c
    db = len(bc) - 1
    lead = bc[-1]
    inv = None if lead == 1 else Fraction(1) / Fraction(lead)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        coeff = rem[i]
        if coeff:
            t = coeff if inv is None else _tidy(coeff * inv)
            quot[i - db] = t
            for j in range(db + 1):
                rem[i - db + j] -= t * bc[j]
    return UPoly(quot), UPoly(rem)


def exact_div(a: UPoly, b: UPoly) -> UPoly:
    q, r = divrem(a, b)
    if not r.is_zero():
        raise ValueError("division is not exact")
    return q


def div_binomial(a: UPoly, coeff, t: int) -> UPoly:
    """Exact division by (1 - coeff * q^t); linear-time synthetic division."""
    if a.is_zero():
        return a
    n = len(a.c)
    if n <= t:
        raise ValueError("division by binomial is not exact")
    out = a.c[:]
    # (1 - c q^t) * Q = A  =>  Q_i = A_i + c * Q_{i-t}
    for i in range(t, n):
        prev = out[i - t]
        if prev:
            out[i] = out[i] + coeff * prev
    for i in range(n - t, n):
        if out[i]:
            raise ValueError("division by binomial is not exact")
    return UPoly(out[: n - t])


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd via the subresultant polynomial remainder sequence.

    Inputs are scaled to primitive integer polynomials first; the
    subresultant beta-factors keep intermediate coefficients polynomial-sized
    instead of the exponential blowup of naive rational Euclid.
    """
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    f = a.primitive()
    g = b.primitive()
    if f.degree < g.degree:
        f, g = g, f
    h = 1
    s = 1
    while True:
        delta = f.degree - g.degree
        r = _pseudo_rem(f, g)
        if r.is_zero():
            return g.primitive().monic()
        if r.degree == 0:
            return ONE
        f, g = g, _exact_scalar_div(r, s * h**delta)
        s = f.leading()
        h = _exact_int_pow_div(s, h, delta)


def _pseudo_rem(a: UPoly, b: UPoly) -> UPoly:
    """lc(b)^(deg a - deg b + 1) * a reduced mod b (the exact power matters
    for the subresultant division bookkeeping)."""
    lead = b.leading()
    db = b.degree
    steps = 0
    rem = a
    while not rem.is_zero() and rem.degree >= db:
        shift_amt = rem.degree - db
        top = rem.leading()
        # one elimination step: rem <- lead*rem - top*q^shift*b
        rem = (rem * lead).sub_shifted(b, shift_amt, top)
        steps += 1
    missing = a.degree - db + 1 - steps
    if missing > 0 and not rem.is_zero():
        rem = rem * (Fraction(lead) ** missing if isinstance(lead, Fraction) else lead**missing)
    return rem


def _exact_scalar_div(p: UPoly, s):
    if s == 1:
        return p
    inv = Fraction(1, 1) / Fraction(s)
    return UPoly._raw([_tidy(x * inv) for x in p.c])


def _exact_int_pow_div(s, h, delta: int):
    # h_{new} = s^delta / h^{delta-1} (exact per subresultant theory)
    if delta == 0:
        return h  # unchanged contribution s^0 h^1 path collapses below
    val = Fraction(s) ** delta / Fraction(h) ** (delta - 1)
    return _tidy(val)


def divisors(n: int) -> list[int]:
    """Positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def euler_phi(n: int) -> int:
    result = n
    d = 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            result -= result // d
        d += 1
    if n > 1:
        result -= result // n
    return result


def _q_pow_minus_one(d: int) -> UPoly:
    c = [0] * (d + 1)
    c[0] = -1
    c[d] = 1
    return UPoly._raw(c)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> UPoly:
    """The n-th cyclotomic polynomial, by the Moebius product over q^d - 1.

    Phi_n = prod_{d | n} (q^d - 1)^{mu(n/d)}; the negative part divides the
    positive part exactly.  Results are cached (lru_cache is safe under
    CPython's concurrent read/insert).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    num = ONE
    den = ONE
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            num = num * _q_pow_minus_one(d)
        elif mu == -1:
            den = den * _q_pow_minus_one(d)
    return exact_div(num, den)


@lru_cache(maxsize=None)
def _cyclotomic_power(d: int, e: int) -> UPoly:
    return cyclotomic(d) ** e


def q_integer(n: int) -> UPoly:
    """[n] = 1 + q + ... + q^{n-1}; [0] = 0."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return UPoly._raw([1] * n) if n else ZERO


def reduce_mod_cyclo_power(a: UPoly, d: int, e: int = 1) -> UPoly:
    """Remainder of a modulo Phi_d(q)^e.

    Since Phi_d^e divides (q^d - 1)^e, first fold a in base q^d and reduce
    the base-polynomial modulo (t - 1)^e via the binomial transform; the
    result has degree < d*e and a single small division finishes the job.
    Linear in deg(a) for fixed d, e.
    """
    if e < 1:
        raise ValueError("power must be >= 1")
    c = a.c
    if len(c) <= d * e:
        if a.degree < euler_phi(d) * e:
            return a
        return divrem(a, _cyclotomic_power(d, e))[1]
    # digits of a in base q^d: a = sum_i D_i(q) (q^d)^i, deg D_i < d
    # a mod (q^d-1)^e = sum_{j<e} (q^d-1)^j * sum_i C(i,j) D_i
    folded = UPoly._raw([])
    for j in range(e):
        row = [0] * d
        for i in range(j, (len(c) + d - 1) // d):
            w = comb(i, j)
            base = i * d
            for r in range(min(d, len(c) - base)):
                x = c[base + r]
                if x:
                    row[r] += w * x
        part = UPoly(row)
        if not part.is_zero():
            # multiply by (q^d - 1)^j, a sparse factor
            factor = [0] * (j * d + 1)
            for i in range(j + 1):
                factor[i * d] = (-1) ** (j - i) * comb(j, i)
            folded = folded + part * UPoly._raw(factor)
    return divrem(folded, _cyclotomic_power(d, e))[1]


def divisible_by_cyclo_power(a: UPoly, d: int, e: int = 1) -> bool:
    return reduce_mod_cyclo_power(a, d, e).is_zero()
