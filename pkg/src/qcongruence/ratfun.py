"""Polynomials in one parameter ``a`` over q-polynomials, and their fractions.

``APoly`` is a-major: a list of :class:`~qcongruence.qpoly.UPoly` rows, the
index being the exponent of ``a``.  The package carries exactly one symbolic
parameter; statements with more parameters specialize the extras at distinct
rationals (see ``DEFAULT_SAMPLES``) and keep ``a`` symbolic whenever the
modulus involves it.

``RatFun`` is a normalized fraction of two APoly.  Normalization removes the
gcd in q (coefficients being polynomials in a, via a primitive polynomial
remainder sequence), then the content gcd in a, and finally scales so that
the denominator's leading coefficient in graded (total degree, a-degree)
order is 1 - equal fractions get identical representations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .qpoly import UPoly, ZERO, ONE, exact_div, poly_gcd


class ZeroDenominator(ZeroDivisionError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class DenominatorVanishes(ZeroDivisionError):
    """Substitution sends the denominator to zero identically."""


#: rational sample points for parameters beyond the symbolic one
DEFAULT_SAMPLES = (Fraction(2), Fraction(1, 3), Fraction(5, 7), Fraction(-3, 2))


class APoly:
    """Polynomial in a with UPoly coefficients; ``rows[j]`` multiplies a^j."""

    __slots__ = ("rows",)

    def __init__(self, rows=()) -> None:
        rows = [r if isinstance(r, UPoly) else UPoly(r) for r in rows]
        while rows and rows[-1].is_zero():
            rows.pop()
        self.rows = rows

    @staticmethod
    def _raw(rows: list) -> "APoly":
        p = APoly.__new__(APoly)
        p.rows = rows
        return p

    @staticmethod
    def from_upoly(u: UPoly) -> "APoly":
        return APoly._raw([]) if u.is_zero() else APoly._raw([u])

    @staticmethod
    def const(x) -> "APoly":
        return APoly.from_upoly(UPoly.const(x))

    @staticmethod
    def a_power(j: int) -> "APoly":
        return APoly._raw([ZERO] * j + [ONE])

    @property
    def a_degree(self) -> int:
        return len(self.rows) - 1

    @property
    def q_degree(self) -> int:
        return max((r.degree for r in self.rows), default=-1)

    def is_zero(self) -> bool:
        return not self.rows

    def __bool__(self) -> bool:
        return bool(self.rows)

    def is_a_free(self) -> bool:
        return len(self.rows) <= 1

    def as_upoly(self) -> UPoly:
        if len(self.rows) > 1:
            raise ValueError("APoly depends on a")
        return self.rows[0] if self.rows else ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, APoly):
            return len(self.rows) == len(other.rows) and all(
                x == y for x, y in zip(self.rows, other.rows)
            )
        if isinstance(other, (UPoly, int, Fraction)):
            o = APoly.from_upoly(other) if isinstance(other, UPoly) else APoly.const(other)
            return self == o
        return NotImplemented

    def __hash__(self):
        return hash(tuple(tuple(Fraction(c) for c in r.c) for r in self.rows))

    def __add__(self, other: "APoly") -> "APoly":
        a, b = self.rows, other.rows
        if len(a) < len(b):
            a, b = b, a
        out = a[:]
        for j, r in enumerate(b):
            out[j] = out[j] + r
        return APoly(out)

    def __sub__(self, other: "APoly") -> "APoly":
        out = self.rows[:]
        b = other.rows
        if len(b) > len(out):
            out.extend([ZERO] * (len(b) - len(out)))
        for j, r in enumerate(b):
            out[j] = out[j] - r
        return APoly(out)

    def __neg__(self) -> "APoly":
        return APoly._raw([-r for r in self.rows])

    def __mul__(self, other) -> "APoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return APoly._raw([])
            return APoly._raw([r * other for r in self.rows])
        if isinstance(other, UPoly):
            if other.is_zero():
                return APoly._raw([])
            return APoly([r * other for r in self.rows])
        a, b = self.rows, other.rows
        if not a or not b:
            return APoly._raw([])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ra in enumerate(a):
            if not ra.is_zero():
                for j, rb in enumerate(b):
                    if not rb.is_zero():
                        out[i + j] = out[i + j] + ra * rb
        return APoly(out)

    def __rmul__(self, other) -> "APoly":
        return self.__mul__(other)

    def shift_q(self, t: int) -> "APoly":
        return APoly._raw([r.shift(t) for r in self.rows])

    def shift_a(self, j: int) -> "APoly":
        if self.is_zero() or j == 0:
            return self
        return APoly._raw([ZERO] * j + self.rows)

    # -- fast in-line factor operations used by the summation engine --------

    def mul_q_binomial(self, c, t: int) -> "APoly":
        """Multiply by (1 - c*q^t)."""
        return APoly([r.sub_shifted(r, t, c) for r in self.rows])

    def mul_a_binomial(self, aexp: int, c, t: int) -> "APoly":
        """Multiply by (1 - c*a*q^t) when aexp=+1, by (a - c*q^t) when aexp=-1."""
        if self.is_zero():
            return self
        rows = self.rows
        out = []
        if aexp == 1:
            for j in range(len(rows) + 1):
                cur = rows[j] if j < len(rows) else ZERO
                if j > 0:
                    cur = cur.sub_shifted(rows[j - 1], t, c)
                out.append(cur)
        else:
            for j in range(len(rows) + 1):
                prev = rows[j - 1] if j > 0 else ZERO
                cur = prev
                if j < len(rows):
                    cur = cur.sub_shifted(rows[j], t, c)
                out.append(cur)
        return APoly(out)

    def div_q_binomial(self, c, t: int) -> "APoly":
        from .qpoly import div_binomial

        return APoly([div_binomial(r, c, t) for r in self.rows])

    def div_a_binomial(self, aexp: int, c, t: int) -> "APoly":
        """Exact division by (1 - c*a*q^t) or (a - c*q^t)."""
        if self.is_zero():
            return self
        rows = self.rows
        if aexp == 1:
            # Y_j = X_j - c q^t X_{j-1}  =>  X_j = Y_j + c q^t X_{j-1}
            out: list[UPoly] = []
            for j in range(len(rows) - 1):
                prev = out[j - 1] if j > 0 else ZERO
                out.append(rows[j].sub_shifted(prev, t, -c))
            top = out[-1] if out else ZERO
            if not rows[-1].sub_shifted(top, t, -c).is_zero():
                raise ValueError("division by a-binomial is not exact")
            return APoly(out)
        # (a - c q^t): Y_j = X_{j-1} - c q^t X_j, solve downward from the top
        out_rev: list[UPoly] = []
        cur = ZERO
        for j in range(len(rows) - 1, 0, -1):
            cur = rows[j].sub_shifted(cur, t, -c)
            out_rev.append(cur)
        x0 = out_rev[-1] if out_rev else ZERO
        if not rows[0].sub_shifted(x0, t, -c).is_zero():
            raise ValueError("division by a-binomial is not exact")
        return APoly(out_rev[::-1])

    def substitute(self, c, e: int) -> tuple[UPoly, int]:
        """Evaluate at a = c*q^e; returns (numerator, qshift) meaning result/q^qshift.

        Negative e is cleared by multiplying through with q^{|e|*deg_a}.
        """
        if self.is_zero():
            return ZERO, 0
        deg = len(self.rows) - 1
        acc = ZERO
        if e >= 0:
            for j, r in enumerate(self.rows):
                if not r.is_zero():
                    acc = acc + (r * (c**j if j else 1)).shift(e * j)
            return acc, 0
        step = -e
        for j, r in enumerate(self.rows):
            if not r.is_zero():
                acc = acc + (r * (c**j if j else 1)).shift(step * (deg - j))
        return acc, step * deg

    def evaluate_a(self, value) -> UPoly:
        """Horner evaluation at a rational value of a."""
        acc = ZERO
        for r in reversed(self.rows):
            acc = (acc * value) + r
        return acc

    def transpose(self) -> list[UPoly]:
        """q-major view: list over q-exponent of polynomials in a."""
        qd = self.q_degree
        cols: list[list] = [[] for _ in range(qd + 1)]
        for j, r in enumerate(self.rows):
            for i, coeff in enumerate(r.c):
                col = cols[i]
                while len(col) < j:
                    col.append(0)
                col.append(coeff)
        return [UPoly(col) for col in cols]

    @staticmethod
    def from_transpose(cols: list[UPoly]) -> "APoly":
        rows: list[list] = []
        for i, col in enumerate(cols):
            for j, coeff in enumerate(col.c):
                while len(rows) <= j:
                    rows.append([])
                row = rows[j]
                while len(row) < i:
                    row.append(0)
                row.append(coeff)
        return APoly(rows)

    def __repr__(self) -> str:
        return "APoly[" + ", ".join(f"a^{j}: {r!r}" for j, r in enumerate(self.rows)) + "]"


def _rows_primitive(rows: list[UPoly]) -> list[UPoly]:
    """Strip scalar and a-free polynomial content from a-major rows."""
    g = _rows_gcd_list(rows)
    if g.degree > 0:
        rows = [exact_div(r, g) if not r.is_zero() else r for r in rows]
    scalar = Fraction(0)
    for r in rows:
        c = r.content()
        if not c:
            continue
        scalar = c if not scalar else Fraction(
            _int_gcd(scalar.numerator, c.numerator),
            scalar.denominator * c.denominator // _int_gcd(scalar.denominator, c.denominator),
        )
    if scalar and scalar != 1:
        inv = 1 / scalar
        rows = [r * inv for r in rows]
    return rows


def _rows_gcd_list(rows: list[UPoly]) -> UPoly:
    g = ZERO
    for r in rows:
        if r.is_zero():
            continue
        g = r.primitive() if g.is_zero() else poly_gcd(g, r).primitive()
        if g.degree == 0:
            return ONE
    return g if not g.is_zero() else ONE


def _amajor_prem(a: list[UPoly], b: list[UPoly]) -> list[UPoly]:
    """lc(b)^(deg a - deg b + 1) * a mod b, polynomials in a over Q[q]."""
    lead = b[-1]
    db = len(b) - 1
    target = len(a) - db
    steps = 0
    rem = a[:]
    while rem and len(rem) - 1 >= db:
        top = rem[-1]
        shift = len(rem) - 1 - db
        rem = [r * lead for r in rem]
        for i, bc in enumerate(b):
            rem[shift + i] = rem[shift + i] - top * bc
        while rem and rem[-1].is_zero():
            rem.pop()
        steps += 1
    missing = target - steps
    if rem and missing > 0:
        f = lead**missing
        rem = [r * f for r in rem]
    return rem


def _amajor_gcd(a: list[UPoly], b: list[UPoly]) -> list[UPoly]:
    """Subresultant-PRS gcd of primitive a-major polynomials.

    The parameter degree stays small throughout the package, so running the
    remainder sequence in the a-direction needs only a handful of steps with
    coefficients that are plain q-polynomials.
    """
    a = _rows_primitive(a)
    b = _rows_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    h = ONE
    s = ONE
    while True:
        delta = len(a) - len(b)
        r = _amajor_prem(a, b)
        if not r:
            return _rows_primitive(b)
        if len(r) == 1:
            return [ONE]
        divisor = s * (h**delta)
        a, b = b, [exact_div(x, divisor) if not x.is_zero() else x for x in r]
        s = a[-1]
        if delta == 1:
            h = s
        elif delta > 1:
            h = exact_div(s**delta, h ** (delta - 1))


def _amajor_exact_div(a: list[UPoly], b: list[UPoly]) -> list[UPoly]:
    """Exact division of a-major polynomials over Q[q]."""
    if not a:
        return []
    rem = a[:]
    db = len(b) - 1
    lead = b[-1]
    quot = [ZERO] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        coeff = rem[i]
        if coeff.is_zero():
            continue
        t = exact_div(coeff, lead)
        quot[i - db] = t
        for j, bc in enumerate(b):
            rem[i - db + j] = rem[i - db + j] - t * bc
    if any(not r.is_zero() for r in rem):
        raise ValueError("bivariate division is not exact")
    return quot


def _graded_leading_coeff(p: APoly):
    """Coefficient of the graded-leading monomial (total degree, then a-degree)."""
    best = None
    best_key = None
    for j, row in enumerate(p.rows):
        if row.is_zero():
            continue
        i = row.degree
        key = (i + j, j)
        if best_key is None or key > best_key:
            best_key = key
            best = row.c[-1]
    return best


class RatFun:
    """Reduced fraction num/den of polynomials in (a, q)."""

    __slots__ = ("num", "den")

    def __init__(self, num: APoly, den: APoly, *, reduced: bool = False) -> None:
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_upoly(u: UPoly) -> "RatFun":
        return RatFun(APoly.from_upoly(u), APoly.const(1), reduced=True)

    @staticmethod
    def const(x) -> "RatFun":
        return RatFun(APoly.const(x), APoly.const(1), reduced=True)

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(APoly._raw([]), APoly.const(1), reduced=True)

    @staticmethod
    def q_power(e: int) -> "RatFun":
        if e >= 0:
            return RatFun(APoly.from_upoly(UPoly.monomial(1, e)), APoly.const(1), reduced=True)
        return RatFun(APoly.const(1), APoly.from_upoly(UPoly.monomial(1, -e)), reduced=True)

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_a_free(self) -> bool:
        return self.num.is_a_free() and self.den.is_a_free()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, UPoly)):
            return self == (RatFun.const(other) if not isinstance(other, UPoly) else RatFun.from_upoly(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, reduced=True)

    def __mul__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFun") -> "RatFun":
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __repr__(self) -> str:
        return f"RatFun({self.num!r} / {self.den!r})"


def normalize(num: APoly, den: APoly) -> RatFun:
    """Canonical reduced fraction; equal fractions produce equal objects."""
    return RatFun(num, den)


def combine(kind: str, x: RatFun, y: RatFun) -> RatFun:
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    raise ValueError(f"unknown combine kind {kind!r}")


def _rows_gcd(p: APoly) -> UPoly:
    """gcd in Q[q] of the a-major rows: the a-free content of p."""
    g = ZERO
    for row in p.rows:
        if row.is_zero():
            continue
        g = row.primitive() if g.is_zero() else poly_gcd(g, row).primitive()
        if g.degree == 0:
            return ONE
    return g


def _reduce(num: APoly, den: APoly) -> tuple[APoly, APoly]:
    if num.is_zero():
        return APoly._raw([]), APoly.const(1)
    if num.is_a_free() and den.is_a_free():
        n0, d0 = num.as_upoly(), den.as_upoly()
        g = poly_gcd(n0, d0)
        if g.degree > 0:
            n0, d0 = exact_div(n0, g), exact_div(d0, g)
        lead = Fraction(d0.leading())
        if lead != 1:
            inv = 1 / lead
            n0, d0 = n0 * inv, d0 * inv
        return APoly.from_upoly(n0), APoly.from_upoly(d0)
    if den.is_a_free() or num.is_a_free():
        # one side a-free: any common divisor is a-free, so a univariate gcd
        # against the other side's a-free content settles the reduction
        if den.is_a_free():
            d0 = den.as_upoly()
            g = poly_gcd(_rows_gcd(num), d0)
            if g.degree > 0:
                num = APoly([exact_div(r, g) if not r.is_zero() else r for r in num.rows])
                d0 = exact_div(d0, g)
            lead = Fraction(d0.leading())
            if lead != 1:
                inv = 1 / lead
                num = num * inv
                d0 = d0 * inv
            return num, APoly.from_upoly(d0)
        n0 = num.as_upoly()
        g = poly_gcd(n0, _rows_gcd(den))
        if g.degree > 0:
            n0 = exact_div(n0, g)
            den = APoly([exact_div(r, g) if not r.is_zero() else r for r in den.rows])
        lead = _graded_leading_coeff(den)
        if lead != 1:
            inv = 1 / Fraction(lead)
            n0 = n0 * inv
            den = den * inv
        return APoly.from_upoly(n0), den

    # general case: split off the a-free contents, take the a-major gcd of
    # the primitive parts, and reduce the content fraction separately
    ncont = _rows_gcd(num)
    dcont = _rows_gcd(den)
    nrows = num.rows if ncont.degree == 0 else [
        exact_div(r, ncont) if not r.is_zero() else r for r in num.rows
    ]
    drows = den.rows if dcont.degree == 0 else [
        exact_div(r, dcont) if not r.is_zero() else r for r in den.rows
    ]
    g = _amajor_gcd(nrows, drows)
    if len(g) > 1:
        nrows = _amajor_exact_div(nrows, g)
        drows = _amajor_exact_div(drows, g)
    cg = poly_gcd(ncont, dcont)
    if cg.degree > 0:
        ncont, dcont = exact_div(ncont, cg), exact_div(dcont, cg)
    num2 = APoly(nrows) * ncont
    den2 = APoly(drows) * dcont
    lead = _graded_leading_coeff(den2)
    if lead != 1:
        inv = 1 / Fraction(lead)
        num2 = num2 * inv
        den2 = den2 * inv
    return num2, den2


def _a_lift(u: UPoly) -> APoly:
    """Interpret a polynomial written in the variable a as an APoly."""
    return APoly([UPoly.const(c) for c in u.c])


def substitute_a(x: RatFun, c, e: int = 0) -> RatFun:
    """Substitute a := c * q^e (rational c, integer e; c*q^e nonzero).

    Covers both spec substitution forms: a := q^e (c = 1) and a := rational
    (e = 0).  Raises DenominatorVanishes when the denominator maps to zero.
    """
    if not c:
        raise ValueError("substitution value must be nonzero")
    dnum, dshift = x.den.substitute(c, e)
    if dnum.is_zero():
        raise DenominatorVanishes("denominator vanishes under substitution")
    nnum, nshift = x.num.substitute(c, e)
    # result = (nnum / q^nshift) / (dnum / q^dshift)
    shift = dshift - nshift
    if shift >= 0:
        return RatFun(APoly.from_upoly(nnum.shift(shift)), APoly.from_upoly(dnum))
    return RatFun(APoly.from_upoly(nnum), APoly.from_upoly(dnum.shift(-shift)))
