"""Congruence checking for rational functions modulo composite moduli.

A congruence A == B (mod P) between rational functions means: P divides the
numerator of A - B in lowest terms and is coprime to its denominator.  The
moduli used here decompose into pairwise-coprime parts:

* cyclotomic powers Phi_d(q)^e  (this covers [n] = prod_{d|n, d>1} Phi_d and
  composites such as [n] Phi_n(q)^2, realized as exponent bumps),
* a-linear forms (1 - c a q^t), (a - c q^t) and the quadratic (1 - a^2 q^{2t}),
  checked by exact substitution of the root(s) a := c q^{+-t},
* scaled binomials (1 - c q^t) with |c| != 1, which arise when a sampled
  rational parameter sits inside the modulus.

For a fraction with factored denominator (QFrac) the cyclotomic multiplicity
of the denominator is a key lookup, and the check `Phi_d^(w+e) | numerator`
is equivalent to the lowest-terms condition; for a reduced RatFun the
denominator test is direct since Phi_d is irreducible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .qpoly import (
    UPoly,
    cyclotomic,
    div_binomial,
    divisors,
    euler_phi,
    reduce_mod_cyclo_power,
)
from .ratfun import APoly, DenominatorVanishes, RatFun
from .qsymbols import QFrac, QProduct


class ModulusPartsNotCoprime(ValueError):
    pass


@dataclass(frozen=True)
class AForm:
    """An a-involving modulus part, degree one or two in a."""

    kind: str  # "one_minus_aq" | "a_minus_q" | "one_minus_a2q2"
    t: int
    c: Fraction | int = 1

    def substitutions(self) -> list[tuple[Fraction | int, int]]:
        """Roots as substitutions a := c * q^e."""
        if self.kind == "one_minus_aq":
            return [(1 / Fraction(self.c) if self.c != 1 else 1, -self.t)]
        if self.kind == "a_minus_q":
            return [(self.c, self.t)]
        if self.kind == "one_minus_a2q2":
            return [(1, -self.t), (-1, -self.t)]
        raise ValueError(f"unknown a-form {self.kind}")

    def label(self) -> str:
        c = "" if self.c == 1 else f"{self.c}*"
        if self.kind == "one_minus_aq":
            return f"1-{c}a*q^{self.t}"
        if self.kind == "a_minus_q":
            return f"a-{c}q^{self.t}"
        return f"1-a^2*q^{2 * self.t}"


@dataclass(frozen=True)
class ScaledPart:
    """(1 - c q^t)^e with |c| != 1: a sampled-parameter modulus factor."""

    c: Fraction
    t: int
    e: int = 1

    def label(self) -> str:
        return f"(1-{self.c}*q^{self.t})^{self.e}" if self.e > 1 else f"1-{self.c}*q^{self.t}"


@dataclass(frozen=True)
class Modulus:
    q_parts: tuple[tuple[int, int], ...] = ()  # (cyclotomic index d, exponent e)
    a_parts: tuple[AForm, ...] = ()
    scaled_parts: tuple[ScaledPart, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for d, e in self.q_parts:
            if d < 1 or e < 1:
                raise ValueError("bad cyclotomic part")
            if d in seen:
                raise ModulusPartsNotCoprime(f"Phi_{d} listed twice")
            seen.add(d)
        roots = set()
        for f in self.a_parts:
            for sub in f.substitutions():
                if sub in roots:
                    raise ModulusPartsNotCoprime(f"a-parts share the root {sub}")
                roots.add(sub)
        for s in self.scaled_parts:
            if abs(s.c) == 1 or s.c == 0:
                raise ModulusPartsNotCoprime("scaled part must have |c| != 1")

    def is_empty(self) -> bool:
        return not (self.q_parts or self.a_parts or self.scaled_parts)

    def labels(self) -> list[str]:
        out = [f"Phi_{d}" + (f"^{e}" if e > 1 else "") for d, e in self.q_parts]
        out.extend(f.label() for f in self.a_parts)
        out.extend(s.label() for s in self.scaled_parts)
        return out

    # -- constructors for the composite moduli that actually occur -----------

    @staticmethod
    def bracket(n: int, extra_phi_n: int = 0, a_pair_t: int | None = None) -> "Modulus":
        """[n], optionally times Phi_n^extra and (1 - a q^t)(a - q^t)."""
        parts = {d: 1 for d in divisors(n) if d > 1}
        if extra_phi_n:
            parts[n] = parts.get(n, 0) + extra_phi_n
        aparts: tuple[AForm, ...] = ()
        if a_pair_t is not None:
            aparts = (AForm("one_minus_aq", a_pair_t), AForm("a_minus_q", a_pair_t))
        return Modulus(tuple(sorted(parts.items())), aparts)

    @staticmethod
    def phi(n: int, e: int = 1) -> "Modulus":
        return Modulus(((n, e),))

    @staticmethod
    def phi_pair(n: int, e_plus: int = 1) -> "Modulus":
        """Phi_n(q)^e * Phi_n(-q), with Phi_n(-q) realized as Phi_2n for odd n."""
        if n % 2 == 0 or n <= 1:
            raise ValueError("phi_pair needs odd n > 1")
        return Modulus(((n, e_plus), (2 * n, 1)))

    @staticmethod
    def a_pair(n: int) -> "Modulus":
        return Modulus((), (AForm("one_minus_aq", n), AForm("a_minus_q", n)))

    @staticmethod
    def a_square(n: int) -> "Modulus":
        return Modulus((), (AForm("one_minus_a2q2", n),))

    @staticmethod
    def a_single(t: int, c=1) -> "Modulus":
        return Modulus((), (AForm("one_minus_aq", t, c),))

    @staticmethod
    def from_qbinomial(m: int, r: int) -> "Modulus":
        """The Gaussian binomial [m, r]_q as a product of cyclotomics.

        The Phi_d multiplicity of (q;q)_k is floor(k/d) for d >= 2, so the
        binomial's exponents are floor(m/d) - floor(r/d) - floor((m-r)/d).
        """
        if not 0 <= r <= m:
            raise ValueError("binomial out of range")
        parts = []
        for d in range(2, m + 1):
            e = m // d - r // d - (m - r) // d
            if e:
                parts.append((d, e))
        return Modulus(tuple(parts))


@dataclass
class PartReport:
    modulus_part: str
    divisible: bool
    coprime: bool

    @property
    def passed(self) -> bool:
        return self.divisible and self.coprime


@dataclass
class VerificationReport:
    family_id: str
    params: dict
    verdict: str  # "pass" | "fail" | "skipped-constraint"
    parts: list[PartReport] = field(default_factory=list)
    mode_notes: list[str] = field(default_factory=list)
    millis: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @staticmethod
    def skipped(family_id: str, params: dict, reason: str) -> "VerificationReport":
        return VerificationReport(family_id, params, "skipped-constraint", [], [reason])


# -- multiplicity helpers -----------------------------------------------------


def _phi_divides_apoly(p: APoly, d: int, e: int) -> bool:
    return all(reduce_mod_cyclo_power(r, d, e).is_zero() for r in p.rows)


def _phi_mult_apoly(p: APoly, d: int, cap: int = 64) -> int:
    """Phi_d-adic valuation of a nonzero APoly (capped)."""
    lo = 0
    while lo < cap and _phi_divides_apoly(p, d, lo + 1):
        lo += 1
    return lo


def _diff_as_qfrac(x, y) -> QFrac:
    return _to_qfrac(x) - _to_qfrac(y)


def _to_qfrac(x) -> QFrac:
    if isinstance(x, QFrac):
        return x
    if isinstance(x, QProduct):
        return QFrac.from_qproduct(x)
    if isinstance(x, RatFun):
        raise TypeError("use check_zero_ratfun for plain rational functions")
    raise TypeError(f"cannot interpret {type(x).__name__} as a fraction")


# -- part checks ---------------------------------------------------------------


def check_zero(x: QFrac, d: int, e: int = 1) -> PartReport:
    """Is x == 0 modulo Phi_d^e, for x with factored denominator?

    With w the Phi_d multiplicity of the denominator, the lowest-terms
    condition 'Phi_d^e divides the numerator and Phi_d is coprime to the
    denominator' is exactly Phi_d^(w+e) | num (and coprimality alone is
    Phi_d^w | num).
    """
    if x.num.is_zero():
        return PartReport(f"Phi_{d}^{e}" if e > 1 else f"Phi_{d}", True, True)
    w = x.den.phi_multiplicity(d)
    divisible = _phi_divides_apoly(x.num, d, w + e)
    coprime = True if w == 0 else (divisible or _phi_divides_apoly(x.num, d, w))
    label = f"Phi_{d}^{e}" if e > 1 else f"Phi_{d}"
    return PartReport(label, divisible, coprime)


def check_zero_ratfun(x: RatFun, d: int, e: int = 1) -> PartReport:
    """Same verdict for a reduced RatFun: direct numerator/denominator tests
    (Phi_d is irreducible, so coprimality is 'Phi_d does not divide den')."""
    label = f"Phi_{d}^{e}" if e > 1 else f"Phi_{d}"
    if x.is_zero():
        return PartReport(label, True, True)
    coprime = not _phi_divides_apoly(x.den, d, 1)
    divisible = coprime and _phi_divides_apoly(x.num, d, e)
    return PartReport(label, divisible, coprime)


def check_a_part(x, y, form: AForm) -> PartReport:
    """x == y modulo the a-linear form, by exact substitution of its roots."""
    diff = _diff_as_qfrac(x, y)
    divisible = True
    coprime = True
    for c, ee in form.substitutions():
        try:
            num, _den = diff.substitute_raw(c, ee)
        except DenominatorVanishes:
            coprime = False
            divisible = False
            break
        if not num.is_zero():
            divisible = False
    return PartReport(form.label(), divisible, coprime)


def check_scaled_part(x: QFrac, part: ScaledPart) -> PartReport:
    """Divisibility by (1 - c q^t)^e for |c| != 1.

    The denominator multiplicity of the binomial comes from the factored
    keys; distinct binomial keys in the package are pairwise coprime to it
    (no shared roots: |c| != 1 rules out cyclotomic overlap, and key
    coincidence is exact equality).
    """
    w = x.den.qlin.get((part.c, part.t), 0)
    need = w + part.e
    divisible = True
    for row in x.num.rows:
        cur = row
        ok = 0
        try:
            for _ in range(need):
                cur = div_binomial(cur, part.c, part.t)
                ok += 1
        except ValueError:
            pass
        if ok < need:
            divisible = False
            break
    return PartReport(part.label(), divisible, True)


def check_congruent(x, y, modulus: Modulus, *, family_id: str = "", params: dict | None = None) -> VerificationReport:
    """Aggregate all modulus parts on x - y; pass iff every part passes."""
    t0 = time.perf_counter()
    diff = _diff_as_qfrac(x, y)
    parts = []
    for d, e in modulus.q_parts:
        parts.append(check_zero(diff, d, e))
    for form in modulus.a_parts:
        parts.append(check_a_part(diff, QFrac.zero(), form))
    for sp in modulus.scaled_parts:
        parts.append(check_scaled_part(diff, sp))
    verdict = "pass" if all(p.passed for p in parts) else "fail"
    report = VerificationReport(family_id, params or {}, verdict, parts)
    report.millis = (time.perf_counter() - t0) * 1000.0
    return report


def check_exact_equality(x, y, *, family_id: str = "", params: dict | None = None) -> VerificationReport:
    """Exact identity x == y via cross-multiplication (no modulus)."""
    t0 = time.perf_counter()
    diff = _diff_as_qfrac(x, y)
    ok = diff.num.is_zero()
    part = PartReport("exact", ok, True)
    report = VerificationReport(family_id, params or {}, "pass" if ok else "fail", [part])
    report.millis = (time.perf_counter() - t0) * 1000.0
    return report
