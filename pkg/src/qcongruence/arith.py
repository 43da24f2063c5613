"""Exact scalar arithmetic.

Arbitrary-precision integers and rationals are Python's built-in ``int`` and
``fractions.Fraction`` (always canonical: positive denominator, reduced).
On top of those this module supplies the number-theoretic helpers the rest of
the package needs: the Jacobi--Kronecker symbol, residues of rationals modulo
prime powers, p-adic valuations, least non-negative residues and a small
deterministic primality test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class DenominatorNotInvertible(ArithmeticError):
    """Raised when reducing a rational whose denominator the prime divides."""


class ZeroInput(ValueError):
    """Raised for operations undefined at zero (e.g. the valuation of 0)."""


Rational = Fraction  # canonical exact rational type used across the package


@dataclass(frozen=True)
class ResidueClass:
    """A residue ``value`` modulo ``prime**exponent`` with 0 <= value < p^s."""

    value: int
    prime: int
    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        if not 0 <= self.value < self.prime**self.exponent:
            raise ValueError("value out of range")

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent


def least_residue(z: int, s: int) -> int:
    """Least non-negative residue of z modulo s (s > 0)."""
    if s <= 0:
        raise ValueError("modulus must be positive")
    return z % s


def kronecker(a: int, n: int) -> int:
    """Jacobi--Kronecker symbol (a/n) for n > 0.

    Fully multiplicative in n, with the standard extension at 2:
    (a/2) = 0, 1, -1 according as a is even, a = +-1 (mod 8), a = +-3 (mod 8).
    """
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n via quadratic reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def padic_valuation(r: Fraction | int, p: int) -> int:
    """Exponent v with r = p^v * u, u a p-unit.  Raises ZeroInput for r = 0."""
    if r == 0:
        raise ZeroInput("valuation of zero is undefined")
    r = Fraction(r)
    v = 0
    num = r.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = r.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def modinv(a: int, m: int) -> int:
    """Inverse of a modulo m (extended Euclid); a must be coprime to m."""
    g, x = _xgcd(a % m, m)
    if g != 1:
        raise DenominatorNotInvertible(f"{a} is not invertible modulo {m}")
    return x % m


def _xgcd(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_r, old_s


def rational_mod(r: Fraction | int, p: int, s: int = 1) -> ResidueClass:
    """Residue of the rational r modulo p^s.

    Requires p not to divide den(r); then value = num * den^{-1} (mod p^s).
    """
    if s < 1:
        raise ValueError("exponent must be >= 1")
    r = Fraction(r)
    mod = p**s
    if r.denominator % p == 0:
        raise DenominatorNotInvertible(f"denominator {r.denominator} not invertible mod {p}^{s}")
    value = (r.numerator % mod) * modinv(r.denominator, mod) % mod
    return ResidueClass(value, p, s)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit inputs."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]
