"""Exact scalar arithmetic: binomials, integer roots, multiplicity thresholds
and word-size prime fields.

Integers are plain Python ``int`` and rationals are :class:`fractions.Fraction`
(always reduced, positive denominator), so there is no wrapper type for either.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConfigurationError, DomainError

__all__ = [
    "PRIMES",
    "PrimeField",
    "binom",
    "falling_factorial",
    "is_prime",
    "isqrt",
    "m_min",
    "power",
    "prime_list",
]


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1), with the empty product equal to 1."""
    if k < 0:
        raise DomainError(f"falling factorial needs k >= 0, got {k}")
    out = 1
    for t in range(k):
        out *= n - t
    return out


def binom(n: int, k: int) -> int:
    """Generalized binomial coefficient n (n-1) ... (n-k+1) / k!.

    ``n`` may be any integer (including negative); ``k`` must be >= 0.

    >>> binom(5, 2), binom(-3, 2), binom(-1, 1)
    (10, 6, -1)
    """
    if k < 0:
        raise DomainError(f"binom needs k >= 0, got {k}")
    out = 1
    # after step t, out == binom(n, t+1), so each division is exact
    for t in range(k):
        out = out * (n - t) // (t + 1)
    return out


def power(base: int, exp: int) -> int:
    """``base ** exp`` with the convention 0**0 == 1 (Python already agrees)."""
    if exp < 0:
        raise DomainError("negative exponent")
    return base**exp


def isqrt(n: int) -> int:
    """Largest t with t*t <= n."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def m_min(a: int, b: int, c: int, d: int) -> int:
    """Smallest multiplicity m with a*b*c*m**2 > d**2.

    On the blow-up of P(a, b, c) this is the first m for which dH - mE has
    negative self-intersection d**2/(abc) - m**2.
    """
    for v in (a, b, c, d):
        if v < 1:
            raise DomainError(f"m_min needs positive arguments, got {(a, b, c, d)}")
    return 1 + isqrt(d * d // (a * b * c))


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24, which covers word sizes."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# The ten largest primes below 2**62, largest first. Consumed in this order so
# that every certificate is reproducible from its prime alone.
PRIMES: tuple[int, ...] = tuple(
    2**62 - k for k in (57, 87, 117, 143, 153, 167, 171, 195, 203, 273)
)


def prime_list(seed: int | None = None, extra: int = 0) -> list[int]:
    """The fixed prime list, optionally followed by ``extra`` random primes.

    Random primes are drawn from [2**61, 2**62) by a ``random.Random(seed)``
    generator, so a given seed always yields the same list.
    """
    primes = list(PRIMES)
    if extra <= 0:
        return primes
    if seed is None:
        raise ConfigurationError("randomized extra primes need an explicit seed")
    rng = random.Random(seed)
    while len(primes) < len(PRIMES) + extra:
        q = rng.randrange(2**61, 2**62) | 1
        while not is_prime(q):
            q -= 2
        if q not in primes:
            primes.append(q)
    return primes


@dataclass(frozen=True)
class PrimeField:
    """A residue ``value`` modulo the prime ``modulus``."""

    modulus: int
    value: int = 0

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise DomainError(f"{self.modulus} is not prime")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeField):
            if other.modulus != self.modulus:
                raise DomainError("mixing residues of different moduli")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, v: int) -> PrimeField:
        return PrimeField(self.modulus, v)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def inverse(self) -> PrimeField:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._new(pow(self.value, -1, self.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self._new(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(pow(self.value, e, self.modulus))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.value - o) % self.modulus == 0

    def __hash__(self):
        return hash((self.modulus, self.value))

    def __int__(self):
        return self.value
