"""Places of Q and exact local symbol arithmetic.

A place is the real completion, the dyadic completion, or the completion at
an odd prime; the real place is written -1 wherever places are serialized.
Everything here runs on plain Python integers, so nothing can overflow, and
the residue-search oracles are the independent cross-checks for the closed
formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from sympy import isprime

__all__ = [
    "Place",
    "ValuationDecomposition",
    "InsufficientDepthError",
    "valuation",
    "legendre",
    "eps_omega",
    "is_square_local",
    "hilbert",
    "hilbert_oracle",
    "is_square_oracle",
    "sufficient_oracle_depth",
    "dirichlet_prime",
    "two_squares",
]

# Exhaustive searches build arrays of size p**depth; refuse anything bigger.
_MAX_SEARCH_MODULUS = 5_000_000


class InsufficientDepthError(Exception):
    """A residue search ran out of precision before it could certify a sign."""


@dataclass(frozen=True, order=True)
class Place:
    """A completion of Q: real (serialized -1), dyadic (2), or an odd prime."""

    p: int = -1

    def __post_init__(self) -> None:
        p = self.p
        if p in (-1, 2):
            return
        if p < 3 or p % 2 == 0 or not isprime(p):
            raise ValueError(f"not a valid place: {p!r}")

    @classmethod
    def real(cls) -> "Place":
        return cls(-1)

    @classmethod
    def two(cls) -> "Place":
        return cls(2)

    @classmethod
    def odd(cls, p: int) -> "Place":
        if p in (-1, 2):
            raise ValueError("odd() expects an odd prime")
        return cls(p)

    @classmethod
    def from_int(cls, n: int) -> "Place":
        return cls(n)

    @property
    def is_real(self) -> bool:
        return self.p == -1

    @property
    def is_finite(self) -> bool:
        return self.p != -1

    @property
    def is_two(self) -> bool:
        return self.p == 2

    @property
    def is_odd_prime(self) -> bool:
        return self.p not in (-1, 2)

    def __int__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return "real" if self.is_real else str(self.p)


class ValuationDecomposition(NamedTuple):
    """n = p**exponent * unit with p not dividing unit."""

    exponent: int
    unit: int


def valuation(n: int, p: int) -> ValuationDecomposition:
    """Split a nonzero integer as p**exponent * unit at the prime p."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    if p < 2 or not isprime(p):
        raise ValueError(f"not a prime: {p!r}")
    exponent = 0
    while n % p == 0:
        n //= p
        exponent += 1
    return ValuationDecomposition(exponent, n)


def legendre(u: int, p: int) -> int:
    """Legendre symbol (u/p) for an odd prime p and u coprime to p."""
    if p == 2 or p < 3 or not isprime(p):
        raise ValueError(f"not an odd prime: {p!r}")
    if u % p == 0:
        raise ValueError("argument must be coprime to p")
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def eps_omega(u: int) -> tuple[int, int]:
    """The dyadic unit classes ((u-1)/2 mod 2, (u^2-1)/8 mod 2) for odd u."""
    if u % 2 == 0:
        raise ValueError("argument must be odd")
    return ((u - 1) // 2) % 2, ((u * u - 1) // 8) % 2


def is_square_local(n: int, v: Place) -> bool:
    """Whether n is a square in the completion of Q at the place v.

    Real place: positivity.  Odd prime p: even valuation and unit part a
    quadratic residue.  Dyadic place: even valuation and unit part 1 mod 8.
    """
    if n == 0:
        raise ValueError("square class of 0 is undefined")
    if v.is_real:
        return n > 0
    exponent, unit = valuation(n, v.p)
    if exponent % 2:
        return False
    if v.p == 2:
        return unit % 8 == 1
    return legendre(unit, v.p) == 1


def hilbert(a: int, b: int, v: Place) -> int:
    """Hilbert symbol (a, b) at the place v, by the closed local formulas.

    At the real place the symbol is -1 exactly when both arguments are
    negative.  At an odd prime p, writing a = p^alpha u and b = p^beta w,

        (a, b) = (-1)^(alpha beta eps(p)) (u/p)^beta (w/p)^alpha,

    and at 2 the exponent of -1 is eps(u) eps(w) + alpha omega(w)
    + beta omega(u), with eps and omega as in eps_omega.
    """
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, u = valuation(a, p)
    beta, w = valuation(b, p)
    if p == 2:
        eu, ou = eps_omega(u)
        ew, ow = eps_omega(w)
        return -1 if (eu * ew + alpha * ow + beta * ou) % 2 else 1
    sign = 1
    if alpha % 2 and beta % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(w, p)
    return sign


def sufficient_oracle_depth(a: int, b: int, v: Place) -> int:
    """Search depth guaranteed to let hilbert_oracle certify either sign.

    The rule is val_p(a) + val_p(b) + 3, raised to at least 6 at the dyadic
    place; the real place needs no depth at all.
    """
    if a == 0 or b == 0:
        raise ValueError("nonzero arguments required")
    if v.is_real:
        return 1
    depth = valuation(a, v.p).exponent + valuation(b, v.p).exponent + 3
    if v.p == 2:
        depth = max(depth, 6)
    return depth


def _strip_p_squares(n: int, p: int) -> int:
    # Dividing out p^2 preserves the square class and, via x -> p x, maps the
    # solution set of z^2 = a x^2 + b y^2 bijectively; valuations drop to 0/1.
    while n % (p * p) == 0:
        n //= p * p
    return n


def _residue_squares(mod: int) -> np.ndarray:
    x = np.arange(mod, dtype=np.int64)
    return (x * x) % mod


def hilbert_oracle(a: int, b: int, v: Place, depth: int) -> int:
    """Decide the Hilbert symbol by exhaustive residue search.

    Looks for primitive solutions of z^2 = a x^2 + b y^2 modulo p**depth.
    Any primitive solution can be scaled by a unit so that one coordinate
    equals 1, so three families (z=1, y=1, x=1) cover everything.  A family
    hit counts only when depth clears the Hensel margin for that family, so
    +1 is always a liftable certificate and -1 means no primitive residue
    solution exists at any precision.  With depth >= sufficient_oracle_depth
    the search always returns a sign; below that it may raise
    InsufficientDepthError, never report a wrong sign.
    """
    if a == 0 or b == 0:
        raise ValueError("nonzero arguments required")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if v.is_real:
        # z^2 - a x^2 - b y^2 changes sign over R unless both a, b < 0.
        return 1 if (a > 0 or b > 0) else -1
    p = v.p
    if p**depth > _MAX_SEARCH_MODULUS:
        raise ValueError(f"search modulus {p}^{depth} too large for enumeration")
    a1 = _strip_p_squares(a, p)
    b1 = _strip_p_squares(b, p)
    mod = p**depth
    am, bm = a1 % mod, b1 % mod
    val_a = 0 if a1 % p else 1
    val_b = 0 if b1 % p else 1
    e2 = 1 if p == 2 else 0

    sq = _residue_squares(mod)
    asq = (am * sq) % mod
    bsq = (bm * sq) % mod
    found = False
    # Each family's margin bound is the valuation of the gradient entry of
    # its normalized coordinate: depth > 2*val_p(2*coefficient) certifies.
    families = (
        ((1 - bsq) % mod, asq, 2 * e2),          # z = 1: a x^2 + b y^2 = 1
        ((asq + bm) % mod, sq, 2 * (e2 + val_b)),  # y = 1: z^2 = a x^2 + b
        ((bsq + am) % mod, sq, 2 * (e2 + val_a)),  # x = 1: z^2 = b y^2 + a
    )
    for needle, haystack, margin in families:
        if bool(np.isin(needle, haystack).any()):
            if depth > margin:
                return 1
            found = True
    if not found:
        return -1
    raise InsufficientDepthError(
        f"solutions modulo {p}^{depth} exist but none is certifiably liftable; "
        "increase depth"
    )


def is_square_oracle(n: int, v: Place, depth: int) -> bool:
    """Decide whether n is a local square by searching z^2 = n modulo p**depth.

    Companion oracle to is_square_local; sufficient_oracle_depth(n, 1, v)
    always suffices.
    """
    if n == 0:
        raise ValueError("nonzero argument required")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if v.is_real:
        return n > 0
    p = v.p
    if p**depth > _MAX_SEARCH_MODULUS:
        raise ValueError(f"search modulus {p}^{depth} too large for enumeration")
    n1 = _strip_p_squares(n, p)
    mod = p**depth
    hit = bool((_residue_squares(mod) == n1 % mod).any())
    if not hit:
        return False
    # Once depth rules out roots divisible by p (depth >= 2 kills them, since
    # n1 has no p^2 factor left), every hit has a unit root and the margin
    # only has to clear the valuation of 2.
    if depth > (2 if p == 2 else 1):
        return True
    raise InsufficientDepthError("depth too small to certify the square root")


def dirichlet_prime(a: int, m: int, skip: int = 0) -> int:
    """The (skip+1)-th prime congruent to a modulo m, scanning upward from a."""
    if a < 1 or m < 1:
        raise ValueError("a and m must be positive")
    if math.gcd(a, m) != 1:
        raise ValueError("a and m must be coprime")
    if skip < 0:
        raise ValueError("skip must be nonnegative")
    n, remaining = a, skip
    while True:
        if n > 1 and isprime(n):
            if remaining == 0:
                return n
            remaining -= 1
        n += m


def two_squares(q: int) -> tuple[int, int]:
    """Write a prime q = 1 (mod 4) as alpha^2 + beta^2, alpha >= beta >= 0.

    Deterministic: returns the decomposition with the smallest beta.
    """
    if q % 4 != 1 or not isprime(q):
        raise ValueError("q must be a prime congruent to 1 mod 4")
    for beta in range(math.isqrt(q // 2) + 1):
        alpha = math.isqrt(q - beta * beta)
        if alpha * alpha + beta * beta == q:
            return alpha, beta
    raise AssertionError("unreachable: primes 1 mod 4 are sums of two squares")
