"""Diagonal quadratic forms over Q and their local and global invariants.

Forms are integer diagonal tuples.  Invariants (signature, determinant
square class, Hasse symbol per place) are computed exactly; anisotropy is
decided place by place and certified globally, with a brute isotropy search
available as an independent check.  Congruence diagonalization over the
rationals connects arbitrary symmetric matrices to the diagonal world.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np
from sympy import factorint

from .padic import Place, hilbert, is_square_local

__all__ = [
    "DiagonalForm",
    "Signature",
    "LocalInvariant",
    "SymmetricRationalMatrix",
    "signature",
    "hasse_invariant",
    "local_invariant",
    "local_anisotropic",
    "local_anisotropic_rank4",
    "ternary_represents",
    "global_anisotropic",
    "candidate_places",
    "isotropy_search",
    "diagonalize",
    "equivalent_over_q",
    "projectively_equivalent",
]


@dataclass(frozen=True)
class DiagonalForm:
    """A nondegenerate diagonal quadratic form with integer coefficients."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(operator.index(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("a form needs at least one coefficient")
        if any(c == 0 for c in coeffs):
            raise ValueError("zero coefficient makes the form degenerate")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    @property
    def determinant(self) -> int:
        return math.prod(self.coefficients)

    def evaluate(self, vector: Sequence[int]) -> int:
        if len(vector) != self.rank:
            raise ValueError("vector length does not match rank")
        return sum(c * x * x for c, x in zip(self.coefficients, vector))

    def bilinear(self, u: Sequence[int], w: Sequence[int]) -> Fraction:
        """The associated symmetric pairing B(u, w) with B(u, u) = f(u)."""
        if len(u) != self.rank or len(w) != self.rank:
            raise ValueError("vector length does not match rank")
        return Fraction(
            sum(c * x * y for c, x, y in zip(self.coefficients, u, w))
        )

    def scale(self, factor: int) -> "DiagonalForm":
        if factor == 0:
            raise ValueError("scaling by 0 is degenerate")
        return DiagonalForm(tuple(factor * c for c in self.coefficients))

    @classmethod
    def parse(cls, text: str) -> "DiagonalForm":
        """Parse the display syntax, e.g. "<1,1,1,-7>"."""
        body = text.strip()
        if body.startswith("<") and body.endswith(">"):
            body = body[1:-1]
        try:
            coeffs = tuple(int(part) for part in body.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse form: {text!r}") from exc
        return cls(coeffs)

    @classmethod
    def from_rational(cls, entries: Sequence[Fraction]) -> "DiagonalForm":
        """Rescale rational diagonal entries to integers in the same square
        classes (each entry times its squared denominator)."""
        return cls(tuple(int(e * e.denominator**2) for e in entries))

    def __str__(self) -> str:
        return "<" + ",".join(str(c) for c in self.coefficients) + ">"


class Signature(NamedTuple):
    positives: int
    negatives: int


class LocalInvariant(NamedTuple):
    place: Place
    hasse: int
    det_is_square: bool


def signature(f: DiagonalForm) -> Signature:
    pos = sum(1 for c in f.coefficients if c > 0)
    return Signature(pos, f.rank - pos)


def hasse_invariant(f: DiagonalForm, v: Place) -> int:
    """Product of hilbert(a_i, a_j, v) over pairs i < j (empty product 1)."""
    coeffs = f.coefficients
    s = 1
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            s *= hilbert(coeffs[i], coeffs[j], v)
    return s


def local_invariant(f: DiagonalForm, v: Place) -> LocalInvariant:
    return LocalInvariant(v, hasse_invariant(f, v), is_square_local(f.determinant, v))


def local_anisotropic(f: DiagonalForm, v: Place) -> bool:
    """Whether f has no nontrivial zero over the completion at v."""
    n, d = f.rank, f.determinant
    if v.is_real:
        pos, neg = signature(f)
        return pos == 0 or neg == 0
    if n == 1:
        return True
    if n == 2:
        return not is_square_local(-d, v)
    if n == 3:
        return hilbert(-1, -d, v) != hasse_invariant(f, v)
    if n == 4:
        return local_anisotropic_rank4(f, v)
    return False


def local_anisotropic_rank4(f: DiagonalForm, v: Place) -> bool:
    """Rank-4 anisotropy test at a finite place: determinant a local square
    and Hasse invariant equal to -(-1, -1) there."""
    if f.rank != 4:
        raise ValueError("form must have rank 4")
    if v.is_real:
        raise ValueError("test applies at finite places only")
    return (
        is_square_local(f.determinant, v)
        and hasse_invariant(f, v) == -hilbert(-1, -1, v)
    )


def ternary_represents(g: DiagonalForm, value: int, v: Place) -> bool:
    """Whether a rank-3 form represents a nonzero value over the completion
    at v: either -value * det(g) is not a local square, or the Hasse
    invariant of g equals (-1, -det(g)) there."""
    if g.rank != 3:
        raise ValueError("form must have rank 3")
    if value == 0:
        raise ValueError("value must be nonzero")
    d = g.determinant
    if not is_square_local(-value * d, v):
        return True
    return hasse_invariant(g, v) == hilbert(-1, -d, v)


def candidate_places(*forms: DiagonalForm) -> tuple[Place, ...]:
    """The real place, 2, and every odd prime dividing some coefficient:
    outside these every form involved is locally isotropic (rank >= 3) or
    has trivially computable behavior, so scans can stop here."""
    odd: set[int] = set()
    for f in forms:
        for c in f.coefficients:
            odd.update(p for p in factorint(abs(c)) if p > 2)
    return (Place.real(), Place.two(), *(Place(p) for p in sorted(odd)))


def global_anisotropic(f: DiagonalForm) -> tuple[bool, Optional[Place]]:
    """Decide anisotropy over Q; on success also return a witnessing place.

    Definite forms are anisotropic with the real place as witness.
    Indefinite forms of rank >= 5 are isotropic.  Otherwise anisotropy
    holds exactly when some candidate place is locally anisotropic.
    """
    pos, neg = signature(f)
    if pos == 0 or neg == 0:
        return True, Place.real()
    if f.rank >= 5:
        return False, None
    for v in candidate_places(f):
        if v.is_real:
            continue
        if local_anisotropic(f, v):
            return True, v
    return False, None


def _canonical_values(bound: int) -> list[int]:
    values = [0]
    for k in range(1, bound + 1):
        values.extend((k, -k))
    return values


def isotropy_search(
    f: DiagonalForm, bound: int
) -> Optional[tuple[int, ...]]:
    """Brute search for a nontrivial zero with all entries in [-bound, bound].

    Returns the first zero in the canonical order 0, 1, -1, 2, -2, ... per
    coordinate, or None.  Independent of the invariant machinery.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    coeffs = f.coefficients
    n = len(coeffs)
    values = _canonical_values(bound)
    if n == 1:
        return None
    if n == 2 or max(abs(c) for c in coeffs) * n * bound * bound > 2**52:
        for vec in itertools.product(values, repeat=n):
            if any(vec) and f.evaluate(vec) == 0:
                return vec
        return None
    # Enumerate all but the last coordinate with the second-to-last
    # vectorized, then solve c_last * x^2 = -q exactly.
    c_last = coeffs[-1]
    vals = np.array(values, dtype=np.int64)
    prev_sq = coeffs[-2] * vals * vals
    for prefix in itertools.product(values, repeat=n - 2):
        base = sum(c * x * x for c, x in zip(coeffs, prefix))
        q = base + prev_sq  # indexed like vals
        quot, rem = np.divmod(-q, c_last)
        roots = np.rint(np.sqrt(np.maximum(quot, 0))).astype(np.int64)
        good = (rem == 0) & (quot >= 0) & (roots * roots == quot) & (roots <= bound)
        if not good.any():
            continue
        for idx in np.flatnonzero(good):
            x_prev = int(vals[idx])
            root = int(roots[idx])
            if root == 0 and x_prev == 0 and not any(prefix):
                continue
            return (*prefix, x_prev, root)
    return None


class SymmetricRationalMatrix:
    """A symmetric matrix of Fractions, validated on construction."""

    def __init__(self, rows: Sequence[Sequence[Fraction | int]]) -> None:
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(data)
        if n == 0 or any(len(row) != n for row in data):
            raise ValueError("matrix must be square and nonempty")
        for i in range(n):
            for j in range(i + 1, n):
                if data[i][j] != data[j][i]:
                    raise ValueError("matrix must be symmetric")
        self.rows = data
        self.n = n

    @classmethod
    def from_diagonal(cls, f: DiagonalForm) -> "SymmetricRationalMatrix":
        n = f.rank
        return cls(
            [
                [f.coefficients[i] if i == j else 0 for j in range(n)]
                for i in range(n)
            ]
        )

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.rows[i][j]


def diagonalize(
    matrix: SymmetricRationalMatrix,
) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[Fraction, ...]]:
    """Congruence-diagonalize a nonsingular symmetric rational matrix.

    Returns (T, diag) with T^t M T diagonal; rows of T are returned as
    tuples.  Raises ValueError on a singular matrix.
    """
    n = matrix.n
    w = [list(row) for row in matrix.rows]
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add_col(dst: int, src: int, factor: Fraction) -> None:
        # column operation mirrored on rows keeps w congruent to the input
        for r in range(n):
            w[r][dst] += factor * w[r][src]
        for c in range(n):
            w[dst][c] += factor * w[src][c]
        for r in range(n):
            t[r][dst] += factor * t[r][src]

    def swap_cols(i: int, j: int) -> None:
        for r in range(n):
            w[r][i], w[r][j] = w[r][j], w[r][i]
        for c in range(n):
            w[i][c], w[j][c] = w[j][c], w[i][c]
        for r in range(n):
            t[r][i], t[r][j] = t[r][j], t[r][i]

    for k in range(n):
        if w[k][k] == 0:
            pivot = next((j for j in range(k + 1, n) if w[j][j] != 0), None)
            if pivot is not None:
                swap_cols(k, pivot)
            else:
                partner = next(
                    (j for j in range(k + 1, n) if w[k][j] != 0), None
                )
                if partner is None:
                    raise ValueError("matrix is singular")
                add_col(k, partner, Fraction(1))
        for j in range(k + 1, n):
            if w[k][j] != 0:
                add_col(j, k, -w[k][j] / w[k][k])

    diag = tuple(w[i][i] for i in range(n))
    if any(d == 0 for d in diag):
        raise ValueError("matrix is singular")
    return tuple(tuple(row) for row in t), diag


def equivalent_over_q(f: DiagonalForm, g: DiagonalForm) -> bool:
    """Rational equivalence via the classifying invariants: signature,
    determinant square class, and Hasse symbol at every candidate place."""
    if f.rank != g.rank:
        raise ValueError("forms must have equal rank")
    if signature(f) != signature(g):
        return False
    prod = f.determinant * g.determinant
    if prod < 0 or math.isqrt(prod) ** 2 != prod:
        return False
    return all(
        hasse_invariant(f, v) == hasse_invariant(g, v)
        for v in candidate_places(f, g)
    )


def _squarefree_scalars(f: DiagonalForm, g: DiagonalForm) -> Iterator[int]:
    primes = sorted(
        p
        for p in factorint(abs(f.determinant * g.determinant))
        if p > 2
    )
    subsets: list[int] = []
    for r in range(len(primes) + 1):
        for combo in itertools.combinations(primes, r):
            subsets.append(math.prod(combo))
    for core in sorted(set(m for s in subsets for m in (s, 2 * s))):
        yield core
        yield -core


def projectively_equivalent(
    f: DiagonalForm, g: DiagonalForm
) -> tuple[bool, Optional[int]]:
    """Equivalence up to a nonzero rational scalar.

    Scans squarefree scalars built from 2 and the odd primes of the two
    determinants, smallest magnitude first and positive before negative,
    and returns the first scalar making the forms rationally equivalent.
    """
    if f.rank != g.rank:
        raise ValueError("forms must have equal rank")
    for lam in _squarefree_scalars(f, g):
        if equivalent_over_q(f, g.scale(lam)):
            return True, lam
    return False, None
