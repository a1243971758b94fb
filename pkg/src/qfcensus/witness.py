"""Explicit integral witnesses that <1,1,1,-p,p> is equivalent to the
Lorentzian form <1,1,1,1,-1> for primes p = 7 mod 8.

Writing p = 8k - 1, the 2x2 matrix A = [[4k, 4k-1], [4k-1, 4k]] satisfies
A diag(1,-1) A^t = diag(p,-p) exactly, and padding A (with its columns
swapped) by the identity gives a 5x5 change of basis realizing the
equivalence.  Everything is verified in exact integer arithmetic; the
invariant-based decision procedure is the independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime

from .forms import DiagonalForm, equivalent_over_q

__all__ = [
    "LORENTZIAN_FORM",
    "EquivalenceWitness",
    "build_witness",
    "verify_form_equivalence",
]

LORENTZIAN_FORM = DiagonalForm((1, 1, 1, 1, -1))

Matrix = tuple[tuple[int, ...], ...]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b))
        for row in a
    )


def _transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def _diagonal(*entries: int) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True)
class EquivalenceWitness:
    """p = 8k - 1 together with the exact matrices realizing the
    equivalence: the 2x2 block A and the full 5x5 change of basis T with
    T^t diag(1,1,1,1,-1) T = diag(1,1,1,-p,p)."""

    p: int
    k: int
    a_matrix: Matrix
    t_matrix: Matrix
    det_a: int


def build_witness(p: int) -> EquivalenceWitness:
    """Construct and exactly verify the witness for a prime p = 7 mod 8."""
    if p % 8 != 7:
        raise ValueError(f"p = {p} is not 7 mod 8")
    if not isprime(p):
        raise ValueError(f"p = {p} is not prime")
    k = (p + 1) // 8
    a = ((4 * k, 4 * k - 1), (4 * k - 1, 4 * k))
    if _matmul(_matmul(a, _diagonal(1, -1)), _transpose(a)) != _diagonal(p, -p):
        raise AssertionError(f"block identity failed for p = {p}")
    det_a = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if det_a != p:
        raise AssertionError(f"det A = {det_a} differs from p = {p}")
    # Swapping A's columns reorders the target to diag(-p, p), so the
    # composite form comes out as <1,1,1,-p,p> in that coordinate order.
    block = ((4 * k - 1, 4 * k), (4 * k, 4 * k - 1))
    t = tuple(
        tuple(
            block[i - 3][j - 3]
            if i >= 3 and j >= 3
            else int(i == j)
            for j in range(5)
        )
        for i in range(5)
    )
    j_matrix = _diagonal(1, 1, 1, 1, -1)
    target = _diagonal(1, 1, 1, -p, p)
    if _matmul(_matmul(_transpose(t), j_matrix), t) != target:
        raise AssertionError(f"5x5 congruence failed for p = {p}")
    return EquivalenceWitness(p, k, a, t, det_a)


def verify_form_equivalence(p: int) -> bool:
    """True when the explicit witness checks out exactly and the invariant
    classification independently declares <1,1,1,-p,p> equivalent to the
    Lorentzian form."""
    build_witness(p)
    return equivalent_over_q(DiagonalForm((1, 1, 1, -p, p)), LORENTZIAN_FORM)
