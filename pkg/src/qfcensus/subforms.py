"""Certified anisotropic rank-4 subforms of the Monson rank-5 forms.

The ambient forms are <-1,1,1,aS,a> for S = 1 mod 4 and <1,1,1,aS,-a> for
S = 3 mod 4, with S odd and squarefree and a an odd prime tied to S by
congruence and Legendre conditions.  Four constructors, one per class of
(S mod 4, parity of the number of prime factors of S), each produce an
orthogonal basis spanning a signature-(3,1) subform together with a finite
place where the subform is locally anisotropic.  Certificates carry enough
data to be re-verified from scratch, and families of pairwise projectively
inequivalent certificates can be generated for any admissible S.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterator, NamedTuple, Optional

from sympy import factorint, isprime, nextprime

from .forms import (
    DiagonalForm,
    Signature,
    isotropy_search,
    local_anisotropic_rank4,
    projectively_equivalent,
    signature,
    ternary_represents,
)
from .padic import Place, dirichlet_prime, legendre, two_squares

__all__ = [
    "MonsonParameters",
    "monson_parameters",
    "AmbientForm",
    "SubformCertificate",
    "CertificateReport",
    "TernarySolution",
    "TernarySearchError",
    "case1_even",
    "case1_odd",
    "case2_even",
    "case2_odd",
    "solve_ternary",
    "verify_certificate",
    "verify_certificate_report",
    "CollisionNote",
    "FamilyReport",
    "generate_family",
    "generate_family_report",
]

_BASIS_LABELS = ("e0", "e1", "e2", "e3", "e4")


@dataclass(frozen=True)
class MonsonParameters:
    """Admissible (S, s, a): S odd squarefree with s prime factors, a an odd
    prime not dividing S, a = (-1)^s mod 4 when S = 1 mod 4 and
    a = (-1)^(s+1) mod 4 when S = 3 mod 4, and -a a nonresidue modulo every
    prime factor of S."""

    S: int
    s: int
    a: int

    def __post_init__(self) -> None:
        S, s, a = self.S, self.s, self.a
        if S < 3 or S % 2 == 0:
            raise ValueError("S must be an odd integer >= 3")
        factors = factorint(S)
        if any(e != 1 for e in factors.values()):
            raise ValueError("S must be squarefree")
        if s != len(factors):
            raise ValueError(f"S has {len(factors)} prime factors, not {s}")
        if a < 3 or a % 2 == 0 or not isprime(a):
            raise ValueError("a must be an odd prime")
        if S % a == 0:
            raise ValueError("a must not divide S")
        parity = s if S % 4 == 1 else s + 1
        if a % 4 != pow(-1, parity) % 4:
            raise ValueError(f"a = {a} is in the wrong class mod 4 for S = {S}")
        for p in factors:
            if legendre(-a, p) != -1:
                raise ValueError(f"-a must be a nonresidue mod {p}")

    @property
    def prime_factors(self) -> tuple[int, ...]:
        return tuple(sorted(factorint(self.S)))


def monson_parameters(S: int, skip: int = 0) -> MonsonParameters:
    """The (skip+1)-th admissible prime a for S, in increasing order."""
    if skip < 0:
        raise ValueError("skip must be nonnegative")
    factors = factorint(S)
    if S < 3 or S % 2 == 0 or any(e != 1 for e in factors.values()):
        raise ValueError("S must be odd, squarefree, and >= 3")
    s = len(factors)
    parity = s if S % 4 == 1 else s + 1
    want = pow(-1, parity) % 4
    a, remaining = 2, skip
    while True:
        a = int(nextprime(a))
        if S % a == 0 or a % 4 != want:
            continue
        if any(legendre(-a, p) != -1 for p in factors):
            continue
        if remaining == 0:
            return MonsonParameters(S, s, a)
        remaining -= 1


@dataclass(frozen=True)
class AmbientForm:
    """The rank-5 form <-1,1,1,aS,a> (S = 1 mod 4) or <1,1,1,aS,-a>
    (S = 3 mod 4), of signature (4,1), with its standard basis labels."""

    form: DiagonalForm
    parameters: MonsonParameters
    basis_labels: tuple[str, ...] = _BASIS_LABELS

    @classmethod
    def from_parameters(cls, params: MonsonParameters) -> "AmbientForm":
        S, a = params.S, params.a
        if S % 4 == 1:
            form = DiagonalForm((-1, 1, 1, a * S, a))
        else:
            form = DiagonalForm((1, 1, 1, a * S, -a))
        assert signature(form) == Signature(4, 1)
        return cls(form, params)


@dataclass
class SubformCertificate:
    """An orthogonal basis in ambient coordinates spanning a rank-4 subform,
    with a finite place witnessing local anisotropy and the construction
    scalars needed to re-audit the choice."""

    basis: tuple[tuple[int, ...], ...]
    subform: DiagonalForm
    witness_place: Place
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "basis": [list(v) for v in self.basis],
            "subform": str(self.subform),
            "witness_place": int(self.witness_place),
            "details": dict(self.details),
        }


def _unit_vector(i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(5))


def _certificate(
    ambient: AmbientForm,
    basis: tuple[tuple[int, ...], ...],
    witness: Place,
    details: dict[str, Any],
) -> SubformCertificate:
    # Build the subform from the actual Gram diagonal and insist the basis is
    # orthogonal, so a bad construction cannot produce a certificate at all.
    f = ambient.form
    for i in range(4):
        for j in range(i + 1, 4):
            pairing = f.bilinear(basis[i], basis[j])
            if pairing != 0:
                raise ValueError(f"basis vectors {i} and {j} are not orthogonal")
    subform = DiagonalForm(tuple(f.evaluate(v) for v in basis))
    if signature(subform) != Signature(3, 1):
        raise ValueError(f"subform {subform} does not have signature (3,1)")
    if not local_anisotropic_rank4(subform, witness):
        raise ValueError(f"subform {subform} is isotropic at {witness}")
    return SubformCertificate(basis, subform, witness, details)


def case1_even(params: MonsonParameters, q_index: int = 0) -> SubformCertificate:
    """S = 1 mod 4 with evenly many prime factors: pick the q_index-th prime
    q = -S mod 8, split -q off the hyperbolic pair e0, e1, and keep e2, e3,
    e4; the subform <-q,1,aS,a> is anisotropic at 2 because -qS = 1 mod 8."""
    S, a = params.S, params.a
    if S % 4 != 1 or params.s % 2 != 0:
        raise ValueError("case applies to S = 1 mod 4 with s even")
    q = dirichlet_prime((-S) % 8, 8, q_index)
    u = ((q + 1) // 2, (q - 1) // 2, 0, 0, 0)
    basis = (u, _unit_vector(2), _unit_vector(3), _unit_vector(4))
    details = {"case": "case1_even", "q": q, "q_index": q_index}
    cert = _certificate(
        AmbientForm.from_parameters(params), basis, Place.two(), details
    )
    assert cert.subform == DiagonalForm((-q, 1, a * S, a))
    return cert


def case1_odd(params: MonsonParameters, m: int) -> SubformCertificate:
    """S = 1 mod 4 with oddly many prime factors: represent -S and S + m^2
    on the block e0, e1, e2 and keep e3, e4; the subform <-S,S+m^2,aS,a> is
    anisotropic at the smallest prime p | S with p = 1 mod 4, for any
    positive m not divisible by p."""
    S, a = params.S, params.a
    if S % 4 != 1 or params.s % 2 != 1:
        raise ValueError("case applies to S = 1 mod 4 with s odd")
    p = next((p for p in params.prime_factors if p % 4 == 1), None)
    if p is None:
        raise ValueError("no prime factor of S is 1 mod 4")
    if m < 1:
        raise ValueError("m must be positive")
    if m % p == 0:
        raise ValueError(f"m must not be divisible by p = {p}")
    half = (S - 1) // 2
    u = (half + 1, half, 0, 0, 0)
    v = (half, half + 1, m, 0, 0)
    basis = (u, v, _unit_vector(3), _unit_vector(4))
    details = {"case": "case1_odd", "p": p, "m": m}
    cert = _certificate(
        AmbientForm.from_parameters(params), basis, Place(p), details
    )
    assert cert.subform == DiagonalForm((-S, S + m * m, a * S, a))
    return cert


def _case2_even_seed(a: int, S: int) -> tuple[int, int]:
    if a % 8 == 7:
        return 1, 0
    if a % 8 == 3 and S % 8 == 7:
        return 2, 1
    if a % 8 == 3 and S % 8 == 3:
        return 3, 2
    raise ValueError(f"no seed for a = {a} mod 8, S = {S} mod 8")


def case2_even(params: MonsonParameters, choice_index: int = 0) -> SubformCertificate:
    """S = 3 mod 4 with evenly many prime factors: u = beta e3 + alpha S e4
    has f(u) = -aS(alpha^2 S - beta^2) = -m with m = 7 mod 8, so
    <1,1,1,-m> is a subform anisotropic at 2.  The seed (alpha, beta) per
    residue class of (a, S) mod 8 is shifted by 8 * choice_index."""
    S, a = params.S, params.a
    if S % 4 != 3 or params.s % 2 != 0:
        raise ValueError("case applies to S = 3 mod 4 with s even")
    if choice_index < 0:
        raise ValueError("choice_index must be nonnegative")
    alpha0, beta0 = _case2_even_seed(a, S)
    alpha, beta = alpha0 + 8 * choice_index, beta0 + 8 * choice_index
    m = a * S * (alpha * alpha * S - beta * beta)
    if m <= 0 or m % 8 != 7:
        raise ValueError(f"seed shift produced inadmissible m = {m}")
    u = (0, 0, 0, beta, alpha * S)
    basis = (_unit_vector(0), _unit_vector(1), _unit_vector(2), u)
    details = {
        "case": "case2_even",
        "alpha": alpha,
        "beta": beta,
        "m": m,
        "choice_index": choice_index,
    }
    cert = _certificate(
        AmbientForm.from_parameters(params), basis, Place.two(), details
    )
    assert cert.subform == DiagonalForm((1, 1, 1, -m))
    return cert


class TernarySolution(NamedTuple):
    x: int
    y: int
    z: int
    m: int


class TernarySearchError(Exception):
    """The box search exhausted its bound without finding a solution.

    Says nothing about nonexistence; retry with a larger bound.
    """


def _validate_ternary_inputs(q: int, p: int, S: int) -> None:
    if not isprime(q) or not isprime(p):
        raise ValueError("q and p must be prime")
    if S <= 0:
        raise ValueError("S must be positive")
    g = DiagonalForm((1, q, -p * p))
    places = [Place.real(), Place.two()]
    if q > 2:
        places.append(Place(q))
    for v in places:
        if not ternary_represents(g, S, v):
            raise ValueError(f"{g} does not represent {S} at {v}")


def _ternary_solutions(
    q: int, p: int, S: int, search_bound: int
) -> Iterator[TernarySolution]:
    """All (x, y, z, m) in [0, bound] with x^2 + q y^2 - p^2 z^2 = S m^2,
    ordered by m, then x, then y (z >= 0 is determined)."""
    psq = p * p
    for m in range(1, search_bound + 1):
        target = S * m * m
        for x in range(search_bound + 1):
            for y in range(search_bound + 1):
                t = x * x + q * y * y - target
                if t < 0 or t % psq:
                    continue
                z = math.isqrt(t // psq)
                if z * z == t // psq:
                    yield TernarySolution(x, y, z, m)


def solve_ternary(
    q: int, p: int, S: int, search_bound: int = 200
) -> TernarySolution:
    """Smallest solution of x^2 + q y^2 - p^2 z^2 = S m^2 with m >= 1:
    minimal m, then lexicographically minimal (x, y, z) >= 0, searched over
    the box [0, search_bound]."""
    _validate_ternary_inputs(q, p, S)
    for sol in _ternary_solutions(q, p, S, search_bound):
        return sol
    raise TernarySearchError(
        f"no solution of x^2 + {q} y^2 - {p}^2 z^2 = {S} m^2 "
        f"found within bound {search_bound}"
    )


def case2_odd(
    params: MonsonParameters, q_index: int = 0, search_bound: int = 200
) -> SubformCertificate:
    """S = 3 mod 4 with oddly many prime factors: fix the smallest prime
    p | S with p = 3 mod 4 and the q_index-th prime q = 1 mod 4 that is a
    nonresidue mod p; write q = alpha^2 + beta^2, set w1 = alpha e1 + beta e2
    and w2 = x e0 + beta y e1 - alpha y e2 from a ternary solution of
    x^2 + q y^2 - p^2 z^2 = S m^2, giving the subform
    <q, Sm^2 + p^2 z^2, aS, -a> anisotropic at p."""
    S, a = params.S, params.a
    if S % 4 != 3 or params.s % 2 != 1:
        raise ValueError("case applies to S = 3 mod 4 with s odd")
    p = next((f for f in params.prime_factors if f % 4 == 3), None)
    if p is None:
        raise ValueError("no prime factor of S is 3 mod 4")
    q, remaining = 2, q_index
    while True:
        q = int(nextprime(q))
        if q % 4 == 1 and legendre(q, p) == -1:
            if remaining == 0:
                break
            remaining -= 1
    alpha, beta = two_squares(q)
    ambient = AmbientForm.from_parameters(params)
    _validate_ternary_inputs(q, p, S)
    last_error: Optional[ValueError] = None
    for x, y, z, m in _ternary_solutions(q, p, S, search_bound):
        w1 = (0, alpha, beta, 0, 0)
        w2 = (x, beta * y, -alpha * y, 0, 0)
        basis = (w1, w2, _unit_vector(3), _unit_vector(4))
        details = {
            "case": "case2_odd",
            "p": p,
            "q": q,
            "q_index": q_index,
            "alpha": alpha,
            "beta": beta,
            "solution": (x, y, z, m),
            "S_prime": S // p,
        }
        try:
            cert = _certificate(ambient, basis, Place(p), details)
        except ValueError as exc:
            # this solution fails the witness check; try the next one
            last_error = exc
            continue
        assert cert.subform == DiagonalForm(
            (q, S * m * m + p * p * z * z, a * S, -a)
        )
        return cert
    if last_error is not None:
        raise ValueError(
            f"no ternary solution within bound {search_bound} yields an "
            f"anisotropic subform at {p}: last failure: {last_error}"
        )
    raise TernarySearchError(
        f"no solution of x^2 + {q} y^2 - {p}^2 z^2 = {S} m^2 "
        f"found within bound {search_bound}"
    )


class CertificateReport(NamedTuple):
    ok: bool
    failures: tuple[str, ...]
    checks: tuple[tuple[str, bool], ...]


def verify_certificate_report(
    ambient: AmbientForm,
    cert: SubformCertificate,
    search_bound: int = 25,
) -> CertificateReport:
    """Re-audit a certificate from scratch: basis shape, exact Gram diagonal,
    signature, witness-place anisotropy, and a brute isotropy search."""
    checks: list[tuple[str, bool]] = []
    failures: list[str] = []

    def record(name: str, ok: bool, message: str = "") -> bool:
        checks.append((name, ok))
        if not ok:
            failures.append(message or name)
        return ok

    f = ambient.form
    shape_ok = (
        len(cert.basis) == 4
        and all(len(v) == 5 for v in cert.basis)
        and all(isinstance(c, int) for v in cert.basis for c in v)
    )
    record("basis_shape", shape_ok, "basis is not 4 integer vectors of length 5")
    if not shape_ok:
        return CertificateReport(False, tuple(failures), tuple(checks))

    gram_ok = True
    for i in range(4):
        for j in range(4):
            want = cert.subform.coefficients[i] if i == j else 0
            if f.bilinear(cert.basis[i], cert.basis[j]) != want:
                gram_ok = False
    record("gram_diagonal", gram_ok, "Gram matrix does not match the subform")
    record(
        "signature",
        signature(cert.subform) == Signature(3, 1),
        f"signature of {cert.subform} is not (3,1)",
    )
    witness_ok = cert.witness_place.is_finite and local_anisotropic_rank4(
        cert.subform, cert.witness_place
    )
    record(
        "witness_anisotropy",
        witness_ok,
        f"{cert.subform} is not anisotropic at {cert.witness_place}",
    )
    record(
        "isotropy_search",
        isotropy_search(cert.subform, search_bound) is None,
        f"brute search found a zero of {cert.subform}",
    )
    return CertificateReport(not failures, tuple(failures), tuple(checks))


def verify_certificate(
    ambient: AmbientForm, cert: SubformCertificate, search_bound: int = 25
) -> bool:
    return verify_certificate_report(ambient, cert, search_bound).ok


class CollisionNote(NamedTuple):
    """A candidate skipped because it is projectively equivalent to an
    earlier certificate."""

    kept_index: int
    skipped_details: dict[str, Any]
    scalar: int


class FamilyReport(NamedTuple):
    parameters: MonsonParameters
    ambient: AmbientForm
    case_name: str
    certificates: tuple[SubformCertificate, ...]
    collisions: tuple[CollisionNote, ...]


def _case1_odd_m_values(p: int) -> Iterator[int]:
    m = 0
    while True:
        m += 1
        if m % p:
            yield m


def generate_family_report(
    S: int,
    count: int,
    skip: int = 0,
    max_candidates: int = 200,
) -> FamilyReport:
    """Generate `count` pairwise projectively inequivalent certificates for
    the parameters of S, consuming candidates in their natural order and
    recording any candidate skipped as a collision with an earlier one."""
    if count < 1:
        raise ValueError("count must be positive")
    params = monson_parameters(S, skip)
    ambient = AmbientForm.from_parameters(params)
    s_parity = params.s % 2

    if S % 4 == 1 and s_parity == 0:
        case_name = "case1_even"

        def make(i: int) -> SubformCertificate:
            return case1_even(params, q_index=i)

    elif S % 4 == 1:
        case_name = "case1_odd"
        p = next(f for f in params.prime_factors if f % 4 == 1)
        m_values = [
            m for m, _ in zip(_case1_odd_m_values(p), range(max_candidates))
        ]

        def make(i: int) -> SubformCertificate:
            return case1_odd(params, m_values[i])

    elif s_parity == 0:
        case_name = "case2_even"

        def make(i: int) -> SubformCertificate:
            return case2_even(params, choice_index=i)

    else:
        case_name = "case2_odd"

        def make(i: int) -> SubformCertificate:
            return case2_odd(params, q_index=i)

    kept: list[SubformCertificate] = []
    collisions: list[CollisionNote] = []
    for i in range(max_candidates):
        if len(kept) == count:
            break
        cert = make(i)
        for k, earlier in enumerate(kept):
            matched, scalar = projectively_equivalent(
                earlier.subform, cert.subform
            )
            if matched:
                assert scalar is not None
                collisions.append(CollisionNote(k, dict(cert.details), scalar))
                break
        else:
            kept.append(cert)
    if len(kept) < count:
        raise RuntimeError(
            f"exhausted {max_candidates} candidates with only "
            f"{len(kept)} of {count} certificates"
        )
    return FamilyReport(params, ambient, case_name, tuple(kept), tuple(collisions))


def generate_family(S: int, count: int) -> list[SubformCertificate]:
    """The certificates of generate_family_report with default settings."""
    return list(generate_family_report(S, count).certificates)
