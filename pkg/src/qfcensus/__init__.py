"""Exact local-global machinery for integral quadratic forms, with the
constructions layered on top: anisotropic rank-4 subform families inside
signature (4,1) ambient forms, explicit rational equivalence witnesses,
hyperbolic tube volume bounds, and a replay of the census exclusion
arguments they feed."""

from .padic import (
    InsufficientDepthError,
    Place,
    dirichlet_prime,
    eps_omega,
    hilbert,
    hilbert_oracle,
    is_square_local,
    is_square_oracle,
    legendre,
    sufficient_oracle_depth,
    two_squares,
    valuation,
)
from .forms import (
    DiagonalForm,
    LocalInvariant,
    Signature,
    candidate_places,
    diagonalize,
    equivalent_over_q,
    global_anisotropic,
    hasse_invariant,
    isotropy_search,
    local_anisotropic,
    local_anisotropic_rank4,
    local_invariant,
    projectively_equivalent,
    signature,
    ternary_represents,
)
from .subforms import (
    AmbientForm,
    FamilyReport,
    MonsonParameters,
    SubformCertificate,
    TernarySearchError,
    case1_even,
    case1_odd,
    case2_even,
    case2_odd,
    generate_family,
    generate_family_report,
    monson_parameters,
    solve_ternary,
    verify_certificate,
    verify_certificate_report,
)
from .witness import EquivalenceWitness, build_witness, verify_form_equivalence
from .collar import (
    CollarProfile,
    ObstructionVerdict,
    ball_volume,
    c4,
    collar_profile,
    collar_radius,
    d4,
    tube_volume,
    volume_obstruction,
)
from .census import (
    CensusRecord,
    CrossSectionCode,
    CubeSymmetry,
    ExclusionTrace,
    NonorientableCensusManifold,
    SidePairingCode,
    census_table,
    compress_code,
    cross_section_orientable,
    cube_symmetry_equivalent,
    exclude_1011_cover,
    exclude_closed_hypersurface,
    parse_code,
    side_pairing_orientable,
)

__all__ = [
    "AmbientForm",
    "CensusRecord",
    "CollarProfile",
    "CrossSectionCode",
    "CubeSymmetry",
    "DiagonalForm",
    "EquivalenceWitness",
    "ExclusionTrace",
    "FamilyReport",
    "InsufficientDepthError",
    "LocalInvariant",
    "MonsonParameters",
    "NonorientableCensusManifold",
    "ObstructionVerdict",
    "Place",
    "SidePairingCode",
    "Signature",
    "SubformCertificate",
    "TernarySearchError",
    "ball_volume",
    "build_witness",
    "c4",
    "candidate_places",
    "case1_even",
    "case1_odd",
    "case2_even",
    "case2_odd",
    "census_table",
    "collar_profile",
    "collar_radius",
    "compress_code",
    "cross_section_orientable",
    "cube_symmetry_equivalent",
    "d4",
    "diagonalize",
    "dirichlet_prime",
    "eps_omega",
    "equivalent_over_q",
    "exclude_1011_cover",
    "exclude_closed_hypersurface",
    "generate_family",
    "generate_family_report",
    "global_anisotropic",
    "hasse_invariant",
    "hilbert",
    "hilbert_oracle",
    "is_square_local",
    "is_square_oracle",
    "isotropy_search",
    "legendre",
    "local_anisotropic",
    "local_anisotropic_rank4",
    "local_invariant",
    "monson_parameters",
    "parse_code",
    "projectively_equivalent",
    "side_pairing_orientable",
    "signature",
    "solve_ternary",
    "sufficient_oracle_depth",
    "ternary_represents",
    "tube_volume",
    "two_squares",
    "valuation",
    "verify_certificate",
    "verify_certificate_report",
    "verify_form_equivalence",
    "volume_obstruction",
]
