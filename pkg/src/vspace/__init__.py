"""Finite vicinity spaces: connectedness, tolerant labelings, and coding."""

from .coding import (
    CodedSpace,
    CodedSpaceConfig,
    RoundtripReport,
    build_coded_space,
    build_pi,
    decode_from_cover,
    pair,
    unpair,
    validate_config,
    verify_roundtrip,
)
from .connectivity import (
    DEFAULT_MAX_COVERS,
    ConnectivityVerdict,
    chain_exists,
    is_connected,
    overlap_graph,
    verify_witness,
)
from .errors import (
    BudgetExceededError,
    CodingConfigError,
    ParseError,
    ValidationError,
    VSpaceError,
)
from .oracles import (
    DECJZ,
    HALT,
    INC,
    EnumerationOracle,
    machine_enumeration,
    member_at,
    newly_at,
    run_program,
)
from .spaces import (
    STRONG,
    WEAK,
    FiniteVSpace,
    Labeling,
    VicinitySystem,
    Violation,
    induced_space,
    make_space,
    strong_from_weak,
    validate_space,
    validate_system,
    weak_from_strong,
)
from .tolerance import (
    HOLDS,
    NOT_APPLICABLE,
    REFUTED,
    RefutationTrace,
    TheoremOutcome,
    ToleranceReport,
    check_nonconn,
    check_nontol,
    constant_on,
    refute_chain_in_induced,
    tolerance_report,
    tolerant_cover,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CodedSpace",
    "CodedSpaceConfig",
    "CodingConfigError",
    "ConnectivityVerdict",
    "DECJZ",
    "DEFAULT_MAX_COVERS",
    "EnumerationOracle",
    "FiniteVSpace",
    "HALT",
    "HOLDS",
    "INC",
    "Labeling",
    "NOT_APPLICABLE",
    "ParseError",
    "REFUTED",
    "RefutationTrace",
    "RoundtripReport",
    "STRONG",
    "TheoremOutcome",
    "ToleranceReport",
    "VSpaceError",
    "ValidationError",
    "VicinitySystem",
    "Violation",
    "WEAK",
    "build_coded_space",
    "build_pi",
    "chain_exists",
    "check_nonconn",
    "check_nontol",
    "constant_on",
    "decode_from_cover",
    "induced_space",
    "is_connected",
    "machine_enumeration",
    "make_space",
    "member_at",
    "newly_at",
    "overlap_graph",
    "pair",
    "refute_chain_in_induced",
    "run_program",
    "strong_from_weak",
    "tolerance_report",
    "tolerant_cover",
    "unpair",
    "validate_config",
    "validate_space",
    "validate_system",
    "verify_roundtrip",
    "verify_witness",
    "weak_from_strong",
]
