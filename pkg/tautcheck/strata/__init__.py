"""Strata signatures, relation checks, degree ranges and Siegel-Veech tools."""

from tautcheck.strata.combinatorics import (
    decorated_monomial_count,
    decorated_strata_enumerate,
    partition_count,
    partitions_of,
)
from tautcheck.strata.ranges import RangeReport, build_range_report
from tautcheck.strata.relations import (
    ModularMode,
    RationalMode,
    RelationError,
    Status,
    VerificationRecord,
    check_conjecture,
)
from tautcheck.strata.siegel_veech import (
    c_area_hyperelliptic,
    hyperelliptic_lift,
    varying_check,
)
from tautcheck.strata.signatures import (
    QuadraticSignatureGenus0,
    SignatureError,
    StratumSignature,
    format_signature,
    parse_quadratic_signature,
    parse_signature,
)

__all__ = [
    "decorated_monomial_count",
    "decorated_strata_enumerate",
    "partition_count",
    "partitions_of",
    "RangeReport",
    "build_range_report",
    "ModularMode",
    "RationalMode",
    "RelationError",
    "Status",
    "VerificationRecord",
    "check_conjecture",
    "c_area_hyperelliptic",
    "hyperelliptic_lift",
    "varying_check",
    "QuadraticSignatureGenus0",
    "SignatureError",
    "StratumSignature",
    "format_signature",
    "parse_quadratic_signature",
    "parse_signature",
]
