"""Fuzzy-fuzzy vault: key binding over multi-fuzzy sets with
membership-family-aware chaff, plus the accompanying security calculator."""

from .fuzzy_number import AlphaCut, FuzzyNumber, TriangularPower, distance
from .multi_fuzzy_set import (
    FamilyTemplate,
    MultiFuzzySet,
    SubsetDescriptor,
    build_locking_set,
    partition_field,
)
from .field_poly import (
    CRC_VARIANT,
    FieldParams,
    FuzzyLagrangeResult,
    KeyMaterial,
    Polynomial,
    crc16,
    decode_key,
    encode_key,
    fuzzy_lagrange_real,
    lagrange_interpolate,
)
from .vault import (
    LockParams,
    LockTranscript,
    SplitMix64,
    UnlockResult,
    Vault,
    VaultPoint,
    fuzzy_lock,
    fuzzy_unlock,
    generate_chaff,
    lock_polynomial,
    match_points,
    scramble,
    search_key,
)
from .security_analysis import (
    CensusResult,
    ScenarioParams,
    SecurityReport,
    attacker_success_prob,
    attacker_success_prob_product_form,
    conditional_membership_prob,
    empirical_spurious_census,
    family_spurious_log2,
    scenario_report,
    spurious_polynomials_log2,
)
from .minutiae_demo import (
    BIFURCATION,
    GRID_STEP,
    RIDGE_ENDING,
    DemoResult,
    Minutia,
    circular_distance,
    minutia_to_fuzzy,
    minutiae_vault_demo,
    orientation_set,
    parse_minutiae_file,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaCut",
    "BIFURCATION",
    "CensusResult",
    "CRC_VARIANT",
    "DemoResult",
    "FamilyTemplate",
    "FieldParams",
    "FuzzyLagrangeResult",
    "FuzzyNumber",
    "GRID_STEP",
    "KeyMaterial",
    "LockParams",
    "LockTranscript",
    "Minutia",
    "MultiFuzzySet",
    "Polynomial",
    "RIDGE_ENDING",
    "ScenarioParams",
    "SecurityReport",
    "SplitMix64",
    "SubsetDescriptor",
    "TriangularPower",
    "UnlockResult",
    "Vault",
    "VaultPoint",
    "attacker_success_prob",
    "attacker_success_prob_product_form",
    "build_locking_set",
    "circular_distance",
    "conditional_membership_prob",
    "crc16",
    "decode_key",
    "distance",
    "empirical_spurious_census",
    "encode_key",
    "family_spurious_log2",
    "fuzzy_lagrange_real",
    "fuzzy_lock",
    "fuzzy_unlock",
    "generate_chaff",
    "lagrange_interpolate",
    "lock_polynomial",
    "match_points",
    "minutia_to_fuzzy",
    "minutiae_vault_demo",
    "orientation_set",
    "parse_minutiae_file",
    "partition_field",
    "scenario_report",
    "scramble",
    "search_key",
    "spurious_polynomials_log2",
]
