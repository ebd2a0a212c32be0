"""Exact SO(3)-strata of the flag variety of F^3, for fields with 2 invertible."""

from .census import (
    CensusReport,
    format_report,
    kgb_invariance,
    orbit_census,
    p2_census,
    stabilizer,
    stratum_census,
    verify_partition,
)
from .config import Caps, CapExceeded
from .exactfield import (
    CharacteristicTwoError,
    ExtensionBudgetExceeded,
    FieldError,
    embed,
    finite_field,
    format_element,
    make_field,
    parse_element,
    sqrt_or_extend,
)
from .flagvariety import Flag, ProjPoint, enumerate_flags, enumerate_lines, enumerate_SO3, flag_from_matrix
from .mat3 import Mat3, Vec3, bilinear, det3, in_SO3, parse_matrix, parse_vector
from .strata import LineStratum, Stratum, c_invariants, classify_flag, classify_line, theta_stable
from .witness import WitnessResult, WrongStratum, reference_flags, sphere_section, witness

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Caps",
    "CensusReport",
    "CharacteristicTwoError",
    "ExtensionBudgetExceeded",
    "FieldError",
    "Flag",
    "LineStratum",
    "Mat3",
    "ProjPoint",
    "Stratum",
    "Vec3",
    "WitnessResult",
    "WrongStratum",
    "bilinear",
    "c_invariants",
    "classify_flag",
    "classify_line",
    "det3",
    "embed",
    "enumerate_SO3",
    "enumerate_flags",
    "enumerate_lines",
    "finite_field",
    "flag_from_matrix",
    "format_element",
    "format_report",
    "in_SO3",
    "kgb_invariance",
    "make_field",
    "orbit_census",
    "p2_census",
    "parse_element",
    "parse_matrix",
    "parse_vector",
    "reference_flags",
    "sphere_section",
    "sqrt_or_extend",
    "stabilizer",
    "stratum_census",
    "theta_stable",
    "verify_partition",
    "witness",
]
