"""Exact necessary conditions for isochronous centers of Lienard-type systems.

The package computes, in exact rational arithmetic, the sequence of
polynomial conditions that the parameters of a planar system

    x'' + f(x) x'^2 + g(x) = 0

must satisfy for the origin to be an isochronous center, using three
equivalent recurrence families (direct, reduced, rational), each in a
truncated and an untruncated evaluation mode (variants A0..A5).  It also
reduces suitable planar systems to this shape, eliminates the unknown
odd time-reparametrisation coefficients from the conditions, verifies
candidate centers against the defining series identities, and benchmarks
the variants against each other.
"""

from .rationals import BACKEND, Rat, format_rat, parse_rat, rat
from .poly import ContextMismatch, ParamPoly, VarContext
from .series import XSeries
from .lienard import (
    LienardSystem,
    PlanarSystem,
    RationalFunctionX,
    ReductionError,
    cherkas_reduce,
    validate_lienard,
)
from .conditions import (
    AgreementReport,
    ConditionSet,
    ConditionTrace,
    InvalidSystemError,
    UrabeSeries,
    VARIANTS,
    conditions_agree,
    normalize_variant,
    run_direct,
    run_rational,
    run_reduced,
    run_variant,
)
from .urabe import (
    EliminationResult,
    EliminationStep,
    VerifyResult,
    eliminate_urabe,
    substitute_urabe,
    verify_cri,
    verify_phi_identity,
)
from .systemfile import (
    SystemFormatError,
    emit_system,
    emit_urabe_table,
    parse_system,
    parse_urabe_table,
)
from .bench import (
    BenchReport,
    CellResult,
    ResourceAbort,
    ResourceGuard,
    effective_mem_cap,
    run_bench,
)

__all__ = [
    "BACKEND",
    "Rat",
    "format_rat",
    "parse_rat",
    "rat",
    "ContextMismatch",
    "ParamPoly",
    "VarContext",
    "XSeries",
    "LienardSystem",
    "PlanarSystem",
    "RationalFunctionX",
    "ReductionError",
    "cherkas_reduce",
    "validate_lienard",
    "AgreementReport",
    "ConditionSet",
    "ConditionTrace",
    "InvalidSystemError",
    "UrabeSeries",
    "VARIANTS",
    "conditions_agree",
    "normalize_variant",
    "run_direct",
    "run_rational",
    "run_reduced",
    "run_variant",
    "EliminationResult",
    "EliminationStep",
    "VerifyResult",
    "eliminate_urabe",
    "substitute_urabe",
    "verify_cri",
    "verify_phi_identity",
    "SystemFormatError",
    "emit_system",
    "emit_urabe_table",
    "parse_system",
    "parse_urabe_table",
    "BenchReport",
    "CellResult",
    "ResourceAbort",
    "ResourceGuard",
    "effective_mem_cap",
    "run_bench",
]

__version__ = "0.1.0"
