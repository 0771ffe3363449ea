"""Exact Cayley-Dickson algebras, diagonal quadratic forms, and level/sublevel bounds."""

from .cdalgebra import (
    CDAlgebra,
    CDElement,
    brown_algebra,
    conjugate,
    construct,
    find_zero_divisors,
    multiply,
    norm,
    norm_anisotropy_report,
    norm_form,
    pure_trace_form,
    trace,
    trace_form,
)
from .config import RunConfig, SublevelReading, load_config
from .fields import (
    QQ,
    FieldDescriptor,
    Scalar,
    field_level,
    function_field,
    parse_field,
    prime_field,
    rationals,
    square_class,
)
from .level import (
    Certificate,
    LevelReport,
    assemble_report,
    constructive_level_bound,
    dim_lhs,
    dim_rhs,
    exact_values_registry,
    least_m_bound,
    level_bruteforce,
    level_criterion_pow2,
    level_upper_by_isotropy,
    prior_interval,
    sublevel_bruteforce,
    sublevel_criterion,
    sublevel_to_level,
)
from .quadform import (
    DiagonalForm,
    IsotropyVerdict,
    SignAssignment,
    Status,
    decide_isotropy,
    dim_es,
    evaluate,
    isotropic_fp,
    isotropic_q,
    perp,
    pfister,
    pure_subform,
    scale,
    signature,
    springer_reduce,
    tensor,
    times,
    witt_index_fp,
)

__version__ = "0.1.0"

__all__ = [
    "CDAlgebra",
    "CDElement",
    "brown_algebra",
    "conjugate",
    "construct",
    "find_zero_divisors",
    "multiply",
    "norm",
    "norm_anisotropy_report",
    "norm_form",
    "pure_trace_form",
    "trace",
    "trace_form",
    "RunConfig",
    "SublevelReading",
    "load_config",
    "QQ",
    "FieldDescriptor",
    "Scalar",
    "field_level",
    "function_field",
    "parse_field",
    "prime_field",
    "rationals",
    "square_class",
    "Certificate",
    "LevelReport",
    "assemble_report",
    "constructive_level_bound",
    "dim_lhs",
    "dim_rhs",
    "exact_values_registry",
    "least_m_bound",
    "level_bruteforce",
    "level_criterion_pow2",
    "level_upper_by_isotropy",
    "prior_interval",
    "sublevel_bruteforce",
    "sublevel_criterion",
    "sublevel_to_level",
    "DiagonalForm",
    "IsotropyVerdict",
    "SignAssignment",
    "Status",
    "decide_isotropy",
    "dim_es",
    "evaluate",
    "isotropic_fp",
    "isotropic_q",
    "perp",
    "pfister",
    "pure_subform",
    "scale",
    "signature",
    "springer_reduce",
    "tensor",
    "times",
    "witt_index_fp",
]
