"""Fiber-bundle mechanics for the plane of financial events.

The plane of pairs (time, capital) fibers in two ways: trivially over
time, and over present value once a growth rate is fixed.  This package
implements both projections, the isomorphisms that change the rate, the
sections of the induced fibration and the trace test that recognizes
them among sampled capital evolutions, financial parallel transport
with its bilinear lift coefficient, and the force of interest, each as
a checkable numeric operation.
"""

from .backend import active_backend
from .core import (
    DEFAULT_TOL,
    FD_STEP,
    LAW_IDS,
    CapitalizationLaw,
    DiscountLaw,
    DomainError,
    EvaluationError,
    FiberMismatchError,
    FinFiberError,
    FinancialEvent,
    InvalidLawError,
    RangeError,
    Rate,
    TangentVector,
    ValidationReport,
    eval_on_grid,
    fd_derivative,
    fd_derivative_one_sided,
    make_law,
    rel_close,
    rel_scale,
    validate_capitalization_law,
    validate_discount_law,
)
from .fibration import (
    Fiber,
    equivalent,
    fiber_compare,
    fiber_eval,
    fiber_eval_many,
    fiber_of,
    general_gluing_check,
    project_compound,
    project_compound_many,
    project_general,
    project_natural,
)
from .morphism import (
    rate_isomorphism,
    rate_isomorphism_many,
    trivialize,
    untrivialize,
)
from .section import (
    CapitalEvolution,
    Section,
    TraceReport,
    decreasing_evolution_shortcut,
    is_section,
    section_eval,
    section_from_time_map,
    trace_test,
)
from .connection import (
    ChristoffelForm,
    christoffel_from_discount,
    connection_apply,
    discount_from_christoffel,
    financial_translate,
    force_of_interest,
    global_connection,
    induced_discount,
    translation_derivative,
    verify_force_relation,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "active_backend",
    # core
    "DEFAULT_TOL",
    "FD_STEP",
    "LAW_IDS",
    "CapitalizationLaw",
    "DiscountLaw",
    "DomainError",
    "EvaluationError",
    "FiberMismatchError",
    "FinFiberError",
    "FinancialEvent",
    "InvalidLawError",
    "RangeError",
    "Rate",
    "TangentVector",
    "ValidationReport",
    "eval_on_grid",
    "fd_derivative",
    "fd_derivative_one_sided",
    "make_law",
    "rel_close",
    "rel_scale",
    "validate_capitalization_law",
    "validate_discount_law",
    # fibration
    "Fiber",
    "equivalent",
    "fiber_compare",
    "fiber_eval",
    "fiber_eval_many",
    "fiber_of",
    "general_gluing_check",
    "project_compound",
    "project_compound_many",
    "project_general",
    "project_natural",
    # morphism
    "rate_isomorphism",
    "rate_isomorphism_many",
    "trivialize",
    "untrivialize",
    # section
    "CapitalEvolution",
    "Section",
    "TraceReport",
    "decreasing_evolution_shortcut",
    "is_section",
    "section_eval",
    "section_from_time_map",
    "trace_test",
    # connection
    "ChristoffelForm",
    "christoffel_from_discount",
    "connection_apply",
    "discount_from_christoffel",
    "financial_translate",
    "force_of_interest",
    "global_connection",
    "induced_discount",
    "translation_derivative",
    "verify_force_relation",
]
