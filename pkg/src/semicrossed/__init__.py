"""Exact computer algebra for semicrossed products over discrete dynamics.

Build a system (finite permutation or integer template), describe an
ideal by its level sets, and decide left/right/two-sided approximate
units with machine-checkable certificates: constructive unit recipes on
yes, obstruction witnesses certified through exact Fourier-coefficient
bounds on no.  The harness cross-validates every decision rule against
behavioral residuals on enumerated small systems.
"""

from .algebra import Func, Series, pullback
from .checks import CheckItem, CheckReport
from .dynamics import CoSet, System, TemplateDef, register_template
from .errors import (
    CapabilityError,
    CarrierError,
    FormatError,
    InvalidIdealError,
    IterationBudgetError,
    NotCompactError,
    SemicrossedError,
    SystemMismatchError,
    ZeroIdealError,
)
from .ideals import (
    CoreSeedIdeal,
    Decision,
    IdealSpec,
    StableIdeal,
    build_core_seed,
    check_power_condition,
    contains,
    decide_au,
    decide_left_au,
    decide_m_ideal,
    decide_right_au,
    decompose_core_seed,
    is_zero_ideal,
    member_x_n,
    validate_star,
)
from .representation import (
    RepMatrix,
    TruncationParams,
    adequate_truncation,
    opnorm_bracket,
    opnorm_lower,
    refinement_schedule,
    rep_matrix,
)
from .scalars import ONE, ZERO, Scalar, SqrtSum
from .units import (
    UnitNet,
    Witness,
    certify_obstruction,
    min_exact_window,
    residual_left,
    residual_right,
    unit_element,
    verify_witness,
    witness_no_left_au,
    witness_no_right_au,
)

__version__ = "0.1.0"
