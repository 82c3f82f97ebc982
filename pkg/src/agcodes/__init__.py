"""One-point algebraic-geometry codes with Groebner-basis list decoding."""

from .errors import (
    AGError,
    BudgetExceeded,
    CurveFormatError,
    DataError,
    EmptyGamma,
    GenusMismatch,
    InvalidGamma,
    NearestUnavailable,
    NotANongap,
    NotDivisible,
    RankDeficient,
    SearchBoundExceeded,
    ZeroInversion,
)
from .gf import Field
from .curve import CurveData, RingElem, Semigroup, load_curve
from .coordring import CostCounter, MultTable, build_mult_table, gamma, gamma_ne1, ring_mul, ring_quot
from .code import CodeSpec, CurveSystem, build_code, bundled_curve_path, encode, interpolate, load_system
from .decoder import DecodeResult, list_decode
from .harness import TrialConfig, TrialStats, gen_error, iteration_bound, run_trials

__all__ = [name for name in dir() if not name.startswith("_")]
