"""Exact gcd heights on Q, divisibility sequences, and inequality experiments."""

__version__ = "0.1.0"

from .arith import (
    ARCH,
    EPS_SLACK,
    FactorBudget,
    Factorization,
    LogReal,
    PrimeSet,
    factor,
    hgcd,
    is_prime,
    mult_independent,
    ord_p,
    prime_to_S_part,
    v_plus,
    weil_height,
)
from .elliptic import (
    EDS,
    IDENTITY,
    Curve,
    Point,
    add,
    canonical_height,
    denominator_D,
    eds,
    exceptional_subgroups,
    gcd_D,
    hgcd_e2,
    hgcd_e2_local_sum,
    naive_height,
    neg,
    on_curve,
    scalar_mul,
    siegel_ratio,
)
from .gcd_height import (
    BoundRecord,
    HomPoly,
    PnPoint,
    PolySystem,
    VojtaParams,
    check_e2,
    check_mixed,
    check_pn,
    counting_function_pn,
    hgcd_pn_coordpoint,
    hgcd_pn_subvariety,
    normalize_pn,
    parse_poly,
    vojta_rhs,
)
from .mulgrp import (
    EXCEPTIONAL,
    INEQUALITY_HOLDS,
    POWER_RELATION,
    ArReturns,
    BczScan,
    CzVerdict,
    DivisibilityReport,
    MulDivSeq,
    MulPoint,
    ar_returns,
    bcz_scan,
    cz_classify,
    divisibility_check,
    gcd_pair,
    mul_D,
    mul_seq,
    power,
    s_unit_enumerate,
)
from .experiments import (
    SweepConfig,
    SweepKind,
    SweepResult,
    detect_exceptional,
    fit_constant,
    format_real,
    render_csv,
    render_json,
    run,
    summarize,
)
