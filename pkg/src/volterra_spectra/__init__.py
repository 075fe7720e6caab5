"""Spectra of Volterra operators on weighted spaces of entire functions.

Entire functions are modelled by truncated Taylor series
(:mod:`.series`); :mod:`.operators` applies ``V_g``, its resolvent and the
auxiliary operators at coefficient level; :mod:`.weights` estimates weighted
norms and growth classes numerically; :mod:`.spectra` holds the exact
classifiers; :mod:`.harness` and :mod:`.cli` run and report experiments.
"""

__version__ = "0.1.0"

from .operators import (  # noqa: E402
    InvalidSymbolError,
    PolynomialSymbol,
    ResolventUndefinedError,
    SectionMatrix,
    TranscendentalSymbol,
    apply_mult,
    apply_volterra,
    finite_section,
    integration_by_parts_residual,
    resolvent_apply,
    s_operator_apply,
    t_gamma_apply,
    t_gamma_quadrature,
)
from .parsing import SymbolSyntaxError, format_symbol, parse_complex, parse_polynomial, parse_symbol  # noqa: E402
from .series import (  # noqa: E402
    TruncatedSeries,
    add,
    antiderive,
    derive,
    evaluate,
    exp_series,
    max_modulus,
    max_real_part,
    mul,
    scale,
)
from .spectra import (  # noqa: E402
    BanachSpace,
    BoundednessVerdict,
    EntireFunctions,
    HormanderAlgebra,
    OperatorNotBoundedError,
    Shape,
    SpectrumResult,
    classify,
    classify_boundedness_Hv,
    classify_spectrum_A0p,
    classify_spectrum_Ap,
    classify_spectrum_entire,
    classify_spectrum_H0v,
    classify_spectrum_Hv,
    exp_membership,
    spectrum_cross_check,
)
from .weights import (  # noqa: E402
    GrowthCondition,
    NormEstimate,
    PowerWeight,
    Verdict,
    bigO_growth,
    caratheodory_check,
    littleo_growth,
    membership_A0p,
    membership_Ap,
    membership_Hv,
    order_type,
    weight_value,
    weighted_norm,
)
