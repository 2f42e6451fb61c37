"""Weierstrass factorization, resultants and discriminants of p-adic power
series at finite precision, Hensel factorization of restricted series, tools
for iteration in characteristic p, and truncated universal formulas over Z.
"""

from .errors import (
    BudgetExhausted,
    CompositionDomain,
    DomainError,
    IndeterminateAtPrecision,
    InsufficientXPrecision,
    IntegralityViolation,
    NotAUnit,
    NoUnitCoefficient,
    TruncationOverflow,
    WidegNotCertified,
)
from .okfield import CertifiedValue, FieldSpec, OKElement
from .series import NewtonPolygon, PowerSeries, newton_polygon
from .weierstrass import (
    DistinguishedPoly,
    WeierstrassFactorization,
    weierstrass_divide,
    weierstrass_prepare,
)
from .resultant import (
    CommonRootVerdict,
    common_root_test,
    disc_n,
    reduce_mod_distinguished,
    res_n,
    respol,
)
from .hensel import (
    HenselFactorization,
    hensel_factor,
    mu_indices,
    slope_zero_factor,
)
from .dynamics import (
    LiftReport,
    ResidueSeries,
    SenPair,
    good_lift_search,
    i_index,
    i_n,
    iterate_p,
    sen_check,
    wideg_of_iterate_minus_x,
)
from .universal import (
    UniversalPreparation,
    UniversalRing,
    UniversalSeries,
    bgw_p0,
    respol_symmetric,
    specialize,
    universal_prepare,
    universal_ring,
)

__all__ = [
    "BudgetExhausted",
    "CertifiedValue",
    "CommonRootVerdict",
    "CompositionDomain",
    "DistinguishedPoly",
    "DomainError",
    "FieldSpec",
    "HenselFactorization",
    "IndeterminateAtPrecision",
    "InsufficientXPrecision",
    "IntegralityViolation",
    "LiftReport",
    "NewtonPolygon",
    "NotAUnit",
    "NoUnitCoefficient",
    "OKElement",
    "PowerSeries",
    "ResidueSeries",
    "SenPair",
    "TruncationOverflow",
    "UniversalPreparation",
    "UniversalRing",
    "UniversalSeries",
    "WeierstrassFactorization",
    "WidegNotCertified",
    "bgw_p0",
    "common_root_test",
    "disc_n",
    "good_lift_search",
    "hensel_factor",
    "i_index",
    "i_n",
    "iterate_p",
    "mu_indices",
    "newton_polygon",
    "reduce_mod_distinguished",
    "res_n",
    "respol",
    "respol_symmetric",
    "sen_check",
    "slope_zero_factor",
    "specialize",
    "universal_prepare",
    "universal_ring",
    "weierstrass_divide",
    "weierstrass_prepare",
    "wideg_of_iterate_minus_x",
]

__version__ = "0.1.0"
