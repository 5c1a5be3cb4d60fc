from .finite import FiniteGroupTable, automorphism_group, compose, lower_central_series
from .profiles import PROFILES, load_profile, semidirect_group
from .realized import RealizedElement, RealizedGroup, build_realized_group, enumerate_ball
from .splitting import (
    NormalSeries,
    SplittingCertificate,
    coset_representatives,
    d_zp_certificate,
    decompose,
    remark_certificate,
    splitting_subgroup,
    verify_certificate,
)

__all__ = [
    "FiniteGroupTable",
    "PROFILES",
    "NormalSeries",
    "RealizedElement",
    "RealizedGroup",
    "SplittingCertificate",
    "automorphism_group",
    "build_realized_group",
    "compose",
    "coset_representatives",
    "d_zp_certificate",
    "decompose",
    "enumerate_ball",
    "load_profile",
    "lower_central_series",
    "remark_certificate",
    "semidirect_group",
    "splitting_subgroup",
    "verify_certificate",
]
