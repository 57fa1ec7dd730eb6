"""Independent ground truth: point counts, eta products, exact P-values, identity suites."""

from .curves import FAMILIES, CurveFamily, ec_count, family
from .eta import EtaProduct, eta_ap, eta_series
from .pp_exact import pp_exact_smallq
from .suites import SUITES, SuiteReport, run_identity_suite

__all__ = [
    "FAMILIES",
    "SUITES",
    "CurveFamily",
    "EtaProduct",
    "SuiteReport",
    "ec_count",
    "eta_ap",
    "eta_series",
    "family",
    "pp_exact_smallq",
    "run_identity_suite",
]
