"""Exact classification of discriminants d in D+ / D- with full lattice certificates."""
from .k3class import Certificate, Reason, Status, classify, local_test, scan
from .pell import solve_pm8_bounded
from .quadorder import FundamentalUnit, QuadInt, fundamental_unit

__all__ = [
    "Certificate",
    "FundamentalUnit",
    "QuadInt",
    "Reason",
    "Status",
    "classify",
    "fundamental_unit",
    "local_test",
    "scan",
    "solve_pm8_bounded",
]
__version__ = "0.1.0"
