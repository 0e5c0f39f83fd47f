"""Exact symbolic engine for the rank-one Weyl vertex algebra under conformal flow."""

from .exactmath import GaussRat, WeightExpr, parse_gauss
from .flow import ConformalVector, central_charge, flow_iso
from .fock import Monomial, State, TruncConfig, basis_up_to, parse_state, print_state
from .grading import Tag, classify, omega_test
from .modes import mode_of, virasoro_mode
from .tensor import TensorVector, tensor_central_charge, tensor_classify
from .zhu import zhu_report

__all__ = [
    "GaussRat",
    "WeightExpr",
    "parse_gauss",
    "ConformalVector",
    "central_charge",
    "flow_iso",
    "Monomial",
    "State",
    "TruncConfig",
    "basis_up_to",
    "parse_state",
    "print_state",
    "Tag",
    "classify",
    "omega_test",
    "mode_of",
    "virasoro_mode",
    "TensorVector",
    "tensor_central_charge",
    "tensor_classify",
    "zhu_report",
]

__version__ = "0.1.0"
