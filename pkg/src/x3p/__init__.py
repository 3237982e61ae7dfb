"""Tripartite K_{s,t}-free graph constructions, verification, and exact bounds."""

from .bounds import (
    exact_chi2_bound,
    exact_chi3_bound,
    exact_tripartite_bound,
    lagrange_closed_form,
    lagrange_numeric_oracle,
    minbinom,
    thm1_coefficient,
)
from .constructions import build_Gamma_qt, build_G_qt, build_sum_quotient, build_williford
from .graph_core import PartitionedGraph, is_C4_free, is_Kst_free, max_common_degree
from .sidon import SidonSet, bose_chowla, is_sidon

__version__ = "0.1.0"
