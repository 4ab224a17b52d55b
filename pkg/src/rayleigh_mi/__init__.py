"""Mutual information of the non-coherent Rayleigh fading channel with a
complex Gaussian input, its analytical lower bound, and brute-force checks."""
from .channel import (
    ChannelParams,
    InfoPoint,
    c_cnf,
    c_rcsi,
    entropy_gap,
    h_y,
    h_y_given_x,
    info_point,
    lower_bound,
    mutual_information,
    output_pdf,
)
from .discrete import DiscreteInput, discrete_mi, two_point_capacity
from .quadrature import QuadratureRule, full_range_hermite_rule, half_range_hermite_rule

__all__ = [
    "ChannelParams", "InfoPoint", "c_cnf", "c_rcsi", "entropy_gap", "h_y", "h_y_given_x",
    "info_point", "lower_bound", "mutual_information", "output_pdf", "DiscreteInput",
    "discrete_mi", "two_point_capacity", "QuadratureRule", "full_range_hermite_rule",
    "half_range_hermite_rule",
]
__version__ = "0.1.0"
