"""Exact computations in the groups F(r, <n>, Z[1/n]) of piecewise-linear
homeomorphisms, the copy of Z wr Z they contain, arithmetic read off boundary
slopes, first-order interpretations between finite structures, and the
rewriting of products of commutators as two commutators."""

from .numbers import THOMPSON, GroupContext, in_A, log_slope, parse_rational
from .plmaps import (IntervalSet, PLBijection, PLMap, commutator, commutes, compose, conjugate,
                     evaluate, identity, inverse, power, slope_left, slope_right, support)

__version__ = "0.1.0"

__all__ = [
    "THOMPSON", "GroupContext", "IntervalSet", "PLBijection", "PLMap", "commutator", "commutes",
    "compose", "conjugate", "evaluate", "identity", "in_A", "inverse", "log_slope",
    "parse_rational", "power", "slope_left", "slope_right", "support",
]
