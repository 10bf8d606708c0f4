"""Exact-arithmetic constructions and verifiers for Costas permutations,
Golomb rulers, indicator-function Costas bijections, Cauchy-equation models,
and dense rational Costas clouds."""

__version__ = "0.1.0"
