"""Exact densities of k-automatic sets and limit means of automatic sequences."""

from densic.asymptotics import AsymptoticTable, analyze_growth, census_constants, partial_sum_exact, period
from densic.automaton import DFAO, AutomaticSet, KernelSystem, ParseError, format_dfao, kernel_system, load_dfao, minimize, normalize, parse_dfao
from densic.constructor import DensityTarget, InadmissibleTarget, construct
from densic.density import (
    DensityReport,
    Dichotomy,
    InfeasibleInstance,
    Witness,
    candidate_value,
    densities,
    dichotomy,
    kappa,
    kappa_prime,
    liminf_mean,
    limsup_mean,
)
from densic.exact import Matrix, Polynomial, minimal_polynomial

__version__ = "0.1.0"

__all__ = [
    "AsymptoticTable", "AutomaticSet", "DFAO", "DensityReport", "DensityTarget", "Dichotomy",
    "InadmissibleTarget", "InfeasibleInstance", "KernelSystem", "Matrix", "ParseError", "Polynomial",
    "Witness", "analyze_growth", "candidate_value", "census_constants", "construct", "densities",
    "dichotomy", "format_dfao", "kappa", "kappa_prime", "kernel_system", "liminf_mean", "limsup_mean",
    "load_dfao", "minimal_polynomial", "minimize", "normalize", "parse_dfao", "partial_sum_exact", "period",
]
