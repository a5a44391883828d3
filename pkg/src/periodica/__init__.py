"""Combinatorics of period sets of words.

Periods and autocorrelations of words, correlations of word pairs, forward
closures and irreducible period sets, exhaustive enumeration of the valid
autocorrelations of each length, and the bounds on how many there are.
"""

from .closure import (IrreduciblePeriodSet, QSequence, choicebound_cases, forward_closure,
                      irreducible, q_sequence)
from .correlation import Correlation, correlate, correlation_witness, decompose, delta
from .enumeration import (GammaSet, enumerate_gamma, is_valid_autocorrelation, kappa,
                          witness)
from .errors import (CacheError, DomainError, InvalidCorrelation, InvariantViolation,
                     PeriodicaError, PreconditionError, UnsupportedLength)
from .periods import (Autocorrelation, PeriodSet, autocorrelation, basic_period,
                      fine_wilf_applies, is_period, period_set, suffix_autocorrelation)

__version__ = "0.1.0"

__all__ = [
    "Autocorrelation", "Correlation", "GammaSet", "IrreduciblePeriodSet", "PeriodSet",
    "QSequence", "autocorrelation", "basic_period", "choicebound_cases", "correlate",
    "correlation_witness", "decompose", "delta", "enumerate_gamma", "fine_wilf_applies",
    "forward_closure", "irreducible", "is_period", "is_valid_autocorrelation", "kappa",
    "period_set", "q_sequence", "suffix_autocorrelation", "witness",
    "CacheError", "DomainError", "InvalidCorrelation", "InvariantViolation",
    "PeriodicaError", "PreconditionError", "UnsupportedLength",
]
