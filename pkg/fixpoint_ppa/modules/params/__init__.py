# Parameter Module
from .inequalities import (
    ParameterError, DependencyError, InequalityError, Constraint, InequalitySet, InequalityReport,
    check_inequalities, unive_inequalities, self_inequalities, level_inequalities,
)
from .solver import (
    UNIVE_LABELS, measure_times, unive_lengths, unive_witness, solve_toy_unive,
    witness_record, write_witness,
)
from .selfsim import (
    PolynomialFit, ProgramModel, fit_polynomial, measure_lookup_fits, self_lengths, solve_self_sim,
)
from .sequences import (
    FAMILIES, DIRECTIVES, SequenceRecipe, ParameterSequences, make_sequences, ratio_product,
)

__all__ = [
    'ParameterError', 'DependencyError', 'InequalityError', 'Constraint', 'InequalitySet',
    'InequalityReport', 'check_inequalities', 'unive_inequalities', 'self_inequalities',
    'level_inequalities',
    'UNIVE_LABELS', 'measure_times', 'unive_lengths', 'unive_witness', 'solve_toy_unive',
    'witness_record', 'write_witness',
    'PolynomialFit', 'ProgramModel', 'fit_polynomial', 'measure_lookup_fits', 'self_lengths',
    'solve_self_sim',
    'FAMILIES', 'DIRECTIVES', 'SequenceRecipe', 'ParameterSequences', 'make_sequences', 'ratio_product',
]
