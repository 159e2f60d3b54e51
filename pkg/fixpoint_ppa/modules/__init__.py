# Fixpoint PPA Modules
from .encoding import EncodingError, Undefined, BudgetExceeded
from .turing import TmProgram, TmResult, tm_run
from .ppa import PeriodicConfig, PpaRule, StepRejected, step_forward, step_backward, iterate
from .permlang import Environment, Interpreter, parse, compile_to_tm
from .rules import RuleInstance, HaltingReduction
from .simulation import SimulationSpec, ComposedSpec, encode, decode, verify_simulation
from .params import InequalityReport, SequenceRecipe, ParameterSequences, solve_toy_unive
from .directions import Slope, SlopeInterval, theta_interval, cover_check

__all__ = [
    'EncodingError', 'Undefined', 'BudgetExceeded',
    'TmProgram', 'TmResult', 'tm_run',
    'PeriodicConfig', 'PpaRule', 'StepRejected', 'step_forward', 'step_backward', 'iterate',
    'Environment', 'Interpreter', 'parse', 'compile_to_tm',
    'RuleInstance', 'HaltingReduction',
    'SimulationSpec', 'ComposedSpec', 'encode', 'decode', 'verify_simulation',
    'InequalityReport', 'SequenceRecipe', 'ParameterSequences', 'solve_toy_unive',
    'Slope', 'SlopeInterval', 'theta_interval', 'cover_check',
]
