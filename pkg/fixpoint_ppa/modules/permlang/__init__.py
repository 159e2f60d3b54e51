# Permutation Language Module
from .ast import (
    Term, Valuation, Vector, Condition, Perm,
    Const, Proj, ChiOf, BinWord, Concat, IndexedAt, Strip,
    Num, BinOf, Length, Directive, Offset, SeqAt, Arith,
    ConstVector, FieldLengths, SeqVector,
    TrueC, Cmp, TermCmp, TermIn, Live, Empty, Halt, And, Or, Not,
    Check, Increment, RunTm, Write, Unwrite, Exchange, Seq, If, Intruder,
    seq, if_then, all_of, any_of, field_names,
)
from .parser import ParseError, PermParser, parse, tokenize_line
from .printer import pretty_print, print_term, print_valuation, print_condition
from .evaluator import (
    DIRECTIVE_LETTERS, Environment, Interpreter, eval_perm, invert, permutation_pair,
)
from .passes import PassCompileError, PassCompiler, compile_passes
from .compiler import (
    STRATEGIES, ProgramMeasure, CompiledProgram, compile_to_tm, measure_program, compile_inverse_check,
    compile_differential,
)

__all__ = [
    'Term', 'Valuation', 'Vector', 'Condition', 'Perm',
    'Const', 'Proj', 'ChiOf', 'BinWord', 'Concat', 'IndexedAt', 'Strip',
    'Num', 'BinOf', 'Length', 'Directive', 'Offset', 'SeqAt', 'Arith',
    'ConstVector', 'FieldLengths', 'SeqVector',
    'TrueC', 'Cmp', 'TermCmp', 'TermIn', 'Live', 'Empty', 'Halt', 'And', 'Or', 'Not',
    'Check', 'Increment', 'RunTm', 'Write', 'Unwrite', 'Exchange', 'Seq', 'If', 'Intruder',
    'seq', 'if_then', 'all_of', 'any_of', 'field_names',
    'ParseError', 'PermParser', 'parse', 'tokenize_line',
    'pretty_print', 'print_term', 'print_valuation', 'print_condition',
    'DIRECTIVE_LETTERS', 'Environment', 'Interpreter', 'eval_perm', 'invert', 'permutation_pair',
    'PassCompileError', 'PassCompiler', 'compile_passes',
    'STRATEGIES', 'ProgramMeasure', 'CompiledProgram', 'compile_to_tm', 'measure_program', 'compile_inverse_check',
    'compile_differential',
]
