import logging
import time
from dataclasses import dataclass, asdict
from typing import Dict, Iterable, Optional, Sequence, Tuple

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import (
    Word, Undefined, BudgetExceeded, alphabet, alphabet_size, chi_encode, chi_length,
)
from fixpoint_ppa.modules.turing import TmProgram, lookup_machine, time_complexity_over, tm_run
from .ast import Perm
from .evaluator import Environment, Interpreter, invert
from .passes import PassCompileError, compile_passes

logger = logging.getLogger(__name__)

STRATEGIES = ('auto', 'passes', 'table')


@dataclass(frozen=True)
class ProgramMeasure:
    size: int
    states: int
    time: int
    empty: bool

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class CompiledProgram:
    """
    Forward and backward machines of a program over 5^k'

    ``defined`` and the measures need a sweep of the alphabet and stay None
    when 5^k' exceeds the budget; ``step_bound`` caps the running time of
    either machine on any input.
    """
    forward: TmProgram
    backward: TmProgram
    lengths: Tuple[int, ...]
    strategy: str
    step_bound: int
    defined: Optional[int] = None
    forward_measure: Optional[ProgramMeasure] = None
    backward_measure: Optional[ProgramMeasure] = None

    def to_dict(self) -> Dict:
        return {
            'lengths': list(self.lengths),
            'strategy': self.strategy,
            'step_bound': self.step_bound,
            'states': [len(self.forward.states), len(self.backward.states)],
            'defined': self.defined,
            'forward': self.forward_measure.to_dict() if self.forward_measure else None,
            'backward': self.backward_measure.to_dict() if self.backward_measure else None,
        }


def measure_program(program: TmProgram, lengths: Sequence[int],
                    limit: Optional[int] = None, max_steps: Optional[int] = None) -> ProgramMeasure:
    """
    Size, state count and running time of a machine over 5^k

    Args:
        program: Machine to measure
        lengths: Length vector k
        limit: Alphabet budget (defaults to Config.MAX_ALPHABET)
        max_steps: Per-run step cap

    Returns:
        ProgramMeasure; ``empty`` flags an alphabet with no accepted letter
    """
    worst, empty = time_complexity_over(program, lengths, max_steps=max_steps, limit=limit)
    return ProgramMeasure(size=program.size, states=len(program.states), time=worst, empty=empty)


def _table(program: Perm, lengths: Sequence[int], env: Environment, limit: int,
           deadline: float) -> Dict[Word, Word]:
    interpreter = Interpreter(env)
    mapping: Dict[Word, Word] = {}
    for letter in alphabet(lengths, limit):
        if time.monotonic() > deadline:
            raise BudgetExceeded(f"compilation exceeded {Config.BUDGET_MS} ms")
        try:
            image = interpreter.apply(program, letter)
        except Undefined:
            continue
        mapping[chi_encode(letter)] = chi_encode(image)
    return mapping


def _table_machines(program: Perm, lengths: Tuple[int, ...], env: Environment,
                    limit: int) -> Tuple[TmProgram, TmProgram, int]:
    if alphabet_size(lengths) > limit:
        raise BudgetExceeded(f"alphabet 5^{lengths} exceeds the compilation budget {limit}")
    deadline = time.monotonic() + Config.budget_seconds()
    forward_table = _table(program, lengths, env, limit, deadline)
    backward_table = {image: source for source, image in forward_table.items()}
    if len(backward_table) != len(forward_table):
        raise ValueError(f"program is not injective on 5^{lengths}")
    return lookup_machine(forward_table), lookup_machine(backward_table), len(forward_table)


def compile_to_tm(program: Perm, lengths: Sequence[int], env: Environment,
                  limit: Optional[int] = None, strategy: str = 'auto') -> CompiledProgram:
    """
    Compile a program into a pair of machines over the alphabet 5^k'

    Pass machines walk the Chi tape once per primitive and have polynomially
    many states in the sum of k'. Table machines remember the whole input
    and write its image; they need the alphabet to fit the budget and are
    the fallback for programs that run machines or intruders. Both accept
    the encoding of every letter in the domain with the encoding of its
    image and reject every other input.

    Args:
        program: Permutation program
        lengths: Target length vector k'
        env: Field labels and external names
        limit: Alphabet budget (defaults to Config.MAX_ALPHABET)
        strategy: 'passes', 'table', or 'auto' for passes with the table as fallback

    Returns:
        CompiledProgram; measured when 5^k' fits the budget
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    limit = Config.MAX_ALPHABET if limit is None else limit
    lengths = tuple(lengths)
    sweepable = alphabet_size(lengths) <= limit
    compiled = None
    if strategy != 'table':
        try:
            forward, forward_bound = compile_passes(program, lengths, env)
            backward, backward_bound = compile_passes(invert(program), lengths, env)
            compiled = (forward, backward, 'passes', max(forward_bound, backward_bound), None)
        except PassCompileError as e:
            if strategy == 'passes':
                raise
            logger.info("no pass form (%s); compiling a lookup table", e)
    if compiled is None:
        forward, backward, defined = _table_machines(program, lengths, env, limit)
        compiled = (forward, backward, 'table', 2 * chi_length(lengths) + 2, defined)
    forward, backward, used, bound, defined = compiled

    forward_measure = backward_measure = None
    if sweepable:
        if defined is None:
            defined = _count_defined(program, lengths, env, limit)
        forward_measure = measure_program(forward, lengths, limit, bound)
        backward_measure = measure_program(backward, lengths, limit, bound)
    logger.info("compiled program over 5^%s by %s: %s defined letters, %d states",
                lengths, used, 'unmeasured' if defined is None else defined, len(forward.states))
    return CompiledProgram(
        forward=forward,
        backward=backward,
        lengths=lengths,
        strategy=used,
        step_bound=bound,
        defined=defined,
        forward_measure=forward_measure,
        backward_measure=backward_measure,
    )


def _count_defined(program: Perm, lengths: Sequence[int], env: Environment, limit: int) -> int:
    interpreter = Interpreter(env)
    count = 0
    for letter in alphabet(lengths, limit):
        try:
            interpreter.apply(program, letter)
        except Undefined:
            continue
        count += 1
    return count


def compile_inverse_check(program: Perm, lengths: Sequence[int], env: Environment,
                          limit: Optional[int] = None, strategy: str = 'auto') -> bool:
    """The backward machine of ``program`` is the forward machine of its syntactic inverse, and back."""
    compiled = compile_to_tm(program, lengths, env, limit, strategy)
    inverse = compile_to_tm(invert(program), lengths, env, limit, strategy)
    return (inverse.forward.code == compiled.backward.code
            and inverse.backward.code == compiled.forward.code)


def compile_differential(program: Perm, lengths: Sequence[int], env: Environment,
                         limit: Optional[int] = None, strategy: str = 'auto',
                         letters: Optional[Iterable[Sequence[str]]] = None) -> Dict:
    """
    Run both compiled machines against the evaluator

    Args:
        letters: Letters to try (defaults to all of 5^k')

    Returns:
        Result dict with status 'pass' or 'fail' and the mismatching letters
    """
    compiled = compile_to_tm(program, lengths, env, limit, strategy)
    interpreter = Interpreter(env)
    budget = compiled.step_bound
    if letters is None:
        letters = alphabet(lengths, limit or Config.MAX_ALPHABET)
    mismatches = []
    checked = 0
    for letter in letters:
        letter = tuple(letter)
        checked += 1
        try:
            expected = interpreter.apply(program, letter)
        except Undefined:
            expected = None
        result = tm_run(compiled.forward, letter, budget)
        got = result.output if result.status == 'accepted' else None
        if got != expected:
            mismatches.append({'letter': list(letter), 'expected': expected, 'machine': got})
            continue
        if expected is not None:
            back = tm_run(compiled.backward, expected, budget)
            if back.status != 'accepted' or back.output != letter:
                mismatches.append({'letter': list(letter), 'reason': 'backward machine'})
    return {'status': 'pass' if not mismatches else 'fail', 'letters': checked,
            'strategy': compiled.strategy, 'defined': compiled.defined,
            'mismatches': mismatches[:10]}
