import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import (
    Letter, Word, EncodingError, Undefined, BudgetExceeded,
    chi_encode, chi_decode, alphabet, alphabet_size, is_binary,
)

logger = logging.getLogger(__name__)

ACCEPT = ''
INITIAL = '0'
BLANK = Config.TAPE_BLANK

Transition = Tuple[str, str, int]


class ProgramFormatError(ValueError):
    """A program text or code word is malformed."""


class TmRejected(Exception):
    """The machine reached an undefined transition."""

    def __init__(self, step: int, symbol: str, state: str, position: int):
        super().__init__(f"undefined transition on ({symbol}, {state or 'ε'}) at step {step}, cell {position}")
        self.step = step
        self.symbol = symbol
        self.state = state
        self.position = position


def _move_bit(move: int) -> str:
    return '1' if move > 0 else '0'


@dataclass(frozen=True)
class TmProgram:
    """Single-tape machine over {0,1,2,3} with binary state names.

    The accepting state is the empty word and every transition into it moves
    the head right. A missing table entry means rejection.
    """
    states: Tuple[str, ...]
    table: Tuple[Tuple[Tuple[str, str], Transition], ...]

    def __post_init__(self):
        if INITIAL not in self.states or ACCEPT not in self.states:
            raise ProgramFormatError("state list must contain '0' and the accepting state")
        if len(set(self.states)) != len(self.states):
            raise ProgramFormatError("duplicate state names")
        for state in self.states:
            if not is_binary(state):
                raise ProgramFormatError(f"state {state!r} is not a binary word")
        seen = set()
        for (a, q), (a2, q2, m) in self.table:
            if (a, q) in seen:
                raise ProgramFormatError(f"duplicate transition for ({a}, {q})")
            seen.add((a, q))
            if a not in '0123' or a2 not in '0123' or len(a) != 1 or len(a2) != 1:
                raise ProgramFormatError(f"tape symbol outside 0..3 in ({a}, {q})")
            if q == ACCEPT:
                raise ProgramFormatError("no transition may leave the accepting state")
            if q not in self.states or q2 not in self.states:
                raise ProgramFormatError(f"unknown state in ({a}, {q}) -> ({a2}, {q2})")
            if m not in (-1, 1):
                raise ProgramFormatError(f"move {m} is not -1 or +1")
            if q2 == ACCEPT and m != 1:
                raise ProgramFormatError("accepting transitions must move right")
        object.__setattr__(self, "_lookup", dict(self.table))

    @classmethod
    def build(cls, states: Iterable[str], transitions: Dict[Tuple[str, str], Transition]) -> 'TmProgram':
        ordered = tuple(dict.fromkeys(states))
        return cls(ordered, tuple(sorted(transitions.items())))

    @property
    def transitions(self) -> Dict[Tuple[str, str], Transition]:
        return dict(self._lookup)

    def delta(self, symbol: str, state: str) -> Optional[Transition]:
        return self._lookup.get((symbol, state))

    @property
    def code(self) -> Word:
        """Self-delimiting code word over {0,1,2,3}.

        The state list joined by 2 and closed by 3, then one record
        ``bits(a) 2 q 2 bits(a') 2 q' 2 move 3`` per transition.
        """
        parts = ['2'.join(self.states), '3']
        for (a, q), (a2, q2, m) in self.table:
            parts.append(f"{int(a):02b}2{q}2{int(a2):02b}2{q2}2{_move_bit(m)}3")
        return ''.join(parts)

    @classmethod
    def from_code(cls, code: Word) -> 'TmProgram':
        return _decode_program(code)

    @property
    def size(self) -> int:
        return len(self.code)

    def state_lengths(self) -> int:
        return max(len(q) for q in self.states)

    def to_text(self) -> str:
        lines = ['states ' + ' '.join(q or '_' for q in self.states)]
        for (a, q), (a2, q2, m) in self.table:
            lines.append(f"{a} {q or '_'} -> {a2} {q2 or '_'} {'+1' if m > 0 else '-1'}")
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text: str) -> 'TmProgram':
        states: List[str] = []
        transitions: Dict[Tuple[str, str], Transition] = {}
        for number, raw in enumerate(text.splitlines(), 1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if tokens[0] == 'states':
                states = [ACCEPT if t == '_' else t for t in tokens[1:]]
                continue
            if len(tokens) != 6 or tokens[2] != '->':
                raise ProgramFormatError(f"line {number}: expected 'a q -> a' q' m'")
            a, q, _, a2, q2, m = tokens
            try:
                move = int(m)
            except ValueError:
                raise ProgramFormatError(f"line {number}: bad move {m!r}")
            key = (a, ACCEPT if q == '_' else q)
            if key in transitions:
                raise ProgramFormatError(f"line {number}: duplicate transition")
            transitions[key] = (a2, ACCEPT if q2 == '_' else q2, move)
        if not states:
            raise ProgramFormatError("missing 'states' header")
        return cls.build(states, transitions)


@lru_cache(maxsize=4096)
def _decode_program(code: Word) -> TmProgram:
    if any(c not in '0123' for c in code):
        raise ProgramFormatError("program code must be a word over 0..3")
    chunks = code.split('3')
    if len(chunks) < 2 or chunks[-1] != '':
        raise ProgramFormatError("program code must end with a record terminator")
    states = chunks[0].split('2')
    transitions: Dict[Tuple[str, str], Transition] = {}
    for record in chunks[1:-1]:
        parts = record.split('2')
        if len(parts) != 5 or len(parts[0]) != 2 or len(parts[2]) != 2 or parts[4] not in ('0', '1'):
            raise ProgramFormatError(f"malformed record {record!r}")
        a, q, a2, q2, m = parts
        key = (str(int(a, 2)), q)
        if key in transitions:
            raise ProgramFormatError("duplicate transition record")
        transitions[key] = (str(int(a2, 2)), q2, 1 if m == '1' else -1)
    return TmProgram.build(states, transitions)


@dataclass
class TmConfig:
    tape: Dict[int, str] = field(default_factory=dict)
    state: str = INITIAL
    head: int = 0

    def read(self, position: Optional[int] = None) -> str:
        return self.tape.get(self.head if position is None else position, BLANK)

    def copy(self) -> 'TmConfig':
        return TmConfig(dict(self.tape), self.state, self.head)

    def tape_word(self) -> Word:
        """Tape content from cell 0 up to the last non-blank cell."""
        support = [i for i, s in self.tape.items() if s != BLANK]
        if not support:
            return ''
        return ''.join(self.read(i) for i in range(min(0, min(support)), max(support) + 1))


@dataclass(frozen=True)
class TmResult:
    status: str  # 'accepted' | 'running' | 'rejected'
    steps: int
    output: Optional[Letter] = None
    config: Optional[TmConfig] = None


def initial_config(word: Word) -> TmConfig:
    return TmConfig({i: s for i, s in enumerate(word) if s != BLANK}, INITIAL, 0)


def tm_step(program: TmProgram, config: TmConfig, step: int = 0) -> TmConfig:
    """One application of the global map; identity once the state is accepting."""
    if config.state == ACCEPT:
        return config
    symbol = config.read()
    transition = program.delta(symbol, config.state)
    if transition is None:
        raise TmRejected(step, symbol, config.state, config.head)
    new_symbol, new_state, move = transition
    tape = dict(config.tape)
    if new_symbol == BLANK:
        tape.pop(config.head, None)
    else:
        tape[config.head] = new_symbol
    return TmConfig(tape, new_state, config.head + move)


def tm_run_word(program: TmProgram, word: Word, max_steps: int) -> TmResult:
    """Run on a raw tape word placed at cells 0.. with the head on cell 0."""
    config = initial_config(word)
    for step in range(max_steps):
        if config.state == ACCEPT:
            return TmResult('accepted', step, config=config)
        try:
            config = tm_step(program, config, step + 1)
        except TmRejected:
            return TmResult('rejected', step + 1, config=config)
    status = 'accepted' if config.state == ACCEPT else 'running'
    return TmResult(status, max_steps, config=config)


def tm_run(program: TmProgram, letter: Sequence[str], max_steps: int) -> TmResult:
    """
    Run a machine on the Chi encoding of a letter

    Args:
        program: Machine to run
        letter: Input letter
        max_steps: Step budget

    Returns:
        TmResult; accepted results carry the decoded output letter
    """
    result = tm_run_word(program, chi_encode(letter), max_steps)
    if result.status != 'accepted':
        return result
    config = result.config
    word = config.tape_word()
    if any(i < 0 and s != BLANK for i, s in config.tape.items()):
        return TmResult('rejected', result.steps, config=config)
    try:
        output = chi_decode(word)
    except EncodingError:
        logger.debug("accepted tape %r is not an encoding", word)
        return TmResult('rejected', result.steps, config=config)
    return TmResult('accepted', result.steps, output=output, config=config)


def universal_delta(symbol: str, state: str, code: Word) -> Transition:
    """Transition of the program written as ``code``; raises Undefined outside its domain."""
    try:
        program = TmProgram.from_code(code)
    except ProgramFormatError as e:
        raise Undefined('universal_delta', f"invalid program: {e}")
    if state == ACCEPT or state not in program.states:
        raise Undefined('universal_delta', f"state {state!r} not in Q_p minus the accepting state")
    transition = program.delta(symbol, state)
    if transition is None:
        raise Undefined('universal_delta', f"no transition for ({symbol}, {state})")
    return transition


def default_step_budget(lengths: Sequence[int], program: TmProgram) -> int:
    """Generous step cap for runs over an alphabet: bounded by configurations of a bounded tape."""
    width = 3 * sum(lengths) + len(lengths) + 2
    return 4 * width * width * max(1, len(program.states)) + 16


def time_complexity_over(program: TmProgram, lengths: Sequence[int],
                         max_steps: Optional[int] = None,
                         limit: Optional[int] = None) -> Tuple[int, bool]:
    """
    Maximal running time over the accepted letters of 5^k

    Args:
        program: Machine to measure
        lengths: Length vector k
        max_steps: Per-run step cap (defaults to a tape-size based bound)
        limit: Alphabet size budget (defaults to Config.MAX_ALPHABET)

    Returns:
        (time, empty) where empty flags an empty accepted set (time is then 0)
    """
    limit = Config.MAX_ALPHABET if limit is None else limit
    if alphabet_size(lengths) > limit:
        raise BudgetExceeded(f"alphabet 5^{tuple(lengths)} exceeds budget {limit}")
    max_steps = default_step_budget(lengths, program) if max_steps is None else max_steps
    deadline = time.monotonic() + Config.budget_seconds()
    worst = 0
    accepted = 0
    for letter in alphabet(lengths, limit):
        if time.monotonic() > deadline:
            raise BudgetExceeded(f"time budget of {Config.BUDGET_MS} ms exceeded")
        result = tm_run(program, letter, max_steps)
        if result.status == 'accepted':
            accepted += 1
            worst = max(worst, result.steps)
    if accepted == 0:
        logger.warning("no accepted input over 5^%s; time complexity set to 0", tuple(lengths))
    return worst, accepted == 0


def halt_within(program: TmProgram, steps: int, word: Word) -> bool:
    """True iff the machine does not stop (accept or reject) within ``steps`` steps on ``word``."""
    return tm_run_word(program, word, steps).status == 'running'
