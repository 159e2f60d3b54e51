"""
Reductions to sequences of partial permutations

A reduction produces a family n -> alpha_n of partial permutations of the
Other fields, run by the intru rule at level n. The halting reduction makes
the level-n alphabet empty once a machine has stopped; the enumeration
reduction follows the last permutation listed by an enumerating machine.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from fixpoint_ppa.modules.encoding import (
    Letter, Word, EncodingError, Undefined, bin_encode, chi_decode,
)
from fixpoint_ppa.modules.ppa import PpaRule
from fixpoint_ppa.modules.turing import (
    ACCEPT, INITIAL, TmProgram, TmRejected, halt_within, initial_config, tm_step,
)
from .fields import C_OTHER, layout_of

logger = logging.getLogger(__name__)

Permutation = Callable[[Letter], Letter]
PermutationPair = Tuple[Permutation, Permutation]

OTHER_ARITY = len(C_OTHER)
ZERO_LETTER: Letter = ('0',) * OTHER_ARITY


def table_pair(table: Mapping[Letter, Letter]) -> PermutationPair:
    """(forward, backward) of a finite injective table; letters outside it are undefined."""
    forward_table = dict(table)
    backward_table = {image: source for source, image in forward_table.items()}
    if len(backward_table) != len(forward_table):
        raise ValueError("table is not injective")

    def forward(letter: Letter) -> Letter:
        try:
            return forward_table[tuple(letter)]
        except KeyError:
            raise Undefined('table', 'letter outside the domain')

    def backward(letter: Letter) -> Letter:
        try:
            return backward_table[tuple(letter)]
        except KeyError:
            raise Undefined('table', 'letter outside the image')

    return forward, backward


class HaltingReduction:
    """
    alpha_n is the identity on the single letter (0, 0, 0) while p' has not
    stopped within n steps on 0^n, and nowhere defined afterwards
    """

    def __init__(self, p_prime: TmProgram):
        self.p_prime = p_prime
        self._defined: Dict[int, bool] = {}

    def defined(self, n: int) -> bool:
        if n < 0:
            raise ValueError(f"negative level {n}")
        if n not in self._defined:
            self._defined[n] = halt_within(self.p_prime, n, '0' * n)
        return self._defined[n]

    def alpha(self, n: int) -> PermutationPair:
        if self.defined(n):
            return table_pair({ZERO_LETTER: ZERO_LETTER})
        return table_pair({})

    __call__ = alpha

    def first_undefined(self, levels: int) -> Optional[int]:
        for n in range(levels):
            if not self.defined(n):
                return n
        return None

    def manifest(self, levels: int) -> Dict:
        return {
            'reduction': 'halting',
            'machine': self.p_prime.code,
            'levels': levels,
            'defined': [self.defined(n) for n in range(levels)],
            'first_undefined': self.first_undefined(levels),
        }


def intruder_rule(family: Callable[[int], PermutationPair], n: int) -> PpaRule:
    """The automaton G_n running alpha_n alone on the Other fields."""
    forward, backward = family(n)
    return PpaRule(layout_of(C_OTHER), forward, backward, name=f"G_{n}")


def decode_permutation(word: Word, arity: int = OTHER_ARITY) -> Optional[Dict[Letter, Letter]]:
    """
    Table serialized as the Chi encoding of source and image letters in turn

    The decoded fields are read in blocks of 2 * arity: the first ``arity``
    fields form a source letter, the next ``arity`` its image. Returns None
    when the word is not such an encoding or the table is not a partial
    permutation preserving field lengths.
    """
    try:
        fields = chi_decode(word)
    except EncodingError:
        return None
    if not word or len(fields) % (2 * arity):
        return None
    table: Dict[Letter, Letter] = {}
    for start in range(0, len(fields), 2 * arity):
        source = fields[start:start + arity]
        image = fields[start + arity:start + 2 * arity]
        if source in table or tuple(len(f) for f in source) != tuple(len(f) for f in image):
            return None
        table[source] = image
    if len(set(table.values())) != len(table):
        return None
    return table


@dataclass(frozen=True)
class Enumerator:
    """A machine run on the blank tape; its tape word is emitted whenever it enters an emit state."""
    program: TmProgram
    emit_states: FrozenSet[str] = field(default_factory=frozenset)


def _chain(actions: Sequence[Tuple[Optional[str], int]], emit_after: Sequence[int]) -> Enumerator:
    states = [INITIAL] + [bin_encode(i) for i in range(1, len(actions))] + [ACCEPT]
    transitions = {}
    for i, (write, move) in enumerate(actions):
        for symbol in '0123':
            transitions[(symbol, states[i])] = (write or symbol, states[i + 1], move)
    emit = frozenset(states[i + 1] for i in emit_after)
    return Enumerator(TmProgram.build(states, transitions), emit)


def writer_machine(words: Sequence[Word]) -> Enumerator:
    """
    Enumerator writing each word from cell 0, emitting it, then walking back

    Cells past a shorter word are blanked before the emission, so the tape
    word at each emission is exactly the listed word.

    Args:
        words: Non-empty words over {0,1,2}
    """
    actions: List[Tuple[Optional[str], int]] = []
    emit_after: List[int] = []
    written = 0
    for word in words:
        if not word or any(c not in '012' for c in word):
            raise ValueError(f"cannot write {word!r}")
        actions.extend((symbol, 1) for symbol in word)
        actions.extend(('3', 1) for _ in range(len(word), written))
        width = max(written, len(word))
        emit_after.append(len(actions) - 1)
        actions.extend((None, -1) for _ in range(width))
        written = len(word)
    actions.append((None, 1))
    return _chain(actions, emit_after)


class EnumerationSequence:
    """
    alpha_n is the last well-formed permutation emitted within n steps, or the fallback

    Malformed emissions are skipped: the previous table stays in force.
    """

    def __init__(self, enumerator: Enumerator, fallback: Mapping[Letter, Letter], arity: int = OTHER_ARITY):
        self.enumerator = enumerator
        self.fallback = dict(fallback)
        self.arity = arity
        self._config = initial_config('')
        self._steps = 0
        self._stopped = False
        self._emissions: List[Tuple[int, Dict[Letter, Letter]]] = []

    def _advance(self, n: int) -> None:
        while self._steps < n and not self._stopped:
            if self._config.state == ACCEPT:
                self._stopped = True
                break
            try:
                self._config = tm_step(self.enumerator.program, self._config, self._steps + 1)
            except TmRejected:
                self._stopped = True
                break
            self._steps += 1
            if self._config.state in self.enumerator.emit_states:
                table = decode_permutation(self._config.tape_word(), self.arity)
                if table is None:
                    logger.debug("malformed emission at step %d ignored", self._steps)
                else:
                    self._emissions.append((self._steps, table))

    def table(self, n: int) -> Dict[Letter, Letter]:
        self._advance(n)
        latest = self.fallback
        for step, table in self._emissions:
            if step > n:
                break
            latest = table
        return latest

    def __call__(self, n: int) -> PermutationPair:
        return table_pair(self.table(n))

    def emission_steps(self) -> List[int]:
        return [step for step, _ in self._emissions]


def build_enumeration_sequence(enumerator: Enumerator, fallback: Mapping[Letter, Letter],
                               arity: int = OTHER_ARITY) -> EnumerationSequence:
    return EnumerationSequence(enumerator, fallback, arity)
