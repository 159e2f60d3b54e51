import logging
import random
from typing import Callable, Dict, Mapping, Sequence, Tuple

from fixpoint_ppa.modules.encoding import (
    Letter, Word, Undefined, bin_encode, chi_encode, alphabet,
)
from .machine import TmProgram, Transition, ACCEPT, INITIAL, BLANK

logger = logging.getLogger(__name__)


def identity_machine() -> TmProgram:
    """Reads the leading separator and accepts at once (t = 1 on every encoding)."""
    return TmProgram.build([INITIAL, ACCEPT], {('2', INITIAL): ('2', ACCEPT, 1)})


def empty_machine() -> TmProgram:
    """No transitions: every input is rejected at step 1."""
    return TmProgram.build([INITIAL, ACCEPT], {})


def looping_machine() -> TmProgram:
    """Walks right forever over any tape."""
    return TmProgram.build([INITIAL, ACCEPT], {(a, INITIAL): (a, INITIAL, 1) for a in '0123'})


def bit_flip_machine() -> TmProgram:
    """
    Flips the last bit of a single one-symbol field (0<->1, 2<->3)

    Reading the second code bit 1 means the symbol is 4, which has no image.
    Runs in exactly 4 steps and is its own inverse.
    """
    transitions: Dict[Tuple[str, str], Transition] = {
        ('2', '0'): ('2', '1', 1),
        ('0', '1'): ('0', '10', 1),
    }
    for b in '01':
        transitions[(b, '10')] = (b, '11', 1)
        transitions[(b, '11')] = ('1' if b == '0' else '0', ACCEPT, 1)
    return TmProgram.build([INITIAL, '1', '10', '11', ACCEPT], transitions)


def countdown_machine(halt_at: int) -> TmProgram:
    """Walks right over any tape and accepts after exactly ``halt_at`` steps (halt_at >= 1)."""
    if halt_at < 1:
        raise ValueError("halt_at must be at least 1")
    states = [INITIAL] + [bin_encode(i) for i in range(1, halt_at)] + [ACCEPT]
    transitions: Dict[Tuple[str, str], Transition] = {}
    for i in range(halt_at):
        current = states[i]
        following = states[i + 1]
        for a in '0123':
            transitions[(a, current)] = (a, following, 1)
    return TmProgram.build(states, transitions)


def random_machine(rng: random.Random, max_states: int = 4, density: float = 0.8) -> TmProgram:
    """Random partial machine with at most ``max_states`` working states."""
    count = rng.randint(1, max_states)
    working = [INITIAL] + [bin_encode(i) for i in range(1, count)]
    targets = working + [ACCEPT]
    transitions: Dict[Tuple[str, str], Transition] = {}
    for q in working:
        for a in '0123':
            if rng.random() > density:
                continue
            q2 = rng.choice(targets)
            move = 1 if q2 == ACCEPT else rng.choice((-1, 1))
            transitions[(a, q)] = (rng.choice('0123'), q2, move)
    return TmProgram.build(working + [ACCEPT], transitions)


def lookup_machine(mapping: Mapping[Word, Word]) -> TmProgram:
    """
    Table-driven machine realizing a length-preserving map of encodings

    The machine reads the input left to right, remembering the prefix read so
    far in its state. On the blank after a complete domain word it turns
    back and writes the image right to left, accepting when it leaves cell 0.
    Inputs outside the table have no transition. Runs in 2L + 1 steps on
    words of length L.

    Args:
        mapping: Encoded input word -> encoded output word (same lengths)

    Returns:
        TmProgram
    """
    names: Dict[Tuple[str, str], str] = {}

    def state(kind: str, key: str) -> str:
        if kind == 'read' and key == '':
            return INITIAL
        if (kind, key) not in names:
            names[(kind, key)] = bin_encode(len(names) + 1)
        return names[(kind, key)]

    transitions: Dict[Tuple[str, str], Transition] = {}
    for source, image in sorted(mapping.items()):
        if len(source) != len(image):
            raise ValueError(f"length mismatch for {source!r} -> {image!r}")
        if not source or any(c not in '012' for c in source + image):
            raise ValueError("lookup machines act on non-empty encodings over {0,1,2}")
        for j, symbol in enumerate(source):
            transitions[(symbol, state('read', source[:j]))] = (symbol, state('read', source[:j + 1]), 1)
        length = len(source)
        transitions[(BLANK, state('read', source))] = (BLANK, state('write', image), -1)
        for j in range(length - 1, 0, -1):
            transitions[(source[j], state('write', image[:j + 1]))] = (image[j], state('write', image[:j]), -1)
        transitions[(source[0], state('write', image[:1]))] = (image[0], ACCEPT, 1)
    return TmProgram.build([INITIAL] + list(names.values()) + [ACCEPT], transitions)


def machine_for_map(alpha: Callable[[Letter], Letter], lengths: Sequence[int]) -> TmProgram:
    """Lookup machine of a partial permutation over 5^k; undefined points are left out."""
    mapping: Dict[Word, Word] = {}
    for letter in alphabet(lengths):
        try:
            image = alpha(letter)
        except Undefined:
            continue
        mapping[chi_encode(letter)] = chi_encode(image)
    return lookup_machine(mapping)


def swap_machine(lengths: Sequence[int] = (1, 1)) -> TmProgram:
    """Exchange of the first two fields of equal length."""
    if len(lengths) < 2 or lengths[0] != lengths[1]:
        raise ValueError("swap needs two leading fields of equal length")
    return machine_for_map(lambda u: (u[1], u[0]) + tuple(u[2:]), lengths)
