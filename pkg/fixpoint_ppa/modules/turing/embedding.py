import logging
from typing import Optional, Tuple

from fixpoint_ppa.modules.encoding import (
    Word, EncodingError, Undefined, chi_encode, chi_decode, sharp_pad, sharp_strip,
)
from .machine import TmProgram, ACCEPT

logger = logging.getLogger(__name__)

# (tape, head field moving left, head field moving right), raw padded values
Triple = Tuple[str, str, str]


def archive(symbol: str, state: str, delta: int) -> Word:
    """History record left behind by a head: Chi of (read symbol, state, arrival field)."""
    return chi_encode((symbol, state, '1' if delta > 0 else '0'))


def read_archive(value: Word) -> Optional[Tuple[str, str, int]]:
    try:
        symbol, state, bit = chi_decode(value)
    except (EncodingError, ValueError):
        return None
    if len(symbol) != 1 or bit not in ('0', '1'):
        return None
    return symbol, state, 1 if bit == '1' else -1


def is_live(value: Word, program: TmProgram) -> bool:
    """The stripped field holds a non-accepting state of the program."""
    try:
        state = sharp_strip(value)
    except Undefined:
        return False
    return state != ACCEPT and state in program.states


def _tape_symbol(tape: str) -> str:
    symbol = sharp_strip(tape)
    if len(symbol) != 1 or symbol not in '0123':
        raise Undefined('gamma', f"tape field {tape!r} holds no tape symbol")
    return symbol


def _accepting_archive(program: TmProgram, tape: str, value: str) -> Optional[Tuple[str, str, int]]:
    """Decoded archive if ``value`` records an accepting transition that wrote the current tape symbol."""
    try:
        record = read_archive(sharp_strip(value))
        written = sharp_strip(tape)
    except Undefined:
        return None
    if record is None:
        return None
    symbol, state, _ = record
    transition = program.delta(symbol, state)
    if transition is None or transition[1] != ACCEPT or transition[0] != written:
        return None
    return record


def gamma_forward(program: TmProgram, triple: Triple) -> Triple:
    """
    One cell of the reversible Turing machine embedding

    A head is a non-accepting state stored in one of the two head fields; the
    other head field must then be empty. The transition writes the new tape
    symbol, sends the new state towards the move direction and leaves the
    archive of (symbol, state, arrival field) in the opposite field. An
    accepting transition writes the archive into both fields. Without a head
    the cell is unchanged, except that a pair of identical accepting archives
    is refused so that the map stays injective.

    Args:
        program: Machine
        triple: (Tape, Head_l, Head_r) raw field values

    Returns:
        Image triple; raises Undefined outside the domain
    """
    tape, left, right = triple
    live_left = is_live(left, program)
    live_right = is_live(right, program)
    if live_left and live_right:
        raise Undefined('gamma', 'two heads in one cell')
    if not live_left and not live_right:
        if sharp_strip(left) == sharp_strip(right) and _accepting_archive(program, tape, left):
            raise Undefined('gamma', 'accepting archive pair has no preimage')
        return triple
    delta = -1 if live_left else 1
    head, other = (left, right) if live_left else (right, left)
    if sharp_strip(other) != '':
        raise Undefined('gamma', 'head next to a non-empty head field')
    symbol = _tape_symbol(tape)
    state = sharp_strip(head)
    transition = program.delta(symbol, state)
    if transition is None:
        raise Undefined('gamma', f"no transition on ({symbol}, {state})")
    written, new_state, move = transition
    record = archive(symbol, state, delta)
    new_tape = sharp_pad(len(tape), written)
    if new_state == ACCEPT:
        return new_tape, sharp_pad(len(left), record), sharp_pad(len(right), record)
    if move < 0:
        return new_tape, sharp_pad(len(left), new_state), sharp_pad(len(right), record)
    return new_tape, sharp_pad(len(left), record), sharp_pad(len(right), new_state)


def gamma_backward(program: TmProgram, triple: Triple) -> Triple:
    """Exact inverse of gamma_forward on the same field order."""
    tape, left, right = triple
    live_left = is_live(left, program)
    live_right = is_live(right, program)
    if live_left and live_right:
        raise Undefined('gamma_inverse', 'two heads in one cell')
    if not live_left and not live_right:
        if sharp_strip(left) != sharp_strip(right):
            return triple
        record = _accepting_archive(program, tape, left)
        if record is None:
            return triple
        symbol, state, delta = record
    else:
        move = -1 if live_left else 1
        head, other = (left, right) if live_left else (right, left)
        record = read_archive(sharp_strip(other))
        if record is None:
            raise Undefined('gamma_inverse', 'head without archive')
        symbol, state, delta = record
        transition = program.delta(symbol, state)
        if transition != (_tape_symbol(tape), sharp_strip(head), move):
            raise Undefined('gamma_inverse', 'archive does not match the head')
    restored_left = state if delta < 0 else ''
    restored_right = state if delta > 0 else ''
    return (sharp_pad(len(tape), symbol), sharp_pad(len(left), restored_left),
            sharp_pad(len(right), restored_right))


def head_field_length(program: TmProgram) -> int:
    """Shortest head field holding every state and every archive."""
    return 3 * program.state_lengths() + 9
