import logging
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from fixpoint_ppa.config import Config

logger = logging.getLogger(__name__)

Word = str
Letter = Tuple[str, ...]

BINARY = frozenset('01')
TAPE_SYMBOLS = frozenset('0123')
ALL_SYMBOLS = frozenset(Config.SYMBOLS)


class EncodingError(ValueError):
    """Raised when a word or numeral is outside the domain of an encoding."""


class Undefined(Exception):
    """A partial map is undefined at the given point.

    Every partial permutation of the package signals rejection by raising
    this exception; ``reason`` names the primitive that refused the input.
    """

    def __init__(self, reason: str = 'undefined', detail: str = ''):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


def is_word(u: str) -> bool:
    return all(c in ALL_SYMBOLS for c in u)


def is_binary(u: str) -> bool:
    return all(c in BINARY for c in u)


def bin_encode(n: int) -> Word:
    """
    Shortest binary representation of n

    Args:
        n: Non-negative integer

    Returns:
        Binary word, the empty word for 0
    """
    if n < 0:
        raise EncodingError(f"negative numeral {n}")
    return '' if n == 0 else format(n, 'b')


def bin_decode(u: Word) -> int:
    """
    Number represented by a binary word; leading zeros are ignored

    Args:
        u: Word over {0,1}

    Returns:
        Non-negative integer
    """
    if not is_binary(u):
        raise EncodingError(f"non-binary word {u!r}")
    stripped = u.lstrip('0')
    return int(stripped, 2) if stripped else 0


def is_canonical_binary(u: Word) -> bool:
    return is_binary(u) and not u.startswith('0')


def bit_length(n: int) -> int:
    """Length of bin_encode(n), written ||n|| in the layout inequalities."""
    return len(bin_encode(n))


def mixed_radix_value(digits: Sequence[int], bases: Sequence[Union[int, Fraction]]) -> Fraction:
    """
    Value of an adic representation: sum of t_i times the product of T_j, j < i

    Args:
        digits: Digit sequence t
        bases: Base sequence T, at least as long as t

    Returns:
        Exact rational value (0 for the empty digit sequence)
    """
    if len(digits) > len(bases):
        raise EncodingError(f"{len(digits)} digits for {len(bases)} bases")
    value = Fraction(0)
    weight = Fraction(1)
    for t, base in zip(digits, bases):
        base = Fraction(base)
        if base <= 0:
            raise EncodingError(f"non-positive base {base}")
        if base.denominator == 1 and not 0 <= t < base:
            raise EncodingError(f"digit {t} out of range for base {base}")
        value += t * weight
        weight *= base
    return value


def sharp_pad(length: int, u: Word) -> Word:
    """Prepend 4s to u up to the given length."""
    if len(u) > length:
        raise Undefined('sharp_pad', f"|{u}| > {length}")
    return Config.PAD_SYMBOL * (length - len(u)) + u


def sharp_strip(w: Word) -> Word:
    """Remove the maximal prefix of 4s; a 4 after another symbol is rejected."""
    stripped = w.lstrip(Config.PAD_SYMBOL)
    if Config.PAD_SYMBOL in stripped:
        raise Undefined('sharp_strip', f"misplaced pad in {w!r}")
    return stripped


def is_empty_field(w: Word) -> bool:
    """A field is empty when it only holds padding."""
    return w.strip(Config.PAD_SYMBOL) == ''


def empty_class_member(letter: Letter, indices: Iterable[int], value: Word = '') -> bool:
    """Membership in the class of letters whose listed fields all strip to ``value``."""
    try:
        return all(sharp_strip(letter[i]) == value for i in indices)
    except (Undefined, IndexError):
        return False


def periodic_field_value(position: int, offset: int, modulus: int) -> int:
    """Value of a periodic counter field (position + offset mod modulus)."""
    return (position + offset) % modulus


def format_letter(letter: Letter) -> str:
    return '|'.join(letter)


def parse_letter(text: str) -> Letter:
    letter = tuple(text.split('|')) if text else ('',)
    for field in letter:
        if not is_word(field):
            raise EncodingError(f"invalid symbol in field {field!r}")
    return letter
