import itertools
import logging
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from fixpoint_ppa.config import Config
from .words import (
    Letter, Word, EncodingError, Undefined, ALL_SYMBOLS, sharp_pad, sharp_strip,
)

logger = logging.getLogger(__name__)

DOUBLE_CODE: Dict[str, str] = {
    '0': '000',
    '1': '001',
    '2': '010',
    '3': '011',
    '4': '100',
}
DOUBLE_DECODE: Dict[str, str] = {code: symbol for symbol, code in DOUBLE_CODE.items()}


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured budget."""


def double(u: Word) -> Word:
    try:
        return ''.join(DOUBLE_CODE[c] for c in u)
    except KeyError as e:
        raise EncodingError(f"symbol {e} outside the 5-letter alphabet")


def chi_encode(letter: Sequence[str]) -> Word:
    """
    Chi encoding of a tuple of words: each field becomes 2 followed by its double code

    Args:
        letter: Tuple of words over {0..4}

    Returns:
        Word over {0,1,2}
    """
    return ''.join(Config.SEPARATOR + double(field) for field in letter)


def chi_encode_word(w: Word) -> Word:
    return chi_encode((w,))


def chi_decode(w: Word, lengths: Optional[Sequence[int]] = None) -> Letter:
    """
    Exact left inverse of chi_encode

    Args:
        w: Candidate encoding
        lengths: Optional field lengths the decoded letter must have

    Returns:
        Decoded letter
    """
    fields: List[str] = []
    pos = 0
    while pos < len(w):
        if w[pos] != Config.SEPARATOR:
            raise EncodingError(f"missing separator at position {pos}")
        pos += 1
        symbols = []
        while pos < len(w) and w[pos] != Config.SEPARATOR:
            triplet = w[pos:pos + 3]
            if triplet not in DOUBLE_DECODE:
                raise EncodingError(f"malformed triplet {triplet!r} at position {pos}")
            symbols.append(DOUBLE_DECODE[triplet])
            pos += 3
        fields.append(''.join(symbols))
    letter = tuple(fields)
    if lengths is not None and tuple(len(f) for f in letter) != tuple(lengths):
        raise EncodingError(f"layout mismatch: expected lengths {tuple(lengths)}")
    return letter


def field_offset(lengths: Sequence[int], i: int) -> int:
    """Position of the separator of field i in an encoding: 3 * sum(k_j, j < i) + i."""
    if not 0 <= i <= len(lengths):
        raise EncodingError(f"field index {i} outside 0..{len(lengths)}")
    return 3 * sum(lengths[:i]) + i


def chi_length(lengths: Sequence[int]) -> int:
    return field_offset(lengths, len(lengths))


def alphabet_size(lengths: Sequence[int]) -> int:
    return 5 ** sum(lengths)


def alphabet(lengths: Sequence[int], limit: Optional[int] = None) -> Iterator[Letter]:
    """Enumerate the constant-length alphabet 5^k in lexicographic order."""
    limit = Config.MAX_ALPHABET if limit is None else limit
    size = alphabet_size(lengths)
    if size > limit:
        raise BudgetExceeded(f"alphabet of {size} letters exceeds budget {limit}")
    symbols = sorted(ALL_SYMBOLS)
    per_field = [[''.join(p) for p in itertools.product(symbols, repeat=k)] for k in lengths]
    for letter in itertools.product(*per_field):
        yield tuple(letter)


def lift_length_preserving(alpha: Callable[[Letter], Letter]) -> Callable[[Letter], Letter]:
    """
    Sharpization of a partial permutation

    Each field is stripped of its padding, alpha is applied, and the image is
    padded back to the original field lengths.

    Args:
        alpha: Partial permutation of letters (raises Undefined)

    Returns:
        Partial permutation of padded letters
    """
    def lifted(letter: Letter) -> Letter:
        stripped = tuple(sharp_strip(field) for field in letter)
        image = alpha(stripped)
        if len(image) != len(letter):
            raise Undefined('lift', 'field count changed')
        return tuple(sharp_pad(len(field), value) for field, value in zip(letter, image))

    return lifted
