import logging
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from fixpoint_ppa.modules.params import DIRECTIVES, ParameterSequences
from .slopes import DirectionError, SlopeInterval, UNIT, ne_union, rational

logger = logging.getLogger(__name__)

DirectiveLetter = Tuple[int, int]
DirectiveWord = Tuple[DirectiveLetter, ...]
Epsilons = Union[int, Fraction, str, Sequence]


def directive_word(word: Union[str, Sequence]) -> DirectiveWord:
    """
    Directive word from digits over {0,1,2} or (D, W) pairs

    Digits follow the bijection 0 -> (0,1), 1 -> (1,1), 2 -> (1,0); general
    letters are any pair of naturals other than (0, 0).
    """
    if isinstance(word, str):
        if any(c not in '012' for c in word):
            raise DirectionError(f"directive digits are 0, 1 or 2: {word!r}")
        return tuple(DIRECTIVES[int(c)] for c in word)
    letters = []
    for letter in word:
        if isinstance(letter, int):
            letters.append(DIRECTIVES[letter])
            continue
        D, W = letter
        if D < 0 or W < 0 or (D, W) == (0, 0):
            raise DirectionError(f"invalid directive letter {letter!r}")
        letters.append((D, W))
    return tuple(letters)


def word_digits(word: DirectiveWord) -> str:
    return ''.join(str(DIRECTIVES.index(letter)) for letter in word)


def epsilon_vector(eps: Epsilons, n: int) -> Tuple[Fraction, ...]:
    """n values of epsilon: a single rational is repeated, a sequence must be long enough."""
    if isinstance(eps, (int, Fraction, str)):
        values = (rational(eps),) * n
    else:
        if len(eps) < n:
            raise DirectionError(f"{len(eps)} epsilon values for a word of length {n}")
        values = tuple(rational(e) for e in eps[:n])
    if any(e < 0 for e in values):
        raise DirectionError("epsilon values must be non-negative")
    return values


def contraction(letter: DirectiveLetter, eps: Fraction) -> Fraction:
    D, W = letter
    return 1 / (D + W + 1 + eps)


def theta_interval(word, eps: Epsilons) -> SlopeInterval:
    """
    Interval of directions of a directive word

    Built from the last letter inward, Theta(d) = R_0 (Theta(tail) + D_0),
    so the result is (prod R_i)[-1, 1] plus the sum of D_i prod_{j<=i} R_j.

    Args:
        word: Digits or (D, W) letters
        eps: One rational, or at least len(word) of them

    Returns:
        Closed interval of exact rationals
    """
    letters = directive_word(word)
    epsilons = epsilon_vector(eps, len(letters))
    interval = UNIT
    for letter, e in zip(reversed(letters), reversed(epsilons)):
        interval = interval.shift(letter[0]).scale(contraction(letter, e))
    return interval


def theta_limit(word, eps: Epsilons, n: int) -> Tuple[Fraction, Fraction]:
    """
    Approximation of the direction of a directive sequence from its first n letters

    Returns the midpoint of Theta at depth n and the error bound, half the
    diameter, which never exceeds 2^-n.
    """
    letters = directive_word(word)
    if n > len(letters):
        raise DirectionError(f"depth {n} exceeds the prefix length {len(letters)}")
    interval = theta_interval(letters[:n], epsilon_vector(eps, n))
    return interval.midpoint, interval.diameter / 2


def reali_levels(sequences: ParameterSequences, word) -> List[Tuple[int, int, int]]:
    """(S_n, T_n, D_n) of the realization levels driven by a directive word."""
    levels = []
    for n, letter in enumerate(directive_word(word)):
        digit = DIRECTIVES.index(letter)
        levels.append((sequences.S(n), sequences.T(n, digit), letter[0]))
    return levels


def reali_epsilons(sequences: ParameterSequences, n: int) -> Tuple[Fraction, ...]:
    return tuple(sequences.epsilon(i) for i in range(n))


def realized_directions(sequences: ParameterSequences, words: Sequence) -> Tuple[SlopeInterval, ...]:
    """Union of the Theta intervals of a set of directive words under the sequences' epsilons."""
    parts = []
    for word in words:
        letters = directive_word(word)
        parts.append(theta_interval(letters, reali_epsilons(sequences, len(letters))))
    return ne_union(parts)
