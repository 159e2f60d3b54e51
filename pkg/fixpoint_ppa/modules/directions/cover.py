"""
Covering an interval of directions with directive words over {(0,1), (1,1), (1,0)}

For epsilon_i in [0, sqrt(2) - 1] the Theta intervals of all words of
depth n cover exactly [-prod 1/(2+eps_i), hi_n] where hi_n writes the
digits 1...12 in the mixed base 1/(2+eps_i).
"""
import logging
import time
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import pandas as pd

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.params import DIRECTIVES
from .slopes import DirectionError, SlopeInterval, UNIT, fraction_text, ne_union, rational
from .theta import Epsilons, contraction, epsilon_vector, word_digits

logger = logging.getLogger(__name__)


def below_sqrt2_minus_1(eps: Fraction) -> bool:
    """eps <= sqrt(2) - 1, tested as (eps + 1)^2 <= 2."""
    return eps >= 0 and (eps + 1) ** 2 <= 2


def cover_bounds(eps: Tuple[Fraction, ...]) -> SlopeInterval:
    lo = Fraction(-1)
    for e in eps:
        lo /= 2 + e
    hi = Fraction(0)
    product = Fraction(1)
    for e in eps:
        product /= 2 + e
        hi += product
    return SlopeInterval(lo, hi + product)


def cover_limit(eps: Epsilons) -> Fraction:
    """Supremum of the infinite cover, the digits 111... in base R = 1/(2+eps), for a constant eps."""
    R = 1 / (2 + rational(eps))
    return R / (1 - R)


def word_intervals(eps: Tuple[Fraction, ...]) -> List[Tuple[str, SlopeInterval]]:
    """Theta of every word of length len(eps), built level by level from the last one."""
    layer: List[Tuple[str, SlopeInterval]] = [('', UNIT)]
    for e in reversed(eps):
        layer = [
            (str(digit) + tail, interval.shift(letter[0]).scale(contraction(letter, e)))
            for digit, letter in enumerate(DIRECTIVES)
            for tail, interval in layer
        ]
    return layer


def cover_check(n: int, eps: Epsilons) -> Dict:
    """
    Union of Theta over all 3^n words against the predicted closed interval

    Args:
        n: Depth
        eps: One rational, or n of them

    Returns:
        Result dict with status 'pass', 'fail' (with the words around a hole
        or the mismatching endpoint) or 'budget'
    """
    epsilons = epsilon_vector(eps, n)
    started = time.monotonic()
    predicted = cover_bounds(epsilons)
    intervals = word_intervals(epsilons)
    if time.monotonic() - started > Config.budget_seconds():
        return {'status': 'budget', 'depth': n, 'words': len(intervals)}
    ordered = sorted(intervals, key=lambda item: (item[1].lo, item[1].hi))
    result = {
        'depth': n,
        'epsilons': [fraction_text(e) for e in epsilons],
        'in_range': all(below_sqrt2_minus_1(e) for e in epsilons),
        'words': len(intervals),
        'predicted': predicted.to_dict(),
    }
    reach_word, reach = ordered[0]
    for word, interval in ordered[1:]:
        if interval.lo > reach.hi:
            result.update(status='fail', reason='hole',
                          hole=[fraction_text(reach.hi), fraction_text(interval.lo)],
                          counterexample=[reach_word, word])
            return result
        if interval.hi > reach.hi:
            reach_word, reach = word, interval
    union = ne_union([interval for _, interval in intervals])
    result['union'] = [i.to_dict() for i in union]
    if len(union) != 1 or union[0] != predicted:
        lowest = ordered[0][0]
        result.update(status='fail', reason='endpoint mismatch', counterexample=[lowest, reach_word])
        return result
    result['status'] = 'pass'
    logger.debug("cover at depth %d: %s", n, union[0])
    return result


def cover_table(n: int, eps: Epsilons) -> pd.DataFrame:
    """The 3^n Theta intervals as exact strings plus float columns for plotting."""
    rows = []
    for word, interval in word_intervals(epsilon_vector(eps, n)):
        rows.append({
            'word': word,
            'lo': fraction_text(interval.lo),
            'hi': fraction_text(interval.hi),
            'lo_float': float(interval.lo),
            'hi_float': float(interval.hi),
        })
    return pd.DataFrame(rows).sort_values(['lo_float', 'hi_float'], kind='stable').reset_index(drop=True)


def directive_search(x, eps: Epsilons, depth: int) -> str:
    """
    Directive word of the given depth whose Theta contains x

    Letters are chosen level by level: after letter (D, W) the remaining
    word must contain x / R - D, which is possible only inside the cover of
    the remaining depth. Backtracks when a choice leads nowhere.

    Returns:
        The word as digits over {0,1,2}
    """
    x = rational(x)
    epsilons = epsilon_vector(eps, depth)
    bounds = [cover_bounds(epsilons[i:]) for i in range(depth + 1)]
    if not bounds[0].contains(x):
        raise DirectionError(f"{x} lies outside the covered interval {bounds[0]}")

    def search(level: int, target: Fraction) -> Optional[Tuple[Tuple[int, int], ...]]:
        if level == depth:
            return () if UNIT.contains(target) else None
        for letter in DIRECTIVES:
            rest = target / contraction(letter, epsilons[level]) - letter[0]
            if not bounds[level + 1].contains(rest):
                continue
            tail = search(level + 1, rest)
            if tail is not None:
                return (letter,) + tail
        return None

    word = search(0, x)
    if word is None:
        raise DirectionError(f"no directive word of depth {depth} reaches {x}")
    return word_digits(word)
