import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import bit_length
from .inequalities import ParameterError, InequalityReport, check_inequalities, level_inequalities

logger = logging.getLogger(__name__)

FAMILIES = ('selfSim', 'hieraA', 'hieraB', 'realiSeq')

# directive digit -> (D, W), same bijection as the permutation language
DIRECTIVES: Tuple[Tuple[int, int], ...] = ((0, 1), (1, 1), (1, 0))

HSIM_LABELS = ('Addr', 'Addr_r', 'Clock', 'Clock_r', 'Tape', 'NTape', 'Head_l', 'Head_r',
               'Tape_l', 'Tape_r', 'Prog', 'RevProg', 'Level')
REALI_LABELS = ('Addr', 'Addr_r', 'Clock', 'Clock_r', 'Tape', 'NTape', 'Head_l', 'Head_r',
                'Tape_l', 'Tape_r', 'Prog', 'RevProg', 'MHist', 'MHist_r', 'MShift', 'MShift_r')


@dataclass(frozen=True)
class SequenceRecipe:
    """
    Parameter family of a hierarchy

    selfSim keeps S fixed with U = ceil(log2(S + S0)^r); hieraA uses
    S_n = Q^(n+n0), U_n = (n+n0)^r; hieraB uses S_n = Q^(n+n0),
    T_n = 2 S_n, U_n = S_n / 2Q; realiSeq is hieraA with the period
    stretched by the directive digit of each level.
    """
    family: str
    Q: int = 2
    n0: int = 10
    r: int = 1
    S: int = 0
    S0: int = 1
    program_size: int = 16
    inverse_size: int = 16
    state_length: int = 4
    time_bound: Optional[Callable[[int], int]] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.Q < 2 or self.n0 < 0 or self.r < 0:
            raise ParameterError("recipes need Q >= 2, n0 >= 0 and r >= 0")
        if self.family == 'selfSim' and self.S < 1:
            raise ParameterError("selfSim needs a positive S")


class ParameterSequences:
    """
    Level-indexed parameters S_n, T_n, U_n and length vectors k_n of a recipe

    Length vectors follow ``labels``, the field list of the rule they size;
    fields without a sized role get length 1.
    """

    def __init__(self, recipe: SequenceRecipe, labels: Optional[Sequence[str]] = None):
        self.recipe = recipe
        if labels is None:
            labels = REALI_LABELS if recipe.family == 'realiSeq' else HSIM_LABELS
        self.labels = tuple(labels)

    def relabel(self, labels: Sequence[str]) -> 'ParameterSequences':
        """Same parameters, length vectors over another field list."""
        return ParameterSequences(self.recipe, labels)

    def S(self, n: int) -> int:
        if self.recipe.family == 'selfSim':
            return self.recipe.S
        return self.recipe.Q ** (n + self.recipe.n0)

    def U(self, n: int) -> int:
        recipe = self.recipe
        if recipe.family == 'selfSim':
            return max(1, math.ceil(math.log2(recipe.S + recipe.S0) ** recipe.r))
        if recipe.family == 'hieraB':
            S = self.S(n)
            if S % (2 * recipe.Q):
                raise ParameterError(f"U_{n} = {S}/{2 * recipe.Q} is not an integer")
            return S // (2 * recipe.Q)
        return (n + recipe.n0) ** recipe.r

    def T(self, n: int, digit: Optional[int] = None) -> int:
        """Work period of level n; realiSeq needs the directive digit (default: the longest)."""
        if self.recipe.family == 'hieraB':
            return 2 * self.S(n)
        if self.recipe.family == 'realiSeq':
            shift, wait = DIRECTIVES[digit] if digit is not None else (1, 1)
            return self.S(n) * (shift + wait + 1) + 4 * self.U(n) + 1
        return self.S(n) + 4 * self.U(n) + 1

    def transport(self, n: int, digit: int) -> int:
        """Clock at which the computation starts: D * S_n for realiSeq, 0 otherwise."""
        if self.recipe.family != 'realiSeq':
            return 0
        return DIRECTIVES[digit][0] * self.S(n)

    def lengths(self, n: int) -> Dict[str, int]:
        recipe = self.recipe
        head = 3 * recipe.state_length + 9
        S, T = self.S(n), self.T(n)
        k = {label: 1 for label in self.labels}
        k.update({
            'Addr': bit_length(S), 'Addr_r': bit_length(S), 'Clock': bit_length(T), 'Clock_r': bit_length(T),
            'Head_l': head, 'Head_r': head, 'Prog': recipe.program_size, 'RevProg': recipe.inverse_size,
        })
        if 'Level' in k:
            k['Level'] = bit_length(n)
        if 'MHist' in k:
            k['MHist'] = n
            k['MHist_r'] = n
        return k

    def k(self, n: int) -> Tuple[int, ...]:
        lengths = self.lengths(n)
        return tuple(lengths[label] for label in self.labels)

    def epsilon(self, n: int) -> Fraction:
        return Fraction(4 * self.U(n) + 1, self.S(n))

    def epsilon_ok(self, n: int) -> bool:
        """epsilon_n < sqrt(2) - 1, tested as (epsilon + 1)^2 < 2."""
        return (self.epsilon(n) + 1) ** 2 < 2

    def ratio_prefix(self, n: int, digits: Optional[Sequence[int]] = None) -> Fraction:
        """Product of S_i / T_i for i < n."""
        product = Fraction(1)
        for i in range(n):
            digit = digits[i] if digits is not None else None
            product *= Fraction(self.S(i), self.T(i, digit))
        return product

    def witness(self, n: int, digit: Optional[int] = None) -> Dict:
        child = self.k(n + 1)
        t = self.recipe.time_bound(sum(child)) if self.recipe.time_bound else 0
        return {
            'n': n, 'S': self.S(n), 'T': self.T(n, digit), 'U': self.U(n),
            't0': self.transport(n, digit) if digit is not None else 0,
            't_p': t, 't_pinv': t, 'q_max': self.recipe.state_length,
            'kprime': child, 'k': self.lengths(n),
            'p_size': self.recipe.program_size, 'pinv_size': self.recipe.inverse_size,
        }

    def certify(self, levels: Optional[int] = None) -> List[InequalityReport]:
        """Check the level constraints (against k_{n+1}) for n < levels."""
        levels = Config.SEQUENCE_LEVELS if levels is None else levels
        extra = ('MHist',) if 'MHist' in self.labels else ('Level',)
        system = level_inequalities(extra)
        reports = []
        for n in range(levels):
            digits = range(len(DIRECTIVES)) if self.recipe.family == 'realiSeq' else [None]
            for digit in digits:
                report = check_inequalities(system, self.witness(n, digit))
                report.name = f"level {n}" + (f" digit {digit}" if digit is not None else '')
                reports.append(report)
        return reports

    def verdict(self, levels: Optional[int] = None) -> Dict:
        """
        Whether the product of S_n / T_n tends to zero

        With x_n = (4U_n + 1) / S_n the product is at least 1 - sum x_n; the
        tail beyond the checked prefix is bounded geometrically from its last
        two terms when they decrease.
        """
        levels = Config.SEQUENCE_LEVELS if levels is None else levels
        prefix = self.ratio_prefix(levels)
        family = self.recipe.family
        if family in ('selfSim', 'hieraB', 'realiSeq'):
            return {'verdict': 'zero', 'prefix': prefix, 'levels': levels}
        terms = [Fraction(4 * self.U(i) + 1, self.S(i)) for i in range(levels)]
        tail = Fraction(0)
        if levels >= 2 and terms[-2] > 0:
            q = terms[-1] / terms[-2]
            tail = terms[-1] * q / (1 - q) if q < 1 else Fraction(10 ** 9)
        bound = 1 - sum(terms) - tail
        return {'verdict': 'nonzero' if bound > 0 else 'undetermined',
                'prefix': prefix, 'lower_bound': bound, 'levels': levels}

    def to_frame(self, levels: int) -> pd.DataFrame:
        rows = []
        for n in range(levels):
            rows.append({'n': n, 'S': self.S(n), 'T': self.T(n), 'U': self.U(n),
                         'epsilon': str(self.epsilon(n)), 'k_total': sum(self.k(n))})
        return pd.DataFrame(rows)


def make_sequences(recipe: SequenceRecipe) -> ParameterSequences:
    """
    Level-indexed parameter oracle of a recipe

    Args:
        recipe: Family and its constants

    Returns:
        ParameterSequences; integer terms are checked lazily
    """
    sequences = ParameterSequences(recipe)
    sequences.U(0)
    logger.debug("sequences for %s: S_0=%d T_0=%d", recipe.family, sequences.S(0), sequences.T(0))
    return sequences


def ratio_product(sequences: ParameterSequences, n: int) -> Fraction:
    return sequences.ratio_prefix(n)
