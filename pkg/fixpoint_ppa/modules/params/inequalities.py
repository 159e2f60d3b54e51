import hashlib
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Sequence, Tuple, Union

import pandas as pd

from fixpoint_ppa.modules.encoding import bit_length, chi_length

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class ParameterError(ValueError):
    """Parameters that cannot be instantiated (non-integer terms, bad recipe)."""


class DependencyError(ParameterError):
    """A constraint needs a measurement the witness does not provide."""


class InequalityError(ValueError):
    """A build was refused because its inequalities do not hold."""

    def __init__(self, report: 'InequalityReport'):
        names = ', '.join(row['constraint'] for row in report.failures())
        super().__init__(f"{report.name}: failing constraints {names}")
        self.report = report


@dataclass(frozen=True)
class Constraint:
    """left >= right (or left == right when kind is '=')."""
    name: str
    left: Callable[[Mapping], Number]
    right: Callable[[Mapping], Number]
    kind: str = '>='


@dataclass
class InequalitySet:
    name: str
    constraints: List[Constraint] = field(default_factory=list)

    def add(self, name: str, left: Callable[[Mapping], Number], right: Callable[[Mapping], Number],
            kind: str = '>=') -> 'InequalitySet':
        self.constraints.append(Constraint(name, left, right, kind))
        return self


def _json_number(x: Number):
    return str(x) if isinstance(x, Fraction) else x


@dataclass
class InequalityReport:
    name: str
    rows: List[Dict]

    @property
    def passed(self) -> bool:
        return all(row['passed'] for row in self.rows)

    def failures(self) -> List[Dict]:
        return [row for row in self.rows if not row['passed']]

    def slack(self, name: str) -> Number:
        for row in self.rows:
            if row['constraint'] == name:
                return row['slack']
        raise KeyError(name)

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'rows': [{k: _json_number(v) for k, v in row.items()} for row in self.rows],
            'digest': self.digest(),
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{k: _json_number(v) for k, v in row.items()} for row in self.rows])

    def digest(self) -> str:
        payload = json.dumps([{k: _json_number(v) for k, v in row.items()} for row in self.rows],
                             sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()


def check_inequalities(constraints: InequalitySet, witness: Mapping) -> InequalityReport:
    """
    Evaluate every constraint of a set on concrete numbers

    Args:
        constraints: Inequality set
        witness: Concrete values; a missing t0 counts as 0

    Returns:
        InequalityReport with per-constraint values, slack and verdict
    """
    values = dict(witness)
    values.setdefault('t0', 0)
    rows = []
    for c in constraints.constraints:
        try:
            left, right = c.left(values), c.right(values)
        except KeyError as e:
            raise DependencyError(f"{constraints.name}/{c.name}: missing measurement {e.args[0]!r}")
        slack = left - right
        passed = slack == 0 if c.kind == '=' else slack >= 0
        rows.append({'constraint': c.name, 'kind': c.kind, 'left': left, 'right': right,
                     'slack': slack, 'passed': passed})
    report = InequalityReport(constraints.name, rows)
    if not report.passed:
        logger.info("%s: %d failing constraints", constraints.name, len(report.failures()))
    return report


def _k(label: str) -> Callable[[Mapping], int]:
    return lambda w: w['k'][label]


# field groups and the bound each needs
ADDRESS_FIELDS = ('Addr', 'Addr_r')
CLOCK_FIELDS = ('Clock', 'Clock_r')
HEAD_FIELDS = ('Head_l', 'Head_r')
SYMBOL_FIELDS = ('Tape', 'NTape', 'Tape_l', 'Tape_r')


def unive_inequalities(labels: Sequence[str] = ADDRESS_FIELDS + CLOCK_FIELDS + SYMBOL_FIELDS + HEAD_FIELDS,
                       name: str = 'unive') -> InequalitySet:
    """
    The constraints under which unive simulates sigma^-nu o alpha

    Witness keys: S, T, U, t0, t_p, t_pinv, q_max (longest state name),
    kprime (simulated length vector) and k (field label -> length).
    """
    system = InequalitySet(name)
    system.add('U >= t_p', lambda w: w['U'], lambda w: w['t_p'])
    system.add('U >= t_pinv', lambda w: w['U'], lambda w: w['t_pinv'])
    system.add('U >= 1', lambda w: w['U'], lambda w: 1)
    system.add('S >= 2U', lambda w: w['S'], lambda w: 2 * w['U'])
    system.add("S >= |Chi(5^k')|", lambda w: w['S'], lambda w: chi_length(w['kprime']))
    system.add('T >= 4U + S + t0 + 1', lambda w: w['T'], lambda w: 4 * w['U'] + w['S'] + w['t0'] + 1)
    for label in labels:
        if label in ADDRESS_FIELDS:
            system.add(f'k_{label} >= ||S||', _k(label), lambda w: bit_length(w['S']))
        elif label in CLOCK_FIELDS:
            system.add(f'k_{label} >= ||T||', _k(label), lambda w: bit_length(w['T']))
        elif label in HEAD_FIELDS:
            system.add(f'k_{label} >= 3|q| + 9', _k(label), lambda w: 3 * w['q_max'] + 9)
        elif label in SYMBOL_FIELDS:
            system.add(f'k_{label} >= 1', _k(label), lambda w: 1)
    return system


def self_inequalities() -> InequalitySet:
    """unive constraints plus the fields holding the program and the parameters."""
    system = unive_inequalities(name='self')
    system.add('k_Prog = |p|', _k('Prog'), lambda w: w['p_size'], kind='=')
    system.add('k_RevProg = |p^-1|', _k('RevProg'), lambda w: w['pinv_size'], kind='=')
    system.add('k_MAddr >= ||S||', _k('MAddr'), lambda w: bit_length(w['S']))
    system.add('k_MClock >= ||T||', _k('MClock'), lambda w: bit_length(w['T']))
    system.add('k_Alarm >= ||U||', _k('Alarm'), lambda w: bit_length(w['U']))
    return system


def level_inequalities(extra: Tuple[str, ...] = ()) -> InequalitySet:
    """Level n of a hierarchy: unive constraints against the length vector of level n + 1."""
    system = unive_inequalities(name='level')
    system.add('k_Prog = |p|', _k('Prog'), lambda w: w['p_size'], kind='=')
    system.add('k_RevProg = |p^-1|', _k('RevProg'), lambda w: w['pinv_size'], kind='=')
    if 'Level' in extra:
        system.add('k_Level >= ||n||', _k('Level'), lambda w: bit_length(w['n']))
    if 'MHist' in extra:
        system.add('k_MHist = n', _k('MHist'), lambda w: w['n'], kind='=')
    return system
