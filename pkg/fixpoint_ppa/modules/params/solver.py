import json
import logging
import os
from typing import Dict, Optional, Sequence, Tuple

from fixpoint_ppa.modules.encoding import BudgetExceeded, bit_length, chi_length
from fixpoint_ppa.modules.turing import TmProgram, time_complexity_over
from .inequalities import (
    DependencyError, InequalityReport, check_inequalities, unive_inequalities,
)

logger = logging.getLogger(__name__)

UNIVE_LABELS = ('Addr', 'Addr_r', 'Clock', 'Clock_r', 'Tape', 'NTape', 'Head_l', 'Head_r', 'Tape_l', 'Tape_r')


def measure_times(p: TmProgram, p_inv: TmProgram, kprime: Sequence[int],
                  fallback: Optional[Tuple[int, int]] = None) -> Tuple[int, int]:
    """
    Worst-case running times of p and p^-1 over 5^k'

    Args:
        p: Forward machine
        p_inv: Backward machine
        kprime: Simulated length vector
        fallback: Bounds used when the alphabet is too large to enumerate

    Returns:
        (t_p, t_pinv)
    """
    try:
        t_p, _ = time_complexity_over(p, kprime)
        t_pinv, _ = time_complexity_over(p_inv, kprime)
    except BudgetExceeded as e:
        if fallback is None:
            raise DependencyError(f"cannot measure running times over 5^{tuple(kprime)}: {e}")
        logger.warning("using supplied time bounds %s: %s", fallback, e)
        return fallback
    return t_p, t_pinv


def unive_lengths(S: int, T: int, q_max: int, labels: Sequence[str] = UNIVE_LABELS) -> Dict[str, int]:
    """Tightest field lengths: every length constraint met with equality."""
    bounds = {
        'Addr': bit_length(S), 'Addr_r': bit_length(S),
        'Clock': bit_length(T), 'Clock_r': bit_length(T),
        'Head_l': 3 * q_max + 9, 'Head_r': 3 * q_max + 9,
    }
    return {label: bounds.get(label, 1) for label in labels}


def unive_witness(kprime: Sequence[int], S: int, T: int, U: int, t_p: int, t_pinv: int,
                  q_max: int, t0: int = 0, labels: Sequence[str] = UNIVE_LABELS) -> Dict:
    return {
        'S': S, 'T': T, 'U': U, 't0': t0,
        't_p': t_p, 't_pinv': t_pinv, 'q_max': q_max,
        'kprime': tuple(kprime),
        'k': unive_lengths(S, T, q_max, labels),
    }


def solve_toy_unive(kprime: Sequence[int], p: TmProgram, p_inv: TmProgram, t0: int = 0,
                    times: Optional[Tuple[int, int]] = None,
                    labels: Sequence[str] = UNIVE_LABELS) -> Tuple[Dict, InequalityReport]:
    """
    Smallest parameters for which unive runs the pair (p, p^-1)

    U is the larger measured time (at least 1), S = max(2U, |Chi(5^k')|),
    T = 4U + S + t0 + 1 and every field length meets its bound exactly. The
    witness is re-checked before it is returned.

    Args:
        kprime: Simulated length vector
        p: Forward machine
        p_inv: Backward machine
        t0: Clock offset of the computation
        times: Known (t_p, t_pinv); measured when omitted
        labels: Fields of the simulating layout

    Returns:
        (witness, report)
    """
    t_p, t_pinv = measure_times(p, p_inv, kprime) if times is None else times
    U = max(1, t_p, t_pinv)
    S = max(2 * U, chi_length(kprime))
    T = 4 * U + S + t0 + 1
    q_max = max(p.state_lengths(), p_inv.state_lengths())
    witness = unive_witness(kprime, S, T, U, t_p, t_pinv, q_max, t0, labels)
    report = check_inequalities(unive_inequalities(labels), witness)
    logger.info("toy unive over 5^%s: S=%d T=%d U=%d (%s)", tuple(kprime), S, T, U,
                'verified' if report.passed else 'failing')
    return witness, report


def witness_record(witness: Dict, report: InequalityReport, **extra) -> Dict:
    record = {key: (list(value) if isinstance(value, tuple) else value) for key, value in witness.items()}
    record['inequalities'] = report.to_dict()
    record.update(extra)
    return record


def write_witness(path: str, record: Dict) -> str:
    """Write a witness JSON file atomically."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    tmp = f"{path}.tmp"
    with open(tmp, 'w') as f:
        json.dump(record, f, indent=2, sort_keys=True, default=str)
    os.replace(tmp, path)
    return path
