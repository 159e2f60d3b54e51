import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.linear_model import LinearRegression
from sklearn.preprocessing import PolynomialFeatures

from fixpoint_ppa.modules.encoding import bit_length, chi_length
from fixpoint_ppa.modules.turing import machine_for_map, time_complexity_over
from .inequalities import check_inequalities, self_inequalities

logger = logging.getLogger(__name__)

SELF_FIELD_COUNT = 15


@dataclass
class PolynomialFit:
    """Upper bound polynomial: fitted values plus the largest positive residual."""
    coefficients: List[float]
    margin: float = 0.0
    domain: Tuple[int, int] = (0, 0)
    samples: List[Tuple[int, int]] = field(default_factory=list)

    @classmethod
    def of(cls, coefficients: Sequence[float]) -> 'PolynomialFit':
        """Exact polynomial sum(c_i n^i) with no sample support."""
        return cls([float(c) for c in coefficients])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, n: int) -> int:
        total = sum(c * float(n) ** i for i, c in enumerate(self.coefficients))
        return max(0, math.ceil(total + self.margin))

    def covers(self, n: int) -> bool:
        return bool(self.samples) and self.domain[0] <= n <= self.domain[1]

    def to_dict(self) -> Dict:
        return {'coefficients': self.coefficients, 'margin': self.margin,
                'domain': list(self.domain), 'samples': [list(s) for s in self.samples]}


def fit_polynomial(samples: Sequence[Tuple[int, int]], degree: int = 2) -> PolynomialFit:
    """
    Least squares polynomial through (n, t) samples, raised to bound them all

    Args:
        samples: Measured (size, time) pairs
        degree: Polynomial degree

    Returns:
        PolynomialFit whose value is at least every sampled time
    """
    xs = np.array([[n] for n, _ in samples], dtype=float)
    ys = np.array([t for _, t in samples], dtype=float)
    features = PolynomialFeatures(degree=degree, include_bias=False)
    model = LinearRegression().fit(features.fit_transform(xs), ys)
    coefficients = [float(model.intercept_)] + [float(c) for c in model.coef_]
    fitted = model.predict(features.transform(xs))
    margin = float(max(0.0, np.max(ys - fitted))) if len(ys) else 0.0
    ns = [n for n, _ in samples]
    return PolynomialFit(coefficients, margin, (min(ns), max(ns)), [tuple(s) for s in samples])


def measure_lookup_fits(max_length: int = 3, degree: int = 1) -> Tuple[PolynomialFit, List[Tuple[int, int]]]:
    """Running time of compiled one-field identity programs against the letter length."""
    samples = []
    for m in range(max_length + 1):
        program = machine_for_map(lambda u: u, (m,))
        worst, _ = time_complexity_over(program, (m,))
        samples.append((m, worst))
    return fit_polynomial(samples, degree), samples


@dataclass
class ProgramModel:
    """Sizes of the self-simulating program and bounds on its running time."""
    size: int
    inverse_size: int
    state_length: int
    time_fit: PolynomialFit
    inverse_fit: PolynomialFit

    def to_dict(self) -> Dict:
        return {'size': self.size, 'inverse_size': self.inverse_size,
                'state_length': self.state_length,
                'time_fit': self.time_fit.to_dict(), 'inverse_fit': self.inverse_fit.to_dict()}


def self_lengths(model: ProgramModel, S: int, T: int, U: int) -> Dict[str, int]:
    head = 3 * model.state_length + 9
    return {
        'Addr': bit_length(S), 'Addr_r': bit_length(S), 'Clock': bit_length(T), 'Clock_r': bit_length(T),
        'Tape': 1, 'NTape': 1, 'Head_l': head, 'Head_r': head, 'Tape_l': 1, 'Tape_r': 1,
        'MAddr': bit_length(S), 'MClock': bit_length(T), 'Alarm': bit_length(U),
        'Prog': model.size, 'RevProg': model.inverse_size,
    }


def _alarm(S: int, S0: int, r: int) -> int:
    return max(1, math.ceil(math.log2(S + S0) ** r))


def _candidate(model: ProgramModel, S: int, S0: int, r: int, target: Fraction) -> Tuple[Dict, List[str]]:
    U = _alarm(S, S0, r)
    T = S + 4 * U + 1
    k = self_lengths(model, S, T, U)
    n = sum(k.values())
    violations = []
    if U < model.time_fit(n):
        violations.append('U >= P1(n)')
    if U < model.inverse_fit(n):
        violations.append('U >= P2(n)')
    if S < 2 * U:
        violations.append('S >= 2U')
    if S < 3 * n + SELF_FIELD_COUNT:
        violations.append("S >= |Chi(5^k)|")
    if Fraction(S, T) < target:
        violations.append('S/T >= target')
    return {'S': S, 'T': T, 'U': U, 'k': k, 'n': n}, violations


def solve_self_sim(model: ProgramModel, target_ratio: Fraction = Fraction(9, 10), r_max: int = 6,
                   offsets: Sequence[int] = (1, 2, 4, 8, 16), max_bits: int = 2048,
                   execution_budget: int = 10 ** 6) -> Dict:
    """
    Parameters of a self-simulating rule with U = ceil(log2(S + S0)^r) and T = S + 4U + 1

    For each r and S0 in increasing order the smallest S meeting every
    constraint is searched by doubling then bisection.

    Args:
        model: Program sizes and time bounds P1, P2 as functions of the letter length
        target_ratio: Required lower bound on S/T
        r_max: Largest exponent tried
        offsets: Values of S0 tried
        max_bits: Largest S tried is 2^max_bits
        execution_budget: Largest S * T considered executable

    Returns:
        Result dict with status 'ok' and the witness, or 'infeasible' with a certificate
    """
    target = Fraction(target_ratio)
    last_violations: Dict[str, List[str]] = {}
    for r in range(1, r_max + 1):
        for S0 in offsets:
            hi = 1
            while hi.bit_length() <= max_bits:
                _, violations = _candidate(model, hi, S0, r, target)
                if not violations:
                    break
                last_violations[f"r={r},S0={S0}"] = violations
                hi *= 2
            else:
                continue
            lo = hi // 2
            while hi - lo > 1:
                mid = (lo + hi) // 2
                _, violations = _candidate(model, mid, S0, r, target)
                if violations:
                    lo = mid
                else:
                    hi = mid
            values, _ = _candidate(model, hi, S0, r, target)
            n = values['n']
            witness = {
                'S': values['S'], 'T': values['T'], 'U': values['U'], 't0': 0,
                't_p': model.time_fit(n), 't_pinv': model.inverse_fit(n),
                'q_max': model.state_length, 'k': values['k'],
                'kprime': tuple(values['k'].values()),
                'p_size': model.size, 'pinv_size': model.inverse_size,
            }
            report = check_inequalities(self_inequalities(), witness)
            certified = model.time_fit.covers(n) and model.inverse_fit.covers(n)
            logger.info("self-similar parameters: r=%d S0=%d S=2^%d", r, S0, values['S'].bit_length())
            return {
                'status': 'ok' if report.passed else 'failed',
                'r': r, 'S0': S0,
                'witness': witness,
                'ratio': Fraction(values['S'], values['T']),
                'tag': 'certified on samples' if certified else 'extrapolated',
                'executable': values['S'] * values['T'] <= execution_budget,
                'report': report,
            }
    logger.warning("no self-similar parameters up to r=%d and S=2^%d", r_max, max_bits)
    return {
        'status': 'infeasible',
        'certificate': {'r_max': r_max, 'offsets': list(offsets), 'max_bits': max_bits,
                        'violations': last_violations},
    }
