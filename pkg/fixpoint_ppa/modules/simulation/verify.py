import itertools
import logging
import random
from typing import Dict, List, Optional, Sequence

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import alphabet, alphabet_size, format_letter
from fixpoint_ppa.modules.ppa import PeriodicConfig, PpaRule, StepRejected, iterate, step_backward, step_forward
from .spec import DecodeError, SimulationSpec, decode, decodes, encode

logger = logging.getLogger(__name__)

SYMBOLS = '01234'


def _text(config: Optional[PeriodicConfig]) -> Optional[List[str]]:
    return None if config is None else config.to_text()


def _record(clause: str, status: str, **details) -> Dict:
    record = {'clause': clause, 'status': status}
    record.update(details)
    return record


def _try(step, rule: PpaRule, config: PeriodicConfig) -> Optional[PeriodicConfig]:
    try:
        return step(rule, config)
    except StepRejected:
        return None


def _try_iterate(rule: PpaRule, config: PeriodicConfig, steps: int) -> Optional[PeriodicConfig]:
    try:
        return iterate(rule, config, steps)
    except StepRejected:
        return None


def _equation(clause: str, F: PpaRule, G: PpaRule, spec: SimulationSpec,
              b: PeriodicConfig, c: PeriodicConfig, direction: int) -> Dict:
    """G^d(b) against the decoding of sigma^(dQ) F^(dT)(c), d = +1 or -1."""
    expected = _try(step_forward if direction > 0 else step_backward, G, b)
    reached = _try_iterate(F, c, direction * spec.T)
    if expected is None:
        if reached is None:
            return _record(clause, 'pass', defined=False)
        return _record(clause, 'fail', reason='simulating rule defined where the simulated one is not',
                       counterexample=_text(b))
    if reached is None:
        return _record(clause, 'fail', reason='simulating rule rejected a decodable configuration',
                       counterexample=_text(b))
    try:
        image = decode(spec, reached.rotate(direction * spec.Q))
    except DecodeError as e:
        return _record(clause, 'fail', reason=f"image does not decode: {e}", counterexample=_text(b))
    if image != expected:
        return _record(clause, 'fail', reason='decoded image differs', counterexample=_text(b),
                       expected=_text(expected), decoded=_text(image))
    return _record(clause, 'pass', defined=True)


def disjointness(F: PpaRule, spec: SimulationSpec, c: PeriodicConfig) -> Dict:
    """Only the phase (0, 0) of the orbit slice [0,S) x [0,T) decodes."""
    current = c
    for t in range(spec.T):
        if t:
            current = _try(step_forward, F, current)
            if current is None:
                return _record('disjointness', 'pass', stopped_at=t)
        for s in range(spec.S):
            if (s, t) != (0, 0) and decodes(spec, current.rotate(s)):
                return _record('disjointness', 'fail', phase=[s, t], counterexample=_text(c))
    return _record('disjointness', 'pass', stopped_at=None)


def _perturbed(spec: SimulationSpec, c: PeriodicConfig, rng: random.Random) -> PeriodicConfig:
    """Replace one symbol of a non-coordinate field somewhere in c."""
    free = [i for i, label in enumerate(spec.layout.labels)
            if label not in ('Addr', 'Addr_r', 'Clock', 'Clock_r')]
    if not free:
        return c
    n = rng.randrange(c.period)
    i = rng.choice(free)
    value = c.cells[n][i]
    if not value:
        return c
    j = rng.randrange(len(value))
    value = value[:j] + rng.choice(SYMBOLS) + value[j + 1:]
    cells = list(c.cells)
    cells[n] = cells[n][:i] + (value,) + cells[n][i + 1:]
    return PeriodicConfig(tuple(cells))


def completeness_probe(F: PpaRule, spec: SimulationSpec, period: int, samples: int,
                       rng: random.Random) -> Dict:
    """
    Configurations on the colony grid surviving completeness_depth work periods decode

    Samples are canonical encodings of random simulated configurations with
    one random symbol changed outside the coordinates (or left unchanged).
    """
    target_letters = list(alphabet(spec.target_lengths))
    survived = 0
    for _ in range(samples):
        b = PeriodicConfig(tuple(rng.choice(target_letters) for _ in range(period)))
        c = encode(spec, b)
        if rng.random() < 0.75:
            c = _perturbed(spec, c, rng)
        if _try_iterate(F, c, spec.completeness_depth * spec.T) is None:
            continue
        survived += 1
        if not decodes(spec, c):
            return _record('completeness', 'fail', reason='surviving configuration does not decode',
                           counterexample=_text(c))
    return _record('completeness', 'pass', samples=samples, survived=survived)


def verify_simulation(F: PpaRule, G: PpaRule, spec: SimulationSpec, b: PeriodicConfig,
                      samples: int = 0, seed: Optional[int] = None) -> Dict:
    """
    Check the simulation equations on one simulated configuration

    Clauses: forward equation, backward equation, disjointness of the phases
    and (when ``samples`` > 0) the completeness probe.

    Args:
        F: Simulating rule
        G: Simulated rule
        spec: Simulation parameters
        b: Simulated configuration
        samples: Completeness probe size
        seed: PRNG seed of the probe

    Returns:
        Result dict with status 'pass' or 'fail' and one record per clause
    """
    c = encode(spec, b)
    if decode(spec, c) != b:
        records = [_record('roundtrip', 'fail', counterexample=_text(b))]
    else:
        records = [
            _equation('forward', F, G, spec, b, c, 1),
            _equation('backward', F, G, spec, b, c, -1),
            disjointness(F, spec, c),
        ]
        if samples:
            rng = random.Random(Config.SEED if seed is None else seed)
            records.append(completeness_probe(F, spec, b.period, samples, rng))
    for record in records:
        record['config'] = [format_letter(letter) for letter in b.cells]
    failed = [r for r in records if r['status'] == 'fail']
    return {'status': 'fail' if failed else 'pass', 'records': records}


def simulated_configs(spec: SimulationSpec, period: int, samples: Optional[int] = None,
                      seed: Optional[int] = None) -> List[PeriodicConfig]:
    """Every simulated configuration of a period when few enough, else a seed-pinned sample."""
    samples = Config.DEFAULT_SAMPLES if samples is None else samples
    size = alphabet_size(spec.target_lengths) ** period
    letters = list(alphabet(spec.target_lengths))
    if period <= Config.EXHAUSTIVE_PERIOD and size <= samples:
        return [PeriodicConfig(cells) for cells in itertools.product(letters, repeat=period)]
    rng = random.Random(Config.SEED if seed is None else seed)
    return [PeriodicConfig(tuple(rng.choice(letters) for _ in range(period))) for _ in range(samples)]


def verify_simulation_suite(F: PpaRule, G: PpaRule, spec: SimulationSpec, period: int = 1,
                            samples: Optional[int] = None, probe: int = 0,
                            seed: Optional[int] = None) -> Dict:
    """verify_simulation over many simulated configurations; the probe runs once."""
    configs = simulated_configs(spec, period, samples, seed)
    records: List[Dict] = []
    for k, b in enumerate(configs):
        result = verify_simulation(F, G, spec, b, probe if k == 0 else 0, seed)
        records.extend(result['records'])
    failures = [r for r in records if r['status'] == 'fail']
    logger.info("simulation suite: %d configurations, %d failing clauses", len(configs), len(failures))
    return {'status': 'fail' if failures else 'pass', 'configs': len(configs),
            'failures': len(failures), 'records': records}
