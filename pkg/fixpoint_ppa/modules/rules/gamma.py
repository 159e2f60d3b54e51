import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import Word, sharp_pad, sharp_strip
from fixpoint_ppa.modules.ppa import FieldLayout, PeriodicConfig, PpaRule, StepRejected, step_forward
from fixpoint_ppa.modules.turing import (
    ACCEPT, INITIAL, BLANK, TmProgram, TmConfig, TmRejected, initial_config, tm_step,
    gamma_forward, gamma_backward, head_field_length, is_live, random_machine,
)

logger = logging.getLogger(__name__)

GAMMA_FIELDS = (('Tape', 0), ('Head_l', -1), ('Head_r', 1))


def gamma_pair(program: TmProgram):
    """(forward, backward) partial permutations of (Tape, Head_l, Head_r) letters."""
    return (lambda u: gamma_forward(program, tuple(u)),
            lambda u: gamma_backward(program, tuple(u)))


def gamma_rule(program: TmProgram) -> PpaRule:
    """Native three-field automaton running one machine in real time."""
    forward, backward = gamma_pair(program)
    return PpaRule(FieldLayout.from_pairs(GAMMA_FIELDS), forward, backward, name='gammaU')


def ring_config(program: TmProgram, inputs: Sequence[Tuple[int, Word]], period: int) -> PeriodicConfig:
    """
    Ring holding one head per input

    Each input word is written from its start cell and a head in the initial
    state sits in the Head_l field of that cell. Tape cell i of the machine
    is ring cell i mod period.
    """
    width = head_field_length(program)
    tape = [BLANK] * period
    heads = set()
    for start, word in inputs:
        heads.add(start % period)
        for i, symbol in enumerate(word):
            tape[(start + i) % period] = symbol
    return PeriodicConfig(tuple(
        (tape[n], sharp_pad(width, INITIAL if n in heads else ''), '4' * width)
        for n in range(period)
    ))


def read_heads(program: TmProgram, config: PeriodicConfig) -> List[Tuple[int, str]]:
    """(cell, state) of every live head of a ring."""
    found = []
    for n, (_, left, right) in enumerate(config.cells):
        for value in (left, right):
            if is_live(value, program):
                found.append((n, sharp_strip(value)))
    return found


def _tape_problem(oracle: TmConfig, config: PeriodicConfig, start: int, cells: range) -> Optional[str]:
    for n in cells:
        expected = oracle.read(n - start)
        if config[n][0] != expected:
            return f"tape differs at cell {n % config.period}: {config[n][0]} != {expected}"
    return None


def _head_problem(program: TmProgram, oracle: TmConfig, config: PeriodicConfig,
                  start: int, cells: range) -> Optional[str]:
    inside = {n % config.period for n in cells}
    heads = [(n, q) for n, q in read_heads(program, config) if n in inside]
    if oracle.state == ACCEPT:
        return f"live head left after acceptance: {heads}" if heads else None
    expected = [((start + oracle.head) % config.period, oracle.state)]
    if heads != expected:
        return f"heads {heads} != {expected}"
    return None


def gamma_fidelity(program: TmProgram, word: Word, steps: int, period: int = 100) -> Dict:
    """
    Compare the embedding with the machine step by step

    Args:
        program: Machine
        word: Input placed at cells 0..
        steps: Number of steps to compare
        period: Ring size; must exceed the cells the machine can visit

    Returns:
        Result dict with status 'pass' or 'mismatch' and the failing time
    """
    rule = gamma_rule(program)
    config = ring_config(program, [(0, word)], period)
    oracle = initial_config(word)
    oracle_rejected = False
    for t in range(1, steps + 1):
        try:
            oracle = tm_step(program, oracle, t)
        except TmRejected:
            oracle_rejected = True
        try:
            config = step_forward(rule, config, t)
            ppa_rejected = False
        except StepRejected:
            ppa_rejected = True
        if oracle_rejected or ppa_rejected:
            if oracle_rejected != ppa_rejected:
                return {'status': 'mismatch', 'time': t, 'word': word,
                        'reason': f"machine rejected={oracle_rejected}, automaton rejected={ppa_rejected}"}
            return {'status': 'pass', 'steps': t, 'outcome': 'rejected'}
        cells = range(-(period // 2), period - period // 2)
        problem = (_tape_problem(oracle, config, 0, cells)
                   or _head_problem(program, oracle, config, 0, cells))
        if problem:
            return {'status': 'mismatch', 'time': t, 'word': word, 'reason': problem}
    return {'status': 'pass', 'steps': steps,
            'outcome': 'accepted' if oracle.state == ACCEPT else 'running'}


def gamma_fidelity_suite(machines: Optional[int] = None, steps: Optional[int] = None,
                         seed: Optional[int] = None, period: int = 100) -> Dict:
    """Fidelity over seed-pinned random machines and inputs."""
    machines = Config.GAMMA_MACHINES if machines is None else machines
    steps = Config.GAMMA_STEPS if steps is None else steps
    rng = random.Random(Config.SEED if seed is None else seed)
    mismatches = []
    outcomes: Dict[str, int] = {}
    for i in range(machines):
        program = random_machine(rng, max_states=Config.GAMMA_MAX_STATES)
        word = ''.join(rng.choice('0123') for _ in range(rng.randint(0, Config.GAMMA_MAX_INPUT)))
        result = gamma_fidelity(program, word, steps, period)
        if result['status'] != 'pass':
            result['machine'] = program.to_text()
            mismatches.append(result)
        else:
            outcomes[result['outcome']] = outcomes.get(result['outcome'], 0) + 1
    logger.info("gamma fidelity: %d machines, %d mismatches", machines, len(mismatches))
    return {
        'status': 'pass' if not mismatches else 'fail',
        'machines': machines,
        'steps': steps,
        'outcomes': outcomes,
        'mismatches': mismatches,
    }


def multi_head_check(program: TmProgram, words: Sequence[Word], steps: int) -> Dict:
    """
    Heads spaced more than 2 * steps apart evolve independently

    One head per word; after ``steps`` steps each window of radius ``steps``
    around a start cell must agree with an independent run of the machine.
    """
    spacing = 2 * steps + max((len(w) for w in words), default=0) + 2
    period = spacing * len(words)
    starts = [k * spacing for k in range(len(words))]
    rule = gamma_rule(program)
    config = ring_config(program, list(zip(starts, words)), period)
    oracles = []
    try:
        for word in words:
            oracle = initial_config(word)
            for t in range(steps):
                oracle = tm_step(program, oracle, t + 1)
            oracles.append(oracle)
    except TmRejected as e:
        return {'status': 'skipped', 'reason': str(e)}
    try:
        for t in range(steps):
            config = step_forward(rule, config, t + 1)
    except StepRejected as e:
        return {'status': 'mismatch', 'reason': str(e)}
    for start, oracle in zip(starts, oracles):
        window = range(start - steps, start + steps + max(len(w) for w in words) + 1)
        problem = (_tape_problem(oracle, config, start, window)
                   or _head_problem(program, oracle, config, start, window))
        if problem:
            return {'status': 'mismatch', 'start': start, 'reason': problem}
    return {'status': 'pass', 'heads': len(words), 'steps': steps}
