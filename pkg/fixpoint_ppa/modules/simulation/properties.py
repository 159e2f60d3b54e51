"""
Executable property suites over small instances

Every suite returns a result dict with a 'status' of 'pass' or 'fail' and
the counterexamples it found; nothing here raises on a failing property.
"""
import itertools
import logging
import random
from dataclasses import replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import (
    alphabet, bin_encode, bit_length, chi_length, double, field_offset, sharp_pad,
)
from fixpoint_ppa.modules.ppa import PeriodicConfig, PpaRule, StepRejected, iterate, step_backward, step_forward
from fixpoint_ppa.modules.turing import (
    TmProgram, bit_flip_machine, countdown_machine, identity_machine, machine_for_map, swap_machine,
)
from fixpoint_ppa.modules.rules import (
    C_OTHER, ZERO_LETTER, HaltingReduction, intruder_rule,
    make_chekka, make_compute, make_coordi, make_hier, make_shift, make_toy_unive,
)
from fixpoint_ppa.modules.params import SequenceRecipe, make_sequences, solve_toy_unive
from fixpoint_ppa.modules.directions import (
    nested_ne_interval, reali_epsilons, reali_levels, theta_interval,
)
from .spec import DecodeError, SimulationSpec, decode, encode, native_rule, toy_spec
from .verify import simulated_configs, verify_simulation_suite
from .compose import (
    colony_origin, compose_specs, composed_parameters, origin_counter, period_transfer_check, rock_skeleton,
)

logger = logging.getLogger(__name__)

DIRECTIONS = (-1, 0, 1)


def toy_machines(name: str) -> Tuple[TmProgram, TmProgram, Tuple[int, ...]]:
    """(p, p_inv, k') of a named toy permutation."""
    if name == 'identity':
        return identity_machine(), identity_machine(), (1, 1)
    if name == 'swap':
        machine = swap_machine((1, 1))
        return machine, machine, (1, 1)
    if name == 'bitflip':
        return bit_flip_machine(), bit_flip_machine(), (1,)
    raise ValueError(f"unknown toy machine {name!r}; expected identity, swap or bitflip")


TOYS = ('identity', 'swap', 'bitflip')


def _attempt(rule: PpaRule, config: PeriodicConfig, steps: int) -> Optional[PeriodicConfig]:
    try:
        return iterate(rule, config, steps)
    except StepRejected:
        return None


def _summary(name: str, checked: int, failures: List[Dict], **extra) -> Dict:
    logger.info("%s: %d cases, %d failures", name, checked, len(failures))
    result = {'suite': name, 'status': 'fail' if failures else 'pass',
              'checked': checked, 'failures': failures[:20]}
    result.update(extra)
    return result


# Reversibility

def orbit_samples(rule: PpaRule, starts: Iterable[PeriodicConfig], steps: int) -> List[PeriodicConfig]:
    """Every configuration met within ``steps`` forward steps of the starts."""
    samples = []
    for config in starts:
        current = config
        for t in range(steps):
            samples.append(current)
            try:
                current = step_forward(rule, current, t + 1)
            except StepRejected:
                break
    return samples


def reversibility_check(rule: PpaRule, configs: Iterable[PeriodicConfig]) -> Dict:
    """stepBackward(stepForward(c)) == c wherever the forward step is defined."""
    failures = []
    defined = 0
    checked = 0
    for config in configs:
        checked += 1
        try:
            image = step_forward(rule, config)
        except StepRejected:
            continue
        defined += 1
        try:
            back = step_backward(rule, image)
        except StepRejected as e:
            failures.append({'config': config.to_text(), 'reason': f"backward step rejected: {e}"})
            continue
        if back != config:
            failures.append({'config': config.to_text(), 'reason': 'backward step is not the inverse'})
    return _summary(f"reversibility {rule.name}", checked, failures, defined=defined)


# Coordinates

def coordinate_config(S: int, T: int, s: int, t: int, period: int) -> PeriodicConfig:
    """gra(s, t, S, T): cell n has address (n + s) mod S in both twins and clock t in both twins."""
    ka, kc = bit_length(S), bit_length(T)
    cells = []
    for n in range(period):
        addr = sharp_pad(ka, bin_encode((n + s) % S))
        clock = sharp_pad(kc, bin_encode(t % T))
        cells.append((addr, addr, clock, clock))
    return PeriodicConfig(tuple(cells))


def _numerals(config: PeriodicConfig) -> List[Tuple[int, ...]]:
    return [tuple(int(f.strip(Config.PAD_SYMBOL) or '0', 2) for f in cell) for cell in config.cells]


def in_coordinate_grid(S: int, config: PeriodicConfig) -> bool:
    values = _numerals(config)
    P = len(values)
    clocks = {v[2] for v in values}
    if len(clocks) != 1:
        return False
    for n, (addr, addr_r, clock, clock_r) in enumerate(values):
        if addr != addr_r or clock != clock_r:
            return False
        if values[(n + 1) % P][0] != (addr + 1) % S:
            return False
    return True


def coordinate_suite(max_S: int = 8, max_T: int = 8, samples: Optional[int] = None,
                     seed: Optional[int] = None) -> Dict:
    """
    coordi: two steps are defined exactly on the coordinate grid, and the clock advances mod T

    Half of the samples are grid configurations with one field replaced by
    another in-range numeral.
    """
    samples = Config.DEFAULT_SAMPLES if samples is None else samples
    rng = random.Random(Config.SEED if seed is None else seed)
    failures = []
    rules: Dict[Tuple[int, int], PpaRule] = {}
    for _ in range(samples):
        S, T = rng.randint(1, max_S), rng.randint(1, max_T)
        period = S * rng.randint(1, 2) + (1 if rng.random() < 0.2 else 0)
        s, t = rng.randrange(S), rng.randrange(T)
        config = coordinate_config(S, T, s, t, period)
        if rng.random() < 0.5:
            n, i = rng.randrange(period), rng.randrange(4)
            bound, k = (S, bit_length(S)) if i < 2 else (T, bit_length(T))
            values = list(config.column(i))
            values[n] = sharp_pad(k, bin_encode(rng.randrange(bound)))
            config = config.replace_field(i, values)
        if (S, T) not in rules:
            rules[(S, T)] = make_coordi(S, T).to_ppa()
        expected = in_coordinate_grid(S, config)
        reached = _attempt(rules[(S, T)], config, 2)
        if (reached is not None) != expected:
            failures.append({'S': S, 'T': T, 'config': config.to_text(),
                             'expected_defined': expected})
            continue
        if reached is not None:
            clocks = {v[2] for v in _numerals(reached)}
            if clocks != {(t + 2) % T} or not in_coordinate_grid(S, reached):
                failures.append({'S': S, 'T': T, 'config': config.to_text(),
                                 'reason': 'clock or addresses off after two steps'})
    return _summary('koo', samples, failures)


# compute and shift

def compute_check(toy: str = 'bitflip', period: int = 2, samples: Optional[int] = None,
                  seed: Optional[int] = None) -> Dict:
    """
    After 4U steps each colony holds Chi(alpha(b_i)) with the auxiliary fields
    empty, and the run rejects exactly when some alpha(b_i) is undefined
    """
    p, p_inv, kprime = toy_machines(toy)
    witness, _ = solve_toy_unive(kprime, p, p_inv)
    U = witness['U']
    instance = make_compute(witness['S'], witness['T'], U, p, p_inv)
    F = instance.to_ppa()
    G = native_rule(instance, kprime)
    spec = toy_spec(instance, kprime)
    after = replace(spec, t0=4 * U)
    failures = []
    configs = simulated_configs(spec, period, samples, seed)
    for b in configs:
        try:
            expected = step_forward(G, b)
        except StepRejected:
            expected = None
        reached = _attempt(F, encode(spec, b), 4 * U)
        if expected is None or reached is None:
            if (expected is None) != (reached is None):
                failures.append({'config': b.to_text(), 'expected_defined': expected is not None})
            continue
        try:
            image = decode(after, reached)
        except ValueError as e:
            failures.append({'config': b.to_text(), 'reason': str(e)})
            continue
        if image != expected:
            failures.append({'config': b.to_text(), 'decoded': image.to_text(), 'expected': expected.to_text()})
    return _summary('compute', len(configs), failures, toy=toy, U=U, S=spec.S, T=spec.T)


def shift_check(nu: Sequence[int] = (1, -1), kprime: Sequence[int] = (1, 1), S: Optional[int] = None,
                period: int = 2, samples: Optional[int] = None, seed: Optional[int] = None) -> Dict:
    """Each simulated field stream moves nu_j colonies in one work period of S + 1 steps."""
    S = chi_length(kprime) if S is None else S
    instance = make_shift(nu, kprime, S, S + 1)
    F = instance.to_ppa()
    G = native_rule(instance)
    result = verify_simulation_suite(F, G, toy_spec(instance), period, samples, seed=seed)
    result.update(suite='shift', nu=list(nu), S=S)
    return result


# unive

def unive_suite(toy: str = 'identity', patterns: Optional[Sequence[Sequence[int]]] = None,
                period: int = 1, samples: Optional[int] = None, probe: int = 0,
                seed: Optional[int] = None) -> Dict:
    """
    The checked toy unive against sigma^-nu o alpha for every direction pattern

    Args:
        toy: identity, swap or bitflip
        patterns: Direction vectors; all of {-1,0,1}^k' by default
        period: Period of the simulated configurations
        samples: Configurations per pattern
        probe: Completeness probe size per pattern
        seed: PRNG seed

    Returns:
        Result dict with one entry per pattern
    """
    p, p_inv, kprime = toy_machines(toy)
    patterns = list(patterns or itertools.product(DIRECTIONS, repeat=len(kprime)))
    witness, _ = solve_toy_unive(kprime, p, p_inv)
    times = (witness['t_p'], witness['t_pinv'])
    results = []
    for nu in patterns:
        instance = make_toy_unive(tuple(nu), kprime, p, p_inv, times=times)
        spec = toy_spec(instance)
        outcome = verify_simulation_suite(instance.to_ppa(), native_rule(instance), spec,
                                          period, samples, probe, seed)
        failing = [r for r in outcome['records'] if r['status'] == 'fail']
        results.append({'nu': list(nu), 'status': outcome['status'], 'configs': outcome['configs'],
                        'failures': failing[:5]})
    failed = [r for r in results if r['status'] != 'pass']
    logger.info("unive %s: %d patterns, %d failing", toy, len(results), len(failed))
    return {'suite': 'unive', 'toy': toy, 'status': 'fail' if failed else 'pass',
            'S': witness['S'], 'T': witness['T'], 'U': witness['U'], 'patterns': results}


# Son-father checks

def chekka_layout_ok(stream: str, kprime: Sequence[int]) -> bool:
    """Field separators where the encoding puts them, bits inside the fields, blanks after."""
    end = chi_length(kprime)
    for i in range(len(kprime)):
        start, stop = field_offset(kprime, i), field_offset(kprime, i + 1)
        if stream[start] != '2' or any(c not in '01' for c in stream[start + 1:stop]):
            return False
    return all(c == '3' for c in stream[end:])


def hier_prefix_ok(stream: str, kprime: Sequence[int], index: int, word: str) -> bool:
    start = field_offset(kprime, index) + 1
    return stream[start:start + 3 * len(word)] == double(word)


def _tape_perturbations(spec: SimulationSpec, config: PeriodicConfig):
    """The configuration itself, then every single-symbol change of the Tape stream."""
    tape = spec.layout.index('Tape')
    column = config.column(tape)
    yield ''.join(column), config
    for j in range(len(column)):
        for symbol in Config.SYMBOLS:
            if symbol == column[j]:
                continue
            values = list(column)
            values[j] = symbol
            yield ''.join(values), config.replace_field(tape, values)


def son_father_suite(kprime: Sequence[int] = (1, 1), widths: Optional[Sequence[int]] = None,
                     index: int = 0, word: str = '0') -> Dict:
    """
    chekka and hier accept exactly the well-formed colony streams

    Every letter of 5^k' is encoded in one colony and each Tape symbol is
    changed in turn; acceptance of one step is compared with the layout
    and prefix predicates.
    """
    narrowest = chi_length(kprime)
    widths = widths or sorted({narrowest} | {w for w in (8, 16, 32) if w >= narrowest})
    failures = []
    checked = 0
    for S in widths:
        chekka = make_chekka(kprime, S, 1)
        hier = make_hier(kprime, index, word, S, 1)
        cases = ((chekka, lambda s: chekka_layout_ok(s, kprime)),
                 (hier, lambda s: hier_prefix_ok(s, kprime, index, word)))
        for instance, predicate in cases:
            rule = instance.to_ppa()
            spec = toy_spec(instance)
            for letter in alphabet(kprime):
                for stream, config in _tape_perturbations(spec, encode(spec, PeriodicConfig((letter,)))):
                    checked += 1
                    accepted = _attempt(rule, config, 1) is not None
                    if accepted != predicate(stream):
                        failures.append({'rule': instance.generator, 'S': S, 'stream': stream,
                                         'accepted': accepted})
    return _summary('sonfather', checked, failures, kprime=list(kprime))


# Composition and periods

def two_level_tower(kprime: Sequence[int] = (1, 1), nu: Sequence[int] = (1, -1),
                S: int = 8, T: int = 9) -> List[Tuple[PpaRule, SimulationSpec]]:
    """
    Two shift levels; the lower one carries letters of the upper colony alphabet

    The lower colony is exactly as wide as one encoded upper letter and its
    work period is one step longer.
    """
    upper = make_shift(nu, kprime, S, T)
    upper_spec = toy_spec(upper)
    width = chi_length(upper_spec.lengths)
    lower = make_shift(upper_spec.layout.directions, upper_spec.lengths, width, width + 1)
    return [(lower.to_ppa(), toy_spec(lower)), (upper.to_ppa(), upper_spec)]


def composition_check(tower: Optional[Sequence[Tuple[PpaRule, SimulationSpec]]] = None,
                      top: Optional[PeriodicConfig] = None, steps: Sequence[int] = (0, 2),
                      shifts: Optional[Sequence[int]] = None,
                      levels: Sequence[Tuple[int, int, int]] = ((2, 3, 1), (3, 4, 2)),
                      periods: int = 3) -> Dict:
    """
    Top colony origins read off a decoded tower against the composed (S, T, Q)

    ``top`` is encoded through every level, advanced by a few level-0 steps
    and rotated. The origin recovered from the phases must agree with the
    rotation modulo the composed width, the level-0 phase with the step
    count, and the composed decoding at that origin must give back ``top``
    up to whole top colonies. The Q convention is checked separately on
    ``levels`` by the origin counter over ``periods`` composed periods.
    """
    tower = list(tower or two_level_tower())
    top = top or PeriodicConfig.of([('0', '1')])
    specs = [spec for _, spec in tower]
    S, T, Q = composed_parameters([(spec.S, spec.T, spec.Q) for spec in specs])
    if any(t >= specs[0].T for t in steps):
        raise ValueError(f"steps must stay inside one level-0 period of {specs[0].T}")
    composed = compose_specs(specs)
    base = encode(composed, top)
    rule = tower[0][0]
    shifts = shifts if shifts is not None else (0, specs[0].S + 3, S - 1, S + 5)
    failures = []
    checked = 0
    for t in steps:
        advanced = iterate(rule, base, t)
        for r in shifts:
            checked += 1
            config = advanced.rotate(r)
            origin = colony_origin(tower, config)
            if origin is None or origin % S != -r % S:
                failures.append({'steps': t, 'rotation': r, 'origin': origin, 'expected': -r % S})
                continue
            phases = rock_skeleton(tower, config, len(tower))
            if phases[0][1] != t or any(phase[1] for phase in phases[1:]):
                failures.append({'steps': t, 'rotation': r, 'phases': phases})
                continue
            colony = (r + origin) % config.period // S
            try:
                decoded = decode(composed, iterate(rule, config.rotate(origin), -t))
            except (DecodeError, StepRejected) as e:
                failures.append({'steps': t, 'rotation': r, 'reason': str(e)})
                continue
            if decoded != top.rotate(colony):
                failures.append({'steps': t, 'rotation': r, 'decoded': decoded.to_text()})

    closed = composed_parameters(levels)
    for m in range(1, periods + 1):
        checked += 1
        measured = origin_counter(levels, m * closed[1])
        if measured != m * closed[2]:
            failures.append({'periods': m, 'measured': measured, 'expected': m * closed[2]})
    return _summary('composition', checked, failures, S=S, T=T, Q=Q,
                    levels=[[spec.S, spec.T, spec.Q] for spec in specs], closed_form=list(closed))


def period_suite(toy: str = 'identity', nu: Optional[Sequence[int]] = None, period: int = 2,
                 samples: Optional[int] = None, seed: Optional[int] = None) -> Dict:
    """Period transfer (k, l) <-> (kS, lT) within 3T steps on a checked toy unive."""
    p, p_inv, kprime = toy_machines(toy)
    nu = tuple(nu) if nu is not None else (0,) * len(kprime)
    instance = make_toy_unive(nu, kprime, p, p_inv)
    spec = toy_spec(instance)
    F, G = instance.to_ppa(), native_rule(instance)
    failures = []
    configs = simulated_configs(spec, period, samples if samples is not None else 8, seed)
    for b in configs:
        result = period_transfer_check(F, G, spec, b, 3 * spec.T)
        if result['status'] != 'pass':
            result['config'] = b.to_text()
            failures.append(result)
    return _summary('periods', len(configs), failures, S=spec.S, T=spec.T)


# Reductions and sequences

def halting_check(halt_at: int, levels: int, toy: bool = True) -> Dict:
    """
    alpha_n is defined exactly below the halting time; from there on the
    toy simulation of G_n rejects within two work periods
    """
    reduction = HaltingReduction(countdown_machine(halt_at))
    kprime = tuple(1 for _ in C_OTHER)
    nu = tuple(direction for _, direction in C_OTHER)
    lookup_time = 2 * chi_length(kprime) + 1
    failures = []
    rows = []
    zero = PeriodicConfig((ZERO_LETTER,))
    for n in range(levels):
        defined = reduction.defined(n)
        if defined != (n < halt_at):
            failures.append({'level': n, 'defined': defined})
        fixed = _attempt(intruder_rule(reduction, n), zero, 1)
        if (fixed is not None) != defined or (fixed is not None and fixed != zero):
            failures.append({'level': n, 'reason': 'G_n on the zero configuration'})
        row = {'level': n, 'defined': defined}
        if toy and not defined:
            forward, backward = reduction(n)
            instance = make_toy_unive(nu, kprime, machine_for_map(forward, kprime),
                                      machine_for_map(backward, kprime), times=(lookup_time, lookup_time))
            F = instance.to_ppa()
            try:
                iterate(F, encode(toy_spec(instance), zero), 2 * instance.params['T'])
                failures.append({'level': n, 'reason': 'toy simulation survived two work periods'})
            except StepRejected as e:
                row['rejected_at'] = e.time
        rows.append(row)
    return _summary('halting', levels, failures, halt_at=halt_at, levels=rows,
                    first_undefined=reduction.first_undefined(levels))


DEFAULT_RECIPES = (
    SequenceRecipe('hieraA'),
    SequenceRecipe('hieraB', Q=4, n0=5),
    SequenceRecipe('realiSeq'),
)

PIPELINE_WORDS = ('', '0', '1', '2', '120', '2101', '00112')


def ne_pipeline_check(recipe: SequenceRecipe, words: Sequence[str] = PIPELINE_WORDS) -> Dict:
    """Nested non-expansive intervals of realization levels equal the Theta intervals of their words."""
    seqs = make_sequences(recipe)
    failures = []
    for word in words:
        levels = reali_levels(seqs, word)
        nested = nested_ne_interval(levels)
        theta = theta_interval(word, reali_epsilons(seqs, len(word)))
        ratio = Fraction(1)
        for S, T, _ in levels:
            ratio *= Fraction(S, T)
        if nested != theta or nested.diameter != 2 * ratio:
            failures.append({'word': word, 'nested': str(nested), 'theta': str(theta)})
    return _summary('ne pipeline', len(words), failures)


def sequence_suite(recipes: Sequence[SequenceRecipe] = DEFAULT_RECIPES, levels: Optional[int] = None) -> Dict:
    """Certification of every recipe up to ``levels``, with the ratio and direction checks."""
    levels = Config.SEQUENCE_LEVELS if levels is None else levels
    failures = []
    families = []
    for recipe in recipes:
        seqs = make_sequences(recipe)
        failing = [r.name for r in seqs.certify(levels) if not r.passed]
        if failing:
            failures.append({'family': recipe.family, 'failing_levels': failing[:10]})
        if recipe.family == 'hieraB':
            for n in range(levels + 1):
                if seqs.ratio_prefix(n) != Fraction(1, 2 ** n):
                    failures.append({'family': 'hieraB', 'level': n, 'reason': 'ratio prefix is not 2^-n'})
                    break
        if recipe.family == 'realiSeq':
            pipeline = ne_pipeline_check(recipe)
            failures.extend(pipeline['failures'])
        verdict = seqs.verdict(levels)
        families.append({'family': recipe.family, 'verdict': verdict['verdict'],
                         'prefix': str(verdict['prefix'])})
    return _summary('sequences', len(recipes), failures, families=families, levels=levels)


def instance_reversibility(toy: str = 'identity', starts: int = 40, seed: Optional[int] = None) -> Dict:
    """Reversibility of a checked toy unive on orbit points of encoded configurations."""
    p, p_inv, kprime = toy_machines(toy)
    instance = make_toy_unive((1,) * len(kprime), kprime, p, p_inv)
    spec = toy_spec(instance)
    F = instance.to_ppa()
    configs = [encode(spec, b) for b in simulated_configs(spec, 1, starts, seed)]
    return reversibility_check(F, orbit_samples(F, configs, spec.T))
