import logging
from typing import Dict, List, Optional, Sequence, Tuple

from fixpoint_ppa.modules.encoding import EncodingError, Undefined, bin_decode, sharp_strip
from fixpoint_ppa.modules.ppa import PeriodicConfig, PpaRule, StepRejected, find_periods, iterate
from .spec import AnySpec, ComposedSpec, DecodeError, SimulationSpec, decode, encode

logger = logging.getLogger(__name__)

Level = Tuple[int, int, int]


def _levels(spec: AnySpec) -> Tuple[SimulationSpec, ...]:
    return spec.levels if isinstance(spec, ComposedSpec) else (spec,)


def composed_parameters(levels: Sequence[Level]) -> Level:
    """
    (S, T, Q) of a tower of (S_i, T_i, Q_i) simulations

    S and T multiply; each level's shift is scaled by the widths below it and
    the periods above it: Q = sum Q_i * prod(S_j, j < i) * prod(T_j, j > i).
    """
    S = T = 1
    for S_i, T_i, _ in levels:
        S *= S_i
        T *= T_i
    Q = 0
    for i, (_, _, Q_i) in enumerate(levels):
        below = 1
        for S_j, _, _ in levels[:i]:
            below *= S_j
        above = 1
        for _, T_j, _ in levels[i + 1:]:
            above *= T_j
        Q += Q_i * below * above
    return S, T, Q


def compose_specs(specs: Sequence[AnySpec]) -> AnySpec:
    """Tower read as a single simulation; nested towers are flattened."""
    if not specs:
        raise ValueError("at least one simulation is required")
    levels: List[SimulationSpec] = []
    for spec in specs:
        levels.extend(_levels(spec))
    if len(levels) == 1:
        return levels[0]
    S, T, Q = composed_parameters([(level.S, level.T, level.Q) for level in levels])
    return ComposedSpec(tuple(levels), S, T, Q)


def origin_counter(levels: Sequence[Level], steps: int) -> int:
    """
    Position, in level-0 cells, of the top-level colony origin after ``steps`` level-0 steps

    Index bookkeeping that fixes the convention of the composed Q: every
    level keeps a clock; when level i completes a work period its clock
    wraps, level i + 1 advances one step and the origin moves by Q_i
    level-i cells.
    """
    clocks = [0] * len(levels)
    origin = 0
    for _ in range(steps):
        width = 1
        for i, (S_i, T_i, Q_i) in enumerate(levels):
            clocks[i] += 1
            if clocks[i] < T_i:
                break
            clocks[i] = 0
            origin += Q_i * width
            width *= S_i
    return origin


def period_transfer_check(F: PpaRule, G: PpaRule, spec: SimulationSpec, b: PeriodicConfig,
                          max_t: int) -> Dict:
    """
    Periods of b under G against periods of its encoding under F (Q = 0)

    (k, l) is a period of b exactly when (kS, lT) is a period of the
    encoding; F periods off that grid are reported as violations.
    """
    if spec.Q:
        raise ValueError("period transfer is checked for Q = 0 only")
    c = encode(spec, b)
    simulated = find_periods(G, b, max_t // spec.T)
    simulating = find_periods(F, c, max_t)
    scaled = set()
    off_grid = []
    for s, t in sorted(simulating.periods):
        if s % spec.S or t % spec.T:
            off_grid.append([s, t])
        else:
            scaled.add((s // spec.S, t // spec.T))
    status = 'pass' if scaled == simulated.periods and not off_grid else 'fail'
    return {
        'status': status,
        'simulated': sorted(simulated.periods),
        'simulating': sorted(scaled),
        'off_grid': off_grid,
        'partial': simulated.partial or simulating.partial,
        'max_t': max_t,
    }


def _phase(spec: SimulationSpec, config: PeriodicConfig) -> Tuple[int, int]:
    cell = config.cells[0]
    try:
        s = bin_decode(sharp_strip(cell[spec.layout.index('Addr')]))
        clock = bin_decode(sharp_strip(cell[spec.layout.index('Clock')]))
    except (Undefined, EncodingError) as e:
        raise DecodeError(f"unreadable coordinates: {e}", cell=0)
    return s, (clock - spec.t0) % spec.T


def nested_rock_membership(tower: Sequence[Tuple[PpaRule, SimulationSpec]], config: PeriodicConfig,
                           depth: int) -> Dict:
    """
    Per-level phases (s_i, t_i) of a configuration of a simulation tower

    At each level the address and clock of cell 0 give the phase; the
    configuration is brought back to phase (0, 0) with sigma^-s F^-t and
    decoded, and the next level starts from the decoded configuration.

    Args:
        tower: (rule, simulation) of levels 0, 1, ...
        config: Configuration of the level-0 rule
        depth: Number of levels to read

    Returns:
        Result dict with status 'ok', the phases and the configuration reached,
        or status 'rejected' with the failing level
    """
    if depth > len(tower):
        raise ValueError(f"depth {depth} exceeds the tower height {len(tower)}")
    phases = []
    current = config
    for level in range(depth):
        rule, spec = tower[level]
        try:
            s, t = _phase(spec, current)
            normalized = iterate(rule, current.rotate(-s), -t)
            current = decode(spec, normalized)
        except (DecodeError, StepRejected) as e:
            logger.debug("level %d rejected: %s", level, e)
            return {'status': 'rejected', 'level': level, 'reason': str(e), 'phases': phases}
        phases.append((s, t))
    return {'status': 'ok', 'phases': phases, 'config': current}


def rock_skeleton(tower: Sequence[Tuple[PpaRule, SimulationSpec]], config: PeriodicConfig,
                  depth: int) -> Optional[List[Tuple[int, int]]]:
    """The phase sequence alone, or None when some level does not decode."""
    result = nested_rock_membership(tower, config, depth)
    return result['phases'] if result['status'] == 'ok' else None


def colony_origin(tower: Sequence[Tuple[PpaRule, SimulationSpec]], config: PeriodicConfig,
                  depth: Optional[int] = None) -> Optional[int]:
    """
    Level-0 cell at which the top decoded colony containing cell 0 starts

    Read from the per-level phases: cell 0 sits at address s_i of its
    level-i colony, so it lies sum s_i * prod(S_j, j < i) cells past the
    origin. None when some level does not decode.
    """
    depth = len(tower) if depth is None else depth
    result = nested_rock_membership(tower, config, depth)
    if result['status'] != 'ok':
        return None
    offset = 0
    width = 1
    for (_, spec), (s, _) in zip(tower, result['phases']):
        offset += s * width
        width *= spec.S
    return -offset % config.period
