import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from fixpoint_ppa.modules.encoding import Letter, Undefined, format_letter

logger = logging.getLogger(__name__)

Permutation = Callable[[Letter], Letter]

CACHE_LIMIT = 200000


class StepRejected(Exception):
    """A step of a partial automaton is undefined on a configuration."""

    def __init__(self, time: int, cell: int, reason: str):
        super().__init__(f"rejected at time {time}, cell {cell}: {reason}")
        self.time = time
        self.cell = cell
        self.reason = reason

    def record(self) -> Dict:
        return {'status': 'rejected', 'time': self.time, 'cell': self.cell, 'reason': self.reason}


class LayoutError(ValueError):
    """Field labels, directions or lengths are inconsistent."""


@dataclass(frozen=True)
class _Rejection:
    reason: str
    detail: str


@dataclass(frozen=True)
class FieldLayout:
    """Labelled fields of a letter together with their directions.

    A field with direction +1 moves one cell to the right at every step.
    """
    labels: Tuple[str, ...]
    directions: Tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.directions):
            raise LayoutError("one direction per field label is required")
        if len(set(self.labels)) != len(self.labels):
            raise LayoutError(f"duplicate field labels in {self.labels}")
        if any(d not in (-1, 0, 1) for d in self.directions):
            raise LayoutError("directions must be -1, 0 or +1")
        object.__setattr__(self, '_index', {label: i for i, label in enumerate(self.labels)})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, int]]) -> 'FieldLayout':
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LayoutError(f"unknown field label {label!r}")

    def has(self, label: str) -> bool:
        return label in self._index

    def direction(self, label: str) -> int:
        return self.directions[self.index(label)]

    def __len__(self) -> int:
        return len(self.labels)

    def extend(self, other: 'FieldLayout') -> 'FieldLayout':
        return FieldLayout(self.labels + other.labels, self.directions + other.directions)

    def to_dict(self) -> Dict:
        return {'fields': [{'label': l, 'index': i, 'direction': d}
                           for i, (l, d) in enumerate(zip(self.labels, self.directions))]}


@dataclass(frozen=True)
class PeriodicConfig:
    """Spatially periodic configuration given by one period of letters."""
    cells: Tuple[Letter, ...]

    def __post_init__(self):
        if not self.cells:
            raise LayoutError("a periodic configuration needs at least one cell")
        counts = {len(cell) for cell in self.cells}
        if len(counts) != 1:
            raise LayoutError(f"cells with different field counts {sorted(counts)}")

    @classmethod
    def of(cls, cells: Iterable[Sequence[str]]) -> 'PeriodicConfig':
        return cls(tuple(tuple(cell) for cell in cells))

    @property
    def period(self) -> int:
        return len(self.cells)

    def __getitem__(self, n: int) -> Letter:
        return self.cells[n % len(self.cells)]

    def rotate(self, s: int) -> 'PeriodicConfig':
        """sigma^s: cell n of the result holds cell n + s of this configuration."""
        p = len(self.cells)
        s %= p
        return PeriodicConfig(self.cells[s:] + self.cells[:s])

    def column(self, index: int) -> Tuple[str, ...]:
        return tuple(cell[index] for cell in self.cells)

    def replace_field(self, index: int, values: Sequence[str]) -> 'PeriodicConfig':
        return PeriodicConfig(tuple(cell[:index] + (value,) + cell[index + 1:]
                                    for cell, value in zip(self.cells, values)))

    def to_text(self) -> List[str]:
        return [format_letter(cell) for cell in self.cells]


@dataclass
class StripPattern:
    """Rows F^-down(c) ... F^up(c), bottom to top."""
    rows: List[PeriodicConfig]
    start_time: int = 0

    @property
    def height(self) -> int:
        return len(self.rows)


class PpaRule:
    """
    Partial partition automaton: a partial permutation of letters followed by
    the per-field shifts given by the layout directions

    Args:
        layout: Field labels and directions
        forward: Partial permutation of letters (raises Undefined)
        backward: Its inverse
        name: Rule name used in logs and manifests
        alphabet: Optional predicate restricting the letters
    """

    def __init__(self, layout: FieldLayout, forward: Permutation, backward: Permutation,
                 name: str = 'rule', alphabet: Optional[Callable[[Letter], bool]] = None):
        self.layout = layout
        self.name = name
        self.alphabet = alphabet
        self._forward = forward
        self._backward = backward
        self._forward_cache: Dict[Letter, object] = {}
        self._backward_cache: Dict[Letter, object] = {}

    @property
    def directions(self) -> Tuple[int, ...]:
        return self.layout.directions

    def _cached(self, cache: Dict, function: Permutation, letter: Letter) -> Letter:
        hit = cache.get(letter)
        if hit is None:
            if self.alphabet is not None and not self.alphabet(letter):
                hit = _Rejection('alphabet', 'letter outside the alphabet')
            else:
                try:
                    hit = function(letter)
                except Undefined as e:
                    hit = _Rejection(e.reason, e.detail)
            if len(cache) > CACHE_LIMIT:
                cache.clear()
            cache[letter] = hit
        if isinstance(hit, _Rejection):
            raise Undefined(hit.reason, hit.detail)
        return hit

    def apply(self, letter: Letter) -> Letter:
        return self._cached(self._forward_cache, self._forward, letter)

    def apply_inverse(self, letter: Letter) -> Letter:
        return self._cached(self._backward_cache, self._backward, letter)

    def validate(self, config: PeriodicConfig, time: int) -> None:
        if len(config.cells[0]) != len(self.layout):
            raise StepRejected(time, 0, f"expected {len(self.layout)} fields")

    def directions_for(self, config: PeriodicConfig) -> Tuple[int, ...]:
        return self.layout.directions

    def __repr__(self) -> str:
        return f"PpaRule({self.name!r}, fields={len(self.layout)})"


def step_forward(rule: PpaRule, config: PeriodicConfig, time: int = 0) -> PeriodicConfig:
    """
    One forward step: permutation cellwise, then field i of cell n moves to n + d_i

    Args:
        rule: Automaton
        config: Periodic configuration
        time: Time stamp used in rejection records

    Returns:
        Next configuration; raises StepRejected when any cell is undefined
    """
    rule.validate(config, time)
    permuted = []
    for n, cell in enumerate(config.cells):
        try:
            permuted.append(rule.apply(cell))
        except Undefined as e:
            raise StepRejected(time, n, str(e))
    directions = rule.directions_for(config)
    p = len(permuted)
    return PeriodicConfig(tuple(
        tuple(permuted[(n - d) % p][i] for i, d in enumerate(directions))
        for n in range(p)
    ))


def step_backward(rule: PpaRule, config: PeriodicConfig, time: int = 0) -> PeriodicConfig:
    """Exact inverse of step_forward: undo the shifts, then the inverse permutation."""
    rule.validate(config, time)
    directions = rule.directions_for(config)
    p = config.period
    unshifted = [tuple(config.cells[(n + d) % p][i] for i, d in enumerate(directions)) for n in range(p)]
    cells = []
    for n, cell in enumerate(unshifted):
        try:
            cells.append(rule.apply_inverse(cell))
        except Undefined as e:
            raise StepRejected(time, n, str(e))
    return PeriodicConfig(tuple(cells))


def iterate(rule: PpaRule, config: PeriodicConfig, steps: int, start_time: int = 0) -> PeriodicConfig:
    """F^steps(config); negative counts run backwards. Rejections carry the failing time."""
    current = config
    if steps >= 0:
        for t in range(steps):
            current = step_forward(rule, current, start_time + t + 1)
    else:
        for t in range(-steps):
            current = step_backward(rule, current, start_time - t - 1)
    return current


def orbit(rule: PpaRule, config: PeriodicConfig, steps: int) -> List[PeriodicConfig]:
    """[c, F(c), ..., F^steps(c)]."""
    rows = [config]
    for t in range(steps):
        rows.append(step_forward(rule, rows[-1], t + 1))
    return rows


def omega_truncated(rule: PpaRule, config: PeriodicConfig, t: int) -> bool:
    """Membership in F^t(A^Z) intersected with F^-t(A^Z)."""
    try:
        iterate(rule, config, t)
        iterate(rule, config, -t)
        return True
    except StepRejected:
        return False


def build_strip(rule: PpaRule, config: PeriodicConfig, down: int, up: int) -> StripPattern:
    """Rows F^-down(c) .. F^up(c); rejections are annotated with time and cell."""
    below = []
    current = config
    for t in range(down):
        current = step_backward(rule, current, -t - 1)
        below.append(current)
    rows = list(reversed(below)) + [config]
    current = config
    for t in range(up):
        current = step_forward(rule, current, t + 1)
        rows.append(current)
    return StripPattern(rows, start_time=-down)


def local_image(rule: PpaRule, neighbourhood: Sequence[Letter]) -> Letter:
    """Radius-1 local rule: cell n at the next time from cells n-1, n, n+1."""
    directions = rule.directions_for(PeriodicConfig.of([neighbourhood[1]]))
    return tuple(rule.apply(neighbourhood[1 - d])[i] for i, d in enumerate(directions))


def check_local_validity(rule: PpaRule, pattern: Sequence[Sequence[Letter]]) -> bool:
    """
    Local validity of a finite space-time window (rows bottom to top)

    Every cell with a row below it and both horizontal neighbours inside the
    window must be the local image of its three lower neighbours.
    """
    for t in range(1, len(pattern)):
        below, row = pattern[t - 1], pattern[t]
        for n in range(1, min(len(row), len(below)) - 1):
            try:
                if local_image(rule, below[n - 1:n + 2]) != tuple(row[n]):
                    return False
            except Undefined:
                return False
    return True


def step_window(rule: PpaRule, window: Sequence[Letter], time: int = 0) -> List[Letter]:
    """Finite-window step: the result loses one cell on each side."""
    result = []
    for n in range(1, len(window) - 1):
        try:
            result.append(local_image(rule, window[n - 1:n + 2]))
        except Undefined as e:
            raise StepRejected(time, n, str(e))
    return result


def restrict(rule: PpaRule, predicate: Callable[[Letter], bool], name: Optional[str] = None) -> PpaRule:
    """Restriction to a sub-alphabet: letters or images outside it are rejected."""
    def forward(letter: Letter) -> Letter:
        image = rule.apply(letter)
        if not predicate(image):
            raise Undefined('restrict', 'image outside the sub-alphabet')
        return image

    def backward(letter: Letter) -> Letter:
        image = rule.apply_inverse(letter)
        if not predicate(image):
            raise Undefined('restrict', 'preimage outside the sub-alphabet')
        return image

    return PpaRule(rule.layout, forward, backward, name=name or f"{rule.name}|restricted", alphabet=predicate)


class DisjointUnionRule(PpaRule):
    """Acts as rule i on configurations over alphabet i (alphabets given by length vectors)."""

    def __init__(self, parts: Sequence[Tuple[PpaRule, Tuple[int, ...]]]):
        keys = [tuple(k) for _, k in parts]
        if len(set(keys)) != len(keys):
            raise LayoutError("disjoint union needs pairwise disjoint alphabets")
        self.parts = {tuple(k): r for r, k in parts}
        first = parts[0][0]
        super().__init__(first.layout, self._dispatch_forward, self._dispatch_backward,
                         name='+'.join(r.name for r, _ in parts))

    def _part(self, letter: Letter) -> PpaRule:
        rule = self.parts.get(tuple(len(f) for f in letter))
        if rule is None:
            raise Undefined('union', 'letter outside every alphabet')
        return rule

    def _dispatch_forward(self, letter: Letter) -> Letter:
        return self._part(letter).apply(letter)

    def _dispatch_backward(self, letter: Letter) -> Letter:
        return self._part(letter).apply_inverse(letter)

    def validate(self, config: PeriodicConfig, time: int) -> None:
        keys = {tuple(len(f) for f in cell) for cell in config.cells}
        if len(keys) != 1:
            raise StepRejected(time, 0, 'configuration mixes alphabets')
        key = keys.pop()
        if key not in self.parts:
            raise StepRejected(time, 0, 'letter outside every alphabet')

    def directions_for(self, config: PeriodicConfig) -> Tuple[int, ...]:
        return self.parts[tuple(len(f) for f in config.cells[0])].layout.directions


def disjoint_union(parts: Sequence[Tuple[PpaRule, Sequence[int]]]) -> PpaRule:
    if len(parts) == 1:
        return parts[0][0]
    return DisjointUnionRule([(r, tuple(k)) for r, k in parts])


@dataclass
class PeriodReport:
    periods: Set[Tuple[int, int]] = field(default_factory=set)
    partial: bool = False
    rejected_at: Optional[int] = None


def find_periods(rule: PpaRule, config: PeriodicConfig, max_t: int) -> PeriodReport:
    """All (s, t) with 1 <= s <= P and 1 <= t <= max_t such that sigma^s F^t(c) = c."""
    report = PeriodReport()
    current = config
    p = config.period
    for t in range(1, max_t + 1):
        try:
            current = step_forward(rule, current, t)
        except StepRejected:
            report.partial = True
            report.rejected_at = t
            logger.debug("period search stopped by rejection at t=%d", t)
            break
        for s in range(1, p + 1):
            if current.rotate(s) == config:
                report.periods.add((s, t))
    return report
