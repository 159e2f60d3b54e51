"""
Simulation parameters, decoding and canonical encoding

A configuration of the simulating rule decodes when it sits on the colony
grid at the decoding clock, its auxiliary fields are empty and the Tape
stream of every colony is the encoding of one simulated letter followed by
blanks.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import (
    Letter, EncodingError, Undefined,
    bin_decode, bin_encode, bit_length, chi_decode, chi_encode, chi_length, sharp_pad, sharp_strip,
)
from fixpoint_ppa.modules.ppa import FieldLayout, LayoutError, PeriodicConfig, PpaRule
from fixpoint_ppa.modules.turing import TmProgram, tm_run
from fixpoint_ppa.modules.rules import AUX_FIELDS, RuleInstance, simulated_layout

logger = logging.getLogger(__name__)

ADDRESS_FIELDS = ('Addr', 'Addr_r')
CLOCK_FIELDS = ('Clock', 'Clock_r')


class DecodeError(ValueError):
    """A configuration is outside the domain of the decoding function."""

    def __init__(self, cause: str, colony: Optional[int] = None, cell: Optional[int] = None):
        where = ''
        if colony is not None:
            where = f" in colony {colony}"
        if cell is not None:
            where += f" at cell {cell}"
        super().__init__(f"{cause}{where}")
        self.cause = cause
        self.colony = colony
        self.cell = cell

    def record(self) -> Dict:
        return {'cause': self.cause, 'colony': self.colony, 'cell': self.cell}


@dataclass(frozen=True)
class SimulationSpec:
    """
    One (S, T, Q) simulation step: colonies of S cells, work periods of T
    steps, a shift of Q cells per period

    Args:
        S, T, Q: Colony width, work period and shift
        layout: Fields of the simulating rule
        lengths: Field lengths of the simulating letters
        target: Layout of the simulated rule
        target_lengths: Field lengths of the simulated letters
        t0: Clock value at which configurations decode
        decode_field: Field carrying the encodings
        aux: Fields that must be empty at decoding time
        constants: Fields holding a fixed word (programs, parameters)
        completeness_depth: Work periods a configuration must survive in the completeness probe
    """
    S: int
    T: int
    Q: int
    layout: FieldLayout
    lengths: Tuple[int, ...]
    target: FieldLayout
    target_lengths: Tuple[int, ...]
    t0: int = 0
    decode_field: str = 'Tape'
    aux: Tuple[str, ...] = ()
    constants: Tuple[Tuple[str, str], ...] = ()
    completeness_depth: int = 1

    def __post_init__(self):
        if self.S < 1 or self.T < 1:
            raise LayoutError("S and T must be positive")
        if len(self.lengths) != len(self.layout):
            raise LayoutError("one length per simulating field is required")
        if len(self.target_lengths) != len(self.target):
            raise LayoutError("one length per simulated field is required")
        if chi_length(self.target_lengths) > self.S:
            raise LayoutError(f"S = {self.S} is below the encoding length {chi_length(self.target_lengths)}")
        for label in (self.decode_field,) + self.aux + tuple(label for label, _ in self.constants):
            self.layout.index(label)

    @property
    def nontrivial(self) -> bool:
        return self.S > 1 and self.T > 1

    @property
    def fixed_fields(self) -> Tuple[str, ...]:
        return (ADDRESS_FIELDS + CLOCK_FIELDS + (self.decode_field,) + self.aux
                + tuple(label for label, _ in self.constants))

    @property
    def anonymous(self) -> Tuple[str, ...]:
        fixed = set(self.fixed_fields)
        return tuple(label for label in self.layout.labels if label not in fixed)

    def length(self, label: str) -> int:
        return self.lengths[self.layout.index(label)]

    def to_dict(self) -> Dict:
        return {'S': self.S, 'T': self.T, 'Q': self.Q, 't0': self.t0,
                'fields': list(self.layout.labels), 'lengths': list(self.lengths),
                'target': list(self.target.labels), 'target_lengths': list(self.target_lengths)}


@dataclass(frozen=True)
class ComposedSpec:
    """A tower of simulations read as one: level 0 simulates level 1, and so on."""
    levels: Tuple[SimulationSpec, ...]
    S: int
    T: int
    Q: int

    def to_dict(self) -> Dict:
        return {'S': self.S, 'T': self.T, 'Q': self.Q, 'levels': [level.to_dict() for level in self.levels]}


AnySpec = Union[SimulationSpec, ComposedSpec]


def _stripped(value: str, cause: str, colony: int, cell: int) -> str:
    try:
        return sharp_strip(value)
    except Undefined:
        raise DecodeError(f"{cause}: misplaced padding", colony, cell)


def _numeral(value: str, cause: str, colony: int, cell: int) -> int:
    digits = _stripped(value, cause, colony, cell)
    try:
        return bin_decode(digits)
    except EncodingError:
        raise DecodeError(f"{cause}: not a numeral", colony, cell)


def _decode_level(spec: SimulationSpec, config: PeriodicConfig) -> PeriodicConfig:
    if config.period % spec.S:
        raise DecodeError(f"period {config.period} is not a multiple of S = {spec.S}")
    layout = spec.layout
    if len(config.cells[0]) != len(layout):
        raise DecodeError(f"letters have {len(config.cells[0])} fields, expected {len(layout)}")
    addr = [layout.index(label) for label in ADDRESS_FIELDS if layout.has(label)]
    clock = [layout.index(label) for label in CLOCK_FIELDS if layout.has(label)]
    aux = [layout.index(label) for label in spec.aux]
    constants = [(layout.index(label), value) for label, value in spec.constants]
    tape = layout.index(spec.decode_field)
    letters = []
    for colony in range(config.period // spec.S):
        stream = []
        for j in range(spec.S):
            n = colony * spec.S + j
            cell = config.cells[n]
            if tuple(len(f) for f in cell) != spec.lengths:
                raise DecodeError('letter outside the simulating alphabet', colony, n)
            for i in addr:
                if _numeral(cell[i], 'address', colony, n) != j:
                    raise DecodeError('address off the colony grid', colony, n)
            for i in clock:
                if _numeral(cell[i], 'clock', colony, n) != spec.t0:
                    raise DecodeError('clock off the decoding phase', colony, n)
            for i in aux:
                if cell[i].strip(Config.PAD_SYMBOL):
                    raise DecodeError(f"field {layout.labels[i]} is not empty", colony, n)
            for i, value in constants:
                if _stripped(cell[i], 'constant', colony, n) != value:
                    raise DecodeError(f"field {layout.labels[i]} does not hold its constant", colony, n)
            stream.append(cell[tape])
        word = ''.join(stream)
        end = word.find(Config.TAPE_BLANK)
        encoding, tail = (word, '') if end < 0 else (word[:end], word[end:])
        if tail.strip(Config.TAPE_BLANK):
            raise DecodeError('stray symbol after the encoding', colony)
        try:
            letters.append(chi_decode(encoding, spec.target_lengths))
        except EncodingError as e:
            raise DecodeError(f"malformed encoding: {e}", colony)
    return PeriodicConfig(tuple(letters))


def decode(spec: AnySpec, config: PeriodicConfig) -> PeriodicConfig:
    """
    Decoded configuration of the simulated rule

    Args:
        spec: Simulation (or tower of simulations)
        config: Configuration of the simulating rule

    Returns:
        Simulated configuration; raises DecodeError outside the domain
    """
    if isinstance(spec, ComposedSpec):
        for level in spec.levels:
            config = decode(level, config)
        return config
    return _decode_level(spec, config)


def decodes(spec: AnySpec, config: PeriodicConfig) -> bool:
    try:
        decode(spec, config)
    except DecodeError:
        return False
    return True


def encode(spec: AnySpec, config: PeriodicConfig,
           anonymous: Optional[Mapping[str, str]] = None) -> PeriodicConfig:
    """
    Canonical preimage under decode

    Coordinates sit on the colony grid at the decoding clock, auxiliary
    fields are empty and each colony's Tape stream is the encoding of its
    letter followed by blanks. Anonymous fields are left empty unless a value
    is given for them.

    Args:
        spec: Simulation (or tower of simulations)
        config: Configuration of the simulated rule
        anonymous: Optional field label -> word for anonymous fields

    Returns:
        Configuration of the simulating rule
    """
    if isinstance(spec, ComposedSpec):
        for level in reversed(spec.levels):
            config = encode(level, config, anonymous)
        return config
    anonymous = dict(anonymous or {})
    layout = spec.layout
    constants = dict(spec.constants)
    for letter in config.cells:
        if tuple(len(f) for f in letter) != spec.target_lengths:
            raise LayoutError(f"letter {letter} does not have lengths {spec.target_lengths}")
    cells = []
    for letter in config.cells:
        stream = chi_encode(letter).ljust(spec.S, Config.TAPE_BLANK)
        for j in range(spec.S):
            cell = []
            for label, k in zip(layout.labels, spec.lengths):
                if label in ADDRESS_FIELDS:
                    value = sharp_pad(k, bin_encode(j))
                elif label in CLOCK_FIELDS:
                    value = sharp_pad(k, bin_encode(spec.t0))
                elif label == spec.decode_field:
                    value = stream[j].rjust(k, Config.PAD_SYMBOL)
                elif label in constants:
                    value = sharp_pad(k, constants[label])
                elif label in anonymous:
                    value = sharp_pad(k, anonymous[label])
                else:
                    value = Config.PAD_SYMBOL * k
                cell.append(value)
            cells.append(tuple(cell))
    return PeriodicConfig(tuple(cells))


def colony_lengths(layout: FieldLayout, S: int, T: int, q_max: int = 0) -> Tuple[int, ...]:
    """Smallest field lengths of a colony layout: numerals for coordinates, one symbol elsewhere."""
    head = 3 * q_max + 9
    lengths = []
    for label in layout.labels:
        if label in ADDRESS_FIELDS:
            lengths.append(bit_length(S))
        elif label in CLOCK_FIELDS:
            lengths.append(bit_length(T))
        elif label in ('Head_l', 'Head_r'):
            lengths.append(head)
        else:
            lengths.append(1)
    return tuple(lengths)


def target_labels(count: int) -> Tuple[str, ...]:
    return tuple(f"f{i}" for i in range(count))


def toy_spec(instance: RuleInstance, kprime: Optional[Sequence[int]] = None) -> SimulationSpec:
    """
    Simulation realized by a compute, shift, unive or toy unive instance

    The simulated layout has fields f0, f1, ... with the directions nu
    (all 0 for compute); compute instances need ``kprime``.
    """
    params = instance.params
    kprime = tuple(params.get('kprime', kprime or ()))
    if not kprime:
        raise LayoutError(f"{instance.generator}: simulated lengths are required")
    nu = tuple(params.get('nu', (0,) * len(kprime)))
    q_max = 0
    if 'p' in params:
        q_max = max(params['p'].state_lengths(), params['p_inv'].state_lengths())
    S, T = params['S'], params['T']
    layout = instance.layout
    aux = tuple(label for label in AUX_FIELDS if layout.has(label))
    return SimulationSpec(
        S=S, T=T, Q=0,
        layout=layout,
        lengths=colony_lengths(layout, S, T, q_max),
        target=simulated_layout(target_labels(len(kprime)), nu),
        target_lengths=kprime,
        aux=aux,
    )


def machine_permutation(p: TmProgram, p_inv: TmProgram, budget: int, lengths: Sequence[int]):
    """
    Partial permutation computed by p within ``budget`` steps, defined where p_inv maps the image back

    Returns:
        (forward, backward)
    """
    lengths = tuple(lengths)

    def run(machine: TmProgram, letter: Letter) -> Letter:
        result = tm_run(machine, letter, budget)
        if result.status != 'accepted' or tuple(len(f) for f in result.output) != lengths:
            raise Undefined('machine', f"no output within {budget} steps")
        return result.output

    def forward(letter: Letter) -> Letter:
        image = run(p, letter)
        if run(p_inv, image) != tuple(letter):
            raise Undefined('machine', 'inverse machine does not map the image back')
        return image

    def backward(letter: Letter) -> Letter:
        source = run(p_inv, letter)
        if run(p, source) != tuple(letter):
            raise Undefined('machine', 'machine does not map the preimage back')
        return source

    return forward, backward


def native_rule(instance: RuleInstance, kprime: Optional[Sequence[int]] = None) -> PpaRule:
    """The rule G that a compute, shift, unive or toy unive instance simulates."""
    spec = toy_spec(instance, kprime)
    params = instance.params
    if 'p' in params:
        forward, backward = machine_permutation(params['p'], params['p_inv'], params['U'], spec.target_lengths)
    else:
        forward = backward = tuple
    return PpaRule(spec.target, forward, backward, name=f"G[{instance.generator}]")
