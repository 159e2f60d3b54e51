"""
Run manifests: a rule, an initial configuration, step counts and export targets

A manifest is a JSON object:

    {
      "rule": {"generator": "coordi", "params": {"S": 4, "T": 5}},
      "config": {"letters": ["0|0|0|0", ...]}          # or
      "config": {"simulated": ["0|1"], "s": 0},        # encoded with the rule's simulation
      "steps": {"down": 0, "up": 12},
      "exports": {"ndjson": "output/run.ndjson", "pgm": "output/run.pgm", "field": "Clock"},
      "seed": 1729
    }

"rule" may also be the path of a rule manifest written by RuleInstance.write_manifest.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import parse_letter
from fixpoint_ppa.modules.ppa import PeriodicConfig
from fixpoint_ppa.modules.turing import (
    TmProgram, bit_flip_machine, identity_machine, swap_machine,
)
from fixpoint_ppa.modules.rules import (
    RuleInstance, make_chekka, make_compute, make_coordi, make_gamma, make_hier, make_shift,
    make_toy_unive, make_unive,
)
from fixpoint_ppa.modules.simulation import encode, toy_spec

logger = logging.getLogger(__name__)

RUNNABLE = ('coordi', 'gammaU', 'compute', 'shift', 'unive', 'toyUnive', 'chekka', 'hier')


class ManifestError(ValueError):
    """A manifest is missing a key or names something that cannot be built."""


NAMED_MACHINES = {
    'identity': identity_machine,
    'bitflip': bit_flip_machine,
    'swap': lambda: swap_machine((1, 1)),
}


def load_machine(ref: str, base_dir: str = '.') -> TmProgram:
    """A machine from a toy name, a .tm program file or a code word over 0..3."""
    if ref in NAMED_MACHINES:
        return NAMED_MACHINES[ref]()
    path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
    if os.path.exists(path):
        with open(path) as f:
            return TmProgram.from_text(f.read())
    if ref and all(c in '0123' for c in ref):
        return TmProgram.from_code(ref)
    raise ManifestError(f"unknown machine {ref!r}")


def _ints(value) -> tuple:
    if isinstance(value, str):
        return tuple(int(v) for v in value.split(',') if v.strip())
    return tuple(int(v) for v in value)


def build_instance(spec: Dict, base_dir: str = '.') -> RuleInstance:
    """
    Build a runnable rule instance from {"generator": ..., "params": {...}}

    Machines in the parameters are toy names, .tm files or code words.
    """
    generator = spec.get('generator')
    params = dict(spec.get('params', {}))
    if generator not in RUNNABLE:
        raise ManifestError(f"generator {generator!r} cannot be run; expected one of {RUNNABLE}")
    try:
        if generator == 'coordi':
            return make_coordi(int(params['S']), int(params['T']))
        if generator == 'gammaU':
            return make_gamma(load_machine(params['p'], base_dir))
        if generator in ('chekka', 'hier'):
            kprime = _ints(params['kprime'])
            S, T = int(params['S']), int(params.get('T', 1))
            if generator == 'chekka':
                return make_chekka(kprime, S, T)
            return make_hier(kprime, int(params.get('index', 0)), str(params.get('word', '')), S, T)
        if generator == 'shift':
            return make_shift(_ints(params['nu']), _ints(params['kprime']), int(params['S']),
                              int(params['T']), int(params.get('t0', 0)))
        p = load_machine(params['p'], base_dir)
        p_inv = load_machine(params.get('p_inv', params['p']), base_dir)
        if generator == 'compute':
            return make_compute(int(params['S']), int(params['T']), int(params['U']), p, p_inv,
                                int(params.get('t0', 0)))
        optional = {key: int(params[key]) for key in ('S', 'T', 'U') if key in params}
        if generator == 'toyUnive':
            return make_toy_unive(_ints(params['nu']), _ints(params['kprime']), p, p_inv,
                                  t0=int(params.get('t0', 0)), force=bool(params.get('force', False)),
                                  **optional)
        return make_unive(_ints(params['nu']), _ints(params['kprime']), optional['S'], optional['T'],
                          optional['U'], p, p_inv, int(params.get('t0', 0)),
                          force=bool(params.get('force', False)))
    except KeyError as e:
        raise ManifestError(f"{generator}: missing parameter {e.args[0]!r}")


@dataclass
class RunManifest:
    """Everything a run depends on; two runs of the same manifest write the same bytes."""
    rule: Dict
    letters: List[str] = field(default_factory=list)
    simulated: List[str] = field(default_factory=list)
    shift: int = 0
    down: int = 0
    up: int = 0
    ndjson: Optional[str] = None
    pgm: Optional[str] = None
    png: Optional[str] = None
    csv: Optional[str] = None
    field_label: Optional[str] = None
    seed: int = Config.SEED
    base_dir: str = '.'

    @classmethod
    def from_dict(cls, data: Dict, base_dir: str = '.') -> 'RunManifest':
        if not isinstance(data, dict) or 'rule' not in data:
            raise ManifestError("a run manifest needs a 'rule'")
        rule = data['rule']
        if isinstance(rule, str):
            path = rule if os.path.isabs(rule) else os.path.join(base_dir, rule)
            try:
                with open(path) as f:
                    rule = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                raise ManifestError(f"cannot read rule manifest {path}: {e}")
        config = data.get('config', {})
        letters = list(config.get('letters', []))
        simulated = list(config.get('simulated', []))
        if bool(letters) == bool(simulated):
            raise ManifestError("config needs exactly one of 'letters' or 'simulated'")
        steps = data.get('steps', {})
        exports = data.get('exports', {})
        down, up = int(steps.get('down', 0)), int(steps.get('up', 0))
        if down < 0 or up < 0:
            raise ManifestError("step counts must be non-negative")
        return cls(
            rule=rule, letters=letters, simulated=simulated, shift=int(config.get('s', 0)),
            down=down, up=up,
            ndjson=exports.get('ndjson'), pgm=exports.get('pgm'), png=exports.get('png'),
            csv=exports.get('csv'), field_label=exports.get('field'),
            seed=int(data.get('seed', Config.SEED)), base_dir=base_dir,
        )

    @classmethod
    def load(cls, path: str) -> 'RunManifest':
        try:
            with open(path) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ManifestError(f"cannot read manifest {path}: {e}")
        return cls.from_dict(data, os.path.dirname(os.path.abspath(path)))

    def instance(self) -> RuleInstance:
        return build_instance(self.rule, self.base_dir)

    def initial_config(self, instance: RuleInstance) -> PeriodicConfig:
        if self.letters:
            config = PeriodicConfig(tuple(parse_letter(text) for text in self.letters))
            if any(len(cell) != len(instance.layout) for cell in config.cells):
                raise ManifestError(f"letters must have {len(instance.layout)} fields")
            return config
        simulated = PeriodicConfig(tuple(parse_letter(text) for text in self.simulated))
        kprime = self.rule.get('params', {}).get('kprime')
        spec = toy_spec(instance, _ints(kprime) if kprime is not None else None)
        return encode(spec, simulated).rotate(self.shift)

    def to_dict(self) -> Dict:
        config: Dict[str, Union[List[str], int]] = (
            {'letters': self.letters} if self.letters else {'simulated': self.simulated, 's': self.shift})
        exports = {key: value for key, value in (('ndjson', self.ndjson), ('pgm', self.pgm),
                                                 ('png', self.png), ('csv', self.csv),
                                                 ('field', self.field_label)) if value}
        return {'rule': self.rule, 'config': config, 'steps': {'down': self.down, 'up': self.up},
                'exports': exports, 'seed': self.seed}
