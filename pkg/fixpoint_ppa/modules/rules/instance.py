"""
Rule instances: a listing bound to its parameters, layout and environment
"""
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from fixpoint_ppa.modules.encoding import Letter, bin_encode, empty_class_member
from fixpoint_ppa.modules.ppa import FieldLayout, LayoutError, PpaRule
from fixpoint_ppa.modules.permlang import Environment, Perm, field_names, permutation_pair, pretty_print, seq
from fixpoint_ppa.modules.turing import TmProgram
from fixpoint_ppa.modules.params import (
    InequalityError, InequalityReport, ParameterSequences,
    check_inequalities, solve_toy_unive, unive_inequalities, unive_witness, measure_times,
)
from .fields import (
    C_COORDI, C_UNIVE, C_SELF, C_HSIM, C_INTRU, C_SYNCOMP, C_REALI, FIELD_LISTS,
    layout_of, sealed,
)
from .gamma import GAMMA_FIELDS, gamma_pair
from .library import (
    chekka_listing, compute_listing, coordi_listing, hier_listing, hsim_listing, intru_listing,
    reali_listing, self_listing, shift_listing, syncomp_listing, toy_unive_listing, unive_listing,
)

logger = logging.getLogger(__name__)

GENERATORS = ('coordi', 'gammaU', 'compute', 'shift', 'unive', 'toyUnive', 'chekka', 'hier',
              'self', 'hsim', 'intru', 'syncomp', 'reali')

# levels listed in manifests of sequence-driven rules
MANIFEST_LEVELS = 4


def _jsonable(value):
    if isinstance(value, TmProgram):
        return value.code
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (int, str, bool, float)) or value is None:
        return value
    return str(value)


@dataclass
class RuleInstance:
    """A generated rule: program, layout and the parameters it was built from."""
    generator: str
    params: Dict
    layout: FieldLayout
    program: Optional[Perm]
    env: Environment
    report: Optional[InequalityReport] = None
    verified: bool = False
    alphabet: Optional[Callable[[Letter], bool]] = None
    sequences: Optional[ParameterSequences] = None
    pair: Optional[Tuple[Callable, Callable]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")
        if self.program is not None:
            unknown = [label for label in field_names(self.program) if not self.layout.has(label)]
            if unknown:
                raise LayoutError(f"{self.generator}: program uses fields outside the layout: {unknown}")

    @property
    def sealed(self) -> bool:
        if self.program is None:
            return True
        return sealed(self.layout, field_names(self.program))

    def permutations(self) -> Tuple[Callable, Callable]:
        if self.pair is None:
            self.pair = permutation_pair(self.program, self.env)
        return self.pair

    def to_ppa(self) -> PpaRule:
        forward, backward = self.permutations()
        return PpaRule(self.layout, forward, backward, name=self.generator, alphabet=self.alphabet)

    def source(self) -> str:
        return pretty_print(self.program) if self.program is not None else ''

    def manifest(self) -> Dict:
        record = {
            'generator': self.generator,
            'params': _jsonable(self.params),
            'layout': self.layout.to_dict(),
            'sealed': self.sealed,
            'verified': self.verified,
        }
        if self.report is not None:
            record['inequalities'] = self.report.to_dict()
        if self.sequences is not None:
            seqs = self.sequences
            record['sequences'] = {
                'family': seqs.recipe.family,
                'S': [seqs.S(n) for n in range(MANIFEST_LEVELS)],
                'T': [seqs.T(n) for n in range(MANIFEST_LEVELS)],
                'U': [seqs.U(n) for n in range(MANIFEST_LEVELS)],
            }
        return record

    def write_manifest(self, path: str) -> str:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        tmp = f"{path}.tmp"
        with open(tmp, 'w') as f:
            json.dump(self.manifest(), f, indent=2, sort_keys=True)
        os.replace(tmp, path)
        return path


def _env(fields, **extra) -> Environment:
    return Environment(tuple(label for label, _ in fields), **extra)


def _instance(generator: str, fields, program: Perm, params: Dict,
              env_names: Optional[Dict] = None, **kwargs) -> RuleInstance:
    env = _env(fields, **(env_names or {}))
    instance = RuleInstance(generator, params, layout_of(fields), program, env, **kwargs)
    logger.debug("built %s over %d fields", generator, len(fields))
    return instance


def _positive(**values: int) -> None:
    for name, v in values.items():
        if v < 1:
            raise ValueError(f"{name} must be at least 1, got {v}")


def make_coordi(S: int, T: int) -> RuleInstance:
    _positive(S=S, T=T)
    return _instance('coordi', C_COORDI, coordi_listing(S, T), {'S': S, 'T': T}, verified=True)


def make_gamma(program: TmProgram) -> RuleInstance:
    """gamma_U as a rule instance over (Tape, Head_l, Head_r)."""
    layout = layout_of(GAMMA_FIELDS)
    return RuleInstance('gammaU', {'p': program}, layout, None, Environment(layout.labels),
                        verified=True, pair=gamma_pair(program))


def make_compute(S: int, T: int, U: int, p: TmProgram, p_inv: TmProgram, t0: int = 0) -> RuleInstance:
    """compute on the colony grid: the four phases plus coordi."""
    _positive(S=S, T=T, U=U)
    program = seq(compute_listing(U, p.code, p_inv.code, t0), coordi_listing(S, T))
    params = {'S': S, 'T': T, 'U': U, 't0': t0, 'p': p, 'p_inv': p_inv}
    return _instance('compute', FIELD_LISTS['compute'], program, params)


def make_shift(nu: Sequence[int], kprime: Sequence[int], S: int, T: int, t0: int = 0) -> RuleInstance:
    if len(nu) != len(kprime):
        raise LayoutError("one direction per simulated field is required")
    _positive(S=S, T=T)
    program = seq(shift_listing(nu, kprime, S, t0), coordi_listing(S, T))
    params = {'nu': tuple(nu), 'kprime': tuple(kprime), 'S': S, 'T': T, 't0': t0}
    return _instance('shift', FIELD_LISTS['shift'], program, params)


def _unive_gate(name: str, witness: Dict, force: bool) -> InequalityReport:
    report = check_inequalities(unive_inequalities(name=name), witness)
    if not report.passed:
        if not force:
            raise InequalityError(report)
        logger.warning("%s built with failing constraints: %s", name,
                       ', '.join(row['constraint'] for row in report.failures()))
    return report


def make_unive(nu: Sequence[int], kprime: Sequence[int], S: int, T: int, U: int,
               p: TmProgram, p_inv: TmProgram, t0: int = 0, force: bool = False,
               times: Optional[Tuple[int, int]] = None) -> RuleInstance:
    """
    Universal rule simulating sigma^-nu o alpha, where p computes alpha and p_inv its inverse

    Args:
        nu: Directions of the simulated fields
        kprime: Lengths of the simulated fields
        S, T, U: Colony width, work period and computation budget
        p: Machine of alpha
        p_inv: Machine of alpha^-1
        t0: Clock at which the computation starts
        force: Build even when the inequalities fail
        times: Known running times (t_p, t_pinv); measured when omitted

    Returns:
        RuleInstance, verified when every inequality holds
    """
    if len(nu) != len(kprime):
        raise LayoutError("one direction per simulated field is required")
    _positive(S=S, T=T, U=U)
    t_p, t_pinv = measure_times(p, p_inv, kprime) if times is None else times
    q_max = max(p.state_lengths(), p_inv.state_lengths())
    witness = unive_witness(kprime, S, T, U, t_p, t_pinv, q_max, t0)
    report = _unive_gate('unive', witness, force)
    program = seq(unive_listing(nu, kprime, S, U, p.code, p_inv.code, t0), coordi_listing(S, T))
    params = {'nu': tuple(nu), 'kprime': tuple(kprime), 'S': S, 'T': T, 'U': U, 't0': t0,
              'p': p, 'p_inv': p_inv}
    return _instance('unive', C_UNIVE, program, params, report=report, verified=report.passed)


def make_toy_unive(nu: Sequence[int], kprime: Sequence[int], p: TmProgram, p_inv: TmProgram,
                   S: Optional[int] = None, T: Optional[int] = None, U: Optional[int] = None,
                   t0: int = 0, force: bool = False,
                   times: Optional[Tuple[int, int]] = None) -> RuleInstance:
    """
    unive with start-of-period checks, ready to run on small colonies

    Missing parameters are taken from the smallest solution of the unive
    inequalities; given ones override it and are re-checked.
    """
    if len(nu) != len(kprime):
        raise LayoutError("one direction per simulated field is required")
    witness, _ = solve_toy_unive(kprime, p, p_inv, t0, times)
    U = witness['U'] if U is None else U
    S = witness['S'] if S is None else S
    T = 4 * U + S + t0 + 1 if T is None else T
    _positive(S=S, T=T, U=U)
    witness = unive_witness(kprime, S, T, U, witness['t_p'], witness['t_pinv'], witness['q_max'], t0)
    report = _unive_gate('toyUnive', witness, force)
    program = toy_unive_listing(nu, kprime, S, T, U, p.code, p_inv.code, t0)
    params = {'nu': tuple(nu), 'kprime': tuple(kprime), 'S': S, 'T': T, 'U': U, 't0': t0,
              'p': p, 'p_inv': p_inv}
    return _instance('toyUnive', C_UNIVE, program, params, report=report, verified=report.passed)


def make_chekka(kprime: Sequence[int], S: int, T: int) -> RuleInstance:
    """Checks the colony layout of an encoding of 5^k' at every step."""
    _positive(S=S, T=T)
    program = seq(chekka_listing(kprime, len(kprime)), coordi_listing(S, T))
    return _instance('chekka', C_COORDI + (('Tape', 0),), program,
                     {'kprime': tuple(kprime), 'S': S, 'T': T}, verified=True)


def make_hier(kprime: Sequence[int], index: int, word: str, S: int, T: int) -> RuleInstance:
    """Checks that field ``index`` of every encoded colony letter starts with ``word``."""
    if not 0 <= index < len(kprime):
        raise LayoutError(f"field index {index} outside 0..{len(kprime) - 1}")
    _positive(S=S, T=T)
    program = seq(hier_listing(kprime, index, word), coordi_listing(S, T))
    return _instance('hier', C_COORDI + (('Tape', 0),), program,
                     {'kprime': tuple(kprime), 'index': index, 'word': word, 'S': S, 'T': T},
                     verified=True)


def _require_sealed(instance: RuleInstance) -> RuleInstance:
    if not instance.sealed:
        anonymous = sorted(set(instance.layout.labels) - set(field_names(instance.program)))
        raise LayoutError(f"{instance.generator} has anonymous fields {anonymous}")
    return instance


def make_self(solution: Optional[Dict] = None) -> RuleInstance:
    """
    The self-simulating rule; parameters and programs live in the letter

    Args:
        solution: Optional result of solve_self_sim whose report marks the instance verified
    """
    report = solution.get('report') if solution else None
    params = {key: solution[key] for key in ('r', 'S0', 'witness') if key in solution} if solution else {}
    instance = _instance('self', C_SELF, self_listing(), params, report=report,
                         verified=bool(report is not None and report.passed))
    return _require_sealed(instance)


def _sequence_env(seqs: ParameterSequences) -> Dict:
    return {
        'sequences': {'S': seqs.S, 'T': seqs.T, 'U': seqs.U},
        'vectors': {'k': seqs.k},
    }


def _over(seqs: ParameterSequences, fields) -> ParameterSequences:
    """The child letter has the generator's own fields, so k_{n+1} is sized over them."""
    return seqs.relabel(tuple(label for label, _ in fields))


def _certified(seqs: ParameterSequences, levels: int) -> Tuple[bool, Optional[InequalityReport]]:
    reports = seqs.certify(levels)
    failing = [r for r in reports if not r.passed]
    return not failing, (failing[0] if failing else (reports[-1] if reports else None))


def make_hsim(seqs: ParameterSequences, levels: int = MANIFEST_LEVELS) -> RuleInstance:
    """Level n simulates level n + 1 with the parameters S_n, T_n, U_n of a sequence recipe."""
    seqs = _over(seqs, C_HSIM)
    ok, report = _certified(seqs, levels)
    instance = _instance('hsim', C_HSIM, hsim_listing(), {'family': seqs.recipe.family, 'levels': levels},
                         report=report, verified=ok, sequences=seqs, env_names=_sequence_env(seqs))
    return _require_sealed(instance)


def make_intru(seqs: ParameterSequences, family: Callable[[int], Tuple[Callable, Callable]],
               levels: int = MANIFEST_LEVELS, name: str = 'alpha') -> RuleInstance:
    """hsim whose Other fields run the partial permutation family(n) at level n."""
    seqs = _over(seqs, C_INTRU)
    ok, report = _certified(seqs, levels)
    env = _sequence_env(seqs)
    env['intruders'] = {name: family}
    instance = _instance('intru', C_INTRU, intru_listing(name),
                         {'family': seqs.recipe.family, 'levels': levels, 'intruder': name},
                         report=report, verified=ok, sequences=seqs, env_names=env)
    return _require_sealed(instance)


def make_syncomp(seqs: ParameterSequences, p_prime: TmProgram, levels: int = MANIFEST_LEVELS) -> RuleInstance:
    """Levels indexed by the history word, filtered by the machine p'."""
    seqs = _over(seqs, C_SYNCOMP)
    ok, report = _certified(seqs, levels)
    instance = _instance('syncomp', C_SYNCOMP, syncomp_listing(p_prime.code),
                         {'family': seqs.recipe.family, 'levels': levels, 'p_prime': p_prime},
                         report=report, verified=ok, sequences=seqs, env_names=_sequence_env(seqs))
    return _require_sealed(instance)


def make_reali(seqs: ParameterSequences, p_prime: TmProgram, levels: int = MANIFEST_LEVELS) -> RuleInstance:
    """syncomp with a macro-shift and wait chosen by the directive digit in MShift."""
    if seqs.recipe.family != 'realiSeq':
        raise ValueError("reali needs a realiSeq recipe")
    seqs = _over(seqs, C_REALI)
    ok, report = _certified(seqs, levels)
    instance = _instance('reali', C_REALI, reali_listing(p_prime.code),
                         {'family': seqs.recipe.family, 'levels': levels, 'p_prime': p_prime},
                         report=report, verified=ok, sequences=seqs, env_names=_sequence_env(seqs))
    return _require_sealed(instance)


# Level alphabets

def _lengths_match(letter: Letter, labels: Sequence[str], lengths: Mapping[str, int]) -> bool:
    return len(letter) >= len(labels) and all(
        len(letter[i]) == lengths[label] for i, label in enumerate(labels) if label in lengths)


def _alphabet(labels: Sequence[str], lengths: Mapping[str, int], values: Mapping[str, str]) -> Callable[[Letter], bool]:
    index = {label: i for i, label in enumerate(labels)}

    def member(letter: Letter) -> bool:
        if not _lengths_match(letter, labels, lengths):
            return False
        return all(empty_class_member(letter, (index[label],), value) for label, value in values.items())

    return member


def hsim_alphabet(n: int, p: TmProgram, p_inv: TmProgram, lengths: Mapping[str, int]) -> Callable[[Letter], bool]:
    """Letters of level n: Level holds n, Prog and RevProg hold the programs, lengths k_n."""
    labels = tuple(label for label, _ in C_HSIM)
    return _alphabet(labels, lengths, {'Level': bin_encode(n), 'Prog': p.code, 'RevProg': p_inv.code})


def syncomp_alphabet(history: str, p: TmProgram, p_inv: TmProgram,
                     lengths: Mapping[str, int]) -> Callable[[Letter], bool]:
    """Letters whose history twins both hold ``history``."""
    labels = tuple(label for label, _ in C_SYNCOMP)
    return _alphabet(labels, lengths, {'MHist': history, 'MHist_r': history,
                                       'Prog': p.code, 'RevProg': p_inv.code})


def reali_alphabet(history: str, digit: int, p: TmProgram, p_inv: TmProgram,
                   lengths: Mapping[str, int]) -> Callable[[Letter], bool]:
    """syncomp letters whose directive twins both hold ``digit``."""
    if digit not in (0, 1, 2):
        raise ValueError(f"{digit} is not a directive digit")
    labels = tuple(label for label, _ in C_REALI)
    return _alphabet(labels, lengths, {'MHist': history, 'MHist_r': history,
                                       'MShift': str(digit), 'MShift_r': str(digit),
                                       'Prog': p.code, 'RevProg': p_inv.code})

