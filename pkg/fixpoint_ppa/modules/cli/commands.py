"""
Command-line surface: run, verify, solve, compile, directions, reduce, render, demo

Exit codes are shared by every subcommand: 0 success, 1 invalid input or
I/O error, 2 rejection or failed verification, 3 budget exceeded.
"""
import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import BudgetExceeded, EncodingError, parse_letter
from fixpoint_ppa.modules.turing import ProgramFormatError
from fixpoint_ppa.modules.ppa import (
    LayoutError, PeriodicConfig, StepRejected, step_backward, step_forward, trace_records,
    write_csv, write_ndjson, write_pgm, write_png,
)
from fixpoint_ppa.modules.permlang import (
    STRATEGIES, Environment, ParseError, compile_differential, compile_to_tm, parse, pretty_print,
)
from fixpoint_ppa.modules.rules import HaltingReduction, gamma_fidelity_suite
from fixpoint_ppa.modules.params import (
    FAMILIES, DependencyError, InequalityError, ParameterError, ProgramModel, SequenceRecipe,
    make_sequences, measure_lookup_fits, solve_self_sim, solve_toy_unive, witness_record, write_witness,
)
from fixpoint_ppa.modules.directions import (
    DirectionError, Slope, cover_check, cover_limit, cover_table, directive_search, fraction_text,
    rational, slope_to_circle, theta_interval, theta_limit,
)
from fixpoint_ppa.modules.simulation import (
    TOYS, composition_check, compute_check, coordinate_suite, halting_check, instance_reversibility,
    period_suite, sequence_suite, shift_check, son_father_suite, target_labels, unive_suite,
)
from .manifest import ManifestError, RunManifest, load_machine

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_REJECTED = 2
EXIT_BUDGET = 3

SUITES = ('gammaU', 'koo', 'compute', 'shift', 'unive', 'sonfather', 'composition', 'periods',
          'cover', 'sequences', 'reversibility', 'halting')

COVER_EPSILONS = ('0', '1/10', '41/100')


def configure_logging(level: Optional[str] = None) -> None:
    """Console plus file logging under Config.LOG_DIR; safe to call twice."""
    root = logging.getLogger()
    if getattr(root, '_fixpoint_configured', False):
        return
    os.makedirs(Config.LOG_DIR, exist_ok=True)
    logging.basicConfig(
        level=getattr(logging, (level or Config.LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(os.path.join(Config.LOG_DIR, Config.LOG_FILE)),
            logging.StreamHandler(sys.stderr),
        ],
    )
    root._fixpoint_configured = True


def write_json(path: str, data) -> str:
    """Write JSON through a temporary file so readers never see a partial report."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp = f"{path}.tmp"
    with open(tmp, 'w') as f:
        json.dump(data, f, indent=2, sort_keys=True, default=_jsonable)
    os.replace(tmp, path)
    return path


def _jsonable(value):
    if isinstance(value, Fraction):
        return fraction_text(value)
    if isinstance(value, (set, frozenset, tuple)):
        return sorted(value) if isinstance(value, (set, frozenset)) else list(value)
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    return str(value)


def _atomic(path: str, writer: Callable[[str], str]) -> str:
    """Run a file writer on a sibling temporary path, then move it into place."""
    root, ext = os.path.splitext(path)
    tmp = f"{root}.tmp{ext}"
    writer(tmp)
    os.replace(tmp, path)
    return path


def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _report(result: Dict, path: Optional[str]) -> None:
    if path:
        write_json(path, result)
        print(f"📄 Report written to {path}")


def _status_code(status: str) -> int:
    if status in ('pass', 'ok'):
        return EXIT_OK
    if status == 'budget':
        return EXIT_BUDGET
    return EXIT_REJECTED


# run

def cmd_run(args) -> int:
    manifest = RunManifest.load(args.manifest)
    instance = manifest.instance()
    rule = instance.to_ppa()
    config = manifest.initial_config(instance)
    print(f"🔧 Running {instance.generator} on a configuration of period {config.period}")

    rejection: Optional[StepRejected] = None
    below: List[PeriodicConfig] = []
    current = config
    try:
        for t in range(manifest.down):
            current = step_backward(rule, current, -t - 1)
            below.append(current)
    except StepRejected as e:
        rejection = e
    rows = list(reversed(below)) + [config]
    start_time = -len(below)
    current = config
    if rejection is None:
        try:
            for t in range(manifest.up):
                current = step_forward(rule, current, t + 1)
                rows.append(current)
        except StepRejected as e:
            rejection = e

    name = os.path.splitext(os.path.basename(args.manifest))[0]
    ndjson = manifest.ndjson or os.path.join(args.output_dir or Config.OUTPUT_DIR, f"{name}.ndjson")
    ndjson = _resolve(ndjson, args.output_dir)
    write_ndjson(trace_records(rows, rejection, start_time), ndjson)
    print(f"✅ Trace written to {ndjson} ({len(rows)} rows)")

    label = manifest.field_label or ('Tape' if instance.layout.has('Tape') else instance.layout.labels[0])
    index = instance.layout.index(label)
    if manifest.pgm:
        path = _resolve(manifest.pgm, args.output_dir)
        _atomic(path, lambda tmp: write_pgm(rows, index, tmp))
        print(f"🖼️ Space-time diagram of {label} written to {path}")
    if manifest.png:
        path = _resolve(manifest.png, args.output_dir)
        _atomic(path, lambda tmp: write_png(rows, index, tmp, title=instance.generator))
    if manifest.csv:
        path = _resolve(manifest.csv, args.output_dir)
        _atomic(path, lambda tmp: write_csv(rows, tmp, start_time))

    if rejection is not None:
        print(f"❌ Rejected at time {rejection.time}, cell {rejection.cell}: {rejection.reason}")
        return EXIT_REJECTED
    return EXIT_OK


def _resolve(path: str, output_dir: Optional[str]) -> str:
    if os.path.isabs(path):
        return path
    if output_dir:
        return os.path.join(output_dir, os.path.basename(path))
    return path


# verify

def _verify_cover(args) -> Dict:
    epsilons = args.eps.split(',') if args.eps else list(COVER_EPSILONS)
    runs = []
    status = 'pass'
    for eps in epsilons:
        result = cover_check(args.depth, eps)
        if result['status'] == 'pass':
            hi = rational(result['predicted']['hi'])
            gap = cover_limit(eps) - hi
            result['limit_gap'] = fraction_text(gap)
            if abs(gap) > Fraction(1, 2 ** args.depth):
                result['status'] = 'fail'
                result['reason'] = 'supremum further than 2^-n from its limit'
        runs.append(result)
        if result['status'] == 'budget' and status == 'pass':
            status = 'budget'
        elif result['status'] == 'fail':
            status = 'fail'
    return {'suite': 'cover', 'status': status, 'runs': runs}


def _verify_unive(args) -> Dict:
    toys = TOYS if args.toy == 'all' else (args.toy,)
    runs = [unive_suite(toy, period=args.period, samples=args.samples, probe=args.probe, seed=args.seed)
            for toy in toys]
    failed = [r for r in runs if r['status'] != 'pass']
    return {'suite': 'unive', 'status': 'fail' if failed else 'pass', 'runs': runs}


def _verify_reversibility(args) -> Dict:
    toys = TOYS if args.toy == 'all' else (args.toy,)
    runs = [instance_reversibility(toy, seed=args.seed) for toy in toys]
    failed = [r for r in runs if r['status'] != 'pass']
    return {'suite': 'reversibility', 'status': 'fail' if failed else 'pass', 'runs': runs}


def _suite_runner(args) -> Callable[[], Dict]:
    toy = 'identity' if args.toy == 'all' else args.toy
    return {
        'gammaU': lambda: gamma_fidelity_suite(args.machines, args.steps, args.seed),
        'koo': lambda: coordinate_suite(samples=args.samples, seed=args.seed),
        'compute': lambda: compute_check(args.toy if args.toy != 'all' else 'bitflip',
                                         samples=args.samples, seed=args.seed),
        'shift': lambda: shift_check(samples=args.samples, seed=args.seed),
        'unive': lambda: _verify_unive(args),
        'sonfather': lambda: son_father_suite(),
        'composition': lambda: composition_check(),
        'periods': lambda: period_suite(toy, samples=args.samples, seed=args.seed),
        'cover': lambda: _verify_cover(args),
        'sequences': lambda: sequence_suite(levels=args.levels),
        'reversibility': lambda: _verify_reversibility(args),
        'halting': lambda: halting_check(args.halt_at, args.levels or args.halt_at + 2),
    }[args.suite]


def cmd_verify(args) -> int:
    print(f"🧪 Verifying {args.suite}...")
    started = time.monotonic()
    try:
        result = _suite_runner(args)()
    except BudgetExceeded as e:
        result = {'suite': args.suite, 'status': 'budget', 'reason': str(e)}
    elapsed = time.monotonic() - started
    result['elapsed_seconds'] = round(elapsed, 3)
    if result['status'] != 'budget' and elapsed > Config.budget_seconds():
        logger.warning("%s took %.1fs, beyond the %.1fs budget", args.suite, elapsed, Config.budget_seconds())
    _report(result, args.report)
    marker = {'pass': '✅', 'budget': '⚠️'}.get(result['status'], '❌')
    print(f"{marker} {args.suite}: {result['status']} in {elapsed:.2f}s")
    if args.report is None:
        print(json.dumps(result, indent=2, sort_keys=True, default=_jsonable))
    return _status_code(result['status'])


# solve

def _fields_for(count: int, fields: Optional[str]) -> tuple:
    return tuple(fields.split(',')) if fields else target_labels(count)


def _perm_machines(path: str, kprime: tuple, fields: Optional[str]):
    with open(path) as f:
        program = parse(f.read(), _fields_for(len(kprime), fields))
    compiled = compile_to_tm(program, kprime, Environment(_fields_for(len(kprime), fields)))
    return compiled.forward, compiled.backward


def cmd_solve(args) -> int:
    if args.target == 'toy-unive':
        kprime = args.kprime
        if args.perm:
            p, p_inv = _perm_machines(args.perm, kprime, args.fields)
        else:
            p = load_machine(args.p)
            p_inv = load_machine(args.p_inv or args.p)
        witness, report = solve_toy_unive(kprime, p, p_inv, args.t0)
        record = witness_record(witness, report, p=p.code, p_inv=p_inv.code)
        out = args.out or os.path.join(Config.OUTPUT_DIR, 'toy_unive_witness.json')
        write_witness(out, record)
        print(f"{'✅' if report.passed else '❌'} S={witness['S']} T={witness['T']} U={witness['U']} -> {out}")
        return EXIT_OK if report.passed else EXIT_REJECTED

    if args.target == 'sequences':
        extra = {key: getattr(args, key) for key in ('Q', 'n0', 'r') if getattr(args, key) is not None}
        if args.S is not None:
            extra['S'] = args.S
        seqs = make_sequences(SequenceRecipe(args.family, **extra))
        reports = seqs.certify(args.levels)
        failing = [r for r in reports if not r.passed]
        verdict = seqs.verdict(args.levels)
        record = {
            'family': args.family,
            'levels': args.levels,
            'certified': not failing,
            'failing_levels': [r.name for r in failing][:20],
            'verdict': verdict,
        }
        if args.csv:
            table = seqs.to_frame(min(args.levels, 16))
            _atomic(args.csv, lambda tmp: table.to_csv(tmp, index=False))
        out = args.out or os.path.join(Config.OUTPUT_DIR, f"sequences_{args.family}.json")
        write_json(out, record)
        print(f"{'✅' if not failing else '❌'} {args.family}: {len(reports)} level checks, "
              f"verdict {verdict['verdict']} -> {out}")
        return EXIT_OK if not failing else EXIT_REJECTED

    fit, samples = measure_lookup_fits(args.fit_length)
    model = ProgramModel(args.size, args.inverse_size, args.state_length, fit, fit)
    solution = solve_self_sim(model, Fraction(args.ratio))
    record = dict(solution)
    record['model'] = model.to_dict()
    out = args.out or os.path.join(Config.OUTPUT_DIR, 'self_witness.json')
    write_json(out, record)
    if solution['status'] == 'infeasible':
        print(f"❌ No self-similar parameters found -> {out}")
        return EXIT_REJECTED
    witness = solution['witness']
    print(f"{'✅' if solution['status'] == 'ok' else '❌'} S=2^{witness['S'].bit_length() - 1}.. "
          f"ratio {float(solution['ratio']):.4f} ({solution['tag']}, "
          f"{'executable' if solution['executable'] else 'not executable'}) -> {out}")
    return _status_code(solution['status'])


# compile

def cmd_compile(args) -> int:
    fields = _fields_for(len(args.lengths), args.fields)
    with open(args.program) as f:
        program = parse(f.read(), fields)
    env = Environment(fields)
    compiled = compile_to_tm(program, args.lengths, env, strategy=args.strategy)
    out_dir = args.out_dir or Config.OUTPUT_DIR
    os.makedirs(out_dir, exist_ok=True)
    stem = os.path.splitext(os.path.basename(args.program))[0]
    for suffix, machine in (('', compiled.forward), ('_inv', compiled.backward)):
        path = os.path.join(out_dir, f"{stem}{suffix}.tm")
        _atomic(path, lambda tmp, m=machine: _write_text(tmp, m.to_text()))
    record = compiled.to_dict()
    record['source'] = pretty_print(program)
    if args.check:
        record['differential'] = compile_differential(program, args.lengths, env, strategy=args.strategy)
    write_json(os.path.join(out_dir, f"{stem}.json"), record)
    print(f"✅ Compiled {args.program} by {compiled.strategy}: {compiled.defined} defined letters, "
          f"{len(compiled.forward.states)} states -> {out_dir}")
    if args.check and record['differential']['status'] != 'pass':
        print("❌ Compiled machines disagree with the evaluator")
        return EXIT_REJECTED
    return EXIT_OK


def _write_text(path: str, text: str) -> str:
    with open(path, 'w') as f:
        f.write(text)
    return path


# directions

def cmd_directions(args) -> int:
    if args.action == 'theta':
        interval = theta_interval(args.word, args.eps)
        record = {'word': args.word, 'eps': args.eps, 'interval': interval.to_dict(),
                  'diameter': fraction_text(interval.diameter)}
        print(f"Θ({args.word}) = {interval}")
    elif args.action == 'limit':
        mid, error = theta_limit(args.word, args.eps, args.depth or len(args.word))
        x, y = slope_to_circle(Slope(mid))
        record = {'word': args.word, 'slope': fraction_text(mid), 'error': fraction_text(error),
                  'circle': [x, y]}
        print(f"θ ≈ {fraction_text(mid)} ± {fraction_text(error)}")
    elif args.action == 'cover':
        record = cover_check(args.depth, args.eps)
        if args.csv:
            table = cover_table(args.depth, args.eps)
            _atomic(args.csv, lambda tmp: table.to_csv(tmp, index=False))
        print(f"{'✅' if record['status'] == 'pass' else '❌'} cover at depth {args.depth}: {record['status']}")
    else:
        word = directive_search(args.x, args.eps, args.depth)
        record = {'x': args.x, 'word': word, 'interval': theta_interval(word, args.eps).to_dict()}
        print(f"✅ {args.x} lies in Θ({word})")
    _report(record, args.out)
    if args.out is None:
        print(json.dumps(record, indent=2, sort_keys=True, default=_jsonable))
    return _status_code(record.get('status', 'ok'))


# reduce

def cmd_reduce(args) -> int:
    machine = load_machine(args.tm)
    reduction = HaltingReduction(machine)
    record = reduction.manifest(args.levels)
    if args.toy:
        check = halting_check_for(reduction, args.levels)
        record['toy'] = check
    out = args.out or os.path.join(Config.OUTPUT_DIR, 'halting_reduction.json')
    write_json(out, record)
    first = record['first_undefined']
    print(f"✅ alpha_n defined for {sum(record['defined'])} of {args.levels} levels; "
          f"first undefined level: {first if first is not None else 'none'} -> {out}")
    return EXIT_OK


def halting_check_for(reduction: HaltingReduction, levels: int) -> Dict:
    first = reduction.first_undefined(levels)
    halt_at = first if first is not None else levels
    return halting_check(halt_at, min(levels, halt_at + 2))


# render

def cmd_render(args) -> int:
    rows = []
    rejection = None
    with open(args.trace) as f:
        for line in f:
            if not line.strip():
                continue
            record = json.loads(line)
            if record.get('status') == 'ok':
                rows.append(PeriodicConfig(tuple(parse_letter(cell) for cell in record['cells'])))
            else:
                rejection = record
    if not rows:
        print(f"❌ {args.trace} holds no configurations")
        return EXIT_INVALID
    if not 0 <= args.field < len(rows[0].cells[0]):
        print(f"❌ field index {args.field} outside the letters of {args.trace}")
        return EXIT_INVALID
    stem = os.path.splitext(args.trace)[0]
    pgm = args.pgm or f"{stem}.pgm"
    _atomic(pgm, lambda tmp: write_pgm(rows, args.field, tmp))
    print(f"🖼️ {pgm}")
    if args.png:
        _atomic(args.png, lambda tmp: write_png(rows, args.field, tmp, title=os.path.basename(stem)))
        print(f"🖼️ {args.png}")
    if rejection is not None:
        print(f"⚠️ Trace ends with a rejection at time {rejection.get('time')}")
    return EXIT_OK


# demo

def cmd_demo(args) -> int:
    print("🚀 Partial partition automata demo")
    print("=" * 40)
    checks = [
        ('coordinates', lambda: coordinate_suite(samples=64, seed=args.seed)),
        ('compute on bit flip', lambda: compute_check('bitflip', seed=args.seed)),
        ('unive on identity', lambda: unive_suite('identity', patterns=[(1, -1)], seed=args.seed)),
        ('composition', composition_check),
        ('cover at depth 4', lambda: cover_check(4, 0)),
    ]
    success = True
    for name, check in checks:
        result = check()
        ok = result['status'] == 'pass'
        success = success and ok
        print(f"{'✅' if ok else '❌'} {name}")
    print(f"\n{'🎉 All demo checks passed' if success else '⚠️ Some demo checks failed'}")
    return EXIT_OK if success else EXIT_REJECTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='fixpoint', description='Reversible partial partition automata')
    parser.add_argument('--seed', type=int, default=Config.SEED, help='PRNG seed for every sampled check')
    parser.add_argument('--log-level', default=None, help='Logging level (default from FIXPOINT_LOG_LEVEL)')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='Run a manifest and write its trace')
    run.add_argument('manifest')
    run.add_argument('--output-dir', default=None)
    run.set_defaults(handler=cmd_run)

    verify = sub.add_parser('verify', help='Run a property suite')
    verify.add_argument('suite', choices=SUITES)
    verify.add_argument('--machines', type=int, default=None)
    verify.add_argument('--steps', type=int, default=None)
    verify.add_argument('--toy', choices=TOYS + ('all',), default='all')
    verify.add_argument('--depth', type=int, default=Config.COVER_DEPTH)
    verify.add_argument('--eps', default=None, help="Comma separated rationals, e.g. 0,1/10,41/100")
    verify.add_argument('--samples', type=int, default=None)
    verify.add_argument('--period', type=int, default=1)
    verify.add_argument('--probe', type=int, default=8)
    verify.add_argument('--levels', type=int, default=None)
    verify.add_argument('--halt-at', type=int, default=5)
    verify.add_argument('--report', default=None, help='Write the JSON report here')
    verify.set_defaults(handler=cmd_verify)

    solve = sub.add_parser('solve', help='Solve parameter inequalities')
    solve.add_argument('target', choices=('toy-unive', 'sequences', 'self'))
    solve.add_argument('--kprime', type=_ints, default=(1, 1))
    solve.add_argument('--perm', default=None, help='Permutation program compiled into p and p^-1')
    solve.add_argument('--fields', default=None)
    solve.add_argument('--p', default='identity')
    solve.add_argument('--p-inv', default=None)
    solve.add_argument('--t0', type=int, default=0)
    solve.add_argument('--family', choices=FAMILIES, default='hieraA')
    solve.add_argument('--Q', type=int, default=None)
    solve.add_argument('--n0', type=int, default=None)
    solve.add_argument('--r', type=int, default=None)
    solve.add_argument('--S', type=int, default=None)
    solve.add_argument('--levels', type=int, default=Config.SEQUENCE_LEVELS)
    solve.add_argument('--size', type=int, default=4096)
    solve.add_argument('--inverse-size', type=int, default=4096)
    solve.add_argument('--state-length', type=int, default=8)
    solve.add_argument('--fit-length', type=int, default=3)
    solve.add_argument('--ratio', default='9/10')
    solve.add_argument('--csv', default=None)
    solve.add_argument('--out', default=None)
    solve.set_defaults(handler=cmd_solve)

    comp = sub.add_parser('compile', help='Compile a permutation program into machines')
    comp.add_argument('program')
    comp.add_argument('--lengths', type=_ints, required=True)
    comp.add_argument('--fields', default=None)
    comp.add_argument('--check', action='store_true', help='Compare the machines with the evaluator')
    comp.add_argument('--strategy', choices=STRATEGIES, default='auto',
                      help='passes, table, or auto (passes with a table fallback)')
    comp.add_argument('--out-dir', default=None)
    comp.set_defaults(handler=cmd_compile)

    dirs = sub.add_parser('directions', help='Exact slope intervals of directive words')
    dirs.add_argument('action', choices=('theta', 'limit', 'cover', 'search'))
    dirs.add_argument('--word', default='')
    dirs.add_argument('--eps', default='0')
    dirs.add_argument('--depth', type=int, default=Config.COVER_DEPTH)
    dirs.add_argument('--x', default='0')
    dirs.add_argument('--csv', default=None)
    dirs.add_argument('--out', default=None)
    dirs.set_defaults(handler=cmd_directions)

    red = sub.add_parser('reduce', help='Build an alpha_n family from a machine')
    red.add_argument('kind', choices=('halting',))
    red.add_argument('--tm', required=True)
    red.add_argument('--levels', type=int, default=16)
    red.add_argument('--toy', action='store_true', help='Also run the toy instantiations')
    red.add_argument('--out', default=None)
    red.set_defaults(handler=cmd_reduce)

    ren = sub.add_parser('render', help='Render an NDJSON trace as PGM (and PNG)')
    ren.add_argument('trace')
    ren.add_argument('--field', type=int, default=0)
    ren.add_argument('--pgm', default=None)
    ren.add_argument('--png', default=None)
    ren.set_defaults(handler=cmd_render)

    demo = sub.add_parser('demo', help='Run a few quick checks')
    demo.set_defaults(handler=cmd_demo)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except (BudgetExceeded, DependencyError) as e:
        logger.error("budget exceeded: %s", e)
        print(f"⚠️ Budget exceeded: {e}")
        return EXIT_BUDGET
    except InequalityError as e:
        logger.error("inequalities failed: %s", e)
        print(f"❌ {e}")
        return EXIT_REJECTED
    except (ManifestError, ParseError, ProgramFormatError, EncodingError, LayoutError, ParameterError,
            DirectionError, OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"❌ {args.command}: {e}")
        return EXIT_INVALID
