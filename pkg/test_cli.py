#!/usr/bin/env python3
"""
Tests for run manifests and the command-line exit codes
"""

import json
import os
import sys
import tempfile

# Add the project root to Python path
ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, ROOT)

from fixpoint_ppa.modules.cli import (
    EXIT_INVALID, EXIT_OK, EXIT_REJECTED, ManifestError, RunManifest, build_parser, main,
)


def program(name):
    return os.path.join(ROOT, 'programs', name)


def test_parser():
    """Subcommands and their defaults"""
    print("🧪 Testing the argument parser...")
    args = build_parser().parse_args(['verify', 'cover', '--depth', '3'])
    assert args.suite == 'cover' and args.depth == 3 and args.toy == 'all'
    args = build_parser().parse_args(['solve', 'toy-unive', '--kprime', '2,1'])
    assert args.kprime == (2, 1) and args.p == 'identity'
    try:
        build_parser().parse_args(['verify', 'nope'])
        assert False, "unknown suite"
    except SystemExit:
        pass
    print("✅ Argument parser OK")


def test_manifests():
    """Manifests need a rule and exactly one kind of configuration"""
    print("🧪 Testing run manifests...")
    manifest = RunManifest.load(program('coordi_run.json'))
    assert manifest.up == 10 and manifest.field_label == 'Clock'
    assert RunManifest.from_dict(manifest.to_dict()).to_dict() == manifest.to_dict()
    instance = manifest.instance()
    assert manifest.initial_config(instance).period == 8

    bad = [
        {},
        {'rule': {'generator': 'coordi', 'params': {'S': 2, 'T': 2}}},
        {'rule': {'generator': 'coordi'}, 'config': {'letters': ['4|4|4|4'], 'simulated': ['0']}},
        {'rule': {'generator': 'coordi'}, 'config': {'letters': ['4|4|4|4']}, 'steps': {'up': -1}},
    ]
    for data in bad:
        try:
            RunManifest.from_dict(data)
            assert False, f"expected ManifestError for {data}"
        except ManifestError:
            pass
    unknown = RunManifest.from_dict({'rule': {'generator': 'nope'}, 'config': {'letters': ['0']}})
    try:
        unknown.instance()
        assert False, "expected ManifestError"
    except ManifestError:
        pass
    print("✅ Run manifests OK")


def test_run_command():
    """run writes a trace and reports rejections through the exit code"""
    print("🧪 Testing the run command...")
    with tempfile.TemporaryDirectory() as tmp:
        code = main(['run', program('coordi_run.json'), '--output-dir', tmp])
        assert code == EXIT_OK
        with open(os.path.join(tmp, 'coordi_run.ndjson')) as f:
            records = [json.loads(line) for line in f]
        assert len(records) == 11 and all(r['status'] == 'ok' for r in records)
        assert os.path.exists(os.path.join(tmp, 'coordi_run.pgm'))

        broken = os.path.join(tmp, 'broken.json')
        with open(broken, 'w') as f:
            json.dump({'rule': {'generator': 'coordi', 'params': {'S': 4, 'T': 5}},
                       'config': {'letters': ['444|441|444|444']}, 'steps': {'up': 2}}, f)
        assert main(['run', broken, '--output-dir', tmp]) == EXIT_REJECTED
        with open(os.path.join(tmp, 'broken.ndjson')) as f:
            records = [json.loads(line) for line in f]
        assert records[-1]['status'] == 'rejected'

        assert main(['run', os.path.join(tmp, 'missing.json')]) == EXIT_INVALID
    print("✅ Run command OK")


def test_solve_compile_reduce():
    """Solver, compiler and reduction commands write their records"""
    print("🧪 Testing solve, compile and reduce...")
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, 'witness.json')
        assert main(['solve', 'toy-unive', '--out', out]) == EXIT_OK
        with open(out) as f:
            witness = json.load(f)
        assert (witness['S'], witness['T'], witness['U']) == (8, 13, 1)

        assert main(['compile', program('swap.perm'), '--lengths', '1,1', '--check',
                     '--out-dir', tmp]) == EXIT_OK
        with open(os.path.join(tmp, 'swap.json')) as f:
            record = json.load(f)
        assert record['defined'] == 25 and record['differential']['status'] == 'pass'
        assert os.path.exists(os.path.join(tmp, 'swap_inv.tm'))

        out = os.path.join(tmp, 'halting.json')
        assert main(['reduce', 'halting', '--tm', program('countdown5.tm'), '--levels', '8',
                     '--out', out]) == EXIT_OK
        with open(out) as f:
            assert json.load(f)['first_undefined'] == 5
    print("✅ Solve, compile and reduce OK")


def test_directions_and_verify():
    """Direction queries and a property suite through the command line"""
    print("🧪 Testing directions and verify...")
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, 'theta.json')
        assert main(['directions', 'theta', '--word', '120', '--out', out]) == EXIT_OK
        with open(out) as f:
            assert json.load(f)['interval'] == {'lo': '5/12', 'hi': '7/12'}
        assert main(['directions', 'search', '--x', '2', '--depth', '3']) == EXIT_INVALID

        report = os.path.join(tmp, 'cover.json')
        assert main(['verify', 'cover', '--depth', '3', '--report', report]) == EXIT_OK
        with open(report) as f:
            result = json.load(f)
        assert result['status'] == 'pass' and len(result['runs']) == 3
    print("✅ Directions and verify OK")


def main_tests():
    """Run all command-line tests"""
    print("🚀 Starting Command Line Tests")
    print("=" * 50)

    tests = [test_parser, test_manifests, test_run_command, test_solve_compile_reduce,
             test_directions_and_verify]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All command line tests passed!")
    else:
        print("❌ Some command line tests failed.")
    return success


if __name__ == "__main__":
    success = main_tests()
    sys.exit(0 if success else 1)
