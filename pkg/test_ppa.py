#!/usr/bin/env python3
"""
Tests for the partial partition automaton engine and its exports
"""

import json
import os
import sys
import tempfile

import pandas as pd

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.modules.encoding import Undefined
from fixpoint_ppa.modules.ppa import (
    FieldLayout, LayoutError, PeriodicConfig, PpaRule, StepRejected,
    build_strip, check_local_validity, disjoint_union, find_periods, gray_palette, iterate,
    omega_truncated, orbit, restrict, spacetime_array, spacetime_frame, step_backward,
    step_forward, step_window, trace_records, write_csv, write_ndjson, write_pgm,
)


def _no_sharp_left(letter):
    if letter[0] == '4':
        raise Undefined('test', 'left field holds a pad')
    return letter


def movers():
    """Two fields moving in opposite directions, undefined when the left field holds 4."""
    layout = FieldLayout(('Left', 'Right'), (1, -1))
    return PpaRule(layout, _no_sharp_left, _no_sharp_left, name='movers')


def sample():
    return PeriodicConfig.of([('0', '1'), ('1', '2'), ('2', '3')])


def test_layouts():
    """Field layouts and periodic configurations validate their input"""
    print("🧪 Testing layouts...")
    layout = FieldLayout.from_pairs([('A', 1), ('B', 0)])
    assert layout.index('B') == 1 and layout.direction('A') == 1
    assert len(layout.extend(FieldLayout(('C',), (-1,)))) == 3
    for labels, directions in ((('A', 'A'), (0, 0)), (('A',), (2,)), (('A', 'B'), (0,))):
        try:
            FieldLayout(labels, directions)
            assert False, f"expected LayoutError for {labels} {directions}"
        except LayoutError:
            pass
    try:
        layout.index('missing')
        assert False, "expected LayoutError"
    except LayoutError:
        pass

    config = sample()
    assert config.period == 3
    assert config[4] == ('1', '2')
    assert config.rotate(1).cells[0] == ('1', '2')
    assert config.rotate(-1).cells[0] == ('2', '3')
    assert config.column(1) == ('1', '2', '3')
    assert config.replace_field(0, ('4', '4', '4')).column(0) == ('4', '4', '4')
    assert config.to_text() == ['0|1', '1|2', '2|3']
    for cells in ([], [('0',), ('0', '1')]):
        try:
            PeriodicConfig.of(cells)
            assert False, f"expected LayoutError for {cells}"
        except LayoutError:
            pass
    print("✅ Layouts OK")


def test_forward_backward():
    """Fields move by their direction and the backward step undoes it"""
    print("🧪 Testing forward and backward steps...")
    rule = movers()
    config = sample()
    after = step_forward(rule, config)
    assert after.cells == (('2', '2'), ('0', '3'), ('1', '1'))
    assert step_backward(rule, after) == config
    assert iterate(rule, iterate(rule, config, 5), -5) == config
    assert iterate(rule, config, 3) == config
    rows = orbit(rule, config, 3)
    assert len(rows) == 4 and rows[1] == after
    print("✅ Steps OK")


def test_rejections():
    """Undefined letters stop a run with the failing time and cell"""
    print("🧪 Testing rejections...")
    rule = movers()
    bad = PeriodicConfig.of([('0', '1'), ('4', '2')])
    try:
        iterate(rule, bad, 3, start_time=10)
        assert False, "expected StepRejected"
    except StepRejected as e:
        assert e.time == 11 and e.cell == 1
        record = e.record()
        assert record['status'] == 'rejected' and record['cell'] == 1
    assert omega_truncated(rule, sample(), 4)
    assert not omega_truncated(rule, bad, 1)

    try:
        step_forward(rule, PeriodicConfig.of([('0',)]))
        assert False, "a letter with the wrong field count must be rejected"
    except StepRejected:
        pass
    print("✅ Rejections OK")


def test_periods():
    """Periods of opposite movers on a 3-cell configuration are multiples of (3, 3)"""
    print("🧪 Testing period search...")
    report = find_periods(movers(), sample(), 6)
    assert report.periods == {(3, 3), (3, 6)}
    assert not report.partial and report.rejected_at is None

    report = find_periods(movers(), PeriodicConfig.of([('4', '0')]), 6)
    assert report.partial and report.rejected_at == 1
    assert report.periods == set()
    print("✅ Period search OK")


def test_strips_and_windows():
    """Strips, finite windows and local validity agree with the global step"""
    print("🧪 Testing strips and windows...")
    rule = movers()
    config = sample()
    strip = build_strip(rule, config, 2, 3)
    assert strip.height == 6 and strip.start_time == -2
    assert strip.rows[2] == config
    assert strip.rows[3] == step_forward(rule, config)

    window = list(config.cells) + list(config.cells)
    inner = step_window(rule, window)
    assert len(inner) == len(window) - 2
    assert tuple(inner[0]) == step_forward(rule, config).cells[1]

    pattern = [list(row.cells) * 2 for row in orbit(rule, config, 3)]
    assert check_local_validity(rule, pattern)
    pattern[2][2] = ('3', '3')
    assert not check_local_validity(rule, pattern)
    print("✅ Strips and windows OK")


def test_restriction_and_union():
    """Restricted rules reject outside the sub-alphabet; unions dispatch on field lengths"""
    print("🧪 Testing restriction and disjoint union...")
    rule = restrict(movers(), lambda letter: letter[1] != '3')
    try:
        step_forward(rule, sample())
        assert False, "a 3 in the right field leaves the sub-alphabet"
    except StepRejected:
        pass
    assert step_forward(rule, PeriodicConfig.of([('0', '1'), ('1', '2')])).period == 2

    def swap(letter):
        return (letter[1], letter[0])

    still = PpaRule(FieldLayout(('A', 'B'), (0, 0)), swap, swap, name='swap')
    union = disjoint_union([(movers(), (1, 1)), (still, (2, 2))])
    assert step_forward(union, PeriodicConfig.of([('01', '10')])).cells == (('10', '01'),)
    assert step_forward(union, sample()) == step_forward(movers(), sample())
    for config in (PeriodicConfig.of([('0', '1'), ('01', '10')]), PeriodicConfig.of([('012', '1')])):
        try:
            step_forward(union, config)
            assert False, f"expected StepRejected for {config.to_text()}"
        except StepRejected:
            pass
    try:
        disjoint_union([(movers(), (1, 1)), (still, (1, 1))])
        assert False, "overlapping alphabets must be refused"
    except LayoutError:
        pass
    print("✅ Restriction and union OK")


def test_exports():
    """Images, tables and traces are written from the same rows"""
    print("🧪 Testing exports...")
    rows = orbit(movers(), sample(), 3)
    palette = gray_palette(rows, 0)
    assert set(palette) == {'0', '1', '2'}
    assert min(palette.values()) == 0 and max(palette.values()) == 255
    array = spacetime_array(rows, 0)
    assert array.shape == (4, 3)

    frame = spacetime_frame(rows, start_time=-1)
    assert len(frame) == 12 and frame['time'].min() == -1

    records = trace_records(rows, StepRejected(4, 2, 'test'))
    assert [r['status'] for r in records] == ['ok'] * 4 + ['rejected']

    with tempfile.TemporaryDirectory() as tmp:
        pgm = write_pgm(rows, 0, os.path.join(tmp, 'img', 'run.pgm'))
        with open(pgm, 'rb') as f:
            assert f.read(2) == b'P5'
        csv = write_csv(rows, os.path.join(tmp, 'run.csv'))
        assert list(pd.read_csv(csv, dtype=str).columns) == ['time', 'cell', 'letter']
        trace = write_ndjson(records, os.path.join(tmp, 'run.ndjson'))
        with open(trace) as f:
            lines = [json.loads(line) for line in f]
        assert lines == records
        assert not os.path.exists(trace + '.tmp')
    print("✅ Exports OK")


def main():
    """Run all engine tests"""
    print("🚀 Starting PPA Engine Tests")
    print("=" * 50)

    tests = [test_layouts, test_forward_backward, test_rejections, test_periods,
             test_strips_and_windows, test_restriction_and_union, test_exports]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All engine tests passed!")
    else:
        print("❌ Some engine tests failed.")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
