#!/usr/bin/env python3
"""
Tests for simulation specs, the verifier, composition and the property suites
"""

import os
import sys

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.modules.encoding import chi_encode
from fixpoint_ppa.modules.ppa import PeriodicConfig, iterate
from fixpoint_ppa.modules.rules import make_shift, make_toy_unive
from fixpoint_ppa.modules.simulation import (
    ComposedSpec, DecodeError, chekka_layout_ok, colony_origin, composed_parameters, compose_specs,
    composition_check, compute_check, coordinate_config, coordinate_suite, decode, decodes, encode,
    halting_check, hier_prefix_ok, in_coordinate_grid, instance_reversibility, native_rule,
    nested_rock_membership, origin_counter, period_suite, rock_skeleton, sequence_suite, shift_check,
    son_father_suite, toy_machines, toy_spec, two_level_tower, unive_suite, verify_simulation,
)

SAMPLE = PeriodicConfig.of([('0', '1'), ('2', '3')])


def shift_tower():
    instance = make_shift((1, -1), (1, 1), 8, 9)
    return instance.to_ppa(), toy_spec(instance)


def test_coordinates():
    """Grid configurations and the koo suite"""
    print("🧪 Testing coordinates...")
    config = coordinate_config(4, 5, 1, 2, 8)
    assert config.cells[0] == ('441', '441', '410', '410')
    assert in_coordinate_grid(4, config)
    assert not in_coordinate_grid(4, coordinate_config(4, 5, 0, 0, 9))
    broken = config.replace_field(1, ('444',) + config.column(1)[1:])
    assert not in_coordinate_grid(4, broken)

    result = coordinate_suite(max_S=4, max_T=4, samples=40, seed=5)
    assert result['status'] == 'pass', result['failures'][:1]
    assert result['checked'] == 40
    print("✅ Coordinates OK")


def test_encode_decode():
    """Canonical encodings decode back; off-grid or dirty configurations do not"""
    print("🧪 Testing encode and decode...")
    _, spec = shift_tower()
    c = encode(spec, SAMPLE)
    assert c.period == 2 * spec.S
    assert decode(spec, c) == SAMPLE
    tape = spec.layout.index('Tape')
    assert ''.join(c.column(tape)[:spec.S]) == chi_encode(('0', '1'))
    assert not decodes(spec, c.rotate(1))
    dirty = c.replace_field(spec.layout.index('Tape_r'), ('1',) + ('4',) * (c.period - 1))
    try:
        decode(spec, dirty)
        assert False, "an auxiliary field is not empty"
    except DecodeError as e:
        assert e.colony == 0 and e.cell == 0
    print("✅ Encode and decode OK")


def test_shift_simulation():
    """shift moves each simulated field by its direction in one work period"""
    print("🧪 Testing shift...")
    F, spec = shift_tower()
    G = native_rule(make_shift((1, -1), (1, 1), 8, 9))
    after = decode(spec, iterate(F, encode(spec, SAMPLE), spec.T))
    assert after == SAMPLE.rotate(1)
    result = verify_simulation(F, G, spec, SAMPLE)
    assert result['status'] == 'pass', result['records']
    assert shift_check(samples=6)['status'] == 'pass'
    print("✅ Shift OK")


def test_compute_and_unive():
    """compute applies the toy permutation; unive adds the shift for each direction pattern"""
    print("🧪 Testing compute and unive...")
    result = compute_check('bitflip', period=2, samples=6)
    assert result['status'] == 'pass', result['failures'][:1]

    p, p_inv, kprime = toy_machines('identity')
    instance = make_toy_unive((1, -1), kprime, p, p_inv)
    spec = toy_spec(instance)
    assert (spec.S, spec.T, instance.params['U']) == (8, 13, 1)
    after = decode(spec, iterate(instance.to_ppa(), encode(spec, SAMPLE), spec.T))
    assert after == SAMPLE.rotate(1)

    result = unive_suite('swap', patterns=[(1, -1), (0, 0)], samples=3)
    assert result['status'] == 'pass', result['patterns']
    assert (result['S'], result['T'], result['U']) == (34, 103, 17)
    assert len(result['patterns']) == 2
    try:
        toy_machines('nope')
        assert False, "unknown toy"
    except ValueError:
        pass
    print("✅ Compute and unive OK")


def test_son_father():
    """chekka and hier accept exactly the well-formed colony streams"""
    print("🧪 Testing son-father checks...")
    stream = chi_encode(('0', '1')) + '33'
    assert chekka_layout_ok(stream, (1, 1))
    assert not chekka_layout_ok('2020200133', (1, 1))
    assert not chekka_layout_ok(chi_encode(('0', '1')) + '30', (1, 1))
    assert hier_prefix_ok(stream, (1, 1), 0, '0')
    assert hier_prefix_ok(stream, (1, 1), 1, '1')
    assert not hier_prefix_ok(stream, (1, 1), 1, '0')

    result = son_father_suite((1, 1), widths=(8, 16, 32))
    assert result['status'] == 'pass', result['failures'][:1]
    print("✅ Son-father checks OK")


def test_composition():
    """Composed parameters against origins read off a decoded two-level tower"""
    print("🧪 Testing composition...")
    levels = ((2, 3, 1), (3, 4, 2))
    assert composed_parameters(levels) == (6, 12, 8)
    assert origin_counter(levels, 12) == 8
    assert origin_counter(levels, 11) == 3

    tower = two_level_tower()
    (F0, lower), (_, upper) = tower
    assert (lower.S, lower.T, upper.S, upper.T) == (64, 65, 8, 9)
    top = PeriodicConfig.of([('0', '1')])
    config = encode(compose_specs([lower, upper]), top)
    assert config.period == 512
    assert colony_origin(tower, config) == 0
    assert colony_origin(tower, iterate(F0, config, 2).rotate(67)) == 512 - 67
    assert colony_origin(tower, config.rotate(1).replace_field(0, ('4' * 7,) * 512)) is None

    result = composition_check(tower, top)
    assert result['status'] == 'pass', result['failures'][:1]
    assert (result['S'], result['T'], result['Q']) == (512, 585, 0)
    assert result['closed_form'] == [6, 12, 8]
    try:
        composition_check(tower, top, steps=(65,))
        assert False, "steps past the level-0 period"
    except ValueError:
        pass

    _, spec = shift_tower()
    tower = compose_specs([spec, spec])
    assert isinstance(tower, ComposedSpec)
    assert (tower.S, tower.T) == (64, 81)
    assert len(compose_specs([tower, spec]).levels) == 3
    assert compose_specs([spec]) is spec
    try:
        compose_specs([])
        assert False, "expected ValueError"
    except ValueError:
        pass
    print("✅ Composition OK")


def test_rock_membership():
    """Phases of a shifted and advanced encoding are read back level by level"""
    print("🧪 Testing nested membership...")
    F, spec = shift_tower()
    reached = iterate(F, encode(spec, SAMPLE), 3).rotate(2)
    result = nested_rock_membership([(F, spec)], reached, 1)
    assert result['status'] == 'ok'
    assert result['phases'] == [(2, 3)]
    assert result['config'] == SAMPLE
    assert rock_skeleton([(F, spec)], reached, 1) == [(2, 3)]

    addr = spec.layout.index('Addr')
    flattened = reached.replace_field(addr, ('4' * spec.length('Addr'),) * reached.period)
    assert nested_rock_membership([(F, spec)], flattened, 1)['status'] == 'rejected'
    assert rock_skeleton([(F, spec)], flattened, 1) is None
    try:
        nested_rock_membership([(F, spec)], reached, 2)
        assert False, "depth exceeds the tower"
    except ValueError:
        pass

    tower = two_level_tower()
    (F0, lower), (_, upper) = tower
    top = PeriodicConfig.of([('0', '1')])
    encoded = encode(lower, encode(upper, top))
    result = nested_rock_membership(tower, encoded, 2)
    assert result['status'] == 'ok'
    assert result['phases'] == [(0, 0), (0, 0)]
    assert result['config'] == top

    # cell 67 is address 3 of the second lower colony
    reached = iterate(F0, encoded, 2).rotate(67)
    assert rock_skeleton(tower, reached, 2) == [(3, 2), (1, 0)]
    assert nested_rock_membership(tower, reached, 2)['config'] == top
    assert nested_rock_membership(tower, reached, 1)['config'] == encode(upper, top).rotate(1)
    print("✅ Nested membership OK")


def test_periods_and_reversibility():
    """Period transfer and reversibility of a checked toy unive"""
    print("🧪 Testing periods and reversibility...")
    result = period_suite('identity', period=2, samples=3)
    assert result['status'] == 'pass', result['failures'][:1]
    result = instance_reversibility('identity', starts=4)
    assert result['status'] == 'pass', result['failures'][:1]
    assert result['defined'] > 0
    print("✅ Periods and reversibility OK")


def test_halting_and_sequences():
    """Halting levels become empty; certified sequences keep their ratios"""
    print("🧪 Testing halting and sequences...")
    result = halting_check(2, 4)
    assert result['status'] == 'pass', result['failures']
    assert result['first_undefined'] == 2
    assert [row['defined'] for row in result['levels']] == [True, True, False, False]
    assert all('rejected_at' in row for row in result['levels'][2:])

    result = sequence_suite(levels=8)
    assert result['status'] == 'pass', result['failures'][:3]
    assert [family['family'] for family in result['families']] == ['hieraA', 'hieraB', 'realiSeq']
    print("✅ Halting and sequences OK")


def main():
    """Run all simulation tests"""
    print("🚀 Starting Simulation Tests")
    print("=" * 50)

    tests = [test_coordinates, test_encode_decode, test_shift_simulation, test_compute_and_unive,
             test_son_father, test_composition, test_rock_membership,
             test_periods_and_reversibility, test_halting_and_sequences]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All simulation tests passed!")
    else:
        print("❌ Some simulation tests failed.")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
