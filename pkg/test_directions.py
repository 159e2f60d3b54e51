#!/usr/bin/env python3
"""
Tests for exact slopes, non-expansive interval maps, Theta intervals and the directive cover
"""

import os
import sys
from fractions import Fraction

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.modules.directions import (
    HORIZONTAL, UNIT, VERTICAL, DirectionError, Slope, SlopeInterval,
    below_sqrt2_minus_1, circle_to_slope, cover_bounds, cover_check, cover_limit, cover_table,
    directive_search, directive_word, epsilon_vector, ne_map, ne_union, nested_ne_interval,
    reali_levels, realized_directions, slope_to_circle, theta_interval, theta_limit, union_report,
    word_digits,
)
from fixpoint_ppa.modules.params import SequenceRecipe, make_sequences
from fixpoint_ppa.modules.simulation import ne_pipeline_check


def test_slopes():
    """Parsing, interval arithmetic and the circle view"""
    print("🧪 Testing slopes...")
    assert Slope.parse('inf').infinite and Slope.parse('inf') == HORIZONTAL
    assert Slope.parse(' 3/6 ').value == Fraction(1, 2)
    assert str(Slope.parse('-1/2')) == '-1/2'
    for bad in (lambda: Slope.parse('0.5x'), lambda: SlopeInterval(Fraction(1), Fraction(0))):
        try:
            bad()
            assert False, "expected DirectionError"
        except DirectionError:
            pass
    try:
        SlopeInterval.point(0.5)
        assert False, "floats are not exact"
    except DirectionError:
        pass

    interval = SlopeInterval(Fraction(-1, 2), Fraction(1, 2))
    assert interval.diameter == 1 and interval.midpoint == 0
    assert interval.contains(Fraction(1, 2)) and not interval.contains(1)
    assert UNIT.includes(interval) and not interval.includes(UNIT)
    assert interval.scale(-2) == SlopeInterval(Fraction(-1), Fraction(1))
    assert interval.to_dict() == {'lo': '-1/2', 'hi': '1/2'}

    assert slope_to_circle(VERTICAL) == (0.0, 1.0)
    assert circle_to_slope(1.0, 0.0) == HORIZONTAL
    third = Slope(Fraction(1, 3))
    u, v = slope_to_circle(third)
    assert circle_to_slope(u, v) == third
    assert circle_to_slope(-u, -v) == third
    print("✅ Slopes OK")


def test_ne_maps():
    """Simulation maps directions affinely and shrinks the interval by S / T"""
    print("🧪 Testing non-expansive interval maps...")
    assert ne_map(UNIT, 2, 4, 2) == SlopeInterval(Fraction(0), Fraction(1))
    assert nested_ne_interval([(2, 4, 1)]) == SlopeInterval(Fraction(0), Fraction(1))
    nested = nested_ne_interval([(2, 4, 0), (3, 9, 1)])
    assert nested == SlopeInterval(Fraction(0), Fraction(1, 3))
    assert nested.diameter == 2 * Fraction(2, 4) * Fraction(3, 9)
    try:
        ne_map(UNIT, 0, 4, 0)
        assert False, "S must be positive"
    except DirectionError:
        pass

    union = ne_union([SlopeInterval(Fraction(0), Fraction(1)), Fraction(1, 2), ['2', '3'],
                      SlopeInterval(Fraction(1), Fraction(3, 2))])
    assert union == (SlopeInterval(Fraction(0), Fraction(3, 2)),
                     SlopeInterval.point(2), SlopeInterval.point(3))
    report = union_report(())
    assert report['empty'] and report['note']
    assert not union_report(union)['empty']
    print("✅ Non-expansive maps OK")


def test_theta():
    """Theta intervals of short words and the limit approximation"""
    print("🧪 Testing Theta intervals...")
    assert theta_interval('0', 0) == SlopeInterval(Fraction(-1, 2), Fraction(1, 2))
    assert theta_interval('1', 0) == SlopeInterval(Fraction(0), Fraction(2, 3))
    assert theta_interval('2', 0) == SlopeInterval(Fraction(0), Fraction(1))
    assert theta_interval('120', 0) == SlopeInterval(Fraction(5, 12), Fraction(7, 12))
    assert theta_interval('', 0) == UNIT
    assert theta_interval([(1, 1)], '1/10') == SlopeInterval(Fraction(0), Fraction(20, 31))

    mid, err = theta_limit('22220', 0, 4)
    assert mid == Fraction(15, 16) and err == Fraction(1, 16)
    try:
        theta_limit('22', 0, 3)
        assert False, "depth exceeds the prefix"
    except DirectionError:
        pass

    assert word_digits(directive_word('201')) == '201'
    assert directive_word([(2, 3), 1]) == ((2, 3), (1, 1))
    for word in ('3', [(0, 0)], [(-1, 1)]):
        try:
            directive_word(word)
            assert False, f"expected DirectionError for {word!r}"
        except DirectionError:
            pass
    for eps in (['1/10'], '-1/10'):
        try:
            epsilon_vector(eps, 2)
            assert False, f"expected DirectionError for {eps!r}"
        except DirectionError:
            pass
    print("✅ Theta intervals OK")


def test_cover():
    """Words of each depth tile the predicted interval for small epsilons"""
    print("🧪 Testing the directive cover...")
    assert cover_bounds((Fraction(0), Fraction(0))) == SlopeInterval(Fraction(-1, 4), Fraction(1))
    for eps in (0, '1/10', '41/100'):
        for depth in range(1, 6):
            result = cover_check(depth, eps)
            assert result['status'] == 'pass', (eps, depth, result)
            assert result['in_range'] and result['words'] == 3 ** depth
    assert below_sqrt2_minus_1(Fraction(41, 100))
    assert not below_sqrt2_minus_1(Fraction(1, 2))
    assert cover_limit(0) == 1

    table = cover_table(2, 0)
    assert len(table) == 9 and table['word'].iloc[0] == '00'
    assert table['lo'].iloc[0] == '-1/4'
    print("✅ Directive cover OK")


def test_directive_search():
    """The word found for a direction has it inside its Theta interval"""
    print("🧪 Testing directive search...")
    for x in (Fraction(1, 2), Fraction(-1, 20), Fraction(0), Fraction(99, 100)):
        word = directive_search(x, 0, 4)
        assert len(word) == 4
        assert theta_interval(word, 0).contains(x), (x, word)
    word = directive_search(Fraction(1, 3), '1/10', 3)
    assert theta_interval(word, '1/10').contains(Fraction(1, 3))
    try:
        directive_search(2, 0, 3)
        assert False, "2 lies outside the cover"
    except DirectionError:
        pass
    print("✅ Directive search OK")


def test_realization():
    """Realization levels reproduce the Theta intervals of their directive words"""
    print("🧪 Testing realization levels...")
    sequences = make_sequences(SequenceRecipe('realiSeq'))
    assert reali_levels(sequences, '21')[0] == (1024, 2 * 1024 + 41, 1)
    eps = sequences.epsilon(0)
    union = realized_directions(sequences, ['0', '1', '2'])
    assert union == (SlopeInterval(-1 / (2 + eps), 2 / (2 + eps)),)
    assert ne_pipeline_check(SequenceRecipe('realiSeq'))['status'] == 'pass'
    print("✅ Realization levels OK")


def main():
    """Run all direction tests"""
    print("🚀 Starting Direction Tests")
    print("=" * 50)

    tests = [test_slopes, test_ne_maps, test_theta, test_cover, test_directive_search,
             test_realization]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All direction tests passed!")
    else:
        print("❌ Some direction tests failed.")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
