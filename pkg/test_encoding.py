#!/usr/bin/env python3
"""
Tests for the word and numeral encodings
"""

import os
import sys
from fractions import Fraction

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.modules.encoding import (
    BudgetExceeded, EncodingError, Undefined,
    alphabet, alphabet_size, bin_decode, bin_encode, bit_length, chi_decode, chi_encode,
    chi_encode_word, chi_length, double, empty_class_member, field_offset, format_letter,
    is_canonical_binary, lift_length_preserving, mixed_radix_value, parse_letter,
    periodic_field_value, sharp_pad, sharp_strip,
)


def test_binary_numerals():
    """bin of zero is empty and decoding ignores leading zeros"""
    print("🧪 Testing binary numerals...")
    assert bin_encode(0) == ''
    assert bin_encode(1) == '1'
    assert bin_encode(6) == '110'
    assert bin_decode('') == 0
    assert bin_decode('0110') == 6
    assert bit_length(0) == 0
    assert bit_length(8) == 4
    assert is_canonical_binary('101')
    assert not is_canonical_binary('011')
    for bad in (lambda: bin_encode(-1), lambda: bin_decode('12')):
        try:
            bad()
            assert False, "expected EncodingError"
        except EncodingError:
            pass
    print("✅ Binary numerals OK")


def test_chi_encoding():
    """Chi puts a 2 before each doubled field"""
    print("🧪 Testing Chi encoding...")
    assert double('01') == '000001'
    assert chi_encode(('1', '')) == '2001' + '2'
    assert chi_encode_word('4') == '2100'
    assert chi_length((1, 1)) == 8
    assert chi_length((2, 0, 3)) == 3 * 5 + 3
    assert field_offset((1, 2), 1) == 4
    for letter in [('0', '1'), ('', '4321'), ('22',)]:
        assert chi_decode(chi_encode(letter)) == letter
        assert len(chi_encode(letter)) == chi_length([len(f) for f in letter])
    for bad in ('3', '20', '2101'):
        try:
            chi_decode(bad)
            assert False, f"expected EncodingError for {bad!r}"
        except EncodingError:
            pass
    try:
        chi_decode(chi_encode(('0', '1')), lengths=(2,))
        assert False, "expected layout mismatch"
    except EncodingError:
        pass
    print("✅ Chi encoding OK")


def test_sharp_padding():
    """Padding prepends 4s and stripping refuses misplaced pads"""
    print("🧪 Testing sharp padding...")
    assert sharp_pad(4, '10') == '4410'
    assert sharp_strip('4410') == '10'
    assert sharp_strip('444') == ''
    try:
        sharp_pad(1, '10')
        assert False, "expected Undefined"
    except Undefined:
        pass
    try:
        sharp_strip('1410')
        assert False, "expected Undefined"
    except Undefined:
        pass
    assert empty_class_member(('44', '4', '1'), [0, 1])
    assert not empty_class_member(('44', '4', '1'), [2])
    assert empty_class_member(('441',), [0], '1')
    print("✅ Sharp padding OK")


def test_lifted_permutation():
    """The sharpized map keeps field lengths"""
    print("🧪 Testing sharpization...")

    def swap(letter):
        return (letter[1], letter[0])

    lifted = lift_length_preserving(swap)
    assert lifted(('441', '400')) == ('400', '441')
    try:
        lifted(('411', '4'))
        assert False, "a longer image must not fit"
    except Undefined:
        pass
    print("✅ Sharpization OK")


def test_mixed_radix():
    """Mixed radix values weight digit i by the product of earlier bases"""
    print("🧪 Testing mixed radix values...")
    assert mixed_radix_value([], []) == 0
    assert mixed_radix_value([1, 2], [3, 4]) == 1 + 2 * 3
    assert mixed_radix_value([1, 1], [Fraction(1, 2), 2]) == Fraction(3, 2)
    try:
        mixed_radix_value([3], [3])
        assert False, "digit 3 is out of range for base 3"
    except EncodingError:
        pass
    assert periodic_field_value(5, 3, 4) == 0
    print("✅ Mixed radix OK")


def test_alphabet():
    """5^k is enumerated lazily with a size guard"""
    print("🧪 Testing alphabets...")
    letters = list(alphabet((1, 1)))
    assert len(letters) == alphabet_size((1, 1)) == 25
    assert letters[0] == ('0', '0')
    assert len(set(letters)) == 25
    try:
        list(alphabet((3, 3), limit=100))
        assert False, "expected BudgetExceeded"
    except BudgetExceeded:
        pass
    assert parse_letter(format_letter(('01', '', '4'))) == ('01', '', '4')
    try:
        parse_letter('0|5')
        assert False, "5 is not a symbol"
    except EncodingError:
        pass
    print("✅ Alphabets OK")


def main():
    """Run all encoding tests"""
    print("🚀 Starting Encoding Tests")
    print("=" * 50)

    tests = [test_binary_numerals, test_chi_encoding, test_sharp_padding,
             test_lifted_permutation, test_mixed_radix, test_alphabet]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All encoding tests passed!")
    else:
        print("❌ Some encoding tests failed.")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
