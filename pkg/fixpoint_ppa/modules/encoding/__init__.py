# Encoding Module
from .words import (
    Word, Letter, EncodingError, Undefined,
    bin_encode, bin_decode, is_binary, is_canonical_binary, bit_length,
    mixed_radix_value, sharp_pad, sharp_strip, is_empty_field,
    empty_class_member, periodic_field_value, format_letter, parse_letter,
)
from .chi import (
    BudgetExceeded, double, chi_encode, chi_encode_word, chi_decode,
    field_offset, chi_length, alphabet, alphabet_size, lift_length_preserving,
)

__all__ = [
    'Word', 'Letter', 'EncodingError', 'Undefined', 'BudgetExceeded',
    'bin_encode', 'bin_decode', 'is_binary', 'is_canonical_binary', 'bit_length',
    'mixed_radix_value', 'sharp_pad', 'sharp_strip', 'is_empty_field',
    'empty_class_member', 'periodic_field_value', 'format_letter', 'parse_letter',
    'double', 'chi_encode', 'chi_encode_word', 'chi_decode',
    'field_offset', 'chi_length', 'alphabet', 'alphabet_size', 'lift_length_preserving',
]
