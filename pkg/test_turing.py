#!/usr/bin/env python3
"""
Tests for the Turing machine model and the toy machines
"""

import os
import random
import sys

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.modules.encoding import Undefined, chi_length
from fixpoint_ppa.modules.turing import (
    ACCEPT, ProgramFormatError, TmProgram,
    bit_flip_machine, countdown_machine, empty_machine, halt_within, identity_machine,
    lookup_machine, looping_machine, machine_for_map, random_machine, swap_machine,
    time_complexity_over, tm_run, tm_run_word, universal_delta,
)


def test_toy_machines():
    """Identity, bit flip and swap on their alphabets"""
    print("🧪 Testing toy machines...")
    result = tm_run(identity_machine(), ('0', '3'), 10)
    assert result.status == 'accepted' and result.steps == 1
    assert result.output == ('0', '3')

    flip = bit_flip_machine()
    for symbol, image in (('0', '1'), ('1', '0'), ('2', '3'), ('3', '2')):
        result = tm_run(flip, (symbol,), 10)
        assert result.status == 'accepted', symbol
        assert result.output == (image,)
        assert result.steps == 4
    assert tm_run(flip, ('4',), 10).status == 'rejected'

    swap = swap_machine((1, 1))
    result = tm_run(swap, ('0', '4'), 100)
    assert result.output == ('4', '0')
    assert result.steps == 2 * chi_length((1, 1)) + 1
    assert tm_run(empty_machine(), ('0',), 10).status == 'rejected'
    assert tm_run_word(looping_machine(), '01', 25).status == 'running'
    print("✅ Toy machines OK")


def test_lookup_machine():
    """Table machines accept the domain only and run in 2L + 1 steps"""
    print("🧪 Testing lookup machines...")
    machine = lookup_machine({'2001': '2000', '2000': '2001'})
    assert tm_run(machine, ('0',), 50).output == ('1',)
    assert tm_run(machine, ('1',), 50).steps == 2 * 4 + 1
    assert tm_run(machine, ('2',), 50).status == 'rejected'

    def partial(letter):
        if letter[0] == '4':
            raise Undefined('test', 'no image')
        return letter

    machine = machine_for_map(partial, (1,))
    assert tm_run(machine, ('3',), 50).output == ('3',)
    assert tm_run(machine, ('4',), 50).status == 'rejected'
    worst, empty = time_complexity_over(machine, (1,))
    assert worst == 2 * chi_length((1,)) + 1 and not empty
    print("✅ Lookup machines OK")


def test_program_formats():
    """Text and code word round trips, and malformed programs"""
    print("🧪 Testing program formats...")
    rng = random.Random(7)
    for _ in range(20):
        machine = random_machine(rng)
        assert TmProgram.from_text(machine.to_text()) == machine
        assert TmProgram.from_code(machine.code) == machine
        assert all(c in '0123' for c in machine.code)

    for text in ("0 0 -> 1 _ +1\n", "states 0 _\n0 0 -> 1 _ -1\n", "states 0 _\n0 0 -> 1 7 +1\n"):
        try:
            TmProgram.from_text(text)
            assert False, f"expected ProgramFormatError for {text!r}"
        except ProgramFormatError:
            pass
    print("✅ Program formats OK")


def test_universal_delta():
    """delta_U reads the transition out of the program code"""
    print("🧪 Testing the universal transition function...")
    code = bit_flip_machine().code
    assert universal_delta('2', '0', code) == ('2', '1', 1)
    for args in (('3', '0', code), ('0', ACCEPT, code), ('0', '0', '012')):
        try:
            universal_delta(*args)
            assert False, f"expected Undefined for {args}"
        except Undefined:
            pass
    print("✅ Universal transition OK")


def test_halting_predicate():
    """A countdown machine stops after exactly h steps"""
    print("🧪 Testing the bounded halting predicate...")
    machine = countdown_machine(5)
    assert tm_run_word(machine, '0000000', 20).steps == 5
    for n in range(10):
        assert halt_within(machine, n, '0' * n) == (n < 5)
    print("✅ Halting predicate OK")


def main():
    """Run all Turing machine tests"""
    print("🚀 Starting Turing Machine Tests")
    print("=" * 50)

    tests = [test_toy_machines, test_lookup_machine, test_program_formats,
             test_universal_delta, test_halting_predicate]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All Turing machine tests passed!")
    else:
        print("❌ Some Turing machine tests failed.")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
