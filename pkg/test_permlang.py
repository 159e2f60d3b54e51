#!/usr/bin/env python3
"""
Tests for the permutation language: parser, printer, evaluator and compiler
"""

import os
import random
import sys

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import Undefined, alphabet, alphabet_size, bin_encode, sharp_pad
from fixpoint_ppa.modules.permlang import (
    Const, Directive, Environment, Halt, Interpreter, Num, Offset, ConstVector, ParseError, SeqAt,
    Check, compile_differential, compile_inverse_check, compile_to_tm, eval_perm, invert, parse,
    permutation_pair, pretty_print, Intruder, PassCompileError, seq,
)
from fixpoint_ppa.modules.rules.library import chekka_listing, coordi_listing, hier_listing
from fixpoint_ppa.modules.turing import countdown_machine, tm_run

BRANCHING = """\
check len(A) = 2
IF strip(A) = '1'
  incr 4 B
ELSIF strip(A) = '0'
  write '1' -> B
ELSE
  exch A B
ENDIF
"""


def env():
    return Environment(('A', 'B'))


def test_parse_and_print():
    """Printing a parsed program gives back its source"""
    print("🧪 Testing parser and printer...")
    program = parse(BRANCHING, ('A', 'B'))
    assert len(program.items) == 2
    assert pretty_print(program) == BRANCHING
    assert parse(pretty_print(program), ('A', 'B')) == program

    swap = parse("# swap both fields\nexch A B\n", ('A', 'B'))
    assert pretty_print(swap) == "exch A B\n"
    print("✅ Parser and printer OK")


def test_parse_errors():
    """Errors carry the line and column of the offending token"""
    print("🧪 Testing parse errors...")
    try:
        parse("exch A B\nincr 4 Z\n", ('A', 'B'))
        assert False, "expected ParseError"
    except ParseError as e:
        assert e.line == 2 and e.column == 8
    for src in ("IF true\nexch A B\n", "ELSE\n", "frobnicate A\n", "write '5' -> A\n",
                "exch A B B\n", "check A ~ B\n"):
        try:
            parse(src, ('A', 'B'))
            assert False, f"expected ParseError for {src!r}"
        except ParseError:
            pass
    print("✅ Parse errors OK")


def test_evaluation():
    """Each branch of the sample program and its rejections"""
    print("🧪 Testing evaluation...")
    program = parse(BRANCHING, ('A', 'B'))
    assert eval_perm(program, ('41', '44'), env()) == ('41', '41')
    assert eval_perm(program, ('41', '11'), env()) == ('41', '44')
    assert eval_perm(program, ('40', '44'), env()) == ('40', '41')
    assert eval_perm(program, ('11', '00'), env()) == ('00', '11')
    for letter in (('0', '44'), ('41', '0'), ('40', '41'), ('22', '41'), ('14', '00')):
        try:
            eval_perm(program, letter, env())
            assert False, f"expected Undefined for {letter}"
        except Undefined:
            pass

    # counters are canonical: '01' is not another spelling of 1
    counter = parse("incr 4 B\n", ('A', 'B'))
    assert eval_perm(counter, ('4', '41'), env()) == ('4', '10')
    try:
        eval_perm(counter, ('4', '01'), env())
        assert False, "leading zero"
    except Undefined:
        pass
    print("✅ Evaluation OK")


def test_inverse():
    """The syntactic inverse undoes the program on its whole domain"""
    print("🧪 Testing inversion...")
    program = parse(BRANCHING, ('A', 'B'))
    forward, backward = permutation_pair(program, env())
    images = set()
    defined = 0
    for letter in alphabet((2, 2)):
        try:
            image = forward(letter)
        except Undefined:
            continue
        defined += 1
        images.add(image)
        assert backward(image) == letter, letter
    assert defined > 0 and len(images) == defined
    assert invert(invert(program)) == program
    print("✅ Inversion OK")


def test_valuations_and_conditions():
    """Directive digits, offsets, sequences, intruders and bounded halting"""
    print("🧪 Testing valuations and conditions...")
    interpreter = Interpreter(Environment(('A', 'B'), sequences={'Q': lambda n: 2 ** n}))
    u = ('4', '4')
    assert interpreter.value(Directive(Const('2'), 'D'), u) == 1
    assert interpreter.value(Directive(Const('2'), 'W'), u) == 0
    assert interpreter.value(Directive(Const('0'), 'W'), u) == 1
    assert interpreter.value(Offset(ConstVector((1, 2)), Num(1)), u) == 4
    assert interpreter.value(SeqAt('Q', Num(3)), u) == 8
    try:
        interpreter.value(SeqAt('Q', Num(-1)), u)
        assert False, "negative sequence index"
    except Undefined:
        pass

    code = countdown_machine(5).code
    assert interpreter.holds(Halt(Const(code), Num(3), Const('0000')), u)
    assert not interpreter.holds(Halt(Const(code), Num(6), Const('0000')), u)
    try:
        interpreter.apply(Check(Halt(Const(code), Num(6), Const('0000'))), u)
        assert False, "a failed check rejects"
    except Undefined:
        pass

    def reverse(part):
        return (part[0][::-1],)

    intruding = Environment(('A', 'B'), intruders={'rev': lambda n: (reverse, reverse)})
    program = parse("intruder rev 0 B\n", ('A', 'B'))
    assert eval_perm(program, ('41', '12'), intruding) == ('41', '21')
    assert eval_perm(invert(program), ('41', '21'), intruding) == ('41', '12')
    print("✅ Valuations and conditions OK")


def test_compiler():
    """Compiled machines agree with the evaluator on every letter"""
    print("🧪 Testing the compiler...")
    program = parse(BRANCHING, ('A', 'B'))
    defined = 0
    for letter in alphabet((2, 2)):
        try:
            eval_perm(program, letter, env())
            defined += 1
        except Undefined:
            pass

    compiled = compile_to_tm(program, (2, 2), env())
    assert compiled.strategy == 'passes'
    assert compiled.defined == defined
    bound = compiled.step_bound
    assert tm_run(compiled.forward, ('41', '44'), bound).output == ('41', '41')
    assert tm_run(compiled.backward, ('41', '41'), bound).output == ('41', '44')
    assert tm_run(compiled.forward, ('0', '44'), bound).status == 'rejected'
    assert tm_run(compiled.forward, ('14', '44'), bound).status == 'rejected'
    assert 0 < compiled.forward_measure.time <= bound

    # lookup tables read the 14 cells, turn back and rewrite them
    table = compile_to_tm(program, (2, 2), env(), strategy='table')
    assert table.strategy == 'table' and table.defined == defined
    assert table.forward_measure.time == table.backward_measure.time == 29
    assert compile_differential(program, (2, 2), env(), strategy='table')['status'] == 'pass'

    report = compile_differential(program, (2, 2), env())
    assert report['status'] == 'pass', report['mismatches']
    assert report['letters'] == 625 and report['defined'] == defined
    assert compile_inverse_check(program, (2, 2), env())

    nowhere = compile_to_tm(program, (1, 1), env())
    assert nowhere.defined == 0 and nowhere.forward_measure.empty
    print("✅ Compiler OK")


def test_compiled_listings():
    """Pass machines of the coordinate, layout and prefix checks agree with the evaluator"""
    print("🧪 Testing compiled rule listings...")
    labels = ('Addr', 'Addr_r', 'Clock', 'Clock_r')
    coordi = coordi_listing(2, 2)
    compiled = compile_to_tm(coordi, (1, 1, 1, 1), Environment(labels))
    assert compiled.strategy == 'passes'
    bound = compiled.step_bound
    assert tm_run(compiled.forward, ('1', '1', '4', '4'), bound).output == ('1', '4', '1', '1')
    assert tm_run(compiled.backward, ('1', '4', '1', '1'), bound).output == ('1', '1', '4', '4')
    assert tm_run(compiled.forward, ('1', '4', '4', '4'), bound).status == 'rejected'
    report = compile_differential(coordi, (1, 1, 1, 1), Environment(labels))
    assert report['status'] == 'pass', report['mismatches']
    # Addr_r and both clocks canonical, twins equal
    assert report['letters'] == 625 and report['defined'] == 6

    stream = Environment(('Addr', 'Tape'))
    program = seq(chekka_listing((1,), 1), hier_listing((1,), 0, '1'))
    compiled = compile_to_tm(program, (3, 1), stream)
    bound = compiled.step_bound
    cases = {
        ('444', '2'): True,   # separator at the colony origin
        ('411', '1'): True,   # third cell of chi('1')
        ('401', '0'): True,
        ('100', '3'): True,   # past the encoding
        ('411', '0'): False,
        ('441', '2'): False,
        ('111', '0'): False,
    }
    for letter, accepted in cases.items():
        result = tm_run(compiled.forward, letter, bound)
        assert (result.status == 'accepted') == accepted, letter
        if accepted:
            assert result.output == letter
    report = compile_differential(program, (3, 1), stream)
    assert report['status'] == 'pass', report['mismatches']

    second = seq(chekka_listing((1, 1), 2), hier_listing((1, 1), 1, '0'))
    report = compile_differential(second, (3, 1), stream)
    assert report['status'] == 'pass', report['mismatches']
    print("✅ Compiled rule listings OK")


def test_compile_beyond_table_budget():
    """Pass machines stay small on alphabets no lookup table could hold"""
    print("🧪 Testing compilation of large alphabets...")
    labels = ('Addr', 'Addr_r', 'Clock', 'Clock_r')
    lengths = (6, 6, 7, 7)
    program = coordi_listing(40, 100)
    assert alphabet_size(lengths) > Config.MAX_ALPHABET
    compiled = compile_to_tm(program, lengths, Environment(labels))
    assert compiled.strategy == 'passes'
    assert compiled.defined is None and compiled.forward_measure is None
    assert len(compiled.forward.states) < 100_000 and compiled.step_bound < 10_000

    def numeral(width, value):
        return sharp_pad(width, bin_encode(value))

    wrapped = tm_run(compiled.forward, (numeral(6, 39), numeral(6, 39), numeral(7, 99), numeral(7, 99)),
                     compiled.step_bound)
    assert wrapped.output == ('100111', '444444', '4444444', '4444444')

    rng = random.Random(Config.SEED)
    letters = []
    for _ in range(10):
        a, c = rng.randrange(40), rng.randrange(100)
        letters.append((numeral(6, a), numeral(6, a), numeral(7, c), numeral(7, c)))
    letters.append((numeral(6, 5), numeral(6, 6), numeral(7, 1), numeral(7, 1)))
    letters.append(('000101', numeral(6, 5), numeral(7, 1), numeral(7, 1)))
    letters.append((numeral(6, 45), numeral(6, 45), numeral(7, 3), numeral(7, 3)))
    letters.append((numeral(6, 8), '401000', numeral(7, 3), numeral(7, 3)))
    for _ in range(6):
        letters.append(tuple(''.join(rng.choice('01234') for _ in range(k)) for k in lengths))
    report = compile_differential(program, lengths, Environment(labels), letters=letters)
    assert report['status'] == 'pass', report['mismatches']
    assert report['letters'] == len(letters) and report['defined'] is None

    intruding = Intruder('alpha', Num(0), ('A',))
    try:
        compile_to_tm(intruding, (1, 1, 1), Environment(('A', 'B', 'C')), strategy='passes')
        assert False, "intruders have no pass form"
    except PassCompileError:
        pass
    assert compile_to_tm(intruding, (1, 1, 1), Environment(('A', 'B', 'C'))).strategy == 'table'
    print("✅ Large alphabet compilation OK")


def main():
    """Run all permutation language tests"""
    print("🚀 Starting Permutation Language Tests")
    print("=" * 50)

    tests = [test_parse_and_print, test_parse_errors, test_evaluation, test_inverse,
             test_valuations_and_conditions, test_compiler, test_compiled_listings,
             test_compile_beyond_table_budget]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All permutation language tests passed!")
    else:
        print("❌ Some permutation language tests failed.")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
