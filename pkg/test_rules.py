#!/usr/bin/env python3
"""
Tests for the rule library, the reversible machine embedding and the reductions
"""

import json
import os
import sys
import tempfile

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.modules.encoding import Undefined, chi_encode, sharp_pad
from fixpoint_ppa.modules.ppa import LayoutError, PeriodicConfig, StepRejected, iterate, orbit, step_forward
from fixpoint_ppa.modules.permlang import Environment
from fixpoint_ppa.modules.params import SequenceRecipe, make_sequences
from fixpoint_ppa.modules.rules import (
    C_COORDI, C_HSIM, C_UNIVE, FIELD_LISTS, ZERO_LETTER, Enumerator, EnumerationSequence, HaltingReduction,
    RuleInstance, build_enumeration_sequence, make_compute, decode_permutation, gamma_fidelity, gamma_fidelity_suite,
    gamma_rule, hsim_alphabet, intruder_rule, layout_of, make_chekka, make_coordi, make_hier, make_hsim,
    make_intru, make_reali, make_self, make_shift, make_syncomp, multi_head_check, read_heads,
    reali_alphabet, ring_config, syncomp_alphabet, table_pair, writer_machine,
)
from fixpoint_ppa.modules.turing import (
    INITIAL, bit_flip_machine, countdown_machine, identity_machine, looping_machine,
)


def test_coordi_letters():
    """coordi advances the right-moving address and both clocks"""
    print("🧪 Testing coordi on letters...")
    instance = make_coordi(2, 3)
    forward, backward = instance.permutations()
    assert forward(('4', '4', '44', '44')) == ('4', '1', '41', '41')
    assert forward(('1', '1', '10', '10')) == ('1', '4', '44', '44')
    assert backward(('1', '4', '44', '44')) == ('1', '1', '10', '10')
    try:
        forward(('4', '1', '44', '44'))
        assert False, "address twins disagree"
    except Undefined:
        pass
    assert instance.sealed and instance.verified
    assert len(instance.layout) == len(C_COORDI)
    assert instance.source().startswith('check ')
    for bad in (lambda: make_coordi(0, 3), lambda: make_coordi(2, 0)):
        try:
            bad()
            assert False, "expected ValueError"
        except ValueError:
            pass
    print("✅ coordi letters OK")


def test_generator_guards():
    """Generators refuse inconsistent parameters"""
    print("🧪 Testing generator guards...")
    try:
        make_shift((1,), (1, 1), 8, 12)
        assert False, "one direction per field"
    except LayoutError:
        pass
    try:
        make_hier((1, 1), 2, '0', 8, 12)
        assert False, "field index out of range"
    except LayoutError:
        pass
    try:
        RuleInstance('nope', {}, layout_of(C_COORDI), None, Environment(('Addr',)))
        assert False, "unknown generator"
    except ValueError:
        pass
    assert make_chekka((1, 1), 8, 12).sealed
    assert make_self().sealed
    assert set(FIELD_LISTS['unive']) == set(C_UNIVE)
    print("✅ Generator guards OK")


def test_manifest():
    """Rule manifests are JSON with parameters, layout and verification flags"""
    print("🧪 Testing rule manifests...")
    with tempfile.TemporaryDirectory() as tmp:
        path = make_coordi(2, 3).write_manifest(os.path.join(tmp, 'rules', 'coordi.json'))
        with open(path) as f:
            record = json.load(f)
    assert record['generator'] == 'coordi'
    assert record['params'] == {'S': 2, 'T': 3}
    assert [field['label'] for field in record['layout']['fields']] == ['Addr', 'Addr_r', 'Clock', 'Clock_r']
    assert record['sealed'] and record['verified']
    print("✅ Rule manifests OK")


def test_gamma_embedding():
    """The embedded machine follows the machine step by step and runs backwards"""
    print("🧪 Testing the reversible machine embedding...")
    walker = looping_machine()
    result = gamma_fidelity(walker, '0123', 12, period=40)
    assert result['status'] == 'pass' and result['outcome'] == 'running'
    result = gamma_fidelity(bit_flip_machine(), chi_encode(('0',)), 8, period=20)
    assert result['status'] == 'pass' and result['outcome'] == 'accepted'

    start = ring_config(walker, [(0, '01')], 16)
    assert read_heads(walker, start) == [(0, INITIAL)]
    rule = gamma_rule(walker)
    rows = orbit(rule, start, 6)
    assert read_heads(walker, rows[6]) == [(6, INITIAL)]
    assert iterate(rule, rows[6], -6) == start

    suite = gamma_fidelity_suite(machines=25, steps=20, seed=3)
    assert suite['status'] == 'pass', suite['mismatches'][:1]
    assert sum(suite['outcomes'].values()) == 25
    assert multi_head_check(walker, ['01', '2'], 5)['status'] == 'pass'
    print("✅ Embedding OK")


def test_halting_reduction():
    """alpha_n is defined exactly while the machine is still running"""
    print("🧪 Testing the halting reduction...")
    reduction = HaltingReduction(countdown_machine(3))
    assert [reduction.defined(n) for n in range(6)] == [True, True, True, False, False, False]
    assert reduction.first_undefined(6) == 3
    assert reduction.first_undefined(3) is None
    manifest = reduction.manifest(5)
    assert manifest['first_undefined'] == 3 and manifest['levels'] == 5

    forward, _ = reduction.alpha(1)
    assert forward(ZERO_LETTER) == ZERO_LETTER
    forward, _ = reduction.alpha(4)
    try:
        forward(ZERO_LETTER)
        assert False, "alpha_4 is nowhere defined"
    except Undefined:
        pass

    config = PeriodicConfig.of([ZERO_LETTER, ZERO_LETTER])
    assert step_forward(intruder_rule(reduction, 2), config) == config
    try:
        step_forward(intruder_rule(reduction, 5), config)
        assert False, "expected StepRejected"
    except StepRejected:
        pass
    print("✅ Halting reduction OK")


def test_enumeration_reduction():
    """Enumerated tables replace the fallback once emitted; malformed ones are skipped"""
    print("🧪 Testing the enumeration reduction...")
    source, image = ('0', '1', '2'), ('1', '0', '2')
    word = chi_encode(source + image)
    assert decode_permutation(word) == {source: image}
    assert decode_permutation('') is None
    assert decode_permutation('0120') is None
    assert decode_permutation(chi_encode(source + ('11', '0', '2'))) is None
    assert decode_permutation(chi_encode(source + image + ('2', '2', '2') + image)) is None

    forward, backward = table_pair({source: image})
    assert backward(forward(source)) == source
    try:
        table_pair({source: image, image: image})
        assert False, "table is not injective"
    except ValueError:
        pass

    fallback = {ZERO_LETTER: ZERO_LETTER}
    sequence = EnumerationSequence(writer_machine(['0120', word]), fallback)
    assert sequence.table(10) == fallback
    emitted = 4 + 4 + len(word)
    assert sequence.table(emitted - 1) == fallback
    assert sequence.table(emitted) == {source: image}
    assert sequence.table(10 * emitted) == {source: image}
    assert sequence.emission_steps() == [emitted]
    forward, _ = sequence(emitted)
    assert forward(source) == image

    enumerator = writer_machine([word])
    assert isinstance(enumerator, Enumerator) and len(enumerator.emit_states) == 1
    built = build_enumeration_sequence(enumerator, fallback)
    assert built.table(len(word) - 1) == fallback
    assert built.table(len(word)) == {source: image}
    print("✅ Enumeration reduction OK")


def test_hierarchy_generators():
    """Sequence-driven generators are sealed and certified by their recipes"""
    print("🧪 Testing hierarchy generators...")
    hiera = make_sequences(SequenceRecipe('hieraA'))
    hsim = make_hsim(hiera, levels=2)
    assert hsim.sealed and hsim.verified
    assert len(hsim.layout) == len(C_HSIM)
    assert hsim.manifest()['sequences']['S'][:2] == [1024, 2048]

    reduction = HaltingReduction(countdown_machine(3))
    intru = make_intru(hiera, reduction, levels=2)
    assert intru.sealed and intru.verified
    assert intru.manifest()['params']['intruder'] == 'alpha'
    assert make_syncomp(hiera, countdown_machine(3), levels=2).generator == 'syncomp'

    reali = make_reali(make_sequences(SequenceRecipe('realiSeq')), countdown_machine(3), levels=2)
    assert reali.sealed and reali.verified
    try:
        make_reali(hiera, countdown_machine(3))
        assert False, "reali needs a realiSeq recipe"
    except ValueError:
        pass
    print("✅ Hierarchy generators OK")


HEAD = '4' * 21
PERIOD_START = ('4411', '4411', '44444', '44444', '1', '4', HEAD, HEAD, '4', '4')


def _programs(p):
    return (sharp_pad(16, p.code), sharp_pad(16, p.code))


def _advanced(letter, clock='44441'):
    """Addr_r moved from 3 to 4 and both clocks set, the rest untouched."""
    return (letter[0], '4100', clock, clock) + letter[4:]


def test_self_and_hsim_steps():
    """At a period start away from the origin only the coordinates move"""
    print("🧪 Testing self and hsim on period starts...")
    p = identity_machine()
    # S = 8, T = 21, U = 3 written in MAddr, MClock, Alarm
    letter = PERIOD_START + ('1000', '10101', '11') + _programs(p)
    forward, backward = make_self().permutations()
    image = forward(letter)
    assert image == _advanced(letter)
    assert backward(image) == letter
    try:
        forward(letter[:4] + ('2',) + letter[5:])
        assert False, "tape stream must hold a bit inside the first field"
    except Undefined:
        pass

    # n0 = 2: level 1 has S = 8, U = 3, T = 21
    seqs = make_sequences(SequenceRecipe('hieraA', n0=2))
    hsim = make_hsim(seqs, levels=2)
    letter = PERIOD_START + _programs(p) + ('1',)
    forward, backward = hsim.permutations()
    image = forward(letter)
    assert image == _advanced(letter)
    assert backward(image) == letter
    try:
        forward(letter[:5] + ('0',) + letter[6:])
        assert False, "auxiliary fields must be empty at a period start"
    except Undefined:
        pass

    def identity(n):
        return (lambda u: u), (lambda u: u)
    intru = make_intru(seqs, identity, levels=2)
    other = ('0', '1', '2')
    image = intru.permutations()[0](letter + other)
    assert image[:len(C_HSIM)] == hsim.permutations()[0](letter)
    assert image[len(C_HSIM):] == other
    assert intru.permutations()[1](image) == letter + other
    print("✅ Self and hsim steps OK")


def test_syncomp_period_start():
    """syncomp accepts a period start when p' runs past the level on the history"""
    print("🧪 Testing syncomp period starts...")
    p = identity_machine()
    seqs = make_sequences(SequenceRecipe('hieraA', n0=2))
    syncomp = make_syncomp(seqs, countdown_machine(3), levels=2)
    assert len(syncomp.env.vectors['k'](2)) == len(syncomp.layout)
    letter = PERIOD_START + _programs(p) + ('0', '0')
    forward, backward = syncomp.permutations()
    image = forward(letter)
    assert image == _advanced(letter)
    assert backward(image) == letter

    # at the origin the initial state is written and the identity machine accepts at once
    origin = ('4444', '4444') + letter[2:4] + ('2',) + letter[5:]
    image = forward(origin)
    assert image[6] == image[7] and image[6] != HEAD
    assert image[4] == '2'
    assert backward(image) == origin

    try:
        make_syncomp(seqs, identity_machine(), levels=2).permutations()[0](letter)
        assert False, "p' stops on the history within one step"
    except Undefined:
        pass
    try:
        forward(letter[:-1] + ('1',))
        assert False, "history twins disagree"
    except Undefined:
        pass
    print("✅ syncomp period starts OK")


def test_reali_directive():
    """Digit 1 means one colony of transport and one of waiting"""
    print("🧪 Testing reali directives...")
    seqs = make_sequences(SequenceRecipe('realiSeq', n0=2))
    assert seqs.T(1, 1) == 3 * seqs.S(1) + 4 * seqs.U(1) + 1 == 37
    assert seqs.transport(1, 1) == seqs.S(1) == 8
    assert seqs.T(1, 2) == 29 and seqs.transport(1, 0) == 0

    p = identity_machine()
    reali = make_reali(seqs, countdown_machine(3), levels=2)
    forward, backward = reali.permutations()
    # Clock has bit_length(37) = 6 cells
    start = (('4411', '4411', '444444', '444444') + PERIOD_START[4:] + _programs(p)
             + ('0', '0', '1', '1'))
    image = forward(start)
    # the tape symbol leaves on Tape_r for the transport
    moved = start[:4] + ('4',) + start[5:9] + ('1',) + start[10:]
    assert image == _advanced(moved, '444441')
    assert backward(image) == start

    # S_1 = 8 steps later the symbol is back on Tape
    arrival = ('4411', '4411', '441000', '441000') + moved[4:]
    image = forward(arrival)
    assert image[4] == '1' and image[9] == '4'
    assert image[2] == image[3] == '441001'
    assert backward(image) == arrival

    # the period wraps at T = 37 for digit 1 and is shorter for digit 2
    last = ('4411', '4411', '100100', '100100') + start[4:]
    assert forward(last)[2:4] == ('444444', '444444')
    try:
        forward(last[:-2] + ('2', '2'))
        assert False, "clock 36 is outside a period of 29"
    except Undefined:
        pass
    print("✅ reali directives OK")


def test_positive_timing():
    """compute needs at least one step per phase"""
    print("🧪 Testing phase lengths...")
    p = identity_machine()
    try:
        make_compute(2, 3, 0, p, p)
        assert False, "U = 0 has no phases"
    except ValueError as e:
        assert 'U must be at least 1' in str(e)
    assert make_compute(2, 3, 1, p, p).params['U'] == 1
    print("✅ Phase lengths OK")


def test_level_alphabets():
    """Level alphabets pin the level, history, directive and programs"""
    print("🧪 Testing level alphabets...")
    p = identity_machine()
    letter = ('4',) * len(C_UNIVE) + (p.code, p.code, '1')
    assert hsim_alphabet(1, p, p, {'Level': 1})(letter)
    assert not hsim_alphabet(2, p, p, {'Level': 1})(letter)
    assert not hsim_alphabet(1, p, p, {'Level': 2})(letter)

    history = ('4',) * len(C_UNIVE) + (p.code, p.code, '01', '01')
    assert syncomp_alphabet('01', p, p, {})(history)
    assert not syncomp_alphabet('10', p, p, {})(history)
    directed = history + ('2', '2')
    assert reali_alphabet('01', 2, p, p, {})(directed)
    assert not reali_alphabet('01', 1, p, p, {})(directed)
    try:
        reali_alphabet('01', 3, p, p, {})
        assert False, "3 is not a directive digit"
    except ValueError:
        pass
    print("✅ Level alphabets OK")


def main():
    """Run all rule tests"""
    print("🚀 Starting Rule Library Tests")
    print("=" * 50)

    tests = [test_coordi_letters, test_generator_guards, test_manifest, test_gamma_embedding,
             test_halting_reduction, test_enumeration_reduction, test_hierarchy_generators,
             test_level_alphabets, test_self_and_hsim_steps, test_syncomp_period_start,
             test_reali_directive, test_positive_timing]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All rule tests passed!")
    else:
        print("❌ Some rule tests failed.")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
