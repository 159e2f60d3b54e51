#!/usr/bin/env python3
"""
Tests for the inequality checker, the toy and self-similar solvers and the parameter sequences
"""

import json
import os
import sys
import tempfile
from fractions import Fraction

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.modules.encoding import bit_length, chi_length
from fixpoint_ppa.modules.params import (
    DependencyError, InequalityError, ParameterError, PolynomialFit, ProgramModel, SequenceRecipe,
    check_inequalities, fit_polynomial, make_sequences, measure_lookup_fits, ratio_product,
    solve_self_sim, solve_toy_unive, unive_inequalities, witness_record, write_witness,
)
from fixpoint_ppa.modules.turing import identity_machine, swap_machine


def test_toy_unive_solver():
    """Smallest S, T, U for the identity and swap pairs"""
    print("🧪 Testing the toy unive solver...")
    p = identity_machine()
    witness, report = solve_toy_unive((1, 1), p, p)
    assert (witness['U'], witness['S'], witness['T']) == (1, 8, 13)
    assert report.passed
    assert witness['k']['Addr'] == bit_length(8) and witness['k']['Clock'] == bit_length(13)

    swap = swap_machine((1, 1))
    witness, report = solve_toy_unive((1, 1), swap, swap)
    assert witness['t_p'] == 2 * chi_length((1, 1)) + 1
    assert (witness['U'], witness['S'], witness['T']) == (17, 34, 103)
    assert report.slack('T >= 4U + S + t0 + 1') == 0

    witness, report = solve_toy_unive((1, 1), p, p, t0=3, times=(1, 1))
    assert witness['T'] == 16 and report.passed
    print("✅ Toy unive solver OK")


def test_inequality_reports():
    """Failing constraints are listed with their slack; missing measurements are errors"""
    print("🧪 Testing inequality reports...")
    p = identity_machine()
    witness, _ = solve_toy_unive((1, 1), p, p)
    shrunk = dict(witness, T=witness['T'] - 1)
    report = check_inequalities(unive_inequalities(), shrunk)
    assert not report.passed
    assert [row['constraint'] for row in report.failures()] == ['T >= 4U + S + t0 + 1']
    assert report.slack('T >= 4U + S + t0 + 1') == -1
    assert len(report.to_frame()) == len(report.rows)
    assert report.digest() != check_inequalities(unive_inequalities(), witness).digest()
    error = InequalityError(report)
    assert 'T >= 4U + S + t0 + 1' in str(error) and error.report is report

    try:
        check_inequalities(unive_inequalities(), {k: v for k, v in witness.items() if k != 'U'})
        assert False, "expected DependencyError"
    except DependencyError:
        pass
    try:
        report.slack('nope')
        assert False, "expected KeyError"
    except KeyError:
        pass
    print("✅ Inequality reports OK")


def test_witness_files():
    """Witness records carry the report and are written atomically"""
    print("🧪 Testing witness files...")
    p = identity_machine()
    witness, report = solve_toy_unive((1, 1), p, p)
    record = witness_record(witness, report, toy='identity')
    assert record['kprime'] == [1, 1] and record['toy'] == 'identity'
    assert record['inequalities']['passed']
    with tempfile.TemporaryDirectory() as tmp:
        path = write_witness(os.path.join(tmp, 'witness', 'identity.json'), record)
        with open(path) as f:
            loaded = json.load(f)
        assert not os.path.exists(path + '.tmp')
    assert (loaded['S'], loaded['T'], loaded['U']) == (8, 13, 1)
    print("✅ Witness files OK")


def test_polynomial_fits():
    """Fitted bounds sit above every sample"""
    print("🧪 Testing polynomial fits...")
    exact = PolynomialFit.of([1, 2])
    assert exact.degree == 1 and exact(3) == 7
    assert not exact.covers(3)

    samples = [(0, 1), (1, 3), (2, 6), (3, 8)]
    fit = fit_polynomial(samples, degree=1)
    assert all(fit(n) >= t for n, t in samples)
    assert fit.covers(2) and not fit.covers(5)

    fit, samples = measure_lookup_fits(max_length=2)
    assert [n for n, _ in samples] == [0, 1, 2]
    assert all(fit(n) >= t for n, t in samples)
    print("✅ Polynomial fits OK")


def test_self_sim_solver():
    """A linear time bound needs r = 2; r = 1 alone is infeasible"""
    print("🧪 Testing the self-similar solver...")
    linear = PolynomialFit.of([0, 1])
    model = ProgramModel(size=4, inverse_size=4, state_length=2, time_fit=linear, inverse_fit=linear)
    result = solve_self_sim(model)
    assert result['status'] == 'ok', result
    assert result['r'] == 2
    assert result['ratio'] >= Fraction(9, 10)
    witness = result['witness']
    assert witness['T'] == witness['S'] + 4 * witness['U'] + 1
    assert witness['U'] >= linear(sum(witness['k'].values()))
    assert result['tag'] == 'extrapolated'

    result = solve_self_sim(model, r_max=1, offsets=(1,), max_bits=64)
    assert result['status'] == 'infeasible'
    assert result['certificate']['violations']
    print("✅ Self-similar solver OK")


def test_sequences():
    """Closed forms of the families, their certificates and verdicts"""
    print("🧪 Testing parameter sequences...")
    hiera_a = make_sequences(SequenceRecipe('hieraA'))
    assert (hiera_a.S(0), hiera_a.U(0), hiera_a.T(0)) == (1024, 10, 1065)
    assert hiera_a.epsilon(0) == Fraction(41, 1024) and hiera_a.epsilon_ok(0)
    reports = hiera_a.certify(4)
    assert len(reports) == 4 and all(r.passed for r in reports)
    assert hiera_a.verdict(8)['verdict'] == 'nonzero'
    assert len(hiera_a.to_frame(3)) == 3

    hiera_b = make_sequences(SequenceRecipe('hieraB', Q=4, n0=5))
    for n in range(6):
        assert hiera_b.ratio_prefix(n) == Fraction(1, 2 ** n)
    assert ratio_product(hiera_b, 3) == Fraction(1, 8)
    assert not hiera_b.epsilon_ok(0)
    assert hiera_b.verdict(4)['verdict'] == 'zero'

    reali = make_sequences(SequenceRecipe('realiSeq'))
    assert reali.T(0, 2) == 2 * 1024 + 41
    assert reali.transport(0, 0) == 0 and reali.transport(0, 1) == 1024
    assert reali.lengths(3)['MHist'] == 3
    reports = reali.certify(2)
    assert len(reports) == 6 and all(r.passed for r in reports)

    selfsim = make_sequences(SequenceRecipe('selfSim', S=4096))
    assert selfsim.S(7) == 4096 and selfsim.U(0) == 13
    assert selfsim.verdict(3)['verdict'] == 'zero'
    print("✅ Parameter sequences OK")


def test_recipe_errors():
    """Unknown families and non-integer terms are refused"""
    print("🧪 Testing recipe errors...")
    for build in (lambda: SequenceRecipe('nope'),
                  lambda: SequenceRecipe('hieraA', Q=1),
                  lambda: SequenceRecipe('selfSim'),
                  lambda: make_sequences(SequenceRecipe('hieraB', Q=2, n0=0))):
        try:
            build()
            assert False, "expected ParameterError"
        except ParameterError:
            pass
    print("✅ Recipe errors OK")


def main():
    """Run all parameter tests"""
    print("🚀 Starting Parameter Tests")
    print("=" * 50)

    tests = [test_toy_unive_solver, test_inequality_reports, test_witness_files,
             test_polynomial_fits, test_self_sim_solver, test_sequences, test_recipe_errors]
    success = True
    for test in tests:
        try:
            test()
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    print("\n" + "=" * 50)
    if success:
        print("🎉 All parameter tests passed!")
    else:
        print("❌ Some parameter tests failed.")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
