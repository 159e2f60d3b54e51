#!/usr/bin/env python3
"""
Demo script to showcase the partial partition automata toolkit
"""

import os
import sys

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def demo_engine():
    """Run coordi for one work period and show the clock cycling"""
    print("🔍 PPA Engine Demo")
    print("=" * 30)

    try:
        from fixpoint_ppa.modules.ppa import orbit, step_backward
        from fixpoint_ppa.modules.rules import make_coordi
        from fixpoint_ppa.modules.simulation import coordinate_config

        S, T = 4, 5
        rule = make_coordi(S, T).to_ppa()
        start = coordinate_config(S, T, 0, 0, 2 * S)
        rows = orbit(rule, start, T)
        for t, row in enumerate(rows):
            print(f"   t={t}: clock {row.cells[0][2]!r}, addresses {[cell[0] for cell in row.cells[:S]]}")
        print(f"✅ Back at the start after T={T} steps: {rows[-1] == start}")
        print(f"✅ Backward step undoes the forward step: {step_backward(rule, rows[1]) == start}")
        return True

    except Exception as e:
        print(f"❌ Error in engine demo: {e}")
        return False


def demo_simulation():
    """Encode a configuration for the toy universal rule and run one work period"""
    print("\n🧬 Simulation Demo")
    print("=" * 30)

    try:
        from fixpoint_ppa.modules.encoding import parse_letter
        from fixpoint_ppa.modules.ppa import PeriodicConfig, iterate, step_forward
        from fixpoint_ppa.modules.simulation import decode, encode, native_rule, toy_machines, toy_spec
        from fixpoint_ppa.modules.rules import make_toy_unive

        p, p_inv, kprime = toy_machines('swap')
        instance = make_toy_unive((1, -1), kprime, p, p_inv)
        spec = toy_spec(instance)
        print(f"   toy unive over 5^{kprime}: S={spec.S}, T={spec.T}, verified={instance.verified}")

        b = PeriodicConfig(tuple(parse_letter(text) for text in ('0|1', '2|3')))
        F, G = instance.to_ppa(), native_rule(instance)
        after = decode(spec, iterate(F, encode(spec, b), spec.T))
        expected = step_forward(G, b)
        print(f"   simulated: {b.to_text()} -> {after.to_text()}")
        print(f"✅ One work period of F equals one step of G: {after == expected}")
        return True

    except Exception as e:
        print(f"❌ Error in simulation demo: {e}")
        return False


def demo_directions():
    """Exact slope intervals of a few directive words"""
    print("\n📐 Directions Demo")
    print("=" * 30)

    try:
        from fixpoint_ppa.modules.directions import cover_check, theta_interval, theta_limit

        for word in ('0', '1', '2', '120'):
            print(f"   Θ({word}) = {theta_interval(word, 0)}")
        mid, error = theta_limit('1' * 10, 0, 10)
        print(f"   θ(1^10) ≈ {float(mid):.6f} ± {float(error):.2e}")
        result = cover_check(6, '1/10')
        print(f"✅ Cover at depth 6 with ε = 1/10: {result['status']}")
        return True

    except Exception as e:
        print(f"❌ Error in directions demo: {e}")
        return False


def demo_parameters():
    """Smallest toy parameters and a hierarchy recipe"""
    print("\n🎯 Parameter Demo")
    print("=" * 30)

    try:
        from fixpoint_ppa.modules.params import SequenceRecipe, make_sequences, solve_toy_unive
        from fixpoint_ppa.modules.turing import identity_machine

        witness, report = solve_toy_unive((1, 1), identity_machine(), identity_machine())
        print(f"   identity over 5^(1,1): S={witness['S']} T={witness['T']} U={witness['U']} "
              f"({'verified' if report.passed else 'failing'})")
        seqs = make_sequences(SequenceRecipe('hieraB', Q=4, n0=5))
        print(seqs.to_frame(4).to_string(index=False))
        verdict = seqs.verdict(16)
        print(f"✅ hieraB ratio product tends to {verdict['verdict']} (prefix {verdict['prefix']})")
        return True

    except Exception as e:
        print(f"❌ Error in parameter demo: {e}")
        return False


def main():
    """Main demo function"""
    print("🚀 Partial Partition Automata Demo")
    print("=" * 40)
    print("This demo walks through the engine, a toy simulation, exact directions")
    print("and the parameter solvers.\n")

    for demo in (demo_engine, demo_simulation, demo_directions, demo_parameters):
        if not demo():
            print(f"❌ {demo.__name__} failed!")
            return False

    print("\n✅ All demos completed successfully!")
    print("\n🚀 To go further:")
    print("   1. Install dependencies: pip install -r requirements.txt")
    print("   2. Run a manifest: python app.py run programs/coordi_run.json")
    print("   3. Run a property suite: python app.py verify unive --toy swap")

    return True


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
