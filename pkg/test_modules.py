#!/usr/bin/env python3
"""
Test script for Fixpoint PPA modules
"""

import sys
import os

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def test_imports():
    """Test if all modules can be imported"""
    print("🧪 Testing module imports...")

    from fixpoint_ppa.config import Config
    assert Config.SEPARATOR == '2'
    print("✅ Config imported successfully")

    from fixpoint_ppa.modules.encoding import chi_encode, bin_encode
    print("✅ Encoding imported successfully")

    from fixpoint_ppa.modules.turing import TmProgram, tm_run
    print("✅ Turing machines imported successfully")

    from fixpoint_ppa.modules.ppa import PpaRule, PeriodicConfig, step_forward
    print("✅ PPA engine imported successfully")

    from fixpoint_ppa.modules.permlang import parse, eval_perm, compile_to_tm
    print("✅ Permutation language imported successfully")

    from fixpoint_ppa.modules.rules import make_coordi, make_unive, make_self
    print("✅ Rule library imported successfully")

    from fixpoint_ppa.modules.simulation import encode, decode, verify_simulation
    print("✅ Simulation imported successfully")

    from fixpoint_ppa.modules.params import solve_toy_unive, make_sequences
    print("✅ Parameters imported successfully")

    from fixpoint_ppa.modules.directions import theta_interval, cover_check
    print("✅ Directions imported successfully")

    from fixpoint_ppa.modules.cli import main
    print("✅ Command line imported successfully")

    print("\n🎉 All modules imported successfully!")


def test_basic_functionality():
    """Test basic functionality of modules"""
    print("\n🔧 Testing basic functionality...")

    from fixpoint_ppa.modules.encoding import chi_encode, chi_decode
    word = chi_encode(('01', '4'))
    assert chi_decode(word) == ('01', '4')
    print(f"✅ Chi encoding: {word}")

    from fixpoint_ppa.modules.rules import make_coordi
    from fixpoint_ppa.modules.simulation import coordinate_config
    from fixpoint_ppa.modules.ppa import iterate
    rule = make_coordi(4, 5).to_ppa()
    config = coordinate_config(4, 5, 0, 0, 8)
    assert iterate(rule, config, 5) == config
    print("✅ coordi runs a full work period")

    from fixpoint_ppa.modules.directions import theta_interval
    print(f"✅ Θ(120) = {theta_interval('120', 0)}")

    print("\n🎉 Basic functionality tests passed!")


def main():
    """Main test function"""
    print("🚀 Fixpoint PPA Module Tests")
    print("=" * 40)

    success = True
    for test in (test_imports, test_basic_functionality):
        try:
            test()
        except (AssertionError, ImportError) as e:
            print(f"❌ {test.__name__} failed: {e}")
            success = False

    if success:
        print("\n✅ All tests passed! The toolkit is ready to run.")
        print("\n🌐 To run the demo, run:")
        print("   python demo.py")
    return success


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
