#!/usr/bin/env python3
"""
AsyncSub Environment Checker
Run this script to verify the toolkit and its samples work on this machine
"""

import importlib
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

SAMPLES = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'samples')


def check_python_version():
    """Check if Python version is compatible"""
    print("🐍 Checking Python version...")
    version = sys.version_info
    if version.major == 3 and version.minor >= 8:
        print(f"✅ Python {version.major}.{version.minor}.{version.micro} is compatible")
        return True
    print(f"❌ Python {version.major}.{version.minor}.{version.micro} is not compatible. Need Python 3.8+")
    return False


def check_requirements():
    """Check that the packages from requirements.txt can be imported"""
    print("\n📦 Checking requirements...")
    packages = {'dotenv': 'python-dotenv', 'lark': 'lark', 'networkx': 'networkx',
                'pytest': 'pytest', 'hypothesis': 'hypothesis'}
    all_good = True
    for module, name in packages.items():
        try:
            importlib.import_module(module)
            print(f"✅ {name} is available")
        except ImportError:
            print(f"❌ {name} not installed (pip install -r requirements.txt)")
            all_good = False
    return all_good


def check_configuration():
    """Show the effective configuration"""
    print("\n⚙️  Checking configuration...")
    from config.settings import load_config
    config = load_config()
    for key, value in config.to_dict().items():
        print(f"   {key} = {value}")
    if config.ASYNCSUB_DEFAULT_FUEL < 1:
        print("❌ ASYNCSUB_DEFAULT_FUEL must be at least 1")
        return False
    print("✅ Configuration looks good!")
    return True


def check_subtyping():
    """Run both procedures on the accumulating sample pair"""
    print("\n🔁 Checking subtyping procedures...")
    from asyncsub.session import load_type
    from asyncsub.subtyping import FuelExhausted, Subtype, decide, semi_check

    t = load_type(os.path.join(SAMPLES, 'accumulate_T.st'))
    s = load_type(os.path.join(SAMPLES, 'accumulate_S.st'))
    decided = decide(t, s)
    semi = semi_check(t, s, fuel=1000)
    print(f"   decide: {decided.verdict} ({decided.stats.rule_applications} rule applications)")
    print(f"   semi:   {semi.verdict}")
    if isinstance(decided, Subtype) and isinstance(semi, FuelExhausted):
        print("✅ Subtyping procedures work")
        return True
    print("❌ Unexpected verdicts")
    return False


def check_queue_machine():
    """Simulate the aⁿbⁿ sample machine"""
    print("\n📜 Checking queue machine simulator...")
    from asyncsub.queue_machine import Accepted, load_machine, run

    machine = load_machine(os.path.join(SAMPLES, 'anbn.qm'))
    result = run(machine, 'aabb', 100)
    if result == Accepted(9):
        print("✅ aabb accepted in 9 steps")
        return True
    print(f"❌ Unexpected run result: {result}")
    return False


def main():
    """Main check routine"""
    print("🔍 AsyncSub Environment Checker")
    print("=" * 50)

    checks = [
        check_python_version,
        check_requirements,
        check_configuration,
        check_subtyping,
        check_queue_machine,
    ]

    results = []
    for check in checks:
        try:
            results.append(check())
        except Exception as e:
            print(f"❌ Check failed with error: {e}")
            results.append(False)

    print("\n" + "=" * 50)
    print("📊 Summary:")
    print(f"✅ Passed: {sum(results)}/{len(results)} checks")

    if all(results):
        print("\n🎉 AsyncSub is ready!")
        print("\nNext steps:")
        print("1. Run the test suites: pytest")
        print("2. Try the command line: python -m asyncsub check samples/accumulate_T.st samples/accumulate_S.st")
    else:
        print("\n⚠️  Please fix the issues above")
        print("\n📚 Check README.md for setup instructions")

    return all(results)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
