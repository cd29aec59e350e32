import sys
from importlib import import_module
from pathlib import Path
from typing import Dict

sys.path.append(str(Path(__file__).parent.parent))

from config.settings import DEFAULT_SEED, ORACLE_CAP
from src.families import HSpec, check_embedding, recognize_unchecked, try_h_independent
from src.graph_core import complete_bipartite_graph, cycle_graph, petersen_graph
from src.harness import check_family_bounds, replay_violation
from src.oracle import circumference

REQUIRED_PACKAGES = ("numpy", "networkx", "tqdm", "dotenv")


class SystemHealthChecker:
    def __init__(self, seed: int = DEFAULT_SEED):
        self.seed = seed

    def check_dependencies(self) -> Dict[str, bool]:
        status = {}
        for name in REQUIRED_PACKAGES:
            try:
                import_module(name)
                status[name] = True
                print(f"✅ {name} is available", file=sys.stderr)
            except ImportError as e:
                status[name] = False
                print(f"❌ {name} is missing: {e}", file=sys.stderr)
        return status

    def check_oracle(self) -> bool:
        try:
            for name, G, expected in (("C7", cycle_graph(7), 7), ("Petersen", petersen_graph(), 9)):
                value = circumference(G, cap=ORACLE_CAP).value
                if value != expected:
                    print(f"❌ circumference({name}) = {value}, expected {expected}", file=sys.stderr)
                    return False
            print("✅ Oracle circumference values match", file=sys.stderr)
            return True
        except Exception as e:
            print(f"❌ Oracle check failed: {e}", file=sys.stderr)
            return False

    def check_recognizer(self) -> bool:
        try:
            k34 = complete_bipartite_graph(3, 4)
            emb = try_h_independent(k34, 3)
            if emb is None or emb.spec != HSpec(7, 7, 3) or not check_embedding(k34, emb):
                print("❌ K_{3,4} was not recognized as an H{7,7,3} member", file=sys.stderr)
                return False
            if recognize_unchecked(petersen_graph(), 3) is not None:
                print("❌ Petersen graph was wrongly embedded into a host", file=sys.stderr)
                return False
            print("✅ Recognizer values match", file=sys.stderr)
            return True
        except Exception as e:
            print(f"❌ Recognizer check failed: {e}", file=sys.stderr)
            return False

    def check_fault_injection(self) -> bool:
        try:
            report = check_family_bounds(k_range=(2,), max_order=8, seed=self.seed, inject_fault=True, quiet=True)
            injected = [entry for entry in report.violations if entry.get("injected")]
            genuine = [entry for entry in report.violations if not entry.get("injected")]
            if len(injected) != 1 or genuine:
                print(f"❌ Expected exactly one injected violation, report has {report.violations}", file=sys.stderr)
                return False
            if replay_violation(injected[0]).ok:
                print("❌ Injected violation replays as genuine", file=sys.stderr)
                return False
            print("✅ Injected fault detected and exposed by replay", file=sys.stderr)
            return True
        except Exception as e:
            print(f"❌ Fault injection check failed: {e}", file=sys.stderr)
            return False

    def quick_check(self) -> bool:
        try:
            return all(self.check_dependencies().values()) and circumference(cycle_graph(7)).value == 7
        except Exception:
            return False

    def full_health_check(self) -> bool:
        print("🔍 Performing system health check...", file=sys.stderr)

        if not all(self.check_dependencies().values()):
            return False
        checks = [self.check_oracle(), self.check_recognizer(), self.check_fault_injection()]
        if all(checks):
            print("✅ All checks passed!", file=sys.stderr)
        return all(checks)


def main():
    checker = SystemHealthChecker()

    if len(sys.argv) > 1 and sys.argv[1] == "--quick":
        if checker.quick_check():
            print("✅ System is healthy")
            sys.exit(0)
        else:
            print("❌ System needs attention")
            sys.exit(1)
    else:
        if checker.full_health_check():
            sys.exit(0)
        else:
            sys.exit(1)


if __name__ == "__main__":
    main()
