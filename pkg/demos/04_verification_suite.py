"""Drive the property suite programmatically and summarize the outcome.

Equivalent to `aluthge-lab verify --seed 7 --suite all`, but from Python,
with a compact summary that separates expected-pass from expected-fail
(discriminator) properties.
"""

from aluthgelab.harness import REGISTRY, SuiteConfig, run_suite

cfg = SuiteConfig(seed=7, trials_per_property=100)
report = run_suite(cfg, "all")

passes = [e for e in report["results"] if e["expected_outcome"] == "pass"]
fails = [e for e in report["results"] if e["expected_outcome"] == "fail"]

print(f"{len(REGISTRY)} registered properties, seed {cfg.seed}")
print()
print("expected-pass properties:")
for e in passes:
    worst = max((r["max_residual"] for r in e["reports"]), default=0.0)
    mark = "ok " if e["ok"] else "BAD"
    print(f"  {mark} {e['property_id']:38s} worst residual {worst:.2e}")

print()
print("expected-fail properties (the suite passes when the failure occurs):")
for e in fails:
    mark = "ok " if e["ok"] else "BAD"
    print(f"  {mark} {e['property_id']:38s} observed_pass={e['observed_pass']}")

print()
print("suite verdict:", "ok" if report["all_ok"] else "FAILED")
