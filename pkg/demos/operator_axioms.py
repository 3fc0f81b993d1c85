"""The operator axioms, checked by sampling, and what a failure looks like.

The semantics is built from a T-norm (product), a T-co-norm
(probabilistic sum), a negation (complement), and the vote map
tau = pro / (pro + con + epsilon). Each carries algebraic obligations:
commutativity, associativity, identities, monotonicity, involution.
The battery samples them at thousands of points; a deliberately broken
operator should fail loudly with a concrete witness.
"""

from socialarg import SemanticsConfig, check_well_behaved

cfg = SemanticsConfig(epsilon=0.1)

report = check_well_behaved(cfg, samples=10000, seed=0)
print(f"default operators, {report.samples} samples:")
for check in report.checks:
    print(f"  {check.name:<26} {check.status}")
print(f"overall: {'pass' if report.passed else 'FAIL'}")
print()

# Swap the negation for 1 - x^2. Still antitone, still maps 0 to 1 and
# 1 to 0, but it is not an involution, and the battery pinpoints that.
broken = check_well_behaved(
    cfg, samples=10000, seed=0, negation_fn=lambda x: 1.0 - x * x
)
print("same battery with negation(x) = 1 - x*x:")
for check in broken.failures:
    print(f"  {check.name}: {check.status}")
    print(f"    witness: {check.witness}")
print(f"overall: {'pass' if broken.passed else 'FAIL'}")
