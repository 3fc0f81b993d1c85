"""Forcing uniqueness by normalization, and the price you pay.

Dividing every support by the number of arguments always makes the
uniqueness margin positive, so the normalized system has exactly one
model; multiplying the values back by |A| gives comparable scores.
The catch: those scores now depend on the global argument count, so
adding arguments that attack nothing can flip the ranking of two
arguments they never touch.
"""

from pathlib import Path

from socialarg import (
    SemanticsConfig,
    framework_of,
    independence_experiment,
    normalized_solve,
    parse_saf,
)

here = Path(__file__).parent
fw = framework_of(parse_saf((here / "data" / "two_component.saf").read_text()))
cfg = SemanticsConfig(epsilon=0.1)

scores, ms = normalized_solve(fw, cfg)
print(f"normalized solve: {len(ms)} model (always exactly one)")
print("rescaled scores:")
for a in fw.arguments:
    print(f"  {a}: {scores[a]:.4f}")
relation = ">" if scores["a"] > scores["f"] else "<"
print(f"so a {relation} f on scores "
      f"({scores['a']:.4f} vs {scores['f']:.4f})")
print()

# Now pad with 1000 isolated arguments, each with one pro vote and no
# attacks in either direction. They are connected to neither a nor f.
report = independence_experiment(
    fw, cfg, focus=("a", "f"), padding_count=1000, mode="normalized"
)
print(f"after adding {report.padding_count} isolated arguments:")
print(f"  a: {report.values_after[0]:.4f}   f: {report.values_after[1]:.4f}")
print(f"  ranking before: {report.ranking_before}")
print(f"  ranking after:  {report.ranking_after}")
print(f"  ordinal independence violated: {report.violated}")
print()

# Raw (unnormalized) solving does not have this problem: disconnected
# components cannot influence each other through the equations alone.
raw = independence_experiment(
    fw, cfg, focus=("a", "f"), padding_count=1000, mode="raw"
)
print("same experiment without normalization:")
print(f"  ranking before: {raw.ranking_before}")
print(f"  ranking after:  {raw.ranking_after}")
print(f"  ordinal independence violated: {raw.violated}")
