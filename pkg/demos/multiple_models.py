"""A framework where the model is not unique.

Four arguments sit in a ring of mutual attacks, each backed by a single
pro vote. The fixed-point equation M(a) = tau(a) * prod(1 - M(b)) then
has three solutions: a symmetric one where everybody lands near 0.366,
and two alternating ones where opposite corners of the ring win big.
"""

from pathlib import Path

from socialarg import (
    SemanticsConfig,
    enumerate_models,
    format_ranking,
    framework_of,
    grid_oracle,
    parse_saf,
    rankings_of,
)

here = Path(__file__).parent
fw = framework_of(parse_saf((here / "data" / "ring.saf").read_text()))
cfg = SemanticsConfig(epsilon=0.1)

print(f"framework: {fw.argument_count} arguments, {fw.attack_count} attacks")
print()

# Multi-start search: the support vector, corner starts, and 256 random
# starts, all solved in one numpy batch and deduplicated.
ms = enumerate_models(fw, cfg)
print(f"enumerate_models found {len(ms)} models "
      f"(from {ms.starts_used} starts, {ms.nonconverged} nonconverged)")
print()

header = ["model"] + list(fw.arguments) + ["ranking"]
print("  ".join(f"{h:>10}" for h in header))
for i, (model, ranking) in enumerate(zip(ms.models, rankings_of(ms)), start=1):
    cells = [f"{i:>10}"]
    cells += [f"{model[a]:>10.5f}" for a in fw.arguments]
    cells.append(f"  {format_ranking(ranking)}")
    print("  ".join(cells))
print()

# Independent cross-check: scan the whole unit cube at resolution 200,
# keep every cell that could contain a root, polish, deduplicate. This
# is exhaustive, so the model count is certified at grid granularity.
oracle = grid_oracle(fw, cfg, resolution=200)
print(f"grid_oracle at resolution 200 found {len(oracle)} models "
      f"(exhaustive={oracle.exhaustive_flag})")

worst = max(
    min(
        max(abs(m[a] - o[a]) for a in fw.arguments)
        for o in oracle.models
    )
    for m in ms.models
)
print(f"largest distance between the two model lists: {worst:.2e}")
