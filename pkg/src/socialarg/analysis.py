"""Structural analyses built on top of the solver.

Four tools live here: a sufficient uniqueness certificate, a scalar
reduction that solves full 3-cliques by bisection, the support
normalization that forces uniqueness on any framework, and an
experiment showing what that normalization costs: the relative ranking
of two arguments can be flipped by unrelated additions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .enumeration import EnumerationConfig, ModelSet, enumerate_models
from .errors import DomainViolation, InvariantBreach, NonConvergence, UnknownArgument
from .framework import SocialFramework, VoteRecord, attackers_of, build_framework, disjoint_union
from .semantics import SemanticsConfig, tau_valuation
from .solver import SolverConfig, solve


@dataclass(frozen=True)
class UniquenessCertificate:
    """Result of the margin test: 1 - |Att(a)|*tau(a) for every argument.

    holds is True exactly when every margin is strictly positive, which
    makes the constraint operator a max-norm contraction and therefore
    guarantees a unique model. The condition is sufficient, not
    necessary. witness names a violating argument with the worst margin.
    """

    holds: bool
    witness: str | None
    margins: dict[str, float]


def certify_uniqueness(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    tau_override: Mapping[str, float] | None = None,
) -> UniquenessCertificate:
    from .semantics import tau_vector

    supports = tau_vector(fw, cfg, tau_override)
    margins = {
        a: 1.0 - len(attackers_of(fw, a)) * float(supports[i])
        for i, a in enumerate(fw.arguments)
    }
    violating = [a for a in fw.arguments if margins[a] <= 0.0]
    if violating:
        witness = min(violating, key=lambda a: (margins[a], a))
        return UniquenessCertificate(False, witness, margins)
    return UniquenessCertificate(True, None, margins)


def _clique_partners(ratio: float, s: float) -> float:
    """The smaller root 1/2 - sqrt(1/4 - ratio*s) of x(1-x) = ratio*s."""
    return 0.5 - math.sqrt(max(0.25 - ratio * s, 0.0))


def solve_three_clique(a1: float, a2: float, a3: float, tol: float = 1e-12):
    """Unique model of the full 3-clique with supports (a1, a2, a3).

    Sorting the supports descending reduces the three coupled equations
    x_i = a_i * (1 - x_j)(1 - x_k) to a scalar fixed point r = f(r) for
    the largest-support coordinate, with

        f(x) = a1 * (1/2 + sqrt(1/4 - (a2/a1) x(1-x)))
                  * (1/2 + sqrt(1/4 - (a3/a1) x(1-x)))

    f(0) = a1 > 0 and f(1) = a1 < 1 bracket the root, so bisection on
    f(x) - x cannot fail; the other two coordinates come from the closed
    substitution x_j = 1/2 - sqrt(1/4 - (a_j/a1) r(1-r)). The input
    permutation is restored on return.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    supports = (float(a1), float(a2), float(a3))
    for v in supports:
        if not 0.0 < v < 1.0:
            raise DomainViolation(f"support {v!r} outside the open interval (0, 1)")
    order = sorted(range(3), key=lambda i: -supports[i])
    b1, b2, b3 = (supports[i] for i in order)

    def g(x):
        s = x * (1.0 - x)
        f = b1 * (0.5 + math.sqrt(max(0.25 - (b2 / b1) * s, 0.0))) * (
            0.5 + math.sqrt(max(0.25 - (b3 / b1) * s, 0.0))
        )
        return f - x

    lo, hi = 0.0, 1.0  # g(0) = b1 > 0, g(1) = b1 - 1 < 0
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    r = 0.5 * (lo + hi)

    s = r * (1.0 - r)
    sorted_solution = (r, _clique_partners(b2 / b1, s), _clique_partners(b3 / b1, s))
    out = [0.0, 0.0, 0.0]
    for slot, value in zip(order, sorted_solution):
        out[slot] = value
    return tuple(out)


def normalized_solve(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    scfg: SolverConfig | None = None,
    ecfg: EnumerationConfig | None = None,
) -> tuple[dict[str, float], ModelSet]:
    """Solve with every support divided by |A|, then rescale by |A|.

    Dividing by the argument count makes the uniqueness margin positive
    for every argument (|Att(a)| <= |A| and tau < 1), so the solved model
    is the unique one. Returns (scores, model_set): scores are the model
    values multiplied back by |A|. They are reported as ranking scores
    rather than as a valuation because they are not a fixed point of the
    original, unnormalized system.
    """
    n = len(fw.arguments)
    if n < 1:
        raise ValueError("normalized solve needs at least one argument")
    base = tau_valuation(fw, cfg)
    override = {a: base[a] / n for a in fw.arguments}
    cert = certify_uniqueness(fw, cfg, tau_override=override)
    if not cert.holds:
        raise InvariantBreach("normalized supports must always satisfy the margin test")
    ms = enumerate_models(fw, cfg, scfg, ecfg, tau_override=override)
    if len(ms) == 0:
        raise NonConvergence("no start converged under normalized supports")
    if len(ms) != 1:
        raise InvariantBreach(f"normalized solve found {len(ms)} models, expected exactly 1")
    model = ms.models[0]
    scores = {a: model[a] * n for a in fw.arguments}
    return scores, ms


@dataclass(frozen=True)
class IndependenceReport:
    """Before/after comparison of one argument pair under isolated padding."""

    focus_pair: tuple[str, str]
    ranking_before: str
    ranking_after: str
    values_before: tuple[float, float]
    values_after: tuple[float, float]
    violated: bool
    mode: str
    padding_count: int


def _relation(first: str, second: str, v1: float, v2: float, tie_epsilon: float):
    if abs(v1 - v2) <= tie_epsilon:
        return 0, f"{first} ≃ {second}"
    if v1 > v2:
        return 1, f"{first} ≻ {second}"
    return -1, f"{second} ≻ {first}"


def _fresh_padding(fw: SocialFramework, count: int, votes: VoteRecord) -> SocialFramework:
    prefix = "pad"
    existing = set(fw.arguments)
    while any(f"{prefix}{i:05d}" in existing for i in range(count)):
        prefix += "x"
    names = [f"{prefix}{i:05d}" for i in range(count)]
    return build_framework(names, [], {name: votes for name in names})


def independence_experiment(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    focus: tuple[str, str],
    padding_count: int,
    padding_votes: VoteRecord | tuple[int, int] = VoteRecord(1, 0),
    mode: str = "normalized",
    scfg: SolverConfig | None = None,
    ecfg: EnumerationConfig | None = None,
    tie_epsilon: float = 1e-9,
) -> IndependenceReport:
    """Does adding isolated arguments change the focus pair's ranking?

    mode "raw" solves the plain constraint from the support start; mode
    "normalized" uses the rescaled scores of normalized_solve. A report
    with violated=True means a strict ordering flipped or collapsed to a
    tie after padding, even though the padding attacks nothing.
    """
    first, second = focus
    for name in (first, second):
        if name not in fw.votes:
            raise UnknownArgument(f"focus argument {name!r} is not in the framework")
    if padding_count < 0:
        raise ValueError("padding_count must be non-negative")
    if mode not in ("raw", "normalized"):
        raise ValueError(f"mode must be 'raw' or 'normalized', got {mode!r}")
    votes = VoteRecord(*padding_votes)

    padded = (
        disjoint_union(fw, _fresh_padding(fw, padding_count, votes))
        if padding_count
        else fw
    )

    def score_pair(framework):
        if mode == "normalized":
            scores, _ = normalized_solve(framework, cfg, scfg, ecfg)
            return scores[first], scores[second]
        outcome = solve(framework, cfg, scfg)
        return outcome.model[first], outcome.model[second]

    v_before = score_pair(fw)
    v_after = score_pair(padded)
    sign_before, text_before = _relation(first, second, *v_before, tie_epsilon)
    sign_after, text_after = _relation(first, second, *v_after, tie_epsilon)
    violated = sign_before != 0 and sign_after != sign_before
    return IndependenceReport(
        focus_pair=(first, second),
        ranking_before=text_before,
        ranking_after=text_after,
        values_before=v_before,
        values_after=v_after,
        violated=violated,
        mode=mode,
        padding_count=padding_count,
    )
