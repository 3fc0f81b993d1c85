"""Product-family semantics over the unit interval.

The operator tuple is: social support tau(v) = pro/(pro + con + epsilon),
product T-norm x*y, probabilistic-sum T-co-norm x + y - x*y, and negation
1 - x. An argument's constraint value is

    support(a) * prod(1 - m(b) for b attacking a)

which is what :func:`evaluate_rhs` computes for every argument at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import DomainError, NegativeCount
from .framework import SocialFramework, VoteRecord, attackers_of

DOMAIN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SemanticsConfig:
    """Parameters of the operator tuple on L = [0, 1]."""

    epsilon: float = 0.1
    value_bottom: float = 0.0
    value_top: float = 1.0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be strictly positive, got {self.epsilon}")
        if self.value_bottom != 0.0 or self.value_top != 1.0:
            raise ValueError("the value space is fixed to [0, 1]")


def _unit(x: float, where: str) -> float:
    """Validate x against [0,1] with a small round-off band, then clip."""
    x = float(x)
    if x < -DOMAIN_TOLERANCE or x > 1.0 + DOMAIN_TOLERANCE:
        raise DomainError(f"{where}: value {x!r} outside [0, 1]")
    return min(max(x, 0.0), 1.0)


def tau(cfg: SemanticsConfig, votes: VoteRecord | tuple[int, int]) -> float:
    """Social support pro/(pro + con + epsilon); 0 when there are no votes."""
    rec = VoteRecord(*votes)
    if rec.pro < 0 or rec.con < 0:
        raise NegativeCount(f"negative vote count {rec}")
    return rec.pro / (rec.pro + rec.con + cfg.epsilon)


def tnorm(x: float, y: float) -> float:
    """Product T-norm. Top (1) is its identity, bottom (0) annihilates."""
    return _unit(x, "tnorm") * _unit(y, "tnorm")


def tconorm(x: float, y: float) -> float:
    """Probabilistic sum x + y - x*y. Bottom (0) is its identity."""
    x = _unit(x, "tconorm")
    y = _unit(y, "tconorm")
    return x + y - x * y


def negation(x: float) -> float:
    return 1.0 - _unit(x, "negation")


def aggregate_attackers(vals: Iterable[float]) -> float:
    """Combine attacker scores under the probabilistic sum.

    Uses the closed form 1 - prod(1 - v_i), which equals the sequential
    fold by associativity; the empty aggregate is the identity 0.
    """
    arr = np.asarray(list(vals), dtype=float)
    if arr.size == 0:
        return 0.0
    bad = (arr < -DOMAIN_TOLERANCE) | (arr > 1.0 + DOMAIN_TOLERANCE)
    if bad.any():
        raise DomainError(f"attacker score {arr[bad][0]!r} outside [0, 1]")
    return float(1.0 - np.prod(1.0 - np.clip(arr, 0.0, 1.0)))


def tau_vector(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    tau_override: Mapping[str, float] | None = None,
) -> np.ndarray:
    """Per-argument support values in canonical argument order.

    Entries present in ``tau_override`` replace the vote-derived support;
    the normalization repair uses this to solve with tau/|A|.
    """
    out = np.empty(len(fw.arguments))
    for i, a in enumerate(fw.arguments):
        if tau_override is not None and a in tau_override:
            out[i] = _unit(tau_override[a], f"tau_override[{a}]")
        else:
            out[i] = tau(cfg, fw.votes[a])
    return out


def tau_valuation(fw: SocialFramework, cfg: SemanticsConfig) -> dict[str, float]:
    """The support values as a valuation; the solver's default start."""
    return {a: tau(cfg, fw.votes[a]) for a in fw.arguments}


def _require_total(fw: SocialFramework, m: Mapping[str, float]):
    missing = [a for a in fw.arguments if a not in m]
    if missing:
        raise DomainError(f"valuation is not total, missing {missing[:5]}")


def evaluate_rhs(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    m: Mapping[str, float],
    tau_override: Mapping[str, float] | None = None,
) -> dict[str, float]:
    """One application of the constraint operator to valuation ``m``.

    For each argument a the result is support(a) * prod(1 - m(b)) over the
    attackers b of a, i.e. support combined by the T-norm with the negated
    aggregate of the attacker scores.
    """
    _require_total(fw, m)
    supports = tau_vector(fw, cfg, tau_override)
    out = {}
    for i, a in enumerate(fw.arguments):
        acc = 1.0
        for b in attackers_of(fw, a):
            acc *= 1.0 - _unit(m[b], f"m[{b}]")
        out[a] = supports[i] * acc
    return out


def residual(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    m: Mapping[str, float],
    tau_override: Mapping[str, float] | None = None,
) -> float:
    """Max-norm defect of ``m`` against the constraint; 0 iff m is a model."""
    rhs = evaluate_rhs(fw, cfg, m, tau_override)
    if not rhs:
        return 0.0
    return max(abs(m[a] - rhs[a]) for a in fw.arguments)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    witness: str | None = None


@dataclass(frozen=True)
class WellBehavedReport:
    checks: tuple[AxiomCheck, ...]
    samples: int
    seed: int

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self) -> tuple[AxiomCheck, ...]:
        return tuple(c for c in self.checks if c.status == "fail")


def _scan(name: str, rows: Iterable[tuple], predicate: Callable[..., tuple[bool, str]]) -> AxiomCheck:
    for row in rows:
        plain = tuple(float(v) if isinstance(v, np.floating) else v for v in row)
        ok, witness = predicate(*plain)
        if not ok:
            return AxiomCheck(name, "fail", witness)
    return AxiomCheck(name, "pass")


def check_well_behaved(
    cfg: SemanticsConfig,
    samples: int = 1000,
    seed: int = 0,
    tnorm_fn: Callable[[float, float], float] | None = None,
    tconorm_fn: Callable[[float, float], float] | None = None,
    negation_fn: Callable[[float], float] | None = None,
    tau_fn: Callable[[VoteRecord], float] | None = None,
) -> WellBehavedReport:
    """Sampled verification of the operator axioms.

    The operator arguments exist so a deliberately broken operator can be
    checked against the same battery (the CLI uses this to demonstrate a
    non-involutive negation). Continuity cannot be decided from finitely
    many samples, so that axiom is reported as skipped rather than passed.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    t = tnorm_fn if tnorm_fn is not None else tnorm
    s = tconorm_fn if tconorm_fn is not None else tconorm
    neg = negation_fn if negation_fn is not None else negation
    tf = tau_fn if tau_fn is not None else (lambda v: tau(cfg, v))

    rng = np.random.default_rng(seed)
    triples = rng.uniform(size=(samples, 3))
    pairs = np.sort(rng.uniform(size=(samples, 2)), axis=1)  # lo <= hi
    tol = DOMAIN_TOLERANCE

    def close(u, v):
        return abs(u - v) <= tol

    checks = [
        _scan(
            "tnorm_commutative",
            triples[:, :2],
            lambda x, y: (close(t(x, y), t(y, x)), f"x={x!r} y={y!r}"),
        ),
        _scan(
            "tnorm_associative",
            triples,
            lambda x, y, z: (close(t(x, t(y, z)), t(t(x, y), z)), f"x={x!r} y={y!r} z={z!r}"),
        ),
        _scan(
            "tnorm_identity_top",
            triples[:, :1],
            lambda x: (close(t(x, 1.0), x) and close(t(1.0, x), x), f"x={x!r} t(x,1)={t(x, 1.0)!r}"),
        ),
        _scan(
            "tnorm_monotone",
            np.column_stack([pairs, triples[:, 2]]),
            lambda lo, hi, z: (t(lo, z) <= t(hi, z) + tol, f"lo={lo!r} hi={hi!r} z={z!r}"),
        ),
        _scan(
            "tconorm_commutative",
            triples[:, :2],
            lambda x, y: (close(s(x, y), s(y, x)), f"x={x!r} y={y!r}"),
        ),
        _scan(
            "tconorm_associative",
            triples,
            lambda x, y, z: (close(s(x, s(y, z)), s(s(x, y), z)), f"x={x!r} y={y!r} z={z!r}"),
        ),
        _scan(
            "tconorm_identity_bottom",
            triples[:, :1],
            lambda x: (close(s(x, 0.0), x) and close(s(0.0, x), x), f"x={x!r} s(x,0)={s(x, 0.0)!r}"),
        ),
        _scan(
            "tconorm_monotone",
            np.column_stack([pairs, triples[:, 2]]),
            lambda lo, hi, z: (s(lo, z) <= s(hi, z) + tol, f"lo={lo!r} hi={hi!r} z={z!r}"),
        ),
        _scan(
            "negation_involution",
            triples[:, :1],
            lambda x: (close(neg(neg(x)), x), f"x={x!r} neg(neg(x))={neg(neg(x))!r}"),
        ),
        _scan(
            "negation_antitone",
            pairs,
            lambda lo, hi: (neg(lo) >= neg(hi) - tol, f"lo={lo!r} hi={hi!r}"),
        ),
        _scan(
            "negation_bounds",
            [()],
            lambda: (close(neg(0.0), 1.0) and close(neg(1.0), 0.0), f"neg(0)={neg(0.0)!r} neg(1)={neg(1.0)!r}"),
        ),
        _scan(
            "tau_monotone_pro",
            [(p, c) for p in range(10) for c in range(11)],
            lambda p, c: (
                tf(VoteRecord(p + 1, c)) >= tf(VoteRecord(p, c)) - tol,
                f"pro={p} con={c}",
            ),
        ),
        _scan(
            "tau_antitone_con",
            [(p, c) for p in range(11) for c in range(10)],
            lambda p, c: (
                tf(VoteRecord(p, c + 1)) <= tf(VoteRecord(p, c)) + tol,
                f"pro={p} con={c}",
            ),
        ),
        _scan(
            "tau_range",
            [(p, c) for p in range(11) for c in range(11)],
            lambda p, c: (
                -tol <= tf(VoteRecord(p, c)) < 1.0 + tol,
                f"pro={p} con={c} tau={tf(VoteRecord(p, c))!r}",
            ),
        ),
        AxiomCheck("continuity", "skipped", "not checkable numerically from finite samples"),
    ]
    return WellBehavedReport(tuple(checks), samples, seed)
