"""Fixed-point solver: damped Picard iteration plus Newton refinement.

The constraint operator is antitone, so plain iteration tends to
oscillate between over- and under-shooting; averaging each update with
the current iterate (damping) suppresses that two-cycle. Once the
residual is small the solver switches to Newton on F(x) = x - RHS(x),
whose Jacobian is available in closed form for the product semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import NonConvergence, SingularJacobian
from .framework import SocialFramework, attackers_of
from .semantics import SemanticsConfig, evaluate_rhs, tau_valuation, tau_vector, _unit


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-12
    max_iterations: int = 10000
    damping: float = 0.5
    newton_switch_residual: float = 1e-3

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not 0.0 < self.damping <= 1.0:
            raise ValueError("damping must lie in (0, 1]")
        if not self.newton_switch_residual > self.tolerance:
            raise ValueError("newton_switch_residual must exceed tolerance")


@dataclass(frozen=True)
class SolveOutcome:
    model: dict[str, float]
    residual: float
    iterations: int
    method_trace: tuple[str, ...]


class Kernel:
    """Vectorized evaluation of the constraint operator for one framework.

    Attacker lists are flattened into one index array so the right-hand
    side of a whole batch of valuations is a couple of numpy calls. Rows
    of every (B, n) matrix are independent candidate valuations.
    """

    def __init__(
        self,
        fw: SocialFramework,
        cfg: SemanticsConfig,
        tau_override: Mapping[str, float] | None = None,
    ):
        self.fw = fw
        self.n = len(fw.arguments)
        self.tau = tau_vector(fw, cfg, tau_override)
        index = {a: i for i, a in enumerate(fw.arguments)}
        self.attacker_idx = [
            np.array([index[b] for b in attackers_of(fw, a)], dtype=np.int64)
            for a in fw.arguments
        ]
        counts = np.array([idx.size for idx in self.attacker_idx], dtype=np.int64)
        self.counts = counts
        self.flat = (
            np.concatenate(self.attacker_idx)
            if self.n and counts.sum()
            else np.zeros(0, dtype=np.int64)
        )
        # segment offsets into self.flat; empty segments are fixed up after
        # reduceat, and a sentinel factor of 1.0 keeps trailing offsets legal
        self.starts = np.concatenate([[0], np.cumsum(counts)[:-1]]) if self.n else np.zeros(0, np.int64)

    def rhs(self, X: np.ndarray) -> np.ndarray:
        """Constraint operator applied to each row of X, shape (B, n)."""
        if self.n == 0:
            return X.copy()
        if self.flat.size == 0:
            return np.broadcast_to(self.tau, X.shape).copy()
        factors = np.concatenate([1.0 - X[:, self.flat], np.ones((X.shape[0], 1))], axis=1)
        prods = np.multiply.reduceat(factors, self.starts, axis=1)
        prods = np.where(self.counts == 0, 1.0, prods)
        return self.tau * prods

    def residuals(self, X: np.ndarray) -> np.ndarray:
        """Max-norm defect per row, shape (B,)."""
        if self.n == 0:
            return np.zeros(X.shape[0])
        return np.max(np.abs(X - self.rhs(X)), axis=1)

    def jacobian(self, X: np.ndarray) -> np.ndarray:
        """d(RHS)/dx per row, shape (B, n, n).

        Entry (a, b) is -tau(a) times the attacker product for a with the
        factor (1 - x_b) left out; exclusive products come from prefix and
        suffix cumulative products, so a zero factor stays exact.
        """
        B = X.shape[0]
        J = np.zeros((B, self.n, self.n))
        for i, att in enumerate(self.attacker_idx):
            k = att.size
            if k == 0:
                continue
            sub = 1.0 - X[:, att]
            pre = np.ones((B, k))
            suf = np.ones((B, k))
            if k > 1:
                pre[:, 1:] = np.cumprod(sub[:, :-1], axis=1)
                suf[:, :-1] = np.cumprod(sub[:, :0:-1], axis=1)[:, ::-1]
            J[:, i, att] = -self.tau[i] * pre * suf
        return J

    def picard(self, X: np.ndarray, damping: float) -> np.ndarray:
        return np.clip((1.0 - damping) * X + damping * self.rhs(X), 0.0, 1.0)

    def to_valuation(self, x: np.ndarray) -> dict[str, float]:
        return {a: float(x[i]) for i, a in enumerate(self.fw.arguments)}

    def from_valuation(self, m: Mapping[str, float]) -> np.ndarray:
        return np.array([_unit(m[a], f"start[{a}]") for a in self.fw.arguments])


def picard_step(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    m: Mapping[str, float],
    damping: float,
) -> dict[str, float]:
    """One damped update (1-d)*m + d*RHS(m), clamped to [0, 1]."""
    if not 0.0 < damping <= 1.0:
        raise ValueError("damping must lie in (0, 1]")
    rhs = evaluate_rhs(fw, cfg, m)
    return {
        a: min(max((1.0 - damping) * m[a] + damping * rhs[a], 0.0), 1.0)
        for a in fw.arguments
    }


def jacobian(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    m: Mapping[str, float],
    tau_override: Mapping[str, float] | None = None,
) -> np.ndarray:
    """Jacobian of the constraint operator at m, in canonical argument order.

    Row a is zero except at columns attacking a; a self-attack puts the
    corresponding partial derivative on the diagonal.
    """
    kernel = Kernel(fw, cfg, tau_override)
    return kernel.jacobian(kernel.from_valuation(m)[None, :])[0]


def _newton_direction(kernel: Kernel, x: np.ndarray) -> np.ndarray:
    """Solve (I - J) d = RHS(x) - x; raises numpy LinAlgError when singular."""
    X = x[None, :]
    A = np.eye(kernel.n) - kernel.jacobian(X)[0]
    return np.linalg.solve(A, (kernel.rhs(X)[0] - x))


def solve(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    scfg: SolverConfig | None = None,
    start: Mapping[str, float] | None = None,
    tau_override: Mapping[str, float] | None = None,
) -> SolveOutcome:
    """Run damped Picard down to the switch residual, then Newton to tolerance.

    The default start is the support vector itself. Raises NonConvergence
    (carrying the best iterate seen) when the iteration budget runs out,
    and SingularJacobian when Newton systems are singular and the Picard
    fallback cannot finish the job either.
    """
    scfg = scfg or SolverConfig()
    kernel = Kernel(fw, cfg, tau_override)
    if start is None:
        start = tau_valuation(fw, cfg) if tau_override is None else kernel.to_valuation(kernel.tau)
    x = np.clip(kernel.from_valuation(start), 0.0, 1.0)
    if kernel.n == 0:
        return SolveOutcome({}, 0.0, 0, ())

    trace = []
    iters = 0
    res = float(kernel.residuals(x[None, :])[0])
    best_x, best_res = x.copy(), res
    singular_seen = False

    def picard_until(limit: float) -> float:
        nonlocal x, iters, best_x, best_res
        r = float(kernel.residuals(x[None, :])[0])
        while r > limit and iters < scfg.max_iterations:
            x = kernel.picard(x[None, :], scfg.damping)[0]
            iters += 1
            r = float(kernel.residuals(x[None, :])[0])
            if r < best_res:
                best_x, best_res = x.copy(), r
        return r

    if res > scfg.newton_switch_residual:
        trace.append("picard")
        res = picard_until(scfg.newton_switch_residual)

    while res > scfg.tolerance and iters < scfg.max_iterations:
        if trace[-1:] != ["newton"]:
            trace.append("newton")
        try:
            step = _newton_direction(kernel, x)
        except np.linalg.LinAlgError:
            singular_seen = True
            trace.append("picard")
            res = picard_until(scfg.tolerance)
            continue
        # accept the step only if it improves the residual; back off by
        # halving, and fall back to one damped sweep when nothing helps
        accepted = False
        for _ in range(12):
            cand = np.clip(x + step, 0.0, 1.0)
            cand_res = float(kernel.residuals(cand[None, :])[0])
            if cand_res < res:
                x, res = cand, cand_res
                accepted = True
                break
            step = 0.5 * step
        if not accepted:
            x = kernel.picard(x[None, :], scfg.damping)[0]
            res = float(kernel.residuals(x[None, :])[0])
        iters += 1
        if res < best_res:
            best_x, best_res = x.copy(), res

    if res > scfg.tolerance:
        model = kernel.to_valuation(best_x)
        if singular_seen:
            raise SingularJacobian(
                f"Newton system singular and fallback stalled at residual {best_res:.3e}"
            )
        raise NonConvergence(
            f"no model within tolerance after {iters} iterations (residual {best_res:.3e})",
            best_model=model,
            residual=best_res,
            iterations=iters,
        )
    return SolveOutcome(kernel.to_valuation(x), res, iters, tuple(trace))
