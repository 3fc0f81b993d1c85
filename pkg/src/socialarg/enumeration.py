"""Finding every model of a framework, not just one.

Multi-start solving seeds the solver from the support vector, from
low/high corner combinations (the asymmetric models of mutual-attack
graphs live near the extremes), and from seeded uniform random points,
then deduplicates the converged results. For up to four arguments a
brute-force grid scan provides an independent exhaustiveness check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooLarge
from .framework import SocialFramework
from .semantics import SemanticsConfig
from .solver import Kernel, SolverConfig

_ACTIVE, _CONV, _FAIL, _READY = 0, 1, 2, 3

# above this many matrix entries, Newton batches get clustered first and
# then chunked so the stacked Jacobians stay inside a sane memory budget
_DENSE_BUDGET = 8_000_000


@dataclass(frozen=True)
class EnumerationConfig:
    random_starts: int = 256
    seed: int = 0
    dedup_distance: float = 1e-6
    corner_levels: tuple[float, float] = (0.05, 0.95)
    corner_limit: int = 4096

    def __post_init__(self):
        if self.random_starts < 0:
            raise ValueError("random_starts must be non-negative")
        if not self.dedup_distance > 0:
            raise ValueError("dedup_distance must be positive")
        lo, hi = self.corner_levels
        if not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
            raise ValueError("corner levels must lie in [0, 1]")
        if self.corner_limit < 0:
            raise ValueError("corner_limit must be non-negative")


@dataclass(frozen=True)
class ModelSet:
    """Deduplicated converged models plus bookkeeping about the search."""

    models: tuple[dict[str, float], ...]
    residuals: tuple[float, ...]
    starts_used: int
    nonconverged: int
    exhaustive_flag: bool

    def __len__(self) -> int:
        return len(self.models)


def _newton_rows(kernel, X, res, scfg, max_steps=60):
    """Newton-polish each row in place; returns a converged mask."""
    n = kernel.n
    ok = res <= scfg.tolerance
    alive = ~ok
    eye = np.eye(n)
    for _ in range(max_steps):
        idx = np.nonzero(alive)[0]
        if idx.size == 0:
            break
        Xa = X[idx]
        A = eye - kernel.jacobian(Xa)
        rhs = kernel.rhs(Xa) - Xa
        try:
            delta = np.linalg.solve(A, rhs[..., None])[..., 0]
        except np.linalg.LinAlgError:
            delta = np.full_like(Xa, np.nan)
            for j in range(idx.size):
                try:
                    delta[j] = np.linalg.solve(A[j], rhs[j])
                except np.linalg.LinAlgError:
                    pass  # leave NaN; the row is retired below
        cand = np.clip(Xa + delta, 0.0, 1.0)
        cres = kernel.residuals(cand)
        # halve steps that made things worse before giving up on the row
        for _ in range(12):
            worse = ~(cres < res[idx])
            if not worse.any():
                break
            delta[worse] *= 0.5
            cand[worse] = np.clip(Xa[worse] + delta[worse], 0.0, 1.0)
            cres[worse] = kernel.residuals(cand[worse])
        improved = cres < res[idx]
        with np.errstate(invalid="ignore"):
            cres = np.where(np.isnan(cres), np.inf, cres)
        X[idx[improved]] = cand[improved]
        res[idx[improved]] = cres[improved]
        done = idx[res[idx] <= scfg.tolerance]
        ok[done] = True
        alive[done] = False
        alive[idx[~improved]] = False  # stalled or singular: retire
    return ok


def _newton_chunked(kernel, X, res, scfg):
    n = max(kernel.n, 1)
    chunk = max(1, _DENSE_BUDGET // (n * n))
    ok = np.zeros(X.shape[0], dtype=bool)
    for lo in range(0, X.shape[0], chunk):
        hi = min(lo + chunk, X.shape[0])
        ok[lo:hi] = _newton_rows(kernel, X[lo:hi], res[lo:hi], scfg)
    return ok


def _cluster_rows(X, radius):
    """Greedy max-norm clustering; returns (representative indices, labels)."""
    reps: list[int] = []
    labels = np.empty(X.shape[0], dtype=np.int64)
    for r in range(X.shape[0]):
        assigned = False
        for ci, rep in enumerate(reps):
            if np.max(np.abs(X[r] - X[rep])) <= radius:
                labels[r] = ci
                assigned = True
                break
        if not assigned:
            labels[r] = len(reps)
            reps.append(r)
    return np.array(reps, dtype=np.int64), labels


def _solve_batch(kernel, X0, scfg, dedup_distance, polish_only=False):
    """Drive a batch of starts to convergence.

    Returns (candidates, nonconverged) where candidates is a list of
    (vector, residual) pairs with residual <= tolerance. polish_only
    skips the Picard phase and applies Newton straight to each row,
    which is what the grid oracle needs: a damped sweep would drift off
    roots whose Picard iteration is locally unstable.
    """
    B, n = X0.shape
    X = np.clip(np.asarray(X0, dtype=float), 0.0, 1.0).copy()
    res = kernel.residuals(X)
    status = np.full(B, _ACTIVE, dtype=np.int64)
    status[res <= scfg.tolerance] = _CONV

    candidates: list[tuple[np.ndarray, float]] = []
    nonconverged = 0

    if polish_only:
        todo = status == _ACTIVE
        if todo.any():
            idx = np.nonzero(todo)[0]
            sub_X = X[todo]  # boolean indexing copies; write results back below
            sub_res = res[todo]
            okk = _newton_chunked(kernel, sub_X, sub_res, scfg)
            X[idx], res[idx] = sub_X, sub_res
            status[idx[okk]] = _CONV
            status[idx[~okk]] = _FAIL
        for r in np.nonzero(status == _CONV)[0]:
            candidates.append((X[r].copy(), float(res[r])))
        return candidates, int((status == _FAIL).sum())

    collapse = n * n * B > _DENSE_BUDGET
    sweeps = 0
    switch = scfg.newton_switch_residual

    if not collapse:
        status[(status == _ACTIVE) & (res <= switch)] = _READY
        while sweeps < scfg.max_iterations:
            act = status == _ACTIVE
            if not act.any():
                break
            X[act] = kernel.picard(X[act], scfg.damping)
            sweeps += 1
            res[act] = kernel.residuals(X[act])
            act = status == _ACTIVE
            status[act & (res <= scfg.tolerance)] = _CONV
            act = status == _ACTIVE
            status[act & (res <= switch)] = _READY
        status[status == _ACTIVE] = _FAIL
        ready = np.nonzero(status == _READY)[0]
        if ready.size:
            sub_X, sub_res = X[ready], res[ready]
            okk = _newton_chunked(kernel, sub_X, sub_res, scfg)
            X[ready], res[ready] = sub_X, sub_res
            status[ready[okk]] = _CONV
            status[ready[~okk]] = _FAIL
        for r in np.nonzero(status == _CONV)[0]:
            candidates.append((X[r].copy(), float(res[r])))
        return candidates, int((status == _FAIL).sum())

    # large systems: keep sweeping the whole bundle until the remaining
    # rows have contracted onto (nearly) common points, then polish one
    # representative per cluster so the dense Newton work stays small
    extra = 0
    spread_mark = np.inf
    while sweeps < scfg.max_iterations:
        act = status == _ACTIVE
        if not act.any():
            break
        X[act] = kernel.picard(X[act], scfg.damping)
        sweeps += 1
        res[act] = kernel.residuals(X[act])
        act = status == _ACTIVE
        status[act & (res <= scfg.tolerance)] = _CONV
        act = status == _ACTIVE
        if not act.any():
            break
        if np.all(res[act] <= switch):
            spread = float(np.max(np.ptp(X[act], axis=0))) if act.sum() > 1 else 0.0
            if spread <= dedup_distance:
                break
            extra += 1
            if extra % 20 == 0:
                if spread > 0.7 * spread_mark:
                    break  # bundle is no longer contracting: distinct roots
                spread_mark = spread
            if extra >= 400:
                break
    act = status == _ACTIVE
    status[act & (res <= switch)] = _READY
    status[status == _ACTIVE] = _FAIL

    for r in np.nonzero(status == _CONV)[0]:
        candidates.append((X[r].copy(), float(res[r])))
    nonconverged += int((status == _FAIL).sum())

    ready = np.nonzero(status == _READY)[0]
    if ready.size:
        reps, labels = _cluster_rows(X[ready], dedup_distance)
        rep_X = X[ready][reps].copy()
        rep_res = res[ready][reps].copy()
        okk = _newton_chunked(kernel, rep_X, rep_res, scfg)
        sizes = np.bincount(labels, minlength=reps.size)
        for ci in range(reps.size):
            if okk[ci]:
                candidates.append((rep_X[ci].copy(), float(rep_res[ci])))
            else:
                nonconverged += int(sizes[ci])
    return candidates, nonconverged


def _dedup(candidates, dedup_distance):
    ordered = sorted(candidates, key=lambda c: tuple(c[0]))
    kept: list[tuple[np.ndarray, float]] = []
    for vec, r in ordered:
        if all(np.max(np.abs(vec - k)) > dedup_distance for k, _ in kept):
            kept.append((vec, r))
    return kept


def enumerate_models(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    scfg: SolverConfig | None = None,
    ecfg: EnumerationConfig | None = None,
    tau_override=None,
) -> ModelSet:
    """Multi-start search for all models; results are sorted and deduplicated.

    Non-converged starts are dropped and counted, never raised. The
    returned set makes no exhaustiveness claim (exhaustive_flag False);
    use grid_oracle to certify small instances.
    """
    scfg = scfg or SolverConfig()
    ecfg = ecfg or EnumerationConfig()
    if ecfg.dedup_distance <= scfg.tolerance:
        raise ValueError("dedup_distance must exceed the solver tolerance")
    kernel = Kernel(fw, cfg, tau_override)
    n = kernel.n
    if n == 0:
        return ModelSet(({},), (0.0,), 1, 0, True)

    starts = [kernel.tau[None, :]]
    if 0 < 2**n <= ecfg.corner_limit:
        bits = (np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1
        lo, hi = ecfg.corner_levels
        starts.append(np.where(bits == 0, lo, hi).astype(float))
    if ecfg.random_starts:
        rng = np.random.default_rng(ecfg.seed)
        starts.append(rng.uniform(size=(ecfg.random_starts, n)))
    X0 = np.vstack(starts)

    candidates, nonconverged = _solve_batch(kernel, X0, scfg, ecfg.dedup_distance)
    kept = _dedup(candidates, ecfg.dedup_distance)
    return ModelSet(
        tuple(kernel.to_valuation(v) for v, _ in kept),
        tuple(r for _, r in kept),
        X0.shape[0],
        nonconverged,
        False,
    )


def _grid_survivors(kernel, resolution, theta):
    """All grid points whose residual is at most theta.

    Enumerates the sub-lattice over the first n-1 coordinates and pins the
    last coordinate from its own constraint: for fixed other coordinates
    the last residual is small only inside a window of width 2*theta
    around tau*P (or its self-attack variant), so only those grid values
    need checking. Every grid point with overall residual <= theta has a
    last coordinate inside the window, hence is visited; visited points
    are then kept by the exact full-residual test. The scan therefore
    matches a full (resolution+1)^n sweep at a fraction of the cost.
    """
    n = kernel.n
    r = resolution
    p = n - 1
    fuzz = 1e-9
    att_p = kernel.attacker_idx[p]
    self_attack = bool(np.any(att_p == p))
    att_p_other = att_p[att_p != p]
    indep = [
        q for q in range(n - 1) if not np.any(kernel.attacker_idx[q] == p)
    ]
    tau_p = kernel.tau[p]

    sub_dims = n - 1
    total = (r + 1) ** sub_dims
    chunk_rows = 500_000 if sub_dims else 1
    found = []
    grid = np.arange(r + 1) / r

    for lo in range(0, total, chunk_rows):
        hi = min(lo + chunk_rows, total)
        lin = np.arange(lo, hi, dtype=np.int64)
        Xsub = np.empty((lin.size, sub_dims))
        for d in range(sub_dims):
            Xsub[:, d] = grid[(lin // (r + 1) ** d) % (r + 1)]

        # coordinates whose constraint does not involve the pinned one can
        # be checked right away and prune most of the sub-lattice
        keep = np.ones(lin.size, dtype=bool)
        for q in indep:
            rhs_q = kernel.tau[q] * np.prod(1.0 - Xsub[:, kernel.attacker_idx[q]], axis=1)
            keep &= np.abs(Xsub[:, q] - rhs_q) <= theta + fuzz
        if not keep.any():
            continue
        Xsub = Xsub[keep]

        P = np.prod(1.0 - Xsub[:, att_p_other], axis=1) if att_p_other.size else np.ones(Xsub.shape[0])
        center = tau_p * P / (1.0 + tau_p * P) if self_attack else tau_p * P
        k_lo = np.ceil((center - theta) * r - fuzz).astype(np.int64).clip(0, r)
        k_hi = np.floor((center + theta) * r + fuzz).astype(np.int64).clip(0, r)
        width = int(np.max(k_hi - k_lo + 1)) if Xsub.size or sub_dims == 0 else 0
        for w in range(max(width, 0)):
            k = k_lo + w
            rows = np.nonzero(k <= k_hi)[0]
            if rows.size == 0:
                continue
            pts = np.concatenate([Xsub[rows], grid[k[rows]][:, None]], axis=1)
            full = kernel.residuals(pts)
            good = full <= theta + fuzz
            if good.any():
                found.append(pts[good])

    return np.vstack(found) if found else np.zeros((0, n))


def grid_oracle(
    fw: SocialFramework,
    cfg: SemanticsConfig,
    resolution: int = 200,
    scfg: SolverConfig | None = None,
    ecfg: EnumerationConfig | None = None,
) -> ModelSet:
    """Exhaustive low-resolution scan for frameworks with at most 4 arguments.

    Every grid cell whose residual beats a Lipschitz-derived threshold is
    polished with Newton and the polished roots are deduplicated. The
    threshold is coarse enough that the cell nearest any true model always
    survives, so the model count is certified at grid granularity
    (exhaustive_flag is set).
    """
    scfg = scfg or SolverConfig()
    ecfg = ecfg or EnumerationConfig()
    n = len(fw.arguments)
    if n > 4:
        raise TooLarge(f"grid oracle handles at most 4 arguments, got {n}")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if n == 0:
        return ModelSet(({},), (0.0,), 1, 0, True)

    kernel = Kernel(fw, cfg)
    lip = float(np.max(kernel.tau * kernel.counts)) if n else 0.0
    theta = 0.75 * (1.0 + lip) / resolution
    survivors = _grid_survivors(kernel, resolution, theta)

    candidates, nonconverged = _solve_batch(
        kernel, survivors, scfg, ecfg.dedup_distance, polish_only=True
    )
    kept = _dedup(candidates, ecfg.dedup_distance)
    return ModelSet(
        tuple(kernel.to_valuation(v) for v, _ in kept),
        tuple(r for _, r in kept),
        int(survivors.shape[0]),
        nonconverged,
        True,
    )


def rankings_of(ms: ModelSet, tie_epsilon: float = 1e-9):
    """Per-model total preorders: tiers of arguments by descending value.

    Each ranking is a tuple of tiers; a tier is a tuple of argument names
    whose values sit within tie_epsilon of their neighbours.
    """
    out = []
    for m in ms.models:
        if not m:
            out.append(())
            continue
        order = sorted(m, key=lambda a: (-m[a], a))
        tiers = []
        current = [order[0]]
        for prev, a in zip(order, order[1:]):
            if m[prev] - m[a] > tie_epsilon:
                tiers.append(tuple(sorted(current)))
                current = [a]
            else:
                current.append(a)
        tiers.append(tuple(sorted(current)))
        out.append(tuple(tiers))
    return out


def format_ranking(ranking) -> str:
    """Render tiers like 'b ≃ d ≻ a ≃ c'."""
    return " ≻ ".join(" ≃ ".join(tier) for tier in ranking)
