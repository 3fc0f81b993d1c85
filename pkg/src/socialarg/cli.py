"""Command-line entry point.

Exit codes: 0 success, 1 input or parse problem, 2 solver
non-convergence, 3 internal invariant breach (including a failing
axiom battery, which means the operator algebra itself is broken).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import (
    certify_uniqueness,
    independence_experiment,
    normalized_solve,
    solve_three_clique,
)
from .enumeration import (
    EnumerationConfig,
    ModelSet,
    enumerate_models,
    format_ranking,
    grid_oracle,
    rankings_of,
)
from .errors import InvariantBreach, NonConvergence, SingularJacobian, SocialArgError
from .framework import VoteRecord
from .safio import ResultEnvelope, emit_result, framework_of, parse_saf
from .semantics import SemanticsConfig, check_well_behaved, tau_valuation
from .solver import SolverConfig, solve


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # route argparse usage problems through exit code 1 instead of its
    # built-in sys.exit(2), which this tool reserves for non-convergence
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _add_common(p):
    p.add_argument("--epsilon", type=float, default=0.1, help="vote smoothing constant (default 0.1)")
    p.add_argument("--tol", type=float, default=1e-12, help="solver residual target (default 1e-12)")
    p.add_argument("--max-iter", dest="max_iter", type=int, default=10000, help="iteration budget (default 10000)")
    p.add_argument("--damping", type=float, default=0.5, help="Picard damping in (0,1] (default 0.5)")
    p.add_argument("--starts", type=int, default=256, help="random starts for enumeration (default 256)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--dedup", type=float, default=1e-6, help="model dedup distance (default 1e-6)")
    p.add_argument("--output", choices=("json", "table"), default="table", help="output format")
    p.add_argument("--normalize", action="store_true", help="divide supports by |A| before solving")


def build_parser() -> _Parser:
    parser = _Parser(prog="socialarg", description="Solve and analyze social argumentation frameworks.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("solve", help="compute one model from the support start")
    p.add_argument("file")
    _add_common(p)

    p = sub.add_parser("enumerate", help="search for all models")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="exhaustive grid scan (at most 4 arguments)")
    p.add_argument("--resolution", type=int, default=200, help="grid resolution for --oracle (default 200)")
    _add_common(p)

    p = sub.add_parser("certify", help="check the uniqueness margin for every argument")
    p.add_argument("file")
    _add_common(p)

    p = sub.add_parser("rank", help="argument rankings of every model found")
    p.add_argument("file")
    p.add_argument("--tie", type=float, default=1e-9, help="tie threshold on values (default 1e-9)")
    _add_common(p)

    p = sub.add_parser("three-clique", help="closed-form solve of a full 3-clique")
    p.add_argument("a1", type=float)
    p.add_argument("a2", type=float)
    p.add_argument("a3", type=float)
    _add_common(p)

    p = sub.add_parser("independence", help="ranking stability under isolated padding")
    p.add_argument("file")
    p.add_argument("--focus", required=True, help="comma-separated pair, e.g. a,f")
    p.add_argument("--pad", type=int, default=1000, help="number of isolated arguments to add")
    p.add_argument("--pad-votes", dest="pad_votes", default="1,0", help="votes for each pad, e.g. 1,0")
    p.add_argument("--normalized", action="store_true", help="compare normalized scores instead of raw values")
    _add_common(p)

    p = sub.add_parser("axioms", help="run the operator axiom battery")
    p.add_argument("--samples", type=int, default=10000, help="sample count (default 10000)")
    p.add_argument(
        "--negation",
        choices=("linear", "square"),
        default="linear",
        help="'square' swaps in the broken negation 1 - x^2 to demo a failure",
    )
    _add_common(p)

    return parser


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8")
    fw = framework_of(parse_saf(text))
    return fw


def _digest(fw):
    return {"arguments": fw.argument_count, "attacks": fw.attack_count}


def _semantics_dict(ns):
    return {
        "epsilon": ns.epsilon,
        "tolerance": ns.tol,
        "max_iterations": ns.max_iter,
        "damping": ns.damping,
        "starts": ns.starts,
        "seed": ns.seed,
        "dedup_distance": ns.dedup,
    }


def _ranking_str(values: dict, tie: float = 1e-9) -> str:
    ms = ModelSet((values,), (0.0,), 1, 0, False)
    return format_ranking(rankings_of(ms, tie)[0])


def _override(fw, cfg, ns):
    if not ns.normalize:
        return None
    n = max(fw.argument_count, 1)
    return {a: v / n for a, v in tau_valuation(fw, cfg).items()}


def _models_payload(fw, ms, tie=1e-9):
    rankings = rankings_of(ms, tie)
    return {
        "arguments": list(fw.arguments),
        "models": [
            {
                "values": dict(m),
                "residual": r,
                "ranking": format_ranking(rk),
            }
            for m, r, rk in zip(ms.models, ms.residuals, rankings)
        ],
    }


def _cmd_solve(ns, cfg, scfg, ecfg):
    fw = _load(ns.file)
    if ns.normalize:
        scores, ms = normalized_solve(fw, cfg, scfg, ecfg)
        payload = {
            "scores": scores,
            "model": dict(ms.models[0]),
            "ranking": _ranking_str(scores),
        }
        meta = {"starts_used": ms.starts_used, "nonconverged": ms.nonconverged}
        return ResultEnvelope(_digest(fw), _semantics_dict(ns), "scores", payload, meta), 0
    outcome = solve(fw, cfg, scfg)
    payload = {
        "values": outcome.model,
        "residual": outcome.residual,
        "iterations": outcome.iterations,
        "method_trace": list(outcome.method_trace),
        "ranking": _ranking_str(outcome.model),
    }
    return ResultEnvelope(_digest(fw), _semantics_dict(ns), "model", payload, {}), 0


def _cmd_enumerate(ns, cfg, scfg, ecfg):
    fw = _load(ns.file)
    if ns.oracle:
        ms = grid_oracle(fw, cfg, ns.resolution, scfg, ecfg)
    else:
        ms = enumerate_models(fw, cfg, scfg, ecfg, tau_override=_override(fw, cfg, ns))
    payload = _models_payload(fw, ms)
    meta = {
        "starts_used": ms.starts_used,
        "nonconverged": ms.nonconverged,
        "exhaustive": ms.exhaustive_flag,
        "models_found": len(ms),
    }
    return ResultEnvelope(_digest(fw), _semantics_dict(ns), "models", payload, meta), 0


def _cmd_certify(ns, cfg, scfg, ecfg):
    fw = _load(ns.file)
    cert = certify_uniqueness(fw, cfg, tau_override=_override(fw, cfg, ns))
    payload = {"holds": cert.holds, "witness": cert.witness, "margins": cert.margins}
    return ResultEnvelope(_digest(fw), _semantics_dict(ns), "certificate", payload, {}), 0


def _cmd_rank(ns, cfg, scfg, ecfg):
    fw = _load(ns.file)
    ms = enumerate_models(fw, cfg, scfg, ecfg, tau_override=_override(fw, cfg, ns))
    rankings = rankings_of(ms, ns.tie)
    payload = {
        "rankings": [
            {"ranking": format_ranking(rk), "values": dict(m)}
            for rk, m in zip(rankings, ms.models)
        ]
    }
    meta = {"models_found": len(ms), "starts_used": ms.starts_used}
    return ResultEnvelope(_digest(fw), _semantics_dict(ns), "rankings", payload, meta), 0


def _cmd_three_clique(ns, cfg, scfg, ecfg):
    supports = (ns.a1, ns.a2, ns.a3)
    solution = solve_three_clique(*supports, tol=scfg.tolerance)
    res = max(
        abs(solution[i] - supports[i] * (1 - solution[(i + 1) % 3]) * (1 - solution[(i + 2) % 3]))
        for i in range(3)
    )
    payload = {"supports": list(supports), "solution": list(solution), "residual": res}
    return ResultEnvelope({}, _semantics_dict(ns), "three_clique", payload, {}), 0


def _cmd_independence(ns, cfg, scfg, ecfg):
    fw = _load(ns.file)
    focus = tuple(part.strip() for part in ns.focus.split(","))
    if len(focus) != 2 or not all(focus):
        raise _UsageError("--focus wants exactly two comma-separated ids, e.g. a,f")
    try:
        pro, con = (int(part) for part in ns.pad_votes.split(","))
    except ValueError:
        raise _UsageError("--pad-votes wants two comma-separated integers, e.g. 1,0") from None
    mode = "normalized" if ns.normalized else "raw"
    report = independence_experiment(
        fw, cfg, focus, ns.pad, VoteRecord(pro, con), mode=mode, scfg=scfg, ecfg=ecfg
    )
    payload = {
        "focus": list(report.focus_pair),
        "mode": report.mode,
        "padding": report.padding_count,
        "before": {"values": list(report.values_before), "ranking": report.ranking_before},
        "after": {"values": list(report.values_after), "ranking": report.ranking_after},
        "violated": report.violated,
    }
    return ResultEnvelope(_digest(fw), _semantics_dict(ns), "independence", payload, {}), 0


def _cmd_axioms(ns, cfg, scfg, ecfg):
    negation_fn = (lambda x: 1.0 - x * x) if ns.negation == "square" else None
    report = check_well_behaved(cfg, samples=ns.samples, seed=ns.seed, negation_fn=negation_fn)
    payload = {
        "passed": report.passed,
        "samples": report.samples,
        "checks": [
            {"name": c.name, "status": c.status, "witness": c.witness}
            for c in report.checks
        ],
    }
    env = ResultEnvelope({}, _semantics_dict(ns), "axioms", payload, {})
    return env, (0 if report.passed else 3)


_COMMANDS = {
    "solve": _cmd_solve,
    "enumerate": _cmd_enumerate,
    "certify": _cmd_certify,
    "rank": _cmd_rank,
    "three-clique": _cmd_three_clique,
    "independence": _cmd_independence,
    "axioms": _cmd_axioms,
}

_INPUT_ERRORS = (SocialArgError, OSError, ValueError)


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        cfg = SemanticsConfig(epsilon=ns.epsilon)
        scfg = SolverConfig(tolerance=ns.tol, max_iterations=ns.max_iter, damping=ns.damping)
        ecfg = EnumerationConfig(random_starts=ns.starts, seed=ns.seed, dedup_distance=ns.dedup)
        env, code = _COMMANDS[ns.command](ns, cfg, scfg, ecfg)
        print(emit_result(env, ns.output))
        return code
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NonConvergence, SingularJacobian) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantBreach as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # anything else is a bug in this package
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


def main():
    sys.exit(cli_main())
