"""Picard iteration, analytic Jacobian, and the damped Picard + Newton solver."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from socialarg import (
    NonConvergence,
    SemanticsConfig,
    SolverConfig,
    build_framework,
    certify_uniqueness,
    evaluate_rhs,
    jacobian,
    picard_step,
    residual,
    solve,
    tau_valuation,
)


@pytest.fixture
def two_cycle():
    return build_framework(
        ["p", "q"], [("p", "q"), ("q", "p")], {"p": (1, 0), "q": (1, 0)}
    )


def fd_jacobian(fw, cfg, m, step=1e-7):
    """Central finite differences of the constraint operator."""
    names = fw.arguments
    out = np.zeros((len(names), len(names)))
    for j, b in enumerate(names):
        hi = dict(m)
        lo = dict(m)
        hi[b] = m[b] + step
        lo[b] = m[b] - step
        up = evaluate_rhs(fw, cfg, hi)
        dn = evaluate_rhs(fw, cfg, lo)
        for i, a in enumerate(names):
            out[i, j] = (up[a] - dn[a]) / (2 * step)
    return out


class TestPicardStep:
    def test_fixed_point_is_stationary(self, two_cycle, cfg):
        m = {"p": 1 / 2.1, "q": 1 / 2.1}
        out = picard_step(two_cycle, cfg, m, damping=0.5)
        assert abs(out["p"] - 1 / 2.1) < 1e-12
        assert abs(out["q"] - 1 / 2.1) < 1e-12

    def test_full_step_from_zero_hits_the_support(self, cfg):
        fw = build_framework(["x"], votes={"x": (1, 0)})
        out = picard_step(fw, cfg, {"x": 0.0}, damping=1.0)
        assert abs(out["x"] - 1 / 1.1) < 1e-12

    def test_half_step_averages_start_and_target(self, cfg):
        fw = build_framework(["x"], votes={"x": (1, 0)})
        out = picard_step(fw, cfg, {"x": 0.0}, damping=0.5)
        assert abs(out["x"] - 0.5 / 1.1) < 1e-12

    def test_damping_must_be_usable(self, two_cycle, cfg):
        m = {"p": 0.0, "q": 0.0}
        for bad in (0.0, -0.5, 1.5):
            with pytest.raises(ValueError):
                picard_step(two_cycle, cfg, m, damping=bad)

    def test_output_stays_in_the_unit_cube(self, four_cycle, cfg):
        rng = np.random.default_rng(0)
        for _ in range(25):
            m = dict(zip("abcd", map(float, rng.uniform(size=4))))
            out = picard_step(four_cycle, cfg, m, damping=1.0)
            for v in out.values():
                assert 0.0 <= v <= 1.0


class TestJacobian:
    def test_unattacked_row_is_zero(self, cfg):
        fw = build_framework(["x", "y"], [("x", "y")], {"x": (1, 0), "y": (1, 0)})
        J = jacobian(fw, cfg, {"x": 0.3, "y": 0.4})
        i = fw.index_of("x")
        assert np.all(J[i] == 0.0)

    def test_two_cycle_at_zero(self, two_cycle, cfg):
        J = jacobian(two_cycle, cfg, {"p": 0.0, "q": 0.0})
        expect = -1 / 1.1
        assert abs(J[0, 1] - expect) < 1e-12
        assert abs(J[1, 0] - expect) < 1e-12
        assert J[0, 0] == 0.0 and J[1, 1] == 0.0

    def test_self_attack_sits_on_the_diagonal(self, cfg):
        fw = build_framework(["s"], [("s", "s")], {"s": (1, 0)})
        J = jacobian(fw, cfg, {"s": 0.25})
        assert abs(J[0, 0] - (-1 / 1.1)) < 1e-12

    def test_matches_finite_differences(self, four_cycle, two_component, cfg):
        rng = np.random.default_rng(1)
        for fw in (four_cycle, two_component):
            for _ in range(20):
                m = dict(
                    zip(
                        fw.arguments,
                        map(float, rng.uniform(0.05, 0.95, size=len(fw.arguments))),
                    )
                )
                J = jacobian(fw, cfg, m)
                F = fd_jacobian(fw, cfg, m)
                assert np.max(np.abs(J - F)) < 1e-6

    def test_entries_scale_with_the_remaining_factors(self, cfg):
        fw = build_framework(
            ["t", "u", "v"],
            [("u", "t"), ("v", "t")],
            {"t": (1, 0), "u": (1, 0), "v": (1, 0)},
        )
        m = {"t": 0.1, "u": 0.3, "v": 0.6}
        J = jacobian(fw, cfg, m)
        it, iu, iv = (fw.index_of(x) for x in "tuv")
        assert abs(J[it, iu] - (-(1 / 1.1) * (1 - m["v"]))) < 1e-12
        assert abs(J[it, iv] - (-(1 / 1.1) * (1 - m["u"]))) < 1e-12


class TestSolve:
    def test_symmetric_start_finds_the_symmetric_model(self, four_cycle, cfg):
        out = solve(four_cycle, cfg)
        for a in "abcd":
            assert abs(out.model[a] - 0.36573) < 1e-4
        assert out.residual <= 1e-12
        assert set(out.method_trace) <= {"picard", "newton"}

    def test_unattacked_argument_is_immediate(self, cfg):
        fw = build_framework(["x"], votes={"x": (1, 0)})
        out = solve(fw, cfg)
        assert abs(out.model["x"] - 1 / 1.1) < 1e-12
        assert out.iterations <= 1

    def test_two_cycle_closed_form(self, two_cycle, cfg):
        out = solve(two_cycle, cfg)
        assert abs(out.model["p"] - 1 / 2.1) < 1e-9
        assert abs(out.model["q"] - 1 / 2.1) < 1e-9

    def test_self_attacker_closed_form(self, cfg):
        fw = build_framework(["s"], [("s", "s")], {"s": (1, 0)})
        out = solve(fw, cfg)
        assert abs(out.model["s"] - 1 / 2.1) < 1e-12

    def test_result_is_a_fixed_point(self, two_component, cfg):
        out = solve(two_component, cfg)
        assert residual(two_component, cfg, out.model) <= 1e-12

    def test_repeat_runs_are_bit_identical(self, four_cycle, cfg):
        first = solve(four_cycle, cfg)
        second = solve(four_cycle, cfg)
        assert first.model == second.model
        assert first.iterations == second.iterations
        assert first.method_trace == second.method_trace

    def test_start_selects_the_basin(self, four_cycle, cfg):
        near_alternating = {"a": 0.9, "b": 0.01, "c": 0.9, "d": 0.01}
        out = solve(four_cycle, cfg, start=near_alternating)
        assert abs(out.model["a"] - 0.88875) < 1e-4
        assert abs(out.model["b"] - 0.01125) < 1e-4

    def test_override_shrinks_the_model(self, four_cycle, cfg):
        base = tau_valuation(four_cycle, cfg)
        override = {a: base[a] / 4 for a in four_cycle.arguments}
        out = solve(four_cycle, cfg, tau_override=override)
        for a in "abcd":
            assert out.model[a] < override[a] + 1e-12
        got = evaluate_rhs(four_cycle, cfg, out.model, tau_override=override)
        assert max(abs(got[a] - out.model[a]) for a in "abcd") <= 1e-12

    def test_iteration_budget_exhaustion_keeps_the_best_iterate(self, four_cycle, cfg):
        scfg = SolverConfig(tolerance=1e-15, max_iterations=1)
        with pytest.raises(NonConvergence) as exc:
            solve(four_cycle, cfg, scfg)
        err = exc.value
        assert set(err.best_model) == set("abcd")
        assert err.residual is not None and err.residual > 0.0
        assert err.iterations == 1

    def test_empty_framework_has_the_empty_model(self, cfg):
        out = solve(build_framework([]), cfg)
        assert out.model == {}
        assert out.residual == 0.0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SolverConfig(tolerance=0.0)
        with pytest.raises(ValueError):
            SolverConfig(max_iterations=0)
        with pytest.raises(ValueError):
            SolverConfig(damping=0.0)
        with pytest.raises(ValueError):
            SolverConfig(damping=1.5)
        with pytest.raises(ValueError):
            SolverConfig(tolerance=1e-3, newton_switch_residual=1e-6)


@st.composite
def small_frameworks(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    names = [f"n{i}" for i in range(n)]
    pairs = st.tuples(st.sampled_from(names), st.sampled_from(names))
    attacks = draw(st.lists(pairs, max_size=n + 2))
    votes = {
        name: (draw(st.integers(0, 9)), draw(st.integers(0, 9)))
        for name in names
    }
    return build_framework(names, attacks, votes)


@given(small_frameworks())
@settings(max_examples=40, deadline=None)
def test_certified_frameworks_contract_under_pure_iteration(fw):
    cfg = SemanticsConfig(epsilon=0.1)
    assume(certify_uniqueness(fw, cfg).holds)
    reference = solve(fw, cfg).model
    m = {a: 0.5 for a in fw.arguments}
    for _ in range(400):
        m = picard_step(fw, cfg, m, damping=1.0)
    for a in fw.arguments:
        assert abs(m[a] - reference[a]) < 1e-8


@given(small_frameworks())
@settings(max_examples=40, deadline=None)
def test_solutions_are_fixed_points_within_tolerance(fw):
    cfg = SemanticsConfig(epsilon=0.1)
    out = solve(fw, cfg)
    assert residual(fw, cfg, out.model) <= 1e-12
