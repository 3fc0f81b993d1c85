"""End-to-end command line behavior, including exit codes."""

import json

import pytest

from socialarg import serialize_saf, document_of
from socialarg.cli import cli_main

FOUR_CYCLE = """\
arg(a). arg(b). arg(c). arg(d).
votes(a,1,0). votes(b,1,0). votes(c,1,0). votes(d,1,0).
att(a,b). att(b,a). att(b,c). att(c,b).
att(c,d). att(d,c). att(d,a). att(a,d).
"""


@pytest.fixture
def ring_file(tmp_path):
    path = tmp_path / "ring.saf"
    path.write_text(FOUR_CYCLE)
    return str(path)


@pytest.fixture
def pair_file(tmp_path, two_component):
    path = tmp_path / "pair.saf"
    path.write_text(serialize_saf(document_of(two_component)))
    return str(path)


def run(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_table_output(self, capsys, ring_file):
        code, out, err = run(capsys, "solve", ring_file)
        assert code == 0
        assert "0.36573" in out
        assert "ranking:" in out
        assert err == ""

    def test_normalize_switches_to_scores(self, capsys, ring_file):
        code, out, _ = run(capsys, "solve", ring_file, "--normalize", "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "scores"
        assert set(doc["payload"]["scores"]) == set("abcd")

    def test_nonconvergence_exits_two(self, capsys, ring_file):
        code, _, err = run(
            capsys, "solve", ring_file, "--max-iter", "1", "--tol", "1e-15"
        )
        assert code == 2
        assert "error" in err

    def test_missing_file_exits_one(self, capsys):
        code, _, err = run(capsys, "solve", "no-such-file.saf")
        assert code == 1
        assert "error" in err

    def test_unreadable_syntax_exits_one(self, capsys, tmp_path):
        bad = tmp_path / "bad.saf"
        bad.write_text("arg(a). votes(a,oops,0).")
        code, _, err = run(capsys, "solve", str(bad))
        assert code == 1
        assert "line 1" in err


class TestEnumerate:
    def test_finds_all_three_models(self, capsys, ring_file):
        code, out, _ = run(capsys, "enumerate", ring_file, "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "models"
        assert len(doc["payload"]["models"]) == 3
        assert doc["metadata"]["exhaustive"] is False
        rankings = {m["ranking"] for m in doc["payload"]["models"]}
        assert rankings == {"a ≃ b ≃ c ≃ d", "b ≃ d ≻ a ≃ c", "a ≃ c ≻ b ≃ d"}

    def test_oracle_mode_is_exhaustive(self, capsys, ring_file):
        code, out, _ = run(
            capsys,
            "enumerate",
            ring_file,
            "--oracle",
            "--resolution",
            "100",
            "--output",
            "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["metadata"]["exhaustive"] is True
        assert len(doc["payload"]["models"]) == 3

    def test_json_is_byte_stable_across_runs(self, capsys, ring_file):
        _, first, _ = run(capsys, "enumerate", ring_file, "--output", "json")
        _, second, _ = run(capsys, "enumerate", ring_file, "--output", "json")
        assert first == second

    def test_table_lists_models_and_rankings(self, capsys, ring_file):
        code, out, _ = run(capsys, "enumerate", ring_file)
        assert code == 0
        assert "0.88875" in out and "0.01125" in out
        assert "a ≃ c ≻ b ≃ d" in out


class TestCertify:
    def test_ring_fails_the_margin_test(self, capsys, ring_file):
        code, out, _ = run(capsys, "certify", ring_file, "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["payload"]["holds"] is False
        assert doc["payload"]["witness"] == "a"
        assert abs(doc["payload"]["margins"]["a"] - (1 - 2 / 1.1)) < 1e-12

    def test_normalize_restores_the_margin(self, capsys, ring_file):
        code, out, _ = run(
            capsys, "certify", ring_file, "--normalize", "--output", "json"
        )
        assert code == 0
        assert json.loads(out)["payload"]["holds"] is True


class TestRank:
    def test_rankings_for_every_model(self, capsys, ring_file):
        code, out, _ = run(capsys, "rank", ring_file, "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["payload"]["rankings"]) == 3


class TestThreeClique:
    def test_solution_and_residual(self, capsys):
        code, out, _ = run(
            capsys, "three-clique", "0.9", "0.5", "0.3", "--output", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["payload"]["residual"] < 1e-9
        x1, x2, x3 = doc["payload"]["solution"]
        assert abs(x1 - 0.9 * (1 - x2) * (1 - x3)) < 1e-9

    def test_out_of_range_support_exits_one(self, capsys):
        code, _, err = run(capsys, "three-clique", "1.5", "0.5", "0.3")
        assert code == 1
        assert "error" in err


class TestIndependence:
    def test_normalized_flip_is_reported(self, capsys, pair_file):
        code, out, _ = run(
            capsys,
            "independence",
            pair_file,
            "--focus",
            "a,f",
            "--pad",
            "1000",
            "--normalized",
            "--output",
            "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["payload"]["violated"] is True
        assert doc["payload"]["before"]["ranking"] == "a ≻ f"
        assert doc["payload"]["after"]["ranking"] == "f ≻ a"

    def test_malformed_focus_exits_one(self, capsys, pair_file):
        code, _, err = run(capsys, "independence", pair_file, "--focus", "a")
        assert code == 1
        assert "error" in err

    def test_malformed_pad_votes_exits_one(self, capsys, pair_file):
        code, _, err = run(
            capsys,
            "independence",
            pair_file,
            "--focus",
            "a,f",
            "--pad-votes",
            "banana",
        )
        assert code == 1
        assert "error" in err


class TestAxioms:
    def test_default_battery_passes(self, capsys):
        code, out, _ = run(capsys, "axioms", "--samples", "500")
        assert code == 0
        assert "all checkable axioms pass" in out

    def test_broken_negation_exits_three(self, capsys):
        code, out, _ = run(
            capsys, "axioms", "--samples", "500", "--negation", "square"
        )
        assert code == 3
        assert "negation_involution" in out
        assert "fail" in out

    def test_json_report_lists_every_check(self, capsys):
        code, out, _ = run(capsys, "axioms", "--samples", "200", "--output", "json")
        assert code == 0
        doc = json.loads(out)
        names = {c["name"] for c in doc["payload"]["checks"]}
        assert "tnorm_associative" in names
        assert "continuity" in names


class TestUsage:
    def test_no_subcommand_exits_one(self, capsys):
        code, _, err = run(capsys)
        assert code == 1
        assert err

    def test_unknown_flag_exits_one(self, capsys, ring_file):
        code, _, err = run(capsys, "solve", ring_file, "--frobnicate")
        assert code == 1
        assert err

    def test_bad_flag_value_exits_one(self, capsys, ring_file):
        code, _, _ = run(capsys, "solve", ring_file, "--damping", "2.0")
        assert code == 1

    def test_epsilon_flag_reaches_the_semantics(self, capsys, tmp_path):
        single = tmp_path / "one.saf"
        single.write_text("arg(x). votes(x,1,0).")
        code, out, _ = run(
            capsys, "solve", str(single), "--epsilon", "1.0", "--output", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["payload"]["values"]["x"] - 0.5) < 1e-12
