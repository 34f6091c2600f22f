#!/usr/bin/env python3
"""
In-process tests for the command implementations and their exit codes.
"""

import io
import json
from pathlib import Path

import pytest

from lambda_epsilon.canonical import canonicalize, perm_eq
from lambda_epsilon.main import (
    EXIT_CARRIER,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    main,
)
from lambda_epsilon.parsers import parse

GOLDEN = Path(__file__).parent / "golden"
OMEGA = "(\\x. x x) (\\x. x x)"


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Run every command away from the repository's config/config.yaml."""
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


class TestTermCommands:
    """parse, canon, equiv, reduce, normalize and subst."""

    def test_parse_round_trip(self, capsys):
        code, out, _ = run(capsys, "parse", "-e", "(\\x . x)   y")
        assert code == EXIT_OK
        assert out.strip() == "(\\x. x) y"

    def test_parse_ast(self, capsys):
        code, document = run_json(capsys, "parse", "-e", "eps 0")
        assert code == EXIT_OK
        assert document["result"]["ast"] == {"tag": "eps", "body": {"tag": "zero"}}

    def test_canon_golden(self, capsys):
        code, out, _ = run(capsys, "canon", "-e", "D(u) * (x + y + eps z)")
        assert code == EXIT_OK
        golden = (GOLDEN / "canon_example.txt").read_text(encoding="utf-8").strip()
        assert perm_eq(canonicalize(parse(out.strip())), canonicalize(parse(golden)))

    def test_canon_json_summands(self, capsys):
        code, document = run_json(capsys, "canon", "-e", "D(u) * (x + y + eps z)")
        assert code == EXIT_OK
        summands = document["result"]["summands"]
        assert len(summands) == 7
        assert [s["eps"] for s in summands].count(0) == 2

    def test_equivalent(self, capsys):
        code, out, _ = run(capsys, "equiv", "-e", "s + t", "-e", "t + s")
        assert code == EXIT_OK
        assert out.strip() == "equivalent"

    def test_not_equivalent(self, capsys):
        code, out, err = run(capsys, "equiv", "-e", "D(s) * (t + e)", "-e", "D(s) * t")
        assert code == EXIT_NEGATIVE
        assert out.strip() == "not equivalent"
        assert "left:" in err

    def test_wrong_number_of_terms(self, capsys):
        code, _, err = run(capsys, "equiv", "-e", "x")
        assert code == EXIT_USAGE
        assert "UsageError" in err

    def test_reduce(self, capsys):
        code, document = run_json(capsys, "reduce", "-e", "f ((\\x. x) y)")
        assert code == EXIT_OK
        assert document["result"]["successors"] == [
            {"kind": "beta", "path": ["arg"], "term": "f y"}
        ]

    def test_reduce_classes(self, capsys):
        code, out, _ = run(capsys, "reduce", "--classes", "-e", "(\\x. x + 0) 0")
        assert code == EXIT_OK
        assert out.strip() == "0"

    def test_normalize(self, capsys):
        code, document = run_json(capsys, "normalize", "-e", "(\\x. x) y")
        assert code == EXIT_OK
        assert document["result"] == {"normal_form": "y", "steps": 1, "exhausted": False}

    def test_normalize_out_of_fuel(self, capsys):
        code, document = run_json(capsys, "normalize", "--fuel", "5", "-e", OMEGA)
        assert code == EXIT_NEGATIVE
        assert document["result"]["exhausted"] is True
        assert document["result"]["steps"] == 5

    def test_subst(self, capsys):
        code, out, _ = run(capsys, "subst", "--var", "x", "--with", "y", "-e", "\\y. x")
        assert code == EXIT_OK
        assert out.strip() == "\\y'. y"

    def test_differential_subst(self, capsys):
        argv = ("subst", "--differential", "--var", "x", "--with", "u", "-e", "x")
        code, out, _ = run(capsys, *argv)
        assert code == EXIT_OK
        assert out.strip() == "u"

    def test_differential_subst_capture(self, capsys):
        argv = ("subst", "--differential", "--var", "x", "--with", "f x", "-e", "x")
        code, out, err = run(capsys, *argv)
        assert code == EXIT_PRECONDITION
        assert out == ""
        assert "FreeVariableCaptureError" in err

    def test_terms_from_files_and_stdin(self, capsys, tmp_path, monkeypatch):
        (tmp_path / "left.term").write_text("x + 0\n", encoding="utf-8")
        monkeypatch.setattr("sys.stdin", io.StringIO("x"))
        code, out, _ = run(capsys, "equiv", "left.term", "-")
        assert code == EXIT_OK
        assert out.strip() == "equivalent"


class TestTypesAndModel:
    """typecheck and eval."""

    def test_unbound_variable(self, capsys):
        code, out, err = run(capsys, "typecheck", "--type", "a", "-e", "x")
        assert code == EXIT_NEGATIVE
        assert out.strip() == "ill-typed"
        assert "unbound variable 'x'" in err

    def test_judgement(self, capsys):
        code, out, _ = run(capsys, "typecheck", "--ctx", "f:a -> a", "-e", "\\x:a. f x")
        assert code == EXIT_OK
        assert out.strip() == "f:a -> a |- \\x:a. f x : a -> a"

    def test_argument_without_synthesis(self, capsys):
        code, _, _ = run(capsys, "typecheck", "--type", "a", "-e", "(\\x. 0) (\\y. y)")
        assert code == EXIT_OK

    def test_class_typing(self, capsys):
        argv = ("typecheck", "--ctx", "y:a", "--type", "a", "--class", "-e", "0 (y y)")
        code, _, _ = run(capsys, *argv)
        assert code == EXIT_OK

    def test_eval_with_environment(self, capsys):
        argv = (
            "eval",
            "--ctx",
            "z:a, w:a",
            "--type",
            "a",
            "--env",
            "z=1,w=1",
            "-e",
            "(D(\\x:a. x + x) * w) z",
        )
        code, out, _ = run(capsys, *argv)
        assert code == EXIT_OK
        assert out.strip() == "2"

    def test_eval_all_environments(self, capsys):
        argv = ("eval", "--model", "a=Z2", "--ctx", "z:a", "--type", "a", "-e", "z + z")
        code, document = run_json(capsys, *argv)
        assert code == EXIT_OK
        assert document["result"]["values"] == [
            {"env": {"z": "0"}, "value": "0"},
            {"env": {"z": "1"}, "value": "0"},
        ]

    def test_carrier_too_large(self, capsys):
        argv = (
            "eval",
            "--size-limit",
            "10",
            "--type",
            "(a -> a) -> a",
            "-e",
            "\\g:a -> a. g 0",
        )
        code, _, err = run(capsys, *argv)
        assert code == EXIT_CARRIER
        assert "CarrierTooLargeError" in err

    def test_unknown_base_type(self, capsys):
        code, _, _ = run(capsys, "eval", "--type", "b", "-e", "0")
        assert code == EXIT_USAGE


class TestErase:
    def test_erase(self, capsys):
        code, out, _ = run(capsys, "erase", "-e", "x + eps y")
        assert code == EXIT_OK
        assert out.strip() == "x + 0"

    def test_simulated_reduct(self, capsys):
        code, document = run_json(capsys, "erase", "-e", "(\\x. x) y", "--reduct", "y")
        assert code == EXIT_OK
        assert document["result"]["simulated"] is True

    def test_not_a_reduct(self, capsys):
        code, _, err = run(capsys, "erase", "-e", "(\\x. x) y", "--reduct", "z")
        assert code == EXIT_PRECONDITION
        assert "NotAReductionError" in err


class TestGlobalFlags:
    """--json, --quiet, --log-file, --config and usage errors."""

    def test_parse_error(self, capsys):
        code, out, err = run(capsys, "canon", "-e", "(x")
        assert code == EXIT_USAGE
        assert out == ""
        assert "TermSyntaxError" in err

    def test_json_is_a_single_object(self, capsys):
        code, out, _ = run(capsys, "equiv", "--json", "-e", "s + t", "-e", "t + s")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["command"] == "equiv"
        assert document["result"]["equivalent"] is True
        assert document["diagnostics"] == []

    def test_json_error_document(self, capsys):
        code, document = run_json(capsys, "canon", "-e", "(x")
        assert code == EXIT_USAGE
        assert document["result"]["error"] == "TermSyntaxError"

    def test_quiet(self, capsys):
        code, out, _ = run(capsys, "--quiet", "equiv", "-e", "x", "-e", "y")
        assert code == EXIT_NEGATIVE
        assert out == ""

    def test_log_file(self, capsys, tmp_path):
        log = tmp_path / "logs" / "runs.jsonl"
        run(capsys, "--log-file", str(log), "canon", "-e", "x + 0")
        run(capsys, "--log-file", str(log), "canon", "-e", "(x")
        events = [json.loads(line) for line in log.read_text(encoding="utf-8").splitlines()]
        assert [e["exit_code"] for e in events] == [EXIT_OK, EXIT_USAGE]
        assert events[0]["result"]["term"] == "x"

    def test_bad_config(self, capsys, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("reduction:\n  fuel: -3\n", encoding="utf-8")
        code, _, err = run(capsys, "--config", str(path), "canon", "-e", "x")
        assert code == EXIT_USAGE
        assert "ConfigError" in err

    def test_config_fuel(self, capsys, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("reduction:\n  fuel: 2\n", encoding="utf-8")
        code, document = run_json(capsys, "--config", str(path), "normalize", "-e", OMEGA)
        assert code == EXIT_NEGATIVE
        assert document["result"]["steps"] == 2

    def test_missing_command(self, capsys):
        code, _, _ = run(capsys)
        assert code == EXIT_USAGE

    def test_unknown_flag(self, capsys):
        code, _, _ = run(capsys, "canon", "--no-such-flag")
        assert code == EXIT_USAGE


class TestReports:
    """axioms, fuzz and docs."""

    def test_axioms(self, capsys):
        argv = ("axioms", "--family", "cdc", "--model", "Z2", "--budget", "50")
        code, document = run_json(capsys, *argv)
        assert code == EXIT_OK
        assert document["result"]["cdc"]["violations"] == []

    def test_fuzz(self, capsys):
        argv = ("fuzz", "--suite", "canonicity", "--count", "3", "--size", "5")
        code, document = run_json(capsys, *argv)
        assert code == EXIT_OK
        (suite,) = document["result"]["suites"]
        assert suite["count"] == 3

    @pytest.mark.slow
    def test_docs_check(self, capsys, tmp_path):
        code, _, _ = run(capsys, "docs", "--check", "--out", str(tmp_path / "none"))
        assert code == EXIT_NEGATIVE
