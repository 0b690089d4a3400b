"""Command-line behaviour: outputs, exit codes, determinism."""

import json

import pytest

from partcat.cli import main, parse_generators, parse_partition_token
from partcat.partition import make_named


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_token_parsing():
    assert parse_partition_token("fatcross") == make_named("fatcross")
    assert parse_partition_token("h3") == make_named("h", 3)
    assert parse_partition_token(":aabb").n_lower == 4
    assert [str(p) for p in parse_generators("pair,ab:ba")] == [":aa", "ab:ba"]


def test_simplify_chain(capsys):
    code, out, _ = run_cli(capsys, "simplify", ":abbacacaca")
    assert code == 0 and out.strip() == ":aacacaca"
    code, out, _ = run_cli(capsys, "simplify", ":aacacaca")
    assert code == 0 and out.strip() == ":cacaca"
    code, out, _ = run_cli(capsys, "simplify", ":abbacacaca", "--full")
    assert code == 0 and out.strip() == ":ababab"


def test_word_command(capsys):
    code, out, _ = run_cli(capsys, "word", "halflib")
    assert code == 0 and out.strip() == "a1.a2.a3.a1.a2.a3"
    code, out, _ = run_cli(capsys, "word", "h3", "--free")
    assert code == 0 and out.strip() == "x1^3"


def test_member_yes_with_certificate(capsys):
    code, out, _ = run_cli(
        capsys, "member", "--gen", "fatcross", "--target", ":aaaa",
        "--work-bound", "12", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "yes"
    assert report["replayed"] is True
    assert report["certificate"]


def test_member_unknown_is_inconclusive(capsys):
    code, out, _ = run_cli(
        capsys, "member", "--gen", "pair", "--target", ":ab",
        "--work-bound", "8", "--format", "json")
    assert code == 2
    assert json.loads(out)["verdict"] == "unknown"


def test_closure_report(capsys):
    code, out, _ = run_cli(
        capsys, "closure", "--gen", "fourblock", "--point-bound", "6",
        "--work-bound", "8", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["saturated"] is True
    assert report["notable"]["pair"] == "yes"
    assert report["notable"]["doubleton"] == "unknown"


def test_closure_with_targets(capsys):
    code, out, _ = run_cli(
        capsys, "closure", "--gen", "primary", "--targets", "fatcross",
        "--work-bound", "14", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["certificates"]["aabb:bbaa"]


def test_subgroup_report(capsys):
    code, out, _ = run_cli(
        capsys, "subgroup", "--words", "(a1.a2)^3", "--length-bound", "6",
        "--alphabet", "2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["element_count"] == 3
    assert report["even_only"] is True


def test_roundtrip_command(capsys):
    code, out, _ = run_cli(capsys, "roundtrip", "--oracle", "trivial",
                           "--format", "json")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_quotient_command(capsys):
    code, out, _ = run_cli(
        capsys, "quotient", "--n", "2", "--relator", "(a1.a2)^3",
        "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["order"] == 6
    assert report["complete"] is True


def test_quotient_free_is_inconclusive(capsys):
    code, out, _ = run_cli(
        capsys, "quotient", "--n", "2", "--relator", "e",
        "--length-cap", "5", "--format", "json")
    assert code == 2
    report = json.loads(out)
    assert report["element_count"] == 11


def test_intertwiner_command(capsys):
    code, out, _ = run_cli(
        capsys, "intertwiner", "--rep", "counterexample", "--transpose",
        "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["relations"] == {"i": True, "ii": True, "iii": True, "iv": False}
    assert report["intertwines"]["aabb:bbaa"] is True
    assert report["intertwines"]["aab:baa"] is False
    assert report["transpose_symmetry"]["ok"] is True


def test_facts_command(capsys):
    code, out, _ = run_cli(capsys, "facts")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert lines and all(l.startswith("PASS") for l in lines)


def test_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "simplify", "not a partition")
    assert code == 1 and "error" in err
    code, _, err = run_cli(capsys, "word", "nosuchname")
    assert code == 1


def test_byte_determinism_across_workers(capsys):
    def grab(workers):
        code, out, _ = run_cli(
            capsys, "closure", "--gen", "halflib,fourblock",
            "--work-bound", "10", "--cap", "2000",
            "--workers", workers, "--format", "json")
        assert code in (0, 2)
        return out

    a = grab("1")
    b = grab("8")
    c = grab("1")
    assert a == b == c


def test_out_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "quotient", "--n", "1", "--relator", "e",
        "--format", "json", "--out", str(out_path))
    assert code == 0
    assert json.loads(out_path.read_text())["order"] == 2
