"""Command line behavior: formats, exit codes, determinism."""

import json

import pytest

from prismcode.cli import main
from prismcode.graphs import complementary_prism, cycle, parse_graph

import bruteforce as bf


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def prism9(tmp_path, capsys):
    path = tmp_path / "p9.txt"
    assert main(["gen", "prism", "9", "-o", str(path)]) == 0
    capsys.readouterr()
    return str(path)


@pytest.fixture
def pattern9(tmp_path, capsys):
    path = tmp_path / "pat9.txt"
    code, out, _ = run(capsys, "pattern", "9")
    assert code == 0
    path.write_text(out)
    return str(path)


def test_gen_cycle_golden(capsys):
    code, out, _ = run(capsys, "gen", "cycle", "4")
    assert code == 0
    assert out == "p 4 4\ne 1 2\ne 1 4\ne 2 3\ne 3 4\n"
    assert parse_graph(out) == cycle(4)


def test_gen_prism_roundtrip_and_legend(prism9):
    text = open(prism9).read()
    lines = text.splitlines()
    assert sum(1 for ln in lines if ln.startswith("e ")) == 45
    assert any(ln.startswith("c ") and "vbar" in ln for ln in lines)
    assert parse_graph(text) == complementary_prism(cycle(9))


def test_gen_domain_error(capsys):
    code, _, err = run(capsys, "gen", "cycle", "2")
    assert code == 64 and "error" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 64


def test_pattern_output(capsys):
    code, out, _ = run(capsys, "pattern", "9")
    assert code == 0 and out == "111000000\n000011110\n"
    code, out, _ = run(capsys, "pattern", "9", "--box")
    assert code == 0 and out.count("##") == 7
    code, _, err = run(capsys, "pattern", "8")
    assert code == 64


def test_verify_pattern_valid(capsys, prism9, pattern9):
    code, out, _ = run(capsys, "verify", prism9, pattern9, "--json")
    assert code == 0
    assert json.loads(out) == {"valid": True}
    code, out, _ = run(capsys, "verify", prism9, pattern9)
    assert code == 0 and out.startswith("valid")


def test_verify_invalid_and_labels(capsys, tmp_path, prism9):
    empty = tmp_path / "empty.txt"
    empty.write_text("000000000\n000000000\n")
    code, out, _ = run(capsys, "verify", prism9, str(empty), "--json")
    assert code == 1
    assert json.loads(out) == {
        "valid": False,
        "failure": {"kind": "empty-ball", "vertices": ["v1"]},
    }
    listed = tmp_path / "listed.txt"
    listed.write_text("v1 v2 v3 vbar5 vbar6 vbar7 vbar8\n")
    code, out, _ = run(capsys, "verify", prism9, str(listed))
    assert code == 0, out


def test_verify_code_format_flags(capsys, tmp_path, prism9):
    bits = tmp_path / "bits.txt"
    bits.write_text("111000000\n000011110\n")
    assert run(capsys, "verify", prism9, str(bits), "--code-format", "bits")[0] == 0
    # as a list these tokens are not vertex ids
    assert run(capsys, "verify", prism9, str(bits), "--code-format", "list")[0] == 64
    short = tmp_path / "short.txt"
    short.write_text("111\n000\n")
    assert run(capsys, "verify", prism9, str(short), "--code-format", "bits")[0] == 64


def test_verify_bad_graph(capsys, tmp_path, pattern9):
    bad = tmp_path / "bad.txt"
    bad.write_text("p 3\n")
    code, _, err = run(capsys, "verify", str(bad), pattern9)
    assert code == 64 and "error" in err


def test_conditions_clean_and_violations(capsys, tmp_path, pattern9):
    code, out, _ = run(capsys, "conditions", "9", pattern9)
    assert code == 0
    assert "violations 0" in out and "bad_indices 4,9" in out
    alt = tmp_path / "alt.txt"
    alt.write_text("101010101\n010101010\n")
    code, out, _ = run(capsys, "conditions", "9", str(alt), "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    assert {"family": "bar-sep-distance2", "indices": [2, 4]} in payload["violations"]
    assert run(capsys, "conditions", "8", pattern9)[0] == 64


def test_solve_json_and_exit_codes(capsys, tmp_path, prism9):
    code, out, _ = run(capsys, "solve", prism9, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "optimal" and payload["size"] == 7
    assert payload["code"] == ["v1", "v2", "v3", "v6", "vbar5", "vbar6", "vbar8"]
    assert payload["nodes"] >= 1 and payload["ms"] >= 0
    code, out, _ = run(capsys, "solve", prism9, "--json", "--cap", "6")
    assert code == 0 and json.loads(out)["status"] == "cap-exceeded"


def test_solve_infeasible_exit_2(capsys, tmp_path):
    p6 = tmp_path / "p6.txt"
    main(["gen", "prism", "6", "-o", str(p6)])
    code, out, _ = run(capsys, "solve", str(p6), "-d", "2", "--json")
    assert code == 2
    payload = json.loads(out)
    assert payload["status"] == "infeasible" and payload["witness"] == ["vbar1", "vbar2"]


def test_solve_strategies_and_workers_agree(capsys, prism9):
    outs = []
    for extra in ([], ["--strategy", "exhaustive"], ["--workers", "3"]):
        code, out, _ = run(capsys, "solve", prism9, "--json", *extra)
        assert code == 0
        payload = json.loads(out)
        payload.pop("ms")
        payload.pop("nodes")  # strategy-relative
        outs.append(payload)
    assert outs[0] == outs[1] == outs[2]


def test_solve_json_stable_across_runs(capsys, prism9):
    payloads = []
    for _ in range(2):
        _, out, _ = run(capsys, "solve", prism9, "--json")
        payload = json.loads(out)
        payload.pop("ms")  # wall clock is the one unstable field
        payloads.append(payload)
    assert payloads[0] == payloads[1]


def test_solve_export_instance(capsys, tmp_path, prism9):
    target = tmp_path / "inst.txt"
    code, _, _ = run(capsys, "solve", prism9, "--export-instance", str(target))
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "h 18 171"
    assert len(lines) == 172


def test_twins_exit_codes(capsys, tmp_path):
    p6 = tmp_path / "p6.txt"
    main(["gen", "prism", "6", "-o", str(p6)])
    code, out, _ = run(capsys, "twins", str(p6), "-d", "2", "--json")
    assert code == 2
    payload = json.loads(out)
    assert payload["twins"][0] == ["vbar1", "vbar2"] and len(payload["twins"]) == 15
    c9 = tmp_path / "c9.txt"
    main(["gen", "cycle", "9", "-o", str(c9)])
    code, out, _ = run(capsys, "twins", str(c9))
    assert code == 0 and "count 0" in out


def test_cwcheck_random_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "cwcheck", "8", "--trials", "12", "--seed", "7")
    assert code == 0
    assert out.count("\n") == 13 and "violations 0" in out
    again = run(capsys, "cwcheck", "8", "--trials", "12", "--seed", "7")
    assert again[1] == out  # seeded, so byte-identical
    c6 = tmp_path / "c6.txt"
    main(["gen", "cycle", "6", "-o", str(c6)])
    code, out, _ = run(capsys, "cwcheck", str(c6), "--trials", "5", "--seed", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True and len(payload["trials"]) == 5
    assert all(row["order"] == 6 for row in payload["trials"])


def test_scan_text_and_json(capsys):
    code, out, _ = run(capsys, "scan", "9", "10")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n 9") and "size 7" in lines[0] and "pattern 7" in lines[0]
    assert lines[1].startswith("n 10") and "size 8" in lines[1]
    code, out, _ = run(capsys, "scan", "9", "9", "--json")
    payload = json.loads(out)
    assert payload[0]["n"] == 9 and payload[0]["size"] == 7
    assert payload[0]["code"][0] == "v1"
    assert run(capsys, "scan", "2", "5")[0] == 64
    assert run(capsys, "scan", "9", "8")[0] == 64


def test_scan_infeasible_rows(capsys):
    code, out, _ = run(capsys, "scan", "6", "7", "-d", "2")
    assert code == 0
    assert out.count("status infeasible") == 2
    assert "witness vbar1,vbar2" in out
