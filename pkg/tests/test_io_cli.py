import json
import subprocess
import sys
from pathlib import Path

import pytest

from graphs import bowtie, l2p
from signedcover.cli import main
from signedcover.graph import Balanced, CoverFamily, LongBarbell, ShortBarbell
from signedcover.io import FormatError, emit_cover, emit_instance, parse_cover, parse_instance

GOLDEN = Path(__file__).parent / "golden"

THETA_TEXT = """# theta with one negative edge
p sg 2 3
e 1 2 +
e 1 2 -
e 1 2 +
"""


def test_parse_theta():
    g = parse_instance(THETA_TEXT)
    assert g.vertex_count == 2 and g.edge_count == 3
    assert g.negative_edges == {1}


def test_emit_is_canonical():
    text = "\n  # comment\np sg 2 3\n\ne 1 1 -\n  e 1 2 +\ne 2 2 -\n"
    assert emit_instance(parse_instance(text)) == "p sg 2 3\ne 1 1 -\ne 1 2 +\ne 2 2 -\n"
    assert parse_instance(emit_instance(l2p())) == l2p()


@pytest.mark.parametrize(
    "text,line",
    [
        ("p sg 2 1\ne 1 2 x\n", 2),
        ("p sg 2 1\ne 1 3 +\n", 2),
        ("e 1 2 +\n", 1),
        ("p sg 2 1\np sg 2 1\n", 2),
        ("p sg 2 1\nq\n", 2),
        ("p sg 2 2\ne 1 2 +\n", 0),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(FormatError) as exc:
        parse_instance(text)
    assert exc.value.line == line


def test_cover_round_trip():
    f = CoverFamily([
        Balanced(frozenset({3, 7, 9})),
        ShortBarbell(frozenset({1}), frozenset({2}), 5),
        LongBarbell(frozenset({1}), (4, 5), frozenset({2})),
    ])
    assert parse_cover(emit_cover(f)) == f


def test_cover_lines_in_documented_syntax():
    f = parse_cover("# c\nbalanced: e3 e7 e9\nshort: [e1] @v5 [e2]\nlong: [e1] (e4 e5) [e2]\n")
    assert [m.kind for m in f] == ["balanced", "short", "long"]
    with pytest.raises(FormatError):
        parse_cover("balanced: 3 7\n")
    with pytest.raises(FormatError):
        parse_cover("circle: e1\n")


def test_cli_cover_then_verify(tmp_path, capsys):
    inst = tmp_path / "bowtie.sg"
    inst.write_text(emit_instance(bowtie()))
    out = tmp_path / "c.txt"
    assert main(["cover", str(inst), "--out", str(out)]) == 0
    text = out.read_text()
    assert "# length=6" in text
    assert "bound_even=50/3" in text
    assert main(["verify", str(inst), "--cover", str(out)]) == 0
    assert capsys.readouterr().out.startswith("valid")


def test_cli_verify_rejects_bad_cover(tmp_path, capsys):
    inst = tmp_path / "l2p.sg"
    inst.write_text(emit_instance(l2p()))
    cov = tmp_path / "c.txt"
    cov.write_text("balanced: e0\n")
    assert main(["verify", str(inst), "--cover", str(cov)]) == 1
    assert "invalid" in capsys.readouterr().out


def test_cli_oracle_and_json(capsys):
    assert main(["cover", str(GOLDEN / "l2p.sg"), "--oracle", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["length"] == 3
    assert data["bounds"]["bound_even"] == "17/3"
    assert main(["cover", str(GOLDEN / "unbalanced_triangle.sg"), "--oracle"]) == 1


def test_cli_analyze(capsys):
    assert main(["analyze", str(GOLDEN / "l2p.sg")]) == 0
    out = capsys.readouterr().out
    assert "eps_n 2" in out and "B_s e1" in out and "s-bridgeless yes" in out
    assert main(["analyze", str(GOLDEN / "l2p.sg"), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["B_g"] == [1]


def test_cli_bound(capsys):
    assert main(["bound", str(GOLDEN / "bowtie.sg")]) == 0
    out = capsys.readouterr().out
    assert "bound_general=62/3" in out and "k=2" in out


def test_cli_exit_codes(tmp_path, monkeypatch):
    bad = tmp_path / "bad.sg"
    bad.write_text("p sg 2 1\ne 1 2 ?\n")
    assert main(["bound", str(bad)]) == 2
    assert main(["bound", str(tmp_path / "missing.sg")]) == 2
    assert main(["cover", str(GOLDEN / "unbalanced_triangle.sg")]) == 1
    monkeypatch.setenv("SIGNEDCOVER_ORACLE_E", "2")
    assert main(["cover", str(GOLDEN / "bowtie.sg"), "--oracle"]) == 3


def test_cli_gen_is_reproducible(tmp_path):
    a, b = tmp_path / "a.sg", tmp_path / "b.sg"
    args = ["gen", "--n", "6", "--m", "10", "--neg", "3", "--seed", "7", "--s-bridgeless", "--min-eps", "2"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    g = parse_instance(a.read_text())
    assert g.vertex_count == 6 and g.edge_count == 10


def test_cli_gen_failure_is_budget_error():
    assert main(["gen", "--n", "2", "--m", "1", "--neg", "1", "--seed", "0", "--s-bridgeless", "--attempts", "5"]) == 3


def test_cli_bench(capsys):
    assert main(["bench", "--count", "12", "--seed", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 13
    assert all(" ok length=" in line and "slack=" in line for line in lines[:-1])


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "signedcover", "bound", str(GOLDEN / "l2p.sg")], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert "bound_even=17/3" in res.stdout
