from pathlib import Path

import pytest

from fsmkit.cli import main
from fsmkit.kleisli import transduce
from fsmkit.textformat import parse, parse_word

GOLDEN = Path(__file__).parent / "golden"
INPUTS = sorted(GOLDEN.glob("*.aut"))

TRANSDUCER = """\
kind: subseq
input: a b
output: x y
states: q
init: q / _
final: q / _
q a -> xy q
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.mark.parametrize("path", INPUTS, ids=lambda p: p.stem)
def test_golden_minimize(path, tmp_path, capsys):
    expected = path.with_suffix(".min").read_bytes()
    out = tmp_path / "out.aut"
    assert main(["minimize", str(path), "-o", str(out)]) == 0
    assert out.read_bytes() == expected
    assert main(["minimize", str(path)]) == 0
    assert capsys.readouterr().out.encode() == expected
    # minimizing the result changes nothing
    assert main(["minimize", str(out)]) == 0
    assert capsys.readouterr().out.encode() == expected


@pytest.mark.parametrize("command", ["determinize", "codeterminize", "brzozowski", "info"])
def test_outputs_reparse(command, tmp_path):
    out = tmp_path / "out.aut"
    assert main([command, str(GOLDEN / "third_from_end.aut"), "-o", str(out)]) == 0
    if command != "info":
        parse(out.read_text())


def test_run_dfa(capsys):
    assert main(["run", str(GOLDEN / "ends_with_a.aut"), "aba"]) == 0
    assert main(["run", str(GOLDEN / "ends_with_a.aut"), "_"]) == 0
    assert capsys.readouterr().out == "accepted\nrejected\n"


def test_run_transducer(tmp_path, capsys):
    path = write(tmp_path, "t.aut", TRANSDUCER)
    assert main(["run", path, "aa"]) == 0
    assert main(["run", path, "aab"]) == 0
    assert main(["run", path, "_"]) == 0
    assert capsys.readouterr().out == "xyxy\nundefined\n_\n"


def test_equiv_equivalent(capsys):
    a = str(GOLDEN / "third_from_end.aut")
    assert main(["equiv", a, str(GOLDEN / "third_from_end.min")]) == 0
    assert capsys.readouterr().out == "equivalent\n"


def test_equiv_witness_is_checked(tmp_path, capsys):
    other = TRANSDUCER.replace("final: q / _", "final: q / y")
    p1, p2 = write(tmp_path, "t1.aut", TRANSDUCER), write(tmp_path, "t2.aut", other)
    assert main(["equiv", p1, p2]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "not equivalent"
    t1, t2 = parse(TRANSDUCER), parse(other)
    w = parse_word(lines[1].removeprefix("witness: "), t1.input_alphabet)
    assert transduce(t1, w) != transduce(t2, w)


def test_equiv_dfa_witness(capsys):
    assert main(["equiv", str(GOLDEN / "ends_with_a.aut"), str(GOLDEN / "mod3.aut")]) == 1
    assert capsys.readouterr().out == "not equivalent\nwitness: _\n"


def test_info(capsys):
    assert main(["info", str(GOLDEN / "mod3.aut"), "--oracle-bound", "5"]) == 0
    assert capsys.readouterr().out == (
        "kind: dfa\nstates: 4\nreachable: no\nobservable: yes\nminimal states: 3\n"
        "oracle (words up to length 5): agree\n"
    )


def test_info_transducer(capsys):
    assert main(["info", str(GOLDEN / "doubler.aut")]) == 0
    out = capsys.readouterr().out
    assert "kind: subseq" in out and "trim: no" in out and "minimal states: 1" in out


def test_parse_error_exit_code(tmp_path, capsys):
    path = write(tmp_path, "bad.aut", "kind: dfa\ninput: a\nstates: q0\ninit: q0\nq0 a -> q9\n")
    assert main(["minimize", path]) == 2
    assert "undeclared state q9, line 5" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["minimize", "/nonexistent/file.aut"]) == 2


def test_mixed_equiv_rejected(tmp_path):
    path = write(tmp_path, "t.aut", TRANSDUCER)
    assert main(["equiv", path, str(GOLDEN / "mod3.aut")]) == 2
