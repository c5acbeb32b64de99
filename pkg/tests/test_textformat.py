import random
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from fsmkit import Alphabet
from fsmkit.generators import AB, XY, random_dfa, random_nfa, random_transducer
from fsmkit.kleisli import empty_transducer
from fsmkit.textformat import FormatError, dump, format_word, parse, parse_word

GOLDEN = Path(__file__).parent / "golden"

MINIMAL_DFA = """\
kind: dfa
input: a
states: q0 q1
init: q0
final: q1
q0 a -> q1
q1 a -> q0
"""


def test_minimal_dfa_file(parity):
    m = parse(MINIMAL_DFA)
    assert m == parity
    assert dump(m) == MINIMAL_DFA


def test_parity_body_lines(parity):
    body = dump(parity).splitlines()[3:]
    assert body == ["init: q0", "final: q1", "q0 a -> q1", "q1 a -> q0"]


def test_empty_transducer_header():
    assert dump(empty_transducer(AB, XY)) == "kind: subseq\ninput: a b\noutput: x y\nstates:\ninit: -\n"
    assert parse(dump(empty_transducer(AB, XY))) == empty_transducer(AB, XY)


def test_comments_and_blank_lines():
    text = "# header\n\n" + MINIMAL_DFA.replace("q0 a -> q1", "q0 a -> q1   # step")
    assert dump(parse(text)) == MINIMAL_DFA


def test_word_tokens():
    assert format_word((), XY) == "_"
    assert format_word(("x", "y", "y"), XY) == "xyy"
    long = Alphabet(("ab", "c"))
    assert format_word(("ab", "c"), long) == "ab.c"
    assert parse_word("ab.c", long) == ("ab", "c")
    assert parse_word("ab", long) == ("ab",)
    assert parse_word("xy", XY) == ("x", "y")


def _error(text):
    with pytest.raises(FormatError) as info:
        parse(text)
    return str(info.value)


def test_undeclared_state():
    assert _error(MINIMAL_DFA.replace("q1 a -> q0", "q0 a -> q9")) == "undeclared state q9, line 7"


def test_unknown_kind():
    assert "unknown kind" in _error(MINIMAL_DFA.replace("kind: dfa", "kind: moore"))


def test_undeclared_symbol():
    assert _error(MINIMAL_DFA.replace("q1 a -> q0", "q1 b -> q0")) == "undeclared symbol b, line 7"


def test_duplicate_transition():
    text = MINIMAL_DFA + "q1 a -> q1\n"
    assert _error(text) == "duplicate transition for (q1, a), line 8"


def test_missing_dfa_transition():
    assert "missing transition for (q1, a)" in _error(MINIMAL_DFA.replace("q1 a -> q0\n", ""))


def test_malformed_subseq_transition_names_both_fields():
    text = "kind: subseq\ninput: a\noutput: x\nstates: q\ninit: q / _\nq a -> q\n"
    message = _error(text)
    assert "production" in message and "successor" in message and message.endswith("line 6")


def test_nfa_repeated_edges():
    text = "kind: nfa\ninput: a\nstates: p q\ninit: p q\nfinal: q\np a -> p\np a -> q\n"
    n = parse(text)
    assert n.delta[("p", "a")] == frozenset({"p", "q"})
    assert dump(n) == text


@given(st.randoms(use_true_random=False))
def test_roundtrip_all_kinds(rng):
    for m in (random_dfa(rng), random_nfa(rng), random_transducer(rng)):
        text = dump(m)
        assert parse(text) == m
        assert dump(parse(text)) == text


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.aut")), ids=lambda p: p.stem)
def test_golden_inputs_roundtrip(path):
    m = parse(path.read_text())
    assert parse(dump(m)) == m
