"""Line-based text format for DFAs, NFAs and subsequential transducers.

::

    kind: subseq
    input: a b
    output: x y
    states: q0 q1
    init: q0 / xy
    final: q1 / _
    q0 a -> y q1

``_`` is the empty word and ``-`` an undefined initial state.  Words over
one-character alphabets are written as plain strings (``xy``); if some symbol
is longer, symbols are joined with ``.``.  Text after ``#`` is a comment.
"""
from __future__ import annotations

from typing import Union

from .core import Alphabet, DetMachine, ValidationError, Word
from .kleisli import Pair, SubseqTransducer
from .nfa import Nfa

Machine = Union[DetMachine, Nfa, SubseqTransducer]
KINDS = ("dfa", "nfa", "subseq")
EPSILON = "_"


class FormatError(ValidationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"{message}, line {line}")


def format_word(w: Word, alpha: Alphabet) -> str:
    if not w:
        return EPSILON
    if all(len(s) == 1 for s in alpha.symbols):
        return "".join(w)
    return ".".join(w)


def parse_word(token: str, alpha: Alphabet, line: int | None = None) -> Word:
    """Inverse of :func:`format_word`; a token naming one symbol is that symbol."""
    if token == EPSILON:
        return ()
    if "." in token:
        parts = tuple(token.split("."))
    elif token in alpha:
        parts = (token,)
    else:
        parts = tuple(token)
    for s in parts:
        if s not in alpha:
            raise FormatError(f"undeclared symbol {s}", line)
    return parts


def kind_of(m: Machine) -> str:
    if isinstance(m, DetMachine):
        return "dfa"
    if isinstance(m, Nfa):
        return "nfa"
    if isinstance(m, SubseqTransducer):
        return "subseq"
    raise ValidationError(f"not a machine: {type(m).__name__}")


def _state_token(q) -> str:
    s = str(q)
    if not s or any(c.isspace() for c in s) or s in ("-", "->", "/", "_") or "#" in s or ":" in s:
        raise ValidationError(f"state {q!r} cannot be written as a token")
    return s


def dump(m: Machine) -> str:
    """Canonical text: state order as declared, transitions by (state, symbol)."""
    kind = kind_of(m)
    st = _state_token
    lines = [f"kind: {kind}"]
    if kind == "subseq":
        A, B = m.input_alphabet, m.output_alphabet
        lines.append("input: " + " ".join(A.symbols))
        lines.append("output: " + " ".join(B.symbols))
    else:
        A = m.alphabet
        lines.append("input: " + " ".join(A.symbols))
    lines.append(" ".join(["states:"] + [st(q) for q in m.states]))

    if kind == "dfa":
        lines.append(f"init: {st(m.init)}")
        lines.append(" ".join(["final:"] + [st(q) for q in m.states if m.out(q)]))
        for q in m.states:
            for a in A:
                lines.append(f"{st(q)} {a} -> {st(m.step(q, a))}")
    elif kind == "nfa":
        lines.append(" ".join(["init:"] + [st(q) for q in m.states if q in m.init]))
        lines.append(" ".join(["final:"] + [st(q) for q in m.states if q in m.final]))
        for q, a, t in m.edges():
            lines.append(f"{st(q)} {a} -> {st(t)}")
    else:
        if m.init is None:
            lines.append("init: -")
        else:
            lines.append(f"init: {st(m.init.value)} / {format_word(m.init.output, B)}")
        for q in m.states:
            if m.term(q) is not None:
                lines.append(f"final: {st(q)} / {format_word(m.term(q), B)}")
        for q in m.states:
            for a in A:
                v = m.step(q, a)
                if v is not None:
                    lines.append(f"{st(q)} {a} -> {format_word(v.output, B)} {st(v.value)}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> Machine:
    """Parse one machine; errors carry the offending line number."""
    headers: dict = {}
    finals: list = []
    transitions: list = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            transitions.append((number, line))
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("kind", "input", "output", "states", "init", "final"):
            raise FormatError(f"cannot parse {line!r}", number)
        if key == "final":
            finals.append((number, rest.split()))
            continue
        if key in headers:
            raise FormatError(f"duplicate '{key}' header", number)
        headers[key] = (number, rest.split())

    if "kind" not in headers:
        raise FormatError("missing 'kind' header")
    kline, kvals = headers["kind"]
    if len(kvals) != 1 or kvals[0] not in KINDS:
        raise FormatError(f"unknown kind {' '.join(kvals)!r}", kline)
    kind = kvals[0]
    for key in ("input", "states", "init"):
        if key not in headers:
            raise FormatError(f"missing '{key}' header")
    if kind == "subseq" and "output" not in headers:
        raise FormatError("missing 'output' header")
    if kind != "subseq" and "output" in headers:
        raise FormatError(f"'output' header is only allowed for subseq", headers["output"][0])

    A = _alphabet(*headers["input"])
    sline, state_list = headers["states"]
    if len(set(state_list)) != len(state_list):
        raise FormatError("duplicate state", sline)
    states = tuple(state_list)
    known = set(states)

    def state(token, line):
        if token not in known:
            raise FormatError(f"undeclared state {token}", line)
        return token

    def symbol(token, line):
        if token not in A:
            raise FormatError(f"undeclared symbol {token}", line)
        return token

    if kind == "subseq":
        return _parse_subseq(headers, finals, transitions, A, states, state, symbol)

    if len(finals) > 1:
        raise FormatError("duplicate 'final' header", finals[1][0])
    final = {state(q, finals[0][0]) for q in finals[0][1]} if finals else set()
    iline, init_tokens = headers["init"]
    init = [state(q, iline) for q in init_tokens]

    edges: dict = {}
    for number, line in transitions:
        lhs, _, rhs = line.partition("->")
        lhs, rhs = lhs.split(), rhs.split()
        if len(lhs) != 2 or len(rhs) != 1:
            raise FormatError(f"malformed transition {line!r}", number)
        q, a, t = state(lhs[0], number), symbol(lhs[1], number), state(rhs[0], number)
        if kind == "dfa":
            if (q, a) in edges:
                raise FormatError(f"duplicate transition for ({q}, {a})", number)
            edges[q, a] = t
        else:
            edges.setdefault((q, a), set()).add(t)

    if kind == "nfa":
        return Nfa(A, states, init, final, edges)
    if len(init) != 1:
        raise FormatError("a dfa needs exactly one initial state", iline)
    for q in states:
        for a in A:
            if (q, a) not in edges:
                raise FormatError(f"missing transition for ({q}, {a})", sline)
    return DetMachine(A, states, init[0], edges, {q: q in final for q in states})


def _alphabet(line, symbols):
    try:
        return Alphabet(tuple(symbols))
    except ValidationError as exc:
        raise FormatError(str(exc), line) from None


def _parse_subseq(headers, finals, transitions, A, states, state, symbol):
    B = _alphabet(*headers["output"])
    iline, init_tokens = headers["init"]
    if init_tokens == ["-"]:
        init = None
    elif len(init_tokens) == 3 and init_tokens[1] == "/":
        init = Pair(parse_word(init_tokens[2], B, iline), state(init_tokens[0], iline))
    elif len(init_tokens) == 1:
        init = Pair((), state(init_tokens[0], iline))
    else:
        raise FormatError("malformed init, expected 'init: q / word' or 'init: -'", iline)

    final: dict = {}
    for number, tokens in finals:
        if len(tokens) == 1:
            tokens = tokens + ["/", EPSILON]
        if len(tokens) != 3 or tokens[1] != "/":
            raise FormatError("malformed final, expected 'final: q / word'", number)
        q = state(tokens[0], number)
        if q in final:
            raise FormatError(f"duplicate termination output for {q}", number)
        final[q] = parse_word(tokens[2], B, number)

    delta: dict = {}
    for number, line in transitions:
        lhs, _, rhs = line.partition("->")
        lhs, rhs = lhs.split(), rhs.split()
        if len(lhs) != 2 or len(rhs) != 2:
            raise FormatError(
                f"malformed transition {line!r}, expected 'q a -> word target' (production and successor)",
                number,
            )
        q, a = state(lhs[0], number), symbol(lhs[1], number)
        if (q, a) in delta:
            raise FormatError(f"duplicate transition for ({q}, {a})", number)
        delta[q, a] = Pair(parse_word(rhs[0], B, number), state(rhs[1], number))
    return SubseqTransducer(A, B, states, init, final, delta)
