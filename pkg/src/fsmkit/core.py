"""Shared vocabulary: alphabets, words, deterministic machines and their morphisms.

A deterministic machine is given by an initial state, one total step function
per letter and an output map on states.  With boolean outputs this is an
ordinary DFA; other output types (for instance partial output words) reuse
the same shape and the same reach/observe/minimize code in :mod:`fsmkit.dfa`.

Every value here is immutable after construction, so machines can be shared
freely between threads.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Generic, Hashable, Iterable, Mapping, Optional, Sequence, TypeVar

State = Hashable
Word = tuple  # tuple[str, ...]
O = TypeVar("O")

_SYMBOL_RE = re.compile(r"[A-Za-z0-9]+\Z")


class ValidationError(ValueError):
    """Raised when an input violates an operation's precondition."""


class InvariantError(RuntimeError):
    """An internal invariant was violated; this always indicates a bug."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise ValidationError("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise ValidationError(f"duplicate symbols in alphabet {symbols!r}")
        for s in symbols:
            if not isinstance(s, str) or not _SYMBOL_RE.match(s):
                raise ValidationError(f"invalid symbol {s!r}: symbols are alphanumeric strings")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol: str) -> int:
        return self._index[symbol]

    def check_word(self, w: Iterable[str]) -> Word:
        w = tuple(w)
        for s in w:
            if s not in self._index:
                raise ValidationError(f"symbol {s!r} is not in alphabet {self.symbols!r}")
        return w


def alphabet(symbols: Iterable[str] | str) -> Alphabet:
    """Build an alphabet; a plain string is split into one-character symbols."""
    return Alphabet(tuple(symbols))


def word(text: str | Sequence[str], alpha: Alphabet | None = None) -> Word:
    """Turn ``"aab"`` (or any sequence of symbols) into a word tuple."""
    w = tuple(text)
    if alpha is not None:
        alpha.check_word(w)
    return w


@dataclass(frozen=True)
class DetMachine(Generic[O]):
    """Total deterministic machine with outputs in ``O``.

    ``delta`` maps ``(state, symbol)`` to a state and must be total;
    ``output`` maps each state to its output value.  ``states`` is ordered and
    that order drives every traversal in the library.
    """

    alphabet: Alphabet
    states: tuple
    init: State
    delta: Mapping[tuple, State]
    output: Mapping[State, O]

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "delta", dict(self.delta))
        object.__setattr__(self, "output", dict(self.output))
        known = set(states)
        if len(known) != len(states):
            raise ValidationError("duplicate state ids")
        if self.init not in known:
            raise ValidationError(f"initial state {self.init!r} is not a state")
        for q in states:
            if q not in self.output:
                raise ValidationError(f"no output for state {q!r}")
            for a in self.alphabet:
                target = self.delta.get((q, a), _MISSING)
                if target is _MISSING:
                    raise ValidationError(f"missing transition for ({q!r}, {a!r})")
                if target not in known:
                    raise ValidationError(f"transition ({q!r}, {a!r}) leads to unknown state {target!r}")
        if len(self.delta) != len(states) * len(self.alphabet):
            raise ValidationError("transition table mentions unknown states or symbols")
        if len(self.output) != len(states):
            raise ValidationError("output map mentions unknown states")

    def step(self, q: State, a: str) -> State:
        return self.delta[q, a]

    def out(self, q: State) -> O:
        return self.output[q]

    @classmethod
    def from_table(cls, alpha: Alphabet, init: State, table: Mapping[State, Mapping[str, State]],
                   output: Mapping[State, Any]) -> "DetMachine":
        """Build from a nested ``{state: {symbol: target}}`` table (state order = table order)."""
        delta = {(q, a): t for q, row in table.items() for a, t in row.items()}
        return cls(alpha, tuple(table), init, delta, output)


_MISSING = object()


def build_dfa(alpha: Alphabet, init: State, table: Mapping[State, Mapping[str, State]],
              finals: Iterable[State]) -> DetMachine:
    """Convenience constructor for a boolean-output machine."""
    finals = set(finals)
    return DetMachine.from_table(alpha, init, table, {q: q in finals for q in table})


class LazyDetMachine(Generic[O]):
    """A deterministic machine given by functions, possibly with infinitely many states."""

    def __init__(self, alpha: Alphabet, init: State, step: Callable[[State, str], State],
                 out: Callable[[State], O]):
        self.alphabet = alpha
        self.init = init
        self._step = step
        self._out = out

    def step(self, q, a):
        return self._step(q, a)

    def out(self, q):
        return self._out(q)


def materialize(m: LazyDetMachine, limit: int = 10_000) -> DetMachine:
    """Explore the reachable part of a lazy machine breadth-first.

    Raises :class:`ValidationError` if more than ``limit`` states are reachable.
    """
    seen = {m.init: None}
    queue = deque([m.init])
    delta = {}
    while queue:
        q = queue.popleft()
        for a in m.alphabet:
            t = m.step(q, a)
            delta[q, a] = t
            if t not in seen:
                if len(seen) >= limit:
                    raise ValidationError(f"more than {limit} reachable states")
                seen[t] = None
                queue.append(t)
    return DetMachine(m.alphabet, tuple(seen), m.init, delta, {q: m.out(q) for q in seen})


def step_word(m, q: State, w: Iterable[str]) -> State:
    for a in w:
        q = m.step(q, a)
    return q


def run(m, w: Iterable[str]):
    """Output of ``m`` after reading ``w`` from the initial state."""
    w = m.alphabet.check_word(w)
    return m.out(step_word(m, m.init, w))


@dataclass(frozen=True)
class MachineMorphism:
    source: DetMachine
    target: DetMachine
    mapping: Mapping[State, State] = field(default_factory=dict)

    def __call__(self, q):
        return self.mapping[q]


def check_morphism(h: MachineMorphism) -> bool:
    """True iff ``h`` preserves the initial state, every transition and every output."""
    s, t, f = h.source, h.target, h.mapping
    if s.alphabet != t.alphabet:
        return False
    target_states = set(t.states)
    if any(q not in f or f[q] not in target_states for q in s.states):
        return False
    if f[s.init] != t.init:
        return False
    for q in s.states:
        if s.out(q) != t.out(f[q]):
            return False
        for a in s.alphabet:
            if f[s.step(q, a)] != t.step(f[q], a):
                return False
    return True


def isomorphic(m1: DetMachine, m2: DetMachine) -> Optional[dict]:
    """Return a bijection ``m1.states -> m2.states`` that is a machine morphism, or None.

    On the part reachable from the initial states the bijection is forced and
    found by a synchronized walk.  Leftover (unreachable) states are matched by
    a backtracking search in declaration order.
    """
    if m1.alphabet != m2.alphabet or len(m1.states) != len(m2.states):
        return None
    symbols = m1.alphabet.symbols

    def extend(pairs, fwd, bwd):
        fwd, bwd = dict(fwd), dict(bwd)
        queue = deque(pairs)
        while queue:
            p, q = queue.popleft()
            if p in fwd or q in bwd:
                if fwd.get(p, _MISSING) != q:
                    return None
                continue
            if m1.out(p) != m2.out(q):
                return None
            fwd[p] = q
            bwd[q] = p
            queue.extend((m1.step(p, a), m2.step(q, a)) for a in symbols)
        return fwd, bwd

    def search(fwd, bwd):
        p = next((p for p in m1.states if p not in fwd), _MISSING)
        if p is _MISSING:
            return fwd
        for q in m2.states:
            if q in bwd:
                continue
            extended = extend([(p, q)], fwd, bwd)
            if extended is not None:
                found = search(*extended)
                if found is not None:
                    return found
        return None

    start = extend([(m1.init, m2.init)], {}, {})
    if start is None:
        return None
    return search(*start)
