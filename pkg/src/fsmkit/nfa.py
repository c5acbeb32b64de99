"""Nondeterministic automata, determinization and Brzozowski's algorithm.

An :class:`Nfa` is a relational automaton: a set of initial states, a set of
final states and one transition relation per letter.  ``determinize`` is the
powerset construction restricted to reachable subsets; ``codeterminize`` is
its mirror image (transpose, determinize, transpose), which yields a
backward-deterministic, co-reachable automaton.  Determinizing that gives the
minimal DFA.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import Alphabet, DetMachine, State, ValidationError, Word


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    states: tuple
    init: frozenset
    final: frozenset
    delta: Mapping[tuple, frozenset]

    def __post_init__(self):
        states = tuple(self.states)
        known = set(states)
        if len(known) != len(states):
            raise ValidationError("duplicate state ids")
        init, final = frozenset(self.init), frozenset(self.final)
        if not init <= known or not final <= known:
            raise ValidationError("initial and final states must be states")
        delta = {}
        for (q, a), targets in self.delta.items():
            if q not in known or a not in self.alphabet:
                raise ValidationError(f"transition from unknown state or symbol ({q!r}, {a!r})")
            targets = frozenset(targets)
            if not targets <= known:
                raise ValidationError(f"transition ({q!r}, {a!r}) leads to unknown states")
            if targets:
                delta[q, a] = targets
        for name, value in (("states", states), ("init", init), ("final", final), ("delta", delta)):
            object.__setattr__(self, name, value)

    def successors(self, q: State, a: str) -> frozenset:
        return self.delta.get((q, a), frozenset())

    def image(self, subset: Iterable[State], a: str) -> frozenset:
        out: set = set()
        for q in subset:
            out |= self.successors(q, a)
        return frozenset(out)

    def edges(self):
        """All ``(q, a, q')`` triples in state/symbol/state order."""
        for q in self.states:
            for a in self.alphabet:
                targets = self.successors(q, a)
                for t in self.states:
                    if t in targets:
                        yield q, a, t


def nfa_accepts(n: Nfa, w: Iterable[str]) -> bool:
    w = n.alphabet.check_word(w)
    current = n.init
    for a in w:
        current = n.image(current, a)
    return not current.isdisjoint(n.final)


def transpose(n: Nfa) -> Nfa:
    """Reverse every edge and swap initial with final states."""
    delta: dict = {}
    for q, a, t in n.edges():
        delta.setdefault((t, a), set()).add(q)
    return Nfa(n.alphabet, n.states, n.final, n.init, delta)


def embed(m: DetMachine) -> Nfa:
    """View a DFA as an Nfa with functional transition relations."""
    return Nfa(
        m.alphabet,
        m.states,
        frozenset([m.init]),
        frozenset(q for q in m.states if m.out(q)),
        {(q, a): frozenset([m.step(q, a)]) for q in m.states for a in m.alphabet},
    )


def subset_construction(n: Nfa) -> tuple[DetMachine, list]:
    """Powerset construction over reachable subsets.

    Output states are numbered in discovery order; the returned list gives,
    for each number, the subset (as a tuple in state order) it stands for.
    The empty subset appears only if it is reached.
    """
    order = {q: i for i, q in enumerate(n.states)}

    def canon(subset):
        return tuple(sorted(subset, key=order.__getitem__))

    start = canon(n.init)
    names = {start: 0}
    queue = deque([start])
    delta = {}
    while queue:
        subset = queue.popleft()
        for a in n.alphabet:
            target = canon(n.image(subset, a))
            if target not in names:
                names[target] = len(names)
                queue.append(target)
            delta[names[subset], a] = names[target]
    subsets = list(names)
    output = {i: not n.final.isdisjoint(s) for i, s in enumerate(subsets)}
    return DetMachine(n.alphabet, tuple(range(len(subsets))), 0, delta, output), subsets


def determinize(n: Nfa) -> DetMachine:
    return subset_construction(n)[0]


def codeterminize(n: Nfa) -> Nfa:
    """Backward-deterministic, co-reachable Nfa for the same language."""
    return transpose(embed(determinize(transpose(n))))


def brzozowski(n: Nfa) -> DetMachine:
    """Minimal DFA by double reversal: determinize after codeterminize."""
    return determinize(codeterminize(n))


def is_deterministic(n: Nfa) -> bool:
    return len(n.init) == 1 and all(
        len(n.successors(q, a)) == 1 for q in n.states for a in n.alphabet
    )


def is_backward_deterministic(n: Nfa) -> bool:
    """At most one final state, and every letter's relation is injective."""
    if len(n.final) > 1:
        return False
    for a in n.alphabet:
        hit: set = set()
        for q in n.states:
            targets = n.successors(q, a)
            if not hit.isdisjoint(targets):
                return False
            hit |= targets
    return True


def reverse(w: Word) -> Word:
    return tuple(reversed(tuple(w)))
