"""Brute-force references for the test suites.

Nothing here calls the algorithms it is used to check: languages are
enumerated with their own traversal, Nerode classes are found by comparing
bounded language tables, and transducer minimality by trying every partition.
Everything is exponential and meant for machines with a handful of states.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import Alphabet, DetMachine, ValidationError
from .kleisli import Pair, SubseqTransducer, transducer_equiv
from .nfa import Nfa


@dataclass(frozen=True)
class LanguageTable:
    alphabet: Alphabet
    bound: int
    entries: dict


def words_up_to(alpha: Alphabet, bound: int) -> Iterator[tuple]:
    """All words of length <= bound, shortest first, then lexicographic in alphabet order."""
    for n in range(bound + 1):
        yield from itertools.product(alpha.symbols, repeat=n)


def _det_value(m, q, w):
    for a in w:
        q = m.delta[q, a]
    return m.output[q]


def _nfa_value(n: Nfa, w):
    current = set(n.init)
    for a in w:
        current = {t for q in current for t in n.delta.get((q, a), ())}
    return bool(current & n.final)


def _transducer_value(t: SubseqTransducer, w):
    if t.init is None:
        return None
    produced, q = list(t.init.output), t.init.value
    for a in w:
        edge = t.delta.get((q, a))
        if edge is None:
            return None
        produced.extend(edge.output)
        q = edge.value
    if q not in t.final:
        return None
    return tuple(produced) + t.final[q]


def enumerate_language(machine, bound: int) -> LanguageTable:
    """Table of the machine's value on every word up to ``bound``."""
    if bound < 0:
        raise ValidationError("bound must be nonnegative")
    if isinstance(machine, DetMachine):
        value, alpha = (lambda w: _det_value(machine, machine.init, w)), machine.alphabet
    elif isinstance(machine, Nfa):
        value, alpha = (lambda w: _nfa_value(machine, w)), machine.alphabet
    elif isinstance(machine, SubseqTransducer):
        value, alpha = (lambda w: _transducer_value(machine, w)), machine.input_alphabet
    else:
        raise ValidationError(f"cannot enumerate {type(machine).__name__}")
    return LanguageTable(alpha, bound, {w: value(w) for w in words_up_to(alpha, bound)})


def nerode_count(m: DetMachine) -> int:
    """Number of distinct residual languages among reachable states.

    Two states of an n-state machine with different languages already differ
    on some word of length at most n - 1, so comparing tables up to that
    length decides residual equality.
    """
    reached = {m.init}
    frontier = [m.init]
    while frontier:
        frontier = [m.delta[q, a] for q in frontier for a in m.alphabet]
        frontier = [q for q in dict.fromkeys(frontier) if q not in reached]
        reached.update(frontier)
    probes = list(words_up_to(m.alphabet, max(len(m.states) - 1, 0)))
    residuals = {tuple(_det_value(m, q, w) for w in probes) for q in reached}
    return len(residuals)


def set_partitions(items: list) -> Iterator[list]:
    """Every partition of ``items`` into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        yield [[first]] + partial
        for i in range(len(partial)):
            yield partial[:i] + [[first] + partial[i]] + partial[i + 1:]


def _quotient_by(t: SubseqTransducer, blocks: list):
    """The transducer on blocks if the partition is compatible with ``t``, else None."""
    index = {q: i for i, b in enumerate(blocks) for q in b}
    final, delta = {}, {}
    for i, block in enumerate(blocks):
        terms = {t.final.get(q) for q in block}
        if len(terms) != 1:
            return None
        (term,) = terms
        if term is not None:
            final[i] = term
        for a in t.input_alphabet:
            edges = set()
            for q in block:
                e = t.delta.get((q, a))
                edges.add(None if e is None else (e.output, index[e.value]))
            if len(edges) != 1:
                return None
            (edge,) = edges
            if edge is not None:
                delta[i, a] = Pair(*edge)
    init = None if t.init is None else Pair(t.init.output, index[t.init.value])
    return SubseqTransducer(
        t.input_alphabet, t.output_alphabet, tuple(range(len(blocks))), init, final, delta
    )


def partition_search_min(t: SubseqTransducer, max_states: int = 5) -> int:
    """Fewest blocks of any partition whose quotient is a transducer equivalent to ``t``."""
    if len(t.states) > max_states:
        raise ValidationError(f"partition search is limited to {max_states} states")
    best = len(t.states)
    for blocks in set_partitions(list(t.states)):
        if len(blocks) >= best:
            continue
        q = _quotient_by(t, blocks)
        if q is not None and transducer_equiv(q, t):
            best = len(blocks)
    return best
