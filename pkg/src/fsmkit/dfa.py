"""Reachability, observability and minimization of deterministic machines.

Minimization is the composite of two factorizations: ``reach`` keeps the image
of the words (the sub-machine reachable from the initial state), ``obs``
quotients by observational equivalence.  Both work for any hashable output
type, so the same code minimizes DFAs and machines with word-valued outputs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional

from .core import DetMachine, MachineMorphism, State, ValidationError, Word, step_word

Dfa = DetMachine  # DetMachine with boolean outputs


@dataclass(frozen=True)
class Partition:
    """Blocks of states, numbered by their least member in state order."""

    blocks: tuple
    block_of: Mapping[State, int]

    def __len__(self):
        return len(self.blocks)


def reach(m: DetMachine) -> DetMachine:
    """Restrict ``m`` to the states reachable from its initial state.

    State ids and their relative order are preserved.
    """
    seen = {m.init}
    queue = deque([m.init])
    while queue:
        q = queue.popleft()
        for a in m.alphabet:
            t = m.step(q, a)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    if len(seen) == len(m.states):
        return m
    states = tuple(q for q in m.states if q in seen)
    return DetMachine(
        m.alphabet,
        states,
        m.init,
        {(q, a): m.step(q, a) for q in states for a in m.alphabet},
        {q: m.out(q) for q in states},
    )


def _number_by_first_occurrence(states, key) -> dict:
    ids: dict = {}
    return {q: ids.setdefault(key(q), len(ids)) for q in states}


def coarsest_partition(m: DetMachine) -> Partition:
    """Moore refinement: split by output, then by successor blocks until stable."""
    block = _number_by_first_occurrence(m.states, m.out)
    symbols = m.alphabet.symbols
    while True:
        refined = _number_by_first_occurrence(
            m.states, lambda q: (block[q], tuple(block[m.step(q, a)] for a in symbols))
        )
        stable = len(set(refined.values())) == len(set(block.values()))
        block = refined
        if stable:
            break
    blocks: list = [[] for _ in range(len(set(block.values())))]
    for q in m.states:
        blocks[block[q]].append(q)
    return Partition(tuple(tuple(b) for b in blocks), block)


def quotient(m: DetMachine, partition: Partition) -> DetMachine:
    """The machine on blocks; assumes ``partition`` is a congruence for ``m``."""
    reps = [b[0] for b in partition.blocks]
    bo = partition.block_of
    return DetMachine(
        m.alphabet,
        tuple(range(len(reps))),
        bo[m.init],
        {(i, a): bo[m.step(q, a)] for i, q in enumerate(reps) for a in m.alphabet},
        {i: m.out(q) for i, q in enumerate(reps)},
    )


def obs(m: DetMachine) -> tuple[DetMachine, Partition]:
    """Observable quotient of ``m`` together with the partition that produced it."""
    p = coarsest_partition(m)
    return quotient(m, p), p


def renumber(m: DetMachine) -> tuple[DetMachine, dict]:
    """Rename the reachable states to ``0..n-1`` in breadth-first discovery order.

    Symbols are explored in alphabet order, so the result is canonical.
    Returns the new machine and the old-to-new map.
    """
    names = {m.init: 0}
    queue = deque([m.init])
    while queue:
        q = queue.popleft()
        for a in m.alphabet:
            t = m.step(q, a)
            if t not in names:
                names[t] = len(names)
                queue.append(t)
    renamed = DetMachine(
        m.alphabet,
        tuple(range(len(names))),
        0,
        {(names[q], a): names[m.step(q, a)] for q in names for a in m.alphabet},
        {names[q]: m.out(q) for q in names},
    )
    return renamed, names


def minimize(m: DetMachine) -> DetMachine:
    """Minimal machine with the same behaviour, states numbered canonically."""
    quotiented, _ = obs(reach(m))
    return renumber(quotiented)[0]


def is_reachable(m: DetMachine) -> bool:
    return len(reach(m).states) == len(m.states)


def is_observable(m: DetMachine) -> bool:
    return len(coarsest_partition(m)) == len(m.states)


def residual(m: DetMachine, w: Word) -> DetMachine:
    """The same machine re-rooted at the state reached by ``w``."""
    w = m.alphabet.check_word(w)
    return DetMachine(m.alphabet, m.states, step_word(m, m.init, w), m.delta, m.output)


def equiv_witness(m1: DetMachine, m2: DetMachine) -> Optional[Word]:
    """Shortest word on which the machines' outputs differ, or None if they agree everywhere."""
    if m1.alphabet != m2.alphabet:
        raise ValidationError("machines have different alphabets")
    start = (m1.init, m2.init)
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if m1.out(p) != m2.out(q):
            path = []
            while parent[pair] is not None:
                pair, a = parent[pair]
                path.append(a)
            return tuple(reversed(path))
        for a in m1.alphabet:
            nxt = (m1.step(p, a), m2.step(q, a))
            if nxt not in parent:
                parent[nxt] = (pair, a)
                queue.append(nxt)
    return None


def equiv(m1: DetMachine, m2: DetMachine) -> bool:
    return equiv_witness(m1, m2) is None


def min_divides(b: DetMachine) -> MachineMorphism:
    """The surjective morphism from ``reach(b)`` onto ``minimize(b)``.

    Each reachable state is sent to the (renumbered) block containing it.
    """
    r = reach(b)
    quotiented, partition = obs(r)
    minimal, names = renumber(quotiented)
    mapping = {q: names[partition.block_of[q]] for q in r.states}
    return MachineMorphism(r, minimal, mapping)
