"""Random machines for property tests and the acceptance suite.

All generators take a :class:`random.Random` so runs are reproducible from a seed.
"""
from __future__ import annotations

import itertools
import random
from typing import Optional

from .core import Alphabet, DetMachine
from .kleisli import KleisliMorphism, Pair, SubseqTransducer, lcp
from .nfa import Nfa

AB = Alphabet(("a", "b"))
XY = Alphabet(("x", "y"))


def random_word(rng: random.Random, alpha: Alphabet, max_len: int) -> tuple:
    return tuple(rng.choice(alpha.symbols) for _ in range(rng.randint(0, max_len)))


def random_dfa(rng: random.Random, max_states: int = 8, alpha: Alphabet = AB,
               p_final: float = 0.4) -> DetMachine:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    delta = {(q, a): rng.choice(states) for q in states for a in alpha}
    return DetMachine(alpha, states, states[0], delta, {q: rng.random() < p_final for q in states})


def random_nfa(rng: random.Random, max_states: int = 6, alpha: Alphabet = AB,
               density: float = 0.3, p_init: float = 0.3, p_final: float = 0.3) -> Nfa:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    delta: dict = {}
    for q in states:
        for a in alpha:
            targets = {t for t in states if rng.random() < density}
            if targets:
                delta[q, a] = targets
    init = {q for q in states if rng.random() < p_init}
    final = {q for q in states if rng.random() < p_final}
    return Nfa(alpha, states, init, final, delta)


def random_transducer(rng: random.Random, max_states: int = 5, A: Alphabet = AB,
                      B: Alphabet = XY, max_out: int = 3, p_edge: float = 0.8,
                      p_term: float = 0.5, p_init: float = 0.95) -> SubseqTransducer:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    init = Pair(random_word(rng, B, max_out), states[0]) if rng.random() < p_init else None
    final = {q: random_word(rng, B, max_out) for q in states if rng.random() < p_term}
    delta = {
        (q, a): Pair(random_word(rng, B, max_out), rng.choice(states))
        for q in states for a in A if rng.random() < p_edge
    }
    return SubseqTransducer(A, B, states, init, final, delta)


def random_kleisli_morphism(rng: random.Random, domain: tuple, codomain: tuple,
                            B: Alphabet = XY, max_out: int = 3, p_bot: float = 0.2) -> KleisliMorphism:
    mapping = {}
    for x in domain:
        if not codomain or rng.random() < p_bot:
            mapping[x] = None
        else:
            mapping[x] = Pair(random_word(rng, B, max_out), rng.choice(codomain))
    return KleisliMorphism(domain, codomain, mapping)


def random_epi(rng: random.Random, domain: tuple, codomain: tuple, B: Alphabet = XY,
               max_out: int = 3) -> KleisliMorphism:
    """A morphism whose second projection hits every element of ``codomain``.

    Needs ``len(domain) >= len(codomain)``.
    """
    xs = list(domain)
    rng.shuffle(xs)
    mapping = {x: Pair(random_word(rng, B, max_out), y) for x, y in zip(xs, codomain)}
    for x in xs[len(codomain):]:
        mapping[x] = None if rng.random() < 0.2 else Pair(random_word(rng, B, max_out), rng.choice(codomain))
    return KleisliMorphism(domain, codomain, mapping)


def random_mono(rng: random.Random, domain: tuple, codomain: tuple) -> KleisliMorphism:
    """An injective, output-free morphism; needs ``len(domain) <= len(codomain)``."""
    targets = rng.sample(list(codomain), len(domain))
    return KleisliMorphism(domain, codomain, {x: Pair((), y) for x, y in zip(domain, targets)})


def random_table(rng: random.Random, A: Alphabet = AB, B: Alphabet = XY, bound: int = 3,
                 max_out: int = 4, p_bot: float = 0.3, shared_prefix: Optional[int] = None) -> dict:
    """A partial function on words of length <= bound with at least one defined entry.

    A random common prefix (of length up to ``shared_prefix``) is put in front
    of every defined value so that reductions are nontrivial.
    """
    keys = [w for n in range(bound + 1) for w in itertools.product(A.symbols, repeat=n)]
    prefix = random_word(rng, B, max_out if shared_prefix is None else shared_prefix)
    table = {u: (None if rng.random() < p_bot else prefix + random_word(rng, B, max_out)) for u in keys}
    if all(v is None for v in table.values()):
        table[rng.choice(keys)] = prefix + random_word(rng, B, max_out)
    return table


# -- equivalent variants of a transducer ---------------------------------------


def _duplicate_state(rng, t: SubseqTransducer, q) -> SubseqTransducer:
    copy = f"{q}'"
    while copy in t.states:
        copy += "'"
    delta = dict(t.delta)
    for a in t.input_alphabet:
        if (q, a) in t.delta:
            delta[copy, a] = t.delta[q, a]
    for key, v in t.delta.items():
        if v.value == q and rng.random() < 0.5:
            delta[key] = Pair(v.output, copy)
    final = dict(t.final)
    if q in t.final:
        final[copy] = t.final[q]
    init = t.init
    if init is not None and init.value == q and rng.random() < 0.5:
        init = Pair(init.output, copy)
    return SubseqTransducer(t.input_alphabet, t.output_alphabet, t.states + (copy,), init, final, delta)


def _delay_output(t: SubseqTransducer, q) -> SubseqTransducer:
    """Move a common suffix of all words entering ``q`` onto the words leaving it."""
    incoming = [v.output for v in t.delta.values() if v.value == q]
    if t.init is not None and t.init.value == q:
        incoming.append(t.init.output)
    if not incoming:
        return t
    suffix = tuple(reversed(lcp([tuple(reversed(w)) for w in incoming])))
    if not suffix:
        return t
    k = len(suffix)
    delta = {}
    for (p, a), v in t.delta.items():
        out = v.output[:-k] if v.value == q else v.output
        delta[p, a] = Pair(suffix + out if p == q else out, v.value)
    final = {p: (suffix + w if p == q else w) for p, w in t.final.items()}
    init = t.init
    if init is not None and init.value == q:
        init = Pair(init.output[:-k], q)
    return SubseqTransducer(t.input_alphabet, t.output_alphabet, t.states, init, final, delta)


def _advance_output(t: SubseqTransducer, q) -> SubseqTransducer:
    """Move a common prefix of all words leaving ``q`` onto the words entering it."""
    leaving = [v.output for (p, _a), v in t.delta.items() if p == q]
    if q in t.final:
        leaving.append(t.final[q])
    if not leaving:
        return t
    prefix = lcp(leaving)
    if not prefix:
        return t
    k = len(prefix)
    delta = {}
    for (p, a), v in t.delta.items():
        out = v.output[k:] if p == q else v.output
        delta[p, a] = Pair(out + prefix if v.value == q else out, v.value)
    final = {p: (w[k:] if p == q else w) for p, w in t.final.items()}
    init = t.init
    if init is not None and init.value == q:
        init = Pair(init.output + prefix, q)
    return SubseqTransducer(t.input_alphabet, t.output_alphabet, t.states, init, final, delta)


def _add_junk(rng, t: SubseqTransducer, max_out: int = 2) -> SubseqTransducer:
    """Add an unreachable state and a reachable dead-end state."""
    A = t.input_alphabet
    unreachable, dead = "junk", "dead"
    states = t.states + (unreachable, dead)
    delta = dict(t.delta)
    final = dict(t.final)
    final[unreachable] = random_word(rng, t.output_alphabet, max_out)
    for a in A:
        delta[unreachable, a] = Pair(random_word(rng, t.output_alphabet, max_out), rng.choice(states))
        delta[dead, a] = Pair(random_word(rng, t.output_alphabet, max_out), dead)
    holes = [(q, a) for q in t.states for a in A if (q, a) not in t.delta]
    if holes:
        delta[rng.choice(holes)] = Pair(random_word(rng, t.output_alphabet, max_out), dead)
    return SubseqTransducer(A, t.output_alphabet, states, t.init, final, delta)


def equivalent_variant(rng: random.Random, t: SubseqTransducer, rounds: int = 4) -> SubseqTransducer:
    """A randomly perturbed transducer realizing the same partial function.

    Applies state duplication, output delaying/advancing across a state and
    junk (unreachable or dead-end) states.
    """
    for _ in range(rounds):
        if not t.states:
            break
        q = rng.choice(t.states)
        move = rng.choice(("duplicate", "delay", "advance", "duplicate"))
        if move == "duplicate":
            t = _duplicate_state(rng, t, q)
        elif move == "delay":
            t = _delay_output(t, q)
        else:
            t = _advance_output(t, q)
    return _add_junk(rng, t)


def random_redundant_transducer(rng: random.Random, max_states: int = 5, A: Alphabet = AB,
                                B: Alphabet = XY, max_out: int = 3) -> SubseqTransducer:
    """A random transducer padded with duplicated states and shifted outputs.

    These have mergeable states far more often than uniformly random ones.
    """
    t = random_transducer(rng, max(1, max_states - 2), A, B, max_out, p_term=0.6, p_init=1.0)
    while len(t.states) < max_states and rng.random() < 0.8:
        t = _duplicate_state(rng, t, rng.choice(t.states))
        q = rng.choice(t.states)
        t = _delay_output(t, q) if rng.random() < 0.5 else _advance_output(t, q)
    return t
