"""Subsequential transducers as automata over partial output-producing maps.

Values of ``T X = B* x X + 1`` are represented as ``None`` (undefined) or a
:class:`Pair` ``(output_word, element)``.  A :class:`KleisliMorphism` is a
finite total map ``X -> T Y``; composing two of them concatenates output words
(earlier word first) and propagates ``None``.

A :class:`SubseqTransducer` stores its initial value, transitions and
termination outputs as partial maps.  The rest of the module builds Choffrut
minimization from three pieces:

* ``trim``: keep states that are reachable and can still terminate;
* ``normalize``: push every state's longest common output prefix towards the
  initial side, so each state denotes an irreducible residual;
* Moore refinement on the normalized machine.

Partial output words (``B* + 1``) are written ``Optional[Word]`` throughout.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, NamedTuple, Optional

from .core import (
    Alphabet,
    DetMachine,
    InvariantError,
    LazyDetMachine,
    State,
    ValidationError,
    Word,
)

BOT = None
UNIT = ()  # the single element of the one-point set


class Pair(NamedTuple):
    output: Word
    value: Any


def extend(f: Callable[[Any], Optional[Pair]], value: Optional[Pair]) -> Optional[Pair]:
    """Apply ``f: X -> T Y`` to a value of ``T X`` (bind of the monad)."""
    if value is None:
        return None
    result = f(value.value)
    if result is None:
        return None
    return Pair(value.output + result.output, result.value)


@dataclass(frozen=True)
class KleisliMorphism:
    """A total map ``domain -> T(codomain)``."""

    domain: tuple
    codomain: tuple
    mapping: Mapping[Any, Optional[Pair]]

    def __post_init__(self):
        domain, codomain = tuple(self.domain), tuple(self.codomain)
        mapping = {}
        cod = set(codomain)
        for x in domain:
            if x not in self.mapping:
                raise ValidationError(f"morphism undefined on {x!r}; use None for bottom")
            v = self.mapping[x]
            if v is not None:
                v = Pair(tuple(v[0]), v[1])
                if v.value not in cod:
                    raise ValidationError(f"{x!r} is sent outside the codomain: {v.value!r}")
            mapping[x] = v
        if len(mapping) != len(self.mapping):
            raise ValidationError("mapping mentions elements outside the domain")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "mapping", mapping)

    def __call__(self, x) -> Optional[Pair]:
        return self.mapping[x]

    def words(self) -> dict:
        """First projection: output word, or None."""
        return {x: (None if v is None else v.output) for x, v in self.mapping.items()}

    def targets(self) -> dict:
        """Second projection: target element, or None."""
        return {x: (None if v is None else v.value) for x, v in self.mapping.items()}


def unit(objects: Iterable) -> KleisliMorphism:
    """The identity morphism ``x -> (eps, x)``."""
    objects = tuple(objects)
    return KleisliMorphism(objects, objects, {x: Pair((), x) for x in objects})


def kleisli_compose(g: KleisliMorphism, f: KleisliMorphism) -> KleisliMorphism:
    """``g`` after ``f``."""
    if f.codomain != g.domain:
        raise ValidationError("codomain of f does not match domain of g")
    return KleisliMorphism(f.domain, g.codomain, {x: extend(g, f(x)) for x in f.domain})


# -- transducers -------------------------------------------------------------------


@dataclass(frozen=True)
class SubseqTransducer:
    """Deterministic transducer computing a partial function ``A* -> B*``.

    ``init`` is None or ``Pair(u0, q0)``; ``final`` is the partial termination
    function ``q -> word``; ``delta`` maps ``(q, a)`` to ``Pair(q*a, q.a)``,
    absent when undefined.
    """

    input_alphabet: Alphabet
    output_alphabet: Alphabet
    states: tuple
    init: Optional[Pair]
    final: Mapping[State, Word]
    delta: Mapping[tuple, Pair]

    def __post_init__(self):
        states = tuple(self.states)
        known = set(states)
        if len(known) != len(states):
            raise ValidationError("duplicate state ids")
        B = self.output_alphabet
        init = self.init
        if init is not None:
            init = Pair(B.check_word(init[0]), init[1])
            if init.value not in known:
                raise ValidationError(f"initial state {init.value!r} is not a state")
        final = {}
        for q, w in self.final.items():
            if q not in known:
                raise ValidationError(f"termination output for unknown state {q!r}")
            if w is not None:
                final[q] = B.check_word(w)
        delta = {}
        for (q, a), v in self.delta.items():
            if q not in known or a not in self.input_alphabet:
                raise ValidationError(f"transition from unknown state or symbol ({q!r}, {a!r})")
            if v is None:
                continue
            v = Pair(B.check_word(v[0]), v[1])
            if v.value not in known:
                raise ValidationError(f"transition ({q!r}, {a!r}) leads to unknown state {v.value!r}")
            delta[q, a] = v
        for name, value in (("states", states), ("init", init), ("final", final), ("delta", delta)):
            object.__setattr__(self, name, value)

    def step(self, q: State, a: str) -> Optional[Pair]:
        return self.delta.get((q, a))

    def term(self, q: State) -> Optional[Word]:
        return self.final.get(q)

    def init_morphism(self) -> KleisliMorphism:
        return KleisliMorphism((UNIT,), self.states, {UNIT: self.init})

    def transition_morphism(self, a: str) -> KleisliMorphism:
        return KleisliMorphism(self.states, self.states, {q: self.step(q, a) for q in self.states})

    def termination_morphism(self) -> KleisliMorphism:
        return KleisliMorphism(
            self.states, (UNIT,),
            {q: (None if self.term(q) is None else Pair(self.term(q), UNIT)) for q in self.states},
        )


def empty_transducer(A: Alphabet, B: Alphabet) -> SubseqTransducer:
    return SubseqTransducer(A, B, (), None, {}, {})


def _term_pair(t: SubseqTransducer):
    def term(q):
        w = t.term(q)
        return None if w is None else Pair(w, UNIT)
    return term


def transduce(t: SubseqTransducer, w: Iterable[str]) -> Optional[Word]:
    """Output word produced on input ``w``, or None where the function is undefined."""
    w = t.input_alphabet.check_word(w)
    value = t.init
    for a in w:
        value = extend(lambda q: t.step(q, a), value)
    result = extend(_term_pair(t), value)
    return None if result is None else result.output


def lift_to_set(t: SubseqTransducer) -> LazyDetMachine:
    """The deterministic machine on ``T Q`` induced by ``t``.

    States are None or ``Pair(produced_so_far, q)``; the output of a state is
    the completed word (or None).  The state space is infinite in general, so
    the machine is lazy.
    """
    term = _term_pair(t)

    def step(s, a):
        return extend(lambda q: t.step(q, a), s)

    def out(s):
        r = extend(term, s)
        return None if r is None else r.output

    return LazyDetMachine(t.input_alphabet, t.init, step, out)


def free_transducer(m: DetMachine, output_alphabet: Alphabet) -> SubseqTransducer:
    """Transducer with the states of ``m``, empty edge outputs and ``m``'s outputs on termination."""
    return SubseqTransducer(
        m.alphabet,
        output_alphabet,
        m.states,
        Pair((), m.init),
        {q: m.out(q) for q in m.states if m.out(q) is not None},
        {(q, a): Pair((), m.step(q, a)) for q in m.states for a in m.alphabet},
    )


# -- longest common prefixes and irreducible functions ---------------------------


def lcp(words: Iterable[Word]) -> Word:
    words = [tuple(w) for w in words]
    if not words:
        raise ValidationError("lcp of an empty set of words is undefined")
    first = min(words, key=len)
    n = 0
    while n < len(first) and all(w[n] == first[n] for w in words):
        n += 1
    return first[:n]


def strip_prefix(prefix: Word, w: Word) -> Word:
    if tuple(w[: len(prefix)]) != tuple(prefix):
        raise InvariantError(f"{prefix!r} is not a prefix of {w!r}")
    return tuple(w[len(prefix):])


def _defined(table: Mapping[Word, Optional[Word]]) -> list:
    values = [v for v in table.values() if v is not None]
    if not values:
        raise ValidationError("table is nowhere defined")
    return values


def pstar(v: Word, table: Mapping[Word, Optional[Word]]) -> dict:
    """Prefix ``v`` to every defined entry of ``table``."""
    _defined(table)
    v = tuple(v)
    return {u: (None if k is None else v + tuple(k)) for u, k in table.items()}


def reduce(table: Mapping[Word, Optional[Word]]) -> tuple[Word, dict]:
    """Split a partial function into its common prefix and its irreducible remainder."""
    prefix = lcp(_defined(table))
    return prefix, {u: (None if k is None else tuple(k)[len(prefix):]) for u, k in table.items()}


def is_irreducible(table: Mapping[Word, Optional[Word]]) -> bool:
    return lcp(_defined(table)) == ()


# -- the (E, M) factorization system -------------------------------------------


def factorize(f: KleisliMorphism) -> tuple[KleisliMorphism, KleisliMorphism]:
    """Factor ``f`` through the set of elements it actually reaches.

    Returns ``(e, m)`` with ``e`` keeping all output words and ``m`` an
    output-free inclusion, so that ``m . e == f``.
    """
    hit = {v.value for v in f.mapping.values() if v is not None}
    image = tuple(y for y in f.codomain if y in hit)
    e = KleisliMorphism(f.domain, image, f.mapping)
    m = KleisliMorphism(image, f.codomain, {y: Pair((), y) for y in image})
    return e, m


def is_epi(f: KleisliMorphism) -> bool:
    """Every codomain element is hit by the second projection."""
    hit = {v.value for v in f.mapping.values() if v is not None}
    return all(y in hit for y in f.codomain)


def is_mono(f: KleisliMorphism) -> bool:
    """Second projection injective and total, first projection constantly empty."""
    seen = set()
    for v in f.mapping.values():
        if v is None or v.output != () or v.value in seen:
            return False
        seen.add(v.value)
    return True


def diagonal_fill(e: KleisliMorphism, f: KleisliMorphism, g: KleisliMorphism,
                  m: KleisliMorphism) -> KleisliMorphism:
    """The unique ``d`` with ``d . e == f`` and ``m . d == g`` for a commuting square.

    ``e: X -> Y`` must be in E, ``m: Z -> W`` in M, with ``f: X -> Z`` and
    ``g: Y -> W``.
    """
    if not is_epi(e):
        raise ValidationError("e is not in E")
    if not is_mono(m):
        raise ValidationError("m is not in M")
    if kleisli_compose(g, e) != kleisli_compose(m, f):
        raise ValidationError("square does not commute")
    preimage = {}
    for x in e.domain:
        v = e(x)
        if v is not None:
            preimage.setdefault(v.value, x)
    d = {}
    for y in e.codomain:
        gy = g(y)
        if gy is None:
            d[y] = None
            continue
        fx = f(preimage[y])
        if fx is None:
            raise InvariantError("defined g(y) but undefined f on a preimage of y")
        d[y] = Pair(gy.output, fx.value)
    return KleisliMorphism(e.codomain, f.codomain, d)


# -- trimming and normalization ------------------------------------------------


def _restrict(t: SubseqTransducer, keep: set) -> SubseqTransducer:
    states = tuple(q for q in t.states if q in keep)
    init = t.init if t.init is not None and t.init.value in keep else None
    return SubseqTransducer(
        t.input_alphabet,
        t.output_alphabet,
        states,
        init,
        {q: w for q, w in t.final.items() if q in keep},
        {(q, a): v for (q, a), v in t.delta.items() if q in keep and v.value in keep},
    )


def productive_states(t: SubseqTransducer) -> set:
    """States from which some input leads to a defined termination."""
    preds: dict = {}
    for (q, _a), v in t.delta.items():
        preds.setdefault(v.value, []).append(q)
    good = set(t.final)
    queue = deque(good)
    while queue:
        q = queue.popleft()
        for p in preds.get(q, ()):
            if p not in good:
                good.add(p)
                queue.append(p)
    return good


def reachable_states(t: SubseqTransducer) -> set:
    if t.init is None:
        return set()
    seen = {t.init.value}
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for a in t.input_alphabet:
            v = t.step(q, a)
            if v is not None and v.value not in seen:
                seen.add(v.value)
                queue.append(v.value)
    return seen


def trim(t: SubseqTransducer) -> SubseqTransducer:
    """Keep only states that are reachable and productive.

    Removing unproductive states first means reachability is computed through
    productive states only, so the result has no dead ends.
    """
    productive = _restrict(t, productive_states(t))
    return _restrict(productive, reachable_states(productive))


def is_trim(t: SubseqTransducer) -> bool:
    states = set(t.states)
    return reachable_states(t) == states and productive_states(t) == states


def _shortest_completions(t: SubseqTransducer) -> dict:
    """Output of one shortest terminating continuation from every productive state."""
    preds: dict = {}
    for (q, _a), v in t.delta.items():
        preds.setdefault(v.value, []).append(q)
    dist = {q: 0 for q in t.states if t.term(q) is not None}
    queue = deque(q for q in t.states if q in dist)
    while queue:
        q = queue.popleft()
        for p in preds.get(q, ()):
            if p not in dist:
                dist[p] = dist[q] + 1
                queue.append(p)
    best = {}
    for p in sorted(dist, key=dist.__getitem__):
        if dist[p] == 0:
            best[p] = t.term(p)
            continue
        for a in t.input_alphabet:
            v = t.step(p, a)
            if v is not None and dist.get(v.value) == dist[p] - 1:
                best[p] = v.output + best[v.value]
                break
    return best


def maximal_outputs(t: SubseqTransducer) -> dict:
    """Longest common prefix of every state's output function.

    Seeded with one concrete completion per state, then the recurrence
    ``m(q) = lcp({term(q)} + {q*a . m(q.a)})`` is iterated; each round can only
    shorten words, so it stops.
    """
    if not is_trim(t):
        raise ValidationError("maximal_outputs needs a trimmed transducer")
    m = _shortest_completions(t)
    changed = True
    while changed:
        changed = False
        for q in t.states:
            candidates = []
            if t.term(q) is not None:
                candidates.append(t.term(q))
            for a in t.input_alphabet:
                v = t.step(q, a)
                if v is not None:
                    candidates.append(v.output + m[v.value])
            new = lcp(candidates)
            if new != m[q]:
                m[q] = new
                changed = True
    return m


def normalize(t: SubseqTransducer) -> SubseqTransducer:
    """Onward form: each state's common output prefix is emitted as early as possible."""
    if not is_trim(t):
        raise ValidationError("normalize needs a trimmed transducer")
    if t.init is None:
        return t
    m = maximal_outputs(t)
    init = Pair(t.init.output + m[t.init.value], t.init.value)
    final = {q: strip_prefix(m[q], w) for q, w in t.final.items()}
    delta = {
        (q, a): Pair(strip_prefix(m[q], v.output + m[v.value]), v.value)
        for (q, a), v in t.delta.items()
    }
    return SubseqTransducer(t.input_alphabet, t.output_alphabet, t.states, init, final, delta)


def is_onward(t: SubseqTransducer) -> bool:
    return all(w == () for w in maximal_outputs(t).values())


# -- minimization and equivalence ----------------------------------------------


def renumber_transducer(t: SubseqTransducer) -> tuple[SubseqTransducer, dict]:
    """Rename reachable states to ``0..n-1`` in breadth-first order (symbols in alphabet order)."""
    if t.init is None:
        return empty_transducer(t.input_alphabet, t.output_alphabet), {}
    names = {t.init.value: 0}
    queue = deque([t.init.value])
    while queue:
        q = queue.popleft()
        for a in t.input_alphabet:
            v = t.step(q, a)
            if v is not None and v.value not in names:
                names[v.value] = len(names)
                queue.append(v.value)
    renamed = SubseqTransducer(
        t.input_alphabet,
        t.output_alphabet,
        tuple(range(len(names))),
        Pair(t.init.output, 0),
        {names[q]: w for q, w in t.final.items() if q in names},
        {(names[q], a): Pair(v.output, names[v.value])
         for (q, a), v in t.delta.items() if q in names},
    )
    return renamed, names


def transducer_partition(t: SubseqTransducer) -> dict:
    """Coarsest partition compatible with termination words and edge labels.

    Two states share a block when their termination outputs are equal and,
    letter by letter, their transitions are both undefined or carry the same
    word into the same block.  Returns ``state -> block number``.
    """
    symbols = t.input_alphabet.symbols

    def number(key):
        ids: dict = {}
        return {q: ids.setdefault(key(q), len(ids)) for q in t.states}

    block = number(t.term)
    while True:
        def signature(q, block=block):
            edges = []
            for a in symbols:
                v = t.step(q, a)
                edges.append(None if v is None else (v.output, block[v.value]))
            return block[q], tuple(edges)

        refined = number(signature)
        stable = len(set(refined.values())) == len(set(block.values()))
        block = refined
        if stable:
            return block


def choffrut_minimize(t: SubseqTransducer) -> SubseqTransducer:
    """Minimal onward transducer realizing the same partial function as ``t``."""
    n = normalize(trim(t))
    if n.init is None:
        return empty_transducer(t.input_alphabet, t.output_alphabet)
    block = transducer_partition(n)
    reps: dict = {}
    for q in n.states:
        reps.setdefault(block[q], q)
    quotiented = SubseqTransducer(
        n.input_alphabet,
        n.output_alphabet,
        tuple(reps),
        Pair(n.init.output, block[n.init.value]),
        {b: n.term(q) for b, q in reps.items() if n.term(q) is not None},
        {(b, a): Pair(n.step(q, a).output, block[n.step(q, a).value])
         for b, q in reps.items() for a in n.input_alphabet if n.step(q, a) is not None},
    )
    return renumber_transducer(quotiented)[0]


def _check_alphabets(t1: SubseqTransducer, t2: SubseqTransducer):
    if t1.input_alphabet != t2.input_alphabet or t1.output_alphabet != t2.output_alphabet:
        raise ValidationError("transducers have different alphabets")


def transducer_equiv(t1: SubseqTransducer, t2: SubseqTransducer) -> bool:
    """Exact equality of the realized partial functions.

    Both sides are trimmed and normalized; equal functions then force equal
    initial words and, from every matched pair of states, equal termination
    words and equal edge labels, so a walk over state pairs decides it.
    """
    _check_alphabets(t1, t2)
    n1, n2 = normalize(trim(t1)), normalize(trim(t2))
    if n1.init is None or n2.init is None:
        return n1.init is None and n2.init is None
    if n1.init.output != n2.init.output:
        return False
    start = (n1.init.value, n2.init.value)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if n1.term(p) != n2.term(q):
            return False
        for a in n1.input_alphabet:
            v1, v2 = n1.step(p, a), n2.step(q, a)
            if v1 is None or v2 is None:
                if v1 is not v2:
                    return False
                continue
            if v1.output != v2.output:
                return False
            nxt = (v1.value, v2.value)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def transducer_witness(t1: SubseqTransducer, t2: SubseqTransducer) -> Optional[Word]:
    """A word on which the two transducers disagree, or None if they are equivalent.

    Walks configurations ``(q1, q2, lag1, lag2)`` where the lags are the
    pending outputs after removing their common prefix.  A configuration is a
    witness source when termination disagrees, when only one side can go on,
    or when both lags are nonempty (the outputs have already diverged).
    """
    _check_alphabets(t1, t2)
    n1, n2 = trim(t1), trim(t2)
    if n1.init is None and n2.init is None:
        return None
    completions = (_completion_words(n1), _completion_words(n2))
    if n1.init is None or n2.init is None:
        return completions[0 if n2.init is None else 1][(n1 if n2.init is None else n2).init.value]

    longest = max(
        [len(n1.init.output), len(n2.init.output)]
        + [len(v.output) for v in n1.delta.values()] + [len(v.output) for v in n2.delta.values()]
        + [len(w) for w in n1.final.values()] + [len(w) for w in n2.final.values()]
    )
    bound = (len(n1.states) * len(n2.states) + 1) * (longest + 1)

    def split(d1, d2):
        common = len(lcp([d1, d2]))
        return d1[common:], d2[common:]

    start = (n1.init.value, n2.init.value, *split(n1.init.output, n2.init.output))
    parent: dict = {start: None}
    queue = deque([start])

    def path_to(config):
        path = []
        while parent[config] is not None:
            config, a = parent[config]
            path.append(a)
        return tuple(reversed(path))

    while queue:
        config = queue.popleft()
        p, q, d1, d2 = config
        if d1 and d2:
            return path_to(config) + completions[0][p]
        w1, w2 = n1.term(p), n2.term(q)
        if (w1 is None) != (w2 is None) or (w1 is not None and d1 + w1 != d2 + w2):
            return path_to(config)
        for a in n1.input_alphabet:
            v1, v2 = n1.step(p, a), n2.step(q, a)
            if v1 is None and v2 is None:
                continue
            if v1 is None or v2 is None:
                side, v = (0, v1) if v2 is None else (1, v2)
                return path_to(config) + (a,) + completions[side][v.value]
            nxt = (v1.value, v2.value, *split(d1 + v1.output, d2 + v2.output))
            if nxt not in parent and max(len(nxt[2]), len(nxt[3])) <= bound:
                parent[nxt] = (config, a)
                queue.append(nxt)
    if not transducer_equiv(t1, t2):
        raise InvariantError("inequivalent transducers but no witness within the lag bound")
    return None


def _completion_words(t: SubseqTransducer) -> dict:
    """An input word leading from each productive state to a defined termination."""
    preds: dict = {}
    for (q, a), v in t.delta.items():
        preds.setdefault(v.value, []).append((q, a))
    words = {q: () for q in t.states if t.term(q) is not None}
    queue = deque(q for q in t.states if q in words)
    while queue:
        q = queue.popleft()
        for p, a in preds.get(q, ()):
            if p not in words:
                words[p] = (a,) + words[q]
                queue.append(p)
    return words


def transducer_isomorphic(t1: SubseqTransducer, t2: SubseqTransducer) -> Optional[dict]:
    """State bijection preserving init, termination and labelled edges, for reachable machines."""
    h = class_map(t1, t2)
    if h is None or len(t1.states) != len(t2.states) or len(set(h.values())) != len(t2.states):
        return None
    return h if check_transducer_morphism(t1, t2, h) else None


def class_map(src: SubseqTransducer, dst: SubseqTransducer) -> Optional[dict]:
    """The map forced by walking both machines in lockstep from their initial states.

    Returns None if the walk assigns two images to one state.  Unreachable
    source states are left unmapped.
    """
    if src.init is None or dst.init is None:
        return {} if src.init is None and dst.init is None else None
    h = {src.init.value: dst.init.value}
    queue = deque([src.init.value])
    while queue:
        q = queue.popleft()
        for a in src.input_alphabet:
            v, w = src.step(q, a), dst.step(h[q], a)
            if v is None or w is None:
                continue
            if v.value in h:
                if h[v.value] != w.value:
                    return None
                continue
            h[v.value] = w.value
            queue.append(v.value)
    return h


def check_transducer_morphism(src: SubseqTransducer, dst: SubseqTransducer, h: Mapping) -> bool:
    """``h`` is a total map of states commuting with init, termination and every transition."""
    if src.input_alphabet != dst.input_alphabet or src.output_alphabet != dst.output_alphabet:
        return False
    dst_states = set(dst.states)
    if any(q not in h or h[q] not in dst_states for q in src.states):
        return False
    if (src.init is None) != (dst.init is None):
        return False
    if src.init is not None and (src.init.output, h[src.init.value]) != tuple(dst.init):
        return False
    for q in src.states:
        if src.term(q) != dst.term(h[q]):
            return False
        for a in src.input_alphabet:
            v, w = src.step(q, a), dst.step(h[q], a)
            if v is None or w is None:
                if v is not w:
                    return False
            elif (v.output, h[v.value]) != tuple(w):
                return False
    return True
