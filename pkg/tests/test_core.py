import itertools
import random

import pytest
from hypothesis import given, strategies as st

from fsmkit import Alphabet, DetMachine, MachineMorphism, ValidationError, check_morphism, build_dfa, isomorphic, run
from fsmkit.core import LazyDetMachine, materialize, step_word
from fsmkit.generators import random_dfa

from .conftest import A1, AB


def all_words(alpha, n):
    for k in range(n + 1):
        yield from itertools.product(alpha.symbols, repeat=k)


def test_alphabet_rejects_duplicates_and_empty():
    with pytest.raises(ValidationError):
        Alphabet(("a", "a"))
    with pytest.raises(ValidationError):
        Alphabet(())
    with pytest.raises(ValidationError):
        Alphabet(("a b",))
    assert Alphabet(("b", "a")).symbols == ("b", "a")


def test_machine_must_be_total():
    with pytest.raises(ValidationError):
        DetMachine(A1, ("p",), "p", {}, {"p": True})
    with pytest.raises(ValidationError):
        DetMachine(A1, ("p",), "r", {("p", "a"): "p"}, {"p": True})


def test_run_constant_machine(constant_true):
    for w in all_words(A1, 4):
        assert run(constant_true, w) is True


def test_run_parity(parity):
    assert run(parity, "a") is True
    assert run(parity, "aa") is False
    assert run(parity, "") == parity.out(parity.init)


def test_run_rejects_foreign_symbol(parity):
    with pytest.raises(ValidationError):
        run(parity, "ab")


@given(st.randoms(use_true_random=False), st.lists(st.sampled_from("ab"), max_size=6),
       st.lists(st.sampled_from("ab"), max_size=6))
def test_run_is_compositional(rng, u, v):
    m = random_dfa(rng)
    mid = step_word(m, m.init, u)
    assert m.out(step_word(m, mid, v)) == run(m, u + v)


def test_identity_is_a_morphism(parity):
    assert check_morphism(MachineMorphism(parity, parity, {q: q for q in parity.states}))


def test_collapsing_states_with_different_outputs_fails(parity):
    assert not check_morphism(MachineMorphism(parity, parity, {"q0": "q0", "q1": "q0"}))


def test_parity_to_constant_true_fails_on_outputs(parity, constant_true):
    h = MachineMorphism(parity, constant_true, {"q0": "s", "q1": "s"})
    assert not check_morphism(h)
    # the transition squares do commute: only the output of q0 breaks it
    assert all(h(parity.step(q, "a")) == constant_true.step(h(q), "a") for q in parity.states)
    assert parity.out("q0") != constant_true.out("s")


@given(st.randoms(use_true_random=False))
def test_morphisms_preserve_language(rng):
    m = random_dfa(rng, max_states=5)
    target = random_dfa(rng, max_states=3)
    candidates = [dict(zip(m.states, images)) for images in itertools.product(target.states, repeat=len(m.states))]
    for mapping in candidates[:200]:
        h = MachineMorphism(m, target, mapping)
        if check_morphism(h):
            for w in all_words(AB, len(m.states) * len(target.states)):
                if len(w) > 8:
                    break
                assert run(m, w) == run(target, w)


def test_isomorphic_to_self(parity):
    assert isomorphic(parity, parity) == {"q0": "q0", "q1": "q1"}


def test_isomorphic_finds_renaming(parity):
    renamed = build_dfa(A1, "x", {"y": {"a": "x"}, "x": {"a": "y"}}, {"y"})
    assert isomorphic(parity, renamed) == {"q0": "x", "q1": "y"}


def test_parity_not_isomorphic_to_constant(parity, constant_true):
    assert isomorphic(parity, constant_true) is None


def test_isomorphic_matches_unreachable_parts():
    m1 = build_dfa(A1, "i", {"i": {"a": "i"}, "u": {"a": "v"}, "v": {"a": "v"}}, {"v"})
    m2 = build_dfa(A1, "I", {"V": {"a": "V"}, "U": {"a": "V"}, "I": {"a": "I"}}, {"V"})
    assert isomorphic(m1, m2) == {"i": "I", "u": "U", "v": "V"}


def _shuffled_copy(rng, m):
    names = list(range(len(m.states)))
    rng.shuffle(names)
    ren = dict(zip(m.states, names))
    order = sorted(m.states, key=ren.__getitem__)
    return DetMachine(
        m.alphabet, tuple(ren[q] for q in order), ren[m.init],
        {(ren[q], a): ren[t] for (q, a), t in m.delta.items()}, {ren[q]: o for q, o in m.output.items()},
    ), ren


@given(st.randoms(use_true_random=False))
def test_isomorphic_is_an_equivalence(rng):
    m = random_dfa(rng, max_states=6)
    m2, ren = _shuffled_copy(rng, m)
    m3, ren2 = _shuffled_copy(rng, m2)
    h = isomorphic(m, m2)
    assert h is not None and check_morphism(MachineMorphism(m, m2, h))
    back = isomorphic(m2, m)
    assert back is not None and check_morphism(MachineMorphism(m2, m, back))
    assert isomorphic(m, m3) is not None
    other = random_dfa(rng, max_states=6)
    assert (isomorphic(m, other) is None) == (isomorphic(other, m) is None)


def test_materialize_lazy_machine():
    counter = LazyDetMachine(A1, 0, lambda q, a: (q + 1) % 3, lambda q: q == 0)
    m = materialize(counter)
    assert m.states == (0, 1, 2)
    assert [run(m, "a" * k) for k in range(4)] == [True, False, False, True]
    with pytest.raises(ValidationError):
        materialize(LazyDetMachine(A1, 0, lambda q, a: q + 1, bool), limit=10)
