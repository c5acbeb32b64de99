import pytest
from hypothesis import HealthCheck, settings

from fsmkit import Alphabet, build_dfa
from fsmkit.kleisli import Pair, SubseqTransducer

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

A1 = Alphabet(("a",))
AB = Alphabet(("a", "b"))
XYZ = Alphabet(("x", "y", "z"))


@pytest.fixture
def parity():
    """Accepts words of odd length over {a}."""
    return build_dfa(A1, "q0", {"q0": {"a": "q1"}, "q1": {"a": "q0"}}, {"q1"})


@pytest.fixture
def constant_true():
    return build_dfa(A1, "s", {"s": {"a": "s"}}, {"s"})


@pytest.fixture
def ends_with_a_redundant():
    """'ends with a' over {a, b}, written with two copies of each residual."""
    return build_dfa(
        AB,
        "s0",
        {
            "s0": {"a": "s1", "b": "s2"},
            "s1": {"a": "s3", "b": "s0"},
            "s2": {"a": "s3", "b": "s0"},
            "s3": {"a": "s1", "b": "s2"},
        },
        {"s1", "s3"},
    )


@pytest.fixture
def chain_transducer():
    """q0 --a/x--> q1, termination only at q1 with output y."""
    return SubseqTransducer(
        Alphabet(("a",)), XYZ, ("q0", "q1"), Pair((), "q0"), {"q1": ("y",)},
        {("q0", "a"): Pair(("x",), "q1")},
    )


@pytest.fixture
def z_loop():
    """One state, every edge and the termination output z."""
    return SubseqTransducer(
        Alphabet(("a",)), XYZ, ("q",), Pair((), "q"), {"q": ("z",)}, {("q", "a"): Pair(("z",), "q")}
    )


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
