"""Finite-state toolkit: one reach/observe minimization scheme for DFAs, NFAs
(via determinization and Brzozowski's algorithm) and subsequential transducers
(Choffrut minimization)."""
from .core import (
    Alphabet,
    DetMachine,
    InvariantError,
    LazyDetMachine,
    MachineMorphism,
    ValidationError,
    alphabet,
    check_morphism,
    build_dfa,
    isomorphic,
    materialize,
    run,
    word,
)
from .dfa import equiv, equiv_witness, min_divides, minimize, obs, reach, residual
from .kleisli import (
    KleisliMorphism,
    Pair,
    SubseqTransducer,
    choffrut_minimize,
    factorize,
    kleisli_compose,
    normalize,
    transduce,
    transducer_equiv,
    trim,
)
from .nfa import Nfa, brzozowski, codeterminize, determinize, embed, nfa_accepts, transpose

__version__ = "0.1.0"
