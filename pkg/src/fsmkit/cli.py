"""Command-line front end.

Exit codes: 0 success (or "equivalent"), 1 "not equivalent", 2 usage, parse
or validation errors.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import dfa as dfa_mod
from . import kleisli, nfa as nfa_mod, oracle
from .core import DetMachine, ValidationError, run
from .kleisli import SubseqTransducer
from .nfa import Nfa
from .textformat import dump, format_word, kind_of, parse, parse_word


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _emit(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _as_nfa(m) -> Nfa:
    if isinstance(m, Nfa):
        return m
    if isinstance(m, DetMachine):
        return nfa_mod.embed(m)
    raise ValidationError("expected a dfa or nfa file")


def _as_dfa(m) -> DetMachine:
    return m if isinstance(m, DetMachine) else nfa_mod.determinize(_as_nfa(m))


def cmd_minimize(args):
    m = _load(args.file)
    if isinstance(m, SubseqTransducer):
        result = kleisli.choffrut_minimize(m)
    elif isinstance(m, Nfa):
        result = nfa_mod.brzozowski(m)
    else:
        result = dfa_mod.minimize(m)
    _emit(dump(result), args.output)
    return 0


def cmd_determinize(args):
    _emit(dump(nfa_mod.determinize(_as_nfa(_load(args.file)))), args.output)
    return 0


def cmd_codeterminize(args):
    _emit(dump(nfa_mod.codeterminize(_as_nfa(_load(args.file)))), args.output)
    return 0


def cmd_brzozowski(args):
    _emit(dump(nfa_mod.brzozowski(_as_nfa(_load(args.file)))), args.output)
    return 0


def cmd_run(args):
    m = _load(args.file)
    if isinstance(m, SubseqTransducer):
        w = parse_word(args.word, m.input_alphabet)
        out = kleisli.transduce(m, w)
        result = "undefined" if out is None else format_word(out, m.output_alphabet)
    else:
        A = m.alphabet
        w = parse_word(args.word, A)
        accepted = run(m, w) if isinstance(m, DetMachine) else nfa_mod.nfa_accepts(m, w)
        result = "accepted" if accepted else "rejected"
    _emit(result + "\n", args.output)
    return 0


def cmd_equiv(args):
    m1, m2 = _load(args.first), _load(args.second)
    transducers = isinstance(m1, SubseqTransducer), isinstance(m2, SubseqTransducer)
    if any(transducers):
        if not all(transducers):
            raise ValidationError("cannot compare a transducer with an automaton")
        witness = kleisli.transducer_witness(m1, m2)
        alpha = m1.input_alphabet
    else:
        witness = dfa_mod.equiv_witness(_as_dfa(m1), _as_dfa(m2))
        alpha = m1.alphabet
    if witness is None:
        _emit("equivalent\n", args.output)
        return 0
    _emit(f"not equivalent\nwitness: {format_word(witness, alpha)}\n", args.output)
    return 1


def cmd_info(args):
    m = _load(args.file)
    kind = kind_of(m)
    lines = [f"kind: {kind}", f"states: {len(m.states)}"]
    if kind == "dfa":
        minimal = dfa_mod.minimize(m)
        lines.append(f"reachable: {_yes(dfa_mod.is_reachable(m))}")
        lines.append(f"observable: {_yes(dfa_mod.is_observable(m))}")
        lines.append(f"minimal states: {len(minimal.states)}")
        check = (m, minimal)
    elif kind == "nfa":
        minimal = nfa_mod.brzozowski(m)
        lines.append(f"deterministic: {_yes(nfa_mod.is_deterministic(m))}")
        lines.append(f"backward deterministic: {_yes(nfa_mod.is_backward_deterministic(m))}")
        lines.append(f"minimal dfa states: {len(minimal.states)}")
        check = (m, minimal)
    else:
        minimal = kleisli.choffrut_minimize(m)
        trimmed = kleisli.is_trim(m)
        lines.append(f"trim: {_yes(trimmed)}")
        lines.append(f"onward: {_yes(trimmed and kleisli.is_onward(m))}")
        lines.append(f"observable: {_yes(trimmed and len(minimal.states) == len(m.states))}")
        lines.append(f"minimal states: {len(minimal.states)}")
        check = (m, minimal)
    if args.oracle_bound is not None:
        left = oracle.enumerate_language(check[0], args.oracle_bound).entries
        right = oracle.enumerate_language(check[1], args.oracle_bound).entries
        verdict = "agree" if left == right else "DISAGREE"
        lines.append(f"oracle (words up to length {args.oracle_bound}): {verdict}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fsmkit", description="Finite-state machine toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help, files=("file",)):
        p = sub.add_parser(name, help=help)
        for f in files:
            p.add_argument(f)
        p.add_argument("-o", "--output", help="write result here instead of stdout")
        p.set_defaults(func=func)
        return p

    command("minimize", cmd_minimize, "minimize (dfa: Moore, nfa: Brzozowski, subseq: Choffrut)")
    command("determinize", cmd_determinize, "subset construction")
    command("codeterminize", cmd_codeterminize, "backward-deterministic equivalent nfa")
    command("brzozowski", cmd_brzozowski, "minimal dfa by double reversal")
    p = command("run", cmd_run, "run a machine on a word (_ for the empty word)")
    p.add_argument("word")
    command("equiv", cmd_equiv, "decide equivalence, print a witness otherwise", ("first", "second"))
    p = command("info", cmd_info, "summary of a machine")
    p.add_argument("--oracle-bound", type=int, default=None,
                   help="cross-check the minimized machine on all words up to this length")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
