"""Command-line front end.

Subcommands: build a recognizer from a group spec, check a word against a
serialized automaton, annotate a plain word with its canonical tagging,
enumerate accepted words, compose closure operations, and run the
brute-force group oracle.

Exit codes: 0 accept/identity/success, 1 reject/not-identity, 2 usage,
parse, or specification errors.  Build returns 1 on I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import closures, groups, serialize
from .machines import (
    DEFAULT_MAX_CONFIGS,
    ConfigurationSetOverflow,
    Fsa,
    Nvpa,
    Pda,
    Vpa,
    canonicalize,
    fsa_run,
    nvpa_run,
    vpa_run,
)
from .words import (
    Tag,
    TokenError,
    all_plain_words,
    all_tagged_words,
    format_word,
    parse_plain,
    parse_word,
)

ENUM_CAP_DEFAULT = 8


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _max_configs() -> int:
    value = os.environ.get("NESTWORD_MAX_CONFIGS")
    return int(value) if value else DEFAULT_MAX_CONFIGS


def _load_machine(path: str):
    with open(path, encoding="utf-8") as fh:
        return serialize.loads(fh.read())


def _load_group_spec(path: str):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return groups.group_spec_from_doc(doc)


def _machine_accepts(machine, tw) -> bool:
    if isinstance(machine, Fsa):
        if any(s.tag is not Tag.INTERNAL for s in tw):
            return False
        return fsa_run(machine, [s.base for s in tw])
    if isinstance(machine, Vpa):
        return vpa_run(machine, tw).accepted
    if isinstance(machine, Nvpa):
        return nvpa_run(machine, tw, max_configs=_max_configs())
    raise TypeError(f"cannot run words on a {type(machine).__name__}")


# ---------------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    try:
        spec = _load_group_spec(args.group)
    except OSError as exc:
        return _fail(f"cannot read group spec: {exc}", 1)
    except (ValueError, KeyError, TypeError) as exc:
        return _fail(f"invalid group spec: {exc}", 2)
    recognizer = groups.build_recognizer(spec)
    machine = recognizer.automaton
    try:
        serialize.save(machine, args.out)
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc}", 1)
    stack_size = len(machine.stack_alphabet) if hasattr(machine, "stack_alphabet") else 0
    print(f"rho contract: {recognizer.rho_contract}")
    print(f"states: {len(machine.states)}")
    print(f"stack symbols: {stack_size}")
    return 0


def cmd_check(args) -> int:
    try:
        machine = _load_machine(args.automaton)
    except (OSError, ValueError) as exc:
        return _fail(f"cannot load automaton: {exc}", 2)
    if isinstance(machine, Pda):
        return _fail("check runs FSA/VPA/NVPA automata, not PDAs", 2)
    try:
        word = parse_word(" ".join(args.tokens))
    except TokenError as exc:
        return _fail(str(exc), 2)
    if (
        isinstance(machine, (Vpa, Nvpa))
        and word
        and all(s.tag is Tag.INTERNAL for s in word)
        and not args.internal
    ):
        return _fail(
            "plain word given to a VPA; run `annotate` to tag it "
            "(or pass --internal to mean internal symbols)",
            2,
        )
    try:
        if args.trace and isinstance(machine, Vpa):
            result = vpa_run(machine, word, record_trace=True)
            for config in result.trace:
                stack = " ".join(str(s) for s in config.stack)
                rest = format_word(config.remaining)
                print(f"state={config.state!r} remaining={rest} stack=[{stack}]")
            if result.reason:
                print(f"note: {result.reason}")
            accepted = result.accepted
        elif args.trace and isinstance(machine, Fsa):
            for sym in word:
                if sym.base not in machine._alpha:
                    raise ValueError(f"symbol {sym.base!r} not in alphabet")
            state = machine.initial
            print(f"state={state!r} remaining={format_word(word)}")
            accepted = all(s.tag is Tag.INTERNAL for s in word)
            for pos, sym in enumerate(word):
                if not accepted:
                    break
                state = machine.delta.get((state, sym.base))
                if state is None:
                    print("note: no transition")
                    accepted = False
                    break
                print(f"state={state!r} remaining={format_word(word[pos + 1:])}")
            accepted = accepted and state in machine.accepts
        else:
            if args.trace:
                print("note: --trace is not available for nondeterministic machines")
            accepted = _machine_accepts(machine, word)
    except (ValueError, ConfigurationSetOverflow) as exc:
        return _fail(str(exc), 2)
    print("accept" if accepted else "reject")
    return 0 if accepted else 1


def cmd_annotate(args) -> int:
    try:
        spec = _load_group_spec(args.group)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return _fail(f"cannot load group spec: {exc}", 2)
    try:
        word = parse_plain(" ".join(args.tokens))
        tagged = groups.annotate_word(spec, word)
    except (TokenError, ValueError) as exc:
        return _fail(str(exc), 2)
    if tagged is None:
        print("not identity")
        return 1
    print(format_word(tagged))
    return 0


def cmd_enum(args) -> int:
    if args.max_len > args.cap:
        return _fail(f"--max-len {args.max_len} exceeds cap {args.cap}", 2)
    try:
        machine = _load_machine(args.automaton)
    except (OSError, ValueError) as exc:
        return _fail(f"cannot load automaton: {exc}", 2)
    try:
        if isinstance(machine, Fsa):
            letters = sorted(machine.alphabet, key=str)
            for word in all_plain_words(letters, args.max_len):
                if fsa_run(machine, word):
                    print(" ".join(word) if word else "ε")
        elif isinstance(machine, (Vpa, Nvpa)):
            for tw in all_tagged_words(machine.alphabet, args.max_len):
                if _machine_accepts(machine, tw):
                    print(format_word(tw))
        else:
            return _fail("enum runs FSA/VPA/NVPA automata, not PDAs", 2)
    except ConfigurationSetOverflow as exc:
        return _fail(str(exc), 2)
    return 0


_UNARY_OPS = {"complement", "star", "reverse", "prefix"}
_BINARY_OPS = {"union", "intersection", "concat", "shuffle", "relabel"}


def _closure_result(op: str, machines: list):
    if op in _BINARY_OPS and len(machines) != 2:
        raise ValueError(f"{op} takes two inputs")
    if op in _UNARY_OPS and len(machines) != 1:
        raise ValueError(f"{op} takes one input")
    kinds = tuple(type(m) for m in machines)
    if op == "shuffle":
        if kinds != (Vpa, Fsa):
            raise ValueError("shuffle takes a VPA and an FSA, in that order")
        return canonicalize(closures.shuffle(machines[0], machines[1]))
    if op == "relabel":
        if kinds != (Vpa, Fsa):
            raise ValueError("relabel takes a VPA and a pair FSA, in that order")
        phi = closures.Relabeling(machines[1])
        return canonicalize(closures.relabel_image(machines[0], phi))
    if all(k is Fsa for k in kinds):
        table = {
            "union": closures.reg_union,
            "intersection": closures.reg_intersection,
            "complement": closures.reg_complement,
            "concat": closures.reg_concat,
            "star": closures.reg_star,
            "reverse": closures.reg_reverse,
            "prefix": closures.reg_prefix,
        }
        return table[op](*machines)
    if all(k is Vpa for k in kinds):
        table = {
            "union": closures.vpl_union,
            "intersection": closures.vpl_intersection,
            "complement": closures.vpl_complement,
            "concat": closures.vpl_concat,
            "star": closures.vpl_star,
            "reverse": closures.vpl_reverse,
        }
        if op not in table:
            raise ValueError(f"{op} on a VPA needs --word (membership query)")
        return table[op](*machines)
    raise ValueError(f"{op} does not apply to {[k.__name__ for k in kinds]}")


def cmd_closure(args) -> int:
    try:
        machines = [_load_machine(path) for path in args.inputs]
    except (OSError, ValueError) as exc:
        return _fail(f"cannot load input: {exc}", 2)
    if args.op == "prefix" and isinstance(machines[0], Vpa) and args.word is not None:
        try:
            tw = parse_word(args.word)
        except TokenError as exc:
            return _fail(str(exc), 2)
        member = closures.vpl_prefix_member(machines[0], tw)
        print("accept" if member else "reject")
        return 0 if member else 1
    try:
        result = _closure_result(args.op, machines)
    except (ValueError, TypeError) as exc:
        return _fail(str(exc), 2)
    deterministic = isinstance(result, (Fsa, Vpa))
    text = serialize.dumps(result)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            return _fail(f"cannot write {args.out}: {exc}", 1)
        print(f"deterministic: {'yes' if deterministic else 'no'}")
    else:
        sys.stdout.write(text)
        print(f"deterministic: {'yes' if deterministic else 'no'}", file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    try:
        spec = _load_group_spec(args.group)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return _fail(f"cannot load group spec: {exc}", 2)
    try:
        word = parse_plain(" ".join(args.tokens))
        trivial = groups.is_identity(spec, word)
    except (TokenError, ValueError) as exc:
        return _fail(str(exc), 2)
    print("identity" if trivial else "not identity")
    return 0 if trivial else 1


# ---------------------------------------------------------------------------
# parser wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nestword",
        description="nested words, visibly pushdown automata, and group word problems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="compile a group spec into a recognizer")
    p.add_argument("--group", required=True, help="group spec JSON file")
    p.add_argument("--out", required=True, help="output automaton JSON file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="run a word against a serialized automaton")
    p.add_argument("--automaton", required=True)
    p.add_argument("--trace", action="store_true", help="print the configuration sequence")
    p.add_argument(
        "--internal",
        action="store_true",
        help="treat an untagged word as internal symbols instead of erroring",
    )
    p.add_argument("tokens", nargs="*", help="word tokens (<a call, a> return, a internal)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("annotate", help="canonically tag a plain word")
    p.add_argument("--group", required=True)
    p.add_argument("tokens", nargs="*")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("enum", help="list accepted words up to a length")
    p.add_argument("--automaton", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--cap", type=int, default=ENUM_CAP_DEFAULT)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("closure", help="apply a closure operation to automata")
    p.add_argument(
        "--op",
        required=True,
        choices=sorted(_UNARY_OPS | _BINARY_OPS),
    )
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--out")
    p.add_argument("--word", help="membership query for `prefix` on a VPA")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("oracle", help="brute-force identity check (no automata)")
    p.add_argument("--group", required=True)
    p.add_argument("tokens", nargs="*")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
