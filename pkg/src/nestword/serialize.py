"""JSON serialization for machines.

One document per machine: a `kind` field selects the schema, list-valued
fields are emitted in a sorted canonical order, and transition rows are

    fsa   [src, symbol, dst]
    pda   [src, symbol-or-null, stack symbol, dst, [push...]]
    vpa   [src, "<a", dst, push]  /  [src, "a", dst]  /  [src, "a>", stack symbol, dst]
    nvpa  as vpa, one row per nondeterministic choice

The VPA bottom symbol is serialized under "bottom" and may appear as the
stack symbol of return rows.  Tuple-shaped labels (pair-FSA symbols) become
JSON arrays; printing is deterministic, so parse-then-print is the identity
on printed documents.
"""

from __future__ import annotations

import json
from typing import Any

from .machines import Fsa, Nvpa, Pda, Vpa
from .words import Tag, parse_token, token_str, TaggedSymbol


class SerializationError(ValueError):
    pass


def _jsonable(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    raise SerializationError(
        f"label {value!r} is not JSON-serializable; canonicalize() the machine first"
    )


def _unjsonable(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(_unjsonable(v) for v in value)
    return value


def _sorted_json(values) -> list:
    return sorted((_jsonable(v) for v in values), key=lambda v: json.dumps(v))


def to_doc(m) -> dict:
    if isinstance(m, Fsa):
        return {
            "kind": "fsa",
            "alphabet": [_jsonable(a) for a in m.alphabet],
            "states": _sorted_json(m.states),
            "initial": _jsonable(m.initial),
            "accepts": _sorted_json(m.accepts),
            "transitions": sorted(
                ([_jsonable(q), _jsonable(sym), _jsonable(dst)] for (q, sym), dst in m.delta.items()),
                key=json.dumps,
            ),
        }
    if isinstance(m, Pda):
        return {
            "kind": "pda",
            "alphabet": list(m.alphabet),
            "states": _sorted_json(m.states),
            "stack_alphabet": _sorted_json(m.stack_alphabet),
            "initial": _jsonable(m.initial),
            "bottom": _jsonable(m.bottom),
            "accepts": _sorted_json(m.accepts),
            "transitions": sorted(
                (
                    [_jsonable(q), sym, _jsonable(g), _jsonable(dst), [_jsonable(p) for p in push]]
                    for (q, sym, g), (dst, push) in m.delta.items()
                ),
                key=json.dumps,
            ),
        }
    if isinstance(m, Vpa):
        rows = []
        for (q, base), (dst, g) in m.delta_c.items():
            rows.append([_jsonable(q), token_str(TaggedSymbol(base, Tag.CALL)), _jsonable(dst), _jsonable(g)])
        for (q, base), dst in m.delta_i.items():
            rows.append([_jsonable(q), base, _jsonable(dst)])
        for (q, base, g), dst in m.delta_r.items():
            rows.append([_jsonable(q), token_str(TaggedSymbol(base, Tag.RETURN)), _jsonable(g), _jsonable(dst)])
        return {
            "kind": "vpa",
            "alphabet": list(m.alphabet),
            "states": _sorted_json(m.states),
            "stack_alphabet": _sorted_json(m.stack_alphabet),
            "bottom": _jsonable(m.bottom),
            "initial": _jsonable(m.initial),
            "accepts": _sorted_json(m.accepts),
            "accept_stack": _sorted_json(m.accept_stack),
            "transitions": sorted(rows, key=json.dumps),
        }
    if isinstance(m, Nvpa):
        rows = []
        for (q, base), moves in m.delta_c.items():
            for dst, g in moves:
                rows.append([_jsonable(q), token_str(TaggedSymbol(base, Tag.CALL)), _jsonable(dst), _jsonable(g)])
        for (q, base), dsts in m.delta_i.items():
            for dst in dsts:
                rows.append([_jsonable(q), base, _jsonable(dst)])
        for (q, base, g), dsts in m.delta_r.items():
            for dst in dsts:
                rows.append([_jsonable(q), token_str(TaggedSymbol(base, Tag.RETURN)), _jsonable(g), _jsonable(dst)])
        return {
            "kind": "nvpa",
            "alphabet": list(m.alphabet),
            "states": _sorted_json(m.states),
            "stack_alphabet": _sorted_json(m.stack_alphabet),
            "bottom": _jsonable(m.bottom),
            "initials": _sorted_json(m.initials),
            "accepts": _sorted_json(m.accepts),
            "accept_stack": _sorted_json(m.accept_stack),
            "transitions": sorted(rows, key=json.dumps),
        }
    raise SerializationError(f"cannot serialize {type(m).__name__}")


def from_doc(doc: dict):
    try:
        kind = doc["kind"]
    except (TypeError, KeyError):
        raise SerializationError("document has no 'kind' field")
    if kind == "fsa":
        return Fsa(
            alphabet=tuple(_unjsonable(a) for a in doc["alphabet"]),
            states=frozenset(_unjsonable(s) for s in doc["states"]),
            initial=_unjsonable(doc["initial"]),
            accepts=frozenset(_unjsonable(s) for s in doc["accepts"]),
            delta={
                (_unjsonable(q), _unjsonable(sym)): _unjsonable(dst)
                for q, sym, dst in doc["transitions"]
            },
        )
    if kind == "pda":
        return Pda(
            alphabet=tuple(doc["alphabet"]),
            states=frozenset(_unjsonable(s) for s in doc["states"]),
            stack_alphabet=frozenset(_unjsonable(s) for s in doc["stack_alphabet"]),
            initial=_unjsonable(doc["initial"]),
            bottom=_unjsonable(doc["bottom"]),
            accepts=frozenset(_unjsonable(s) for s in doc["accepts"]),
            delta={
                (_unjsonable(q), sym, _unjsonable(g)): (_unjsonable(dst), tuple(_unjsonable(p) for p in push))
                for q, sym, g, dst, push in doc["transitions"]
            },
        )
    if kind in ("vpa", "nvpa"):
        delta_c: dict = {}
        delta_i: dict = {}
        delta_r: dict = {}
        for row in doc["transitions"]:
            src = _unjsonable(row[0])
            sym = parse_token(row[1])
            if sym.tag is Tag.CALL:
                _, _, dst, g = row
                delta_c.setdefault((src, sym.base), set()).add((_unjsonable(dst), _unjsonable(g)))
            elif sym.tag is Tag.INTERNAL:
                _, _, dst = row
                delta_i.setdefault((src, sym.base), set()).add(_unjsonable(dst))
            else:
                _, _, g, dst = row
                delta_r.setdefault((src, sym.base, _unjsonable(g)), set()).add(_unjsonable(dst))
        common = dict(
            alphabet=tuple(doc["alphabet"]),
            states=frozenset(_unjsonable(s) for s in doc["states"]),
            stack_alphabet=frozenset(_unjsonable(s) for s in doc["stack_alphabet"]),
            bottom=_unjsonable(doc["bottom"]),
            accepts=frozenset(_unjsonable(s) for s in doc["accepts"]),
            accept_stack=frozenset(_unjsonable(s) for s in doc["accept_stack"]),
        )
        if kind == "nvpa":
            return Nvpa(
                initials=frozenset(_unjsonable(s) for s in doc["initials"]),
                delta_c=delta_c,
                delta_i=delta_i,
                delta_r=delta_r,
                **common,
            )
        for table in (delta_c, delta_i, delta_r):
            for key, targets in table.items():
                if len(targets) > 1:
                    raise SerializationError(f"vpa document is nondeterministic at {key!r}")
        return Vpa(
            initial=_unjsonable(doc["initial"]),
            delta_c={k: next(iter(v)) for k, v in delta_c.items()},
            delta_i={k: next(iter(v)) for k, v in delta_i.items()},
            delta_r={k: next(iter(v)) for k, v in delta_r.items()},
            **common,
        )
    raise SerializationError(f"unknown machine kind {kind!r}")


def dumps(m) -> str:
    return json.dumps(to_doc(m), indent=2, sort_keys=True) + "\n"


def loads(text: str):
    return from_doc(json.loads(text))


def save(m, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(m))


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
