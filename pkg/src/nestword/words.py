"""Nested words and their tagged-word encoding.

A nested word is a plain word together with a matching relation pairing
call positions to return positions without crossings.  Equivalently it is
a word over a tagged alphabet where every letter is marked as a call,
a return, or an internal symbol.  The canonical in-memory form here is the
tagged word (a tuple of ``TaggedSymbol``); matching relations are derived
on demand by ``decode``.

Positions are 1-based.  Pending edges use ``NEG_INF`` / ``POS_INF`` as
endpoints.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

NEG_INF = -math.inf
POS_INF = math.inf


class Tag(enum.IntEnum):
    # Numeric order matches the token-text order "<a" < "a" < "a>".
    CALL = 0
    INTERNAL = 1
    RETURN = 2


class TaggedSymbol(NamedTuple):
    base: str
    tag: Tag


# A tagged word is just a tuple of symbols; plain words are tuples of letters.
TaggedWord = tuple  # tuple[TaggedSymbol, ...]
PlainWord = tuple  # tuple[str, ...]

EMPTY_WORD_TOKEN = "ε"


class TokenError(ValueError):
    """Raised when word text cannot be parsed."""


class MatchingIndexError(ValueError):
    """Raised when a matching edge uses a finite index outside 1..n."""


def check_letter(name: str) -> str:
    if not isinstance(name, str) or not name or name != name.strip():
        raise TokenError(f"bad letter name: {name!r}")
    if any(c in name for c in "<>") or any(c.isspace() for c in name):
        raise TokenError(f"bad letter name: {name!r}")
    if name == EMPTY_WORD_TOKEN:
        raise TokenError(f"letter name {name!r} is reserved for the empty word")
    return name


def check_alphabet(symbols: Iterable[str]) -> tuple[str, ...]:
    """Validate an ordered alphabet: non-empty, unique, legal names."""
    names = tuple(symbols)
    if not names:
        raise ValueError("alphabet must be non-empty")
    for name in names:
        check_letter(name)
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate letters in alphabet: {names}")
    return names


# ---------------------------------------------------------------------------
# token syntax: `<a` call, `a>` return, `a` internal


def parse_token(token: str) -> TaggedSymbol:
    if token.startswith("<"):
        return TaggedSymbol(check_letter(token[1:]), Tag.CALL)
    if token.endswith(">"):
        return TaggedSymbol(check_letter(token[:-1]), Tag.RETURN)
    return TaggedSymbol(check_letter(token), Tag.INTERNAL)


def token_str(sym: TaggedSymbol) -> str:
    if sym.tag is Tag.CALL:
        return "<" + sym.base
    if sym.tag is Tag.RETURN:
        return sym.base + ">"
    return sym.base


def parse_word(text: str) -> TaggedWord:
    """Parse whitespace-separated tokens; 'ε' or empty text is the empty word."""
    tokens = text.split()
    if tokens == [EMPTY_WORD_TOKEN]:
        return ()
    return tuple(parse_token(t) for t in tokens)


def format_word(tw: TaggedWord) -> str:
    if not tw:
        return EMPTY_WORD_TOKEN
    return " ".join(token_str(s) for s in tw)


def parse_plain(text: str) -> PlainWord:
    """Parse a plain (untagged) word; tagged tokens are rejected."""
    word = parse_word(text)
    if any(s.tag is not Tag.INTERNAL for s in word):
        raise TokenError(f"expected a plain word, got tagged tokens: {text!r}")
    return tuple(s.base for s in word)


# ---------------------------------------------------------------------------
# matching relations


@dataclass(frozen=True)
class MatchingRelation:
    """A set of call/return edges over word positions 1..length.

    Edge sources are positions or NEG_INF (pending return); destinations
    are positions or POS_INF (pending call).  An edge with both endpoints
    infinite is not a matching edge and is rejected.
    """

    length: int
    edges: frozenset

    def __init__(self, length: int, edges: Iterable[tuple]):
        object.__setattr__(self, "length", int(length))
        object.__setattr__(self, "edges", frozenset((i, j) for i, j in edges))


@dataclass(frozen=True)
class MatchingViolation:
    condition: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.condition} violated by {self.witness}"


def _check_endpoint(value, n: int, lo_pending, hi_pending) -> None:
    if value == lo_pending or value == hi_pending:
        return
    if not isinstance(value, int) or not 1 <= value <= n:
        raise MatchingIndexError(f"edge endpoint {value!r} outside 1..{n}")


def validate_matching(word: PlainWord, matching: MatchingRelation) -> MatchingViolation | None:
    """Check the three nested-word conditions; None means valid.

    Pending endpoints are ordered as NEG_INF < k < POS_INF.  The crossing
    check between edges (i1,j1), (i2,j2) with i1 < i2 is `i2 <= j1 < j2`;
    the strict second comparison lets several pending calls (or several
    pending returns) coexist.
    """
    n = len(word)
    if matching.length != n:
        raise MatchingIndexError(f"matching length {matching.length} != word length {n}")
    edges = sorted(matching.edges)
    for i, j in edges:
        if i == NEG_INF and j == POS_INF:
            raise MatchingIndexError("edge (-inf, +inf) has no word position")
        _check_endpoint(i, n, NEG_INF, None)
        _check_endpoint(j, n, None, POS_INF)
        if not i < j:
            return MatchingViolation("forward", ((i, j),))
    sources: dict = {}
    dests: dict = {}
    for i, j in edges:
        if i != NEG_INF:
            if i in sources:
                return MatchingViolation("uniqueness", (sources[i], (i, j)))
            sources[i] = (i, j)
        if j != POS_INF:
            if j in dests:
                return MatchingViolation("uniqueness", (dests[j], (i, j)))
            dests[j] = (i, j)
    for (i1, j1), (i2, j2) in itertools.combinations(edges, 2):
        if i1 == i2:
            continue
        if i2 < i1:
            (i1, j1), (i2, j2) = (i2, j2), (i1, j1)
        if i2 <= j1 < j2:
            return MatchingViolation("nesting", ((i1, j1), (i2, j2)))
    return None


@dataclass(frozen=True)
class NestedWord:
    word: PlainWord
    matching: MatchingRelation

    def __init__(self, word: Iterable[str], matching: MatchingRelation):
        object.__setattr__(self, "word", tuple(word))
        object.__setattr__(self, "matching", matching)
        violation = validate_matching(self.word, matching)
        if violation is not None:
            raise ValueError(str(violation))

    def __len__(self) -> int:
        return len(self.word)


# ---------------------------------------------------------------------------
# the encoding between nested words and tagged words


def encode(nw: NestedWord) -> TaggedWord:
    """Tag each position: edge sources become calls, destinations returns."""
    tags = [Tag.INTERNAL] * len(nw.word)
    for i, j in nw.matching.edges:
        if i != NEG_INF:
            tags[i - 1] = Tag.CALL
        if j != POS_INF:
            tags[j - 1] = Tag.RETURN
    return tuple(TaggedSymbol(b, t) for b, t in zip(nw.word, tags))


def decode(tw: TaggedWord) -> NestedWord:
    """Pair calls and returns by stack discipline; unmatched ones pend."""
    edges = []
    open_calls: list[int] = []
    for pos, sym in enumerate(tw, start=1):
        if sym.tag is Tag.CALL:
            open_calls.append(pos)
        elif sym.tag is Tag.RETURN:
            if open_calls:
                edges.append((open_calls.pop(), pos))
            else:
                edges.append((NEG_INF, pos))
    edges.extend((i, POS_INF) for i in open_calls)
    word = tuple(sym.base for sym in tw)
    return NestedWord(word, MatchingRelation(len(word), edges))


def forget(tw: TaggedWord) -> PlainWord:
    """Strip all tags, keeping base letters in order."""
    return tuple(sym.base for sym in tw)


_REVERSED_TAG = {Tag.CALL: Tag.RETURN, Tag.RETURN: Tag.CALL, Tag.INTERNAL: Tag.INTERNAL}


def reverse(tw: TaggedWord) -> TaggedWord:
    """Reverse the symbol order, swapping call and return tags."""
    return tuple(TaggedSymbol(s.base, _REVERSED_TAG[s.tag]) for s in reversed(tw))


def prefix(tw: TaggedWord, i: int) -> TaggedWord:
    """First min(i, len) symbols, tags intact."""
    if i < 0:
        raise ValueError(f"prefix length must be >= 0, got {i}")
    return tw[:i]


def concat(tw1: TaggedWord, tw2: TaggedWord) -> TaggedWord:
    return tuple(tw1) + tuple(tw2)


# ---------------------------------------------------------------------------
# enumeration helpers


def all_plain_words(alphabet: Iterable[str], max_len: int) -> Iterator[PlainWord]:
    """All plain words of length <= max_len in length-lexicographic order."""
    letters = tuple(alphabet)
    for n in range(max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            yield combo


def all_tagged_words(alphabet: Iterable[str], max_len: int) -> Iterator[TaggedWord]:
    """All tagged words of length <= max_len, ordered by length then token text."""
    symbols = sorted(
        (TaggedSymbol(b, t) for b in alphabet for t in Tag),
        key=token_str,
    )
    for n in range(max_len + 1):
        for combo in itertools.product(symbols, repeat=n):
            yield combo
