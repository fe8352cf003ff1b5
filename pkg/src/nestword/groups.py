"""Group word problems and their nested-word recognizers.

Four group families are supported: free groups F_n, finite groups given by
a multiplication table, direct products F_n x G, and semidirect products
F_n x| S_m where the symmetric group permutes the first m free generators.

Each family has a brute-force identity evaluator (never touching automata)
and a recognizer builder.  Builder languages hit every trivial word in
exactly one tagging: the canonical matching traced by stack cancellation.

Conventions: free generators are named x1..xn with apostrophes for
inverses (x1'); permutation names are 'p' followed by one-line notation
digits (p21 is the transposition of S_2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .closures import NonDisjointAlphabets, Relabeling, relabel_image, shuffle
from .machines import Fsa, Nvpa, Vpa, fsa_run, nvpa_run, vpa_run
from .words import (
    MatchingRelation,
    NestedWord,
    Tag,
    TaggedSymbol,
    TaggedWord,
    check_letter,
    encode,
)


class InvalidTable(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


FREE_VPA_BLANK = "-"
FREE_VPA_BOTTOM = "$"


# ---------------------------------------------------------------------------
# alphabets and free reduction


def free_letters(n: int) -> tuple:
    """Generators and inverses, involution-adjacent: x1, x1', x2, x2', ..."""
    if n < 1:
        raise ValueError("need at least one generator")
    out = []
    for i in range(1, n + 1):
        out.append(f"x{i}")
        out.append(f"x{i}'")
    return tuple(out)


def invert_letter(a: str) -> str:
    return a[:-1] if a.endswith("'") else a + "'"


@dataclass(frozen=True)
class GroupAlphabet:
    """Generators plus inverses under the apostrophe involution."""

    generators: tuple
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "letters", tuple(self.letters))
        expected = []
        for x in self.generators:
            expected.extend((x, invert_letter(x)))
        if tuple(expected) != self.letters:
            raise ValueError("letters must pair each generator with its inverse")
        for a in self.letters:
            if invert_letter(invert_letter(a)) != a or invert_letter(a) == a:
                raise ValueError(f"involution broken at {a!r}")

    @classmethod
    def free(cls, n: int) -> "GroupAlphabet":
        letters = free_letters(n)
        return cls(tuple(letters[::2]), letters)

    def inverse(self, a: str) -> str:
        return invert_letter(a)


def free_reduce(word) -> tuple:
    """Cancel adjacent inverse pairs until none remain (one stack pass)."""
    stack: list = []
    for c in word:
        if stack and stack[-1] == invert_letter(c):
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


def _cancellation_edges(positions) -> list | None:
    """Stack pass over (position, letter) pairs; None when non-trivial."""
    stack: list = []
    edges = []
    for pos, c in positions:
        if stack and stack[-1][1] == invert_letter(c):
            i, _ = stack.pop()
            edges.append((i, pos))
        else:
            stack.append((pos, c))
    return edges if not stack else None


def canonical_matching(word) -> MatchingRelation | None:
    """The matching traced by stack cancellation; None if w is not trivial.

    Position j cancels the position i on top of the reduction stack, giving
    the edge (i, j) -- the pairing that follows the word's path through the
    Cayley graph rather than any other valid cancellation pattern.
    """
    edges = _cancellation_edges(enumerate(word, start=1))
    if edges is None:
        return None
    return MatchingRelation(len(tuple(word)), edges)


# ---------------------------------------------------------------------------
# finite groups


@dataclass
class FiniteGroupSpec:
    """A finite group as an explicit multiplication table.

    `table` maps element pairs to elements; associativity, the identity
    law, and inverse existence are all checked at construction.
    """

    elements: tuple
    identity: str
    table: dict  # (a, b) -> a*b

    def __post_init__(self):
        self.elements = tuple(self.elements)
        self.table = dict(self.table)
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise InvalidTable("duplicate element names")
        for e in self.elements:
            check_letter(e)
        if self.identity not in elems:
            raise InvalidTable(f"identity {self.identity!r} not an element")
        for a in self.elements:
            for b in self.elements:
                if self.table.get((a, b)) not in elems:
                    raise InvalidTable(f"table missing or escaping at ({a!r},{b!r})")
        for a in self.elements:
            if self.table[(self.identity, a)] != a or self.table[(a, self.identity)] != a:
                raise InvalidTable(f"identity law fails at {a!r}")
        for a in self.elements:
            if not any(self.table[(a, b)] == self.identity for b in self.elements):
                raise InvalidTable(f"no inverse for {a!r}")
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.table[(self.table[(a, b)], c)] != self.table[(a, self.table[(b, c)])]:
                        raise InvalidTable(f"associativity fails at ({a!r},{b!r},{c!r})")

    @classmethod
    def from_rows(cls, elements, identity, rows) -> "FiniteGroupSpec":
        """Build from a row-major table: rows[i][j] = elements[i] * elements[j]."""
        elements = tuple(elements)
        if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
            raise InvalidTable("table shape does not match the element list")
        table = {
            (a, b): rows[i][j]
            for i, a in enumerate(elements)
            for j, b in enumerate(elements)
        }
        return cls(elements, identity, table)

    def product(self, word) -> str:
        acc = self.identity
        for c in word:
            acc = self.table[(acc, c)]
        return acc


def cyclic_group(k: int) -> FiniteGroupSpec:
    """Z_k with elements e, t, t2, ..., t{k-1}."""
    if k < 1:
        raise ValueError("order must be >= 1")
    names = ["e"] + ["t" if i == 1 else f"t{i}" for i in range(1, k)]
    table = {
        (names[i], names[j]): names[(i + j) % k]
        for i in range(k)
        for j in range(k)
    }
    return FiniteGroupSpec(tuple(names), "e", table)


# permutations in one-line notation: sigma maps i to sigma[i-1]


def perm_compose(s: tuple, t: tuple) -> tuple:
    """(s . t)(i) = s(t(i)): apply t first."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def perm_inverse(s: tuple) -> tuple:
    out = [0] * len(s)
    for i, v in enumerate(s, start=1):
        out[v - 1] = i
    return tuple(out)


def perm_name(s: tuple) -> str:
    return "p" + "".join(str(v) for v in s)


def symmetric_group(m: int) -> FiniteGroupSpec:
    """S_m with elements named by one-line notation (p12, p21, ...)."""
    if m < 1:
        raise ValueError("need m >= 1")
    perms = sorted(itertools.permutations(range(1, m + 1)))
    names = {s: perm_name(s) for s in perms}
    table = {
        (names[s], names[t]): names[perm_compose(s, t)]
        for s in perms
        for t in perms
    }
    return FiniteGroupSpec(
        tuple(names[s] for s in perms), perm_name(tuple(range(1, m + 1))), table
    )


def perm_by_name(m: int) -> dict:
    return {perm_name(s): s for s in itertools.permutations(range(1, m + 1))}


def psi_action(sigma: tuple, a: str) -> str:
    """Permute generator indices: x_i -> x_{sigma(i)} for i <= m, fixed above."""
    inverse_mark = a.endswith("'")
    core = a[:-1] if inverse_mark else a
    if not core.startswith("x"):
        raise ValueError(f"not a free-group letter: {a!r}")
    i = int(core[1:])
    if i <= len(sigma):
        i = sigma[i - 1]
    return f"x{i}'" if inverse_mark else f"x{i}"


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class FreeGroupSpec:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("free group needs n >= 1")


@dataclass(frozen=True)
class DirectProductSpec:
    n: int
    finite: FiniteGroupSpec

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("free factor needs n >= 1")
        overlap = set(free_letters(self.n)) & set(self.finite.elements)
        if overlap:
            raise NonDisjointAlphabets(f"element names collide with generators: {overlap}")


@dataclass(frozen=True)
class SemidirectProductSpec:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("need n >= 1 and m >= 1")
        if self.m > self.n:
            raise ValueError(f"permutation degree {self.m} exceeds generator count {self.n}")


GroupSpec = FreeGroupSpec | FiniteGroupSpec | DirectProductSpec | SemidirectProductSpec


def group_spec_from_doc(doc: dict) -> GroupSpec:
    """Parse the JSON group-spec format (kind: free|finite|direct|semidirect)."""
    kind = doc.get("kind")
    if kind == "free":
        return FreeGroupSpec(int(doc["n"]))
    if kind == "finite":
        return FiniteGroupSpec.from_rows(doc["elements"], doc["identity"], doc["table"])
    if kind == "direct":
        return DirectProductSpec(
            int(doc["n"]),
            FiniteGroupSpec.from_rows(doc["elements"], doc["identity"], doc["table"]),
        )
    if kind == "semidirect":
        return SemidirectProductSpec(int(doc["n"]), int(doc["m"]))
    raise ValueError(f"unknown group kind {kind!r}")


def group_letters(spec: GroupSpec) -> tuple:
    if isinstance(spec, FreeGroupSpec):
        return free_letters(spec.n)
    if isinstance(spec, FiniteGroupSpec):
        return tuple(spec.elements)
    if isinstance(spec, DirectProductSpec):
        return free_letters(spec.n) + tuple(spec.finite.elements)
    return free_letters(spec.n) + tuple(symmetric_group(spec.m).elements)


# ---------------------------------------------------------------------------
# brute-force identity evaluators (never consult automata)


def eval_direct(n: int, g: FiniteGroupSpec, word) -> bool:
    """Trivial in F_n x G: both projections must be trivial."""
    a_letters = set(free_letters(n))
    b_letters = set(g.elements)
    if a_letters & b_letters:
        raise NonDisjointAlphabets("generator and element names overlap")
    a_part = [c for c in word if c in a_letters]
    b_part = []
    for c in word:
        if c in b_letters:
            b_part.append(c)
        elif c not in a_letters:
            raise ValueError(f"letter {c!r} outside the combined alphabet")
    return not free_reduce(a_part) and g.product(b_part) == g.identity


def eval_semidirect(n: int, m: int, word) -> bool:
    """Trivial in F_n x| S_m under (f1,s1)(f2,s2) = (f1 psi(s1)(f2), s1 s2).

    Equivalently: the permutation letters multiply to the identity and the
    free-group word twisted by each prefix permutation reduces to nothing.
    """
    if m > n:
        raise ValueError(f"permutation degree {m} exceeds generator count {n}")
    perms = perm_by_name(m)
    a_letters = set(free_letters(n))
    sigma = tuple(range(1, m + 1))
    stack: list = []
    for c in word:
        if c in perms:
            sigma = perm_compose(sigma, perms[c])
        elif c in a_letters:
            t = psi_action(sigma, c)
            if stack and stack[-1] == invert_letter(t):
                stack.pop()
            else:
                stack.append(t)
        else:
            raise ValueError(f"letter {c!r} outside the combined alphabet")
    return not stack and sigma == tuple(range(1, m + 1))


def is_identity(spec: GroupSpec, word) -> bool:
    if isinstance(spec, FreeGroupSpec):
        letters = set(free_letters(spec.n))
        for c in word:
            if c not in letters:
                raise ValueError(f"letter {c!r} outside the alphabet")
        return not free_reduce(word)
    if isinstance(spec, FiniteGroupSpec):
        for c in word:
            if c not in set(spec.elements):
                raise ValueError(f"letter {c!r} outside the alphabet")
        return spec.product(word) == spec.identity
    if isinstance(spec, DirectProductSpec):
        return eval_direct(spec.n, spec.finite, word)
    return eval_semidirect(spec.n, spec.m, word)


# ---------------------------------------------------------------------------
# recognizer builders


@dataclass
class Recognizer:
    """A compiled automaton together with its forgetful-map contract."""

    automaton: Vpa | Fsa | Nvpa
    group_alphabet: tuple
    rho_contract: str  # "bijection" or "surjection"

    def accepts(self, tw: TaggedWord, max_configs: int | None = None) -> bool:
        """Membership of a tagged word; an FSA recognizer is read as the
        all-internal image of its plain language."""
        m = self.automaton
        if isinstance(m, Fsa):
            if any(s.tag is not Tag.INTERNAL for s in tw):
                return False
            return fsa_run(m, [s.base for s in tw])
        if isinstance(m, Vpa):
            return vpa_run(m, tw).accepted
        if max_configs is None:
            return nvpa_run(m, tw)
        return nvpa_run(m, tw, max_configs=max_configs)


def build_free_vpa(n: int) -> Recognizer:
    """VPA for the canonical taggings of trivial free-group words.

    The state holds the most recent unmatched call letter (or 'e' for
    none); the stack holds the letters beneath it, with a blank marking a
    slot that was empty.  A letter adjacent to its inverse must cancel:
    the cancelling return pops the slot back into the state, and a call or
    internal read in that situation fails.  Acceptance is state 'e' with
    an empty stack (no symbol above the bottom is acceptable).
    """
    letters = free_letters(n)
    fail = "f"
    empty = "e"
    states = set(letters) | {empty, fail}
    stack = set(letters) | {FREE_VPA_BLANK}
    delta_c: dict = {}
    delta_i: dict = {}
    delta_r: dict = {}
    readable = sorted(stack) + [FREE_VPA_BOTTOM]
    for p in sorted(states - {fail}):
        for a in letters:
            cancels = p != empty and invert_letter(p) == a
            if cancels:
                delta_c[(p, a)] = (fail, FREE_VPA_BLANK)
            else:
                delta_c[(p, a)] = (a, p if p != empty else FREE_VPA_BLANK)
            delta_i[(p, a)] = fail
            for g in readable:
                if cancels and g != FREE_VPA_BOTTOM:
                    delta_r[(p, a, g)] = empty if g == FREE_VPA_BLANK else g
                else:
                    delta_r[(p, a, g)] = fail
    vpa = Vpa(
        alphabet=letters,
        states=states,
        stack_alphabet=stack,
        bottom=FREE_VPA_BOTTOM,
        initial=empty,
        accepts={empty},
        accept_stack=frozenset(),
        delta_c=delta_c,
        delta_i=delta_i,
        delta_r=delta_r,
    )
    return Recognizer(vpa, letters, "bijection")


def build_finite_fsa(g: FiniteGroupSpec) -> Recognizer:
    """Cayley-graph FSA: states are elements, reading b multiplies by b."""
    delta = {(a, b): g.table[(a, b)] for a in g.elements for b in g.elements}
    fsa = Fsa(tuple(g.elements), set(g.elements), g.identity, {g.identity}, delta)
    return Recognizer(fsa, tuple(g.elements), "bijection")


def _flat_name(state) -> str:
    if isinstance(state, tuple):
        return "|".join(_flat_name(s) for s in state)
    return str(state)


def _rename_vpa(m: Vpa) -> Vpa:
    names = {q: _flat_name(q) for q in m.states}
    if len(set(names.values())) != len(names):
        raise ValueError("state renaming collided")
    return Vpa(
        alphabet=m.alphabet,
        states=frozenset(names.values()),
        stack_alphabet=m.stack_alphabet,
        bottom=m.bottom,
        initial=names[m.initial],
        accepts=frozenset(names[q] for q in m.accepts),
        accept_stack=m.accept_stack,
        delta_c={(names[q], a): (names[d], g) for (q, a), (d, g) in m.delta_c.items()},
        delta_i={(names[q], a): names[d] for (q, a), d in m.delta_i.items()},
        delta_r={(names[q], a, g): names[d] for (q, a, g), d in m.delta_r.items()},
    )


def _rename_nvpa(m: Nvpa) -> Nvpa:
    names = {q: _flat_name(q) for q in m.states}
    if len(set(names.values())) != len(names):
        raise ValueError("state renaming collided")
    return Nvpa(
        alphabet=m.alphabet,
        states=frozenset(names.values()),
        stack_alphabet=m.stack_alphabet,
        bottom=m.bottom,
        initials=frozenset(names[q] for q in m.initials),
        accepts=frozenset(names[q] for q in m.accepts),
        accept_stack=m.accept_stack,
        delta_c={
            (names[q], a): frozenset((names[d], g) for d, g in moves)
            for (q, a), moves in m.delta_c.items()
        },
        delta_i={
            (names[q], a): frozenset(names[d] for d in dsts)
            for (q, a), dsts in m.delta_i.items()
        },
        delta_r={
            (names[q], a, g): frozenset(names[d] for d in dsts)
            for (q, a, g), dsts in m.delta_r.items()
        },
    )


def build_direct_product(n: int, g: FiniteGroupSpec) -> Recognizer:
    """Shuffle the free-group VPA with the Cayley FSA of the finite factor."""
    spec = DirectProductSpec(n, g)  # validates name disjointness
    free = build_free_vpa(n).automaton
    cayley = build_finite_fsa(g).automaton
    product = _rename_vpa(shuffle(free, cayley))
    return Recognizer(product, group_letters(spec), "bijection")


def semidirect_relabeling(n: int, m: int) -> Relabeling:
    """Pair FSA tracking the prefix permutation.

    Permutation letters must be copied unchanged and advance the tracked
    product; a free-group letter read as `a` is emitted as psi(sigma)^-1(a),
    undoing the twist accumulated so far.
    """
    perms = perm_by_name(m)
    a_letters = free_letters(n)
    state_names = sorted(perms)
    pairs = []
    delta = {}
    for name in state_names:
        sigma = perms[name]
        inv = perm_inverse(sigma)
        for b_name, tau in perms.items():
            pair = (b_name, b_name)
            pairs.append(pair)
            delta[(name, pair)] = perm_name(perm_compose(sigma, tau))
        for a in a_letters:
            pair = (a, psi_action(inv, a))
            pairs.append(pair)
            delta[(name, pair)] = name
    alphabet = tuple(dict.fromkeys(pairs))
    identity = perm_name(tuple(range(1, m + 1)))
    fsa = Fsa(alphabet, set(state_names), identity, set(state_names), delta)
    return Relabeling(fsa)


def build_semidirect(n: int, m: int) -> Recognizer:
    """Image of the shuffled free x Cayley language under the prefix twist."""
    spec = SemidirectProductSpec(n, m)
    free = build_free_vpa(n).automaton
    cayley = build_finite_fsa(symmetric_group(m)).automaton
    shuffled = shuffle(free, cayley)
    image = relabel_image(shuffled, semidirect_relabeling(n, m))
    return Recognizer(_rename_nvpa(image), group_letters(spec), "bijection")


def build_recognizer(spec: GroupSpec) -> Recognizer:
    if isinstance(spec, FreeGroupSpec):
        return build_free_vpa(spec.n)
    if isinstance(spec, FiniteGroupSpec):
        return build_finite_fsa(spec)
    if isinstance(spec, DirectProductSpec):
        return build_direct_product(spec.n, spec.finite)
    return build_semidirect(spec.n, spec.m)


# ---------------------------------------------------------------------------
# canonical annotation and tagging enumeration


def annotate_word(spec: GroupSpec, word) -> TaggedWord | None:
    """The unique recognizer-accepted tagging of a trivial word, else None.

    Free-group letters get the canonical cancellation matching (computed on
    the twisted letters for semidirect products); finite-group letters stay
    internal.
    """
    word = tuple(word)
    if not is_identity(spec, word):
        return None
    if isinstance(spec, FiniteGroupSpec):
        return tuple(TaggedSymbol(c, Tag.INTERNAL) for c in word)
    if isinstance(spec, FreeGroupSpec):
        matching = canonical_matching(word)
    else:
        a_letters = set(free_letters(spec.n))
        if isinstance(spec, SemidirectProductSpec):
            perms = perm_by_name(spec.m)
            sigma = tuple(range(1, spec.m + 1))
            positioned = []
            for pos, c in enumerate(word, start=1):
                if c in perms:
                    sigma = perm_compose(sigma, perms[c])
                else:
                    positioned.append((pos, psi_action(sigma, c)))
        else:
            positioned = [(pos, c) for pos, c in enumerate(word, start=1) if c in a_letters]
        edges = _cancellation_edges(positioned)
        assert edges is not None  # is_identity passed
        matching = MatchingRelation(len(word), edges)
    if matching is None:
        return None
    return encode(NestedWord(word, matching))


def enumerate_taggings(word, bound: int = 12):
    """All 3^|w| taggings in token-lexicographic order."""
    word = tuple(word)
    if len(word) > bound:
        raise BoundExceeded(f"word length {len(word)} exceeds bound {bound}")
    tag_choices = [
        tuple(TaggedSymbol(c, t) for t in (Tag.CALL, Tag.INTERNAL, Tag.RETURN))
        for c in word
    ]
    for combo in itertools.product(*tag_choices):
        yield tuple(combo)
