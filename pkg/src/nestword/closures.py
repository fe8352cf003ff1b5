"""Closure constructions for regular languages and VPLs.

Regular operations return deterministic FSAs (nondeterministic intermediates
are determinized).  VPL union/intersection/complement return deterministic
VPAs built from completed, acceptance-normalized inputs, so tags keep both
stacks in lockstep.  Concatenation, star, and reversal return NVPAs whose
membership is decided by configuration-set runs; prefix-closure membership
is decided directly by saturation instead of building a machine.

Union/intersection/complement/concat/star/reverse outputs are canonicalized
(reachable part, q0/q1... names).  `shuffle` and `relabel_image` keep their
structured product states so callers can rename them meaningfully.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .machines import (
    Fsa,
    Nfa,
    Nvpa,
    Vpa,
    canonicalize,
    fsa_complete,
    fsa_determinize,
    vpa_complete,
    vpa_normalize_acceptance,
)
from .words import Tag, TaggedSymbol, TaggedWord, all_plain_words


class AlphabetMismatch(ValueError):
    pass


class NonDisjointAlphabets(ValueError):
    pass


def _require_same_alphabet(m1, m2) -> tuple:
    if set(m1.alphabet) != set(m2.alphabet):
        raise AlphabetMismatch(f"{m1.alphabet!r} vs {m2.alphabet!r}")
    return m1.alphabet


# ---------------------------------------------------------------------------
# regular closures


def _fsa_product(m1: Fsa, m2: Fsa, keep) -> Fsa:
    alphabet = _require_same_alphabet(m1, m2)
    c1, c2 = fsa_complete(m1), fsa_complete(m2)
    states = {(p, q) for p in c1.states for q in c2.states}
    delta = {
        ((p, q), a): (c1.delta[(p, a)], c2.delta[(q, a)])
        for p, q in states
        for a in alphabet
    }
    accepts = {(p, q) for p, q in states if keep(p in c1.accepts, q in c2.accepts)}
    prod = Fsa(alphabet, frozenset(states), (c1.initial, c2.initial), frozenset(accepts), delta)
    return canonicalize(prod)


def reg_union(m1: Fsa, m2: Fsa) -> Fsa:
    return _fsa_product(m1, m2, lambda a, b: a or b)


def reg_intersection(m1: Fsa, m2: Fsa) -> Fsa:
    return _fsa_product(m1, m2, lambda a, b: a and b)


def reg_complement(m: Fsa) -> Fsa:
    c = fsa_complete(m)
    return canonicalize(
        Fsa(c.alphabet, c.states, c.initial, c.states - c.accepts, c.delta)
    )


def reg_concat(m1: Fsa, m2: Fsa) -> Fsa:
    alphabet = _require_same_alphabet(m1, m2)
    states = {("1", q) for q in m1.states} | {("2", q) for q in m2.states}
    delta: dict = {}
    for (q, a), dst in m1.delta.items():
        delta[(("1", q), a)] = {("1", dst)}
    for (q, a), dst in m2.delta.items():
        delta[(("2", q), a)] = {("2", dst)}
    for y in m1.accepts:
        delta.setdefault((("1", y), None), set()).add(("2", m2.initial))
    nfa = Nfa(
        alphabet,
        frozenset(states),
        frozenset({("1", m1.initial)}),
        frozenset(("2", y) for y in m2.accepts),
        delta,
    )
    return fsa_determinize(nfa)


def reg_star(m: Fsa) -> Fsa:
    start = ("star", None)
    states = {("m", q) for q in m.states} | {start}
    delta: dict = {((("m", q)), a): {("m", dst)} for (q, a), dst in m.delta.items()}
    delta[(start, None)] = {("m", m.initial)}
    for y in m.accepts:
        delta.setdefault((("m", y), None), set()).add(("m", m.initial))
    nfa = Nfa(
        m.alphabet,
        frozenset(states),
        frozenset({start}),
        frozenset({start} | {("m", y) for y in m.accepts}),
        delta,
    )
    return fsa_determinize(nfa)


def reg_reverse(m: Fsa) -> Fsa:
    delta: dict = {}
    for (q, a), dst in m.delta.items():
        delta.setdefault((dst, a), set()).add(q)
    nfa = Nfa(m.alphabet, m.states, m.accepts, frozenset({m.initial}), delta)
    return fsa_determinize(nfa)


def reg_prefix(m: Fsa) -> Fsa:
    """Every state that can reach an accept state becomes accepting."""
    backward: dict = {}
    for (q, _), dst in m.delta.items():
        backward.setdefault(dst, set()).add(q)
    reach = set(m.accepts)
    todo = deque(reach)
    while todo:
        q = todo.popleft()
        for p in backward.get(q, ()):
            if p not in reach:
                reach.add(p)
                todo.append(p)
    return canonicalize(Fsa(m.alphabet, m.states, m.initial, frozenset(reach), m.delta))


# ---------------------------------------------------------------------------
# VPL boolean closures (deterministic products of normalized machines)


def _vpa_product(m1: Vpa, m2: Vpa, keep) -> Vpa:
    alphabet = _require_same_alphabet(m1, m2)
    n1 = vpa_normalize_acceptance(vpa_complete(m1))
    n2 = vpa_normalize_acceptance(vpa_complete(m2))
    states = {(p, q) for p in n1.states for q in n2.states}
    stack = {(g1, g2) for g1 in n1.stack_alphabet for g2 in n2.stack_alphabet}
    bottom = (n1.bottom, n2.bottom)
    delta_c = {}
    delta_i = {}
    delta_r = {}
    for p, q in states:
        for a in alphabet:
            d1, g1 = n1.delta_c[(p, a)]
            d2, g2 = n2.delta_c[(q, a)]
            delta_c[((p, q), a)] = ((d1, d2), (g1, g2))
            delta_i[((p, q), a)] = (n1.delta_i[(p, a)], n2.delta_i[(q, a)])
            for s1, s2 in stack:
                delta_r[((p, q), a, (s1, s2))] = (
                    n1.delta_r[(p, a, s1)],
                    n2.delta_r[(q, a, s2)],
                )
            delta_r[((p, q), a, bottom)] = (
                n1.delta_r[(p, a, n1.bottom)],
                n2.delta_r[(q, a, n2.bottom)],
            )
    accepts = {(p, q) for p, q in states if keep(p in n1.accepts, q in n2.accepts)}
    prod = Vpa(
        alphabet=alphabet,
        states=frozenset(states),
        stack_alphabet=frozenset(stack),
        bottom=bottom,
        initial=(n1.initial, n2.initial),
        accepts=frozenset(accepts),
        accept_stack=frozenset(stack),
        delta_c=delta_c,
        delta_i=delta_i,
        delta_r=delta_r,
    )
    return canonicalize(prod)


def vpl_union(m1: Vpa, m2: Vpa) -> Vpa:
    return _vpa_product(m1, m2, lambda a, b: a or b)


def vpl_intersection(m1: Vpa, m2: Vpa) -> Vpa:
    return _vpa_product(m1, m2, lambda a, b: a and b)


def vpl_complement(m: Vpa) -> Vpa:
    """Complete, normalize acceptance to state-only, then swap accept states."""
    n = vpa_normalize_acceptance(vpa_complete(m))
    return canonicalize(
        Vpa(
            alphabet=n.alphabet,
            states=n.states,
            stack_alphabet=n.stack_alphabet,
            bottom=n.bottom,
            initial=n.initial,
            accepts=n.states - n.accepts,
            accept_stack=n.accept_stack,
            delta_c=n.delta_c,
            delta_i=n.delta_i,
            delta_r=n.delta_r,
        )
    )


# ---------------------------------------------------------------------------
# VPL concatenation / star / reversal (nondeterministic gluings)


def vpl_concat(m1: Vpa, m2: Vpa) -> Nvpa:
    """Guess the split point at accepting configurations of m1.

    Both machines are acceptance-normalized, so "m1 accepts here" is a
    state predicate.  Stack symbols carry their phase; once the run is in
    phase 2, a return that finds a phase-1 symbol (or the true bottom)
    behaves as m2 reading its own bottom, popping the dead symbol.
    """
    alphabet = _require_same_alphabet(m1, m2)
    n1 = vpa_normalize_acceptance(m1)
    n2 = vpa_normalize_acceptance(m2)
    bottom = "$"
    delta_c: dict = {}
    delta_i: dict = {}
    delta_r: dict = {}

    def add(table, key, value):
        table.setdefault(key, set()).add(value)

    for (q, a), (dst, g) in n1.delta_c.items():
        add(delta_c, (("1", q), a), (("1", dst), ("1", g)))
    for (q, a), dst in n1.delta_i.items():
        add(delta_i, (("1", q), a), ("1", dst))
    for (q, a, g), dst in n1.delta_r.items():
        top = bottom if g == n1.bottom else ("1", g)
        add(delta_r, (("1", q), a, top), ("1", dst))

    for (q, a), (dst, g) in n2.delta_c.items():
        add(delta_c, (("2", q), a), (("2", dst), ("2", g)))
    for (q, a), dst in n2.delta_i.items():
        add(delta_i, (("2", q), a), ("2", dst))
    for (q, a, g), dst in n2.delta_r.items():
        if g == n2.bottom:
            # m2 at its virtual bottom: the true bottom or any dead phase-1 symbol.
            add(delta_r, (("2", q), a, bottom), ("2", dst))
            for g1 in n1.stack_alphabet:
                add(delta_r, (("2", q), a, ("1", g1)), ("2", dst))
        else:
            add(delta_r, (("2", q), a, ("2", g)), ("2", dst))

    # Split folded into the next symbol: from an accepting phase-1 state,
    # also move as m2 would from its initial state.
    for y in n1.accepts:
        for a in alphabet:
            move = n2.delta_c.get((n2.initial, a))
            if move is not None:
                add(delta_c, (("1", y), a), (("2", move[0]), ("2", move[1])))
            dst = n2.delta_i.get((n2.initial, a))
            if dst is not None:
                add(delta_i, (("1", y), a), ("2", dst))
            dst = n2.delta_r.get((n2.initial, a, n2.bottom))
            if dst is not None:
                add(delta_r, (("1", y), a, bottom), ("2", dst))
                for g1 in n1.stack_alphabet:
                    add(delta_r, (("1", y), a, ("1", g1)), ("2", dst))

    states = {("1", q) for q in n1.states} | {("2", q) for q in n2.states}
    stack = {("1", g) for g in n1.stack_alphabet} | {("2", g) for g in n2.stack_alphabet}
    initials = {("1", n1.initial)}
    if n1.initial in n1.accepts:
        initials.add(("2", n2.initial))
    accepts = {("2", y) for y in n2.accepts}
    if n2.initial in n2.accepts:
        accepts |= {("1", y) for y in n1.accepts}
    return canonicalize(
        Nvpa(
            alphabet=alphabet,
            states=frozenset(states),
            stack_alphabet=frozenset(stack),
            bottom=bottom,
            initials=frozenset(initials),
            accepts=frozenset(accepts),
            accept_stack=frozenset(stack),
            delta_c=delta_c,
            delta_i=delta_i,
            delta_r=delta_r,
        )
    )


def vpl_star(m: Vpa) -> Nvpa:
    """Iterated concatenation: restart at accepting states, nondeterministically.

    States carry a bit "a restart happened since the symbol now on top was
    pushed"; each push saves the current bit into the pushed symbol and a
    pop ORs the saved bit back in.  A pop with bit 0 is a same-iteration
    pop and uses the real symbol; with bit 1 the symbol is dead (pushed in
    an earlier iteration), so the machine reads its bottom instead.
    """
    n = vpa_normalize_acceptance(m)
    bottom = "$"
    start = "start"
    delta_c: dict = {}
    delta_i: dict = {}
    delta_r: dict = {}

    def add(table, key, value):
        table.setdefault(key, set()).add(value)

    def add_moves(src, q, b):
        """Moves of simulated state q with restart bit b, installed under src."""
        for a in n.alphabet:
            move = n.delta_c.get((q, a))
            if move is not None:
                add(delta_c, (src, a), ((move[0], 0), (move[1], b)))
            dst = n.delta_i.get((q, a))
            if dst is not None:
                add(delta_i, (src, a), (dst, b))
            bottom_dst = n.delta_r.get((q, a, n.bottom))
            if bottom_dst is not None:
                add(delta_r, (src, a, bottom), (bottom_dst, b))
            for g in n.stack_alphabet:
                for saved in (0, 1):
                    if b == 0:
                        dst = n.delta_r.get((q, a, g))
                        if dst is not None:
                            add(delta_r, (src, a, (g, saved)), (dst, saved))
                    else:
                        # dead symbol: the current iteration sees its bottom
                        if bottom_dst is not None:
                            add(delta_r, (src, a, (g, saved)), (bottom_dst, 1))

    for q in n.states:
        for b in (0, 1):
            add_moves((q, b), q, b)
            if q in n.accepts:
                # restart: end the iteration here and process the symbol
                # as the first of a fresh one (bit becomes 1)
                add_moves((q, b), n.initial, 1)
    add_moves(start, n.initial, 0)
    if n.initial in n.accepts:
        add_moves(start, n.initial, 1)

    states = {(q, b) for q in n.states for b in (0, 1)} | {start}
    stack = {(g, b) for g in n.stack_alphabet for b in (0, 1)}
    accepts = {(q, b) for q in n.accepts for b in (0, 1)} | {start}
    return canonicalize(
        Nvpa(
            alphabet=n.alphabet,
            states=frozenset(states),
            stack_alphabet=frozenset(stack),
            bottom=bottom,
            initials=frozenset({start}),
            accepts=frozenset(accepts),
            accept_stack=frozenset(stack),
            delta_c=delta_c,
            delta_i=delta_i,
            delta_r=delta_r,
        )
    )


def vpl_reverse(m: Vpa) -> Nvpa:
    """Run m backwards: reversed transitions with call and return roles swapped.

    Reading a call of the reversed word undoes a return step of m, pushing
    a guess of the symbol that step popped (or a marker when it read m's
    bottom); reading a return undoes a call step and checks the guess.
    Pending calls of the input correspond to returns m never matched, so
    the marker is the only symbol allowed to survive; pending returns
    correspond to m's never-popped pushes, which must satisfy m's stack
    acceptance condition.
    """
    mark = "mark"
    bottom = "$"
    delta_c: dict = {}
    delta_i: dict = {}
    delta_r: dict = {}

    def add(table, key, value):
        table.setdefault(key, set()).add(value)

    for (q, a, g), dst in m.delta_r.items():
        if g == m.bottom:
            add(delta_c, (dst, a), (q, mark))
        else:
            add(delta_c, (dst, a), (q, ("sym", g)))
    for (q, a), dst in m.delta_i.items():
        add(delta_i, (dst, a), q)
    for (q, a), (dst, g) in m.delta_c.items():
        add(delta_r, (dst, a, ("sym", g)), q)
        if g in m.accept_stack:
            add(delta_r, (dst, a, bottom), q)

    stack = {("sym", g) for g in m.stack_alphabet} | {mark}
    return canonicalize(
        Nvpa(
            alphabet=m.alphabet,
            states=m.states,
            stack_alphabet=frozenset(stack),
            bottom=bottom,
            initials=m.accepts,
            accepts=frozenset({m.initial}),
            accept_stack=frozenset({mark}),
            delta_c=delta_c,
            delta_i=delta_i,
            delta_r=delta_r,
        )
    )


# ---------------------------------------------------------------------------
# prefix-closure membership by saturation


class PrefixDecider:
    """Decides membership in the prefix closure of L(m).

    Precomputes summary pairs (q, q') connected by some well-matched word
    (net-zero stack effect, never dipping below the starting level), the
    states from which acceptance is reachable without popping below the
    current level (`tail`), and those that may also use bottom reads
    (`tail_bottom`).  A query runs m on the word, then walks pop edges
    down the run's final stack through those sets.
    """

    def __init__(self, m: Vpa):
        self.m = m
        self.summaries = self._well_matched_pairs()
        self.tail = self._tail_states()
        self.tail_bottom = self._bottom_states()

    def _well_matched_pairs(self) -> dict:
        m = self.m
        reach = {q: {q} for q in m.states}
        changed = True
        while changed:
            changed = False
            for q in m.states:
                for q1 in list(reach[q]):
                    for a in m.alphabet:
                        dst = m.delta_i.get((q1, a))
                        if dst is not None and dst not in reach[q]:
                            reach[q].add(dst)
                            changed = True
                        move = m.delta_c.get((q1, a))
                        if move is None:
                            continue
                        inner, g = move
                        for p in list(reach[inner]):
                            for b in m.alphabet:
                                dst = m.delta_r.get((p, b, g))
                                if dst is not None and dst not in reach[q]:
                                    reach[q].add(dst)
                                    changed = True
        return reach

    def _tail_states(self) -> frozenset:
        """States reaching acceptance via summaries and never-popped pushes
        of acceptable symbols."""
        m = self.m
        backward: dict = {}
        for q, targets in self.summaries.items():
            for dst in targets:
                backward.setdefault(dst, set()).add(q)
        for (q, a), (dst, g) in m.delta_c.items():
            if g in m.accept_stack:
                backward.setdefault(dst, set()).add(q)
        reach = set(m.accepts)
        todo = deque(reach)
        while todo:
            q = todo.popleft()
            for p in backward.get(q, ()):
                if p not in reach:
                    reach.add(p)
                    todo.append(p)
        return frozenset(reach)

    def _bottom_states(self) -> frozenset:
        """States reaching `tail` via summaries and bottom reads."""
        m = self.m
        backward: dict = {}
        for q, targets in self.summaries.items():
            for dst in targets:
                backward.setdefault(dst, set()).add(q)
        for (q, a, g), dst in m.delta_r.items():
            if g == m.bottom:
                backward.setdefault(dst, set()).add(q)
        reach = set(self.tail)
        todo = deque(reach)
        while todo:
            q = todo.popleft()
            for p in backward.get(q, ()):
                if p not in reach:
                    reach.add(p)
                    todo.append(p)
        return frozenset(reach)

    def _final_config(self, tw: TaggedWord):
        m = self.m
        state = m.initial
        stack = [m.bottom]
        for base, tag in tw:
            if base not in m._alpha:
                raise ValueError(f"letter {base!r} not in alphabet")
            if tag is Tag.CALL:
                move = m.delta_c.get((state, base))
                if move is None:
                    return None
                state, g = move
                stack.append(g)
            elif tag is Tag.INTERNAL:
                state = m.delta_i.get((state, base))
                if state is None:
                    return None
            else:
                state = m.delta_r.get((state, base, stack[-1]))
                if state is None:
                    return None
                if len(stack) > 1:
                    stack.pop()
        return state, stack

    def member(self, tw: TaggedWord) -> bool:
        config = self._final_config(tw)
        if config is None:
            return False
        state, stack = config
        m = self.m
        current = set(self.summaries[state])
        acceptable_below = [True]
        for g in stack[1:]:
            acceptable_below.append(acceptable_below[-1] and g in m.accept_stack)
        for level in range(len(stack) - 1, 0, -1):
            if acceptable_below[level] and current & self.tail:
                return True
            popped = set()
            for q in current:
                for a in m.alphabet:
                    dst = m.delta_r.get((q, a, stack[level]))
                    if dst is not None:
                        popped.add(dst)
            current = set()
            for q in popped:
                current |= self.summaries[q]
            if not current:
                return False
        return bool(current & self.tail_bottom)


def vpl_prefix_member(m: Vpa, tw: TaggedWord) -> bool:
    """Does some extension of tw land in L(m)?"""
    return PrefixDecider(m).member(tw)


# ---------------------------------------------------------------------------
# shuffle with a regular language


def shuffle(m: Vpa, r: Fsa) -> Vpa:
    """Product machine for the interleavings of L(m) with the all-internal
    image of L(r); the regular letters never touch the stack."""
    if set(m.alphabet) & set(r.alphabet):
        raise NonDisjointAlphabets(f"{m.alphabet!r} overlaps {r.alphabet!r}")
    alphabet = tuple(m.alphabet) + tuple(r.alphabet)
    states = {(s, t) for s in m.states for t in r.states}
    delta_c = {}
    delta_i = {}
    delta_r = {}
    for s, t in states:
        for a in m.alphabet:
            move = m.delta_c.get((s, a))
            if move is not None:
                delta_c[((s, t), a)] = ((move[0], t), move[1])
            dst = m.delta_i.get((s, a))
            if dst is not None:
                delta_i[((s, t), a)] = (dst, t)
        for b in r.alphabet:
            dst = r.delta.get((t, b))
            if dst is not None:
                delta_i[((s, t), b)] = (s, dst)
    for (s, a, g), dst in m.delta_r.items():
        for t in r.states:
            delta_r[((s, t), a, g)] = (dst, t)
    return Vpa(
        alphabet=alphabet,
        states=frozenset(states),
        stack_alphabet=m.stack_alphabet,
        bottom=m.bottom,
        initial=(m.initial, r.initial),
        accepts=frozenset((y, yr) for y in m.accepts for yr in r.accepts),
        accept_stack=m.accept_stack,
        delta_c=delta_c,
        delta_i=delta_i,
        delta_r=delta_r,
    )


# ---------------------------------------------------------------------------
# finite re-labeling


@dataclass
class Relabeling:
    """A letter substitution whose graph is an FSA over base-letter pairs.

    The pair FSA reads (input letter, output letter) pairs; tags are not
    consulted and are copied through, so lengths and matching relations are
    preserved by construction.  The map is required to be functional
    (at most one output word per input word), which `is_functional` checks
    by enumeration up to a length bound.
    """

    pair_fsa: Fsa

    def __post_init__(self):
        for sym in self.pair_fsa.alphabet:
            if not (isinstance(sym, tuple) and len(sym) == 2):
                raise ValueError(f"pair FSA symbol {sym!r} is not a letter pair")
        edges: dict = {}
        for (p, (a_in, b_out)), dst in self.pair_fsa.delta.items():
            edges.setdefault((p, a_in), []).append((b_out, dst))
        self._edges = edges

    def input_letters(self) -> tuple:
        return tuple(sorted({a for a, _ in self.pair_fsa.alphabet}))

    def apply(self, tw: TaggedWord) -> list:
        """All relabelings of tw accepted by the pair FSA (tags copied)."""
        results = []
        out: list = []

        def go(i: int, p) -> None:
            if i == len(tw):
                if p in self.pair_fsa.accepts:
                    results.append(tuple(out))
                return
            sym = tw[i]
            for b_out, dst in self._edges.get((p, sym.base), ()):
                out.append(TaggedSymbol(b_out, sym.tag))
                go(i + 1, dst)
                out.pop()

        go(0, self.pair_fsa.initial)
        return results

    def is_functional(self, max_len: int = 6) -> bool:
        letters = self.input_letters()
        for word in all_plain_words(letters, max_len):
            tw = tuple(TaggedSymbol(a, Tag.INTERNAL) for a in word)
            if len(self.apply(tw)) > 1:
                return False
        return True


def identity_relabeling(alphabet) -> Relabeling:
    pairs = tuple((a, a) for a in alphabet)
    state = "p"
    delta = {(state, pair): state for pair in pairs}
    return Relabeling(Fsa(pairs, {state}, state, {state}, delta))


def relabel_image(m: Vpa, phi: Relabeling) -> Nvpa:
    """Machine for the image of L(m) under phi, reading output letters.

    A transition on output letter b exists wherever some input letter a with
    the same tag has both a pair-FSA move on (a, b) and an m-move on a.
    """
    pfsa = phi.pair_fsa
    alphabet = tuple(m.alphabet)
    letters = set(alphabet)
    for a_in, b_out in pfsa.alphabet:
        if a_in not in letters or b_out not in letters:
            raise AlphabetMismatch(f"pair ({a_in!r},{b_out!r}) outside machine alphabet")
    # (pair state, input letter) -> [(output letter, next pair state)]
    pair_moves: dict = {}
    for (p, (a_in, b_out)), dst in pfsa.delta.items():
        pair_moves.setdefault((p, a_in), []).append((b_out, dst))
    delta_c: dict = {}
    delta_i: dict = {}
    delta_r: dict = {}

    def add(table, key, value):
        table.setdefault(key, set()).add(value)

    for (q, a), (dst, g) in m.delta_c.items():
        for p in pfsa.states:
            for b_out, pdst in pair_moves.get((p, a), ()):
                add(delta_c, ((q, p), b_out), ((dst, pdst), g))
    for (q, a), dst in m.delta_i.items():
        for p in pfsa.states:
            for b_out, pdst in pair_moves.get((p, a), ()):
                add(delta_i, ((q, p), b_out), (dst, pdst))
    for (q, a, g), dst in m.delta_r.items():
        for p in pfsa.states:
            for b_out, pdst in pair_moves.get((p, a), ()):
                add(delta_r, ((q, p), b_out, g), (dst, pdst))

    states = {(q, p) for q in m.states for p in pfsa.states}
    return Nvpa(
        alphabet=alphabet,
        states=frozenset(states),
        stack_alphabet=m.stack_alphabet,
        bottom=m.bottom,
        initials=frozenset({(m.initial, pfsa.initial)}),
        accepts=frozenset((y, p) for y in m.accepts for p in pfsa.accepts),
        accept_stack=m.accept_stack,
        delta_c=delta_c,
        delta_i=delta_i,
        delta_r=delta_r,
    )
