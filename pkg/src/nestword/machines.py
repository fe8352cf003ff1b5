"""Machine definitions and run semantics: FSA, PDA, and (non)deterministic VPA.

All machines are plain dataclasses validated on construction and treated as
immutable afterwards; runs keep their own private configuration state, so
machines may be shared freely between threads.

Stack conventions: stacks are tuples with the bottom symbol at index 0.
For a VPA the bottom symbol is not part of the (pushable) stack alphabet
and is never pushed or popped; a return reading the exposed bottom leaves
the stack unchanged.  A PDA may pop its bottom symbol and run with an
empty stack, as the instantaneous-description semantics allows.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple

from .words import Tag, TaggedWord, check_alphabet

DEFAULT_MAX_CONFIGS = 10**6

State = Hashable
StackSym = Hashable


class EpsilonBudgetExceeded(RuntimeError):
    """A PDA run used more epsilon steps than its budget (likely a loop)."""


class ConfigurationSetOverflow(RuntimeError):
    """An NVPA run tracked more configurations than allowed."""


class Configuration(NamedTuple):
    state: State
    remaining: tuple
    stack: tuple


def _freeze_states(states: Iterable[State]) -> frozenset:
    return states if isinstance(states, frozenset) else frozenset(states)


# ---------------------------------------------------------------------------
# finite-state machines


@dataclass(repr=False)
class Fsa:
    """Deterministic finite automaton with a partial transition map.

    A missing transition kills the run (the word is rejected); an explicit
    fail state is a builder choice, not a requirement.
    """

    kind = "fsa"

    alphabet: tuple
    states: frozenset
    initial: State
    accepts: frozenset
    delta: dict  # (state, symbol) -> state

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        self.states = _freeze_states(self.states)
        self.accepts = _freeze_states(self.accepts)
        self.delta = dict(self.delta)
        alpha = set(self.alphabet)
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial!r} not in states")
        if not self.accepts <= self.states:
            raise ValueError("accept states not a subset of states")
        for (src, sym), dst in self.delta.items():
            if src not in self.states or dst not in self.states:
                raise ValueError(f"transition ({src!r},{sym!r})->{dst!r} leaves state set")
            if sym not in alpha:
                raise ValueError(f"transition symbol {sym!r} not in alphabet")
        self._alpha = frozenset(alpha)

    def __repr__(self):
        return f"Fsa(states={len(self.states)}, alphabet={self.alphabet!r})"


@dataclass(repr=False)
class Nfa:
    """Nondeterministic finite automaton; symbol None marks an epsilon move."""

    kind = "nfa"

    alphabet: tuple
    states: frozenset
    initials: frozenset
    accepts: frozenset
    delta: dict  # (state, symbol | None) -> frozenset of states

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        self.states = _freeze_states(self.states)
        self.initials = _freeze_states(self.initials)
        self.accepts = _freeze_states(self.accepts)
        self.delta = {k: frozenset(v) for k, v in self.delta.items()}
        alpha = set(self.alphabet)
        if not self.initials <= self.states or not self.accepts <= self.states:
            raise ValueError("initial/accept states not a subset of states")
        for (src, sym), dsts in self.delta.items():
            if src not in self.states or not dsts <= self.states:
                raise ValueError(f"transition ({src!r},{sym!r}) leaves state set")
            if sym is not None and sym not in alpha:
                raise ValueError(f"transition symbol {sym!r} not in alphabet")

    def __repr__(self):
        return f"Nfa(states={len(self.states)}, alphabet={self.alphabet!r})"


def fsa_run(m: Fsa, word: Iterable) -> bool:
    """Accept iff the unique (possibly dying) run ends in an accept state."""
    alpha = m._alpha
    delta = m.delta
    state = m.initial
    for sym in word:
        if sym not in alpha:
            raise ValueError(f"symbol {sym!r} not in alphabet")
        nxt = delta.get((state, sym))
        if nxt is None:
            return False
        state = nxt
    return state in m.accepts


def _eps_closure(n: Nfa, states: frozenset) -> frozenset:
    seen = set(states)
    todo = list(states)
    while todo:
        q = todo.pop()
        for p in n.delta.get((q, None), ()):
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return frozenset(seen)


def nfa_run(m: Nfa, word: Iterable) -> bool:
    current = _eps_closure(m, m.initials)
    for sym in word:
        step = set()
        for q in current:
            step |= m.delta.get((q, sym), frozenset())
        current = _eps_closure(m, frozenset(step))
        if not current:
            return False
    return bool(current & m.accepts)


def fsa_determinize(n: Nfa) -> Fsa:
    """Subset construction over reachable subsets only; states become q0, q1, ..."""
    start = _eps_closure(n, n.initials)
    names = {start: "q0"}
    order = [start]
    delta = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for sym in n.alphabet:
            step = set()
            for q in subset:
                step |= n.delta.get((q, sym), frozenset())
            target = _eps_closure(n, frozenset(step))
            if not target:
                continue
            if target not in names:
                names[target] = f"q{len(order)}"
                order.append(target)
                queue.append(target)
            delta[(names[subset], sym)] = names[target]
    accepts = frozenset(names[s] for s in order if s & n.accepts)
    return Fsa(n.alphabet, frozenset(names.values()), "q0", accepts, delta)


def fsa_complete(m: Fsa) -> Fsa:
    """Total-transition version of m: missing moves go to a fresh reject sink."""
    sink = _fresh("sink", m.states)
    delta = dict(m.delta)
    states = set(m.states) | {sink}
    for q in states:
        for sym in m.alphabet:
            delta.setdefault((q, sym), sink)
    return Fsa(m.alphabet, frozenset(states), m.initial, m.accepts, delta)


def _fresh(base: str, taken: Iterable[Hashable]) -> str:
    taken = set(taken)
    name = base
    i = 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


# ---------------------------------------------------------------------------
# pushdown machines


@dataclass(repr=False)
class Pda:
    """Deterministic pushdown automaton; symbol None marks an epsilon move.

    Epsilon determinism: if (s, None, g) has a transition then no (s, a, g)
    may have one.  A transition value (t, push) replaces the read stack
    symbol with the word `push` (pushed left to right, so push[-1] is the
    new top).
    """

    kind = "pda"

    alphabet: tuple
    states: frozenset
    stack_alphabet: frozenset
    initial: State
    bottom: StackSym
    accepts: frozenset
    delta: dict  # (state, symbol | None, stack symbol) -> (state, push word)

    def __post_init__(self):
        self.alphabet = check_alphabet(self.alphabet)
        self.states = _freeze_states(self.states)
        self.stack_alphabet = frozenset(self.stack_alphabet)
        self.accepts = _freeze_states(self.accepts)
        self.delta = {k: (t, tuple(push)) for k, (t, push) in self.delta.items()}
        alpha = set(self.alphabet)
        if self.bottom not in self.stack_alphabet:
            raise ValueError("bottom symbol must be in the stack alphabet")
        if self.initial not in self.states or not self.accepts <= self.states:
            raise ValueError("initial/accept states not a subset of states")
        eps_keys = {(s, g) for (s, a, g) in self.delta if a is None}
        for (src, sym, top), (dst, push) in self.delta.items():
            if src not in self.states or dst not in self.states:
                raise ValueError(f"transition on ({src!r},{sym!r},{top!r}) leaves state set")
            if sym is not None:
                if sym not in alpha:
                    raise ValueError(f"transition symbol {sym!r} not in alphabet")
                if (src, top) in eps_keys:
                    raise ValueError(f"epsilon determinism violated at ({src!r},{top!r})")
            if top not in self.stack_alphabet or not set(push) <= self.stack_alphabet:
                raise ValueError(f"stack symbols of ({src!r},{sym!r},{top!r}) unknown")

    def __repr__(self):
        return f"Pda(states={len(self.states)}, alphabet={self.alphabet!r})"


def pda_step(c: Configuration, m: Pda) -> Configuration | None:
    """Apply the unique enabled transition; None when no transition is enabled.

    An epsilon transition takes priority (and excludes input moves by the
    determinism condition).  An empty stack enables nothing.
    """
    if not c.stack:
        return None
    top = c.stack[-1]
    move = m.delta.get((c.state, None, top))
    if move is not None:
        dst, push = move
        return Configuration(dst, c.remaining, c.stack[:-1] + push)
    if c.remaining:
        move = m.delta.get((c.state, c.remaining[0], top))
        if move is not None:
            dst, push = move
            return Configuration(dst, c.remaining[1:], c.stack[:-1] + push)
    return None


def default_eps_budget(m: Pda, word_len: int) -> int:
    return 10 * len(m.states) * len(m.stack_alphabet) * (word_len + 1)


def pda_run(m: Pda, word: Iterable[str], eps_budget: int | None = None) -> bool:
    """Accept iff the run reaches an accept state with all input consumed."""
    word = tuple(word)
    alpha = set(m.alphabet)
    for sym in word:
        if sym not in alpha:
            raise ValueError(f"symbol {sym!r} not in alphabet")
    if eps_budget is None:
        eps_budget = default_eps_budget(m, len(word))
    if eps_budget <= 0:
        raise ValueError("eps_budget must be positive")
    config = Configuration(m.initial, word, (m.bottom,))
    eps_used = 0
    while True:
        if not config.remaining and config.state in m.accepts:
            return True
        nxt = pda_step(config, m)
        if nxt is None:
            return False
        if len(nxt.remaining) == len(config.remaining):
            eps_used += 1
            if eps_used > eps_budget:
                raise EpsilonBudgetExceeded(f"more than {eps_budget} epsilon steps")
        config = nxt


# ---------------------------------------------------------------------------
# visibly pushdown machines


@dataclass(repr=False)
class Vpa:
    """Deterministic visibly pushdown automaton.

    The tag of each input symbol selects the transition family: calls push
    one symbol, internals leave the stack alone, returns pop (or read the
    bottom symbol in place when the stack is empty above it).  Acceptance
    requires a surviving run, a final state in `accepts`, and every stack
    symbol above the bottom to lie in `accept_stack`.

    `stack_alphabet` holds the pushable symbols; `bottom` is separate and
    is never pushed.
    """

    kind = "vpa"

    alphabet: tuple
    states: frozenset
    stack_alphabet: frozenset
    bottom: StackSym
    initial: State
    accepts: frozenset
    accept_stack: frozenset
    delta_c: dict  # (state, base) -> (state, stack symbol)
    delta_i: dict  # (state, base) -> state
    delta_r: dict  # (state, base, stack symbol or bottom) -> state

    def __post_init__(self):
        self.alphabet = check_alphabet(self.alphabet)
        self.states = _freeze_states(self.states)
        self.stack_alphabet = frozenset(self.stack_alphabet)
        self.accepts = _freeze_states(self.accepts)
        self.accept_stack = frozenset(self.accept_stack)
        self.delta_c = {k: (t, g) for k, (t, g) in self.delta_c.items()}
        self.delta_i = dict(self.delta_i)
        self.delta_r = dict(self.delta_r)
        alpha = set(self.alphabet)
        if self.bottom in self.stack_alphabet:
            raise ValueError("bottom symbol must not be a pushable stack symbol")
        if self.initial not in self.states or not self.accepts <= self.states:
            raise ValueError("initial/accept states not a subset of states")
        if not self.accept_stack <= self.stack_alphabet:
            raise ValueError("accept_stack must be a subset of the stack alphabet")
        for (src, base), (dst, sym) in self.delta_c.items():
            if src not in self.states or dst not in self.states or base not in alpha:
                raise ValueError(f"bad call transition ({src!r},{base!r})")
            if sym not in self.stack_alphabet:
                raise ValueError(f"call on ({src!r},{base!r}) pushes unknown symbol {sym!r}")
        for (src, base), dst in self.delta_i.items():
            if src not in self.states or dst not in self.states or base not in alpha:
                raise ValueError(f"bad internal transition ({src!r},{base!r})")
        readable = self.stack_alphabet | {self.bottom}
        for (src, base, sym), dst in self.delta_r.items():
            if src not in self.states or dst not in self.states or base not in alpha:
                raise ValueError(f"bad return transition ({src!r},{base!r},{sym!r})")
            if sym not in readable:
                raise ValueError(f"return on ({src!r},{base!r}) reads unknown symbol {sym!r}")
        self._alpha = frozenset(alpha)

    def __repr__(self):
        return (
            f"Vpa(states={len(self.states)}, alphabet={self.alphabet!r}, "
            f"stack={len(self.stack_alphabet)})"
        )


@dataclass(repr=False)
class Nvpa:
    """Nondeterministic VPA: set-valued transition families, several initials."""

    kind = "nvpa"

    alphabet: tuple
    states: frozenset
    stack_alphabet: frozenset
    bottom: StackSym
    initials: frozenset
    accepts: frozenset
    accept_stack: frozenset
    delta_c: dict  # (state, base) -> frozenset of (state, stack symbol)
    delta_i: dict  # (state, base) -> frozenset of states
    delta_r: dict  # (state, base, stack symbol or bottom) -> frozenset of states

    def __post_init__(self):
        self.alphabet = check_alphabet(self.alphabet)
        self.states = _freeze_states(self.states)
        self.stack_alphabet = frozenset(self.stack_alphabet)
        self.initials = _freeze_states(self.initials)
        self.accepts = _freeze_states(self.accepts)
        self.accept_stack = frozenset(self.accept_stack)
        self.delta_c = {k: frozenset(v) for k, v in self.delta_c.items()}
        self.delta_i = {k: frozenset(v) for k, v in self.delta_i.items()}
        self.delta_r = {k: frozenset(v) for k, v in self.delta_r.items()}
        if self.bottom in self.stack_alphabet:
            raise ValueError("bottom symbol must not be a pushable stack symbol")
        if not self.initials <= self.states or not self.accepts <= self.states:
            raise ValueError("initial/accept states not a subset of states")
        if not self.accept_stack <= self.stack_alphabet:
            raise ValueError("accept_stack must be a subset of the stack alphabet")
        alpha = set(self.alphabet)
        readable = self.stack_alphabet | {self.bottom}
        for (src, base), moves in self.delta_c.items():
            for dst, sym in moves:
                if src not in self.states or dst not in self.states or base not in alpha:
                    raise ValueError(f"bad call transition ({src!r},{base!r})")
                if sym not in self.stack_alphabet:
                    raise ValueError(f"call on ({src!r},{base!r}) pushes unknown symbol")
        for (src, base), dsts in self.delta_i.items():
            if src not in self.states or not dsts <= self.states or base not in alpha:
                raise ValueError(f"bad internal transition ({src!r},{base!r})")
        for (src, base, sym), dsts in self.delta_r.items():
            if src not in self.states or not dsts <= self.states or base not in alpha:
                raise ValueError(f"bad return transition ({src!r},{base!r},{sym!r})")
            if sym not in readable:
                raise ValueError(f"return on ({src!r},{base!r}) reads unknown symbol")
        self._alpha = frozenset(alpha)

    def __repr__(self):
        return (
            f"Nvpa(states={len(self.states)}, alphabet={self.alphabet!r}, "
            f"stack={len(self.stack_alphabet)})"
        )


@dataclass
class VpaRun:
    accepted: bool
    reason: str | None = None
    trace: tuple = field(default=())


def _stack_ok(stack: tuple, accept_stack: frozenset) -> bool:
    return all(sym in accept_stack for sym in stack[1:])


def vpa_run(m: Vpa, tw: TaggedWord, record_trace: bool = False) -> VpaRun:
    """Deterministic run of m on a tagged word.

    A missing transition rejects (recorded as the reason) rather than
    raising; a base letter outside the alphabet raises ValueError.
    """
    alpha = m._alpha
    delta_c, delta_i, delta_r = m.delta_c, m.delta_i, m.delta_r
    state = m.initial
    stack = [m.bottom]
    trace = []
    if record_trace:
        trace.append(Configuration(state, tuple(tw), tuple(stack)))
    for pos, sym in enumerate(tw):
        base, tag = sym
        if base not in alpha:
            raise ValueError(f"letter {base!r} not in alphabet")
        if tag is Tag.CALL:
            move = delta_c.get((state, base))
            if move is None:
                return VpaRun(False, f"no call transition from {state!r} on {base!r}", tuple(trace))
            state, pushed = move
            stack.append(pushed)
        elif tag is Tag.INTERNAL:
            nxt = delta_i.get((state, base))
            if nxt is None:
                return VpaRun(False, f"no internal transition from {state!r} on {base!r}", tuple(trace))
            state = nxt
        else:
            top = stack[-1]
            nxt = delta_r.get((state, base, top))
            if nxt is None:
                return VpaRun(False, f"no return transition from {state!r} on {base!r}/{top!r}", tuple(trace))
            state = nxt
            if len(stack) > 1:
                stack.pop()
        if record_trace:
            trace.append(Configuration(state, tuple(tw[pos + 1:]), tuple(stack)))
    if state in m.accepts and _stack_ok(tuple(stack), m.accept_stack):
        return VpaRun(True, None, tuple(trace))
    return VpaRun(False, "final configuration not accepting", tuple(trace))


def nvpa_run(m: Nvpa, tw: TaggedWord, max_configs: int = DEFAULT_MAX_CONFIGS) -> bool:
    """Track the set of reachable (state, stack) configurations.

    The tags drive every stack in lockstep, so all configurations share one
    stack height.  Raises ConfigurationSetOverflow past `max_configs`.
    """
    alpha = m._alpha
    delta_c, delta_i, delta_r = m.delta_c, m.delta_i, m.delta_r
    configs = {(q, (m.bottom,)) for q in m.initials}
    for sym in tw:
        base, tag = sym
        if base not in alpha:
            raise ValueError(f"letter {base!r} not in alphabet")
        nxt = set()
        if tag is Tag.CALL:
            for state, stack in configs:
                for dst, pushed in delta_c.get((state, base), ()):
                    nxt.add((dst, stack + (pushed,)))
        elif tag is Tag.INTERNAL:
            for state, stack in configs:
                for dst in delta_i.get((state, base), ()):
                    nxt.add((dst, stack))
        else:
            for state, stack in configs:
                top = stack[-1]
                rest = stack[:-1] if len(stack) > 1 else stack
                for dst in delta_r.get((state, base, top), ()):
                    nxt.add((dst, rest))
        configs = nxt
        if len(configs) > max_configs:
            raise ConfigurationSetOverflow(f"more than {max_configs} configurations")
        if not configs:
            return False
    return any(
        state in m.accepts and _stack_ok(stack, m.accept_stack)
        for state, stack in configs
    )


def nvpa_from_vpa(m: Vpa) -> Nvpa:
    """Embed a deterministic VPA as a singleton-valued NVPA."""
    return Nvpa(
        alphabet=m.alphabet,
        states=m.states,
        stack_alphabet=m.stack_alphabet,
        bottom=m.bottom,
        initials={m.initial},
        accepts=m.accepts,
        accept_stack=m.accept_stack,
        delta_c={k: {v} for k, v in m.delta_c.items()},
        delta_i={k: {v} for k, v in m.delta_i.items()},
        delta_r={k: {v} for k, v in m.delta_r.items()},
    )


# ---------------------------------------------------------------------------
# structural transformations


def vpa_complete(m: Vpa) -> Vpa:
    """Make all three transition families total via a non-accepting sink.

    The sink pushes a fresh stack symbol outside accept_stack, so the
    accepted language is unchanged.
    """
    sink = _fresh("sink", m.states)
    sink_sym = _fresh("sinksym", m.stack_alphabet | {m.bottom})
    states = frozenset(m.states | {sink})
    stack = frozenset(m.stack_alphabet | {sink_sym})
    delta_c = dict(m.delta_c)
    delta_i = dict(m.delta_i)
    delta_r = dict(m.delta_r)
    for q in states:
        for base in m.alphabet:
            delta_c.setdefault((q, base), (sink, sink_sym))
            delta_i.setdefault((q, base), sink)
            for g in stack | {m.bottom}:
                delta_r.setdefault((q, base, g), sink)
    return Vpa(
        m.alphabet, states, stack, m.bottom, m.initial, m.accepts,
        m.accept_stack, delta_c, delta_i, delta_r,
    )


def vpa_normalize_acceptance(m: Vpa) -> Vpa:
    """Equivalent VPA whose acceptance condition is state-only.

    States carry a flag "everything on the stack above the bottom is in
    accept_stack"; each push saves the current flag into the pushed symbol
    so a pop can restore it.  The new accept_stack is the whole new stack
    alphabet, and the flag being true at an original accept state encodes
    the original stack condition.
    """
    in_acc = m.accept_stack.__contains__
    states = frozenset((q, ok) for q in m.states for ok in (True, False))
    stack = frozenset((g, ok) for g in m.stack_alphabet for ok in (True, False))
    bottom = m.bottom if m.bottom not in stack else ("bot", m.bottom)
    delta_c = {}
    delta_i = {}
    delta_r = {}
    for (q, base), (dst, g) in m.delta_c.items():
        for ok in (True, False):
            delta_c[((q, ok), base)] = ((dst, ok and in_acc(g)), (g, ok))
    for (q, base), dst in m.delta_i.items():
        for ok in (True, False):
            delta_i[((q, ok), base)] = (dst, ok)
    for (q, base, g), dst in m.delta_r.items():
        if g == m.bottom:
            for ok in (True, False):
                delta_r[((q, ok), base, bottom)] = (dst, ok)
        else:
            for ok in (True, False):
                for ok_below in (True, False):
                    delta_r[((q, ok), base, (g, ok_below))] = (dst, ok_below)
    return Vpa(
        alphabet=m.alphabet,
        states=states,
        stack_alphabet=stack,
        bottom=bottom,
        initial=(m.initial, True),
        accepts=frozenset((q, True) for q in m.accepts),
        accept_stack=stack,
        delta_c=delta_c,
        delta_i=delta_i,
        delta_r=delta_r,
    )


# ---------------------------------------------------------------------------
# canonical relabeling (deterministic names, reachable part only)


def _sorted_by_repr(items):
    return sorted(items, key=repr)


def canonicalize(m):
    """Rename states (and VPA stack symbols) to q0,q1,.../g0,g1,... in BFS order.

    Only the reachable part is kept (reachability over-approximates by
    ignoring which stack symbols can actually be on top).  The accepted
    language is unchanged.  Useful after product constructions, whose
    structured state tuples are not JSON-serializable.
    """
    if isinstance(m, Fsa):
        return _canonicalize_fsa(m)
    if isinstance(m, Vpa):
        return _canonicalize_vpa(m)
    if isinstance(m, Nvpa):
        return _canonicalize_nvpa(m)
    raise TypeError(f"cannot canonicalize {type(m).__name__}")


def _canonicalize_fsa(m: Fsa) -> Fsa:
    names = {m.initial: "q0"}
    order = [m.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for sym in m.alphabet:
            dst = m.delta.get((q, sym))
            if dst is not None and dst not in names:
                names[dst] = f"q{len(order)}"
                order.append(dst)
                queue.append(dst)
    delta = {
        (names[q], sym): names[dst]
        for (q, sym), dst in m.delta.items()
        if q in names
    }
    return Fsa(
        m.alphabet,
        frozenset(names.values()),
        "q0",
        frozenset(names[q] for q in m.accepts if q in names),
        delta,
    )


def _successor_index(m) -> dict:
    """(state, base) -> [(successor, pushed-or-None)], both machine flavors."""
    index: dict = {}
    if isinstance(m, Vpa):
        for (q, base), (dst, g) in m.delta_c.items():
            index.setdefault((q, base), []).append((dst, g))
        for (q, base), dst in m.delta_i.items():
            index.setdefault((q, base), []).append((dst, None))
        for (q, base, _), dst in m.delta_r.items():
            index.setdefault((q, base), []).append((dst, None))
    else:
        for (q, base), moves in m.delta_c.items():
            index.setdefault((q, base), []).extend(moves)
        for (q, base), dsts in m.delta_i.items():
            index.setdefault((q, base), []).extend((dst, None) for dst in dsts)
        for (q, base, _), dsts in m.delta_r.items():
            index.setdefault((q, base), []).extend((dst, None) for dst in dsts)
    return index


def _bfs_names(m, starts) -> tuple[dict, dict]:
    successors = _successor_index(m)
    state_names = {}
    sym_names = {}
    order = []
    for q in starts:
        state_names[q] = f"q{len(order)}"
        order.append(q)
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for base in m.alphabet:
            for dst, pushed in _sorted_by_repr(successors.get((q, base), ())):
                if pushed is not None and pushed not in sym_names:
                    sym_names[pushed] = f"g{len(sym_names)}"
                if dst not in state_names:
                    state_names[dst] = f"q{len(order)}"
                    order.append(dst)
                    queue.append(dst)
    return state_names, sym_names


def _canonicalize_vpa(m: Vpa) -> Vpa:
    names, syms = _bfs_names(m, [m.initial])
    keep_syms = set(syms)
    delta_c = {
        (names[q], b): (names[dst], syms[g])
        for (q, b), (dst, g) in m.delta_c.items()
        if q in names
    }
    delta_i = {(names[q], b): names[dst] for (q, b), dst in m.delta_i.items() if q in names}
    delta_r = {}
    for (q, b, g), dst in m.delta_r.items():
        if q not in names:
            continue
        if g == m.bottom:
            delta_r[(names[q], b, "$")] = names[dst]
        elif g in keep_syms:
            delta_r[(names[q], b, syms[g])] = names[dst]
    return Vpa(
        alphabet=m.alphabet,
        states=frozenset(names.values()),
        stack_alphabet=frozenset(syms.values()),
        bottom="$",
        initial="q0",
        accepts=frozenset(names[q] for q in m.accepts if q in names),
        accept_stack=frozenset(syms[g] for g in m.accept_stack if g in keep_syms),
        delta_c=delta_c,
        delta_i=delta_i,
        delta_r=delta_r,
    )


def _canonicalize_nvpa(m: Nvpa) -> Nvpa:
    names, syms = _bfs_names(m, _sorted_by_repr(m.initials))
    keep_syms = set(syms)
    delta_c = {
        (names[q], b): frozenset((names[dst], syms[g]) for dst, g in moves)
        for (q, b), moves in m.delta_c.items()
        if q in names
    }
    delta_i = {
        (names[q], b): frozenset(names[dst] for dst in dsts)
        for (q, b), dsts in m.delta_i.items()
        if q in names
    }
    delta_r = {}
    for (q, b, g), dsts in m.delta_r.items():
        if q not in names:
            continue
        if g == m.bottom:
            delta_r[(names[q], b, "$")] = frozenset(names[dst] for dst in dsts)
        elif g in keep_syms:
            delta_r[(names[q], b, syms[g])] = frozenset(names[dst] for dst in dsts)
    return Nvpa(
        alphabet=m.alphabet,
        states=frozenset(names.values()),
        stack_alphabet=frozenset(syms.values()),
        bottom="$",
        initials=frozenset(names[q] for q in m.initials),
        accepts=frozenset(names[q] for q in m.accepts if q in names),
        accept_stack=frozenset(syms[g] for g in m.accept_stack if g in keep_syms),
        delta_c=delta_c,
        delta_i=delta_i,
        delta_r=delta_r,
    )


# ---------------------------------------------------------------------------
# the two textbook example machines


def anbn_pda() -> Pda:
    """PDA for {a^n b^n : n >= 0} with an explicit fail state.

    Counts a's on the stack with 1's, pops them on b's, and drains the
    bottom 0 with a final epsilon move into the accepting state.
    """
    states = {"s0", "s1", "s2", "sy", "sf"}
    delta = {
        ("s0", "a", "0"): ("s1", ("0", "1")),
        ("s1", "a", "1"): ("s1", ("1", "1")),
        ("s1", "b", "1"): ("s2", ()),
        ("s2", "b", "1"): ("s2", ()),
        ("s2", None, "0"): ("sy", ()),
    }
    eps_blocked = {("s2", "0")}
    for s in states:
        for sym in ("a", "b"):
            for g in ("0", "1"):
                if (s, g) in eps_blocked:
                    continue
                delta.setdefault((s, sym, g), ("sf", (g,)))
    return Pda(("a", "b"), states, {"0", "1"}, "s0", "0", {"s0", "sy"}, delta)


def astar_bstar_fsa() -> Fsa:
    """FSA for {a^m b^n : m,n >= 0} with an explicit fail state."""
    delta = {
        ("s0", "a"): "s1",
        ("s0", "b"): "s2",
        ("s1", "a"): "s1",
        ("s1", "b"): "s2",
        ("s2", "b"): "s2",
        ("s2", "a"): "sf",
        ("sf", "a"): "sf",
        ("sf", "b"): "sf",
    }
    return Fsa(("a", "b"), {"s0", "s1", "s2", "sf"}, "s0", {"s0", "s1", "s2"}, delta)
