"""Closure constructions against brute-force set-theoretic oracles."""

import itertools
import random

import pytest

from oracles import (
    ExtensionOracle,
    concat_oracle,
    interleavings,
    internal_word,
    random_fsa,
    random_vpa,
    reverse_oracle,
    shuffle_oracle,
    star_oracle,
    vpa_language,
)

from nestword.closures import (
    AlphabetMismatch,
    NonDisjointAlphabets,
    PrefixDecider,
    Relabeling,
    identity_relabeling,
    reg_complement,
    reg_concat,
    reg_intersection,
    reg_prefix,
    reg_reverse,
    reg_star,
    reg_union,
    relabel_image,
    shuffle,
    vpl_complement,
    vpl_concat,
    vpl_intersection,
    vpl_prefix_member,
    vpl_reverse,
    vpl_star,
    vpl_union,
)
from nestword.machines import (
    Fsa,
    Nvpa,
    Vpa,
    astar_bstar_fsa,
    fsa_run,
    nvpa_run,
    vpa_run,
)
from nestword.groups import build_free_vpa
from nestword.words import Tag, all_tagged_words, decode, parse_word, reverse as reverse_word


def plain_words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def singleton_vpa(text, alphabet=("a", "b")) -> Vpa:
    """Chain machine accepting exactly the given tagged word."""
    tw = parse_word(text)
    states = [f"c{i}" for i in range(len(tw) + 1)]
    stack = [f"k{i}" for i in range(len(tw))]
    delta_c, delta_i, delta_r = {}, {}, {}
    sim_stack = ["$"]
    for i, sym in enumerate(tw):
        if sym.tag is Tag.CALL:
            delta_c[(states[i], sym.base)] = (states[i + 1], stack[i])
            sim_stack.append(stack[i])
        elif sym.tag is Tag.INTERNAL:
            delta_i[(states[i], sym.base)] = states[i + 1]
        else:
            delta_r[(states[i], sym.base, sim_stack[-1])] = states[i + 1]
            if len(sim_stack) > 1:
                sim_stack.pop()
    return Vpa(
        alphabet, states, stack, "$", states[0], {states[-1]},
        set(stack), delta_c, delta_i, delta_r,
    )


def empty_vpa(alphabet=("a", "b")) -> Vpa:
    return Vpa(alphabet, {"q"}, set(), "$", "q", set(), set(), {}, {}, {})


def all_accepting_vpa(alphabet=("a", "b")) -> Vpa:
    delta_c = {("q", a): ("q", "g") for a in alphabet}
    delta_i = {("q", a): "q" for a in alphabet}
    delta_r = {("q", a, g): "q" for a in alphabet for g in ("g", "$")}
    return Vpa(alphabet, {"q"}, {"g"}, "$", "q", {"q"}, {"g"}, delta_c, delta_i, delta_r)


# ---------------------------------------------------------------------------
# regular closures


def test_reg_complement_involution():
    m = astar_bstar_fsa()
    twice = reg_complement(reg_complement(m))
    for w in plain_words(("a", "b"), 8):
        assert fsa_run(twice, w) == fsa_run(m, w)


def test_reg_complement_flips():
    m = astar_bstar_fsa()
    c = reg_complement(m)
    for w in plain_words(("a", "b"), 6):
        assert fsa_run(c, w) != fsa_run(m, w)


def test_reg_intersection_with_universe():
    m = astar_bstar_fsa()
    universe = Fsa(("a", "b"), {"u"}, "u", {"u"}, {("u", "a"): "u", ("u", "b"): "u"})
    inter = reg_intersection(m, universe)
    for w in plain_words(("a", "b"), 6):
        assert fsa_run(inter, w) == fsa_run(m, w)


def test_reg_concat_single_letters():
    a = Fsa(("a", "b"), {0, 1}, 0, {1}, {(0, "a"): 1})
    b = Fsa(("a", "b"), {0, 1}, 0, {1}, {(0, "b"): 1})
    cat = reg_concat(a, b)
    for w in plain_words(("a", "b"), 4):
        assert fsa_run(cat, w) == (w == ("a", "b"))


def test_reg_ops_against_oracles_random():
    rng = random.Random(41)
    words = list(plain_words(("c", "d"), 6))
    for _ in range(5):
        m1, m2 = random_fsa(rng), random_fsa(rng)
        mem1 = {w: fsa_run(m1, w) for w in words}
        mem2 = {w: fsa_run(m2, w) for w in words}
        union = reg_union(m1, m2)
        inter = reg_intersection(m1, m2)
        comp = reg_complement(m1)
        cat = reg_concat(m1, m2)
        star = reg_star(m1)
        rev = reg_reverse(m1)
        pre = reg_prefix(m1)
        accepted = [w for w in words if mem1[w]]
        prefixes = {w[:k] for w in accepted for k in range(len(w) + 1)}
        for w in words:
            assert fsa_run(union, w) == (mem1[w] or mem2[w])
            assert fsa_run(inter, w) == (mem1[w] and mem2[w])
            assert fsa_run(comp, w) == (not mem1[w])
            assert fsa_run(cat, w) == any(
                mem1[w[:k]] and mem2[w[k:]] for k in range(len(w) + 1)
            )
            assert fsa_run(rev, w) == mem1[w[::-1]]
            if len(w) <= 5:
                assert fsa_run(star, w) == star_oracle(mem1, w)
            if w in prefixes:
                assert fsa_run(pre, w)


def test_reg_prefix_rejects_nonprefixes():
    # {ab} has prefixes ε, a, ab
    m = Fsa(("a", "b"), {0, 1, 2}, 0, {2}, {(0, "a"): 1, (1, "b"): 2})
    pre = reg_prefix(m)
    assert fsa_run(pre, "")
    assert fsa_run(pre, "a")
    assert fsa_run(pre, "ab")
    assert not fsa_run(pre, "b")
    assert not fsa_run(pre, "abb")


def test_reg_alphabet_mismatch():
    m1 = Fsa(("a",), {0}, 0, {0}, {})
    m2 = Fsa(("b",), {0}, 0, {0}, {})
    with pytest.raises(AlphabetMismatch):
        reg_union(m1, m2)


# ---------------------------------------------------------------------------
# VPL boolean closures


def test_vpl_union_with_empty_language():
    m = singleton_vpa("<a a>")
    u = vpl_union(m, empty_vpa())
    for tw in all_tagged_words(("a", "b"), 6):
        assert vpa_run(u, tw).accepted == vpa_run(m, tw).accepted


def test_vpl_union_two_singletons():
    u = vpl_union(singleton_vpa("<a a>"), singleton_vpa("b"))
    expected = {parse_word("<a a>"), parse_word("b")}
    assert vpa_language(u, 4) == expected


def test_vpl_union_commutes():
    m1, m2 = singleton_vpa("<a b>"), singleton_vpa("b a")
    left, right = vpl_union(m1, m2), vpl_union(m2, m1)
    assert vpa_language(left, 5) == vpa_language(right, 5)


def test_vpl_intersection_idempotent():
    m = singleton_vpa("<a a>")
    i = vpl_intersection(m, m)
    for tw in all_tagged_words(("a", "b"), 6):
        assert vpa_run(i, tw).accepted == vpa_run(m, tw).accepted


def test_vpl_intersection_free_with_complement_empty():
    m = build_free_vpa(1).automaton
    i = vpl_intersection(m, vpl_complement(m))
    assert vpa_language(i, 6) == set()


def test_vpl_intersection_of_overlapping_sets():
    m1 = vpl_union(singleton_vpa("<a a>"), singleton_vpa("b"))
    m2 = vpl_union(singleton_vpa("b"), singleton_vpa("<a b>"))
    inter = vpl_intersection(m1, m2)
    assert vpa_language(inter, 4) == {parse_word("b")}


def test_vpl_complement_flips_membership():
    rng = random.Random(17)
    m = random_vpa(rng)
    c = vpl_complement(m)
    for tw in all_tagged_words(("a", "b"), 6):
        assert vpa_run(c, tw).accepted != vpa_run(m, tw).accepted


def test_vpl_complement_of_universe_is_empty():
    c = vpl_complement(all_accepting_vpa())
    assert vpa_language(c, 5) == set()


def test_vpl_double_complement():
    m = singleton_vpa("<a b>")
    twice = vpl_complement(vpl_complement(m))
    for tw in all_tagged_words(("a", "b"), 6):
        assert vpa_run(twice, tw).accepted == vpa_run(m, tw).accepted


def test_vpl_boolean_outputs_are_deterministic_vpa():
    m1, m2 = singleton_vpa("<a a>"), singleton_vpa("b")
    assert isinstance(vpl_union(m1, m2), Vpa)
    assert isinstance(vpl_intersection(m1, m2), Vpa)
    assert isinstance(vpl_complement(m1), Vpa)


def test_vpl_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        vpl_union(singleton_vpa("a", ("a",)), singleton_vpa("b", ("b",)))


# ---------------------------------------------------------------------------
# concatenation, star, reversal


def test_vpl_concat_with_epsilon_language():
    m = singleton_vpa("<a b>")
    eps = Vpa(("a", "b"), {"q"}, set(), "$", "q", {"q"}, set(), {}, {}, {})
    cat = vpl_concat(m, eps)
    for tw in all_tagged_words(("a", "b"), 5):
        assert nvpa_run(cat, tw) == vpa_run(m, tw).accepted


def test_vpl_concat_matches_pending_call_with_later_return():
    cat = vpl_concat(singleton_vpa("<a"), singleton_vpa("a>"))
    assert nvpa_run(cat, parse_word("<a a>"))
    assert not nvpa_run(cat, parse_word("<a a"))
    assert not nvpa_run(cat, parse_word("a> a>"))


def test_vpl_concat_single_letters():
    cat = vpl_concat(singleton_vpa("a"), singleton_vpa("b"))
    assert vpa_language_nvpa(cat, 4) == {parse_word("a b")}


def test_vpl_concat_nested_then_internal():
    cat = vpl_concat(singleton_vpa("<a a>"), singleton_vpa("b"))
    assert nvpa_run(cat, parse_word("<a a> b"))
    assert not nvpa_run(cat, parse_word("b <a a>"))


def vpa_language_nvpa(m: Nvpa, max_len: int) -> set:
    return {w for w in all_tagged_words(m.alphabet, max_len) if nvpa_run(m, w)}


def test_vpl_star_of_empty_language():
    st = vpl_star(empty_vpa())
    assert vpa_language_nvpa(st, 4) == {()}


def test_vpl_star_iterates():
    st = vpl_star(singleton_vpa("<a a>"))
    block = parse_word("<a a>")
    for k in range(4):
        assert nvpa_run(st, block * k)
    assert not nvpa_run(st, parse_word("<a"))
    assert not nvpa_run(st, parse_word("<a <a a> a> "))


def test_vpl_star_contains_language_and_epsilon():
    m = singleton_vpa("<a b>")
    st = vpl_star(m)
    assert nvpa_run(st, ())
    for tw in all_tagged_words(("a", "b"), 5):
        if vpa_run(m, tw).accepted:
            assert nvpa_run(st, tw)


def test_vpl_reverse_singleton():
    rev = vpl_reverse(singleton_vpa("<a b>"))
    assert vpa_language_nvpa(rev, 4) == {parse_word("<b a>")}


def test_vpl_reverse_fixes_self_reverse_language():
    m = singleton_vpa("<a a>")  # its own reversal
    rev = vpl_reverse(m)
    assert vpa_language_nvpa(rev, 4) == vpa_language(m, 4)


def test_vpl_double_reverse():
    rng = random.Random(23)
    m = random_vpa(rng)
    rev = vpl_reverse(m)
    for tw in all_tagged_words(("a", "b"), 5):
        assert nvpa_run(rev, reverse_word(tw)) == vpa_run(m, tw).accepted


def test_vpl_constructions_against_oracles_random():
    rng = random.Random(97)
    words = list(all_tagged_words(("a", "b"), 5))
    for _ in range(4):
        m1, m2 = random_vpa(rng), random_vpa(rng)
        mem1 = {w: vpa_run(m1, w).accepted for w in words}
        mem2 = {w: vpa_run(m2, w).accepted for w in words}
        cat = vpl_concat(m1, m2)
        st = vpl_star(m1)
        rev = vpl_reverse(m1)
        for w in words:
            assert nvpa_run(cat, w) == concat_oracle(mem1, mem2, w)
            assert nvpa_run(rev, w) == reverse_oracle(mem1, w)
            if len(w) <= 4:
                assert nvpa_run(st, w) == star_oracle(mem1, w)


# ---------------------------------------------------------------------------
# prefix closure


def test_prefix_of_accepted_words_are_members():
    m = build_free_vpa(1).automaton
    decider = PrefixDecider(m)
    for tw in all_tagged_words(m.alphabet, 6):
        if vpa_run(m, tw).accepted:
            for k in range(len(tw) + 1):
                assert decider.member(tw[:k])


def test_prefix_free_vpa_call_extends():
    m = build_free_vpa(2).automaton
    assert vpl_prefix_member(m, parse_word("<x1"))
    assert vpl_prefix_member(m, parse_word("<x1 <x2"))
    # a call on the inverse of the pending letter can never be completed:
    # the canonical matching would have cancelled it as a return
    assert not vpl_prefix_member(m, parse_word("<x1 <x1'"))
    # an internal letter kills the run for every extension
    assert not vpl_prefix_member(m, parse_word("x1"))


def test_prefix_against_extension_oracle_random():
    rng = random.Random(71)
    words = list(all_tagged_words(("a", "b"), 5))
    for _ in range(4):
        m = random_vpa(rng, n_stack=rng.choice([1, 2]))
        decider = PrefixDecider(m)
        oracle = ExtensionOracle(m, start_height_max=6)
        for w in words:
            assert decider.member(w) == oracle.member(w)


# ---------------------------------------------------------------------------
# shuffle


def test_shuffle_with_epsilon_regular_language():
    m = singleton_vpa("<a b>")
    eps_only = Fsa(("c",), {"r"}, "r", {"r"}, {})
    sh = shuffle(m, eps_only)
    for tw in all_tagged_words(("a", "b"), 4):
        assert vpa_run(sh, tw).accepted == vpa_run(m, tw).accepted


def test_shuffle_three_letter_listing():
    m = singleton_vpa("<a a>", alphabet=("a",))
    r = Fsa(("c",), {0, 1}, 0, {1}, {(0, "c"): 1})  # exactly "c"
    sh = shuffle(m, r)
    length3 = {w for w in all_tagged_words(("a", "c"), 3) if len(w) == 3 and vpa_run(sh, w).accepted}
    assert length3 == {
        parse_word("c <a a>"),
        parse_word("<a c a>"),
        parse_word("<a a> c"),
    }
    # and those are exactly the interleavings
    expected = {w for w in interleavings(parse_word("<a a>"), internal_word("c"))}
    assert length3 == expected


def test_shuffle_membership_against_projection_oracle():
    rng = random.Random(13)
    m, r = random_vpa(rng), random_fsa(rng)
    sh = shuffle(m, r)
    for w in all_tagged_words(("a", "b", "c", "d"), 4):
        assert vpa_run(sh, w).accepted == shuffle_oracle(m, r, w)


def test_shuffle_preserves_stack_height_profile():
    rng = random.Random(29)
    m, r = random_vpa(rng), random_fsa(rng)
    sh = shuffle(m, r)
    vpa_letters = set(m.alphabet)
    for w in all_tagged_words(("a", "b", "c", "d"), 4):
        run = vpa_run(sh, w, record_trace=True)
        if not run.accepted:
            continue
        heights = [
            len(config.stack)
            for sym, config in zip(w, run.trace[1:])
            if sym.base in vpa_letters
        ]
        projection = tuple(sym for sym in w if sym.base in vpa_letters)
        inner = vpa_run(m, projection, record_trace=True)
        assert heights == [len(c.stack) for c in inner.trace[1:]]


def test_shuffle_requires_disjoint_alphabets():
    with pytest.raises(NonDisjointAlphabets):
        shuffle(singleton_vpa("a"), astar_bstar_fsa())


# ---------------------------------------------------------------------------
# finite re-labeling


def test_relabel_identity():
    m = singleton_vpa("<a b>")
    image = relabel_image(m, identity_relabeling(("a", "b")))
    for tw in all_tagged_words(("a", "b"), 5):
        assert nvpa_run(image, tw) == vpa_run(m, tw).accepted


def swap_relabeling():
    pairs = (("a", "b"), ("b", "a"))
    return Relabeling(Fsa(pairs, {"p"}, "p", {"p"}, {("p", p): "p" for p in pairs}))


def test_relabel_swap():
    m = singleton_vpa("<a a>")
    image = relabel_image(m, swap_relabeling())
    assert vpa_language_nvpa(image, 4) == {parse_word("<b b>")}


def test_relabel_preserves_matching_and_length():
    phi = swap_relabeling()
    for tw in all_tagged_words(("a", "b"), 4):
        for out in phi.apply(tw):
            assert len(out) == len(tw)
            assert [s.tag for s in out] == [s.tag for s in tw]
            assert decode(out).matching == decode(tw).matching


def test_relabeling_functional_check():
    assert swap_relabeling().is_functional(4)
    pairs = (("a", "a"), ("a", "b"))
    forked = Relabeling(Fsa(pairs, {"p"}, "p", {"p"}, {("p", p): "p" for p in pairs}))
    assert not forked.is_functional(2)
