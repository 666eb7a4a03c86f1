import itertools
import re

import pytest
from hypothesis import given, strategies as st

from vlcodes import automata
from vlcodes.automata import Nfa, RegexError
from vlcodes.words import Alphabet, AlphabetError
from conftest import AB, regex, words

SAMPLE = list(AB.words(6))


def _tree():
    leaf = st.sampled_from(["a", "b", "ε"])
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            st.tuples(st.just("|"), kids, kids),
            st.tuples(st.just("."), kids, kids),
            st.tuples(st.just("*"), kids),
        ),
        max_leaves=7,
    )


def render(tree, python=False):
    if isinstance(tree, str):
        return "(?:)" if python and tree == "ε" else tree
    op, *kids = tree
    parts = [render(k, python) for k in kids]
    group = "(?:{})" if python else "({})"
    if op == "|":
        return group.format(parts[0] + "|" + parts[1])
    if op == ".":
        return group.format(parts[0]) + group.format(parts[1])
    return group.format(parts[0]) + "*"


regexes = _tree()


@given(regexes)
def test_regex_matches_python_re(tree):
    lang = regex(render(tree))
    pattern = re.compile(render(tree, python=True))
    for w in SAMPLE:
        assert lang.accepts(w) == bool(pattern.fullmatch(w)), w


@given(regexes)
def test_minimize_and_determinize_preserve_language(tree):
    lang = regex(render(tree))
    d = automata.determinize(lang)
    m = automata.minimize(lang)
    for w in SAMPLE:
        assert lang.accepts(w) == d.accepts(w) == m.accepts(w)
    assert m.n_states <= d.n_states


@given(regexes, regexes)
def test_boolean_laws(t1, t2):
    l1, l2 = regex(render(t1)), regex(render(t2))
    comp = automata.complement
    assert automata.equivalent(comp(comp(l1)), l1).holds
    assert automata.equivalent(comp(automata.union(l1, l2)),
                               automata.intersection(comp(l1), comp(l2))).holds
    diff = automata.difference(l1, l2)
    for w in SAMPLE:
        assert diff.accepts(w) == (l1.accepts(w) and not l2.accepts(w))


@given(regexes)
def test_enumeration_agrees_with_membership(tree):
    lang = regex(render(tree))
    assert automata.enumerate_words(lang, 5) == [w for w in AB.words(5) if lang.accepts(w)]


@given(regexes)
def test_closures(tree):
    lang = regex(render(tree))
    members = automata.enumerate_words(lang, 6)
    fac = automata.factor_closure(lang)
    pre = automata.prefix_closure(lang)
    suf = automata.suffix_closure(lang)
    for w in AB.words(3):
        if any(w in m for m in members):
            assert fac.accepts(w)
        if any(m.startswith(w) for m in members):
            assert pre.accepts(w)
        if any(m.endswith(w) for m in members):
            assert suf.accepts(w)
    for m in members:
        for i, j in itertools.combinations_with_replacement(range(len(m) + 1), 2):
            assert fac.accepts(m[i:j])


@given(regexes, regexes)
def test_left_quotient_definition(t1, t2):
    l1, l2 = regex(render(t1)), regex(render(t2))
    q = automata.left_quotient(l1, l2)
    short = list(AB.words(3))
    for u in short:
        witness = any(l1.accepts(x) and l2.accepts(x + u) for x in short)
        if witness:
            assert q.accepts(u)


@given(regexes, regexes, regexes)
def test_quotient_composition(t1, t2, t3):
    l1, l2, l3 = (regex(render(t)) for t in (t1, t2, t3))
    lhs = automata.left_quotient(automata.concat(l1, l2), l3)
    rhs = automata.left_quotient(l2, automata.left_quotient(l1, l3))
    assert automata.equivalent(lhs, rhs).holds


@given(regexes)
def test_reverse_and_star(tree):
    lang = regex(render(tree))
    rev = automata.reverse(lang)
    st_ = automata.star(lang)
    for w in SAMPLE:
        assert rev.accepts(w) == lang.accepts(w[::-1])
    assert st_.accepts("")
    members = automata.enumerate_words(lang, 3)
    for x, y in itertools.product(members, repeat=2):
        assert st_.accepts(x + y)


@given(regexes)
def test_json_round_trip(tree):
    lang = regex(render(tree))
    back = Nfa.from_json(lang.to_json())
    assert back.to_json() == lang.to_json()
    assert automata.equivalent(back, lang).holds


def test_shortest_word_and_decisions():
    assert automata.shortest_word(regex("bb*a|ab")) == "ab"
    assert automata.is_empty(automata.empty_language(AB)).holds
    v = automata.is_universal(regex("a*"))
    assert not v.holds and v.witness == "b"
    assert automata.is_universal(regex("(a|b)*")).holds
    v = automata.equivalent(regex("a*"), regex("(aa)*"))
    assert not v.holds and v.witness == "a"
    assert automata.includes(regex("a*"), regex("(aa)*")).holds


def test_finiteness_and_words():
    assert automata.is_finite(words("a", "ba", "bb"))
    assert automata.words_of(words("bb", "a", "ba")) == ["a", "ba", "bb"]
    assert not automata.is_finite(regex("ab*a"))
    assert automata.lengths(words("a", "bb")) == {1, 2}
    assert automata.lengths(regex("ab*")) is None


def test_regex_errors_and_alphabet_checks():
    with pytest.raises(RegexError) as exc:
        automata.compile_regex("(ab", AB)
    assert exc.value.position == 3
    with pytest.raises(RegexError):
        automata.compile_regex("a|*", AB)
    with pytest.raises(RegexError) as exc:
        automata.compile_regex("ac", AB)
    assert exc.value.position == 1
    with pytest.raises(AlphabetError):
        automata.union(regex("a"), automata.compile_regex("A", Alphabet("AC")))


def test_minimal_dfa_is_canonical():
    a = automata.minimize(regex("(a|b)*abb"))
    b = automata.minimize(regex("(a|b)*a(bb)|abb|(a|b)*(a|b)abb"))
    assert a.key == b.key
    assert a.n_states == 4


@given(st.sets(st.text(alphabet="ab", min_size=1, max_size=4), max_size=4))
def test_factor_closure_of_finite_set_is_exact(ws):
    fac = automata.factor_closure(automata.from_words(ws, AB))
    for w in AB.words(4):
        assert fac.accepts(w) == (any(w in m for m in ws) or (w == "" and bool(ws)))
