import itertools

import pytest
from hypothesis import given, strategies as st

from vlcodes.words import (
    Alphabet, AlphabetError, MetricSpec, ThetaSpec, d_factor, d_prefix, d_suffix, d_theta,
    f1_step, is_overlapping_free, longest_common_factor_length, neighborhood,
)
from conftest import AB, ANTI_SWAP, SWAP, WATSON_CRICK

SHORT = list(AB.words(4))
binary_words = st.text(alphabet="ab", max_size=9)


def test_distance_examples():
    assert d_prefix("abaa", "abbb") == 4
    assert d_prefix("", "ab") == 2
    assert d_suffix("aab", "bab") == 2
    assert d_factor("babababbab", "bbabbaababaa") == 12
    assert longest_common_factor_length("babababbab", "bbabbaababaa") == 5


def test_alphabet_validation():
    with pytest.raises(AlphabetError):
        Alphabet("a")
    with pytest.raises(AlphabetError):
        Alphabet("aba")
    assert AB.parse_word("eps") == ""
    assert AB.parse_word("ε") == ""
    with pytest.raises(AlphabetError):
        AB.parse_word("abc")
    assert list(AB.words(2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]


@pytest.mark.parametrize("dist", [d_prefix, d_suffix, d_factor])
def test_metric_axioms_exhaustive(dist):
    for w, v in itertools.product(AB.words(5), repeat=2):
        assert dist(w, v) == dist(v, w)
        assert (dist(w, v) == 0) == (w == v)


@pytest.mark.parametrize("dist", [d_prefix, d_suffix, d_factor])
def test_triangle_inequality_exhaustive(dist):
    for u, v, w in itertools.product(SHORT, repeat=3):
        assert dist(u, w) <= dist(u, v) + dist(v, w)


@given(binary_words, binary_words, binary_words)
def test_triangle_inequality_random(u, v, w):
    for dist in (d_prefix, d_suffix, d_factor):
        assert dist(u, w) <= dist(u, v) + dist(v, w)


@given(binary_words, binary_words)
def test_factor_distance_is_smallest(w, v):
    assert d_factor(w, v) <= min(d_prefix(w, v), d_suffix(w, v))


def test_factor_balls_are_iterated_single_steps():
    for k in (1, 2):
        metric = MetricSpec("factor", k)
        for w in AB.words(4):
            ball = neighborhood(w, metric, AB)
            brute = {v for v in AB.words(len(w) + k) if d_factor(w, v) <= k}
            assert ball == brute


def test_single_step_matches_distance_one():
    for w in AB.words(5):
        assert f1_step(w, AB) == {v for v in AB.words(len(w) + 1) if d_factor(w, v) <= 1}


@pytest.mark.parametrize("kind", ["prefix", "suffix"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_prefix_like_balls(kind, k):
    metric = MetricSpec(kind, k)
    for w in AB.words(4):
        brute = {v for v in AB.words(len(w) + k) if metric.distance(w, v) <= k}
        assert neighborhood(w, metric, AB) == brute


def test_doubled_prefix_ball_has_midpoints():
    # d_P(w, v) <= 2k exactly when some u is within k of both
    for k in (1, 2):
        for w, v in itertools.product(AB.words(4), repeat=2):
            ball_w = neighborhood(w, MetricSpec("prefix", k), AB)
            ball_v = neighborhood(v, MetricSpec("prefix", k), AB)
            assert (d_prefix(w, v) <= 2 * k) == bool(ball_w & ball_v)


def test_theta_order_and_application():
    assert SWAP.order == 2
    assert ANTI_SWAP.order == 2
    assert WATSON_CRICK.apply("AACG") == "CGTT"
    cycle = ThetaSpec.parse("a:b,b:c,c:a", anti=True)
    assert cycle.letter_order == 3
    assert cycle.order == 6
    for w in Alphabet("abc").words(4):
        assert cycle.apply(w, cycle.order) == w
        assert cycle.apply_inverse(cycle.apply(w)) == w
    assert ANTI_SWAP.apply("aab") == "abb"


def test_theta_parse_rejects_non_permutations():
    with pytest.raises(ValueError):
        ThetaSpec.parse("a:b")
    with pytest.raises(ValueError):
        ThetaSpec.parse("a:b,a:c,b:a")
    assert ThetaSpec.parse("a:a,b:b").letter_map == ()


def test_theta_distance():
    assert d_theta("ab", "ab", SWAP) == 0
    assert d_theta("ab", "ba", SWAP) == 1
    assert d_theta("ab", "aa", SWAP) == 2
    assert d_theta("aab", "abb", ANTI_SWAP) == 1
    with pytest.raises(ValueError):
        neighborhood("a", MetricSpec("theta", 2, SWAP), AB)


def test_metric_spec_labels_round_trip():
    for m in [MetricSpec("prefix", 2), MetricSpec("factor", 1), MetricSpec("theta", 1, ANTI_SWAP),
              MetricSpec("theta", 1, SWAP)]:
        assert MetricSpec.from_label(m.label, m.k) == m
    with pytest.raises(ValueError):
        MetricSpec("theta", 2, SWAP)
    with pytest.raises(ValueError):
        MetricSpec("prefix", 1, SWAP)


def test_overlapping_free():
    assert is_overlapping_free("bba")
    assert is_overlapping_free("bbbabba")
    assert not is_overlapping_free("aba")
    assert not is_overlapping_free("abab")
    with pytest.raises(ValueError):
        is_overlapping_free("")


@given(binary_words.filter(bool))
def test_overlapping_free_matches_border_definition(w):
    has_border = any(w[:i] == w[-i:] for i in range(1, len(w)))
    assert is_overlapping_free(w) == (not has_border)
