import itertools
import json
import random

import pytest

from vlcodes import automata, codes, deciders
from vlcodes.deciders import FAILS, HOLDS, UNKNOWN, ConditionReport, NotACodeError
from vlcodes.words import Alphabet, MetricSpec, ThetaSpec, neighborhood
from conftest import AB, ANTI_SWAP, DNA, SWAP, WATSON_CRICK, regex, words
from oracles import all_small_sets, measure_of_words, shortest_ambiguity

PREFIX1 = MetricSpec("prefix", 1)


def statuses(x, metric):
    return [r.status for r in deciders.check_all(x, metric)]


def test_prefix_profile_of_a_ba_bb():
    reports = deciders.check_all(words("a", "ba", "bb"), PREFIX1)
    assert [r.status for r in reports] == [HOLDS, FAILS, HOLDS, FAILS]
    assert reports[1].witness == ("ba", "bb")
    assert reports[3].witness == ("",)


def test_prefix_profile_of_bifix_regex():
    x = regex("ab*a|ba*b")
    assert statuses(x, PREFIX1) == [HOLDS, HOLDS, HOLDS, FAILS]
    assert statuses(x, MetricSpec("suffix", 1)) == [HOLDS, HOLDS, HOLDS, FAILS]


def test_factor_profile_of_a_ba_bb():
    reports = deciders.check_all(words("a", "ba", "bb"), MetricSpec("factor", 1))
    assert reports[0].status == FAILS and set(reports[0].witness) == {"a", "ba"}
    assert reports[1].status == FAILS
    assert reports[2].status == FAILS
    assert reports[3].status == FAILS


def test_factor_metric_on_infinite_code_is_open():
    x = regex("ab*a|ba*b")
    c1 = deciders.decide_c1(x, MetricSpec("factor", 1))
    c2 = deciders.decide_c2(x, MetricSpec("factor", 1))
    assert c1.status == c2.status == UNKNOWN
    c3 = deciders.decide_c3(x, MetricSpec("factor", 1))
    assert c3.status == HOLDS and "maximality-given-independence" in c3.notes


def test_theta_examples():
    auto = MetricSpec("theta", 1, SWAP)
    anti = MetricSpec("theta", 1, ANTI_SWAP)
    assert statuses(regex("a*b"), auto) == [HOLDS, HOLDS, HOLDS, FAILS]
    assert statuses(regex("a*b"), anti) == [HOLDS, HOLDS, HOLDS, FAILS]
    reports = deciders.check_all(regex("aaa*b"), anti)
    assert [r.status for r in reports] == [HOLDS, HOLDS, FAILS, HOLDS]
    assert reports[2].witness == ("bb",)


def test_watson_crick_profile():
    z = automata.from_words(["A", "C", "GA", "GG", "GT", "GCA", "GCC", "GCG", "GCT"], DNA)
    metric = MetricSpec("theta", 1, WATSON_CRICK)
    reports = deciders.check_all(z, metric)
    assert [r.status for r in reports] == [HOLDS, HOLDS, FAILS, FAILS]
    assert "3/4" in reports[2].notes


def test_swap_on_single_letters_is_not_independent():
    r = deciders.decide_c1(words("a", "b"), MetricSpec("theta", 1, SWAP))
    assert r.status == FAILS and set(r.witness) == {"a", "b"}


def test_non_codes_are_rejected():
    with pytest.raises(NotACodeError) as exc:
        deciders.check_all(words("a", "ab", "ba"), PREFIX1)
    assert exc.value.ambiguity.word == "aba"


def test_fixed_points_of_anti_automorphisms():
    assert deciders.all_fixed_points(words("ab"), ANTI_SWAP).holds
    v = deciders.all_fixed_points(words("a", "ab"), ANTI_SWAP)
    assert not v.holds and v.witness == "a"
    assert deciders.all_fixed_points(automata.empty_language(AB), ANTI_SWAP).holds
    assert deciders.all_fixed_points(regex("(ab)*"), ANTI_SWAP).holds
    assert not deciders.all_fixed_points(regex("(ab)*(a|b)*"), ANTI_SWAP).holds


def test_fixed_points_against_brute_force():
    abc = Alphabet("abc")
    rng = random.Random(3)
    pool = list(abc.words(4))
    for theta in (ThetaSpec.parse("a:b,b:c,c:a", anti=True), ThetaSpec.parse("a:b,b:a", anti=True)):
        for _ in range(150):
            ws = rng.sample(pool, rng.randint(0, 5))
            v = deciders.all_fixed_points(automata.from_words(ws, abc), theta)
            moved = sorted((w for w in ws if theta.apply(w) != w), key=abc.sort_key)
            assert v.holds == (not moved)
            assert v.witness == (moved[0] if moved else None)


# --------------------------------------------------------------------------
# Brute force on small finite codes


METRICS = [
    MetricSpec("prefix", 1), MetricSpec("prefix", 2), MetricSpec("suffix", 1),
    MetricSpec("factor", 1), MetricSpec("theta", 1, SWAP), MetricSpec("theta", 1, ANTI_SWAP),
]


def _small_codes():
    rng = random.Random(11)
    found = [ws for ws in all_small_sets(4, 3) if codes.is_code(words(*ws))]
    return rng.sample(found, 150)


def brute_profile(ws, metric):
    balls = {w: neighborhood(w, metric, AB) for w in ws}
    c1 = not any(v in balls[w] for w, v in itertools.permutations(ws, 2))
    c2 = not any(balls[w] & balls[v] for w, v in itertools.permutations(ws, 2))
    c3 = c1 and measure_of_words(ws, 2) == 1
    image = set().union(*balls.values())
    c4 = "" not in image and shortest_ambiguity(image, 10) is None
    return [HOLDS if c else FAILS for c in (c1, c2, c3, c4)]


@pytest.mark.parametrize("ws", _small_codes(), ids="-".join)
def test_deciders_agree_with_brute_force(ws):
    x = words(*ws)
    for metric in METRICS:
        reports = deciders.check_all(x, metric)
        assert [r.status for r in reports] == brute_profile(ws, metric), metric.label
        for r in reports:
            if r.status != FAILS:
                continue
            if r.condition in ("c1", "c2"):
                a, b = r.witness
                assert a in ws and b in ws and a != b
                if r.condition == "c1":
                    assert metric.distance(a, b) <= metric.k
                else:
                    assert neighborhood(a, metric, AB) & neighborhood(b, metric, AB)


def test_reports_are_deterministic_and_round_trip():
    x = regex("ab*a|ba*b")
    for metric in (PREFIX1, MetricSpec("factor", 1), MetricSpec("theta", 1, ANTI_SWAP)):
        first = [r.to_dict() for r in deciders.check_all(x, metric)]
        second = [r.to_dict() for r in deciders.check_all(x, metric)]
        assert json.dumps(first) == json.dumps(second)
        back = [ConditionReport.from_dict(json.loads(json.dumps(d))) for d in first]
        assert [b.to_dict() for b in back] == first


def test_report_validation():
    with pytest.raises(ValueError):
        ConditionReport("c1", PREFIX1, FAILS)
    with pytest.raises(ValueError):
        ConditionReport("c5", PREFIX1, HOLDS)
    with pytest.raises(ValueError):
        deciders.decide_c1(words("a"), MetricSpec("prefix", 0))


INFINITE = ["ab*a|ba*b", "a*b", "aa*b", "(ab)*b", "ab*", "a(ab)*b", "(aa|bb)*ab", "a*bb|ba", "aab*"]


@pytest.mark.parametrize("source", INFINITE)
@pytest.mark.parametrize("metric", [METRICS[0], METRICS[1], METRICS[2], METRICS[4], METRICS[5]],
                         ids=lambda m: f"{m.label}{m.k}")
def test_exact_verdicts_match_bounded_enumeration(source, metric):
    x = regex(source)
    assert codes.is_code(x)
    ws = automata.enumerate_words(x, 8)
    for cond, decide in (("c1", deciders.decide_c1), ("c2", deciders.decide_c2)):
        r = decide(x, metric)
        if r.status == HOLDS:
            balls = {w: neighborhood(w, metric, AB) for w in ws}
            clash = (lambda w, v: v in balls[w]) if cond == "c1" else (lambda w, v: balls[w] & balls[v])
            assert not any(clash(w, v) for w, v in itertools.permutations(ws, 2))
        else:
            a, b = r.witness
            assert x.accepts(a) and x.accepts(b) and a != b
