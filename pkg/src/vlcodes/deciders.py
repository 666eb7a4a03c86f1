"""Decide the error detection/correction conditions of a regular code.

For a code X and a channel relation tau = tau_{d,k}:

* c1  X is independent for the anti-reflexive part of tau (detection),
* c2  tau(x) and tau(y) meet only when x = y (correction),
* c3  X is maximal among such independent codes,
* c4  the reflexive image tau(X) is again a code.

Every report is ``holds``, ``fails`` (with a witness) or
``unknown_open_problem`` for the one combination that has no known
decision procedure: c1/c2 for the factor metric on an infinite code.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import automata, codes, transducers
from .automata import Language, Nfa
from .words import Alphabet, MetricSpec, ThetaSpec, d_factor, neighborhood

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown_open_problem"
STATUSES = (HOLDS, FAILS, UNKNOWN)
CONDITIONS = ("c1", "c2", "c3", "c4")


class NotACodeError(ValueError):
    def __init__(self, ambiguity: Optional[codes.Ambiguity], message: str = ""):
        if ambiguity is not None and not message:
            message = (f"not a code: {ambiguity.word!r} = "
                       f"{'.'.join(ambiguity.left)} = {'.'.join(ambiguity.right)}")
        super().__init__(message or "not a code")
        self.ambiguity = ambiguity


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    metric: MetricSpec
    status: str
    witness: Optional[tuple[str, ...]] = None
    notes: str = ""

    def __post_init__(self):
        if self.condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.condition!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAILS and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "metric": self.metric.label,
            "k": self.metric.k,
            "status": self.status,
            "witness": list(self.witness) if self.witness is not None else None,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ConditionReport:
        witness = data.get("witness")
        return cls(
            data["condition"],
            MetricSpec.from_label(data["metric"], data["k"]),
            data["status"],
            tuple(witness) if witness is not None else None,
            data.get("notes", ""),
        )


def require_code(x: Language) -> None:
    if x.accepts(""):
        raise NotACodeError(None, "the empty word is never part of a code")
    sp = codes.sardinas_patterson(x)
    if not sp.is_code:
        raise NotACodeError(sp.ambiguity)


def _pair_key(alphabet: Alphabet, pair):
    x, y = pair
    return (len(x) + len(y), alphabet.sort_key(x), alphabet.sort_key(y))


def _finite_words(x: Language) -> Optional[list[str]]:
    return automata.words_of(x) if automata.is_finite(x) else None


def _reversed_pair(pair):
    return tuple(w[::-1] for w in pair)


def _theta_set(x: Language, theta: ThetaSpec) -> Nfa:
    """theta(X): a letter morphism, preceded by a reversal when theta is anti."""
    lang = automata.reverse(x) if theta.anti else automata.as_nfa(x)
    return automata.map_letters(lang, theta.image)


def _check_metric(x: Language, metric: MetricSpec) -> None:
    if metric.k < 1:
        raise ValueError("conditions are defined for k >= 1")
    if metric.theta is not None:
        metric.theta.check_alphabet(x.alphabet)


# --------------------------------------------------------------------------
# Anti-automorphism fixed points


@dataclass(frozen=True)
class FixedPointVerdict:
    holds: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.holds


def all_fixed_points(lang: Language, theta: ThetaSpec) -> FixedPointVerdict:
    """Whether theta(w) = w for every w in ``lang`` (theta an anti-automorphism).

    Write theta(w) = h(reverse(w)).  The words with theta(w) != w form the
    context-free language of
        S -> a S b    (a = h(b) and b = h(a))
        S -> a M b    (otherwise)
        S -> c        (c != h(c)),        M -> any word,
    which is intersected with the DFA of ``lang`` (triple construction on
    state pairs) and tested for emptiness.  The witness is a shortest such word.
    """
    if not theta.anti:
        raise ValueError("all_fixed_points expects an anti-automorphism")
    theta.check_alphabet(lang.alphabet)
    d = automata.minimize(lang)
    alphabet = d.alphabet
    live = d.live
    if d.initial not in live:
        return FixedPointVerdict(True)
    useful = sorted(q for q in automata._bfs_order(d.delta, d.initial) if q in live)
    ok = set(useful)
    h = theta.image

    preds: dict[tuple[int, str], list[int]] = {}
    for p in useful:
        for c, r in zip(alphabet, d.delta[p]):
            if r in ok:
                preds.setdefault((r, c), []).append(p)

    def step(p, c):
        r = d.delta[p][alphabet.index(c)]
        return r if r in ok else None

    # shortest connecting word between any two useful states
    paths: dict[int, dict[int, str]] = {}
    for p in useful:
        found = {p: ""}
        queue = deque([p])
        while queue:
            q = queue.popleft()
            for c, r in zip(alphabet, d.delta[q]):
                if r in ok and r not in found:
                    found[r] = found[q] + c
                    queue.append(r)
        paths[p] = found

    def key(w):
        return alphabet.sort_key(w)

    def matched(a, b):
        return a == h(b) and b == h(a)

    best: dict[tuple[int, int], str] = {}

    def offer(pair, word, heap):
        if pair not in best or key(word) < key(best[pair]):
            best[pair] = word
            heapq.heappush(heap, (key(word), word, pair))

    heap: list = []
    for p in useful:
        for c in alphabet:
            q = step(p, c)
            if q is not None and h(c) != c:
                offer((p, q), c, heap)
        for a in alphabet:
            p2 = step(p, a)
            if p2 is None:
                continue
            for q2, middle in paths[p2].items():
                for b in alphabet:
                    q = step(q2, b)
                    if q is not None and not matched(a, b):
                        offer((p, q), a + middle + b, heap)
    done = set()
    while heap:
        _, word, pair = heapq.heappop(heap)
        if pair in done or best[pair] != word:
            continue
        done.add(pair)
        p2, q2 = pair
        for b in alphabet:
            q = step(q2, b)
            if q is None or not matched(h(b), b):
                continue
            for p in preds.get((p2, h(b)), ()):
                offer((p, q), h(b) + word + b, heap)
    candidates = [best[(d.initial, f)] for f in d.final if (d.initial, f) in best]
    if not candidates:
        return FixedPointVerdict(True)
    return FixedPointVerdict(False, min(candidates, key=key))


# --------------------------------------------------------------------------
# Conditions


def _report(condition, metric, status, witness=None, notes=""):
    return ConditionReport(condition, metric, status, witness, notes)


def _prefix_pair(x: Language, k: int):
    t = transducers.prefix_transducer(x.alphabet, k, strict=True)
    return transducers.restricted_emptiness(t, x, x)


def _theta_c1(x: Language, metric: MetricSpec) -> ConditionReport:
    theta = metric.theta
    if not theta.anti:
        t = transducers.theta_transducer(x.alphabet, theta, strict=True)
        res = transducers.restricted_emptiness(t, x, x)
        if res.empty:
            return _report("c1", metric, HOLDS)
        return _report("c1", metric, FAILS, res.witness,
                       "theta maps a codeword onto a different codeword")
    both = automata.intersection(x, _theta_set(x, theta))
    fixed = all_fixed_points(both, theta)
    if fixed.holds:
        return _report("c1", metric, HOLDS, notes="every codeword in X ∩ theta(X) is a fixed point")
    y = fixed.witness
    origin = theta.apply(y, theta.order - 1)
    return _report("c1", metric, FAILS, (origin, y),
                   "theta maps a codeword onto a different codeword")


def _factor_pairs(words: list[str], alphabet: Alphabet, related):
    pairs = [(x, y) for x, y in itertools.permutations(words, 2) if related(x, y)]
    return min(pairs, key=lambda pr: _pair_key(alphabet, pr)) if pairs else None


def decide_c1(x: Language, metric: MetricSpec, checked: bool = False) -> ConditionReport:
    _check_metric(x, metric)
    if not checked:
        require_code(x)
    if metric.kind == "prefix":
        res = _prefix_pair(x, metric.k)
        if res.empty:
            return _report("c1", metric, HOLDS)
        return _report("c1", metric, FAILS, res.witness, "distinct codewords within distance k")
    if metric.kind == "suffix":
        res = _prefix_pair(automata.reverse(x), metric.k)
        if res.empty:
            return _report("c1", metric, HOLDS)
        return _report("c1", metric, FAILS, _reversed_pair(res.witness),
                       "distinct codewords within distance k")
    if metric.kind == "factor":
        words = _finite_words(x)
        if words is None:
            return _report("c1", metric, UNKNOWN,
                           notes="factor metric on an infinite code: no decision procedure is known")
        pair = _factor_pairs(words, x.alphabet, lambda a, b: d_factor(a, b) <= metric.k)
        if pair is None:
            return _report("c1", metric, HOLDS)
        return _report("c1", metric, FAILS, pair, "distinct codewords within distance k")
    return _theta_c1(x, metric)


def decide_c2(x: Language, metric: MetricSpec, checked: bool = False) -> ConditionReport:
    _check_metric(x, metric)
    if not checked:
        require_code(x)
    if metric.kind in ("prefix", "suffix"):
        # neighbourhoods of x and y meet iff d(x, y) <= 2k
        lang = x if metric.kind == "prefix" else automata.reverse(x)
        res = _prefix_pair(lang, 2 * metric.k)
        if res.empty:
            return _report("c2", metric, HOLDS)
        pair = res.witness if metric.kind == "prefix" else _reversed_pair(res.witness)
        return _report("c2", metric, FAILS, pair, "the neighbourhoods of two codewords meet")
    if metric.kind == "factor":
        words = _finite_words(x)
        if words is None:
            return _report("c2", metric, UNKNOWN,
                           notes="factor metric on an infinite code: no decision procedure is known")
        hoods = {w: neighborhood(w, metric, x.alphabet) for w in words}
        pair = _factor_pairs(words, x.alphabet, lambda a, b: not hoods[a].isdisjoint(hoods[b]))
        if pair is None:
            return _report("c2", metric, HOLDS)
        return _report("c2", metric, FAILS, pair, "the neighbourhoods of two codewords meet")
    # for theta, detection and correction coincide
    c1 = _theta_c1(x, metric)
    words = _finite_words(x)
    if words is not None:
        hoods = {w: neighborhood(w, metric, x.alphabet) for w in words}
        brute = any(not hoods[a].isdisjoint(hoods[b]) for a, b in itertools.permutations(words, 2))
        if brute == c1.holds:
            raise AssertionError("theta c2 disagrees with the finite neighbourhood check")
    note = "same verdict as c1 for theta metrics"
    if c1.notes:
        note = f"{note}; {c1.notes}"
    return _report("c2", metric, c1.status, c1.witness, note)


def decide_c3(x: Language, metric: MetricSpec, checked: bool = False) -> ConditionReport:
    _check_metric(x, metric)
    if not checked:
        require_code(x)
    c1 = decide_c1(x, metric, checked=True)
    if c1.status == FAILS:
        return _report("c3", metric, FAILS, c1.witness,
                       "not independent, so not maximal among independent codes")
    complete = codes.is_complete(x)
    mu = codes.measure(x)
    notes = [f"measure {mu}"]
    if c1.status == UNKNOWN:
        notes.append("maximality-given-independence: independence itself is undecided")
    if complete.holds:
        return _report("c3", metric, HOLDS, notes="; ".join(notes))
    notes.insert(0, "not complete; the witness is not a factor of any word of X*")
    return _report("c3", metric, FAILS, (complete.witness,), "; ".join(notes))


def channel_image(x: Language, metric: MetricSpec) -> Nfa:
    """The reflexive image tau(X) for the metric's relation."""
    alphabet = x.alphabet
    if metric.kind == "prefix":
        return transducers.image(transducers.prefix_transducer(alphabet, metric.k), x)
    if metric.kind == "suffix":
        t = transducers.prefix_transducer(alphabet, metric.k)
        return automata.reverse(transducers.image(t, automata.reverse(x)))
    if metric.kind == "factor":
        return transducers.image(transducers.factor_transducer(alphabet, metric.k), x)
    if metric.theta.anti:
        return automata.union(x, _theta_set(x, metric.theta))
    return transducers.image(transducers.theta_transducer(alphabet, metric.theta), x)


def decide_c4(x: Language, metric: MetricSpec, checked: bool = False) -> ConditionReport:
    _check_metric(x, metric)
    if not checked:
        require_code(x)
    img = channel_image(x, metric)
    if img.accepts(""):
        return _report("c4", metric, FAILS, ("",), "the image contains the empty word")
    sp = codes.sardinas_patterson(img)
    if sp.is_code:
        return _report("c4", metric, HOLDS)
    amb = sp.ambiguity
    return _report("c4", metric, FAILS, (amb.word,),
                   f"{amb.word} = {'.'.join(amb.left)} = {'.'.join(amb.right)}")


DECIDERS = {"c1": decide_c1, "c2": decide_c2, "c3": decide_c3, "c4": decide_c4}


def decide(condition: str, x: Language, metric: MetricSpec, checked: bool = False) -> ConditionReport:
    return DECIDERS[condition](x, metric, checked=checked)


def check_all(x: Language, metric: MetricSpec) -> list[ConditionReport]:
    require_code(x)
    return [DECIDERS[c](x, metric, checked=True) for c in CONDITIONS]
