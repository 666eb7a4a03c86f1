"""Finite transducers (rational word relations) and the channel relations
built from the prefix, suffix, factor and automorphism quasi-metrics.

Relations compose in left-to-right order: ``compose(t1, t2)`` relates x to z
when t1 relates x to some y and t2 relates y to z.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from . import automata
from .automata import EPS, Language, Nfa
from .words import Alphabet, AlphabetError, ThetaSpec

RELATION_KINDS = ("Pk", "uPk", "S1", "uS1", "Fk", "theta_hat", "u_theta")


class NotRationalError(ValueError):
    """The requested relation is not realized by any finite transducer."""


class UnboundedLagError(RuntimeError):
    """Diagonal exclusion needs more look-ahead than the configured bound."""


@dataclass(frozen=True, eq=False)
class Transducer:
    alphabet: Alphabet
    n_states: int
    initial: frozenset
    final: frozenset
    transitions: tuple  # (src, input label, output label, dst); labels are one symbol or EPS

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "transitions", tuple(sorted(set(self.transitions))))
        n = self.n_states
        for q in self.initial | self.final:
            if not 0 <= q < n:
                raise ValueError(f"state {q} out of range")
        for p, a, b, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"transition {(p, a, b, q)} leaves the state set")
            if a == EPS and b == EPS:
                raise ValueError("epsilon:epsilon transitions are not allowed")
            for c in (a, b):
                if c != EPS and c not in self.alphabet:
                    raise AlphabetError(f"label {c!r} not in alphabet {self.alphabet.symbols!r}")

    @cached_property
    def out(self) -> list[list[tuple[str, str, int]]]:
        adj: list[list[tuple[str, str, int]]] = [[] for _ in range(self.n_states)]
        for p, a, b, q in self.transitions:
            adj[p].append((a, b, q))
        return adj

    def relates(self, w: str, w2: str) -> bool:
        """Pair acceptance: the product of the transducer with {w} x {w2}."""
        start = [(q, 0, 0) for q in self.initial]
        seen = set(start)
        stack = list(start)
        while stack:
            q, i, j = stack.pop()
            if i == len(w) and j == len(w2) and q in self.final:
                return True
            for a, b, r in self.out[q]:
                ni, nj = i, j
                if a:
                    if i == len(w) or w[i] != a:
                        continue
                    ni += 1
                if b:
                    if j == len(w2) or w2[j] != b:
                        continue
                    nj += 1
                nxt = (r, ni, nj)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    def __call__(self, word: str) -> Nfa:
        return image(self, automata.from_words([word], self.alphabet))

    def to_dict(self) -> dict:
        return {
            "alphabet": self.alphabet.symbols,
            "states": self.n_states,
            "initial": sorted(self.initial),
            "final": sorted(self.final),
            "transitions": [list(t) for t in self.transitions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Transducer:
        return cls(
            Alphabet(data["alphabet"]),
            int(data["states"]),
            frozenset(data["initial"]),
            frozenset(data["final"]),
            tuple((int(p), str(a), str(b), int(q)) for p, a, b, q in data["transitions"]),
        )

    @classmethod
    def from_json(cls, text: str) -> Transducer:
        return cls.from_dict(json.loads(text))


def _normalized(alphabet: Alphabet, n: int, initial, final, transitions) -> Transducer:
    """Remove epsilon:epsilon moves by closure, then trim."""
    silent: list[list[int]] = [[] for _ in range(n)]
    loud: list[list[tuple[str, str, int]]] = [[] for _ in range(n)]
    for p, a, b, q in transitions:
        if a == EPS and b == EPS:
            silent[p].append(q)
        else:
            loud[p].append((a, b, q))
    new_final = set()
    new_trans = set()
    for p in range(n):
        reach = {p}
        stack = [p]
        while stack:
            for q in silent[stack.pop()]:
                if q not in reach:
                    reach.add(q)
                    stack.append(q)
        if reach & set(final):
            new_final.add(p)
        for r in reach:
            for a, b, q in loud[r]:
                new_trans.add((p, a, b, q))
    return trim(Transducer(alphabet, n, initial, new_final, tuple(new_trans)))


def trim(t: Transducer) -> Transducer:
    fwd: list[set[int]] = [set() for _ in range(t.n_states)]
    bwd: list[set[int]] = [set() for _ in range(t.n_states)]
    for p, _, _, q in t.transitions:
        fwd[p].add(q)
        bwd[q].add(p)

    def reach(starts, adj):
        seen = set(starts)
        stack = list(seen)
        while stack:
            for q in adj[stack.pop()]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    keep = sorted(reach(t.initial, fwd) & reach(t.final, bwd))
    if not keep:
        return Transducer(t.alphabet, 1, {0}, (), ())
    num = {q: i for i, q in enumerate(keep)}
    return Transducer(
        t.alphabet,
        len(keep),
        {num[q] for q in t.initial if q in num},
        {num[q] for q in t.final if q in num},
        tuple((num[p], a, b, num[q]) for p, a, b, q in t.transitions if p in num and q in num),
    )


# --------------------------------------------------------------------------
# Builders


def identity(alphabet: Alphabet) -> Transducer:
    return Transducer(alphabet, 1, {0}, {0}, tuple((0, c, c, 0) for c in alphabet))


def prefix_transducer(alphabet: Alphabet, k: int, strict: bool = False) -> Transducer:
    """Pairs at prefix distance at most k (``strict``: between 1 and k).

    State 0 copies the common prefix.  The divergent tails (u, u') leave
    through one of three gadgets: u' empty, u empty, or a bridge reading two
    different first letters followed by the rest of u and then of u'.  Every
    gadget state is final and counts |u| + |u'| against the budget k.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    states = {"copy": 0}

    def state(name):
        return states.setdefault(name, len(states))

    trans = [(0, c, c, 0) for c in alphabet]
    for used in range(1, k + 1):
        left, right = state(("left", used)), state(("right", used))
        prev_left = 0 if used == 1 else state(("left", used - 1))
        prev_right = 0 if used == 1 else state(("right", used - 1))
        for c in alphabet:
            trans.append((prev_left, c, EPS, left))
            trans.append((prev_right, EPS, c, right))
    if k >= 2:
        bridge = state(("mixed-in", 2))
        for a in alphabet:
            for b in alphabet:
                if a != b:
                    trans.append((0, a, b, bridge))
        for used in range(2, k):
            src_in = state(("mixed-in", used))
            dst_in, dst_out = state(("mixed-in", used + 1)), state(("mixed-out", used + 1))
            for c in alphabet:
                trans.append((src_in, c, EPS, dst_in))
                trans.append((src_in, EPS, c, dst_out))
                if used > 2:
                    trans.append((state(("mixed-out", used)), EPS, c, dst_out))
    final = set(range(1, len(states)))
    if not strict:
        final.add(0)
    return Transducer(alphabet, len(states), {0}, final, tuple(trans))


def suffix_one_transducer(alphabet: Alphabet, strict: bool = False) -> Transducer:
    """Pairs at suffix distance at most 1: one optional leading edit, then a copy."""
    trans = []
    for c in alphabet:
        trans += [(0, c, EPS, 1), (0, EPS, c, 1), (1, c, c, 1)]
        if not strict:
            trans.append((0, c, c, 2))
            trans.append((2, c, c, 2))
    final = {1} if strict else {0, 1, 2}
    return Transducer(alphabet, 3 if not strict else 2, {0}, final, tuple(trans))


def factor_transducer(alphabet: Alphabet, k: int) -> Transducer:
    """Pairs at factor distance at most k, as the k-th power of P_1 ∪ S_1."""
    if k < 1:
        raise ValueError("k must be at least 1")
    one = union(prefix_transducer(alphabet, 1), suffix_one_transducer(alphabet))
    result = one
    for _ in range(k - 1):
        result = compose(result, one)
    return result


def theta_transducer(alphabet: Alphabet, theta: ThetaSpec, strict: bool = False) -> Transducer:
    """Reflexive closure of an automorphism, or (``strict``) its anti-reflexive part."""
    if theta.anti:
        raise NotRationalError("an anti-automorphism is not a rational relation")
    theta.check_alphabet(alphabet)
    if not strict:
        # two branches: state 0 copies the word, state 1 applies theta to all of it
        trans = [(0, c, c, 0) for c in alphabet] + [(1, c, theta.image(c), 1) for c in alphabet]
        return Transducer(alphabet, 2, {0, 1}, {0, 1}, tuple(trans))
    # copy fixed letters, cross on the first moved letter, then apply theta letterwise
    trans = [(0, c, c, 0) for c in alphabet if theta.image(c) == c]
    trans += [(0, c, theta.image(c), 1) for c in theta.moved(alphabet)]
    trans += [(1, c, theta.image(c), 1) for c in alphabet]
    return Transducer(alphabet, 2, {0}, {1}, tuple(trans))


@dataclass(frozen=True)
class RelationSpec:
    kind: str
    k: int = 1
    theta: Optional[ThetaSpec] = None

    def __post_init__(self):
        if self.kind not in RELATION_KINDS:
            raise ValueError(f"unknown relation {self.kind!r}; expected one of {RELATION_KINDS}")
        if self.kind in ("theta_hat", "u_theta"):
            if self.theta is None:
                raise ValueError(f"{self.kind} needs a theta")
            if self.theta.anti:
                raise NotRationalError("an anti-automorphism is not a rational relation")
        elif self.theta is not None:
            raise ValueError(f"{self.kind} takes no theta")
        if self.kind in ("Pk", "uPk", "Fk") and self.k < 1:
            raise ValueError("k must be at least 1")
        if self.kind in ("S1", "uS1") and self.k != 1:
            raise ValueError("S1 relations have k = 1")


def build_relation(spec: RelationSpec, alphabet: Alphabet) -> Transducer:
    if spec.kind in ("Pk", "uPk"):
        return prefix_transducer(alphabet, spec.k, strict=spec.kind == "uPk")
    if spec.kind in ("S1", "uS1"):
        return suffix_one_transducer(alphabet, strict=spec.kind == "uS1")
    if spec.kind == "Fk":
        return factor_transducer(alphabet, spec.k)
    return theta_transducer(alphabet, spec.theta, strict=spec.kind == "u_theta")


# --------------------------------------------------------------------------
# Algebra


def _check_alphabets(t1, t2) -> Alphabet:
    if t1.alphabet != t2.alphabet:
        raise AlphabetError(f"alphabet mismatch: {t1.alphabet.symbols!r} vs {t2.alphabet.symbols!r}")
    return t1.alphabet


def union(t1: Transducer, t2: Transducer) -> Transducer:
    alphabet = _check_alphabets(t1, t2)
    s = t1.n_states
    return Transducer(
        alphabet,
        s + t2.n_states,
        t1.initial | {q + s for q in t2.initial},
        t1.final | {q + s for q in t2.final},
        t1.transitions + tuple((p + s, a, b, q + s) for p, a, b, q in t2.transitions),
    )


def inverse(t: Transducer) -> Transducer:
    return Transducer(t.alphabet, t.n_states, t.initial, t.final,
                      tuple((p, b, a, q) for p, a, b, q in t.transitions))


def reverse(t: Transducer) -> Transducer:
    """Relation {(x^R, y^R)}: both tapes read backwards."""
    return Transducer(t.alphabet, t.n_states, t.final, t.initial,
                      tuple((q, a, b, p) for p, a, b, q in t.transitions))


def compose(t1: Transducer, t2: Transducer) -> Transducer:
    """x -> z whenever t1 maps x to y and t2 maps y to z."""
    alphabet = _check_alphabets(t1, t2)
    start = [(p, q) for p in sorted(t1.initial) for q in sorted(t2.initial)]
    index = {s: i for i, s in enumerate(start)}
    queue = deque(start)
    raw = []

    def visit(src, a, b, dst):
        if dst not in index:
            index[dst] = len(index)
            queue.append(dst)
        raw.append((index[src], a, b, index[dst]))

    while queue:
        pq = queue.popleft()
        p, q = pq
        for a, mid, p2 in t1.out[p]:
            if mid == EPS:
                visit(pq, a, EPS, (p2, q))
            else:
                for mid2, c, q2 in t2.out[q]:
                    if mid2 == mid:
                        visit(pq, a, c, (p2, q2))
        for mid2, c, q2 in t2.out[q]:
            if mid2 == EPS:
                visit(pq, EPS, c, (p, q2))
    final = {i for (p, q), i in index.items() if p in t1.final and q in t2.final}
    return _normalized(alphabet, len(index), set(range(len(start))), final, raw)


def power(t: Transducer, n: int) -> Transducer:
    if n < 1:
        raise ValueError("power must be at least 1")
    result = t
    for _ in range(n - 1):
        result = compose(result, t)
    return result


def algebra(kind: str, t1: Transducer, t2: Optional[Transducer] = None) -> Transducer:
    if kind == "inverse":
        if t2 is not None:
            raise ValueError("inverse takes one transducer")
        return inverse(t1)
    if t2 is None:
        raise ValueError(f"{kind} takes two transducers")
    if kind == "compose":
        return compose(t1, t2)
    if kind == "union":
        return union(t1, t2)
    raise ValueError(f"unknown operation {kind!r}")


# --------------------------------------------------------------------------
# Images and restricted emptiness


def image(t: Transducer, lang: Language) -> Nfa:
    """The language t(L): restrict the input tape to L, project on the output."""
    if t.alphabet != lang.alphabet:
        raise AlphabetError(f"alphabet mismatch: {t.alphabet.symbols!r} vs {lang.alphabet.symbols!r}")
    nfa = automata.as_nfa(lang)
    start = [(p, q) for p in sorted(t.initial) for q in sorted(nfa.initial)]
    index = {s: i for i, s in enumerate(start)}
    queue = deque(start)
    trans = []

    def visit(src, c, dst):
        if dst not in index:
            index[dst] = len(index)
            queue.append(dst)
        trans.append((index[src], c, index[dst]))

    while queue:
        pq = queue.popleft()
        p, q = pq
        for a, b, p2 in t.out[p]:
            if a == EPS:
                visit(pq, b, (p2, q))
            else:
                for c, q2 in nfa.out[q]:
                    if c == a:
                        visit(pq, b, (p2, q2))
        for c, q2 in nfa.out[q]:
            if c == EPS:
                visit(pq, EPS, (p, q2))
    final = {i for (p, q), i in index.items() if p in t.final and q in nfa.final}
    return automata.trim(Nfa(t.alphabet, len(index), range(len(start)), final, tuple(trans)))


def preimage(t: Transducer, lang: Language) -> Nfa:
    return image(inverse(t), lang)


@dataclass(frozen=True)
class PairVerdict:
    empty: bool
    witness: Optional[tuple[str, str]] = None


def _advance(lag: tuple, a: str, b: str):
    diverged, ahead_in, ahead_out = lag
    if diverged:
        return lag
    ahead_in += a
    ahead_out += b
    while ahead_in and ahead_out:
        if ahead_in[0] != ahead_out[0]:
            return (True, "", "")
        ahead_in, ahead_out = ahead_in[1:], ahead_out[1:]
    return (False, ahead_in, ahead_out)


def restricted_emptiness(
    t: Transducer,
    lang_in: Language,
    lang_out: Language,
    exclude_diagonal: bool = False,
    max_lag: int = 32,
) -> PairVerdict:
    """Is t ∩ (lang_in × lang_out) empty?  With ``exclude_diagonal`` the pairs
    (w, w) are ignored; the product then tracks the unmatched look-ahead of
    one tape until the two tapes first differ.

    A witness pair is extracted by a uniform-cost search on total length with
    lexicographic tie-breaking.
    """
    for lang in (lang_in, lang_out):
        if lang.alphabet != t.alphabet:
            raise AlphabetError("alphabet mismatch between transducer and language")
    d_in, d_out = automata.minimize(lang_in), automata.minimize(lang_out)
    live_in, live_out = d_in.live, d_out.live
    alphabet = t.alphabet

    def step(d, q, c):
        return q if c == EPS else d.delta[q][alphabet.index(c)]

    no_lag = (False, "", "")
    heap = []
    for p in sorted(t.initial):
        if d_in.initial in live_in and d_out.initial in live_out:
            state = (p, d_in.initial, d_out.initial, no_lag)
            heapq.heappush(heap, (0, (), (), "", "", state))
    done = set()
    while heap:
        cost, kx, ky, x, y, state = heapq.heappop(heap)
        if state in done:
            continue
        done.add(state)
        p, qi, qo, lag = state
        if p in t.final and qi in d_in.final and qo in d_out.final:
            if not exclude_diagonal or lag[0] or lag[1] or lag[2]:
                return PairVerdict(False, (x, y))
        for a, b, p2 in t.out[p]:
            qi2, qo2 = step(d_in, qi, a), step(d_out, qo, b)
            if qi2 not in live_in or qo2 not in live_out:
                continue
            lag2 = _advance(lag, a, b) if exclude_diagonal else no_lag
            if len(lag2[1]) + len(lag2[2]) > max_lag:
                raise UnboundedLagError(f"look-ahead exceeded {max_lag} symbols")
            nxt = (p2, qi2, qo2, lag2)
            if nxt not in done:
                kx2 = kx + (alphabet.index(a),) if a else kx
                ky2 = ky + (alphabet.index(b),) if b else ky
                heapq.heappush(heap, (cost + len(a) + len(b), kx2, ky2, x + a, y + b, nxt))
    return PairVerdict(True)
