"""Code-theoretic procedures on regular sets: unique decipherability,
the uniform Bernoulli measure, completeness and prefix/suffix classification."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import automata
from .automata import Dfa, Language


class EmptyWordError(ValueError):
    """The set contains the empty word, so it is never a code."""


@dataclass(frozen=True)
class Ambiguity:
    """A word of X* with two different factorizations over X."""

    word: str
    left: tuple[str, ...]
    right: tuple[str, ...]


@dataclass
class SpSequence:
    """The dangling-suffix sets U_0, U_1, ... as canonical minimal DFAs."""

    items: list[Dfa] = field(default_factory=list)
    outcome: str = "code"  # or "not_code"
    index: Optional[int] = None  # first U_n containing the empty word, or the repeated U_p
    ambiguity: Optional[Ambiguity] = None

    @property
    def is_code(self) -> bool:
        return self.outcome == "code"

    def __bool__(self) -> bool:
        return self.is_code


def _require_no_epsilon(x: Language) -> None:
    if x.accepts(""):
        raise EmptyWordError("a set containing the empty word is not a code")


def sardinas_patterson(x: Language) -> SpSequence:
    """Iterate U_0 = X^-1 X minus {ε}, U_{n+1} = U_n^-1 X ∪ X^-1 U_n.

    Stops on the first U_n holding ε (not a code) or on a repeated U_n (code).
    Every U_n is a union of left quotients of X by words, so at most
    2^|Q| distinct sets occur; that bound is enforced as a safety cap.
    """
    _require_no_epsilon(x)
    x_min = automata.minimize(x)
    eps = automata.epsilon_language(x.alphabet)
    u = automata.minimize(automata.difference(automata.left_quotient(x_min, x_min), eps))
    seq = SpSequence(items=[u])
    seen = {u.key: 0}
    cap = 2 ** x_min.n_states + 1
    while True:
        n = len(seq.items)
        if n > cap:
            raise RuntimeError("Sardinas-Patterson exceeded its termination bound")
        nxt = automata.minimize(
            automata.union(automata.left_quotient(u, x_min), automata.left_quotient(x_min, u))
        )
        if nxt.accepts(""):
            seq.items.append(nxt)
            seq.outcome = "not_code"
            seq.index = n
            seq.ambiguity = find_ambiguity(x_min)
            if seq.ambiguity is None:
                raise AssertionError("no ambiguous word found for a non-code")
            return seq
        if nxt.key in seen:
            seq.index = seen[nxt.key]
            return seq
        seen[nxt.key] = n
        seq.items.append(nxt)
        u = nxt


def is_code(x: Language) -> bool:
    if x.accepts(""):
        return False
    return sardinas_patterson(x).is_code


def find_ambiguity(x: Language) -> Optional[Ambiguity]:
    """Shortest word with two factorizations, via the square of the flower automaton.

    The flower automaton has a hub (between codewords) plus the live states of
    the minimal DFA of X (inside a codeword).  With a deterministic X every
    factorization is exactly one hub-to-hub path, so two different paths on
    the same word are two different factorizations.
    """
    _require_no_epsilon(x)
    d = automata.minimize(x)
    live = d.live
    hub = "hub"

    def moves(s, j):
        src = d.initial if s == hub else s
        r = d.delta[src][j]
        if r not in live:
            return []
        out = []
        if r in d.final:
            out.append(hub)
        if any(t in live for t in d.delta[r]):
            out.append(r)
        return out

    start = (hub, hub, False)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        s1, s2, split = node
        for j, c in enumerate(d.alphabet):
            for t1 in moves(s1, j):
                for t2 in moves(s2, j):
                    nxt = (t1, t2, split or t1 != t2)
                    if nxt in parent:
                        continue
                    parent[nxt] = (node, c)
                    if nxt == (hub, hub, True):
                        return _unwind(parent, nxt, hub)
                    queue.append(nxt)
    return None


def _unwind(parent, node, hub) -> Ambiguity:
    path = []
    while parent[node] is not None:
        prev, c = parent[node]
        path.append((c, node))
        node = prev
    path.reverse()
    word = "".join(c for c, _ in path)

    def cut(side):
        pieces, start = [], 0
        for i, (_, n) in enumerate(path):
            if n[side] == hub:
                pieces.append(word[start:i + 1])
                start = i + 1
        return tuple(pieces)

    return Ambiguity(word, cut(0), cut(1))


# --------------------------------------------------------------------------
# Measure


@dataclass(frozen=True)
class Measure:
    """Exact uniform Bernoulli measure, or a divergence flag."""

    value: Optional[Fraction]
    diverges: bool = False

    def decimal(self, digits: int = 20) -> Optional[str]:
        if self.value is None:
            return None
        v = self.value
        whole, rest = divmod(v.numerator, v.denominator)
        out = []
        for _ in range(digits):
            rest *= 10
            dgt, rest = divmod(rest, v.denominator)
            out.append(str(dgt))
        return f"{whole}." + "".join(out)

    def __str__(self) -> str:
        return "diverges" if self.diverges else str(self.value)


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def measure(x: Language) -> Measure:
    """Sum of |A|^-|w| over w in X, exactly.

    Solves x_q = [q final] + (1/|A|) sum_a x_{delta(q, a)} over the useful
    states of the minimal DFA.  A singular system, a negative entry, or a
    solution below the partial sum over words of length <= 2|Q| flags
    divergence.
    """
    d = automata.minimize(x)
    live = sorted(d.live)
    if d.initial not in d.live:
        return Measure(Fraction(0))
    pos = {q: i for i, q in enumerate(live)}
    weight = Fraction(1, len(d.alphabet))
    matrix = [[Fraction(0)] * len(live) for _ in live]
    rhs = [Fraction(int(q in d.final)) for q in live]
    for q in live:
        i = pos[q]
        matrix[i][i] += 1
        for r in d.delta[q]:
            if r in pos:
                matrix[i][pos[r]] -= weight
    sol = _solve(matrix, rhs)
    if sol is None or any(v < 0 for v in sol):
        return Measure(None, True)
    value = sol[pos[d.initial]]
    if value < _partial_sum(d, 2 * d.n_states):
        return Measure(None, True)
    return Measure(value)


def _partial_sum(d: Dfa, max_len: int) -> Fraction:
    weight = Fraction(1, len(d.alphabet))
    dist = {d.initial: Fraction(1)}
    total = Fraction(0)
    for _ in range(max_len + 1):
        total += sum(v for q, v in dist.items() if q in d.final)
        nxt: dict[int, Fraction] = {}
        for q, v in dist.items():
            for r in d.delta[q]:
                if r in d.live:
                    nxt[r] = nxt.get(r, Fraction(0)) + v * weight
        dist = nxt
    return total


# --------------------------------------------------------------------------
# Completeness and classification


def is_complete(x: Language) -> automata.Verdict:
    """Whether every word is a factor of some word of X*; the witness is the
    shortest (then alphabet-least) word that is not."""
    return automata.is_universal(automata.factor_closure(automata.star(x)))


@dataclass(frozen=True)
class Classification:
    is_prefix: bool
    is_suffix: bool
    is_bifix: bool
    is_uniform: bool


def classify(x: Language) -> Classification:
    _require_no_epsilon(x)
    alphabet = x.alphabet
    nonempty = automata.plus(automata.letters(alphabet))
    prefix = automata.is_empty(automata.intersection(x, automata.concat(x, nonempty))).holds
    suffix = automata.is_empty(automata.intersection(x, automata.concat(nonempty, x))).holds
    lens = automata.lengths(x)
    uniform = lens is not None and len(lens) <= 1
    return Classification(prefix, suffix, prefix and suffix, uniform)
