"""Regular languages as finite automata.

:class:`Nfa` is the general representation (with epsilon moves); :class:`Dfa`
is complete, keeps its dead state explicit, and after :func:`minimize` is
canonical, which makes language equality a comparison of :meth:`Dfa.key`.
Functions accept either form and return a fresh automaton.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Union

from .words import Alphabet, AlphabetError

EPS = ""


class RegexError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True, eq=False)
class Nfa:
    alphabet: Alphabet
    n_states: int
    initial: frozenset
    final: frozenset
    transitions: tuple  # (src, symbol or EPS, dst)

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "transitions", tuple(sorted(set(self.transitions))))
        n = self.n_states
        for q in self.initial | self.final:
            if not 0 <= q < n:
                raise ValueError(f"state {q} out of range")
        for p, c, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"transition {(p, c, q)} leaves the state set")
            if c != EPS and c not in self.alphabet:
                raise AlphabetError(f"transition symbol {c!r} not in alphabet {self.alphabet.symbols!r}")

    @cached_property
    def out(self) -> list[list[tuple[str, int]]]:
        adj: list[list[tuple[str, int]]] = [[] for _ in range(self.n_states)]
        for p, c, q in self.transitions:
            adj[p].append((c, q))
        return adj

    def closure(self, states: Iterable[int]) -> frozenset:
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for c, q in self.out[p]:
                if c == EPS and q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def step(self, states: frozenset, symbol: str) -> frozenset:
        return self.closure(q for p in states for c, q in self.out[p] if c == symbol)

    def accepts(self, word: str) -> bool:
        current = self.closure(self.initial)
        for c in word:
            if c not in self.alphabet:
                return False
            current = self.step(current, c)
            if not current:
                return False
        return bool(current & self.final)

    def __contains__(self, word: str) -> bool:
        return self.accepts(word)

    def to_nfa(self) -> Nfa:
        return self

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
    def from_dict(cls, data: dict) -> Nfa:
        return cls(
            Alphabet(data["alphabet"]),
            int(data["states"]),
            frozenset(data["initial"]),
            frozenset(data["final"]),
            tuple((int(p), str(c), int(q)) for p, c, q in data["transitions"]),
        )

    @classmethod
    def from_json(cls, text: str) -> Nfa:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class Dfa:
    alphabet: Alphabet
    delta: tuple  # delta[state][symbol index] -> state
    initial: int
    final: frozenset

    def __post_init__(self):
        object.__setattr__(self, "final", frozenset(self.final))
        width = len(self.alphabet)
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in self.delta:
            if len(row) != width or any(not 0 <= q < n for q in row):
                raise ValueError("transition table must be complete")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def run(self, word: str, state: Optional[int] = None) -> int:
        q = self.initial if state is None else state
        for c in word:
            q = self.delta[q][self.alphabet.index(c)]
        return q

    def accepts(self, word: str) -> bool:
        if any(c not in self.alphabet for c in word):
            return False
        return self.run(word) in self.final

    def __contains__(self, word: str) -> bool:
        return self.accepts(word)

    @cached_property
    def live(self) -> frozenset:
        """States from which some final state is reachable."""
        preds: list[set[int]] = [set() for _ in self.delta]
        for p, row in enumerate(self.delta):
            for q in row:
                preds[q].add(p)
        seen = set(self.final)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for p in preds[q]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    @cached_property
    def key(self) -> tuple:
        """Hashable description; equal keys of minimized DFAs mean equal languages."""
        return (self.alphabet.symbols, self.delta, self.initial, tuple(sorted(self.final)))

    def to_nfa(self) -> Nfa:
        return Nfa(
            self.alphabet,
            self.n_states,
            frozenset({self.initial}),
            self.final,
            tuple((p, c, q) for p, row in enumerate(self.delta) for c, q in zip(self.alphabet, row)),
        )

    def to_dict(self) -> dict:
        return self.to_nfa().to_dict()


Language = Union[Nfa, Dfa]


def as_nfa(lang: Language) -> Nfa:
    return lang.to_nfa()


def _same_alphabet(*langs) -> Alphabet:
    alphabet = langs[0].alphabet
    for other in langs[1:]:
        if other.alphabet != alphabet:
            raise AlphabetError(f"alphabet mismatch: {alphabet.symbols!r} vs {other.alphabet.symbols!r}")
    return alphabet


# --------------------------------------------------------------------------
# Determinization and canonical minimization


def determinize(lang: Language) -> Dfa:
    if isinstance(lang, Dfa):
        return lang
    nfa = lang
    start = nfa.closure(nfa.initial)
    index = {start: 0}
    order = [start]
    delta: list[tuple[int, ...]] = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = []
        for c in nfa.alphabet:
            nxt = nfa.step(subset, c)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(tuple(row))
        i += 1
    final = frozenset(j for j, s in enumerate(order) if s & nfa.final)
    return Dfa(nfa.alphabet, tuple(delta), 0, final)


def _bfs_order(delta, initial: int) -> list[int]:
    order = [initial]
    seen = {initial}
    i = 0
    while i < len(order):
        for q in delta[order[i]]:
            if q not in seen:
                seen.add(q)
                order.append(q)
        i += 1
    return order


def minimize(lang: Language) -> Dfa:
    """Minimal complete DFA, states numbered in breadth-first alphabet order."""
    dfa = determinize(lang)
    reach = _bfs_order(dfa.delta, dfa.initial)
    block = {q: int(q in dfa.final) for q in reach}
    count = len(set(block.values()))
    while True:
        sigs: dict[tuple, int] = {}
        new_block = {}
        for q in reach:
            sig = (block[q],) + tuple(block[r] for r in dfa.delta[q])
            new_block[q] = sigs.setdefault(sig, len(sigs))
        block = new_block
        if len(sigs) == count:
            break
        count = len(sigs)
    rep = {}
    for q in reach:
        rep.setdefault(block[q], q)
    quotient = {b: tuple(block[r] for r in dfa.delta[q]) for b, q in rep.items()}
    order = _bfs_order(quotient, block[dfa.initial])
    number = {b: i for i, b in enumerate(order)}
    delta = tuple(tuple(number[r] for r in quotient[b]) for b in order)
    final = frozenset(number[block[q]] for q in reach if q in dfa.final)
    return Dfa(dfa.alphabet, delta, 0, final)


def canonical_key(lang: Language) -> tuple:
    return minimize(lang).key


# --------------------------------------------------------------------------
# Constructors


def empty_language(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, {0}, (), ())


def epsilon_language(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, {0}, {0}, ())


def universal(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, {0}, {0}, tuple((0, c, 0) for c in alphabet))


def letters(alphabet: Alphabet) -> Nfa:
    """The language A of one-letter words."""
    return Nfa(alphabet, 2, {0}, {1}, tuple((0, c, 1) for c in alphabet))


def symbol(alphabet: Alphabet, c: str) -> Nfa:
    return Nfa(alphabet, 2, {0}, {1}, ((0, c, 1),))


def from_words(words: Iterable[str], alphabet: Alphabet) -> Nfa:
    """Trie automaton of a finite word list."""
    children: list[dict[str, int]] = [{}]
    final = set()
    for w in words:
        alphabet.validate(w)
        q = 0
        for c in w:
            if c not in children[q]:
                children[q][c] = len(children)
                children.append({})
            q = children[q][c]
        final.add(q)
    trans = tuple((p, c, q) for p, kids in enumerate(children) for c, q in kids.items())
    return Nfa(alphabet, len(children), {0}, final, trans)


class _RegexParser:
    # expr := term ('|' term)* ; term := factor* ; factor := atom '*'*
    # atom := symbol | '\' symbol | 'ε' | '(' expr ')'
    SPECIAL = set("|*()\\")

    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet

    def parse(self) -> Nfa:
        result = self.expr()
        self.skip_space()
        if self.pos != len(self.text):
            raise RegexError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return result

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expr(self) -> Nfa:
        result = self.term()
        while self.peek() == "|":
            self.pos += 1
            result = union(result, self.term())
        return result

    def term(self) -> Nfa:
        result = epsilon_language(self.alphabet)
        while self.peek() not in (None, "|", ")"):
            result = concat(result, self.factor())
        return result

    def factor(self) -> Nfa:
        result = self.atom()
        while self.peek() == "*":
            self.pos += 1
            result = star(result)
        return result

    def atom(self) -> Nfa:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise RegexError("missing ')'", self.pos)
            self.pos += 1
            return inner
        if c == "*":
            raise RegexError("'*' without operand", start)
        if c == "ε":
            self.pos += 1
            return epsilon_language(self.alphabet)
        if c == "\\":
            self.pos += 1
            if self.pos >= len(self.text):
                raise RegexError("dangling escape", start)
            c = self.text[self.pos]
        if c not in self.alphabet:
            raise RegexError(f"symbol {c!r} not in alphabet {self.alphabet.symbols!r}", self.pos)
        self.pos += 1
        return symbol(self.alphabet, c)


def compile_regex(text: str, alphabet: Alphabet) -> Nfa:
    """Compile a regular expression using ``|``, juxtaposition, ``*``, parentheses,
    ``ε`` and ``\\`` escapes.  Whitespace is ignored."""
    return trim(_RegexParser(text, alphabet).parse())


def compile(source: Union[str, Iterable[str]], alphabet: Alphabet) -> Nfa:
    """A regex string, or a finite list of words."""
    if isinstance(source, str):
        return compile_regex(source, alphabet)
    return from_words(source, alphabet)


# --------------------------------------------------------------------------
# Rational operations (nondeterministic, cheap)


def _disjoint(*nfas: Nfa):
    offset = 0
    parts = []
    for n in nfas:
        shift = offset
        parts.append((
            {q + shift for q in n.initial},
            {q + shift for q in n.final},
            [(p + shift, c, q + shift) for p, c, q in n.transitions],
        ))
        offset += n.n_states
    return offset, parts


def union(l1: Language, l2: Language) -> Nfa:
    alphabet = _same_alphabet(l1, l2)
    n, ((i1, f1, t1), (i2, f2, t2)) = _disjoint(as_nfa(l1), as_nfa(l2))
    return Nfa(alphabet, n, i1 | i2, f1 | f2, tuple(t1 + t2))


def concat(l1: Language, l2: Language) -> Nfa:
    alphabet = _same_alphabet(l1, l2)
    n, ((i1, f1, t1), (i2, f2, t2)) = _disjoint(as_nfa(l1), as_nfa(l2))
    bridge = [(p, EPS, q) for p in f1 for q in i2]
    return Nfa(alphabet, n, i1, f2, tuple(t1 + t2 + bridge))


def star(lang: Language) -> Nfa:
    nfa = as_nfa(lang)
    hub = nfa.n_states
    trans = list(nfa.transitions)
    trans += [(hub, EPS, q) for q in nfa.initial]
    trans += [(p, EPS, hub) for p in nfa.final]
    return Nfa(nfa.alphabet, hub + 1, {hub}, {hub}, tuple(trans))


def plus(lang: Language) -> Nfa:
    return concat(lang, star(lang))


def reverse(lang: Language) -> Nfa:
    nfa = as_nfa(lang)
    return Nfa(nfa.alphabet, nfa.n_states, nfa.final, nfa.initial,
               tuple((q, c, p) for p, c, q in nfa.transitions))


def map_letters(lang: Language, mapping) -> Nfa:
    """Image under the letter-to-letter morphism ``mapping``."""
    nfa = as_nfa(lang)
    return Nfa(nfa.alphabet, nfa.n_states, nfa.initial, nfa.final,
               tuple((p, c if c == EPS else mapping(c), q) for p, c, q in nfa.transitions))


def trim(lang: Language) -> Nfa:
    """Keep only states that are both accessible and co-accessible."""
    nfa = as_nfa(lang)
    fwd: list[list[int]] = [[] for _ in range(nfa.n_states)]
    bwd: list[list[int]] = [[] for _ in range(nfa.n_states)]
    for p, _, q in nfa.transitions:
        fwd[p].append(q)
        bwd[q].append(p)

    def reach(starts, adj):
        seen = set(starts)
        stack = list(seen)
        while stack:
            for q in adj[stack.pop()]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    keep = sorted(reach(nfa.initial, fwd) & reach(nfa.final, bwd))
    if not keep:
        return empty_language(nfa.alphabet)
    num = {q: i for i, q in enumerate(keep)}
    return Nfa(
        nfa.alphabet,
        len(keep),
        {num[q] for q in nfa.initial if q in num},
        {num[q] for q in nfa.final if q in num},
        tuple((num[p], c, num[q]) for p, c, q in nfa.transitions if p in num and q in num),
    )


def factor_closure(lang: Language) -> Nfa:
    t = trim(lang)
    if not t.final:
        return t
    everything = frozenset(range(t.n_states))
    return Nfa(t.alphabet, t.n_states, everything, everything, t.transitions)


def prefix_closure(lang: Language) -> Nfa:
    t = trim(lang)
    if not t.final:
        return t
    return Nfa(t.alphabet, t.n_states, t.initial, range(t.n_states), t.transitions)


def suffix_closure(lang: Language) -> Nfa:
    t = trim(lang)
    if not t.final:
        return t
    return Nfa(t.alphabet, t.n_states, range(t.n_states), t.final, t.transitions)


def closure_op(kind: str, l1: Language, l2: Optional[Language] = None) -> Nfa:
    if (kind == "concat") != (l2 is not None):
        raise ValueError("concat takes two languages, the other closures one")
    ops = {
        "star": star,
        "reverse": reverse,
        "factor_closure": factor_closure,
        "prefix_closure": prefix_closure,
        "suffix_closure": suffix_closure,
    }
    if kind == "concat":
        return concat(l1, l2)
    if kind not in ops:
        raise ValueError(f"unknown closure {kind!r}")
    return ops[kind](l1)


# --------------------------------------------------------------------------
# Boolean operations (deterministic product)


def _product(l1: Language, l2: Language, accept) -> Dfa:
    alphabet = _same_alphabet(l1, l2)
    d1, d2 = determinize(l1), determinize(l2)
    start = (d1.initial, d2.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for j in range(len(alphabet)):
            nxt = (d1.delta[p][j], d2.delta[q][j])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(tuple(row))
        i += 1
    final = {n for n, (p, q) in enumerate(order) if accept(p in d1.final, q in d2.final)}
    return Dfa(alphabet, tuple(delta), 0, final)


def intersection(l1: Language, l2: Language) -> Nfa:
    return _product(l1, l2, lambda a, b: a and b).to_nfa()


def difference(l1: Language, l2: Language) -> Nfa:
    return _product(l1, l2, lambda a, b: a and not b).to_nfa()


def symmetric_difference(l1: Language, l2: Language) -> Dfa:
    return _product(l1, l2, lambda a, b: a != b)


def complement(lang: Language) -> Nfa:
    d = determinize(lang)
    return Dfa(d.alphabet, d.delta, d.initial, frozenset(range(d.n_states)) - d.final).to_nfa()


def boolean_op(kind: str, l1: Language, l2: Optional[Language] = None) -> Nfa:
    if (kind == "complement") != (l2 is None):
        raise ValueError("complement takes one language, the other operations two")
    if kind == "complement":
        return complement(l1)
    ops = {"union": union, "intersection": intersection, "difference": difference}
    if kind not in ops:
        raise ValueError(f"unknown boolean operation {kind!r}")
    return ops[kind](l1, l2)


def left_quotient(l1: Language, l2: Language) -> Nfa:
    """``l1^-1 l2 = {v : uv in l2 for some u in l1}``."""
    alphabet = _same_alphabet(l1, l2)
    d1, d2 = determinize(l1), determinize(l2)
    start = (d1.initial, d2.initial)
    seen = {start}
    queue = deque([start])
    starts = set()
    while queue:
        p, q = queue.popleft()
        if p in d1.final:
            starts.add(q)
        for j in range(len(alphabet)):
            nxt = (d1.delta[p][j], d2.delta[q][j])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    base = d2.to_nfa()
    return Nfa(alphabet, base.n_states, starts, base.final, base.transitions)


def quotient(l1: Language, l2: Language, side: str = "left") -> Nfa:
    if side != "left":
        raise ValueError("only left quotients are supported")
    return left_quotient(l1, l2)


# --------------------------------------------------------------------------
# Decisions and enumeration


def shortest_word(lang: Language) -> Optional[str]:
    """Shortest accepted word, least in alphabet order among those; None if empty."""
    d = determinize(lang)
    parent: dict[int, tuple[int, str]] = {d.initial: (-1, "")}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        if q in d.final:
            out = []
            while parent[q][0] != -1:
                q, c = parent[q][0], parent[q][1]
                out.append(c)
            return "".join(reversed(out))
        for c, r in zip(d.alphabet, d.delta[q]):
            if r not in parent:
                parent[r] = (q, c)
                queue.append(r)
    return None


def is_empty(lang: Language) -> Verdict:
    w = shortest_word(lang)
    return Verdict(w is None, w)


def is_universal(lang: Language) -> Verdict:
    w = shortest_word(complement(lang))
    return Verdict(w is None, w)


def accepts(lang: Language, word: str) -> bool:
    return lang.accepts(word)


def equivalent(l1: Language, l2: Language) -> Verdict:
    if minimize(l1).key == minimize(l2).key:
        return Verdict(True)
    return Verdict(False, shortest_word(symmetric_difference(l1, l2)))


def includes(big: Language, small: Language) -> Verdict:
    """Whether ``small`` is a subset of ``big``; the witness is a word of small \\ big."""
    w = shortest_word(difference(small, big))
    return Verdict(w is None, w)


def decide(kind: str, lang: Language, arg=None) -> Verdict:
    if kind == "empty":
        return is_empty(lang)
    if kind == "universal":
        return is_universal(lang)
    if kind == "member":
        return Verdict(lang.accepts(arg), None)
    if kind == "equivalent":
        return equivalent(lang, arg)
    raise ValueError(f"unknown decision {kind!r}")


def enumerate_words(lang: Language, max_len: int) -> list[str]:
    """All accepted words of length at most ``max_len``, length-lexicographically."""
    d = determinize(lang)
    live = d.live
    out = []
    layer = [("", d.initial)] if d.initial in live else []
    for n in range(max_len + 1):
        out.extend(w for w, q in layer if q in d.final)
        if n == max_len:
            break
        layer = [(w + c, r) for w, q in layer for c, r in zip(d.alphabet, d.delta[q]) if r in live]
    return out


def _live_graph(d: Dfa):
    live = d.live
    if d.initial not in live:
        return live, set()
    reach = {q for q in _bfs_order(d.delta, d.initial) if q in live}
    return live, reach


def is_finite(lang: Language) -> bool:
    d = minimize(lang)
    live, reach = _live_graph(d)
    # a cycle among useful states means infinitely many words
    color = dict.fromkeys(reach, 0)
    for root in reach:
        if color[root]:
            continue
        stack = [(root, iter(d.delta[root]))]
        color[root] = 1
        while stack:
            q, it = stack[-1]
            nxt = next((r for r in it if r in reach), None)
            if nxt is None:
                color[q] = 2
                stack.pop()
            elif color[nxt] == 1:
                return False
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(d.delta[nxt])))
    return True


def words_of(lang: Language) -> list[str]:
    """The words of a finite language."""
    if not is_finite(lang):
        raise ValueError("language is infinite")
    d = minimize(lang)
    return enumerate_words(d, d.n_states)


def lengths(lang: Language) -> Optional[set[int]]:
    """Set of word lengths, or None when the language is infinite."""
    if not is_finite(lang):
        return None
    return {len(w) for w in words_of(lang)}


def nfa_from_json(text: str) -> Nfa:
    return Nfa.from_json(text)
