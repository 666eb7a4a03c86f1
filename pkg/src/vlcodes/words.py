"""Words over a finite alphabet, the quasi-metrics on them, and brute-force
neighbourhoods.

Words are plain ``str`` values whose characters are alphabet symbols; the
empty string is the empty word.  Everything here is pure and works on
immutable values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

EPSILON_LITERAL = "eps"

METRIC_KINDS = ("prefix", "suffix", "factor", "theta")


class AlphabetError(ValueError):
    """A symbol is not part of the declared alphabet."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of single-character symbols (at least two of them).

    The order matters: it is used for lexicographic tie-breaking whenever a
    shortest witness word is extracted.
    """

    symbols: str

    def __post_init__(self):
        symbols = "".join(self.symbols)
        if len(symbols) != len(tuple(self.symbols)):
            raise AlphabetError("alphabet symbols must be single characters")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"duplicate symbol in alphabet {symbols!r}")
        if len(symbols) < 2:
            raise AlphabetError("an alphabet needs at least two symbols")
        object.__setattr__(self, "symbols", symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, symbol) -> bool:
        return isinstance(symbol, str) and len(symbol) == 1 and symbol in self.symbols

    @cached_property
    def _index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.symbols)}

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetError(f"symbol {symbol!r} not in alphabet {self.symbols!r}") from None

    def validate(self, word: str) -> str:
        for c in word:
            if c not in self._index:
                raise AlphabetError(f"symbol {c!r} of word {word!r} not in alphabet {self.symbols!r}")
        return word

    def parse_word(self, text: str) -> str:
        """Parse ``text`` as a word; ``""`` and ``"eps"`` both denote the empty word."""
        text = text.strip()
        if text in ("", EPSILON_LITERAL, "ε"):
            return ""
        return self.validate(text)

    def other_than(self, symbol: str) -> str:
        """Least symbol (in alphabet order) different from ``symbol``."""
        return next(c for c in self.symbols if c != symbol)

    def words_of_length(self, n: int) -> Iterator[str]:
        for t in itertools.product(self.symbols, repeat=n):
            yield "".join(t)

    def words(self, max_len: int, min_len: int = 0) -> Iterator[str]:
        """All words with ``min_len <= |w| <= max_len`` in length-lexicographic order."""
        for n in range(min_len, max_len + 1):
            yield from self.words_of_length(n)

    def sort_key(self, word: str) -> tuple:
        return (len(word), tuple(self.index(c) for c in word))


def show(word: str) -> str:
    return word if word else "ε"


# --------------------------------------------------------------------------
# Distances


def common_prefix_length(w: str, w2: str) -> int:
    n = 0
    for x, y in zip(w, w2):
        if x != y:
            break
        n += 1
    return n


def d_prefix(w: str, w2: str) -> int:
    return len(w) + len(w2) - 2 * common_prefix_length(w, w2)


def d_suffix(w: str, w2: str) -> int:
    return d_prefix(w[::-1], w2[::-1])


def longest_common_factor_length(w: str, w2: str) -> int:
    # best[j] = length of the longest common suffix of w[:i] and w2[:j]
    best = 0
    row = [0] * (len(w2) + 1)
    for i in range(1, len(w) + 1):
        prev_diag = 0
        for j in range(1, len(w2) + 1):
            saved = row[j]
            row[j] = prev_diag + 1 if w[i - 1] == w2[j - 1] else 0
            best = max(best, row[j])
            prev_diag = saved
    return best


def d_factor(w: str, w2: str) -> int:
    return len(w) + len(w2) - 2 * longest_common_factor_length(w, w2)


# --------------------------------------------------------------------------
# (Anti-)automorphisms


@dataclass(frozen=True)
class ThetaSpec:
    """A free-monoid (anti-)automorphism given by a letter permutation.

    ``letter_map`` lists ``(letter, image)`` pairs; letters that are not
    listed are fixed.  With ``anti`` set, the word is also reversed, so that
    theta(uv) = theta(v) theta(u).
    """

    letter_map: tuple[tuple[str, str], ...]
    anti: bool = False

    def __post_init__(self):
        pairs = tuple(sorted((str(a), str(b)) for a, b in self.letter_map))
        keys = [a for a, _ in pairs]
        values = [b for _, b in pairs]
        if any(len(c) != 1 for c in keys + values):
            raise ValueError("theta maps single letters to single letters")
        if len(set(keys)) != len(keys):
            raise ValueError(f"letter mapped twice in {pairs}")
        if set(keys) != set(values):
            raise ValueError(f"letter map {pairs} is not a permutation")
        object.__setattr__(self, "letter_map", tuple((a, b) for a, b in pairs if a != b))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str], anti: bool = False) -> ThetaSpec:
        return cls(tuple(mapping.items()), anti)

    @classmethod
    def parse(cls, text: str, anti: bool = False) -> ThetaSpec:
        """Parse ``"a:b,b:a"``; blank text gives the identity."""
        pairs = []
        for item in filter(None, (s.strip() for s in text.split(","))):
            src, sep, dst = item.partition(":")
            if not sep or len(src.strip()) != 1 or len(dst.strip()) != 1:
                raise ValueError(f"bad theta pair {item!r}; expected x:y")
            pairs.append((src.strip(), dst.strip()))
        return cls(tuple(pairs), anti)

    def __str__(self) -> str:
        body = ",".join(f"{a}:{b}" for a, b in self.letter_map)
        return f"{body};anti" if self.anti else body

    @cached_property
    def _map(self) -> dict[str, str]:
        return dict(self.letter_map)

    @cached_property
    def _inverse_map(self) -> dict[str, str]:
        return {b: a for a, b in self.letter_map}

    def image(self, letter: str) -> str:
        return self._map.get(letter, letter)

    def preimage(self, letter: str) -> str:
        return self._inverse_map.get(letter, letter)

    def moved(self, alphabet: Alphabet) -> str:
        """The letters a with h(a) != a, in alphabet order."""
        return "".join(c for c in alphabet if self.image(c) != c)

    def check_alphabet(self, alphabet: Alphabet) -> None:
        for a, b in self.letter_map:
            if a not in alphabet:
                raise AlphabetError(f"theta moves {a!r}, which is not in alphabet {alphabet.symbols!r}")

    @cached_property
    def letter_order(self) -> int:
        """Order of the underlying letter permutation."""
        seen: set[str] = set()
        order = 1
        for start, _ in self.letter_map:
            if start in seen:
                continue
            length, c = 0, start
            while True:
                seen.add(c)
                c = self.image(c)
                length += 1
                if c == start:
                    break
            order = math.lcm(order, length)
        return order

    @property
    def order(self) -> int:
        """Least n >= 1 with theta^n = id (on words of length >= 2 for anti)."""
        n = self.letter_order
        if self.anti and n % 2:
            n *= 2
        return n

    def apply(self, word: str, power: int = 1) -> str:
        if power < 0:
            raise ValueError("power must be non-negative")
        power %= self.order
        for _ in range(power):
            word = "".join(self.image(c) for c in word)
            if self.anti:
                word = word[::-1]
        return word

    def apply_inverse(self, word: str) -> str:
        word = "".join(self.preimage(c) for c in word)
        return word[::-1] if self.anti else word


def theta_apply(word: str, theta: ThetaSpec, power: int = 1) -> str:
    return theta.apply(word, power)


def d_theta(w: str, w2: str, theta: ThetaSpec) -> int:
    if w == w2:
        return 0
    return 1 if theta.apply(w) == w2 else 2


# --------------------------------------------------------------------------
# Metric dispatch and neighbourhoods


@dataclass(frozen=True)
class MetricSpec:
    """One of the four quasi-metrics together with the tolerance ``k``."""

    kind: str
    k: int = 1
    theta: ThetaSpec | None = None

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ValueError(f"unknown metric {self.kind!r}; expected one of {METRIC_KINDS}")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.kind == "theta":
            if self.theta is None:
                raise ValueError("theta metric needs a ThetaSpec")
            if self.k != 1:
                raise ValueError("theta metric is only used with k = 1")
        elif self.theta is not None:
            raise ValueError(f"{self.kind} metric takes no theta")

    @property
    def label(self) -> str:
        if self.kind != "theta":
            return self.kind
        pairs = ",".join(f"{a}:{b}" for a, b in self.theta.letter_map)
        return f"theta-anti[{pairs}]" if self.theta.anti else f"theta[{pairs}]"

    @classmethod
    def from_label(cls, label: str, k: int = 1) -> MetricSpec:
        if label.startswith("theta"):
            head, _, rest = label.partition("[")
            return cls("theta", 1, ThetaSpec.parse(rest.rstrip("]"), anti=head == "theta-anti"))
        return cls(label, k)

    def distance(self, w: str, w2: str) -> int:
        if self.kind == "prefix":
            return d_prefix(w, w2)
        if self.kind == "suffix":
            return d_suffix(w, w2)
        if self.kind == "factor":
            return d_factor(w, w2)
        return d_theta(w, w2, self.theta)


def f1_step(word: str, alphabet: Alphabet) -> set[str]:
    """Words at factor distance at most 1: one-letter edits at either end."""
    out = {word}
    if word:
        out.add(word[1:])
        out.add(word[:-1])
    for c in alphabet:
        out.add(c + word)
        out.add(word + c)
    return out


def neighborhood(word: str, metric: MetricSpec, alphabet: Alphabet) -> set[str]:
    """Exactly the words at ``metric``-distance at most ``metric.k`` from ``word``."""
    k = metric.k
    if metric.kind == "prefix":
        out = set()
        for cut in range(0, min(k, len(word)) + 1):
            head = word[: len(word) - cut]
            for extra in range(0, k - cut + 1):
                out.update(head + u for u in alphabet.words_of_length(extra))
        return out
    if metric.kind == "suffix":
        mirrored = MetricSpec("prefix", k)
        return {w[::-1] for w in neighborhood(word[::-1], mirrored, alphabet)}
    if metric.kind == "factor":
        current = {word}
        for _ in range(k):
            current = set().union(*(f1_step(w, alphabet) for w in current))
        return current
    if k == 0:
        return {word}
    if k == 1:
        return {word, metric.theta.apply(word)}
    raise ValueError("every word is within theta-distance 2; the neighbourhood is infinite")


def neighborhood_of_set(words: Iterable[str], metric: MetricSpec, alphabet: Alphabet) -> set[str]:
    return set().union(*(neighborhood(w, metric, alphabet) for w in words))


def is_overlapping_free(word: str) -> bool:
    """True iff ``word`` has no non-empty proper border (it is unbordered)."""
    if not word:
        raise ValueError("overlapping-freeness is defined for non-empty words")
    fail = [0] * len(word)
    j = 0
    for i in range(1, len(word)):
        while j and word[i] != word[j]:
            j = fail[j - 1]
        if word[i] == word[j]:
            j += 1
        fail[i] = j
    return fail[-1] == 0
