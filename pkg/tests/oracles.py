"""Brute-force reference implementations used by the tests and scripts."""

import itertools
import random
from fractions import Fraction

from vlcodes.words import Alphabet


def factorization_counts(code, max_len):
    """Number of factorizations (capped at 2) of every word of code+ up to max_len."""
    code = sorted(set(code))
    counts = {"": 1}
    for n in range(1, max_len + 1):
        for x in code:
            if len(x) > n:
                continue
            for u, c in list(counts.items()):
                if len(u) == n - len(x):
                    w = u + x
                    counts[w] = min(2, counts.get(w, 0) + c)
    counts.pop("")
    return counts


def shortest_ambiguity(code, max_len):
    if "" in code:
        return ""
    amb = [w for w, c in factorization_counts(code, max_len).items() if c > 1]
    return min(amb, key=lambda w: (len(w), w)) if amb else None


def is_factorization(word, pieces, code):
    return "".join(pieces) == word and all(p in code for p in pieces)


def measure_of_words(ws, size):
    return sum((Fraction(1, size) ** len(w) for w in ws), Fraction(0))


def random_word_sets(count, max_words, max_len, seed, alphabet="ab"):
    rng = random.Random(seed)
    pool = [w for w in Alphabet(alphabet).words(max_len) if w]
    return [sorted(rng.sample(pool, rng.randint(1, max_words))) for _ in range(count)]


def all_small_sets(max_words, max_len, alphabet="ab"):
    pool = [w for w in Alphabet(alphabet).words(max_len) if w]
    for n in range(1, max_words + 1):
        yield from itertools.combinations(pool, n)
