"""Exhaustive agreement sweep: deciders vs brute force on every small finite code."""

import argparse
import itertools
import sys
import time
from fractions import Fraction

from vlcodes import automata, codes, deciders
from vlcodes.words import Alphabet, MetricSpec, ThetaSpec, neighborhood


def shortest_ambiguity(code, max_len):
    counts = {"": 1}
    for n in range(1, max_len + 1):
        for x in code:
            for u, c in [(u, c) for u, c in counts.items() if len(u) == n - len(x)]:
                counts[u + x] = min(2, counts.get(u + x, 0) + c)
    return any(c > 1 for w, c in counts.items() if w)


def brute(ws, metric, alphabet):
    balls = {w: neighborhood(w, metric, alphabet) for w in ws}
    pairs = list(itertools.permutations(ws, 2))
    c1 = not any(v in balls[w] for w, v in pairs)
    c2 = not any(balls[w] & balls[v] for w, v in pairs)
    mu = sum(Fraction(1, len(alphabet)) ** len(w) for w in ws)
    image = set().union(*balls.values())
    c4 = "" not in image and not shortest_ambiguity(sorted(image), 10)
    return ["holds" if c else "fails" for c in (c1, c2, c1 and mu == 1, c4)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-words", type=int, default=3)
    parser.add_argument("--max-len", type=int, default=3)
    args = parser.parse_args()
    ab = Alphabet("ab")
    metrics = [MetricSpec("prefix", 1), MetricSpec("prefix", 2), MetricSpec("suffix", 1),
               MetricSpec("suffix", 2), MetricSpec("factor", 1), MetricSpec("factor", 2),
               MetricSpec("theta", 1, ThetaSpec.parse("a:b,b:a")),
               MetricSpec("theta", 1, ThetaSpec.parse("a:b,b:a", anti=True))]
    pool = [w for w in ab.words(args.max_len) if w]
    checked = mismatches = 0
    start = time.perf_counter()
    for n in range(1, args.max_words + 1):
        for ws in itertools.combinations(pool, n):
            x = automata.from_words(ws, ab)
            if not codes.is_code(x):
                continue
            for metric in metrics:
                got = [r.status for r in deciders.check_all(x, metric)]
                want = brute(ws, metric, ab)
                checked += 1
                if got != want:
                    mismatches += 1
                    print(f"MISMATCH {ws} {metric.label} k={metric.k}: {got} vs {want}")
    print(f"{checked} (code, metric) profiles, {mismatches} mismatches, {time.perf_counter() - start:.1f}s")
    sys.exit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
