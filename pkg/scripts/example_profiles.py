"""Print the c1..c4 profile, measure and a completion for the worked examples."""

import argparse
import json
import time
from dataclasses import dataclass

from vlcodes import automata, codes, completion, deciders
from vlcodes.words import Alphabet, MetricSpec, ThetaSpec

AB = Alphabet("ab")
DNA = Alphabet("ACGT")
SWAP = ThetaSpec.parse("a:b,b:a")
ANTI_SWAP = ThetaSpec.parse("a:b,b:a", anti=True)
WATSON_CRICK = ThetaSpec.parse("A:T,T:A,C:G,G:C", anti=True)


@dataclass(frozen=True)
class Case:
    name: str
    alphabet: Alphabet
    source: object  # regex text or list of words
    metric: MetricSpec


CASES = [
    Case("a,ba,bb / prefix 1", AB, ["a", "ba", "bb"], MetricSpec("prefix", 1)),
    Case("a,ba,bb / prefix 2", AB, ["a", "ba", "bb"], MetricSpec("prefix", 2)),
    Case("ab*a|ba*b / prefix 1", AB, "ab*a|ba*b", MetricSpec("prefix", 1)),
    Case("ab*a|ba*b / suffix 1", AB, "ab*a|ba*b", MetricSpec("suffix", 1)),
    Case("a,ba,bb / factor 1", AB, ["a", "ba", "bb"], MetricSpec("factor", 1)),
    Case("ab*a|ba*b / factor 1", AB, "ab*a|ba*b", MetricSpec("factor", 1)),
    Case("a*b / swap", AB, "a*b", MetricSpec("theta", 1, SWAP)),
    Case("a*b / anti swap", AB, "a*b", MetricSpec("theta", 1, ANTI_SWAP)),
    Case("aaa*b / anti swap", AB, "aaa*b", MetricSpec("theta", 1, ANTI_SWAP)),
    Case("Watson-Crick prefix code", DNA, ["A", "C", "GA", "GG", "GT", "GCA", "GCC", "GCG", "GCT"],
         MetricSpec("theta", 1, WATSON_CRICK)),
    Case("aa / prefix 1", AB, ["aa"], MetricSpec("prefix", 1)),
    Case("AC / Watson-Crick", DNA, ["AC"], MetricSpec("theta", 1, WATSON_CRICK)),
]


def profile(case: Case) -> dict:
    x = automata.compile(case.source, case.alphabet)
    start = time.perf_counter()
    reports = deciders.check_all(x, case.metric)
    row = {
        "case": case.name,
        "measure": str(codes.measure(x)),
        "conditions": {r.condition: r.status for r in reports},
        "witnesses": {r.condition: list(r.witness) for r in reports if r.witness is not None},
    }
    if not codes.is_complete(x).holds and reports[0].status == deciders.HOLDS:
        recipe = completion.build_completion(x, case.metric)
        row["completion"] = {"flavor": recipe.flavor, "z": recipe.z,
                             "verified": completion.verify_completion(recipe, case.metric).ok}
    row["seconds"] = round(time.perf_counter() - start, 3)
    return row


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true", help="one JSON object per line")
    args = parser.parse_args()
    for case in CASES:
        row = profile(case)
        if args.json:
            print(json.dumps(row, sort_keys=True))
            continue
        conds = " ".join(f"{c}={s}" for c, s in row["conditions"].items())
        extra = f"  completion z={row['completion']['z']}" if "completion" in row else ""
        print(f"{row['case']:<28} mu={row['measure']:<9} {conds}{extra}")


if __name__ == "__main__":
    main()
