"""Embedding a non-complete independent regular code into a complete one.

Every construction follows the same pattern.  Pick an unbordered anchor z
that is not a factor of X*, let U be the words that are neither in X* nor
contain z, and add Y = z(Uz)* to X.  The metric only changes how z is
chosen, so that the added words keep the code independent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Optional

from . import automata, codes, deciders
from .automata import Dfa, Language, Nfa
from .words import Alphabet, MetricSpec, is_overlapping_free, neighborhood

FLAVORS = ("generic_ER", "prefix_Pk", "factor_Fk", "theta_anti", "theta_auto")
MAX_SEEDS = 16


class CompletionError(ValueError):
    """The input cannot be completed: it is complete already, or not independent."""


class InconclusiveCompletion(RuntimeError):
    """No tried seed produced an independent completion."""


@dataclass(frozen=True)
class CompletionRecipe:
    flavor: str
    z0: str
    z: str
    U: Nfa
    Y: Nfa
    Z: Nfa
    X: Nfa
    notes: str = ""

    def to_dict(self) -> dict:
        def auto(lang):
            return automata.minimize(lang).to_dict()

        return {
            "flavor": self.flavor,
            "z0": self.z0,
            "z": self.z,
            "notes": self.notes,
            "X": auto(self.X),
            "U": auto(self.U),
            "Y": auto(self.Y),
            "Z": auto(self.Z),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class CompletionCheck:
    ok: bool
    failed: Optional[str] = None
    witness: Optional[tuple] = None
    notes: str = ""

    def __bool__(self) -> bool:
        return self.ok


# --------------------------------------------------------------------------
# Seeds and anchors


def _factor_dfa(x: Language) -> Dfa:
    return automata.minimize(automata.factor_closure(automata.star(x)))


def non_factors(x: Language, min_len: int = 1) -> Iterator[str]:
    """Words outside F(X*) of length >= min_len, in length-lexicographic order."""
    d = _factor_dfa(x)
    if automata.is_universal(d).holds:
        raise CompletionError("X is complete: every word is a factor of X*")
    n = min_len
    while True:
        for w in x.alphabet.words_of_length(n):
            if not d.accepts(w):
                yield w
        n += 1


def find_non_factor(x: Language, min_len: int = 1, avoid_unary: bool = False) -> str:
    """Shortest-then-least word outside F(X*), padded to ``min_len``.

    Padding uses the least letter; any extension of a non-factor is again a
    non-factor.  With ``avoid_unary`` a one-letter power gets another letter
    appended.
    """
    witness = automata.is_universal(_factor_dfa(x)).witness
    if witness is None:
        raise CompletionError("X is complete: every word is a factor of X*")
    alphabet = x.alphabet
    z0 = witness + alphabet.symbols[0] * max(0, min_len - len(witness))
    if avoid_unary and len(set(z0)) == 1:
        z0 += alphabet.other_than(z0[0])
    return z0


def _letters(z0: str, alphabet: Alphabet) -> tuple[str, str]:
    a = z0[0]
    return a, alphabet.other_than(a)


def prefix_anchor(z0: str, alphabet: Alphabet) -> str:
    a, b = _letters(z0, alphabet)
    return z0 + a + b * len(z0)


def factor_anchor(z0: str, alphabet: Alphabet) -> str:
    z = prefix_anchor(z0, alphabet)
    a, b = _letters(z0, alphabet)
    return a * len(z) + b + z


def theta_anti_anchor(z0: str, theta, alphabet: Alphabet) -> str:
    n = theta.order
    a, b = _letters(z0, alphabet)
    return "".join(theta.apply(z0, i) for i in range(n)) + a + b * (n * len(z0))


# --------------------------------------------------------------------------
# Construction


def assemble(x: Language, z: str, flavor: str, z0: str = "", notes: str = "") -> CompletionRecipe:
    """U = A* minus (X* and A*zA*), Y = z(Uz)*, Z = X plus Y, for any anchor z."""
    alphabet = x.alphabet
    everything = automata.universal(alphabet)
    anchor = automata.from_words([z], alphabet)
    containing = automata.concat(automata.concat(everything, anchor), everything)
    u = automata.trim(automata.difference(everything, automata.union(automata.star(x), containing)))
    y = automata.trim(automata.concat(anchor, automata.star(automata.concat(u, anchor))))
    zz = automata.trim(automata.union(x, y))
    return CompletionRecipe(flavor, z0, z, u, y, zz, automata.trim(x), notes)


def _reversed(recipe: CompletionRecipe) -> CompletionRecipe:
    rev = automata.reverse
    return CompletionRecipe(
        recipe.flavor, recipe.z0[::-1], recipe.z[::-1],
        automata.trim(rev(recipe.U)), automata.trim(rev(recipe.Y)),
        automata.trim(rev(recipe.Z)), automata.trim(rev(recipe.X)),
        recipe.notes,
    )


def _precheck(x: Language, metric: MetricSpec) -> str:
    deciders.require_code(x)
    if codes.is_complete(x).holds:
        raise CompletionError("X is already complete")
    c1 = deciders.decide_c1(x, metric, checked=True)
    if c1.status == deciders.FAILS:
        raise CompletionError(f"X is not independent: witness {c1.witness}")
    if c1.status == deciders.UNKNOWN:
        return "independence of X is undecided for this metric; proceeding"
    return ""


def build_completion(x: Language, metric: MetricSpec, sample_bound: int = 12) -> CompletionRecipe:
    """A complete code containing X that stays independent for ``metric``."""
    note = _precheck(x, metric)
    alphabet = x.alphabet
    if metric.kind == "suffix":
        inner = build_completion(automata.reverse(x), MetricSpec("prefix", metric.k), sample_bound)
        return _reversed(inner)
    if metric.kind == "prefix":
        z0 = find_non_factor(x, max(metric.k, 1))
        return assemble(x, prefix_anchor(z0, alphabet), "prefix_Pk", z0, note)
    if metric.kind == "factor":
        z0 = find_non_factor(x, max(metric.k, 1))
        return assemble(x, factor_anchor(z0, alphabet), "factor_Fk", z0, note)
    theta = metric.theta
    if theta.anti:
        z0 = find_non_factor(x, 2, avoid_unary=True)
        return assemble(x, theta_anti_anchor(z0, theta, alphabet), "theta_anti", z0, note)
    # automorphisms: generic anchor, kept only once independence is confirmed
    for attempt, z0 in enumerate(non_factors(x, 1)):
        if attempt >= MAX_SEEDS:
            break
        recipe = assemble(x, prefix_anchor(z0, alphabet), "theta_auto", z0,
                          f"seed {attempt + 1} of at most {MAX_SEEDS}")
        if verify_completion(recipe, metric, sample_bound).ok:
            return recipe
    raise InconclusiveCompletion(f"no independent completion among the first {MAX_SEEDS} seeds")


# --------------------------------------------------------------------------
# Verification


def _sampled_independence(z: Language, metric: MetricSpec, bound: int) -> Optional[tuple]:
    d = automata.minimize(z)
    words = automata.enumerate_words(d, bound)
    for w in words:
        for v in sorted(neighborhood(w, metric, z.alphabet), key=z.alphabet.sort_key):
            if v != w and len(v) <= bound and d.accepts(v):
                return (w, v)
    return None


def verify_completion(recipe: CompletionRecipe, metric: MetricSpec, sample_bound: int = 12) -> CompletionCheck:
    """Check the recipe's Z: code, complete, independent, then the side conditions.

    Independence is exact for the prefix, suffix and theta metrics; for the
    factor metric every pair of words of Z up to ``sample_bound`` is checked.
    """
    zz = recipe.Z
    if zz.accepts(""):
        return CompletionCheck(False, "code", ("",), "Z contains the empty word")
    sp = codes.sardinas_patterson(zz)
    if not sp.is_code:
        amb = sp.ambiguity
        return CompletionCheck(False, "code", (amb.word,), f"{amb.left} vs {amb.right}")
    complete = codes.is_complete(zz)
    if not complete.holds:
        return CompletionCheck(False, "complete", (complete.witness,))
    if metric.kind == "factor":
        pair = _sampled_independence(zz, metric, sample_bound)
        if pair is not None:
            return CompletionCheck(False, "independence", pair)
        indep_note = f"independence sampled up to length {sample_bound}"
    else:
        c1 = deciders.decide_c1(zz, metric, checked=True)
        if c1.status != deciders.HOLDS:
            return CompletionCheck(False, "independence", c1.witness, c1.notes)
        indep_note = "independence decided exactly"
    missing = automata.includes(zz, recipe.X)
    if not missing.holds:
        return CompletionCheck(False, "contains_X", (missing.witness,))
    if not recipe.z or not is_overlapping_free(recipe.z):
        return CompletionCheck(False, "anchor", (recipe.z,), "anchor has a border")
    mu = codes.measure(zz)
    if not mu.diverges and mu.value != 1:
        return CompletionCheck(False, "measure", None, f"measure {mu}")
    return CompletionCheck(True, notes=f"{indep_note}; measure {mu}")
