"""Error detection and correction conditions for regular variable-length codes."""

from .automata import Dfa, Nfa, compile, compile_regex, from_words
from .codes import classify, is_code, is_complete, measure, sardinas_patterson
from .completion import CompletionRecipe, build_completion, verify_completion
from .deciders import ConditionReport, check_all, decide
from .words import Alphabet, MetricSpec, ThetaSpec

__all__ = [
    "Alphabet", "MetricSpec", "ThetaSpec",
    "Nfa", "Dfa", "compile", "compile_regex", "from_words",
    "sardinas_patterson", "is_code", "measure", "is_complete", "classify",
    "ConditionReport", "decide", "check_all",
    "CompletionRecipe", "build_completion", "verify_completion",
]
