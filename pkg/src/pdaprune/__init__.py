"""pdaprune: detect and remove transitions a pushdown automaton never needs.

A transition is useless when it occurs on no run from the initial
configuration to a final state.  ``analyze`` splits every transition into
unreachable / dead / useful by summarizing all reachable stacks in a small
finite automaton and then propagating acceptance backwards over it;
``prune`` removes the useless ones without changing the accepted language.
The ``oracle`` module holds two independent verifiers used by the test
suite and the ``verify`` CLI command.
"""

__version__ = "0.1.0"

from .augment import AugmentedPda, augment, support_initial_stack
from .backward import BackwardResult, run_backward, scan_eps_on_paths, unique_gamma_path
from .builders import cfg_to_pda, random_pda
from .dot import nfa_to_dot, pda_to_dot
from .forward import EpsClosure, ForwardResult, compute_s, establish_path, run_forward
from .model import (
    EPSILON,
    M0,
    Configuration,
    NfaShapeError,
    NfaState,
    NfaSummary,
    Pda,
    PdaTransition,
    StackString,
    Symbol,
    nfa_shape_violations,
    step,
    validate,
)
from .oracle import (
    Grammar,
    NormalizedPda,
    bounded_derivations,
    bounded_language,
    bounded_reachable,
    bounded_useful,
    exact_useless,
    grammar_useless,
    make_grammar,
    normalize,
    pda_to_grammar,
)
from .pruner import (
    AnalysisReport,
    AnalysisStats,
    InvalidPdaError,
    analyze,
    prune,
    run_pipeline,
)
from .textio import PdaFormatError, parse_grammar, parse_pda, print_grammar, print_pda

__all__ = [
    "AnalysisReport",
    "AnalysisStats",
    "AugmentedPda",
    "BackwardResult",
    "Configuration",
    "EPSILON",
    "EpsClosure",
    "ForwardResult",
    "Grammar",
    "InvalidPdaError",
    "M0",
    "NfaShapeError",
    "NfaState",
    "NfaSummary",
    "NormalizedPda",
    "Pda",
    "PdaFormatError",
    "PdaTransition",
    "StackString",
    "Symbol",
    "analyze",
    "augment",
    "bounded_derivations",
    "bounded_language",
    "bounded_reachable",
    "bounded_useful",
    "cfg_to_pda",
    "compute_s",
    "establish_path",
    "exact_useless",
    "grammar_useless",
    "make_grammar",
    "nfa_shape_violations",
    "nfa_to_dot",
    "normalize",
    "parse_grammar",
    "parse_pda",
    "pda_to_dot",
    "pda_to_grammar",
    "print_grammar",
    "print_pda",
    "prune",
    "random_pda",
    "run_backward",
    "run_forward",
    "run_pipeline",
    "scan_eps_on_paths",
    "step",
    "support_initial_stack",
    "unique_gamma_path",
    "validate",
]
