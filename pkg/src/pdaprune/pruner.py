"""Orchestration: classify every original transition and emit the pruned PDA.

Transitions that agree on (source, pop, push, target) and differ only in
their input symbol behave identically for usefulness, so the pipeline runs
on one representative per group and fans the verdict back out.
"""

from dataclasses import dataclass, replace

from .augment import AugmentedPda, augment
from .backward import BackwardResult, run_backward
from .forward import ForwardResult, run_forward
from .model import M0, NfaState, Pda, remove_transitions, validate


class InvalidPdaError(ValueError):
    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class AnalysisStats:
    nfa_states: int
    gamma_edges: int
    eps_edges: int
    forward_passes: int
    backward_iterations: int


@dataclass(frozen=True)
class AnalysisReport:
    unreachable: frozenset[str]
    dead: frozenset[str]
    useful: frozenset[str]
    empty_language: bool
    stats: AnalysisStats

    @property
    def useless(self) -> frozenset[str]:
        return self.unreachable | self.dead


@dataclass
class PipelineResult:
    report: AnalysisReport
    aug: AugmentedPda
    fwd: ForwardResult
    p1: Pda
    bwd: BackwardResult


def run_pipeline(pda: Pda, *, use_closure_index: bool = True) -> PipelineResult:
    """augment -> forward -> backward, with verdicts on original ids."""
    diags = validate(pda)
    if diags:
        raise InvalidPdaError(diags)

    groups: dict[tuple, list[str]] = {}
    reps = []
    for t in pda.transitions:
        key = (t.source, t.pop, t.push, t.target)
        members = groups.setdefault(key, [])
        if not members:
            reps.append(t)
        members.append(t.id)
    rep_of = {t.id: (t.source, t.pop, t.push, t.target) for t in reps}

    aug = augment(replace(pda, transitions=tuple(reps)))
    fwd = run_forward(aug.p0, aug.bottom_marker, use_closure_index=use_closure_index)
    p1 = remove_transitions(aug.p0, set(fwd.u1))
    empty = (M0, NfaState.inherited(aug.final_state)) not in fwd.nfa.eps_edges
    bwd = run_backward(fwd, p1)

    def fan_out(p0_ids) -> frozenset[str]:
        out: set[str] = set()
        for tid in p0_ids:
            if aug.is_synthetic(tid):
                continue
            out.update(groups[rep_of[aug.origin_of[tid]]])
        return frozenset(out)

    unreachable = fan_out(fwd.u1)
    dead = fan_out(bwd.u2)
    useful = frozenset(t.id for t in pda.transitions) - unreachable - dead
    report = AnalysisReport(
        unreachable=unreachable,
        dead=dead,
        useful=useful,
        empty_language=empty,
        stats=AnalysisStats(
            nfa_states=len(fwd.nfa.states),
            gamma_edges=fwd.nfa.gamma_edge_count(),
            eps_edges=len(fwd.nfa.eps_edges),
            forward_passes=fwd.passes,
            backward_iterations=bwd.iterations,
        ),
    )
    return PipelineResult(report=report, aug=aug, fwd=fwd, p1=p1, bwd=bwd)


def analyze(pda: Pda, *, use_closure_index: bool = True) -> AnalysisReport:
    """Partition the transitions of ``pda`` into unreachable, dead and useful."""
    return run_pipeline(pda, use_closure_index=use_closure_index).report


def prune(pda: Pda, report: AnalysisReport, *, drop_orphan_states: bool = False) -> Pda:
    """Remove the useless transitions named by ``report``.

    States, alphabets, initial and final states are kept; pass
    ``drop_orphan_states=True`` to also drop states no remaining transition
    touches (the initial state always stays).
    """
    ids = frozenset(t.id for t in pda.transitions)
    if (
        report.unreachable | report.dead | report.useful != ids
        or report.unreachable & report.dead
        or report.useful & (report.unreachable | report.dead)
    ):
        raise ValueError("report does not partition this pda's transitions")
    pruned = remove_transitions(pda, set(report.useless))
    if drop_orphan_states:
        touched = {pda.initial}
        for t in pruned.transitions:
            touched.add(t.source)
            touched.add(t.target)
        pruned = replace(
            pruned,
            states=tuple(q for q in pruned.states if q in touched),
            finals=pruned.finals & touched,
        )
    return pruned
