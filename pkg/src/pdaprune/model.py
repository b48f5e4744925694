"""Core domain types: pushdown automata, configurations, and the summary NFA.

Stack strings are tuples of symbol names written TOP-FIRST: index 0 is the
top of the stack.  A transition ``q --in, pop/push--> r`` applicable in
configuration ``(q, pop + rest)`` yields ``(r, push + rest)``.  All string
reversals needed by the NFA construction happen at the NFA boundary, never
inside the PDA semantics.
"""

import re
from dataclasses import dataclass, replace
from typing import Iterator, NamedTuple

Symbol = str
StackString = tuple[Symbol, ...]

EPSILON: StackString = ()

# Symbol, state and transition-id names: non-empty, no whitespace, no comma,
# no '#' (comment character of the text format).
_NAME_RE = re.compile(r"^[^\s,#]+$")


def is_valid_name(name: str) -> bool:
    return bool(name) and _NAME_RE.match(name) is not None


@dataclass(frozen=True)
class PdaTransition:
    """One transition; ``input`` is None for an epsilon input."""

    id: str
    source: str
    input: Symbol | None
    pop: StackString
    push: StackString
    target: str

    def __str__(self) -> str:
        inp = self.input if self.input is not None else "eps"
        pop = ",".join(self.pop) or "eps"
        push = ",".join(self.push) or "eps"
        return f"{self.id}: {self.source} --{inp}, {pop}/{push}--> {self.target}"


@dataclass(frozen=True)
class Pda:
    """A nondeterministic pushdown automaton.

    ``states`` and the alphabets are tuples because declaration order is the
    canonical iteration order everywhere (analysis passes, printing, DOT).
    """

    states: tuple[str, ...]
    input_alphabet: tuple[Symbol, ...]
    stack_alphabet: tuple[Symbol, ...]
    transitions: tuple[PdaTransition, ...]
    initial: str
    finals: frozenset[str]

    def transition_ids(self) -> tuple[str, ...]:
        return tuple(t.id for t in self.transitions)

    def finals_ordered(self) -> tuple[str, ...]:
        """Final states in declaration order."""
        return tuple(q for q in self.states if q in self.finals)

    def by_source(self) -> dict[str, list[PdaTransition]]:
        out: dict[str, list[PdaTransition]] = {q: [] for q in self.states}
        for t in self.transitions:
            out.setdefault(t.source, []).append(t)
        return out


class Configuration(NamedTuple):
    state: str
    stack: StackString


def validate(pda: Pda) -> list[str]:
    """Check all Pda invariants; return one diagnostic per violation."""
    diags: list[str] = []
    states = set(pda.states)
    if len(states) != len(pda.states):
        diags.append("duplicate state declaration")
    for q in pda.states:
        if not is_valid_name(q):
            diags.append(f"invalid state name: {q!r}")
    for role, alpha in (("input", pda.input_alphabet), ("stack", pda.stack_alphabet)):
        if len(set(alpha)) != len(alpha):
            diags.append(f"duplicate {role} symbol declaration")
        for a in alpha:
            if not is_valid_name(a):
                diags.append(f"invalid {role} symbol name: {a!r}")
    if pda.initial not in states:
        diags.append(f"unknown state: initial {pda.initial!r}")
    for q in pda.finals:
        if q not in states:
            diags.append(f"unknown state: final {q!r}")
    sigma = set(pda.input_alphabet)
    gamma = set(pda.stack_alphabet)
    seen_ids: set[str] = set()
    for t in pda.transitions:
        if not is_valid_name(t.id):
            diags.append(f"invalid transition id: {t.id!r}")
        if t.id in seen_ids:
            diags.append(f"duplicate id: {t.id}")
        seen_ids.add(t.id)
        if t.source not in states:
            diags.append(f"unknown state: {t.id} source {t.source!r}")
        if t.target not in states:
            diags.append(f"unknown state: {t.id} target {t.target!r}")
        if t.input is not None and t.input not in sigma:
            diags.append(f"symbol outside alphabet: {t.id} input {t.input!r}")
        for a in t.pop:
            if a not in gamma:
                diags.append(f"symbol outside alphabet: {t.id} pop {a!r}")
        for a in t.push:
            if a not in gamma:
                diags.append(f"symbol outside alphabet: {t.id} push {a!r}")
    return diags


def step(pda: Pda, cfg: Configuration) -> set[tuple[str, Configuration]]:
    """All single moves from ``cfg``; input symbols are disregarded.

    Returns pairs (transition id, successor configuration).
    """
    out: set[tuple[str, Configuration]] = set()
    for t in pda.transitions:
        if t.source != cfg.state:
            continue
        k = len(t.pop)
        if cfg.stack[:k] == t.pop:
            out.add((t.id, Configuration(t.target, t.push + cfg.stack[k:])))
    return out


def remove_transitions(pda: Pda, ids: set[str]) -> Pda:
    """Copy of ``pda`` without the transitions named in ``ids``."""
    return replace(pda, transitions=tuple(t for t in pda.transitions if t.id not in ids))


# ---------------------------------------------------------------------------
# Summary NFA

_KIND_RANK = {"m0": 0, "pda": 1, "mid": 2}


class NfaState:
    """State of the summary NFA: the seed m0, a PDA state, or an intermediate.

    PDA-inherited states are exactly the final states of the NFA.  Instances
    sit in hot sets during saturation, hence the slots and the cached hash.
    """

    __slots__ = ("kind", "key", "final", "_hash")

    def __init__(self, kind: str, key: str | int = 0):
        self.kind = kind
        self.key = key
        self.final = kind == "pda"
        self._hash = hash((kind, key))

    @classmethod
    def inherited(cls, pda_state: str) -> "NfaState":
        return cls("pda", pda_state)

    @classmethod
    def intermediate(cls, index: int) -> "NfaState":
        return cls("mid", index)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NfaState)
            and self.kind == other.kind
            and self.key == other.key
        )

    def sort_key(self) -> tuple[int, str | int]:
        return (_KIND_RANK[self.kind], self.key)

    def label(self) -> str:
        if self.kind == "m0":
            return "m0"
        if self.kind == "pda":
            return str(self.key)
        return f"n{self.key}"

    def __repr__(self) -> str:
        return f"NfaState({self.label()})"


M0 = NfaState("m0")

EpsEdge = tuple[NfaState, NfaState]


def eps_edge_key(edge: EpsEdge) -> tuple:
    return (edge[0].sort_key(), edge[1].sort_key())


class NfaShapeError(Exception):
    """The NFA violates a structural invariant the construction guarantees."""


class NfaSummary:
    """NFA over the stack alphabet summarizing reachable stacks, in reverse.

    Mutated only during the forward construction; read-only afterwards.
    Gamma edges are kept in two single-valued maps because each non-final
    state carries exactly one outgoing gamma edge and each (label, target)
    pair has at most one source.
    """

    def __init__(self) -> None:
        self.states: set[NfaState] = set()
        self.gamma_out: dict[NfaState, tuple[Symbol, NfaState]] = {}
        self.gamma_in: dict[tuple[Symbol, NfaState], NfaState] = {}
        self.eps_edges: set[EpsEdge] = set()
        self.eps_out: dict[NfaState, set[NfaState]] = {}
        self.eps_in: dict[NfaState, set[NfaState]] = {}
        self._next_mid = 1

    @property
    def initial(self) -> NfaState:
        return M0

    def ensure_state(self, s: NfaState) -> None:
        self.states.add(s)

    def new_intermediate(self) -> NfaState:
        s = NfaState.intermediate(self._next_mid)
        self._next_mid += 1
        self.states.add(s)
        return s

    def add_gamma_edge(self, src: NfaState, label: Symbol, dst: NfaState) -> None:
        if src.final:
            raise NfaShapeError(f"gamma edge from final state {src!r}")
        if src in self.gamma_out:
            raise NfaShapeError(f"second gamma edge out of {src!r}")
        if (label, dst) in self.gamma_in:
            raise NfaShapeError(f"second gamma edge {label} into {dst!r}")
        self.states.add(src)
        self.states.add(dst)
        self.gamma_out[src] = (label, dst)
        self.gamma_in[(label, dst)] = src

    def add_eps_edge(self, x: NfaState, y: NfaState) -> bool:
        """Add x ->eps y unless already present; report whether added."""
        if (x, y) in self.eps_edges:
            return False
        self.eps_edges.add((x, y))
        self.eps_out.setdefault(x, set()).add(y)
        self.eps_in.setdefault(y, set()).add(x)
        return True

    def gamma_edges(self) -> Iterator[tuple[NfaState, Symbol, NfaState]]:
        for src, (label, dst) in self.gamma_out.items():
            yield (src, label, dst)

    def gamma_edge_count(self) -> int:
        return len(self.gamma_out)


def nfa_shape_violations(nfa: NfaSummary) -> list[str]:
    """Post-construction invariants: shape and reachability from m0."""
    diags: list[str] = []
    for s in nfa.states:
        if s.final and s in nfa.gamma_out:
            diags.append(f"final state {s!r} has an outgoing gamma edge")
        if not s.final and s not in nfa.gamma_out:
            diags.append(f"non-final state {s!r} lacks an outgoing gamma edge")
    for (label, dst), src in nfa.gamma_in.items():
        if nfa.gamma_out.get(src) != (label, dst):
            diags.append(f"gamma index mismatch at {src!r}")
    for x, y in nfa.eps_edges:
        if x not in nfa.states or y not in nfa.states:
            diags.append(f"eps edge {x!r}->{y!r} touches an unknown state")
    seen = {M0} if M0 in nfa.states else set()
    frontier = list(seen)
    while frontier:
        s = frontier.pop()
        nexts = []
        if s in nfa.gamma_out:
            nexts.append(nfa.gamma_out[s][1])
        nexts.extend(nfa.eps_out.get(s, ()))
        for t in nexts:
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    for s in nfa.states - seen:
        diags.append(f"state {s!r} unreachable from m0")
    return diags
