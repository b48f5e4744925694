"""Forward saturation: build the summary NFA and the unreachable set.

The NFA is grown by repeated passes over the transitions of P0 until a pass
adds no state or edge.  For a transition ``q --pop/push--> r`` the set
S(q, pop) collects the NFA states from which popping ``pop`` lands in q;
each of them gets an epsilon jump to the head of the (unique) path that
spells the reversed push string into r.  Path establishment shares existing
suffixes, so per transition at most one path is ever created.

The backward epsilon-closure index is the first of the two documented
optimizations: it replaces per-query backward scans over epsilon edges.
It can be switched off (``use_closure_index=False``) to cross-check results;
both modes must agree.
"""

from dataclasses import dataclass, field

from .model import (
    M0,
    NfaState,
    NfaSummary,
    Pda,
    StackString,
    Symbol,
)


class EpsClosure:
    """Incremental, reflexive epsilon-reachability index over the NFA.

    ``to[s]`` holds every state with an epsilon-only path to ``s`` (including
    ``s``); ``fro[s]`` is the forward mirror, needed to keep ``to`` exact as
    edges arrive one by one.  Entries materialize lazily so freshly created
    NFA states need no registration call.
    """

    def __init__(self) -> None:
        self.to: dict[NfaState, set[NfaState]] = {}
        self.fro: dict[NfaState, set[NfaState]] = {}

    def backward(self, s: NfaState) -> set[NfaState]:
        return self.to.setdefault(s, {s})

    def forward(self, s: NfaState) -> set[NfaState]:
        return self.fro.setdefault(s, {s})

    def add_edge(self, x: NfaState, y: NfaState) -> None:
        if y in self.forward(x):
            return
        sources = set(self.backward(x))
        targets = set(self.forward(y))
        for s in targets:
            self.backward(s).update(sources)
        for p in sources:
            self.forward(p).update(targets)


def eps_backward_set(
    nfa: NfaSummary, targets: set[NfaState], closure: EpsClosure | None
) -> set[NfaState]:
    """States with an epsilon-only path into ``targets`` (reflexive)."""
    if closure is not None:
        out: set[NfaState] = set()
        for t in targets:
            out |= closure.backward(t)
        return out
    out = set(targets)
    frontier = list(targets)
    while frontier:
        s = frontier.pop()
        for p in nfa.eps_in.get(s, ()):
            if p not in out:
                out.add(p)
                frontier.append(p)
    return out


def compute_s(
    nfa: NfaSummary,
    q: str,
    sigma: StackString,
    closure: EpsClosure | None = None,
) -> set[NfaState]:
    """The set S(q, sigma) of NFA states from which popping sigma reaches q.

    Scans backwards from the inherited state of q, peeling sigma top-first;
    epsilon expansion is allowed before every hop but not after the last one,
    so results are exactly the sources of a real gamma edge labeled with
    sigma's bottom-most symbol.
    """
    state = NfaState.inherited(q)
    if state not in nfa.states:
        return set()
    if not sigma:
        return {state}
    targets = {state}
    for label in sigma:
        expanded = eps_backward_set(nfa, targets, closure)
        targets = set()
        for t in expanded:
            src = nfa.gamma_in.get((label, t))
            if src is not None:
                targets.add(src)
        if not targets:
            break
    return targets


def establish_path(nfa: NfaSummary, labels: tuple[Symbol, ...], z: NfaState) -> NfaState:
    """Ensure a gamma path spelling ``labels`` into ``z``; return its head.

    Reuses the unique existing suffix where possible and only then creates
    fresh intermediate states for the remaining prefix.
    """
    nfa.ensure_state(z)
    k = len(labels)
    while k > 0:
        src = nfa.gamma_in.get((labels[k - 1], z))
        if src is None:
            break
        z = src
        k -= 1
    if k == 0:
        return z
    chain = [nfa.new_intermediate() for _ in range(k)]
    for i in range(k - 1):
        nfa.add_gamma_edge(chain[i], labels[i], chain[i + 1])
    nfa.add_gamma_edge(chain[k - 1], labels[k - 1], z)
    return chain[0]


@dataclass
class ForwardResult:
    nfa: NfaSummary
    u1: frozenset[str]
    ssets: dict[tuple[str, StackString], frozenset[NfaState]]
    path_head: dict[str, NfaState]
    passes: int
    closure: EpsClosure | None = field(default=None, repr=False)


def run_forward(p0: Pda, bottom: Symbol, *, use_closure_index: bool = True) -> ForwardResult:
    """Saturate the NFA for P0 and return it with the unreachable set U1.

    P0 starts in its initial state with the bottom marker as the whole
    stack, which is what the seed edge m0 --bottom--> q0 encodes.
    """
    nfa = NfaSummary()
    nfa.add_gamma_edge(M0, bottom, NfaState.inherited(p0.initial))
    closure = EpsClosure() if use_closure_index else None

    u1 = {t.id for t in p0.transitions}
    path_head: dict[str, NfaState] = {}
    passes = 0
    while True:
        passes += 1
        changed = False
        for t in p0.transitions:
            if NfaState.inherited(t.source) not in nfa.states:
                continue
            s_set = compute_s(nfa, t.source, t.pop, closure)
            if not s_set:
                continue
            if t.id in u1:
                u1.remove(t.id)
                before = (len(nfa.states), nfa.gamma_edge_count())
                head = establish_path(
                    nfa, tuple(reversed(t.push)), NfaState.inherited(t.target)
                )
                path_head[t.id] = head
                if (len(nfa.states), nfa.gamma_edge_count()) != before:
                    changed = True
            else:
                head = path_head[t.id]
            for x in sorted(s_set, key=NfaState.sort_key):
                if nfa.add_eps_edge(x, head):
                    if closure is not None:
                        closure.add_edge(x, head)
                    changed = True
        if not changed:
            break

    # The values from the final (unchanged) pass, for the backward procedure.
    ssets = {
        (t.source, t.pop): frozenset(compute_s(nfa, t.source, t.pop, closure))
        for t in p0.transitions
    }
    return ForwardResult(
        nfa=nfa,
        u1=frozenset(u1),
        ssets=ssets,
        path_head=path_head,
        passes=passes,
        closure=closure,
    )
