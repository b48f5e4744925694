"""Backward propagation: which reachable transitions can still accept.

A worklist of epsilon edges of the NFA is grown from m0 ->eps qf.  Each
edge x ->eps y justifies every P1 transition whose push path starts at y
and whose pop set S(q, pop) contains x; justifying a popping transition in
turn enqueues the epsilon edges lying on the matching pop paths.  Every
edge is processed at most once.  The memo set is the second documented
optimization: edges once enqueued from a path scan are never offered again.
"""

from collections import deque
from dataclasses import dataclass
from typing import Callable

from .forward import ForwardResult
from .model import (
    EpsEdge,
    NfaShapeError,
    NfaState,
    NfaSummary,
    Pda,
    StackString,
    Symbol,
    eps_edge_key,
)


def unique_gamma_path(nfa: NfaSummary, y: NfaState) -> tuple[tuple[Symbol, ...], NfaState]:
    """Follow gamma edges from y to the unique final state they reach.

    Returns the labels in path order (the reversed push string) and the
    endpoint.  Raises NfaShapeError if the walk cannot terminate, which
    would mean the forward construction produced a malformed NFA.
    """
    labels: list[Symbol] = []
    seen: set[NfaState] = set()
    cur = y
    while not cur.final:
        if cur in seen:
            raise NfaShapeError(f"gamma cycle through {cur!r}")
        seen.add(cur)
        edge = nfa.gamma_out.get(cur)
        if edge is None:
            raise NfaShapeError(f"non-final state {cur!r} has no gamma edge")
        labels.append(edge[0])
        cur = edge[1]
    return tuple(labels), cur


def scan_eps_on_paths(
    nfa: NfaSummary,
    x: NfaState,
    sigma: StackString,
    q: str,
    memo: set[EpsEdge] | None = None,
) -> set[EpsEdge]:
    """Epsilon edges on any path x --a--> z ==sigma'==> q, a = sigma's bottom.

    The first hop is x's gamma edge; after it, the remaining labels of the
    reversed pop string may be interleaved with epsilon edges anywhere.  An
    edge qualifies only if it lies on a complete such path, so the scan
    intersects forward reachability from the hop target with backward
    reachability from q over the (position, state) product.

    With a ``memo`` set, edges already seen by earlier scans are dropped
    from the result and the memo is extended.
    """
    q_state = NfaState.inherited(q)
    if not sigma or q_state not in nfa.states:
        return set()
    hop = nfa.gamma_out.get(x)
    if hop is None or hop[0] != sigma[-1]:
        return set()
    labels = tuple(reversed(sigma[:-1]))
    k = len(labels)

    fwd: set[tuple[NfaState, int]] = set()
    stack = [(hop[1], 0)]
    while stack:
        node = stack.pop()
        if node in fwd:
            continue
        fwd.add(node)
        u, i = node
        for v in nfa.eps_out.get(u, ()):
            stack.append((v, i))
        if i < k:
            edge = nfa.gamma_out.get(u)
            if edge is not None and edge[0] == labels[i]:
                stack.append((edge[1], i + 1))

    bwd: set[tuple[NfaState, int]] = set()
    stack = [(q_state, k)]
    while stack:
        node = stack.pop()
        if node in bwd:
            continue
        bwd.add(node)
        v, i = node
        for u in nfa.eps_in.get(v, ()):
            stack.append((u, i))
        if i > 0:
            src = nfa.gamma_in.get((labels[i - 1], v))
            if src is not None:
                stack.append((src, i - 1))

    found: set[EpsEdge] = set()
    for u, i in fwd:
        for v in nfa.eps_out.get(u, ()):
            if (v, i) in bwd:
                found.add((u, v))
    if memo is None:
        return found
    fresh = found - memo
    memo |= found
    return fresh


@dataclass
class BackwardResult:
    u2: frozenset[str]
    iterations: int


class _IndexedNfa:
    """Integer-indexed, fully closed view of a finished NFA.

    The NFA never changes during the backward run, so epsilon closures are
    precomputed per state and path scans collapse to per-level intersections
    of frozen sets.  Scan results and the per-level reach sets they share
    are cached; indexing follows the deterministic state order.
    """

    def __init__(self, nfa: NfaSummary):
        self.states = sorted(nfa.states, key=NfaState.sort_key)
        self.index = {s: i for i, s in enumerate(self.states)}
        n = len(self.states)
        eps_out: list[list[int]] = [[] for _ in range(n)]
        eps_in: list[list[int]] = [[] for _ in range(n)]
        for x, y in sorted(nfa.eps_edges, key=eps_edge_key):
            eps_out[self.index[x]].append(self.index[y])
            eps_in[self.index[y]].append(self.index[x])
        self.eps_out_set = [frozenset(v) for v in eps_out]
        self.gamma_out: list[tuple[Symbol, int] | None] = [None] * n
        for src, (label, dst) in nfa.gamma_out.items():
            self.gamma_out[self.index[src]] = (label, self.index[dst])
        self.gamma_in: dict[tuple[Symbol, int], int] = {
            (label, self.index[dst]): self.index[src]
            for (label, dst), src in nfa.gamma_in.items()
        }
        self.fro_closure = [self._reach(i, eps_out) for i in range(n)]
        self.to_closure = [self._reach(i, eps_in) for i in range(n)]
        self._walks: dict[int, tuple[tuple[Symbol, ...], int]] = {}
        self._scans: dict[tuple[int, StackString, int], frozenset[tuple[int, int]]] = {}
        self._fwd_levels: dict[tuple[int, tuple[Symbol, ...]], tuple] = {}
        self._bwd_levels: dict[tuple[int, tuple[Symbol, ...]], tuple] = {}

    @staticmethod
    def _reach(start: int, adjacency: list[list[int]]) -> frozenset[int]:
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt in adjacency[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return frozenset(seen)

    def walk(self, y: int) -> tuple[tuple[Symbol, ...], int]:
        cached = self._walks.get(y)
        if cached is not None:
            return cached
        labels: list[Symbol] = []
        seen: set[int] = set()
        cur = y
        while not self.states[cur].final:
            if cur in seen:
                raise NfaShapeError(f"gamma cycle through {self.states[cur]!r}")
            seen.add(cur)
            edge = self.gamma_out[cur]
            if edge is None:
                raise NfaShapeError(
                    f"non-final state {self.states[cur]!r} has no gamma edge"
                )
            labels.append(edge[0])
            cur = edge[1]
        result = self._walks[y] = (tuple(labels), cur)
        return result

    def _forward_levels(self, z0: int, labels: tuple[Symbol, ...]) -> tuple:
        """Level i holds the states reachable from z0 after i label hops."""
        key = (z0, labels)
        cached = self._fwd_levels.get(key)
        if cached is not None:
            return cached
        levels = [self.fro_closure[z0]]
        for label in labels:
            targets = set()
            for u in levels[-1]:
                edge = self.gamma_out[u]
                if edge is not None and edge[0] == label:
                    targets.add(edge[1])
            nxt: set[int] = set()
            for d in targets:
                nxt |= self.fro_closure[d]
            levels.append(frozenset(nxt))
        result = self._fwd_levels[key] = tuple(levels)
        return result

    def _backward_levels(self, q: int, labels: tuple[Symbol, ...]) -> tuple:
        """Level i holds the states that can still read labels[i:] into q."""
        key = (q, labels)
        cached = self._bwd_levels.get(key)
        if cached is not None:
            return cached
        k = len(labels)
        levels: list = [None] * (k + 1)
        levels[k] = self.to_closure[q]
        for i in range(k - 1, -1, -1):
            sources = set()
            for v in levels[i + 1]:
                src = self.gamma_in.get((labels[i], v))
                if src is not None:
                    sources.add(src)
            cur: set[int] = set()
            for s in sources:
                cur |= self.to_closure[s]
            levels[i] = frozenset(cur)
        result = self._bwd_levels[key] = tuple(levels)
        return result

    def scan(self, x: int, sigma: StackString, q: int) -> frozenset[tuple[int, int]]:
        """Epsilon edges on complete pop paths; see scan_eps_on_paths."""
        key = (x, sigma, q)
        cached = self._scans.get(key)
        if cached is not None:
            return cached
        hop = self.gamma_out[x]
        if hop is None or hop[0] != sigma[-1]:
            result: frozenset[tuple[int, int]] = frozenset()
        else:
            labels = tuple(reversed(sigma[:-1]))
            fwd = self._forward_levels(hop[1], labels)
            bwd = self._backward_levels(q, labels)
            found: set[tuple[int, int]] = set()
            for f_level, b_level in zip(fwd, bwd):
                if not f_level or not b_level:
                    continue
                for u in f_level:
                    for v in self.eps_out_set[u] & b_level:
                        found.add((u, v))
            result = frozenset(found)
        self._scans[key] = result
        return result

    def scan_fresh(
        self, x: int, sigma: StackString, q: int, memo_out: dict[int, set[int]]
    ) -> list[tuple[int, int]]:
        """Like scan, but suppresses edges recorded in ``memo_out`` and
        extends it; across a whole run each edge surfaces at most once."""
        hop = self.gamma_out[x]
        if hop is None or hop[0] != sigma[-1]:
            return []
        labels = tuple(reversed(sigma[:-1]))
        fwd = self._forward_levels(hop[1], labels)
        bwd = self._backward_levels(q, labels)
        out: list[tuple[int, int]] = []
        for f_level, b_level in zip(fwd, bwd):
            if not f_level or not b_level:
                continue
            for u in f_level:
                hits = self.eps_out_set[u] & b_level
                if not hits:
                    continue
                seen = memo_out.get(u)
                if seen is not None:
                    hits = hits - seen
                    if not hits:
                        continue
                    seen |= hits
                else:
                    memo_out[u] = set(hits)
                for v in sorted(hits):
                    out.append((u, v))
        return out


def run_backward(
    fwd: ForwardResult,
    p1: Pda,
    *,
    memoize: bool = True,
    pick: Callable[[list], int] | None = None,
) -> BackwardResult:
    """Compute U2, the transitions of P1 that reach no accepting run.

    ``p1`` must be P0 with the unreachable transitions removed; its single
    final state is the augmented one.  If the NFA lacks the edge
    m0 ->eps qf the accepted language is empty and every transition of P1
    is returned.  ``pick`` overrides the FIFO worklist discipline (it gets
    the list of pending entries and returns an index); the result set does
    not depend on it.
    """
    nfa = fwd.nfa
    if len(p1.finals) != 1:
        raise ValueError("backward analysis requires the augmented single-final form")
    (qf,) = p1.finals
    all_ids = frozenset(t.id for t in p1.transitions)
    if (nfa.initial, NfaState.inherited(qf)) not in nfa.eps_edges:
        return BackwardResult(u2=all_ids, iterations=0)

    infa = _IndexedNfa(nfa)
    seed = (infa.index[nfa.initial], infa.index[NfaState.inherited(qf)])

    by_push_target: dict[tuple[StackString, str], list] = {}
    ssets_idx: dict[tuple[str, StackString], frozenset[int]] = {}
    for t in p1.transitions:
        by_push_target.setdefault((t.push, t.target), []).append(t)
        key = (t.source, t.pop)
        if key not in ssets_idx:
            ssets_idx[key] = frozenset(
                infa.index[s] for s in fwd.ssets.get(key, ()) if s in infa.index
            )

    u2 = set(all_ids)
    enqueued: set[tuple[int, int]] = {seed}
    pending: deque[tuple[int, int]] | list[tuple[int, int]]
    pending = deque([seed]) if pick is None else [seed]
    memo_out: dict[int, set[int]] | None = {} if memoize else None
    iterations = 0

    while pending:
        if pick is None:
            x, y = pending.popleft()  # type: ignore[union-attr]
        else:
            x, y = pending.pop(pick(list(pending)))
        iterations += 1
        labels, r = infa.walk(y)
        push = tuple(reversed(labels))
        for t in by_push_target.get((push, infa.states[r].key), ()):
            if x not in ssets_idx[(t.source, t.pop)]:
                continue
            u2.discard(t.id)
            if t.pop:
                q_idx = infa.index.get(NfaState.inherited(t.source))
                if q_idx is None:
                    continue
                if memo_out is not None:
                    fresh = infa.scan_fresh(x, t.pop, q_idx, memo_out)
                else:
                    fresh = sorted(infa.scan(x, t.pop, q_idx))
                for edge in fresh:
                    if edge not in enqueued:
                        enqueued.add(edge)
                        pending.append(edge)

    return BackwardResult(u2=frozenset(u2), iterations=iterations)
