"""DOT (graphviz) export for automata and summary NFAs.

Final states are drawn as double circles, the initial state gets an
incoming arrow from a point-shaped helper node, and the empty string is
rendered as "eps".
"""

from .model import NfaSummary, Pda, eps_edge_key


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def pda_to_dot(pda: Pda) -> str:
    lines = ["digraph pda {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in pda.states:
        shape = "doublecircle" if q in pda.finals else "circle"
        lines.append(f"  {_quote(q)} [shape={shape}];")
    lines.append(f"  __start -> {_quote(pda.initial)};")
    for t in pda.transitions:
        inp = t.input if t.input is not None else "eps"
        pop = ",".join(t.pop) or "eps"
        push = ",".join(t.push) or "eps"
        label = _quote(f"{t.id}: {inp} : {pop}/{push}")
        lines.append(f"  {_quote(t.source)} -> {_quote(t.target)} [label={label}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def nfa_to_dot(nfa: NfaSummary) -> str:
    states = sorted(nfa.states, key=lambda s: s.sort_key())
    names = {s: f"s{i}" for i, s in enumerate(states)}
    lines = ["digraph nfa {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for s in states:
        shape = "doublecircle" if s.final else "circle"
        lines.append(f"  {names[s]} [shape={shape}, label={_quote(s.label())}];")
    lines.append(f"  __start -> {names[nfa.initial]};")
    for src, label, dst in sorted(
        nfa.gamma_edges(), key=lambda e: (e[0].sort_key(), e[1], e[2].sort_key())
    ):
        lines.append(f"  {names[src]} -> {names[dst]} [label={_quote(label)}];")
    for x, y in sorted(nfa.eps_edges, key=eps_edge_key):
        lines.append(f'  {names[x]} -> {names[y]} [label="eps", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
