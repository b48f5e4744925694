"""Line-based text formats for automata and grammars.

PDA documents::

    # comment
    state q0 initial
    state q3 final
    input x y
    stack a b c d
    trans t6 q2 - c,a - q3

``trans <id> <from> <input|-> <pop|-> <push|-> <to>``; pop and push are
comma-separated symbol lists written top-first, '-' is the empty string.
Grammar documents hold one ``A -> x y z`` production per line (``|``
separates alternatives on input), plus an optional ``%start A`` line;
a symbol is a terminal iff it never appears on a left-hand side.
"""

from .model import Pda, PdaTransition, StackString, validate
from .oracle import Grammar, make_grammar


class PdaFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _split_list(token: str, declared: set[str], line_no: int, role: str) -> StackString:
    if token == "-":
        return ()
    symbols = tuple(token.split(","))
    for s in symbols:
        if not s:
            raise PdaFormatError(f"empty symbol in {role} list", line_no)
        if s not in declared:
            raise PdaFormatError(f"unknown symbol: {role} {s!r}", line_no)
    return symbols


def parse_pda(text: str) -> Pda:
    """Parse a PDA document; raises PdaFormatError with a line number."""
    states: list[str] = []
    initial: str | None = None
    finals: set[str] = set()
    inputs: list[str] = []
    stacks: list[str] = []
    trans_lines: list[tuple[int, list[str]]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive = tokens[0]
        if directive == "state":
            if len(tokens) < 2:
                raise PdaFormatError("state needs a name", line_no)
            name = tokens[1]
            if name in states:
                raise PdaFormatError(f"duplicate state {name!r}", line_no)
            states.append(name)
            for flag in tokens[2:]:
                if flag == "initial":
                    if initial is not None:
                        raise PdaFormatError("second initial state", line_no)
                    initial = name
                elif flag == "final":
                    finals.add(name)
                else:
                    raise PdaFormatError(f"unknown state flag {flag!r}", line_no)
        elif directive == "input":
            for s in tokens[1:]:
                if s in inputs:
                    raise PdaFormatError(f"duplicate input symbol {s!r}", line_no)
                inputs.append(s)
        elif directive == "stack":
            for s in tokens[1:]:
                if s in stacks:
                    raise PdaFormatError(f"duplicate stack symbol {s!r}", line_no)
                stacks.append(s)
        elif directive == "trans":
            trans_lines.append((line_no, tokens))
        else:
            raise PdaFormatError(f"unknown directive {directive!r}", line_no)

    if initial is None:
        raise PdaFormatError("no initial state declared", 1 + text.count("\n"))

    state_set = set(states)
    input_set = set(inputs)
    stack_set = set(stacks)
    transitions: list[PdaTransition] = []
    seen_ids: set[str] = set()
    for line_no, tokens in trans_lines:
        if len(tokens) != 7:
            raise PdaFormatError("trans needs: id from input pop push to", line_no)
        _, tid, src, inp, pop, push, dst = tokens
        if tid in seen_ids:
            raise PdaFormatError(f"duplicate id: {tid}", line_no)
        seen_ids.add(tid)
        if src not in state_set:
            raise PdaFormatError(f"unknown state: {src!r}", line_no)
        if dst not in state_set:
            raise PdaFormatError(f"unknown state: {dst!r}", line_no)
        if inp != "-" and inp not in input_set:
            raise PdaFormatError(f"unknown symbol: input {inp!r}", line_no)
        transitions.append(
            PdaTransition(
                id=tid,
                source=src,
                input=None if inp == "-" else inp,
                pop=_split_list(pop, stack_set, line_no, "pop"),
                push=_split_list(push, stack_set, line_no, "push"),
                target=dst,
            )
        )

    pda = Pda(
        states=tuple(states),
        input_alphabet=tuple(inputs),
        stack_alphabet=tuple(stacks),
        transitions=tuple(transitions),
        initial=initial,
        finals=frozenset(finals),
    )
    diags = validate(pda)
    if diags:
        raise PdaFormatError(diags[0], 1 + text.count("\n"))
    return pda


def print_pda(pda: Pda) -> str:
    lines = []
    for q in pda.states:
        flags = ""
        if q == pda.initial:
            flags += " initial"
        if q in pda.finals:
            flags += " final"
        lines.append(f"state {q}{flags}")
    if pda.input_alphabet:
        lines.append("input " + " ".join(pda.input_alphabet))
    if pda.stack_alphabet:
        lines.append("stack " + " ".join(pda.stack_alphabet))
    for t in pda.transitions:
        inp = t.input if t.input is not None else "-"
        pop = ",".join(t.pop) or "-"
        push = ",".join(t.push) or "-"
        lines.append(f"trans {t.id} {t.source} {inp} {pop} {push} {t.target}")
    return "\n".join(lines) + "\n"


def parse_grammar(text: str) -> Grammar:
    """Parse a grammar document; one production per alternative."""
    productions: list[tuple[str, tuple[str, ...]]] = []
    start: str | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%start"):
            tokens = line.split()
            if len(tokens) != 2:
                raise PdaFormatError("%start needs one symbol", line_no)
            start = tokens[1]
            continue
        if "->" not in line:
            raise PdaFormatError("expected 'lhs -> rhs'", line_no)
        lhs_text, rhs_text = line.split("->", 1)
        lhs = lhs_text.strip()
        if not lhs or len(lhs.split()) != 1:
            raise PdaFormatError("production needs a single lhs symbol", line_no)
        for alt in rhs_text.split("|"):
            productions.append((lhs, tuple(alt.split())))
    if not productions and start is None:
        raise PdaFormatError("empty grammar", 1 + text.count("\n"))
    return make_grammar(productions, start)


def print_grammar(g: Grammar) -> str:
    lines = [f"%start {g.start}"]
    for lhs, rhs in g.productions:
        lines.append(f"{lhs} -> {' '.join(str(s) for s in rhs)}".rstrip())
    return "\n".join(lines) + "\n"
