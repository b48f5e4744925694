import random

import pytest

from pdaprune import Pda, PdaTransition, random_pda


def make_pda(states, inputs, stack, transitions, initial, finals):
    """Compact constructor: transitions as (id, src, inp, pop, push, dst)."""
    return Pda(
        states=tuple(states),
        input_alphabet=tuple(inputs),
        stack_alphabet=tuple(stack),
        transitions=tuple(
            PdaTransition(tid, src, inp, tuple(pop), tuple(push), dst)
            for tid, src, inp, pop, push, dst in transitions
        ),
        initial=initial,
        finals=frozenset(finals),
    )


def corpus(count, start_seed=0, max_states=6, max_trans=12, gamma_size=3):
    """Deterministic mixed-size corpus; sizes cycle within the given caps."""
    out = []
    for seed in range(start_seed, start_seed + count):
        out.append(
            random_pda(
                seed,
                max_states=seed % max_states + 1,
                max_trans=seed % (max_trans + 1),
                max_pop_push=2,
                gamma_size=seed % gamma_size + 1,
            )
        )
    return out


def shuffled_transitions(pda, seed):
    rng = random.Random(seed)
    transitions = list(pda.transitions)
    rng.shuffle(transitions)
    return Pda(
        states=pda.states,
        input_alphabet=pda.input_alphabet,
        stack_alphabet=pda.stack_alphabet,
        transitions=tuple(transitions),
        initial=pda.initial,
        finals=pda.finals,
    )


def nfa_accepted_configs(nfa, max_len):
    """(state, stack) pairs the summary NFA claims reachable, stacks <= max_len.

    Enumerates label strings from m0 with epsilon closure between hops; the
    stack is the reverse of the accepted string.
    """

    def closure(states):
        out = set(states)
        frontier = list(states)
        while frontier:
            s = frontier.pop()
            for t in nfa.eps_out.get(s, ()):
                if t not in out:
                    out.add(t)
                    frontier.append(t)
        return out

    configs = set()
    frontier = {(): frozenset(closure({nfa.initial}))}
    for length in range(max_len + 1):
        nxt = {}
        for word, states in frontier.items():
            for s in states:
                if s.final:
                    configs.add((s.key, tuple(reversed(word))))
                edge = nfa.gamma_out.get(s)
                if edge is not None and length < max_len:
                    key = word + (edge[0],)
                    nxt.setdefault(key, set()).update(closure({edge[1]}))
        frontier = {w: frozenset(s) for w, s in nxt.items()}
    return configs


@pytest.fixture
def example1():
    """The four-state worked example: t3 pushes 'da' that nothing can pop."""
    return make_pda(
        states=["q0", "q1", "q2", "q3"],
        inputs=[],
        stack=["a", "b", "c", "d"],
        transitions=[
            ("t1", "q0", None, "", "a", "q1"),
            ("t2", "q0", None, "", "b", "q1"),
            ("t3", "q0", None, "", "da", "q2"),
            ("t4", "q1", None, "", "c", "q2"),
            ("t5", "q1", None, "", "d", "q2"),
            ("t6", "q2", None, "ca", "", "q3"),
            ("t7", "q2", None, "db", "", "q3"),
        ],
        initial="q0",
        finals=["q3"],
    )


@pytest.fixture
def example1_p0_restricted():
    """Example-1 P0 with the drain state left out: q3 pops the marker itself.

    This is the exact instance whose summary NFA the golden tests pin down.
    """
    return make_pda(
        states=["q0", "q1", "q2", "q3", "qf"],
        inputs=[],
        stack=["a", "b", "c", "d", "b0"],
        transitions=[
            ("t1", "q0", None, "", "a", "q1"),
            ("t2", "q0", None, "", "b", "q1"),
            ("t3", "q0", None, "", "da", "q2"),
            ("t4", "q1", None, "", "c", "q2"),
            ("t5", "q1", None, "", "d", "q2"),
            ("t6", "q2", None, "ca", "", "q3"),
            ("t7", "q2", None, "db", "", "q3"),
            ("t8", "q3", None, ["b0"], [], "qf"),
        ],
        initial="q0",
        finals=["qf"],
    )
