"""Nets reconstructed from the constructions and counterexamples discussed in
the literature on substitution soundness.

Where only a behavioural description is available, the net here is a
stand-in whose behaviour is checked by the test-suite, not a copy of a
drawing.  ``fixtures/MANIFEST.md`` maps each net to its file.
"""

from __future__ import annotations

from .andor import RefinementTree, expand
from .net import Kind, WorkflowNet, workflow


def single_place(name: str = "p") -> WorkflowNet:
    return workflow([name], [], [], [name], [name], name="single_place")


def single_transition(name: str = "t") -> WorkflowNet:
    return workflow([], [name], [], [name], [name], name="single_transition")


def fig1_traffic() -> WorkflowNet:
    """Traffic lights: red, red+yellow, green, back to red.

    ``left`` blocks t1 from firing twice in a row.  Initial marking is
    ``[red, left]``, which is also the input and output bag.
    """
    arcs = [
        ("red", "t1"), ("left", "t1"), ("t1", "red"), ("t1", "yellow"),
        ("red", "t2"), ("yellow", "t2"), ("t2", "green"),
        ("green", "t3"), ("t3", "red"), ("t3", "left"),
    ]
    return workflow(["red", "left", "yellow", "green"], ["t1", "t2", "t3"], arcs,
                    ["red", "left"], ["red", "left"], name="fig1_traffic")


def one_not_two() -> WorkflowNet:
    """1-sound but not 2-sound: b needs i and p together."""
    arcs = [("i", "a"), ("a", "p"), ("p", "c"), ("c", "o"), ("i", "b"), ("p", "b"), ("b", "o")]
    return workflow(["i", "p", "o"], ["a", "b", "c"], arcs, ["i"], ["o"], name="one_not_two")


def fig7_N() -> WorkflowNet:
    """*-sound, yet its transition completion is not even 1-sound.

    A puts a token on b and on the output c; B consumes b and c and gives
    c back.  Taking c away before B has run strands b.
    """
    arcs = [("a", "A"), ("A", "b"), ("A", "c"), ("b", "B"), ("c", "B"), ("B", "c")]
    return workflow(["a", "b", "c"], ["A", "B"], arcs, ["a"], ["c"], name="fig7_N")


def sequential3() -> WorkflowNet:
    """i -> t1 -> p -> t2 -> o."""
    arcs = [("i", "t1"), ("t1", "p"), ("p", "t2"), ("t2", "o")]
    return workflow(["i", "p", "o"], ["t1", "t2"], arcs, ["i"], ["o"], name="sequential3")


def m_k(k: int) -> WorkflowNet:
    """A sub-sound net that funnels k tokens through place ``d``.

    The chain B1..Bk puts k tokens on d one by one and then starts a
    counter token on e0.  E moves each d token to g, and D1..Dk consume
    one g each while advancing the counter; F finishes on f.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    places = ["a", "d", "g", "f"] + [f"b{i}" for i in range(1, k)] + [f"e{i}" for i in range(k + 1)]
    transitions = ["E", "F"] + [f"B{i}" for i in range(1, k + 1)] + [f"D{i}" for i in range(1, k + 1)]
    arcs = []
    for i in range(1, k + 1):
        src = "a" if i == 1 else f"b{i - 1}"
        nxt = f"b{i}" if i < k else "e0"
        arcs += [(src, f"B{i}"), (f"B{i}", "d"), (f"B{i}", nxt)]
        arcs += [("g", f"D{i}"), (f"e{i - 1}", f"D{i}"), (f"D{i}", f"e{i}")]
    arcs += [("d", "E"), ("E", "g"), (f"e{k}", "F"), ("F", "f")]
    return workflow(places, transitions, arcs, ["a"], ["f"], name=f"M_{k}")


def por_border_cycle() -> WorkflowNet:
    """One-input one-output pOR net whose border places lie on a cycle."""
    arcs = [("i", "x"), ("x", "o"), ("o", "y"), ("y", "i")]
    return workflow(["i", "o"], ["x", "y"], arcs, ["i"], ["o"], name="por_border_cycle")


def por_self_loop() -> WorkflowNet:
    """p -> t -> p with p the only input and output."""
    return workflow(["p"], ["t"], [("p", "t"), ("t", "p")], ["p"], ["p"], name="por_self_loop")


def output_feeds_input() -> WorkflowNet:
    """AND-shaped pWF net whose output o1 feeds the input i1."""
    arcs = [("i2", "t1"), ("t1", "o1"), ("o1", "t2"), ("t2", "i1"), ("i1", "t3"), ("t3", "o2")]
    return workflow(["i1", "i2", "o1", "o2"], ["t1", "t2", "t3"], arcs,
                    ["i1", "i2"], ["o1", "o2"], name="output_feeds_input")


def transition_self_loop() -> WorkflowNet:
    """Transition t with a marked-graph self loop through p; cyclic."""
    return workflow(["p"], ["t"], [("t", "p"), ("p", "t")], ["t"], ["t"], name="transition_self_loop")


def two_input_tand() -> WorkflowNet:
    """tAND with two input transitions joined by t3."""
    arcs = [("t1", "p1"), ("t2", "p2"), ("p1", "t3"), ("p2", "t3")]
    return workflow(["p1", "p2"], ["t1", "t2", "t3"], arcs, ["t1", "t2"], ["t3"], name="two_input_tand")


def two_input_por() -> WorkflowNet:
    """pOR with two input places merging into one output place."""
    arcs = [("i1", "t1"), ("t1", "o"), ("i2", "t2"), ("t2", "o")]
    return workflow(["i1", "i2", "o"], ["t1", "t2"], arcs, ["i1", "i2"], ["o"], name="two_input_por")


def thm2_tor_chain() -> WorkflowNet:
    return workflow(["p"], ["ti", "to"], [("ti", "p"), ("p", "to")], ["ti"], ["to"], name="tor_chain")


def thm2_pand_body() -> WorkflowNet:
    """x and y in parallel; x passes through A before the join."""
    arcs = [("x", "A"), ("A", "x2")]
    return workflow(["x", "x2", "y"], ["A"], arcs, ["x", "y"], ["x2", "y"], name="pand_body")


def thm2_target() -> WorkflowNet:
    """The one-input one-output tAND net that the chain plus body expands to."""
    arcs = [("ti", "p/x"), ("ti", "p/y"), ("p/x", "p/A"), ("p/A", "p/x2"),
            ("p/x2", "to"), ("p/y", "to")]
    return workflow(["p/x", "p/x2", "p/y"], ["ti", "to", "p/A"], arcs, ["ti"], ["to"],
                    name="thm2_target")


def thm2_tree() -> RefinementTree:
    return RefinementTree(thm2_tor_chain(), (("p", RefinementTree(thm2_pand_body())),))


def linear3() -> WorkflowNet:
    """a -> T1 -> x -> T2 -> e: both a pAND and a one-input one-output pOR net."""
    arcs = [("a", "T1"), ("T1", "x"), ("x", "T2"), ("T2", "e")]
    return workflow(["a", "x", "e"], ["T1", "T2"], arcs, ["a"], ["e"], name="linear3")


def alternatives(*names: str) -> WorkflowNet:
    """tOR net of parallel alternative transitions, each both input and output."""
    return workflow([], names, [], names, names, name="alternatives")


def parallel_places(*names: str) -> WorkflowNet:
    """pAND net of unconnected places, each both input and output."""
    return workflow(names, [], [], names, names, name="parallel_places")


def thm3_fig15b_tree() -> RefinementTree:
    """Contract {A, B} and {C, D} to transitions and {b, c} to a place: a linear net."""
    return RefinementTree(linear3(), (
        ("T1", RefinementTree(alternatives("A", "B"))),
        ("x", RefinementTree(parallel_places("b", "c"))),
        ("T2", RefinementTree(alternatives("C", "D"))),
    ))


def thm3_fig15b() -> WorkflowNet:
    return _named(expand(thm3_fig15b_tree()), "thm3_fig15b")


def nested_refinement_tree() -> RefinementTree:
    """Base net with two nested refinements: a place inside a refined transition is refined again."""
    chain = workflow(["q"], ["A", "B"], [("A", "q"), ("q", "B")], ["A"], ["B"], name="tor_chain_AB")
    inner = RefinementTree(chain, (("q", RefinementTree(por_border_cycle())),))
    return RefinementTree(linear3(), (("T1", inner),))


def and_join_with_por_loop_tree() -> RefinementTree:
    """pAND join whose first input place is refined by a pOR net with a looping output."""
    join = workflow(["p", "q", "r"], ["t"], [("p", "t"), ("q", "t"), ("t", "r")],
                    ["p", "q"], ["r"], name="and_join")
    return RefinementTree(join, (("p", RefinementTree(por_border_cycle())),))


def and_join_with_por_loop() -> WorkflowNet:
    return _named(expand(and_join_with_por_loop_tree()), "and_join_with_por_loop")


def mk_composite(k: int) -> WorkflowNet:
    from .refine import substitute_place
    return _named(substitute_place(m_k(k), "d", fig7_N()), f"M_{k}_with_fig7_N")


def _named(wf: WorkflowNet, name: str) -> WorkflowNet:
    return WorkflowNet(wf.net, wf.inputs, wf.outputs, wf.kind, name)


# Files under fixtures/ that mirror a function here.
NET_FILES = {
    "single_place.net": single_place,
    "fig1_traffic.net": fig1_traffic,
    "one_not_two.net": one_not_two,
    "fig7_N.net": fig7_N,
    "sequential3.net": sequential3,
    "mk_family/M_2.net": lambda: m_k(2),
    "mk_family/M_3.net": lambda: m_k(3),
    "thm2_roundtrip/tor_chain.net": thm2_tor_chain,
    "thm2_roundtrip/pand_body.net": thm2_pand_body,
    "thm2_roundtrip/target.net": thm2_target,
    "thm3_fig15b.net": thm3_fig15b,
    "por_border_cycle.net": por_border_cycle,
    "output_feeds_input.net": output_feeds_input,
    "transition_self_loop.net": transition_self_loop,
    "two_input_tand.net": two_input_tand,
    "two_input_por.net": two_input_por,
    "and_join_with_por_loop.net": and_join_with_por_loop,
}

AND_OR_TREES = {
    "thm2": thm2_tree,
    "thm3_fig15b": thm3_fig15b_tree,
    "nested_refinement": nested_refinement_tree,
    "and_join_with_por_loop": and_join_with_por_loop_tree,
}

__all__ = [n for n in dir() if not n.startswith("_")] + ["Kind"]
