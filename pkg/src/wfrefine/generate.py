"""Seeded random nets.

Base-class nets are grown from a single node by steps that keep the
workflow conditions and the class conditions intact, so no rejection
sampling is needed.  Output is a deterministic function of the arguments.
"""

from __future__ import annotations

import random

from .andor import BASE_CLASSES, RefinementTree, expand
from .net import Kind, PetriNet, WorkflowNet, validate_wf


class _Grower:
    def __init__(self, kind: Kind, rng: random.Random):
        self.rng = rng
        self.kind = kind
        self.places: set[str] = set()
        self.transitions: set[str] = set()
        self.arcs: set[tuple[str, str]] = set()
        self.counter = {"p": 0, "t": 0}
        first = self.new("p" if kind is Kind.PLACE else "t")
        self.inputs = {first}
        self.outputs = {first}

    def new(self, letter: str) -> str:
        self.counter[letter] += 1
        name = f"{letter}{self.counter[letter]}"
        (self.places if letter == "p" else self.transitions).add(name)
        return name

    def size(self) -> int:
        return len(self.places) + len(self.transitions)

    def post(self, x: str) -> set[str]:
        return {b for a, b in self.arcs if a == x}

    def pre(self, x: str) -> set[str]:
        return {a for a, b in self.arcs if b == x}

    def reaches(self, src: str, dst: str) -> bool:
        seen, stack = {src}, [src]
        while stack:
            x = stack.pop()
            if x == dst:
                return True
            for y in self.post(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    # Growth steps.  Each returns False when it does not apply.

    def split(self, x: str) -> bool:
        """x -> y becomes x -> z -> x' -> y, with x' taking x's outputs."""
        letter, other = ("p", "t") if x in self.places else ("t", "p")
        mid, twin = self.new(other), self.new(letter)
        for y in self.post(x):
            self.arcs.discard((x, y))
            self.arcs.add((twin, y))
        self.arcs |= {(x, mid), (mid, twin)}
        if x in self.outputs:
            self.outputs = self.outputs - {x} | {twin}
        return True

    def duplicate(self, x: str) -> bool:
        """A parallel copy of x with the same neighbours and border roles."""
        twin = self.new("p" if x in self.places else "t")
        self.arcs |= {(a, twin) for a in self.pre(x)} | {(twin, b) for b in self.post(x)}
        if x in self.inputs:
            self.inputs = self.inputs | {twin}
        if x in self.outputs:
            self.outputs = self.outputs | {twin}
        return True

    def bridge(self, a: str, b: str, acyclic: bool) -> bool:
        """A new node of the other type with a -> new -> b."""
        if a == b or (a in self.places) != (b in self.places):
            return False
        if acyclic and self.reaches(b, a):
            return False
        mid = self.new("t" if a in self.places else "p")
        self.arcs |= {(a, mid), (mid, b)}
        return True

    def add_arc(self, a: str, b: str) -> bool:
        if (a in self.places) == (b in self.places) or (a, b) in self.arcs:
            return False
        self.arcs.add((a, b))
        return True

    def build(self, name: str) -> WorkflowNet:
        net = PetriNet(frozenset(self.places), frozenset(self.transitions), frozenset(self.arcs))
        return validate_wf(net, self.inputs, self.outputs, self.kind, name)


def _grow_step(g: _Grower, steps: list[str]) -> None:
    rng = g.rng
    places, transitions = sorted(g.places), sorted(g.transitions)
    step = rng.choice(steps)
    if step == "split_p" and places:
        g.split(rng.choice(places))
    elif step == "split_t" and transitions:
        g.split(rng.choice(transitions))
    elif step == "dup_p" and places:
        g.duplicate(rng.choice(places))
    elif step == "dup_t" and transitions:
        g.duplicate(rng.choice(transitions))
    elif step == "sync" and len(transitions) >= 2:
        g.bridge(rng.choice(transitions), rng.choice(transitions), acyclic=True)
    elif step == "bridge_p" and len(places) >= 2:
        g.bridge(rng.choice(places), rng.choice(places), acyclic=False)
    elif step == "bridge_t" and len(transitions) >= 2:
        g.bridge(rng.choice(transitions), rng.choice(transitions), acyclic=False)
    elif step == "arc" and places and transitions:
        p, t = rng.choice(places), rng.choice(transitions)
        g.add_arc(*((p, t) if rng.random() < 0.5 else (t, p)))


# Steps that preserve each class: splits keep every node 1-in/1-out on the
# new side, place duplication only adds AND splits/joins, transition
# duplication and place-to-place bridges only add OR splits/joins, and
# "sync" bridges transitions without closing a cycle.
_STEPS = {
    "pAND": ["split_p", "split_t", "dup_p", "dup_p", "sync"],
    "11tAND": ["split_p", "split_t", "dup_p", "dup_p", "sync"],
    "11pOR": ["split_p", "split_t", "dup_t", "bridge_p", "bridge_p"],
    "tOR": ["split_p", "split_t", "dup_t", "dup_t", "bridge_p"],
    "mixed": ["split_p", "split_t", "dup_p", "dup_t", "bridge_p", "bridge_t", "arc"],
}

_START = {"pAND": Kind.PLACE, "11tAND": Kind.TRANSITION, "11pOR": Kind.PLACE, "tOR": Kind.TRANSITION}


def random_base(cls: str, size: int, seed: int) -> WorkflowNet:
    """A random net of generator class ``cls`` with about ``size`` nodes.

    Growth stops at the first step that reaches ``size`` nodes, so the
    result has ``size`` or ``size + 1`` nodes.
    """
    if cls not in BASE_CLASSES:
        raise ValueError(f"unknown class {cls!r}; expected one of {', '.join(BASE_CLASSES)}")
    if size < 1:
        raise ValueError("size must be at least 1")
    g = _Grower(_START[cls], random.Random(f"{cls}:{size}:{seed}"))
    while g.size() < size:
        _grow_step(g, _STEPS[cls])
    return g.build(f"{cls}-{size}-{seed}")


def random_workflow(kind: Kind | str, size: int, seed: int) -> WorkflowNet:
    """A random workflow net with no class restriction (often unsound, possibly unbounded)."""
    kind = Kind(kind)
    g = _Grower(kind, random.Random(f"mixed:{kind.value}:{size}:{seed}"))
    while g.size() < size:
        _grow_step(g, _STEPS["mixed"])
    return g.build(f"mixed-{kind.value}-{size}-{seed}")


def classes_for(kind: Kind) -> tuple[str, ...]:
    return ("pAND", "11pOR") if kind is Kind.PLACE else ("11tAND", "tOR")


def random_tree(depth: int, size: int, rng: random.Random, kind: Kind | None = None,
                fanout: int = 2) -> RefinementTree:
    """A refinement tree of exactly the given depth over random base nets."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    cls = rng.choice(classes_for(kind) if kind is not None else BASE_CLASSES)
    base = random_base(cls, rng.randint(1, size), rng.randrange(2**32))
    if depth == 1:
        return RefinementTree(base)
    nodes = rng.sample(sorted(base.nodes), rng.randint(1, min(fanout, len(base.nodes))))
    refinements = []
    for node in nodes:
        want = Kind.PLACE if node in base.places else Kind.TRANSITION
        refinements.append((node, random_tree(depth - 1, size, rng, want, fanout)))
    return RefinementTree(base, tuple(refinements))


def random_and_or(depth: int, size: int, seed: int, kind: Kind | None = None) -> tuple[RefinementTree, WorkflowNet]:
    """A seeded random refinement tree and its expansion.

    ``size`` bounds the node count of each base net; ``kind`` optionally
    fixes the border kind of the result.
    """
    tag = kind.value if kind is not None else "any"
    rng = random.Random(f"and-or:{depth}:{size}:{seed}:{tag}")
    tree = random_tree(depth, size, rng, kind)
    return tree, expand(tree)
