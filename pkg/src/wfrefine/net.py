"""Petri nets and generalized workflow nets.

Arcs form a set (no weights).  Node identifiers share one namespace per
net: an id is either a place or a transition, never both.
"""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property


class NetError(ValueError):
    """Structural problem with a net or an operation on it."""


class UnknownNodeError(NetError):
    pass


class InvalidWorkflowNet(NetError):
    """Raised by :func:`validate_wf`; carries every violation found."""

    def __init__(self, violations: list[str], source: str | None = None):
        self.violations = list(violations)
        where = f"{source}: " if source else ""
        super().__init__(where + "invalid workflow net: " + "; ".join(self.violations))


class Kind(enum.Enum):
    PLACE = "place"
    TRANSITION = "transition"

    @property
    def short(self) -> str:
        return "pWF" if self is Kind.PLACE else "tWF"

    @property
    def dual(self) -> Kind:
        return Kind.TRANSITION if self is Kind.PLACE else Kind.PLACE


@dataclass(frozen=True)
class PetriNet:
    places: frozenset[str]
    transitions: frozenset[str]
    arcs: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "places", frozenset(self.places))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in self.arcs))
        for node in self.places | self.transitions:
            if not isinstance(node, str) or not node:
                raise NetError(f"node ids must be nonempty strings, got {node!r}")
        clash = self.places & self.transitions
        if clash:
            raise NetError(f"ids used as both place and transition: {sorted(clash)}")
        for src, dst in self.arcs:
            if src in self.places and dst in self.transitions:
                continue
            if src in self.transitions and dst in self.places:
                continue
            for node in (src, dst):
                if node not in self.places and node not in self.transitions:
                    raise UnknownNodeError(f"arc ({src}, {dst}) mentions unknown node {node!r}")
            raise NetError(f"arc ({src}, {dst}) does not connect a place and a transition")

    @property
    def nodes(self) -> frozenset[str]:
        return self.places | self.transitions

    @cached_property
    def _pre(self) -> dict[str, frozenset[str]]:
        pre: dict[str, set[str]] = {n: set() for n in self.nodes}
        for src, dst in self.arcs:
            pre[dst].add(src)
        return {n: frozenset(s) for n, s in pre.items()}

    @cached_property
    def _post(self) -> dict[str, frozenset[str]]:
        post: dict[str, set[str]] = {n: set() for n in self.nodes}
        for src, dst in self.arcs:
            post[src].add(dst)
        return {n: frozenset(s) for n, s in post.items()}

    def preset(self, node: str) -> frozenset[str]:
        try:
            return self._pre[node]
        except KeyError:
            raise UnknownNodeError(f"unknown node {node!r}") from None

    def postset(self, node: str) -> frozenset[str]:
        try:
            return self._post[node]
        except KeyError:
            raise UnknownNodeError(f"unknown node {node!r}") from None

    def preset_of(self, nodes: Iterable[str]) -> frozenset[str]:
        out: set[str] = set()
        for n in nodes:
            out |= self.preset(n)
        return frozenset(out)

    def postset_of(self, nodes: Iterable[str]) -> frozenset[str]:
        out: set[str] = set()
        for n in nodes:
            out |= self.postset(n)
        return frozenset(out)

    def is_place(self, node: str) -> bool:
        return node in self.places

    def is_transition(self, node: str) -> bool:
        return node in self.transitions

    def forward_reachable(self, sources: Iterable[str]) -> set[str]:
        return _closure(sources, self._post)

    def backward_reachable(self, targets: Iterable[str]) -> set[str]:
        return _closure(targets, self._pre)

    def find_cycle(self) -> list[str] | None:
        """Some directed cycle as a node list, or None if the net is acyclic."""
        WHITE, GREY, BLACK = 0, 1, 2
        colour = dict.fromkeys(self.nodes, WHITE)
        for root in sorted(self.nodes):
            if colour[root] != WHITE:
                continue
            stack = [(root, iter(sorted(self._post[root])))]
            path = [root]
            colour[root] = GREY
            while stack:
                node, children = stack[-1]
                child = next(children, None)
                if child is None:
                    colour[node] = BLACK
                    stack.pop()
                    path.pop()
                elif colour[child] == GREY:
                    return path[path.index(child):]
                elif colour[child] == WHITE:
                    colour[child] = GREY
                    path.append(child)
                    stack.append((child, iter(sorted(self._post[child]))))
        return None


def _closure(start: Iterable[str], succ: dict[str, frozenset[str]]) -> set[str]:
    seen = set(start)
    queue = deque(seen)
    while queue:
        node = queue.popleft()
        for nxt in succ.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


@dataclass(frozen=True)
class WorkflowNet:
    """A pWF or tWF net.  Construction validates every workflow condition."""

    net: PetriNet
    inputs: frozenset[str]
    outputs: frozenset[str]
    kind: Kind
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "inputs", frozenset(self.inputs))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        object.__setattr__(self, "kind", Kind(self.kind))
        problems = workflow_violations(self.net, self.inputs, self.outputs, self.kind)
        if problems:
            raise InvalidWorkflowNet(problems)

    @property
    def places(self) -> frozenset[str]:
        return self.net.places

    @property
    def transitions(self) -> frozenset[str]:
        return self.net.transitions

    @property
    def arcs(self) -> frozenset[tuple[str, str]]:
        return self.net.arcs

    @property
    def nodes(self) -> frozenset[str]:
        return self.net.nodes

    def preset(self, node: str) -> frozenset[str]:
        return self.net.preset(node)

    def postset(self, node: str) -> frozenset[str]:
        return self.net.postset(node)

    @property
    def is_place_bordered(self) -> bool:
        return self.kind is Kind.PLACE

    @property
    def one_input_one_output(self) -> bool:
        return len(self.inputs) == 1 and len(self.outputs) == 1

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return (f"<{self.kind.short}{label}: {len(self.places)} places, "
                f"{len(self.transitions)} transitions, {len(self.arcs)} arcs>")


def workflow_violations(net: PetriNet, inputs, outputs, kind) -> list[str]:
    """Every reason why (net, inputs, outputs, kind) is not a workflow net."""
    kind = Kind(kind)
    inputs, outputs = set(inputs), set(outputs)
    border = net.places if kind is Kind.PLACE else net.transitions
    problems = []
    if not inputs:
        problems.append("input set is empty")
    if not outputs:
        problems.append("output set is empty")
    for role, nodes in (("input", inputs), ("output", outputs)):
        for node in sorted(nodes):
            if node not in net.nodes:
                problems.append(f"{role} node {node!r} is not in the net")
            elif node not in border:
                problems.append(f"{role} node {node!r} is not a {kind.value}")
    # Path conditions are still checked from the border nodes that exist,
    # so one call reports everything.
    inputs &= net.nodes
    outputs &= net.nodes
    for node in sorted(net.nodes - net.forward_reachable(inputs)):
        problems.append(f"node {node!r} is unreachable from the inputs")
    for node in sorted(net.nodes - net.backward_reachable(outputs)):
        problems.append(f"node {node!r} cannot reach any output")
    return problems


def validate_wf(net: PetriNet, inputs, outputs, kind, name: str = "") -> WorkflowNet:
    """Return the workflow net, or raise :class:`InvalidWorkflowNet` listing all violations."""
    return WorkflowNet(net, frozenset(inputs), frozenset(outputs), Kind(kind), name)


def workflow(places: Iterable[str], transitions: Iterable[str], arcs: Iterable[tuple[str, str]],
             inputs: Iterable[str], outputs: Iterable[str], kind=None, name: str = "") -> WorkflowNet:
    """Convenience constructor.  ``kind`` defaults to the kind of the input nodes."""
    places, transitions = frozenset(places), frozenset(transitions)
    inputs, outputs = frozenset(inputs), frozenset(outputs)
    if kind is None:
        kind = Kind.TRANSITION if inputs and inputs <= transitions else Kind.PLACE
    return validate_wf(PetriNet(places, transitions, frozenset(arcs)), inputs, outputs, kind, name)
