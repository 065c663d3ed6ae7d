"""Firing rule and explicit-state reachability.

The public functions work on :class:`~wfrefine.marking.Marking` values.
Internally, exploration runs on :class:`CompiledNet`, which encodes a
marking as a tuple of counts indexed by the sorted place list; this is
what the soundness checkers use directly.
"""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

from .marking import Marking
from .net import NetError, PetriNet, UnknownNodeError

DEFAULT_CAP = 100_000

State = tuple[int, ...]


class NotEnabledError(NetError):
    def __init__(self, marking: Marking, transition: str):
        self.marking = marking
        self.transition = transition
        super().__init__(f"transition {transition!r} is not enabled in {marking}")


def _check_transition(net: PetriNet, t: str) -> None:
    if t not in net.transitions:
        if t in net.places:
            raise NetError(f"{t!r} is a place, not a transition")
        raise UnknownNodeError(f"unknown transition {t!r}")


def enabled(net: PetriNet, m: Marking, t: str) -> bool:
    _check_transition(net, t)
    return all(m[p] >= 1 for p in net.preset(t))


def fire(net: PetriNet, m: Marking, t: str) -> Marking:
    if not enabled(net, m, t):
        raise NotEnabledError(m, t)
    return m - Marking(net.preset(t)) + Marking(net.postset(t))


def fire_sequence(net: PetriNet, m: Marking, trace: Iterable[str]) -> Marking:
    for t in trace:
        m = fire(net, m, t)
    return m


def enabled_transitions(net: PetriNet, m: Marking) -> list[str]:
    return [t for t in sorted(net.transitions) if enabled(net, m, t)]


class CompiledNet:
    """Index-based view of a net for fast successor enumeration."""

    def __init__(self, net: PetriNet):
        self.net = net
        self.places = sorted(net.places)
        self.index = {p: i for i, p in enumerate(self.places)}
        self.transitions = sorted(net.transitions)
        self.pre = [tuple(self.index[p] for p in sorted(net.preset(t))) for t in self.transitions]
        self.post = [tuple(self.index[p] for p in sorted(net.postset(t))) for t in self.transitions]

    def state(self, m: Marking) -> State:
        v = [0] * len(self.places)
        for p, n in m.items():
            try:
                v[self.index[p]] = n
            except KeyError:
                raise UnknownNodeError(f"marking mentions unknown place {p!r}") from None
        return tuple(v)

    def marking(self, v: State) -> Marking:
        return Marking({self.places[i]: n for i, n in enumerate(v) if n})

    def scaled(self, places: Iterable[str], k: int) -> State:
        v = [0] * len(self.places)
        for p in places:
            v[self.index[p]] = k
        return tuple(v)

    def successors(self, v: State) -> Iterator[tuple[int, State]]:
        for ti, pre in enumerate(self.pre):
            for i in pre:
                if not v[i]:
                    break
            else:
                w = list(v)
                for i in pre:
                    w[i] -= 1
                for i in self.post[ti]:
                    w[i] += 1
                yield ti, tuple(w)


@dataclass
class Search:
    """Raw BFS result over compiled states.

    ``order`` lists discovered states in BFS order; the first ``expanded``
    of them had all their successors enumerated.  ``hit`` is the first
    discovered state accepted by the stop predicate, if any.
    """

    order: list[State]
    parent: dict[State, tuple[State, int] | None]
    succ: dict[State, list[tuple[int, State]]] | None
    expanded: int
    truncated: bool
    hit: State | None = None

    def trace_to(self, v: State) -> list[int]:
        out = []
        link = self.parent[v]
        while link is not None:
            v, ti = link
            out.append(ti)
            link = self.parent[v]
        out.reverse()
        return out

    def path_to(self, v: State) -> list[State]:
        out = [v]
        link = self.parent[v]
        while link is not None:
            v = link[0]
            out.append(v)
            link = self.parent[v]
        return out


def bfs(comp: CompiledNet, start: State, cap: int = DEFAULT_CAP,
        stop: Callable[[State], bool] | None = None, keep_edges: bool = False,
        prune: Callable[[State], bool] | None = None) -> Search:
    """Breadth-first search from ``start``.

    Stops early at the first state satisfying ``stop`` (recorded as
    ``hit``); states satisfying ``prune`` are never entered.
    """
    if cap < 1:
        raise ValueError("state cap must be at least 1")
    parent: dict[State, tuple[State, int] | None] = {start: None}
    order = [start]
    succ: dict[State, list[tuple[int, State]]] | None = {} if keep_edges else None
    if stop is not None and stop(start):
        return Search(order, parent, succ, 0, False, start)
    head = 0
    while head < len(order):
        v = order[head]
        out = [] if keep_edges else None
        for ti, w in comp.successors(v):
            if out is not None:
                out.append((ti, w))
            if w in parent or (prune is not None and prune(w)):
                continue
            if len(order) >= cap:
                if succ is not None:
                    succ[v] = out
                return Search(order, parent, succ, head, True)
            parent[w] = (v, ti)
            order.append(w)
            if stop is not None and stop(w):
                if succ is not None:
                    succ[v] = out
                return Search(order, parent, succ, head, False, w)
        if succ is not None:
            succ[v] = out
        head += 1
    return Search(order, parent, succ, head, False)


def backward_closure(search: Search, targets: Iterable[State]) -> set[State]:
    """States of a ``keep_edges`` search with a known path into ``targets``."""
    pred: dict[State, list[State]] = {}
    for v, outs in search.succ.items():
        for _, w in outs:
            pred.setdefault(w, []).append(v)
    good = {t for t in targets if t in search.parent}
    queue = deque(good)
    while queue:
        w = queue.popleft()
        for v in pred.get(w, ()):
            if v not in good:
                good.add(v)
                queue.append(v)
    return good


@dataclass(frozen=True)
class ReachabilityGraph:
    root: Marking
    states: tuple[Marking, ...]
    edges: frozenset[tuple[Marking, str, Marking]]
    truncated: bool

    def __contains__(self, m: object) -> bool:
        return m in self.state_set

    @cached_property
    def state_set(self) -> frozenset[Marking]:
        return frozenset(self.states)

    def __len__(self) -> int:
        return len(self.states)


def explore(net: PetriNet, m0: Marking, cap: int = DEFAULT_CAP) -> ReachabilityGraph:
    """Breadth-first closure of the firing relation from ``m0``.

    Transitions are tried in sorted id order, so the result is the same on
    every run.  Exploration stops with ``truncated=True`` when a new state
    would push the state count past ``cap``.
    """
    comp = CompiledNet(net)
    search = bfs(comp, comp.state(m0), cap, keep_edges=True)
    conv = {v: comp.marking(v) for v in search.order}
    edges = frozenset(
        (conv[v], comp.transitions[ti], conv[w])
        for v, outs in search.succ.items() for ti, w in outs if w in conv
    )
    return ReachabilityGraph(conv[search.order[0]], tuple(conv[v] for v in search.order),
                             edges, search.truncated)


class Reach(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ReachResult:
    status: Reach
    trace: tuple[str, ...] | None
    states_explored: int

    def __bool__(self) -> bool:
        return self.status is Reach.YES


def can_reach(net: PetriNet, m0: Marking, target: Marking, cap: int = DEFAULT_CAP) -> ReachResult:
    comp = CompiledNet(net)
    goal = comp.state(target)
    search = bfs(comp, comp.state(m0), cap, stop=goal.__eq__)
    explored = len(search.order)
    if search.hit is not None:
        trace = tuple(comp.transitions[ti] for ti in search.trace_to(search.hit))
        return ReachResult(Reach.YES, trace, explored)
    if search.truncated:
        return ReachResult(Reach.UNKNOWN, None, explored)
    return ReachResult(Reach.NO, None, explored)


def transition_names(comp: CompiledNet, trace: Sequence[int]) -> tuple[str, ...]:
    return tuple(comp.transitions[ti] for ti in trace)
