"""Bounded checks for k-soundness, *-soundness and substitution soundness.

Transition-bordered nets are checked through their place completion.
All checks are explicit-state: each exploration is capped, and a verdict
of ``UNKNOWN`` means some exploration hit its cap before a failure was
found.  Unbounded *-soundness is never claimed; "sound up to K" is the
strongest positive answer.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass, field

from .marking import Marking
from .net import Kind, NetError, WorkflowNet
from .reach import DEFAULT_CAP, CompiledNet, Reach, Search, State, backward_closure, bfs, transition_names
from .refine import as_place_bordered

DEFAULT_BOUND = 3


class Outcome(enum.Enum):
    SOUND = "sound"
    UNSOUND = "unsound"
    UNKNOWN = "unknown"

    @property
    def exit_code(self) -> int:
        return {Outcome.SOUND: 0, Outcome.UNSOUND: 1, Outcome.UNKNOWN: 2}[self]


@dataclass(frozen=True)
class Witness:
    """A reachable marking that cannot finish.

    ``trace`` fires from ``k.I`` to ``marking``; ``remainder`` is what is
    left after taking ``k_removed`` tokens off every output place, and it
    cannot reach ``(k - k_removed).O``.  For plain k-soundness
    ``k_removed`` is 0 and ``remainder == marking``.
    """

    k: int
    k_removed: int
    marking: Marking
    remainder: Marking
    trace: tuple[str, ...]


@dataclass(frozen=True)
class SoundnessVerdict:
    outcome: Outcome
    witness: Witness | None
    states_explored: int
    # The place-bordered net that was actually explored (pc(N) for a tWF N).
    checked: WorkflowNet | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if (self.outcome is Outcome.UNSOUND) != (self.witness is not None):
            raise ValueError("a witness is present exactly for unsound verdicts")

    @property
    def sound(self) -> bool:
        return self.outcome is Outcome.SOUND

    @property
    def unsound(self) -> bool:
        return self.outcome is Outcome.UNSOUND


def initial_marking(wf: WorkflowNet, k: int) -> Marking:
    """``k.I``: k tokens on every input place."""
    if wf.kind is not Kind.PLACE:
        raise NetError("initial markings are defined for place-bordered nets; complete the net first")
    if k < 1:
        raise ValueError("k must be at least 1")
    return Marking({p: k for p in wf.inputs})


def final_marking(wf: WorkflowNet, k: int) -> Marking:
    if wf.kind is not Kind.PLACE:
        raise NetError("final markings are defined for place-bordered nets; complete the net first")
    return Marking({p: k for p in wf.outputs})


class _Checker:
    """Shared exploration state for one net and one cap."""

    def __init__(self, wf: WorkflowNet, cap: int):
        if cap < 1:
            raise ValueError("state cap must be at least 1")
        self.wf = as_place_bordered(wf)
        self.comp = CompiledNet(self.wf.net)
        self.cap = cap
        self.explored = 0
        self.outputs = [self.comp.index[p] for p in sorted(self.wf.outputs)]
        # target state -> states known to reach it / known not to
        self.good: dict[State, set[State]] = {}
        self.dead: dict[State, set[State]] = {}

    def start(self, k: int) -> State:
        return self.comp.scaled(self.wf.inputs, k)

    def final(self, k: int) -> State:
        return self.comp.scaled(self.wf.outputs, k)

    def reachable(self, k: int) -> Search:
        search = bfs(self.comp, self.start(k), self.cap, keep_edges=True)
        self.explored += len(search.order)
        return search

    def settle(self, search: Search, target: State) -> tuple[set[State], set[State]]:
        """Split explored states into (reach target, undetermined).

        Everything else is conclusively unable to reach ``target``: it was
        fully expanded and no known path leads to the target or to the
        unexpanded frontier.
        """
        good = backward_closure(search, [target])
        self.good.setdefault(target, set()).update(good)
        maybe: set[State] = set()
        if search.truncated:
            maybe = backward_closure(search, search.order[search.expanded:]) - good
        self.dead.setdefault(target, set()).update(
            v for v in search.order if v not in good and v not in maybe)
        return good, maybe

    def reaches(self, start: State, target: State) -> Reach:
        known = self.good.setdefault(target, set())
        dead = self.dead.setdefault(target, set())
        if start in dead:
            return Reach.NO
        search = bfs(self.comp, start, self.cap, stop=lambda v: v == target or v in known,
                     prune=dead.__contains__)
        self.explored += len(search.order)
        if search.hit is not None:
            known.update(search.path_to(search.hit))
            return Reach.YES
        if search.truncated:
            return Reach.UNKNOWN
        dead.update(search.order)
        return Reach.NO

    def witness(self, search: Search, k: int, k_removed: int, v: State, rest: State) -> Witness:
        trace = transition_names(self.comp, search.trace_to(v))
        return Witness(k, k_removed, self.comp.marking(v), self.comp.marking(rest), trace)

    def verdict(self, outcome: Outcome, witness: Witness | None = None) -> SoundnessVerdict:
        return SoundnessVerdict(outcome, witness, self.explored, self.wf)


def check_k_sound(wf: WorkflowNet, k: int, cap: int = DEFAULT_CAP) -> SoundnessVerdict:
    """Whether every marking reachable from k.I can still reach k.O."""
    if k < 1:
        raise ValueError("k must be at least 1")
    ch = _Checker(wf, cap)
    search = ch.reachable(k)
    good, maybe = ch.settle(search, ch.final(k))
    for v in search.order:
        if v not in good and v not in maybe:
            return ch.verdict(Outcome.UNSOUND, ch.witness(search, k, 0, v, v))
    return ch.verdict(Outcome.UNKNOWN if search.truncated else Outcome.SOUND)


def check_star_sound_bounded(wf: WorkflowNet, bound: int = DEFAULT_BOUND,
                             cap: int = DEFAULT_CAP) -> list[tuple[int, SoundnessVerdict]]:
    """k-soundness verdicts for k = 1..bound; see :func:`aggregate`."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    return [(k, check_k_sound(wf, k, cap)) for k in range(1, bound + 1)]


def aggregate(results: Sequence[tuple[int, SoundnessVerdict]]) -> SoundnessVerdict:
    """Fold per-k verdicts: the first unsound one wins, then any unknown."""
    total = sum(v.states_explored for _, v in results)
    checked = results[0][1].checked if results else None
    for _, v in results:
        if v.unsound:
            return SoundnessVerdict(Outcome.UNSOUND, v.witness, total, checked)
    if any(v.outcome is Outcome.UNKNOWN for _, v in results):
        return SoundnessVerdict(Outcome.UNKNOWN, None, total, checked)
    return SoundnessVerdict(Outcome.SOUND, None, total, checked)


def check_sub_sound_bounded(wf: WorkflowNet, bound: int = DEFAULT_BOUND,
                            cap: int = DEFAULT_CAP) -> SoundnessVerdict:
    """Substitution soundness for all k <= bound.

    For every marking m reachable from k.I (in BFS order) and every
    k' <= k with k'.O <= m, the remainder m - k'.O must reach (k-k').O.
    The k' = 0 case is read off the reachability graph; the others need a
    fresh search because removing tokens leaves the reachable set.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    ch = _Checker(wf, cap)
    unknown = False
    for k in range(1, bound + 1):
        search = ch.reachable(k)
        unknown |= search.truncated
        good, maybe = ch.settle(search, ch.final(k))
        for v in search.order:
            if v not in good:
                if v in maybe:
                    unknown = True
                else:
                    return ch.verdict(Outcome.UNSOUND, ch.witness(search, k, 0, v, v))
            for k_removed in range(1, k + 1):
                if any(v[o] < k_removed for o in ch.outputs):
                    break
                rest = list(v)
                for o in ch.outputs:
                    rest[o] -= k_removed
                rest = tuple(rest)
                status = ch.reaches(rest, ch.final(k - k_removed))
                if status is Reach.NO:
                    return ch.verdict(Outcome.UNSOUND, ch.witness(search, k, k_removed, v, rest))
                if status is Reach.UNKNOWN:
                    unknown = True
    return ch.verdict(Outcome.UNKNOWN if unknown else Outcome.SOUND)
