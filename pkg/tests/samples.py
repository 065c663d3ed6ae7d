"""Seeded samples of random nets shared by the property and acceptance tests."""

from __future__ import annotations

import random
from itertools import count

from wfrefine.andor import classify_base
from wfrefine.generate import random_and_or, random_workflow
from wfrefine.net import Kind
from wfrefine.reach import explore
from wfrefine.refine import as_place_bordered, eligible_pairs, substitute
from wfrefine.soundness import check_sub_sound_bounded, initial_marking

CLOSE_CAP = 2000


def closes(wf, bound: int = 3, cap: int = CLOSE_CAP) -> bool:
    """Whether exploration from bound.I finishes within ``cap`` states."""
    pw = as_place_bordered(wf)
    return not explore(pw.net, initial_marking(pw, bound), cap).truncated


def sink_output_nets(n: int, size: int = 7):
    """pWF nets whose output places have no outgoing arcs and whose state space closes."""
    out = []
    for seed in count():
        wf = random_workflow(Kind.PLACE, size, seed)
        if any(wf.postset(o) for o in wf.outputs) or not closes(wf):
            continue
        out.append(wf)
        if len(out) == n:
            return out


def transition_bordered_nets(n: int, size: int = 7):
    out = []
    for seed in count():
        wf = random_workflow(Kind.TRANSITION, size, seed)
        if closes(wf):
            out.append(wf)
            if len(out) == n:
                return out


def and_or_pair(seed: int):
    """(N, node, M, N (x)_node M) for random AND-OR nets N and M of matching kind."""
    _, n = random_and_or(2, 5, seed)
    rng = random.Random(f"pair:{seed}")
    node = rng.choice(sorted(n.nodes))
    kind = Kind.PLACE if node in n.places else Kind.TRANSITION
    _, m = random_and_or(2, 4, seed + 100_000, kind)
    return n, node, m, substitute(n, node, m)


def sub_sound_with_pair(n: int):
    """Random sub-sound pWF nets with at least one eligible pair, plus their pairs.

    Sources alternate between AND-OR expansions (sub-sound by
    construction, confirmed here) and unrestricted random nets that the
    checker finds sub-sound.
    """
    out = []
    for seed in count():
        if seed % 2 == 0:
            _, wf = random_and_or(2, 5, seed, Kind.PLACE)
        else:
            wf = random_workflow(Kind.PLACE, 8, seed)
            if not closes(wf):
                continue
        tp, pt = eligible_pairs(wf)
        if not (tp or pt):
            continue
        if not check_sub_sound_bounded(wf, 3, CLOSE_CAP * 5).sound:
            continue
        out.append((wf, tp, pt))
        if len(out) == n:
            return out


def is_base(wf) -> bool:
    return classify_base(wf).is_base
