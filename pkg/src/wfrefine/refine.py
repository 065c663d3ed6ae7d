"""Completions, node substitution, renaming and pair removal."""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .net import Kind, NetError, PetriNet, UnknownNodeError, WorkflowNet, validate_wf


class SubstitutionError(NetError):
    pass


class PairRemovalError(NetError):
    """A precondition of a pair removal does not hold.  ``reason`` names it."""

    def __init__(self, reason: str, message: str):
        self.reason = reason
        super().__init__(message)


def relabel(wf: WorkflowNet, mapping: Mapping[str, str], name: str | None = None) -> WorkflowNet:
    """Apply an injective node renaming.  Nodes missing from ``mapping`` keep their id."""
    f = lambda n: mapping.get(n, n)  # noqa: E731
    images = [f(n) for n in wf.nodes]
    if len(set(images)) != len(images):
        raise NetError("relabelling is not injective")
    net = PetriNet(frozenset(map(f, wf.places)), frozenset(map(f, wf.transitions)),
                   frozenset((f(a), f(b)) for a, b in wf.arcs))
    return validate_wf(net, map(f, wf.inputs), map(f, wf.outputs), wf.kind,
                       wf.name if name is None else name)


def rename(wf: WorkflowNet, prefix: str) -> WorkflowNet:
    """Prefix every node id; distinct prefixes give disjoint nets."""
    if not prefix:
        return wf
    return relabel(wf, {n: prefix + n for n in wf.nodes})


def _fresh_prefix(taken: Iterable[str], names: Iterable[str]) -> str:
    taken = set(taken)
    names = list(names)
    prefix = ""
    while any(prefix + n in taken for n in names):
        prefix += "_"
    return prefix


def completion_names(wf: WorkflowNet) -> tuple[str, str]:
    """Ids of the (input, output) nodes that a completion of ``wf`` adds."""
    base = ("p_i", "p_o") if wf.kind is Kind.TRANSITION else ("t_i", "t_o")
    prefix = _fresh_prefix(wf.nodes, base)
    return prefix + base[0], prefix + base[1]


def place_completion(wf: WorkflowNet) -> WorkflowNet:
    """pc(N): wrap a tWF net between a fresh input place and output place."""
    if wf.kind is not Kind.TRANSITION:
        raise NetError("place completion applies to transition-bordered nets")
    p_i, p_o = completion_names(wf)
    arcs = set(wf.arcs)
    arcs.update((p_i, t) for t in wf.inputs)
    arcs.update((t, p_o) for t in wf.outputs)
    net = PetriNet(wf.places | {p_i, p_o}, wf.transitions, frozenset(arcs))
    return validate_wf(net, {p_i}, {p_o}, Kind.PLACE, wf.name)


def transition_completion(wf: WorkflowNet) -> WorkflowNet:
    """tc(N): wrap a pWF net between a fresh input transition and output transition."""
    if wf.kind is not Kind.PLACE:
        raise NetError("transition completion applies to place-bordered nets")
    t_i, t_o = completion_names(wf)
    arcs = set(wf.arcs)
    arcs.update((t_i, p) for p in wf.inputs)
    arcs.update((p, t_o) for p in wf.outputs)
    net = PetriNet(wf.places, wf.transitions | {t_i, t_o}, frozenset(arcs))
    return validate_wf(net, {t_i}, {t_o}, Kind.TRANSITION, wf.name)


def as_place_bordered(wf: WorkflowNet) -> WorkflowNet:
    """``wf`` itself if place-bordered, else its place completion."""
    return wf if wf.kind is Kind.PLACE else place_completion(wf)


def _substitute(n: WorkflowNet, node: str, m: WorkflowNet, prefix: str | None,
                want: Kind) -> WorkflowNet:
    if node not in n.nodes:
        raise UnknownNodeError(f"{node!r} is not a node of the outer net")
    if (node in n.places) != (want is Kind.PLACE):
        raise SubstitutionError(f"{node!r} is not a {want.value}")
    if m.kind is not want:
        raise SubstitutionError(
            f"a {want.value} can only be replaced by a {want.short} net, got a {m.kind.short} net")
    m = rename(m, f"{node}/" if prefix is None else prefix)
    clash = n.nodes & m.nodes
    if clash:
        raise SubstitutionError(f"nets are not disjoint; shared ids: {sorted(clash)}")

    before, after = n.preset(node), n.postset(node)
    arcs = {(a, b) for a, b in n.arcs if node not in (a, b)}
    arcs |= m.arcs
    arcs.update((x, i) for x in before for i in m.inputs)
    arcs.update((o, y) for o in m.outputs for y in after)

    places, transitions = n.places | m.places, n.transitions | m.transitions
    if want is Kind.PLACE:
        places = places - {node}
    else:
        transitions = transitions - {node}
    inputs = (n.inputs - {node}) | m.inputs if node in n.inputs else n.inputs
    outputs = (n.outputs - {node}) | m.outputs if node in n.outputs else n.outputs
    return validate_wf(PetriNet(places, transitions, frozenset(arcs)), inputs, outputs, n.kind, n.name)


def substitute_place(n: WorkflowNet, p: str, m: WorkflowNet, prefix: str | None = None) -> WorkflowNet:
    """N ⊗_p M for a pWF net M.

    M's ids are prefixed with ``"<p>/"`` unless another ``prefix`` is given
    (pass ``""`` to keep them as they are; the nets must then be disjoint).
    """
    return _substitute(n, p, m, prefix, Kind.PLACE)


def substitute_transition(n: WorkflowNet, t: str, m: WorkflowNet, prefix: str | None = None) -> WorkflowNet:
    """N ⊗_t M for a tWF net M; naming as in :func:`substitute_place`."""
    return _substitute(n, t, m, prefix, Kind.TRANSITION)


def substitute(n: WorkflowNet, node: str, m: WorkflowNet, prefix: str | None = None) -> WorkflowNet:
    if node not in n.nodes:
        raise UnknownNodeError(f"{node!r} is not a node of the outer net")
    if node in n.places:
        return substitute_place(n, node, m, prefix)
    return substitute_transition(n, node, m, prefix)


def is_degenerate_target(n: WorkflowNet, node: str) -> bool:
    """True when ``node`` is both an input and an output of ``n``."""
    return node in n.inputs and node in n.outputs


def _remove_pair(n: WorkflowNet, first: str, second: str, first_kind: Kind) -> WorkflowNet:
    if n.kind is not Kind.PLACE:
        raise PairRemovalError("kind", "pair removal applies to place-bordered nets")
    for node, kind in ((first, first_kind), (second, first_kind.dual)):
        if node not in n.nodes:
            raise UnknownNodeError(f"unknown node {node!r}")
        if (node in n.places) != (kind is Kind.PLACE):
            raise PairRemovalError("kind", f"{node!r} is not a {kind.value}")
    place = second if first_kind is Kind.TRANSITION else first
    if n.postset(first) != {second}:
        raise PairRemovalError("postset", f"postset of {first!r} must be exactly {{{second}}}")
    if n.preset(second) != {first}:
        raise PairRemovalError("preset", f"preset of {second!r} must be exactly {{{first}}}")
    if place in n.inputs or place in n.outputs:
        raise PairRemovalError("border", f"{place!r} must be neither an input nor an output")
    sources, targets = n.preset(first), n.postset(second)
    existing = sorted((a, b) for a in sources for b in targets if (a, b) in n.arcs)
    if existing:
        raise PairRemovalError("existing-edge", f"edges between the neighbourhoods already exist: {existing}")
    arcs = {(a, b) for a, b in n.arcs if a not in (first, second) and b not in (first, second)}
    arcs.update((a, b) for a in sources for b in targets)
    net = PetriNet(n.places - {place}, n.transitions - {first, second}, frozenset(arcs))
    return validate_wf(net, n.inputs, n.outputs, n.kind, n.name)


def remove_transition_place_pair(n: WorkflowNet, t: str, p: str) -> WorkflowNet:
    """Drop t and p where t• = {p} and •p = {t}, linking •t to p• directly."""
    return _remove_pair(n, t, p, Kind.TRANSITION)


def remove_place_transition_pair(n: WorkflowNet, p: str, t: str) -> WorkflowNet:
    """Drop p and t where p• = {t} and •t = {p}, linking •p to t• directly."""
    return _remove_pair(n, p, t, Kind.PLACE)


def eligible_pairs(n: WorkflowNet) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """All (t, p) and (p, t) pairs that the two pair removals accept, sorted."""
    tp, pt = [], []
    if n.kind is not Kind.PLACE:
        return tp, pt
    for t in sorted(n.transitions):
        post = n.postset(t)
        if len(post) == 1:
            (p,) = post
            if _pair_ok(n, t, p, p):
                tp.append((t, p))
    for p in sorted(n.places):
        post = n.postset(p)
        if len(post) == 1:
            (t,) = post
            if _pair_ok(n, p, t, p):
                pt.append((p, t))
    return tp, pt


def _pair_ok(n: WorkflowNet, first: str, second: str, place: str) -> bool:
    if n.preset(second) != {first} or place in n.inputs or place in n.outputs:
        return False
    return not any((a, b) in n.arcs for a in n.preset(first) for b in n.postset(second))


def structurally_equal(n1: WorkflowNet, n2: WorkflowNet, mapping: Mapping[str, str] | None = None) -> bool:
    """Whether ``mapping`` is an isomorphism from ``n1`` onto ``n2``.

    The default mapping is the identity.  Raises if ``mapping`` is not a
    total injective map on the nodes of ``n1``.
    """
    if mapping is None:
        mapping = {x: x for x in n1.nodes}
    missing = n1.nodes - mapping.keys()
    if missing:
        raise NetError(f"mapping is not total; unmapped nodes: {sorted(missing)}")
    image = [mapping[x] for x in n1.nodes]
    if len(set(image)) != len(image):
        raise NetError("mapping is not injective")
    f = mapping.__getitem__
    return (
        n1.kind is n2.kind
        and set(map(f, n1.places)) == n2.places
        and set(map(f, n1.transitions)) == n2.transitions
        and {(f(a), f(b)) for a, b in n1.arcs} == n2.arcs
        and set(map(f, n1.inputs)) == n2.inputs
        and set(map(f, n1.outputs)) == n2.outputs
    )
