"""AND/OR base nets, free choice, and refinement trees.

The four generator classes are pAND, 11tAND (one-input one-output tAND),
11pOR (one-input one-output pOR) and tOR.  A :class:`RefinementTree`
records how a net is built from them by substitution; :func:`expand`
flattens it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .net import Kind, NetError, PetriNet, UnknownNodeError, WorkflowNet, validate_wf
from .refine import _fresh_prefix, substitute

BASE_CLASSES = ("pAND", "11tAND", "11pOR", "tOR")


def and_net_violations(wf: WorkflowNet) -> list[str]:
    problems = []
    cycle = wf.net.find_cycle()
    if cycle is not None:
        problems.append("cycle " + " -> ".join(cycle + cycle[:1]))
    for p in sorted(wf.places):
        n_in, n_out = len(wf.preset(p)), len(wf.postset(p))
        if p in wf.inputs and n_in != 0:
            problems.append(f"input place {p!r} has {n_in} incoming edge(s)")
        if p not in wf.inputs and n_in != 1:
            problems.append(f"place {p!r} has {n_in} incoming edges, expected 1")
        if p in wf.outputs and n_out != 0:
            problems.append(f"output place {p!r} has {n_out} outgoing edge(s)")
        if p not in wf.outputs and n_out != 1:
            problems.append(f"place {p!r} has {n_out} outgoing edges, expected 1")
    return problems


def or_net_violations(wf: WorkflowNet) -> list[str]:
    problems = []
    for t in sorted(wf.transitions):
        n_in, n_out = len(wf.preset(t)), len(wf.postset(t))
        if t in wf.inputs and n_in != 0:
            problems.append(f"input transition {t!r} has {n_in} incoming edge(s)")
        if t not in wf.inputs and n_in != 1:
            problems.append(f"transition {t!r} has {n_in} incoming edges, expected 1")
        if t in wf.outputs and n_out != 0:
            problems.append(f"output transition {t!r} has {n_out} outgoing edge(s)")
        if t not in wf.outputs and n_out != 1:
            problems.append(f"transition {t!r} has {n_out} outgoing edges, expected 1")
    return problems


def is_and_net(wf: WorkflowNet) -> tuple[bool, list[str]]:
    problems = and_net_violations(wf)
    return not problems, problems


def is_or_net(wf: WorkflowNet) -> tuple[bool, list[str]]:
    problems = or_net_violations(wf)
    return not problems, problems


@dataclass(frozen=True)
class BaseClassReport:
    and_net: bool
    or_net: bool
    place_bordered: bool
    one_input: bool
    one_output: bool
    violations: dict[str, list[str]] = field(default_factory=dict)

    @property
    def pAND(self) -> bool:
        return self.and_net and self.place_bordered

    @property
    def tAND(self) -> bool:
        return self.and_net and not self.place_bordered

    @property
    def pOR(self) -> bool:
        return self.or_net and self.place_bordered

    @property
    def tOR(self) -> bool:
        return self.or_net and not self.place_bordered

    @property
    def tAND11(self) -> bool:
        return self.tAND and self.one_input and self.one_output

    @property
    def pOR11(self) -> bool:
        return self.pOR and self.one_input and self.one_output

    def member(self, cls: str) -> bool:
        return {"pAND": self.pAND, "11tAND": self.tAND11, "11pOR": self.pOR11,
                "tOR": self.tOR}[cls]

    @property
    def classes(self) -> list[str]:
        """Generator classes this net belongs to."""
        return [c for c in BASE_CLASSES if self.member(c)]

    @property
    def is_base(self) -> bool:
        return bool(self.classes)

    def lines(self) -> list[str]:
        flags = [("pAND", self.pAND), ("tAND", self.tAND), ("11tAND", self.tAND11),
                 ("pOR", self.pOR), ("11pOR", self.pOR11), ("tOR", self.tOR),
                 ("one-input", self.one_input), ("one-output", self.one_output)]
        out = [f"{name}: {str(value).lower()}" for name, value in flags]
        for cls, problems in self.violations.items():
            for problem in problems:
                out.append(f"  {cls} violation: {problem}")
        return out


def classify_base(wf: WorkflowNet) -> BaseClassReport:
    and_ok, and_problems = is_and_net(wf)
    or_ok, or_problems = is_or_net(wf)
    violations = {}
    if and_problems:
        violations["AND"] = and_problems
    if or_problems:
        violations["OR"] = or_problems
    return BaseClassReport(and_ok, or_ok, wf.kind is Kind.PLACE, len(wf.inputs) == 1,
                           len(wf.outputs) == 1, violations)


def is_free_choice(net: PetriNet | WorkflowNet) -> bool:
    """Extended free choice: places sharing any successor share all of them."""
    if isinstance(net, WorkflowNet):
        net = net.net
    groups: dict[str, frozenset[str]] = {}
    for p in net.places:
        post = net.postset(p)
        for t in post:
            seen = groups.setdefault(t, post)
            if seen != post:
                return False
    return True


class RefinementError(NetError):
    pass


@dataclass(frozen=True)
class RefinementTree:
    base: WorkflowNet
    refinements: tuple[tuple[str, RefinementTree], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "refinements", tuple(self.refinements))
        seen = set()
        for node, child in self.refinements:
            if node in seen:
                raise RefinementError(f"node {node!r} is refined twice")
            seen.add(node)
            if node not in self.base.nodes:
                raise UnknownNodeError(f"refined node {node!r} is not in the base net")
            want = Kind.PLACE if node in self.base.places else Kind.TRANSITION
            if child.kind is not want:
                raise RefinementError(
                    f"{node!r} is a {want.value} but its refinement is a {child.kind.short} net")

    @property
    def kind(self) -> Kind:
        return self.base.kind

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for _, c in self.refinements), default=0)

    def bases(self):
        yield self.base
        for _, child in self.refinements:
            yield from child.bases()


def expand(tree: RefinementTree, require_base_classes: bool = True) -> WorkflowNet:
    """Flatten a refinement tree, children first.

    Inner nodes get hierarchical ids ``"<refined node>/<inner id>"``.  By
    default every base net in the tree must be in one of the four
    generator classes, so the result is an AND-OR net.
    """
    if require_base_classes and not classify_base(tree.base).is_base:
        raise RefinementError(f"base net {tree.base.name or '<unnamed>'} is in none of "
                              f"the classes {', '.join(BASE_CLASSES)}")
    net = tree.base
    for node, child in tree.refinements:
        net = substitute(net, node, expand(child, require_base_classes))
    return net


def decompose_11tand(wf: WorkflowNet) -> RefinementTree:
    """Rewrite a one-input one-output tAND net as a tOR chain with a pAND inside.

    The base is ``t_i -> p -> t_o`` using the net's own border transitions
    and a fresh middle place; the pAND replacing ``p`` is ``wf`` minus its
    border transitions, with inputs ``t_i•`` and outputs ``•t_o``.  Expanding
    the result gives ``wf`` back with inner ids prefixed by ``"<p>/"``.
    A single-transition net is already a tOR net and comes back as a leaf.
    """
    if not classify_base(wf).tAND11:
        raise RefinementError("net is not a one-input one-output tAND net")
    (t_i,), (t_o,) = wf.inputs, wf.outputs
    if t_i == t_o:
        return RefinementTree(wf)
    middle = _fresh_prefix(wf.nodes, ["p"]) + "p"
    base = validate_wf(PetriNet({middle}, {t_i, t_o}, {(t_i, middle), (middle, t_o)}),
                       {t_i}, {t_o}, Kind.TRANSITION, name="tOR-chain")
    inner_net = PetriNet(wf.places, wf.transitions - {t_i, t_o},
                         frozenset(a for a in wf.arcs if t_i not in a and t_o not in a))
    inner = validate_wf(inner_net, wf.postset(t_i), wf.preset(t_o), Kind.PLACE, name="pAND-body")
    return RefinementTree(base, ((middle, RefinementTree(inner)),))


def decomposition_mapping(wf: WorkflowNet, tree: RefinementTree) -> dict[str, str]:
    """Node correspondence between ``wf`` and ``expand(decompose_11tand(wf))``."""
    if not tree.refinements:
        return {n: n for n in wf.nodes}
    (middle, _), = tree.refinements
    (t_i,), (t_o,) = wf.inputs, wf.outputs
    return {n: n if n in (t_i, t_o) else f"{middle}/{n}" for n in wf.nodes}
