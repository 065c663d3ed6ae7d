"""Graphviz DOT rendering.

Places are circles labelled with their token count, transitions are
boxes.  Border nodes get a half-arrow from (inputs) or to (outputs) an
invisible point, which is how workflow nets are usually drawn.
"""

from __future__ import annotations

from collections.abc import Mapping

from .net import NetError, WorkflowNet


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_dot(wf: WorkflowNet, marking: Mapping[str, int] | None = None) -> str:
    marking = dict(marking or {})
    unknown = sorted(set(marking) - wf.places)
    if unknown:
        raise NetError(f"marking refers to unknown place(s): {', '.join(unknown)}")
    out = [f"digraph {_q(wf.name or 'net')} {{", "  rankdir=LR;"]
    for p in sorted(wf.places):
        tokens = marking.get(p, 0)
        label = str(tokens) if tokens else ""
        out.append(f"  {_q(p)} [shape=circle, label={_q(label)}, xlabel={_q(p)}];")
    for t in sorted(wf.transitions):
        out.append(f"  {_q(t)} [shape=box, label={_q(t)}];")
    for a, b in sorted(wf.arcs):
        out.append(f"  {_q(a)} -> {_q(b)};")
    for i, x in enumerate(sorted(wf.inputs)):
        anchor = _q(f"__in{i}")
        out.append(f"  {anchor} [shape=point, style=invis];")
        out.append(f"  {anchor} -> {_q(x)} [arrowhead=normal];")
    for i, x in enumerate(sorted(wf.outputs)):
        anchor = _q(f"__out{i}")
        out.append(f"  {anchor} [shape=point, style=invis];")
        out.append(f"  {_q(x)} -> {anchor} [arrowhead=normal];")
    out.append("}")
    return "\n".join(out) + "\n"
