"""A PNML subset: one page of places, transitions and plain arcs.

Input/output sets and the border kind travel in a
``<toolspecific tool="wfrefine">`` block.  Without it, a net with a unique
source place and a unique sink place is read as a classic one-input
one-output pWF net.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .net import Kind, NetError, PetriNet, WorkflowNet, validate_wf

TOOL = "wfrefine"
PT_NET = "http://www.pnml.org/version-2009/grammar/ptnet"
_SUPPORTED = {"place", "transition", "arc", "name", "toolspecific", "graphics"}


class UnsupportedPnml(NetError):
    pass


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _children(el: ET.Element, name: str) -> list[ET.Element]:
    return [c for c in el if _local(c.tag) == name]


def _text_of(el: ET.Element) -> str | None:
    for t in el.iter():
        if _local(t.tag) == "text" and t.text is not None:
            return t.text.strip()
    return None


def write_pnml(wf: WorkflowNet) -> str:
    root = ET.Element("pnml")
    net = ET.SubElement(root, "net", id=wf.name or "net", type=PT_NET)
    if wf.name:
        ET.SubElement(ET.SubElement(net, "name"), "text").text = wf.name
    page = ET.SubElement(net, "page", id="page0")
    for p in sorted(wf.places):
        ET.SubElement(page, "place", id=p)
    for t in sorted(wf.transitions):
        ET.SubElement(page, "transition", id=t)
    for i, (a, b) in enumerate(sorted(wf.arcs)):
        ET.SubElement(page, "arc", id=f"a{i}", source=a, target=b)
    tool = ET.SubElement(net, "toolspecific", tool=TOOL, version="1")
    ET.SubElement(tool, "kind").text = wf.kind.value
    for x in sorted(wf.inputs):
        ET.SubElement(tool, "input", ref=x)
    for x in sorted(wf.outputs):
        ET.SubElement(tool, "output", ref=x)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def parse_pnml(text: str) -> WorkflowNet:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise NetError(f"malformed PNML: {exc}") from None
    nets = [el for el in root.iter() if _local(el.tag) == "net"]
    if len(nets) != 1:
        raise UnsupportedPnml(f"expected exactly one <net>, found {len(nets)}")
    (net_el,) = nets
    pages = _children(net_el, "page")
    if len(pages) != 1:
        raise UnsupportedPnml(f"expected exactly one <page>, found {len(pages)}")
    (page,) = pages
    name_el = _children(net_el, "name")
    name = (_text_of(name_el[0]) if name_el else None) or net_el.get("id", "")

    places, transitions, arcs = set(), set(), set()
    for el in page:
        tag = _local(el.tag)
        if tag not in _SUPPORTED:
            raise UnsupportedPnml(f"unsupported element <{tag}> on the page")
        if tag == "place":
            places.add(el.get("id"))
        elif tag == "transition":
            transitions.add(el.get("id"))
    for el in _children(page, "arc"):
        for sub in el:
            sub_tag = _local(sub.tag)
            if sub_tag == "inscription":
                weight = _text_of(sub)
                if weight is not None and weight != "1":
                    raise UnsupportedPnml(f"arc {el.get('id')!r} has weight {weight}; only weight 1 is supported")
            elif sub_tag == "type":
                raise UnsupportedPnml(f"arc {el.get('id')!r} has a type; only plain arcs are supported")
            elif sub_tag not in ("name", "graphics", "toolspecific"):
                raise UnsupportedPnml(f"unsupported arc annotation <{sub_tag}>")
        if el.get("type") not in (None, "normal"):
            raise UnsupportedPnml(f"arc {el.get('id')!r} has type {el.get('type')!r}; only plain arcs are supported")
        arcs.add((el.get("source"), el.get("target")))
    if None in places or None in transitions:
        raise NetError("every place and transition needs an id")
    pn = PetriNet(frozenset(places), frozenset(transitions), frozenset(arcs))

    tools = [t for t in _children(net_el, "toolspecific") if t.get("tool") == TOOL]
    if tools:
        tool = tools[0]
        kind_el = _children(tool, "kind")
        kind = Kind(kind_el[0].text.strip()) if kind_el else None
        inputs = {e.get("ref") for e in _children(tool, "input")}
        outputs = {e.get("ref") for e in _children(tool, "output")}
        if kind is None:
            kind = Kind.PLACE if inputs & places else Kind.TRANSITION
        return validate_wf(pn, inputs, outputs, kind, name)
    return validate_wf(pn, *_infer_borders(pn), Kind.PLACE, name)


def _infer_borders(pn: PetriNet) -> tuple[set[str], set[str]]:
    sources = sorted(p for p in pn.places if not pn.preset(p))
    sinks = sorted(p for p in pn.places if not pn.postset(p))
    if len(sources) != 1 or len(sinks) != 1:
        raise NetError("no wfrefine annotation and the net does not have a unique source place "
                       f"and sink place (sources: {sources}, sinks: {sinks})")
    return {sources[0]}, {sinks[0]}
