"""Plain-text net documents and refinement scripts.

Net documents have one directive per line::

    net fig7_N
    kind place
    place a
    trans A
    arc a A
    input a
    output c

``#`` starts a comment.  :func:`write_net_text` emits a canonical sorted
form, so parse-then-write is a fixed point.

Refinement scripts nest::

    base outer.net
    refine p {
      base {
        kind place
        place x
        input x
        output x
      }
    }

``base`` takes a file path (relative to the script's directory) or an
inline ``{ ... }`` net document.  Each ``refine <node> { ... }`` holds a
complete sub-script.
"""

from __future__ import annotations

import re
from pathlib import Path

from .andor import RefinementError, RefinementTree
from .net import InvalidWorkflowNet, Kind, NetError, PetriNet, UnknownNodeError, WorkflowNet, validate_wf

_ID = re.compile(r"^[^\s#{}]+$")
_KINDS = {"place": Kind.PLACE, "transition": Kind.TRANSITION}


class ParseError(NetError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_net_text(text: str, source: str | None = None, first_line: int = 1) -> WorkflowNet:
    name = ""
    kind: Kind | None = None
    places: dict[str, int] = {}
    transitions: dict[str, int] = {}
    arcs: list[tuple[str, str, int]] = []
    inputs: list[tuple[str, int]] = []
    outputs: list[tuple[str, int]] = []

    def fail(msg: str, lineno: int):
        raise ParseError(msg, lineno, source)

    for lineno, raw in enumerate(text.splitlines(), first_line):
        line = _strip(raw)
        if not line:
            continue
        word, *args = line.split()
        for a in args:
            if not _ID.match(a):
                fail(f"invalid identifier {a!r}", lineno)
        if word == "net":
            if len(args) != 1:
                fail("expected 'net <name>'", lineno)
            if name:
                fail("duplicate 'net' directive", lineno)
            name = args[0]
        elif word == "kind":
            if len(args) != 1 or args[0] not in _KINDS:
                fail("expected 'kind place' or 'kind transition'", lineno)
            if kind is not None:
                fail("duplicate 'kind' directive", lineno)
            kind = _KINDS[args[0]]
        elif word in ("place", "trans"):
            if len(args) != 1:
                fail(f"expected '{word} <id>'", lineno)
            (node,) = args
            if node in places or node in transitions:
                fail(f"node {node!r} declared twice", lineno)
            (places if word == "place" else transitions)[node] = lineno
        elif word == "arc":
            if len(args) != 2:
                fail("expected 'arc <from> <to>'", lineno)
            arcs.append((args[0], args[1], lineno))
        elif word in ("input", "output"):
            if not args:
                fail(f"expected '{word} <id>+'", lineno)
            (inputs if word == "input" else outputs).extend((a, lineno) for a in args)
        else:
            fail(f"unknown directive {word!r}", lineno)

    nodes = places.keys() | transitions.keys()
    seen_arcs = set()
    for a, b, lineno in arcs:
        for x in (a, b):
            if x not in nodes:
                fail(f"arc refers to undeclared node {x!r}", lineno)
        if (a in places) == (b in places):
            fail(f"arc {a} -> {b} connects two {'places' if a in places else 'transitions'}", lineno)
        if (a, b) in seen_arcs:
            fail(f"duplicate arc {a} -> {b}", lineno)
        seen_arcs.add((a, b))
    for x, lineno in inputs + outputs:
        if x not in nodes:
            fail(f"border declaration refers to undeclared node {x!r}", lineno)
    if not inputs:
        raise ParseError("missing 'input' directive", None, source)
    if not outputs:
        raise ParseError("missing 'output' directive", None, source)
    if kind is None:
        kind = Kind.PLACE if inputs[0][0] in places else Kind.TRANSITION
    net = PetriNet(frozenset(places), frozenset(transitions), frozenset(seen_arcs))
    try:
        return validate_wf(net, {x for x, _ in inputs}, {x for x, _ in outputs}, kind, name)
    except InvalidWorkflowNet as exc:
        if source is None:
            raise
        raise InvalidWorkflowNet(exc.violations, source) from None


def write_net_text(wf: WorkflowNet) -> str:
    lines = []
    if wf.name:
        lines.append(f"net {wf.name}")
    lines.append(f"kind {wf.kind.value}")
    lines += [f"place {p}" for p in sorted(wf.places)]
    lines += [f"trans {t}" for t in sorted(wf.transitions)]
    lines += [f"arc {a} {b}" for a, b in sorted(wf.arcs)]
    lines.append("input " + " ".join(sorted(wf.inputs)))
    lines.append("output " + " ".join(sorted(wf.outputs)))
    return "\n".join(lines) + "\n"


def read_net_text(path: str | Path) -> WorkflowNet:
    path = Path(path)
    return parse_net_text(path.read_text(encoding="utf-8"), source=str(path))


# Refinement scripts


def _tokens(text: str):
    """(lineno, token) pairs with braces split out as their own tokens."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw).replace("{", " { ").replace("}", " } ")
        for tok in line.split():
            yield lineno, tok


class _ScriptParser:
    def __init__(self, text: str, base_dir: Path | None, source: str | None, loader):
        self.text = text
        self.lines = text.splitlines()
        self.toks = list(_tokens(text))
        self.i = 0
        self.base_dir = base_dir
        self.source = source
        self.loader = loader

    def fail(self, msg: str, lineno: int | None):
        raise ParseError(msg, lineno, self.source)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, expected: str | None = None):
        if self.i >= len(self.toks):
            last = self.toks[-1][0] if self.toks else None
            self.fail(f"unexpected end of script{f', expected {expected!r}' if expected else ''}", last)
        lineno, tok = self.toks[self.i]
        if expected is not None and tok != expected:
            self.fail(f"expected {expected!r}, got {tok!r}", lineno)
        self.i += 1
        return lineno, tok

    def tree(self) -> RefinementTree:
        lineno, _ = self.take("base")
        base = self.base(lineno)
        refinements = []
        while self.peek()[1] == "refine":
            ref_line, _ = self.take("refine")
            node_line, node = self.take()
            if node in ("{", "}"):
                self.fail("expected a node id after 'refine'", node_line)
            self.take("{")
            child = self.tree()
            self.take("}")
            refinements.append((node, child, ref_line))
        return self.build(base, refinements)

    def build(self, base: WorkflowNet, refinements) -> RefinementTree:
        seen = set()
        for node, child, lineno in refinements:
            if node in seen:
                self.fail(f"node {node!r} is refined twice", lineno)
            seen.add(node)
            if node not in base.nodes:
                self.fail(f"unknown node {node!r} in base net {base.name or '<unnamed>'}", lineno)
            want = Kind.PLACE if node in base.places else Kind.TRANSITION
            if child.kind is not want:
                self.fail(f"kind mismatch: {node!r} is a {want.value} but its refinement "
                          f"is a {child.kind.short} net", lineno)
        return RefinementTree(base, tuple((n, c) for n, c, _ in refinements))

    def base(self, lineno: int) -> WorkflowNet:
        tok_line, tok = self.take()
        if tok != "{":
            path = Path(tok)
            if not path.is_absolute() and self.base_dir is not None:
                path = self.base_dir / path
            try:
                return self.loader(path)
            except OSError as exc:
                self.fail(f"cannot read base net {tok!r}: {exc.strerror or exc}", tok_line)
        # Inline net: everything up to the matching brace, parsed line-wise.
        depth = 1
        while depth:
            end_line, t = self.take()
            depth += {"{": 1, "}": -1}.get(t, 0)
        body_lines = range(tok_line, end_line + 1)
        body = []
        for n in body_lines:
            line = _strip(self.lines[n - 1])
            if n == tok_line:
                line = line.split("{", 1)[1]
            if n == end_line:
                line = line.rsplit("}", 1)[0]
            body.append(line)
        if any("{" in part or "}" in part for part in body):
            self.fail("inline base nets cannot contain braces", tok_line)
        return parse_net_text("\n".join(body), self.source, first_line=tok_line)


def parse_refinement(text: str, base_dir: str | Path | None = None, source: str | None = None,
                     loader=None) -> RefinementTree:
    """Parse a refinement script.  Unknown nodes and kind mismatches are
    reported with their line before anything is expanded."""
    if loader is None:
        from .formats import load_net
        loader = load_net
    p = _ScriptParser(text, Path(base_dir) if base_dir is not None else None, source, loader)
    if not p.toks:
        raise ParseError("empty refinement script", None, source)
    tree = p.tree()
    if p.i < len(p.toks):
        lineno, tok = p.toks[p.i]
        p.fail(f"unexpected {tok!r} after the top-level tree", lineno)
    return tree


def read_refinement(path: str | Path) -> RefinementTree:
    path = Path(path)
    return parse_refinement(path.read_text(encoding="utf-8"), path.parent, str(path))


def write_refinement(tree: RefinementTree, indent: int = 0) -> str:
    """Script text with every base net inlined."""
    pad = "  " * indent
    out = [f"{pad}base {{"]
    out += [f"{pad}  {line}" for line in write_net_text(tree.base).splitlines()]
    out.append(f"{pad}}}")
    for node, child in tree.refinements:
        out.append(f"{pad}refine {node} {{")
        out.append(write_refinement(child, indent + 1).rstrip("\n"))
        out.append(f"{pad}}}")
    return "\n".join(out) + "\n"


__all__ = ["ParseError", "RefinementError", "UnknownNodeError", "parse_net_text", "write_net_text",
           "read_net_text", "parse_refinement", "read_refinement", "write_refinement"]
