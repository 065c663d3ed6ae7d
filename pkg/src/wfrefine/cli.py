"""Command line interface.

Exit status for ``check``: 0 sound, 1 unsound, 2 unknown (a cap was hit).
Every other command exits 0 on success.  Any error, including a usage
error, exits 3.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .andor import BASE_CLASSES, classify_base, expand, is_free_choice
from .dot import write_dot
from .formats import atomic_write, load_net, render_net
from .generate import random_and_or, random_base
from .marking import Marking
from .net import Kind, NetError, WorkflowNet
from .reach import DEFAULT_CAP
from .refine import (
    completion_names,
    is_degenerate_target,
    place_completion,
    remove_place_transition_pair,
    remove_transition_place_pair,
    substitute,
    transition_completion,
)
from .soundness import (
    DEFAULT_BOUND,
    Outcome,
    SoundnessVerdict,
    aggregate,
    check_k_sound,
    check_star_sound_bounded,
    check_sub_sound_bounded,
)
from .textio import read_refinement, write_net_text, write_refinement

EXIT_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"expected two comma-separated ids, got {text!r}")
    return parts[0], parts[1]


def _marking(text: str) -> Marking:
    try:
        return Marking.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wfrefine", description="Workflow nets built by substitution, and their soundness.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="check k-, *- or substitution soundness")
    p.add_argument("net")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--k", type=_positive, help="k-soundness for this k")
    mode.add_argument("--star", type=_positive, metavar="K", help=f"k-soundness for k=1..K (default, K={DEFAULT_BOUND})")
    mode.add_argument("--sub", type=_positive, metavar="K", help="substitution soundness for k=1..K")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="state cap per exploration")

    p = sub.add_parser("substitute", help="replace a node by a workflow net")
    p.add_argument("outer")
    p.add_argument("node")
    p.add_argument("inner")
    p.add_argument("--prefix", help="prefix for the inner ids (default '<node>/'; '' keeps them)")
    p.add_argument("-o", "--output")

    p = sub.add_parser("complete", help="place or transition completion")
    p.add_argument("net")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--place", action="store_true")
    which.add_argument("--transition", action="store_true")
    p.add_argument("-o", "--output")

    p = sub.add_parser("reduce", help="remove a transition-place or place-transition pair")
    p.add_argument("net")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--tp", type=_pair, metavar="T,P")
    which.add_argument("--pt", type=_pair, metavar="P,T")
    p.add_argument("-o", "--output")

    p = sub.add_parser("classify", help="report base-class membership and free choice")
    p.add_argument("net")

    p = sub.add_parser("expand", help="expand a refinement script")
    p.add_argument("script")
    p.add_argument("--any-base", action="store_true",
                   help="allow base nets outside the four generator classes")
    p.add_argument("-o", "--output")

    p = sub.add_parser("generate", help="seeded random base or AND-OR net")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--class", dest="cls", choices=BASE_CLASSES)
    which.add_argument("--and-or", action="store_true")
    p.add_argument("--depth", type=_positive, default=2)
    p.add_argument("--size", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--script", help="also write the refinement tree (--and-or only)")
    p.add_argument("-o", "--output")

    p = sub.add_parser("export", help="write a net as DOT, PNML or text")
    p.add_argument("net")
    fmt = p.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--pnml", action="store_true")
    fmt.add_argument("--text", action="store_true")
    p.add_argument("--marking", type=_marking, help="tokens to draw, e.g. p:2,q:1 (DOT only)")
    p.add_argument("-o", "--output")
    return parser


def _emit(text: str, path: str | None, out) -> None:
    if path:
        atomic_write(path, text)
    else:
        out.write(text)


def _emit_net(wf: WorkflowNet, path: str | None, out) -> None:
    _emit(render_net(wf, path) if path else write_net_text(wf), path, out)


def _count(n: int, noun: str) -> str:
    return f"{n} {noun}" + ("" if n == 1 else "s")


def _describe(wf: WorkflowNet) -> str:
    return (f"{wf.name or '<unnamed>'} ({wf.kind.short}, {_count(len(wf.places), 'place')}, "
            f"{_count(len(wf.transitions), 'transition')})")


def _verdict_lines(v: SoundnessVerdict) -> list[str]:
    lines = []
    w = v.witness
    if w is not None:
        lines.append(f"witness k: {w.k}")
        lines.append(f"witness k': {w.k_removed}")
        lines.append(f"witness marking: {w.marking}")
        if w.k_removed:
            lines.append(f"stranded remainder: {w.remainder}")
        lines.append("trace: " + (" ".join(w.trace) if w.trace else "(empty)"))
    lines.append(f"states explored: {v.states_explored}")
    return lines


def cmd_check(args, out) -> int:
    wf = load_net(args.net)
    out.write(f"net: {_describe(wf)}\n")
    if wf.kind is Kind.TRANSITION:
        p_i, p_o = completion_names(wf)
        out.write(f"note: transition-bordered; checking the place completion (added {p_i}, {p_o})\n")
    if args.k is not None:
        out.write(f"check: {args.k}-soundness\n")
        v = check_k_sound(wf, args.k, args.cap)
        out.write(f"verdict: {v.outcome.value}\n")
    elif args.sub is not None:
        out.write(f"check: substitution soundness, k=1..{args.sub}\n")
        v = check_sub_sound_bounded(wf, args.sub, args.cap)
        label = f"sound up to K={args.sub}" if v.sound else v.outcome.value
        out.write(f"verdict: {label}\n")
    else:
        bound = args.star or DEFAULT_BOUND
        out.write(f"check: *-soundness, k=1..{bound}\n")
        results = check_star_sound_bounded(wf, bound, args.cap)
        for k, r in results:
            out.write(f"  k={k}: {r.outcome.value}\n")
        v = aggregate(results)
        label = f"sound up to K={bound}" if v.sound else v.outcome.value
        out.write(f"verdict: {label}\n")
    for line in _verdict_lines(v):
        out.write(line + "\n")
    if v.outcome is Outcome.UNKNOWN:
        out.write(f"note: an exploration reached the cap of {args.cap} states\n")
    return v.outcome.exit_code


def cmd_substitute(args, out) -> int:
    outer, inner = load_net(args.outer), load_net(args.inner)
    if is_degenerate_target(outer, args.node):
        sys.stderr.write(f"note: {args.node!r} is both an input and an output of the outer net\n")
    _emit_net(substitute(outer, args.node, inner, args.prefix), args.output, out)
    return 0


def cmd_complete(args, out) -> int:
    wf = load_net(args.net)
    result = place_completion(wf) if args.place else transition_completion(wf)
    _emit_net(result, args.output, out)
    return 0


def cmd_reduce(args, out) -> int:
    wf = load_net(args.net)
    if args.tp:
        result = remove_transition_place_pair(wf, *args.tp)
    else:
        result = remove_place_transition_pair(wf, *args.pt)
    _emit_net(result, args.output, out)
    return 0


def cmd_classify(args, out) -> int:
    wf = load_net(args.net)
    report = classify_base(wf)
    out.write(f"net: {_describe(wf)}\n")
    for line in report.lines():
        out.write(line + "\n")
    out.write(f"generator classes: {', '.join(report.classes) or 'none'}\n")
    out.write(f"free-choice: {str(is_free_choice(wf)).lower()}\n")
    return 0


def cmd_expand(args, out) -> int:
    tree = read_refinement(args.script)
    _emit_net(expand(tree, require_base_classes=not args.any_base), args.output, out)
    return 0


def cmd_generate(args, out) -> int:
    if args.cls:
        if args.script:
            raise UsageError("--script applies to --and-or only")
        wf = random_base(args.cls, args.size, args.seed)
    else:
        tree, wf = random_and_or(args.depth, args.size, args.seed)
        wf = WorkflowNet(wf.net, wf.inputs, wf.outputs, wf.kind,
                         f"and-or-{args.depth}-{args.size}-{args.seed}")
        if args.script:
            atomic_write(args.script, write_refinement(tree))
    _emit_net(wf, args.output, out)
    return 0


def cmd_export(args, out) -> int:
    wf = load_net(args.net)
    if args.marking is not None and not args.dot:
        raise UsageError("--marking applies to --dot only")
    if args.dot:
        text = write_dot(wf, args.marking)
    elif args.pnml:
        text = render_net(wf, "x.pnml")
    else:
        text = write_net_text(wf)
    _emit(text, args.output, out)
    return 0


COMMANDS = {
    "check": cmd_check, "substitute": cmd_substitute, "complete": cmd_complete,
    "reduce": cmd_reduce, "classify": cmd_classify, "expand": cmd_expand,
    "generate": cmd_generate, "export": cmd_export,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_ERROR
    except (NetError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
