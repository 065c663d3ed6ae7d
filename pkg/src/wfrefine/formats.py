"""Load and save nets by file suffix, with atomic writes."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .net import NetError, WorkflowNet
from .pnml import parse_pnml, write_pnml
from .textio import parse_net_text, write_net_text


def load_net(path: str | Path) -> WorkflowNet:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".pnml":
        return parse_pnml(text)
    if path.suffix in (".net", ".txt", ""):
        return parse_net_text(text, source=str(path))
    raise NetError(f"unknown net file type {path.suffix!r}; use .net or .pnml")


def render_net(wf: WorkflowNet, path: str | Path) -> str:
    return write_pnml(wf) if Path(path).suffix == ".pnml" else write_net_text(wf)


def atomic_write(path: str | Path, text: str) -> None:
    """Write via a temporary file in the same directory and rename it into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def save_net(wf: WorkflowNet, path: str | Path) -> None:
    atomic_write(path, render_net(wf, path))
