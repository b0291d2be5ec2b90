"""The bundled diagram corpus and the ``.pd`` file format.

A ``.pd`` file holds one PD code. Lines starting with ``#`` are comments,
except ``# free-loops: N``, which adds ``N`` crossingless circles; a file
with free loops may have an empty body (the unknot, unlinks).
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .diagram import LinkDiagram, PDError, parse_pd

__all__ = ["parse_pd_file", "load_pd_file", "load_directory", "bundled_corpus", "bundled"]

_LOOPS = re.compile(r"^#\s*free-loops\s*:\s*(\d+)\s*$", re.IGNORECASE)


def parse_pd_file(text: str, *, orient: bool = False) -> LinkDiagram:
    loops = 0
    body = []
    for line in text.splitlines():
        m = _LOOPS.match(line.strip())
        if m:
            loops = int(m.group(1))
        elif not line.lstrip().startswith("#"):
            body.append(line)
    code = " ".join(body).strip()
    if not code:
        if loops:
            return LinkDiagram.unlink(loops)
        raise PDError("empty diagram")
    return parse_pd(code, orient=orient, free_loops=loops)


def load_pd_file(path, *, orient: bool = False) -> LinkDiagram:
    return parse_pd_file(Path(path).read_text(), orient=orient)


def load_directory(path, *, orient: bool = False) -> list[tuple[str, LinkDiagram]]:
    """All ``*.pd`` files of a directory, sorted by name."""
    files = sorted(Path(path).glob("*.pd"))
    return [(f.stem, load_pd_file(f, orient=orient)) for f in files]


def bundled_corpus() -> list[tuple[str, LinkDiagram]]:
    """The packaged diagrams, sorted by name."""
    root = resources.files("cubecat") / "data"
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".pd"):
            out.append((entry.name[:-3], parse_pd_file(entry.read_text())))
    return out


def bundled(name: str) -> LinkDiagram:
    for n, d in bundled_corpus():
        if n == name:
            return d
    raise KeyError(f"no bundled diagram named {name!r}")
