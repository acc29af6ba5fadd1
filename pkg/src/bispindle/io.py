"""Edge-list text format and DOT export.

Format: first line "n m", then m lines "u v" (0-indexed). Lines starting
with '#' are comments (generators emit a parameter header); the reader
skips them. Duplicate arcs and loops are rejected; the writer emits arcs
in canonical sorted order.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from .digraph import Digraph
from .errors import PreconditionError


def loads(text: str) -> Digraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise PreconditionError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise PreconditionError(f"expected 'n m' header, got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise PreconditionError(f"header promises {m} arcs, found {len(lines) - 1}")
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise PreconditionError(f"bad arc line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise PreconditionError(f"loop at {u} rejected")
        if (u, v) in seen:
            raise PreconditionError(f"duplicate arc ({u},{v}) rejected")
        seen.add((u, v))
        arcs.append((u, v))
    return Digraph(n, arcs)


def dumps(d: Digraph, header: Iterable[str] = ()) -> str:
    out = [f"# {h}" for h in header]
    out.append(f"{d.n} {len(d.arcs)}")
    out.extend(f"{u} {v}" for u, v in d.sorted_arcs())
    return "\n".join(out) + "\n"


def read_edge_list(path: Union[str, Path]) -> Digraph:
    return loads(Path(path).read_text(encoding="ascii"))


def write_edge_list(d: Digraph, path: Union[str, Path], header: Iterable[str] = ()) -> None:
    Path(path).write_text(dumps(d, header), encoding="ascii")


def to_dot(d: Digraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines.extend(f"  {v};" for v in range(d.n))
    lines.extend(f"  {u} -> {v};" for u, v in d.sorted_arcs())
    lines.append("}")
    return "\n".join(lines) + "\n"
