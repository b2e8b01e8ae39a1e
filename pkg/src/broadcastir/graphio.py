"""Edge-list parsing, DOT export and broadcast JSON codecs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence

from .errors import GraphInputError
from .graph import Graph, build_graph


def parse_edge_list(text: str, name: str = "") -> Graph:
    """Parse the edge-list format.

    An optional ``p <n>`` header fixes the vertex count; otherwise it is one
    more than the largest index seen. Text after ``#`` and blank lines are ignored.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 2 or n is not None:
                raise GraphInputError(f"line {lineno}: bad header {raw!r}")
            n = _int(parts[1], lineno)
            continue
        if len(parts) != 2:
            raise GraphInputError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((_int(parts[0], lineno), _int(parts[1], lineno)))
    if n is None:
        if not edges:
            raise GraphInputError("empty edge list without a 'p <n>' header")
        n = 1 + max(max(e) for e in edges)
    return build_graph(edges, n, name)


def _int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise GraphInputError(f"line {lineno}: {token!r} is not an integer") from None


def read_edge_list(path) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise GraphInputError(f"cannot read {p}: {exc}") from None
    return parse_edge_list(text, name=p.stem)


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, f: Sequence[int] | None = None, name: str = "G") -> str:
    """Graphviz DOT text; broadcasting vertices get their power as a label."""
    out = [f"graph {name} {{"]
    for v in range(g.n):
        if f is not None and f[v] > 0:
            out.append(f'  {v} [label="{v}:{f[v]}", style=filled, fillcolor=tomato];')
        else:
            out.append(f"  {v};")
    out.extend(f"  {u} -- {v};" for u, v in g.edges)
    out.append("}")
    return "\n".join(out) + "\n"


def broadcast_to_json(f: Sequence[int]) -> dict[str, int]:
    """Sparse JSON form: only positive powers are written."""
    return {str(v): p for v, p in enumerate(f) if p > 0}


def broadcast_from_json(obj, n: int) -> tuple[int, ...]:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise GraphInputError(f"broadcast is not valid JSON: {exc}") from None
    if not isinstance(obj, Mapping):
        raise GraphInputError("broadcast JSON must be an object mapping vertex -> power")
    f = [0] * n
    for key, value in obj.items():
        try:
            v = int(key)
        except (TypeError, ValueError):
            raise GraphInputError(f"broadcast key {key!r} is not a vertex index") from None
        if not 0 <= v < n:
            raise GraphInputError(f"broadcast vertex {v} outside 0..{n - 1}")
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise GraphInputError(f"power for vertex {v} must be a non-negative integer")
        f[v] = value
    return tuple(f)
