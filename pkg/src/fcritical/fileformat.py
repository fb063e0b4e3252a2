"""Line-oriented text formats: instances, witnesses, and group registries.

Instance files (DIMACS-flavoured, ids are 1-based):

    c optional comment
    p fcs <vertices> <edges>
    t <id> <threshold>        one line per vertex
    e <u> <v>                 one line per edge

Witness files: ``s <size>`` followed by ``v <id> ...`` lines.
Registry sidecars: ``<group-name> <id> <id> ...`` lines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Instance, validate_instance


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


@dataclass(frozen=True)
class RawInstance:
    n: int
    edges: tuple[tuple[int, int], ...]
    thresholds: tuple[int, ...]


def parse_instance_text(text: str) -> RawInstance:
    """Parse without validating graph-level invariants (budget comes later)."""
    n = -1
    m = -1
    edges: list[tuple[int, int]] = []
    edge_seen: set[tuple[int, int]] = set()
    thresholds: dict[int, int] = {}
    lines = text.splitlines()
    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        parts = stripped.split()
        tag = parts[0]
        if tag == "p":
            if n >= 0:
                raise ParseError(line_no, "duplicate header")
            if len(parts) != 4 or parts[1] != "fcs":
                raise ParseError(line_no, "header must be 'p fcs <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(line_no, "header counts must be integers") from None
            if n < 1 or m < 0:
                raise ParseError(line_no, "header counts out of range")
        elif tag == "t":
            if n < 0:
                raise ParseError(line_no, "threshold before header")
            if len(parts) != 3:
                raise ParseError(line_no, "threshold line must be 't <id> <value>'")
            try:
                vid, value = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(line_no, "threshold fields must be integers") from None
            if not 1 <= vid <= n:
                raise ParseError(line_no, f"vertex id {vid} out of range 1..{n}")
            if vid - 1 in thresholds:
                raise ParseError(line_no, f"duplicate threshold for vertex {vid}")
            thresholds[vid - 1] = value
        elif tag == "e":
            if n < 0:
                raise ParseError(line_no, "edge before header")
            if len(parts) != 3:
                raise ParseError(line_no, "edge line must be 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(line_no, "edge fields must be integers") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(line_no, f"edge ({u}, {v}) out of range 1..{n}")
            if u == v:
                raise ParseError(line_no, f"self-loop at vertex {u}")
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in edge_seen:
                raise ParseError(line_no, f"duplicate edge ({u}, {v})")
            edge_seen.add(key)
            edges.append(key)
            if len(edges) > m:
                raise ParseError(line_no, f"more than {m} edge lines")
        else:
            raise ParseError(line_no, f"unknown line type {tag!r}")

    end = len(lines) + 1
    if n < 0:
        raise ParseError(end, "missing header")
    if len(edges) != m:
        raise ParseError(end, f"expected {m} edges, found {len(edges)} (end of file)")
    for v in range(n):
        if v not in thresholds:
            raise ParseError(end, f"missing threshold for vertex {v + 1} (end of file)")
    ordered = tuple(thresholds[v] for v in range(n))
    return RawInstance(n, tuple(edges), ordered)


def parse_instance(text: str, k: int) -> Instance:
    raw = parse_instance_text(text)
    return validate_instance(raw.n, raw.edges, raw.thresholds, k)


def emit_instance(n: int, edges, thresholds) -> str:
    ordered = sorted((min(e), max(e)) for e in edges)
    lines = [f"p fcs {n} {len(ordered)}"]
    for v in range(n):
        lines.append(f"t {v + 1} {thresholds[v]}")
    for u, v in ordered:
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def emit_instance_for(inst: Instance) -> str:
    return emit_instance(inst.n, inst.graph.edges, inst.thresholds)


def parse_witness(text: str) -> tuple[int, ...]:
    size = -1
    ids: list[int] = []
    lines = text.splitlines()
    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        parts = stripped.split()
        if parts[0] == "s":
            if size >= 0:
                raise ParseError(line_no, "duplicate size line")
            if len(parts) != 2:
                raise ParseError(line_no, "size line must be 's <count>'")
            try:
                size = int(parts[1])
            except ValueError:
                raise ParseError(line_no, "size must be an integer") from None
        elif parts[0] == "v":
            try:
                ids.extend(int(p) for p in parts[1:])
            except ValueError:
                raise ParseError(line_no, "vertex ids must be integers") from None
        else:
            raise ParseError(line_no, f"unknown line type {parts[0]!r}")
    end = len(lines) + 1
    if size < 0:
        raise ParseError(end, "missing size line")
    if len(ids) != size:
        raise ParseError(end, f"size says {size}, found {len(ids)} ids")
    if any(v < 1 for v in ids):
        raise ParseError(end, "vertex ids must be positive")
    if len(set(ids)) != len(ids):
        raise ParseError(end, "repeated vertex id")
    return tuple(sorted(v - 1 for v in ids))


def emit_witness(members) -> str:
    ids = sorted(members)
    lines = [f"s {len(ids)}"]
    if ids:
        lines.append("v " + " ".join(str(v + 1) for v in ids))
    return "\n".join(lines) + "\n"


def emit_groups(groups: dict[str, tuple[int, ...]]) -> str:
    lines = []
    for name in sorted(groups):
        ids = " ".join(str(v + 1) for v in sorted(groups[name]))
        lines.append(f"{name} {ids}".rstrip())
    return "\n".join(lines) + "\n"


def parse_groups(text: str) -> dict[str, tuple[int, ...]]:
    out: dict[str, tuple[int, ...]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        parts = stripped.split()
        name = parts[0]
        if name in out:
            raise ParseError(line_no, f"duplicate group {name!r}")
        try:
            out[name] = tuple(int(p) - 1 for p in parts[1:])
        except ValueError:
            raise ParseError(line_no, "group members must be integers") from None
    return out
