"""Reader and writer for the line-oriented VGD v1 diagram format.

::

    vgd 1
    # comments start with '#'
    v <id> <k>                         graph vertex of degree k
    x <id>                             classical crossing
    xv <id>                            virtual crossing
    a <id> <node>.<slot> <node>.<slot> directed arc, tail then head
    o <id>                             free closed loop
"""

from __future__ import annotations

from pathlib import Path

from .diagram import CLASSICAL, FREE_LOOP, VIRTUAL, Arc, Diagram, Kind, validate, vertex
from .errors import VGDParseError

__all__ = ["loads", "dumps", "load", "dump"]


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise VGDParseError(lineno, f"{what} must be an integer, got {tok!r}") from None


def _port(tok: str, lineno: int):
    node, sep, slot = tok.partition(".")
    if not sep:
        raise VGDParseError(lineno, f"expected <node>.<slot>, got {tok!r}")
    return _int(node, lineno, "node id"), _int(slot, lineno, "slot")


def loads(text: str) -> Diagram:
    nodes = {}
    arcs = {}
    port_line: dict = {}
    node_line: dict = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not header_seen:
            if toks != ["vgd", "1"]:
                raise VGDParseError(lineno, "first line must be 'vgd 1'")
            header_seen = True
            continue
        kind, args = toks[0], toks[1:]
        if kind in ("v", "x", "xv"):
            want = 2 if kind == "v" else 1
            if len(args) != want:
                raise VGDParseError(lineno, f"'{kind}' takes {want} argument(s)")
            nid = _int(args[0], lineno, "node id")
            if nid in nodes:
                raise VGDParseError(lineno, f"duplicate node id {nid}")
            node_line[nid] = lineno
            if kind == "v":
                k = _int(args[1], lineno, "degree")
                if k < 1:
                    raise VGDParseError(lineno, "vertex degree must be >= 1")
                nodes[nid] = vertex(k)
            else:
                nodes[nid] = CLASSICAL if kind == "x" else VIRTUAL
        elif kind == "a":
            if len(args) != 3:
                raise VGDParseError(lineno, "'a' takes <id> <node>.<slot> <node>.<slot>")
            aid = _int(args[0], lineno, "arc id")
            if aid in arcs:
                raise VGDParseError(lineno, f"duplicate arc id {aid}")
            tail, head = _port(args[1], lineno), _port(args[2], lineno)
            for p in (tail, head):
                if p in port_line:
                    raise VGDParseError(
                        lineno, f"slot {p[0]}.{p[1]} already used on line {port_line[p]}"
                    )
                port_line[p] = lineno
            if tail == head:
                raise VGDParseError(lineno, "arc joins a slot to itself")
            arcs[aid] = Arc(tail, head)
        elif kind == "o":
            if len(args) != 1:
                raise VGDParseError(lineno, "'o' takes one id")
            aid = _int(args[0], lineno, "loop id")
            if aid in arcs:
                raise VGDParseError(lineno, f"duplicate arc id {aid}")
            arcs[aid] = FREE_LOOP
        else:
            raise VGDParseError(lineno, f"unknown line kind {kind!r}")
    if not header_seen:
        raise VGDParseError(1, "missing 'vgd 1' header")
    d = Diagram(nodes, arcs)
    problems = validate(d)
    if problems:
        where = lineno
        for p in port_line:
            if p[0] not in nodes or not 0 <= p[1] < nodes[p[0]].degree:
                where = port_line[p]
                break
        else:
            for nid, node in sorted(nodes.items()):
                if any((nid, s) not in port_line for s in range(node.degree)):
                    where = node_line[nid]
                    break
        raise VGDParseError(where, "; ".join(problems))
    return d


def dumps(d: Diagram) -> str:
    lines = ["vgd 1"]
    for nid, node in sorted(d.nodes.items()):
        if node.kind is Kind.VERTEX:
            lines.append(f"v {nid} {node.degree}")
        elif node.kind is Kind.CLASSICAL:
            lines.append(f"x {nid}")
        else:
            lines.append(f"xv {nid}")
    for aid, arc in sorted(d.arcs.items()):
        if arc.is_loop:
            lines.append(f"o {aid}")
        else:
            (tn, ts), (hn, hs) = arc.tail, arc.head
            lines.append(f"a {aid} {tn}.{ts} {hn}.{hs}")
    return "\n".join(lines) + "\n"


def load(path) -> Diagram:
    return loads(Path(path).read_text())


def dump(d: Diagram, path) -> None:
    Path(path).write_text(dumps(d))
