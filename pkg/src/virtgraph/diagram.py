"""Combinatorial virtual link and spatial-graph diagrams.

A diagram is a set of nodes joined by directed arcs.  Each node has
numbered slots in counterclockwise order:

* a graph vertex of degree ``k`` has slots ``0..k-1``;
* a classical crossing has four slots, the strand through ``0-2`` passes
  under and the strand through ``1-3`` passes over;
* a virtual crossing has four slots with strands ``0-2`` and ``1-3`` and
  no over/under information.

An arc joins two ``(node, slot)`` ports.  An arc with no endpoints is a
free closed loop (an unknotted component without any nodes).

Diagrams are immutable: every editing function returns a new diagram.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    ComponentOutOfRange,
    CyclesNotDisjoint,
    DiagramError,
    EdgeNotInDiagram,
    NotALinkDiagram,
    NotClassical,
    OrientationMismatch,
)

Port = tuple[int, int]

__all__ = [
    "Kind",
    "Node",
    "Arc",
    "Diagram",
    "HalfInt",
    "validate",
    "components",
    "crossing_sign",
    "writhe",
    "virtualize",
    "crossing_change",
    "smooth",
    "extract_cycle_link",
    "edge_paths",
    "orient",
    "reverse_component",
    "splice_out",
    "from_pairing",
]


class Kind(str, Enum):
    VERTEX = "v"
    CLASSICAL = "x"
    VIRTUAL = "xv"


@dataclass(frozen=True)
class Node:
    kind: Kind
    degree: int = 4

    @property
    def is_crossing(self) -> bool:
        return self.kind is not Kind.VERTEX


CLASSICAL = Node(Kind.CLASSICAL)
VIRTUAL = Node(Kind.VIRTUAL)


def vertex(degree: int) -> Node:
    return Node(Kind.VERTEX, degree)


@dataclass(frozen=True)
class Arc:
    tail: Port | None
    head: Port | None

    @property
    def is_loop(self) -> bool:
        return self.tail is None

    def reversed(self) -> Arc:
        return Arc(self.head, self.tail)


FREE_LOOP = Arc(None, None)


@dataclass(frozen=True)
class HalfInt:
    """A multiple of one half, stored as the integer count of halves."""

    halves: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.halves, 2)

    @property
    def is_half_integer(self) -> bool:
        return self.halves % 2 != 0

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, eq=False)
class Diagram:
    """Nodes and arcs keyed by integer ids.

    The mappings must not be mutated after construction.
    """

    nodes: Mapping[int, Node] = field(default_factory=dict)
    arcs: Mapping[int, Arc] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return dict(self.nodes) == dict(other.nodes) and dict(self.arcs) == dict(other.arcs)

    def __hash__(self):
        return hash((tuple(sorted(self.nodes.items())), tuple(sorted(self.arcs.items()))))

    @cached_property
    def ports(self) -> dict[Port, tuple[int, str]]:
        """``port -> (arc id, "tail" | "head")``."""
        out = {}
        for aid, arc in self.arcs.items():
            if arc.tail is not None:
                out[arc.tail] = (aid, "tail")
            if arc.head is not None:
                out[arc.head] = (aid, "head")
        return out

    def classical_crossings(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items() if n.kind is Kind.CLASSICAL)

    def virtual_crossings(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items() if n.kind is Kind.VIRTUAL)

    def vertices(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items() if n.kind is Kind.VERTEX)

    def is_link_diagram(self) -> bool:
        return all(n.degree == 2 for n in self.nodes.values() if n.kind is Kind.VERTEX)

    def other_end(self, port: Port) -> Port | None:
        aid, end = self.ports[port]
        arc = self.arcs[aid]
        return arc.head if end == "tail" else arc.tail

    def __repr__(self):
        return (
            f"Diagram({len(self.classical_crossings())} classical, "
            f"{len(self.virtual_crossings())} virtual, {len(self.vertices())} vertices, "
            f"{len(self.arcs)} arcs)"
        )


def through(node: Node, slot: int) -> int:
    """Slot where a strand entering at ``slot`` leaves the node."""
    if node.is_crossing:
        return (slot + 2) % 4
    if node.degree == 2:
        return 1 - slot
    raise NotALinkDiagram(f"cannot pass through a vertex of degree {node.degree}")


def validate(d: Diagram) -> list[str]:
    """Every structural violation in ``d``; an empty list means valid."""
    problems = []
    seen: dict[Port, int] = {}
    for nid, node in sorted(d.nodes.items()):
        if node.is_crossing and node.degree != 4:
            problems.append(f"node {nid}: crossing must have 4 slots, has {node.degree}")
        if node.kind is Kind.VERTEX and node.degree < 1:
            problems.append(f"node {nid}: vertex degree must be >= 1")
    for aid, arc in sorted(d.arcs.items()):
        if (arc.tail is None) != (arc.head is None):
            problems.append(f"arc {aid}: half-open arc")
            continue
        for port in (arc.tail, arc.head):
            if port is None:
                continue
            nid, slot = port
            node = d.nodes.get(nid)
            if node is None:
                problems.append(f"arc {aid}: unknown node {nid}")
                continue
            if not 0 <= slot < node.degree:
                problems.append(f"arc {aid}: slot {slot} out of range for node {nid}")
                continue
            if port in seen:
                problems.append(f"arc {aid}: slot {nid}.{slot} reused (also arc {seen[port]})")
            seen[port] = aid
    for nid, node in sorted(d.nodes.items()):
        for slot in range(node.degree):
            if (nid, slot) not in seen:
                problems.append(f"node {nid}: unfilled slot {slot}")
    return problems


def check(d: Diagram) -> Diagram:
    problems = validate(d)
    if problems:
        raise DiagramError("; ".join(problems))
    return d


# ---------------------------------------------------------------- tracing


def _trace(d: Diagram, start: int) -> list[tuple[int, bool]]:
    """Walk the component containing arc ``start`` in the direction of that arc.

    Returns ``(arc id, forward)`` pairs in traversal order.
    """
    arc = d.arcs[start]
    if arc.is_loop:
        return [(start, True)]
    out = []
    aid, forward = start, True
    while True:
        out.append((aid, forward))
        arc = d.arcs[aid]
        nid, slot = arc.head if forward else arc.tail
        nxt = (nid, through(d.nodes[nid], slot))
        aid, end = d.ports[nxt]
        forward = end == "tail"
        if aid == start and forward:
            return out
        if len(out) > len(d.arcs):
            raise DiagramError("strand tracing did not close")


def _components_detailed(d: Diagram) -> list[list[tuple[int, bool]]]:
    if not d.is_link_diagram():
        raise NotALinkDiagram("diagram has graph vertices of degree other than 2")
    seen: set[int] = set()
    comps = []
    for aid in sorted(d.arcs):
        if aid in seen:
            continue
        comp = _trace(d, aid)
        seen.update(a for a, _ in comp)
        comps.append(comp)
    return comps


def components(d: Diagram) -> list[tuple[int, ...]]:
    """Components as cyclic arc sequences, each starting at its lowest arc id."""
    return [tuple(a for a, _ in comp) for comp in _components_detailed(d)]


def component_of_arc(d: Diagram) -> dict[int, int]:
    out = {}
    for i, comp in enumerate(components(d)):
        for a in comp:
            out[a] = i
    return out


def orient(d: Diagram) -> Diagram:
    """Make every component coherently directed, following its lowest arc."""
    arcs = dict(d.arcs)
    changed = False
    for comp in _components_detailed(d):
        for aid, forward in comp:
            if not forward:
                arcs[aid] = arcs[aid].reversed()
                changed = True
    return Diagram(dict(d.nodes), arcs) if changed else d


def reverse_component(d: Diagram, index: int) -> Diagram:
    comps = components(d)
    if not 0 <= index < len(comps):
        raise ComponentOutOfRange(f"component {index} of {len(comps)}")
    arcs = dict(d.arcs)
    for aid in comps[index]:
        arcs[aid] = arcs[aid].reversed()
    return Diagram(dict(d.nodes), arcs)


# ---------------------------------------------------------------- signs


def _entry_slot(d: Diagram, nid: int, pair: tuple[int, int]) -> int:
    a, b = pair
    ea = d.ports[(nid, a)][1]
    eb = d.ports[(nid, b)][1]
    if ea == "head" and eb == "tail":
        return a
    if eb == "head" and ea == "tail":
        return b
    raise OrientationMismatch(f"strand {a}-{b} at crossing {nid} is not coherently directed")


def crossing_sign(d: Diagram, nid: int) -> int:
    """+1 or -1 under the pinned convention.

    With the under-strand entering at slot 0 the crossing is positive when
    the over-strand enters at slot 3 and negative when it enters at slot 1.
    """
    if d.nodes[nid].kind is not Kind.CLASSICAL:
        raise NotClassical(f"node {nid} is not a classical crossing")
    under = _entry_slot(d, nid, (0, 2))
    over = _entry_slot(d, nid, (1, 3))
    return 1 if (over - under) % 4 == 3 else -1


def writhe(d: Diagram) -> int:
    return sum(crossing_sign(d, x) for x in d.classical_crossings())


def linking_number(d: Diagram, i: int, j: int) -> HalfInt:
    """Half the signed count of classical crossings between components i and j."""
    comp = component_of_arc(d)
    ncomp = len(set(comp.values()))
    for k in (i, j):
        if not 0 <= k < ncomp:
            raise ComponentOutOfRange(f"component {k} of {ncomp}")
    if i == j:
        raise ComponentOutOfRange("linking number needs two distinct components")
    halves = 0
    for x in d.classical_crossings():
        a = comp[d.ports[(x, 0)][0]]
        b = comp[d.ports[(x, 1)][0]]
        if {a, b} == {i, j}:
            halves += crossing_sign(d, x)
    return HalfInt(halves)


# ---------------------------------------------------------------- editing


def _require_classical(d: Diagram, nid: int) -> None:
    node = d.nodes.get(nid)
    if node is None or node.kind is not Kind.CLASSICAL:
        raise NotClassical(f"node {nid} is not a classical crossing")


def _relabel_slots(d: Diagram, nid: int, new_slot) -> dict[int, Arc]:
    arcs = {}
    for aid, arc in d.arcs.items():
        tail, head = arc.tail, arc.head
        if tail is not None and tail[0] == nid:
            tail = (nid, new_slot(tail[1]))
        if head is not None and head[0] == nid:
            head = (nid, new_slot(head[1]))
        arcs[aid] = Arc(tail, head) if (tail, head) != (arc.tail, arc.head) else arc
    return arcs


def virtualize(d: Diagram, nid: int) -> Diagram:
    """Replace a classical crossing by a virtual one; everything else is kept."""
    _require_classical(d, nid)
    nodes = dict(d.nodes)
    nodes[nid] = VIRTUAL
    return Diagram(nodes, dict(d.arcs))


def crossing_change(d: Diagram, nid: int) -> Diagram:
    """Swap over and under at ``nid`` by rotating its slot labels one step.

    A positive crossing rotates forward and a negative one backward, which
    makes the operation an involution on the stored data.
    """
    _require_classical(d, nid)
    try:
        step = crossing_sign(d, nid)
    except OrientationMismatch:
        step = 1
    return Diagram(dict(d.nodes), _relabel_slots(d, nid, lambda s: (s + step) % 4))


class _Editor:
    """Mutable scratch copy used while rewiring; produces a new Diagram."""

    def __init__(self, d: Diagram):
        self.nodes = dict(d.nodes)
        self.arcs = dict(d.arcs)
        self.ports = dict(d.ports)
        self.next_id = max(self.arcs, default=-1) + 1

    def remove_node(self, nid: int, pairs: Iterable[tuple[int, int]]) -> None:
        for s1, s2 in pairs:
            a1, e1 = self.ports.pop((nid, s1))
            a2, e2 = self.ports.pop((nid, s2))
            if a1 == a2:
                self.arcs[a1] = FREE_LOOP
                continue
            arc1, arc2 = self.arcs[a1], self.arcs[a2]
            far1 = arc1.tail if e1 == "head" else arc1.head
            far2 = arc2.tail if e2 == "head" else arc2.head
            if e1 == "head":
                new = Arc(far1, far2)
            else:
                new = Arc(far2, far1)
            keep, drop = min(a1, a2), max(a1, a2)
            self.arcs[keep] = new
            del self.arcs[drop]
            self.ports[new.tail] = (keep, "tail")
            self.ports[new.head] = (keep, "head")
        del self.nodes[nid]

    def diagram(self) -> Diagram:
        return Diagram(self.nodes, self.arcs)


def splice_out(d: Diagram, nid: int) -> Diagram:
    """Delete a node, letting every strand through it pass straight on."""
    node = d.nodes[nid]
    ed = _Editor(d)
    if node.is_crossing:
        ed.remove_node(nid, [(0, 2), (1, 3)])
    elif node.degree == 2:
        ed.remove_node(nid, [(0, 1)])
    else:
        raise NotALinkDiagram("only degree-2 vertices can be spliced out")
    return ed.diagram()


def strip_vertices(d: Diagram) -> Diagram:
    """Splice out every degree-2 vertex."""
    for v in d.vertices():
        d = splice_out(d, v)
    return d


SMOOTHINGS = {"A": [(0, 1), (2, 3)], "B": [(0, 3), (1, 2)]}


def smooth(d: Diagram, nid: int, kind: str) -> Diagram:
    """Smooth a classical crossing.

    ``kind`` is ``"A"`` (joins slots 0-1 and 2-3), ``"B"`` (0-3 and 1-2) or
    ``"oriented"`` (the reconnection that respects arc directions).
    A/B results are re-oriented component by component.
    """
    _require_classical(d, nid)
    if kind == "oriented":
        under_in = _entry_slot(d, nid, (0, 2))
        over_in = _entry_slot(d, nid, (1, 3))
        pairs = [(under_in, (over_in + 2) % 4), (over_in, (under_in + 2) % 4)]
        ed = _Editor(d)
        ed.remove_node(nid, pairs)
        out = ed.diagram()
        if any(
            _trace_coherence(out, comp) is False for comp in _components_detailed(out)
        ):
            raise OrientationMismatch("oriented smoothing produced an incoherent strand")
        return out
    if kind not in SMOOTHINGS:
        raise ValueError(f"unknown smoothing {kind!r}")
    ed = _Editor(d)
    ed.remove_node(nid, SMOOTHINGS[kind])
    out = ed.diagram()
    return orient(out) if out.is_link_diagram() else out


def _trace_coherence(d: Diagram, comp) -> bool:
    return all(forward for _, forward in comp)


# ---------------------------------------------------------------- construction


def from_pairing(
    nodes: Mapping[int, Node],
    pairs: Iterable[tuple[Port, Port]],
    free_loops: int = 0,
    directions: Mapping[frozenset, Port] | None = None,
) -> Diagram:
    """Build a coherently directed link diagram from an undirected port pairing.

    Components are traversed starting from their smallest port.  If
    ``directions`` maps ``frozenset({p, q})`` to the preferred tail port for
    some pairs, each component follows the preference of its first such pair.
    """
    partner: dict[Port, Port] = {}
    for p, q in pairs:
        if p in partner or q in partner:
            raise DiagramError(f"port used twice in pairing: {p} / {q}")
        partner[p] = q
        partner[q] = p
    arcs: dict[int, Arc] = {}
    visited: set[Port] = set()
    next_id = 0
    for start in sorted(partner):
        if start in visited:
            continue
        # walk: leave via `start`
        walk = []
        p = start
        while True:
            q = partner[p]
            walk.append((p, q))
            visited.add(p)
            visited.add(q)
            nid, slot = q
            p = (nid, through(nodes[nid], slot))
            if p == start:
                break
        if directions:
            for p, q in walk:
                pref = directions.get(frozenset((p, q)))
                if pref is not None:
                    if pref == q:
                        walk = [(b, a) for a, b in reversed(walk)]
                    break
        for p, q in walk:
            arcs[next_id] = Arc(p, q)
            next_id += 1
    for _ in range(free_loops):
        arcs[next_id] = FREE_LOOP
        next_id += 1
    return Diagram(dict(nodes), arcs)


# ---------------------------------------------------------------- graph diagrams


@dataclass(frozen=True)
class EdgePath:
    """The route of one graph edge ``u -> v`` through the diagram.

    ``visits`` lists ``(crossing id, entry slot, exit slot)`` in order.
    """

    u: int
    v: int
    u_slot: int
    v_slot: int
    visits: tuple[tuple[int, int, int], ...]

    def reversed(self) -> EdgePath:
        return EdgePath(
            self.v,
            self.u,
            self.v_slot,
            self.u_slot,
            tuple((x, out, inn) for x, inn, out in reversed(self.visits)),
        )


def edge_paths(d: Diagram) -> dict[tuple[int, int], EdgePath]:
    """Trace every graph edge between vertex nodes; keys are ``(u, v)`` with u < v.

    Raises :class:`EdgeNotInDiagram` style errors as :class:`DiagramError`
    for loops or parallel edges, which a simple graph cannot have.
    """
    out: dict[tuple[int, int], EdgePath] = {}
    for u in d.vertices():
        for s in range(d.nodes[u].degree):
            visits = []
            port = d.other_end((u, s))
            while True:
                nid, slot = port
                node = d.nodes[nid]
                if node.kind is Kind.VERTEX:
                    break
                exit_slot = (slot + 2) % 4
                visits.append((nid, slot, exit_slot))
                port = d.other_end((nid, exit_slot))
                if len(visits) > 2 * len(d.nodes):
                    raise DiagramError("edge tracing did not terminate")
            v, v_slot = port
            if v == u:
                raise DiagramError(f"vertex {u} has a loop edge")
            if u > v:
                continue
            key = (u, v)
            path = EdgePath(u, v, s, v_slot, tuple(visits))
            if key in out:
                if out[key] != path:
                    raise DiagramError(f"parallel edges between {u} and {v}")
                continue
            out[key] = path
    return out


def extract_cycle_link(
    d: Diagram,
    cycles: Sequence[Sequence[int]],
    paths: Mapping[tuple[int, int], EdgePath] | None = None,
) -> Diagram:
    """The link diagram formed by disjoint cycles of the underlying graph.

    Edges outside the cycles are deleted.  A crossing left with one strand
    disappears, graph vertices become degree-2 pass-throughs, and each cycle
    is directed along its vertex sequence.  Crossing and vertex ids are kept.
    """
    if paths is None:
        paths = edge_paths(d)
    used: set[int] = set()
    for cyc in cycles:
        if len(set(cyc)) != len(cyc):
            raise CyclesNotDisjoint(f"cycle {tuple(cyc)} repeats a vertex")
        if used & set(cyc):
            raise CyclesNotDisjoint(f"cycle {tuple(cyc)} shares vertices with another cycle")
        used |= set(cyc)
    walks = []
    visits_per_crossing: dict[int, int] = {}
    for cyc in cycles:
        walk = []
        n = len(cyc)
        for k in range(n):
            u, v = cyc[k], cyc[(k + 1) % n]
            key = (min(u, v), max(u, v))
            path = paths.get(key)
            if path is None or n < 2:
                raise EdgeNotInDiagram(f"edge {u}-{v} is not in the diagram")
            if path.u != u:
                path = path.reversed()
            walk.append(path)
            for x, _, _ in path.visits:
                visits_per_crossing[x] = visits_per_crossing.get(x, 0) + 1
        walks.append(walk)
    kept = {x for x, c in visits_per_crossing.items() if c == 2}

    nodes: dict[int, Node] = {}
    arcs: dict[int, Arc] = {}
    aid = 0
    for cyc, walk in zip(cycles, walks):
        stops: list[tuple[Port, Port]] = []  # (entry port, exit port)
        for path in walk:
            nodes[path.u] = vertex(2)
            stops.append(((path.u, 0), (path.u, 1)))
            for x, inn, out in path.visits:
                if x in kept:
                    nodes[x] = d.nodes[x]
                    stops.append(((x, inn), (x, out)))
        for k in range(len(stops)):
            arcs[aid] = Arc(stops[k][1], stops[(k + 1) % len(stops)][0])
            aid += 1
    return Diagram(nodes, arcs)


def graph_edges(d: Diagram) -> set[tuple[int, int]]:
    return set(edge_paths(d))
