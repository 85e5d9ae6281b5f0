"""Crossing-reducing Reidemeister moves and a greedy simplifier.

Only moves that delete crossings are searched:

* ``R1``  a classical crossing whose two adjacent slots are joined by one arc (a curl);
* ``VR1`` the same with a virtual crossing;
* ``R2``  two classical crossings of opposite sign joined by an arc running
  over-to-over and another running under-to-under;
* ``VR2`` two virtual crossings joined by arcs on both of their strands.

Sites are read off the Gauss data alone: two crossings that are consecutive
along both strands can be cancelled in a virtual diagram whatever the
planar picture looks like.

Each move splices its crossings out, so every application lowers the
crossing count and the simplifier terminates.  It is sound but not
complete: a diagram it cannot reduce may still be trivial.
"""

from __future__ import annotations

from enum import Enum

from .diagram import (
    Diagram,
    Kind,
    components,
    crossing_sign,
    orient,
    splice_out,
    strip_vertices,
)
from .errors import OrientationMismatch

__all__ = ["MoveKind", "Triviality", "find_reductions", "apply", "simplify", "triviality_certificate"]


class MoveKind(str, Enum):
    R1 = "R1"
    VR1 = "VR1"
    R2 = "R2"
    VR2 = "VR2"


class Triviality(str, Enum):
    TRIVIAL = "Trivial"
    UNKNOWN = "Unknown"


_ORDER = {MoveKind.R1: 0, MoveKind.VR1: 1, MoveKind.R2: 2, MoveKind.VR2: 3}


def _strand(slot: int) -> int:
    return slot % 2


def _has_curl(d: Diagram, x: int) -> bool:
    for s in range(4):
        other = d.other_end((x, s))
        if other is not None and other[0] == x and (other[1] - s) % 4 in (1, 3):
            return True
    return False


def _bigon_arcs(d: Diagram, x: int, y: int) -> list[tuple[int, int]]:
    """``(slot at x, slot at y)`` for every arc joining x and y."""
    out = []
    for s in range(4):
        other = d.other_end((x, s))
        if other is not None and other[0] == y:
            out.append((s, other[1]))
    return out


def _strand_pairs(d: Diagram, x: int, y: int) -> set[tuple[int, int]]:
    """Strand parities ``(at x, at y)`` of the arcs joining x and y."""
    return {(_strand(sx), _strand(sy)) for sx, sy in _bigon_arcs(d, x, y)}


def _is_r2(d: Diagram, x: int, y: int) -> bool:
    # one arc runs over-to-over, another under-to-under
    if not {(0, 0), (1, 1)} <= _strand_pairs(d, x, y):
        return False
    try:
        return crossing_sign(d, x) == -crossing_sign(d, y)
    except OrientationMismatch:
        return False


def _is_vr2(d: Diagram, x: int, y: int) -> bool:
    pairs = _strand_pairs(d, x, y)
    return {(0, 0), (1, 1)} <= pairs or {(0, 1), (1, 0)} <= pairs


def find_reductions(d: Diagram) -> list[tuple[MoveKind, tuple[int, ...]]]:
    """Every reducing site, ordered by lowest node id then move kind."""
    sites = []
    crossings = sorted(i for i, n in d.nodes.items() if n.is_crossing)
    for x in crossings:
        kind = d.nodes[x].kind
        if _has_curl(d, x):
            sites.append((MoveKind.R1 if kind is Kind.CLASSICAL else MoveKind.VR1, (x,)))
        neighbours = sorted(
            {
                other[0]
                for s in range(4)
                if (other := d.other_end((x, s))) is not None and other[0] > x
            }
        )
        for y in neighbours:
            if d.nodes[y].kind is not kind:
                continue
            if kind is Kind.CLASSICAL and _is_r2(d, x, y):
                sites.append((MoveKind.R2, (x, y)))
            elif kind is Kind.VIRTUAL and _is_vr2(d, x, y):
                sites.append((MoveKind.VR2, (x, y)))
    sites.sort(key=lambda st: (st[1][0], _ORDER[st[0]], st[1]))
    return sites


def apply(d: Diagram, move: MoveKind, site: tuple[int, ...]) -> Diagram:
    for x in site:
        d = splice_out(d, x)
    return d


def simplify(d: Diagram) -> Diagram:
    """Apply the first listed reduction until none is left.

    Degree-2 graph vertices are spliced out first; they carry no topology.
    """
    d = strip_vertices(d)
    if d.is_link_diagram():
        d = orient(d)
    while True:
        sites = find_reductions(d)
        if not sites:
            return d
        move, site = sites[0]
        d = apply(d, move, site)


def triviality_certificate(d: Diagram) -> Triviality:
    """Trivial when simplification leaves no classical crossing, or one on a knot."""
    s = simplify(d)
    c = len(s.classical_crossings())
    if c == 0:
        return Triviality.TRIVIAL
    if c == 1 and len(components(s)) == 1:
        return Triviality.TRIVIAL
    return Triviality.UNKNOWN
