"""Planar constructions of standard diagrams: braid closures, 4-plats, fixtures.

Strands run downward.  A crossing between positions ``i`` and ``i + 1``
has ports NW, NE (top) and SW, SE (bottom); counterclockwise they read
NE, NW, SW, SE.  With downward strands the braid generator ``+i`` (the
strand from NE to SW passes over) is a positive crossing.
"""

from __future__ import annotations

import random
from typing import Sequence

from .diagram import (
    CLASSICAL,
    FREE_LOOP,
    VIRTUAL,
    Arc,
    Diagram,
    Port,
    crossing_change,
    from_pairing,
    linking_number,
    reverse_component,
    virtualize,
)

__all__ = [
    "TangleBuilder",
    "braid_closure",
    "unknot",
    "unlink",
    "u_plus",
    "u_minus",
    "u_star",
    "hopf",
    "h_plus",
    "h_minus",
    "trefoil",
    "figure_eight",
    "twist_knot",
    "random_braid_closure",
    "random_virtual_diagram",
]

# slots for (NW, NE, SW, SE) given which strand passes under
_NW_SE_UNDER = {"NW": 0, "SW": 1, "SE": 2, "NE": 3}
_NE_SW_UNDER = {"NE": 0, "NW": 1, "SW": 2, "SE": 3}


class TangleBuilder:
    """Stacks caps, crossings and cups top to bottom and closes them up."""

    def __init__(self, width: int = 0):
        self._next_node = 0
        self._next_wire = 0
        self.nodes: dict = {}
        self.links: list[tuple] = []  # (upper end, lower end)
        self.wires: dict = {}  # wire end -> its partner end
        self.pos: list = []
        self.tops: list = []
        for _ in range(width):
            top, bottom = self._wire()
            self.tops.append(bottom)
            self.pos.append(top)

    def _wire(self):
        k = self._next_wire
        self._next_wire += 1
        a, b = ("w", k, 0), ("w", k, 1)
        self.wires[a] = b
        self.wires[b] = a
        return a, b

    def cap(self, i: int) -> TangleBuilder:
        a, b = self._wire()
        self.pos[i:i] = [a, b]
        return self

    def cup(self, i: int) -> TangleBuilder:
        self.links.append((self.pos[i], self.pos[i + 1]))
        del self.pos[i : i + 2]
        return self

    def cross(self, i: int, sign: int = 1, virtual: bool = False) -> int:
        """Add a crossing between positions ``i`` and ``i + 1``; returns its id."""
        nid = self._next_node
        self._next_node += 1
        slots = _NW_SE_UNDER if sign > 0 else _NE_SW_UNDER
        self.nodes[nid] = VIRTUAL if virtual else CLASSICAL
        self.links.append((self.pos[i], (nid, slots["NW"])))
        self.links.append((self.pos[i + 1], (nid, slots["NE"])))
        self.pos[i] = (nid, slots["SW"])
        self.pos[i + 1] = (nid, slots["SE"])
        return nid

    def close(self) -> TangleBuilder:
        """Braid closure: bottom position j joins the top of strand j."""
        if len(self.pos) != len(self.tops):
            raise ValueError("braid closure needs as many bottom ends as top strands")
        for j, end in enumerate(self.pos):
            self.links.append((end, self.tops[j]))
        self.pos = []
        return self

    def build(self) -> Diagram:
        if self.pos:
            raise ValueError("tangle still has open ends")
        # every end sits in exactly one link; `down` records if it is the upper end
        partner: dict = {}
        down: dict = {}
        for a, b in self.links:
            partner[a], partner[b] = b, a
            down[a], down[b] = True, False
        pairs = []
        directions = {}
        done: set = set()
        for a in sorted((e for e in partner if _is_port(e))):
            if a in done:
                continue
            senses = {down[a]}
            cur = partner[a]
            while not _is_port(cur):
                twin = self.wires[cur]
                senses.add(down[twin])
                cur = partner[twin]
            done.update((a, cur))
            pairs.append((a, cur))
            if len(senses) == 1:
                directions[frozenset((a, cur))] = a if down[a] else cur
        loops = _count_wire_loops(self.links, self.wires)
        return from_pairing(self.nodes, pairs, free_loops=loops, directions=directions)


def _is_port(e) -> bool:
    return e[0] != "w"


def _is_wire(e) -> bool:
    return e[0] == "w"


def _count_wire_loops(links, wires) -> int:
    adj: dict = {}
    for a, b in links:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = set()
    loops = 0
    for start in wires:
        if start in seen:
            continue
        stack = [start]
        has_port = False
        comp = set()
        while stack:
            e = stack.pop()
            if e in comp:
                continue
            comp.add(e)
            if _is_port(e):
                has_port = True
                continue
            stack.append(wires[e])
            stack.extend(adj.get(e, []))
        seen |= comp
        if not has_port:
            loops += 1
    return loops


def braid_closure(word: Sequence, strands: int | None = None) -> Diagram:
    """Closure of a braid word.

    Letters are nonzero ints ``±i`` (generator ``sigma_i`` on strands
    ``i, i+1``, 1-based) or strings ``"vi"`` for a virtual crossing.
    """
    letters = []
    top = 1
    for w in word:
        if isinstance(w, str):
            i = int(w.lstrip("v"))
            letters.append((i, 1, True))
        else:
            i = abs(int(w))
            letters.append((i, 1 if w > 0 else -1, False))
        top = max(top, i + 1)
    n = strands or top
    b = TangleBuilder(n)
    for i, sign, virt in letters:
        b.cross(i - 1, sign, virt)
    return b.close().build()


def _plat(*blocks: tuple[int, Sequence[int]]) -> Diagram:
    """4-plat: caps (0,1) and (2,3), twist blocks ``(position, signs)``, cups (0,1), (2,3)."""
    b = TangleBuilder(0)
    b.cap(0).cap(2)
    for position, signs in blocks:
        for s in signs:
            b.cross(position, s)
    b.cup(0).cup(0)
    return b.build()


# ---------------------------------------------------------------- fixtures


def unlink(n: int) -> Diagram:
    return Diagram({}, {k: FREE_LOOP for k in range(n)})


def unknot() -> Diagram:
    return unlink(1)


def u_plus() -> Diagram:
    """One-crossing unknot with a positive curl."""
    return Diagram({0: CLASSICAL}, {0: Arc((0, 2), (0, 3)), 1: Arc((0, 1), (0, 0))})


def u_minus() -> Diagram:
    return crossing_change(u_plus(), 0)


def u_star() -> Diagram:
    return virtualize(u_plus(), 0)


def hopf(sign: int = 1) -> Diagram:
    """Two-crossing Hopf link with linking number ``sign``."""
    d = braid_closure([sign, sign])
    if linking_number(d, 0, 1).halves != 2 * sign:
        d = reverse_component(d, 1)
    return d


def h_plus() -> Diagram:
    return virtualize(hopf(1), 0)


def h_minus() -> Diagram:
    return virtualize(hopf(-1), 0)


def trefoil() -> Diagram:
    """Right-handed trefoil (writhe +3)."""
    return braid_closure([1, 1, 1])


def figure_eight() -> Diagram:
    return braid_closure([1, -2, 1, -2])


CLASP_SIGN, TWIST_SIGN, TAIL_SIGN = 1, -1, 1


def twist_knot(n: int) -> Diagram:
    """Twist knot K_n: a 2-crossing clasp (ids 0, 1) and ``n + 1`` twist crossings.

    K_0 is the trefoil and K_1 the figure-eight knot.
    """
    if n < 0:
        raise ValueError("twist knot index must be >= 0")
    m = n + 1
    # continued fraction [2, m - 1, 1] = (2m + 1) / m
    return _plat((1, [CLASP_SIGN] * 2), (0, [TWIST_SIGN] * (m - 1)), (1, [TAIL_SIGN]))


# ---------------------------------------------------------------- random


def random_braid_closure(
    rng: random.Random,
    max_crossings: int,
    strands: int | None = None,
    knot: bool = False,
    virtual_prob: float = 0.0,
    min_crossings: int = 1,
) -> Diagram:
    """A random planar braid closure; optionally a knot, optionally with virtual letters."""
    while True:
        k = strands or rng.randint(2, 4)
        m = rng.randint(min_crossings, max_crossings)
        word = []
        for _ in range(m):
            i = rng.randint(1, k - 1)
            if rng.random() < virtual_prob:
                word.append(f"v{i}")
            else:
                word.append(i if rng.random() < 0.5 else -i)
        if knot and not _single_cycle(word, k):
            continue
        return braid_closure(word, k)


def _single_cycle(word, k) -> bool:
    perm = list(range(k))
    for w in word:
        i = int(w.lstrip("v")) if isinstance(w, str) else abs(w)
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    seen = {0}
    j = perm[0]
    while j not in seen:
        seen.add(j)
        j = perm[j]
    return len(seen) == k


def random_virtual_diagram(rng: random.Random, crossings: int, virtual_prob: float = 0.3) -> Diagram:
    """Random Gauss-level diagram: an arbitrary perfect matching of crossing ports."""
    ports: list[Port] = [(x, s) for x in range(crossings) for s in range(4)]
    rng.shuffle(ports)
    pairs = [(ports[2 * i], ports[2 * i + 1]) for i in range(len(ports) // 2)]
    nodes = {x: VIRTUAL if rng.random() < virtual_prob else CLASSICAL for x in range(crossings)}
    return from_pairing(nodes, pairs)
