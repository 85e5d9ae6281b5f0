"""Simple graphs: generators, cycles, Delta-Y exchanges, family closures and
straight-line diagrams.

Graphs are immutable, on vertices ``0..n-1``, with edges stored as pairs
``(u, v)`` with ``u < v``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .builders import twist_knot
from .diagram import CLASSICAL, Arc, Diagram, vertex
from .errors import GraphError, NotATriangle, NotAYVertex, TooLarge

__all__ = [
    "Graph",
    "CyclePair",
    "complete",
    "complete_multipartite",
    "cycle_graph",
    "petersen",
    "minus_edge",
    "join",
    "disjoint_union",
    "named_graph",
    "twist_knot_diagram",
    "loads_edges",
    "dumps_edges",
    "load_edges",
    "all_cycles",
    "disjoint_cycle_pairs",
    "hamiltonian_cycles",
    "delta_y",
    "y_delta",
    "triangles",
    "girth",
    "canonical_form",
    "is_isomorphic",
    "FamilyMember",
    "dy_closure",
    "c14",
    "interleaved",
    "straight_line_diagram",
    "convex_diagram",
]

ISO_CAP = 16


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {u}-{v} outside 0..{self.n - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        edges = list(edges)
        g = cls(n, frozenset(edges))
        if len(g.edges) != len(edges):
            raise GraphError("repeated edge")
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def relabel(self, perm: Sequence[int]) -> Graph:
        return Graph(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class CyclePair:
    c1: tuple[int, ...]
    c2: tuple[int, ...]

    def __iter__(self):
        return iter((self.c1, self.c2))


# ---------------------------------------------------------------- generators


def complete(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def complete_multipartite(parts: Sequence[int]) -> Graph:
    label = []
    for k, size in enumerate(parts):
        label += [k] * size
    n = len(label)
    return Graph(n, frozenset((u, v) for u, v in itertools.combinations(range(n), 2) if label[u] != label[v]))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((k, (k + 1) % n) for k in range(n)))


def petersen() -> Graph:
    outer = [(k, (k + 1) % 5) for k in range(5)]
    spokes = [(k, k + 5) for k in range(5)]
    inner = [(5 + k, 5 + (k + 2) % 5) for k in range(5)]
    return Graph(10, frozenset(outer + spokes + inner))


def minus_edge(g: Graph, e: tuple[int, int]) -> Graph:
    key = (min(e), max(e))
    if key not in g.edges:
        raise IndexError(f"edge {e} not in graph")
    return Graph(g.n, g.edges - {key})


def join(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Identify vertex ``v1`` of ``g1`` with vertex ``v2`` of ``g2``.

    ``g1`` keeps its labels; the other vertices of ``g2`` follow in order.
    """
    if not 0 <= v1 < g1.n or not 0 <= v2 < g2.n:
        raise IndexError("join vertex out of range")
    mapping = {}
    nxt = g1.n
    for w in range(g2.n):
        if w == v2:
            mapping[w] = v1
        else:
            mapping[w] = nxt
            nxt += 1
    edges = set(g1.edges) | {(mapping[u], mapping[v]) for u, v in g2.edges}
    return Graph(nxt, frozenset(edges))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shifted = {(u + g1.n, v + g1.n) for u, v in g2.edges}
    return Graph(g1.n + g2.n, g1.edges | shifted)


def named_graph(name: str) -> Graph:
    table = {
        "k6": lambda: complete(6),
        "k7": lambda: complete(7),
        "petersen": petersen,
        "k331": lambda: complete_multipartite([3, 3, 1]),
        "k3311": lambda: complete_multipartite([3, 3, 1, 1]),
        "k44-e": lambda: minus_edge(complete_multipartite([4, 4]), (0, 4)),
    }
    try:
        return table[name.lower()]()
    except KeyError:
        raise GraphError(f"unknown graph {name!r}; known: {', '.join(sorted(table))}") from None


def twist_knot_diagram(n: int) -> Diagram:
    """Twist knot K_n: ``n + 1`` twist crossings and a two-crossing clasp (ids 0, 1)."""
    return twist_knot(n)


# ---------------------------------------------------------------- edge lists


def loads_edges(text: str) -> Graph:
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with 'n m'")
    n, m = (int(x) for x in rows[0])
    if len(rows) - 1 != m:
        raise GraphError(f"header promises {m} edges, found {len(rows) - 1}")
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise GraphError(f"bad edge line {' '.join(r)!r}")
        edges.append((int(r[0]), int(r[1])))
    return Graph.from_edges(n, edges)


def dumps_edges(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def load_edges(path) -> Graph:
    return loads_edges(Path(path).read_text())


# ---------------------------------------------------------------- cycles


def all_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every simple cycle, starting at its lowest vertex and heading to the lower neighbour."""
    adj = [sorted(a) for a in g.adjacency()]
    out = []
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(v):
            for w in adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    out.sort(key=lambda c: (len(c), c))
    return out


def disjoint_cycle_pairs(g: Graph) -> list[CyclePair]:
    """Unordered pairs of vertex-disjoint cycles, shortest total length first."""
    cycles = all_cycles(g)
    sets = [frozenset(c) for c in cycles]
    pairs = []
    for i, j in itertools.combinations(range(len(cycles)), 2):
        if not sets[i] & sets[j]:
            pairs.append(CyclePair(cycles[i], cycles[j]))
    pairs.sort(key=lambda p: (len(p.c1) + len(p.c2), p.c1, p.c2))
    return pairs


def hamiltonian_cycles(g: Graph) -> list[tuple[int, ...]]:
    return [c for c in all_cycles(g) if len(c) == g.n]


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    adj = g.adjacency()
    return [t for t in itertools.combinations(range(g.n), 3)
            if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]]]


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle (BFS from every vertex), ``None`` for forests."""
    adj = g.adjacency()
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for v in queue:
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    length = dist[v] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


# ---------------------------------------------------------------- Delta-Y


def delta_y(g: Graph, triangle: Sequence[int]) -> Graph:
    """Replace the triangle's edges by a new vertex ``n`` joined to its corners."""
    a, b, c = triangle
    if len({a, b, c}) != 3 or not (g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)):
        raise NotATriangle(f"{tuple(triangle)} is not a triangle")
    tri = {(min(x, y), max(x, y)) for x, y in ((a, b), (b, c), (a, c))}
    edges = (g.edges - tri) | {(a, g.n), (b, g.n), (c, g.n)}
    return Graph(g.n + 1, frozenset(edges))


def y_delta(g: Graph, v: int) -> Graph:
    """Delete a degree-3 vertex and join its neighbours in a triangle; labels above shift down."""
    adj = g.adjacency()
    if not 0 <= v < g.n or len(adj[v]) != 3:
        raise NotAYVertex(f"vertex {v} does not have degree 3")
    a, b, c = sorted(adj[v])
    if g.has_edge(a, b) or g.has_edge(b, c) or g.has_edge(a, c):
        raise NotAYVertex(f"neighbours of {v} are already adjacent")
    keep = {(x, y) for x, y in g.edges if v not in (x, y)} | {(a, b), (b, c), (a, c)}

    def f(x):
        return x - 1 if x > v else x

    return Graph(g.n - 1, frozenset((f(x), f(y)) for x, y in keep))


# ---------------------------------------------------------------- isomorphism


def _refine(adj: list[set[int]], colors: list[int]) -> list[int]:
    """Colour refinement to the coarsest equitable partition; colours are label-free ranks."""
    n = len(colors)
    classes = len(set(colors))
    while True:
        sig = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == classes:
            return new
        colors, classes = new, len(ranks)


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """A labelling-independent certificate: the least relabelled edge list over
    all leaves of the individualisation-refinement tree."""
    if g.n > ISO_CAP:
        raise TooLarge(f"{g.n} vertices exceeds the isomorphism cap of {ISO_CAP}")
    adj = g.adjacency()
    best = None

    def search(colors):
        nonlocal best
        colors = _refine(adj, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == g.n:
            cert = tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in g.edges))
            if best is None or cert < best:
                best = cert
            return
        target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
        for v in cells[target]:
            nxt = [2 * c for c in colors]
            nxt[v] -= 1
            search(nxt)

    search([0] * g.n)
    return g.n, best if best is not None else ()


def canonical_graph(g: Graph) -> Graph:
    n, edges = canonical_form(g)
    return Graph(n, frozenset(edges))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    return canonical_form(g1) == canonical_form(g2)


@dataclass(frozen=True)
class FamilyMember:
    """A closure member (canonically labelled) and how it was first reached."""

    graph: Graph
    parent: int | None
    triangle: tuple[int, ...] | None

    @property
    def triangle_free(self) -> bool:
        return not triangles(self.graph)


def dy_closure(g: Graph, inverse: bool = False) -> list[FamilyMember]:
    """Isomorphism classes reachable from ``g`` by Delta-Y exchanges, breadth first.

    ``parent`` indexes the member whose ``triangle`` was exchanged (in that
    member's canonical labels) to reach this one.  With ``inverse`` the
    Y-Delta direction is allowed too; such steps record ``(v,)`` instead of
    a triangle.  Only that two-way closure reaches K_{3,3,1} from K6.
    """
    seen = {canonical_form(g): 0}
    members = [FamilyMember(canonical_graph(g), None, None)]
    k = 0
    while k < len(members):
        h = members[k].graph
        for tri in triangles(h):
            child = delta_y(h, tri)
            key = canonical_form(child)
            if key not in seen:
                seen[key] = len(members)
                members.append(FamilyMember(Graph(key[0], frozenset(key[1])), k, tri))
        if inverse:
            for v in range(h.n):
                try:
                    child = y_delta(h, v)
                except NotAYVertex:
                    continue
                key = canonical_form(child)
                if key not in seen:
                    seen[key] = len(members)
                    members.append(FamilyMember(Graph(key[0], frozenset(key[1])), k, (v,)))
        k += 1
    return members


def c14() -> Graph:
    """The triangle-free 14-vertex graph of the K7 family, when it is unique."""
    found = [m.graph for m in dy_closure(complete(7)) if m.graph.n == 14 and m.triangle_free]
    if len(found) != 1:
        raise GraphError(f"expected one triangle-free 14-vertex member, found {len(found)}")
    return found[0]


# ---------------------------------------------------------------- drawings


def interleaved(order: Sequence[int], e: tuple[int, int], f: tuple[int, int]) -> bool:
    """Chords ``e`` and ``f`` of a convex polygon cross: exactly one end of ``f`` lies between those of ``e``."""
    pos = {v: k for k, v in enumerate(order)}
    a, b = sorted((pos[e[0]], pos[e[1]]))
    if len({e[0], e[1], f[0], f[1]}) < 4:
        return False
    inside = [a < pos[x] < b for x in f]
    return inside[0] != inside[1]


def _segment_hit(p, q, r, s):
    """Parameters (t, u) of a proper crossing of pq and rs, or None."""
    dx1, dy1 = q[0] - p[0], q[1] - p[1]
    dx2, dy2 = s[0] - r[0], s[1] - r[1]
    den = dx1 * dy2 - dy1 * dx2
    if den == 0:
        return None
    t = ((r[0] - p[0]) * dy2 - (r[1] - p[1]) * dx2) / den
    u = ((r[0] - p[0]) * dy1 - (r[1] - p[1]) * dx1) / den
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    return None


def straight_line_diagram(
    g: Graph,
    positions: Mapping[int, tuple] | Sequence[tuple],
    over: Sequence[int] | Mapping[int, int] | None = None,
) -> Diagram:
    """Diagram of ``g`` drawn with straight edges at exact rational positions.

    Every proper crossing of two edges becomes a classical crossing, numbered
    ``n, n+1, ...`` in lexicographic order of the edge pair ``(e, f)`` with
    ``e < f``.  ``over[k]`` is ``+1`` when the smaller edge ``e`` passes over
    at crossing ``k`` and ``-1`` otherwise (default all ``+1``).  Edges are
    directed from lower to higher vertex label; vertex ids equal graph labels.
    """
    pts = {v: (Fraction(positions[v][0]), Fraction(positions[v][1])) for v in range(g.n)}
    if len(set(pts.values())) != g.n:
        raise GraphError("two vertices share a position")
    edges = g.sorted_edges()
    for (u, v) in edges:
        for w in range(g.n):
            if w not in (u, v) and _on_segment(pts[u], pts[v], pts[w]):
                raise GraphError(f"vertex {w} lies on edge {u}-{v}")
    hits = []
    for e, f in itertools.combinations(edges, 2):
        if set(e) & set(f):
            continue
        h = _segment_hit(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]])
        if h is not None:
            hits.append((e, f, h))
    along: dict[tuple[int, int], list] = {e: [] for e in edges}
    for k, (e, f, (t, u)) in enumerate(hits):
        along[e].append((t, k))
        along[f].append((u, k))
    for e, lst in along.items():
        ts = sorted(t for t, _ in lst)
        if any(a == b for a, b in zip(ts, ts[1:])):
            raise GraphError(f"three edges meet at one point on edge {e[0]}-{e[1]}")
    if over is None:
        over = [1] * len(hits)

    def angle(frm, to):
        return math.atan2(float(to[1] - frm[1]), float(to[0] - frm[0]))

    nodes = {v: vertex(len(adj)) for v, adj in enumerate(g.adjacency()) if adj}
    vslot = {}
    for v, adj in enumerate(g.adjacency()):
        for s, w in enumerate(sorted(adj, key=lambda w: angle(pts[v], pts[w]))):
            vslot[(v, w)] = s
    # slot at each crossing for the ray back towards (entry) and on towards (exit)
    entry: dict[tuple, int] = {}
    exit_: dict[tuple, int] = {}
    for k, (e, f, (t, _u)) in enumerate(hits):
        nid = g.n + k
        nodes[nid] = CLASSICAL
        x = (pts[e[0]][0] + t * (pts[e[1]][0] - pts[e[0]][0]), pts[e[0]][1] + t * (pts[e[1]][1] - pts[e[0]][1]))
        under, top = (f, e) if over[k] > 0 else (e, f)
        rays = [(under, "in", pts[under[0]]), (under, "out", pts[under[1]]),
                (top, "in", pts[top[0]]), (top, "out", pts[top[1]])]
        rays.sort(key=lambda r: angle(x, r[2]))
        start = next(i for i, r in enumerate(rays) if r[0] == under and r[1] == "in")
        for s in range(4):
            edge, which, _ = rays[(start + s) % 4]
            (entry if which == "in" else exit_)[(nid, edge)] = s
    arcs = {}
    aid = 0
    for e in edges:
        u, v = e
        tail = (u, vslot[(u, v)])
        for _, k in sorted(along[e]):
            nid = g.n + k
            arcs[aid] = Arc(tail, (nid, entry[(nid, e)]))
            aid += 1
            tail = (nid, exit_[(nid, e)])
        arcs[aid] = Arc(tail, (v, vslot[(v, u)]))
        aid += 1
    return Diagram(nodes, arcs)


def _on_segment(p, q, r) -> bool:
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if cross != 0:
        return False
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def _convex_positions(n: int, salt: int):
    # rational points near a circle; the small deterministic wobble keeps
    # diagonals of a regular polygon from meeting three at a time
    pts = []
    for k in range(n):
        theta = 2 * math.pi * k / n + 0.05 * math.sin(1.3 * k + 0.7 * salt + 0.4)
        pts.append((Fraction(round(10000 * math.cos(theta))), Fraction(round(10000 * math.sin(theta)))))
    return pts


def convex_diagram(
    g: Graph,
    order: Sequence[int] | None = None,
    over: Sequence[int] | Mapping[int, int] | None = None,
) -> Diagram:
    """Vertices in convex position in ``order`` and edges as straight chords.

    Crossings are exactly the interleaved chord pairs; see
    :func:`straight_line_diagram` for numbering and the meaning of ``over``.
    """
    order = list(range(g.n)) if order is None else list(order)
    if sorted(order) != list(range(g.n)):
        raise GraphError("order must be a permutation of the vertices")
    for salt in range(16):
        ring = _convex_positions(g.n, salt)
        positions = {v: ring[k] for k, v in enumerate(order)}
        try:
            return straight_line_diagram(g, positions, over)
        except GraphError:
            continue
    raise GraphError("could not place vertices in general position")
