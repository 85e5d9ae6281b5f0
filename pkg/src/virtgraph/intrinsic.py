"""Certificates of linked or knotted cycles in graph diagrams, and exhaustive
sweeps over the virtualizations and crossing choices of one fixed diagram.

A sweep case is a diagram derived from the input by virtualizing a subset
of classical crossings and changing another subset.  The linking half-counts
of every cycle pair are linear in that choice, so sweeps tabulate each
pair's base crossing signs once and score whole blocks of cases with a
matrix product; only cases where every pair has linking number zero fall
back to Jones polynomials.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .diagram import (
    Diagram,
    component_of_arc,
    crossing_change,
    crossing_sign,
    edge_paths,
    extract_cycle_link,
    linking_number,
    virtualize,
)
from .errors import DiagramGraphMismatch, HasVirtualCrossings, SweepTooLarge, TooManyCrossings
from .graphs import Graph, all_cycles, convex_diagram, disjoint_cycle_pairs, hamiltonian_cycles
from .invariants import _cap, arf_from_jones, jones, unlink_jones
from .laurent import ONE
from .moves import Triviality, simplify, triviality_certificate

__all__ = [
    "Verdict",
    "Evidence",
    "Certificate",
    "SweepReport",
    "DEFAULT_SWEEP_CAP",
    "has_nontrivial_link",
    "conway_gordon_sum",
    "cg_sweep",
    "ivl_sweep",
    "has_knotted_cycle",
    "knot_arf_sum",
    "ivk_sweep",
]

DEFAULT_SWEEP_CAP = 1 << 26
REPORT_LIMIT = 100
_BLOCK = 1 << 13


def _sweep_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("VIRTGRAPH_SWEEP_CAP")
    return int(env) if env else DEFAULT_SWEEP_CAP


class Verdict(str, Enum):
    NONTRIVIAL = "Nontrivial"
    TRIVIAL = "Trivial"
    UNKNOWN = "Unknown"


class Evidence(str, Enum):
    HALF_INTEGER_LK = "HalfIntegerLk"
    NONZERO_LK = "NonzeroLk"
    JONES_DISTINCT = "JonesDistinct"
    PURELY_VIRTUAL = "PurelyVirtual"
    REDUCED = "Reduced"
    NONE = "None"


_NONTRIVIAL_EVIDENCE = {Evidence.HALF_INTEGER_LK, Evidence.NONZERO_LK, Evidence.JONES_DISTINCT}
_TRIVIAL_EVIDENCE = {Evidence.PURELY_VIRTUAL, Evidence.REDUCED}


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    evidence: Evidence
    witness: tuple = ()
    detail: str = ""
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict is Verdict.NONTRIVIAL and self.evidence not in _NONTRIVIAL_EVIDENCE:
            raise ValueError(f"Nontrivial certificate cannot rest on {self.evidence.value}")
        if self.verdict is Verdict.TRIVIAL and self.evidence not in _TRIVIAL_EVIDENCE:
            raise ValueError(f"Trivial certificate cannot rest on {self.evidence.value}")

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "evidence": self.evidence.value,
            "witness": [list(c) for c in self.witness],
            "detail": self.detail,
            "flags": list(self.flags),
        }


@dataclass
class SweepReport:
    parameters: dict
    counterexamples: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def verdict(self) -> str:
        return "pass" if not self.counterexamples else "fail"

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self, limit: int | None = REPORT_LIMIT) -> dict:
        """JSON-ready form.  Wall-clock time is left out so output is reproducible."""
        shown = self.counterexamples if limit is None else self.counterexamples[:limit]
        out = dict(self.parameters)
        out.update(
            verdict=self.verdict,
            counterexample_count=len(self.counterexamples),
            counterexamples=shown,
        )
        return out


def _check_graph(d: Diagram, g: Graph) -> dict:
    paths = edge_paths(d)
    if set(paths) != set(g.edges):
        missing = sorted(set(g.edges) - set(paths))
        extra = sorted(set(paths) - set(g.edges))
        raise DiagramGraphMismatch(f"diagram edges differ from graph (missing {missing}, extra {extra})")
    return paths


# ---------------------------------------------------------------- links


def has_nontrivial_link(d: Diagram, g: Graph, cap: int | None = None) -> Certificate:
    """Look for a pair of disjoint cycles forming a non-trivial link.

    Evidence is tried in order of cost across all pairs: an odd number of
    half-twists (half-integer linking number), a non-zero linking number,
    then a Jones polynomial different from the two-component unlink.
    """
    paths = _check_graph(d, g)
    pairs = disjoint_cycle_pairs(g)
    if not pairs:
        return Certificate(Verdict.UNKNOWN, Evidence.NONE, flags=("no cycle pairs",))
    links = [(p, extract_cycle_link(d, [p.c1, p.c2], paths)) for p in pairs]
    halves = [linking_number(link, 0, 1).halves for _, link in links]
    for (p, _), h in zip(links, halves):
        if h % 2:
            return Certificate(Verdict.NONTRIVIAL, Evidence.HALF_INTEGER_LK, (p.c1, p.c2), f"halves={h}")
    for (p, _), h in zip(links, halves):
        if h:
            return Certificate(Verdict.NONTRIVIAL, Evidence.NONZERO_LK, (p.c1, p.c2), f"halves={h}")
    unlink = unlink_jones(2)
    limit = _cap(cap)
    skipped = 0
    reduced = []
    for p, link in links:
        small = simplify(link)
        if not small.classical_crossings():
            reduced.append(not link.classical_crossings())
            continue
        if len(small.classical_crossings()) > limit:
            skipped += 1
            continue
        v = jones(small, cap)
        if v != unlink:
            return Certificate(Verdict.NONTRIVIAL, Evidence.JONES_DISTINCT, (p.c1, p.c2), f"jones={v}")
    flags = (f"{skipped} pairs over the crossing cap",) if skipped else ()
    if len(reduced) == len(links):
        evidence = Evidence.PURELY_VIRTUAL if all(reduced) else Evidence.REDUCED
        return Certificate(Verdict.TRIVIAL, evidence, flags=flags)
    return Certificate(Verdict.UNKNOWN, Evidence.NONE, flags=flags)


@dataclass
class _LinkTable:
    """Base linking contributions: ``halves[p] = sum_x table[p, x] * f[x]``
    where ``f[x]`` is 1 (kept), -1 (changed) or 0 (virtualized)."""

    crossings: list[int]
    table: np.ndarray


def _link_table(d: Diagram, g: Graph) -> _LinkTable:
    paths = _check_graph(d, g)
    crossings = d.classical_crossings()
    index = {x: k for k, x in enumerate(crossings)}
    pairs = disjoint_cycle_pairs(g)
    table = np.zeros((len(pairs), len(crossings)), dtype=np.int64)
    for row, p in enumerate(pairs):
        link = extract_cycle_link(d, [p.c1, p.c2], paths)
        comp = component_of_arc(link)
        for x in link.classical_crossings():
            if comp[link.ports[(x, 0)][0]] != comp[link.ports[(x, 1)][0]]:
                table[row, index[x]] = crossing_sign(link, x)
    return _LinkTable(crossings, table)


def _variant(d: Diagram, virtual, flipped) -> Diagram:
    for x in flipped:
        d = crossing_change(d, x)
    for x in virtual:
        d = virtualize(d, x)
    return d


def conway_gordon_sum(d: Diagram, g: Graph) -> int:
    """Sum of linking numbers over all disjoint cycle pairs, mod 2."""
    if d.virtual_crossings():
        raise HasVirtualCrossings("the Conway-Gordon sum is only defined for classical diagrams")
    lt = _link_table(d, g)
    return int(lt.table.sum() // 2 % 2)


def _assignment_block(c: int, start: int, stop: int) -> np.ndarray:
    """Rows of +-1: bit k of the row index set means crossing k is changed."""
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(c, dtype=np.int64)) & 1
    return 1 - 2 * bits


def cg_sweep(
    g: Graph,
    order=None,
    expected: int = 1,
    diagram: Diagram | None = None,
    sweep_cap: int | None = None,
) -> SweepReport:
    """Check the Conway-Gordon residue on every over/under choice of one projection.

    The projection is the convex drawing of ``g`` in ``order`` unless a
    classical ``diagram`` is given.  A counterexample lists the crossings
    changed relative to that diagram.
    """
    t0 = time.perf_counter()
    d = diagram if diagram is not None else convex_diagram(g, order)
    if d.virtual_crossings():
        raise HasVirtualCrossings("cg_sweep needs a classical diagram")
    lt = _link_table(d, g)
    c = len(lt.crossings)
    if c > 30:
        raise TooManyCrossings(f"{c} crossings exceeds the sweep limit of 30")
    total = 1 << c
    if total > _sweep_cap(sweep_cap):
        raise SweepTooLarge(f"{total} assignments exceeds the sweep cap of {_sweep_cap(sweep_cap)}")
    bad = []
    for start in range(0, total, _BLOCK):
        f = _assignment_block(c, start, min(total, start + _BLOCK))
        residue = (f @ lt.table.T).sum(axis=1) // 2 % 2
        for row in np.nonzero(residue != expected)[0]:
            flips = [lt.crossings[k] for k in range(c) if f[row, k] < 0]
            bad.append({"changed": flips, "residue": int(residue[row])})
    params = {
        "graph": {"n": g.n, "m": g.m},
        "crossings": c,
        "assignments": total,
        "expected_residue": expected,
    }
    return SweepReport(params, bad, time.perf_counter() - t0)


# ---------------------------------------------------------------- virtualization sweeps


def _case_counts(c: int, n: int, sweep_signs: bool) -> dict[int, int]:
    out = {}
    for k in range(0, min(n, c) + 1):
        out[k] = math.comb(c, k) * ((1 << (c - k)) if sweep_signs else 1)
    return out


def _sweep_params(d, n, sweep_signs, counts) -> dict:
    return {
        "n": n,
        "crossings": len(d.classical_crossings()),
        "sweep_signs": sweep_signs,
        "cases_by_size": {str(k): v for k, v in counts.items()},
        "cases": sum(counts.values()),
        "restriction": "virtualizations and crossing changes of one fixed diagram",
    }


def _subsets(crossings, n):
    for k in range(0, min(n, len(crossings)) + 1):
        yield from itertools.combinations(range(len(crossings)), k)


def _ivl_chunk(args) -> list:
    d, g, table, crossings, subsets, sweep_signs, cap = args
    c = len(crossings)
    out = []
    for sub in subsets:
        rest = [k for k in range(c) if k not in sub]
        m = len(rest) if sweep_signs else 0
        for start in range(0, 1 << m, _BLOCK):
            block = _assignment_block(m, start, min(1 << m, start + _BLOCK))
            f = np.ones((block.shape[0], c), dtype=np.int64)
            f[:, list(sub)] = 0
            if m:
                f[:, rest] = block
            halves = f @ table.T
            quiet = np.nonzero(~(halves != 0).any(axis=1))[0] if table.size else np.arange(block.shape[0])
            for row in quiet:
                virt = [crossings[k] for k in sub]
                flips = [crossings[k] for k in range(c) if f[row, k] < 0]
                cert = has_nontrivial_link(_variant(d, virt, flips), g, cap)
                if cert.verdict is not Verdict.NONTRIVIAL:
                    out.append({"virtualized": virt, "changed": flips, "verdict": cert.verdict.value})
    return out


def _run_chunks(fn, jobs, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        results = [fn(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs))
    merged = [x for r in results for x in r]
    merged.sort(key=lambda ce: (len(ce["virtualized"]), ce["virtualized"], ce["changed"]))
    return merged


def _split(items: list, parts: int) -> list[list]:
    parts = max(1, min(parts, len(items)))
    size = -(-len(items) // parts)
    return [items[k : k + size] for k in range(0, len(items), size)]


def ivl_sweep(
    d: Diagram,
    g: Graph,
    n: int,
    sweep_signs: bool = False,
    workers: int = 1,
    cap: int | None = None,
    sweep_cap: int | None = None,
) -> SweepReport:
    """Virtualize every subset of at most ``n`` classical crossings (optionally
    also changing any of the rest) and require a non-trivial link each time.

    Virtual crossings already present in ``d`` are left alone.
    """
    t0 = time.perf_counter()
    lt = _link_table(d, g)
    counts = _case_counts(len(lt.crossings), n, sweep_signs)
    total = sum(counts.values())
    if total > _sweep_cap(sweep_cap):
        raise SweepTooLarge(f"{total} cases exceeds the sweep cap of {_sweep_cap(sweep_cap)}")
    subsets = list(_subsets(lt.crossings, n))
    jobs = [(d, g, lt.table, lt.crossings, chunk, sweep_signs, cap) for chunk in _split(subsets, max(workers, 1) * 4)]
    bad = _run_chunks(_ivl_chunk, jobs, workers)
    return SweepReport(_sweep_params(d, n, sweep_signs, counts), bad, time.perf_counter() - t0)


# ---------------------------------------------------------------- knots


def has_knotted_cycle(d: Diagram, g: Graph, cap: int | None = None) -> Certificate:
    """Look for a cycle whose knot diagram has Jones polynomial other than 1."""
    paths = _check_graph(d, g)
    cycles = all_cycles(g)
    if not cycles:
        return Certificate(Verdict.UNKNOWN, Evidence.NONE, flags=("no cycles",))
    limit = _cap(cap)
    all_virtual = True
    all_trivial = True
    skipped = 0
    for cyc in cycles:
        knot = extract_cycle_link(d, [cyc], paths)
        if knot.classical_crossings():
            all_virtual = False
        if triviality_certificate(knot) is Triviality.TRIVIAL:
            continue
        small = simplify(knot)
        if len(small.classical_crossings()) > limit:
            skipped += 1
            all_trivial = False
            continue
        v = jones(small, cap)
        if v != ONE:
            return Certificate(Verdict.NONTRIVIAL, Evidence.JONES_DISTINCT, (cyc,), f"jones={v}")
        all_trivial = False
    flags = (f"{skipped} cycles over the crossing cap",) if skipped else ()
    if all_virtual:
        return Certificate(Verdict.TRIVIAL, Evidence.PURELY_VIRTUAL, flags=flags)
    if all_trivial:
        return Certificate(Verdict.TRIVIAL, Evidence.REDUCED, flags=flags)
    return Certificate(Verdict.UNKNOWN, Evidence.NONE, flags=flags)


def _arf_chunk(args) -> list[int]:
    d, cycles, cap = args
    paths = edge_paths(d)
    return [arf_from_jones(simplify(extract_cycle_link(d, [c], paths)), cap) for c in cycles]


def knot_arf_sum(d: Diagram, g: Graph, workers: int = 1, cap: int | None = None) -> int:
    """Sum of Arf invariants of all Hamiltonian cycles, mod 2."""
    if d.virtual_crossings():
        raise HasVirtualCrossings("Arf invariants need a classical diagram")
    _check_graph(d, g)
    cycles = hamiltonian_cycles(g)
    jobs = [(d, chunk, cap) for chunk in _split(cycles, max(workers, 1) * 4)] if cycles else []
    if workers <= 1 or len(jobs) <= 1:
        arfs = [a for job in jobs for a in _arf_chunk(job)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            arfs = [a for r in pool.map(_arf_chunk, jobs) for a in r]
    return sum(arfs) % 2


def _ivk_chunk(args) -> list:
    d, g, crossings, subsets, sweep_signs, cap = args
    out = []
    for sub in subsets:
        virt = [crossings[k] for k in sub]
        rest = [x for x in crossings if x not in virt]
        choices = itertools.product((False, True), repeat=len(rest)) if sweep_signs else [()]
        for choice in choices:
            flips = [x for x, flip in zip(rest, choice) if flip]
            cert = has_knotted_cycle(_variant(d, virt, flips), g, cap)
            if cert.verdict is not Verdict.NONTRIVIAL:
                out.append({"virtualized": virt, "changed": flips, "verdict": cert.verdict.value})
    return out


def ivk_sweep(
    d: Diagram,
    g: Graph,
    n: int,
    sweep_signs: bool = False,
    workers: int = 1,
    cap: int | None = None,
    sweep_cap: int | None = None,
) -> SweepReport:
    """Virtualize every subset of at most ``n`` classical crossings and require a knotted cycle."""
    t0 = time.perf_counter()
    _check_graph(d, g)
    crossings = d.classical_crossings()
    counts = _case_counts(len(crossings), n, sweep_signs)
    total = sum(counts.values())
    if total > _sweep_cap(sweep_cap):
        raise SweepTooLarge(f"{total} cases exceeds the sweep cap of {_sweep_cap(sweep_cap)}")
    subsets = list(_subsets(crossings, n))
    jobs = [(d, g, crossings, chunk, sweep_signs, cap) for chunk in _split(subsets, max(workers, 1) * 4)]
    bad = _run_chunks(_ivk_chunk, jobs, workers)
    return SweepReport(_sweep_params(d, n, sweep_signs, counts), bad, time.perf_counter() - t0)
