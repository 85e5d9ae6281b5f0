"""The fifteen acceptance criteria, each at its stated tolerance and time limit.

Every test records one ``AC-k PASS|FAIL`` line, shown in the terminal
summary (and on stdout with ``-s``).
"""

import random
import time

import pytest

from virtgraph import builders as B
from virtgraph.diagram import components, crossing_change, virtualize
from virtgraph.graphs import (
    complete,
    convex_diagram,
    dy_closure,
    girth,
    hamiltonian_cycles,
    triangles,
)
from virtgraph.intrinsic import cg_sweep, ivl_sweep, knot_arf_sum
from virtgraph.invariants import bracket, jones, npq, reconstruct, skein_variants, unlink_jones, verify_skein, vu_bounds
from virtgraph.laurent import LOOP, ONE, from_A_power
from virtgraph.moves import Triviality, simplify, triviality_certificate


@pytest.fixture
def check(acceptance_line):
    def run(k, title, limit, body):
        t0 = time.perf_counter()
        ok, detail = body()
        elapsed = time.perf_counter() - t0
        in_time = limit is None or elapsed < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        budget = f" (limit {limit:g} s)" if limit else ""
        late = "" if in_time else " over time"
        acceptance_line(f"AC-{k} {verdict}: {title}; {detail}; {elapsed:.2f} s{budget}{late}")
        assert ok, detail
        assert in_time, f"took {elapsed:.1f} s, limit {limit} s"

    return run


def _classical_suite(seed, count, max_crossings, knot=False):
    rng = random.Random(seed)
    return [B.random_braid_closure(rng, max_crossings, knot=knot) for _ in range(count)]


def _marked_suite():
    """50 knot diagrams with a positive marked crossing and 0-3 virtual crossings elsewhere."""
    rng = random.Random(404)
    out = []
    while len(out) < 50:
        n_virtual = len(out) % 4
        strands = rng.randint(2, 4)
        word = []
        for _ in range(rng.randint(1, 6)):
            i = rng.randint(1, strands - 1)
            word.append(i if rng.random() < 0.5 else -i)
        for _ in range(n_virtual):
            word.insert(rng.randint(0, len(word)), f"v{rng.randint(1, strands - 1)}")
        if not B._single_cycle(word, strands):
            continue
        d = B.braid_closure(word, strands)
        c = rng.choice(d.classical_crossings())
        dec = npq(d, c)
        out.append((d, c, dec))
    return out


_SUITE3 = None


def _suite3():
    global _SUITE3
    if _SUITE3 is None:
        _SUITE3 = _marked_suite()
    return _SUITE3


def test_ac01_bracket_fixtures(check):
    def body():
        A = from_A_power
        cases = {
            "U+": (bracket(B.u_plus()), -A(3)),
            "U-": (bracket(B.u_minus()), -A(-3)),
            "U*": (bracket(B.u_star()), ONE),
            "H+": (bracket(B.h_plus()), A(1) + A(-1)),
            "H-": (bracket(B.h_minus()), A(1) + A(-1)),
        }
        for n in range(1, 6):
            cases[f"U_{n}"] = (bracket(B.unlink(n)), LOOP ** (n - 1))
        bad = [k for k, (got, want) in cases.items() if got != want]
        return not bad, f"{len(cases) - len(bad)}/{len(cases)} exact" + (f", wrong: {bad}" if bad else "")

    check(1, "bracket fixtures", 1, body)


def test_ac02_skein_suite(check):
    def body():
        checked = failures = 0
        for d in _classical_suite(2, 100, 6):
            for c in d.classical_crossings():
                report = verify_skein(d, c)
                checked += len(report)
                failures += sum(not ok for ok in report.values())
        return failures == 0, f"{checked} identity checks on 100 diagrams, {failures} failures"

    check(2, "five single-virtual skein relations plus the classical one", 60, body)


def test_ac03_npq_reconstruction(check):
    def body():
        bad = nonzero_n = 0
        for d, c, dec in _suite3():
            v = skein_variants(d, c)
            if reconstruct(dec) != (jones(v.plus), jones(v.star), jones(v.minus)):
                bad += 1
            if not d.virtual_crossings() and dec.n != 0:
                nonzero_n += 1
        mix = sorted({len(d.virtual_crossings()) for d, _, _ in _suite3()})
        return bad == 0 and nonzero_n == 0, (
            f"50 diagrams (virtual counts {mix}), {bad} reconstruction failures, "
            f"{nonzero_n} classical cases with n != 0"
        )

    check(3, "n, p, q reconstruct V(K+), V(K*), V(K-)", 120, body)


def test_ac04_integer_power_lemma(check):
    def body():
        classical = [(d, dec) for d, _, dec in _suite3() if not d.virtual_crossings()]
        violations = sum(
            not (dec.p.has_integer_t_powers() and dec.q.has_integer_t_powers()) for _, dec in classical
        )
        return violations == 0 and classical, f"{len(classical)} classical knot diagrams, {violations} violations"

    check(4, "p and q have integer t-powers on classical knots", None, body)


def _knot_fixtures():
    out = {"trefoil": B.trefoil(), "figure-eight": B.figure_eight()}
    for n in range(6):
        out[f"K_{n}"] = B.twist_knot(n)
    return out


def test_ac05_virtualization_is_non_classical(check):
    def body():
        considered = violations = 0
        for name, d in _knot_fixtures().items():
            for c in d.classical_crossings():
                if jones(d) == jones(crossing_change(d, c)):
                    continue
                considered += 1
                if jones(virtualize(d, c)).has_integer_t_powers():
                    violations += 1
        return violations == 0 and considered > 0, f"{considered} crossings with V(K+) != V(K-), {violations} violations"

    check(5, "virtualizing a Jones-changing crossing gives a non-classical knot", None, body)


def test_ac06_no_single_virtualization_unknots(check):
    def body():
        cases = violations = 0
        for d in (B.trefoil(), B.figure_eight()):
            for c in d.classical_crossings():
                cases += 1
                if jones(virtualize(d, c)) == ONE:
                    violations += 1
        return violations == 0, f"{cases} single virtualizations, {violations} with Jones 1"

    check(6, "trefoil and figure-eight are not one virtualization from Jones 1", 1, body)


def test_ac07_twist_knots(check):
    def body():
        rows = []
        ok = True
        for n in range(6):
            d = B.twist_knot(n)
            b = vu_bounds(d, 2)
            good = jones(d) != ONE and (b.lower, b.upper) == (2, 2) and set(b.witness) == {0, 1}
            ok &= good
            rows.append(f"K_{n}:{b.lower}/{b.upper}/{b.upper_certificate.value if b.upper_certificate else None}")
        return ok, " ".join(rows)

    check(7, "twist knots K_0..K_5 have vu bounds 2/2 via the clasp", 60, body)


def test_ac08_conway_gordon_sweep(check):
    def body():
        report = cg_sweep(complete(6))
        return report.passed and report.parameters["assignments"] == 2**15, (
            f"{report.parameters['assignments']} assignments, {len(report.counterexamples)} with residue != 1"
        )

    check(8, "Conway-Gordon residue 1 on every crossing choice of convex K6", 60, body)


def _ivl(n):
    g = complete(6)
    report = ivl_sweep(convex_diagram(g), g, n, sweep_signs=True)
    sizes = report.parameters["cases_by_size"]
    return report.passed, (
        f"cases by subset size {sizes}, {len(report.counterexamples)} without a non-trivial link"
    ), sizes


def test_ac09_one_virtual_crossing(check):
    def body():
        ok, detail, sizes = _ivl(1)
        return ok and sizes["1"] == 15 * 2**14, detail

    check(9, "convex K6 stays linked after any one virtualization", 120, body)


def test_ac10_two_virtual_crossings(check):
    def body():
        ok, detail, sizes = _ivl(2)
        return ok and sizes["2"] == 105 * 2**13, detail

    check(10, "convex K6 stays linked after any two virtualizations", 300, body)


def test_ac11_petersen_family(check):
    def body():
        members = dy_closure(complete(6))
        petersen_like = [
            m for m in members
            if m.graph.n == 10 and all(m.graph.degree(v) == 3 for v in range(10)) and girth(m.graph) == 5
        ]
        detail = f"{len(members)} classes (want 7), {len(petersen_like)} Petersen-like member(s)"
        if len(members) != 7:
            detail += f"; two-way closure gives {len(dy_closure(complete(6), inverse=True))}"
        return len(members) == 7 and len(petersen_like) == 1, detail

    check(11, "Delta-Y closure of K6", 60, body)


def test_ac12_k7_family(check):
    def body():
        members = dy_closure(complete(7))
        free = [m for m in members if not triangles(m.graph)]
        return len(members) == 14 and len(free) == 2, (
            f"{len(members)} classes, {len(free)} triangle-free (vertices {[m.graph.n for m in free]})"
        )

    check(12, "Delta-Y closure of K7", 300, body)


def test_ac13_k7_arf_sum(check):
    def body():
        g = complete(7)
        d = convex_diagram(g)
        total = knot_arf_sum(d, g)
        count = len(hamiltonian_cycles(g))
        return total == 1 and count == 360, f"Arf sum {total} over {count} Hamiltonian cycles"

    check(13, "convex K7 Hamiltonian Arf sum", 300, body)


def test_ac14_purely_virtual_is_trivial(check):
    def body():
        rng = random.Random(14)
        diagrams = [B.unlink(k) for k in range(1, 4)]
        for d in list(_knot_fixtures().values()) + [B.hopf(), B.h_plus()]:
            for x in d.classical_crossings():
                d = virtualize(d, x)
            diagrams.append(d)
        for _ in range(60):
            diagrams.append(B.random_virtual_diagram(rng, rng.randint(1, 8), virtual_prob=1.0))
        bad = 0
        for d in diagrams:
            if triviality_certificate(d) is not Triviality.TRIVIAL:
                bad += 1
            elif jones(d) != unlink_jones(len(components(d))):
                bad += 1
        return bad == 0, f"{len(diagrams)} diagrams without classical crossings, {bad} failures"

    check(14, "no classical crossings means certified trivial with unlink Jones", None, body)


def test_ac15_move_invariance(check):
    def body():
        rng = random.Random(15)
        fixtures = list(_knot_fixtures().values()) + [
            B.u_plus(), B.u_minus(), B.u_star(), B.hopf(), B.h_plus(), B.h_minus(), B.unlink(2)
        ]
        randoms = [B.random_braid_closure(rng, 8, virtual_prob=0.3) for _ in range(150)]
        randoms += [B.random_virtual_diagram(rng, rng.randint(1, 8)) for _ in range(50)]
        bad = sum(jones(simplify(d)) != jones(d) for d in fixtures + randoms)
        reduced = sum(len(simplify(d).nodes) < len(d.nodes) for d in randoms)
        return bad == 0, f"{len(fixtures)} fixtures + {len(randoms)} random, {reduced} actually reduced, {bad} mismatches"

    check(15, "Jones polynomial unchanged by simplify", 120, body)
