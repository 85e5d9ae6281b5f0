import random

from virtgraph import builders as B
from virtgraph.diagram import components, crossing_change, virtualize
from virtgraph.invariants import jones
from virtgraph.moves import MoveKind, Triviality, find_reductions, simplify, triviality_certificate


def test_curls_are_found():
    assert find_reductions(B.u_plus()) == [(MoveKind.R1, (0,))]
    assert find_reductions(B.u_star()) == [(MoveKind.VR1, (0,))]


def test_r2_needs_opposite_signs():
    bigon = B.braid_closure([1, -1])
    assert find_reductions(bigon)[0][0] is MoveKind.R2
    assert not any(kind is MoveKind.R2 for kind, _ in find_reductions(B.hopf()))


def test_vr2():
    d = B.braid_closure(["v1", "v1", 1])
    kinds = [kind for kind, _ in find_reductions(d)]
    assert MoveKind.VR2 in kinds


def test_simplify_fixtures():
    assert simplify(B.u_plus()).nodes == {}
    assert len(simplify(B.braid_closure([1, -1, 2, -2], 3)).nodes) == 0
    assert len(simplify(B.trefoil()).classical_crossings()) == 3


def test_certificates():
    assert triviality_certificate(B.u_minus()) is Triviality.TRIVIAL
    assert triviality_certificate(B.trefoil()) is Triviality.UNKNOWN
    # a single classical crossing on one component is always unknotted
    assert triviality_certificate(virtualize(virtualize(B.trefoil(), 0), 1)) is Triviality.TRIVIAL
    # but the same on a two-component link is not claimed
    assert triviality_certificate(B.h_plus()) is Triviality.UNKNOWN


def test_simplify_never_adds_crossings_and_keeps_components():
    rng = random.Random(5)
    for _ in range(50):
        d = B.random_braid_closure(rng, 8, virtual_prob=0.3)
        s = simplify(d)
        assert len(s.nodes) <= len(d.nodes)
        assert len(components(s)) == len(components(d))


def test_clasp_virtualization_trivializes_twist_knots():
    for n in range(4):
        d = B.twist_knot(n)
        v = virtualize(virtualize(d, 0), 1)
        assert triviality_certificate(v) is Triviality.TRIVIAL
        assert jones(v) == jones(B.unknot())


def test_crossing_change_then_r2():
    d = crossing_change(B.braid_closure([1, 1]), 0)
    assert simplify(d).classical_crossings() == []
