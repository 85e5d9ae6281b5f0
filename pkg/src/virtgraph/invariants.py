"""Bracket and Jones state sums, linking numbers, Arf, the r/s/z and n/p/q
decompositions of a marked crossing, skein checks and virtual unknotting bounds.

The bracket is a sum over all ``2^c`` smoothing states of the classical
crossings.  Loops in a state are the cycles of the union of two perfect
matchings on crossing ports (the strands and the smoothing), counted for
a whole block of states at once with numpy pointer jumping.  Coefficients
are exact: per-state data are histogrammed into integer counts and only
then combined with arbitrary-precision polynomial arithmetic.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .diagram import (
    Diagram,
    HalfInt,
    Kind,
    components,
    crossing_change,
    crossing_sign,
    linking_number,
    smooth,
    through,
    virtualize,
    writhe,
)
from .errors import (
    DiagramError,
    HasVirtualCrossings,
    NotALinkDiagram,
    NotClassical,
    NotPlusMinusOne,
    TooManyCrossings,
)
from .laurent import LOOP, ONE, LaurentPoly, from_A_power, from_t_power
from .moves import Triviality, triviality_certificate

__all__ = [
    "DEFAULT_STATE_SUM_CAP",
    "bracket",
    "f_poly",
    "jones",
    "linking_number",
    "unlink_jones",
    "arf_from_jones",
    "StateDecomposition",
    "JonesDecomposition",
    "state_decomposition",
    "npq",
    "skein_variants",
    "verify_skein",
    "VuCertificate",
    "VuBounds",
    "vu_bounds",
]

DEFAULT_STATE_SUM_CAP = 26
_CHUNK = 1 << 14


def _cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("VIRTGRAPH_STATE_SUM_CAP")
    return int(env) if env else DEFAULT_STATE_SUM_CAP


# ---------------------------------------------------------------- strand system


@dataclass
class _Strands:
    crossings: list[int]
    partner: np.ndarray  # port k*4+s -> matched port index
    bare_loops: int  # components that meet no classical crossing


def _strands(d: Diagram) -> _Strands:
    if not d.is_link_diagram():
        raise NotALinkDiagram("state sums need a link diagram (all vertices of degree 2)")
    crossings = d.classical_crossings()
    index = {x: k for k, x in enumerate(crossings)}
    partner = np.empty(4 * len(crossings), dtype=np.int64)
    used_arcs: set[int] = set()
    for x in crossings:
        for s in range(4):
            port = (x, s)
            aid, _ = d.ports[port]
            used_arcs.add(aid)
            nid, slot = d.other_end(port)
            while d.nodes[nid].kind is not Kind.CLASSICAL:
                nxt = (nid, through(d.nodes[nid], slot))
                aid, _ = d.ports[nxt]
                used_arcs.add(aid)
                nid, slot = d.other_end(nxt)
            partner[4 * index[x] + s] = 4 * index[nid] + slot
    bare = 0
    rest = {a for a in d.arcs if a not in used_arcs}
    if rest:
        for comp in components(d):
            if comp[0] in rest:
                bare += 1
    return _Strands(crossings, partner, bare)


# smoothing partner of slot s inside one crossing
_SMOOTH_A = np.array([1, 0, 3, 2])
_SMOOTH_B = np.array([3, 2, 1, 0])


def _loops(partner: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """Loop count of each state row (bit 1 = B-smoothing)."""
    nstates, c = bits.shape
    n = 4 * c
    base = np.repeat(np.arange(c) * 4, 4)
    a_part = base + np.tile(_SMOOTH_A, c)
    b_part = base + np.tile(_SMOOTH_B, c)
    chooser = np.repeat(bits, 4, axis=1)
    smooth_partner = np.where(chooser, b_part, a_part)
    perm = partner[smooth_partner]
    label = np.broadcast_to(np.arange(n), (nstates, n)).copy()
    step = perm
    reach = 1
    while reach < n:
        label = np.minimum(label, np.take_along_axis(label, step, axis=1))
        step = np.take_along_axis(step, step, axis=1)
        reach *= 2
    label = np.minimum(label, np.take_along_axis(label, step, axis=1))
    cycles = (label == np.arange(n)).sum(axis=1)
    return cycles // 2


def _bits(c: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    return ((idx[:, None] >> np.arange(c, dtype=np.int64)) & 1).astype(bool)


def _loop_powers(maxk: int) -> list[LaurentPoly]:
    out = [ONE]
    for _ in range(maxk):
        out.append(out[-1] * LOOP)
    return out


def _check_cap(c: int, cap: int | None) -> None:
    limit = _cap(cap)
    if c > limit:
        raise TooManyCrossings(
            f"{c} classical crossings exceeds the state-sum cap of {limit}"
        )


def bracket(d: Diagram, cap: int | None = None) -> LaurentPoly:
    """Bracket polynomial of a (virtual) link diagram, normalised so a lone loop is 1."""
    st = _strands(d)
    c = len(st.crossings)
    _check_cap(c, cap)
    if c == 0:
        if st.bare_loops == 0:
            raise DiagramError("empty diagram has no bracket")
        return LOOP ** (st.bare_loops - 1)
    width = 4 * c + 2
    hist = np.zeros((c + 1) * width, dtype=np.int64)
    total = 1 << c
    for start in range(0, total, _CHUNK):
        bits = _bits(c, start, min(total, start + _CHUNK))
        loops = _loops(st.partner, bits)
        a_count = c - bits.sum(axis=1)
        hist += np.bincount(a_count * width + loops, minlength=hist.size)
    powers = _loop_powers(2 * c + st.bare_loops)
    result = LaurentPoly()
    for key in np.nonzero(hist)[0]:
        a, loops = divmod(int(key), width)
        term = from_A_power(2 * a - c, int(hist[key]))
        result = result + term * powers[loops + st.bare_loops - 1]
    return result


def _writhe_factor(w: int) -> LaurentPoly:
    # (-A^3)^(-w)
    return from_A_power(-3 * w, -1 if w % 2 else 1)


def f_poly(d: Diagram, cap: int | None = None) -> LaurentPoly:
    """``(-A^3)^(-w) <d>``; the same value as :func:`jones` since A = t^(-1/4)."""
    return _writhe_factor(writhe(d)) * bracket(d, cap)


def jones(d: Diagram, cap: int | None = None) -> LaurentPoly:
    return f_poly(d, cap)


def unlink_jones(n: int) -> LaurentPoly:
    """Jones polynomial of the n-component unlink, ``(-t^(1/2) - t^(-1/2))^(n-1)``."""
    return LOOP ** (n - 1)


def arf_from_jones(d: Diagram, cap: int | None = None) -> int:
    """Arf invariant of a classical knot from ``V(sqrt(-1)) = (-1)^Arf``."""
    value = jones(d, cap).eval_at_i()
    if (value.re, value.im) == (1, 0):
        return 0
    if (value.re, value.im) == (-1, 0):
        return 1
    raise NotPlusMinusOne(f"V(i) = {value.re} + {value.im}i is not +-1")


# ---------------------------------------------------------------- marked crossing


@dataclass(frozen=True)
class StateDecomposition:
    """``<K_+> = (A + A^-1) r - A^3 s - A^-3 z`` for the positive version K_+."""

    r: LaurentPoly
    s: LaurentPoly
    z: LaurentPoly
    k_plus: Diagram = field(repr=False, compare=False)


@dataclass(frozen=True)
class JonesDecomposition:
    r: LaurentPoly
    s: LaurentPoly
    z: LaurentPoly
    n: LaurentPoly
    p: LaurentPoly
    q: LaurentPoly
    w: int


def _positive_version(d: Diagram, c: int) -> Diagram:
    if d.nodes.get(c) is None or d.nodes[c].kind is not Kind.CLASSICAL:
        raise NotClassical(f"node {c} is not a classical crossing")
    return d if crossing_sign(d, c) > 0 else crossing_change(d, c)


def state_decomposition(d: Diagram, c: int, cap: int | None = None) -> StateDecomposition:
    """Resolve every classical crossing except ``c`` and sort the states.

    A state whose two smoothings of ``c`` give equal loop counts feeds ``r``
    (the marked crossing closes up as H_+); one more loop on the A side feeds
    ``s`` (U_+); one more on the B side feeds ``z`` (U_-).  A negative marked
    crossing is changed first, so the result always describes K_+.
    """
    kp = _positive_version(d, c)
    st = _strands(kp)
    ncross = len(st.crossings)
    _check_cap(ncross, cap)
    k = st.crossings.index(c)
    others = ncross - 1
    width = 4 * ncross + 2
    hist = np.zeros(3 * (others + 1) * width, dtype=np.int64)
    total = 1 << others
    for start in range(0, total, _CHUNK):
        ob = _bits(others, start, min(total, start + _CHUNK)) if others else np.zeros((1, 0), bool)
        rows = ob.shape[0]
        with_a = np.insert(ob, k, False, axis=1)
        with_b = np.insert(ob, k, True, axis=1)
        la = _loops(st.partner, with_a)
        lb = _loops(st.partner, with_b)
        cls = np.where(la == lb, 0, np.where(la == lb + 1, 1, 2))
        if np.any(np.abs(la - lb) > 1):
            raise DiagramError("smoothing one crossing changed the loop count by more than one")
        a_count = others - ob.sum(axis=1) if others else np.zeros(rows, dtype=np.int64)
        key = (cls * (others + 1) + a_count) * width + np.minimum(la, lb)
        hist += np.bincount(key, minlength=hist.size)
    powers = _loop_powers(2 * ncross + st.bare_loops)
    parts = [LaurentPoly(), LaurentPoly(), LaurentPoly()]
    for key in np.nonzero(hist)[0]:
        rest, loops = divmod(int(key), width)
        cls, a = divmod(rest, others + 1)
        term = from_A_power(2 * a - others, int(hist[key]))
        parts[cls] = parts[cls] + term * powers[loops + st.bare_loops - 1]
    return StateDecomposition(parts[0], parts[1], parts[2], kp)


def _signed_A(k: int) -> LaurentPoly:
    # (-A)^k, equal to (-t^(-1/4))^k
    return from_A_power(k, -1 if k % 2 else 1)


def npq(d: Diagram, c: int, cap: int | None = None) -> JonesDecomposition:
    """n, p, q with V_{K+} = (1 + t^(1/2)) n + p + q and its two companions."""
    dec = state_decomposition(d, c, cap)
    w = writhe(dec.k_plus)
    n = -(_signed_A(-3 * w + 1) * dec.r)
    p = _signed_A(-3 * w + 3) * dec.s
    q = _signed_A(-3 * w - 3) * dec.z
    return JonesDecomposition(dec.r, dec.s, dec.z, n, p, q, w)


def reconstruct(dec: JonesDecomposition) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """``(V_{K+}, V_{K*}, V_{K-})`` rebuilt from n, p, q."""
    t = from_t_power
    v_plus = (ONE + t(2)) * dec.n + dec.p + dec.q
    v_star = (t(-4) + ONE) * dec.n + dec.p + t(-6) * dec.q
    v_minus = (t(-6) + t(-4)) * dec.n + dec.p + t(-12) * dec.q
    return v_plus, v_star, v_minus


@dataclass(frozen=True)
class SkeinVariants:
    plus: Diagram
    minus: Diagram
    star: Diagram
    zero: Diagram


def skein_variants(d: Diagram, c: int) -> SkeinVariants:
    kp = _positive_version(d, c)
    return SkeinVariants(
        plus=kp,
        minus=crossing_change(kp, c),
        star=virtualize(kp, c),
        zero=smooth(kp, c, "oriented"),
    )


SKEIN_IDENTITIES = (
    "plus_from_star_minus",
    "minus_from_star_plus",
    "star_from_plus_minus",
    "plus_star_zero",
    "star_minus_zero",
    "classical_skein",
)


def verify_skein(d: Diagram, c: int, cap: int | None = None) -> dict[str, bool]:
    """Check the five single-virtual-crossing skein relations and the classical one.

    The quotient form for V_{K*} is checked after clearing its denominator.
    """
    if d.virtual_crossings():
        raise HasVirtualCrossings("skein relations need an all-classical diagram")
    var = skein_variants(d, c)
    vp, vm, vs, v0 = (jones(x, cap) for x in (var.plus, var.minus, var.star, var.zero))
    t = from_t_power
    t32 = t(6)
    tm32 = t(-6)
    delta = t(2) - t(-2)
    return {
        "plus_from_star_minus": vp == (t32 + 1) * vs - t32 * vm,
        "minus_from_star_plus": vm == (tm32 + 1) * vs - tm32 * vp,
        "star_from_plus_minus": (t32 + 1) * vs == vp + t32 * vm,
        "plus_star_zero": (t(-4) + t(-2)) * vp - (t(4) + t(-2)) * vs == delta * v0,
        "star_minus_zero": (t(-4) + t(2)) * vs - (t(4) + t(2)) * vm == delta * v0,
        "classical_skein": t(-4) * vp - t(4) * vm == delta * v0,
    }


# ---------------------------------------------------------------- unknotting


class VuCertificate(str, Enum):
    REDUCED_TO_TRIVIAL = "ReducedToTrivial"
    JONES_TRIVIAL_ONLY = "JonesTrivialOnly"


@dataclass(frozen=True)
class VuBounds:
    lower: int
    upper: int | None
    upper_certificate: VuCertificate | None
    witness: tuple[int, ...] | None

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "certificate": self.upper_certificate.value if self.upper_certificate else None,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def vu_bounds(d: Diagram, budget: int, cap: int | None = None) -> VuBounds:
    """Bounds on the virtual unknotting number of a knot diagram.

    The lower bound is 0 for a certified-trivial diagram, 1 once the Jones
    polynomial is non-trivial and 2 when, in addition, the diagram is
    classical (a classical knot with one-crossing virtual unknotting number
    has trivial Jones polynomial).  The upper bound is the least subset size
    whose virtualization is certified trivial; failing that, the least size
    reaching Jones polynomial 1, flagged as the weaker certificate.  If
    nothing is found within ``budget`` the upper bound is ``None``.
    """
    if len(components(d)) != 1:
        raise NotALinkDiagram("virtual unknotting bounds need a one-component diagram")
    if triviality_certificate(d) is Triviality.TRIVIAL:
        return VuBounds(0, 0, VuCertificate.REDUCED_TO_TRIVIAL, ())
    v = jones(d, cap)
    lower = 0
    if v != ONE:
        lower = 2 if not d.virtual_crossings() else 1
    classical = d.classical_crossings()
    for k in range(0, min(budget, len(classical)) + 1):
        jones_witness = None
        for subset in itertools.combinations(classical, k):
            e = d
            for x in subset:
                e = virtualize(e, x)
            if triviality_certificate(e) is Triviality.TRIVIAL:
                return VuBounds(lower, k, VuCertificate.REDUCED_TO_TRIVIAL, subset)
            if jones_witness is None and jones(e, cap) == ONE:
                jones_witness = subset
        if jones_witness is not None:
            return VuBounds(lower, k, VuCertificate.JONES_TRIVIAL_ONLY, jones_witness)
    return VuBounds(lower, None, None, None)


def half_linking(d: Diagram, i: int, j: int) -> HalfInt:
    return linking_number(d, i, j)
