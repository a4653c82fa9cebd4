"""Derived maps assembled from the generators.

Everything here is a plain diagram; the semantic contracts (copy copies
basis states, and_gate computes AND, gadgets are the stated diagonals) are
enforced by the test suite against the tensor oracle, all up to a single
nonzero scalar.

The n-ary AND is the triangle construction

    and(n) = inv . Z-spider(n,1,0) . (T x ... x T),   inv = Z_pi . T . Z_pi

where inv is the triangle's inverse [[1,-1],[0,1]]: each triangle sends
|0> to (1,0) and |1> to (1,1), the middle spider keeps the all-equal
components, and inv maps (1,0) back to |0> and (1,1) to |1>.  This yields
and(0) = the |1> state and and(1) = a plain wire.
"""

from __future__ import annotations

from collections.abc import Iterable

from .angles import PI, ZERO, PhaseAngle
from .diagram import (
    TRI_IN,
    TRI_NODE,
    TRI_OUT,
    Diagram,
    DiagramBuilder,
    x_node,
    x_spider,
    z_node,
    z_spider,
)


def copy_map(m: int) -> Diagram:
    """|b> -> |b>^(x m); m = 0 is the uniform delete effect."""
    if m < 0:
        raise ValueError("copy arity must be nonnegative")
    return z_spider(1, m, ZERO)


def xor_map() -> Diagram:
    """|a,b> -> |a xor b> up to scalar."""
    return x_spider(2, 1, ZERO)


def delete_map() -> Diagram:
    """|b> -> 1 for both basis states."""
    return z_spider(1, 0, ZERO)


def attach_and_core(b: DiagramBuilder, taps: list[int]) -> int:
    """Wire ``taps`` through triangles into the AND core; returns the node
    whose output is the AND result (the tail of the inverse chain)."""
    mid = b.add(z_node(ZERO))
    for tap in taps:
        tri = b.add(TRI_NODE)
        b.wire(tap, tri, pb=TRI_IN)
        b.wire(tri, mid, pa=TRI_OUT)
    # inverse chain: Z_pi, triangle, Z_pi
    za = b.add(z_node(PI))
    tri = b.add(TRI_NODE)
    zb = b.add(z_node(PI))
    b.wire(mid, za)
    b.wire(za, tri, pb=TRI_IN)
    b.wire(tri, zb, pa=TRI_OUT)
    return zb


def and_gate(n: int) -> Diagram:
    """n -> 1 map |x_1..x_n> -> |x_1 & ... & x_n>; and(0) is the |1> state."""
    if n < 0:
        raise ValueError("AND arity must be nonnegative")
    b = DiagramBuilder()
    ins = [b.boundary() for _ in range(n)]
    tail = attach_and_core(b, ins)
    out = b.boundary()
    b.wire(tail, out)
    return b.freeze(ins, [out])


def cnot_diagram(n_wires: int, target: int, controls: Iterable[int]) -> Diagram:
    """Controlled-X over ``n_wires``: flips the target wire when every
    control wire is 1.  No controls is a NOT; one control is the plain
    copy-spider/xor-spider CNOT; more controls AND the copied controls into
    the target's xor spider."""
    cset = sorted(set(controls))
    if not (1 <= target <= n_wires):
        raise ValueError(f"target {target} outside wires 1..{n_wires}")
    if any(c < 1 or c > n_wires for c in cset):
        raise ValueError("control outside the wire range")
    if target in cset:
        raise ValueError("target cannot also be a control")

    b = DiagramBuilder()
    ins, outs = [], []
    taps = {}
    feed = None
    for w in range(1, n_wires + 1):
        i, o = b.boundary(), b.boundary()
        ins.append(i)
        outs.append(o)
        if w == target:
            xs = b.add(x_node(PI if not cset else ZERO))
            b.wire(i, xs)
            b.wire(xs, o)
            feed = xs
        elif w in cset:
            zc = b.add(z_node(ZERO))
            b.wire(i, zc)
            b.wire(zc, o)
            taps[w] = zc
        else:
            b.wire(i, o)

    if len(cset) == 1:
        b.wire(taps[cset[0]], feed)
    elif len(cset) >= 2:
        tail = attach_and_core(b, [taps[c] for c in cset])
        b.wire(tail, feed)
    return b.freeze(ins, outs)


def _check_support(n_wires: int, support: Iterable[int]) -> list[int]:
    s = sorted(set(support))
    if not s:
        raise ValueError("support must be nonempty")
    if any(w < 1 or w > n_wires for w in s):
        raise ValueError(f"support {s} outside wires 1..{n_wires}")
    return s


def phase_gadget_diagram(
    n_wires: int, support: Iterable[int], angle: PhaseAngle
) -> Diagram:
    """Diagonal exp(i * angle * (x_{s1} xor ... xor x_{sk})).

    Each support wire is tapped by a copy spider; the taps meet an X spider
    whose last leg carries the phase on a leaf Z spider.
    """
    s = _check_support(n_wires, support)
    b = DiagramBuilder()
    ins, outs = [], []
    hub = b.add(x_node(ZERO))
    for w in range(1, n_wires + 1):
        i, o = b.boundary(), b.boundary()
        ins.append(i)
        outs.append(o)
        if w in s:
            zc = b.add(z_node(ZERO))
            b.wire(i, zc)
            b.wire(zc, o)
            b.wire(zc, hub)
        else:
            b.wire(i, o)
    leaf = b.add(z_node(angle))
    b.wire(hub, leaf)
    return b.freeze(ins, outs)


def and_phase_diagram(
    n_wires: int, support: Iterable[int], angle: PhaseAngle
) -> Diagram:
    """Diagonal exp(i * angle * (x_{s1} & ... & x_{sk})): the AND of the
    copied support wires, plugged with a phase effect."""
    s = _check_support(n_wires, support)
    b = DiagramBuilder()
    ins, outs = [], []
    taps = []
    for w in range(1, n_wires + 1):
        i, o = b.boundary(), b.boundary()
        ins.append(i)
        outs.append(o)
        if w in s:
            zc = b.add(z_node(ZERO))
            b.wire(i, zc)
            b.wire(zc, o)
            taps.append(zc)
        else:
            b.wire(i, o)
    tail = attach_and_core(b, taps)
    plug = b.add(z_node(angle))
    b.wire(tail, plug)
    return b.freeze(ins, outs)


_DERIVED = {
    "copy": copy_map,
    "xor": xor_map,
    "delete": delete_map,
    "and": and_gate,
    "cnot": cnot_diagram,
    "phase_gadget": phase_gadget_diagram,
    "and_phase": and_phase_diagram,
}


def make_derived(name: str, *args, **kwargs) -> Diagram:
    try:
        ctor = _DERIVED[name]
    except KeyError:
        raise ValueError(f"unknown derived map: {name!r}") from None
    return ctor(*args, **kwargs)
