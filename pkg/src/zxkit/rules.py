"""Rewrite-rule corpus: each rule is a pair of diagrams claimed equal up
to a nonzero scalar, validated by tensor contraction.

Rules are registered with samplers so a corpus run can draw many random
instantiations (angles, spider arities) from one seed.  The six plain
spider/bialgebra rules also hold with colors exchanged; those variants
are generated by relabeling, not stored separately.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations

from .angles import PI, ZERO, PhaseAngle, format_angle
from .derived import (
    and_gate,
    and_phase_diagram,
    attach_and_core,
    phase_gadget_diagram,
)
from .diagram import (
    Diagram,
    DiagramBuilder,
    NodeKind,
    NodeType,
    cap,
    compose_chain,
    compose_par,
    compose_seq,
    cup,
    identity_wire,
    parallel_wires,
    permute_wires,
    swap_colors,
    triangle,
    triangle_transposed,
    x_node,
    x_spider,
    z_node,
    z_spider,
)
from .tensor import ScalarMatch, equal_up_to_scalar, evaluate


class RuleId(str, Enum):
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P7 = "P7"
    P8 = "P8"
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    LEM5 = "LEM5"
    LEM6 = "LEM6"
    EQ3 = "EQ3"
    EQ4 = "EQ4"


@dataclass(frozen=True)
class RuleParams:
    angles: tuple[PhaseAngle, ...] = ()
    arities: tuple[int, ...] = ()
    color_swapped: bool = False


@dataclass(frozen=True)
class RuleInstance:
    rule: RuleId
    params: RuleParams
    lhs: Diagram
    rhs: Diagram


# ---------------------------------------------------------------------------
# shared construction helpers


def _par_many(parts: list[Diagram]) -> Diagram:
    d = parallel_wires(0)
    for p in parts:
        d = compose_par(d, p)
    return d


def _interleave(n: int) -> Diagram:
    """(x1..xn, y1..yn) -> (x1,y1,...,xn,yn)."""
    targets = [0] * (2 * n)
    for k in range(n):
        targets[k] = 2 * k
        targets[n + k] = 2 * k + 1
    return permute_wires(2 * n, targets)


def _deinterleave(n: int) -> Diagram:
    """(x1,y1,...,xn,yn) -> (x1..xn, y1..yn)."""
    targets = [0] * (2 * n)
    for k in range(n):
        targets[2 * k] = k
        targets[2 * k + 1] = n + k
    return permute_wires(2 * n, targets)


_MID_SWAP4 = [0, 2, 1, 3]  # (a1,a2,b1,b2) -> (a1,b1,a2,b2)


def _copy_ladder(m: int) -> Diagram:
    d = identity_wire()
    for k in range(1, m):
        d = compose_seq(d, compose_par(parallel_wires(k - 1), z_spider(1, 2, ZERO)))
    return d


def _triangle_inverse() -> Diagram:
    return compose_chain(z_spider(1, 1, PI), triangle(), z_spider(1, 1, PI))


def _parity_and_joint(n_wires: int, angle: PhaseAngle) -> Diagram:
    """Diagonal exp(i * angle * x1 * (x2 xor ... xor xn)) on n_wires."""
    b = DiagramBuilder()
    ins, outs, taps = [], [], []
    first = None
    for w in range(n_wires):
        i, o = b.boundary(), b.boundary()
        c = b.add(z_node(ZERO))
        b.wire(i, c)
        b.wire(c, o)
        ins.append(i)
        outs.append(o)
        if w == 0:
            first = c
        else:
            taps.append(c)
    hub = b.add(x_node(ZERO))
    for t in taps:
        b.wire(t, hub)
    tail = attach_and_core(b, [first, hub])
    plug = b.add(z_node(angle))
    b.wire(tail, plug)
    return b.freeze(ins, outs)


# ---------------------------------------------------------------------------
# builders: params -> (lhs, rhs), before any color swap


def _build_s1(p: RuleParams) -> tuple[Diagram, Diagram]:
    a, bphase = p.angles
    na, ma, nb, mb, w = p.arities
    b = DiagramBuilder()
    sa = b.add(z_node(a))
    sb = b.add(z_node(bphase))
    ins, outs = [], []
    for _ in range(na):
        i = b.boundary()
        b.wire(i, sa)
        ins.append(i)
    for _ in range(nb):
        i = b.boundary()
        b.wire(i, sb)
        ins.append(i)
    for _ in range(ma):
        o = b.boundary()
        b.wire(sa, o)
        outs.append(o)
    for _ in range(mb):
        o = b.boundary()
        b.wire(sb, o)
        outs.append(o)
    for _ in range(w):
        b.wire(sa, sb)
    return b.freeze(ins, outs), z_spider(na + nb, ma + mb, a + bphase)


def _build_s2(p: RuleParams) -> tuple[Diagram, Diagram]:
    return z_spider(1, 1, ZERO), identity_wire()


def _build_s3(p: RuleParams) -> tuple[Diagram, Diagram]:
    if p.arities[0] == 0:
        return z_spider(2, 0, ZERO), cup()
    return z_spider(0, 2, ZERO), cap()


def _build_b1(p: RuleParams) -> tuple[Diagram, Diagram]:
    kappa = p.angles[0]
    lhs = compose_seq(x_spider(0, 1, kappa), z_spider(1, 2, ZERO))
    rhs = compose_par(x_spider(0, 1, kappa), x_spider(0, 1, kappa))
    return lhs, rhs


def _build_b2(p: RuleParams) -> tuple[Diagram, Diagram]:
    lhs = compose_seq(x_spider(2, 1, ZERO), z_spider(1, 2, ZERO))
    rhs = compose_chain(
        compose_par(z_spider(1, 2, ZERO), z_spider(1, 2, ZERO)),
        permute_wires(4, _MID_SWAP4),
        compose_par(x_spider(2, 1, ZERO), x_spider(2, 1, ZERO)),
    )
    return lhs, rhs


def _build_b3(p: RuleParams) -> tuple[Diagram, Diagram]:
    lhs = compose_seq(z_spider(1, 2, ZERO), x_spider(2, 1, ZERO))
    rhs = compose_seq(z_spider(1, 0, ZERO), x_spider(0, 1, ZERO))
    return lhs, rhs


def _build_t1(p: RuleParams) -> tuple[Diagram, Diagram]:
    return compose_seq(x_spider(0, 1, PI), triangle()), z_spider(0, 1, ZERO)


def _build_t2(p: RuleParams) -> tuple[Diagram, Diagram]:
    return compose_seq(triangle(), x_spider(1, 0, ZERO)), z_spider(1, 0, ZERO)


def _build_t3(p: RuleParams) -> tuple[Diagram, Diagram]:
    return compose_seq(triangle(), _triangle_inverse()), identity_wire()


def _build_t4(p: RuleParams) -> tuple[Diagram, Diagram]:
    rhs = compose_chain(x_spider(1, 1, PI), triangle(), x_spider(1, 1, PI))
    return triangle_transposed(), rhs


def _build_a1(p: RuleParams) -> tuple[Diagram, Diagram]:
    lhs = compose_seq(
        compose_par(x_spider(2, 1, ZERO), identity_wire()), and_gate(2)
    )
    rhs = compose_chain(
        compose_par(parallel_wires(2), z_spider(1, 2, ZERO)),
        permute_wires(4, _MID_SWAP4),
        compose_par(and_gate(2), and_gate(2)),
        x_spider(2, 1, ZERO),
    )
    return lhs, rhs


def _build_a2(p: RuleParams) -> tuple[Diagram, Diagram]:
    return compose_seq(z_spider(1, 2, ZERO), and_gate(2)), identity_wire()


def _build_a3(p: RuleParams) -> tuple[Diagram, Diagram]:
    lhs = compose_seq(and_gate(2), z_spider(1, 2, ZERO))
    rhs = compose_chain(
        compose_par(z_spider(1, 2, ZERO), z_spider(1, 2, ZERO)),
        permute_wires(4, _MID_SWAP4),
        compose_par(and_gate(2), and_gate(2)),
    )
    return lhs, rhs


def _build_p1(p: RuleParams) -> tuple[Diagram, Diagram]:
    m = p.arities[0]
    return z_spider(1, m, ZERO), _copy_ladder(m)


def _build_p2(p: RuleParams) -> tuple[Diagram, Diagram]:
    return compose_seq(x_spider(0, 1, ZERO), triangle()), x_spider(0, 1, ZERO)


def _build_p3(p: RuleParams) -> tuple[Diagram, Diagram]:
    return compose_seq(triangle(), z_spider(1, 0, PI)), x_spider(1, 0, ZERO)


def _build_p4(p: RuleParams) -> tuple[Diagram, Diagram]:
    return compose_seq(z_spider(0, 1, PI), triangle()), x_spider(0, 1, PI)


def _build_p5(p: RuleParams) -> tuple[Diagram, Diagram]:
    return compose_seq(triangle(), x_spider(1, 0, PI)), x_spider(1, 0, PI)


def _build_p6(p: RuleParams) -> tuple[Diagram, Diagram]:
    return and_gate(0), x_spider(0, 1, PI)


def _build_p7(p: RuleParams) -> tuple[Diagram, Diagram]:
    n = p.arities[0]
    states = [x_spider(0, 1, ZERO)] + [x_spider(0, 1, k) for k in p.angles]
    lhs = compose_seq(_par_many(states), and_gate(n + 1))
    return lhs, x_spider(0, 1, ZERO)


def _build_p8(p: RuleParams) -> tuple[Diagram, Diagram]:
    lhs = compose_seq(and_gate(2), z_spider(1, 0, ZERO))
    rhs = compose_par(z_spider(1, 0, ZERO), z_spider(1, 0, ZERO))
    return lhs, rhs


def _build_l1(p: RuleParams) -> tuple[Diagram, Diagram]:
    n = p.arities[0]
    lhs = compose_seq(
        compose_par(x_spider(n, 1, ZERO), identity_wire()), and_gate(2)
    )
    rhs = compose_chain(
        compose_par(parallel_wires(n), z_spider(1, n, ZERO)),
        _interleave(n),
        _par_many([and_gate(2)] * n),
        x_spider(n, 1, ZERO),
    )
    return lhs, rhs


def _build_l2(p: RuleParams) -> tuple[Diagram, Diagram]:
    n = p.arities[0]
    lhs = compose_seq(
        compose_par(x_spider(2, 1, ZERO), parallel_wires(n)), and_gate(n + 1)
    )
    # (p, q, r1,r1',...,rn,rn') -> (p, r1..rn, q, r1'..rn')
    targets = [0] * (2 * n + 2)
    targets[0] = 0
    targets[1] = n + 1
    for j in range(n):
        targets[2 + 2 * j] = 1 + j
        targets[3 + 2 * j] = n + 2 + j
    rhs = compose_chain(
        compose_par(parallel_wires(2), _par_many([z_spider(1, 2, ZERO)] * n)),
        permute_wires(2 * n + 2, targets),
        compose_par(and_gate(n + 1), and_gate(n + 1)),
        x_spider(2, 1, ZERO),
    )
    return lhs, rhs


def _build_l3(p: RuleParams) -> tuple[Diagram, Diagram]:
    n = p.arities[0]
    lhs = compose_seq(and_gate(n), z_spider(1, 2, ZERO))
    rhs = compose_chain(
        _par_many([z_spider(1, 2, ZERO)] * n),
        _deinterleave(n),
        compose_par(and_gate(n), and_gate(n)),
    )
    return lhs, rhs


def _build_l4(p: RuleParams) -> tuple[Diagram, Diagram]:
    n = p.arities[0]
    lhs = compose_seq(and_gate(n), z_spider(1, 0, ZERO))
    rhs = _par_many([z_spider(1, 0, ZERO)] * n)
    return lhs, rhs


def _build_lem5(p: RuleParams) -> tuple[Diagram, Diagram]:
    a = p.angles[0]
    return and_phase_diagram(1, {1}, a), z_spider(1, 1, a)


def _build_lem6(p: RuleParams) -> tuple[Diagram, Diagram]:
    a = p.angles[0]
    k = p.arities[0]
    wires = k + 1
    lhs = phase_gadget_diagram(wires, range(1, wires + 1), a)
    rhs = compose_chain(
        phase_gadget_diagram(wires, {1}, a),
        phase_gadget_diagram(wires, range(2, wires + 1), a),
        _parity_and_joint(wires, a * (-2)),
    )
    return lhs, rhs


def _build_eq4(p: RuleParams) -> tuple[Diagram, Diagram]:
    beta = p.angles[0]
    lhs = phase_gadget_diagram(2, {1, 2}, beta)
    rhs = compose_chain(
        and_phase_diagram(2, {1}, beta),
        and_phase_diagram(2, {2}, beta),
        and_phase_diagram(2, {1, 2}, beta * (-2)),
    )
    return lhs, rhs


def _build_eq3(p: RuleParams) -> tuple[Diagram, Diagram]:
    beta = p.angles[0]
    lhs = phase_gadget_diagram(3, {1, 2, 3}, beta)
    parts = [and_phase_diagram(3, {w}, beta) for w in (1, 2, 3)]
    parts += [
        and_phase_diagram(3, set(pair), beta * (-2))
        for pair in combinations((1, 2, 3), 2)
    ]
    parts.append(and_phase_diagram(3, {1, 2, 3}, beta * 4))
    return lhs, compose_chain(*parts)


# ---------------------------------------------------------------------------
# samplers


def _rand_angle(rng: random.Random) -> PhaseAngle:
    den = rng.randint(1, 16)
    num = rng.randint(0, 2 * den - 1)
    return PhaseAngle.exact(num, den)


def _rand_kappa(rng: random.Random) -> PhaseAngle:
    return PI if rng.random() < 0.5 else ZERO


def _sample_s1(rng: random.Random, max_arity: int) -> list[RuleParams]:
    while True:
        legs = tuple(rng.randint(0, max_arity) for _ in range(4))
        if sum(legs) <= 8:
            break
    w = rng.randint(1, 3)
    return [RuleParams(angles=(_rand_angle(rng), _rand_angle(rng)), arities=legs + (w,))]


def _sample_none(rng: random.Random, max_arity: int) -> list[RuleParams]:
    return [RuleParams()]


def _sample_s3(rng: random.Random, max_arity: int) -> list[RuleParams]:
    return [RuleParams(arities=(0,)), RuleParams(arities=(1,))]


def _sample_b1(rng: random.Random, max_arity: int) -> list[RuleParams]:
    return [RuleParams(angles=(ZERO,)), RuleParams(angles=(PI,))]


def _sample_p1(rng: random.Random, max_arity: int) -> list[RuleParams]:
    return [RuleParams(arities=(rng.randint(1, max(1, max_arity)),))]


def _sample_p7(rng: random.Random, max_arity: int) -> list[RuleParams]:
    n = rng.randint(0, min(3, max_arity))
    return [RuleParams(angles=tuple(_rand_kappa(rng) for _ in range(n)), arities=(n,))]


def _sample_arity_n(rng: random.Random, max_arity: int) -> list[RuleParams]:
    return [RuleParams(arities=(rng.randint(0, max_arity),))]


def _sample_angle(rng: random.Random, max_arity: int) -> list[RuleParams]:
    return [RuleParams(angles=(_rand_angle(rng),))]


def _sample_lem6(rng: random.Random, max_arity: int) -> list[RuleParams]:
    k = rng.randint(1, min(3, max(1, max_arity)))
    return [RuleParams(angles=(_rand_angle(rng),), arities=(k,))]


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class RuleDef:
    rule: RuleId
    group: str
    description: str
    signature: str
    build: callable
    sample_all: callable
    defaults: tuple[RuleParams, ...]
    color_swappable: bool = False
    pluggable: bool = False


_QUARTER = PhaseAngle.exact(1, 4)
_HALF = PhaseAngle.exact(1, 2)

CATALOG: tuple[RuleDef, ...] = (
    RuleDef(
        RuleId.S1,
        "spider",
        "connected same-color spiders fuse; phases add",
        "angles (a, b); arities (in1, out1, in2, out2, bridges)",
        _build_s1,
        _sample_s1,
        (RuleParams(angles=(_QUARTER, _HALF), arities=(1, 2, 1, 1, 1)),),
        color_swappable=True,
    ),
    RuleDef(
        RuleId.S2,
        "spider",
        "phase-free degree-2 spider is a plain wire",
        "no parameters",
        _build_s2,
        _sample_none,
        (RuleParams(),),
        color_swappable=True,
    ),
    RuleDef(
        RuleId.S3,
        "spider",
        "phase-free 2-legged spider states equal the bent wire",
        "arities (orientation,): 0 folds two inputs, 1 two outputs",
        _build_s3,
        _sample_s3,
        (RuleParams(arities=(0,)), RuleParams(arities=(1,))),
        color_swappable=True,
    ),
    RuleDef(
        RuleId.B1,
        "bialgebra",
        "copy duplicates the opposite-color basis states",
        "angles (kappa,) with kappa in {0, pi}",
        _build_b1,
        _sample_b1,
        (RuleParams(angles=(ZERO,)), RuleParams(angles=(PI,))),
        color_swappable=True,
    ),
    RuleDef(
        RuleId.B2,
        "bialgebra",
        "copy after xor equals xors after copies",
        "no parameters",
        _build_b2,
        _sample_none,
        (RuleParams(),),
        color_swappable=True,
    ),
    RuleDef(
        RuleId.B3,
        "bialgebra",
        "copy chased into xor collapses to delete-then-prepare",
        "no parameters",
        _build_b3,
        _sample_none,
        (RuleParams(),),
        color_swappable=True,
    ),
    RuleDef(
        RuleId.T1,
        "triangle",
        "triangle absorbs the 1-state into the 0-basis state",
        "no parameters",
        _build_t1,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.T2,
        "triangle",
        "uniform effect through a triangle projects onto 0",
        "no parameters",
        _build_t2,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.T3,
        "triangle",
        "triangle composed with its inverse chain is a wire",
        "no parameters",
        _build_t3,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.T4,
        "triangle",
        "transposed triangle equals the not-conjugated triangle",
        "no parameters",
        _build_t4,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.A1,
        "and",
        "AND distributes over xor in the first argument",
        "no parameters",
        _build_a1,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.A2,
        "and",
        "copy then AND is the identity (idempotence)",
        "no parameters",
        _build_a2,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.A3,
        "and",
        "copying an AND equals ANDing the copies",
        "no parameters",
        _build_a3,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.P1,
        "states",
        "an m-output copy spider is a ladder of binary copies",
        "arities (m,) with m >= 1",
        _build_p1,
        _sample_p1,
        (RuleParams(arities=(3,)),),
    ),
    RuleDef(
        RuleId.P2,
        "states",
        "triangle fixes the 0-basis state",
        "no parameters",
        _build_p2,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.P3,
        "states",
        "alternating effect through a triangle projects onto 0",
        "no parameters",
        _build_p3,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.P4,
        "states",
        "triangle sends the minus state to the 1-basis state",
        "no parameters",
        _build_p4,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.P5,
        "states",
        "triangle fixes the 1-basis effect",
        "no parameters",
        _build_p5,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.P6,
        "states",
        "the 0-ary AND prepares the 1-basis state",
        "no parameters",
        _build_p6,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.P7,
        "states",
        "AND with a 0-basis input is constant 0 on basis inputs",
        "angles: kappa per extra input, in {0, pi}; arities (n,)",
        _build_p7,
        _sample_p7,
        (RuleParams(angles=(ZERO, PI), arities=(2,)),),
    ),
    RuleDef(
        RuleId.P8,
        "states",
        "deleting an AND output deletes both inputs",
        "no parameters",
        _build_p8,
        _sample_none,
        (RuleParams(),),
    ),
    RuleDef(
        RuleId.L1,
        "linearity",
        "AND distributes over an n-fold xor in the first argument",
        "arities (n,)",
        _build_l1,
        _sample_arity_n,
        (RuleParams(arities=(2,)),),
    ),
    RuleDef(
        RuleId.L2,
        "linearity",
        "a binary xor distributes through an (n+1)-ary AND",
        "arities (n,)",
        _build_l2,
        _sample_arity_n,
        (RuleParams(arities=(2,)),),
    ),
    RuleDef(
        RuleId.L3,
        "linearity",
        "copying an n-ary AND equals ANDing the copies",
        "arities (n,)",
        _build_l3,
        _sample_arity_n,
        (RuleParams(arities=(2,)),),
    ),
    RuleDef(
        RuleId.L4,
        "linearity",
        "deleting an n-ary AND deletes every input",
        "arities (n,)",
        _build_l4,
        _sample_arity_n,
        (RuleParams(arities=(2,)),),
    ),
    RuleDef(
        RuleId.LEM5,
        "gadget",
        "the single-wire AND phase is a plain phase spider",
        "angles (a,)",
        _build_lem5,
        _sample_angle,
        (RuleParams(angles=(_QUARTER,)),),
    ),
    RuleDef(
        RuleId.LEM6,
        "gadget",
        "a parity gadget splits off its first wire against a joint correction",
        "angles (a,); arities (k,) extra wires, k >= 1",
        _build_lem6,
        _sample_lem6,
        (RuleParams(angles=(_QUARTER,), arities=(2,)),),
    ),
    RuleDef(
        RuleId.EQ3,
        "gadget",
        "the 3-wire parity gadget expands into seven AND phases",
        "angles (beta,)",
        _build_eq3,
        _sample_angle,
        (RuleParams(angles=(_QUARTER,)),),
        pluggable=True,
    ),
    RuleDef(
        RuleId.EQ4,
        "gadget",
        "the 2-wire parity gadget expands into three AND phases",
        "angles (beta,)",
        _build_eq4,
        _sample_angle,
        (RuleParams(angles=(_QUARTER,)),),
        pluggable=True,
    ),
)

_BY_ID: dict[RuleId, RuleDef] = {d.rule: d for d in CATALOG}


def rule_def(rule: RuleId | str) -> RuleDef:
    rid = RuleId(rule)
    return _BY_ID[rid]


def catalog() -> list[dict]:
    return [
        {
            "id": d.rule.value,
            "group": d.group,
            "description": d.description,
            "signature": d.signature,
            "color_swappable": d.color_swappable,
        }
        for d in CATALOG
    ]


def instantiate_rule(rule: RuleId | str, params: RuleParams | None = None) -> RuleInstance:
    d = rule_def(rule)
    if params is None:
        params = d.defaults[0]
    if params.color_swapped and not d.color_swappable:
        raise ValueError(f"rule {d.rule.value} has no color-swapped form")
    lhs, rhs = d.build(params)
    if params.color_swapped:
        lhs, rhs = swap_colors(lhs), swap_colors(rhs)
    return RuleInstance(d.rule, params, lhs, rhs)


def plugged_variants(inst: RuleInstance) -> list[tuple[str, Diagram, Diagram]]:
    """For wire-1-pluggable rules: both sides with an x-basis state fed
    into wire 1, for both basis values."""
    if not _BY_ID[inst.rule].pluggable:
        return []
    n = inst.lhs.n_inputs
    out = []
    for label, kappa in (("plug-x0", ZERO), ("plug-xpi", PI)):
        plug = compose_par(x_spider(0, 1, kappa), parallel_wires(n - 1))
        out.append(
            (label, compose_seq(plug, inst.lhs), compose_seq(plug, inst.rhs))
        )
    return out


def validate_instance(
    inst_or_lhs, rhs: Diagram | None = None, tol: float = 1e-9, budget: int | None = None
) -> ScalarMatch:
    if rhs is None:
        lhs, rhs = inst_or_lhs.lhs, inst_or_lhs.rhs
    else:
        lhs = inst_or_lhs
    return equal_up_to_scalar(evaluate(lhs, budget), evaluate(rhs, budget), tol)


def perturb_rhs(inst: RuleInstance, delta: PhaseAngle | None = None) -> RuleInstance:
    """Negative control: returns the instance with its right side knocked
    off by a phase, either on the first spider or spliced onto a wire."""
    if delta is None:
        delta = PhaseAngle.exact(1, 8)
    rhs = inst.rhs
    spiders = [
        nid
        for nid in sorted(rhs.nodes)
        if rhs.nodes[nid].type in (NodeType.Z, NodeType.X)
    ]
    if spiders:
        nid = spiders[0]
        kind = rhs.nodes[nid]
        nodes = dict(rhs.nodes)
        nodes[nid] = NodeKind(kind.type, kind.phase + delta)
        bad = Diagram(nodes, rhs.edges, rhs.inputs, rhs.outputs)
    elif rhs.n_outputs:
        plug = compose_par(z_spider(1, 1, delta), parallel_wires(rhs.n_outputs - 1))
        bad = compose_seq(rhs, plug)
    elif rhs.n_inputs:
        plug = compose_par(z_spider(1, 1, delta), parallel_wires(rhs.n_inputs - 1))
        bad = compose_seq(plug, rhs)
    else:
        raise ValueError("cannot perturb a closed scalar diagram")
    return RuleInstance(inst.rule, inst.params, inst.lhs, bad)


# ---------------------------------------------------------------------------
# corpus runs


@dataclass(frozen=True)
class ValidationRecord:
    rule: str
    variant: str
    angles: tuple[str, ...]
    arities: tuple[int, ...]
    color_swapped: bool
    match: ScalarMatch
    elapsed: float

    def to_json(self, include_timings: bool = False) -> dict:
        out = {
            "rule": self.rule,
            "variant": self.variant,
            "angles": list(self.angles),
            "arities": list(self.arities),
            "color_swapped": self.color_swapped,
            "match": self.match.to_json(),
        }
        if include_timings:
            out["elapsed"] = self.elapsed
        return out


@dataclass
class ValidationReport:
    samples: int
    seed: int
    max_arity: int
    tol: float
    records: list[ValidationRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.match.equal for r in self.records)

    @property
    def failures(self) -> list[ValidationRecord]:
        return [r for r in self.records if not r.match.equal]

    def rule_ids(self) -> list[str]:
        seen: list[str] = []
        for r in self.records:
            if r.rule not in seen:
                seen.append(r.rule)
        return seen

    def to_json(self, include_timings: bool = False) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "max_arity": self.max_arity,
            "tol": self.tol,
            "passed": self.passed,
            "checks": len(self.records),
            "failures": len(self.failures),
            "records": [r.to_json(include_timings) for r in self.records],
        }


def _record(
    report: ValidationReport,
    rule: RuleId,
    variant: str,
    params: RuleParams,
    lhs: Diagram,
    rhs: Diagram,
    budget: int | None,
) -> None:
    start = time.perf_counter()
    match = equal_up_to_scalar(evaluate(lhs, budget), evaluate(rhs, budget), report.tol)
    elapsed = time.perf_counter() - start
    report.records.append(
        ValidationRecord(
            rule.value,
            variant,
            tuple(format_angle(a) for a in params.angles),
            params.arities,
            params.color_swapped,
            match,
            elapsed,
        )
    )


def validate_corpus(
    samples: int = 20,
    seed: int = 0,
    max_arity: int = 4,
    tol: float = 1e-9,
    only: set[str] | None = None,
    budget: int | None = None,
) -> ValidationReport:
    """Validate ``samples`` random instantiations of every rule (plus the
    color-swapped and wire-plugged variants where they exist) against the
    tensor contraction oracle."""
    if only is not None:
        unknown = set(only) - {d.rule.value for d in CATALOG}
        if unknown:
            raise ValueError(f"unknown rule ids: {sorted(unknown)}")
    report = ValidationReport(samples, seed, max_arity, tol)
    rng = random.Random(seed)
    for d in CATALOG:
        if only is not None and d.rule.value not in only:
            continue
        for s in range(samples):
            for params in d.sample_all(rng, max_arity):
                polarities = (False, True) if d.color_swappable else (False,)
                for swapped in polarities:
                    p = replace(params, color_swapped=swapped)
                    inst = instantiate_rule(d.rule, p)
                    _record(report, d.rule, "base", p, inst.lhs, inst.rhs, budget)
                    for label, lhs, rhs in plugged_variants(inst):
                        _record(report, d.rule, label, p, lhs, rhs, budget)
    return report
