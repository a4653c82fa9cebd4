"""ZX diagrams as open graphs of generator nodes.

A diagram is a map from node ids to node kinds (Z/X spiders with a phase,
triangle, transposed triangle, boundary), an unordered multiset of edges,
and ordered boundary lists.  Diagrams read from inputs to outputs and are
semantically compared up to a nonzero scalar.

Edges are endpoint pairs ``((node, port), (node, port))``.  Spiders and
boundaries are port-agnostic (port None); triangles carry one edge on
port 0 (the in port) and one on port 1 (the out port), which is what makes
their non-symmetric tensor unambiguous.  Self-loops on spiders are legal
and resolved by the tensor semantics.  Boundary nodes have degree exactly
one and appear in exactly one of ``inputs``/``outputs``.

Diagrams are immutable once built; composition returns new diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .angles import ZERO, PhaseAngle, phase_from_json, phase_to_json


class CompositionError(ValueError):
    """Sequential composition with mismatched boundary arities."""


class DiagramError(ValueError):
    """Structurally malformed diagram."""


class NodeType(Enum):
    Z = "Z"
    X = "X"
    TRI = "TRI"
    TRI_T = "TRI_T"
    BOUNDARY = "B"


@dataclass(frozen=True)
class NodeKind:
    type: NodeType
    phase: PhaseAngle | None = None

    def __post_init__(self) -> None:
        spider = self.type in (NodeType.Z, NodeType.X)
        if spider and self.phase is None:
            object.__setattr__(self, "phase", ZERO)
        if not spider and self.phase is not None:
            raise DiagramError(f"{self.type.value} node cannot carry a phase")


def z_node(phase: PhaseAngle = ZERO) -> NodeKind:
    return NodeKind(NodeType.Z, phase)


def x_node(phase: PhaseAngle = ZERO) -> NodeKind:
    return NodeKind(NodeType.X, phase)


TRI_NODE = NodeKind(NodeType.TRI)
TRI_T_NODE = NodeKind(NodeType.TRI_T)
BOUNDARY_NODE = NodeKind(NodeType.BOUNDARY)

# (node id, port); port is None except on triangle endpoints
EndPoint = tuple[int, "int | None"]
Edge = tuple[EndPoint, EndPoint]

TRI_IN, TRI_OUT = 0, 1


@dataclass(frozen=True)
class Diagram:
    nodes: dict[int, NodeKind]
    edges: tuple[Edge, ...]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    @property
    def n_open(self) -> int:
        return len(self.inputs) + len(self.outputs)

    def endpoints(self) -> list[EndPoint]:
        out = []
        for a, b in self.edges:
            out.append(a)
            out.append(b)
        return out

    def degree(self, node: int) -> int:
        return sum(1 for p, _ in self.endpoints() if p == node)

    def validate(self) -> None:
        """Raise DiagramError on any well-formedness violation."""
        for nid, port in self.endpoints():
            if nid not in self.nodes:
                raise DiagramError(f"edge references unknown node {nid}")
            tri = self.nodes[nid].type in (NodeType.TRI, NodeType.TRI_T)
            if tri and port not in (TRI_IN, TRI_OUT):
                raise DiagramError(f"triangle node {nid} used without a port")
            if not tri and port is not None:
                raise DiagramError(f"non-triangle node {nid} used with a port")
        deg: dict[int, int] = {nid: 0 for nid in self.nodes}
        tri_ports: dict[int, list[int]] = {}
        for nid, port in self.endpoints():
            deg[nid] += 1
            if port is not None:
                tri_ports.setdefault(nid, []).append(port)
        for nid, kind in self.nodes.items():
            if kind.type == NodeType.BOUNDARY and deg[nid] != 1:
                raise DiagramError(f"boundary node {nid} has degree {deg[nid]}")
            if kind.type in (NodeType.TRI, NodeType.TRI_T):
                if sorted(tri_ports.get(nid, [])) != [TRI_IN, TRI_OUT]:
                    raise DiagramError(
                        f"triangle node {nid} must use each port exactly once"
                    )
        boundary = [n for n, k in self.nodes.items() if k.type == NodeType.BOUNDARY]
        listed = list(self.inputs) + list(self.outputs)
        if sorted(boundary) != sorted(listed) or len(set(listed)) != len(listed):
            raise DiagramError("inputs/outputs must list each boundary node once")
        for nid in listed:
            if self.nodes[nid].type != NodeType.BOUNDARY:
                raise DiagramError(f"listed boundary {nid} is not a boundary node")


class DiagramBuilder:
    """Mutable accumulator; ``freeze`` validates and returns the Diagram."""

    def __init__(self) -> None:
        self._nodes: dict[int, NodeKind] = {}
        self._edges: list[Edge] = []
        self._next = 0

    def add(self, kind: NodeKind) -> int:
        nid = self._next
        self._next += 1
        self._nodes[nid] = kind
        return nid

    def boundary(self) -> int:
        return self.add(BOUNDARY_NODE)

    def wire(self, a: int, b: int, pa: int | None = None, pb: int | None = None) -> None:
        self._edges.append(((a, pa), (b, pb)))

    def freeze(self, inputs: list[int], outputs: list[int]) -> Diagram:
        d = Diagram(dict(self._nodes), tuple(self._edges), tuple(inputs), tuple(outputs))
        d.validate()
        return d


# ---------------------------------------------------------------------------
# generators


def z_spider(n_in: int, n_out: int, phase: PhaseAngle = ZERO) -> Diagram:
    return _spider(z_node(phase), n_in, n_out)


def x_spider(n_in: int, n_out: int, phase: PhaseAngle = ZERO) -> Diagram:
    return _spider(x_node(phase), n_in, n_out)


def _spider(kind: NodeKind, n_in: int, n_out: int) -> Diagram:
    if n_in < 0 or n_out < 0:
        raise ValueError("spider arities must be nonnegative")
    b = DiagramBuilder()
    s = b.add(kind)
    ins = [b.boundary() for _ in range(n_in)]
    outs = [b.boundary() for _ in range(n_out)]
    for nid in ins + outs:
        b.wire(nid, s)
    return b.freeze(ins, outs)


def triangle() -> Diagram:
    b = DiagramBuilder()
    t = b.add(TRI_NODE)
    i, o = b.boundary(), b.boundary()
    b.wire(i, t, pb=TRI_IN)
    b.wire(t, o, pa=TRI_OUT)
    return b.freeze([i], [o])


def triangle_transposed() -> Diagram:
    b = DiagramBuilder()
    t = b.add(TRI_T_NODE)
    i, o = b.boundary(), b.boundary()
    b.wire(i, t, pb=TRI_IN)
    b.wire(t, o, pa=TRI_OUT)
    return b.freeze([i], [o])


def identity_wire() -> Diagram:
    b = DiagramBuilder()
    i, o = b.boundary(), b.boundary()
    b.wire(i, o)
    return b.freeze([i], [o])


def parallel_wires(n: int) -> Diagram:
    b = DiagramBuilder()
    ins, outs = [], []
    for _ in range(n):
        i, o = b.boundary(), b.boundary()
        b.wire(i, o)
        ins.append(i)
        outs.append(o)
    return b.freeze(ins, outs)


def cup() -> Diagram:
    """2 -> 0: <00| + <11|."""
    b = DiagramBuilder()
    i1, i2 = b.boundary(), b.boundary()
    b.wire(i1, i2)
    return b.freeze([i1, i2], [])


def cap() -> Diagram:
    """0 -> 2: |00> + |11>."""
    b = DiagramBuilder()
    o1, o2 = b.boundary(), b.boundary()
    b.wire(o1, o2)
    return b.freeze([], [o1, o2])


def swap() -> Diagram:
    b = DiagramBuilder()
    i1, i2, o1, o2 = (b.boundary() for _ in range(4))
    b.wire(i1, o2)
    b.wire(i2, o1)
    return b.freeze([i1, i2], [o1, o2])


def empty_diagram() -> Diagram:
    return Diagram({}, (), (), ())


def permute_wires(n: int, targets: list[int] | tuple[int, ...]) -> Diagram:
    """Bare rewiring: input k runs to output targets[k] (0-based)."""
    if sorted(targets) != list(range(n)):
        raise DiagramError(f"targets {targets!r} are not a permutation of 0..{n - 1}")
    b = DiagramBuilder()
    ins = [b.boundary() for _ in range(n)]
    outs = [b.boundary() for _ in range(n)]
    for k, t in enumerate(targets):
        b.wire(ins[k], outs[t])
    return b.freeze(ins, outs)


_GENERATORS = {
    "z_spider": z_spider,
    "x_spider": x_spider,
    "triangle": triangle,
    "triangle_transposed": triangle_transposed,
    "identity": identity_wire,
    "cup": cup,
    "cap": cap,
    "swap": swap,
    "empty": empty_diagram,
}


def make_generator(kind: str, *args, **kwargs) -> Diagram:
    """String-keyed front door over the generator constructors."""
    try:
        ctor = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown generator kind: {kind!r}") from None
    return ctor(*args, **kwargs)


# ---------------------------------------------------------------------------
# composition


def _relabel(d: Diagram, offset: int) -> Diagram:
    nodes = {nid + offset: k for nid, k in d.nodes.items()}
    edges = tuple(
        ((a + offset, pa), (b + offset, pb)) for (a, pa), (b, pb) in d.edges
    )
    return Diagram(
        nodes,
        edges,
        tuple(i + offset for i in d.inputs),
        tuple(o + offset for o in d.outputs),
    )


def compose_par(left: Diagram, right: Diagram) -> Diagram:
    """Side-by-side (tensor) composition; boundary lists concatenate."""
    offset = max(left.nodes, default=-1) + 1
    r = _relabel(right, offset)
    return Diagram(
        {**left.nodes, **r.nodes},
        left.edges + r.edges,
        left.inputs + r.inputs,
        left.outputs + r.outputs,
    )


def compose_seq(first: Diagram, then: Diagram) -> Diagram:
    """Sequential composition applying ``first`` first.

    Outputs of ``first`` fuse pairwise, in order, with inputs of ``then``.
    Each fused boundary pair is spliced away; a wire that closes onto
    itself is kept as a phase-0 Z spider with no legs (the scalar 2 of a
    closed loop).
    """
    if first.n_outputs != then.n_inputs:
        raise CompositionError(
            f"cannot fuse {first.n_outputs} outputs with {then.n_inputs} inputs"
        )
    offset = max(first.nodes, default=-1) + 1
    t = _relabel(then, offset)
    nodes = {**first.nodes, **t.nodes}
    edges = list(first.edges + t.edges)

    # merge each (output, input) pair into a single connector node
    connectors = set()
    for out_id, in_id in zip(first.outputs, t.inputs):
        nodes[out_id] = z_node(ZERO)
        del nodes[in_id]
        edges = [
            tuple(
                (out_id if n == in_id else n, p) for n, p in e
            )
            for e in edges
        ]
        connectors.add(out_id)

    # splice connectors away; each has exactly two endpoint slots
    for c in sorted(connectors):
        incident = [
            (i, e) for i, e in enumerate(edges) if e[0][0] == c or e[1][0] == c
        ]
        if len(incident) == 1 and incident[0][1][0][0] == c and incident[0][1][1][0] == c:
            # closed loop of bare wire: drop the edge, keep the scalar-2 node
            del edges[incident[0][0]]
            continue
        (i1, e1), (i2, e2) = incident
        a = e1[1] if e1[0][0] == c else e1[0]
        b = e2[1] if e2[0][0] == c else e2[0]
        for i in sorted((i1, i2), reverse=True):
            del edges[i]
        edges.append((a, b))
        del nodes[c]

    d = Diagram(nodes, tuple(edges), first.inputs, t.outputs)
    d.validate()
    return d


def compose_chain(*diagrams: Diagram) -> Diagram:
    """Left-to-right sequential composition of several diagrams."""
    if not diagrams:
        raise ValueError("compose_chain needs at least one diagram")
    acc = diagrams[0]
    for d in diagrams[1:]:
        acc = compose_seq(acc, d)
    return acc


def transpose(d: Diagram) -> Diagram:
    """Bend all wires: inputs and outputs trade places and triangles flip.

    Triangles toggle TRI <-> TRI_T with their ports swapped, which leaves
    each node's tensor contribution unchanged; the boundary swap alone then
    realizes the matrix transpose, so evaluate(transpose(d)) is exactly the
    transpose of evaluate(d).
    """
    flipped = {}
    toggled = set()
    for nid, kind in d.nodes.items():
        if kind.type == NodeType.TRI:
            flipped[nid] = TRI_T_NODE
            toggled.add(nid)
        elif kind.type == NodeType.TRI_T:
            flipped[nid] = TRI_NODE
            toggled.add(nid)
        else:
            flipped[nid] = kind

    def flip(ep: EndPoint) -> EndPoint:
        nid, port = ep
        if nid in toggled:
            return (nid, TRI_OUT if port == TRI_IN else TRI_IN)
        return ep

    edges = tuple((flip(a), flip(b)) for a, b in d.edges)
    return Diagram(flipped, edges, d.outputs, d.inputs)


def swap_colors(d: Diagram) -> Diagram:
    """Exchange Z and X spiders throughout (phases kept)."""
    swapped = {}
    for nid, kind in d.nodes.items():
        if kind.type == NodeType.Z:
            swapped[nid] = NodeKind(NodeType.X, kind.phase)
        elif kind.type == NodeType.X:
            swapped[nid] = NodeKind(NodeType.Z, kind.phase)
        else:
            swapped[nid] = kind
    return Diagram(swapped, d.edges, d.inputs, d.outputs)


# ---------------------------------------------------------------------------
# JSON form
#
# Nodes: {"id", "kind" ("Z"|"X"|"TRI"|"TRI_T"|"B"), "phase"?}; edges are
# [id, id] pairs.  Triangle ports are positional: scanning the edge list
# left to right, a triangle's first endpoint occurrence is its in port and
# the second its out port.


def diagram_to_json(d: Diagram) -> dict:
    d.validate()
    node_list = []
    for nid in sorted(d.nodes):
        kind = d.nodes[nid]
        entry: dict = {"id": nid, "kind": kind.type.value}
        if kind.type in (NodeType.Z, NodeType.X):
            entry["phase"] = phase_to_json(kind.phase)
        node_list.append(entry)

    tri_ids = {
        nid
        for nid, k in d.nodes.items()
        if k.type in (NodeType.TRI, NodeType.TRI_T)
    }
    ordered = _order_edges_for_ports(d, tri_ids)
    edge_list = [[a, b] for (a, _), (b, _) in ordered]
    return {
        "nodes": node_list,
        "edges": edge_list,
        "inputs": list(d.inputs),
        "outputs": list(d.outputs),
    }


def _order_edges_for_ports(d: Diagram, tri_ids: set[int]) -> list[Edge]:
    """Order edges (and endpoints within each pair) so that every triangle's
    in-port edge is scanned before its out-port edge."""
    edges = []
    for a, b in d.edges:
        # a triangle self-loop covers both ports; scan the in port first
        if a[0] == b[0] and a[0] in tri_ids:
            edges.append((a, b) if a[1] == TRI_IN else (b, a))
        else:
            edges.append((a, b))

    # precedence: the edge carrying t's in port must come before the one
    # carrying its out port (when they differ)
    n = len(edges)
    before: dict[int, set[int]] = {i: set() for i in range(n)}
    for t in tri_ids:
        slots = {}
        for i, e in enumerate(edges):
            for nid, port in e:
                if nid == t:
                    slots[port] = i
        if slots[TRI_IN] != slots[TRI_OUT]:
            before[slots[TRI_OUT]].add(slots[TRI_IN])

    ordered_idx: list[int] = []
    placed: set[int] = set()
    remaining = list(range(n))
    while remaining:
        progress = False
        for i in list(remaining):
            if before[i] <= placed:
                ordered_idx.append(i)
                placed.add(i)
                remaining.remove(i)
                progress = True
        if not progress:
            raise DiagramError("triangle port order is cyclic; not serializable")
    return [edges[i] for i in ordered_idx]


_KIND_FROM_JSON = {t.value: t for t in NodeType}


def diagram_from_json(obj: dict) -> Diagram:
    try:
        raw_nodes = obj["nodes"]
        raw_edges = obj["edges"]
        raw_inputs = obj["inputs"]
        raw_outputs = obj["outputs"]
    except (KeyError, TypeError) as exc:
        raise DiagramError(f"diagram object missing field: {exc}") from None

    nodes: dict[int, NodeKind] = {}
    for entry in raw_nodes:
        nid = int(entry["id"])
        if nid in nodes:
            raise DiagramError(f"duplicate node id {nid}")
        kind_name = entry.get("kind")
        if kind_name not in _KIND_FROM_JSON:
            raise DiagramError(f"unknown node kind: {kind_name!r}")
        ntype = _KIND_FROM_JSON[kind_name]
        phase = None
        if ntype in (NodeType.Z, NodeType.X):
            phase = (
                phase_from_json(entry["phase"]) if "phase" in entry else ZERO
            )
        elif "phase" in entry:
            raise DiagramError(f"{kind_name} node cannot carry a phase")
        nodes[nid] = NodeKind(ntype, phase)

    tri_ids = {
        nid for nid, k in nodes.items() if k.type in (NodeType.TRI, NodeType.TRI_T)
    }
    next_port: dict[int, int] = {t: TRI_IN for t in tri_ids}
    edges: list[Edge] = []
    for pair in raw_edges:
        if len(pair) != 2:
            raise DiagramError(f"edge must be an [id, id] pair: {pair!r}")
        eps = []
        for nid in pair:
            nid = int(nid)
            if nid in tri_ids:
                port = next_port[nid]
                if port > TRI_OUT:
                    raise DiagramError(f"triangle node {nid} has too many edges")
                next_port[nid] = port + 1
                eps.append((nid, port))
            else:
                eps.append((nid, None))
        edges.append((eps[0], eps[1]))

    d = Diagram(
        nodes,
        tuple(edges),
        tuple(int(i) for i in raw_inputs),
        tuple(int(o) for o in raw_outputs),
    )
    d.validate()
    return d
