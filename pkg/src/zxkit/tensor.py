"""Dense tensor semantics for diagrams.

``evaluate`` contracts a diagram to a complex tensor whose indices are the
output boundaries followed by the input boundaries (row-major, wire 1 most
significant).  Contraction is greedy: at each step the pair of tensors
sharing an index whose contraction has the smallest resulting rank is
merged.  ``equal_up_to_scalar`` is the projective equality used across the
whole package: diagrams denote the same map when their tensors agree up to
one nonzero complex factor.
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass

import numpy as np

from .diagram import TRI_IN, Diagram, NodeType

DEFAULT_WIRE_BUDGET = 12
WIRE_BUDGET_ENV = "ZXKIT_WIRE_BUDGET"

_SQRT_HALF = math.sqrt(0.5)


class ResourceLimitError(RuntimeError):
    """Evaluation refused: too many open wires for the configured budget."""


def wire_budget(override: int | None = None) -> int:
    """Effective open-wire cap: explicit override, else env, else default."""
    if override is not None:
        if override < 1:
            raise ValueError("wire budget must be at least 1")
        return override
    raw = os.environ.get(WIRE_BUDGET_ENV)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{WIRE_BUDGET_ENV} must be an integer: {raw!r}") from None
        if value < 1:
            raise ValueError(f"{WIRE_BUDGET_ENV} must be at least 1")
        return value
    return DEFAULT_WIRE_BUDGET


@dataclass(frozen=True)
class Tensor:
    """Dense complex tensor over qubit wires, outputs indexed first."""

    array: np.ndarray
    n_out: int
    n_in: int

    def __post_init__(self) -> None:
        if self.array.shape != (2,) * (self.n_out + self.n_in):
            raise ValueError("tensor shape must be (2,) * (n_out + n_in)")

    def matrix(self) -> np.ndarray:
        """2^n_out x 2^n_in matrix view (1x1 for scalars)."""
        return self.array.reshape(2**self.n_out, 2**self.n_in)

    def transposed(self) -> "Tensor":
        m = self.matrix().T
        return Tensor(m.reshape((2,) * (self.n_in + self.n_out)), self.n_in, self.n_out)

    def to_json(self) -> dict:
        flat = self.array.reshape(-1)
        return {
            "shape": [2] * (self.n_out + self.n_in),
            "outputs": self.n_out,
            "inputs": self.n_in,
            "entries": [[float(v.real), float(v.imag)] for v in flat],
        }

    @staticmethod
    def from_json(obj: dict) -> "Tensor":
        shape = obj["shape"]
        if any(dim != 2 for dim in shape):
            raise ValueError("all tensor dimensions must be 2")
        n_out = int(obj["outputs"])
        n_in = int(obj["inputs"])
        if n_out + n_in != len(shape):
            raise ValueError("outputs + inputs must match shape length")
        entries = obj["entries"]
        if len(entries) != 2 ** len(shape):
            raise ValueError("entry count does not match shape")
        flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
        return Tensor(flat.reshape((2,) * len(shape)), n_out, n_in)


@dataclass(frozen=True)
class ScalarMatch:
    """Outcome of a projective comparison: a - scalar * b residual."""

    equal: bool
    scalar: complex | None
    residual: float

    def to_json(self) -> dict:
        out: dict = {"equal": self.equal, "residual": self.residual}
        if self.scalar is not None:
            out["scalar"] = [self.scalar.real, self.scalar.imag]
        return out


def equal_up_to_scalar(
    a: "Tensor | np.ndarray", b: "Tensor | np.ndarray", tol: float = 1e-9
) -> ScalarMatch:
    """Projective equality: is a == scalar * b for some nonzero scalar?

    The scalar is fixed by aligning on the largest-magnitude entry of b.
    Two (numerically) zero tensors are equal with scalar 1; a zero tensor
    never equals a nonzero one.  Accepts raw arrays; Tensor arguments must
    also agree on the output/input split.
    """
    if isinstance(a, Tensor) and isinstance(b, Tensor):
        if (a.n_out, a.n_in) != (b.n_out, b.n_in):
            return ScalarMatch(False, None, math.inf)
    arr_a = a.array if isinstance(a, Tensor) else np.asarray(a, dtype=complex)
    arr_b = b.array if isinstance(b, Tensor) else np.asarray(b, dtype=complex)
    if arr_a.shape != arr_b.shape:
        return ScalarMatch(False, None, math.inf)
    fa = arr_a.reshape(-1)
    fb = arr_b.reshape(-1)
    mag_a = float(np.max(np.abs(fa))) if fa.size else 0.0
    mag_b = float(np.max(np.abs(fb))) if fb.size else 0.0
    if mag_a <= tol and mag_b <= tol:
        return ScalarMatch(True, 1.0 + 0.0j, max(mag_a, mag_b))
    if mag_a <= tol or mag_b <= tol:
        return ScalarMatch(False, None, max(mag_a, mag_b))
    j = int(np.argmax(np.abs(fb)))
    scalar = complex(fa[j] / fb[j])
    residual = float(np.max(np.abs(fa - scalar * fb)))
    return ScalarMatch(residual <= tol and scalar != 0, scalar, residual)


# ---------------------------------------------------------------------------
# node tensors


def _z_tensor(degree: int, unit: complex) -> np.ndarray:
    if degree == 0:
        return np.array(1.0 + unit, dtype=complex)
    arr = np.zeros((2,) * degree, dtype=complex)
    arr[(0,) * degree] = 1.0
    arr[(1,) * degree] = unit
    return arr


def _x_tensor(degree: int, unit: complex) -> np.ndarray:
    # entry(j) = s * (1 + unit * (-1)^{|j|}) with s = 2^{-degree/2};
    # the even/odd split keeps even-degree entries exactly dyadic
    if degree == 0:
        return np.array(1.0 + unit, dtype=complex)
    scale = 0.5 ** (degree // 2) * (_SQRT_HALF if degree % 2 else 1.0)
    parity = np.indices((2,) * degree).sum(axis=0) % 2
    signs = np.where(parity == 0, 1.0, -1.0)
    return scale * (1.0 + unit * signs)

# triangle tensors are indexed (in port, out port); as maps out <- in the
# triangle is [[1, 1], [0, 1]] and its transpose [[1, 0], [1, 1]]
_TRI_ARR = np.array([[1.0, 0.0], [1.0, 1.0]], dtype=complex)
_TRI_T_ARR = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)


# ---------------------------------------------------------------------------
# contraction


def evaluate(d: Diagram, budget: int | None = None) -> Tensor:
    """Contract ``d`` to its tensor.

    Raises ResourceLimitError when the diagram has more open wires than the
    budget (argument, else ZXKIT_WIRE_BUDGET, else 12).
    """
    d.validate()
    cap = wire_budget(budget)
    if d.n_open > cap:
        raise ResourceLimitError(
            f"{d.n_open} open wires exceed the evaluation budget of {cap}"
        )

    boundary_ids = set(d.inputs) | set(d.outputs)
    next_label = 0
    # per-node leg lists in edge-scan order; triangles keyed by port instead
    legs: dict[int, list[int]] = {nid: [] for nid in d.nodes}
    tri_legs: dict[int, dict[int, int]] = {}
    boundary_label: dict[int, int] = {}
    extra: list[tuple[np.ndarray, list[int]]] = []

    for a, b in d.edges:
        (na, pa), (nb, pb) = a, b
        if na in boundary_ids and nb in boundary_ids:
            # bare wire between two boundaries: identity tensor
            la, lb = next_label, next_label + 1
            next_label += 2
            boundary_label[na] = la
            boundary_label[nb] = lb
            extra.append((np.eye(2, dtype=complex), [la, lb]))
            continue
        label = next_label
        next_label += 1
        for nid, port in (a, b):
            if nid in boundary_ids:
                boundary_label[nid] = label
            elif d.nodes[nid].type in (NodeType.TRI, NodeType.TRI_T):
                tri_legs.setdefault(nid, {})[port] = label
            else:
                legs[nid].append(label)

    tensors: list[tuple[np.ndarray, list[int]]] = []
    for nid in sorted(d.nodes):
        kind = d.nodes[nid]
        if kind.type == NodeType.BOUNDARY:
            continue
        if kind.type == NodeType.Z:
            arr = _z_tensor(len(legs[nid]), kind.phase.unit())
            tensors.append((arr, legs[nid]))
        elif kind.type == NodeType.X:
            arr = _x_tensor(len(legs[nid]), kind.phase.unit())
            tensors.append((arr, legs[nid]))
        elif kind.type == NodeType.TRI:
            ports = tri_legs[nid]
            tensors.append((_TRI_ARR, [ports[TRI_IN], ports[1 - TRI_IN]]))
        else:
            ports = tri_legs[nid]
            tensors.append((_TRI_T_ARR, [ports[TRI_IN], ports[1 - TRI_IN]]))
    tensors.extend(extra)

    open_labels = [boundary_label[o] for o in d.outputs] + [
        boundary_label[i] for i in d.inputs
    ]
    result = _contract(tensors, open_labels)
    return Tensor(result, d.n_outputs, d.n_inputs)


def _einsum(ops: list[tuple[np.ndarray, list[int]]], out: list[int]) -> np.ndarray:
    """np.einsum over arbitrary integer labels; the integer-list API only
    accepts labels below 52, so remap to a dense local range per call."""
    mapping: dict[int, int] = {}
    call: list = []
    for arr, labels in ops:
        call.append(arr)
        call.append([mapping.setdefault(lab, len(mapping)) for lab in labels])
    call.append([mapping[lab] for lab in out])
    return np.einsum(*call)


def _self_trace(arr: np.ndarray, labels: list[int]) -> tuple[np.ndarray, list[int]]:
    """Sum out labels repeated within one tensor (spider self-loops)."""
    seen: dict[int, int] = {}
    for lab in labels:
        seen[lab] = seen.get(lab, 0) + 1
    if all(c == 1 for c in seen.values()):
        return arr, labels
    keep = [lab for lab in labels if seen[lab] == 1]
    return _einsum([(arr, labels)], keep), keep


def _contract(
    tensors: list[tuple[np.ndarray, list[int]]], open_labels: list[int]
) -> np.ndarray:
    """Greedy pairwise contraction, always merging the connected pair with
    the smallest result rank.  Candidate pairs live in a heap with lazy
    invalidation: tensors are immutable per id, so an entry is current
    exactly while both ids are alive."""
    work: dict[int, tuple[np.ndarray, list[int]]] = {}
    owners: dict[int, set[int]] = {}
    next_id = 0

    def add(arr: np.ndarray, labels: list[int]) -> int:
        nonlocal next_id
        tid = next_id
        next_id += 1
        work[tid] = (arr, labels)
        for lab in labels:
            owners.setdefault(lab, set()).add(tid)
        return tid

    def remove(tid: int) -> tuple[np.ndarray, list[int]]:
        arr, labels = work.pop(tid)
        for lab in labels:
            owns = owners[lab]
            owns.discard(tid)
            if not owns:
                del owners[lab]
        return arr, labels

    heap: list[tuple[int, int, int]] = []

    def push_pairs(tid: int) -> None:
        labels = work[tid][1]
        partners: set[int] = set()
        for lab in labels:
            partners.update(owners[lab])
        partners.discard(tid)
        mine = set(labels)
        for j in partners:
            lb = work[j][1]
            rank = len(labels) + len(lb) - 2 * len(mine & set(lb))
            heapq.heappush(heap, (rank, min(tid, j), max(tid, j)))

    for arr, labels in tensors:
        add(*_self_trace(arr, labels))
    for tid in list(work):
        push_pairs(tid)

    while len(work) > 1:
        pair = None
        while heap:
            _, i, j = heapq.heappop(heap)
            if i in work and j in work:
                pair = (i, j)
                break
        if pair is None:
            # disconnected components: outer product of the two oldest
            pair = tuple(sorted(work))[:2]
        a, la = remove(pair[0])
        b, lb = remove(pair[1])
        shared = set(la) & set(lb)
        axes_a = [k for k, lab in enumerate(la) if lab in shared]
        axes_b = [lb.index(la[k]) for k in axes_a]
        merged = np.tensordot(a, b, axes=(axes_a, axes_b))
        out = [lab for lab in la if lab not in shared] + [
            lab for lab in lb if lab not in shared
        ]
        push_pairs(add(merged, out))

    if not work:
        final, labels = np.array(1.0 + 0.0j), []
    else:
        final, labels = next(iter(work.values()))

    if not open_labels:
        return np.asarray(final, dtype=complex).reshape(())
    # every internal label is contracted by now, so this is a pure axis
    # permutation
    return np.ascontiguousarray(
        np.transpose(final, [labels.index(lab) for lab in open_labels])
    )
