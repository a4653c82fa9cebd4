"""Reversible circuits of multiply-controlled NOT gates.

A circuit acts on N = n_data + n_anc wires, numbered 1..N with wire 1 the
most significant bit of the basis-state index.  Ancilla wires are the
trailing n_anc; circuit inputs are restricted to ancillas-all-zero when
equivalence says so.

Six rewrites are provided.  The first four are sound as permutations of
the full basis; the last two (retargeting through a freshly written
ancilla, and dropping a gate controlled by a never-written ancilla) are
sound only on the ancillas-all-zero inputs, which is what
``check_rule_soundness`` verifies, with a tensor cross-check on small
wire counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .derived import cnot_diagram
from .diagram import Diagram, compose_seq, parallel_wires
from .tensor import ResourceLimitError, equal_up_to_scalar, evaluate

MAX_TABLE_WIRES = 16


class RuleNotApplicableError(ValueError):
    """A rewrite's side condition failed; the message names it."""


@dataclass(frozen=True)
class QbcGate:
    """NOT on ``target`` controlled on every wire in ``controls`` being 1."""

    target: int
    controls: frozenset[int]

    def __post_init__(self) -> None:
        if self.target < 1:
            raise ValueError("target must be a positive wire index")
        if not isinstance(self.controls, frozenset):
            raise TypeError("controls must be a frozenset")
        if self.target in self.controls:
            raise ValueError("a gate cannot control on its own target")
        if any(c < 1 for c in self.controls):
            raise ValueError("controls must be positive wire indices")


@dataclass(frozen=True)
class QbcCircuit:
    n_data: int
    n_anc: int
    gates: tuple[QbcGate, ...]

    def __post_init__(self) -> None:
        if self.n_data < 0 or self.n_anc < 0:
            raise ValueError("wire counts must be nonnegative")
        n = self.n_wires
        for g in self.gates:
            if g.target > n or any(c > n for c in g.controls):
                raise ValueError(f"gate {g} uses wires beyond {n}")

    @property
    def n_wires(self) -> int:
        return self.n_data + self.n_anc

    def is_ancilla(self, wire: int) -> bool:
        return wire > self.n_data


def bit(x: int, wire: int, n_wires: int) -> int:
    return (x >> (n_wires - wire)) & 1


def apply_gate(x: int, gate: QbcGate, n_wires: int) -> int:
    if all(bit(x, c, n_wires) for c in gate.controls):
        return x ^ (1 << (n_wires - gate.target))
    return x


def apply_circuit(x: int, c: QbcCircuit) -> int:
    for g in c.gates:
        x = apply_gate(x, g, c.n_wires)
    return x


@dataclass(frozen=True)
class TruthTable:
    n_data: int
    n_anc: int
    perm: tuple[int, ...]

    @property
    def n_wires(self) -> int:
        return self.n_data + self.n_anc

    def restricted(self) -> dict[int, int]:
        """Outputs for the ancillas-all-zero inputs, keyed by data bits."""
        return {
            xd: self.perm[xd << self.n_anc] for xd in range(2**self.n_data)
        }


def truth_table(c: QbcCircuit) -> TruthTable:
    n = c.n_wires
    if n > MAX_TABLE_WIRES:
        raise ResourceLimitError(
            f"truth table on {n} wires exceeds the {MAX_TABLE_WIRES}-wire cap"
        )
    perm = tuple(apply_circuit(x, c) for x in range(2**n))
    return TruthTable(c.n_data, c.n_anc, perm)


def to_zx(c: QbcCircuit) -> Diagram:
    d = parallel_wires(c.n_wires)
    for g in c.gates:
        d = compose_seq(d, cnot_diagram(c.n_wires, g.target, g.controls))
    return d


# ---------------------------------------------------------------------------
# rewrites


def _need_pair(c: QbcCircuit, position: int) -> tuple[QbcGate, QbcGate]:
    if not 0 <= position < len(c.gates) - 1:
        raise ValueError(f"position {position} has no adjacent pair in {len(c.gates)} gates")
    return c.gates[position], c.gates[position + 1]


def _splice(c: QbcCircuit, position: int, drop: int, new: tuple[QbcGate, ...]) -> QbcCircuit:
    gates = c.gates[:position] + new + c.gates[position + drop :]
    return QbcCircuit(c.n_data, c.n_anc, gates)


def _targeted_before(c: QbcCircuit, wire: int, position: int) -> bool:
    return any(g.target == wire for g in c.gates[:position])


def apply_rule(c: QbcCircuit, rule: int, position: int) -> QbcCircuit:
    """Rewrite ``c`` at ``position``; returns a new circuit.

    1. cancel an adjacent duplicated gate pair
    2. commute an adjacent pair that shares no target/control wires
    3. pull a gate left through one that targets one of its controls,
       compensating with a merged-control gate
    4. mirror of 3: push right, compensating in front
    5. reroute a control through an ancilla that was just written from it
       (ancilla fresh: never targeted earlier, singleton-control writer)
    6. drop a gate controlled on an ancilla that is never written earlier
    """
    if rule == 1:
        g1, g2 = _need_pair(c, position)
        if g1 != g2:
            raise RuleNotApplicableError("rule 1 needs two identical adjacent gates")
        return _splice(c, position, 2, ())
    if rule == 2:
        g1, g2 = _need_pair(c, position)
        if g1.target in g2.controls:
            raise RuleNotApplicableError(
                "rule 2 needs the first target uncontrolled by the second gate"
            )
        if g2.target in g1.controls:
            raise RuleNotApplicableError(
                "rule 2 needs the second target uncontrolled by the first gate"
            )
        return _splice(c, position, 2, (g2, g1))
    if rule == 3:
        g1, g2 = _need_pair(c, position)
        if g1.target in g2.controls:
            raise RuleNotApplicableError(
                "rule 3 needs the first target uncontrolled by the second gate"
            )
        if g2.target not in g1.controls:
            raise RuleNotApplicableError(
                "rule 3 needs the second gate to target a control of the first"
            )
        merged = QbcGate(g1.target, (g1.controls | g2.controls) - {g2.target})
        return _splice(c, position, 2, (g2, g1, merged))
    if rule == 4:
        g1, g2 = _need_pair(c, position)
        if g2.target in g1.controls:
            raise RuleNotApplicableError(
                "rule 4 needs the second target uncontrolled by the first gate"
            )
        if g1.target not in g2.controls:
            raise RuleNotApplicableError(
                "rule 4 needs the first gate to target a control of the second"
            )
        merged = QbcGate(g2.target, (g1.controls | g2.controls) - {g1.target})
        return _splice(c, position, 2, (merged, g2, g1))
    if rule == 5:
        g1, g2 = _need_pair(c, position)
        if len(g1.controls) != 1:
            raise RuleNotApplicableError("rule 5 needs a singleton-control first gate")
        (c1,) = g1.controls
        if not c.is_ancilla(g1.target):
            raise RuleNotApplicableError("rule 5 needs the first gate to target an ancilla")
        if _targeted_before(c, g1.target, position):
            raise RuleNotApplicableError(
                "rule 5 needs the ancilla untargeted before the pair"
            )
        if g2.target == g1.target:
            raise RuleNotApplicableError(
                "rule 5 needs the second gate to target a different wire"
            )
        if c1 not in g2.controls:
            raise RuleNotApplicableError(
                "rule 5 needs the second gate controlled by the copied wire"
            )
        rerouted = QbcGate(g2.target, (g2.controls - {c1}) | {g1.target})
        return _splice(c, position + 1, 1, (rerouted,))
    if rule == 6:
        if not 0 <= position < len(c.gates):
            raise ValueError(f"position {position} out of range for {len(c.gates)} gates")
        g = c.gates[position]
        fresh = [
            w
            for w in sorted(g.controls)
            if c.is_ancilla(w) and not _targeted_before(c, w, position)
        ]
        if not fresh:
            raise RuleNotApplicableError(
                "rule 6 needs a control on an ancilla untargeted before the gate"
            )
        return _splice(c, position, 1, ())
    raise ValueError(f"unknown rule {rule}; rules are 1..6")


RESTRICTED_RULES = frozenset({5, 6})


# ---------------------------------------------------------------------------
# equivalence


def circuits_equivalent(
    a: QbcCircuit, b: QbcCircuit, data_bits_only: bool = False
) -> tuple[bool, int | None]:
    """Compare on ancillas-all-zero inputs; returns (equal, witness data
    input).  Circuits may differ in ancilla count; the shorter one's
    missing ancillas read as zeros."""
    if a.n_data != b.n_data:
        raise ValueError("circuits must agree on the data wire count")
    ta, tb = truth_table(a).restricted(), truth_table(b).restricted()
    anc = max(a.n_anc, b.n_anc)
    for xd in range(2**a.n_data):
        ya, yb = ta[xd], tb[xd]
        if data_bits_only:
            ya >>= a.n_anc
            yb >>= b.n_anc
        else:
            ya <<= anc - a.n_anc
            yb <<= anc - b.n_anc
        if ya != yb:
            return False, xd
    return True, None


def _zx_equivalent_restricted(a: QbcCircuit, b: QbcCircuit, tol: float) -> bool:
    """Tensor cross-check on the ancillas-all-zero input columns."""
    ta = evaluate(to_zx(a)).matrix()
    tb = evaluate(to_zx(b)).matrix()
    cols_a = [xd << a.n_anc for xd in range(2**a.n_data)]
    cols_b = [xd << b.n_anc for xd in range(2**b.n_data)]
    sub_a = ta[:, cols_a]
    sub_b = tb[:, cols_b]
    if sub_a.shape != sub_b.shape:
        raise ValueError("tensor cross-check needs matching wire counts")
    return equal_up_to_scalar(sub_a, sub_b, tol).equal


def zx_cross_check(a: QbcCircuit, b: QbcCircuit, restricted: bool, tol: float = 1e-9) -> bool:
    if restricted:
        return _zx_equivalent_restricted(a, b, tol)
    ta = evaluate(to_zx(a))
    tb = evaluate(to_zx(b))
    return equal_up_to_scalar(ta.array, tb.array, tol).equal


# ---------------------------------------------------------------------------
# soundness harness


@dataclass(frozen=True)
class SoundnessTrial:
    n_data: int
    n_anc: int
    position: int
    gates_before: int
    gates_after: int
    table_ok: bool
    zx_checked: bool
    zx_ok: bool | None


@dataclass
class SoundnessReport:
    rule: int
    trials: int
    seed: int
    corrupt: bool
    records: list[SoundnessTrial] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(
            1
            for r in self.records
            if not r.table_ok or (r.zx_checked and not r.zx_ok)
        )

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "trials": self.trials,
            "seed": self.seed,
            "corrupt": self.corrupt,
            "passed": self.passed,
            "failures": self.failures,
            "records": [
                {
                    "n_data": r.n_data,
                    "n_anc": r.n_anc,
                    "position": r.position,
                    "gates_before": r.gates_before,
                    "gates_after": r.gates_after,
                    "table_ok": r.table_ok,
                    "zx_checked": r.zx_checked,
                    "zx_ok": r.zx_ok,
                }
                for r in self.records
            ],
        }


def _rand_gate(
    rng: random.Random,
    n: int,
    exclude_targets: frozenset[int] = frozenset(),
) -> QbcGate:
    allowed = [w for w in range(1, n + 1) if w not in exclude_targets]
    t = rng.choice(allowed)
    others = [w for w in range(1, n + 1) if w != t]
    k = rng.randint(0, min(3, len(others)))
    return QbcGate(t, frozenset(rng.sample(others, k)))


def _rand_gates(
    rng: random.Random,
    n: int,
    count: int,
    exclude_targets: frozenset[int] = frozenset(),
) -> tuple[QbcGate, ...]:
    return tuple(_rand_gate(rng, n, exclude_targets) for _ in range(count))


def _subset(rng: random.Random, pool: list[int], lo: int = 0, hi: int = 2) -> frozenset[int]:
    k = rng.randint(lo, min(hi, len(pool)))
    return frozenset(rng.sample(pool, k))


def _gen_instance(
    rule: int, rng: random.Random, max_wires: int
) -> tuple[QbcCircuit, int]:
    """A random circuit and position where ``rule`` applies."""
    # rule 5 needs three distinct wires: the ancilla, its source, a target
    n = rng.randint(3 if rule == 5 else 2, max_wires)
    if rule in (5, 6):
        n_anc = rng.randint(1, min(2, n - 1))
    else:
        n_anc = rng.randint(0, min(2, n - 1))
    n_data = n - n_anc
    wires = list(range(1, n + 1))

    if rule == 1:
        g = _rand_gate(rng, n)
        pre = _rand_gates(rng, n, rng.randint(0, 2))
        segment: tuple[QbcGate, ...] = (g, g)
        frozen_pre: frozenset[int] = frozenset()
    elif rule == 2:
        t1, t2 = rng.sample(wires, 2)
        rest = [w for w in wires if w not in (t1, t2)]
        g1 = QbcGate(t1, _subset(rng, rest))
        g2 = QbcGate(t2, _subset(rng, rest))
        pre = _rand_gates(rng, n, rng.randint(0, 2))
        segment = (g1, g2)
        frozen_pre = frozenset()
    elif rule == 3:
        t1, t2 = rng.sample(wires, 2)
        rest = [w for w in wires if w not in (t1, t2)]
        g1 = QbcGate(t1, frozenset({t2}) | _subset(rng, rest))
        g2 = QbcGate(t2, _subset(rng, rest))
        pre = _rand_gates(rng, n, rng.randint(0, 2))
        segment = (g1, g2)
        frozen_pre = frozenset()
    elif rule == 4:
        t1, t2 = rng.sample(wires, 2)
        rest = [w for w in wires if w not in (t1, t2)]
        g1 = QbcGate(t1, _subset(rng, rest))
        g2 = QbcGate(t2, frozenset({t1}) | _subset(rng, rest))
        pre = _rand_gates(rng, n, rng.randint(0, 2))
        segment = (g1, g2)
        frozen_pre = frozenset()
    elif rule == 5:
        anc = rng.randint(n_data + 1, n)
        c1 = rng.choice([w for w in wires if w != anc])
        t2 = rng.choice([w for w in wires if w not in (anc, c1)])
        rest = [w for w in wires if w not in (anc, c1, t2)]
        g1 = QbcGate(anc, frozenset({c1}))
        g2 = QbcGate(t2, frozenset({c1}) | _subset(rng, rest))
        pre = _rand_gates(rng, n, rng.randint(0, 2), exclude_targets=frozenset({anc}))
        segment = (g1, g2)
    elif rule == 6:
        anc = rng.randint(n_data + 1, n)
        t = rng.choice([w for w in wires if w != anc])
        rest = [w for w in wires if w not in (anc, t)]
        g = QbcGate(t, frozenset({anc}) | _subset(rng, rest))
        pre = _rand_gates(rng, n, rng.randint(0, 2), exclude_targets=frozenset({anc}))
        segment = (g,)
    else:
        raise ValueError(f"unknown rule {rule}; rules are 1..6")

    suf = _rand_gates(rng, n, rng.randint(0, 2))
    gates = pre + segment + suf
    return QbcCircuit(n_data, n_anc, gates), len(pre)


def _corrupt(c: QbcCircuit, position: int) -> QbcCircuit:
    """Break a rewritten circuit for harness self-tests: toggle one
    control on the gate at ``position`` (or append a NOT if empty)."""
    if not c.gates:
        return QbcCircuit(c.n_data, c.n_anc, (QbcGate(1, frozenset()),))
    pos = min(position, len(c.gates) - 1)
    g = c.gates[pos]
    wire = next(w for w in range(1, c.n_wires + 1) if w != g.target)
    controls = (
        g.controls - {wire} if wire in g.controls else g.controls | {wire}
    )
    bad = QbcGate(g.target, controls)
    return QbcCircuit(c.n_data, c.n_anc, c.gates[:pos] + (bad,) + c.gates[pos + 1 :])


def check_rule_soundness(
    rule: int,
    trials: int = 100,
    seed: int = 0,
    max_wires: int = 8,
    tol: float = 1e-9,
    zx_max_wires: int = 6,
    corrupt: bool = False,
) -> SoundnessReport:
    """Randomized soundness check: generate circuits where ``rule``
    applies, rewrite, and compare truth tables (full tables for rules
    1..4, ancillas-all-zero inputs for 5..6), cross-checking against the
    tensor semantics when the wire count allows.  ``corrupt`` deliberately
    mangles the rewrite so the harness can prove it detects breakage.
    """
    report = SoundnessReport(rule, trials, seed, corrupt)
    rng = random.Random(seed)
    restricted = rule in RESTRICTED_RULES
    for _ in range(trials):
        lhs, position = _gen_instance(rule, rng, max_wires)
        rhs = apply_rule(lhs, rule, position)
        if corrupt:
            rhs = _corrupt(rhs, position)
        if restricted:
            table_ok, _ = circuits_equivalent(lhs, rhs)
        else:
            table_ok = truth_table(lhs).perm == truth_table(rhs).perm
        zx_checked = lhs.n_wires <= zx_max_wires
        zx_ok = zx_cross_check(lhs, rhs, restricted, tol) if zx_checked else None
        report.records.append(
            SoundnessTrial(
                lhs.n_data,
                lhs.n_anc,
                position,
                len(lhs.gates),
                len(rhs.gates),
                table_ok,
                zx_checked,
                zx_ok,
            )
        )
    return report


# ---------------------------------------------------------------------------
# text format


class QbcTextError(ValueError):
    """Malformed circuit text; the message carries the line number."""


def parse_qbc_text(text: str) -> QbcCircuit:
    """Parse the line format::

        # comment
        qbc data=2 anc=1
        cx 3 : 1 2
        cx 1 :

    The control separator ':' may be omitted for control-free gates.
    """
    header: tuple[int, int] | None = None
    gates: list[QbcGate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "qbc":
                raise QbcTextError(f"line {lineno}: expected 'qbc data=N anc=M' header")
            opts = {}
            for f in fields[1:]:
                if "=" not in f:
                    raise QbcTextError(f"line {lineno}: bad header field {f!r}")
                k, _, v = f.partition("=")
                try:
                    opts[k] = int(v)
                except ValueError:
                    raise QbcTextError(
                        f"line {lineno}: bad header value {f!r}"
                    ) from None
            if set(opts) != {"data", "anc"}:
                raise QbcTextError(f"line {lineno}: header needs data= and anc=")
            if opts["data"] < 0 or opts["anc"] < 0:
                raise QbcTextError(f"line {lineno}: wire counts must be nonnegative")
            header = (opts["data"], opts["anc"])
            continue
        if fields[0] != "cx":
            raise QbcTextError(f"line {lineno}: unknown gate {fields[0]!r}")
        body = fields[1:]
        if ":" in body:
            sep = body.index(":")
            t_fields, c_fields = body[:sep], body[sep + 1 :]
        else:
            t_fields, c_fields = body, []
        if len(t_fields) != 1:
            raise QbcTextError(f"line {lineno}: expected one target wire")
        try:
            target = int(t_fields[0])
            controls = frozenset(int(f) for f in c_fields)
        except ValueError:
            raise QbcTextError(f"line {lineno}: wire indices must be integers") from None
        if len(c_fields) != len(controls):
            raise QbcTextError(f"line {lineno}: duplicate control wire")
        n = header[0] + header[1]
        if not 1 <= target <= n or any(not 1 <= c <= n for c in controls):
            raise QbcTextError(f"line {lineno}: wire outside 1..{n}")
        try:
            gates.append(QbcGate(target, controls))
        except ValueError as exc:
            raise QbcTextError(f"line {lineno}: {exc}") from None
    if header is None:
        raise QbcTextError("line 1: missing 'qbc data=N anc=M' header")
    return QbcCircuit(header[0], header[1], tuple(gates))


def format_qbc_text(c: QbcCircuit) -> str:
    lines = [f"qbc data={c.n_data} anc={c.n_anc}"]
    for g in c.gates:
        controls = " ".join(str(w) for w in sorted(g.controls))
        lines.append(f"cx {g.target} : {controls}".rstrip())
    return "\n".join(lines) + "\n"
