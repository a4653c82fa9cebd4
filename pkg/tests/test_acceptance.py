"""Acceptance gate: seven end-to-end criteria, one test each.

Each criterion prints a single PASS/FAIL line.  Expected values come from
independent oracles in this file and in conftest (entry-level matrix
formulas, Fraction arithmetic, boolean evaluation), never from the code
under test.
"""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from zxkit.angles import PhaseAngle
from zxkit.diagram import (
    cap,
    cup,
    empty_diagram,
    identity_wire,
    swap,
    triangle,
    x_spider,
    z_spider,
)
from zxkit.phasepoly import (
    AndPhaseTerm,
    GadgetCircuit,
    GadgetTerm,
    circuit_monomials,
    circuit_to_diagram,
    decompose_parity_to_and,
    format_gadget_text,
    monomials_to_diagonal,
    parse_gadget_text,
    pi4_gadget_terms,
)
from zxkit.qbc import check_rule_soundness
from zxkit.rules import RuleId, instantiate_rule, perturb_rhs, validate_corpus, validate_instance
from zxkit.service.models import OptimizeRequest
from zxkit.service import ops
from zxkit.tensor import equal_up_to_scalar, evaluate

TOL = 1e-9


@contextmanager
def reported(num: int, label: str):
    try:
        yield
    except BaseException:
        print(f"criterion {num} ({label}): FAIL")
        raise
    print(f"criterion {num} ({label}): PASS")


# --------------------------------------------------------------------------
# criterion 1: generator tensors, bit for bit

_UNITS = {
    Fraction(0): 1 + 0j,
    Fraction(1, 2): 1j,
    Fraction(1): -1 + 0j,
    Fraction(3, 2): -1j,
}


def _z_matrix(n_in: int, n_out: int, turn: Fraction) -> np.ndarray:
    u = _UNITS[turn]
    m = np.zeros((2**n_out, 2**n_in), dtype=complex)
    m[0, 0] += 1.0
    m[-1, -1] += u
    return m


def _x_matrix(n_in: int, n_out: int, turn: Fraction) -> np.ndarray:
    u = _UNITS[turn]
    deg = n_in + n_out
    if deg == 0:
        return np.array([[1.0 + u]])
    scale = 0.5 ** (deg // 2) * (math.sqrt(0.5) if deg % 2 else 1.0)
    m = np.empty((2**n_out, 2**n_in), dtype=complex)
    for y in range(2**n_out):
        for x in range(2**n_in):
            sign = 1.0 if (bin(y).count("1") + bin(x).count("1")) % 2 == 0 else -1.0
            m[y, x] = scale * (1.0 + u * sign)
    return m


def test_criterion_1_generator_table():
    start = time.perf_counter()
    with reported(1, "generator-table fidelity, zero tolerance"):
        for n_in in range(4):
            for n_out in range(4):
                for turn in _UNITS:
                    a = PhaseAngle.exact(turn.numerator, turn.denominator)
                    got = evaluate(z_spider(n_in, n_out, a)).matrix()
                    assert np.array_equal(got, _z_matrix(n_in, n_out, turn))
                    got = evaluate(x_spider(n_in, n_out, a)).matrix()
                    assert np.array_equal(got, _x_matrix(n_in, n_out, turn))
        assert np.array_equal(
            evaluate(triangle()).matrix(), np.array([[1, 1], [0, 1]], dtype=complex)
        )
        assert np.array_equal(evaluate(identity_wire()).matrix(), np.eye(2, dtype=complex))
        assert np.array_equal(
            evaluate(cup()).matrix(), np.array([[1, 0, 0, 1]], dtype=complex)
        )
        assert np.array_equal(
            evaluate(cap()).matrix(), np.array([[1], [0], [0], [1]], dtype=complex)
        )
        swap_m = np.zeros((4, 4), dtype=complex)
        swap_m[0, 0] = swap_m[1, 2] = swap_m[2, 1] = swap_m[3, 3] = 1
        assert np.array_equal(evaluate(swap()).matrix(), swap_m)
        assert np.array_equal(
            evaluate(empty_diagram()).matrix(), np.ones((1, 1), dtype=complex)
        )
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"criterion 1 took {elapsed:.2f}s"


# --------------------------------------------------------------------------
# criterion 2: rule corpus


def test_criterion_2_rule_corpus():
    start = time.perf_counter()
    with reported(2, "rule-corpus soundness, 20 samples seed 7"):
        report = validate_corpus(samples=20, seed=7, max_arity=4, tol=TOL)
        assert report.passed, [r.rule for r in report.failures]
        assert report.rule_ids() == [r.value for r in RuleId]
        assert len(report.records) == 860
        swapped = {r.rule for r in report.records if r.color_swapped}
        assert swapped == {"S1", "S2", "S3", "B1", "B2", "B3"}
        plugged = {r.rule for r in report.records if r.variant != "base"}
        assert plugged == {"EQ3", "EQ4"}
        # negative controls: a perturbed right side must be caught
        for rid in RuleId:
            broken = perturb_rhs(instantiate_rule(rid))
            assert not validate_instance(broken, tol=TOL).equal, rid
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"criterion 2 took {elapsed:.2f}s"


# --------------------------------------------------------------------------
# criterion 3: parity-to-AND expansion at desk scale


def test_criterion_3_parity_to_and():
    start = time.perf_counter()
    with reported(3, "parity-to-AND expansion, n 2..8"):
        rng = random.Random(7)
        for n in range(2, 9):
            support = frozenset(range(1, n + 1))
            for _ in range(20):
                den = rng.choice([1, 2, 3, 4, 6, 8, 12])
                beta = PhaseAngle.exact(rng.randrange(0, 2 * den), den)
                terms = decompose_parity_to_and(support, beta)
                assert len(terms) == 2**n - 1
                # size-k angles are all equal and follow a_{k+1} = -2 a_k
                by_size: dict[int, PhaseAngle] = {}
                for t in terms:
                    k = len(t.support)
                    if k in by_size:
                        assert t.angle == by_size[k]
                    else:
                        by_size[k] = t.angle
                assert by_size[1] == beta
                for k in range(1, n):
                    assert by_size[k + 1] == by_size[k] * -2
                # the monomial map is untouched, exactly
                lhs = GadgetCircuit(n, (GadgetTerm(support, beta),))
                rhs = GadgetCircuit(n, terms)
                assert circuit_monomials(lhs) == circuit_monomials(rhs)
                if n <= 6:
                    match = equal_up_to_scalar(
                        evaluate(circuit_to_diagram(lhs)),
                        evaluate(circuit_to_diagram(rhs)),
                        TOL,
                    )
                    assert match.equal, (n, beta, match.residual)
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"criterion 3 took {elapsed:.2f}s"


# --------------------------------------------------------------------------
# criterion 4: pi/4 closed forms


def test_criterion_4_pi4_closed_forms():
    start = time.perf_counter()
    with reported(4, "pi/4 gadget closed forms, n 3..8"):
        for n in range(3, 9):
            support = frozenset(range(1, n + 1))
            terms = pi4_gadget_terms(support)
            assert len(terms) == n + math.comb(n, 2) + math.comb(n, 3)
            sigma = PhaseAngle.exact((n - 2) * (n - 3), 8)
            tau = PhaseAngle.exact(3 - n, 4)
            quarter = PhaseAngle.exact(1, 4)
            for t in terms:
                want = {1: sigma, 2: tau, 3: quarter}[len(t.support)]
                assert t.angle == want, (n, sorted(t.support))
            lhs = GadgetCircuit(n, (GadgetTerm(support, quarter),))
            rhs = GadgetCircuit(n, terms)
            assert circuit_monomials(lhs) == circuit_monomials(rhs)
            # subsets of size >= 4 carry pi/4 * (-2)^(s-1), a multiple of
            # 2*pi, so capping the replacement at triples loses nothing
            for s in range(4, n + 1):
                assert Fraction(1, 4) * (-2) ** (s - 1) % 2 == 0
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"criterion 4 took {elapsed:.2f}s"


# --------------------------------------------------------------------------
# criterion 5: circuit rewrite soundness


def test_criterion_5_qbc_rule_soundness():
    start = time.perf_counter()
    with reported(5, "reversible-circuit rules, 200 trials each"):
        for rule in range(1, 7):
            report = check_rule_soundness(
                rule, trials=200, seed=7, max_wires=8, tol=TOL, zx_max_wires=6
            )
            assert report.passed, (rule, report.failures)
            assert len(report.records) == 200
            assert any(r.zx_checked for r in report.records), rule
        elapsed = time.perf_counter() - start
        assert elapsed < 120.0, f"criterion 5 took {elapsed:.2f}s"


# --------------------------------------------------------------------------
# criterion 6: cross-oracle agreement


def _random_circuit(rng: random.Random) -> GadgetCircuit:
    n = rng.randint(1, 6)
    terms = []
    for _ in range(rng.randint(0, 8)):
        k = rng.randint(1, n)
        support = frozenset(rng.sample(range(1, n + 1), k))
        den = rng.choice([1, 2, 3, 4, 6, 8])
        angle = PhaseAngle.exact(rng.randrange(0, 2 * den), den)
        if angle.is_zero:
            continue
        kind = rng.choice([GadgetTerm, AndPhaseTerm])
        terms.append(kind(support, angle))
    return GadgetCircuit(n, tuple(terms))


def test_criterion_6_cross_oracle():
    with reported(6, "monomial diagonal vs diagram contraction, 100 circuits"):
        rng = random.Random(7)
        for _ in range(100):
            c = _random_circuit(rng)
            via_map = monomials_to_diagonal(circuit_monomials(c))
            via_diagram = evaluate(circuit_to_diagram(c))
            match = equal_up_to_scalar(via_map, via_diagram, TOL)
            assert match.equal, (c, match.residual)


# --------------------------------------------------------------------------
# criterion 7: optimization soundness


def _odd_quarter(rng: random.Random) -> PhaseAngle:
    return PhaseAngle.exact(rng.choice([1, 3, 5, 7]), 4)


def test_criterion_7_optimize():
    with reported(7, "optimizer preserves the monomial map"):
        rng = random.Random(7)
        # arbitrary exact files: the map must never move
        for _ in range(50):
            c = _random_circuit(rng)
            resp = ops.optimize(OptimizeRequest(circuit_text=format_gadget_text(c)))
            out = parse_gadget_text(resp.circuit_text)
            assert circuit_monomials(out) == circuit_monomials(c)
            assert resp.terms_after == len(out.terms)
        # odd-pi/4 gadgets with pairwise shared supports: fusion wins, so
        # the pipeline may never raise the T-count
        for _ in range(50):
            n = rng.randint(2, 6)
            terms = []
            for _ in range(rng.randint(1, 4)):
                k = rng.randint(1, n)
                support = frozenset(rng.sample(range(1, n + 1), k))
                terms.append(GadgetTerm(support, _odd_quarter(rng)))
                terms.append(GadgetTerm(support, _odd_quarter(rng)))
            rng.shuffle(terms)
            c = GadgetCircuit(n, tuple(terms))
            resp = ops.optimize(OptimizeRequest(circuit_text=format_gadget_text(c)))
            assert resp.t_after <= resp.t_before, (c, resp.t_before, resp.t_after)
            out = parse_gadget_text(resp.circuit_text)
            assert circuit_monomials(out) == circuit_monomials(c)
        # pinned cases: decomposing one width-4 gadget costs T gates by
        # design; a doubled gadget cancels outright
        single = "wires 4\ngadget 1/4pi 1 2 3 4\n"
        resp = ops.optimize(OptimizeRequest(circuit_text=single))
        assert (resp.t_before, resp.t_after) == (1, 14)
        doubled = "wires 4\ngadget 1/4pi 1 2 3 4\ngadget 7/4pi 1 2 3 4\n"
        resp = ops.optimize(OptimizeRequest(circuit_text=doubled))
        assert (resp.t_before, resp.t_after) == (2, 0)
