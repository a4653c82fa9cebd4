"""Classical reversible circuits: semantics, the six rewrites with their
side conditions, equivalence checking, and the soundness harness."""

import numpy as np
import pytest
from conftest import permutation_matrix

from zxkit.qbc import (
    MAX_TABLE_WIRES,
    RESTRICTED_RULES,
    QbcCircuit,
    QbcGate,
    QbcTextError,
    RuleNotApplicableError,
    apply_circuit,
    apply_gate,
    apply_rule,
    bit,
    check_rule_soundness,
    circuits_equivalent,
    format_qbc_text,
    parse_qbc_text,
    to_zx,
    truth_table,
    zx_cross_check,
)
from zxkit.tensor import ResourceLimitError, equal_up_to_scalar, evaluate


def CX(t, *cs):
    return QbcGate(t, frozenset(cs))


def circ(n_data, n_anc, *gates):
    return QbcCircuit(n_data, n_anc, tuple(gates))


# gate and circuit basics


def test_gate_validation():
    with pytest.raises(ValueError):
        QbcGate(0, frozenset())
    with pytest.raises(ValueError):
        QbcGate(1, frozenset({1}))
    with pytest.raises(TypeError):
        QbcGate(1, {2})
    with pytest.raises(ValueError):
        QbcGate(1, frozenset({0}))


def test_circuit_validation():
    with pytest.raises(ValueError):
        circ(1, 0, CX(2))
    with pytest.raises(ValueError):
        circ(1, 0, CX(1, 5))
    assert circ(2, 1).is_ancilla(3)
    assert not circ(2, 1).is_ancilla(2)


def test_bit_msb_convention():
    # wire 1 is the most significant bit
    assert bit(0b100, 1, 3) == 1
    assert bit(0b100, 3, 3) == 0
    assert bit(0b001, 3, 3) == 1


def test_apply_gate():
    g = CX(3, 1, 2)  # Toffoli onto wire 3
    assert apply_gate(0b110, g, 3) == 0b111
    assert apply_gate(0b100, g, 3) == 0b100
    assert apply_gate(0b111, g, 3) == 0b110


def test_toffoli_truth_table():
    t = truth_table(circ(3, 0, CX(3, 1, 2)))
    assert t.perm == (0, 1, 2, 3, 4, 5, 7, 6)


def test_restricted_table():
    # writer copies data wire 1 onto the ancilla
    c = circ(2, 1, CX(3, 1))
    r = truth_table(c).restricted()
    assert r == {0: 0b000, 1: 0b010, 2: 0b101, 3: 0b111}


def test_truth_table_wire_cap():
    c = QbcCircuit(MAX_TABLE_WIRES + 1, 0, ())
    with pytest.raises(ResourceLimitError):
        truth_table(c)


def test_to_zx_matches_permutation():
    c = circ(3, 0, CX(3, 1, 2), CX(1, 3), CX(2))
    m = evaluate(to_zx(c)).matrix()
    want = permutation_matrix(truth_table(c).perm)
    assert equal_up_to_scalar(m, want).equal


# the six rewrites


def test_rule1_cancels_duplicates():
    c = circ(2, 0, CX(2, 1), CX(2, 1))
    assert apply_rule(c, 1, 0).gates == ()
    with pytest.raises(RuleNotApplicableError, match="identical"):
        apply_rule(circ(2, 0, CX(2, 1), CX(2)), 1, 0)


def test_rule2_commutes_disjoint():
    g1, g2 = CX(1, 2), CX(2)
    c = circ(2, 0, g1, g2)
    with pytest.raises(RuleNotApplicableError):
        apply_rule(c, 2, 0)  # g2 targets a control of g1
    g1, g2 = CX(1), CX(2)
    out = apply_rule(circ(2, 0, g1, g2), 2, 0)
    assert out.gates == (g2, g1)


def test_rule3_pull_left_with_merge():
    g1, g2 = CX(3, 1, 2), CX(2, 1)
    c = circ(3, 0, g1, g2)
    out = apply_rule(c, 3, 0)
    assert out.gates == (g2, g1, CX(3, 1))
    assert truth_table(out).perm == truth_table(c).perm


def test_rule3_side_conditions():
    with pytest.raises(RuleNotApplicableError, match="second gate to target"):
        apply_rule(circ(3, 0, CX(3, 1), CX(2, 1)), 3, 0)
    with pytest.raises(RuleNotApplicableError, match="first target"):
        apply_rule(circ(3, 0, CX(2, 1), CX(3, 1, 2)), 3, 0)


def test_rule4_push_right_with_merge():
    g1, g2 = CX(2, 1), CX(3, 1, 2)
    c = circ(3, 0, g1, g2)
    out = apply_rule(c, 4, 0)
    assert out.gates == (CX(3, 1), g2, g1)
    assert truth_table(out).perm == truth_table(c).perm


def test_rule5_reroutes_control_through_fresh_ancilla():
    writer, reader = CX(3, 1), CX(2, 1)
    c = circ(2, 1, writer, reader)
    out = apply_rule(c, 5, 0)
    assert out.gates == (writer, CX(2, 3))
    ok, _ = circuits_equivalent(c, out)
    assert ok
    # full tables differ: the rewrite is only valid on zeroed ancillas
    assert truth_table(c).perm != truth_table(out).perm


def test_rule5_side_conditions():
    with pytest.raises(RuleNotApplicableError, match="singleton"):
        apply_rule(circ(2, 1, CX(3, 1, 2), CX(2, 1)), 5, 0)
    with pytest.raises(RuleNotApplicableError, match="ancilla"):
        apply_rule(circ(3, 0, CX(3, 1), CX(2, 1)), 5, 0)
    with pytest.raises(RuleNotApplicableError, match="untargeted"):
        apply_rule(circ(2, 1, CX(3), CX(3, 1), CX(2, 1)), 5, 1)
    with pytest.raises(RuleNotApplicableError, match="different wire"):
        apply_rule(circ(2, 1, CX(3, 1), CX(3, 2)), 5, 0)
    with pytest.raises(RuleNotApplicableError, match="controlled by the copied"):
        apply_rule(circ(3, 1, CX(4, 1), CX(2, 3)), 5, 0)


def test_rule6_drops_fresh_ancilla_control():
    c = circ(1, 1, CX(1, 2))
    out = apply_rule(c, 6, 0)
    assert out.gates == ()
    ok, _ = circuits_equivalent(c, out)
    assert ok


def test_rule6_side_conditions():
    # ancilla written first: not fresh
    with pytest.raises(RuleNotApplicableError, match="untargeted"):
        apply_rule(circ(1, 1, CX(2), CX(1, 2)), 6, 1)
    # control on a data wire only
    with pytest.raises(RuleNotApplicableError):
        apply_rule(circ(2, 0, CX(2, 1)), 6, 0)


def test_apply_rule_position_and_id_errors():
    c = circ(2, 0, CX(1), CX(2))
    with pytest.raises(ValueError):
        apply_rule(c, 1, 5)
    with pytest.raises(ValueError):
        apply_rule(c, 1, -1)
    with pytest.raises(ValueError):
        apply_rule(c, 7, 0)


def test_apply_rule_leaves_input_untouched():
    c = circ(2, 0, CX(2, 1), CX(2, 1))
    apply_rule(c, 1, 0)
    assert c.gates == (CX(2, 1), CX(2, 1))


# equivalence


def test_equivalent_with_padding():
    # same data action, different ancilla counts
    a = circ(2, 0, CX(2, 1))
    b = circ(2, 2, CX(2, 1))
    ok, witness = circuits_equivalent(a, b)
    assert ok and witness is None


def test_inequivalent_reports_first_witness():
    a = circ(2, 0)
    b = circ(2, 0, CX(1))
    ok, witness = circuits_equivalent(a, b)
    assert not ok
    assert witness == 0


def test_data_bits_only_ignores_dirty_ancilla():
    # writer leaves the ancilla hot; data bits still agree
    a = circ(2, 1, CX(3, 1))
    b = circ(2, 1)
    ok, _ = circuits_equivalent(a, b)
    assert not ok
    ok, _ = circuits_equivalent(a, b, data_bits_only=True)
    assert ok


def test_equivalent_requires_same_data_count():
    with pytest.raises(ValueError):
        circuits_equivalent(circ(2, 0), circ(3, 0))


def test_zx_cross_check_full_and_restricted():
    c = circ(2, 0, CX(2, 1))
    out = apply_rule(circ(2, 0, CX(2, 1), CX(2, 1), CX(2, 1)), 1, 0)
    assert zx_cross_check(circ(2, 0, CX(2, 1), CX(2, 1), CX(2, 1)), out, restricted=False)
    lhs = circ(2, 1, CX(3, 1), CX(2, 1))
    rhs = apply_rule(lhs, 5, 0)
    assert zx_cross_check(lhs, rhs, restricted=True)
    with pytest.raises(ValueError):
        zx_cross_check(circ(2, 0), circ(2, 1), restricted=True)


# soundness harness


@pytest.mark.parametrize("rule", [1, 2, 3, 4, 5, 6])
def test_rule_soundness_quick(rule):
    report = check_rule_soundness(rule, trials=15, seed=4, max_wires=6)
    assert report.passed, report.to_json()
    assert len(report.records) == 15
    assert any(r.zx_checked for r in report.records)


@pytest.mark.parametrize("rule", [1, 3, 5])
def test_corrupted_rewrites_are_detected(rule):
    report = check_rule_soundness(rule, trials=15, seed=4, max_wires=6, corrupt=True)
    assert report.failures > 0


def test_soundness_report_json():
    report = check_rule_soundness(2, trials=3, seed=0, max_wires=5)
    obj = report.to_json()
    assert obj["rule"] == 2
    assert obj["trials"] == 3
    assert obj["passed"] is True
    assert len(obj["records"]) == 3


def test_restricted_rules_constant():
    assert RESTRICTED_RULES == {5, 6}


# text format


def test_parse_and_format_round_trip():
    text = "# doubled controls\nqbc data=2 anc=1\ncx 3 : 1 2\ncx 1\ncx 2 : 3\n"
    c = parse_qbc_text(text)
    assert c.n_data == 2 and c.n_anc == 1
    assert c.gates == (CX(3, 1, 2), CX(1), CX(2, 3))
    assert parse_qbc_text(format_qbc_text(c)) == c


def test_parse_errors_carry_line_numbers():
    with pytest.raises(QbcTextError, match="line 1"):
        parse_qbc_text("cx 1\n")
    with pytest.raises(QbcTextError, match="line 2"):
        parse_qbc_text("qbc data=2 anc=0\nhadamard 1\n")
    with pytest.raises(QbcTextError, match="line 2"):
        parse_qbc_text("qbc data=2 anc=0\ncx 5\n")
    with pytest.raises(QbcTextError, match="line 2"):
        parse_qbc_text("qbc data=2 anc=0\ncx 1 : 1\n")
    with pytest.raises(QbcTextError, match="line 2"):
        parse_qbc_text("qbc data=2 anc=0\ncx 1 : 2 2\n")
    with pytest.raises(QbcTextError, match="line 1"):
        parse_qbc_text("qbc data=-1 anc=0\n")
    with pytest.raises(QbcTextError, match="line 1"):
        parse_qbc_text("qbc data=2\n")
    with pytest.raises(QbcTextError):
        parse_qbc_text("")


def test_apply_circuit_matches_table():
    c = parse_qbc_text("qbc data=3 anc=0\ncx 3 : 1 2\ncx 1 : 3\n")
    t = truth_table(c)
    for x in range(8):
        assert apply_circuit(x, c) == t.perm[x]
