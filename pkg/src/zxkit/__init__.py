"""zxkit: a verified ZX-calculus kernel with phase-polynomial tooling.

Layers:

- ``angles``: exact rational-of-pi phases with a float fallback
- ``diagram``: open graphs of spiders, triangles, and boundaries
- ``tensor``: contraction to explicit tensors; equality up to scalar
- ``derived``: AND gates, controlled NOTs, phase gadgets, AND phases
- ``rules``: the rewrite-rule corpus and its validation harness
- ``phasepoly``: monomial maps, decompositions, T-count, optimization
- ``qbc``: reversible controlled-NOT circuits and their rewrites
- ``service``/``cli``: HTTP and command-line front ends over the same ops
"""

__version__ = "0.1.0"

from .angles import PI, ZERO, PhaseAngle, format_angle, parse_angle
from .diagram import (
    CompositionError,
    Diagram,
    DiagramBuilder,
    DiagramError,
    NodeKind,
    NodeType,
    cap,
    compose_chain,
    compose_par,
    compose_seq,
    cup,
    diagram_from_json,
    diagram_to_json,
    empty_diagram,
    identity_wire,
    make_generator,
    parallel_wires,
    permute_wires,
    swap,
    swap_colors,
    transpose,
    triangle,
    triangle_transposed,
    x_spider,
    z_spider,
)
from .derived import (
    and_gate,
    and_phase_diagram,
    cnot_diagram,
    copy_map,
    delete_map,
    make_derived,
    phase_gadget_diagram,
    xor_map,
)
from .phasepoly import (
    AndPhaseTerm,
    GadgetCircuit,
    GadgetTerm,
    MonomialMap,
    circuit_monomials,
    circuit_to_diagram,
    decompose_parity_to_and,
    decompose_pi4_gadget,
    format_gadget_text,
    fuse_gadgets,
    gadget_monomials,
    monomials_from_json,
    monomials_to_diagonal,
    monomials_to_json,
    optimize_circuit,
    parse_gadget_text,
    t_count,
)
from .qbc import (
    QbcCircuit,
    QbcGate,
    RuleNotApplicableError,
    apply_rule,
    check_rule_soundness,
    circuits_equivalent,
    format_qbc_text,
    parse_qbc_text,
    to_zx,
    truth_table,
)
from .rules import (
    RuleId,
    RuleInstance,
    RuleParams,
    catalog,
    instantiate_rule,
    perturb_rhs,
    validate_corpus,
    validate_instance,
)
from .tensor import (
    ResourceLimitError,
    ScalarMatch,
    Tensor,
    equal_up_to_scalar,
    evaluate,
    wire_budget,
)

__all__ = [
    "PI",
    "ZERO",
    "PhaseAngle",
    "format_angle",
    "parse_angle",
    "CompositionError",
    "Diagram",
    "DiagramBuilder",
    "DiagramError",
    "NodeKind",
    "NodeType",
    "cap",
    "compose_chain",
    "compose_par",
    "compose_seq",
    "cup",
    "diagram_from_json",
    "diagram_to_json",
    "empty_diagram",
    "identity_wire",
    "make_generator",
    "parallel_wires",
    "permute_wires",
    "swap",
    "swap_colors",
    "transpose",
    "triangle",
    "triangle_transposed",
    "x_spider",
    "z_spider",
    "and_gate",
    "and_phase_diagram",
    "cnot_diagram",
    "copy_map",
    "delete_map",
    "make_derived",
    "phase_gadget_diagram",
    "xor_map",
    "AndPhaseTerm",
    "GadgetCircuit",
    "GadgetTerm",
    "MonomialMap",
    "circuit_monomials",
    "circuit_to_diagram",
    "decompose_parity_to_and",
    "decompose_pi4_gadget",
    "format_gadget_text",
    "fuse_gadgets",
    "gadget_monomials",
    "monomials_from_json",
    "monomials_to_diagonal",
    "monomials_to_json",
    "optimize_circuit",
    "parse_gadget_text",
    "t_count",
    "QbcCircuit",
    "QbcGate",
    "RuleNotApplicableError",
    "apply_rule",
    "check_rule_soundness",
    "circuits_equivalent",
    "format_qbc_text",
    "parse_qbc_text",
    "to_zx",
    "truth_table",
    "RuleId",
    "RuleInstance",
    "RuleParams",
    "catalog",
    "instantiate_rule",
    "perturb_rhs",
    "validate_corpus",
    "validate_instance",
    "ResourceLimitError",
    "ScalarMatch",
    "Tensor",
    "equal_up_to_scalar",
    "evaluate",
    "wire_budget",
]
