"""Model-to-model operations behind the service routes.

Each function takes a request model and returns a response model, raising
core exceptions (ValueError subclasses, ResourceLimitError) on bad input;
the app layer and the CLI translate those uniformly.
"""

from __future__ import annotations

from ..angles import parse_angle
from ..diagram import diagram_from_json
from ..phasepoly import (
    AndPhaseTerm,
    GadgetCircuit,
    GadgetTerm,
    circuit_monomials,
    decompose_parity_to_and,
    decompose_pi4_gadget,
    format_gadget_text,
    monomials_to_json,
    optimize_circuit,
    parse_gadget_text,
    scaled_pi4_terms,
    t_count,
)
from ..qbc import (
    check_rule_soundness,
    circuits_equivalent,
    parse_qbc_text,
)
from ..rules import catalog as rules_catalog
from ..rules import validate_corpus
from ..tensor import Tensor, equal_up_to_scalar, evaluate
from .models import (
    CatalogEntry,
    DecomposeRequest,
    DecomposeResponse,
    EvalRequest,
    EvalResponse,
    OptimizeRequest,
    OptimizeResponse,
    QbcCheckRequest,
    QbcCheckResponse,
    QbcSoundnessRequest,
    QbcSoundnessResponse,
    RuleCheckRecord,
    RuleValidationRequest,
    RuleValidationResponse,
    ScalarMatchModel,
)


def validate_rules(req: RuleValidationRequest) -> RuleValidationResponse:
    report = validate_corpus(
        samples=req.samples,
        seed=req.seed,
        max_arity=req.max_arity,
        tol=req.tol,
        only=set(req.only) if req.only is not None else None,
    )
    records = [
        RuleCheckRecord(
            rule=r.rule,
            variant=r.variant,
            angles=list(r.angles),
            arities=list(r.arities),
            color_swapped=r.color_swapped,
            equal=r.match.equal,
            residual=r.match.residual,
            elapsed=r.elapsed if req.include_timings else None,
        )
        for r in report.records
    ]
    return RuleValidationResponse(
        samples=report.samples,
        seed=report.seed,
        max_arity=report.max_arity,
        tol=report.tol,
        passed=report.passed,
        checks=len(report.records),
        failures=len(report.failures),
        records=records,
    )


def rule_catalog() -> list[CatalogEntry]:
    return [CatalogEntry(**entry) for entry in rules_catalog()]


def _require_exact(c: GadgetCircuit) -> None:
    for term in c.terms:
        if not term.angle.is_exact:
            raise ValueError("decomposition requires exact angles")


def _inline_support(req: DecomposeRequest) -> frozenset[int]:
    if req.wires is None:
        raise ValueError("inline decomposition needs a wire count")
    if req.support:
        support = frozenset(req.support)
        if min(support) < 1 or max(support) > req.wires:
            raise ValueError(f"support must lie within 1..{req.wires}")
        return support
    return frozenset(range(1, req.wires + 1))


def decompose(req: DecomposeRequest) -> DecomposeResponse:
    if req.circuit_text is not None:
        base = parse_gadget_text(req.circuit_text)
        _require_exact(base)
        out_terms: list[GadgetTerm | AndPhaseTerm] = []
        for term in base.terms:
            if not isinstance(term, GadgetTerm):
                out_terms.append(term)
            elif req.mode == "parity-to-and":
                out_terms.extend(decompose_parity_to_and(term.support, term.angle))
            elif len(term.support) >= 3 and term.angle.is_odd_quarter:
                out_terms.extend(scaled_pi4_terms(term))
            else:
                out_terms.append(term)
        result = GadgetCircuit(base.n, tuple(out_terms))
    elif req.mode == "parity-to-and":
        support = _inline_support(req)
        if req.beta is None:
            raise ValueError("parity-to-and decomposition needs an angle")
        beta = parse_angle(req.beta)
        if not beta.is_exact:
            raise ValueError("decomposition requires exact angles")
        base = GadgetCircuit(req.wires, (GadgetTerm(support, beta),))
        result = GadgetCircuit(req.wires, decompose_parity_to_and(support, beta))
    else:
        support = _inline_support(req)
        if len(support) < 3:
            raise ValueError("pi/4 decomposition needs support of at least 3 wires")
        quarter = parse_angle("1/4pi")
        base = GadgetCircuit(req.wires, (GadgetTerm(support, quarter),))
        result = decompose_pi4_gadget(support, req.wires)
    if circuit_monomials(result) != circuit_monomials(base):
        raise AssertionError("decomposition changed the monomial map; aborting")
    return DecomposeResponse(
        circuit_text=format_gadget_text(result),
        monomials=monomials_to_json(circuit_monomials(result)),
        t_count=t_count(result),
    )


def optimize(req: OptimizeRequest) -> OptimizeResponse:
    c = parse_gadget_text(req.circuit_text)
    result, stats = optimize_circuit(c)
    return OptimizeResponse(
        circuit_text=format_gadget_text(result),
        t_before=stats.t_before,
        t_after=stats.t_after,
        terms_before=stats.terms_before,
        terms_after=stats.terms_after,
        monomials=monomials_to_json(circuit_monomials(result)),
    )


def qbc_check(req: QbcCheckRequest) -> QbcCheckResponse:
    a = parse_qbc_text(req.circuit_a)
    b = parse_qbc_text(req.circuit_b)
    equal, witness = circuits_equivalent(a, b, data_bits_only=req.data_bits_only)
    bits = None
    if witness is not None:
        bits = format(witness, f"0{max(a.n_data, 1)}b")
    return QbcCheckResponse(equivalent=equal, witness=witness, witness_bits=bits)


def qbc_soundness(req: QbcSoundnessRequest) -> QbcSoundnessResponse:
    report = check_rule_soundness(
        rule=req.rule,
        trials=req.trials,
        seed=req.seed,
        max_wires=req.max_wires,
        tol=req.tol,
        zx_max_wires=req.zx_max_wires,
        corrupt=req.corrupt,
    )
    payload = report.to_json()
    return QbcSoundnessResponse(**payload)


def _match_model(match) -> ScalarMatchModel:
    return ScalarMatchModel(
        equal=match.equal,
        scalar_re=match.scalar.real if match.scalar is not None else None,
        scalar_im=match.scalar.imag if match.scalar is not None else None,
        residual=match.residual,
    )


def eval_diagram(req: EvalRequest) -> EvalResponse:
    d = diagram_from_json(req.diagram)
    t = evaluate(d, req.budget)
    match = None
    if req.compare is not None:
        other = diagram_from_json(req.compare)
        match = _match_model(equal_up_to_scalar(t, evaluate(other, req.budget), req.tol))
    return EvalResponse(tensor=t.to_json(), match=match)
