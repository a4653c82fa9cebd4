"""Phase polynomials over parity and AND monomials.

A gadget circuit is an ordered list of diagonal terms on n wires: parity
phase gadgets exp(i*a*(x_{s1} xor ... xor x_{sk})) and AND phases
exp(i*a*(x_{s1} & ... & x_{sk})).  Diagonals commute, so the semantic
content of a circuit is its monomial map: the coefficient, mod 2*pi, of
each AND monomial prod_{j in T} x_j in the exponent.

A parity over S expands into AND monomials with coefficients
a * (-2)^(|T|-1) for every nonempty T subseteq S: substituting
xor = sum - 2*prod pairwise and iterating doubles (and flips) the
coefficient once per extra variable.  That expansion drives both
decompositions here and the Mobius-style test oracles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .angles import PhaseAngle, ZERO, format_angle, parse_angle
from .derived import and_phase_diagram, phase_gadget_diagram
from .diagram import Diagram, compose_seq, parallel_wires
from .tensor import ResourceLimitError, Tensor, wire_budget


@dataclass(frozen=True)
class GadgetTerm:
    """Parity phase: exp(i * angle * xor of the support bits)."""

    support: frozenset[int]
    angle: PhaseAngle

    def __post_init__(self) -> None:
        _check_term_support(self.support)


@dataclass(frozen=True)
class AndPhaseTerm:
    """AND phase: exp(i * angle * product of the support bits)."""

    support: frozenset[int]
    angle: PhaseAngle

    def __post_init__(self) -> None:
        _check_term_support(self.support)


Term = GadgetTerm | AndPhaseTerm


def _check_term_support(support: frozenset[int]) -> None:
    if not isinstance(support, frozenset):
        raise TypeError("term support must be a frozenset of wire indices")
    if not support:
        raise ValueError("term support must be nonempty")
    if any(not isinstance(w, int) or w < 1 for w in support):
        raise ValueError("support wires are positive integers")


@dataclass(frozen=True)
class GadgetCircuit:
    n: int
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("wire count must be nonnegative")
        for t in self.terms:
            if max(t.support) > self.n:
                raise ValueError(f"term support {sorted(t.support)} exceeds {self.n} wires")


@dataclass(frozen=True)
class MonomialMap:
    """AND-monomial coefficients of a diagonal's exponent, mod 2*pi.

    Zero coefficients are never stored, so equal maps compare equal as
    dicts.
    """

    n: int
    coeffs: dict[frozenset[int], PhaseAngle]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialMap):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def items_sorted(self) -> list[tuple[frozenset[int], PhaseAngle]]:
        return sorted(self.coeffs.items(), key=lambda kv: tuple(sorted(kv[0])))


def _prune(coeffs: dict[frozenset[int], PhaseAngle]) -> dict[frozenset[int], PhaseAngle]:
    return {s: a for s, a in coeffs.items() if not a.is_zero}


def gadget_monomials(term: GadgetTerm, n: int | None = None) -> MonomialMap:
    """Expand one parity gadget into AND monomials: every nonempty subset
    T of the support gets angle * (-2)^(|T|-1)."""
    wires = sorted(term.support)
    if n is None:
        n = max(wires)
    coeffs: dict[frozenset[int], PhaseAngle] = {}
    for size in range(1, len(wires) + 1):
        factor = (-2) ** (size - 1)
        for sub in combinations(wires, size):
            coeffs[frozenset(sub)] = term.angle * factor
    return MonomialMap(n, _prune(coeffs))


def and_monomials(term: AndPhaseTerm, n: int | None = None) -> MonomialMap:
    if n is None:
        n = max(term.support)
    return MonomialMap(n, _prune({term.support: term.angle}))


def circuit_monomials(c: GadgetCircuit) -> MonomialMap:
    total: dict[frozenset[int], PhaseAngle] = {}
    for term in c.terms:
        part = (
            gadget_monomials(term, c.n)
            if isinstance(term, GadgetTerm)
            else and_monomials(term, c.n)
        )
        for s, a in part.coeffs.items():
            total[s] = total.get(s, ZERO) + a
    return MonomialMap(c.n, _prune(total))


def monomials_to_diagonal(m: MonomialMap, budget: int | None = None) -> Tensor:
    """The n-wire diagonal map with entry exp(i * sum of coefficients of
    monomials satisfied by the basis state).  Wire 1 is the most
    significant bit."""
    cap = wire_budget(budget)
    if 2 * m.n > cap:
        raise ResourceLimitError(
            f"diagonal on {m.n} wires needs {2 * m.n} open wires; budget is {cap}"
        )
    dim = 2**m.n
    diag = np.zeros(dim, dtype=complex)
    masks = {
        s: sum(1 << (m.n - w) for w in s) for s in m.coeffs
    }
    for x in range(dim):
        total = ZERO
        for s, angle in m.coeffs.items():
            if masks[s] & x == masks[s]:
                total = total + angle
        diag[x] = total.unit()
    arr = np.diag(diag).reshape((2,) * (2 * m.n))
    return Tensor(arr, m.n, m.n)


# ---------------------------------------------------------------------------
# decompositions


def decompose_parity_to_and(
    support: frozenset[int] | set[int], beta: PhaseAngle
) -> tuple[AndPhaseTerm, ...]:
    """Rewrite the parity gadget exp(i*beta*xor(S)) as one AND phase per
    nonempty subset, the size-k subsets at angle beta * (-2)^(k-1).

    Zero angles are kept: the result always has 2^|S| - 1 terms, ordered
    lexicographically by support.
    """
    s = frozenset(support)
    _check_term_support(s)
    wires = sorted(s)
    out = []
    for size in range(1, len(wires) + 1):
        factor = (-2) ** (size - 1)
        for sub in combinations(wires, size):
            out.append(AndPhaseTerm(frozenset(sub), beta * factor))
    out.sort(key=lambda t: tuple(sorted(t.support)))
    return tuple(out)


def pi4_gadget_terms(support: frozenset[int] | set[int]) -> tuple[GadgetTerm, ...]:
    """All n + C(n,2) + C(n,3) replacement gadgets for the pi/4 parity
    gadget on |support| = n >= 3 wires, zero angles included.

    Singles carry sigma = (n-2)(n-3)*pi/8, pairs tau = (3-n)*pi/4, triples
    pi/4.  Subsets of size >= 4 drop out: their expanded coefficients are
    multiples of 2*pi.
    """
    s = sorted(set(support))
    n = len(s)
    if n < 3:
        raise ValueError("pi/4 decomposition needs support of at least 3 wires")
    sigma = PhaseAngle.exact((n - 2) * (n - 3), 8)
    tau = PhaseAngle.exact(3 - n, 4)
    quarter = PhaseAngle.exact(1, 4)
    terms = [GadgetTerm(frozenset({w}), sigma) for w in s]
    terms += [GadgetTerm(frozenset(p), tau) for p in combinations(s, 2)]
    terms += [GadgetTerm(frozenset(t), quarter) for t in combinations(s, 3)]
    assert len(terms) == n + comb(n, 2) + comb(n, 3)
    return tuple(terms)


def decompose_pi4_gadget(
    support: frozenset[int] | set[int], n: int | None = None
) -> GadgetCircuit:
    """pi4_gadget_terms with zero-angle gadgets dropped, as a circuit."""
    s = frozenset(support)
    terms = tuple(t for t in pi4_gadget_terms(s) if not t.angle.is_zero)
    return GadgetCircuit(n if n is not None else max(s), terms)


def scaled_pi4_terms(term: GadgetTerm) -> tuple[GadgetTerm, ...]:
    """Replacement terms for a gadget at an odd multiple m of pi/4: the
    pi/4 decomposition with every angle scaled by m (the monomial
    coefficients are linear in the gadget angle)."""
    if not term.angle.is_odd_quarter:
        raise ValueError("scaled decomposition needs an odd multiple of pi/4")
    m = term.angle.numerator  # angle = m * pi/4 in lowest terms
    out = []
    for t in pi4_gadget_terms(term.support):
        scaled = t.angle * m
        if not scaled.is_zero:
            out.append(GadgetTerm(t.support, scaled))
    return tuple(out)


# ---------------------------------------------------------------------------
# fusion, T-count, optimization


def fuse_gadgets(c: GadgetCircuit) -> GadgetCircuit:
    """Merge same-kind terms with equal support (angles add mod 2*pi),
    drop vanished terms, and order by support then kind."""
    sums: dict[tuple[tuple[int, ...], int], PhaseAngle] = {}
    for term in c.terms:
        key = (tuple(sorted(term.support)), 0 if isinstance(term, GadgetTerm) else 1)
        sums[key] = sums.get(key, ZERO) + term.angle
    terms = []
    for (support, kind), angle in sorted(sums.items()):
        if angle.is_zero:
            continue
        cls = GadgetTerm if kind == 0 else AndPhaseTerm
        terms.append(cls(frozenset(support), angle))
    return GadgetCircuit(c.n, tuple(terms))


def t_count(c: GadgetCircuit) -> int:
    """Number of terms whose angle is an odd multiple of pi/4."""
    for term in c.terms:
        if not term.angle.is_exact:
            raise ValueError("T-count is defined for exact angles only")
    return sum(1 for term in c.terms if term.angle.is_odd_quarter)


@dataclass(frozen=True)
class OptimizeStats:
    t_before: int
    t_after: int
    terms_before: int
    terms_after: int


def optimize_circuit(c: GadgetCircuit) -> tuple[GadgetCircuit, OptimizeStats]:
    """Fuse, rewrite every wide odd-pi/4 parity gadget (support >= 4)
    through the pi/4 decomposition, and fuse again.

    The result's monomial map is checked against the input's before
    returning; a mismatch aborts, so callers can write output untested.
    """
    for term in c.terms:
        if not term.angle.is_exact:
            raise ValueError("optimization requires exact angles")
    t_before = t_count(c)
    fused = fuse_gadgets(c)
    rewritten: list[Term] = []
    for term in fused.terms:
        if (
            isinstance(term, GadgetTerm)
            and len(term.support) >= 4
            and term.angle.is_odd_quarter
        ):
            rewritten.extend(scaled_pi4_terms(term))
        else:
            rewritten.append(term)
    result = fuse_gadgets(GadgetCircuit(c.n, tuple(rewritten)))
    if circuit_monomials(result) != circuit_monomials(c):
        raise AssertionError("optimization changed the monomial map; aborting")
    return result, OptimizeStats(t_before, t_count(result), len(c.terms), len(result.terms))


# ---------------------------------------------------------------------------
# bridges and formats


def circuit_to_diagram(c: GadgetCircuit) -> Diagram:
    d = parallel_wires(c.n)
    for term in c.terms:
        if isinstance(term, GadgetTerm):
            step = phase_gadget_diagram(c.n, term.support, term.angle)
        else:
            step = and_phase_diagram(c.n, term.support, term.angle)
        d = compose_seq(d, step)
    return d


class GadgetTextError(ValueError):
    """Malformed gadget text; the message carries the line number."""


def parse_gadget_text(text: str) -> GadgetCircuit:
    """Parse the line format::

        # comment
        wires 4
        gadget 1/4pi 1 2 3
        andphase -1/2pi 1 2

    A file with no content lines is the empty circuit on zero wires.
    """
    n: int | None = None
    terms: list[Term] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if fields[0] != "wires" or len(fields) != 2:
                raise GadgetTextError(f"line {lineno}: expected 'wires N' header")
            try:
                n = int(fields[1])
            except ValueError:
                raise GadgetTextError(f"line {lineno}: bad wire count {fields[1]!r}") from None
            if n < 0:
                raise GadgetTextError(f"line {lineno}: wire count must be nonnegative")
            continue
        if fields[0] not in ("gadget", "andphase"):
            raise GadgetTextError(f"line {lineno}: unknown term kind {fields[0]!r}")
        if len(fields) < 3:
            raise GadgetTextError(f"line {lineno}: expected kind, angle, wires")
        try:
            angle = parse_angle(fields[1])
        except ValueError as exc:
            raise GadgetTextError(f"line {lineno}: {exc}") from None
        try:
            wires = [int(f) for f in fields[2:]]
        except ValueError:
            raise GadgetTextError(f"line {lineno}: wire indices must be integers") from None
        if len(set(wires)) != len(wires):
            raise GadgetTextError(f"line {lineno}: duplicate wire in support")
        if any(w < 1 or w > n for w in wires):
            raise GadgetTextError(f"line {lineno}: wire outside 1..{n}")
        cls = GadgetTerm if fields[0] == "gadget" else AndPhaseTerm
        try:
            terms.append(cls(frozenset(wires), angle))
        except ValueError as exc:
            raise GadgetTextError(f"line {lineno}: {exc}") from None
    if n is None:
        return GadgetCircuit(0, ())
    return GadgetCircuit(n, tuple(terms))


def format_gadget_text(c: GadgetCircuit) -> str:
    lines = [f"wires {c.n}"]
    for term in c.terms:
        kind = "gadget" if isinstance(term, GadgetTerm) else "andphase"
        wires = " ".join(str(w) for w in sorted(term.support))
        lines.append(f"{kind} {format_angle(term.angle)} {wires}")
    return "\n".join(lines) + "\n"


def monomials_to_json(m: MonomialMap) -> dict:
    terms = []
    for support, angle in m.items_sorted():
        if not angle.is_exact:
            raise ValueError("monomial JSON is defined for exact angles only")
        terms.append(
            {
                "subset": sorted(support),
                "num": angle.numerator,
                "den": angle.denominator,
            }
        )
    return {"n": m.n, "terms": terms}


def monomials_from_json(obj: dict) -> MonomialMap:
    if "n" not in obj or "terms" not in obj:
        raise ValueError("monomial JSON needs 'n' and 'terms'")
    n = int(obj["n"])
    coeffs: dict[frozenset[int], PhaseAngle] = {}
    for entry in obj["terms"]:
        try:
            support = frozenset(int(w) for w in entry["subset"])
            num, den = int(entry["num"]), int(entry["den"])
        except KeyError as exc:
            raise ValueError(f"monomial term missing {exc}") from None
        _check_term_support(support)
        if max(support) > n:
            raise ValueError(f"subset {sorted(support)} exceeds {n} wires")
        if support in coeffs:
            raise ValueError(f"duplicate subset {sorted(support)}")
        angle = PhaseAngle.exact(num, den)
        if not angle.is_zero:
            coeffs[support] = angle
    return MonomialMap(n, coeffs)


def monomials_json_text(m: MonomialMap) -> str:
    return json.dumps(monomials_to_json(m), indent=2, sort_keys=True) + "\n"
