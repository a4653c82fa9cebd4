"""Shared oracles for the test suite.

Everything here recomputes expected values from first principles (basis
enumeration, boolean evaluation, subset inversion) without touching the
diagram or contraction machinery under test.
"""

from __future__ import annotations

import math

import numpy as np
import pytest


def bits_msb(x: int, n: int) -> list[int]:
    """Bit list of x over n wires, wire 1 first (most significant)."""
    return [(x >> (n - 1 - k)) & 1 for k in range(n)]


def permutation_matrix(perm: tuple[int, ...]) -> np.ndarray:
    dim = len(perm)
    m = np.zeros((dim, dim), dtype=complex)
    for x, y in enumerate(perm):
        m[y, x] = 1.0
    return m


def diagonal_from_terms(n: int, terms: list[tuple[str, set[int], float]]) -> np.ndarray:
    """Dense diagonal for a list of (kind, support, angle-radians) terms,
    kind 'xor' or 'and', evaluated per basis state with plain floats."""
    dim = 2**n
    diag = np.zeros(dim, dtype=complex)
    for x in range(dim):
        b = bits_msb(x, n)
        total = 0.0
        for kind, support, theta in terms:
            vals = [b[w - 1] for w in support]
            sat = (sum(vals) % 2) if kind == "xor" else int(all(vals))
            total += theta * sat
        diag[x] = complex(math.cos(total), math.sin(total))
    return diag


def monomial_phases_by_inversion(n: int, diag: np.ndarray) -> dict[frozenset, float]:
    """Recover exponent coefficients from a unit diagonal by subset
    inversion: the coefficient of monomial T is the alternating sum of
    accumulated phases over the subsets of T.

    Phases are accumulated, not principal-valued: walking supports in
    size order keeps each subset's total consistent mod 2*pi.
    """
    phase: dict[frozenset, float] = {}
    coeff: dict[frozenset, float] = {}
    supports = sorted(
        (frozenset(w + 1 for w in range(n) if (x >> (n - 1 - w)) & 1) for x in range(2**n)),
        key=lambda s: (len(s), sorted(s)),
    )
    for support in supports:
        x = sum(1 << (n - w) for w in support)
        total = math.atan2(diag[x].imag, diag[x].real)
        partial = sum(c for t, c in coeff.items() if t and t <= support and t != support)
        # choose the representative of the observed phase closest to the
        # partial sum so the new coefficient is small and well defined
        k = round((partial - total) / (2 * math.pi))
        total += 2 * math.pi * k
        c = total - partial
        if support:
            coeff[support] = c
        phase[support] = total
    return {t: c % (2 * math.pi) for t, c in coeff.items()}


def circ_close(a: float, b: float, tol: float = 1e-9) -> bool:
    """Closeness of angles mod 2*pi."""
    d = abs(a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d) <= tol


@pytest.fixture
def rng_seeded():
    import random

    return random.Random(12345)
