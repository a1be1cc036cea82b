"""Elementary symmetric polynomials and mod-2 Newton identities.

Abstract symmetric-function polynomials reuse :class:`Gf2Poly`, reading
variable ``i`` as ``sigma_i`` (weight ``i``).
"""

from __future__ import annotations

import threading
from typing import Dict, List, Optional, Sequence

from .gf2poly import Gf2Poly, monomial, power, substitute


def elementary_symmetric_series(
    max_m: int,
    generators: Sequence[Gf2Poly],
    multiplicities: Optional[Sequence[int]] = None,
    max_degree: Optional[int] = None,
) -> List[Gf2Poly]:
    """[sigma_0, ..., sigma_max_m] of the generators, counted with multiplicity.

    Expands prod_i (1 + g_i z)^{mult_i} truncated at z^max_m.  A multiplicity
    is split into powers of two, since (1 + g z)^(2^s) = 1 + g^(2^s) z^(2^s).
    """
    if max_m < 0:
        raise ValueError("max_m must be non-negative")
    if multiplicities is None:
        multiplicities = [1] * len(generators)
    if len(multiplicities) != len(generators):
        raise ValueError("generators and multiplicities differ in length")
    coeffs = [Gf2Poly.one()] + [Gf2Poly.zero()] * max_m
    for g, mult in zip(generators, multiplicities):
        if mult < 0:
            raise ValueError("negative multiplicity")
        s = 0
        while mult >> s:
            if (mult >> s) & 1:
                step = 1 << s
                if step <= max_m:
                    g_pow = power(g, step, max_degree)
                    for i in range(max_m, step - 1, -1):
                        if coeffs[i - step]:
                            coeffs[i] = coeffs[i] + (coeffs[i - step] * g_pow).truncate(max_degree)
            s += 1
    return coeffs


def elementary_symmetric(
    m: int,
    generators: Sequence[Gf2Poly],
    multiplicities: Optional[Sequence[int]] = None,
    max_degree: Optional[int] = None,
) -> Gf2Poly:
    """Coefficient of z^m in prod (1 + g_i z)."""
    return elementary_symmetric_series(m, generators, multiplicities, max_degree)[m]


_S_CACHE: Dict[int, Gf2Poly] = {}
_S_LOCK = threading.Lock()


def power_sum_in_elementary(p: int) -> Gf2Poly:
    """S_p as a polynomial in sigma_1..sigma_p over GF(2).

    Newton's recurrence with signs dropped:
    S_p = sum_{i<p} sigma_i S_{p-i} + (p mod 2) sigma_p.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    with _S_LOCK:
        for q in range(1, p + 1):
            if q in _S_CACHE:
                continue
            acc = Gf2Poly.var(q) if q % 2 else Gf2Poly.zero()
            for i in range(1, q):
                acc = acc + Gf2Poly.var(i) * _S_CACHE[q - i]
            _S_CACHE[q] = acc
        return _S_CACHE[p]


def weighted_degrees(s: Gf2Poly) -> set:
    """Set of weighted degrees sum(i * exp(sigma_i)) over the terms of s."""
    return {sum(i * a for i, a in enumerate(m, start=1)) for m in s.terms}


def apply_power_sum(p: int, sigmas: Sequence[Gf2Poly], max_degree: Optional[int] = None) -> Gf2Poly:
    """Evaluate S_p at sigma_m -> sigmas[m] (``sigmas[0]`` is ignored)."""
    s_p = power_sum_in_elementary(p)
    assignment = {m: (sigmas[m] if m < len(sigmas) else Gf2Poly.zero()) for m in range(1, p + 1)}
    return substitute(s_p, assignment, max_degree)


def verify_newton(q: int, p: int) -> bool:
    """Check S_p(sigma(e_1..e_q)) == e_1^p + ... + e_q^p by expansion."""
    if not (q >= p >= 1):
        raise ValueError(f"need q >= p >= 1, got q={q}, p={p}")
    gens = [Gf2Poly.var(i) for i in range(1, q + 1)]
    sigmas = elementary_symmetric_series(p, gens)
    lhs = apply_power_sum(p, sigmas)
    rhs = Gf2Poly(monomial(*([0] * (i - 1) + [p])) for i in range(1, q + 1))
    return lhs == rhs
