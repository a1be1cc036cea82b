"""Mod-2 cohomology of the real flag manifold Flag(R^N).

The ring is GF(2)[e_1..e_N] modulo the elementary symmetric polynomials.
Reduction uses the lex Groebner basis ``h_j(e_j, ..., e_N)`` (complete
homogeneous, leading term ``e_j^j``), so normal forms live in the span of
the standard monomials with ``exp(e_j) < j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, List

from .gf2poly import Gf2Poly, Monomial, mono_mul, monomial


@dataclass(frozen=True)
class FlagContext:
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")

    @property
    def top_degree(self) -> int:
        return self.N * (self.N - 1) // 2

    def top_monomial(self) -> Monomial:
        """The top standard monomial e_2 e_3^2 ... e_N^(N-1)."""
        return monomial(*range(self.N))

    def relation_generators(self) -> List[Gf2Poly]:
        return relation_generators(self)

    def normal_form(self, p: Gf2Poly) -> Gf2Poly:
        return normal_form(self, p)

    def top_class_value(self, p: Gf2Poly) -> int:
        return top_class_value(self, p)

    def is_zero_monomial_fact2(self, m: Monomial) -> bool:
        return is_zero_monomial_fact2(self, m)


def relation_generators(ctx: FlagContext) -> List[Gf2Poly]:
    """sigma_1, ..., sigma_N of e_1..e_N."""
    gens = []
    for m in range(1, ctx.N + 1):
        terms = []
        for idx in _subsets(ctx.N, m):
            exps = [0] * ctx.N
            for i in idx:
                exps[i] = 1
            terms.append(monomial(*exps))
        gens.append(Gf2Poly(terms))
    return gens


def _subsets(n: int, m: int):
    from itertools import combinations

    return combinations(range(n), m)


@lru_cache(maxsize=None)
def _tails(N: int, j: int) -> tuple:
    """Monomials of h_j(e_j..e_N) other than e_j^j (1-based j)."""
    out = []
    for combo in combinations_with_replacement(range(j - 1, N), j):
        exps = [0] * N
        for i in combo:
            exps[i] += 1
        if exps[j - 1] == j:
            continue
        out.append(monomial(*exps))
    return tuple(out)


@lru_cache(maxsize=None)
def _reducer(N: int) -> "_Reducer":
    return _Reducer(N)


class _Reducer:
    """Memoized monomial -> normal form map for one N."""

    def __init__(self, N: int):
        self.N = N
        self.top = N * (N - 1) // 2
        self.memo: Dict[Monomial, FrozenSet[Monomial]] = {}

    def reduce(self, m: Monomial) -> FrozenSet[Monomial]:
        hit = self.memo.get(m)
        if hit is not None:
            return hit
        if sum(m) > self.top:
            out: FrozenSet[Monomial] = frozenset()
        else:
            j = next((i for i, a in enumerate(m, start=1) if a >= i), None)
            if j is None:
                out = frozenset((m,))
            else:
                rest = list(m)
                rest[j - 1] -= j
                rest_m = monomial(*rest)
                acc: set = set()
                for t in _tails(self.N, j):
                    acc.symmetric_difference_update(self.reduce(mono_mul(rest_m, t)))
                out = frozenset(acc)
        self.memo[m] = out
        return out


def _check_vars(ctx: FlagContext, p: Gf2Poly) -> None:
    if p.num_vars() > ctx.N:
        raise ValueError(f"variable e_{p.num_vars()} out of range for N={ctx.N}")


def normal_form(ctx: FlagContext, p: Gf2Poly) -> Gf2Poly:
    """Canonical representative in the standard-monomial basis."""
    _check_vars(ctx, p)
    red = _reducer(ctx.N)
    acc: set = set()
    for m in p.terms:
        acc.symmetric_difference_update(red.reduce(m))
    return Gf2Poly._raw(acc)


def standard_monomials(ctx: FlagContext) -> List[Monomial]:
    """All monomials with exp(e_j) < j; there are N! of them."""
    from itertools import product

    return [monomial(*exps) for exps in product(*(range(j) for j in range(1, ctx.N + 1)))]


def is_zero_monomial_fact2(ctx: FlagContext, m: Monomial) -> bool:
    """Divisibility by one of the known vanishing products of distinct variables.

    For r >= 2 the shape asks for r distinct variables with exponents at
    least N-r+1, N-r+1, N-r+2, ..., N-1; for r = 1 it is e_i^N.
    """
    N = ctx.N
    if len(m) > N:
        raise ValueError(f"variable e_{len(m)} out of range for N={N}")
    exps = sorted(m, reverse=True)
    if exps and exps[0] >= N:
        return True
    for r in range(2, min(N, len(exps)) + 1):
        # top r exponents against N-1, N-2, ..., N-r+1, N-r+1
        need = list(range(N - 1, N - r, -1)) + [N - r + 1]
        if all(a >= b for a, b in zip(exps, need)):
            return True
    return False


def vanishing_pattern(N: int, indices) -> Monomial:
    """The vanishing monomial on the given ordered distinct variables.

    ``indices`` are 1-based; the first two get exponent N-r+1, then the
    exponents climb to N-1 on the last.
    """
    r = len(indices)
    if r == 0 or len(set(indices)) != r:
        raise ValueError("need distinct indices")
    exps = [0] * N
    if r == 1:
        exps[indices[0] - 1] = N
    else:
        exps[indices[0] - 1] = N - r + 1
        for pos, i in enumerate(indices[1:], start=1):
            exps[i - 1] = N - r + pos
    return monomial(*exps)


def _is_permutation_exponent(m: Monomial, N: int) -> bool:
    if len(m) > N:
        return False
    padded = list(m) + [0] * (N - len(m))
    return sorted(padded) == list(range(N))


def top_class_value(ctx: FlagContext, p: Gf2Poly) -> int:
    """Value of a top-degree class on the fundamental class of Flag(R^N).

    Counts the terms whose exponents are a permutation of 0..N-1; no
    reduction is needed because every other top-degree monomial is zero.
    """
    if not p.is_homogeneous(ctx.top_degree):
        raise ValueError(f"polynomial is not homogeneous of top degree {ctx.top_degree}")
    _check_vars(ctx, p)
    return sum(1 for m in p.terms if _is_permutation_exponent(m, ctx.N)) & 1


def staircase_monomial(n: int, k: int) -> Monomial:
    """e_1^(k-1) ... e_(k-1) e_(k+1)^(n-1) ... e_(n+k-1)."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    exps = [k - i for i in range(1, k)] + [0] + [n - j for j in range(1, n)]
    return monomial(*exps)


def absorption_sides(n: int, k: int, j: int):
    """Both sides of the power-sum absorption identity as polynomials."""
    if not (1 <= j <= k < n):
        raise ValueError(f"need 1 <= j <= k < n, got n={n}, k={k}, j={j}")
    N = n + k
    base = [0] * N
    for i in range(1, k - j + 1):
        base[i - 1] = k - i
    base[k - j] = j - 1
    for step in range(1, j):
        base[k - j + step] = N - j + step
    rhs_exps = list(base)
    rhs_exps[k - j] = N - j
    p = N - (2 * j - 1)
    power_sum = Gf2Poly(monomial(*([0] * (i - 1) + [p])) for i in range(1, k + 1))
    lhs = power_sum * Gf2Poly.from_monomial(monomial(*base))
    rhs = Gf2Poly.from_monomial(monomial(*rhs_exps))
    return lhs, rhs


def check_lemma_3_3(n: int, k: int, j: int) -> bool:
    lhs, rhs = absorption_sides(n, k, j)
    ctx = FlagContext(n + k)
    return normal_form(ctx, lhs) == normal_form(ctx, rhs)
