"""Grassmannians G_k(F^{n+k}) and their mod-2 characteristic numbers.

All cohomology is computed on the flag manifold through the pullback
pi^*: H^*(G_k(R^{n+k})) -> H^*(Flag(R^{n+k})).  Complex and quaternionic
Grassmannians are handled only through bordism powers of the real one.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .flag import FlagContext, is_zero_monomial_fact2, top_class_value, staircase_monomial
from .gf2poly import Gf2Poly, monomial, mul_truncated, power
from .symmetric import apply_power_sum

Partition = Tuple[int, ...]


class Field(str, Enum):
    R = "R"
    C = "C"
    H = "H"

    @property
    def t(self) -> int:
        return {"R": 1, "C": 2, "H": 4}[self.value]


_DESC_RE = re.compile(r"^\s*([RCH])\s*:\s*k\s*=\s*(\d+)\s*,\s*n\s*=\s*(\d+)\s*$")


@dataclass(frozen=True, order=True)
class GrassmannianDesc:
    """G_k(F^{n+k}), the k-planes in F^{n+k}."""

    field: Field
    k: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "field", Field(self.field))
        if self.k < 1 or self.n < 1:
            raise ValueError(f"k and n must be positive, got k={self.k}, n={self.n}")

    @property
    def t(self) -> int:
        return self.field.t

    @property
    def N(self) -> int:
        return self.n + self.k

    @property
    def dim(self) -> int:
        return self.n * self.k * self.t

    @property
    def is_real(self) -> bool:
        return self.field is Field.R

    @property
    def standard_range(self) -> bool:
        """k < n, the range the independence statement is about."""
        return self.k < self.n

    def label(self) -> str:
        return f"G_{self.k}({self.field.value}^{self.N})"

    def to_text(self) -> str:
        return f"{self.field.value}:k={self.k},n={self.n}"

    @classmethod
    def parse(cls, text: str) -> "GrassmannianDesc":
        m = _DESC_RE.match(text)
        if not m:
            raise ValueError(f"bad descriptor {text!r}; expected e.g. 'R:k=2,n=4'")
        return cls(Field(m.group(1)), int(m.group(2)), int(m.group(3)))

    def __str__(self) -> str:
        return self.label()


def real(k: int, n: int) -> GrassmannianDesc:
    return GrassmannianDesc(Field.R, k, n)


def nu(m: int) -> int:
    """2-adic valuation of a positive integer."""
    if m < 1:
        raise ValueError(f"nu is defined for positive integers, got {m}")
    return (m & -m).bit_length() - 1


def bounds(g: GrassmannianDesc) -> bool:
    """Sankaran's criterion: G_k(F^{n+k}) bounds iff nu(n+k) > nu(k)."""
    return nu(g.N) > nu(g.k)


def realify(g: GrassmannianDesc) -> Tuple[GrassmannianDesc, int]:
    """The real Grassmannian with the same (k, n) and the bordism power t."""
    return real(g.k, g.n), g.t


def _require_real(g: GrassmannianDesc) -> None:
    if not g.is_real:
        raise ValueError(f"{g.label()} is not real; realify it first")


def _linear(i: int) -> Gf2Poly:
    return Gf2Poly.var(i)


def pullback_total_w(g: GrassmannianDesc) -> Gf2Poly:
    """pi^*(w) = prod_{i<=k} (1 + e_i)."""
    _require_real(g)
    out = Gf2Poly.one()
    for i in range(1, g.k + 1):
        out = out * (Gf2Poly.one() + _linear(i))
    return out


def pullback_total_wbar(g: GrassmannianDesc) -> Gf2Poly:
    """pi^*(wbar) = prod_{k<i<=n+k} (1 + e_i)."""
    _require_real(g)
    out = Gf2Poly.one()
    for i in range(g.k + 1, g.N + 1):
        out = out * (Gf2Poly.one() + _linear(i))
    return out


def min_alpha(N: int) -> int:
    """Smallest positive alpha with 2^alpha >= N."""
    return max(1, (N - 1).bit_length())


def pullback_tangent_sw(
    g: GrassmannianDesc, max_degree: Optional[int] = None, alpha: Optional[int] = None
) -> Gf2Poly:
    """pi^* of the total tangent Stiefel-Whitney class, truncated.

    prod_i (1+e_i)^(n+k) * prod_{i<j} (1+e_i+e_j)^(2^alpha - 2), which
    represents (1+e_i+e_j)^(-2) once 2^alpha >= n+k.
    """
    _require_real(g)
    if max_degree is None:
        max_degree = g.dim
    if alpha is None:
        alpha = min_alpha(g.N)
    if (1 << alpha) < g.N:
        raise ValueError(f"2^alpha must be >= n+k, got alpha={alpha}")
    one = Gf2Poly.one()
    out = one
    for i in range(1, g.k + 1):
        out = mul_truncated(out, power(one + _linear(i), g.N, max_degree), max_degree)
    pair_exp = (1 << alpha) - 2
    for i in range(1, g.k + 1):
        for j in range(i + 1, g.k + 1):
            factor = power(one + _linear(i) + _linear(j), pair_exp, max_degree)
            out = mul_truncated(out, factor, max_degree)
    return out


_W_LOCK = threading.Lock()


@lru_cache(maxsize=256)
def _sw_pieces(k: int, n: int, max_degree: int, alpha: int) -> Tuple[Gf2Poly, ...]:
    total = pullback_tangent_sw(real(k, n), max_degree, alpha)
    pieces: List[set] = [set() for _ in range(max_degree + 1)]
    for m in total.terms:
        pieces[sum(m)].add(m)
    return tuple(Gf2Poly._raw(p) for p in pieces)


def sw_class_pullbacks(
    g: GrassmannianDesc, max_degree: Optional[int] = None, alpha: Optional[int] = None
) -> Tuple[Gf2Poly, ...]:
    """(pi^*W_0, ..., pi^*W_max_degree) of the tangent bundle."""
    _require_real(g)
    if max_degree is None:
        max_degree = g.dim
    if alpha is None:
        alpha = min_alpha(g.N)
    with _W_LOCK:
        return _sw_pieces(g.k, g.n, max_degree, alpha)


def sp_pullback_closed_form(g: GrassmannianDesc, p: int) -> Gf2Poly:
    """pi^*(S_p): sum_{i<=k} e_i^p if n+k is odd and p < n+k, else 0."""
    _require_real(g)
    if p < 1:
        raise ValueError("p must be >= 1")
    if g.N % 2 == 1 and p < g.N:
        return Gf2Poly(monomial(*([0] * (i - 1) + [p])) for i in range(1, g.k + 1))
    return Gf2Poly.zero()


def sp_pullback_via_newton(
    g: GrassmannianDesc, p: int, alpha: Optional[int] = None, raw: bool = False
) -> Gf2Poly:
    """S_p evaluated on the pulled-back tangent classes W_1..W_p.

    Monomials caught by the flag-ring vanishing rule are dropped
    unless ``raw`` is set.
    """
    _require_real(g)
    if p < 1:
        raise ValueError("p must be >= 1")
    pieces = sw_class_pullbacks(g, p, alpha)
    value = apply_power_sum(p, pieces, max_degree=p)
    if raw:
        return value
    ctx = FlagContext(g.N)
    return value.filter(lambda m: not is_zero_monomial_fact2(ctx, m))


# -- partitions and SW vectors ---------------------------------------------------


@lru_cache(maxsize=None)
def partitions(d: int) -> Tuple[Partition, ...]:
    """Partitions of d in descending-lexicographic order."""
    if d < 0:
        raise ValueError("d must be non-negative")

    def gen(rest: int, largest: int):
        if rest == 0:
            yield ()
            return
        for part in range(min(rest, largest), 0, -1):
            for tail in gen(rest - part, part):
                yield (part,) + tail

    return tuple(gen(d, d))


def parse_partition(text: str) -> Partition:
    """Parse "4,2,1,1"; parts must be positive and weakly decreasing."""
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"bad partition {text!r}") from None
    if not parts or any(p < 1 for p in parts):
        raise ValueError(f"bad partition {text!r}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"partition {text!r} is not in descending order")
    return parts


def format_partition(lam: Partition) -> str:
    return ",".join(str(p) for p in lam)


@dataclass(frozen=True)
class SwVector:
    """All Stiefel-Whitney numbers of a d-dimensional bordism class."""

    dimension: int
    bits: Tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != len(partitions(self.dimension)):
            raise ValueError(
                f"need {len(partitions(self.dimension))} entries for d={self.dimension}, got {len(self.bits)}"
            )

    @classmethod
    def from_mapping(cls, d: int, values: Dict[Partition, int]) -> "SwVector":
        return cls(d, tuple(values.get(lam, 0) & 1 for lam in partitions(d)))

    @property
    def partitions(self) -> Tuple[Partition, ...]:
        return partitions(self.dimension)

    def __getitem__(self, lam: Partition) -> int:
        return self.bits[self.partitions.index(tuple(lam))]

    def is_zero(self) -> bool:
        return not any(self.bits)

    def as_int(self) -> int:
        """Bit i of the result is the entry for the i-th partition."""
        return sum(1 << i for i, b in enumerate(self.bits) if b)

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    def as_mapping(self) -> Dict[Partition, int]:
        return dict(zip(self.partitions, self.bits))


class _PackedBox:
    """Monomials in e_1..e_k packed into ints, pruned to a_i <= n+i-1.

    Any term past that bound stays past it after multiplication and can
    never reach the permutation pattern after the staircase is applied,
    so it is dropped early.  Each field carries an offset so that an
    exceeded bound shows up as a set guard bit after one integer addition.
    """

    def __init__(self, k: int, n: int):
        self.k, self.n = k, n
        self.bounds = [n + i - 1 for i in range(1, k + 1)]
        self.width = max(self.bounds).bit_length() + 1
        half = 1 << (self.width - 1)
        self.guard = sum(half << (self.width * i) for i in range(k))
        self.offset = sum((half - 1 - b) << (self.width * i) for i, b in enumerate(self.bounds))

    def encode(self, m) -> Optional[int]:
        if len(m) > self.k:
            raise ValueError("monomial uses variables beyond e_k")
        code = 0
        for i, a in enumerate(m):
            if a > self.bounds[i]:
                return None
            code |= a << (self.width * i)
        return code

    def encode_poly(self, p: Gf2Poly) -> frozenset:
        return frozenset(c for c in map(self.encode, p.terms) if c is not None)

    def final_codes(self) -> frozenset:
        """Offset codes of e^a with {a_i + k - i} = {n, ..., n+k-1}."""
        out = set()
        for perm in permutations(range(self.n, self.n + self.k)):
            a = [perm[i - 1] - (self.k - i) for i in range(1, self.k + 1)]
            if min(a) < 0:
                continue
            out.add(self.encode(a) + self.offset)
        return frozenset(out)

    def mul(self, prefix: frozenset, piece: frozenset) -> frozenset:
        guard = self.guard
        acc: set = set()
        for a in prefix:
            acc.symmetric_difference_update([c for c in [a + b for b in piece] if not c & guard])
        return frozenset(acc)


def _fast_sw_numbers(k: int, n: int, alpha: int, wanted: Optional[Sequence[Partition]] = None) -> Dict[Partition, int]:
    """SW numbers of G_k(R^{n+k}) for all (or the wanted) partitions of nk."""
    d = n * k
    box = _PackedBox(k, n)
    pieces = [box.encode_poly(w) for w in sw_class_pullbacks(real(k, n), d, alpha)]
    final = box.final_codes()
    start = frozenset((box.offset,))
    wanted_set = None if wanted is None else set(wanted)
    prefixes = None
    if wanted_set is not None:
        prefixes = {lam[:i] for lam in wanted_set for i in range(len(lam) + 1)}
    out: Dict[Partition, int] = {}

    def rec(parts: Partition, acc: frozenset, largest: int, rest: int) -> None:
        for part in range(min(largest, rest), 0, -1):
            nxt = parts + (part,)
            if prefixes is not None and nxt not in prefixes:
                continue
            piece = pieces[part]
            if not piece:
                continue
            if part == rest:
                # only the permutation-pattern coefficients are needed
                count = 0
                for f in final:
                    for a in acc:
                        if (f - a) in piece:
                            count += 1
                out[nxt] = count & 1
            else:
                prod = box.mul(acc, piece)
                if prod:
                    rec(nxt, prod, part, rest - part)

    if d == 0:
        return {(): 1}
    rec((), start, d, d)
    return out


def sw_number(
    g: GrassmannianDesc, lam: Sequence[int], method: str = "fast", alpha: Optional[int] = None
) -> int:
    """<W_lam1 ... W_lamr, [G_k(R^{n+k})]>.

    ``method="fast"`` works in e_1..e_k only; ``method="flag"`` multiplies by
    the full staircase monomial and evaluates on Flag(R^{n+k}).
    """
    _require_real(g)
    lam = tuple(sorted((int(x) for x in lam), reverse=True))
    if sum(lam) != g.dim or any(x < 1 for x in lam):
        raise ValueError(f"partition {lam} does not have weight {g.dim}")
    if alpha is None:
        alpha = min_alpha(g.N)
    if method == "fast":
        return _fast_sw_numbers(g.k, g.n, alpha, [lam]).get(lam, 0)
    if method == "flag":
        pieces = sw_class_pullbacks(g, g.dim, alpha)
        prod = Gf2Poly.one()
        for part in lam:
            prod = mul_truncated(prod, pieces[part], g.dim)
            if not prod:
                return 0
        prod = prod * Gf2Poly.from_monomial(staircase_monomial(g.n, g.k))
        return top_class_value(FlagContext(g.N), prod)
    raise ValueError(f"unknown method {method!r}")


_VEC_CACHE: Dict[tuple, SwVector] = {}
_VEC_LOCK = threading.Lock()


def sw_vector(g: GrassmannianDesc, method: str = "fast", alpha: Optional[int] = None) -> SwVector:
    """SW numbers over every partition of nk, in canonical partition order."""
    _require_real(g)
    if alpha is None:
        alpha = min_alpha(g.N)
    key = (g.k, g.n, alpha, method)
    with _VEC_LOCK:
        hit = _VEC_CACHE.get(key)
    if hit is not None:
        return hit
    if method == "fast":
        vec = SwVector.from_mapping(g.dim, _fast_sw_numbers(g.k, g.n, alpha))
    elif method == "flag":
        vec = SwVector(g.dim, tuple(sw_number(g, lam, "flag", alpha) for lam in partitions(g.dim)))
    else:
        raise ValueError(f"unknown method {method!r}")
    with _VEC_LOCK:
        _VEC_CACHE.setdefault(key, vec)
    return vec


def _insert(parts: Partition, x: int) -> Partition:
    if x == 0:
        return parts
    i = 0
    while i < len(parts) and parts[i] >= x:
        i += 1
    return parts[:i] + (x,) + parts[i:]


def product_sw_vector(v1: SwVector, v2: SwVector) -> SwVector:
    """SW numbers of M x N from those of M and N.

    Uses w(M x N) = w(M) w(N): each factor W_i splits as
    sum_j w_j(M) w_{i-j}(N), the bidegree (d1, d2) part of a monomial is
    kept and evaluated as <a, [M]> <b, [N]>.
    """
    d1, d2 = v1.dimension, v2.dimension
    D = d1 + d2
    if v1.is_zero() or v2.is_zero():
        return SwVector(D, (0,) * len(partitions(D)))
    val1, val2 = v1.as_mapping(), v2.as_mapping()
    out: Dict[Partition, int] = {}

    # state: set of (mu, rho, |mu|) with odd coefficient
    def rec(parts: Partition, state: frozenset, largest: int, rest: int) -> None:
        if rest == 0:
            out[parts] = sum(val1.get(mu, 0) & val2.get(rho, 0) for mu, rho, _ in state) & 1
            return
        for part in range(min(largest, rest), 0, -1):
            acc: set = set()
            for mu, rho, s1 in state:
                s2 = (D - rest) - s1
                for j in range(part + 1):
                    if s1 + j > d1 or s2 + part - j > d2:
                        continue
                    key = (_insert(mu, j), _insert(rho, part - j), s1 + j)
                    if key in acc:
                        acc.remove(key)
                    else:
                        acc.add(key)
            if acc:
                rec(parts + (part,), frozenset(acc), part, rest - part)

    rec((), frozenset({((), (), 0)}), D, D)
    return SwVector.from_mapping(D, out)


def power_sw_vector(v: SwVector, t: int) -> SwVector:
    """SW vector of the t-fold product M x ... x M for t in {1, 2, 4}."""
    if t not in (1, 2, 4):
        raise ValueError(f"t must be 1, 2 or 4, got {t}")
    out = v
    for _ in range(t - 1):
        out = product_sw_vector(out, v)
    return out


def bordism_sw_vector(g: GrassmannianDesc) -> SwVector:
    """SW vector of [G_k(F^{n+k})] = [G_k(R^{n+k})]^t for any field."""
    base, t = realify(g)
    return power_sw_vector(sw_vector(base), t)
