"""Sparse multivariate polynomials over GF(2).

A monomial is a tuple of exponents ``(a_1, ..., a_r)`` for the variables
``e_1 .. e_r`` with trailing zeros trimmed, so ``e_2`` is ``(0, 1)`` and the
constant monomial is ``()``.  A polynomial is the set of monomials carrying
coefficient 1; inserting a monomial twice cancels it.

Truncation degrees are always explicit arguments.  ``None`` means no
truncation.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping, Optional, Tuple

Monomial = Tuple[int, ...]

ONE: Monomial = ()


def monomial(*exponents: int) -> Monomial:
    """Build a canonical (trimmed) monomial from an exponent sequence."""
    exps = [int(a) for a in exponents]
    if any(a < 0 for a in exps):
        raise ValueError(f"negative exponent in {exps}")
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    # the longer tuple ends in a nonzero entry, so no re-trimming is needed
    return tuple([x + y for x, y in zip(a, b)]) + a[len(b):]


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    if len(a) > len(b):
        return False
    return all(x <= y for x, y in zip(a, b))


def mono_str(m: Monomial, var: str = "e") -> str:
    if not m:
        return "1"
    parts = []
    for i, a in enumerate(m, start=1):
        if a == 1:
            parts.append(f"{var}{i}")
        elif a > 1:
            parts.append(f"{var}{i}^{a}")
    return "*".join(parts)


def _grlex_key(m: Monomial) -> tuple:
    return (sum(m), m)


class Gf2Poly:
    """Immutable sparse polynomial over GF(2)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Monomial] = ()):
        acc: set = set()
        for t in terms:
            t = monomial(*t)
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
        self._terms = frozenset(acc)
        self._hash = None

    @classmethod
    def _raw(cls, terms) -> "Gf2Poly":
        # terms already canonical and duplicate-free
        p = cls.__new__(cls)
        p._terms = frozenset(terms)
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "Gf2Poly":
        return cls._raw(())

    @classmethod
    def one(cls) -> "Gf2Poly":
        return cls._raw((ONE,))

    @classmethod
    def var(cls, i: int, exponent: int = 1) -> "Gf2Poly":
        """The polynomial ``e_i^exponent`` (variables are 1-based)."""
        if i < 1:
            raise ValueError(f"variable index must be >= 1, got {i}")
        return cls._raw((monomial(*([0] * (i - 1) + [exponent])),))

    @classmethod
    def from_monomial(cls, m: Monomial) -> "Gf2Poly":
        return cls._raw((monomial(*m),))

    # -- container protocol -------------------------------------------------

    @property
    def terms(self) -> frozenset:
        return self._terms

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, m) -> bool:
        return monomial(*m) in self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Gf2Poly.one() if other % 2 else Gf2Poly.zero()
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def sorted_terms(self) -> list:
        """Terms in descending graded-lexicographic order (e_1 > e_2 > ...)."""
        return sorted(self._terms, key=_grlex_key, reverse=True)

    def to_str(self, var: str = "e") -> str:
        if not self._terms:
            return "0"
        return " + ".join(mono_str(m, var) for m in self.sorted_terms())

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Gf2Poly({self.to_str()!r})"

    # -- degree queries ----------------------------------------------------

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def homogeneous_part(self, degree: int) -> "Gf2Poly":
        return Gf2Poly._raw(m for m in self._terms if sum(m) == degree)

    def truncate(self, max_degree: Optional[int]) -> "Gf2Poly":
        if max_degree is None:
            return self
        return Gf2Poly._raw(m for m in self._terms if sum(m) <= max_degree)

    def num_vars(self) -> int:
        """Index of the highest variable occurring (0 for constants)."""
        return max((len(m) for m in self._terms), default=0)

    def filter(self, keep: Callable[[Monomial], bool]) -> "Gf2Poly":
        return Gf2Poly._raw(m for m in self._terms if keep(m))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return Gf2Poly._raw(self._terms ^ other._terms)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return mul_truncated(self, other, None)

    def __pow__(self, exponent: int) -> "Gf2Poly":
        return power(self, exponent, None)

    def frobenius(self, max_degree: Optional[int] = None) -> "Gf2Poly":
        """Square by doubling every exponent (characteristic 2)."""
        out = (tuple(2 * a for a in m) for m in self._terms)
        if max_degree is None:
            return Gf2Poly._raw(out)
        return Gf2Poly._raw(m for m in out if sum(m) <= max_degree)


def add(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return p + q


def mul(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return mul_truncated(p, q, None)


def mul_truncated(p: Gf2Poly, q: Gf2Poly, max_degree: Optional[int]) -> Gf2Poly:
    """Product ``p*q`` with every term of degree above ``max_degree`` dropped."""
    if max_degree is not None and max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    a_terms, b_terms = p.terms, q.terms
    if not a_terms or not b_terms:
        return Gf2Poly.zero()
    if len(a_terms) < len(b_terms):
        a_terms, b_terms = b_terms, a_terms
    acc: set = set()
    toggle = acc.symmetric_difference_update
    if max_degree is None:
        for b in b_terms:
            toggle([mono_mul(a, b) for a in a_terms])
    else:
        a_deg = [(a, sum(a)) for a in a_terms]
        for b in b_terms:
            room = max_degree - sum(b)
            if room < 0:
                continue
            toggle([mono_mul(a, b) for a, da in a_deg if da <= room])
    return Gf2Poly._raw(acc)


def power(p: Gf2Poly, exponent: int, max_degree: Optional[int] = None) -> Gf2Poly:
    """Truncated power by binary decomposition; squarings use Frobenius."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    result = Gf2Poly.one()
    base = p.truncate(max_degree)
    while exponent:
        if exponent & 1:
            result = mul_truncated(result, base, max_degree)
        exponent >>= 1
        if exponent:
            base = base.frobenius(max_degree)
    return result


def substitute(
    p: Gf2Poly,
    assignment: Mapping[int, Gf2Poly],
    max_degree: Optional[int] = None,
) -> Gf2Poly:
    """Simultaneously replace each variable ``i`` of ``p`` by ``assignment[i]``.

    ``max_degree`` truncates the expanded result by ordinary degree, which is
    only meaningful when the images are homogeneous of the right degrees.
    """
    powers: dict = {}

    def image_power(i: int, a: int) -> Gf2Poly:
        key = (i, a)
        if key not in powers:
            try:
                img = assignment[i]
            except KeyError:
                raise ValueError(f"no assignment for variable {i}") from None
            powers[key] = power(img, a, max_degree)
        return powers[key]

    acc: set = set()
    for m in p.terms:
        term = Gf2Poly.one()
        for i, a in enumerate(m, start=1):
            if a:
                term = mul_truncated(term, image_power(i, a), max_degree)
                if not term:
                    break
        acc.symmetric_difference_update(term.terms)
    return Gf2Poly._raw(acc)


def parse_poly(text: str, var: str = "e") -> Gf2Poly:
    """Parse the rendering produced by :meth:`Gf2Poly.to_str`."""
    text = text.strip()
    if text == "0":
        return Gf2Poly.zero()
    terms = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if chunk == "1":
            terms.append(ONE)
            continue
        exps: dict = {}
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor.startswith(var):
                raise ValueError(f"bad factor {factor!r}")
            name, _, exp = factor[len(var):].partition("^")
            idx = int(name)
            exps[idx] = exps.get(idx, 0) + (int(exp) if exp else 1)
        n = max(exps)
        terms.append(monomial(*[exps.get(i, 0) for i in range(1, n + 1)]))
    return Gf2Poly(terms)
