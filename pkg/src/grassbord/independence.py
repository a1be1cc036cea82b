"""Linear independence of non-bounding Grassmannians in unoriented bordism.

Two independent routes:

* ``matrix-induction`` follows the triangular-matrix argument on the real
  members: the f_l matrix on O(d) is unitriangular with zero E(d) columns,
  and E(d) is handled by induction through fourth powers from G(d/4).
* ``oracle`` stacks the full Stiefel-Whitney vectors of every member of the
  all-field G(d) and computes a GF(2) rank.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .flag import FlagContext, staircase_monomial, top_class_value
from .gf2poly import Gf2Poly
from .grassmann import (
    Field,
    GrassmannianDesc,
    SwVector,
    bordism_sw_vector,
    nu,
    partitions,
    power_sw_vector,
    real,
    sp_pullback_closed_form,
    sw_vector,
)

METHODS = ("matrix-induction", "oracle", "both")
DEFAULT_MAX_DIM = 24


class DimensionGuardError(ValueError):
    """Raised when a computation would exceed the default dimension guard."""


# -- GF(2) matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class Gf2Matrix:
    """Bit matrix; row ``i`` is an int whose bit ``j`` is entry (i, j)."""

    rows: int
    cols: int
    data: Tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        limit = 1 << self.cols
        if any(r < 0 or r >= limit for r in self.data):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "Gf2Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            data.append(sum(1 << j for j, b in enumerate(r) if b & 1))
        return cls(len(rows), cols, tuple(data))

    @classmethod
    def from_bitstrings(cls, rows: Sequence[str], cols: Optional[int] = None) -> "Gf2Matrix":
        return cls.from_lists([[int(c) for c in r] for r in rows], cols)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return (self.data[i] >> j) & 1

    def row_bits(self, i: int) -> str:
        return "".join(str((self.data[i] >> j) & 1) for j in range(self.cols))

    def bitstrings(self) -> List[str]:
        return [self.row_bits(i) for i in range(self.rows)]

    def to_lists(self) -> List[List[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def rank(self) -> int:
        return gf2_rank(self)

    def is_lower_unitriangular(self, size: Optional[int] = None) -> bool:
        """The leading size x size block has ones on and zeros above the diagonal."""
        if size is None:
            size = self.rows
        if size > self.rows or size > self.cols:
            return False
        for i in range(size):
            block = self.data[i] & ((1 << size) - 1)
            if (block >> i) != 1:
                return False
        return True

    def columns_zero(self, cols: Iterable[int]) -> bool:
        mask = sum(1 << j for j in cols)
        return all(not (r & mask) for r in self.data)


def gf2_rank(m: Gf2Matrix) -> int:
    """Rank over GF(2) by elimination on int-packed rows."""
    pivots: Dict[int, int] = {}  # leading bit -> reduced row
    for row in m.data:
        while row:
            lead = row.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = row
                break
            row ^= pivots[lead]
    return len(pivots)


# -- enumeration of G(d) ------------------------------------------------------------


@dataclass(frozen=True)
class GdEnumeration:
    d: int
    members: Tuple[GrassmannianDesc, ...]
    o_block: range
    e_block: range

    def block_of(self, index: int) -> Optional[str]:
        if index in self.o_block:
            return "O"
        if index in self.e_block:
            return "E"
        return None

    @property
    def real_members(self) -> Tuple[GrassmannianDesc, ...]:
        return tuple(g for g in self.members if g.is_real)


def _factorizations(d: int, field_: Field) -> List[GrassmannianDesc]:
    t = field_.t
    if d % t:
        return []
    m = d // t
    out = []
    k = 1
    while k * k < m:
        if m % k == 0:
            n = m // k
            if nu(n + k) <= nu(k):
                out.append(GrassmannianDesc(field_, k, n))
        k += 1
    # descending n + k
    out.sort(key=lambda g: -g.N)
    return out


def enumerate_gd(d: int, fields: Iterable = ("R", "C", "H")) -> GdEnumeration:
    """Non-bounding G_k(F^{n+k}) with nkt = d and k < n.

    Ordering: real O(d), real E(d) (each by descending n+k), then complex,
    then quaternionic members.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    chosen = {Field(f) for f in fields}
    members: List[GrassmannianDesc] = []
    o_block = e_block = range(0)
    if Field.R in chosen:
        reals = _factorizations(d, Field.R)
        odd = [g for g in reals if g.N % 2 == 1]
        even = [g for g in reals if g.N % 2 == 0]
        members = odd + even
        o_block = range(0, len(odd))
        e_block = range(len(odd), len(odd) + len(even))
    for f in (Field.C, Field.H):
        if f in chosen:
            members.extend(_factorizations(d, f))
    return GdEnumeration(d, tuple(members), o_block, e_block)


def split_even_odd(enum: GdEnumeration) -> Tuple[Tuple[GrassmannianDesc, ...], Tuple[GrassmannianDesc, ...]]:
    """(O(d), E(d)) by parity of n+k."""
    reals = enum.real_members
    return (
        tuple(g for g in reals if g.N % 2 == 1),
        tuple(g for g in reals if g.N % 2 == 0),
    )


# -- the f_l matrix ------------------------------------------------------------------


def f_ell_value(source: GrassmannianDesc, target: GrassmannianDesc) -> int:
    """<f_source(target), [target]> with f = prod_j S_{n+k-(2j-1)} of the source."""
    for g in (source, target):
        if not g.is_real:
            raise ValueError(f"{g.label()} is not real")
    if source.dim != target.dim:
        raise ValueError(f"dimension mismatch: {source.dim} vs {target.dim}")
    degrees = [source.N - (2 * j - 1) for j in range(1, source.k + 1)]
    assert sum(degrees) == source.dim
    prod = Gf2Poly.one()
    for p in degrees:
        prod = prod * sp_pullback_closed_form(target, p)
        if not prod:
            return 0
    prod = prod * Gf2Poly.from_monomial(staircase_monomial(target.n, target.k))
    return top_class_value(FlagContext(target.N), prod)


def proposition_matrix(d: int) -> Tuple[Gf2Matrix, GdEnumeration]:
    """Rows: O(d); columns: O(d) then E(d); entry (l, h) = f_ell_value."""
    enum = enumerate_gd(d, ("R",))
    odd, _ = split_even_odd(enum)
    cols = enum.real_members
    rows = [[f_ell_value(src, tgt) for tgt in cols] for src in odd]
    return Gf2Matrix.from_lists(rows, len(cols)), enum


def fossum_check(k: int, n: int) -> bool:
    """[G_2k(R^{2n+2k})] and [G_k(R^{n+k})]^4 have equal SW vectors."""
    if not k < n:
        raise ValueError(f"need k < n, got k={k}, n={n}")
    return sw_vector(real(2 * k, 2 * n)) == power_sw_vector(sw_vector(real(k, n)), 4)


# -- reports ------------------------------------------------------------------------


@dataclass
class VerificationReport:
    dim: int
    method: str
    members: List[dict]
    matrix: Optional[List[str]]
    rank: Optional[int]
    verified: bool
    elapsed_ms: int = 0
    prop_matrix: Optional[List[str]] = None
    sw_matrix: Optional[List[str]] = None
    distinct_classes: Optional[int] = None
    coincidences: List[List[str]] = field(default_factory=list)
    steps: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "dim": self.dim,
            "method": self.method,
            "members": self.members,
            "matrix": self.matrix,
            "rank": self.rank,
            "verified": self.verified,
            "prop_matrix": self.prop_matrix,
            "sw_matrix": self.sw_matrix,
            "distinct_classes": self.distinct_classes,
            "coincidences": self.coincidences,
            "steps": self.steps,
            "failures": self.failures,
        }
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _member_records(enum: GdEnumeration) -> List[dict]:
    return [
        {"field": g.field.value, "k": g.k, "n": g.n, "block": enum.block_of(i)}
        for i, g in enumerate(enum.members)
    ]


def _guard(d: int, allow_large: bool, what: str) -> None:
    if d > DEFAULT_MAX_DIM and not allow_large:
        raise DimensionGuardError(
            f"{what} at d={d} exceeds the default limit d <= {DEFAULT_MAX_DIM}; pass --allow-large"
        )


def _matrix_induction(d: int, allow_large: bool, report: VerificationReport) -> Gf2Matrix:
    steps, failures = report.steps, report.failures
    pm, enum = proposition_matrix(d)
    odd, even = split_even_odd(enum)
    s = len(odd)
    report.prop_matrix = pm.bitstrings()
    if not pm.is_lower_unitriangular(s):
        for i in range(s):
            for j in range(s):
                want = 1 if i == j else (0 if j > i else None)
                if want is not None and pm[i, j] != want:
                    failures.append(
                        f"d={d}: f-matrix entry ({odd[i].label()}, {odd[j].label()}) is {pm[i, j]}, expected {want}"
                    )
    else:
        steps.append(f"d={d}: O(d) block ({s}x{s}) lower triangular with unit diagonal")
    e_cols = range(s, s + len(even))
    if not pm.columns_zero(e_cols):
        for i in range(s):
            for j in e_cols:
                if pm[i, j]:
                    failures.append(f"d={d}: f-matrix entry ({odd[i].label()}, {even[j - s].label()}) is nonzero")
    elif even:
        steps.append(f"d={d}: E(d) columns vanish under every f_l")
    if not even:
        steps.append(f"d={d}: E(d) empty; G(d) = O(d) is independent")
        return pm

    sub = enumerate_gd(d // 4, ("R",)).members if d % 4 == 0 else ()
    images = []
    for g in even:
        if g.k % 2 or g.n % 2:
            failures.append(f"d={d}: {g.label()} in E(d) does not have even k and n")
            continue
        img = real(g.k // 2, g.n // 2)
        images.append(img)
        if img not in sub:
            failures.append(f"d={d}: {g.label()} maps to {img.label()}, not a member of G({d // 4})")
            continue
        _guard(d, allow_large, "fourth-power instance check")
        if sw_vector(g) != power_sw_vector(sw_vector(img), 4):
            failures.append(f"d={d}: SW vector of {g.label()} differs from that of [{img.label()}]^4")
            continue
        steps.append(f"d={d}: [{g.label()}] = [{img.label()}]^4 with {img.label()} in G({d // 4}); SW vectors agree")
    if len(set(images)) != len(images):
        failures.append(f"d={d}: E(d) -> G(d/4) is not injective")
    if failures:
        return pm
    inner = VerificationReport(d // 4, "matrix-induction", [], None, None, False)
    _matrix_induction(d // 4, allow_large, inner)
    steps.extend(inner.steps)
    failures.extend(inner.failures)
    if inner.failures:
        return pm
    steps.append(f"d={d}: E(d) independent as fourth powers of the independent G({d // 4})")
    steps.append(f"d={d}: no combination of O(d) lies in the span of E(d); G(d) independent")
    return pm


def _oracle(d: int, allow_large: bool, report: VerificationReport) -> bool:
    """Fill the oracle fields; returns whether the real rows alone are independent."""
    _guard(d, allow_large, "oracle")
    enum = enumerate_gd(d)
    vectors = [bordism_sw_vector(g) for g in enum.members]
    cols = len(partitions(d))
    mat = Gf2Matrix(len(vectors), cols, tuple(v.as_int() for v in vectors))
    report.sw_matrix = mat.bitstrings()
    rank = gf2_rank(mat)
    groups: Dict[SwVector, List[str]] = {}
    for g, v in zip(enum.members, vectors):
        groups.setdefault(v, []).append(g.label())
        if v.is_zero():
            report.failures.append(f"d={d}: {g.label()} has all SW numbers zero but should not bound")
    report.coincidences = [labels for labels in groups.values() if len(labels) > 1]
    report.distinct_classes = len(groups)
    for labels in report.coincidences:
        report.steps.append(f"d={d}: equal bordism classes " + " = ".join(labels))
    report.steps.append(
        f"d={d}: SW matrix {mat.rows}x{mat.cols}, rank {rank}, {len(groups)} distinct classes"
    )
    if rank != len(groups):
        report.failures.append(f"d={d}: rank {rank} < {len(groups)} distinct classes; G(d) is dependent")
    report.rank = rank
    report.matrix = report.sw_matrix
    real_rows = [v.as_int() for g, v in zip(enum.members, vectors) if g.is_real]
    return gf2_rank(Gf2Matrix(len(real_rows), cols, tuple(real_rows))) == len(real_rows)


def verify_theorem(d: int, method: str = "both", allow_large: bool = False) -> VerificationReport:
    """Verify that G(d) is linearly independent in unoriented bordism."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if d < 1:
        raise ValueError("d must be >= 1")
    start = time.perf_counter()
    enum = enumerate_gd(d, ("R",) if method == "matrix-induction" else ("R", "C", "H"))
    report = VerificationReport(d, method, _member_records(enum), None, None, False)
    if d % 2 == 1:
        assert not enum.members
        report.rank = 0
        report.matrix = []
        report.steps.append(f"d={d}: odd dimension, G(d) is empty")
        report.verified = True
    else:
        real_ok = None
        if method in ("matrix-induction", "both"):
            pm = _matrix_induction(d, allow_large, report)
            report.matrix = pm.bitstrings()
            report.rank = pm.rank()
        if method in ("oracle", "both"):
            real_ok = _oracle(d, allow_large, report)
        if method == "both" and not report.failures:
            # the induction certifies the real members; the oracle must agree on them
            if not real_ok:
                report.failures.append(f"d={d}: oracle finds the real members dependent, induction does not")
            else:
                report.steps.append(f"d={d}: oracle and induction agree on the real members")
        report.verified = not report.failures
    report.elapsed_ms = int(round((time.perf_counter() - start) * 1000))
    return report
