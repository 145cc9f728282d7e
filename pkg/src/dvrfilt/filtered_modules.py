"""Filtered free modules with integer shifts, maps between them, and Smith
normal form over the valuation ring.

A rank-r module with shift vector s filters as M_n = (+)_j R_{n - s_j},
reading R_k = R for k <= 0 (the ring's own indexing starts at R_0 = R);
the j-th generator lives in every level up to n = s_j.  A matrix A
between shifted modules is a filtered map exactly when every entry
satisfies v(A_ij) >= max(0, s_j - t_i); the induced graded map is then
faithfully represented by the residue-field leading matrix whose (i, j)
entry is the class of A_ij / pi^(s_j - t_i) when the valuation is exactly
s_j - t_i, and zero otherwise.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import sampling
from .elements import DomainError, FieldElement, format_element, parse_element, pi_power
from .valuation import ResidueElem, ValuationSpec

Matrix = "tuple[tuple[FieldElement, ...], ...]"
ResidueMatrix = "tuple[tuple[ResidueElem, ...], ...]"


class CompatibilityError(DomainError):
    """A matrix entry violates the filtered-map compatibility bound."""

    def __init__(self, row: int, col: int, message: str):
        super().__init__(message)
        self.row = row
        self.col = col


@dataclass(frozen=True)
class FilteredFreeModule:
    """Free module of finite rank with a shift-induced filtration."""

    spec: ValuationSpec
    shifts: tuple

    def __post_init__(self) -> None:
        shifts = tuple(int(s) for s in self.shifts)
        if not shifts:
            raise DomainError("module rank must be >= 1")
        object.__setattr__(self, "shifts", shifts)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def member(self, vector: Sequence[FieldElement], n: int) -> bool:
        """True iff the vector lies in level n (coordinate j needs v >= max(0, n - s_j))."""
        if len(vector) != self.rank:
            raise DomainError(f"vector length {len(vector)} != rank {self.rank}")
        return all(
            self.spec.valuation(x) >= max(0, n - s)
            for x, s in zip(vector, self.shifts)
        )


def escape_level(module: FilteredFreeModule, vector: Sequence[FieldElement]) -> int:
    """Smallest n with the vector outside level n; witnesses separatedness.

    Equals min over nonzero coordinates of v(x_j) + s_j, plus one.
    """
    if len(vector) != module.rank:
        raise DomainError(f"vector length {len(vector)} != rank {module.rank}")
    best = None
    for x, s in zip(vector, module.shifts):
        if x.is_zero:
            continue
        level = module.spec.valuation(x).finite + s
        if best is None or level < best:
            best = level
    if best is None:
        raise DomainError("the zero vector never leaves the filtration")
    return best + 1


@dataclass(frozen=True)
class FilteredMap:
    """A matrix over R between shifted filtered free modules.

    Rows index the target, columns the source; construction validates the
    compatibility bound v(A_ij) >= max(0, s_j - t_i) entrywise.
    """

    source: FilteredFreeModule
    target: FilteredFreeModule
    matrix: tuple

    def __post_init__(self) -> None:
        if self.source.spec != self.target.spec:
            raise DomainError("source and target live over different fields")
        rows = tuple(tuple(row) for row in self.matrix)
        if len(rows) != self.target.rank or any(len(r) != self.source.rank for r in rows):
            raise DomainError(
                f"matrix must be {self.target.rank} x {self.source.rank} for these modules"
            )
        spec = self.source.spec
        for i, row in enumerate(rows):
            t_i = self.target.shifts[i]
            for j, a in enumerate(row):
                need = max(0, self.source.shifts[j] - t_i)
                if spec.valuation(a) < need:
                    raise CompatibilityError(
                        i,
                        j,
                        f"entry ({i},{j}) = {format_element(a)} has valuation "
                        f"{spec.valuation(a)} < required {need}",
                    )
        object.__setattr__(self, "matrix", rows)

    @property
    def spec(self) -> ValuationSpec:
        return self.source.spec


def make_filtered_map(
    source: FilteredFreeModule, target: FilteredFreeModule, matrix: Sequence
) -> FilteredMap:
    return FilteredMap(source, target, tuple(tuple(row) for row in matrix))


def leading_matrix(f: FilteredMap) -> tuple:
    """The residue-field matrix of the induced graded map.

    Entry (i, j) is residue(A_ij / pi^(s_j - t_i)) when v(A_ij) equals
    s_j - t_i, and zero otherwise (in particular whenever s_j - t_i < 0,
    since entries lie in R).
    """
    spec = f.spec
    zero = spec.residue_zero()
    out = []
    for i, row in enumerate(f.matrix):
        t_i = f.target.shifts[i]
        out_row = []
        for j, a in enumerate(row):
            d = f.source.shifts[j] - t_i
            if not a.is_zero and spec.valuation(a) == d:
                out_row.append(spec.residue(a / spec.uniformizer_power(d)))
            else:
                out_row.append(zero)
        out.append(tuple(out_row))
    return tuple(out)


def residue_matrix_rank(rows: Sequence[Sequence[ResidueElem]]) -> int:
    """Rank over the residue field by Gaussian elimination."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(work)):
            if not work[i][col].is_zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [c * inv for c in work[rank]]
        for i in range(len(work)):
            if i != rank and not work[i][col].is_zero:
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def gr_injective(f: FilteredMap) -> bool:
    """True iff the induced graded map is injective.

    For shifted free modules this is full column rank of the leading
    matrix over the residue field; validated against a per-degree
    brute-force oracle in the test suite.
    """
    return residue_matrix_rank(leading_matrix(f)) == f.source.rank


class SnfResult(NamedTuple):
    u: tuple
    d: tuple
    v: tuple


def identity_matrix(spec: ValuationSpec, n: int) -> tuple:
    one = FieldElement.one(spec.field)
    zero = FieldElement.zero(spec.field)
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def snf(spec: ValuationSpec, matrix: Sequence[Sequence[FieldElement]]) -> SnfResult:
    """Smith normal form over the valuation ring: U * A * V = D exactly.

    U and V are square with unit determinant (valuation 0); D is diagonal
    with entries pi^{e_1}, ..., pi^{e_r}, 0, ... and e_1 <= e_2 <= ...
    The pivot is the first entry of minimal valuation in row-major order,
    normalized to an exact power of the uniformizer, then its row and
    column are divided out; this is deterministic.
    """
    rows = tuple(tuple(r) for r in matrix)
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise DomainError("matrix must be rectangular and nonempty")
    m, n = len(rows), len(rows[0])
    for r in rows:
        for a in r:
            if spec.valuation(a) < 0:
                raise DomainError(f"entry {format_element(a)} lies outside the ring")

    d = [list(r) for r in rows]
    u = [list(r) for r in identity_matrix(spec, m)]
    v = [list(r) for r in identity_matrix(spec, n)]
    one = FieldElement.one(spec.field)

    for k in range(min(m, n)):
        pivot = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if not d[i][j].is_zero:
                    val = spec.valuation(d[i][j]).finite
                    if best is None or val < best:
                        best, pivot = val, (i, j)
        if pivot is None:
            break
        pi_row, pi_col = pivot
        if pi_row != k:
            d[k], d[pi_row] = d[pi_row], d[k]
            u[k], u[pi_row] = u[pi_row], u[k]
        if pi_col != k:
            for row in d:
                row[k], row[pi_col] = row[pi_col], row[k]
            for row in v:
                row[k], row[pi_col] = row[pi_col], row[k]
        unit = d[k][k] / spec.uniformizer_power(best)
        if unit != one:
            scale = unit.inverse()
            d[k] = [scale * a for a in d[k]]
            u[k] = [scale * a for a in u[k]]
        for i in range(k + 1, m):
            if d[i][k].is_zero:
                continue
            q = d[i][k] / d[k][k]
            d[i] = [a - q * b for a, b in zip(d[i], d[k])]
            u[i] = [a - q * b for a, b in zip(u[i], u[k])]
        for j in range(k + 1, n):
            if d[k][j].is_zero:
                continue
            q = d[k][j] / d[k][k]
            for row in d:
                row[j] = row[j] - q * row[k]
            for row in v:
                row[j] = row[j] - q * row[k]

    return SnfResult(
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in d),
        tuple(tuple(r) for r in v),
    )


def snf_diagonal_exponents(spec: ValuationSpec, d: Matrix) -> list:
    """Valuations of the nonzero diagonal entries of an SNF diagonal."""
    out = []
    for k in range(min(len(d), len(d[0]))):
        if not d[k][k].is_zero:
            out.append(spec.valuation(d[k][k]).finite)
    return out


def map_injective(f: FilteredMap) -> bool:
    """True iff the underlying module map is injective (full column rank over K)."""
    result = snf(f.spec, f.matrix)
    nonzero = sum(
        1
        for k in range(min(len(result.d), len(result.d[0])))
        if not result.d[k][k].is_zero
    )
    return nonzero == f.source.rank


def mat_mul(spec: ValuationSpec, a: Sequence, b: Sequence) -> tuple:
    if len(a[0]) != len(b):
        raise DomainError("matrix dimensions do not match")
    zero = FieldElement.zero(spec.field)
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = zero
            for k in range(len(b)):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def det(spec: ValuationSpec, matrix: Sequence) -> FieldElement:
    """Exact determinant by Gaussian elimination over the fraction field."""
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise DomainError("determinant needs a square matrix")
    work = [list(r) for r in matrix]
    sign = 1
    result = FieldElement.one(spec.field)
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if not work[i][k].is_zero:
                pivot_row = i
                break
        if pivot_row is None:
            return FieldElement.zero(spec.field)
        if pivot_row != k:
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        pivot = work[k][k]
        result = result * pivot
        for i in range(k + 1, n):
            if work[i][k].is_zero:
                continue
            q = work[i][k] / pivot
            work[i] = [a - q * b for a, b in zip(work[i], work[k])]
    if sign < 0:
        result = -result
    return result


# ---------------------------------------------------------------------------
# seeded random instances for the property suites

def random_matrix(
    spec: ValuationSpec,
    rng: random.Random,
    rows: int,
    cols: int,
    max_entry_valuation: int = 5,
) -> tuple:
    """A random matrix over R: entries pi^v * unit with v in [0, max], some zero."""
    zero = FieldElement.zero(spec.field)
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < 0.15:
                row.append(zero)
            else:
                v = rng.randint(0, max_entry_valuation)
                row.append(pi_power(spec.field, v) * sampling.random_unit(spec.field, rng))
        out.append(tuple(row))
    return tuple(out)


def random_filtered_map(
    spec: ValuationSpec,
    rng: random.Random,
    max_rank: int = 4,
    max_entry_valuation: int = 5,
    shift_bound: int = 3,
) -> FilteredMap:
    """A random valid filtered map: shifted modules plus a compatible matrix."""
    src_rank = rng.randint(1, max_rank)
    tgt_rank = rng.randint(1, max_rank)
    src = FilteredFreeModule(
        spec, tuple(rng.randint(-shift_bound, shift_bound) for _ in range(src_rank))
    )
    tgt = FilteredFreeModule(
        spec, tuple(rng.randint(-shift_bound, shift_bound) for _ in range(tgt_rank))
    )
    zero = FieldElement.zero(spec.field)
    rows = []
    for i in range(tgt_rank):
        row = []
        for j in range(src_rank):
            lb = max(0, src.shifts[j] - tgt.shifts[i])
            if rng.random() < 0.15:
                row.append(zero)
            else:
                v = rng.randint(lb, max(lb, max_entry_valuation))
                row.append(pi_power(spec.field, v) * sampling.random_unit(spec.field, rng))
        rows.append(tuple(row))
    return FilteredMap(src, tgt, tuple(rows))


def random_module_element(
    module: FilteredFreeModule, rng: random.Random
) -> tuple:
    """A random nonzero element of level 0 of the module."""
    field = module.spec.field
    while True:
        coords = []
        for s in module.shifts:
            if rng.random() < 0.25:
                coords.append(FieldElement.zero(field))
            else:
                lb = max(0, -s)
                coords.append(
                    pi_power(field, rng.randint(lb, lb + 5))
                    * sampling.random_unit(field, rng)
                )
        if any(not c.is_zero for c in coords):
            return tuple(coords)


# ---------------------------------------------------------------------------
# text interface: rows ';'-separated, entries ','-separated

def parse_vector(text: str, spec: ValuationSpec) -> tuple:
    parts = text.split(",")
    return tuple(parse_element(p, spec.field) for p in parts)


def parse_matrix(text: str, spec: ValuationSpec) -> tuple:
    rows = tuple(parse_vector(r, spec) for r in text.split(";"))
    if any(len(r) != len(rows[0]) for r in rows):
        raise DomainError("matrix rows have unequal lengths")
    return rows


def format_matrix(matrix: Matrix) -> str:
    return ";".join(",".join(format_element(a) for a in row) for row in matrix)


def format_residue_matrix(rows: ResidueMatrix) -> str:
    return ";".join(",".join(str(c) for c in row) for row in rows)


def parse_shifts(text: str) -> tuple:
    if not re.fullmatch(r"-?\d+(,-?\d+)*", text):
        raise DomainError(f"malformed shift vector {text!r}")
    return tuple(int(s) for s in text.split(","))
