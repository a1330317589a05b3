"""Dense exact matrices and vectors over a scalar domain.

Values are immutable; every operation returns a new matrix. Determinants are
computed by fraction-free Bareiss elimination over the integers/rationals and
by pivoted Gaussian elimination over fields. Rank is field-rank (callers lift
integer matrices to the rationals first). The generalized elementary row and
column operations (add a multiple of several rows to one row, add a multiple
of one row to several rows, and their column mirrors) all preserve the
determinant, which the test suite checks against independent oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .domains import ZZ, Domain


@dataclass(frozen=True)
class Vector:
    """An exact column vector: ``dim`` entries in one domain."""

    dim: int
    entries: tuple
    domain: Domain

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("vector dimension must be >= 0")
        if len(self.entries) != self.dim:
            raise ValueError(f"expected {self.dim} entries, got {len(self.entries)}")

    @classmethod
    def of(cls, entries: Iterable, domain: Domain) -> "Vector":
        data = tuple(domain.normalize(x) for x in entries)
        return cls(len(data), data, domain)

    def dot(self, other: "Vector"):
        """Scalar product, exact, in the common domain."""
        if self.domain != other.domain:
            raise ValueError(f"domain mismatch: {self.domain!r} vs {other.domain!r}")
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        d = self.domain
        acc = d.zero
        for a, b in zip(self.entries, other.entries):
            acc = d.add(acc, d.mul(a, b))
        return acc


@dataclass(frozen=True)
class Matrix:
    """A rows x cols matrix with entries stored row-major in one domain."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples
    domain: Domain

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be >= 0")
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError(f"expected {self.cols} entries per row, got {len(r)}")

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, rows: int, cols: int, domain: Domain,
              gen: Callable[[int, int], object]) -> "Matrix":
        """Build a matrix from a generator function (i, j) -> scalar."""
        data = tuple(
            tuple(domain.normalize(gen(i, j)) for j in range(cols))
            for i in range(rows)
        )
        return cls(rows, cols, data, domain)

    @classmethod
    def from_rows(cls, rows_data: Sequence[Sequence], domain: Domain,
                  cols: int | None = None) -> "Matrix":
        """Build from nested sequences; ``cols`` disambiguates 0-row matrices."""
        data = tuple(tuple(domain.normalize(x) for x in row) for row in rows_data)
        if data:
            ncols = len(data[0])
            if cols is not None and cols != ncols:
                raise ValueError(f"declared cols={cols} but rows have {ncols} entries")
        else:
            ncols = 0 if cols is None else cols
        return cls(len(data), ncols, data, domain)

    @classmethod
    def zeros(cls, rows: int, cols: int, domain: Domain) -> "Matrix":
        return cls.build(rows, cols, domain, lambda i, j: 0)

    @classmethod
    def ones(cls, rows: int, cols: int, domain: Domain) -> "Matrix":
        """The all-ones matrix J."""
        return cls.build(rows, cols, domain, lambda i, j: 1)

    @classmethod
    def identity(cls, n: int, domain: Domain) -> "Matrix":
        return cls.build(n, n, domain, lambda i, j: 1 if i == j else 0)

    @classmethod
    def from_columns(cls, vectors: Sequence[Vector], *,
                     dim: int | None = None, domain: Domain | None = None) -> "Matrix":
        """Assemble vectors as the columns of a matrix.

        ``dim`` and ``domain`` are required when ``vectors`` is empty.
        """
        if vectors:
            dims = {v.dim for v in vectors}
            doms = {v.domain for v in vectors}
            if len(dims) != 1:
                raise ValueError(f"columns have mixed dimensions: {sorted(dims)}")
            if len(doms) != 1:
                raise ValueError("columns have mixed domains")
            dim = vectors[0].dim
            domain = vectors[0].domain
        else:
            if dim is None or domain is None:
                raise ValueError("empty column list needs explicit dim and domain")
        data = tuple(
            tuple(v.entries[i] for v in vectors) for i in range(dim)
        )
        return cls(dim, len(vectors), data, domain)

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def column_vector(self, j: int) -> Vector:
        return Vector(self.rows, self.col(j), self.domain)

    def columns(self) -> list[Vector]:
        return [self.column_vector(j) for j in range(self.cols)]

    @property
    def dims(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero_one(self) -> bool:
        """True when every entry equals the domain's zero or one."""
        z, o = self.domain.zero, self.domain.one
        return all(x == z or x == o for row in self.entries for x in row)

    # -- arithmetic ---------------------------------------------------------

    def _require_same_domain(self, other: "Matrix"):
        if self.domain != other.domain:
            raise ValueError(f"domain mismatch: {self.domain!r} vs {other.domain!r}")

    def transpose(self) -> "Matrix":
        data = tuple(
            tuple(self.entries[i][j] for i in range(self.rows))
            for j in range(self.cols)
        )
        return Matrix(self.cols, self.rows, data, self.domain)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._require_same_domain(other)
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        d = self.domain
        bt = other.transpose().entries  # walk both operands row-wise
        data = []
        for arow in self.entries:
            out = []
            for bcol in bt:
                acc = d.zero
                for a, b in zip(arow, bcol):
                    acc = d.add(acc, d.mul(a, b))
                out.append(acc)
            data.append(tuple(out))
        return Matrix(self.rows, other.cols, tuple(data), d)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._require_same_domain(other)
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")
        d = self.domain
        data = tuple(
            tuple(d.add(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        )
        return Matrix(self.rows, self.cols, data, d)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._require_same_domain(other)
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")
        d = self.domain
        data = tuple(
            tuple(d.sub(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        )
        return Matrix(self.rows, self.cols, data, d)

    def scale(self, c) -> "Matrix":
        d = self.domain
        c = d.normalize(c)
        data = tuple(tuple(d.mul(c, x) for x in row) for row in self.entries)
        return Matrix(self.rows, self.cols, data, d)

    # -- generalized elementary operations ----------------------------------

    def _check_row(self, i: int, what: str = "row"):
        if not 0 <= i < self.rows:
            raise IndexError(f"{what} index {i} out of range for {self.rows} rows")

    def _check_col(self, j: int, what: str = "column"):
        if not 0 <= j < self.cols:
            raise IndexError(f"{what} index {j} out of range for {self.cols} columns")

    def add_multiple_rows(self, c, k: int, ks: Sequence[int]) -> "Matrix":
        """Row k becomes row_k + c * (sum of rows in ks); others unchanged.

        k must not appear in ks, otherwise the operation would not preserve
        the determinant.
        """
        d = self.domain
        c = d.normalize(c)
        self._check_row(k, "target row")
        for l in ks:
            self._check_row(l, "source row")
        if k in ks:
            raise ValueError(f"target row {k} may not appear among the source rows")
        acc = [d.zero] * self.cols
        for l in ks:
            for j, x in enumerate(self.entries[l]):
                acc[j] = d.add(acc[j], x)
        new_k = tuple(
            d.add(self.entries[k][j], d.mul(c, acc[j])) for j in range(self.cols)
        )
        data = tuple(new_k if i == k else self.entries[i] for i in range(self.rows))
        return Matrix(self.rows, self.cols, data, d)

    def add_row_to_multiple(self, c, ks: Sequence[int], l: int) -> "Matrix":
        """Each row k in ks becomes row_k + c * row_l; row l unchanged."""
        d = self.domain
        c = d.normalize(c)
        self._check_row(l, "source row")
        for k in ks:
            self._check_row(k, "target row")
        if len(set(ks)) != len(ks):
            raise ValueError("duplicate target rows")
        if l in ks:
            raise ValueError(f"source row {l} may not appear among the targets")
        targets = set(ks)
        src = self.entries[l]
        data = tuple(
            tuple(d.add(x, d.mul(c, s)) for x, s in zip(self.entries[i], src))
            if i in targets else self.entries[i]
            for i in range(self.rows)
        )
        return Matrix(self.rows, self.cols, data, d)

    def add_multiple_cols(self, c, k: int, ks: Sequence[int]) -> "Matrix":
        """Column mirror of add_multiple_rows."""
        d = self.domain
        c = d.normalize(c)
        self._check_col(k, "target column")
        for l in ks:
            self._check_col(l, "source column")
        if k in ks:
            raise ValueError(f"target column {k} may not appear among the source columns")
        data = []
        for row in self.entries:
            acc = d.zero
            for l in ks:
                acc = d.add(acc, row[l])
            new_row = tuple(
                d.add(row[j], d.mul(c, acc)) if j == k else row[j]
                for j in range(self.cols)
            )
            data.append(new_row)
        return Matrix(self.rows, self.cols, tuple(data), d)

    def add_col_to_multiple(self, c, ks: Sequence[int], l: int) -> "Matrix":
        """Column mirror of add_row_to_multiple."""
        d = self.domain
        c = d.normalize(c)
        self._check_col(l, "source column")
        for k in ks:
            self._check_col(k, "target column")
        if len(set(ks)) != len(ks):
            raise ValueError("duplicate target columns")
        if l in ks:
            raise ValueError(f"source column {l} may not appear among the targets")
        targets = set(ks)
        data = []
        for row in self.entries:
            s = row[l]
            new_row = tuple(
                d.add(x, d.mul(c, s)) if j in targets else x
                for j, x in enumerate(row)
            )
            data.append(new_row)
        return Matrix(self.rows, self.cols, tuple(data), d)

    # -- determinants and rank ----------------------------------------------

    def det_bareiss(self):
        """Exact determinant via fraction-free Bareiss elimination.

        Integer matrices yield an integer (all interior divisions are exact);
        rational matrices a Fraction. Field moduli go through det_field.
        The 0x0 determinant is 1 by convention.
        """
        if not self.is_square():
            raise ValueError(f"determinant requires a square matrix, got {self.dims}")
        d = self.domain
        if d.kind not in ("integer", "rational"):
            raise ValueError(f"det_bareiss needs an integer or rational domain, got {d!r}")
        n = self.rows
        if n == 0:
            return d.one
        m = [list(r) for r in self.entries]
        sign = 1
        prev = d.one
        for k in range(n - 1):
            if m[k][k] == d.zero:
                for i in range(k + 1, n):
                    if m[i][k] != d.zero:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return d.zero  # pivot column is all zero below row k
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = d.exact_div(
                        d.sub(d.mul(m[i][j], pivot), d.mul(m[i][k], m[k][j])), prev
                    )
                m[i][k] = d.zero
            prev = pivot
        det = m[n - 1][n - 1]
        return d.neg(det) if sign < 0 else det

    def det_field(self):
        """Exact determinant over a field (rationals or GF(p)) by elimination."""
        if not self.is_square():
            raise ValueError(f"determinant requires a square matrix, got {self.dims}")
        d = self.domain
        if not d.is_field:
            raise ValueError(f"det_field needs a field domain, got {d!r}")
        n = self.rows
        if n == 0:
            return d.one
        m = [list(r) for r in self.entries]
        sign = 1
        for k in range(n):
            if m[k][k] == d.zero:
                for i in range(k + 1, n):
                    if m[i][k] != d.zero:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return d.zero
            pivot = m[k][k]
            for i in range(k + 1, n):
                if m[i][k] == d.zero:
                    continue
                factor = d.div(m[i][k], pivot)
                for j in range(k, n):
                    m[i][j] = d.sub(m[i][j], d.mul(factor, m[k][j]))
        det = d.one
        for k in range(n):
            det = d.mul(det, m[k][k])
        return d.neg(det) if sign < 0 else det

    def rank_field(self) -> int:
        """Row-echelon pivot count; the matrix must live over a field.

        Integer matrices are rejected: lift them to the rationals first so
        the rank being computed is unambiguous.
        """
        d = self.domain
        if not d.is_field:
            raise ValueError(f"rank is computed over a field; lift {d!r} to QQ first")
        m = [list(r) for r in self.entries]
        rank = 0
        row = 0
        for col in range(self.cols):
            pivot = None
            for i in range(row, self.rows):
                if m[i][col] != d.zero:
                    pivot = i
                    break
            if pivot is None:
                continue
            m[row], m[pivot] = m[pivot], m[row]
            pv = m[row][col]
            for i in range(row + 1, self.rows):
                if m[i][col] == d.zero:
                    continue
                factor = d.div(m[i][col], pv)
                for j in range(col, self.cols):
                    m[i][j] = d.sub(m[i][j], d.mul(factor, m[row][j]))
            rank += 1
            row += 1
            if row == self.rows:
                break
        return rank

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """Space-separated rows; rationals print as p/q."""
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)

    def __str__(self):
        return self.render()


def det_aI_bJ(a, b, v: int, domain: Domain = ZZ):
    """Closed-form determinant of a*I_v + b*J_v, namely a^(v-1) * (a + v*b).

    Restricted to the integer/rational domains, matching det_bareiss, and to
    v >= 1 (the empty determinant is det_bareiss's job).
    """
    if v < 1:
        raise ValueError("det_aI_bJ requires v >= 1")
    if domain.kind not in ("integer", "rational"):
        raise ValueError(f"det_aI_bJ needs an integer or rational domain, got {domain!r}")
    a = domain.normalize(a)
    b = domain.normalize(b)
    acc = domain.one
    for _ in range(v - 1):
        acc = domain.mul(acc, a)
    return domain.mul(acc, domain.add(a, domain.mul(domain.normalize(v), b)))
