"""Incidence set systems and their bridge to 0-1 incidence matrices.

A system has points 0..v-1 and an ordered list of blocks (subsets of the
point set; the list may repeat blocks). Block order and multiplicity are
significant: they fix the column order of the incidence matrix and make
duals behave correctly when blocks repeat.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .domains import Domain
from .matrix import Matrix


class IncidenceSystem:
    """Points 0..v-1 plus an ordered block list (repeats allowed)."""

    __slots__ = ("v", "blocks")

    def __init__(self, v: int, blocks: Iterable[Iterable[int]] = ()):
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"point count must be a non-negative int, got {v!r}")
        normalized = []
        for pos, raw in enumerate(blocks):
            block = frozenset(raw)
            for p in block:
                if not isinstance(p, int) or not 0 <= p < v:
                    raise ValueError(f"block {pos}: point {p!r} outside 0..{v - 1}")
            normalized.append(block)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "blocks", tuple(normalized))

    def __setattr__(self, name, value):
        raise AttributeError("IncidenceSystem is immutable")

    @property
    def b(self) -> int:
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, IncidenceSystem)
            and self.v == other.v
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.v, self.blocks))

    def __repr__(self):
        shown = [sorted(b) for b in self.blocks]
        return f"IncidenceSystem(v={self.v}, blocks={shown})"

    # -- the four basic parameters ------------------------------------------

    def block_size(self, j: int) -> int:
        """Cardinality of block j."""
        self._check_block(j)
        return len(self.blocks[j])

    def replication_number(self, x: int) -> int:
        """Number of blocks containing point x."""
        self._check_point(x)
        return sum(1 for block in self.blocks if x in block)

    def points_index(self, points: Iterable[int]) -> int:
        """Number of blocks containing every point of the given subset.

        The empty subset is contained in every block, so its index is b.
        Repeated blocks count with multiplicity.
        """
        subset = frozenset(points)
        for p in subset:
            self._check_point(p)
        return sum(1 for block in self.blocks if subset <= block)

    def inter_num(self, i: int, j: int) -> int:
        """Size of the intersection of blocks i and j (i = j gives |B_i|)."""
        self._check_block(i)
        self._check_block(j)
        return len(self.blocks[i] & self.blocks[j])

    def _check_point(self, x: int):
        if not isinstance(x, int) or not 0 <= x < self.v:
            raise IndexError(f"point {x!r} out of range for v = {self.v}")

    def _check_block(self, j: int):
        if not 0 <= j < self.b:
            raise IndexError(f"block index {j} out of range for b = {self.b}")

    # -- classification -------------------------------------------------------

    def classify(self) -> "DesignClass":
        """Compute every structural flag/parameter by exhaustive checking."""
        sizes = [len(block) for block in self.blocks]
        is_design = all(s > 0 for s in sizes)
        is_simple = all(n == 1 for n in Counter(self.blocks).values())

        uniform_k = None
        if sizes and len(set(sizes)) == 1:
            uniform_k = sizes[0]

        regular_r = None
        if self.v > 0:
            reps = [self.replication_number(x) for x in range(self.v)]
            if len(set(reps)) == 1:
                regular_r = reps[0]

        pbd_lambda = None
        if self.v >= 2:
            indices = {
                self.points_index((x, y))
                for x, y in itertools.combinations(range(self.v), 2)
            }
            if len(indices) == 1:
                lam = indices.pop()
                if lam >= 1:
                    pbd_lambda = lam

        const_intersect_k = None
        if self.b >= 2:
            inters = {
                self.inter_num(i, j)
                for i, j in itertools.combinations(range(self.b), 2)
            }
            if len(inters) == 1:
                const_intersect_k = inters.pop()

        is_incomplete = all(s < self.v for s in sizes)

        is_bibd = (
            uniform_k is not None
            and 2 <= uniform_k < self.v
            and pbd_lambda is not None
        )

        return DesignClass(
            is_wellformed=True,
            is_design=is_design,
            is_simple=is_simple,
            uniform_k=uniform_k,
            regular_r=regular_r,
            pbd_lambda=pbd_lambda,
            const_intersect_k=const_intersect_k,
            is_incomplete=is_incomplete,
            is_bibd=is_bibd,
        )

    # -- constructions ---------------------------------------------------------

    def complement(self) -> "IncidenceSystem":
        """Replace each block B by {0..v-1} - B; same points, same order."""
        full = frozenset(range(self.v))
        return IncidenceSystem(self.v, [full - block for block in self.blocks])

    def dual(self) -> "IncidenceSystem":
        """Swap the roles of points and blocks.

        The dual has b points (one per original block, repeats giving
        distinct points) and v blocks; dual block n collects the indices of
        the original blocks containing point n. Its incidence matrix is the
        transpose of the original's.
        """
        dual_blocks = [
            [y for y in range(self.b) if n in self.blocks[y]]
            for n in range(self.v)
        ]
        return IncidenceSystem(self.b, dual_blocks)


@dataclass(frozen=True)
class DesignClass:
    """Classification record computed by IncidenceSystem.classify."""

    is_wellformed: bool
    is_design: bool
    is_simple: bool
    uniform_k: int | None
    regular_r: int | None
    pbd_lambda: int | None
    const_intersect_k: int | None
    is_incomplete: bool
    is_bibd: bool

    def to_json(self) -> dict:
        return {
            "is_wellformed": self.is_wellformed,
            "is_design": self.is_design,
            "is_simple": self.is_simple,
            "uniform_k": self.uniform_k,
            "regular_r": self.regular_r,
            "pbd_lambda": self.pbd_lambda,
            "const_intersect_k": self.const_intersect_k,
            "is_incomplete": self.is_incomplete,
            "is_bibd": self.is_bibd,
        }


# -- the matrix bridge ----------------------------------------------------------


def inc_mat_of(system: IncidenceSystem, domain: Domain) -> Matrix:
    """The v x b incidence matrix: entry (i, j) is 1 iff point i is in block j."""
    blocks = system.blocks
    return Matrix.build(
        system.v, system.b, domain,
        lambda i, j: 1 if i in blocks[j] else 0,
    )


def system_of_mat(mat: Matrix) -> IncidenceSystem:
    """Read a 0-1 matrix back as an incidence system (column j -> block j)."""
    _check_zero_one(mat)
    one = mat.domain.one
    blocks = [
        [i for i in range(mat.rows) if mat[i, j] == one]
        for j in range(mat.cols)
    ]
    return IncidenceSystem(mat.rows, blocks)


def lift_01_mat(mat: Matrix, domain: Domain) -> Matrix:
    """Copy a 0-1 matrix into another domain, zero to zero and one to one.

    The 0-1 pattern is preserved exactly, so every counted matrix property
    (row/column sums, column dot patterns) is unchanged.
    """
    _check_zero_one(mat)
    one = mat.domain.one
    return Matrix.build(
        mat.rows, mat.cols, domain,
        lambda i, j: 1 if mat[i, j] == one else 0,
    )


def mat_rep_num(mat: Matrix, i: int) -> int:
    """Ones in row i of a 0-1 matrix ( = replication number of point i)."""
    _check_zero_one(mat)
    if not 0 <= i < mat.rows:
        raise IndexError(f"row {i} out of range")
    one = mat.domain.one
    return sum(1 for x in mat.row(i) if x == one)


def mat_block_size(mat: Matrix, j: int) -> int:
    """Ones in column j of a 0-1 matrix ( = size of block j)."""
    _check_zero_one(mat)
    if not 0 <= j < mat.cols:
        raise IndexError(f"column {j} out of range")
    one = mat.domain.one
    return sum(1 for x in mat.col(j) if x == one)

def mat_inter_num(mat: Matrix, i: int, j: int) -> int:
    """Dot product of columns i and j counted over the naturals."""
    _check_zero_one(mat)
    if not 0 <= i < mat.cols or not 0 <= j < mat.cols:
        raise IndexError("column index out of range")
    one = mat.domain.one
    return sum(
        1 for a, b in zip(mat.col(i), mat.col(j)) if a == one and b == one
    )


def mat_point_index(mat: Matrix, points: Iterable[int]) -> int:
    """Columns of a 0-1 matrix with a one in every row of the given set."""
    _check_zero_one(mat)
    rows = frozenset(points)
    for i in rows:
        if not 0 <= i < mat.rows:
            raise IndexError(f"row {i} out of range")
    one = mat.domain.one
    return sum(
        1 for j in range(mat.cols) if all(mat[i, j] == one for i in rows)
    )


def _check_zero_one(mat: Matrix):
    if not mat.is_zero_one():
        raise ValueError("matrix has entries other than 0 and 1")


# -- isomorphism ------------------------------------------------------------------


def are_isomorphic(s1: IncidenceSystem, s2: IncidenceSystem) -> bool:
    """Brute-force isomorphism test over all point relabelings.

    True iff some bijection of the points maps the block multiset of s1 onto
    that of s2 (block order is irrelevant, multiplicity is not). The search
    is factorial in v and intended for v <= 8; cheap invariants (dimensions,
    block-size profile, replication profile) are screened first.
    """
    if s1.v != s2.v or s1.b != s2.b:
        return False
    if sorted(len(b) for b in s1.blocks) != sorted(len(b) for b in s2.blocks):
        return False
    prof1 = sorted(s1.replication_number(x) for x in range(s1.v))
    prof2 = sorted(s2.replication_number(x) for x in range(s2.v))
    if prof1 != prof2:
        return False
    target = Counter(s2.blocks)
    for perm in itertools.permutations(range(s1.v)):
        mapped = Counter(frozenset(perm[p] for p in block) for block in s1.blocks)
        if mapped == target:
            return True
    return False
