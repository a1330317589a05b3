"""Certified bound arguments and the four Fisher-inequality checkers.

Two proof engines do all the work. The rank argument builds the square
matrix N*N^T, certifies a nonzero determinant, and concludes rows(N) <=
cols(N) from rank(N*M) <= min(rank N, rank M). The linear bound assembles
vectors as matrix columns, certifies full column rank (distinctness plus
linear independence), and concludes count <= dimension.

The checkers never raise on bad input families; hypothesis failures come
back as structured reports so a batch of candidate designs can be triaged.
Internal identities that mathematics guarantees (for example that an
odd-town family is simple) are asserted as hard errors, because their
failure would mean a bug, not a bad input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domains import GF, QQ, ZZ, Domain
from .matrix import Matrix, Vector, det_aI_bJ
from .incidence import IncidenceSystem, inc_mat_of, lift_01_mat, system_of_mat

VERDICT_HOLDS = "bound-holds"
VERDICT_VIOLATED = "hypotheses-violated"
VERDICT_TRIVIAL = "trivial-case"


class HypothesisError(ValueError):
    """An operation's design-theoretic preconditions do not hold."""


class CertificationError(ValueError):
    """A certificate could not be established for the given input."""


@dataclass(frozen=True)
class BoundCertificate:
    """Machine-checkable evidence for a rank-argument or linear-bound step.

    For the rank argument, square_det is the (nonzero) determinant of
    N*N^T and rank_value equals rows(N). For the linear bound, square_det
    is absent and rank_value equals the number of vectors. In both cases
    ``inequality`` is (lhs, rhs) with lhs <= rhs.
    """

    technique: str  # "rank-argument" | "linear-bound"
    matrix_dims: tuple[int, int]
    square_det: object | None
    rank_value: int
    domain: Domain
    inequality: tuple[int, int]

    def to_json(self) -> dict:
        det = self.square_det
        return {
            "technique": self.technique,
            "matrix_dims": list(self.matrix_dims),
            "square_det": None if det is None else (det if isinstance(det, int) else str(det)),
            "rank_value": self.rank_value,
            "domain": self.domain.to_json(),
            "inequality": list(self.inequality),
        }


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class FisherReport:
    """Per-variant result: hypotheses checked, certificate, verdict."""

    variant: str  # "uniform" | "odd-town" | "general" | "dual"
    hypotheses: tuple[HypothesisCheck, ...]
    certificate: BoundCertificate | None
    verdict: str

    @property
    def bound_ok(self) -> bool:
        return self.verdict in (VERDICT_HOLDS, VERDICT_TRIVIAL)

    def failed_hypotheses(self) -> list[HypothesisCheck]:
        return [h for h in self.hypotheses if not h.passed]

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "hypotheses": [h.to_json() for h in self.hypotheses],
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "verdict": self.verdict,
        }


# -- the two proof engines ----------------------------------------------------


def rank_argument(n_mat: Matrix) -> BoundCertificate:
    """Conclude rows(N) <= cols(N) from det(N*N^T) != 0, over a field.

    det(N*N^T) != 0 gives rank(N*N^T) = rows(N); the product-rank lemma
    rank(N*M) <= min(rank N, rank M) and rank <= dims then force
    rows(N) <= cols(N). A zero determinant means the argument does not
    apply to this matrix, which is reported as an error, not a bound.
    """
    if not n_mat.domain.is_field:
        raise ValueError(f"rank argument needs a field domain, got {n_mat.domain!r}")
    gram = n_mat @ n_mat.transpose()
    det = gram.det_field()
    if det == n_mat.domain.zero:
        raise CertificationError("rank argument inapplicable: det(N*N^T) = 0")
    if n_mat.rows > n_mat.cols:
        # Unreachable: a v x b matrix with v > b has rank(N*N^T) <= b < v,
        # so the determinant above would have been zero.
        raise AssertionError("nonzero Gram determinant with rows > cols")
    return BoundCertificate(
        technique="rank-argument",
        matrix_dims=n_mat.dims,
        square_det=det,
        rank_value=n_mat.rows,
        domain=n_mat.domain,
        inequality=(n_mat.rows, n_mat.cols),
    )


def linear_bound(vectors: list[Vector], *, dim: int | None = None,
                 domain: Domain | None = None) -> BoundCertificate:
    """Conclude k <= m for k distinct linearly independent vectors in dim m.

    Independence is certified by assembling the vectors as matrix columns
    and checking full column rank over the field. ``dim`` and ``domain``
    are only needed for the empty list (0 <= m holds vacuously).
    """
    if vectors:
        dims = {v.dim for v in vectors}
        doms = {v.domain for v in vectors}
        if len(dims) != 1:
            raise ValueError(f"vectors have mixed dimensions: {sorted(dims)}")
        if len(doms) != 1:
            raise ValueError("vectors have mixed domains")
        if dim is not None and dim != vectors[0].dim:
            raise ValueError(f"declared dim {dim} does not match vectors of dim {vectors[0].dim}")
        dim = vectors[0].dim
        domain = vectors[0].domain
    else:
        if dim is None or domain is None:
            raise ValueError("empty vector list needs explicit dim and domain")
    if not domain.is_field:
        raise ValueError(f"linear bound needs a field domain, got {domain!r}")

    seen = set()
    for v in vectors:
        if v.entries in seen:
            raise CertificationError(f"distinctness violated: vector {list(v.entries)} repeats")
        seen.add(v.entries)

    k = len(vectors)
    mat = Matrix.from_columns(vectors, dim=dim, domain=domain)
    rank = mat.rank_field()
    if rank < k:
        raise CertificationError(f"linearly dependent: rank {rank} < {k} vectors")
    return BoundCertificate(
        technique="linear-bound",
        matrix_dims=mat.dims,
        square_det=None,
        rank_value=k,
        domain=domain,
        inequality=(k, dim),
    )


# -- the regular-PBD characterization -------------------------------------------


def pbd_characterization_reverse(system: IncidenceSystem) -> tuple[int, int]:
    """For a regular PBD, verify N*N^T = lambda*J + (r - lambda)*I and return (r, lambda)."""
    cls = system.classify()
    if cls.regular_r is None:
        raise HypothesisError("system is not regular: replication numbers differ")
    if cls.pbd_lambda is None:
        raise HypothesisError("system is not pairwise balanced with lambda >= 1")
    r, lam = cls.regular_r, cls.pbd_lambda
    n_mat = inc_mat_of(system, ZZ)
    gram = n_mat @ n_mat.transpose()
    expected = Matrix.ones(system.v, system.v, ZZ).scale(lam) + \
        Matrix.identity(system.v, ZZ).scale(r - lam)
    if gram != expected:
        raise AssertionError(
            "N*N^T != lambda*J + (r - lambda)*I for a classified regular PBD; "
            "this indicates a bug, not bad input"
        )
    return r, lam


def pbd_characterization_forward(mat: Matrix, r: int, lam: int) -> IncidenceSystem:
    """If N*N^T = lam*J + (r - lam)*I, N is the incidence matrix of a regular PBD.

    Checks the identity over the integers, then reconstructs the system and
    confirms the classification reports the same r and lambda.
    """
    if not (isinstance(r, int) and isinstance(lam, int) and r >= 1 and lam >= 1):
        raise ValueError(f"r and lambda must be positive integers, got r={r!r}, lambda={lam!r}")
    n_mat = lift_01_mat(mat, ZZ)
    gram = n_mat @ n_mat.transpose()
    expected = Matrix.ones(mat.rows, mat.rows, ZZ).scale(lam) + \
        Matrix.identity(mat.rows, ZZ).scale(r - lam)
    if gram != expected:
        raise CertificationError(
            f"matrix is not a regular-PBD incidence matrix for r={r}, lambda={lam}"
        )
    system = system_of_mat(mat)
    cls = system.classify()
    if cls.regular_r != r or cls.pbd_lambda != lam:
        raise AssertionError(
            "reconstructed system does not classify as the expected regular PBD"
        )
    return system


# -- Fisher's inequality, four ways ----------------------------------------------


def uniform_fisher(system: IncidenceSystem) -> FisherReport:
    """Fisher's inequality for BIBDs: v <= b, certified by the rank argument.

    The determinant of N*N^T is additionally cross-checked against the
    closed form (r - lambda)^(v-1) * (r + (v-1)*lambda) of a*I + b*J.
    """
    cls = system.classify()
    k = cls.uniform_k
    checks = [
        HypothesisCheck(
            "uniform block size", k is not None,
            f"k = {k}" if k is not None else "block sizes differ",
        ),
        HypothesisCheck(
            "block size at least 2", k is not None and k >= 2,
            f"k = {k}",
        ),
        HypothesisCheck(
            "incomplete (k < v)", k is not None and k < system.v,
            f"k = {k}, v = {system.v}",
        ),
        HypothesisCheck(
            "pairwise balanced (lambda >= 1)", cls.pbd_lambda is not None,
            f"lambda = {cls.pbd_lambda}" if cls.pbd_lambda is not None
            else "points index not constant >= 1",
        ),
    ]
    if not all(c.passed for c in checks):
        return FisherReport("uniform", tuple(checks), None, VERDICT_VIOLATED)

    cert = rank_argument(inc_mat_of(system, QQ))

    # A uniform PBD is regular; cross-check the determinant three ways.
    r, lam = cls.regular_r, cls.pbd_lambda
    if r is None:
        raise AssertionError("BIBD classified as non-regular")
    n_int = inc_mat_of(system, ZZ)
    det_int = (n_int @ n_int.transpose()).det_bareiss()
    if det_int != det_aI_bJ(r - lam, lam, system.v) or cert.square_det != det_int:
        raise AssertionError("determinant of N*N^T disagrees with the closed form")

    return FisherReport("uniform", tuple(checks), cert, VERDICT_HOLDS)


def odd_town(system: IncidenceSystem) -> FisherReport:
    """Odd-town bound: odd block sizes, even pairwise intersections force b <= v.

    Certified by lifting the incidence matrix to GF(2) and running the
    linear bound on the columns. The hypotheses force the family to be
    simple, which is re-derived and reported.
    """
    bad_size = next(
        (j for j in range(system.b) if system.block_size(j) % 2 == 0), None
    )
    size_check = HypothesisCheck(
        "odd block sizes", bad_size is None,
        "all block sizes odd" if bad_size is None
        else f"block {bad_size} has even size {system.block_size(bad_size)}",
    )
    bad_pair = None
    for i in range(system.b):
        for j in range(i + 1, system.b):
            if system.inter_num(i, j) % 2 == 1:
                bad_pair = (i, j)
                break
        if bad_pair:
            break
    inter_check = HypothesisCheck(
        "even pairwise intersections", bad_pair is None,
        "all pairwise intersections even" if bad_pair is None
        else f"blocks {bad_pair[0]} and {bad_pair[1]} share "
             f"{system.inter_num(*bad_pair)} points (odd)",
    )
    checks = [size_check, inter_check]
    if not all(c.passed for c in checks):
        return FisherReport("odd-town", tuple(checks), None, VERDICT_VIOLATED)

    if not system.classify().is_simple:
        # Odd self-intersection + even pairwise intersections exclude repeats.
        raise AssertionError("odd-town hypotheses held for a non-simple family")
    checks.append(HypothesisCheck("simple family (derived)", True, "no repeated blocks"))

    n2 = lift_01_mat(inc_mat_of(system, ZZ), GF(2))
    cert = linear_bound(n2.columns(), dim=system.v, domain=GF(2))
    return FisherReport("odd-town", tuple(checks), cert, VERDICT_HOLDS)


def general_fisher(system: IncidenceSystem) -> FisherReport:
    """Generalized Fisher: distinct sets with constant intersection k >= 1 force b <= v.

    Certified over the rationals via the linear bound. Families with fewer
    than two blocks, and disjoint families (k = 0, where b <= v follows by
    counting the union), are trivial cases rather than bound certificates.
    """
    cls = system.classify()
    checks = [
        HypothesisCheck(
            "distinct blocks", cls.is_simple,
            "no repeated blocks" if cls.is_simple else "a block repeats",
        ),
    ]
    if not cls.is_simple:
        return FisherReport("general", tuple(checks), None, VERDICT_VIOLATED)

    if system.b < 2:
        checks.append(HypothesisCheck(
            "at least two blocks", False,
            f"b = {system.b}; the bound b <= max(v, 1) holds trivially",
        ))
        return FisherReport("general", tuple(checks), None, VERDICT_TRIVIAL)
    checks.append(HypothesisCheck("at least two blocks", True, f"b = {system.b}"))

    k = cls.const_intersect_k
    checks.append(HypothesisCheck(
        "constant pairwise intersection", k is not None,
        f"k = {k}" if k is not None else "intersection numbers differ",
    ))
    if k is None:
        return FisherReport("general", tuple(checks), None, VERDICT_VIOLATED)

    if k == 0:
        # Pairwise disjoint blocks: counting the union gives b <= v directly,
        # provided every block is nonempty.
        empty = any(len(block) == 0 for block in system.blocks)
        checks.append(HypothesisCheck(
            "nonempty blocks", not empty,
            "k = 0 with an empty block leaves the bound unproven" if empty
            else "k = 0: disjoint nonempty blocks, counting bound applies",
        ))
        if empty:
            return FisherReport("general", tuple(checks), None, VERDICT_VIOLATED)
        union = frozenset().union(*system.blocks)
        if len(union) != sum(len(block) for block in system.blocks):
            raise AssertionError("k = 0 family is not disjoint")
        return FisherReport("general", tuple(checks), None, VERDICT_TRIVIAL)

    checks.append(HypothesisCheck(
        "intersection number >= 1", True, f"k = {k} with 1 <= k <= {system.v}"
    ))
    nq = lift_01_mat(inc_mat_of(system, ZZ), QQ)
    cert = linear_bound(nq.columns(), dim=system.v, domain=QQ)
    return FisherReport("general", tuple(checks), cert, VERDICT_HOLDS)


def fisher_dual(system: IncidenceSystem) -> FisherReport:
    """Fisher for incomplete PBDs via the dual: v <= b.

    The dual of a pairwise balanced design is a constant-intersect family;
    incompleteness makes it simple, so the generalized inequality applies
    to the dual and its b <= v reads v <= b for the original.
    """
    cls = system.classify()
    checks = [
        HypothesisCheck(
            "pairwise balanced (lambda >= 1)", cls.pbd_lambda is not None,
            f"lambda = {cls.pbd_lambda}" if cls.pbd_lambda is not None
            else "points index not constant >= 1",
        ),
        HypothesisCheck(
            "incomplete (every block size < v)", cls.is_incomplete,
            "all blocks proper" if cls.is_incomplete else "a block contains every point",
        ),
        HypothesisCheck("at least two points", system.v >= 2, f"v = {system.v}"),
    ]
    if not all(c.passed for c in checks):
        return FisherReport("dual", tuple(checks), None, VERDICT_VIOLATED)

    dual = system.dual()
    dual_cls = dual.classify()
    if not dual_cls.is_simple or dual_cls.const_intersect_k != cls.pbd_lambda:
        raise AssertionError(
            "dual of an incomplete PBD must be a simple constant-intersect family"
        )
    checks.append(HypothesisCheck(
        "dual is simple constant-intersect (derived)", True,
        f"dual k = {dual_cls.const_intersect_k}",
    ))

    dual_report = general_fisher(dual)
    if dual_report.verdict != VERDICT_HOLDS or dual_report.certificate is None:
        raise AssertionError("generalized Fisher did not certify the dual family")
    # The dual certificate's b <= v is exactly v <= b for the original.
    return FisherReport("dual", tuple(checks), dual_report.certificate, VERDICT_HOLDS)
