"""Built-in verification suite behind the `selftest` CLI command.

Quick mode runs sampled property checks; full mode runs the exhaustive
desk-scale verification (odd-town up to v = 6, constant-intersect up to
v = 5, 1000-trial randomized invariants). Every check prints one line.
"""

from __future__ import annotations

import random
from typing import Callable

from .domains import GF, QQ, ZZ
from .matrix import Matrix, det_aI_bJ
from .incidence import (
    IncidenceSystem,
    are_isomorphic,
    inc_mat_of,
    lift_01_mat,
    mat_block_size,
    mat_inter_num,
    mat_point_index,
    mat_rep_num,
    system_of_mat,
)
from .theorems import (
    VERDICT_HOLDS,
    fisher_dual,
    general_fisher,
    odd_town,
    pbd_characterization_forward,
    pbd_characterization_reverse,
    uniform_fisher,
)
from .enumeration import (
    enum_bibd,
    enum_const_intersect,
    enum_odd_town,
    naive_const_intersect_families,
    naive_odd_town_families,
    verify_exhaustive,
)

FANO_BLOCKS = [
    (0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5),
]


def fano() -> IncidenceSystem:
    """The (7, 3, 1) design, the running example throughout."""
    return IncidenceSystem(7, FANO_BLOCKS)


def random_matrix(rng: random.Random, rows: int, cols: int,
                  lo: int = -9, hi: int = 9) -> Matrix:
    return Matrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], ZZ,
        cols=cols,
    )


def random_system(rng: random.Random, max_v: int = 6, max_b: int = 6) -> IncidenceSystem:
    v = rng.randint(0, max_v)
    b = rng.randint(0, max_b)
    blocks = [
        [p for p in range(v) if rng.random() < 0.5]
        for _ in range(b)
    ]
    return IncidenceSystem(v, blocks)


def _check_fano_uniform() -> tuple[bool, str]:
    report = uniform_fisher(fano())
    det = report.certificate.square_det if report.certificate else None
    ok = (
        report.verdict == VERDICT_HOLDS
        and report.certificate.inequality == (7, 7)
        and det == 576
        and det_aI_bJ(2, 1, 7) == 576
    )
    return ok, f"verdict={report.verdict} det={det}"


def _check_pbd_characterization() -> tuple[bool, str]:
    system = fano()
    r, lam = pbd_characterization_reverse(system)
    rebuilt = pbd_characterization_forward(inc_mat_of(system, ZZ), r, lam)
    ok = (r, lam) == (3, 1) and rebuilt == system
    return ok, f"(r, lambda) = ({r}, {lam}), round trip {'ok' if ok else 'failed'}"


def _check_det_invariance(trials: int) -> tuple[bool, str]:
    rng = random.Random(20260809)
    bad = 0
    for _ in range(trials):
        n = rng.randint(1, 6)
        mat = random_matrix(rng, n, n)
        before = mat.det_bareiss()
        c = rng.randint(-3, 3)
        rows = list(range(n))
        rng.shuffle(rows)
        if n > 1:
            k = rows[0]
            rest = rows[1:1 + rng.randint(1, n - 1)]
            ops = [
                mat.add_multiple_rows(c, k, rest),
                mat.add_row_to_multiple(c, rest, k),
                mat.add_multiple_cols(c, k, rest),
                mat.add_col_to_multiple(c, rest, k),
            ]
        else:
            ops = [mat.add_multiple_rows(c, 0, [])]
        if any(op.det_bareiss() != before for op in ops):
            bad += 1
    return bad == 0, f"{trials - bad}/{trials} trials preserved the determinant"


def _check_rank_lemmas(trials: int) -> tuple[bool, str]:
    rng = random.Random(20260810)
    bad = 0
    for _ in range(trials):
        domain = QQ if rng.random() < 0.5 else GF(5)
        n, m, p = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)
        a = Matrix.build(n, m, domain, lambda i, j: rng.randint(-4, 4))
        b_mat = Matrix.build(m, p, domain, lambda i, j: rng.randint(-4, 4))
        ra, rb, rab = a.rank_field(), b_mat.rank_field(), (a @ b_mat).rank_field()
        if rab > min(ra, rb) or ra > min(n, m) or rb > min(m, p):
            bad += 1
    return bad == 0, f"{trials - bad}/{trials} pairs satisfied the rank lemmas"


def _check_dual_complement(samples: int) -> tuple[bool, str]:
    rng = random.Random(20260811)
    bad = 0
    for _ in range(samples):
        system = random_system(rng)
        n = inc_mat_of(system, ZZ)
        ok = (
            inc_mat_of(system.dual(), ZZ) == n.transpose()
            and inc_mat_of(system.complement(), ZZ)
            == Matrix.ones(system.v, system.b, ZZ) - n
            and system.complement().complement() == system
            and system.dual().dual() == system
        )
        dual = system.dual()
        ok = ok and all(
            dual.replication_number(j) == system.block_size(j) for j in range(system.b)
        ) and all(
            dual.block_size(x) == system.replication_number(x) for x in range(system.v)
        )
        if not ok:
            bad += 1
    return bad == 0, f"{samples - bad}/{samples} systems passed dual/complement identities"


def _check_property_bridge(samples: int) -> tuple[bool, str]:
    rng = random.Random(20260812)
    bad = 0
    for _ in range(samples):
        system = random_system(rng)
        n = inc_mat_of(system, ZZ)
        ok = system_of_mat(n) == system
        for j in range(system.b):
            ok = ok and mat_block_size(n, j) == system.block_size(j)
        for x in range(system.v):
            ok = ok and mat_rep_num(n, x) == system.replication_number(x)
        for i in range(system.b):
            for j in range(system.b):
                ok = ok and mat_inter_num(n, i, j) == system.inter_num(i, j)
        ok = ok and mat_point_index(n, ()) == system.b
        for target in (QQ, GF(2)):
            lifted = lift_01_mat(n, target)
            ok = ok and system_of_mat(lifted) == system
        if not ok:
            bad += 1
    return bad == 0, f"{samples - bad}/{samples} systems bridged set and matrix properties"


def _check_odd_town_exhaustive(max_v: int) -> tuple[bool, str]:
    reports = [verify_exhaustive("odd-town", v) for v in range(1, max_v + 1)]
    total = sum(r.instances_checked for r in reports)
    bad = sum(len(r.violations) for r in reports)
    return bad == 0, f"{total} families checked through v = {max_v}, {bad} violations"


def _check_general_fisher_exhaustive(max_v: int) -> tuple[bool, str]:
    reports = [verify_exhaustive("general-fisher", v) for v in range(2, max_v + 1)]
    total = sum(r.instances_checked for r in reports)
    bad = sum(len(r.violations) for r in reports)
    return bad == 0, f"{total} families checked through v = {max_v}, {bad} violations"


def _check_dual_fisher_exhaustive(max_v: int) -> tuple[bool, str]:
    reports = [verify_exhaustive("dual-fisher", v) for v in range(2, max_v + 1)]
    total = sum(r.instances_checked for r in reports)
    bad = sum(len(r.violations) for r in reports)
    sts = next(enum_bibd(9, 3, 1, limit=1))
    fano_report = fisher_dual(fano())
    sts_report = fisher_dual(sts)
    named_ok = (
        fano_report.verdict == VERDICT_HOLDS
        and fano_report.certificate.inequality == (7, 7)
        and sts_report.verdict == VERDICT_HOLDS
        and sts_report.certificate.inequality == (9, 12)
    )
    return bad == 0 and named_ok, (
        f"{total} duals checked through v = {max_v}, {bad} violations; "
        f"Fano 7 <= 7, Steiner(9) 9 <= 12"
    )


def _check_enumeration_soundness(max_v: int) -> tuple[bool, str]:
    ok = True
    for v in range(0, max_v + 1):
        stream = [frozenset(s.blocks) for s in enum_odd_town(v)]
        ok = ok and len(stream) == len(set(stream)) and set(stream) == naive_odd_town_families(v)
        stream = [frozenset(s.blocks) for s in enum_const_intersect(v)]
        ok = ok and len(stream) == len(set(stream)) and set(stream) == naive_const_intersect_families(v)
    return ok, f"DFS streams match the naive powerset filter for v <= {max_v}"


def _check_odd_town_examples() -> tuple[bool, str]:
    singles = IncidenceSystem(4, [(0,), (1,), (2,), (3,)])
    good = odd_town(singles)
    badsys = IncidenceSystem(5, [(0, 1, 2), (0, 3, 4)])
    bad = odd_town(badsys)
    ok = (
        good.verdict == VERDICT_HOLDS and good.certificate.inequality == (4, 4)
        and bad.verdict == "hypotheses-violated"
    )
    return ok, "singleton family certifies, odd-intersection family rejected"


def _check_general_examples() -> tuple[bool, str]:
    sunflower = IncidenceSystem(4, [(0, 1), (0, 2), (0, 3)])
    rep = general_fisher(sunflower)
    fano_rep = general_fisher(fano())
    dup = general_fisher(IncidenceSystem(2, [(0, 1), (0, 1)]))
    ok = (
        rep.verdict == VERDICT_HOLDS and rep.certificate.inequality == (3, 4)
        and fano_rep.verdict == VERDICT_HOLDS
        and fano_rep.certificate.inequality == (7, 7)
        and dup.verdict == "hypotheses-violated"
    )
    return ok, "sunflower 3 <= 4, Fano 7 <= 7, repeated blocks rejected"


def _check_bibd_enumeration() -> tuple[bool, str]:
    found = next(enum_bibd(7, 3, 1, limit=1))
    cls = found.classify()
    fano_ok = cls.is_bibd and cls.uniform_k == 3 and cls.pbd_lambda == 1
    iso_ok = are_isomorphic(found, fano())
    empty = list(enum_bibd(6, 3, 1))
    return fano_ok and iso_ok and not empty, (
        "(7,3,1) search finds the Fano plane; (6,3,1) stream empty by counting"
    )


def run_selftest(full: bool = False, out: Callable[[str], None] = print) -> bool:
    """Run the suite; print one line per check; True iff everything passed."""
    trials = 1000 if full else 100
    samples = 500 if full else 100
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("uniform Fisher on Fano", _check_fano_uniform),
        ("regular-PBD characterization", _check_pbd_characterization),
        ("determinant invariance", lambda: _check_det_invariance(trials)),
        ("rank lemmas", lambda: _check_rank_lemmas(trials)),
        ("dual/complement identities", lambda: _check_dual_complement(samples)),
        ("set/matrix property bridge", lambda: _check_property_bridge(samples)),
        ("odd-town examples", _check_odd_town_examples),
        ("generalized Fisher examples", _check_general_examples),
        ("BIBD enumeration", _check_bibd_enumeration),
        ("odd-town exhaustive", lambda: _check_odd_town_exhaustive(6 if full else 4)),
        ("generalized Fisher exhaustive", lambda: _check_general_fisher_exhaustive(5 if full else 4)),
        ("dual Fisher exhaustive", lambda: _check_dual_fisher_exhaustive(5 if full else 4)),
        ("enumeration soundness", lambda: _check_enumeration_soundness(4 if full else 3)),
    ]
    all_ok = True
    for name, check in checks:
        try:
            ok, detail = check()
        except Exception as exc:  # a selftest crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok = all_ok and ok
        out(f"[{'ok' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok
