"""Class-indexed operators on V and the linearized R-matrix on V (x) V.

Basis convention everywhere: e_x (x in 1..n) spans V; V (x) V is ordered
row-major, (x, y) |-> (x-1)*n + (y-1).  All matrices are exact 0/1 integer
matrices here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import QuadraticSet, check_ybe, profile
from .exactalg import ExactMatrix, kron
from .retract import ClassMap, class_map


def function_matrix(images, n: int) -> ExactMatrix:
    """The 0/1 matrix sending e_y to e_{images[y-1]} (a map on basis vectors)."""
    entries = [[0] * n for _ in range(n)]
    for y, img in enumerate(images):
        entries[img - 1][y] = 1
    return ExactMatrix(entries)


def flip_matrix(n: int) -> ExactMatrix:
    """The flip tau on V (x) V, e_x (x) e_y |-> e_y (x) e_x."""
    entries = [[0] * (n * n) for _ in range(n * n)]
    for x in range(n):
        for y in range(n):
            entries[y * n + x][x * n + y] = 1
    return ExactMatrix(entries)


@dataclass(frozen=True)
class OperatorFamily:
    """The operators Lbar[c], Rbar[c] and class projectors proj[c] on V.

    Indexed by retraction classes c in 1..k (stored 0-based in the tuples).
    Construction asserts the projector resolution and orthogonality; for
    non-degenerate solutions it additionally asserts that every Lbar/Rbar is
    a permutation matrix and that the class-level intertwining identities
    hold (they can fail for degenerate solutions, where the class-level
    actions need not be well-behaved).
    """

    n: int
    k: int
    lbar: tuple
    rbar: tuple
    proj: tuple
    classes: ClassMap


def build_operators(q: QuadraticSet) -> OperatorFamily:
    cm = class_map(q)
    n, k = q.n, cm.k
    lbar = tuple(function_matrix(q.left_map(cm.reps[c]), n) for c in range(k))
    rbar = tuple(function_matrix(q.right_map(cm.reps[c]), n) for c in range(k))
    proj = tuple(
        ExactMatrix.diagonal([1 if cm.assign[x] == c + 1 else 0 for x in range(n)])
        for c in range(k)
    )
    fam = OperatorFamily(n=n, k=k, lbar=lbar, rbar=rbar, proj=proj, classes=cm)
    _assert_family_invariants(fam, q)
    return fam


def _assert_family_invariants(fam: OperatorFamily, q: QuadraticSet) -> None:
    n, k = fam.n, fam.k
    total = ExactMatrix.zeros(n, n)
    for p in fam.proj:
        total = total + p
    assert total == ExactMatrix.identity(n), "projectors must sum to the identity"
    for c in range(k):
        for d in range(k):
            prod = fam.proj[c] * fam.proj[d]
            expected = fam.proj[c] if c == d else ExactMatrix.zeros(n, n)
            assert prod == expected, "projectors must be orthogonal idempotents"
    if not profile(q).is_nondegenerate:
        return
    for mats in (fam.lbar, fam.rbar):
        for m in mats:
            cols = [m.column(j) for j in range(n)]
            assert all(sum(col) == 1 for col in cols) and all(
                sum(m.entries[i]) == 1 for i in range(n)
            ), "action matrices of a non-degenerate solution must be permutations"
    cm = fam.classes
    for c in range(k):
        xc = cm.reps[c]
        for d in range(k):
            yd = cm.reps[d]
            lc = cm.assign[q.leftact(xc, yd) - 1] - 1
            assert fam.lbar[c] * fam.proj[d] == fam.proj[lc] * fam.lbar[c], (
                "left intertwining identity failed"
            )
            rc = cm.assign[q.rightact(yd, xc) - 1] - 1
            assert fam.rbar[c] * fam.proj[d] == fam.proj[rc] * fam.rbar[c], (
                "right intertwining identity failed"
            )


@dataclass(frozen=True)
class RMatrix:
    """The linearized solution on V (x) V as an n^2 x n^2 exact matrix."""

    n: int
    matrix: ExactMatrix


def build_R_direct(q: QuadraticSet) -> RMatrix:
    """The 0/1 matrix with R(e_x (x) e_y) = e_{x|>y} (x) e_{x<|y}."""
    n = q.n
    size = n * n
    entries = [[0] * size for _ in range(size)]
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            a, b = q.r(x, y)
            entries[(a - 1) * n + (b - 1)][(x - 1) * n + (y - 1)] = 1
    return RMatrix(n=n, matrix=ExactMatrix(entries))


def build_R_from_operators(fam: OperatorFamily) -> RMatrix:
    """R = (sum over class pairs of Lbar[c] proj[d] (x) Rbar[d] proj[c]) o tau."""
    n, k = fam.n, fam.k
    size = n * n
    total = ExactMatrix.zeros(size, size)
    for c in range(k):
        for d in range(k):
            total = total + kron(fam.lbar[c] * fam.proj[d], fam.rbar[d] * fam.proj[c])
    return RMatrix(n=n, matrix=total * flip_matrix(n))


def check_linear_ybe(r: RMatrix) -> bool:
    """(R x I)(I x R)(R x I) = (I x R)(R x I)(I x R) as n^3 x n^3 matrices."""
    eye = ExactMatrix.identity(r.n)
    r1 = kron(r.matrix, eye)
    r2 = kron(eye, r.matrix)
    return r1 * r2 * r1 == r2 * r1 * r2


def check_operator_identities(q: QuadraticSet) -> bool:
    """The three operator identities of the retraction lemma, exactly.

    Quantified over element tuples with class-level indices computed from the
    concrete elements; equivalent to the braid check for arbitrary tables,
    which the test suite verifies exhaustively at n = 2 and by seeded
    sampling at n = 3.
    """
    n = q.n
    cm = class_map(q)
    k = cm.k
    assign = cm.assign
    lbar = [function_matrix(q.left_map(cm.reps[c]), n) for c in range(k)]
    rbar = [function_matrix(q.right_map(cm.reps[c]), n) for c in range(k)]
    proj = [
        ExactMatrix.diagonal([1 if assign[x] == c + 1 else 0 for x in range(n)])
        for c in range(k)
    ]

    def cls(e):
        return assign[e - 1] - 1

    ll_cache = {}
    rr_cache = {}
    lproj = {}
    rproj = {}
    lhs3_cache = {}
    rhs3_cache = {}

    def prod_ll(a, b):
        if (a, b) not in ll_cache:
            ll_cache[(a, b)] = lbar[a] * lbar[b]
        return ll_cache[(a, b)]

    def prod_rr(a, b):
        if (a, b) not in rr_cache:
            rr_cache[(a, b)] = rbar[a] * rbar[b]
        return rr_cache[(a, b)]

    def lhs3(e, c, d):
        if (e, c, d) not in lhs3_cache:
            if (c, d) not in lproj:
                lproj[(c, d)] = lbar[c] * proj[d]
            lhs3_cache[(e, c, d)] = rbar[e] * lproj[(c, d)]
        return lhs3_cache[(e, c, d)]

    def rhs3(e, c, d):
        if (e, c, d) not in rhs3_cache:
            if (c, d) not in rproj:
                rproj[(c, d)] = rbar[c] * proj[d]
            rhs3_cache[(e, c, d)] = lbar[e] * rproj[(c, d)]
        return rhs3_cache[(e, c, d)]

    for x in range(1, n + 1):
        for y in range(1, n + 1):
            a, b = q.r(x, y)
            if prod_ll(cls(x), cls(y)) != prod_ll(cls(a), cls(b)):
                return False
    for y in range(1, n + 1):
        for z in range(1, n + 1):
            u = q.rightact(y, z)
            v = q.leftact(y, z)
            if prod_rr(cls(z), cls(y)) != prod_rr(cls(u), cls(v)):
                return False
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            xy_r = q.rightact(x, y)
            for z in range(1, n + 1):
                left_idx = cls(q.leftact(xy_r, z))
                right_idx = cls(q.rightact(x, q.leftact(y, z)))
                if lhs3(left_idx, cls(x), cls(y)) != rhs3(right_idx, cls(z), cls(y)):
                    return False
    return True
