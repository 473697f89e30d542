"""Joint eigenbasis and the twist matrix of roots of unity.

For a non-degenerate solution with trivial retraction the operators
{Lbar[c], Rbar[c], proj[c]} commute pairwise, so V has a basis of joint
eigenvectors v_1..v_n, and R(v_i (x) v_j) = q_ij * (v_j (x) v_i) for roots
of unity q_ij.  Everything is computed and verified in exact arithmetic
over Q(zeta_N), with N the lcm of the orders of the action permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .core import QuadraticSet, check_ybe, profile
from .exactalg import CycNum, ExactMatrix, kernel, rref
from .linearize import OperatorFamily, build_operators
from .retract import is_retraction_trivial


class NotCommuting(Exception):
    """Some pair of family operators fails to commute (retraction not trivial)."""


class IncompleteSplit(Exception):
    """Eigenspace dimensions failed to add up; internal consistency failure."""


class RetractionNotTrivial(Exception):
    """The q-twist requires a solution whose retraction is the flip."""


@dataclass(frozen=True)
class QTwist:
    """A joint eigenbasis with its twist data.

    ``basis[i]`` is the coordinate tuple of v_{i+1}; ``qmatrix[i][j]`` is the
    root of unity with R(v_{i+1} (x) v_{j+1}) = q * (v_{j+1} (x) v_{i+1});
    ``class_of[i]`` is the unique retraction class (1-based) supporting v_{i+1};
    ``eigen_l[i][c]`` / ``eigen_r[i][c]`` are the eigenvalues of Lbar[c+1] /
    Rbar[c+1] on v_{i+1}.
    """

    n: int
    modulus: int
    basis: tuple
    qmatrix: tuple
    class_of: tuple
    eigen_l: tuple
    eigen_r: tuple


@dataclass(frozen=True)
class QuadraticRelations:
    """Degree-2 relations of the quadratic algebra read off the twist.

    v_i v_j = q_ij v_j v_i for i < j; indices with q_ii != 1 have v_i^2 = 0;
    pairs with q_ij q_ji != 1 have v_i v_j = 0.
    """

    commutation: tuple
    zero_squares: tuple
    zero_products: tuple


def _perm_order(images) -> int:
    """Multiplicative order of a permutation given as a 1-based image tuple."""
    n = len(images)
    seen = [False] * n
    order = 1
    for start in range(1, n + 1):
        if seen[start - 1]:
            continue
        length = 0
        x = start
        while not seen[x - 1]:
            seen[x - 1] = True
            x = images[x - 1]
            length += 1
        order = lcm(order, length)
    return order


def family_modulus(q: QuadraticSet) -> int:
    """lcm of the multiplicative orders of all action maps (non-degenerate q)."""
    orders = [_perm_order(q.left_map(x)) for x in range(1, q.n + 1)]
    orders += [_perm_order(q.right_map(y)) for y in range(1, q.n + 1)]
    return lcm(*orders)


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_scale(s, a):
    return tuple(s * x for x in a)


def _vec_is_zero(a):
    return all(x == 0 for x in a)


def _check_commuting(fam: OperatorFamily) -> None:
    ops = list(fam.lbar) + list(fam.rbar) + list(fam.proj)
    names = (
        [f"Lbar[{c + 1}]" for c in range(fam.k)]
        + [f"Rbar[{c + 1}]" for c in range(fam.k)]
        + [f"proj[{c + 1}]" for c in range(fam.k)]
    )
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if ops[i] * ops[j] != ops[j] * ops[i]:
                raise NotCommuting(f"{names[i]} and {names[j]} do not commute")


def _split_by_operator(subspaces, op: ExactMatrix, order: int, modulus: int):
    """Refine every subspace into exact eigenspaces of ``op``.

    Candidate eigenvalues are zeta_N^k with k a multiple of N/order (the
    eigenvalues of a permutation matrix of that order), scanned in ascending
    exponent order.  Each subspace is a (class, exponent tuple, basis) triple.
    """
    step = modulus // order
    out = []
    eye = ExactMatrix.identity(op.rows)
    for cls_idx, exps, basis in subspaces:
        if op == eye:
            out.append((cls_idx, exps + (0,), basis))
            continue
        d = len(basis)
        images = [op.apply(v) for v in basis]
        found = 0
        for k in range(0, modulus, step):
            zk = CycNum.zeta(modulus, k)
            # rows indexed by coordinate, columns by j: column j is (op - zeta^k) b_j
            shifted = [
                tuple(images[j][i] - zk * basis[j][i] for j in range(d))
                for i in range(len(basis[0]))
            ]
            coeff_sets = kernel(ExactMatrix(shifted))
            if not coeff_sets:
                continue
            vectors = []
            for coeffs in coeff_sets:
                v = tuple(
                    sum(coeffs[j] * basis[j][i] for j in range(d))
                    for i in range(len(basis[0]))
                )
                vectors.append(v)
            out.append((cls_idx, exps + (k,), vectors))
            found += len(vectors)
            if found == d:
                break
        if found != d:
            raise IncompleteSplit(
                f"eigenspaces of dimension {found} != subspace dimension {d}"
            )
    return out


def _canonical_basis(vectors):
    """rref the rows so each leaf basis is unique with leading coefficient 1."""
    reduced, rank, _ = rref(ExactMatrix(vectors))
    assert rank == len(vectors)
    return [reduced.entries[i] for i in range(rank)]


def joint_eigenbasis(fam: OperatorFamily):
    """A full joint eigenbasis of {Lbar, Rbar, proj}, canonically ordered.

    Raises :class:`NotCommuting` when the family does not commute pairwise.
    Returns the list of basis vectors; the richer per-vector data is exposed
    through :func:`q_matrix`.
    """
    leaves, _ = _joint_eigen_leaves(fam)
    return [v for _, _, vectors in leaves for v in vectors]


def _joint_eigen_leaves(fam: OperatorFamily):
    _check_commuting(fam)
    n, k = fam.n, fam.k
    modulus = 1
    orders = []
    for op_list in (fam.lbar, fam.rbar):
        for c in range(k):
            try:
                images = tuple(
                    next(i + 1 for i in range(n) if op_list[c].entries[i][j] == 1)
                    for j in range(n)
                )
            except StopIteration:
                raise ValueError(
                    "family operators must be permutation matrices "
                    "(degenerate solution?)"
                ) from None
            if sorted(images) != list(range(1, n + 1)):
                raise ValueError(
                    "family operators must be permutation matrices "
                    "(degenerate solution?)"
                )
            orders.append(_perm_order(images))
            modulus = lcm(modulus, orders[-1])
    # start from the class subspaces (the eigenvalue-1 spaces of the projectors)
    subspaces = []
    for c in range(k):
        members = fam.classes.members(c + 1)
        basis = [
            tuple(1 if i == x - 1 else 0 for i in range(n)) for x in members
        ]
        subspaces.append((c, (), basis))
    ops = list(fam.lbar) + list(fam.rbar)
    for op, order in zip(ops, orders):
        subspaces = _split_by_operator(subspaces, op, order, modulus)
    leaves = [
        (cls_idx, exps, _canonical_basis(vectors))
        for cls_idx, exps, vectors in subspaces
    ]
    total = sum(len(vectors) for _, _, vectors in leaves)
    if total != n:
        raise IncompleteSplit(f"joint eigenbasis has {total} vectors, expected {n}")
    return leaves, modulus


def _tensor(v, w):
    return tuple(a * b for a in v for b in w)


def _apply_r(q: QuadraticSet, vec):
    """Apply the linearized solution to a coordinate vector on V (x) V."""
    n = q.n
    out = [0] * (n * n)
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            coeff = vec[(x - 1) * n + (y - 1)]
            if coeff == 0:
                continue
            a, b = q.r(x, y)
            idx = (a - 1) * n + (b - 1)
            out[idx] = out[idx] + coeff
    return tuple(out)


def q_matrix(q: QuadraticSet) -> QTwist:
    """Compute the q-twist of a non-degenerate solution with trivial retraction.

    Every type invariant is verified exactly before returning: each basis
    vector is a joint eigenvector, the reconstruction
    R(v_i (x) v_j) = q_ij v_j (x) v_i holds on all n^2 pairs, and every q_ij
    is a root of unity with q_ij^N = 1.
    """
    if not check_ybe(q):
        raise ValueError("q_matrix requires a solution")
    if not profile(q).is_nondegenerate:
        raise ValueError("q_matrix requires a non-degenerate solution")
    if not is_retraction_trivial(q):
        raise RetractionNotTrivial(
            "the retraction is not the flip; no q-twist basis exists"
        )
    fam = build_operators(q)
    leaves, modulus = _joint_eigen_leaves(fam)
    k = fam.k

    basis = []
    class_of = []
    eigen_l = []
    eigen_r = []
    for cls_idx, exps, vectors in leaves:
        lam = tuple(CycNum.zeta(modulus, exps[c]) for c in range(k))
        mu = tuple(CycNum.zeta(modulus, exps[k + c]) for c in range(k))
        for v in vectors:
            basis.append(tuple(v))
            class_of.append(cls_idx + 1)
            eigen_l.append(lam)
            eigen_r.append(mu)

    n = q.n
    qmat = tuple(
        tuple(
            eigen_l[j][class_of[i] - 1] * eigen_r[i][class_of[j] - 1]
            for j in range(n)
        )
        for i in range(n)
    )

    _verify_twist(q, fam, basis, class_of, eigen_l, eigen_r, qmat, modulus)
    return QTwist(
        n=n,
        modulus=modulus,
        basis=tuple(basis),
        qmatrix=qmat,
        class_of=tuple(class_of),
        eigen_l=tuple(eigen_l),
        eigen_r=tuple(eigen_r),
    )


def _verify_twist(q, fam, basis, class_of, eigen_l, eigen_r, qmat, modulus):
    n, k = q.n, fam.k
    mat = ExactMatrix(basis)
    _, rank, _ = rref(mat)
    assert rank == n, "joint eigenvectors must form a basis"
    for i, v in enumerate(basis):
        supports = []
        for c in range(k):
            pv = fam.proj[c].apply(v)
            if not _vec_is_zero(pv):
                supports.append(c + 1)
                assert pv == tuple(v), "eigenvector must lie inside its class span"
        assert supports == [class_of[i]], "eigenvector supported on several classes"
        for c in range(k):
            lv = fam.lbar[c].apply(v)
            assert lv == _vec_scale(eigen_l[i][c], v), "Lbar eigenvalue mismatch"
            rv = fam.rbar[c].apply(v)
            assert rv == _vec_scale(eigen_r[i][c], v), "Rbar eigenvalue mismatch"
    one = CycNum.from_rational(1, modulus)
    for i in range(n):
        for j in range(n):
            qij = qmat[i][j]
            assert qij ** modulus == one, "twist entries must be roots of unity"
            assert qij.is_root_of_unity()
            lhs = _apply_r(q, _tensor(basis[i], basis[j]))
            rhs = _vec_scale(qij, _tensor(basis[j], basis[i]))
            assert lhs == rhs, f"reconstruction failed at pair ({i + 1}, {j + 1})"


def quadratic_relations(tw: QTwist, involutive: bool) -> QuadraticRelations:
    """Degree-2 relations of Q(X, r) derived purely from the twist matrix.

    The ``involutive`` flag cross-checks the caller's profile: the twist is a
    faithful witness, since r^2 = Id exactly when q_ij q_ji = 1 for all i, j.
    """
    n = tw.n
    commutation = tuple(
        (i + 1, j + 1, tw.qmatrix[i][j]) for i in range(n) for j in range(n) if i < j
    )
    zero_squares = tuple(i + 1 for i in range(n) if not (tw.qmatrix[i][i] == 1))
    zero_products = tuple(
        (i + 1, j + 1)
        for i in range(n)
        for j in range(n)
        if not (tw.qmatrix[i][j] * tw.qmatrix[j][i] == 1)
    )
    twist_involutive = not zero_products
    if involutive != twist_involutive:
        raise ValueError(
            "involutive flag contradicts the twist: "
            f"flag={involutive}, all q_ij*q_ji = 1 is {twist_involutive}"
        )
    return QuadraticRelations(
        commutation=commutation,
        zero_squares=zero_squares,
        zero_products=zero_products,
    )
