"""The Lie algebra generated by the class operators, and its invariants.

Generators are the 0/1 matrices Lbar[c] proj[d] and Rbar[c] proj[d], so the
whole closure lives over exact rationals; no cyclotomic arithmetic is needed
here.  Semisimplicity is decided by the Cartan criterion on the Killing form
of the abstract algebra (from structure constants), not the trace form of
the representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import QuadraticSet, check_ybe, profile
from .exactalg import ExactMatrix, det, kernel, kron, rref
from .linearize import build_operators
from .retract import is_retraction_trivial


def bracket(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a * b - b * a


class _Span:
    """Fully reduced row space with bookkeeping over the adjoined vectors."""

    def __init__(self, length: int):
        self.length = length
        self.rows = []  # (pivot, vector list, combo over basis indices)
        self.nbasis = 0

    def _reduce(self, vec):
        residue = [Fraction(v) for v in vec]
        combo = [Fraction(0)] * self.nbasis
        for pivot, rvec, rcombo in self.rows:
            f = residue[pivot]
            if f:
                residue = [a - f * b for a, b in zip(residue, rvec)]
                combo = [
                    a - f * b
                    for a, b in zip(combo, rcombo + [Fraction(0)] * (self.nbasis - len(rcombo)))
                ]
        return residue, combo

    def coefficients(self, vec):
        """Combo over adjoined vectors expressing vec, or None if outside."""
        residue, combo = self._reduce(vec)
        if any(residue):
            return None
        return [-c for c in combo]

    def add(self, vec) -> bool:
        """Adjoin vec as a new tracked vector; False when already in the span.

        Row invariant: rvec == sum(rcombo[i] * tracked_i); from
        residue == vec + sum(combo[i] * tracked_i) the new row has
        rcombo[i] = combo[i]/lead and rcombo[index] = 1/lead.
        """
        residue, combo = self._reduce(vec)
        pivot = next((i for i, v in enumerate(residue) if v), None)
        index = self.nbasis
        self.nbasis += 1
        for _, _, rcombo in self.rows:
            rcombo.append(Fraction(0))
        if pivot is None:
            return False
        lead = residue[pivot]
        rvec = [v / lead for v in residue]
        rcombo = [c / lead for c in combo] + [Fraction(0)]
        rcombo[index] = Fraction(1) / lead
        new_rows = []
        for p, v, c in self.rows:
            f = v[pivot]
            if f:
                v = [a - f * b for a, b in zip(v, rvec)]
                c = [a - f * b for a, b in zip(c, rcombo)]
            new_rows.append((p, v, c))
        new_rows.append((pivot, rvec, rcombo))
        self.rows = new_rows
        return True


@dataclass(frozen=True)
class LieAlgebraRep:
    """A bracket-closed space of matrices with exact structure constants.

    ``structure[i][j]`` holds the coefficients of [basis[i], basis[j]] over
    the basis; constants are antisymmetric by construction.
    """

    ambient: int
    basis: tuple
    structure: tuple
    generators: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def ad_matrix(self, coeffs) -> ExactMatrix:
        """Matrix of ad(sum coeffs[i] basis[i]) in the basis."""
        d = self.dim
        cols = [
            [
                sum(coeffs[i] * self.structure[i][k][l] for i in range(d))
                for l in range(d)
            ]
            for k in range(d)
        ]
        return ExactMatrix([[cols[k][l] for k in range(d)] for l in range(d)])

    def jacobi_holds(self) -> bool:
        """Jacobi identity on all basis triples, from structure constants."""
        d = self.dim
        c = self.structure
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    for l in range(d):
                        total = sum(
                            c[i][j][m] * c[m][k][l]
                            + c[j][k][m] * c[m][i][l]
                            + c[k][i][m] * c[m][j][l]
                            for m in range(d)
                        )
                        if total != 0:
                            return False
        return True


@dataclass(frozen=True)
class KillingData:
    gram: ExactMatrix
    determinant: Fraction
    nondegenerate: bool


@dataclass(frozen=True)
class TheoremCheck:
    a: bool
    b: bool
    c: bool


@dataclass(frozen=True)
class SemisimplicityReport:
    dim_g: int
    dim_derived: int
    derived_trivial: bool
    derived_is_semisimple: bool
    rank_estimate: int
    type_a_candidate: tuple | None


def lie_generators(q: QuadraticSet) -> list:
    """The 2k^2 generating matrices Lbar[c] proj[d], Rbar[c] proj[d]."""
    fam = build_operators(q)
    gens = []
    for c in range(fam.k):
        for d in range(fam.k):
            gens.append(fam.lbar[c] * fam.proj[d])
    for c in range(fam.k):
        for d in range(fam.k):
            gens.append(fam.rbar[c] * fam.proj[d])
    return gens


def _structure_constants(basis, span):
    d = len(basis)
    structure = [[None] * d for _ in range(d)]
    zero = tuple(Fraction(0) for _ in range(d))
    for i in range(d):
        structure[i][i] = zero
        for j in range(i + 1, d):
            coeffs = span.coefficients(bracket(basis[i], basis[j]).flatten())
            if coeffs is None:
                raise AssertionError("bracket escaped the span; closure is broken")
            coeffs = tuple(coeffs[:d])
            structure[i][j] = coeffs
            structure[j][i] = tuple(-c for c in coeffs)
    return tuple(tuple(row) for row in structure)


def lie_closure(gens) -> LieAlgebraRep:
    """Saturate the span of the generators under the bracket.

    Maintains an rref-reduced span; repeatedly brackets basis pairs and
    adjoins anything outside, in deterministic FIFO order, until a fixed
    point.  The basis is the sequence of adjoined matrices.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    size = gens[0].rows
    if any(m.rows != size or m.cols != size for m in gens):
        raise ValueError("generators must be square matrices of equal size")
    span = _Span(size * size)
    basis = []
    for m in gens:
        if span.add(m.flatten()):
            basis.append(m)
    queue = [(i, j) for j in range(len(basis)) for i in range(j)]
    qi = 0
    while qi < len(queue):
        i, j = queue[qi]
        qi += 1
        br = bracket(basis[i], basis[j])
        if span.add(br.flatten()):
            basis.append(br)
            new = len(basis) - 1
            queue.extend((i2, new) for i2 in range(new))
    # rebuild a clean span over the final basis for coefficient queries
    final_span = _Span(size * size)
    for m in basis:
        assert final_span.add(m.flatten())
    structure = _structure_constants(basis, final_span)
    return LieAlgebraRep(
        ambient=size,
        basis=tuple(basis),
        structure=structure,
        generators=tuple(gens),
    )


def _algebra_from_span(matrices, ambient: int, generators) -> LieAlgebraRep:
    """Canonical subalgebra rep from a spanning set: rref rows become the basis."""
    if not matrices:
        return LieAlgebraRep(
            ambient=ambient, basis=(), structure=(), generators=tuple(generators)
        )
    stacked = ExactMatrix([m.flatten() for m in matrices])
    reduced, rank, _ = rref(stacked)
    basis = [
        ExactMatrix(
            [reduced.entries[r][i * ambient : (i + 1) * ambient] for i in range(ambient)]
        )
        for r in range(rank)
    ]
    span = _Span(ambient * ambient)
    for m in basis:
        assert span.add(m.flatten())
    structure = _structure_constants(basis, span)
    return LieAlgebraRep(
        ambient=ambient,
        basis=tuple(basis),
        structure=structure,
        generators=tuple(generators),
    )


def is_abelian(g: LieAlgebraRep) -> bool:
    return all(
        all(c == 0 for c in g.structure[i][j])
        for i in range(g.dim)
        for j in range(g.dim)
    )


def derived_series(g: LieAlgebraRep) -> list:
    """g, [g,g], [[g,g],[g,g]], ... until the dimension stabilizes or hits 0."""
    series = [g]
    while True:
        current = series[-1]
        if current.dim == 0:
            break
        brackets = [
            bracket(current.basis[i], current.basis[j])
            for i in range(current.dim)
            for j in range(i + 1, current.dim)
        ]
        brackets = [m for m in brackets if not m.is_zero()]
        nxt = _algebra_from_span(brackets, current.ambient, current.basis)
        series.append(nxt)
        if nxt.dim == current.dim or nxt.dim == 0:
            break
    return series


def killing(g: LieAlgebraRep) -> KillingData:
    """Killing form from structure constants; Cartan criterion decides."""
    d = g.dim
    c = g.structure
    gram = ExactMatrix(
        [
            [
                sum(c[i][l][k] * c[j][k][l] for k in range(d) for l in range(d))
                for j in range(d)
            ]
            for i in range(d)
        ]
    ) if d else ExactMatrix([])
    determinant = det(gram)
    return KillingData(
        gram=gram, determinant=determinant, nondegenerate=determinant != 0
    )


def check_commutation_formulas(q: QuadraticSet) -> bool:
    """The three displayed commutator formulas, as exact matrix identities.

    Quantified over retraction-class tuples with class-level actions read
    off least representatives.  Holds for non-degenerate solutions; known to
    fail for some degenerate ones, where the class-level intertwining breaks.
    """
    fam = build_operators(q)
    cm = fam.classes
    k = fam.k
    lbar, rbar, proj = fam.lbar, fam.rbar, fam.proj

    def cl_left(c, d):
        # class of rep(c) |> rep(d)
        return cm.assign[q.leftact(cm.reps[c], cm.reps[d]) - 1] - 1

    def cl_right(c, d):
        # class of rep(c) <| rep(d)
        return cm.assign[q.rightact(cm.reps[c], cm.reps[d]) - 1] - 1

    lp = [[lbar[c] * proj[d] for d in range(k)] for c in range(k)]
    rp = [[rbar[c] * proj[d] for d in range(k)] for c in range(k)]

    for xc in range(k):
        for yc in range(k):
            for zc in range(k):
                for wc in range(k):
                    lhs = bracket(lp[xc][yc], lp[zc][wc])
                    rhs = (
                        proj[cl_left(xc, yc)]
                        * proj[cl_left(xc, cl_left(zc, wc))]
                        * lbar[xc]
                        * lbar[zc]
                        - proj[cl_left(zc, wc)]
                        * proj[cl_left(zc, cl_left(xc, yc))]
                        * lbar[zc]
                        * lbar[xc]
                    )
                    if lhs != rhs:
                        return False
                    lhs = bracket(rp[xc][yc], rp[zc][wc])
                    rhs = (
                        proj[cl_right(yc, xc)]
                        * proj[cl_right(cl_right(wc, zc), xc)]
                        * rbar[xc]
                        * rbar[zc]
                        - proj[cl_right(wc, zc)]
                        * proj[cl_right(cl_right(yc, xc), zc)]
                        * rbar[zc]
                        * rbar[xc]
                    )
                    if lhs != rhs:
                        return False
                    lhs = bracket(lp[xc][yc], rp[zc][wc])
                    rhs = (
                        proj[cl_left(xc, yc)]
                        * proj[cl_left(xc, cl_right(wc, zc))]
                        * lbar[xc]
                        * rbar[zc]
                        - proj[cl_right(wc, zc)]
                        * proj[cl_right(cl_left(xc, yc), zc)]
                        * rbar[zc]
                        * lbar[xc]
                    )
                    if lhs != rhs:
                        return False
    return True


def _leg_embeddings(m: ExactMatrix, n: int):
    """Embed an operator on V (x) V into the three leg pairs of V^(x)3."""
    size = n * n * n
    m12 = [[0] * size for _ in range(size)]
    m13 = [[0] * size for _ in range(size)]
    m23 = [[0] * size for _ in range(size)]
    for p in range(n * n):
        a, b = divmod(p, n)
        for qcol in range(n * n):
            u, v = divmod(qcol, n)
            val = m.entries[p][qcol]
            if val == 0:
                continue
            for c in range(n):
                m12[(a * n + b) * n + c][(u * n + v) * n + c] += val
                m13[(a * n + c) * n + b][(u * n + c) * n + v] += val
                m23[(c * n + a) * n + b][(c * n + u) * n + v] += val
    return ExactMatrix(m12), ExactMatrix(m13), ExactMatrix(m23)


def check_cybe(q: QuadraticSet) -> bool:
    """Classical YBE test for r-hat = sum Lbar[c] proj[d] (x) Rbar[d] proj[c].

    Returns whether [r12, r13] + [r12, r23] + [r13, r23] vanishes exactly on
    V^(x)3.  Recorded as an empirical outcome; nothing is asserted about it.
    """
    fam = build_operators(q)
    n, k = fam.n, fam.k
    total = ExactMatrix.zeros(n * n, n * n)
    for c in range(k):
        for d in range(k):
            total = total + kron(fam.lbar[c] * fam.proj[d], fam.rbar[d] * fam.proj[c])
    r12, r13, r23 = _leg_embeddings(total, n)
    acc = bracket(r12, r13) + bracket(r12, r23) + bracket(r13, r23)
    return acc.is_zero()


def _type_a_partitions(dim: int, rank: int):
    """Multisets {k_i >= 2} with sum(k_i^2 - 1) = dim and sum(k_i - 1) = rank."""
    results = []

    def rec(remaining_dim, remaining_rank, minimum, acc):
        if remaining_dim == 0 and remaining_rank == 0:
            results.append(tuple(acc))
            return
        kk = minimum
        while kk * kk - 1 <= remaining_dim:
            if kk - 1 <= remaining_rank:
                acc.append(kk)
                rec(remaining_dim - (kk * kk - 1), remaining_rank - (kk - 1), kk, acc)
                acc.pop()
            kk += 1

    rec(dim, rank, 2, [])
    return sorted(results)


def semisimplicity_report(q: QuadraticSet) -> SemisimplicityReport:
    """Dimensions, Cartan criterion on the derived algebra, type-A fingerprint.

    ``rank_estimate`` is the minimal centralizer dimension of a deterministic
    generic element over three shifted coefficient ladders; the type-A
    candidate is a dimension/rank fingerprint only.
    """
    if not check_ybe(q):
        raise ValueError("semisimplicity_report requires a solution")
    if not profile(q).is_nondegenerate:
        raise ValueError("semisimplicity_report requires a non-degenerate solution")
    g = lie_closure(lie_generators(q))
    series = derived_series(g)
    derived = series[1] if len(series) > 1 else series[0]
    trivial = derived.dim == 0
    if trivial:
        semisimple = True
        rank = 0
    else:
        semisimple = killing(derived).nondegenerate
        rank = None
        for shift in range(3):
            coeffs = [Fraction(i + 1 + shift) for i in range(derived.dim)]
            dim_centralizer = len(kernel(derived.ad_matrix(coeffs)))
            rank = dim_centralizer if rank is None else min(rank, dim_centralizer)
    candidates = _type_a_partitions(derived.dim, rank)
    return SemisimplicityReport(
        dim_g=g.dim,
        dim_derived=derived.dim,
        derived_trivial=trivial,
        derived_is_semisimple=semisimple,
        rank_estimate=rank,
        type_a_candidate=candidates[0] if candidates else None,
    )


def theorem_check(q: QuadraticSet) -> TheoremCheck:
    """The three equivalent conditions of the characterization theorem.

    (a) the retraction is the flip; (b) the span of {Lbar, Rbar, proj} is an
    abelian subalgebra; (c) the generated Lie algebra is abelian.
    """
    if not check_ybe(q):
        raise ValueError("theorem_check requires a solution")
    if not profile(q).is_nondegenerate:
        raise ValueError("theorem_check requires a non-degenerate solution")
    a = is_retraction_trivial(q)
    fam = build_operators(q)
    ops = list(fam.lbar) + list(fam.rbar) + list(fam.proj)
    b = all(
        ops[i] * ops[j] == ops[j] * ops[i]
        for i in range(len(ops))
        for j in range(i + 1, len(ops))
    )
    c = is_abelian(lie_closure(lie_generators(q)))
    return TheoremCheck(a=a, b=b, c=c)
