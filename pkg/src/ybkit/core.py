"""Finite quadratic sets: predicates, constructors, and exhaustive enumeration.

A quadratic set is a finite set X = {1..n} with an arbitrary map
r: X x X -> X x X stored as a table.  Elements are 1-based throughout,
matching the serialized form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

FILTER_NAMES = frozenset(
    {"solution", "nondegenerate", "involutive", "squarefree", "bijective"}
)


class EnumerationBudgetError(ValueError):
    """Raised when an enumeration request exceeds the configured strategy budget."""


class QuadraticSet:
    """A set {1..n} with a total table r(x, y) = (left, right).

    The derived actions are L_x(y) = first component and R_y(x) = second
    component; both are precomputed as image tuples.
    """

    __slots__ = ("n", "rtable", "left_actions", "right_actions")

    def __init__(self, n: int, rtable):
        if n < 1:
            raise ValueError("n must be positive")
        rows = tuple(tuple((int(a), int(b)) for a, b in row) for row in rtable)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"rtable must be {n}x{n}")
        for x, row in enumerate(rows, start=1):
            for y, (a, b) in enumerate(row, start=1):
                if not (1 <= a <= n and 1 <= b <= n):
                    raise ValueError(f"r({x},{y})=({a},{b}) out of range 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rtable", rows)
        object.__setattr__(
            self, "left_actions", tuple(tuple(a for a, _ in row) for row in rows)
        )
        object.__setattr__(
            self,
            "right_actions",
            tuple(tuple(rows[x][y][1] for x in range(n)) for y in range(n)),
        )

    @classmethod
    def flip(cls, n: int) -> "QuadraticSet":
        """The trivial solution r(x, y) = (y, x)."""
        return cls(n, [[(y, x) for y in range(1, n + 1)] for x in range(1, n + 1)])

    def r(self, x: int, y: int) -> tuple:
        return self.rtable[x - 1][y - 1]

    def leftact(self, x: int, y: int) -> int:
        """x |> y = L_x(y)."""
        return self.rtable[x - 1][y - 1][0]

    def rightact(self, x: int, y: int) -> int:
        """x <| y = R_y(x)."""
        return self.rtable[x - 1][y - 1][1]

    def left_map(self, x: int) -> tuple:
        """Image tuple of L_x (value at y in position y-1)."""
        return self.left_actions[x - 1]

    def right_map(self, y: int) -> tuple:
        return self.right_actions[y - 1]

    def flat(self) -> tuple:
        """Row-major flattened table, the canonical sort/serialization key."""
        return tuple(v for row in self.rtable for pair in row for v in pair)

    def __eq__(self, other):
        if not isinstance(other, QuadraticSet):
            return NotImplemented
        return self.n == other.n and self.rtable == other.rtable

    def __hash__(self):
        return hash((self.n, self.rtable))

    def __repr__(self):
        return f"QuadraticSet(n={self.n}, rtable={self.rtable})"


@dataclass(frozen=True)
class SolutionProfile:
    is_solution: bool
    is_bijective: bool
    is_nondegenerate: bool
    is_involutive: bool
    is_squarefree: bool


def check_ybe(q: QuadraticSet) -> bool:
    """Pointwise braid check: r1 r2 r1 = r2 r1 r2 on all n^3 triples."""
    n = q.n
    rt = q.rtable
    rng = range(1, n + 1)
    for x in rng:
        row_x = rt[x - 1]
        for y in rng:
            a, b = row_x[y - 1]
            row_b = rt[b - 1]
            row_y = rt[y - 1]
            for z in rng:
                c, d = row_b[z - 1]
                e, f = rt[a - 1][c - 1]
                a2, b2 = row_y[z - 1]
                c2, d2 = row_x[a2 - 1]
                if e != c2:
                    return False
                e2, f2 = rt[d2 - 1][b2 - 1]
                if f != e2 or d != f2:
                    return False
    return True


def profile(q: QuadraticSet) -> SolutionProfile:
    """All pointwise predicates, each computed by direct definition."""
    n = q.n
    image = {q.r(x, y) for x in range(1, n + 1) for y in range(1, n + 1)}
    bijective = len(image) == n * n
    nondegenerate = all(len(set(m)) == n for m in q.left_actions) and all(
        len(set(m)) == n for m in q.right_actions
    )
    involutive = all(
        q.r(*q.r(x, y)) == (x, y) for x in range(1, n + 1) for y in range(1, n + 1)
    )
    squarefree = all(q.r(x, x) == (x, x) for x in range(1, n + 1))
    return SolutionProfile(
        is_solution=check_ybe(q),
        is_bijective=bijective,
        is_nondegenerate=nondegenerate,
        is_involutive=involutive,
        is_squarefree=squarefree,
    )


def permutation_solution(f, g) -> QuadraticSet:
    """The quadratic set r(x, y) = (f(y), g(x)) for maps given as image tuples."""
    f = tuple(f)
    g = tuple(g)
    if len(f) != len(g):
        raise ValueError(f"size mismatch: |f|={len(f)}, |g|={len(g)}")
    n = len(f)
    for name, m in (("f", f), ("g", g)):
        if sorted(m) != list(range(1, n + 1)):
            raise ValueError(f"{name} is not a permutation of 1..{n}")
    return QuadraticSet(
        n, [[(f[y - 1], g[x - 1]) for y in range(1, n + 1)] for x in range(1, n + 1)]
    )


def canonicalize(q: QuadraticSet) -> QuadraticSet:
    """Minimal flattened table over all relabelings of 1..n (n <= 4)."""
    if q.n > 4:
        raise EnumerationBudgetError("canonicalize supports n <= 4")
    best = None
    for sigma in itertools.permutations(range(1, q.n + 1)):
        inv = [0] * q.n
        for i, v in enumerate(sigma, start=1):
            inv[v - 1] = i
        rows = []
        for x in range(1, q.n + 1):
            row = []
            for y in range(1, q.n + 1):
                a, b = q.r(inv[x - 1], inv[y - 1])
                row.append((sigma[a - 1], sigma[b - 1]))
            rows.append(tuple(row))
        cand = tuple(rows)
        if best is None or cand < best:
            best = cand
    return QuadraticSet(q.n, best)


def _passes(q: QuadraticSet, filters: frozenset, prof: SolutionProfile) -> bool:
    return (
        ("solution" not in filters or prof.is_solution)
        and ("nondegenerate" not in filters or prof.is_nondegenerate)
        and ("involutive" not in filters or prof.is_involutive)
        and ("squarefree" not in filters or prof.is_squarefree)
        and ("bijective" not in filters or prof.is_bijective)
    )


def enumerate_quadratic_sets(n: int, filters=frozenset()) -> list:
    """All quadratic sets of size n passing the filter, in canonical order.

    The output is deterministic, duplicate-free, and sorted by flattened
    rtable.  Strategy depends on n and the filter:

    * n <= 2: raw scan of all (n^2)^(n^2) tables.
    * n = 3 with 'solution': cell-by-cell backtracking pruned by partial
      braid checks (covers degenerate solutions).
    * 'solution' + 'nondegenerate' (n <= 4): backtracking over the action
      families {L_x}, {R_y} as tuples of permutations, pruned and propagated
      through the pointwise consequences of the braid relation.
    * 'nondegenerate' without 'solution' (n <= 3): full family scan.

    Anything else exceeds the strategy budget and raises
    :class:`EnumerationBudgetError`.
    """
    if n < 1:
        raise ValueError("n must be positive")
    filters = frozenset(filters)
    unknown = filters - FILTER_NAMES
    if unknown:
        raise ValueError(f"unknown filter names: {sorted(unknown)}")

    if n <= 2:
        found = _enumerate_raw(n)
    elif "solution" in filters and "nondegenerate" in filters:
        if n > 4:
            raise EnumerationBudgetError(
                f"non-degenerate solution enumeration supports n <= 4, got {n}"
            )
        found = _enumerate_nondegenerate_solutions(n)
    elif "solution" in filters:
        if n > 3:
            raise EnumerationBudgetError(
                f"general solution enumeration supports n <= 3, got {n}; "
                "add the 'nondegenerate' filter for n = 4"
            )
        found = _enumerate_solutions_backtrack(n)
    elif "nondegenerate" in filters:
        if n > 3:
            raise EnumerationBudgetError(
                f"raw non-degenerate enumeration supports n <= 3, got {n}; "
                "add the 'solution' filter for n = 4"
            )
        found = _enumerate_nondegenerate_raw(n)
    else:
        raise EnumerationBudgetError(
            f"unfiltered enumeration at n={n} would scan {(n * n) ** (n * n)} tables; "
            "restrict with 'solution' and/or 'nondegenerate'"
        )

    out = [q for q in found if _passes(q, filters, profile(q))]
    out.sort(key=QuadraticSet.flat)
    for a, b in zip(out, out[1:]):
        assert a.flat() != b.flat(), "enumeration produced duplicates"
    return out


def _enumerate_raw(n: int):
    values = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    cells = n * n
    for combo in itertools.product(values, repeat=cells):
        rows = [combo[i * n : (i + 1) * n] for i in range(n)]
        yield QuadraticSet(n, rows)


def _enumerate_solutions_backtrack(n: int):
    """All solutions of size n by cell backtracking with partial braid pruning."""
    cells = [(x, y) for x in range(n) for y in range(n)]
    values = [(a, b) for a in range(n) for b in range(n)]
    triples = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]
    rt = [[None] * n for _ in range(n)]
    out = []

    def partial_ok():
        # compare any braid-component values computable from assigned cells
        for x, y, z in triples:
            v = rt[x][y]
            lhs1 = lhs2 = lhs3 = None
            if v is not None:
                a, b = v
                w = rt[b][z]
                if w is not None:
                    c, d = w
                    lhs3 = d
                    u = rt[a][c]
                    if u is not None:
                        lhs1, lhs2 = u
            v2 = rt[y][z]
            rhs1 = rhs2 = rhs3 = None
            if v2 is not None:
                a2, b2 = v2
                w2 = rt[x][a2]
                if w2 is not None:
                    c2, d2 = w2
                    rhs1 = c2
                    u2 = rt[d2][b2]
                    if u2 is not None:
                        rhs2, rhs3 = u2
            if lhs1 is not None and rhs1 is not None and lhs1 != rhs1:
                return False
            if lhs2 is not None and rhs2 is not None and lhs2 != rhs2:
                return False
            if lhs3 is not None and rhs3 is not None and lhs3 != rhs3:
                return False
        return True

    def rec(k):
        if k == len(cells):
            out.append(
                QuadraticSet(
                    n, [[(a + 1, b + 1) for a, b in row] for row in rt]
                )
            )
            return
        x, y = cells[k]
        for v in values:
            rt[x][y] = v
            if partial_ok():
                rec(k + 1)
        rt[x][y] = None

    rec(0)
    return out


def _compose(p, q):
    """(p o q)(i) = p[q[i]] for 0-based image tuples."""
    return tuple(p[i] for i in q)


def _inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _enumerate_nondegenerate_solutions(n: int):
    """Backtracking over permutation families (L_1..L_n, R_1..R_n).

    Prunes with the pointwise consequences of the braid relation and forces
    uniquely determined family members (e.g. L_u = L_x L_y L_v^-1 once the
    other three are known), which collapses the search space.  Every leaf is
    re-verified with the plain triple check.
    """
    perms = list(itertools.permutations(range(n)))
    pinv = {p: _inverse(p) for p in perms}
    L = [None] * n
    R = [None] * n
    out = []

    def consistent():
        for x in range(n):
            if L[x] is None:
                continue
            for y in range(n):
                if L[y] is None or R[y] is None:
                    continue
                u, v = L[x][y], R[y][x]
                if L[u] is not None and L[v] is not None:
                    if _compose(L[x], L[y]) != _compose(L[u], L[v]):
                        return False
        for z in range(n):
            if R[z] is None:
                continue
            for y in range(n):
                if R[y] is None or L[y] is None:
                    continue
                u, v = R[z][y], L[y][z]
                if R[u] is not None and R[v] is not None:
                    if _compose(R[z], R[y]) != _compose(R[u], R[v]):
                        return False
        for y in range(n):
            if R[y] is None or L[y] is None:
                continue
            for x in range(n):
                if L[x] is None:
                    continue
                b = R[y][x]
                if L[b] is None:
                    continue
                for z in range(n):
                    if R[z] is None:
                        continue
                    u = L[b][z]
                    if R[u] is None:
                        continue
                    c = L[y][z]
                    if R[c] is None:
                        continue
                    w = R[c][x]
                    if L[w] is None:
                        continue
                    if R[u][L[x][y]] != L[w][R[z][y]]:
                        return False
        return True

    def propagate():
        assigned = []
        changed = True
        while changed:
            changed = False
            for x in range(n):
                if L[x] is None:
                    continue
                for y in range(n):
                    if L[y] is None or R[y] is None:
                        continue
                    u, v = L[x][y], R[y][x]
                    if L[u] is None and L[v] is not None:
                        L[u] = _compose(_compose(L[x], L[y]), pinv[L[v]])
                        assigned.append((0, u))
                        changed = True
                    elif L[v] is None and L[u] is not None:
                        L[v] = _compose(pinv[L[u]], _compose(L[x], L[y]))
                        assigned.append((0, v))
                        changed = True
            for z in range(n):
                if R[z] is None:
                    continue
                for y in range(n):
                    if R[y] is None or L[y] is None:
                        continue
                    u, v = R[z][y], L[y][z]
                    if R[u] is None and R[v] is not None:
                        R[u] = _compose(_compose(R[z], R[y]), pinv[R[v]])
                        assigned.append((1, u))
                        changed = True
                    elif R[v] is None and R[u] is not None:
                        R[v] = _compose(pinv[R[u]], _compose(R[z], R[y]))
                        assigned.append((1, v))
                        changed = True
        return consistent(), assigned

    def unassign(assigned):
        for which, idx in reversed(assigned):
            if which == 0:
                L[idx] = None
            else:
                R[idx] = None

    order = [(which, idx) for idx in range(n) for which in (0, 1)]

    def rec(k):
        while k < 2 * n:
            which, idx = order[k]
            if (L[idx] if which == 0 else R[idx]) is None:
                break
            k += 1
        if k == 2 * n:
            q = QuadraticSet(
                n,
                [
                    [(L[x][y] + 1, R[y][x] + 1) for y in range(n)]
                    for x in range(n)
                ],
            )
            if check_ybe(q):
                out.append(q)
            return
        which, idx = order[k]
        for p in perms:
            if which == 0:
                L[idx] = p
            else:
                R[idx] = p
            if consistent():
                ok, assigned = propagate()
                if ok:
                    rec(k + 1)
                unassign(assigned)
            if which == 0:
                L[idx] = None
            else:
                R[idx] = None

    rec(0)
    return out


def _enumerate_nondegenerate_raw(n: int):
    perms = list(itertools.permutations(range(1, n + 1)))
    for ls in itertools.product(perms, repeat=n):
        for rs in itertools.product(perms, repeat=n):
            yield QuadraticSet(
                n,
                [
                    [(ls[x][y], rs[y][x]) for y in range(n)]
                    for x in range(n)
                ],
            )
