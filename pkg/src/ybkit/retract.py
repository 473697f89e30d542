"""Retraction of a solution: class maps, induced solution, tower, mpl."""

from __future__ import annotations

from dataclasses import dataclass

from .core import QuadraticSet, check_ybe


class IllDefinedRetraction(Exception):
    """The induced table depends on the choice of class representatives.

    Possible for non-bijective solutions; carries the witness class pair and
    the conflicting induced values.
    """

    def __init__(self, class_pair, images, level=0):
        self.class_pair = class_pair
        self.images = tuple(sorted(images))
        self.level = level
        c, d = class_pair
        super().__init__(
            f"retraction ill-defined on class pair ({c}, {d}) at tower level "
            f"{level}: representative-dependent images {self.images}"
        )


@dataclass(frozen=True)
class ClassMap:
    """Partition of 1..n by equal action pairs (L_x, R_x).

    ``assign`` maps element x (via index x-1) to its class in 1..k; classes
    are numbered in order of least representative, recorded in ``reps``.
    """

    n: int
    k: int
    assign: tuple
    reps: tuple

    def members(self, c: int) -> tuple:
        return tuple(x for x in range(1, self.n + 1) if self.assign[x - 1] == c)

    def is_identity(self) -> bool:
        return self.k == self.n


@dataclass(frozen=True)
class RetractionTower:
    levels: tuple
    class_maps: tuple
    stabilized: bool

    def sizes(self) -> tuple:
        return tuple(q.n for q in self.levels)


def class_map(q: QuadraticSet) -> ClassMap:
    """Partition by x ~ y iff L_x = L_y and R_x = R_y."""
    key_to_class = {}
    assign = []
    reps = []
    for x in range(1, q.n + 1):
        key = (q.left_map(x), q.right_map(x))
        if key not in key_to_class:
            key_to_class[key] = len(reps) + 1
            reps.append(x)
        assign.append(key_to_class[key])
    return ClassMap(n=q.n, k=len(reps), assign=tuple(assign), reps=tuple(reps))


def retract(q: QuadraticSet, _level: int = 0) -> QuadraticSet:
    """The induced solution on retraction classes.

    Well-definedness is verified constructively over every representative
    pair; a representative-dependent class pair raises
    :class:`IllDefinedRetraction` rather than being silently patched.
    """
    cm = class_map(q)
    members = [cm.members(c) for c in range(1, cm.k + 1)]
    rows = []
    for c in range(1, cm.k + 1):
        row = []
        for d in range(1, cm.k + 1):
            images = {
                (cm.assign[q.leftact(x, y) - 1], cm.assign[q.rightact(x, y) - 1])
                for x in members[c - 1]
                for y in members[d - 1]
            }
            if len(images) != 1:
                raise IllDefinedRetraction((c, d), images, level=_level)
            row.append(images.pop())
        rows.append(row)
    result = QuadraticSet(cm.k, rows)
    if check_ybe(q) and not check_ybe(result):
        raise AssertionError("retraction of a solution failed the braid check")
    return result


def tower(q: QuadraticSet, max_depth: int | None = None) -> RetractionTower:
    """Iterate retract until a fixed point (size 1 or identity partition).

    ``stabilized`` is True when the recorded tower reached a fixed point and
    False when it stopped early at ``max_depth``.  Sizes strictly decrease
    along the recorded levels; the default depth budget n always suffices.
    """
    if max_depth is None:
        max_depth = q.n
    levels = [q]
    class_maps = [class_map(q)]
    stabilized = False
    while True:
        current = levels[-1]
        cm = class_maps[-1]
        if current.n == 1 or cm.is_identity():
            stabilized = True
            break
        if len(levels) - 1 >= max_depth:
            break
        levels.append(retract(current, _level=len(levels) - 1))
        class_maps.append(class_map(levels[-1]))
    return RetractionTower(
        levels=tuple(levels), class_maps=tuple(class_maps), stabilized=stabilized
    )


def mpl(q: QuadraticSet) -> int | None:
    """Multipermutation level: least m with |Ret^m| = 1, None if never reached."""
    t = tower(q)
    if t.levels[-1].n == 1:
        return len(t.levels) - 1
    return None


def is_retraction_trivial(q: QuadraticSet) -> bool:
    """True iff retract(q) is the flip solution on its classes."""
    rq = retract(q)
    return rq == QuadraticSet.flip(rq.n)


def retraction_permutation_maps(q: QuadraticSet):
    """(f, g) with retract(q)(x, y) = (f(y), g(x)) when that form holds.

    Returns None when the retraction is not a permutation solution (the maps
    must be well-defined permutations).  The flip retraction yields a pair of
    identities.
    """
    rq = retract(q)
    k = rq.n
    f = [None] * k
    g = [None] * k
    for x in range(1, k + 1):
        for y in range(1, k + 1):
            a, b = rq.r(x, y)
            if f[y - 1] is None:
                f[y - 1] = a
            elif f[y - 1] != a:
                return None
            if g[x - 1] is None:
                g[x - 1] = b
            elif g[x - 1] != b:
                return None
    f = tuple(f)
    g = tuple(g)
    if sorted(f) != list(range(1, k + 1)) or sorted(g) != list(range(1, k + 1)):
        return None
    return f, g
