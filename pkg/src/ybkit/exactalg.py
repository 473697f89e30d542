"""Exact arithmetic kernel: cyclotomic numbers and dense exact linear algebra.

Everything here is exact.  Scalars are Python ints, ``fractions.Fraction``,
or :class:`CycNum` (elements of the cyclotomic field Q(zeta_N)); matrices are
dense tuples of tuples.  No floating point enters any computation.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import lcm


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (ascending coefficient lists)

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod_exact(a, b):
    """Divide a by b; works for int or Fraction coefficients."""
    a = list(a)
    b = _poly_trim(b)
    lead = b[-1]
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(_poly_trim(a)) >= len(b):
        a = _poly_trim(a)
        shift = len(a) - len(b)
        factor = a[-1] if lead == 1 else Fraction(a[-1]) / Fraction(lead)
        if isinstance(factor, Fraction) and factor.denominator == 1:
            factor = factor.numerator
        quot[shift] = factor
        for i, y in enumerate(b):
            a[i + shift] -= factor * y
    return _poly_trim(quot), _poly_trim(a)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple:
    """Coefficients of the cyclotomic polynomial Phi_order, ascending degree."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if order == 1:
        return (-1, 1)
    poly = [0] * order + [1]
    poly[0] = -1  # x^order - 1
    for d in range(1, order):
        if order % d == 0:
            poly, rem = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(int(c) for c in poly)


def euler_phi(order: int) -> int:
    """Degree of Phi_order."""
    return len(cyclotomic_polynomial(order)) - 1


# ---------------------------------------------------------------------------
# cyclotomic numbers


class CycNum:
    """An exact element of Q(zeta_N), reduced modulo Phi_N.

    ``coeffs`` is a tuple of Fractions of length phi(N); the represented value
    is sum(coeffs[i] * zeta_N**i).  Rationals embed with N = 1.
    """

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus, coeffs):
        phi = euler_phi(modulus)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = self._reduce(modulus, cs)
        cs += [Fraction(0)] * (phi - len(cs))
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def _reduce(modulus, cs):
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(modulus)]
        _, rem = _poly_divmod_exact(cs, phi_poly)
        return list(rem)

    # -- constructors

    @classmethod
    def from_rational(cls, value, modulus: int = 1) -> "CycNum":
        return cls(modulus, [Fraction(value)])

    @classmethod
    def zeta(cls, modulus: int, power: int = 1) -> "CycNum":
        power %= modulus
        coeffs = [Fraction(0)] * power + [Fraction(1)]
        return cls(modulus, coeffs)

    @classmethod
    def coerce(cls, value, modulus: int = 1) -> "CycNum":
        if isinstance(value, CycNum):
            return value
        return cls.from_rational(value, modulus)

    # -- structure

    def promote(self, modulus: int) -> "CycNum":
        """Embed into Q(zeta_M) for a multiple M of the current modulus."""
        if modulus == self.modulus:
            return self
        if modulus % self.modulus != 0:
            raise ValueError("can only promote to a multiple of the modulus")
        step = modulus // self.modulus
        out = [Fraction(0)] * (max(len(self.coeffs) - 1, 0) * step + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] += c
        return CycNum(modulus, out)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def _common(self, other):
        other = CycNum.coerce(other)
        m = lcm(self.modulus, other.modulus)
        return self.promote(m), other.promote(m)

    # -- ring / field operations

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, CycNum)):
            return NotImplemented
        a, b = self._common(other)
        return CycNum(a.modulus, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.modulus, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, CycNum)):
            return NotImplemented
        return self + (-CycNum.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, CycNum)):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return CycNum(self.modulus, [c * other for c in self.coeffs])
        a, b = self._common(other)
        prod = _poly_mul(list(a.coeffs), list(b.coeffs))
        return CycNum(a.modulus, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via extended gcd with Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("cannot invert zero")
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(self.modulus)]
        # extended Euclid tracking u with u * self = r mod Phi; ends at constant r
        r0, r1 = phi_poly, _poly_trim(list(self.coeffs))
        u0, u1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod_exact(r0, r1)
            r0, r1 = r1, r
            u0, u1 = u1, _poly_sub(u0, _poly_mul(q, u1))
        assert len(r0) == 1  # Phi_N is irreducible over Q
        const = r0[0]
        inv = [Fraction(c) / const for c in u0]
        result = CycNum(self.modulus, inv)
        assert (result * self) == 1
        return result

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction, CycNum)):
            return NotImplemented
        a, b = self._common(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycNum.from_rational(1, self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "CycNum":
        """Complex conjugation, zeta -> zeta^(N-1)."""
        out = CycNum.from_rational(0, self.modulus)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                out = out + c * CycNum.zeta(self.modulus, (-i) % self.modulus)
        return out

    def is_root_of_unity(self) -> bool:
        """True when some power x^k with 1 <= k <= N equals 1 exactly."""
        acc = self
        for _ in range(self.modulus):
            if acc == 1:
                return True
            acc = acc * self
        return False

    # -- comparison / rendering

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def __repr__(self):
        return f"CycNum({self.modulus}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Deterministic text form: rational, (q)*zeta(N)^k, or a poly sum."""
        if self.is_rational():
            return str(self.coeffs[0])
        for k in range(1, self.modulus):
            ratio = self * CycNum.zeta(self.modulus, (-k) % self.modulus)
            if ratio.is_rational():
                q = ratio.rational_value()
                power = f"zeta({self.modulus})" + (f"^{k}" if k != 1 else "")
                if q == 1:
                    return power
                if q == -1:
                    return "-" + power
                return f"({q})*{power}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = f"zeta({self.modulus})" + (f"^{i}" if i != 1 else "")
                if c == 1:
                    terms.append(power)
                elif c == -1:
                    terms.append(f"-{power}")
                else:
                    terms.append(f"({c})*{power}")
        return " + ".join(terms).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# dense exact matrices


def _inv_scalar(e):
    if isinstance(e, CycNum):
        return e.inverse()
    return Fraction(1) / Fraction(e)


class ExactMatrix:
    """Dense matrix with exact entries (int, Fraction, or CycNum)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(row) for row in entries)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values) -> "ExactMatrix":
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        for ra, rb in zip(self.entries, other.entries):
            for a, b in zip(ra, rb):
                if not (a == b):
                    return False
        return True

    __hash__ = None

    def __add__(self, other):
        self._check_shape(other)
        return ExactMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        self._check_shape(other)
        return ExactMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return ExactMatrix([[-a for a in row] for row in self.entries])

    def _check_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return self.scale(other)
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch for product")
        bt = tuple(zip(*other.entries))
        out = [
            [sum(a * b for a, b in zip(row, col) if not (a == 0 or b == 0)) for col in bt]
            for row in self.entries
        ]
        return ExactMatrix(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return self.scale(other)
        return NotImplemented

    def scale(self, s):
        return ExactMatrix([[s * a for a in row] for row in self.entries])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.entries)))

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.entries)

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def apply(self, vector) -> tuple:
        """Matrix times column vector (vector given as a flat sequence)."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum(a * v for a, v in zip(row, vector) if not (a == 0 or v == 0))
            for row in self.entries
        )

    def flatten(self) -> tuple:
        return tuple(a for row in self.entries for a in row)

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in row) for row in self.entries)
        return f"ExactMatrix[{self.rows}x{self.cols}: {body}]"


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product with row-major block convention."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            row = []
            for j in range(a.cols):
                aij = a.entries[i][j]
                if aij == 0:
                    row.extend([0] * b.cols)
                else:
                    row.extend(aij * b.entries[k][l] for l in range(b.cols))
            out.append(row)
    return ExactMatrix(out)


def rref(m: ExactMatrix):
    """Reduced row echelon form.  Returns (matrix, rank, pivot column tuple).

    Pivot choice is deterministic: first row with a nonzero entry in the
    leftmost unfinished column.
    """
    work = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not (work[i][c] == 0):
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = _inv_scalar(work[r][c])
        work[r] = [inv * v for v in work[r]]
        for i in range(nrows):
            if i != r and not (work[i][c] == 0):
                f = work[i][c]
                work[i] = [v - f * w for v, w in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return ExactMatrix(work), r, tuple(pivots)


def kernel(m: ExactMatrix):
    """Exact basis of the null space, ordered by free-column index."""
    reduced, rank, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * m.cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced.entries[r][fc]
        basis.append(tuple(vec))
    return basis


def det(m: ExactMatrix):
    """Exact determinant by Gaussian elimination with division."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    work = [list(row) for row in m.entries]
    result = Fraction(1)
    sign = 1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not (work[i][c] == 0):
                pr = i
                break
        if pr is None:
            return 0 * result
        if pr != c:
            work[c], work[pr] = work[pr], work[c]
            sign = -sign
        pivot = work[c][c]
        result = result * pivot
        inv = _inv_scalar(pivot)
        for i in range(c + 1, n):
            if not (work[i][c] == 0):
                f = work[i][c] * inv
                work[i] = [v - f * w for v, w in zip(work[i], work[c])]
    return sign * result
