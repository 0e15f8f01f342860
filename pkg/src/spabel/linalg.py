"""
Exact dense matrices over Z and Z/m, Smith normal form and cokernels.

Everything here is pure Python on arbitrary-precision ints, so no result
ever depends on word size.  Matrices are immutable and hashable.

>>> M = IntMatrix([[2, 4], [6, 8]])
>>> U, D, V = snf(M)
>>> D.diagonal()
[2, 4]
>>> cokernel_structure(IntMatrix([[3, 0], [0, 3]]), 2)
FinAbPresentation(free_rank=0, torsion=(3, 3))
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod


def _matmul_rows(a, b, ncols):
    # rows of the product; skips zero entries, the generators are sparse
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


class IntMatrix:
    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data, cols=None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def _raw(cls, data, rows, cols):
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def from_entries(cls, rows, cols, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows * cols")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], cols)

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def zero(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls._raw(tuple((0,) * cols for _ in range(rows)), rows, cols)

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def entries(self):
        return tuple(x for row in self._data for x in row)

    def tolist(self):
        return [list(row) for row in self._data]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(row[j] for row in self._data)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        return IntMatrix._raw(tuple(tuple(x + y for x, y in zip(r, s))
                                    for r, s in zip(self._data, other._data)),
                              self.rows, self.cols)

    def __sub__(self, other):
        self._check_same_shape(other)
        return IntMatrix._raw(tuple(tuple(x - y for x, y in zip(r, s))
                                    for r, s in zip(self._data, other._data)),
                              self.rows, self.cols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return IntMatrix._raw(tuple(tuple(c * x for x in r) for r in self._data),
                              self.rows, self.cols)

    def __mul__(self, c):
        if isinstance(c, IntMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(int(c))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return IntMatrix._raw(_matmul_rows(self._data, other._data, other.cols),
                              self.rows, other.cols)

    def __pow__(self, k):
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result, base = IntMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self):
        return IntMatrix._raw(tuple(zip(*self._data)) if self.rows else
                              tuple(() for _ in range(self.cols)), self.cols, self.rows)

    def is_zero(self):
        return not any(any(row) for row in self._data)

    def content(self):
        """gcd of all entries (0 for the zero matrix)."""
        g = 0
        for row in self._data:
            for x in row:
                g = gcd(g, x)
        return g

    def apply(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self._data)

    def det(self):
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def inverse(self):
        """Exact inverse over Z; raises ValueError if the matrix is not unimodular."""
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self._data)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                raise ValueError("matrix is singular")
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        out = []
        for row in a:
            if any(x.denominator != 1 for x in row[n:]):
                raise ValueError("matrix is not invertible over the integers")
            out.append(tuple(int(x) for x in row[n:]))
        return IntMatrix._raw(tuple(out), n, n)

    def mod(self, m):
        return mod_reduce(self, m)

    def diagonal(self):
        return [self._data[i][i] for i in range(min(self.rows, self.cols))]


class ModMatrix:
    """Dense matrix over Z/m with entries kept in [0, m)."""

    __slots__ = ("rows", "cols", "modulus", "_data")

    def __init__(self, data, modulus, cols=None):
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        data = tuple(tuple(int(x) % modulus for x in row) for row in data)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        self.rows, self.cols, self.modulus, self._data = len(data), cols, modulus, data

    @classmethod
    def identity(cls, n, modulus):
        return cls(IntMatrix.identity(n), modulus, n)

    @classmethod
    def zero(cls, rows, modulus, cols=None):
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], modulus, cols)

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def entries(self):
        return tuple(x for row in self._data for x in row)

    def tolist(self):
        return [list(row) for row in self._data]

    def __iter__(self):
        return iter(self._data)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def lift(self):
        """Representatives in [0, m) as an IntMatrix."""
        return IntMatrix._raw(self._data, self.rows, self.cols)

    def _check(self, other):
        if not isinstance(other, ModMatrix):
            raise TypeError("expected a ModMatrix")
        if other.modulus != self.modulus:
            raise ValueError(f"mixed moduli {self.modulus} and {other.modulus}")

    def __eq__(self, other):
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return (self.modulus == other.modulus and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.modulus, self.rows, self.cols, self._data))

    def __repr__(self):
        return f"ModMatrix({self.tolist()!r}, modulus={self.modulus})"

    def __add__(self, other):
        self._check(other)
        return ModMatrix(self.lift() + other.lift(), self.modulus, self.cols)

    def __sub__(self, other):
        self._check(other)
        return ModMatrix(self.lift() - other.lift(), self.modulus, self.cols)

    def __neg__(self):
        return ModMatrix(-self.lift(), self.modulus, self.cols)

    def __mul__(self, c):
        if isinstance(c, (IntMatrix, ModMatrix)):
            raise TypeError("use @ for matrix products")
        return ModMatrix(self.lift() * int(c), self.modulus, self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        return ModMatrix(self.lift() @ other.lift(), self.modulus, other.cols)

    @property
    def T(self):
        return ModMatrix(self.lift().T, self.modulus, self.rows)

    def is_zero(self):
        return not any(any(row) for row in self._data)


def mod_reduce(M, m):
    """Entrywise residue of an integer matrix modulo m >= 2."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    return ModMatrix(M, m, M.cols)


@dataclass(frozen=True)
class FinAbPresentation:
    """Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"elementary divisor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"divisor chain broken: {a} does not divide {b}")

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def order(self):
        """Group order, or None when the group is infinite."""
        return prod(self.torsion) if self.is_finite else None

    @property
    def exponent(self):
        if not self.is_finite:
            return None
        return self.torsion[-1] if self.torsion else 1

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": [str(d) for d in self.torsion],
                "order": None if self.order is None else str(self.order)}


def _smith(a, m, n, track, inverses=False):
    eye = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]
    U = eye(m) if track else None
    V = eye(n) if track else None
    # Ui = U^-1 and Vi = V^-1, updated by the inverse elementary operations
    Ui = eye(m) if inverses else None
    Vi = eye(n) if inverses else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]
        if inverses:
            for row in Ui:
                row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]
        if inverses:
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst, src, q):
        # row dst += q * row src
        rd, rs = a[dst], a[src]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        if track:
            ud, us = U[dst], U[src]
            for c in range(m):
                if us[c]:
                    ud[c] += q * us[c]
        if inverses:
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
        if inverses:
            vs, vd = Vi[src], Vi[dst]
            for c in range(n):
                if vd[c]:
                    vs[c] -= q * vd[c]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # remainders left in the pivot row/column: move the smallest up
            best = None
            for i in range(t + 1, m):
                if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                    best = (abs(a[i][t]), i, None)
            for j in range(t + 1, n):
                if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                    best = (abs(a[t][j]), None, j)
            if best is not None:
                if best[1] is not None:
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[2])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                U[t] = [-x for x in U[t]]
            if inverses:
                for row in Ui:
                    row[t] = -row[t]
    return U, V, Ui, Vi


def snf(M):
    """Smith normal form: returns (U, D, V) with U @ M @ V == D.

    U and V are unimodular, D is diagonal with nonnegative entries
    d1 | d2 | ... (zeros last).
    """
    m, n = M.shape
    a = M.tolist()
    U, V, _, _ = _smith(a, m, n, track=True)
    return (IntMatrix(U, m), IntMatrix(a, n), IntMatrix(V, n))


def snf_with_inverses(M):
    """(U, D, V, U^-1, V^-1); the inverses are carried through the elimination."""
    m, n = M.shape
    a = M.tolist()
    U, V, Ui, Vi = _smith(a, m, n, track=True, inverses=True)
    return (IntMatrix(U, m), IntMatrix(a, n), IntMatrix(V, n), IntMatrix(Ui, m), IntMatrix(Vi, n))


def elementary_divisors(M):
    """Nonzero diagonal of the Smith form, without transforms."""
    m, n = M.shape
    a = M.tolist()
    _smith(a, m, n, track=False)
    return [a[i][i] for i in range(min(m, n)) if a[i][i]]


def cokernel_structure(M, target_rank):
    """Isomorphism type of Z^target_rank modulo the row space of M."""
    if M.cols != target_rank:
        raise ValueError(f"relation matrix has {M.cols} columns, expected {target_rank}")
    divisors = elementary_divisors(M) if M.rows else []
    torsion = tuple(d for d in divisors if d != 1)
    return FinAbPresentation(free_rank=target_rank - len(divisors), torsion=torsion)


def stack(blocks, cols):
    """Vertically stack IntMatrix blocks (possibly empty) with a common width."""
    data = []
    for b in blocks:
        if b.cols != cols:
            raise ValueError("column mismatch while stacking")
        data.extend(b)
    return IntMatrix(data, cols)


def as_prime_power(n):
    """Return (p, e) with n == p**e for a prime p, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1 if p == 2 else 2
        if p > 10**6:
            return None
    if n % p:
        p = n
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None
