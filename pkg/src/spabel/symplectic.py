"""
The standard symplectic form, the X/Y/Z elementary generator families and
the symplectic Lie algebra over Z/L.

Coordinates are ordered (a_1..a_g, b_1..b_g), so the pairing matrix is
exactly ``omega(g)`` and the block formulas transcribe literally.
"""

from dataclasses import dataclass

from .linalg import IntMatrix, ModMatrix

FAMILIES = ("X", "Y", "Z")


def omega(g):
    """[[0, I_g], [-I_g, 0]]."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    n = 2 * g
    data = [[0] * n for _ in range(n)]
    for i in range(g):
        data[i][g + i] = 1
        data[g + i][i] = -1
    return IntMatrix(data)


def _check_square(M, g):
    if M.shape != (2 * g, 2 * g):
        raise ValueError(f"expected a {2 * g}x{2 * g} matrix, got {M.rows}x{M.cols}")


def is_symplectic(M, g):
    _check_square(M, g)
    W = omega(g)
    return M.T @ W @ M == W


def is_symplectic_mod(M, g):
    """Symplectic condition for a ModMatrix over its own modulus."""
    _check_square(M, g)
    W = ModMatrix(omega(g), M.modulus)
    return M.T @ W @ M == W


def is_sp_lie(A, g):
    """A^t Omega + Omega A == 0 over the modulus of A."""
    _check_square(A, g)
    W = ModMatrix(omega(g), A.modulus)
    return (A.T @ W + W @ A).is_zero()


def symplectic_inverse(M, g):
    # X^t W X = W gives X^-1 = W^-1 X^t W = -W X^t W
    W = omega(g)
    return -(W @ M.T @ W)


def level_of(M):
    """gcd of the entries of M - I; 0 means M is the identity."""
    return (M - IntMatrix.identity(M.rows)).content()


def has_level(M, L):
    """True iff M is congruent to the identity mod L."""
    return level_of(M) % L == 0


@dataclass(frozen=True)
class GeneratorLabel:
    """One of X_{i,j}(r), Y_{i,j}(r), Z_{i,j}(r), indices 1-based.

    X and Y labels are stored with i <= j since the underlying symmetric
    matrix does not see the order.
    """

    family: str
    i: int
    j: int
    r: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.i < 1 or self.j < 1:
            raise ValueError("generator indices are 1-based")
        object.__setattr__(self, "r", int(self.r))
        if self.family == "Z":
            if self.i == self.j:
                raise ValueError("Z generators need i != j")
        elif self.i > self.j:
            i, j = self.j, self.i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "j", j)

    def __str__(self):
        return f"{self.family}[{self.i},{self.j}]({self.r})"

    def with_r(self, r):
        return GeneratorLabel(self.family, self.i, self.j, r)

    def inverse(self):
        # every family is a one-parameter subgroup in r
        return self.with_r(-self.r)

    def omega_conjugate(self):
        """Label of W M W^-1 where M is this generator and W = omega(g)."""
        if self.family == "X":
            return GeneratorLabel("Y", self.i, self.j, -self.r)
        if self.family == "Y":
            return GeneratorLabel("X", self.i, self.j, -self.r)
        return GeneratorLabel("Z", self.j, self.i, -self.r)

    def matrix(self, g):
        if max(self.i, self.j) > g:
            raise ValueError(f"label {self} out of range for genus {g}")
        n = 2 * g
        data = [[int(a == b) for b in range(n)] for a in range(n)]
        i, j, r = self.i - 1, self.j - 1, self.r
        if self.family == "X":
            data[g + i][j] = r
            data[g + j][i] = r
        elif self.family == "Y":
            data[i][g + j] = r
            data[j][g + i] = r
        else:
            data[i][j] = r
            data[g + j][g + i] = -r
        return IntMatrix(data)

    def to_json(self):
        return {"family": self.family, "i": self.i, "j": self.j, "r": str(self.r)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["family"], int(obj["i"]), int(obj["j"]), int(obj["r"]))


@dataclass(frozen=True)
class SymplecticElement:
    g: int
    matrix: IntMatrix
    level: int

    @classmethod
    def from_matrix(cls, M, g):
        if not is_symplectic(M, g):
            raise ValueError("matrix does not preserve the symplectic form")
        return cls(g, M, level_of(M))

    def in_level(self, L):
        return self.level % L == 0

    def inverse(self):
        return SymplecticElement(self.g, symplectic_inverse(self.matrix, self.g), self.level)

    def __matmul__(self, other):
        M = self.matrix @ other.matrix
        return SymplecticElement(self.g, M, level_of(M))


def elementary_generator(label, g):
    M = label.matrix(g)
    # the block form is symplectic by construction; level is |r|
    return SymplecticElement(g, M, abs(label.r))


def bms_generator_set(g, L):
    """All X_{i,j}(L) and Y_{i,j}(L) with i <= j: g(g+1) labels."""
    if g < 1 or L < 1:
        raise ValueError("need g >= 1 and L >= 1")
    pairs = [(i, j) for i in range(1, g + 1) for j in range(i, g + 1)]
    return ([GeneratorLabel("X", i, j, L) for i, j in pairs]
            + [GeneratorLabel("Y", i, j, L) for i, j in pairs])


def level_one_generators(g):
    """X, Y, Z at parameter 1 over all admissible indices."""
    pairs = [(i, j) for i in range(1, g + 1) for j in range(i, g + 1)]
    return ([GeneratorLabel("X", i, j, 1) for i, j in pairs]
            + [GeneratorLabel("Y", i, j, 1) for i, j in pairs]
            + [GeneratorLabel("Z", i, j, 1) for i in range(1, g + 1)
               for j in range(1, g + 1) if i != j])


def generator_labels(g, r):
    """Every admissible X/Y/Z label at parameter r, in canonical order."""
    return [lab.with_r(r) for lab in level_one_generators(g)]


@dataclass(frozen=True)
class SpLieElement:
    g: int
    L: int
    matrix: ModMatrix

    def __post_init__(self):
        if self.matrix.modulus != self.L:
            raise ValueError("matrix modulus differs from L")
        if not is_sp_lie(self.matrix, self.g):
            raise ValueError("matrix violates A^t W + W A = 0")

    def __add__(self, other):
        return SpLieElement(self.g, self.L, self.matrix + other.matrix)

    def __neg__(self):
        return SpLieElement(self.g, self.L, -self.matrix)

    def is_zero(self):
        return self.matrix.is_zero()


def sp_lie_basis(g, L):
    """Z/L-basis of sp_2g(L): [[a, b], [c, -a^t]] with b, c symmetric.

    Order: the g^2 E-type a-blocks, then the symmetric b-blocks, then the
    symmetric c-blocks; g(2g+1) elements in all.
    """
    if g < 1 or L < 2:
        raise ValueError("need g >= 1 and L >= 2")
    n = 2 * g
    out = []

    def emit(cells):
        data = [[0] * n for _ in range(n)]
        for (p, q), v in cells:
            data[p][q] = v
        out.append(SpLieElement(g, L, ModMatrix(data, L)))

    for i in range(g):
        for j in range(g):
            emit([((i, j), 1), ((g + j, g + i), -1)])
    for i in range(g):
        for j in range(i, g):
            emit([((i, g + j), 1), ((j, g + i), 1)])
    for i in range(g):
        for j in range(i, g):
            emit([((g + i, j), 1), ((g + j, i), 1)])
    return out


def sp_lie_dimension(g):
    return g * (2 * g + 1)

