"""
Second and third exterior powers of H = Z^2g with the induced action of
integer matrices, the embedding H -> wedge^3 H, and coinvariant quotients.

Basis wedges are strictly increasing 1-based index tuples in lexicographic
order; coordinate p <= g is a_p and coordinate g + p is b_p.  A matrix acts
on column vectors, so M(x ^ y ^ z) = Mx ^ My ^ Mz.
"""

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb, gcd, prod

from .errors import HypothesisError
from .linalg import IntMatrix, as_prime_power, cokernel_structure, elementary_divisors, stack
from .symplectic import generator_labels, has_level, omega

WHICH = ("wedge3", "wedge3_mod_h", "wedge2")
_ALIASES = {"wedge3modh": "wedge3_mod_h"}


def ext_basis(g, k):
    if k not in (2, 3):
        raise ValueError("only degrees 2 and 3 are supported")
    if 2 * g < k:
        raise ValueError(f"wedge^{k} of a rank-{2 * g} module is zero")
    return list(combinations(range(1, 2 * g + 1), k))


def _perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


_SIGNS = {k: [(p, _perm_sign(p)) for p in permutations(range(k))] for k in (1, 2, 3)}


def _minor(rows_of, cols):
    # rows_of: k rows already restricted; cols: k column indices
    k = len(cols)
    total = 0
    for p, s in _SIGNS[k]:
        term = s
        for r in range(k):
            term *= rows_of[r][cols[p[r]]]
            if not term:
                break
        total += term
    return total


@dataclass(frozen=True)
class ExtVector:
    g: int
    degree: int
    coeffs: dict = field(default_factory=dict)
    modulus: int = 0

    def __post_init__(self):
        clean = {}
        for idx, c in self.coeffs.items():
            idx = tuple(idx)
            if len(idx) != self.degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"bad basis index {idx}")
            c = c % self.modulus if self.modulus else c
            if c:
                clean[idx] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis_vector(cls, g, idx, modulus=0):
        return cls(g, len(idx), {tuple(idx): 1}, modulus)

    def __eq__(self, other):
        if not isinstance(other, ExtVector):
            return NotImplemented
        return ((self.g, self.degree, self.modulus, self.coeffs)
                == (other.g, other.degree, other.modulus, other.coeffs))

    def __hash__(self):
        return hash((self.g, self.degree, self.modulus, tuple(sorted(self.coeffs.items()))))

    def _same(self, other):
        if (self.g, self.degree, self.modulus) != (other.g, other.degree, other.modulus):
            raise ValueError("incompatible exterior vectors")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return ExtVector(self.g, self.degree, out, self.modulus)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ExtVector(self.g, self.degree, {k: c * v for k, v in self.coeffs.items()},
                         self.modulus)

    def is_zero(self):
        return not self.coeffs

    def to_list(self):
        return [self.coeffs.get(idx, 0) for idx in ext_basis(self.g, self.degree)]

    @classmethod
    def from_list(cls, g, degree, values, modulus=0):
        return cls(g, degree, dict(zip(ext_basis(g, degree), values)), modulus)


def wedge(g, *vectors):
    """x_1 ^ ... ^ x_k for coordinate vectors of length 2g."""
    k = len(vectors)
    coeffs = {}
    for idx in ext_basis(g, k):
        rows = [[vectors[c][i - 1] for c in range(k)] for i in idx]
        coeffs[idx] = _minor(rows, list(range(k)))
    return ExtVector(g, k, coeffs)


def compound_matrix(M, k):
    """Matrix of wedge^k M in the lexicographic basis (column J = M e_J)."""
    g = M.rows // 2
    basis = ext_basis(g, k)
    data = M.tolist()
    out = [[0] * len(basis) for _ in basis]
    for r, I in enumerate(basis):
        rows = [data[i - 1] for i in I]
        for c, J in enumerate(basis):
            out[r][c] = _minor(rows, [j - 1 for j in J])
    return IntMatrix(out)


def induced_action(M, v):
    if M.shape != (2 * v.g, 2 * v.g):
        raise ValueError(f"expected a {2 * v.g}x{2 * v.g} matrix")
    C = compound_matrix(M, v.degree)
    return ExtVector.from_list(v.g, v.degree, C.apply(v.to_list()), v.modulus)


def reduce_ext_mod(v, L):
    return ExtVector(v.g, v.degree, dict(v.coeffs), L)


def _unit(g, p):
    x = [0] * (2 * g)
    x[p] = 1
    return x


def symplectic_class(g):
    """omega = sum_i a_i ^ b_i."""
    return ExtVector(g, 2, {(i, g + i): 1 for i in range(1, g + 1)})


def embed_h(g, x):
    """x ^ omega in wedge^3 H."""
    if g < 2:
        raise HypothesisError("the embedding H -> wedge^3 H needs g >= 2")
    if len(x) != 2 * g:
        raise ValueError("vector length mismatch")
    total = ExtVector(g, 3)
    for i in range(g):
        total = total + wedge(g, x, _unit(g, i), _unit(g, g + i))
    return total


def pairing(g, x, y):
    W = omega(g)
    return sum(x[p] * W[p, q] * y[q] for p in range(2 * g) for q in range(2 * g))


def contraction(v):
    """wedge^3 H -> H, x^y^z |-> w(y,z)x - w(x,z)y + w(x,y)z."""
    g = v.g
    out = [0] * (2 * g)
    for (p, q, r), c in v.coeffs.items():
        x, y, z = _unit(g, p - 1), _unit(g, q - 1), _unit(g, r - 1)
        for vec, w in ((x, pairing(g, y, z)), (y, -pairing(g, x, z)), (z, pairing(g, x, y))):
            if w:
                for t in range(2 * g):
                    out[t] += c * w * vec[t]
    return out


def pairing_functional(v):
    """wedge^2 H -> Z, x^y |-> w(x, y)."""
    g = v.g
    return sum(c * pairing(g, _unit(g, p - 1), _unit(g, q - 1)) for (p, q), c in v.coeffs.items())


@dataclass(frozen=True)
class ExtModulePresentation:
    g: int
    degree: int
    modulus: int
    relations: IntMatrix

    def structure(self):
        n = comb(2 * self.g, self.degree)
        blocks = [self.relations]
        if self.modulus:
            blocks.append(IntMatrix.identity(n) * self.modulus)
        return cokernel_structure(stack(blocks, n), n)


def embedding_matrix(g):
    """Rows: embed_h of each standard basis vector of H."""
    return IntMatrix([embed_h(g, _unit(g, p)).to_list() for p in range(2 * g)])


def relation_rows(g, L, degree):
    """Rows M e - e for M in the level-L X/Y/Z generators, sorted by label then wedge."""
    n = comb(2 * g, degree)
    rows = []
    for lab in generator_labels(g, L):
        C = compound_matrix(lab.matrix(g), degree)
        for c in range(n):
            col = list(C.col(c))
            col[c] -= 1
            rows.append(col)
    return IntMatrix(rows, n)


def _normalize_which(which):
    which = _ALIASES.get(which, which)
    if which not in WHICH:
        raise ValueError(f"unknown module {which!r}; expected one of {WHICH}")
    return which


def coinvariant_presentation(g, L, which):
    which = _normalize_which(which)
    if g < 2 or L < 2:
        raise HypothesisError("coinvariants need g >= 2 and L >= 2")
    degree = 2 if which == "wedge2" else 3
    rel = relation_rows(g, L, degree)
    if which == "wedge3_mod_h":
        rel = stack([rel, embedding_matrix(g)], rel.cols)
    return ExtModulePresentation(g, degree, 0, rel)


def coinvariants(g, L, which):
    return coinvariant_presentation(g, L, which).structure()


def mod_l_triviality(g, L, degree=3):
    """Every level-L generator acts trivially on wedge^degree H(L)."""
    for lab in generator_labels(g, L):
        M = lab.matrix(g)
        if not has_level(M, L):
            return False
        for idx in ext_basis(g, degree):
            e = ExtVector.basis_vector(g, idx)
            if reduce_ext_mod(induced_action(M, e), L) != reduce_ext_mod(e, L):
                return False
    return True


def proof_witness(g, L):
    """A generator M with M b_1 = b_1 + L a_1 fixing a_2..a_g, b_2..b_g."""
    b1 = _unit(g, g)
    target = list(b1)
    target[0] += L
    fixed = [p for p in range(2 * g) if p not in (0, g)]
    for lab in generator_labels(g, L):
        M = lab.matrix(g)
        if list(M.apply(b1)) != target:
            continue
        if all(list(M.apply(_unit(g, p))) == _unit(g, p) for p in fixed):
            return lab
    return None


def image_order_mod(g, L):
    """|image of H(L) in wedge^3 H(L)| from the Smith form of the embedding."""
    divisors = elementary_divisors(embedding_matrix(g))
    return prod(L // gcd(d, L) for d in divisors)


def theorem_quotient_order(g, L, n):
    """|wedge^3 H(L)| for n = 1, |(wedge^3 H(L)) / H(L)| for n = 0."""
    if g < 2 or L < 2 or n not in (0, 1):
        raise HypothesisError("need g >= 2, L >= 2 and n in {0, 1}")
    if n == 1:
        return L ** comb(2 * g, 3)
    pres = ExtModulePresentation(g, 3, L, embedding_matrix(g))
    return pres.structure().order


def quotient_order_report(g, L, n):
    c = comb(2 * g, 3)
    order = theorem_quotient_order(g, L, n)
    report = {"g": g, "L": L, "n": n, "order": str(order), "wedge3_order": str(L ** c)}
    if n == 0:
        image = image_order_mod(g, L)
        report["image_of_H_order"] = str(image)
        report["two_route_order"] = str(L ** c // image)
        report["two_route_agree"] = (L ** c) % image == 0 and L ** c // image == order
        report["H_injective"] = image == L ** (2 * g)
    pp = as_prime_power(order)
    report["order_factored"] = f"{pp[0]}^{pp[1]}" if pp else None
    return report


def coinvariants_report(g, L, which):
    which = _normalize_which(which)
    pres = coinvariant_presentation(g, L, which)
    s = pres.structure()
    degree = pres.degree
    n = comb(2 * g, degree)
    report = {"g": g, "L": L, "module": which, "structure": s.to_json(),
              "relation_rows": pres.relations.rows}
    passed = True
    if which == "wedge3":
        lower = mod_l_triviality(g, L, 3)
        exact = s.free_rank == 0 and s.torsion == (L,) * n
        report.update(expected_order=f"{L}^{n}", mod_l_triviality=lower,
                      order_matches=exact, proof_witness=str(proof_witness(g, L)))
        passed = lower and exact
    elif which == "wedge2":
        rows_killed = all(pairing_functional(ExtVector.from_list(g, 2, row)) == 0
                          for row in pres.relations)
        report.update(pairing_invariant=rows_killed,
                      free_rank_at_least_one=s.free_rank >= 1)
        passed = rows_killed and s.free_rank >= 1
    else:
        expected = quotient_order_report(g, L, 0)
        agree = s.order is not None and str(s.order) == expected["two_route_order"]
        report.update(expected_order=expected["two_route_order"], two_route_agree=agree,
                      image_of_H_order=expected["image_of_H_order"])
        passed = agree
    report["flags"] = ["outside theorem hypotheses (g >= 3)"] if g < 3 else []
    if L % 2 == 0:
        report["flags"].append("outside theorem hypotheses (L odd)")
    report["passed"] = passed
    return report
