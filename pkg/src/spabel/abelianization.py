"""
The reduction map phi: Sp(Z, L) -> sp_2g(L), commutator words, the
level-L^2 commutator identities and certificates built from them.

Commutators follow ``[a, b] = a^-1 b^-1 a b``.  This is the convention under
which all of the level-L^2 identities hold literally; with
``a b a^-1 b^-1`` the two-commutator identity for X_{i,i}(L^3) produces
X_{i,i}(-L^3) instead.
"""

import json
import random
from itertools import count, islice
from dataclasses import dataclass, field

from .errors import HypothesisError
from .linalg import IntMatrix, mod_reduce
from .symplectic import (
    GeneratorLabel,
    SpLieElement,
    SymplecticElement,
    bms_generator_set,
    has_level,
    is_sp_lie,
    is_symplectic_mod,
    level_of,
    sp_lie_basis,
    symplectic_inverse,
)

COMMUTATOR_CONVENTION = "[a,b] = a^-1 b^-1 a b"


def commutator(a, b, g):
    return symplectic_inverse(a, g) @ symplectic_inverse(b, g) @ a @ b


def phi(X, L):
    """X = I + L*A  |->  A mod L."""
    M = X.matrix if isinstance(X, SymplecticElement) else X
    g = M.rows // 2
    D = M - IntMatrix.identity(M.rows)
    if D.content() % L:
        raise ValueError(f"matrix is not congruent to the identity mod {L}")
    A = IntMatrix([[x // L for x in row] for row in D], D.cols)
    return SpLieElement(g, L, mod_reduce(A, L))


# -- words -----------------------------------------------------------------

@dataclass(frozen=True)
class Letter:
    label: GeneratorLabel
    exp: int = 1

    def __post_init__(self):
        if self.exp not in (1, -1):
            raise ValueError("letter exponents must be +1 or -1")

    def inverse(self):
        return Letter(self.label, -self.exp)

    def omega_conjugate(self):
        return Letter(self.label.omega_conjugate(), self.exp)


@dataclass(frozen=True)
class Commutator:
    left: tuple
    right: tuple

    def inverse(self):
        # [a,b]^-1 = [b,a] in either convention
        return Commutator(self.right, self.left)

    def omega_conjugate(self):
        return Commutator(tuple(n.omega_conjugate() for n in self.left),
                          tuple(n.omega_conjugate() for n in self.right))


def _check_nodes(nodes):
    if not isinstance(nodes, tuple):
        raise ValueError("a word must be a tuple of nodes")
    for n in nodes:
        if isinstance(n, Commutator):
            _check_nodes(n.left)
            _check_nodes(n.right)
        elif not isinstance(n, Letter):
            raise ValueError(f"malformed word node {n!r}")


def evaluate(nodes, g, cache=None):
    """Product of the nodes from left to right, exactly over Z."""
    cache = {} if cache is None else cache
    M = IntMatrix.identity(2 * g)
    for n in nodes:
        if isinstance(n, Letter):
            key = n.label if n.exp == 1 else n.label.inverse()
            P = cache.get(key)
            if P is None:
                P = cache[key] = key.matrix(g)
        elif isinstance(n, Commutator):
            P = commutator(evaluate(n.left, g, cache), evaluate(n.right, g, cache), g)
        else:
            raise ValueError(f"malformed word node {n!r}")
        M = M @ P
    return M


def iter_letters(nodes):
    for n in nodes:
        if isinstance(n, Letter):
            yield n
        else:
            yield from iter_letters(n.left)
            yield from iter_letters(n.right)


def invert_nodes(nodes):
    return tuple(n.inverse() for n in reversed(nodes))


def nodes_to_json(nodes):
    out = []
    for n in nodes:
        if isinstance(n, Letter):
            lab = n.label
            out.append([lab.family, lab.i, lab.j, str(lab.r), n.exp])
        else:
            out.append(["comm", nodes_to_json(n.left), nodes_to_json(n.right)])
    return out


def nodes_from_json(arr):
    if not isinstance(arr, list):
        raise ValueError("word must be a list")
    out = []
    for item in arr:
        if not isinstance(item, list) or not item:
            raise ValueError(f"malformed word node {item!r}")
        if item[0] == "comm":
            if len(item) != 3:
                raise ValueError("commutator node needs exactly two sides")
            out.append(Commutator(nodes_from_json(item[1]), nodes_from_json(item[2])))
        else:
            if len(item) != 5:
                raise ValueError(f"malformed letter {item!r}")
            fam, i, j, r, e = item
            try:
                out.append(Letter(GeneratorLabel(fam, int(i), int(j), int(r)), int(e)))
            except (TypeError, ValueError) as exc:
                raise ValueError(f"malformed letter {item!r}: {exc}") from None
    return tuple(out)


@dataclass(frozen=True)
class GeneratorWord:
    g: int
    L: int
    nodes: tuple = ()

    def __post_init__(self):
        _check_nodes(self.nodes)

    def evaluate(self):
        return evaluate(self.nodes, self.g)

    def letters(self):
        return list(iter_letters(self.nodes))

    def inverse(self):
        return GeneratorWord(self.g, self.L, invert_nodes(self.nodes))

    def omega_conjugate(self):
        return GeneratorWord(self.g, self.L, tuple(n.omega_conjugate() for n in self.nodes))

    def commutator_count(self):
        return sum(isinstance(n, Commutator) for n in self.nodes)


# -- identities ------------------------------------------------------------

def _x(i, j, r):
    return Letter(GeneratorLabel("X", i, j, r))


def _z(i, j, r):
    return Letter(GeneratorLabel("Z", i, j, r))


def _comm(a, b):
    return Commutator((a,), (b,))


def odd_level_inverse_of_two(L):
    """The integer N with 2N + L = 1."""
    return (1 - L) // 2


def _check_hypotheses(g, L):
    if g < 3:
        raise HypothesisError(f"the commutator identities need g >= 3, got g={g}")
    if L < 3 or L % 2 == 0:
        raise HypothesisError(f"the commutator identities need odd L >= 3, got L={L}")


@dataclass(frozen=True)
class Identity:
    name: str
    family: str
    indices: tuple
    lhs: tuple
    rhs: tuple

    def omega_conjugate(self):
        conj = lambda nodes: tuple(n.omega_conjugate() for n in nodes)
        return Identity(self.name, "Y", self.indices, conj(self.lhs), conj(self.rhs))


def commutator_identities(g, L):
    """All instances of identities (1)-(4) and their omega-conjugates.

    (1) X_ij(L^2)  = [X_ik(L), Z_kj(L)]                     i != j, k not in {i,j}
    (2) X_ii(2NL^2) = [X_ik1(NL), Z_k1i(L)]                  k1 < k2, both != i
    (3) X_ii(L^3)  = [X_k1k1(L), Z_k1i(L)] [Z_k2i(L), X_k1k2(L)]
    (4) X_ii(L^2)  = X_ii(2NL^2) X_ii(L^3)
    """
    _check_hypotheses(g, L)
    N = odd_level_inverse_of_two(L)
    L2, L3 = L * L, L ** 3
    idx = range(1, g + 1)
    out = []
    for i in idx:
        for j in idx:
            if i == j:
                continue
            for k in idx:
                if k not in (i, j):
                    out.append(Identity("1", "X", (i, j, k), (_x(i, j, L2),),
                                        (_comm(_x(i, k, L), _z(k, j, L)),)))
    for i in idx:
        others = [k for k in idx if k != i]
        for a, k1 in enumerate(others):
            for k2 in others[a + 1:]:
                out.append(Identity("2", "X", (i, k1, k2), (_x(i, i, 2 * N * L2),),
                                    (_comm(_x(i, k1, N * L), _z(k1, i, L)),)))
                out.append(Identity("3", "X", (i, k1, k2), (_x(i, i, L3),),
                                    (_comm(_x(k1, k1, L), _z(k1, i, L)),
                                     _comm(_z(k2, i, L), _x(k1, k2, L)))))
        out.append(Identity("4", "X", (i,), (_x(i, i, L2),),
                            (_x(i, i, 2 * N * L2), _x(i, i, L3))))
    out += [ident.omega_conjugate() for ident in out]
    out.sort(key=lambda t: (t.name, t.family, t.indices))
    return out


def verify_commutator_identities(g, L):
    """Check every identity instance by exact integer multiplication."""
    cache = {}
    checks = []
    for ident in commutator_identities(g, L):
        ok = evaluate(ident.lhs, g, cache) == evaluate(ident.rhs, g, cache)
        checks.append({"identity": ident.name, "family": ident.family,
                       "indices": list(ident.indices), "ok": ok})
    failures = [c for c in checks if not c["ok"]]
    return {"g": g, "L": L, "N": odd_level_inverse_of_two(L),
            "convention": COMMUTATOR_CONVENTION, "checked": len(checks),
            "failures": len(failures), "failed": failures, "checks": checks,
            "passed": not failures}


# -- certificates ----------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    g: int
    L: int
    target: GeneratorLabel
    word: GeneratorWord
    target_matrix: IntMatrix = field(default=None)

    def __post_init__(self):
        if self.target_matrix is None:
            object.__setattr__(self, "target_matrix", self.target.matrix(self.g))

    def to_json(self):
        return {"g": self.g, "L": self.L, "target": self.target.to_json(),
                "word": nodes_to_json(self.word.nodes),
                "target_matrix": [[str(x) for x in row] for row in self.target_matrix]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj):
        try:
            g, L = int(obj["g"]), int(obj["L"])
            target = GeneratorLabel.from_json(obj["target"])
            nodes = nodes_from_json(obj["word"])
            tm = IntMatrix([[int(x) for x in row] for row in obj["target_matrix"]])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from None
        return cls(g, L, target, GeneratorWord(g, L, nodes), tm)


def _x_certificate_nodes(i, j, L, N):
    """Commutator nodes evaluating to X_ij(L^2)."""
    if i != j:
        k = next(k for k in count(1) if k not in (i, j))
        return (_comm(_x(i, k, L), _z(k, j, L)),)
    k1, k2 = islice((k for k in count(1) if k != i), 2)
    return (_comm(_x(i, k1, N * L), _z(k1, i, L)),
            _comm(_x(k1, k1, L), _z(k1, i, L)),
            _comm(_z(k2, i, L), _x(k1, k2, L)))


def generate_certificates(g, L):
    """One certificate per X_ij(L^2), Y_ij(L^2) with i <= j."""
    _check_hypotheses(g, L)
    N = odd_level_inverse_of_two(L)
    certs = []
    for target in bms_generator_set(g, L * L):
        if target.family == "X":
            nodes = _x_certificate_nodes(target.i, target.j, L, N)
        else:
            # Y_ij(L^2) = W X_ij(-L^2) W^-1 and X_ij(-L^2) is the inverse word
            nodes = tuple(n.omega_conjugate() for n in
                          invert_nodes(_x_certificate_nodes(target.i, target.j, L, N)))
        certs.append(Certificate(g, L, target, GeneratorWord(g, L, nodes)))
    return certs


def check_certificate(c):
    """True iff the word is a product of commutators of level-L letters and
    evaluates exactly to the stored target matrix.
    """
    _check_nodes(c.word.nodes)
    g, L = c.g, c.L
    if c.target_matrix.shape != (2 * g, 2 * g):
        return False
    if c.target.matrix(g) != c.target_matrix:
        return False
    if not has_level(c.target_matrix, L * L):
        return False
    if not c.word.nodes or not all(isinstance(n, Commutator) for n in c.word.nodes):
        return False
    for letter in c.word.letters():
        if max(letter.label.i, letter.label.j) > g:
            return False
        if not has_level(letter.label.matrix(g), L):
            return False
    return c.word.evaluate() == c.target_matrix


def write_certificates(certs, path):
    with open(path, "w") as fh:
        for c in certs:
            fh.write(c.dumps() + "\n")


def read_certificates(path):
    certs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                certs.append(Certificate.from_json(json.loads(line)))
            except json.JSONDecodeError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
    return certs


# -- phi laws --------------------------------------------------------------

_R_MULTIPLIERS = (1, -1, 2, -2)


def random_level_word(rng, g, L, max_len):
    """Random word of level-L letters.

    Draws from ``rng`` (a ``random.Random``) in this order: the length in
    [1, max_len]; then per letter the family from "XYZ", i and j in [1, g]
    (j redrawn while equal to i for Z), r = L * choice(1, -1, 2, -2) and
    the exponent from (1, -1).
    """
    nodes = []
    for _ in range(rng.randint(1, max_len)):
        fam = rng.choice("XYZ")
        i = rng.randint(1, g)
        j = rng.randint(1, g)
        while fam == "Z" and j == i:
            j = rng.randint(1, g)
        r = L * rng.choice(_R_MULTIPLIERS)
        nodes.append(Letter(GeneratorLabel(fam, i, j, r), rng.choice((1, -1))))
    return tuple(nodes)


def phi_laws(g, L, samples=1000, seed=0, word_len=16):
    """Sampled checks of phi on random level-L words.

    Per sample: phi(W1) lies in sp_2g(L); phi(W1 W2) = phi(W1) + phi(W2);
    phi(W1^-1) = -phi(W1); and phi(M) = 0 iff M = I mod L^2 for M in
    {W1, [W1, W2], W1^L}, the last two always being in the kernel.
    """
    if g < 1 or L < 2:
        raise HypothesisError("phi checks need g >= 1 and L >= 2")
    rng = random.Random(seed)
    counts = {"in_lie_algebra": 0, "additive": 0, "inverse": 0, "kernel": 0}
    failures = []
    cache = {}
    L2 = L * L
    for s in range(samples):
        W1 = evaluate(random_level_word(rng, g, L, word_len), g, cache)
        W2 = evaluate(random_level_word(rng, g, L, word_len), g, cache)
        p1, p2 = phi(W1, L), phi(W2, L)
        results = {
            "in_lie_algebra": is_sp_lie(p1.matrix, g),
            "additive": phi(W1 @ W2, L).matrix == (p1 + p2).matrix,
            "inverse": phi(symplectic_inverse(W1, g), L).matrix == (-p1).matrix,
        }
        kernel_ok = True
        for M in (W1, commutator(W1, W2, g), W1 ** L):
            kernel_ok &= phi(M, L).is_zero() == (level_of(M) % L2 == 0)
        results["kernel"] = kernel_ok
        for law, ok in results.items():
            if ok:
                counts[law] += 1
            else:
                failures.append({"sample": s, "law": law})
    return {"g": g, "L": L, "seed": seed, "samples": samples, "word_len": word_len,
            "passed_counts": counts, "failures": len(failures), "failed": failures,
            "passed": not failures}


def phi_surjectivity_witnesses(g, L):
    """I + L*A mod L^2 for every basis element A of sp_2g(L)."""
    m = L * L
    I = IntMatrix.identity(2 * g)
    out = []
    for A in sp_lie_basis(g, L):
        W = mod_reduce(I + A.matrix.lift() * L, m)
        if not is_symplectic_mod(W, g):
            raise AssertionError(f"witness for {A.matrix!r} is not symplectic mod {m}")
        out.append(W)
    return out


__all__ = [
    "COMMUTATOR_CONVENTION", "Certificate", "Commutator", "GeneratorWord", "Identity",
    "Letter", "check_certificate", "commutator", "commutator_identities",
    "evaluate", "generate_certificates", "phi", "phi_laws", "phi_surjectivity_witnesses",
    "random_level_word", "read_certificates", "verify_commutator_identities",
    "write_certificates",
]
