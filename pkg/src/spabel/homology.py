"""
Homology shadow of mapping classes: Dehn twists act on H_1 by symplectic
transvections, bounding pair maps act trivially, and the order bookkeeping
forced by the exact sequence 0 -> K -> H_1(Mod(L)) -> sp_2g(L) -> 0.

Twist sign convention: T_c(x) = x + <x, c> c with <x, y> = x^t Omega y.
The opposite sign gives the inverse matrix and changes no level statement.
"""

from dataclasses import dataclass

from .errors import HypothesisError
from .exterior import quotient_order_report
from .linalg import IntMatrix, as_prime_power
from .symplectic import SymplecticElement, has_level, level_of, omega, sp_lie_dimension


@dataclass(frozen=True)
class HomologyClass:
    g: int
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if len(self.coords) != 2 * self.g:
            raise ValueError(f"expected {2 * self.g} coordinates")

    @classmethod
    def a(cls, g, i):
        return cls(g, tuple(int(p == i - 1) for p in range(2 * g)))

    @classmethod
    def b(cls, g, i):
        return cls(g, tuple(int(p == g + i - 1) for p in range(2 * g)))

    def __add__(self, other):
        return HomologyClass(self.g, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def pairing(self, other):
        W = omega(self.g)
        return sum(x * w for x, w in zip(self.coords, W.apply(other.coords)))


def _rank_one(c):
    # N with N x = <x, c> c; N^2 = 0 because <c, c> = 0
    Wc = omega(c.g).apply(c.coords)
    # <x, c> = x^t W c, so N = c (W c)^t
    return IntMatrix([[ci * w for w in Wc] for ci in c.coords])


def transvection_power(c, k):
    """T_c^k = I + k N, exact for every integer k."""
    return IntMatrix.identity(2 * c.g) + _rank_one(c) * k


def transvection(c):
    M = transvection_power(c, 1)
    return SymplecticElement(c.g, M, level_of(M))


def bp_shadow_is_trivial(c):
    """A bounding pair map T_x1 T_x2^-1 with [x1] = [x2] = c acts trivially on H."""
    M = transvection_power(c, 1) @ transvection_power(c, -1)
    return M == IntMatrix.identity(2 * c.g)


def word_matrix(word, g):
    M = IntMatrix.identity(2 * g)
    for c, k in word:
        if c.g != g:
            raise ValueError("homology classes of mixed genus")
        M = M @ transvection_power(c, k)
    return M


def level_membership(word, L, g=None):
    """True iff the product of twist powers acts trivially on H_1(; Z/L)."""
    word = list(word)
    if not word:
        return True
    g = word[0][0].g if g is None else g
    return has_level(word_matrix(word, g), L)


def _power_form(n):
    pp = as_prime_power(n)
    return f"{pp[0]}^{pp[1]}" if pp else None


def h1_order_report(g, L, n, allow_outside=False):
    """|K|, |sp_2g(L)| and their product, the order of H_1(Mod_{g,n}(L); Z)."""
    flags = []
    if g < 3:
        flags.append("outside theorem hypotheses (g >= 3)")
    if L % 2 == 0:
        flags.append("outside theorem hypotheses (L odd)")
    if n not in (0, 1):
        raise HypothesisError(f"n must be 0 or 1, got {n}")
    if g < 2 or L < 2:
        raise HypothesisError("need g >= 2 and L >= 2")
    if flags and not allow_outside:
        raise HypothesisError("; ".join(flags))
    q = quotient_order_report(g, L, n)
    kernel = int(q["order"])
    coker = L ** sp_lie_dimension(g)
    total = kernel * coker
    report = {
        "g": g, "L": L, "n": n,
        "kernel_order": str(kernel),
        "cokernel_order": str(coker),
        "total_order": str(total),
        "factored": {"kernel_order": _power_form(kernel),
                     "cokernel_order": _power_form(coker),
                     "total_order": _power_form(total)},
        "kernel_module": "wedge3 H(L)" if n == 1 else "wedge3 H(L) / H(L)",
        "flags": flags,
    }
    passed = True
    if n == 0:
        report["image_of_H_order"] = q["image_of_H_order"]
        report["two_route_agree"] = q["two_route_agree"]
        passed = q["two_route_agree"]
    report["passed"] = passed
    return report
