"""Independent brute-force oracles used by the tests.

None of these call into the Smith normal form code they check.
"""

from itertools import combinations, product
from math import gcd


def det(rows):
    # cofactor expansion; fine for the small minors used here
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            sub = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det(sub)
    return total


def determinantal_divisors(M):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    m, n = len(M), len(M[0]) if M else 0
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        Dk = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                Dk = gcd(Dk, det([[M[r][c] for c in cs] for r in rs]))
                if Dk == prev:
                    break
            if Dk == prev:
                break
        if Dk == 0:
            break
        out.append(Dk // prev)
        prev = Dk
    return out


def rank_q(M):
    from fractions import Fraction

    a = [[Fraction(x) for x in row] for row in M]
    rank = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        p = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def enumerate_quotient(M, n, limit=200_000):
    """Order and exponent of Z^n / rowspace(M) by explicit enumeration.

    Picks d = |det| of a nonsingular n x n row minor, so d Z^n lies in the row
    space, then enumerates the image of the row space in (Z/d)^n.  Returns
    None when the quotient is infinite or d^n exceeds the limit.
    """
    best = None
    for rs in combinations(range(len(M)), n):
        d = abs(det([M[r] for r in rs]))
        if d and (best is None or d < best):
            best = d
    if best is None or best ** n > limit:
        return None
    d = best
    gens = [tuple(x % d for x in row) for row in M]
    seen = {(0,) * n}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for gvec in gens:
                w = tuple((a + b) % d for a, b in zip(v, gvec))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    order = d ** n // len(seen)
    exponent = 1
    for i in range(n):
        e = 1
        while tuple((e if j == i else 0) % d for j in range(n)) not in seen:
            e += 1
        exponent = exponent * e // gcd(exponent, e)
    return order, exponent


def nullity_mod_p(rows, ncols, p):
    """Dimension of the solution space of a linear system over F_p."""
    a = [[x % p for x in row] for row in rows]
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return ncols - rank


def lie_condition_rows(g):
    """Linear equations in the 4g^2 entries of A for A^t W + W A = 0."""
    n = 2 * g
    W = [[0] * n for _ in range(n)]
    for i in range(g):
        W[i][g + i] = 1
        W[g + i][i] = -1
    rows = []
    for p, q in product(range(n), repeat=2):
        # (A^t W)[p][q] = sum_k A[k][p] W[k][q];  (W A)[p][q] = sum_k W[p][k] A[k][q]
        row = [0] * (n * n)
        for k in range(n):
            row[k * n + p] += W[k][q]
            row[k * n + q] += W[p][k]
        rows.append(row)
    return rows
