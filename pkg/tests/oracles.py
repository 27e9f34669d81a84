"""Independent reference computations used by the tests.

Nothing here imports the package's linear algebra; these are the slow,
obviously-correct versions (cofactor expansion, dense Gauss-Jordan, orbit
counting, brute-force subgroup enumeration, coset Frobenius systems).
"""
from __future__ import annotations

import itertools
from fractions import Fraction


# --- dense linear algebra -------------------------------------------------


def leibniz_det(M):
    n = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


def minor(M, i, j):
    return [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]


def adjugate_inverse(M):
    """Inverse by cofactors, or None when singular."""
    n = len(M)
    d = leibniz_det(M)
    if d == 0:
        return None
    if n == 1:
        return [[1 / Fraction(M[0][0])]]
    return [[Fraction((-1) ** (i + j)) * leibniz_det(minor(M, j, i)) / d for j in range(n)] for i in range(n)]


def gauss_jordan_rank(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        M[rank] = [x / p for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))] for i in range(len(A))]


# --- permutation groups ---------------------------------------------------


def mul(g, h):
    """``(g h)(x) = g(h(x))`` on 0-based tuples."""
    return tuple(g[x] for x in h)


def inv(g):
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def closure(gens, degree):
    e = tuple(range(degree))
    elems = {e}
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for g in gens:
                b = mul(a, g)
                if b not in elems:
                    elems.add(b)
                    changed = True
    return elems


def brute_force_subgroups(G):
    """All subsets of G closed under multiplication (finite => subgroups)."""
    G = sorted(G)
    e = tuple(range(len(G[0])))
    rest = [g for g in G if g != e]
    found = set()
    for mask in range(1 << len(rest)):
        H = {e} | {g for i, g in enumerate(rest) if mask >> i & 1}
        if all(mul(a, b) in H for a in H for b in H):
            found.add(frozenset(H))
    return found


def normal(H, G):
    return all(mul(mul(g, h), inv(g)) in H for g in G for h in H)


def orbit_count(points, maps):
    """Number of orbits of the group generated by ``maps`` acting on ``points``."""
    points = list(points)
    seen = set()
    count = 0
    for p in points:
        if p in seen:
            continue
        count += 1
        stack = [p]
        seen.add(p)
        while stack:
            x = stack.pop()
            for m in maps:
                y = m(x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return count


def centralizer_dim(G, H):
    """Conjugation orbits of H on G."""
    return orbit_count(G, [lambda g, h=h: mul(mul(h, g), inv(h)) for h in H])


def tensor_square_dim(G, H):
    return len(G) ** 2 // len(H)


def T_dim(G, H):
    """Orbits of H on G x_H G, the pairs (g, g') modulo (gh, g') ~ (g, hg'),
    under h . (g, g') = (hg, g' h^-1).  Over Q invariants = orbit count."""
    Hs = list(H)

    def canon(g, g2):
        return min((mul(g, h), mul(inv(h), g2)) for h in Hs)

    points = {canon(g, g2) for g in G for g2 in G}
    maps = [lambda p, h=h: canon(mul(h, p[0]), mul(p[1], inv(h))) for h in Hs]
    return orbit_count(points, maps)


def S_dim(G, H):
    """End of QG as a QH-bimodule: orbits of H x H on G x G,
    (h1, h2) . (g, g') = (h1 g h2^-1, h1 g' h2^-1)."""
    maps = []
    for h1 in H:
        for h2 in H:
            maps.append(lambda p, h1=h1, h2=h2: (mul(mul(h1, p[0]), inv(h2)), mul(mul(h1, p[1]), inv(h2))))
    return orbit_count([(g, g2) for g in G for g2 in G], maps)


# --- group-algebra Frobenius oracle ---------------------------------------


def left_coset_reps(G, H):
    reps, covered = [], set()
    for g in sorted(G):
        if g in covered:
            continue
        reps.append(g)
        covered |= {mul(g, h) for h in H}
    return reps


def ga_mul(x, y):
    out = {}
    for g, a in x.items():
        for h, b in y.items():
            k = mul(g, h)
            out[k] = out.get(k, 0) + a * b
    return {k: v for k, v in out.items() if v}


def coset_frobenius(G, H):
    """``E(g) = g`` on H and 0 off H, ``x_i = g_i``, ``y_i = g_i^-1``."""
    Hs = set(H)

    def E(x):
        return {g: c for g, c in x.items() if g in Hs}

    reps = left_coset_reps(G, H)
    return E, [{g: 1} for g in reps], [{inv(g): 1} for g in reps]


def frobenius_identities_hold(G, E, xs, ys):
    """``sum E(a x_i) y_i = a = sum x_i E(y_i a)`` for every group element a."""
    for g in G:
        a = {g: 1}
        left, right = {}, {}
        for x, y in zip(xs, ys):
            for k, v in ga_mul(E(ga_mul(a, x)), y).items():
                left[k] = left.get(k, 0) + v
            for k, v in ga_mul(x, E(ga_mul(y, a))).items():
                right[k] = right.get(k, 0) + v
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        if left != a or right != a:
            return False
    return True
