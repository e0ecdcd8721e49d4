"""Independent reference computations used by the tests.

Nothing here reuses the elimination or straightening code under test.
"""

from fractions import Fraction
from itertools import combinations, permutations

from svalg.scalars import ZERO, as_gauss


def partition_counts(max_level):
    """Doubled-level dimensions of the PBW basis via the generating function.

    Generators: two of each even doubled degree -2n (L and M), one of each odd
    degree -(2n+1) (Y).  Returns [p_0, ..., p_max].
    """
    coeffs = [0] * (max_level + 1)
    coeffs[0] = 1
    parts = []
    for e in range(1, max_level + 1):
        parts += [e, e] if e % 2 == 0 else [e]
    for e in parts:
        for d in range(e, max_level + 1):
            coeffs[d] += coeffs[d - e]
    return coeffs


def _perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def det(G):
    """Leibniz determinant (fine for n <= 4)."""
    n = len(G)
    total = ZERO
    for p in permutations(range(n)):
        term = as_gauss(_perm_sign(p))
        for i in range(n):
            term = term * as_gauss(G[i][p[i]])
        total = total + term
    return total


def principal_minors(G):
    n = len(G)
    for r in range(1, n + 1):
        for idx in combinations(range(n), r):
            yield idx, det([[G[i][j] for j in idx] for i in idx])


def oracle_rank(G):
    """Largest r with a nonzero r x r minor."""
    n = len(G)
    for r in range(n, 0, -1):
        for rows in combinations(range(n), r):
            for cols in combinations(range(n), r):
                if det([[G[i][j] for j in cols] for i in rows]):
                    return r
    return 0


def oracle_verdict(G):
    """(tag, radical_dim) from principal minors; G assumed Hermitian.

    A Hermitian matrix is PSD iff every principal minor is >= 0, and PD iff
    every leading principal minor is > 0.
    """
    n = len(G)
    minors = dict(principal_minors(G))
    if any(m.re < 0 for m in minors.values()):
        return "Indefinite", None
    if all(minors[tuple(range(r))].re > 0 for r in range(1, n + 1)):
        return "PositiveDefinite", 0
    return "PositiveSemidefinite", n - oracle_rank(G)


def brute_bracket_LL(m, n):
    """[L_m, L_n] written out from the defining relation."""
    out = {("L", m + n): Fraction(n - m)}
    if m + n == 0:
        out[("C", 0)] = Fraction(m**3 - m, 12)
    return {k: v for k, v in out.items() if v}
