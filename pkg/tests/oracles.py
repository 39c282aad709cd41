"""Independent brute-force oracles for the test suite."""
import itertools
from collections import Counter

import sympy


def count_monomials(degrees, odd, N):
    """Hilbert coefficients of a free graded-commutative algebra by direct enumeration."""
    out = [0] * (N + 1)
    ranges = [range(0, 2) if o else range(0, N // d + 1) for d, o in zip(degrees, odd)]
    for exps in itertools.product(*ranges):
        deg = sum(e * d for e, d in zip(exps, degrees))
        if deg <= N:
            out[deg] += 1
    return out


def distinct_partitions(i, j):
    """Number of partitions of i into exactly j distinct positive parts."""
    return sum(1 for c in itertools.combinations(range(1, i + 1), j) if sum(c) == i)


def poly_mul(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        for k, y in enumerate(b):
            if i + k <= N:
                out[i + k] += x * y
    return out


def groebner_betti(d):
    """Betti table of Gr_2^+(R^d), d >= 5, by counting standard monomials of a sympy Groebner basis."""
    e, D = sympy.symbols("e D")
    if d % 2:
        n = (d - 1) // 2
        gens, degs, rels = [e], [2], [e ** (2 * n)]
    else:
        n = d // 2
        gens, degs, rels = [e, D], [2, 2 * n - 2], [D ** 2, e ** n - 2 * D * e]
    G = sympy.groebner(rels, *gens, order="grevlex")
    leads = [sympy.Poly(g, *gens).monoms(order="grevlex")[0] for g in G.exprs]
    top = 2 * (d - 2) + 4
    counts = Counter()
    for exps in itertools.product(*(range(top // dg + 1) for dg in degs)):
        deg = sum(x * y for x, y in zip(exps, degs))
        if deg > top:
            continue
        if any(all(x >= y for x, y in zip(exps, lm)) for lm in leads):
            continue
        counts[deg] += 1
    return dict(counts)
