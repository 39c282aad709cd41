"""Rational cohomology of Gr_2^+(R^d), its Thom shift, and the stable algebra.

Odd ambient dimension d = 2n+1:   H* Gr = Q[e]/(e^{2n}),                 |e| = 2
Even ambient dimension d = 2n>=6: H* Gr = Q[e, delta]/(delta^2, e^n - 2 delta e),
                                  |e| = 2, |delta| = 2n-2
d = 3, 4: S^2 and S^2 x S^2, given as Betti tables.

The rational cohomology of the basepoint component of the infinite loop space
is free graded-commutative on the positive part of the Thom-shifted table.
Only generator slots are modelled; relations among suspended classes (e.g.
kappa_i = 0 beyond the ladder) are not.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .algebra import (
    AlgebraPresentation,
    Generator,
    GradedDims,
    Polynomial,
    TruncatedSeries,
    basis_up_to,
    free_gca_on,
    hilbert_series_free,
)


class DimensionError(ValueError):
    pass


def _check_d(d: int):
    if d < 3:
        raise DimensionError(f"ambient dimension must be >= 3, got {d}")


def grassmannian_presentation(d: int) -> AlgebraPresentation:
    """Ring presentation for d >= 5."""
    if d < 5:
        raise DimensionError(f"no ring presentation shipped for d = {d} (use grassmannian_betti)")
    if d % 2:
        n = (d - 1) // 2
        P = AlgebraPresentation((Generator("e", 2),))
        return AlgebraPresentation(P.generators, (P.monomial(e=2 * n),))
    n = d // 2
    P = AlgebraPresentation((Generator("e", 2), Generator("delta", 2 * n - 2)))
    rels = (P.monomial(delta=2), P.monomial(e=n) - P.monomial(e=1, delta=1).scale(2))
    return AlgebraPresentation(P.generators, rels)


def normal_euler_class(n: int) -> Polynomial:
    """Euler class of the orthogonal complement, 2*delta - e^(n-1), in H* Gr_2^+(R^{2n})."""
    P = grassmannian_presentation(2 * n)
    return P.monomial(delta=1).scale(2) - P.monomial(e=n - 1)


def grassmannian_betti(d: int, N: int) -> GradedDims:
    _check_d(d)
    top = 2 * (d - 2)
    M = min(N, top)
    if d == 3:
        table = {0: 1, 2: 1}
    elif d == 4:
        table = {0: 1, 2: 2, 4: 1}
    else:
        return basis_up_to(grassmannian_presentation(d), M)
    return GradedDims(M, {k: v for k, v in table.items() if k <= M})


def thom_shift(V: GradedDims, shift: int = 2) -> GradedDims:
    dims = {k - shift: v for k, v in V.dims.items()}
    return GradedDims(V.N - shift, dims, lo=min(V.lo - shift, 0))


@dataclass(frozen=True)
class StableAlgebra:
    d: int
    generators: Tuple[Generator, ...]
    hilbert: TruncatedSeries
    aliases: Dict[str, str] = field(default_factory=dict)

    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "generators": [{"name": g.name, "degree": g.degree} for g in self.generators],
            "hilbert": {"N": self.hilbert.N, "coeffs": [int(c) for c in self.hilbert.coeffs]},
        }


def _name_generators(d: int, raw: List[Generator]) -> Tuple[List[Generator], Dict[str, str]]:
    """Rename free generators: one kappa_i per degree 2i, extra classes become Delta."""
    if d == 4:
        (g,) = raw
        return [Generator("kappa_1", g.degree)], {"a_2": "kappa_1"}
    out: List[Generator] = []
    seen = set()
    extra = 0
    for g in raw:
        if g.degree not in seen and g.degree % 2 == 0:
            seen.add(g.degree)
            out.append(Generator(f"kappa_{g.degree // 2}", g.degree))
        else:
            out.append(Generator("Delta" if extra == 0 else f"Delta_{extra}", g.degree))
            extra += 1
    out.sort(key=lambda g: (g.name.startswith("Delta"), g.degree))
    return out, {}


def stable_cohomology(d: int, N: int) -> StableAlgebra:
    _check_d(d)
    # generators come from the whole shifted table; the Hilbert series is cut at N
    table = grassmannian_betti(d, 2 * (d - 2))
    raw = free_gca_on(thom_shift(table).positive_part())
    gens, aliases = _name_generators(d, raw)
    return StableAlgebra(d, tuple(gens), hilbert_series_free(gens, N), aliases)


def imm_generators(g: int, n: int) -> List[Generator]:
    if n < 2:
        raise DimensionError(f"need 2n+1 >= 5, got n = {n}")
    if g < 0:
        raise DimensionError(f"genus must be >= 0, got {g}")
    gens = [Generator(f"x_{4 * n - 3}", 4 * n - 3), Generator(f"x_{4 * n - 1}", 4 * n - 1)]
    gens += [Generator(f"h_{i}", 4 * n - 2) for i in range(1, 2 * g + 1)]
    return gens


def imm_cohomology_hilbert(g: int, n: int, N: int) -> GradedDims:
    """Poincare series of Lambda[x_{4n-3}, x_{4n-1}] (x) Sym*(H_Q[4n-2]) with dim H_Q = 2g."""
    return hilbert_series_free(imm_generators(g, n), N).to_dims()
