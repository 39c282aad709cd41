"""Graded-commutative algebra over Q.

Monomials are exponent tuples indexed by a presentation's generator list.
Odd generators carry exponent 0 or 1; reordering odd factors introduces
the Koszul sign.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .linalg import Echelon

Monomial = Tuple[int, ...]


class AlgebraError(ValueError):
    """Invalid algebra data (bad degree, parity, inhomogeneous relation...)."""


class PresentationMismatch(AlgebraError):
    """Polynomial or generator name not belonging to the presentation."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    parity: int = -1  # -1: derive from degree

    def __post_init__(self):
        if self.degree < 1:
            raise AlgebraError(f"generator {self.name!r} must have positive degree, got {self.degree}")
        if self.parity == -1:
            object.__setattr__(self, "parity", self.degree % 2)
        elif self.parity != self.degree % 2:
            raise AlgebraError(f"generator {self.name!r}: parity {self.parity} disagrees with degree {self.degree}")

    @property
    def odd(self) -> bool:
        return self.parity == 1


@dataclass(frozen=True)
class GradedDims:
    """Dimensions of graded pieces in degrees lo..N (lo is 0 except for Thom-shifted tables)."""

    N: int
    dims: Mapping[int, int] = field(default_factory=dict)
    lo: int = 0

    def __post_init__(self):
        d = {int(k): int(v) for k, v in dict(self.dims).items() if v}
        for k, v in d.items():
            if v < 0:
                raise AlgebraError(f"negative dimension {v} in degree {k}")
            if not self.lo <= k <= self.N:
                raise AlgebraError(f"degree {k} outside [{self.lo}, {self.N}]")
        object.__setattr__(self, "dims", dict(sorted(d.items())))

    def __getitem__(self, k: int) -> int:
        return self.dims.get(k, 0)

    def coeffs(self) -> List[int]:
        return [self[k] for k in range(self.lo, self.N + 1)]

    def total(self) -> int:
        return sum(self.dims.values())

    def euler(self) -> int:
        return sum((-1) ** k * v for k, v in self.dims.items())

    def positive_part(self) -> "GradedDims":
        return GradedDims(self.N, {k: v for k, v in self.dims.items() if k > 0})

    def to_json(self) -> dict:
        return {"N": self.N, "dims": {str(k): v for k, v in self.dims.items()}}

    @classmethod
    def from_json(cls, obj: dict) -> "GradedDims":
        dims = {int(k): v for k, v in obj["dims"].items()}
        return cls(obj["N"], dims, lo=min([0, *dims]))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], lo: int = 0) -> "GradedDims":
        return cls(lo + len(coeffs) - 1, {lo + i: c for i, c in enumerate(coeffs)}, lo=lo)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series sum c_k t^k, k <= N, with exact coefficients."""

    N: int
    coeffs: Tuple = ()
    var: str = "t"

    def __post_init__(self):
        if self.N < 0:
            raise AlgebraError(f"truncation order must be >= 0, got {self.N}")
        c = list(self.coeffs)[: self.N + 1]
        c += [0] * (self.N + 1 - len(c))
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def one(cls, N: int, var: str = "t") -> "TruncatedSeries":
        return cls(N, (1,), var)

    @classmethod
    def monomial(cls, N: int, k: int, c=1, var: str = "t") -> "TruncatedSeries":
        return cls(N, tuple(c if i == k else 0 for i in range(N + 1)), var)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k <= self.N else 0

    def _check(self, other: "TruncatedSeries"):
        if other.N != self.N:
            raise AlgebraError(f"truncation orders differ: {self.N} vs {other.N}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.var)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.N, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.var)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = [0] * (self.N + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.N + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(self.N, tuple(out), self.var)

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a series with unit constant term."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise AlgebraError("series with zero constant term is not invertible")
        inv = [Fraction(0)] * (self.N + 1)
        inv[0] = 1 / Fraction(c0)
        for k in range(1, self.N + 1):
            s = sum(self.coeffs[i] * inv[k - i] for i in range(1, k + 1))
            inv[k] = -s * inv[0]
        return TruncatedSeries(self.N, tuple(int(x) if x.denominator == 1 else x for x in inv), self.var)

    def restrict(self, N: int) -> "TruncatedSeries":
        return TruncatedSeries(N, self.coeffs[: N + 1], self.var)

    def to_dims(self) -> GradedDims:
        return GradedDims(self.N, {k: int(c) for k, c in enumerate(self.coeffs)})


def geometric(N: int, d: int, var: str = "t") -> TruncatedSeries:
    """1/(1 - t^d) truncated at N."""
    return TruncatedSeries(N, tuple(1 if k % d == 0 else 0 for k in range(N + 1)), var)


def hilbert_series_free(gens: Iterable[Generator], N: int) -> TruncatedSeries:
    if N < 0:
        raise AlgebraError(f"truncation order must be >= 0, got {N}")
    s = TruncatedSeries.one(N)
    for g in gens:
        if g.odd:
            s = s + TruncatedSeries(N, tuple(s[k - g.degree] if k >= g.degree else 0 for k in range(N + 1)))
        else:
            # multiply by 1/(1 - t^d): running sum with stride d
            c = list(s.coeffs)
            for k in range(g.degree, N + 1):
                c[k] += c[k - g.degree]
            s = TruncatedSeries(N, tuple(c))
    return s


class Polynomial:
    """Element of the free graded-commutative algebra on ``gens``."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: Tuple[Generator, ...], terms: Mapping[Monomial, Fraction] = ()):
        self.gens = gens
        self.terms: Dict[Monomial, Fraction] = {}
        for m, c in dict(terms).items():
            if len(m) != len(gens):
                raise PresentationMismatch(f"monomial {m} has wrong length for {len(gens)} generators")
            for g, e in zip(gens, m):
                if e < 0 or (g.odd and e > 1):
                    raise AlgebraError(f"invalid exponent {e} on generator {g.name}")
            if c:
                self.terms[m] = self.terms.get(m, 0) + Fraction(c)
        self.terms = {m: c for m, c in self.terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {monomial_degree(self.gens, m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise AlgebraError("degree of zero or inhomogeneous polynomial is undefined")
        return degs.pop()

    def _same(self, other: "Polynomial"):
        if other.gens != self.gens:
            raise PresentationMismatch("polynomials live over different generator lists")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._same(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(self.gens, t)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.gens, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._same(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = monomial_product(self.gens, m1, m2)
                if sign:
                    out[m] = out.get(m, 0) + sign * c1 * c2
        return Polynomial(self.gens, out)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.gens == other.gens and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"


def monomial_degree(gens: Sequence[Generator], m: Monomial) -> int:
    return sum(g.degree * e for g, e in zip(gens, m))


def monomial_product(gens: Sequence[Generator], m1: Monomial, m2: Monomial) -> Tuple[int, Monomial]:
    """Product of two canonical monomials: (sign, monomial), sign 0 if it vanishes."""
    swaps = 0
    odd_in_m1_after = 0  # odd factors of m1 with index > current
    for i in range(len(gens) - 1, -1, -1):
        if gens[i].odd:
            if m1[i] and m2[i]:
                return 0, m1
            if m2[i]:
                swaps += odd_in_m1_after
            if m1[i]:
                odd_in_m1_after += 1
    m = tuple(a + b for a, b in zip(m1, m2))
    return (-1 if swaps % 2 else 1), m


def format_monomial(gens: Sequence[Generator], m: Monomial) -> str:
    parts = []
    for g, e in zip(gens, m):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts) or "1"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    keys = sorted(p.terms, key=lambda m: (monomial_degree(p.gens, m), tuple(-e for e in m)))
    out = []
    for m in keys:
        c = p.terms[m]
        mon = format_monomial(p.gens, m)
        if mon == "1":
            out.append(str(c))
        elif c == 1:
            out.append(mon)
        elif c == -1:
            out.append("-" + mon)
        else:
            out.append(f"{c}*{mon}")
    return " + ".join(out).replace("+ -", "- ")


def monomials_of_degree(gens: Sequence[Generator], d: int) -> Iterator[Monomial]:
    """All canonical monomials of degree d, in graded-lex order by generator index."""
    n = len(gens)

    def rec(i: int, rem: int, acc: list):
        if i == n:
            if rem == 0:
                yield tuple(acc)
            return
        g = gens[i]
        top = 1 if g.odd else rem // g.degree
        for e in range(min(top, rem // g.degree), -1, -1):
            acc.append(e)
            yield from rec(i + 1, rem - e * g.degree, acc)
            acc.pop()

    if d >= 0:
        yield from rec(0, d, [])


@dataclass(frozen=True)
class AlgebraPresentation:
    generators: Tuple[Generator, ...]
    relations: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate generator names in {names}")
        rels = tuple(self.relations)
        for r in rels:
            if r.gens != gens:
                raise PresentationMismatch("relation is not expressed over this presentation's generators")
            if r.is_zero():
                continue
            if not r.is_homogeneous():
                raise AlgebraError(f"relation {format_polynomial(r)} is not homogeneous")
            if r.degree() == 0:
                raise AlgebraError("degree-0 relations are not allowed (algebras are connected)")
        object.__setattr__(self, "relations", tuple(r for r in rels if not r.is_zero()))

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise PresentationMismatch(f"unknown generator {name!r}")

    def one(self) -> Polynomial:
        return Polynomial(self.generators, {(0,) * len(self.generators): 1})

    def zero(self) -> Polynomial:
        return Polynomial(self.generators)

    def gen(self, name: str) -> Polynomial:
        i = self.index(name)
        m = tuple(1 if j == i else 0 for j in range(len(self.generators)))
        return Polynomial(self.generators, {m: 1})

    def monomial(self, **exps: int) -> Polynomial:
        m = [0] * len(self.generators)
        for name, e in exps.items():
            m[self.index(name)] = e
        return Polynomial(self.generators, {tuple(m): 1})

    def poly(self, terms: Mapping[str, object]) -> Polynomial:
        """Build from {"e^2*d": c, "1": c}-style keys."""
        out = self.zero()
        for key, c in terms.items():
            p = self.one()
            if key.strip() != "1":
                for factor in key.split("*"):
                    name, _, e = factor.strip().partition("^")
                    for _ in range(int(e or 1)):
                        p = multiply(p, self.gen(name), self)
            out = out + p.scale(Fraction(c))
        return out


def multiply(a: Polynomial, b: Polynomial, P: AlgebraPresentation) -> Polynomial:
    if a.gens != P.generators or b.gens != P.generators:
        raise PresentationMismatch("operands are not expressed over the presentation's generators")
    return a * b


def basis_up_to(P: AlgebraPresentation, N: int) -> GradedDims:
    """Dimensions of the quotient algebra in degrees 0..N.

    In each degree the relation ideal is spanned by monomial multiples m*r;
    the quotient dimension is the monomial count minus the rank of that span.
    """
    if N < 0:
        raise AlgebraError(f"truncation order must be >= 0, got {N}")
    gens = P.generators
    dims = {}
    for d in range(N + 1):
        basis = list(monomials_of_degree(gens, d))
        if not basis:
            continue
        pos = {m: i for i, m in enumerate(basis)}
        span = Echelon()
        for r in P.relations:
            rd = r.degree()
            for m in monomials_of_degree(gens, d - rd):
                prod = Polynomial(gens, {m: 1}) * r
                span.add({pos[k]: c for k, c in prod.terms.items()})
        dims[d] = len(basis) - len(span)
    return GradedDims(N, dims)


def free_gca_on(V: GradedDims) -> List[Generator]:
    gens = []
    for d, k in sorted(V.dims.items()):
        if d <= 0:
            raise AlgebraError(f"free algebra input must live in positive degrees, got degree {d}")
        if k == 1:
            gens.append(Generator(f"g{d}", d))
        else:
            gens.extend(Generator(f"g{d}{_suffix(i)}", d) for i in range(k))
    return gens


def _suffix(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = letters[r] + s
    return s


def all_monomials(gens: Sequence[Generator], N: int) -> List[Monomial]:
    return list(itertools.chain.from_iterable(monomials_of_degree(gens, d) for d in range(N + 1)))
