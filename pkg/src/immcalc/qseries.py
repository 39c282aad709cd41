"""Bivariate truncated power series and the q-Pochhammer expansion.

The identity checked here is

    sum_k q^(k(k+1)/2) x^k / ((1-q)...(1-q^k)) = prod_{k>=1} (1 + q^k x),

together with its reparametrisation q = t^2, x = u*t, which compares the
Poincare series of a free Q[kappa]-module description against an exterior
algebra on classes of bidegree (2i+1, 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple


class BiSeries:
    """Coefficients c[i][j] of q^i x^j for i <= Nq, j <= Nx, exact integers."""

    __slots__ = ("Nq", "Nx", "c")

    def __init__(self, Nq: int, Nx: int, c: Optional[List[List[int]]] = None):
        if Nq < 0 or Nx < 0:
            raise ValueError(f"orders must be non-negative, got ({Nq}, {Nx})")
        self.Nq, self.Nx = Nq, Nx
        if c is None:
            c = [[0] * (Nx + 1) for _ in range(Nq + 1)]
        self.c = c

    @classmethod
    def one(cls, Nq: int, Nx: int) -> "BiSeries":
        s = cls(Nq, Nx)
        s.c[0][0] = 1
        return s

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        if 0 <= i <= self.Nq and 0 <= j <= self.Nx:
            return self.c[i][j]
        return 0

    def copy(self) -> "BiSeries":
        return BiSeries(self.Nq, self.Nx, [row[:] for row in self.c])

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check(other)
        return BiSeries(self.Nq, self.Nx, [[a + b for a, b in zip(r, s)] for r, s in zip(self.c, other.c)])

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        self._check(other)
        out = BiSeries(self.Nq, self.Nx)
        for i1, r1 in enumerate(self.c):
            for j1, a in enumerate(r1):
                if not a:
                    continue
                for i2 in range(self.Nq + 1 - i1):
                    r2 = other.c[i2]
                    row = out.c[i1 + i2]
                    for j2 in range(self.Nx + 1 - j1):
                        if r2[j2]:
                            row[j1 + j2] += a * r2[j2]
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, BiSeries) and (self.Nq, self.Nx, self.c) == (other.Nq, other.Nx, other.c)

    def restrict(self, Nq: int, Nx: int) -> "BiSeries":
        return BiSeries(Nq, Nx, [row[: Nx + 1] for row in self.c[: Nq + 1]])

    def x_slice(self, j: int) -> List[int]:
        """Coefficients of x^j as a list indexed by the power of q."""
        return [self.c[i][j] for i in range(self.Nq + 1)]

    def _check(self, other: "BiSeries"):
        if (self.Nq, self.Nx) != (other.Nq, other.Nx):
            raise ValueError("orders differ")


def first_mismatch(a: BiSeries, b: BiSeries) -> Optional[Tuple[int, int]]:
    """Smallest (i, j) in (total, i) order where the coefficients differ."""
    Nq, Nx = min(a.Nq, b.Nq), min(a.Nx, b.Nx)
    for tot in range(Nq + Nx + 1):
        for i in range(max(0, tot - Nx), min(Nq, tot) + 1):
            if a[i, tot - i] != b[i, tot - i]:
                return (i, tot - i)
    return None


def _times_one_plus(s: BiSeries, dq: int, dx: int) -> None:
    """In place: s *= (1 + q^dq x^dx)."""
    for i in range(s.Nq, dq - 1, -1):
        row, src = s.c[i], s.c[i - dq]
        for j in range(s.Nx, dx - 1, -1):
            row[j] += src[j - dx]


def _divide_one_minus_q(coeffs: List[int], d: int) -> None:
    """In place: multiply a q-series by 1/(1 - q^d)."""
    for i in range(d, len(coeffs)):
        coeffs[i] += coeffs[i - d]


def pochhammer_product(Nq: int, Nx: int) -> BiSeries:
    s = BiSeries.one(Nq, Nx)
    for k in range(1, Nq + 1):
        _times_one_plus(s, k, 1)
    return s


def pochhammer_sum(Nq: int, Nx: int) -> BiSeries:
    s = BiSeries(Nq, Nx)
    for k in range(0, Nx + 1):
        shift = k * (k - 1) // 2 + k
        if shift > Nq:
            break
        col = [0] * (Nq + 1)
        col[shift] = 1
        for j in range(1, k + 1):
            _divide_one_minus_q(col, j)
        for i in range(Nq + 1):
            s.c[i][k] += col[i]
    return s


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    orders: Tuple[int, int]
    holds: bool
    first_mismatch: Optional[Tuple[int, int]]

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "orders": list(self.orders),
            "holds": self.holds,
            "first_mismatch": None if self.first_mismatch is None else list(self.first_mismatch),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IdentityReport":
        fm = obj["first_mismatch"]
        return cls(obj["identity"], tuple(obj["orders"]), obj["holds"], None if fm is None else tuple(fm))


def footnote_identity_report(Nq: int, Nx: int, perturb: Optional[Tuple[int, int]] = None) -> IdentityReport:
    """Compare both sides; ``perturb`` adds 1 to one coefficient of the sum side (negative control)."""
    lhs = pochhammer_sum(Nq, Nx)
    rhs = pochhammer_product(Nq, Nx)
    if perturb is not None:
        i, j = perturb
        lhs.c[i][j] += 1
    fm = first_mismatch(lhs, rhs)
    return IdentityReport("q-pochhammer", (Nq, Nx), fm is None, fm)


def footnote_identity_check(Nq: int, Nx: int) -> bool:
    return footnote_identity_report(Nq, Nx).holds


def looijenga_module_side(Nt: int, Nu: int) -> BiSeries:
    """sum_s u^s t^(s(s+2)) / prod_{j<=s} (1 - t^(2j)), indexed [t-power][u-power]."""
    s = BiSeries(Nt, Nu)
    for k in range(Nu + 1):
        shift = k * (k + 2)
        if shift > Nt:
            break
        col = [0] * (Nt + 1)
        col[shift] = 1
        for j in range(1, k + 1):
            _divide_one_minus_q(col, 2 * j)
        for i in range(Nt + 1):
            s.c[i][k] += col[i]
    return s


def looijenga_exterior_side(Nt: int, Nu: int) -> BiSeries:
    """prod_{i>=1} (1 + u t^(2i+1))."""
    s = BiSeries.one(Nt, Nu)
    for i in range(1, (Nt - 1) // 2 + 1):
        _times_one_plus(s, 2 * i + 1, 1)
    return s


def substitute_q_t2_x_ut(s: BiSeries, Nt: int, Nu: int) -> BiSeries:
    """Image of a (q, x) series under q = t^2, x = u*t, truncated at (Nt, Nu)."""
    out = BiSeries(Nt, Nu)
    for i in range(s.Nq + 1):
        for j in range(min(s.Nx, Nu) + 1):
            tp = 2 * i + j
            if tp <= Nt:
                out.c[tp][j] += s.c[i][j]
    return out


def looijenga_rank_report(Nt: int, Nu: int) -> IdentityReport:
    module = looijenga_module_side(Nt, Nu)
    ext = looijenga_exterior_side(Nt, Nu)
    fm = first_mismatch(module, ext)
    if fm is None:
        # the reduction: both sides are the q-Pochhammer series after q = t^2, x = u t
        Nq = Nt // 2
        if substitute_q_t2_x_ut(pochhammer_sum(Nq, Nu), Nt, Nu) != module:
            fm = first_mismatch(substitute_q_t2_x_ut(pochhammer_sum(Nq, Nu), Nt, Nu), module)
        elif substitute_q_t2_x_ut(pochhammer_product(Nq, Nu), Nt, Nu) != ext:
            fm = first_mismatch(substitute_q_t2_x_ut(pochhammer_product(Nq, Nu), Nt, Nu), ext)
    return IdentityReport("looijenga-rank", (Nt, Nu), fm is None, fm)


def looijenga_rank_check(Nt: int, Nu: int) -> bool:
    return looijenga_rank_report(Nt, Nu).holds
