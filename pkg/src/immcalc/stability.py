"""Stable ranges and stabilizer-order arithmetic.

Bounds are floors of the rational inequalities ``* <= (a*g + b)/c``; a
negative floor means the range is empty and is reported as -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple


class DimClass(str, Enum):
    DIM3 = "dim3"
    ABOVE3 = "dimAbove3"


class MapKind(str, Enum):
    CLOSED = "closed"
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"


class Mode(str, Enum):
    EPI = "epi"
    ISO = "iso"


# (2g + b) / c, keyed by map kind and dimension class
_EPI_BOUNDS: Dict[Tuple[MapKind, DimClass], Tuple[int, int]] = {
    (MapKind.CLOSED, DimClass.DIM3): (-6, 5),
    (MapKind.CLOSED, DimClass.ABOVE3): (-3, 3),
    (MapKind.ALPHA, DimClass.DIM3): (-1, 5),
    (MapKind.ALPHA, DimClass.ABOVE3): (0, 3),
    (MapKind.BETA, DimClass.DIM3): (-2, 5),
    (MapKind.BETA, DimClass.ABOVE3): (-1, 3),
}


@dataclass(frozen=True)
class RangeQuery:
    dim_class: DimClass
    g: int
    kind: MapKind = MapKind.CLOSED
    mode: Mode = Mode.EPI

    def __post_init__(self):
        object.__setattr__(self, "dim_class", DimClass(self.dim_class))
        object.__setattr__(self, "kind", MapKind(self.kind))
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.g < 0:
            raise ValueError(f"genus must be >= 0, got {self.g}")


def _floor_bound(g: int, b: int, c: int) -> int:
    return (2 * g + b) // c


def stable_range(q: RangeQuery) -> int:
    if q.kind is MapKind.CLOSED:
        # the closed-surface map is an isomorphism (hence epimorphism) in this range
        bound = _floor_bound(q.g, *_EPI_BOUNDS[q.kind, q.dim_class])
    elif q.kind is MapKind.GAMMA:
        bound = _floor_bound(q.g, *_EPI_BOUNDS[MapKind.BETA, q.dim_class])
    else:
        bound = _floor_bound(q.g, *_EPI_BOUNDS[q.kind, q.dim_class])
        if q.mode is Mode.ISO:
            bound -= 1
    return max(bound, -1)


def stabilizer_orders(g: int) -> Dict[int, int]:
    """Orders k with k*(2-2h) = 2-2g for some h >= 0, mapped to the witness h.

    This is arithmetic feasibility of the Euler-characteristic equation for a
    free quotient, not realizability by a group action.
    """
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    chi = 2 - 2 * g
    out = {}
    for k in range(1, -chi + 1):
        if chi % k:
            continue
        quotient_chi = chi // k
        if quotient_chi % 2 == 0 and quotient_chi <= 2:
            out[k] = (2 - quotient_chi) // 2
    return out


def stabilizer_orders_json(g: int) -> dict:
    return {"orders": [{"k": k, "h": h} for k, h in sorted(stabilizer_orders(g).items())]}


def range_table(gs: List[int]) -> List[dict]:
    rows = []
    for g in gs:
        for dc in DimClass:
            for kind in MapKind:
                for mode in Mode:
                    rows.append({"g": g, "dim": dc.value, "map": kind.value, "mode": mode.value,
                                 "bound": stable_range(RangeQuery(dc, g, kind, mode))})
    return rows
