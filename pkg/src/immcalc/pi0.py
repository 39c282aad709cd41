"""Path components of immersion moduli and the gluing monoid.

Elements of H_2(M; Z) are integer tuples in Smith-normal coordinates: free
coordinates first, then residues modulo the invariant factors. Spin data on
surfaces is kept symbolic; only closed surfaces of genus >= 1 get Arf labels.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple


class Pi0Error(ValueError):
    pass


class DimClass(str, Enum):
    DIM3 = "dim3"
    DIM4 = "dim4"
    DIM5 = "dimAtLeast5"

    @classmethod
    def from_dim(cls, dim: int) -> "DimClass":
        if dim < 3:
            raise Pi0Error(f"manifold dimension must be >= 3, got {dim}")
        return {3: cls.DIM3, 4: cls.DIM4}.get(dim, cls.DIM5)


@dataclass(frozen=True)
class AbelianGroup:
    rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank < 0:
            raise Pi0Error(f"free rank must be >= 0, got {self.rank}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise Pi0Error(f"invariant factors {self.torsion} do not form a divisibility chain")
        if any(m < 2 for m in self.torsion):
            raise Pi0Error(f"invariant factors must be >= 2, got {self.torsion}")

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.ngens

    def normalize(self, x: Sequence[int]) -> Tuple[int, ...]:
        if len(x) != self.ngens:
            raise Pi0Error(f"element {tuple(x)} has {len(x)} coordinates, group has {self.ngens}")
        return tuple(x[: self.rank]) + tuple(v % m for v, m in zip(x[self.rank:], self.torsion))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        return self.normalize([a + b for a, b in zip(x, y)])

    def random_element(self, rng: random.Random, bound: int = 20) -> Tuple[int, ...]:
        return tuple(rng.randint(-bound, bound) for _ in range(self.rank)) + tuple(
            rng.randrange(m) for m in self.torsion)

    def __str__(self) -> str:
        if self.is_trivial():
            return "0"
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{m}" for m in self.torsion]
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse 'trivial', '0', 'Z^2', 'Z+Z/2', 'Z^2 + Z/2 + Z/4'."""
        text = text.replace(" ", "")
        if text in ("", "0", "trivial"):
            return cls()
        rank, tors = 0, []
        for part in text.split("+"):
            if part.startswith("Z/"):
                tors.append(int(part[2:]))
            elif part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            else:
                raise Pi0Error(f"cannot parse group summand {part!r}")
        return cls(rank, tuple(sorted(tors)))


@dataclass(frozen=True)
class W2Form:
    """Homomorphism H_2 -> Z/2 given by its values on the listed generators."""

    values: Tuple[int, ...] = ()

    def check(self, group: AbelianGroup) -> None:
        if len(self.values) != group.ngens:
            raise Pi0Error(f"w2 has {len(self.values)} values, H2 has {group.ngens} generators")
        if any(v not in (0, 1) for v in self.values):
            raise Pi0Error("w2 values must be 0 or 1")
        for v, m in zip(self.values[group.rank:], group.torsion):
            if v and m % 2:
                raise Pi0Error(f"w2 is nonzero on a generator of odd order {m}")

    def __call__(self, f: Sequence[int]) -> int:
        return sum(v * x for v, x in zip(self.values, f)) % 2

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True)
class SpinFactor:
    """Symbolic Spin-structure data on Sigma_{g,b}; ``arf`` only for closed surfaces."""

    g: int
    b: int
    arf: Optional[int] = None

    def __post_init__(self):
        if self.arf is not None and (self.b != 0 or self.g < 1 or self.arf not in (0, 1)):
            raise Pi0Error("Arf labels are defined here only for closed surfaces of genus >= 1")

    def token(self) -> str:
        if self.arf is not None:
            return f"Spin(S_{self.g})[Arf={self.arf}]"
        return f"Spin(S_{self.g},{self.b};*)"


@dataclass(frozen=True)
class Pi0Element:
    dim_class: DimClass
    f: Tuple[int, ...]
    a: Optional[int] = None            # normal Euler number, dim4 only
    spin: Tuple[str, ...] = ()         # glued Spin pieces, dim3 only

    def to_json(self) -> dict:
        out: dict = {"f": list(self.f)}
        if self.dim_class is DimClass.DIM4:
            out["a"] = self.a
        if self.dim_class is DimClass.DIM3:
            out["spin"] = list(self.spin)
        return out


@dataclass(frozen=True)
class Pi0Description:
    dim_class: DimClass
    h2: AbelianGroup
    w2: W2Form
    g: int
    b: int
    components: str
    mcg_action: str
    spin_orbits: Tuple[str, ...] = ()
    examples: Tuple[Pi0Element, ...] = field(default=())

    def contains(self, x: Pi0Element) -> bool:
        if x.dim_class is not self.dim_class or len(x.f) != self.h2.ngens:
            return False
        if self.h2.normalize(x.f) != tuple(x.f):
            return False
        if self.dim_class is DimClass.DIM4:
            return x.a is not None and x.a % 2 == self.w2(x.f)
        return True

    def identity(self) -> Pi0Element:
        return Pi0Element(self.dim_class, self.h2.zero(), 0 if self.dim_class is DimClass.DIM4 else None)

    def element(self, f: Sequence[int] = (), a: Optional[int] = None, spin: Sequence[str] = ()) -> Pi0Element:
        f = self.h2.normalize(tuple(f) or self.h2.zero())
        if self.dim_class is DimClass.DIM4:
            if a is None or a % 2 != self.w2(f):
                raise Pi0Error(f"Euler number {a} violates the parity condition a = w2(f) = {self.w2(f)} mod 2")
        elif a is not None:
            raise Pi0Error("Euler numbers only appear for 4-manifolds")
        if spin and self.dim_class is not DimClass.DIM3:
            raise Pi0Error("Spin data only appears for 3-manifolds")
        return Pi0Element(self.dim_class, f, a, tuple(sorted(spin)))

    def glue(self, x: Pi0Element, y: Pi0Element) -> Pi0Element:
        z = glue(x, y, self.dim_class, self.h2)
        if self.dim_class is DimClass.DIM4 and z.a % 2 != self.w2(z.f):
            raise Pi0Error("parity condition violated after gluing")
        return z

    def to_json(self) -> dict:
        out = {
            "dim_class": self.dim_class.value,
            "components": self.components,
            "mcg_action": self.mcg_action,
            "examples": [e.to_json() for e in self.examples],
        }
        if self.spin_orbits:
            out["spin_orbits"] = list(self.spin_orbits)
        return out


def classify(dim_class, h2: AbelianGroup, w2: Optional[W2Form] = None, g: int = 0, b: int = 0) -> Pi0Description:
    dim_class = DimClass(dim_class)
    if g < 0 or b < 0:
        raise Pi0Error(f"genus and boundary count must be >= 0, got g={g}, b={b}")
    if w2 is None:
        w2 = W2Form((0,) * h2.ngens)
    w2.check(h2)
    H = str(h2)
    orbits: Tuple[str, ...] = ()
    if dim_class is DimClass.DIM5:
        components = "*" if h2.is_trivial() else H
        mcg = "trivial"
    elif dim_class is DimClass.DIM4:
        if h2.is_trivial():
            components = "2Z"
        elif w2.is_zero():
            components = f"2Z x ({H})"
        else:
            components = f"{{(a, f) in Z x ({H}) : a = w2(f) mod 2}}"
        mcg = "trivial"
    else:
        spin = SpinFactor(g, b).token()
        components = spin if h2.is_trivial() else f"{spin} x ({H})"
        mcg = "spin-structures"
        if b == 0 and g >= 1:
            orbits = tuple(SpinFactor(g, 0, arf).token() for arf in (0, 1))
    desc = Pi0Description(dim_class, h2, w2, g, b, components, mcg, orbits)
    return replace(desc, examples=tuple(_examples(desc)))


def _examples(desc: Pi0Description) -> List[Pi0Element]:
    out = [desc.identity()]
    gens = [tuple(1 if j == i else 0 for j in range(desc.h2.ngens)) for i in range(desc.h2.ngens)]
    if desc.dim_class is DimClass.DIM4:
        out.append(desc.element(a=2))
        out += [desc.element(f, a=desc.w2(f)) for f in gens]
    elif desc.dim_class is DimClass.DIM3:
        out = [desc.element(f, spin=(o,)) for o in desc.spin_orbits or (SpinFactor(desc.g, desc.b).token(),)
               for f in [desc.h2.zero()] + gens[:1]]
    else:
        out += [desc.element(f) for f in gens]
    return out


def glue(x: Pi0Element, y: Pi0Element, dim_class, h2: Optional[AbelianGroup] = None) -> Pi0Element:
    """Glue two surfaces along boundary: classes add, Euler numbers add, Spin pieces unite."""
    dim_class = DimClass(dim_class)
    if x.dim_class is not dim_class or y.dim_class is not dim_class:
        raise Pi0Error(f"cannot glue {x.dim_class.value} with {y.dim_class.value} in {dim_class.value}")
    if len(x.f) != len(y.f):
        raise Pi0Error("homology classes live in different groups")
    f = h2.add(x.f, y.f) if h2 is not None else tuple(p + q for p, q in zip(x.f, y.f))
    a = x.a + y.a if dim_class is DimClass.DIM4 else None
    spin = tuple(sorted(x.spin + y.spin)) if dim_class is DimClass.DIM3 else ()
    return Pi0Element(dim_class, f, a, spin)
