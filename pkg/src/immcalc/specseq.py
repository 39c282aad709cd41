"""Multiplicative first-quadrant spectral sequences with free E_2 pages.

E_2 is the free bigraded graded-commutative algebra on a finite list of
generators, truncated at total degree T. Every later page is stored as a
subquotient Z_r / B_r of E_2 in each bidegree. A differential d_r is given on
generators, extended to E_2 as a derivation D_r by the Leibniz rule

    D(ab) = D(a) b + (-1)^{p_a + q_a} a D(b),

and acts on E_r through representatives. Turning the page checks that D_r
preserves Z_r and B_r, so that it really induces a map on E_r.

Differentials raise total degree by one, so the top of the truncation cannot
be trusted: after turning k pages only total degrees <= T - k are exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import Generator, GradedDims, Monomial, format_monomial, monomial_product, monomials_of_degree
from .linalg import Echelon, Vector, axpy, combine, kernel_combinations

Bidegree = Tuple[int, int]


class SpectralSequenceError(ValueError):
    pass


@dataclass(frozen=True)
class BigradedGenerator:
    name: str
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise SpectralSequenceError(f"bad bidegree ({self.p}, {self.q}) for {self.name}")

    @property
    def total(self) -> int:
        return self.p + self.q

    @property
    def parity(self) -> int:
        return self.total % 2

    def as_generator(self) -> Generator:
        return Generator(self.name, self.total)


@dataclass(frozen=True)
class DifferentialRule:
    """d_r on generators: name -> {monomial string: coefficient}; unlisted generators map to 0."""

    r: int
    targets: Mapping[str, Mapping[str, object]]
    generators: Optional[Tuple[BigradedGenerator, ...]] = None

    def __post_init__(self):
        if self.r < 1:
            raise SpectralSequenceError(f"page index must be >= 1, got {self.r}")
        if self.generators is not None:
            self.resolve(self.generators)

    def resolve(self, gens: Sequence[BigradedGenerator]) -> Dict[int, Dict[Monomial, Fraction]]:
        """Targets as {generator index: {monomial: coeff}} with bidegrees checked."""
        index = {g.name: i for i, g in enumerate(gens)}
        out = {}
        for src, poly in self.targets.items():
            if src not in index:
                raise SpectralSequenceError(f"rule mentions unknown generator {src!r}")
            g = gens[index[src]]
            want = (g.p + self.r, g.q - self.r + 1)
            terms: Dict[Monomial, Fraction] = {}
            for key, c in poly.items():
                m = [0] * len(gens)
                if key.strip() != "1":
                    for factor in key.split("*"):
                        name, _, e = factor.strip().partition("^")
                        if name not in index:
                            raise SpectralSequenceError(f"rule target mentions unknown generator {name!r}")
                        m[index[name]] += int(e or 1)
                m = tuple(m)
                bd = monomial_bidegree(gens, m)
                if bd != want:
                    raise SpectralSequenceError(
                        f"d_{self.r}({src}) must have bidegree {want}, term {key} has {bd}")
                if Fraction(c):
                    terms[m] = terms.get(m, 0) + Fraction(c)
            out[index[src]] = {m: c for m, c in terms.items() if c}
        return out


def monomial_bidegree(gens: Sequence[BigradedGenerator], m: Monomial) -> Bidegree:
    return (sum(g.p * e for g, e in zip(gens, m)), sum(g.q * e for g, e in zip(gens, m)))


class SpectralPage:
    """Page E_r of a truncated multiplicative spectral sequence."""

    def __init__(self, r: int, T: int, generators: Sequence[BigradedGenerator]):
        self.r = r
        self.T = T
        self.generators = tuple(generators)
        self.alg_gens = tuple(g.as_generator() for g in self.generators)
        self.basis: Dict[Bidegree, List[Monomial]] = {}
        self.position: Dict[Monomial, Tuple[Bidegree, int]] = {}
        for d in range(T + 1):
            for m in monomials_of_degree(self.alg_gens, d):
                bd = monomial_bidegree(self.generators, m)
                lst = self.basis.setdefault(bd, [])
                self.position[m] = (bd, len(lst))
                lst.append(m)
        self.Z: Dict[Bidegree, Echelon] = {}
        self.B: Dict[Bidegree, Echelon] = {}
        self.D: Optional[Dict[Monomial, Optional[Vector]]] = None
        self.rule: Optional[DifferentialRule] = None
        self.turned = 0  # number of page turns since E_2
        self.prev_ranks: Dict[int, int] = {}  # rank of d_{r-1} by source total degree

    # -- structure -------------------------------------------------------
    def copy_shell(self) -> "SpectralPage":
        new = SpectralPage.__new__(SpectralPage)
        new.r, new.T = self.r, self.T
        new.generators, new.alg_gens = self.generators, self.alg_gens
        new.basis, new.position = self.basis, self.position
        new.Z, new.B = self.Z, self.B
        new.D, new.rule = None, None
        new.turned = self.turned
        new.prev_ranks = dict(self.prev_ranks)
        return new

    def bidegrees(self) -> List[Bidegree]:
        return sorted(self.basis, key=lambda bd: (bd[0] + bd[1], bd))

    def unit_vector(self, m: Monomial) -> Vector:
        return {self.position[m][1]: Fraction(1)}

    @property
    def safe_total(self) -> int:
        """Largest total degree at which this page is exact."""
        return self.T - self.turned

    def dim(self, bd: Bidegree) -> int:
        if bd not in self.basis:
            return 0
        return len(self.Z[bd]) - len(self.B[bd])

    def dims(self) -> Dict[Bidegree, int]:
        return {bd: self.dim(bd) for bd in self.bidegrees() if self.dim(bd)}

    def dims_by_total(self, upto: Optional[int] = None) -> GradedDims:
        upto = self.safe_total if upto is None else upto
        out: Dict[int, int] = {}
        for (p, q), v in self.dims().items():
            if p + q <= upto:
                out[p + q] = out.get(p + q, 0) + v
        return GradedDims(max(upto, 0), out)

    def survives(self, m: Monomial) -> bool:
        """Whether the class of the E_2 monomial m is a nonzero element of this page."""
        bd, _ = self.position[m]
        v = self.unit_vector(m)
        return self.Z[bd].contains(v) and not self.B[bd].contains(v)

    def monomial(self, **exps: int) -> Monomial:
        names = [g.name for g in self.generators]
        m = [0] * len(names)
        for k, e in exps.items():
            m[names.index(k)] = e
        return tuple(m)

    def format(self, m: Monomial) -> str:
        return format_monomial(self.alg_gens, m)

    # -- differential ----------------------------------------------------
    def apply(self, bd: Bidegree, v: Vector) -> Optional[Vector]:
        """D_r on a vector in E_2^{bd}; None if the image leaves the truncation."""
        if self.D is None:
            return {}
        out: Vector = {}
        basis = self.basis[bd]
        for k, c in v.items():
            img = self.D[basis[k]]
            if img is None:
                return None
            out = axpy(c, img, out)
        return out

    def target(self, bd: Bidegree) -> Bidegree:
        return (bd[0] + self.r, bd[1] - self.r + 1)


def build_page(generators: Sequence[BigradedGenerator], T: int, r: int = 2) -> SpectralPage:
    """Free E_r page: Z is everything, B is zero."""
    if T < 0:
        raise SpectralSequenceError(f"truncation must be >= 0, got {T}")
    names = [g.name for g in generators]
    if len(set(names)) != len(names):
        raise SpectralSequenceError(f"duplicate generator names {names}")
    page = SpectralPage(r, T, generators)
    for bd, lst in page.basis.items():
        page.Z[bd] = Echelon({i: Fraction(1)} for i in range(len(lst)))
        page.B[bd] = Echelon()
    return page


def immersion_generators(n: int, T: int) -> List[BigradedGenerator]:
    if n < 2:
        raise SpectralSequenceError(f"need 2n+1 >= 5, got n = {n}")
    gens = [BigradedGenerator(f"kappa_{i}", 2 * i, 0) for i in range(1, T // 2 + 1)]
    for deg in (4 * n - 3, 4 * n - 1):
        if deg <= T:
            gens.append(BigradedGenerator(f"x_{deg}", 0, deg))
    k = 0
    while 4 * n + 1 + 2 * k <= T:
        gens.append(BigradedGenerator(f"l_{4 * n + 1 + 2 * k}", 3 + 2 * k, 4 * n - 2))
        k += 1
    return gens


def build_e2_immersion(n: int, T: int) -> SpectralPage:
    """E_2 = Q[kappa_1, ...] (x) Lambda[x_{4n-3}, x_{4n-1}, l_{4n+1}, l_{4n+3}, ...]."""
    return build_page(immersion_generators(n, T), T)


def _derivation_on_monomial(page: SpectralPage, on_gens: Dict[int, Dict[Monomial, Fraction]], m: Monomial
                            ) -> Dict[Monomial, Fraction]:
    gens = page.alg_gens
    out: Dict[Monomial, Fraction] = {}
    prefix_deg = 0
    zero = (0,) * len(gens)
    for i, e in enumerate(m):
        if e == 0:
            continue
        dg = on_gens.get(i)
        if dg:
            prefix = m[:i] + zero[i:]
            suffix = zero[: i + 1] + m[i + 1:]
            rest = list(zero)
            rest[i] = e - 1
            rest = tuple(rest)
            sign_prefix = -1 if prefix_deg % 2 else 1
            for t, c in dg.items():
                # prefix * (e * g^(e-1) * t) * suffix
                s1, mm = monomial_product(gens, rest, t)
                if not s1:
                    continue
                s2, mm = monomial_product(gens, prefix, mm)
                if not s2:
                    continue
                s3, mm = monomial_product(gens, mm, suffix)
                if not s3:
                    continue
                coeff = sign_prefix * s1 * s2 * s3 * e * c
                out[mm] = out.get(mm, 0) + coeff
        prefix_deg += gens[i].degree * e
    return {k: v for k, v in out.items() if v}


def extend_leibniz(page: SpectralPage, rule: DifferentialRule, check: bool = True) -> SpectralPage:
    if rule.r != page.r:
        raise SpectralSequenceError(f"rule is for d_{rule.r}, page is E_{page.r}")
    on_gens = rule.resolve(page.generators)
    new = page.copy_shell()
    new.rule = rule
    D: Dict[Monomial, Optional[Vector]] = {}
    for m, (bd, _) in page.position.items():
        if sum(bd) + 1 > page.T:
            D[m] = None
            continue
        img = _derivation_on_monomial(page, on_gens, m)
        D[m] = {page.position[k][1]: c for k, c in img.items()}
    new.D = D
    if check:
        check_square_zero(new)
    return new


def check_square_zero(page: SpectralPage) -> int:
    """Verify D_r o D_r = 0 on every basis monomial whose double image is inside the truncation."""
    checked = 0
    for m, (bd, _) in page.position.items():
        img = page.D[m]
        if img is None:
            continue
        tbd = page.target(bd)
        if not img:
            continue
        img2 = page.apply(tbd, img)
        if img2 is None:
            continue
        if img2:
            raise SpectralSequenceError(f"d_{page.r}^2 != 0 on {page.format(m)}")
        checked += 1
    return checked


def leibniz_defect(page: SpectralPage, a: Monomial, b: Monomial) -> Optional[Dict[Monomial, Fraction]]:
    """D(ab) - D(a) b - (-1)^{|a|} a D(b), computed independently of the stored table.

    Returns None when ab is beyond the truncation; {} when the identity holds.
    """
    gens = page.alg_gens
    sign, ab = monomial_product(gens, a, b)
    if sum(ab_deg for ab_deg in (_deg(gens, a), _deg(gens, b))) + 1 > page.T:
        return None
    basis_of = lambda bd: page.basis[bd]

    def D(m: Monomial) -> Dict[Monomial, Fraction]:
        bd, _ = page.position[m]
        img = page.D[m]
        return {basis_of(page.target(bd))[k]: c for k, c in img.items()}

    def mul(x: Dict[Monomial, Fraction], y: Dict[Monomial, Fraction]) -> Dict[Monomial, Fraction]:
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                s, mm = monomial_product(gens, m1, m2)
                if s:
                    out[mm] = out.get(mm, 0) + s * c1 * c2
        return out

    lhs = {m: sign * c for m, c in D(ab).items()} if sign else {}
    rhs = mul(D(a), {b: Fraction(1)})
    sa = -1 if _deg(gens, a) % 2 else 1
    for m, c in mul({a: Fraction(1)}, D(b)).items():
        rhs[m] = rhs.get(m, 0) + sa * c
    diff = {m: lhs.get(m, 0) - rhs.get(m, 0) for m in set(lhs) | set(rhs)}
    return {m: c for m, c in diff.items() if c}


def _deg(gens, m) -> int:
    return sum(g.degree * e for g, e in zip(gens, m))


def turn_page(page: SpectralPage) -> SpectralPage:
    """E_{r+1} = H(E_r, d_r), degreewise by exact linear algebra."""
    nxt = page.copy_shell()
    nxt.r = page.r + 1
    nxt.turned = page.turned + 1
    nxt.Z = {bd: z.copy() for bd, z in page.Z.items()}
    nxt.B = {bd: b.copy() for bd, b in page.B.items()}
    ranks: Dict[int, int] = {}
    if page.D is not None:
        for bd in page.bidegrees():
            tbd = page.target(bd)
            zs = page.Z[bd].basis()
            if not zs or tbd not in page.basis:
                continue
            images = [page.apply(bd, z) for z in zs]
            if any(w is None for w in images):
                continue  # target beyond truncation: leave as cycles
            _check_descends(page, bd, tbd, images)
            kernel = kernel_combinations(images, modulo=page.B[tbd])
            nxt.Z[bd] = Echelon(combine(c, zs) for c in kernel)
            before = len(nxt.B[tbd])
            for w in images:
                nxt.B[tbd].add(w)
            ranks[sum(bd)] = ranks.get(sum(bd), 0) + len(nxt.B[tbd]) - before
    nxt.prev_ranks = ranks
    return nxt


def _check_descends(page: SpectralPage, bd: Bidegree, tbd: Bidegree, images: List[Vector]) -> None:
    # D_r(Z_r) must lie in Z_r and D_r(B_r) in B_r for d_r to be defined on E_r
    if sum(tbd) > page.safe_total:
        return
    for w in images:
        if not page.Z[tbd].contains(w):
            raise SpectralSequenceError(f"d_{page.r} does not map cycles at {bd} to cycles at {tbd}")
    for b in page.B[bd].basis():
        w = page.apply(bd, b)
        if w is not None and not page.B[tbd].contains(w):
            raise SpectralSequenceError(f"d_{page.r} does not preserve boundaries at {bd}")


@dataclass
class SSRun:
    n: int
    T: int
    T_safe: int
    result: GradedDims
    pages: List[SpectralPage] = field(default_factory=list)
    rules: Dict[int, DifferentialRule] = field(default_factory=dict)

    @property
    def final(self) -> SpectralPage:
        return self.pages[-1]


def immersion_rules(n: int, gens: Sequence[BigradedGenerator], units: Optional[Mapping[str, object]] = None
                    ) -> Dict[int, DifferentialRule]:
    """The three differential families; ``units`` maps source names to nonzero coefficients (default 1)."""
    units = dict(units or {})
    names = {g.name for g in gens}
    fam: Dict[int, Dict[str, Dict[str, object]]] = {4 * n - 2: {}, 4 * n - 1: {}, 4 * n: {}}

    def add(r: int, src: str, dst: str):
        if src in names and dst in names:
            u = Fraction(units.get(src, 1))
            if u == 0:
                raise SpectralSequenceError(f"unit for {src} must be nonzero")
            fam[r][src] = {dst: u}

    add(4 * n - 2, f"x_{4 * n - 3}", f"kappa_{2 * n - 1}")
    add(4 * n, f"x_{4 * n - 1}", f"kappa_{2 * n}")
    for g in gens:
        if g.name.startswith("l_"):
            k = (int(g.name[2:]) - 4 * n - 1) // 2
            add(4 * n - 1, g.name, f"kappa_{2 * n + 1 + k}")
    return {r: DifferentialRule(r, t, tuple(gens)) for r, t in fam.items()}


def run_spectral_sequence(e2: SpectralPage, rules: Mapping[int, DifferentialRule], last: int) -> List[SpectralPage]:
    """Apply d_r for r = e2.r .. last (zero where no rule), returning E_r for r = e2.r .. last + 1."""
    pages = []
    page = e2
    while page.r <= last:
        rule = rules.get(page.r)
        if rule is not None:
            page = extend_leibniz(page, rule)
        pages.append(page)
        page = turn_page(page)
    pages.append(page)
    return pages


def run_immersion_ss(n: int, T: int, units: Optional[Mapping[str, object]] = None) -> SSRun:
    e2 = build_e2_immersion(n, T)
    rules = immersion_rules(n, e2.generators, units)
    pages = run_spectral_sequence(e2, rules, 4 * n)
    T_safe = T - 4 * n
    result = pages[-1].dims_by_total(T_safe) if T_safe >= 0 else GradedDims(0, {})
    return SSRun(n, T, T_safe, result, pages, rules)


def module_generator_counts(dims: Mapping[Bidegree, int], kappa_degrees: Iterable[int], T: int
                            ) -> Dict[Bidegree, int]:
    """Factor the polynomial algebra on base classes of the given p-degrees out of a bigraded table.

    For a free module this counts free generators per bidegree; for other pages
    the result is a virtual count and may be negative.
    """
    grid: Dict[Bidegree, int] = dict(dims)
    for d in kappa_degrees:
        # multiply by (1 - s^d) in the p-direction
        new = dict(grid)
        for (p, q), v in grid.items():
            if p + d + q <= T:
                new[(p + d, q)] = new.get((p + d, q), 0) - v
        grid = new
    return {bd: v for bd, v in grid.items() if v}
