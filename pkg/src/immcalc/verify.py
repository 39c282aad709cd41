"""Self-contained verification checks run by ``immcalc verify-all``.

Each check returns a CheckResult; the oracles used here are independent of
the code path being checked (closed-form products, direct enumeration,
exact Fraction floors, ...).
"""
from __future__ import annotations

import random
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import pi0, qseries, specseq, stability, stable
from .algebra import TruncatedSeries


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def _product_inverse(degrees: List[int], N: int) -> List[int]:
    """Coefficients of prod 1/(1 - t^d) by generic series inversion."""
    s = TruncatedSeries.one(N)
    for d in degrees:
        s = s * TruncatedSeries.one(N) - s * TruncatedSeries.monomial(N, d)
    return [int(c) for c in s.inverse().coeffs]


def expected_stable_generators(d: int) -> List[Tuple[str, int]]:
    if d == 3:
        return []
    if d == 4:
        return [("kappa_1", 2)]
    if d % 2:
        n = (d - 1) // 2
        return [(f"kappa_{i}", 2 * i) for i in range(1, 2 * n - 1)]
    n = d // 2
    return [(f"kappa_{i}", 2 * i) for i in range(1, 2 * n - 2)] + [("Delta", 2 * n - 4)]


def grassmannian_poincare(d: int) -> Dict[int, int]:
    """Closed-form Poincare polynomial of Gr_2^+(R^d)."""
    if d == 3:
        return {0: 1, 2: 1}
    if d % 2:
        n = (d - 1) // 2
        return {2 * i: 1 for i in range(2 * n)}
    n = d // 2
    out: Dict[int, int] = {}
    for a in (0, 2 * n - 2):
        for i in range(n):
            out[a + 2 * i] = out.get(a + 2 * i, 0) + 1
    return out


def check_stable_presentations() -> CheckResult:
    bad = []
    for d in range(3, 11):
        alg = stable.stable_cohomology(d, 40)
        got = sorted((g.name, g.degree) for g in alg.generators)
        want = sorted(expected_stable_generators(d))
        if got != want:
            bad.append(f"d={d}: generators {got} != {want}")
        oracle = _product_inverse([deg for _, deg in want], 40)
        if list(alg.hilbert.coeffs) != oracle:
            bad.append(f"d={d}: Hilbert series mismatch")
    return CheckResult("stable cohomology presentations d=3..10", not bad, "; ".join(bad))


def check_grassmannian() -> CheckResult:
    bad = []
    for d in range(3, 13):
        top = 2 * (d - 2)
        b = stable.grassmannian_betti(d, top)
        if any(b[k] != b[top - k] for k in range(top + 1)):
            bad.append(f"d={d}: Poincare duality fails")
        chi = b.euler()
        if d % 2 == 0 and chi != d:
            bad.append(f"d={d}: chi={chi}")
        if d % 2 == 1 and chi != d - 1:
            # all classes are even, so chi is the total rank 2n
            bad.append(f"d={d}: chi={chi}")
        if d % 2 == 0 and b[d - 2] != 2:
            bad.append(f"d={d}: middle Betti {b[d - 2]}")
        if dict(b.dims) != grassmannian_poincare(d):
            bad.append(f"d={d}: table {dict(b.dims)} disagrees with closed form")
    return CheckResult("Grassmannian Betti tables d=3..12", not bad, "; ".join(bad))


def check_footnote() -> CheckResult:
    a = qseries.footnote_identity_report(50, 20)
    b = qseries.looijenga_rank_report(40, 10)
    neg = qseries.footnote_identity_report(50, 20, perturb=(17, 4))
    ok = a.holds and b.holds and not neg.holds and neg.first_mismatch == (17, 4)
    return CheckResult("q-Pochhammer and Looijenga rank identities", ok,
                       f"pochhammer={a.holds} rank={b.holds} perturbed={neg.holds}@{neg.first_mismatch}")


def _random_units(rng: random.Random, gens) -> Dict[str, Fraction]:
    out = {}
    for g in gens:
        c = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 9))
        out[g.name] = c
    return out


def check_convergence(T: int = 30, seed: int = 0) -> CheckResult:
    bad = []
    rng = random.Random(seed)
    for n in (2, 3):
        run = specseq.run_immersion_ss(n, T)
        want = stable.stable_cohomology(2 * n + 1, run.T_safe).hilbert.coeffs
        if tuple(run.result.coeffs()) != tuple(want):
            bad.append(f"n={n}: E_inf {run.result.coeffs()} != {list(want)}")
        final = run.final
        i = 2 * n - 1
        while 2 * i <= run.T_safe:
            if final.survives(final.monomial(**{f"kappa_{i}": 1})):
                bad.append(f"n={n}: kappa_{i} survives")
            i += 1
        if any(q for (p, q), v in final.dims().items() if p + q <= run.T_safe):
            bad.append(f"n={n}: E_inf not concentrated on q=0")
        units = _random_units(rng, [g for g in final.generators if not g.name.startswith("kappa")])
        rerun = specseq.run_immersion_ss(n, T, units)
        if rerun.result != run.result:
            bad.append(f"n={n}: dims depend on units {units}")
    return CheckResult("spectral sequence converges to Q[kappa_1..kappa_{2n-2}] (n=2,3)", not bad, "; ".join(bad))


def euler_conservation_defects(run: specseq.SSRun) -> List[str]:
    """Page-to-page loss at total degree k must equal rank d(k-1 -> k) + rank d(k -> k+1)."""
    bad = []
    pages = run.pages
    for before, after in zip(pages, pages[1:]):
        if after.r == before.r:
            continue
        window = run.T_safe
        db, da = before.dims_by_total(window), after.dims_by_total(window)
        ranks = after.prev_ranks
        alt = 0
        for k in range(window + 1):
            loss = db[k] - da[k]
            if loss != ranks.get(k, 0) + ranks.get(k - 1, 0):
                bad.append(f"n={run.n} E_{before.r}->E_{after.r} degree {k}")
            alt += (-1) ** k * loss
            if alt != (-1) ** k * ranks.get(k, 0):
                bad.append(f"n={run.n} E_{before.r}: alternating sum to degree {k}")
    return bad


def check_engine_soundness(pairs: int = 1000, seed: int = 1) -> CheckResult:
    bad = []
    rng = random.Random(seed)
    tested = 0
    for n in (2, 3):
        run = specseq.run_immersion_ss(n, 30)
        diff_pages = [p for p in run.pages if p.D is not None]
        for page in diff_pages:
            specseq.check_square_zero(page)
        monos = [m for m, (bd, _) in run.pages[0].position.items() if sum(bd) <= 14]
        for _ in range(pairs // 2):
            page = rng.choice(diff_pages)
            a, b = rng.choice(monos), rng.choice(monos)
            defect = specseq.leibniz_defect(page, a, b)
            if defect is None:
                continue
            tested += 1
            if defect:
                bad.append(f"Leibniz fails on {page.format(a)} * {page.format(b)}")
        bad += euler_conservation_defects(run)
    return CheckResult("engine soundness: d^2=0, Leibniz, Euler characteristic", not bad,
                       "; ".join(bad[:5]) or f"{tested} Leibniz pairs")


_RANGE_FRACTIONS = {
    ("closed", "dim3"): (-6, 5), ("closed", "dimAbove3"): (-3, 3),
    ("alpha", "dim3"): (-1, 5), ("alpha", "dimAbove3"): (0, 3),
    ("beta", "dim3"): (-2, 5), ("beta", "dimAbove3"): (-1, 3),
}


def _oracle_range(dc: str, g: int, kind: str, mode: str) -> int:
    import math
    key = "beta" if kind == "gamma" else kind
    b, c = _RANGE_FRACTIONS[key, dc]
    bound = math.floor(Fraction(2 * g + b, c))
    if mode == "iso" and kind in ("alpha", "beta"):
        bound -= 1
    return max(bound, -1)


def check_ranges() -> CheckResult:
    bad = []
    R = stability.RangeQuery
    if stability.stable_range(R("dim3", 13, "closed")) != 4:
        bad.append("closed dim3 g=13")
    if stability.stable_range(R("dimAbove3", 3, "closed")) != 1:
        bad.append("closed dimAbove3 g=3")
    prev: Dict[tuple, int] = {}
    for g in range(31):
        for dc in ("dim3", "dimAbove3"):
            for kind in ("closed", "alpha", "beta", "gamma"):
                vals = {}
                for mode in ("epi", "iso"):
                    v = stability.stable_range(R(dc, g, kind, mode))
                    vals[mode] = v
                    if v != _oracle_range(dc, g, kind, mode):
                        bad.append(f"{kind} {dc} g={g} {mode}")
                    if prev.get((dc, kind, mode), -1) > v:
                        bad.append(f"not monotone at {kind} {dc} g={g}")
                    prev[dc, kind, mode] = v
                if vals["epi"] < vals["iso"]:
                    bad.append(f"epi < iso at {kind} {dc} g={g}")
            c3 = stability.stable_range(R("dim3", g, "closed"))
            if c3 > stability.stable_range(R("dimAbove3", g, "closed")):
                bad.append(f"dim3 > dimAbove3 at g={g}")
    return CheckResult("stable ranges g=0..30", not bad, "; ".join(bad[:5]))


def check_stabilizers() -> CheckResult:
    bad = []
    for g in range(2, 201):
        orders = stability.stabilizer_orders(g)
        for k, h in orders.items():
            if (g - 1) % k or k * (2 - 2 * h) != 2 - 2 * g:
                bad.append(f"g={g} k={k}")
    return CheckResult("stabilizer orders divide g-1 (g=2..200)", not bad, "; ".join(bad[:5]))


def check_pi0(trials: int = 10_000, seed: int = 2) -> CheckResult:
    bad = []
    rng = random.Random(seed)
    if pi0.classify("dimAtLeast5", pi0.AbelianGroup()).components != "*":
        bad.append("R^5 not connected")
    if pi0.classify("dim4", pi0.AbelianGroup()).components != "2Z":
        bad.append("R^4 not 2Z")
    d3 = pi0.classify("dim3", pi0.AbelianGroup(), g=2, b=0)
    if len(d3.spin_orbits) != 2:
        bad.append("R^3 orbit count")
    h2 = pi0.AbelianGroup(2, (2, 6))
    w2 = pi0.W2Form((1, 0, 1, 1))
    descs = [pi0.classify(dc, h2, w2, g=1) for dc in ("dim3", "dim4", "dimAtLeast5")]
    for _ in range(trials):
        desc = rng.choice(descs)
        xs = []
        for _ in range(3):
            f = h2.random_element(rng)
            if desc.dim_class is pi0.DimClass.DIM4:
                xs.append(desc.element(f, a=2 * rng.randint(-10, 10) + w2(f)))
            elif desc.dim_class is pi0.DimClass.DIM3:
                xs.append(desc.element(f, spin=rng.sample(["s0", "s1", "s2"], rng.randint(0, 2))))
            else:
                xs.append(desc.element(f))
        x, y, z = xs
        if desc.glue(desc.glue(x, y), z) != desc.glue(x, desc.glue(y, z)):
            bad.append("associativity")
        if desc.glue(x, y) != desc.glue(y, x):
            bad.append("commutativity")
        if desc.glue(x, desc.identity()) != x:
            bad.append("identity")
        if not desc.contains(desc.glue(x, y)):
            bad.append("closure/parity")
        if bad:
            break
    return CheckResult("pi_0 gluing monoid (10^4 triples)", not bad, "; ".join(bad[:5]))


def brute_force_series(factors: List[List[int]], N: int) -> List[int]:
    """Multiply polynomials given as coefficient lists, truncating at N."""
    out = [1] + [0] * N
    for f in factors:
        new = [0] * (N + 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                if i + j <= N:
                    new[i + j] += a * b
        out = new
    return out


def check_imm_hilbert() -> CheckResult:
    N = 12
    geom = [1 if k % 6 == 0 else 0 for k in range(N + 1)]
    oracle = brute_force_series([[1, 0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 0, 1]] + [geom] * 4, N)
    got = stable.imm_cohomology_hilbert(2, 2, N).coeffs()
    want = {0: 1, 5: 1, 6: 4, 7: 1, 11: 4, 12: 11}
    ok = got == oracle and all(got[k] == v for k, v in want.items())
    return CheckResult("immersion-space Hilbert series g=2 n=2", ok, f"{got}")


def check_chart(path: Optional[str]) -> CheckResult:
    from .chart import e2_svg, write_atomic
    svg = e2_svg(specseq.run_immersion_ss(2, 30))
    root = ET.fromstring(svg.encode())
    ok = root.tag.endswith("svg") and root.get("version") == "1.1" and len(root.findall(".//{*}circle")) > 0
    if path:
        write_atomic(path, svg)
    return CheckResult("E_2 chart for n=2 is valid SVG", ok, path or "")


def failing_check() -> CheckResult:
    return CheckResult("injected failure", False, "deliberately failing check")


CHECKS: List[Callable[[], CheckResult]] = [
    check_stable_presentations,
    check_grassmannian,
    check_footnote,
    check_convergence,
    check_engine_soundness,
    check_ranges,
    check_stabilizers,
    check_pi0,
    check_imm_hilbert,
]


def run_all(chart_path: Optional[str] = None, inject_failure: bool = False) -> List[CheckResult]:
    checks: List[Callable[[], CheckResult]] = list(CHECKS) + [lambda: check_chart(chart_path)]
    if inject_failure:
        checks.append(failing_check)
    results = []
    for fn in checks:
        t0 = time.perf_counter()
        try:
            res = fn()
        except Exception as exc:  # a crashing check is a failing check
            res = CheckResult(getattr(fn, "__name__", "check"), False, f"{type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results
