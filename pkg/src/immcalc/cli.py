"""Command-line front end.

Exit codes: 0 success or verified, 1 verification failure, 2 usage or
validation error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional, Sequence

from . import chart, pi0, qseries, specseq, stability, stable, verify
from .algebra import AlgebraError

OUTPUT_DIR_ENV = "IMMCALC_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _table(rows: Sequence[Sequence[object]], header: Sequence[str]) -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells) + "\n"


def _resolve(path: str) -> str:
    if os.path.isabs(path):
        return path
    return os.path.join(os.environ.get(OUTPUT_DIR_ENV, "."), path)


def _pair(text: str) -> tuple:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {text!r}")
    return i, j


def cmd_stable_cohomology(args) -> int:
    alg = stable.stable_cohomology(args.dim, args.max_degree)
    if args.json:
        _out(chart.dumps(alg.to_json()))
        return 0
    gens = ", ".join(f"{g.name} (deg {g.degree})" for g in alg.generators) or "none (trivial algebra)"
    lines = [f"H*(Omega^infty_. MTtheta_R^{args.dim}; Q): free on {gens}"]
    for k, v in alg.aliases.items():
        lines.append(f"alias: {k} = {v}")
    lines.append(_table([(k, c) for k, c in enumerate(alg.hilbert.coeffs)], ["degree", "dim"]))
    _out("\n".join(lines))
    return 0


def cmd_grassmannian(args) -> int:
    b = stable.grassmannian_betti(args.dim, args.max_degree)
    if args.json:
        _out(chart.dumps(b.to_json()))
    else:
        _out(_table(sorted(b.dims.items()), ["degree", "betti"]))
    return 0


def cmd_specseq(args) -> int:
    run = specseq.run_immersion_ss(args.n, args.max_total)
    want = stable.stable_cohomology(2 * args.n + 1, max(run.T_safe, 0)).hilbert.coeffs
    got = run.result.coeffs()
    ok = run.T_safe >= 0 and list(got) == [int(c) for c in want]
    if args.svg:
        chart.write_atomic(_resolve(args.svg), chart.e2_svg(run))
    if args.tsv:
        chart.write_atomic(_resolve(args.tsv), chart.pages_tsv(run))
    report = chart.run_json(run)
    report["verified"] = ok
    if args.genus is not None:
        bound = stability.stable_range(stability.RangeQuery("dimAbove3", args.genus))
        report["genus"] = args.genus
        report["stable_degrees"] = [k for k in range(min(bound, run.T_safe) + 1)]
    if args.json:
        _out(chart.dumps(report))
    else:
        rows = [(k, got[k], want[k]) for k in range(len(got))]
        _out(_table(rows, ["total", "E_inf", "Q[kappa]"]))
        if args.genus is not None:
            _out(f"degrees inside the stable range for g={args.genus}: <= {report['stable_degrees'][-1] if report['stable_degrees'] else 'none'}")
        _out(f"safe window: total degree <= {run.T_safe}")
        _out("verified" if ok else "MISMATCH")
    return 0 if ok else 1


def _report(rep: qseries.IdentityReport) -> int:
    _out(chart.dumps(rep.to_json()))
    return 0 if rep.holds else 1


def cmd_qseries(args) -> int:
    if args.perturb is not None:
        i, j = args.perturb
        if not (0 <= i <= args.order_q and 0 <= j <= args.order_x):
            raise UsageError(f"perturbation {args.perturb} outside orders ({args.order_q}, {args.order_x})")
    return _report(qseries.footnote_identity_report(args.order_q, args.order_x, args.perturb))


def cmd_looijenga(args) -> int:
    return _report(qseries.looijenga_rank_report(args.order_t, args.order_u))


def cmd_ranges(args) -> int:
    dc = "dim3" if args.dim == 3 else "dimAbove3"
    bound = stability.stable_range(stability.RangeQuery(dc, args.genus, args.map, args.mode))
    if args.json:
        _out(chart.dumps({"bound": bound}))
    else:
        _out(str(bound))
    return 0


def cmd_stabilizers(args) -> int:
    rep = stability.stabilizer_orders_json(args.genus)
    if args.json:
        _out(chart.dumps(rep))
    else:
        _out(_table([(o["k"], o["h"]) for o in rep["orders"]], ["order k", "quotient genus h"]))
    return 0


def cmd_pi0(args) -> int:
    h2 = pi0.AbelianGroup.parse(args.h2)
    w2 = None
    if args.w2:
        w2 = pi0.W2Form(tuple(int(v) for v in args.w2.split(",")))
    desc = pi0.classify(pi0.DimClass.from_dim(args.dim), h2, w2, args.genus, args.boundary)
    if args.json:
        _out(chart.dumps(desc.to_json()))
    else:
        _out(desc.components)
        _out(f"mapping class group action: {desc.mcg_action}")
        for o in desc.spin_orbits:
            _out(f"orbit: {o}")
    return 0


def cmd_imm(args) -> int:
    dims = stable.imm_cohomology_hilbert(args.genus, args.n, args.max_degree)
    if args.json:
        _out(chart.dumps(dims.to_json()))
    else:
        _out(_table(sorted(dims.dims.items()), ["degree", "dim"]))
    return 0


def cmd_verify_all(args) -> int:
    out_dir = args.out_dir or os.environ.get(OUTPUT_DIR_ENV) or "immcalc-out"
    results = verify.run_all(os.path.join(out_dir, "sseq_n2.svg"), inject_failure=args.inject_failure)
    rows = [("PASS" if r.passed else "FAIL", f"{r.seconds:.2f}s", r.name, r.detail) for r in results]
    _out(_table(rows, ["status", "time", "check", "detail"]))
    failed = sum(not r.passed for r in results)
    _out(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="immcalc", description="Exact computations for moduli of immersed surfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stable-cohomology", help="free algebra H*(Omega^infty MTtheta_R^d; Q)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stable_cohomology)

    p = sub.add_parser("grassmannian", help="Betti table of Gr_2^+(R^d)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=40)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_grassmannian)

    p = sub.add_parser("specseq", help="run the Leray-Serre spectral sequence for I_g(R^{2n+1})")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-total", type=int, default=30)
    p.add_argument("--genus", type=int)
    p.add_argument("--svg")
    p.add_argument("--tsv")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_specseq)

    p = sub.add_parser("qseries", help="check the q-Pochhammer expansion")
    p.add_argument("--order-q", type=int, required=True)
    p.add_argument("--order-x", type=int, required=True)
    p.add_argument("--perturb", type=_pair, metavar="I,J", help="add 1 to one coefficient (negative control)")
    p.set_defaults(func=cmd_qseries)

    p = sub.add_parser("looijenga", help="check the bigraded rank identity")
    p.add_argument("--order-t", type=int, required=True)
    p.add_argument("--order-u", type=int, required=True)
    p.set_defaults(func=cmd_looijenga)

    p = sub.add_parser("ranges", help="stable range bound")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--map", choices=[k.value for k in stability.MapKind], default="closed")
    p.add_argument("--mode", choices=[m.value for m in stability.Mode], default="epi")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ranges)

    p = sub.add_parser("stabilizers", help="feasible stabilizer orders for genus g")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stabilizers)

    p = sub.add_parser("pi0", help="path components of the immersion moduli")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--h2", default="trivial", help="H_2(M;Z), e.g. 'trivial', 'Z^2', 'Z + Z/2'")
    p.add_argument("--w2", help="comma-separated values of w_2 on the generators of H_2")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--boundary", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pi0)

    p = sub.add_parser("imm", help="Hilbert series of H*(Imm(Sigma_g, R^{2n+1}); Q)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_imm)

    p = sub.add_parser("verify-all", help="run every verification check")
    p.add_argument("--out-dir")
    p.add_argument("--inject-failure", action="store_true", help="append a deliberately failing check")
    p.set_defaults(func=cmd_verify_all)
    return ap


_VALIDATION = (UsageError, AlgebraError, ValueError)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _VALIDATION as exc:
        sys.stderr.write(f"immcalc {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
