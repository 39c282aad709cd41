"""TSV, JSON and SVG renderings of spectral sequence pages."""
from __future__ import annotations

import json
import os
import tempfile
from typing import Dict, List, Optional
from xml.sax.saxutils import escape

from .specseq import SSRun, SpectralPage, module_generator_counts

CELL = 40
MARGIN = 50


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def pages_tsv(run: SSRun) -> str:
    lines = ["r\tp\tq\tdim"]
    for page in _distinct_pages(run):
        for (p, q), v in sorted(page.dims().items()):
            if p + q <= page.safe_total:
                lines.append(f"{page.r}\t{p}\t{q}\t{v}")
    return "\n".join(lines) + "\n"


def _distinct_pages(run: SSRun) -> List[SpectralPage]:
    """One entry per page index (the version carrying d_r when there is one)."""
    seen: Dict[int, SpectralPage] = {}
    for page in run.pages:
        if page.r not in seen or page.D is not None:
            seen[page.r] = page
    return [seen[r] for r in sorted(seen)]


def run_json(run: SSRun) -> dict:
    pages = []
    for page in _distinct_pages(run):
        pages.append({
            "r": page.r,
            "safe_total": page.safe_total,
            "entries": [[p, q, v] for (p, q), v in sorted(page.dims().items()) if p + q <= page.safe_total],
        })
    rules = {str(r): {src: {k: str(c) for k, c in tgt.items()} for src, tgt in rule.targets.items()}
             for r, rule in sorted(run.rules.items())}
    return {"n": run.n, "T": run.T, "T_safe": run.T_safe, "rules": rules, "pages": pages,
            "result": run.result.to_json()}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def e2_svg(run: SSRun, max_total: Optional[int] = None) -> str:
    """Chart of E_2: one dot per bidegree holding free Q[kappa]-module generators, arrows for d_r on generators."""
    e2 = run.pages[0]
    T = e2.T if max_total is None else min(max_total, e2.T)
    kappa_degs = [g.p for g in e2.generators if g.q == 0]
    counts = module_generator_counts(e2.dims(), kappa_degs, e2.T)
    counts = {bd: v for bd, v in counts.items() if sum(bd) <= T and v > 0}
    pmax = max([p for p, _ in counts] + [T // 2, 1])
    qmax = max([q for _, q in counts] + [1])
    width = 2 * MARGIN + (pmax + 1) * CELL
    height = 2 * MARGIN + (qmax + 1) * CELL

    def xy(p: int, q: int):
        return MARGIN + p * CELL + CELL // 2, height - MARGIN - q * CELL - CELL // 2

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{escape(f"E_2 chart, n = {run.n}, total degree <= {T}")}</title>',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto">'
        '<path d="M0,0 L8,4 L0,8 z" fill="#b22222"/></marker></defs>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    x0, y0 = MARGIN, height - MARGIN
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{width - MARGIN // 2}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN // 2}" stroke="black"/>')
    for p in range(pmax + 1):
        x, _ = xy(p, 0)
        out.append(f'<text x="{x}" y="{y0 + 18}" font-size="11" text-anchor="middle">{p}</text>')
    for q in range(qmax + 1):
        _, y = xy(0, q)
        out.append(f'<text x="{x0 - 10}" y="{y + 4}" font-size="11" text-anchor="end">{q}</text>')
    out.append(f'<text x="{width - MARGIN // 2}" y="{y0 + 34}" font-size="12" text-anchor="end">p</text>')
    out.append(f'<text x="{MARGIN // 2 - 10}" y="{MARGIN // 2}" font-size="12">q</text>')
    for (p, q), v in sorted(counts.items()):
        x, y = xy(p, q)
        r = min(4 + 2 * (v - 1), CELL // 2 - 4)
        out.append(f'<circle cx="{x}" cy="{y}" r="{r}" fill="black"><title>{escape(f"({p},{q}): {v}")}</title></circle>')
        if v > 1:
            out.append(f'<text x="{x + r + 2}" y="{y - r}" font-size="9">{v}</text>')
    gens = {g.name: g for g in e2.generators}
    for r, rule in sorted(run.rules.items()):
        for src, tgt in sorted(rule.targets.items()):
            g = gens[src]
            if g.total > T:
                continue
            (x1, y1), (x2, y2) = xy(g.p, g.q), xy(g.p + r, g.q - r + 1)
            label = f"d_{r}({src}) = {', '.join(tgt)}"
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#b22222" stroke-width="1.2" '
                       f'marker-end="url(#arrow)"><title>{escape(label)}</title></line>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
