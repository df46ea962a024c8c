"""Scale sweeps and classification reports."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor

from .dynamics import (
    DynSystem,
    chain_classes,
    distality_margin,
    equicontinuity_modulus,
    is_minimal,
)
from .engine import DEFAULT_STATE_CAP, shadowable_points
from .errors import StateCapExceeded
from .metric import deg_points
from .sysfile import fmt

CSV_COLUMNS = ["eps", "delta", "n_shadowable", "potp", "n_chain_classes", "n_deg_points", "status"]


def sweep_cell(sys: DynSystem, eps, delta, cap: int = DEFAULT_STATE_CAP) -> dict:
    row = {"eps": fmt(eps), "delta": fmt(delta)}
    try:
        sh = shadowable_points(sys, eps, delta, cap)
    except StateCapExceeded as exc:
        row.update(n_shadowable="", potp="", n_chain_classes="", n_deg_points="",
                   status="state_cap_exceeded", shadowable=None, states=exc.reached)
        return row
    classes, _ = chain_classes(sys, delta)
    row.update(
        n_shadowable=len(sh),
        potp=len(sh) == sys.n,
        n_chain_classes=len(classes),
        n_deg_points=len(deg_points(sys.space, eps)),
        status="ok",
        shadowable=[sys.space.labels[i] for i in sorted(sh)],
    )
    return row


def _cell(args):
    return sweep_cell(*args)


def sweep(sys: DynSystem, eps_grid=None, delta_grid=None, cap: int = DEFAULT_STATE_CAP, workers: int = 1) -> list:
    """Evaluate every (eps, delta) cell; rows come out eps-major, both axes ascending."""
    eps_grid = sorted(set(eps_grid if eps_grid is not None else sys.space.values))
    delta_grid = sorted(set(delta_grid if delta_grid is not None else sys.space.values))
    jobs = [(sys, e, d, cap) for e in eps_grid for d in delta_grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_cell, jobs, chunksize=4))
    return [_cell(j) for j in jobs]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([str(r[c]).lower() if isinstance(r[c], bool) else r[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def rows_to_json(sys: DynSystem, rows) -> str:
    doc = {"system": sys.name, "n": sys.n, "rows": rows}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def classify(sys: DynSystem) -> dict:
    labels = sys.space.labels
    out = {"system": sys.name, "n": sys.n, "is_minimal": is_minimal(sys), "isometry": sys.is_isometry}
    if sys.n >= 2:
        margin, (a, b) = distality_margin(sys)
        out["distality_margin"] = fmt(margin)
        out["distality_witness"] = [labels[a], labels[b]]
    else:
        out["distality_margin"] = None
        out["distality_witness"] = None
    out["equicontinuity_curve"] = [
        {"alpha": fmt(a), "beta": fmt(equicontinuity_modulus(sys, a))} for a in sys.space.values
    ]
    return out
