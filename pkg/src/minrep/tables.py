"""CSV reproductions of the classification table, the Bernstein root table
and the Meijer parameter table."""
from __future__ import annotations

import csv
import io
from pathlib import Path

from .analytic import meijer_params, remaining_roots
from .bernstein import bernstein
from .catalog import T_IDS, catalog, reference_meijer, reference_roots, resolve
from .sl2rep import derivative_span

CATALOG_COLUMNS = ["case", "family", "V", "Q", "k", "g", "g_R", "dim_k", "dim_g", "n", "ranks", "mult",
                   "eta", "property_t", "dim_W", "dim_W_expected", "note"]
ROOT_COLUMNS = ["case", "eta", "alpha1", "alpha2", "alpha3", "eta_ref", "alpha1_ref", "alpha2_ref",
                "alpha3_ref", "roots_match", "leading", "leading_ref", "leading_match", "method"]
MEIJER_COLUMNS = ["case", "alpha", "beta1", "beta2", "beta3", "alpha_ref", "beta1_ref", "beta2_ref",
                  "beta3_ref", "match"]


def _csv(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k)) for k in columns})
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "+".join(str(x) for x in v)
    return str(v)


def catalog_rows() -> list[dict]:
    rows = []
    for entry in catalog():
        r = entry.row()
        r["ranks"] = r.pop("ranks")
        r["dim_W_expected"] = entry.dim_g - entry.dim_k
        r["dim_W"] = len(derivative_span(entry.vq().Q)) if entry.computable else None
        rows.append(r)
    return rows


def root_rows() -> list[dict]:
    rows = []
    for cid in T_IDS:
        entry = resolve(cid)
        vq = entry.vq()
        ip, pf, agree = bernstein(vq)
        if not all(agree.values()):
            raise RuntimeError(f"Bernstein methods disagree on {cid}: {agree}")
        eta = vq.eta
        a2, a3 = remaining_roots(vq)
        ref = reference_roots(entry)
        computed = (1 - eta, a2, a3)
        rows.append({
            "case": cid,
            "eta": eta,
            "alpha1": computed[0],
            "alpha2": computed[1],
            "alpha3": computed[2],
            "eta_ref": ref["eta"],
            "alpha1_ref": ref["alpha"][0],
            "alpha2_ref": ref["alpha"][1],
            "alpha3_ref": ref["alpha"][2],
            "roots_match": eta == ref["eta"] and sorted(computed) == sorted(ref["alpha"]),
            "leading": ip.leading,
            "leading_ref": ref["A"],
            "leading_match": ip.leading == ref["A"],
            "method": ip.method,
        })
    return rows


def meijer_rows() -> list[dict]:
    rows = []
    for cid in T_IDS:
        entry = resolve(cid)
        P = meijer_params(entry.vq())
        ref = reference_meijer(entry)
        rows.append({
            "case": cid,
            "alpha": P.alpha_q,
            "beta1": P.beta_q[0],
            "beta2": P.beta_q[1],
            "beta3": P.beta_q[2],
            "alpha_ref": ref[0],
            "beta1_ref": ref[1],
            "beta2_ref": ref[2],
            "beta3_ref": ref[3],
            "match": (P.alpha_q, *P.beta_q) == tuple(ref),
        })
    return rows


TABLES = {
    "catalog.csv": (CATALOG_COLUMNS, catalog_rows),
    "roots.csv": (ROOT_COLUMNS, root_rows),
    "meijer.csv": (MEIJER_COLUMNS, meijer_rows),
}


def render_tables() -> dict[str, str]:
    return {name: _csv(cols, fn()) for name, (cols, fn) in TABLES.items()}


def write_tables(out: Path) -> dict[str, Path]:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    for name, text in render_tables().items():
        p = out / name
        p.write_text(text, encoding="utf-8", newline="")
        paths[name] = p
    return paths
