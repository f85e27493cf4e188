"""Deterministic text rendering for scan rows and scalar reports.

Reals are printed with 17 significant digits ('%.17g'), enough to
round-trip any binary64 value, so identical inputs always render to
byte-identical output.
"""

from __future__ import annotations

import json
from typing import Mapping

from .inequality_lab import ScanRow

SCAN_CSV_HEADER = "a,b,regions,claim,holds,worst_r,worst_margin,n_samples"


def fmt_real(x: float) -> str:
    return "%.17g" % float(x)


def scan_row_dict(row: ScanRow) -> dict:
    rep = row.report
    return {
        "a": row.a,
        "b": row.b,
        "regions": list(rep.region.labels()),
        "claim": rep.claim_id,
        "holds": rep.holds,
        "worst_r": rep.worst_r,
        "worst_margin": rep.worst_margin,
        "n_samples": rep.n_samples,
        "both_signs": rep.both_signs,
        "region_consistent": row.region_consistent,
    }


def scan_obj_csv(obj: Mapping) -> str:
    return ",".join([
        fmt_real(obj["a"]),
        fmt_real(obj["b"]),
        ";".join(obj["regions"]),
        str(obj["claim"]),
        "true" if obj["holds"] else "false",
        fmt_real(obj["worst_r"]),
        fmt_real(obj["worst_margin"]),
        str(obj["n_samples"]),
    ])


def scan_obj_json(obj: Mapping) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)
