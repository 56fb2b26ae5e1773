"""Deterministic (n, k) sweeps rendered as CSV or JSON."""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .asympt import tau_star_asymptotic, tau_star_exact
from .bounds import lower_bound, ratio_bound, upper_bounds
from .errors import DomainError
from .roots import omega as _omega
from .tau import tau_closed_form, tau_direct

__all__ = ["COLUMNS", "SweepSpec", "compute_rows", "render", "format_float"]

COLUMNS = (
    "tau_direct",
    "tau_closed",
    "lower",
    "sd12",
    "combined14",
    "thm15",
    "cor11",
    "ratio_bound",
    "tau_star",
    "tau_star_asym",
)

AUTO_SPAN = 200
_UPPER_KEYS = {"sd12": "sd_12", "combined14": "combined_14", "thm15": "thm_15", "cor11": "cor11"}


@dataclass(frozen=True)
class SweepSpec:
    """Inclusive ``k`` range and ``n`` range; ``n_min``/``n_max`` of None mean
    ``k + 2`` and ``k + 200``."""

    k_min: int
    k_max: int
    n_min: int | None = None
    n_max: int | None = None
    columns: tuple[str, ...] = COLUMNS
    format: str = "csv"

    def __post_init__(self):
        if self.k_min < 1 or self.k_max < self.k_min:
            raise DomainError(f"empty or invalid k range {self.k_min}..{self.k_max}")
        unknown = set(self.columns) - set(COLUMNS)
        if unknown or not self.columns:
            raise DomainError(f"unknown columns: {sorted(unknown)}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format!r}")
        if not self.indices():
            raise DomainError("the sweep contains no index with n >= k + 2")

    def n_range(self, k: int) -> range:
        lo = k + 2 if self.n_min is None else max(self.n_min, k + 2)
        hi = k + AUTO_SPAN if self.n_max is None else self.n_max
        return range(lo, hi + 1)

    def indices(self) -> list[tuple[int, int]]:
        return [(n, k) for k in range(self.k_min, self.k_max + 1) for n in self.n_range(k)]


def _row(n: int, k: int, columns: tuple[str, ...]) -> tuple[int, int, tuple[float, ...]]:
    w = _omega(n, k).omega
    ub = None
    out = []
    for col in columns:
        if col == "tau_direct":
            v = tau_direct(n, k, w).value
        elif col == "tau_closed":
            v = tau_closed_form(n, k, w).value
        elif col == "lower":
            v = lower_bound(n, k)
        elif col in _UPPER_KEYS:
            if ub is None:
                ub = upper_bounds(n, k, w)
            v = ub[_UPPER_KEYS[col]]
        elif col == "ratio_bound":
            v = ratio_bound(n, k)
        elif col == "tau_star":
            v = tau_star_exact(k)
        else:
            v = tau_star_asymptotic(k)
        out.append(v)
    return n, k, tuple(out)


def _rows_for_k(args):
    k, ns, columns = args
    return [_row(n, k, columns) for n in ns]


def compute_rows(spec: SweepSpec, jobs: int = 1) -> list[tuple[int, int, tuple[float, ...]]]:
    """All rows ordered by ``k`` then ``n``, independent of ``jobs``."""
    tasks = [(k, list(spec.n_range(k)), spec.columns) for k in range(spec.k_min, spec.k_max + 1)]
    tasks = [t for t in tasks if t[1]]
    if jobs <= 1:
        chunks = [_rows_for_k(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_rows_for_k, tasks))
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows


def format_float(v: float) -> str:
    return format(v, ".17g")


def _json_value(v: float):
    if v != 0.0 and math.isfinite(v) and abs(math.log10(abs(v))) > 300:
        return {"value": repr(v)}
    return v


def render(spec: SweepSpec, rows) -> str:
    if spec.format == "csv":
        buf = io.StringIO()
        buf.write(",".join(("n", "k") + spec.columns) + "\n")
        for n, k, vals in rows:
            buf.write(",".join([str(n), str(k)] + [format_float(v) for v in vals]) + "\n")
        return buf.getvalue()
    records = []
    for n, k, vals in rows:
        rec = {"n": n, "k": k}
        rec.update({c: _json_value(v) for c, v in zip(spec.columns, vals)})
        records.append(rec)
    return json.dumps(records, indent=1) + "\n"
