"""Verdict records and deterministic report writers (JSON / CSV / PGM)."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

PASS_REL = 1e-9
PASS_ABS = 1e-12


def decide_pass(lhs: float, rhs: float, log_lhs: float | None = None,
                log_rhs: float | None = None) -> bool:
    """lhs <= rhs (1 + 1e-9) + 1e-12, falling back to log-space when overflowed."""
    if math.isfinite(lhs) and math.isfinite(rhs):
        return lhs <= rhs * (1.0 + PASS_REL) + PASS_ABS
    if log_lhs is None or log_rhs is None:
        return lhs <= rhs
    if log_lhs == -math.inf:
        return True
    return log_lhs <= log_rhs + math.log1p(PASS_REL)


@dataclass
class VerdictRecord:
    """One inequality check: LHS, RHS, assembled constant, ratio, pass flag.

    `params` carries everything required to reproduce the check from the CLI;
    `rhs_norms` names the weighted norms entering the right-hand side.
    """

    case_id: str
    lhs: float
    rhs: float
    constant: float
    passed: bool
    params: dict = field(default_factory=dict)
    rhs_norms: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)
    conventions: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=lambda: {"rel": PASS_REL, "abs": PASS_ABS})
    log_lhs: float | None = None
    log_rhs: float | None = None
    note: str = ""

    @property
    def ratio(self) -> float:
        if self.rhs > 0 and math.isfinite(self.rhs):
            return self.lhs / self.rhs
        if self.log_lhs is not None and self.log_rhs is not None:
            if self.log_lhs == -math.inf:
                return 0.0
            return math.exp(min(self.log_lhs - self.log_rhs, 708.0))
        return 0.0 if self.lhs == 0 else math.inf

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "constant": _jsonable(self.constant),
            "ratio": _jsonable(self.ratio),
            "pass": self.passed,
            "params": _jsonable(self.params),
            "rhs_norms": _jsonable(self.rhs_norms),
            "grid": _jsonable(self.grid),
            "conventions": _jsonable(self.conventions),
            "tolerances": _jsonable(self.tolerances),
            "note": self.note,
        }


def grid_dict(g) -> dict:
    return {"x0": g.x0, "dx": g.dx, "M": g.M}


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_json(path: str, obj) -> None:
    text = dump_json(obj)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(c) for c in row])
    if path == "-":
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w") as fh:
            fh.write(buf.getvalue())


def _format_cell(c):
    if isinstance(c, float):
        return repr(c)
    return c


def write_pgm(path: str, values: np.ndarray) -> None:
    """8-bit binary PGM of |values|, linearly scaled to 0..255."""
    a = np.abs(np.asarray(values))
    peak = a.max()
    img = np.zeros(a.shape, dtype=np.uint8) if peak == 0 else \
        np.round(255.0 * a / peak).astype(np.uint8)
    _write_pgm_bytes(path, img)


def write_pgm_mask(path: str, mask: np.ndarray) -> None:
    _write_pgm_bytes(path, np.where(mask, 255, 0).astype(np.uint8))


def _write_pgm_bytes(path: str, img: np.ndarray) -> None:
    h, w = img.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(img.tobytes())


def write_field_csv(path: str, fld) -> None:
    """(x, xi, Re, Im) rows for a phase-space field."""
    xs = fld.xgrid.points()
    xis = fld.xigrid.points()
    rows = []
    for i, x in enumerate(xs):
        row_vals = fld.values[i]
        for k, xi in enumerate(xis):
            v = row_vals[k]
            rows.append([repr(float(x)), repr(float(xi)), repr(v.real), repr(v.imag)])
    write_csv(path, ["x", "xi", "re", "im"], rows)
