"""Fixed-format MPS export for :class:`hppbid.lp.LinearProgram`.

The MPS standard has no portable maximization marker, so the header comments
record that the OBJ row holds maximization coefficients and that minimizing
solvers must negate it. Written for cross-checking training problems with
external solvers.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .lp import EQ, GE, LE, LinearProgram

# fixed-format field start columns (0-based) and widths
_FIELDS = ((1, 2), (4, 8), (14, 8), (24, 12), (39, 8), (49, 12))


def _line(*fields: str) -> str:
    out = []
    pos = 0
    for (start, width), text in zip(_FIELDS, fields):
        if text == "":
            continue
        if len(text) > width:
            raise ValueError(f"field {text!r} exceeds width {width}")
        out.append(" " * (start - pos))
        out.append(text)
        pos = start + len(text)
    return "".join(out)


def _num(v: float) -> str:
    s = f"{v:.10G}"
    if len(s) > 12:
        s = f"{v:.5E}"
    return s


def _var_name(j: int) -> str:
    return f"X{j + 1:07d}"


def _row_name(i: int) -> str:
    return f"C{i + 1:07d}"


def write_mps(lp: LinearProgram, path: str | Path, name: str | None = None) -> None:
    path = Path(path)
    with path.open("w") as fh:
        _write(lp, fh, name or lp.name)


def _write(lp: LinearProgram, fh, name: str) -> None:
    c, lb, ub, rows, cols, vals, senses, rhs = lp.arrays()

    fh.write("* Objective sense: MAXIMIZE.\n")
    fh.write("* The OBJ row holds the maximization coefficients as-is;\n")
    fh.write("* solvers that minimize by default must flip the sign of OBJ.\n")
    fh.write(f"NAME{' ' * 10}{name[:8].upper()}\n")

    fh.write("ROWS\n")
    fh.write(_line("N", "OBJ") + "\n")
    sense_tag = {LE: "L", GE: "G", EQ: "E"}
    for i in range(lp.n_rows):
        fh.write(_line(sense_tag[int(senses[i])], _row_name(i)) + "\n")

    fh.write("COLUMNS\n")
    # column-major traversal: objective entry first, then rows in index order
    order = np.lexsort((rows, cols))
    rows_s, cols_s, vals_s = rows[order], cols[order], vals[order]
    ptr = 0
    nnz = rows_s.size
    for j in range(lp.n_vars):
        entries: list[tuple[str, float]] = []
        if c[j] != 0.0:
            entries.append(("OBJ", float(c[j])))
        acc: dict[int, float] = {}
        while ptr < nnz and cols_s[ptr] == j:
            acc[int(rows_s[ptr])] = acc.get(int(rows_s[ptr]), 0.0) + float(vals_s[ptr])
            ptr += 1
        entries.extend((_row_name(i), v) for i, v in sorted(acc.items()) if v != 0.0)
        for a in range(0, len(entries), 2):
            pair = entries[a : a + 2]
            fields = ["", _var_name(j)]
            for rname, v in pair:
                fields.extend([rname, _num(v)])
            fh.write(_line(*fields) + "\n")

    fh.write("RHS\n")
    nz = [i for i in range(lp.n_rows) if rhs[i] != 0.0]
    for a in range(0, len(nz), 2):
        fields = ["", "RHS"]
        for i in nz[a : a + 2]:
            fields.extend([_row_name(i), _num(float(rhs[i]))])
        fh.write(_line(*fields) + "\n")

    fh.write("BOUNDS\n")
    for j in range(lp.n_vars):
        lo, hi = float(lb[j]), float(ub[j])
        vname = _var_name(j)
        if lo == 0.0 and np.isinf(hi):
            continue
        if np.isneginf(lo) and np.isinf(hi):
            fh.write(_line("FR", "BND", vname) + "\n")
            continue
        if np.isneginf(lo):
            fh.write(_line("MI", "BND", vname) + "\n")
        elif lo != 0.0:
            fh.write(_line("LO", "BND", vname, _num(lo)) + "\n")
        if not np.isinf(hi):
            fh.write(_line("UP", "BND", vname, _num(hi)) + "\n")

    fh.write("ENDATA\n")
