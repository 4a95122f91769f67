"""Sparse container for maximization LPs and the solver front-end.

Small problems (per-day perfect-foresight dispatch, unit-test instances) are
solved by the in-package revised simplex; large training problems are routed
to HiGHS through scipy behind the same interface. Both back-ends are
deterministic for a fixed input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LE, EQ, GE = -1, 0, 1

#: Size cutoff for the in-package simplex under method="auto".
SIMPLEX_MAX_ROWS = 320
SIMPLEX_MAX_VARS = 700


class SolverError(RuntimeError):
    pass


class Infeasible(SolverError):
    pass


class Unbounded(SolverError):
    pass


class IterationLimit(SolverError):
    pass


@dataclass
class Solution:
    objective: float
    x: np.ndarray
    status: str  # always "optimal"; failures raise
    iterations: int


class LinearProgram:
    """maximize c'x  subject to  row constraints and variable bounds.

    Rows are stored as COO triplets appended in blocks, which keeps assembly
    of the large training models vectorized.
    """

    def __init__(self, name: str = "lp"):
        self.name = name
        self.n_vars = 0
        self.n_rows = 0
        self._lb: list[np.ndarray] = []
        self._ub: list[np.ndarray] = []
        self._obj: list[np.ndarray] = []
        self._rows: list[np.ndarray] = []
        self._cols: list[np.ndarray] = []
        self._vals: list[np.ndarray] = []
        self._senses: list[np.ndarray] = []
        self._rhs: list[np.ndarray] = []

    def add_vars(self, count: int, lb=0.0, ub=np.inf, obj=0.0) -> np.ndarray:
        """Append ``count`` variables; lb/ub/obj may be scalars or arrays."""
        start = self.n_vars
        self.n_vars += count
        self._lb.append(np.broadcast_to(np.asarray(lb, dtype=float), (count,)).copy())
        self._ub.append(np.broadcast_to(np.asarray(ub, dtype=float), (count,)).copy())
        self._obj.append(np.broadcast_to(np.asarray(obj, dtype=float), (count,)).copy())
        return np.arange(start, start + count)

    def add_rows(self, sense: int, rhs, rows, cols, vals) -> None:
        """Append a block of constraints.

        ``rows`` holds block-local row ids in [0, len(rhs)), parallel with
        ``cols``/``vals``.
        """
        rhs = np.atleast_1d(np.asarray(rhs, dtype=float))
        rows = np.asarray(rows, dtype=np.int64)
        self._rows.append(rows + self.n_rows)
        self._cols.append(np.asarray(cols, dtype=np.int64))
        self._vals.append(np.asarray(vals, dtype=float))
        self._senses.append(np.full(rhs.size, sense, dtype=np.int8))
        self._rhs.append(rhs)
        self.n_rows += rhs.size

    def add_row(self, cols, vals, sense: int, rhs: float) -> None:
        cols = np.asarray(cols, dtype=np.int64)
        self.add_rows(sense, [rhs], np.zeros(cols.size, dtype=np.int64), cols, vals)

    def arrays(self):
        """(c, lb, ub, rows, cols, vals, senses, rhs) as flat arrays."""
        cat = lambda chunks, dt: (
            np.concatenate(chunks) if chunks else np.empty(0, dtype=dt)
        )
        return (
            cat(self._obj, float),
            cat(self._lb, float),
            cat(self._ub, float),
            cat(self._rows, np.int64),
            cat(self._cols, np.int64),
            cat(self._vals, float),
            cat(self._senses, np.int8),
            cat(self._rhs, float),
        )

    def to_dense(self):
        """(c, A, senses, rhs, lb, ub) with a dense constraint matrix."""
        c, lb, ub, rows, cols, vals, senses, rhs = self.arrays()
        a = np.zeros((self.n_rows, self.n_vars))
        # += accumulates duplicate triplets, matching sparse semantics
        np.add.at(a, (rows, cols), vals)
        return c, a, senses, rhs, lb, ub


def _solve_highs(lp: LinearProgram, tol: float) -> Solution:
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix, diags

    c, lb, ub, rows, cols, vals, senses, rhs = lp.arrays()
    a = csr_matrix((vals, (rows, cols)), shape=(lp.n_rows, lp.n_vars))
    # duplicate triplets sum implicitly in csr construction
    ineq = senses != EQ
    eq = senses == EQ
    a_ub = b_ub = a_eq = b_eq = None
    if ineq.any():
        sign = np.where(senses[ineq] == LE, 1.0, -1.0)
        a_ub = diags(sign) @ a[ineq]
        b_ub = sign * rhs[ineq]
    if eq.any():
        a_eq = a[eq]
        b_eq = rhs[eq]
    res = linprog(
        -c,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=np.column_stack([lb, ub]),
        method="highs",
        options={
            "primal_feasibility_tolerance": max(tol, 1e-10),
            "dual_feasibility_tolerance": max(tol, 1e-10),
        },
    )
    if res.status == 2:
        raise Infeasible(f"{lp.name}: {res.message}")
    if res.status == 3:
        raise Unbounded(f"{lp.name}: {res.message}")
    if res.status == 1:
        raise IterationLimit(f"{lp.name}: {res.message}")
    if res.status != 0:
        raise SolverError(f"{lp.name}: {res.message}")
    x = np.asarray(res.x, dtype=float)
    return Solution(objective=float(c @ x), x=x, status="optimal", iterations=int(res.nit))


def _solve_simplex(lp: LinearProgram, tol: float, max_iter: int | None) -> Solution:
    from .simplex import RevisedSimplex

    c, a, senses, rhs, lb, ub = lp.to_dense()
    m, n = a.shape
    # slack columns turn every row into an equality: <= gets +s, >= gets -s, s >= 0
    n_slack = int(np.count_nonzero(senses != EQ))
    a_full = np.hstack([a, np.zeros((m, n_slack))])
    slack_lb = np.zeros(n_slack)
    slack_ub = np.full(n_slack, np.inf)
    col = n
    for i in range(m):
        if senses[i] == EQ:
            continue
        a_full[i, col] = 1.0 if senses[i] == LE else -1.0
        col += 1
    c_full = np.concatenate([-c, np.zeros(n_slack)])  # simplex minimizes
    lb_full = np.concatenate([lb, slack_lb])
    ub_full = np.concatenate([ub, slack_ub])
    solver = RevisedSimplex(a_full, rhs, c_full, lb_full, ub_full, tol=tol, max_iter=max_iter)
    x_full, _, iterations = solver.solve()
    x = x_full[:n]
    return Solution(objective=float(c @ x), x=x, status="optimal", iterations=iterations)


def solve_lp(
    lp: LinearProgram,
    tol: float = 1e-9,
    method: str = "auto",
    max_iter: int | None = None,
) -> Solution:
    """Solve a maximization LP.

    method "auto" picks the in-package revised simplex for small instances and
    HiGHS otherwise; "simplex" and "highs" force a back-end.

    Raises Infeasible, Unbounded, or IterationLimit.
    """
    if method == "auto":
        small = lp.n_rows <= SIMPLEX_MAX_ROWS and lp.n_vars <= SIMPLEX_MAX_VARS
        method = "simplex" if small else "highs"
    if method == "simplex":
        return _solve_simplex(lp, tol, max_iter)
    if method == "highs":
        return _solve_highs(lp, tol)
    raise ValueError(f"unknown method {method!r}")
