"""Two-phase revised simplex for bounded-variable LPs in computational form.

Solves   min c'x   s.t.   A x = b,   lb <= x <= ub   (bounds may be infinite).

The implementation keeps an explicit dense basis inverse with product-form
updates and periodic refactorization. Pricing is Dantzig (most negative
reduced cost); after a run of degenerate pivots it falls back to Bland's rule
permanently, which guarantees termination. Intended for problems up to a few
hundred rows; larger models should use the HiGHS back-end in :mod:`hppbid.lp`.
"""

from __future__ import annotations

import numpy as np

from .lp import Infeasible, IterationLimit, SolverError, Unbounded

_AT_LB, _AT_UB, _BASIC, _FREE = 0, 1, 2, 3

_REFACTOR_EVERY = 64
_DEGENERATE_RUN = 60
_PIVOT_TOL = 1e-11


class RevisedSimplex:
    def __init__(
        self,
        a: np.ndarray,
        b: np.ndarray,
        c: np.ndarray,
        lb: np.ndarray,
        ub: np.ndarray,
        tol: float = 1e-9,
        max_iter: int | None = None,
    ):
        self.a = np.asarray(a, dtype=float)
        self.b = np.asarray(b, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.lb = np.asarray(lb, dtype=float)
        self.ub = np.asarray(ub, dtype=float)
        self.m, self.n = self.a.shape
        if np.any(self.lb > self.ub):
            raise Infeasible("variable with lb > ub")
        self.tol = tol
        self.max_iter = max_iter if max_iter is not None else 500 + 50 * (self.m + self.n)
        self.iterations = 0

    # -- public ------------------------------------------------------------

    def solve(self) -> tuple[np.ndarray, float, int]:
        """Return (x, objective, iterations) or raise a solver error."""
        m, n = self.m, self.n
        x0 = np.where(
            np.isfinite(self.lb), self.lb, np.where(np.isfinite(self.ub), self.ub, 0.0)
        )
        stat0 = np.where(
            np.isfinite(self.lb),
            _AT_LB,
            np.where(np.isfinite(self.ub), _AT_UB, _FREE),
        )

        # phase 1: signed artificial columns make the start basis the identity
        resid = self.b - self.a @ x0
        sign = np.where(resid >= 0.0, 1.0, -1.0)
        a1 = np.hstack([self.a, np.diag(sign)]) if m else np.hstack([self.a, np.zeros((0, 0))])
        lb1 = np.concatenate([self.lb, np.zeros(m)])
        ub1 = np.concatenate([self.ub, np.full(m, np.inf)])
        c1 = np.concatenate([np.zeros(n), np.ones(m)])
        x = np.concatenate([x0, np.abs(resid)])
        stat = np.concatenate([stat0, np.full(m, _BASIC, dtype=stat0.dtype)])
        basis = np.arange(n, n + m)
        binv = np.diag(sign) if m else np.zeros((0, 0))

        barred = np.zeros(n + m, dtype=bool)
        obj1 = self._iterate(a1, c1, lb1, ub1, x, stat, basis, binv, barred, phase=1)
        feas_tol = max(self.tol * 100, 1e-8) * (1.0 + float(np.abs(self.b).sum()))
        if obj1 > feas_tol:
            raise Infeasible(f"phase-1 objective {obj1:.3e} above tolerance {feas_tol:.3e}")

        self._drive_out_artificials(a1, lb1, ub1, x, stat, basis, binv)

        barred[n:] = True  # artificials may never re-enter
        c2 = np.concatenate([self.c, np.zeros(m)])
        self._iterate(a1, c2, lb1, ub1, x, stat, basis, binv, barred, phase=2)
        xs = x[:n]
        return xs, float(self.c @ xs), self.iterations

    # -- internals -----------------------------------------------------------

    def _drive_out_artificials(self, a, lb, ub, x, stat, basis, binv):
        """Pivot zero-valued artificials out of the basis; lock redundant rows."""
        n = self.n
        for r in range(self.m):
            if basis[r] < n:
                continue
            row = binv[r] @ a[:, :n]
            candidates = np.flatnonzero((np.abs(row) > 1e-9) & (stat[:n] != _BASIC))
            if candidates.size:
                j = int(candidates[0])
                w = binv @ a[:, j]
                art = int(basis[r])
                stat[art] = _AT_LB
                x[art] = 0.0
                self._pivot_update(a, x, stat, basis, binv, r, j, w, x[j])
            else:
                # structurally redundant row: keep the artificial basic at 0
                lb[basis[r]] = 0.0
                ub[basis[r]] = 0.0

    def _iterate(self, a, c, lb, ub, x, stat, basis, binv, barred, phase) -> float:
        tol = self.tol
        bland = False
        degen_run = 0
        pivots_since_refactor = 0

        while True:
            if self.iterations >= self.max_iter:
                raise IterationLimit(f"no optimum within {self.max_iter} pivots")
            self.iterations += 1

            y = c[basis] @ binv
            d = c - y @ a
            d[basis] = 0.0

            nonbasic = stat != _BASIC
            can_up = nonbasic & ~barred & ((stat == _AT_LB) | (stat == _FREE)) & (d < -tol)
            can_dn = nonbasic & ~barred & ((stat == _AT_UB) | (stat == _FREE)) & (d > tol)
            eligible = can_up | can_dn
            if not eligible.any():
                return float(c @ x)

            if bland:
                j = int(np.flatnonzero(eligible)[0])
            else:
                scores = np.where(eligible, np.abs(d), -np.inf)
                j = int(np.argmax(scores))
            sigma = 1.0 if can_up[j] else -1.0

            w = binv @ a[:, j]
            dvec = sigma * w
            xb = x[basis]

            # ratio test: basic variables hitting a bound, or the entering
            # variable flipping to its opposite bound
            theta_rows = np.full(self.m, np.inf)
            pos = dvec > _PIVOT_TOL
            neg = dvec < -_PIVOT_TOL
            lo_b = lb[basis]
            up_b = ub[basis]
            with np.errstate(invalid="ignore"):
                theta_rows[pos] = (xb[pos] - lo_b[pos]) / dvec[pos]
                theta_rows[neg] = (xb[neg] - up_b[neg]) / dvec[neg]
            theta_rows[~np.isfinite(theta_rows)] = np.inf
            theta_rows = np.maximum(theta_rows, 0.0)

            flip = ub[j] - lb[j]
            theta_row_min = float(theta_rows.min()) if self.m else np.inf
            theta = min(theta_row_min, flip)

            if not np.isfinite(theta):
                if phase == 1:
                    raise SolverError("phase-1 subproblem unbounded")
                raise Unbounded("improving ray with no blocking bound")

            if flip <= theta_row_min:
                # bound flip, no basis change
                x[basis] = xb - dvec * theta
                x[j] = ub[j] if stat[j] == _AT_LB else lb[j]
                stat[j] = _AT_UB if stat[j] == _AT_LB else _AT_LB
            else:
                near = theta_rows <= theta_row_min + 1e-12
                rows = np.flatnonzero(near)
                if bland:
                    r = int(rows[np.argmin(basis[rows])])
                else:
                    r = int(rows[0])
                x[basis] = xb - dvec * theta
                x[j] = x[j] + sigma * theta
                leaving = int(basis[r])
                x[leaving] = lo_b[r] if dvec[r] > 0 else up_b[r]
                stat[leaving] = _AT_LB if dvec[r] > 0 else _AT_UB
                self._pivot_update(a, x, stat, basis, binv, r, j, w, x[j])
                pivots_since_refactor += 1
                if pivots_since_refactor >= _REFACTOR_EVERY:
                    self._refactor(a, x, stat, basis, binv)
                    pivots_since_refactor = 0

            if theta <= _PIVOT_TOL:
                degen_run += 1
                if degen_run >= _DEGENERATE_RUN:
                    bland = True
            else:
                degen_run = 0

    def _pivot_update(self, a, x, stat, basis, binv, r, j, w, xj_value):
        wr = w[r]
        if abs(wr) < _PIVOT_TOL:
            raise SolverError("numerically singular pivot")
        basis[r] = j
        stat[j] = _BASIC
        x[j] = xj_value
        binv[r, :] /= wr
        others = np.arange(self.m) != r
        binv[others, :] -= np.outer(w[others], binv[r, :])

    def _refactor(self, a, x, stat, basis, binv):
        """Recompute the inverse and basic values to curb numerical drift."""
        try:
            binv[:, :] = np.linalg.inv(a[:, basis])
        except np.linalg.LinAlgError as exc:
            raise SolverError("basis matrix singular during refactorization") from exc
        nonbasic = np.flatnonzero(stat != _BASIC)
        rhs = self.b - a[:, nonbasic] @ x[nonbasic]
        x[basis] = binv @ rhs
