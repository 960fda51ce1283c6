"""Brute-force feasibility oracle for small equality systems.

Independent of the simplex implementation: enumerates every column subset,
solves the square-ish subsystem by exact Gaussian elimination, and accepts
when some basic solution is nonnegative.  A system {Ax = b, x >= 0} is
feasible iff it has a basic feasible solution (the region is pointed), so
this decides feasibility exactly.  Exponential in the variable count; only
use it on systems with a handful of variables.
"""

from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from semistoch import LinearSystem


def _solve_unique(rows: List[List[Fraction]], rhs: List[Fraction]) -> Tuple[str, Optional[List[Fraction]]]:
    """Solve rows*x = rhs.  Returns (status, x) with status one of
    'ok' (unique solution), 'dependent' (columns not independent),
    'inconsistent' (no solution)."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    pivots = []
    ri = 0
    for col in range(n):
        piv = next((i for i in range(ri, m) if aug[i][col] != 0), None)
        if piv is None:
            return "dependent", None
        aug[ri], aug[piv] = aug[piv], aug[ri]
        pv = aug[ri][col]
        aug[ri] = [v / pv for v in aug[ri]]
        for i in range(m):
            if i != ri and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * p for a, p in zip(aug[i], aug[ri])]
        pivots.append(col)
        ri += 1
    if len(pivots) < n:
        return "dependent", None
    for i in range(ri, m):
        if aug[i][n] != 0:
            return "inconsistent", None
    x = [Fraction(0)] * n
    for r_i, c in enumerate(pivots):
        x[c] = aug[r_i][n]
    return "ok", x


def brute_force_feasible(system: LinearSystem) -> bool:
    names = list(system.variables)
    n = len(names)
    rows = []
    rhs = []
    for coeffs, b in system.equalities:
        rows.append([coeffs.get(name, Fraction(0)) for name in names])
        rhs.append(b)
    m = len(rows)
    if m == 0:
        return True
    for size in range(0, min(n, m) + 1):
        for sub in combinations(range(n), size):
            sub_rows = [[row[j] for j in sub] for row in rows]
            status, x = _solve_unique(sub_rows, rhs)
            if status == "ok" and all(v >= 0 for v in x):
                return True
    return False
