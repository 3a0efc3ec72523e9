"""Shared fixtures: golden systems, random generators, independent oracles.

The oracles here deliberately avoid the library's own elimination code:
ranks come from a plain forward Gaussian elimination, determinants from
cofactor expansion, root locations from numpy's companion-matrix solver.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from funcobs.exactlin import QMatrix
from funcobs.polymat import Poly, PolyMatrix
from funcobs.system import SystemSextuple


# -- golden systems -----------------------------------------------------------

def feedthrough_gap() -> SystemSextuple:
    """Scalar stable plant; the target output alone carries feedthrough."""
    return SystemSextuple.from_lists(A=[[-1]], B=[[1, -1]], C=[[1]],
                                     D=[[0, 0]], E=[[1]], F=[[1, 1]])


def integrator_chain() -> SystemSextuple:
    """Two-state chain with the input as estimation target."""
    return SystemSextuple.from_lists(A=[[0, 0], [1, 0]], B=[[1], [0]],
                                     C=[[1, 1]], D=[[0]], E=[[0, 0]], F=[[1]])


def stable_pair() -> SystemSextuple:
    """Uncontrolled stable pair, full state measured, first state targeted."""
    return SystemSextuple.from_lists(A=[[-1, 0], [0, -1]], C=[[1, 0], [0, 1]],
                                     E=[[1, 0]], m=0)


def measured_input() -> SystemSextuple:
    """Double integrator whose measurement is the input itself."""
    return SystemSextuple.from_lists(A=[[0, 1], [0, 0]], B=[[1], [1]],
                                     C=[[0, 0]], D=[[1]], E=[[1, -1]], F=[[0]])


def unstable_chain() -> SystemSextuple:
    """Autonomous shift chain with an unstable tail mode."""
    return SystemSextuple.from_lists(A=[[0, 1, 0], [0, 0, 1], [0, 0, 1]],
                                     C=[[1, 0, 0]], E=[[0, 1, 0]], m=0)


GOLDEN = {
    "feedthrough_gap": feedthrough_gap,
    "integrator_chain": integrator_chain,
    "stable_pair": stable_pair,
    "measured_input": measured_input,
    "unstable_chain": unstable_chain,
}


# -- random generators ----------------------------------------------------------

def random_system(rng: random.Random, max_nm: int = 6, max_p: int = 2,
                  max_q: int = 2, lo: int = -2, hi: int = 2) -> SystemSextuple:
    n = rng.randint(0, 4)
    m = rng.randint(0, min(3, max_nm - n))
    p = rng.randint(0, max_p)
    q = rng.randint(0, max_q)

    def block(r, c):
        return [[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)]

    return SystemSextuple.from_lists(
        A=block(n, n),
        B=block(n, m) if m else None,
        C=block(p, n),
        D=block(p, m) if m else None,
        E=block(q, n),
        F=block(q, m) if m else None,
        m=m)


def random_qmatrix(rng: random.Random, rows: int, cols: int,
                   lo: int = -5, hi: int = 5) -> QMatrix:
    return QMatrix.from_rows([[Fraction(rng.randint(lo, hi),
                                        rng.choice([1, 1, 2, 3]))
                               for _ in range(cols)] for _ in range(rows)],
                             cols=cols)


def random_poly(rng: random.Random, max_degree: int = 3,
                lo: int = -3, hi: int = 3) -> Poly:
    deg = rng.randint(0, max_degree)
    return Poly([rng.randint(lo, hi) for _ in range(deg + 1)])


def random_polymatrix(rng: random.Random, rows: int, cols: int,
                      max_degree: int = 2) -> PolyMatrix:
    return PolyMatrix.from_rows(
        [[random_poly(rng, max_degree) for _ in range(cols)] for _ in range(rows)],
        cols=cols)


# -- independent oracles ----------------------------------------------------------

def ref_rank(rows: list[list[Fraction]]) -> int:
    """Forward Gaussian elimination, structurally unlike the library RREF."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    r0 = 0
    for c in range(ncols):
        if r0 == nrows:
            break
        piv = next((i for i in range(r0, nrows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r0], mat[piv] = mat[piv], mat[r0]
        for i in range(r0 + 1, nrows):
            if mat[i][c] != 0:
                f = mat[i][c] / mat[r0][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r0])]
        r0 += 1
    return r0


def ref_rank_q(M: QMatrix) -> int:
    return ref_rank(M.to_lists())


def cofactor_det(M: PolyMatrix) -> Poly:
    """Recursive cofactor expansion; only for small matrices."""
    n = M.rows
    if n != M.cols:
        raise ValueError("square only")
    if n == 0:
        return Poly([1])
    if n == 1:
        return M[0, 0]
    acc = Poly()
    for j in range(n):
        entry = M[0, j]
        if entry.is_zero():
            continue
        minor = PolyMatrix.from_rows(
            [[M[i, k] for k in range(n) if k != j] for i in range(1, n)],
            cols=n - 1)
        term = entry * cofactor_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def numeric_roots(p: Poly) -> np.ndarray:
    return np.roots([float(c) for c in reversed(p.coeffs)])


def pbh_unobservable(sys: SystemSextuple, lam: Fraction) -> bool:
    """Rank test of [lam I - A; C] below n at a rational candidate."""
    n = sys.n
    rows = [[(lam if i == j else Fraction(0)) - sys.A[i, j] for j in range(n)]
            for i in range(n)]
    rows += [[sys.C[i, j] for j in range(n)] for i in range(sys.p)]
    return ref_rank(rows) < n
