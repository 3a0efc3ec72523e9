"""Univariate polynomials over Q, polynomial matrices, and Smith form.

The polynomial matrices of interest are the system pencils

    P(s)   = [ sI - A   -B ]        P_e(s) = [ P(s) ]
             [   C       D ]                 [ E  F ]

Normal rank is computed by fraction-free elimination, the Smith normal
form by gcd-driven elementary row/column operations with both unimodular
transformers tracked, and the invariant zeros are read off the invariant
polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import QMatrix, as_fraction
from .system import SystemSextuple


class Poly:
    """Polynomial with exact rational coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- basics -------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_value(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly([c * x for x in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(), self
        rem = list(self.coeffs)
        dlead = other.leading
        ddeg = other.degree
        qcoeffs = [Fraction(0)] * (self.degree - ddeg + 1)
        for k in range(self.degree - ddeg, -1, -1):
            c = rem[k + ddeg] / dlead
            if c != 0:
                qcoeffs[k] = c
                for i, dc in enumerate(other.coeffs):
                    rem[k + i] -= c * dc
        return Poly(qcoeffs), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading
        return self if lead == 1 else self.scale(Fraction(1) / lead)

    def evaluate(self, x):
        """Horner evaluation; works for Fraction and complex arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- comparisons / display -----------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "s") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else f"{mag}*"
                body = f"{head}{var}" if k == 1 else f"{head}{var}^{k}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms)


POLY_ZERO = Poly()
POLY_ONE = Poly([1])
POLY_S = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; errors when both arguments are zero."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        r = a % b
        a, b = b, (r.monic() if not r.is_zero() else r)
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return POLY_ZERO
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([as_fraction(x)])


class PolyMatrix:
    """Immutable dense matrix of polynomials."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: tuple[tuple[Poly, ...], ...]):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("inconsistent polynomial matrix data")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "PolyMatrix":
        data = tuple(tuple(_as_poly(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if nrows else (cols if cols is not None else 0)
        if nrows and cols is not None and ncols != cols:
            raise ValueError(f"expected {cols} columns, found {ncols}")
        return cls(nrows, ncols, data)

    @classmethod
    def from_qmatrix(cls, M: QMatrix) -> "PolyMatrix":
        return cls(M.rows, M.cols,
                   tuple(tuple(Poly([x]) for x in row) for row in M.data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls(rows, cols, tuple(tuple(POLY_ZERO for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(n, n, tuple(tuple(POLY_ONE if i == j else POLY_ZERO for j in range(n))
                               for i in range(n)))

    @classmethod
    def vstack(cls, mats: Sequence["PolyMatrix"]) -> "PolyMatrix":
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("vstack: column count mismatch")
        return cls(sum(m.rows for m in mats), cols, tuple(r for m in mats for r in m.data))

    def __getitem__(self, key: tuple[int, int]) -> Poly:
        i, j = key
        return self.data[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows,
                          tuple(tuple(self.data[i][j] for i in range(self.rows))
                                for j in range(self.cols)))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in product: {self.shape} @ {other.shape}")
        data = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = POLY_ZERO
                for k in range(self.cols):
                    a = self.data[i][k]
                    b = other.data[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            data.append(tuple(row))
        return PolyMatrix(self.rows, other.cols, tuple(data))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols,
                          tuple(tuple(a - b for a, b in zip(ra, rb))
                                for ra, rb in zip(self.data, other.data)))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.data for e in row)

    def evaluate(self, s0) -> QMatrix:
        return QMatrix.from_rows([[e.evaluate(as_fraction(s0)) for e in row] for row in self.data],
                                 cols=self.cols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.data)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"


def build_system_matrices(sys: SystemSextuple) -> tuple[PolyMatrix, PolyMatrix]:
    """The system pencil P(s) = [sI-A, -B; C, D] and its extension with [E F]."""
    n, m, p = sys.n, sys.m, sys.p
    rows = []
    for i in range(n):
        row = [Poly([-sys.A[i, j], 1]) if i == j else Poly([-sys.A[i, j]]) for j in range(n)]
        row += [Poly([-sys.B[i, j]]) for j in range(m)]
        rows.append(row)
    for i in range(p):
        row = [Poly([sys.C[i, j]]) for j in range(n)]
        row += [Poly([sys.D[i, j]]) for j in range(m)]
        rows.append(row)
    P = PolyMatrix.from_rows(rows, cols=n + m)
    ef_rows = []
    for i in range(sys.q):
        row = [Poly([sys.E[i, j]]) for j in range(n)]
        row += [Poly([sys.F[i, j]]) for j in range(m)]
        ef_rows.append(row)
    EF = PolyMatrix.from_rows(ef_rows, cols=n + m)
    return P, PolyMatrix.vstack([P, EF])


def determinant(M: PolyMatrix) -> Poly:
    """Exact determinant via single-step fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return POLY_ONE
    a = [list(row) for row in M.data]
    sign = 1
    prev = POLY_ONE
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            return POLY_ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = POLY_ZERO
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def normal_rank(M: PolyMatrix) -> int:
    """Rank over the rational-function field.

    Division-controlled Gaussian elimination on the polynomial entries:
    rows are combined by cross-multiplication and then stripped of their
    common polynomial factor after each pivot, which keeps degrees and
    coefficients from blowing up while preserving the rank exactly.
    """
    a = [[e for e in row] for row in M.data]
    nrows, ncols = M.rows, M.cols
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pivot = a[r][c]
        for i in range(r + 1, nrows):
            if a[i][c].is_zero():
                continue
            f = a[i][c]
            row = [pivot * x - f * y for x, y in zip(a[i], a[r])]
            g = POLY_ZERO
            for x in row:
                if x.is_zero():
                    continue
                g = x.monic() if g.is_zero() else poly_gcd(g, x)
            if not g.is_zero() and g.degree > 0:
                row = [x.exact_div(g) for x in row]
            lead = next((x for x in row if not x.is_zero()), None)
            if lead is not None:
                inv = Fraction(1) / lead.leading
                row = [x.scale(inv) for x in row]
            a[i] = row
        r += 1
    return r


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ P @ V == S with U, V unimodular and S the diagonal Smith form."""
    U: PolyMatrix
    S: PolyMatrix
    V: PolyMatrix
    invariant_polys: tuple[Poly, ...]


def _row_op_sub(mat: list[list[Poly]], i: int, t: int, q: Poly) -> None:
    mat[i] = [x - q * y for x, y in zip(mat[i], mat[t])]


def _col_op_sub(mat: list[list[Poly]], j: int, t: int, q: Poly) -> None:
    for row in mat:
        row[j] = row[j] - q * row[t]


def _swap_cols(mat: list[list[Poly]], a: int, b: int) -> None:
    for row in mat:
        row[a], row[b] = row[b], row[a]


def smith_form(P: PolyMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transformers.

    Gcd-driven elementary operations: the minimum-degree entry of the
    working submatrix is promoted to the pivot, its row and column are
    cleared by division with remainder (remainders re-enter the pivot),
    and a divisibility pass guarantees the invariant-polynomial chain.
    The self-check U @ P @ V == S runs on every call.
    """
    m, n = P.rows, P.cols
    S = [list(row) for row in P.data]
    U = [list(row) for row in PolyMatrix.identity(m).data]
    V = [list(row) for row in PolyMatrix.identity(n).data]
    t = 0
    while t < min(m, n):
        # minimum-degree nonzero entry of the trailing submatrix
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = S[i][j]
                if not e.is_zero() and (best is None or e.degree < best[2]):
                    best = (i, j, e.degree)
        if best is None:
            break
        bi, bj, _ = best
        if bi != t:
            S[t], S[bi] = S[bi], S[t]
            U[t], U[bi] = U[bi], U[t]
        if bj != t:
            _swap_cols(S, t, bj)
            _swap_cols(V, t, bj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t].is_zero():
                    continue
                q = S[i][t] // S[t][t]
                if not q.is_zero():
                    _row_op_sub(S, i, t, q)
                    _row_op_sub(U, i, t, q)
                if not S[i][t].is_zero():
                    S[t], S[i] = S[i], S[t]
                    U[t], U[i] = U[i], U[t]
                    changed = True
                    break
            if changed:
                continue
            for j in range(t + 1, n):
                if S[t][j].is_zero():
                    continue
                q = S[t][j] // S[t][t]
                if not q.is_zero():
                    _col_op_sub(S, j, t, q)
                    _col_op_sub(V, j, t, q)
                if not S[t][j].is_zero():
                    _swap_cols(S, t, j)
                    _swap_cols(V, t, j)
                    changed = True
                    break
            if changed:
                continue
            if any(not S[i][t].is_zero() for i in range(t + 1, m)):
                continue
            # pivot must divide the rest of the submatrix
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not S[t][t].divides(S[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                S[t] = [x + y for x, y in zip(S[t], S[bad])]
                U[t] = [x + y for x, y in zip(U[t], U[bad])]
                continue
            break
        t += 1
    # monic normalisation of the diagonal (constant row scalings)
    for i in range(min(m, n)):
        d = S[i][i]
        if not d.is_zero() and d.leading != 1:
            inv = Fraction(1) / d.leading
            S[i] = [x.scale(inv) for x in S[i]]
            U[i] = [x.scale(inv) for x in U[i]]
    Sm = PolyMatrix.from_rows(S, cols=n)
    Um = PolyMatrix.from_rows(U, cols=m)
    Vm = PolyMatrix.from_rows(V, cols=n)
    invariants = tuple(Sm[i, i] for i in range(min(m, n)) if not Sm[i, i].is_zero())
    dec = SmithDecomposition(Um, Sm, Vm, invariants)
    _assert_smith(P, dec)
    return dec


def _assert_smith(P: PolyMatrix, dec: SmithDecomposition) -> None:
    if dec.U @ P @ dec.V != dec.S:
        raise AssertionError("Smith self-check failed: U P V != S")
    for i in range(dec.S.rows):
        for j in range(dec.S.cols):
            if i != j and not dec.S[i, j].is_zero():
                raise AssertionError("Smith form not diagonal")
    polys = dec.invariant_polys
    for a, b in zip(polys, polys[1:]):
        if not a.divides(b):
            raise AssertionError("invariant polynomial chain broken")
    for a in polys:
        if a.leading != 1:
            raise AssertionError("invariant polynomial not monic")


def zero_polynomial(P: PolyMatrix) -> Poly:
    """Monic product of the invariant polynomials; its roots (with
    multiplicity) are the invariant zeros of P."""
    prod = POLY_ONE
    for a in smith_form(P).invariant_polys:
        if a.degree > 0:
            prod = prod * a
    return prod.monic()


def observability_pencil(sys: SystemSextuple) -> PolyMatrix:
    """The stacked pencil [sI - A; C]."""
    n = sys.n
    rows = []
    for i in range(n):
        rows.append([Poly([-sys.A[i, j], 1]) if i == j else Poly([-sys.A[i, j]])
                     for j in range(n)])
    for i in range(sys.p):
        rows.append([Poly([sys.C[i, j]]) for j in range(n)])
    return PolyMatrix.from_rows(rows, cols=n)


def output_decoupling_zero_polynomial(sys: SystemSextuple) -> Poly:
    """Zero polynomial of [sI - A; C]; roots are the unobservable modes."""
    return zero_polynomial(observability_pencil(sys))
