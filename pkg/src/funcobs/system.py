"""The plant sextuple (A, B, C, D, E, F).

State dynamics ``x' = A x + B u`` with measured output ``y = C x + D u``
and target output ``z = E x + F u``.  All blocks are exact rational
matrices; any of the dimensions n, m, p, q may be zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import QMatrix


@dataclass(frozen=True)
class SystemSextuple:
    A: QMatrix
    B: QMatrix
    C: QMatrix
    D: QMatrix
    E: QMatrix
    F: QMatrix

    def __post_init__(self):
        n, m, p, q = self.A.rows, self.B.cols, self.C.rows, self.E.rows
        if self.A.cols != n:
            raise ValueError("A must be square")
        if self.B.rows != n:
            raise ValueError(f"B must have {n} rows")
        if self.C.cols != n:
            raise ValueError(f"C must have {n} columns")
        if self.D.shape != (p, m):
            raise ValueError(f"D must be {p}x{m}")
        if self.E.cols != n:
            raise ValueError(f"E must have {n} columns")
        if self.F.shape != (q, m):
            raise ValueError(f"F must be {q}x{m}")

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.B.cols

    @property
    def p(self) -> int:
        return self.C.rows

    @property
    def q(self) -> int:
        return self.E.rows

    @classmethod
    def from_lists(cls, A, B=None, C=None, D=None, E=None, F=None, m: int | None = None) -> "SystemSextuple":
        """Build from nested lists of rational literals.

        Missing B/D/F default to zero blocks; when all three are absent the
        input dimension is ``m`` (default 0).  Missing C or E default to
        zero-row blocks (no measured / no target output).
        """
        A = QMatrix.from_rows(A)
        n = A.rows
        if m is not None:
            m_eff = m
        elif B is not None and len(B) > 0:
            m_eff = len(B[0])
        elif D is not None and len(D) > 0:
            m_eff = len(D[0])
        elif F is not None and len(F) > 0:
            m_eff = len(F[0])
        else:
            m_eff = 0
        B = QMatrix.from_rows(B, cols=m_eff) if B is not None else QMatrix.zeros(n, m_eff)
        # the output counts fall back to the feedthrough blocks, which matters
        # for n = 0 plants where C and E carry no columns
        p = len(C) if C else (len(D) if D else 0)
        q = len(E) if E else (len(F) if F else 0)
        C = QMatrix.from_rows(C, cols=n) if C else QMatrix.zeros(p, n)
        D = QMatrix.from_rows(D, cols=m_eff) if D else QMatrix.zeros(p, m_eff)
        E = QMatrix.from_rows(E, cols=n) if E else QMatrix.zeros(q, n)
        F = QMatrix.from_rows(F, cols=m_eff) if F else QMatrix.zeros(q, m_eff)
        return cls(A, B, C, D, E, F)

    def with_target(self, E: QMatrix, F: QMatrix) -> "SystemSextuple":
        """Same plant with a different target output block [E F]."""
        return SystemSextuple(self.A, self.B, self.C, self.D, E, F)

    def known_input_reduction(self) -> "SystemSextuple":
        """Drop the input channels (B, D, F become zero-width)."""
        return SystemSextuple(self.A, QMatrix.zeros(self.n, 0),
                              self.C, QMatrix.zeros(self.p, 0),
                              self.E, QMatrix.zeros(self.q, 0))

    def is_controllable(self) -> bool:
        blocks = []
        power = QMatrix.identity(self.n)
        for _ in range(max(self.n, 1)):
            blocks.append(power @ self.B)
            power = self.A @ power
        if self.n == 0:
            return True
        return QMatrix.hstack(blocks).rank() == self.n
