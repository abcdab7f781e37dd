"""Sparse bivariate polynomials in x, y and matrices of them."""

from __future__ import annotations

from .fields import Field


class Poly:
    """Immutable sparse polynomial: ``{(deg_x, deg_y): coefficient}``."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: dict, field: Field):
        self.field = field
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def monomial(cls, field: Field, a: int, b: int, coeff=None) -> "Poly":
        return cls({(a, b): field.one() if coeff is None else coeff}, field)

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls({}, field)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly(out, self.field)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()}, self.field)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return Poly(out, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def weights(self, wx: int, wy: int) -> set[int]:
        return {wx * a + wy * b for a, b in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(s for s in (
                "" if a == 0 else ("x" if a == 1 else f"x^{a}"),
                "" if b == 0 else ("y" if b == 1 else f"y^{b}")) if s)
            parts.append(f"{c!r}*{mono}" if mono else repr(c))
        return " + ".join(parts)


class PolyMatrix:
    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries: list[list[Poly]], field: Field):
        if not entries or not entries[0]:
            raise ValueError("PolyMatrix needs positive dimensions")
        width = len(entries[0])
        if any(len(r) != width for r in entries):
            raise ValueError("ragged PolyMatrix")
        self.entries = [list(r) for r in entries]
        self.rows = len(entries)
        self.cols = width
        self.field = field

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field) -> "PolyMatrix":
        return cls([[Poly.zero(field) for _ in range(cols)] for _ in range(rows)], field)

    @classmethod
    def scalar(cls, size: int, p: Poly) -> "PolyMatrix":
        m = cls.zeros(size, size, p.field)
        for i in range(size):
            m.entries[i][i] = p
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Poly.zero(self.field)
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.field)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix([[a + b for a, b in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)], self.field)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix([[a - b for a, b in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)], self.field)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def is_zero(self) -> bool:
        return not any(e for r in self.entries for e in r)

    @staticmethod
    def block_diag(blocks: list["PolyMatrix"]) -> "PolyMatrix":
        field = blocks[0].field
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = PolyMatrix.zeros(rows, cols, field)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out.entries[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return out

    def __repr__(self) -> str:
        return "PolyMatrix(" + repr(self.entries) + ")"


class MatrixFactorization:
    """A pair (phi, psi) with phi @ psi == psi @ phi == f * Id.

    ``phi`` presents the module: M = coker(phi).
    """

    def __init__(self, phi: PolyMatrix, psi: PolyMatrix, f: Poly):
        if not (phi.rows == phi.cols == psi.rows == psi.cols):
            raise ValueError("matrix factorization needs square matrices of equal size")
        target = PolyMatrix.scalar(phi.rows, f)
        if phi @ psi != target or psi @ phi != target:
            raise ValueError("phi*psi and psi*phi must both equal f*Id")
        self.phi = phi
        self.psi = psi
        self.f = f

    @property
    def size(self) -> int:
        return self.phi.rows

    @staticmethod
    def direct_sum(mfs: list["MatrixFactorization"]) -> "MatrixFactorization":
        return MatrixFactorization(
            PolyMatrix.block_diag([m.phi for m in mfs]),
            PolyMatrix.block_diag([m.psi for m in mfs]),
            mfs[0].f,
        )
