"""Exact scalars: the Gaussian rationals Q(i) and prime fields F_p with p = 1 mod 4.

Both fields contain a square root of -1, which is all the N_+/N_- modules
need.  Elements support the usual arithmetic operators; a ``Field`` object
converts Gaussian integers ``a + b*i`` into its own elements.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


class ModP:
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o.v, self.p)

    __radd__ = __add__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o.v, self.p)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o.v, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if not self.v:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o.v

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return bool(self.v)

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class Field:
    """Factory for scalars of one fixed field."""

    name: str

    def gauss(self, a: int, b: int = 0):
        raise NotImplementedError

    def zero(self):
        return self.gauss(0)

    def one(self):
        return self.gauss(1)


class GaussianRationals(Field):
    name = "qi"

    def gauss(self, a, b=0):
        return GaussianRational(a, b)

    def __eq__(self, other):
        return isinstance(other, GaussianRationals)

    def __hash__(self):
        return hash("qi")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p) or p % 4 != 1:
            raise ValueError(f"F_p needs a prime p = 1 (mod 4) so that sqrt(-1) exists; got {p}")
        self.p = p
        self.name = f"fp:{p}"
        # smallest non-residue c gives sqrt(-1) = c^((p-1)/4)
        c = 2
        while pow(c, (p - 1) // 2, p) != p - 1:
            c += 1
        self.sqrt_m1 = pow(c, (p - 1) // 4, p)

    def gauss(self, a, b=0):
        return ModP(a + b * self.sqrt_m1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


QI = GaussianRationals()


def parse_field(text: str) -> Field:
    """``qi`` or ``fp:<p>``."""
    text = text.strip().lower()
    if text == "qi":
        return QI
    if text.startswith("fp:"):
        return PrimeField(int(text[3:]))
    raise ValueError(f"unknown field {text!r}; use 'qi' or 'fp:<p>'")


# Exact elimination.

def _gauss_int_row(row: dict) -> dict:
    """Scale a row of Gaussian rationals to Gaussian integers ``(re, im)``."""
    den = 1
    for v in row.values():
        den = lcm(den, v.re.denominator, v.im.denominator)
    return {c: (int(v.re * den), int(v.im * den)) for c, v in row.items()}


def _content(row: dict) -> dict:
    g = 0
    for a, b in row.values():
        g = gcd(g, a, b)
    if g > 1:
        return {c: (a // g, b // g) for c, (a, b) in row.items()}
    return row


def _rank_gaussian(rows: list[dict]) -> int:
    pivots: dict[int, dict] = {}
    for row in rows:
        r = _gauss_int_row(row)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _content(r)
                break
            # r <- p[c] * r - r[c] * p, which cancels column c
            pa, pb = p[c]
            ra, rb = r[c]
            out = {}
            for k in set(r) | set(p):
                x1, y1 = r.get(k, (0, 0))
                x2, y2 = p.get(k, (0, 0))
                re = (pa * x1 - pb * y1) - (ra * x2 - rb * y2)
                im = (pa * y1 + pb * x1) - (ra * y2 + rb * x2)
                if re or im:
                    out[k] = (re, im)
            r = _content(out)
    return len(pivots)


def _rank_modp(rows: list[dict], p: int) -> int:
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {c: v.v for c, v in row.items() if v.v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[c]
            out = dict(r)
            for k, v in piv.items():
                w = (out.get(k, 0) - f * v) % p
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
            r = out
    return len(pivots)


def rank(rows) -> int:
    """Exact rank of a matrix given as sparse rows ``{col: elem}`` or dense lists.

    Gaussian rationals are eliminated fraction-free over Z[i]; prime-field
    entries by ordinary modular elimination.
    """
    sparse = [r if isinstance(r, dict) else {c: v for c, v in enumerate(r) if v} for r in rows]
    sparse = [{c: v for c, v in r.items() if v} for r in sparse]
    sparse = [r for r in sparse if r]
    if not sparse:
        return 0
    sample = next(iter(sparse[0].values()))
    if isinstance(sample, ModP):
        return _rank_modp(sparse, sample.p)
    if isinstance(sample, GaussianRational):
        return _rank_gaussian(sparse)
    raise TypeError(f"unsupported scalar type {type(sample).__name__}")


def nullspace(rows, ncols: int, field: Field) -> list[list]:
    """Basis of {v : A v = 0}; rows may be sparse dicts or dense lists."""
    pivots: dict[int, dict] = {}
    for row in rows:
        r = row if isinstance(row, dict) else {c: v for c, v in enumerate(row) if v}
        r = {c: v for c, v in r.items() if v}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                inv = r[c].inverse()
                pivots[c] = {k: v * inv for k, v in r.items()}
                break
            f = r[c]
            out = dict(r)
            for k, v in p.items():
                w = out[k] - f * v if k in out else -(f * v)
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
            r = out
    # back substitution to reduced echelon form
    for c in sorted(pivots, reverse=True):
        p = pivots[c]
        for c2, q in pivots.items():
            if c2 < c and c in q:
                f = q[c]
                for k, v in p.items():
                    w = q[k] - f * v if k in q else -(f * v)
                    if w:
                        q[k] = w
                    else:
                        q.pop(k, None)
    zero, one = field.zero(), field.one()
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[fc] = one
        for pc, p in pivots.items():
            if fc in p:
                v[pc] = -p[fc]
        basis.append(v)
    return basis
