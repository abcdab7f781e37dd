"""Ground-truth stable Hom dimensions.

Reduced dimension 1: modules are matrix factorizations of
f = x^{n+1} + y^2 and the stable Hom is the degree-0 cohomology of the
2-periodic Hom complex.  f is weighted homogeneous (wt x = 2,
wt y = n + 1), so the complex splits into finite-dimensional pieces by
internal degree e.  We sum the cohomology over a window of D internal
degrees starting at the lowest degree carrying any morphism; AUTO doubles
D until two rounds agree.

Reduced dimension 0: modules over k[x]/(x^{n+1}) are nilpotent Jordan
matrices and stable Hom is dim Hom minus the dimension of maps factoring
through the projective cover of the target.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .catalog import DomainError, SingularitySpec, StableModule, check_id, check_module, classify, knoerrer_reduce
from .fields import QI, Field, nullspace, rank
from .poly import MatrixFactorization, Poly, PolyMatrix

AUTO = "auto"
MAX_DOUBLINGS = 8


class NonStabilizingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Certificate:
    """Stabilization record: the (window, total) pair for every AUTO round."""

    rounds: tuple[tuple[int, int], ...]

    @property
    def degree_bound(self) -> int:
        return self.rounds[-1][0]

    def as_dict(self) -> dict:
        return {"rounds": [{"degree_bound": d, "dim": v} for d, v in self.rounds],
                "stabilized_at": self.rounds[-2][0] if len(self.rounds) > 1 else None}


def threads() -> int:
    try:
        return max(1, int(os.environ.get("CM_DEGEN_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------- dimension 1

def defining_poly(n: int, field: Field) -> Poly:
    return Poly({(n + 1, 0): field.one(), (0, 2): field.one()}, field)


def mf_of(spec: SingularitySpec, ident: str, field: Field = QI) -> MatrixFactorization:
    r = knoerrer_reduce(spec)
    if r.d != 1:
        raise DomainError("matrix factorizations are used for reduced dimension 1 only")
    check_id(r, ident)
    n = r.n
    mono = lambda a, b, c=1: Poly.monomial(field, a, b, field.gauss(c))
    f = defining_poly(n, field)
    if ident in ("N+", "N-"):
        s = 1 if ident == "N+" else -1
        h = (n + 1) // 2
        phi = Poly({(h, 0): field.one(), (0, 1): field.gauss(0, s)}, field)
        psi = Poly({(h, 0): field.one(), (0, 1): field.gauss(0, -s)}, field)
        return MatrixFactorization(PolyMatrix([[phi]], field), PolyMatrix([[psi]], field), f)
    i = int(ident[1:])
    phi = PolyMatrix([[mono(i, 0), mono(0, 1, -1)], [mono(0, 1), mono(n + 1 - i, 0)]], field)
    psi = PolyMatrix([[mono(n + 1 - i, 0), mono(0, 1)], [mono(0, 1, -1), mono(i, 0)]], field)
    return MatrixFactorization(phi, psi, f)


def mf_of_module(spec: SingularitySpec, module: StableModule, field: Field = QI) -> MatrixFactorization:
    blocks = [mf_of(spec, i, field) for i, m in module.items() for _ in range(m)]
    return MatrixFactorization.direct_sum(blocks)


def _grading(mf: MatrixFactorization, wx: int, wy: int, h: int) -> tuple[list[int], list[int]]:
    """Shifts (a, b) with F1 = sum S(-a_j), F0 = sum S(-b_k) making phi, psi degree 0."""
    size = mf.size
    a: list[int | None] = [None] * size
    b: list[int | None] = [None] * size
    for start in range(size):
        if b[start] is not None:
            continue
        b[start] = 0
        queue = deque([("b", start)])
        while queue:
            kind, idx = queue.popleft()
            for other in range(size):
                if kind == "b":
                    entry = mf.phi[idx, other]
                    if not entry:
                        continue
                    (w,) = entry.weights(wx, wy)
                    if a[other] is None:
                        a[other] = b[idx] + w
                        queue.append(("a", other))
                else:
                    entry = mf.phi[other, idx]
                    if not entry:
                        continue
                    (w,) = entry.weights(wx, wy)
                    if b[other] is None:
                        b[other] = a[idx] - w
                        queue.append(("b", other))
    for k in range(size):
        for j in range(size):
            if mf.phi[k, j] and mf.phi[k, j].weights(wx, wy) != {a[j] - b[k]}:
                raise ValueError("phi is not weighted homogeneous")
            if mf.psi[j, k] and mf.psi[j, k].weights(wx, wy) != {b[k] + h - a[j]}:
                raise ValueError("psi is not weighted homogeneous")
    return a, b


def _monomials(weight: int, wx: int, wy: int) -> list[tuple[int, int]]:
    if weight < 0:
        return []
    return [(p, (weight - wx * p) // wy) for p in range(weight // wx + 1) if (weight - wx * p) % wy == 0]


class _HomComplex:
    """Graded pieces of the Hom complex between two matrix factorizations."""

    def __init__(self, src: MatrixFactorization, dst: MatrixFactorization, n: int, field: Field):
        self.src, self.dst, self.field = src, dst, field
        self.wx, self.wy, self.h = 2, n + 1, 2 * (n + 1)
        self.aM, self.bM = _grading(src, self.wx, self.wy, self.h)
        self.aN, self.bN = _grading(dst, self.wx, self.wy, self.h)
        self.e_min = min(
            [bn - bm for bn in self.bN for bm in self.bM] + [an - am for an in self.aN for am in self.aM])
        self._cache: dict[int, int] = {}

    def _hom0_basis(self, e: int):
        """Unknown coordinates of (alpha, beta) in internal degree e."""
        out = []
        for l, bn in enumerate(self.bN):
            for k, bm in enumerate(self.bM):
                out += [("alpha", l, k, mono) for mono in _monomials(bm - bn + e, self.wx, self.wy)]
        for l, an in enumerate(self.aN):
            for j, am in enumerate(self.aM):
                out += [("beta", l, j, mono) for mono in _monomials(am - an + e, self.wx, self.wy)]
        return out

    def _hom1_basis(self, e: int):
        out = []
        for m, an in enumerate(self.aN):
            for k, bm in enumerate(self.bM):
                out += [("u", m, k, mono) for mono in _monomials(bm - an + e, self.wx, self.wy)]
        for l, bn in enumerate(self.bN):
            for j, am in enumerate(self.aM):
                out += [("v", l, j, mono) for mono in _monomials(am - bn + e - self.h, self.wx, self.wy)]
        return out

    @staticmethod
    def _scatter(acc: dict, key, mono, poly: Poly, sign):
        for (p, q), c in poly.terms.items():
            k = key + ((p + mono[0], q + mono[1]),)
            acc[k] = acc[k] + sign * c if k in acc else sign * c

    def _d0(self, unknown) -> dict:
        """Image of one basis element of Hom^0 under (alpha,beta) -> (a phi - phi b, b psi - psi a)."""
        kind, r, c, mono = unknown
        M, N = self.src, self.dst
        one = self.field.one()
        acc: dict = {}
        if kind == "alpha":
            for j in range(M.size):
                self._scatter(acc, ("x", r, j), mono, M.phi[c, j], one)
            for i in range(N.size):
                self._scatter(acc, ("y", i, c), mono, N.psi[i, r], -one)
        else:
            for i in range(N.size):
                self._scatter(acc, ("x", i, c), mono, N.phi[i, r], -one)
            for j in range(M.size):
                self._scatter(acc, ("y", r, j), mono, M.psi[c, j], one)
        return acc

    def _d1(self, unknown) -> dict:
        """Image of one homotopy (u, v) -> (phi u + v psi, u phi + psi v), in Hom^0 coordinates."""
        kind, r, c, mono = unknown
        M, N = self.src, self.dst
        one = self.field.one()
        acc: dict = {}
        if kind == "u":
            for i in range(N.size):
                self._scatter(acc, ("alpha", i, c), mono, N.phi[i, r], one)
            for j in range(M.size):
                self._scatter(acc, ("beta", r, j), mono, M.phi[c, j], one)
        else:
            for j in range(M.size):
                self._scatter(acc, ("alpha", r, j), mono, M.psi[c, j], one)
            for i in range(N.size):
                self._scatter(acc, ("beta", i, c), mono, N.psi[i, r], one)
        return acc

    @staticmethod
    def _matrix(images: list[dict]) -> list[dict]:
        keys = sorted({k for img in images for k in img})
        index = {k: t for t, k in enumerate(keys)}
        return [{index[k]: v for k, v in img.items()} for img in images]

    def cohomology(self, e: int) -> int:
        if e not in self._cache:
            basis0 = self._hom0_basis(e)
            if not basis0:
                self._cache[e] = 0
                return 0
            cycles = len(basis0) - rank(self._matrix([self._d0(u) for u in basis0]))
            basis1 = self._hom1_basis(e)
            images = [self._d1(u) for u in basis1]
            known = set(basis0)
            for img in images:
                for k in img:
                    if k not in known:
                        raise AssertionError(f"homotopy image {k} outside degree {e}")
            boundaries = rank(self._matrix(images)) if images else 0
            self._cache[e] = cycles - boundaries
        return self._cache[e]

    def total(self, window: int) -> int:
        return sum(self.cohomology(e) for e in range(self.e_min, self.e_min + window))


def _mf_stable_hom(spec: SingularitySpec, M: StableModule, N: StableModule, field: Field,
                   degree_bound) -> tuple[int, Certificate]:
    r = knoerrer_reduce(spec)
    cx = _HomComplex(mf_of_module(r, M, field), mf_of_module(r, N, field), r.n, field)
    if degree_bound != AUTO:
        window = int(degree_bound)
        if window < 1:
            raise ValueError("degree bound must be positive")
        v = cx.total(window)
        return v, Certificate(((window, v),))
    window = 2 * (r.n + 1)
    rounds = [(window, cx.total(window))]
    for _ in range(MAX_DOUBLINGS):
        window *= 2
        rounds.append((window, cx.total(window)))
        if rounds[-1][1] == rounds[-2][1]:
            return rounds[-1][1], Certificate(tuple(rounds))
    raise NonStabilizingError(f"stable Hom({M}, {N}) did not stabilize: {rounds}")


# ---------------------------------------------------------------- dimension 0

def _jordan(sizes: list[int], field: Field) -> list[list]:
    dim = sum(sizes)
    zero, one = field.zero(), field.one()
    J = [[zero] * dim for _ in range(dim)]
    off = 0
    for s in sizes:
        for t in range(s - 1):
            J[off + t + 1][off + t] = one  # x * v_t = v_{t+1}
        off += s
    return J


def _hom_basis(sizes_src: list[int], sizes_dst: list[int], field: Field) -> list[list[list]]:
    """Basis of {A : A J_src = J_dst A} as dense matrices."""
    m, n = sum(sizes_src), sum(sizes_dst)
    Js, Jd = _jordan(sizes_src, field), _jordan(sizes_dst, field)
    zero = field.zero()
    rows = []
    # unknown A[p][q] -> index p*m + q ; equation (A Js - Jd A)[p][q] = 0
    for p in range(n):
        for q in range(m):
            row: dict = {}
            for t in range(m):
                if Js[t][q]:
                    row[p * m + t] = row.get(p * m + t, zero) + Js[t][q]
            for t in range(n):
                if Jd[p][t]:
                    row[t * m + q] = row.get(t * m + q, zero) - Jd[p][t]
            rows.append(row)
    basis = nullspace(rows, n * m, field) if rows else []
    return [[vec[p * m:(p + 1) * m] for p in range(n)] for vec in basis]


def _artinian_stable_hom(spec: SingularitySpec, M: StableModule, N: StableModule, field: Field) -> int:
    n = knoerrer_reduce(spec).n
    src = [int(i[1:]) for i, k in M.items() for _ in range(k)]
    dst = [int(i[1:]) for i, k in N.items() for _ in range(k)]
    homs = _hom_basis(src, dst, field)
    if len(src) == 1 and len(dst) == 1 and len(homs) != min(src[0], dst[0]):
        raise AssertionError(f"dim Hom(M{src[0]}, M{dst[0]}) = {len(homs)}, expected min")
    # projective cover R^g -> N sends x^t e_b to v_t of block b
    free = [n + 1] * len(dst)
    dim_n, dim_free = sum(dst), sum(free)
    zero, one = field.zero(), field.one()
    pi = [[zero] * dim_free for _ in range(dim_n)]
    off_n = 0
    for b, s in enumerate(dst):
        for t in range(s):
            pi[off_n + t][b * (n + 1) + t] = one
        off_n += s
    through_free = []
    for g in _hom_basis(src, free, field):
        comp = [[sum((pi[p][t] * g[t][q] for t in range(dim_free) if pi[p][t]), zero)
                 for q in range(sum(src))] for p in range(dim_n)]
        through_free.append([x for row in comp for x in row])
    return len(homs) - rank(through_free)


# ---------------------------------------------------------------- public API

def stable_hom_certified(spec: SingularitySpec, M: StableModule, N: StableModule,
                         degree_bound=AUTO, field: Field = QI) -> tuple[int, Certificate | None]:
    r = knoerrer_reduce(spec)
    check_module(r, M)
    check_module(r, N)
    if not M or not N:
        return 0, None
    if r.d == 0:
        return _artinian_stable_hom(r, M, N, field), None
    return _mf_stable_hom(r, M, N, field, degree_bound)


def stable_hom_dim(spec: SingularitySpec, M: StableModule, N: StableModule,
                   degree_bound=AUTO, field: Field = QI) -> int:
    """dim_k of the stable Hom from M to N, computed directly on the direct sums."""
    return stable_hom_certified(spec, M, N, degree_bound, field)[0]


@lru_cache(maxsize=None)
def _table(spec: SingularitySpec, field: Field, degree_bound):
    from .homtab import HomTable

    ids = classify(spec)
    pairs = [(x, y) for x in ids for y in ids]

    def cell(pair):
        x, y = pair
        return stable_hom_certified(spec, StableModule.of(x), StableModule.of(y), degree_bound, field)

    with ThreadPoolExecutor(max_workers=threads()) as pool:
        results = list(pool.map(cell, pairs))
    dims = [[results[i * len(ids) + j][0] for j in range(len(ids))] for i in range(len(ids))]
    certs = {f"{x},{y}": c.as_dict() for (x, y), (_, c) in zip(pairs, results) if c is not None}
    return HomTable(spec=spec, labels=tuple(ids), dims=tuple(map(tuple, dims)),
                    field=field.name, certificates=certs)


def hom_table(spec: SingularitySpec, degree_bound=AUTO, field: Field = QI):
    """Stable Hom dimensions between all indecomposables (cached per ring)."""
    return _table(knoerrer_reduce(spec), field, degree_bound)
