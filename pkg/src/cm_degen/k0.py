"""Grothendieck group of the stable category, presented by AR relations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .ar_quiver import quiver
from .catalog import SingularitySpec, StableModule, check_module, classify, knoerrer_reduce


@dataclass(frozen=True)
class K0Presentation:
    spec: SingularitySpec
    generators: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...]  # one row per AR triangle
    diagonal: tuple[int, ...]                # Smith invariants, zeros included
    right: tuple[tuple[int, ...], ...]       # T with S * relations * T = D

    @property
    def invariant_factors(self) -> list[int]:
        """Orders of the cyclic factors; 0 stands for a copy of Z. Trivial factors dropped."""
        return [d for d in self.diagonal if d != 1]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d == 0)

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors if d] + ["Z"] * self.rank
        return " + ".join(parts) if parts else "0"

    def vector(self, M: StableModule) -> list[int]:
        return [M.mu(g) for g in self.generators]


@lru_cache(maxsize=None)
def _presentation(spec: SingularitySpec) -> K0Presentation:
    gens = tuple(classify(spec))
    rows = []
    for tri in quiver(spec):
        rel = tri.relation()
        rows.append(tuple(rel.get(g, 0) for g in gens))
    R = Matrix(rows)
    D, S, T = smith_normal_decomp(R, domain=ZZ)
    if S * R * T != D:
        raise AssertionError("Smith decomposition does not reproduce the relation matrix")
    diag = tuple(int(abs(D[i, i])) for i in range(min(D.shape)))
    # pad for generators beyond the number of relations (never happens: one relation per id)
    diag = diag + (0,) * (len(gens) - len(diag))
    return K0Presentation(spec, gens, tuple(rows), diag,
                          tuple(tuple(int(T[i, j]) for j in range(T.shape[1])) for i in range(T.shape[0])))


def k0_presentation(spec: SingularitySpec) -> K0Presentation:
    return _presentation(knoerrer_reduce(spec))


def k0_class(pres: K0Presentation, M: StableModule) -> tuple[int, ...]:
    """Canonical coordinates: (v T)_i mod d_i, with free coordinates kept as is."""
    check_module(pres.spec, M)
    v = pres.vector(M)
    w = [sum(v[k] * pres.right[k][j] for k in range(len(v))) for j in range(len(v))]
    return tuple(x % d if d else x for x, d in zip(w, pres.diagonal))


def same_class(pres: K0Presentation, M: StableModule, N: StableModule) -> bool:
    return k0_class(pres, M) == k0_class(pres, N)


def in_relation_lattice(pres: K0Presentation, vector: dict[str, int]) -> bool:
    """Whether a free-group element is a Z-combination of AR relations."""
    v = [vector.get(g, 0) for g in pres.generators]
    w = [sum(v[k] * pres.right[k][j] for k in range(len(v))) for j in range(len(v))]
    return all((x % d == 0) if d else x == 0 for x, d in zip(w, pres.diagonal))
