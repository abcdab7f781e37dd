"""Hom vectors, delta functions and the stable hom order."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .ar_quiver import mesh_violations
from .catalog import SingularitySpec, StableModule, check_module, classify, module_syzygy


class MeshRelationError(AssertionError):
    pass


@dataclass(frozen=True)
class HomTable:
    """dims[i][j] = [labels[i], labels[j]], the stable Hom dimension."""

    spec: SingularitySpec
    labels: tuple[str, ...]
    dims: tuple[tuple[int, ...], ...]
    field: str = "qi"
    certificates: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if list(self.labels) != classify(self.spec):
            raise ValueError("labels must be the canonical indecomposables of the ring")
        if len(self.dims) != len(self.labels) or any(len(r) != len(self.labels) for r in self.dims):
            raise ValueError("hom table must be square")
        bad = mesh_violations(self.spec, self.dims, self.labels)
        if bad:
            raise MeshRelationError(f"mesh relation fails for {self.spec}: {bad[:3]}")

    def __getitem__(self, pair: tuple[str, str]) -> int:
        u, x = pair
        return self.dims[self.labels.index(u)][self.labels.index(x)]

    def as_dict(self) -> dict:
        return {"ring": str(self.spec), "labels": list(self.labels),
                "dims": [list(r) for r in self.dims], "field": self.field}


class DeltaFunction(dict):
    """An integer-valued function on indecomposables (missing keys read as 0)."""

    def __missing__(self, key):
        return 0

    def at(self, module: StableModule) -> int:
        return sum(m * self[x] for x, m in module.items())

    def __le__(self, other: "DeltaFunction") -> bool:
        return all(self[k] <= other[k] for k in set(self) | set(other))

    def __add__(self, other: "DeltaFunction") -> "DeltaFunction":
        return DeltaFunction({k: self[k] + other[k] for k in set(self) | set(other)})

    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values())


def hom_vector(table: HomTable, M: StableModule) -> tuple[int, ...]:
    """Coordinate at X is [X, M] = sum_Y mu(M, Y) [X, Y]."""
    check_module(table.spec, M)
    cols = {y: j for j, y in enumerate(table.labels)}
    return tuple(sum(m * row[cols[y]] for y, m in M.items()) for row in table.dims)


def leq_hom(table: HomTable, M: StableModule, N: StableModule) -> bool:
    return all(a <= b for a, b in zip(hom_vector(table, M), hom_vector(table, N)))


def _fn(table: HomTable, values) -> DeltaFunction:
    return DeltaFunction(zip(table.labels, values))


def delta(table: HomTable, M: StableModule, N: StableModule) -> DeltaFunction:
    """delta_{M,N} = [-, N] - [-, M]."""
    return _fn(table, (b - a for a, b in zip(hom_vector(table, M), hom_vector(table, N))))


def delta_triangle(table: HomTable, z: StableModule, y: StableModule, x: StableModule) -> DeltaFunction:
    """delta of a triangle Z -> Y -> X -> Z[1]: [-, Z] + [-, X] - [-, Y]."""
    hz, hy, hx = (hom_vector(table, m) for m in (z, y, x))
    return _fn(table, (a + c - b for a, b, c in zip(hz, hy, hx)))


@dataclass(frozen=True)
class CdResult:
    status: str  # "not_applicable" | "holds" | "violated"
    left: StableModule | None = None
    right: StableModule | None = None

    def as_dict(self) -> dict:
        out = {"status": self.status}
        if self.left is not None:
            out["M+OmegaM"] = self.left.render()
            out["N+OmegaN"] = self.right.render()
        return out


def cd_consequence(table: HomTable, M: StableModule, N: StableModule) -> CdResult:
    """Equal hom vectors should force M + Omega(M) == N + Omega(N)."""
    if hom_vector(table, M) != hom_vector(table, N):
        return CdResult("not_applicable")
    left = M + module_syzygy(table.spec, M)
    right = N + module_syzygy(table.spec, N)
    return CdResult("holds" if left == right else "violated", left, right)
