"""Object-level AR triangles tau(X) -> E_X -> X -> tau(X)[1] for type A_n."""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import SingularitySpec, StableModule, check_id, classify, knoerrer_reduce, shift, tau


@dataclass(frozen=True)
class ARTriangle:
    end: str
    translate: str
    middle: StableModule

    def relation(self) -> dict[str, int]:
        """The vector [X] + [tau X] - [E_X] in the free group on indecomposables."""
        out: dict[str, int] = {}
        for ident in (self.end, self.translate):
            out[ident] = out.get(ident, 0) + 1
        for ident, m in self.middle.items():
            out[ident] = out.get(ident, 0) - m
        return {k: v for k, v in out.items() if v}

    def as_dict(self) -> dict:
        return {"end": self.end, "translate": self.translate, "middle": dict(self.middle.items())}


def _middle(r: SingularitySpec, ident: str) -> StableModule:
    n = r.n
    if r.d == 0:
        i = int(ident[1:])
        return StableModule({f"M{j}": 1 for j in (i - 1, i + 1) if 1 <= j <= n})
    if ident in ("N+", "N-"):
        m = (n - 1) // 2
        return StableModule.of(f"I{m}") if m >= 1 else StableModule()
    i = int(ident[1:])
    acc: dict[str, int] = {}
    if i > 1:
        acc[f"I{i - 1}"] = 1
    if n % 2 == 0:
        top = n // 2
        j = min(i + 1, top)  # I_{n/2+1} is I_{n/2}
        acc[f"I{j}"] = acc.get(f"I{j}", 0) + 1
    else:
        if i < (n - 1) // 2:
            acc[f"I{i + 1}"] = 1
        else:
            acc["N+"] = acc["N-"] = 1
    return StableModule(acc)


def ar_triangle(spec: SingularitySpec, ident: str) -> ARTriangle:
    r = knoerrer_reduce(spec)
    check_id(r, ident)
    tri = ARTriangle(end=ident, translate=tau(r, ident), middle=_middle(r, ident))
    if any(m > 2 for m in tri.middle.values()):
        raise AssertionError(f"mesh multiplicity above 2 in {tri}")
    return tri


def quiver(spec: SingularitySpec) -> list[ARTriangle]:
    return [ar_triangle(spec, x) for x in classify(spec)]


def star_condition(spec: SingularitySpec) -> tuple[bool, list[dict]]:
    """Check [X]+[Z]-[Y] == [X[-1]]+[Z[-1]]-[Y[-1]] for every AR triangle."""
    r = knoerrer_reduce(spec)
    report = []
    for tri in quiver(r):
        rel = tri.relation()
        shifted: dict[str, int] = {}
        for ident, c in rel.items():
            s = shift(r, ident, -1)
            shifted[s] = shifted.get(s, 0) + c
        shifted = {k: v for k, v in shifted.items() if v}
        report.append({"end": tri.end, "relation": rel, "shifted": shifted, "holds": rel == shifted})
    return all(row["holds"] for row in report), report


def star_condition_holds(spec: SingularitySpec) -> bool:
    return star_condition(spec)[0]


def mesh_violations(spec: SingularitySpec, dims, labels) -> list[dict]:
    """Pairs (U, X) where [U,X] + [U,tau X] - [U,E_X] != mu(U,X) + mu(U,X[-1])."""
    r = knoerrer_reduce(spec)
    pos = {x: i for i, x in enumerate(labels)}
    bad = []
    for tri in quiver(r):
        xs = shift(r, tri.end, -1)
        for u in labels:
            row = dims[pos[u]]
            lhs = row[pos[tri.end]] + row[pos[tri.translate]] - sum(
                m * row[pos[w]] for w, m in tri.middle.items())
            rhs = (u == tri.end) + (u == xs)
            if lhs != rhs:
                bad.append({"U": u, "X": tri.end, "lhs": lhs, "rhs": rhs})
    return bad
