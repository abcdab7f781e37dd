"""Stable degenerations over A_n: decision procedures and certificates.

Reduced dimension 1 decides M <=_st N by the hom order together with
equality in K_0, and certifies a positive answer with an object-level
triangle Z -> M + Z -> N -> Z[1] built from AR triangles.  Reduced
dimension 0 decides by dominance of Jordan types after padding with free
summands.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .ar_quiver import ar_triangle
from .catalog import (
    SingularitySpec,
    StableModule,
    ZERO,
    all_modules,
    check_module,
    classify,
    knoerrer_reduce,
    sort_key,
    syzygy,
)
from .homtab import DeltaFunction, HomTable, delta, delta_triangle, leq_hom
from .k0 import k0_class, k0_presentation, same_class
from .oracle import hom_table


class WitnessError(AssertionError):
    """Internal consistency failure while building a certificate."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace or []


class LadderError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------- triangles

@dataclass(frozen=True)
class TriangleObj:
    """An object-level triangle z -> y -> x -> z[1]."""

    z: StableModule
    y: StableModule
    x: StableModule
    provenance: tuple = ()

    def relation(self) -> dict[str, int]:
        """[z] + [x] - [y] in the free group on indecomposables."""
        out: dict[str, int] = {}
        for mod, sign in ((self.z, 1), (self.x, 1), (self.y, -1)):
            for ident, m in mod.items():
                out[ident] = out.get(ident, 0) + sign * m
        return {k: v for k, v in out.items() if v}

    def delta(self, table: HomTable) -> DeltaFunction:
        return delta_triangle(table, self.z, self.y, self.x)

    def objects(self) -> tuple[str, str, str]:
        return self.z.render(), self.y.render(), self.x.render()

    def __str__(self) -> str:
        z, y, x = self.objects()
        return f"{z} -> {y} -> {x} -> ({z})[1]"


def ar_triangle_obj(spec: SingularitySpec, ident: str) -> TriangleObj:
    tri = ar_triangle(spec, ident)
    return TriangleObj(StableModule.of(tri.translate), tri.middle, StableModule.of(tri.end),
                       (f"AR({ident})",))


def split_triangle(a: StableModule, b: StableModule = ZERO) -> TriangleObj:
    return TriangleObj(a, a + b, b, ("split",))


def direct_sum(*tris: TriangleObj) -> TriangleObj:
    z, y, x = ZERO, ZERO, ZERO
    for t in tris:
        z, y, x = z + t.z, y + t.y, x + t.x
    return TriangleObj(z, y, x, tuple(p for t in tris for p in t.provenance))


def ladder_compose(sigma1: TriangleObj, sigma2: TriangleObj) -> TriangleObj:
    """Glue N1 -> L1+N2 -> L2 and M1 -> N1+M2 -> N2 into M1 -> L1+M2 -> L2.

    The shared objects are N1 = sigma1.z and N2 = sigma2.x; they must be
    direct summands of sigma2.y and sigma1.y respectively.
    """
    n1, n2 = sigma1.z, sigma2.x
    if not sigma1.y.contains(n2):
        raise LadderError(f"{n2} is not a summand of the middle term {sigma1.y}")
    if not sigma2.y.contains(n1):
        raise LadderError(f"{n1} is not a summand of the middle term {sigma2.y}")
    l1 = sigma1.y - n2
    m2 = sigma2.y - n1
    return TriangleObj(sigma2.z, l1 + m2, sigma1.x,
                       (("ladder", sigma1.objects(), sigma2.objects()),))


# ---------------------------------------------------------------- expressions

@dataclass(frozen=True)
class ARExpression:
    """Coefficients c(X) of [N] - [M] = sum c(X) ([X] + [tau X] - [E_X])."""

    coefficients: dict

    def as_dict(self) -> dict:
        return {k: v for k, v in sorted(self.coefficients.items(), key=lambda kv: sort_key(kv[0]))}


def _sigma_self(spec: SingularitySpec, table: HomTable, ident: str) -> int:
    """delta of the AR triangle ending at X, evaluated at X (1 or 2 here)."""
    return ar_triangle_obj(spec, ident).delta(table)[ident]


def _quotient(spec, table, dMN: DeltaFunction, ident: str) -> int:
    num, den = dMN[ident], _sigma_self(spec, table, ident)
    if num % den:
        raise ArithmeticError(f"delta({ident}) = {num} is not divisible by {den}")
    return num // den


def irredundant_expression(spec: SingularitySpec, M: StableModule, N: StableModule,
                           table: HomTable | None = None) -> Optional[ARExpression]:
    """The irredundant AR expression of [N] - [M], or None when M is not below N."""
    r = knoerrer_reduce(spec)
    if r.d != 1:
        raise PreconditionError("irredundant expressions need reduced dimension 1")
    table = table or hom_table(r)
    pres = k0_presentation(r)
    check_module(r, M)
    check_module(r, N)
    if not (leq_hom(table, M, N) and same_class(pres, M, N)):
        return None
    dMN = delta(table, M, N)
    coeffs: dict[str, int] = {}
    seen: set[str] = set()
    for x in classify(r):
        if x in seen:
            continue
        seen.update({x, syzygy(r, x)})
        c = _quotient(r, table, dMN, x)
        if c:
            coeffs[x] = c
    # [N] - [M] must equal the combination exactly in the free group
    lhs: dict[str, int] = {}
    for ident in set(M) | set(N):
        lhs[ident] = N.mu(ident) - M.mu(ident)
    rhs: dict[str, int] = {}
    for x, c in coeffs.items():
        for ident, v in ar_triangle_obj(r, x).relation().items():
            rhs[ident] = rhs.get(ident, 0) + c * v
    if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
        raise WitnessError(f"expression {coeffs} does not reproduce [N]-[M] = {lhs}")
    return ARExpression(coeffs)


# ---------------------------------------------------------------- key lemma

@dataclass(frozen=True)
class TraceStep:
    kind: str
    glued: str | None
    before: TriangleObj
    after: TriangleObj
    delta_before: dict
    delta_after: dict
    note: str = ""

    def as_dict(self) -> dict:
        return {"kind": self.kind, "glued": self.glued, "note": self.note,
                "before": list(self.before.objects()), "after": list(self.after.objects()),
                "delta_before": dict(sorted(self.delta_before.items(), key=lambda kv: sort_key(kv[0]))),
                "delta_after": dict(sorted(self.delta_after.items(), key=lambda kv: sort_key(kv[0])))}


def _clean(d: DeltaFunction) -> dict:
    return {k: v for k, v in d.items() if v}


def key_lemma_transform(spec: SingularitySpec, sigma: TriangleObj, target: DeltaFunction,
                        table: HomTable | None = None, trace: list | None = None) -> TriangleObj:
    """Splice AR triangles into the middle term until delta agrees with target there."""
    r = knoerrer_reduce(spec)
    table = table or hom_table(r)
    trace = trace if trace is not None else []
    ids = classify(r)
    current = sigma
    d_cur = current.delta(table)
    if not d_cur <= target:
        raise PreconditionError("the starting triangle's delta exceeds the target")
    cap = max(1, sum(max(v, 0) for v in target.values()) * len(ids))
    for _ in range(cap + 1):
        w1 = next((w for w in current.y if d_cur[w] < target[w]), None)
        if w1 is None:
            return current
        ar = ar_triangle_obj(r, w1)
        u = current.z
        psi = TriangleObj(u + ar.z, ar.y + u, ar.x, (f"pullback along AR({w1})",))
        new = ladder_compose(current, psi)
        d_new = new.delta(table)
        if d_new != d_cur + ar.delta(table):
            raise WitnessError(f"delta additivity fails when gluing AR({w1})", trace)
        if not d_new <= target:
            raise WitnessError(f"gluing AR({w1}) overshoots the target delta", trace)
        trace.append(TraceStep("key_lemma", w1, current, new, _clean(d_cur), _clean(d_new)))
        current, d_cur = new, d_new
    raise WitnessError("key lemma iteration cap exceeded", trace)


# ---------------------------------------------------------------- witnesses

@dataclass
class Witness:
    """Certificate Z -> M + Z -> N -> Z[1] of a single stable degeneration."""

    m: StableModule
    n: StableModule
    z: StableModule
    triangle: TriangleObj
    common: StableModule = ZERO
    r: dict = field(default_factory=dict)
    chosen: tuple = ()
    n1: StableModule = ZERO
    n2: StableModule = ZERO
    n3: StableModule = ZERO
    phi: TriangleObj | None = None
    trace: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "M": self.m.render(), "N": self.n.render(), "Z": self.z.render(),
            "triangle": list(self.triangle.objects()),
            "common_summand": self.common.render(),
            "r": dict(sorted(self.r.items(), key=lambda kv: sort_key(kv[0]))),
            "G": list(self.chosen),
            "N1": self.n1.render(), "N2": self.n2.render(), "N3": self.n3.render(),
            "Phi": list(self.phi.objects()) if self.phi else None,
            "trace": [s.as_dict() if isinstance(s, TraceStep) else s for s in self.trace],
        }


def witness(spec: SingularitySpec, M: StableModule, N: StableModule,
            table: HomTable | None = None) -> Optional[Witness]:
    """Build Z and the triangle Z -> M+Z -> N -> Z[1], or None when M is not below N."""
    r = knoerrer_reduce(spec)
    if r.d != 1:
        raise PreconditionError("witness construction needs reduced dimension 1")
    table = table or hom_table(r)
    pres = k0_presentation(r)
    check_module(r, M)
    check_module(r, N)
    if not (leq_hom(table, M, N) and same_class(pres, M, N)):
        return None
    common = M.common(N)
    m, n = M - common, N - common
    trace: list = []
    if not m and not n:
        return Witness(M, N, ZERO, TriangleObj(ZERO, M, N, ("identity",)), common, trace=trace)

    target = delta(table, m, n)
    rvals: dict[str, int] = {}
    for x in classify(r):
        rv = min(_quotient(r, table, target, x), n.mu(x))
        if rv > 0:
            rvals[x] = rv
    chosen = []
    for x in classify(r):
        if x not in rvals:
            continue
        y = syzygy(r, x)
        if y == x or y not in rvals:
            chosen.append(x)
        elif rvals[y] < rvals[x]:
            chosen.append(x)
        elif rvals[y] == rvals[x] and sort_key(x) < sort_key(y):
            chosen.append(x)
            trace.append({"kind": "tie_break", "chose": x, "over": y, "r": rvals[x]})
    n1 = StableModule({x: rvals[x] for x in chosen})
    n2 = StableModule({x: n.mu(x) - rvals[x] for x in chosen})
    n3 = StableModule({x: k for x, k in n.items() if x not in chosen})
    if n1 + n2 + n3 != n:
        raise WitnessError("N1 + N2 + N3 does not recover N", trace)
    sigma = direct_sum(*[ar_triangle_obj(r, x) for x in chosen for _ in range(rvals[x])])
    trace.append({"kind": "start", "triangle": list(sigma.objects()),
                  "delta": _clean(sigma.delta(table))})
    phi = key_lemma_transform(r, sigma, target, table, trace)
    if phi.delta(table) != target:
        raise WitnessError("final triangle delta differs from delta_{M,N}", trace)
    z, y = phi.z, phi.y
    if m + z != n2 + n3 + y:
        raise WitnessError(f"M+Z = {m + z} but N2+N3+Y = {n2 + n3 + y}", trace)
    z_full = z
    tri = TriangleObj(z_full, M + z_full, N, ("witness",))
    w = Witness(M, N, z_full, tri, common, rvals, tuple(chosen), n1, n2, n3, phi, trace)
    problems = validate_witness(r, w, table)
    if problems:
        raise WitnessError("; ".join(problems), trace)
    return w


def validate_witness(spec: SingularitySpec, w: Witness, table: HomTable | None = None) -> list[str]:
    """Re-check every recorded step; returns a list of problems (empty when valid)."""
    r = knoerrer_reduce(spec)
    table = table or hom_table(r)
    problems = []
    if w.triangle.y != w.m + w.z or w.triangle.x != w.n or w.triangle.z != w.z:
        problems.append("triangle is not of the form Z -> M+Z -> N")
    target = delta(table, w.m, w.n)
    if w.triangle.delta(table) != target:
        problems.append("triangle delta differs from delta_{M,N}")
    for step in w.trace:
        if not isinstance(step, TraceStep):
            continue
        ar = ar_triangle_obj(r, step.glued)
        rel_before, rel_after = step.before.relation(), step.after.relation()
        summed = dict(rel_before)
        for k, v in ar.relation().items():
            summed[k] = summed.get(k, 0) + v
        if {k: v for k, v in summed.items() if v} != rel_after:
            problems.append(f"free-group additivity fails at AR({step.glued})")
        if step.after.delta(table) != step.before.delta(table) + ar.delta(table):
            problems.append(f"delta additivity fails at AR({step.glued})")
    if w.phi is not None:
        m, n = w.m - w.common, w.n - w.common
        if m + w.phi.z != w.n2 + w.n3 + w.phi.y:
            problems.append("M + Z != N2 + N3 + Y")
        if w.phi.x != w.n1:
            problems.append("Phi does not end at N1")
        if w.phi.delta(table) != delta(table, m, n):
            problems.append("delta_Phi != delta_{M,N}")
    return problems


# ---------------------------------------------------------------- dimension 0

def dimension(module: StableModule) -> int:
    return sum(int(i[1:]) * m for i, m in module.items())


def partition(module: StableModule, free: int, n: int) -> tuple[int, ...]:
    parts = [int(i[1:]) for i, m in module.items() for _ in range(m)] + [n + 1] * free
    return tuple(sorted(parts, reverse=True))


def dominates(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """lam >= mu in dominance order (both partitions of the same integer)."""
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def dominance_decision(spec: SingularitySpec, M: StableModule, N: StableModule) -> dict:
    """Does M + R^p degenerate to N + R^q for some free padding?"""
    n = knoerrer_reduce(spec).n
    dm, dn = dimension(M), dimension(N)
    bound = dm + dn + n + 1
    tried = []
    for p in range(bound + 1):
        rest = dm + p * (n + 1) - dn
        if rest < 0 or rest % (n + 1):
            continue
        q = rest // (n + 1)
        if q > bound:
            break
        lam, mu = partition(M, p, n), partition(N, q, n)
        ok = dominates(lam, mu)
        tried.append({"pad_M": p, "pad_N": q, "partition_M": list(lam), "partition_N": list(mu),
                      "dominates": ok})
        if ok:
            return {"leq": True, "criterion": "dominance", "padding": tried[-1], "tried": len(tried)}
    return {"leq": False, "criterion": "dominance", "tried": tried}


# ---------------------------------------------------------------- decisions

@dataclass
class Decision:
    leq: bool
    certificate: dict
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.leq

    def as_dict(self) -> dict:
        out = {"leq": self.leq, "certificate": dict(self.certificate)}
        if self.witness is not None:
            out["certificate"]["witness"] = self.witness.as_dict()
        return out


def leq_st(spec: SingularitySpec, M: StableModule, N: StableModule,
           with_witness: bool = True, table: HomTable | None = None) -> Decision:
    r = knoerrer_reduce(spec)
    check_module(r, M)
    check_module(r, N)
    if r.d == 0:
        cert = dominance_decision(r, M, N)
        return Decision(cert["leq"], cert)
    table = table or hom_table(r)
    pres = k0_presentation(r)
    hom_ok = leq_hom(table, M, N)
    cls_ok = same_class(pres, M, N)
    cert = {"criterion": "hom+k0", "leq_hom": hom_ok, "same_class": cls_ok,
            "class_M": list(k0_class(pres, M)), "class_N": list(k0_class(pres, N))}
    leq = hom_ok and cls_ok
    w = witness(r, M, N, table) if (leq and with_witness) else None
    return Decision(leq, cert, w)


def hom_k0_decision(spec: SingularitySpec, M: StableModule, N: StableModule) -> bool:
    """The hom-order-plus-K_0 criterion, available in both parities."""
    r = knoerrer_reduce(spec)
    return leq_hom(hom_table(r), M, N) and same_class(k0_presentation(r), M, N)


# ---------------------------------------------------------------- posets

class PosetTooLarge(RuntimeError):
    pass


def relation_graph(spec: SingularitySpec, nodes: list[StableModule],
                   table: HomTable | None = None) -> nx.DiGraph:
    """Directed graph with an edge a -> b whenever a <=_st b, a != b."""
    r = knoerrer_reduce(spec)
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    for a in nodes:
        for b in nodes:
            if a != b and leq_st(r, a, b, with_witness=False, table=table):
                g.add_edge(a, b)
    return g


def hasse(spec: SingularitySpec, max_multiplicity: int,
          k0_class_filter: StableModule | None = None, node_cap: int = 500,
          table: HomTable | None = None) -> nx.DiGraph:
    """Covering relations of <=_st among modules of bounded total multiplicity."""
    r = knoerrer_reduce(spec)
    nodes = all_modules(r, max_multiplicity)
    if k0_class_filter is not None:
        pres = k0_presentation(r)
        target = k0_class(pres, k0_class_filter)
        nodes = [m for m in nodes if k0_class(pres, m) == target]
    if len(nodes) > node_cap:
        raise PosetTooLarge(f"{len(nodes)} nodes exceed the cap of {node_cap}")
    rel = relation_graph(r, nodes, table)
    if not nx.is_directed_acyclic_graph(rel):
        raise WitnessError("decided relation has a cycle; it is not a partial order")
    cover = nx.transitive_reduction(rel)
    out = nx.DiGraph()
    out.add_nodes_from(nodes)
    out.add_edges_from(sorted(cover.edges, key=lambda e: (nodes.index(e[0]), nodes.index(e[1]))))
    return out


def to_dot(graph: nx.DiGraph, name: str = "hasse") -> str:
    nodes = list(graph.nodes)
    ids = {m: f"n{i}" for i, m in enumerate(nodes)}
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for m in nodes:
        lines.append(f'  {ids[m]} [label="{m.render()}"];')
    for a, b in graph.edges:
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class Chain:
    modules: list
    steps: list

    def as_dict(self) -> dict:
        return {"modules": [m.render() for m in self.modules], "steps": self.steps}


def chain(spec: SingularitySpec, M: StableModule, N: StableModule,
          table: HomTable | None = None) -> Optional[Chain]:
    """A path of covering degenerations from M to N, each step certified."""
    r = knoerrer_reduce(spec)
    if r.d == 1:
        table = table or hom_table(r)
    if not leq_st(r, M, N, with_witness=False, table=table):
        return None
    if M == N:
        return Chain([M], [])
    bound = max(M.total, N.total)
    pres = k0_presentation(r)
    cls = k0_class(pres, M)
    nodes = [L for L in all_modules(r, bound) if k0_class(pres, L) == cls
             and leq_st(r, M, L, with_witness=False, table=table)
             and leq_st(r, L, N, with_witness=False, table=table)]
    for extra in (M, N):
        if extra not in nodes:
            nodes.append(extra)
    cover = nx.transitive_reduction(relation_graph(r, nodes, table))
    order = {m: i for i, m in enumerate(nodes)}
    prev = {M: None}
    queue = deque([M])
    while queue:
        cur = queue.popleft()
        if cur == N:
            break
        for nxt in sorted(cover.successors(cur), key=order.get):
            if nxt not in prev:
                prev[nxt] = cur
                queue.append(nxt)
    path = [N]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    steps = []
    for a, b in zip(path, path[1:]):
        d = leq_st(r, a, b, table=table)
        steps.append({"from": a.render(), "to": b.render(), **d.as_dict()})
    return Chain(path, steps)
