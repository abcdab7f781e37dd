"""Reproducibility checks packaged as callables returning Reports.

Every failing Report carries a counterexample payload (ring, module pair,
what each side decided, plus the hom table) that `replay` re-evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ar_quiver import mesh_violations, star_condition
from .catalog import (
    DomainError,
    SingularitySpec,
    StableModule,
    all_modules,
    classify,
    knoerrer_reduce,
    parse_module,
)
from .degen import (
    WitnessError,
    dominance_decision,
    hom_k0_decision,
    leq_st,
    validate_witness,
)
from .homtab import MeshRelationError, cd_consequence, hom_vector, leq_hom
from .k0 import k0_class, k0_presentation, same_class
from .oracle import AUTO, hom_table, stable_hom_certified


@dataclass
class Report:
    check: str
    params: dict
    status: str = "pass"
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, counterexample: dict, **details) -> "Report":
        if self.counterexample is None:
            self.counterexample = counterexample
        self.status = "fail"
        self.details.update(details)
        return self

    def as_dict(self) -> dict:
        return {"check": self.check, "params": dict(self.params), "status": self.status,
                "counterexample": self.counterexample, "details": self.details}


def _spec(n: int, d: int) -> SingularitySpec:
    return SingularitySpec(n, d)


def _payload(spec: SingularitySpec, M: StableModule, N: StableModule, **extra) -> dict:
    r = knoerrer_reduce(spec)
    out = {"ring": str(spec), "M": M.render(), "N": N.render()}
    out.update(extra)
    try:
        out["hom_table"] = hom_table(r).as_dict()
    except MeshRelationError:
        out["hom_table"] = None
    return out


# ---------------------------------------------------------------- displayed chains

def displayed_chains(n: int) -> list[list[StableModule]]:
    """The chains asserted for A_n in dimension one."""
    if n % 2 == 0:
        return [[StableModule()] + [StableModule.of(f"I{i}") for i in range(1, n // 2 + 1)]]
    m = (n - 1) // 2
    both = StableModule.of("N+", "N-")
    out = [[StableModule()] + [StableModule.of(f"I{i}") for i in range(1, m + 1)] + [both]]
    for sign in ("N+", "N-"):
        base = StableModule.of(sign)
        out.append([base] + [base + StableModule.of(f"I{i}") for i in range(1, m + 1)] + [base + both])
    return out


def verify_theorem_odd(n: int, bound: int | None = None) -> Report:
    """Every displayed step decides true and carries a witness that re-validates.

    With a bound, each step is also tagged with whether it is a cover in the
    poset of modules of total multiplicity <= bound (informational only).
    """
    spec = _spec(n, 1)
    rep = Report("theorem_odd", {"n": n, "d": 1, "bound": bound})
    table = hom_table(spec)
    steps = []
    for ch in displayed_chains(n):
        for a, b in zip(ch, ch[1:]):
            row = {"M": a.render(), "N": b.render()}
            try:
                dec = leq_st(spec, a, b, table=table)
            except WitnessError as exc:
                rep.fail(_payload(spec, a, b, error=str(exc), trace=_jsonable_trace(exc.trace)))
                row["leq"] = None
                steps.append(row)
                continue
            row["leq"] = dec.leq
            problems = validate_witness(spec, dec.witness, table) if dec.witness else ["no witness"]
            if not dec.leq or problems:
                rep.fail(_payload(spec, a, b, decided=dec.leq, problems=problems))
            else:
                row["Z"] = dec.witness.z.render()
                row["key_lemma_steps"] = sum(1 for s in dec.witness.trace if not isinstance(s, dict))
            if bound is not None and max(a.total, b.total) <= bound:
                row["cover"] = _is_cover(spec, a, b, bound)
            steps.append(row)
    rep.details["steps"] = steps
    return rep


def _is_cover(spec, a, b, bound) -> bool:
    for L in all_modules(spec, bound):
        if L in (a, b):
            continue
        if leq_st(spec, a, L, with_witness=False) and leq_st(spec, L, b, with_witness=False):
            return False
    return True


def _jsonable_trace(trace) -> list:
    return [s if isinstance(s, dict) else s.as_dict() for s in trace or []]


# ---------------------------------------------------------------- exhaustive scans

def verify_equivalence(n: int, d: int, bound: int = 3) -> Report:
    """Exhaustive pair scan.

    Reduced dimension 1: the hom+K0 criterion agrees with witness-backed
    degeneration on every pair.  Reduced dimension 0: the dominance oracle
    agrees with the hom+K0 criterion on every pair.  In both cases the
    equal-hom-vector consequence M + Omega M = N + Omega N is checked as well.
    """
    spec = _spec(n, d)
    r = knoerrer_reduce(spec)
    rep = Report("equivalence", {"n": n, "d": d, "bound": bound})
    table = hom_table(r)
    pres = k0_presentation(r)
    mods = all_modules(r, bound)
    counts = {"pairs": 0, "true": 0, "disagreements": 0, "cd_pairs": 0, "cd_violations": 0}
    first_cd = None
    for a in mods:
        for b in mods:
            counts["pairs"] += 1
            criterion = leq_hom(table, a, b) and same_class(pres, a, b)
            cd = cd_consequence(table, a, b)
            if cd.status != "not_applicable":
                counts["cd_pairs"] += 1
                if cd.status == "violated":
                    counts["cd_violations"] += 1
                    first_cd = first_cd or _payload(spec, a, b, cd=cd.as_dict())
            if r.d == 1:
                got, extra = _witness_backed(r, a, b, table)
            else:
                cert = dominance_decision(r, a, b)
                got, extra = cert["leq"], {"dominance": cert}
            counts["true"] += bool(criterion)
            if got != criterion:
                counts["disagreements"] += 1
                rep.fail(_payload(spec, a, b, hom_k0=criterion, other=got,
                                  other_name="witness" if r.d == 1 else "dominance",
                                  hom_vector_M=list(hom_vector(table, a)),
                                  hom_vector_N=list(hom_vector(table, b)),
                                  class_M=list(k0_class(pres, a)), class_N=list(k0_class(pres, b)),
                                  **extra))
    if first_cd is not None:
        rep.fail(first_cd)
    rep.details.update(counts)
    return rep


def _witness_backed(spec, a, b, table) -> tuple[bool, dict]:
    try:
        dec = leq_st(spec, a, b, table=table)
    except WitnessError as exc:
        return False, {"error": str(exc), "trace": _jsonable_trace(exc.trace)}
    if not dec.leq:
        return False, {}
    problems = validate_witness(spec, dec.witness, table) if dec.witness else ["no witness"]
    return (not problems), ({"problems": problems} if problems else {})


def verify_cd(n: int, d: int, bound: int = 3) -> Report:
    """Equal hom vectors force M + Omega M = N + Omega N."""
    spec = _spec(n, d)
    r = knoerrer_reduce(spec)
    rep = Report("cd_consequence", {"n": n, "d": d, "bound": bound})
    table = hom_table(r)
    pairs = 0
    for a in all_modules(r, bound):
        for b in all_modules(r, bound):
            res = cd_consequence(table, a, b)
            if res.status == "not_applicable":
                continue
            pairs += 1
            if res.status == "violated":
                rep.fail(_payload(spec, a, b, cd=res.as_dict()))
    rep.details["equal_hom_pairs"] = pairs
    return rep


def verify_partial_order(n: int, d: int, bound: int = 2) -> Report:
    """<=_st is reflexive, antisymmetric and transitive, implies <=_hom and equal classes."""
    spec = _spec(n, d)
    r = knoerrer_reduce(spec)
    rep = Report("partial_order", {"n": n, "d": d, "bound": bound})
    table = hom_table(r)
    pres = k0_presentation(r)
    mods = all_modules(r, bound)
    rel = {(a, b): leq_st(r, a, b, with_witness=False).leq for a in mods for b in mods}
    for a in mods:
        if not rel[a, a]:
            rep.fail(_payload(spec, a, a, property="reflexive"))
        for b in mods:
            if not rel[a, b]:
                continue
            if a != b and rel[b, a]:
                rep.fail(_payload(spec, a, b, property="antisymmetric"))
            if not leq_hom(table, a, b):
                rep.fail(_payload(spec, a, b, property="implies hom order"))
            if not same_class(pres, a, b):
                rep.fail(_payload(spec, a, b, property="implies same class"))
            for c in mods:
                if rel[b, c] and not rel[a, c]:
                    rep.fail(_payload(spec, a, c, property="transitive", via=b.render()))
    rep.details["true_pairs"] = sum(rel.values())
    return rep


# ---------------------------------------------------------------- small checks

def verify_counterexample(n: int = 2, d: int = 0) -> Report:
    """M_1 and M_n have equal hom vectors but are different; <=_st keeps them apart."""
    spec = _spec(n, d)
    r = knoerrer_reduce(spec)
    rep = Report("counterexample", {"n": n, "d": d})
    if r.d != 0 or r.n < 2:
        raise DomainError("the counterexample lives over A_n with even dimension and n >= 2")
    table = hom_table(r)
    a, b = StableModule.of("M1"), StableModule.of(f"M{r.n}")
    ha, hb = hom_vector(table, a), hom_vector(table, b)
    up, down = leq_st(r, a, b).leq, leq_st(r, b, a).leq
    rep.details.update({
        "hom_vector_M1": list(ha), f"hom_vector_M{r.n}": list(hb),
        "cross": [table["M1", f"M{r.n}"], table[f"M{r.n}", "M1"]],
        "hom_order_antisymmetric": not (ha == hb and a != b),
        "st_up": up, "st_down": down,
    })
    if ha != hb or a == b:
        rep.fail(_payload(spec, a, b, reason="hom vectors differ"))
    if r.n == 2 and rep.details["cross"] != [1, 1]:
        rep.fail(_payload(spec, a, b, reason="cross values are not 1"))
    if up and down:
        rep.fail(_payload(spec, a, b, reason="<=_st collapses two different modules"))
    return rep


def verify_mesh(n: int, d: int) -> Report:
    spec = _spec(n, d)
    r = knoerrer_reduce(spec)
    rep = Report("mesh", {"n": n, "d": d})
    labels = classify(r)
    try:
        dims = hom_table(r).dims
    except MeshRelationError as exc:
        # rebuild the raw numbers so the payload shows them
        dims = [[stable_hom_certified(r, StableModule.of(x), StableModule.of(y))[0] for y in labels]
                for x in labels]
        rep.details["error"] = str(exc)
    bad = mesh_violations(r, dims, labels)
    if bad:
        rep.fail({"ring": str(spec), "M": bad[0]["U"], "N": bad[0]["X"], "violations": bad,
                  "hom_table": {"labels": labels, "dims": [list(x) for x in dims]}})
    zero = StableModule()
    if any(stable_hom_certified(r, zero, StableModule.of(x))[0] for x in labels):
        rep.fail({"ring": str(spec), "M": "0", "N": "*", "reason": "zero row is not zero"})
    rep.details["pairs"] = len(labels) ** 2
    return rep


def verify_star(n: int, d: int) -> Report:
    """Shift-invariance of AR relation vectors (informational for reduced dimension 0)."""
    spec = _spec(n, d)
    ok, rows = star_condition(spec)
    rep = Report("star", {"n": n, "d": d})
    rep.details["triangles"] = rows
    if not ok:
        row = next(x for x in rows if not x["holds"])
        rep.fail({"ring": str(spec), "M": row["end"], "N": row["end"], "relation": row["relation"],
                  "shifted": row["shifted"]})
    return rep


def verify_k0(n: int, d: int, bound: int = 2) -> Report:
    """Presentation is consistent and every decided degeneration preserves the class."""
    spec = _spec(n, d)
    r = knoerrer_reduce(spec)
    pres = k0_presentation(r)
    rep = Report("k0", {"n": n, "d": d, "bound": bound})
    rep.details["group"] = pres.describe()
    for rel in pres.relations:
        vec = dict(zip(pres.generators, rel))
        if any(k0_class(pres, StableModule({g: c for g, c in vec.items() if c > 0}))[i]
               != k0_class(pres, StableModule({g: -c for g, c in vec.items() if c < 0}))[i]
               for i in range(len(pres.generators))):
            rep.fail({"ring": str(spec), "M": "*", "N": "*", "relation": vec,
                      "reason": "AR relation is not zero in K_0"})
    mods = all_modules(r, bound)
    for a in mods:
        for b in mods:
            if leq_st(r, a, b, with_witness=False).leq and not same_class(pres, a, b):
                rep.fail(_payload(spec, a, b, reason="degeneration changes the K_0 class"))
    return rep


def _relation(spec: SingularitySpec, bound: int) -> dict:
    mods = all_modules(spec, bound)
    return {(a.render(), b.render()): leq_st(spec, a, b, with_witness=False).leq
            for a in mods for b in mods}


def verify_knoerrer(n: int, d: int, bound: int = 2) -> Report:
    """The decided relation for (n, d) equals the one for (n, d + 2)."""
    lo, hi = _spec(n, d), _spec(n, d + 2)
    rep = Report("knoerrer", {"n": n, "d": d, "bound": bound})
    if classify(lo) != classify(hi):
        rep.fail({"ring": str(hi), "M": "*", "N": "*", "reason": "classifications differ"})
        return rep
    a, b = _relation(lo, bound), _relation(hi, bound)
    for key in a:
        if a[key] != b[key]:
            rep.fail({"ring": str(hi), "M": key[0], "N": key[1], "low": a[key], "high": b[key]})
    rep.details["pairs"] = len(a)
    return rep


def verify_truncation(n: int, d: int = 1) -> Report:
    """Every indecomposable pair stabilizes under AUTO with two agreeing rounds."""
    spec = _spec(n, d)
    r = knoerrer_reduce(spec)
    rep = Report("truncation", {"n": n, "d": d})
    if r.d == 0:
        rep.details["note"] = "artinian oracle needs no degree bound"
        return rep
    table = hom_table(r, AUTO)
    worst = 0
    for key, cert in sorted(table.certificates.items()):
        rounds = cert["rounds"]
        worst = max(worst, rounds[-1]["degree_bound"])
        if len(rounds) < 2 or rounds[-1]["dim"] != rounds[-2]["dim"]:
            x, y = key.split(",")
            rep.fail({"ring": str(spec), "M": x, "N": y, "certificate": cert})
    rep.details["largest_degree_bound"] = worst
    rep.details["pairs"] = len(table.certificates)
    return rep


# ---------------------------------------------------------------- dispatch and replay

CHECKS = ("mesh", "truncation", "k0", "counterexample", "theorem_odd", "equivalence",
          "cd_consequence", "partial_order", "knoerrer", "star")

DEFAULT_CHECKS = ("mesh", "truncation", "k0", "theorem_odd", "equivalence", "cd_consequence",
                  "partial_order", "knoerrer")


def run_check(name: str, spec: SingularitySpec, bound: int = 3) -> Report | None:
    """Run one named check; None when it does not apply to this ring."""
    r = knoerrer_reduce(spec)
    n, d = spec.n, spec.d
    if name == "mesh":
        return verify_mesh(n, d)
    if name == "truncation":
        return verify_truncation(n, d)
    if name == "k0":
        return verify_k0(n, d, min(bound, 2))
    if name == "counterexample":
        return verify_counterexample(n, d) if r.d == 0 and r.n >= 2 else None
    if name == "theorem_odd":
        return verify_theorem_odd(n, bound) if d == 1 else None
    if name == "equivalence":
        return verify_equivalence(n, d, bound)
    if name == "cd_consequence":
        return verify_cd(n, d, bound)
    if name == "partial_order":
        return verify_partial_order(n, d, min(bound, 2))
    if name == "knoerrer":
        return verify_knoerrer(n, d, min(bound, 2))
    if name == "star":
        return verify_star(n, d)
    raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")


def run_all(spec: SingularitySpec, bound: int = 3, checks=None) -> list[Report]:
    names = checks or DEFAULT_CHECKS
    if _counterexample_ring(spec) and checks is None:
        names = names + ("counterexample",)
    out = [rep for rep in (run_check(c, spec, bound) for c in names) if rep is not None]
    return sorted(out, key=lambda rep: rep.check)


def _counterexample_ring(spec: SingularitySpec) -> bool:
    r = knoerrer_reduce(spec)
    return r.d == 0 and r.n >= 2


def replay(report: Report) -> bool:
    """Re-evaluate a failing report's counterexample; True if it still fails."""
    cx = report.counterexample
    if cx is None:
        return False
    spec = SingularitySpec.parse(cx["ring"])
    r = knoerrer_reduce(spec)
    if report.check == "equivalence":
        M, N = parse_module(cx["M"], r), parse_module(cx["N"], r)
        if "cd" in cx:
            return cd_consequence(hom_table(r), M, N).status == "violated"
        other = (_witness_backed(r, M, N, hom_table(r))[0] if r.d == 1
                 else dominance_decision(r, M, N)["leq"])
        return other != hom_k0_decision(r, M, N)
    # every other check is cheap enough to rerun whole
    again = run_check(report.check, spec, report.params.get("bound") or 3)
    return again is not None and not again.passed


__all__ = [
    "Report", "displayed_chains", "verify_theorem_odd", "verify_equivalence", "verify_cd",
    "verify_partial_order", "verify_counterexample", "verify_mesh", "verify_star", "verify_k0",
    "verify_knoerrer", "verify_truncation", "run_check", "run_all", "replay", "CHECKS",
    "DEFAULT_CHECKS",
]
