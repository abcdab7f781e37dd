"""Acceptance criteria, one PASS/FAIL line each.

Run with pytest, or directly as a script to print only the lines.
"""

import time

from cm_degen.catalog import SingularitySpec, StableModule
from cm_degen.k0 import k0_class, k0_presentation
from cm_degen.oracle import hom_table
from cm_degen.verify import (
    replay,
    verify_cd,
    verify_counterexample,
    verify_equivalence,
    verify_k0,
    verify_knoerrer,
    verify_mesh,
    verify_theorem_odd,
    verify_truncation,
)


def _line(number, ok, title, detail, elapsed, limit):
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    timing = f"{elapsed:.1f}s < {limit}s" if in_time else f"{elapsed:.1f}s exceeds {limit}s"
    return status == "PASS", f"{status} C{number} {title}: {detail} [{timing}]"


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for n in (2, 4, 6, 8):
        t = hom_table(SingularitySpec(n, 1))
        bad += [(n, i) for i in range(1, n // 2 + 1) if t[f"I{i}", "I1"] != 2]
    return _line(1, not bad, "hom value [I_i, I_1] = 2, n in {2,4,6,8}",
                 "exact" if not bad else f"wrong at (n, i) = {bad}", time.perf_counter() - t0, 30)


def criterion_2():
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 10, 2):
        t = hom_table(SingularitySpec(n, 1))
        if t["N+", "N-"] or t["N-", "N+"]:
            bad.append(n)
    return _line(2, not bad, "vanishing [N+, N-] = [N-, N+] = 0, odd n <= 9",
                 "exact" if not bad else f"nonzero for n = {bad}", time.perf_counter() - t0, 30)


def criterion_3():
    t0 = time.perf_counter()
    rep = verify_counterexample(2, 0)
    d = rep.details
    ok = (rep.passed and d["cross"] == [1, 1] and d["hom_vector_M1"] == d["hom_vector_M2"]
          and d["hom_order_antisymmetric"] is False)
    return _line(3, ok, "counterexample A_2, d=0",
                 f"hom vectors {d['hom_vector_M1']} = {d['hom_vector_M2']}, cross {d['cross']}, "
                 f"hom order antisymmetric: {d['hom_order_antisymmetric']}",
                 time.perf_counter() - t0, 5)


def criterion_4():
    t0 = time.perf_counter()
    failed, steps = [], 0
    for n in range(1, 10):
        rep = verify_theorem_odd(n)
        steps += len(rep.details["steps"])
        if not rep.passed:
            failed.append((n, rep.counterexample["M"], rep.counterexample["N"]))
    return _line(4, not failed, "displayed chains, n <= 9, witnesses re-validate",
                 f"{steps} steps" if not failed else f"failing steps {failed}", time.perf_counter() - t0, 120)


def criterion_5():
    t0 = time.perf_counter()
    pairs = disagreements = 0
    first = None
    for n in range(1, 8):
        rep = verify_equivalence(n, 1, 3)
        pairs += rep.details["pairs"]
        disagreements += rep.details["disagreements"]
        if rep.details["disagreements"] and first is None:
            first = rep.counterexample
    detail = f"{pairs} pairs, {disagreements} discrepancies"
    if first:
        detail += f"; first {first['ring']} {first['M']} vs {first['N']}"
    return _line(5, disagreements == 0, "order equivalence scan d=1, n <= 7, multiplicity <= 3",
                 detail, time.perf_counter() - t0, 600)


def criterion_6():
    t0 = time.perf_counter()
    pairs = disagreements = 0
    first = None
    for n in range(1, 7):
        rep = verify_equivalence(n, 0, 3)
        pairs += rep.details["pairs"]
        disagreements += rep.details["disagreements"]
        if rep.details["disagreements"] and first is None:
            first = rep
    detail = f"{pairs} pairs, {disagreements} disagreements"
    if first is not None:
        cx = first.counterexample
        detail += (f"; counterexample {cx['ring']} M={cx['M']} N={cx['N']}: hom+K0 says {cx['hom_k0']}, "
                   f"dominance says {cx['other']}, replay reproduces: {replay(first)}")
    return _line(6, disagreements == 0, "cross-oracle scan d=0, n <= 6, multiplicity <= 3",
                 detail, time.perf_counter() - t0, 600)


def criterion_7():
    t0 = time.perf_counter()
    failed = [(n, d) for n in range(1, 10) for d in (0, 1) if not verify_mesh(n, d).passed]
    return _line(7, not failed, "mesh relation on the oracle table, n <= 9, d in {0,1}",
                 "all (U, X) pairs" if not failed else f"fails for {failed}", time.perf_counter() - t0, 120)


def criterion_8():
    t0 = time.perf_counter()
    scans = [(n, 1) for n in range(1, 8)] + [(n, 0) for n in range(1, 7)]
    checked, failed = 0, []
    for n, d in scans:
        rep = verify_cd(n, d, 3)
        checked += rep.details["equal_hom_pairs"]
        if not rep.passed:
            failed.append(rep.counterexample)
    detail = f"{checked} equal-hom-vector pairs" if not failed else \
        f"violated by {failed[0]['ring']} {failed[0]['M']} vs {failed[0]['N']}"
    return _line(8, not failed, "M + Omega M = N + Omega N for equal hom vectors", detail,
                 time.perf_counter() - t0, 600)


def criterion_9():
    t0 = time.perf_counter()
    p1 = k0_presentation(SingularitySpec(1, 1))
    p2 = k0_presentation(SingularitySpec(2, 0))
    ok1 = p1.describe() == "Z" and k0_class(p1, StableModule.of("N+", "N-")) == k0_class(p1, StableModule())
    ok2 = p2.describe() == "Z/3" and k0_class(p2, StableModule.of("M2")) == k0_class(p2, StableModule({"M1": 2}))
    scans = [(n, 1) for n in range(1, 8)] + [(n, 0) for n in range(1, 7)]
    bad = [(n, d) for n, d in scans if not verify_k0(n, d, 2).passed]
    return _line(9, ok1 and ok2 and not bad, "K_0 sanity",
                 f"A:1:1 = {p1.describe()}, A:2:0 = {p2.describe()}, class preserved on decided pairs"
                 + (f"; fails for {bad}" if bad else ""), time.perf_counter() - t0, 10)


def criterion_10():
    t0 = time.perf_counter()
    failed = [(n, d) for n in range(1, 6) for d in (0, 1) if not verify_knoerrer(n, d, 2).passed]
    return _line(10, not failed, "Knoerrer invariance (n, d) vs (n, d+2), n <= 5, multiplicity <= 2",
                 "identical relations" if not failed else f"differs for {failed}", time.perf_counter() - t0, 120)


def criterion_11():
    t0 = time.perf_counter()
    worst, failed = 0, []
    for n in range(1, 10):
        rep = verify_truncation(n, 1)
        worst = max(worst, rep.details["largest_degree_bound"])
        if not rep.passed:
            failed.append(n)
    return _line(11, not failed, "AUTO degree bound stabilizes, n <= 9",
                 f"largest bound used {worst}" if not failed else f"unstable for n = {failed}",
                 time.perf_counter() - t0, 120)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _check(fn, acceptance_line):
    ok, line = fn()
    acceptance_line(line)
    assert ok, line


def test_c01_hom_values(acceptance_line):
    _check(criterion_1, acceptance_line)


def test_c02_vanishing(acceptance_line):
    _check(criterion_2, acceptance_line)


def test_c03_counterexample(acceptance_line):
    _check(criterion_3, acceptance_line)


def test_c04_displayed_chains(acceptance_line):
    _check(criterion_4, acceptance_line)


def test_c05_equivalence_scan(acceptance_line):
    _check(criterion_5, acceptance_line)


def test_c06_cross_oracle_scan(acceptance_line):
    _check(criterion_6, acceptance_line)


def test_c07_mesh(acceptance_line):
    _check(criterion_7, acceptance_line)


def test_c08_cd_consequence(acceptance_line):
    _check(criterion_8, acceptance_line)


def test_c09_k0(acceptance_line):
    _check(criterion_9, acceptance_line)


def test_c10_knoerrer(acceptance_line):
    _check(criterion_10, acceptance_line)


def test_c11_truncation(acceptance_line):
    _check(criterion_11, acceptance_line)


if __name__ == "__main__":
    for fn in CRITERIA:
        print(fn()[1])
