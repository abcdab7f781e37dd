import pytest

from cm_degen.catalog import SingularitySpec, StableModule, classify
from cm_degen.fields import PrimeField
from cm_degen.oracle import hom_table, stable_hom_certified, stable_hom_dim


def expected_odd_dim(n, u, x):
    """Closed forms for A_n in dimension one, used as an independent check."""
    if u[0] == "I" and x[0] == "I":
        return 2 * min(int(u[1:]), int(x[1:]))
    if u[0] == "I":
        return int(u[1:])
    if x[0] == "I":
        return int(x[1:])
    return (n + 1) // 2 if u == x else 0


def expected_even_dim(n, u, x):
    """k[x]/(x^{n+1}): Hom(M_i, M_j) has dimension min(i, j); maps through the
    free module account for max(0, i + j - n - 1) of them."""
    i, j = int(u[1:]), int(x[1:])
    return min(i, j) - max(0, i + j - n - 1)


@pytest.mark.parametrize("n", range(1, 10))
def test_dimension_one_table(n):
    t = hom_table(SingularitySpec(n, 1))
    for u in t.labels:
        for x in t.labels:
            assert t[u, x] == expected_odd_dim(n, u, x), (u, x)


@pytest.mark.parametrize("n", range(1, 10))
def test_dimension_zero_table(n):
    t = hom_table(SingularitySpec(n, 0))
    for u in t.labels:
        for x in t.labels:
            assert t[u, x] == expected_even_dim(n, u, x), (u, x)


def test_frozen_small_tables():
    assert hom_table(SingularitySpec(2, 0)).dims == ((1, 1), (1, 1))
    assert hom_table(SingularitySpec(1, 1)).dims == ((1, 0), (0, 1))
    assert hom_table(SingularitySpec(3, 1)).dims == ((2, 1, 1), (1, 2, 0), (1, 0, 2))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_prime_field_agrees(n):
    spec = SingularitySpec(n, 1)
    assert hom_table(spec, field=PrimeField(13)).dims == hom_table(spec).dims


def test_fixed_degree_bound_matches_auto():
    spec = SingularitySpec(5, 1)
    assert hom_table(spec, degree_bound=24).dims == hom_table(spec).dims


def test_direct_sums_are_additive():
    spec = SingularitySpec(5, 1)
    t = hom_table(spec)
    M = StableModule({"I1": 1, "N+": 1})
    N = StableModule({"I2": 1, "N-": 2})
    expect = sum(a * b * t[u, x] for u, a in M.items() for x, b in N.items())
    assert stable_hom_dim(spec, M, N) == expect


def test_certificates_record_doubling():
    dim, cert = stable_hom_certified(SingularitySpec(3, 1), StableModule.of("I1"), StableModule.of("I1"))
    assert dim == 2
    rounds = cert.as_dict()["rounds"]
    assert rounds[0]["degree_bound"] == 8
    assert rounds[-1]["dim"] == rounds[-2]["dim"] == 2


def test_zero_module_has_no_maps():
    spec = SingularitySpec(4, 1)
    for x in classify(spec):
        assert stable_hom_dim(spec, StableModule(), StableModule.of(x)) == 0
