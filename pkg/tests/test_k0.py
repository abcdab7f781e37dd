import pytest
import sympy

from cm_degen.catalog import SingularitySpec, StableModule
from cm_degen.k0 import in_relation_lattice, k0_class, k0_presentation, same_class


def test_frozen_groups():
    assert k0_presentation(SingularitySpec(1, 1)).describe() == "Z"
    assert k0_presentation(SingularitySpec(2, 1)).describe() == "0"
    assert k0_presentation(SingularitySpec(2, 0)).describe() == "Z/3"
    assert k0_presentation(SingularitySpec(3, 0)).describe() == "Z/4"
    for n in (3, 5, 7):
        assert k0_presentation(SingularitySpec(n, 1)).describe() == "Z"


@pytest.mark.parametrize("n", range(1, 9))
def test_order_matches_determinant(n):
    # independent: a square relation matrix of full rank presents a group of order |det|
    pres = k0_presentation(SingularitySpec(n, 0))
    det = abs(sympy.Matrix(pres.relations).det())
    order = 1
    for d in pres.diagonal:
        order *= d
    assert det == order == n + 1


def test_classes():
    p = k0_presentation(SingularitySpec(1, 1))
    assert same_class(p, StableModule.of("N+", "N-"), StableModule())
    assert not same_class(p, StableModule.of("N+"), StableModule.of("N-"))
    q = k0_presentation(SingularitySpec(2, 0))
    assert same_class(q, StableModule.of("M2"), StableModule({"M1": 2}))
    assert not same_class(q, StableModule.of("M2"), StableModule.of("M1"))


def test_relation_lattice():
    p = k0_presentation(SingularitySpec(5, 1))
    for row in p.relations:
        assert in_relation_lattice(p, dict(zip(p.generators, row)))
    assert not in_relation_lattice(p, {"N+": 1})
    assert k0_class(p, StableModule.of("I1")) == k0_class(p, StableModule())
