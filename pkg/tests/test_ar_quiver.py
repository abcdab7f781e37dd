import pytest

from cm_degen.ar_quiver import ar_triangle, mesh_violations, quiver, star_condition
from cm_degen.catalog import SingularitySpec, StableModule, classify
from cm_degen.oracle import hom_table


def test_branch_vertex_n3():
    t = ar_triangle(SingularitySpec(3, 1), "I1")
    assert t.translate == "I1"
    assert t.middle == StableModule.of("N+", "N-")
    n = ar_triangle(SingularitySpec(3, 1), "N+")
    assert n.translate == "N-" and n.middle == StableModule.of("I1")


def test_even_end_loops():
    t = ar_triangle(SingularitySpec(4, 1), "I2")
    assert t.middle == StableModule({"I1": 1, "I2": 1})


def test_dimension_zero_mesh():
    t = ar_triangle(SingularitySpec(3, 0), "M2")
    assert t.translate == "M2"
    assert t.middle == StableModule.of("M1", "M3")


def test_n1_middle_is_zero():
    assert ar_triangle(SingularitySpec(1, 1), "N+").middle == StableModule()


@pytest.mark.parametrize("n", range(1, 10))
@pytest.mark.parametrize("d", [0, 1])
def test_mesh_relation_on_oracle(n, d):
    spec = SingularitySpec(n, d)
    t = hom_table(spec)
    assert mesh_violations(spec, t.dims, t.labels) == []


def test_mesh_detects_tampering():
    spec = SingularitySpec(3, 1)
    t = hom_table(spec)
    dims = [list(r) for r in t.dims]
    dims[0][0] += 1
    assert mesh_violations(spec, dims, t.labels)


def test_star_condition():
    for n in range(1, 8):
        assert star_condition(SingularitySpec(n, 1))[0]
    # in dimension zero the shift reflects the A_n line, so relations move
    ok, rows = star_condition(SingularitySpec(3, 0))
    assert not ok
    assert star_condition(SingularitySpec(1, 0))[0]


def test_quiver_covers_every_id():
    spec = SingularitySpec(6, 1)
    assert [t.end for t in quiver(spec)] == classify(spec)
