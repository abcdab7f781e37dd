import pytest
from hypothesis import given, strategies as st

from cm_degen.catalog import (
    DomainError,
    ExprSyntaxError,
    SingularitySpec,
    StableModule,
    all_modules,
    classify,
    knoerrer_reduce,
    module_syzygy,
    parse_module,
    shift,
    syzygy,
    tau,
)


def test_classify_small_rings():
    assert classify(SingularitySpec(1, 1)) == ["N+", "N-"]
    assert classify(SingularitySpec(4, 1)) == ["I1", "I2"]
    assert classify(SingularitySpec(5, 1)) == ["I1", "I2", "N+", "N-"]
    assert classify(SingularitySpec(3, 0)) == ["M1", "M2", "M3"]


def test_knoerrer_reduction_keeps_parity():
    assert knoerrer_reduce(SingularitySpec(4, 5)) == SingularitySpec(4, 1)
    assert knoerrer_reduce(SingularitySpec(2, 2)) == SingularitySpec(2, 0)
    assert classify(SingularitySpec(5, 3)) == classify(SingularitySpec(5, 1))


def test_spec_parse_and_errors():
    assert SingularitySpec.parse("A:5:1") == SingularitySpec(5, 1)
    assert str(SingularitySpec(3, 0)) == "A:3:0"
    for bad in ("A:0:1", "D:4:1", "A:3", "A:x:1", "A:3:-1"):
        with pytest.raises(ValueError):
            SingularitySpec.parse(bad)


def test_syzygy_action():
    s = SingularitySpec(5, 1)
    assert syzygy(s, "I2") == "I2"
    assert syzygy(s, "N+") == "N-"
    t = SingularitySpec(4, 0)
    assert [syzygy(t, x) for x in classify(t)] == ["M4", "M3", "M2", "M1"]


def test_tau_is_shift_by_dimension():
    s = SingularitySpec(3, 1)
    assert tau(s, "N+") == "N-"
    t = SingularitySpec(3, 0)
    assert all(tau(t, x) == x for x in classify(t))
    assert shift(s, "N+", 2) == "N+"


def test_parse_examples():
    s = SingularitySpec(3, 1)
    assert parse_module("2*I1 + N+", s) == StableModule({"I1": 2, "N+": 1})
    assert parse_module("0") == StableModule()
    assert parse_module("I1 + I1") == StableModule({"I1": 2})
    with pytest.raises(DomainError):
        parse_module("I3", SingularitySpec(4, 1))


def test_parse_error_positions():
    with pytest.raises(ExprSyntaxError) as exc:
        parse_module("I1 ++ N+")
    assert exc.value.position == 4
    with pytest.raises(ExprSyntaxError) as exc:
        parse_module("2*I1 + ")
    assert exc.value.position == 6


def test_module_arithmetic():
    a = StableModule.of("I1", "N+")
    b = StableModule.of("I1")
    assert a - b == StableModule.of("N+")
    assert (a + b).total == 3
    assert a.common(StableModule.of("I1", "I1")) == b
    with pytest.raises(ValueError):
        b - a


def test_all_modules_counts():
    # multisets of size <= 3 over 4 ids: C(4+3, 3)
    assert len(all_modules(SingularitySpec(5, 1), 3)) == 35
    assert all_modules(SingularitySpec(5, 1), 0) == [StableModule()]


_spec5 = SingularitySpec(5, 1)


@given(st.dictionaries(st.sampled_from(classify(_spec5)), st.integers(1, 4), max_size=4))
def test_render_round_trip(counts):
    m = StableModule(counts)
    assert parse_module(m.render(), _spec5) == m


@given(st.dictionaries(st.sampled_from(classify(_spec5)), st.integers(1, 4), max_size=4))
def test_syzygy_is_an_involution_on_modules(counts):
    m = StableModule(counts)
    assert module_syzygy(_spec5, module_syzygy(_spec5, m)) == m
    assert module_syzygy(_spec5, m).total == m.total
