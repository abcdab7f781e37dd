from hypothesis import given, strategies as st

from cm_degen.catalog import SingularitySpec, StableModule, classify
from cm_degen.fields import QI, PrimeField
from cm_degen.oracle import defining_poly, mf_of, mf_of_module
from cm_degen.poly import Poly, PolyMatrix

terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), max_size=4)


def _poly(t):
    return Poly({k: QI.gauss(v) for k, v in t.items() if v}, QI)


@given(terms, terms, terms)
def test_poly_ring_laws(a, b, c):
    p, q, r = _poly(a), _poly(b), _poly(c)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly.zero(QI)


def test_matrix_factorizations_multiply_to_f():
    for field in (QI, PrimeField(13)):
        for n in range(1, 8):
            spec = SingularitySpec(n, 1)
            f = defining_poly(n, field)
            for x in classify(spec):
                mf = mf_of(spec, x, field)
                eye = PolyMatrix.scalar(mf.size, f)
                assert mf.phi @ mf.psi == eye
                assert mf.psi @ mf.phi == eye


def test_direct_sum_sizes():
    spec = SingularitySpec(5, 1)
    mf = mf_of_module(spec, StableModule({"I1": 2, "N+": 1}))
    assert mf.size == 2 * mf_of(spec, "I1").size + mf_of(spec, "N+").size
