import math

import pytest

import levyhit as lh


def test_symbols():
    st = lh.SymbolSpec.stable(1.5)
    assert st.name == "stable(1.5)"
    assert st.psi(2.0) == pytest.approx(2.0 ** 1.5, rel=1e-14)
    assert st.psi_inverse(st.psi(3.0)) == pytest.approx(3.0, rel=1e-12)
    assert st.psi_star(1.0) >= st.psi(1.0)
    spec = lh.SymbolSpec.parse('[symbol]\nfamily = "brownian"\n')
    assert spec.psi(3.0) == pytest.approx(9.0)


def test_brownian_point_tail_is_erf():
    bm = lh.SymbolSpec.brownian()
    for x, t in [(1.0, 1.0), (0.3, 2.0), (4.0, 0.5)]:
        assert lh.point_tail(bm, x, t) == pytest.approx(math.erf(x / (2 * math.sqrt(t))), rel=1e-9)


def test_band_contains_oracle():
    cb = lh.SymbolSpec.cauchy_plus_bm()
    b = lh.point_tail_band(cb, 1.0, 1.0)
    p = lh.point_tail(cb, 1.0, 1.0)
    assert b["lower"] <= p <= b["upper"]
    assert b["regime"].startswith("point")
    assert any(name.startswith("7") for name, _, _ in b["constants"])


def test_kernels_and_renewal():
    st = lh.SymbolSpec.stable(1.5)
    assert lh.kernel_K(st, 0.0) == 0.0
    assert lh.kernel_K(st, 4.0) == pytest.approx(2.0 * lh.kernel_K(st, 1.0), rel=1e-9)
    assert lh.kernel_K_lambda(st, 1.0, 1.0) < lh.kernel_K(st, 1.0)
    assert lh.renewal_V(st, 1.0) == pytest.approx(1 / math.gamma(1.75), rel=1e-8)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        lh.SymbolSpec.stable(2.5)
    with pytest.raises(lh.HypothesisError):
        lh.point_tail_band(lh.SymbolSpec.stable(0.8), 1.0, 1.0)


def test_simulation_is_seeded():
    st = lh.SymbolSpec.stable(1.5)
    a = lh.simulate_interval_tail(st, 2.0, 0.5, 1.0, paths=2000, seed=7)
    b = lh.simulate_interval_tail(st, 2.0, 0.5, 1.0, paths=2000, seed=7)
    assert a == b
    assert 0.0 <= a["estimate"] <= 1.0
    with pytest.raises(ValueError, match="R = 0 refused"):
        lh.simulate_interval_tail(st, 2.0, 0.0, 1.0, paths=200)


def test_validate_report():
    assert "point_tail_explicit_upper" in lh.check_names()
    rep = lh.validate("quick", only=["point_tail_sanity"], specs=[lh.SymbolSpec.stable(1.5)], acceptance=False)
    assert rep["summary"]["all_passed"]
    assert rep["checks"][0]["spec"] == "stable(1.5)"
