import math

import numpy as np
import pytest
from scipy import special

import frachelm as fh


def test_version():
    assert fh.__version__


def test_special_functions_against_scipy():
    x = np.array([0.1, 1.0, 4.5, 13.0, 30.0])
    for xi in x:
        assert fh.bessel_j(0, xi) == pytest.approx(special.j0(xi), rel=1e-12, abs=1e-14)
        assert fh.bessel_j(1, xi) == pytest.approx(special.j1(xi), rel=1e-12, abs=1e-14)
        assert fh.bessel_y(0, xi) == pytest.approx(special.y0(xi), rel=1e-12, abs=1e-14)
        assert fh.struve_h0(xi) == pytest.approx(special.struve(0, xi), rel=1e-10, abs=1e-13)
        assert fh.bessel_k0(xi) == pytest.approx(special.k0(xi), rel=1e-12)
        h = fh.hankel1_0(xi)
        assert h.real == pytest.approx(special.j0(xi), abs=1e-13)
        assert h.imag == pytest.approx(special.y0(xi), abs=1e-13)
    assert fh.gamma(4.5) == pytest.approx(math.gamma(4.5), rel=1e-14)
    assert fh.hyp2f1(1.2, 0.7, 1.5, -3.0) == pytest.approx(special.hyp2f1(1.2, 0.7, 1.5, -3.0), rel=1e-12)
    assert fh.hyp1f1(0.5, 1.5, -2.0) == pytest.approx(special.hyp1f1(0.5, 1.5, -2.0), rel=1e-12)


def test_kernel_params():
    p = fh.KernelParams(0.25, 3.0)
    assert p.m == 2 and p.special
    assert not fh.KernelParams(0.7, 3.0).special
    with pytest.raises(ValueError):
        fh.KernelParams(1.5, 3.0)


def test_phi_delta_vectorised_and_real():
    r = np.linspace(0.1, 5.0, 17).reshape(17)
    v = fh.phi_delta(r, 0.7, 4.0)
    assert v.dtype == np.float64 and v.shape == r.shape
    assert fh.phi_delta(np.array([[0.5, 1.0]]), 0.7, 4.0).shape == (1, 2)
    # Far from the origin the full kernel is (k^{2-2s}/s) Phi_helm plus a decaying remainder.
    full = fh.phi(np.array([8.0]), 0.7, 4.0)[0]
    helm = 4.0 ** (2 - 1.4) / 0.7 * 0.25j * special.hankel1(0, 32.0)
    assert abs(full - helm) < 0.05 * abs(helm)
    assert np.max(np.abs(fh.phi_delta(np.linspace(0.1, 10, 50), 0.999, 4.0))) <= 1e-2


def test_cell_mass_rules():
    for rule in ("square", "asymptotic", "disc_integral"):
        m = fh.cell_mass(0.7, 4.0, 0.025, rule)
        assert np.isfinite(m.real) and np.isfinite(m.imag)
    with pytest.raises(ValueError):
        fh.cell_mass(0.7, 4.0, 0.025, "bogus")
    with pytest.raises(ArithmeticError):
        fh.cell_mass(0.5, 4.0, 0.025, "asymptotic")


def test_numerics_round_trip():
    rng = np.random.default_rng(4)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    u, s, v = fh.svd(a)
    assert np.allclose(u @ np.diag(s) @ v.T, a, atol=1e-12)
    assert np.allclose(s, np.linalg.svd(a, compute_uv=False), rtol=1e-12)
    b = rng.normal(size=(6, 2)) + 0j
    assert np.allclose(fh.lu_solve(a, b), np.linalg.solve(a, b), rtol=1e-12)
    with pytest.raises(ArithmeticError):
        fh.lu_solve(np.zeros((3, 3), complex), np.ones((3, 1), complex))


def test_forward_and_indicator():
    cfg = fh.parse_config(
        "k = 3\nx_max = 2\nN_x = 24\nN_inc = 16\nsample_points = 11\n"
        "[shape]\ntype = disc\nradius = 0.8\n"
    )
    assert cfg.n_shapes == 1
    out = fh.forward(cfg, 0.7)
    F = out["F"]
    assert F.shape == (16, 16)
    assert out["reciprocity"] <= 1e-6 * np.abs(F).max()
    assert out["unitarity"] < 0.5
    m = fh.indicator_map(F, 0.7, cfg)
    w = np.asarray(m["W_normalized"]).reshape(11, 11)
    assert w.max() == 1.0
    assert w[5, 5] > w[0, 0]
    assert 0.0 <= m["jaccard"] <= 1.0

    empty = fh.parse_config("k = 3\nx_max = 2\nN_x = 12\nN_inc = 8")
    z = fh.forward(empty, 0.7)
    assert not np.any(z["F"])
    assert not np.any(fh.indicator_map(z["F"], 0.7, empty)["W"])
    with pytest.raises(ValueError):
        fh.indicator_map(np.zeros((3, 3), complex), 0.7, empty)


def test_config_errors():
    with pytest.raises(ValueError):
        fh.parse_config("s = 2")
    cfg = fh.RunConfig()
    cfg.k = 4.0
    assert '"k":4.0' in cfg.to_json()


def test_validate_direct_small():
    cfg = fh.parse_config("k = 4\nx_max = 5\nschedule = 16, 32")
    rows = fh.validate_direct(cfg, 0.7)
    g = [r for r in rows if r["test"] == "gaussian"]
    assert [r["N_x"] for r in g] == [16, 32]
    assert g[1]["err_Linf"] < g[0]["err_Linf"]
