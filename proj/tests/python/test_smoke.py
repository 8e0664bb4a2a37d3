import math

import numpy as np
import pytest

import vatom


def params(omega21, rabi, k=0.0, **kw):
    p = vatom.SystemParams(omega21=omega21, rabi=rabi, **kw)
    p.delta = k * p.omega_r
    return p


def test_dressed_scalars_and_anchor():
    omega_r, eta, eps = vatom.dressed_scalars(params(10, 100))
    assert omega_r == pytest.approx(141.5, abs=0.1)
    assert eps**2 + 8 * eta**2 == pytest.approx(1.0)
    assert vatom.secular_rates(params(200, 50))["gamma_3a"] == pytest.approx(2.51, rel=0.02)


def test_generator_and_steady_state():
    p = params(200, 100, 1.0)
    lv = vatom.reduced_liouvillian(p)
    assert lv.shape == (9, 9)
    # Column sums over the diagonal entries vanish: the generator preserves trace.
    diag = [0, 4, 8]
    assert np.abs(lv[diag, :].sum(axis=0)).max() < 1e-12
    rho = vatom.steady_state(p)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(rho, rho.conj().T, atol=1e-12)
    assert np.linalg.eigvalsh(rho).min() > -1e-10
    assert np.abs(lv @ rho.reshape(9)).max() < 1e-10


def test_s_operator_matches_oracle():
    p = params(200, 50, 0.3)
    assert np.abs(vatom.s_operator(p) - vatom.s_operator_oracle(p)).max() < 1e-8


def test_sweep_returns_arrays():
    p = params(10, 100)
    grid = np.linspace(-4 * p.omega_r, 4 * p.omega_r, 41)
    s = vatom.sweep_populations(p, grid, threads=1)
    assert len(s["rho00"]) == 41
    assert s["failures"] == []
    total = np.array(s["rho00"]) + np.array(s["rho11"]) + np.array(s["rho22"])
    assert np.allclose(total, 1.0)


def test_dressed_populations():
    p = params(200, 200, 2.0)
    exact = vatom.dressed_populations_exact(p)
    rate = vatom.dressed_populations_rate_eq(vatom.transition_rates(p))
    assert max(abs(exact[k] - rate[k]) for k in ("aa", "bb", "cc")) <= 0.05
    vectors, energies = vatom.dressed_basis(p)
    assert np.allclose(vectors.conj().T @ vectors, np.eye(3))
    assert energies[2] == pytest.approx(p.omega_r)


def test_spectra_agree_and_sum_rule():
    p = params(10, 100)
    grid = np.linspace(-350, 350, 71)
    q = np.array(vatom.fluorescence(p, grid)["values"])
    o = np.array(vatom.fluorescence_oracle(p, grid)["values"])
    assert np.abs(q - o).max() <= 0.02 * np.abs(q).max()
    wide = np.linspace(-6 * p.omega_r, 6 * p.omega_r, 24001)
    values = np.array(vatom.fluorescence(p, wide)["values"])
    integral = np.trapz(values, wide) if hasattr(np, "trapz") else np.trapezoid(values, wide)
    integral += (values[0] + values[-1]) * wide[-1]
    assert integral == pytest.approx(math.pi * vatom.stationary_correlation(p), rel=0.01)


def test_secular_and_absorption():
    p = params(10, 100, 1.0)
    grid = vatom.default_spectral_grid(p)
    sec = vatom.fluorescence_secular(p, grid)
    parts = sum(np.array(sec[k]) for k in ("central", "inner_low", "inner_high", "outer_low", "outer_high"))
    assert np.allclose(parts, sec["values"])
    a = np.array(vatom.absorption(p, grid)["values"])
    assert np.abs(a).max() > 0
    w = vatom.line_weights(p)
    assert w["+2"] == -w["-2"]


def test_errors_carry_a_kind():
    with pytest.raises(vatom.VatomError) as info:
        vatom.dressed_scalars(vatom.SystemParams(omega21=0.0, rabi=0.0))
    assert info.value.kind == "DegenerateDressing"
    with pytest.raises(vatom.VatomError):
        vatom.full_liouvillian(params(10, 10), 21)
