import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfline_ist import ProblemConfig, soliton_config
from halfline_ist import laxpair
from halfline_ist.core import det2, soliton_profile


def free(k, x):
    k = np.atleast_1d(k)
    out = np.zeros((k.size, 2, 2), complex)
    out[:, 0, 0] = np.exp(-1j * k * x)
    out[:, 1, 1] = np.exp(1j * k * x)
    return out


def free_t(k, t):
    return free(4 * np.atleast_1d(k) ** 3, t)


def bump(x):
    return 0.8 * np.exp(-(x - 1.0) ** 2)


def test_zero_potential_gives_free_solution():
    k = np.array([0.3, -1.2, 0.5 + 0.4j, 2.0 - 0.1j])
    W = laxpair.integrate_x(lambda x: 0.0, -1, k, 0.0, 3.0)
    assert np.allclose(W, free(k, 3.0), atol=1e-12)


@settings(max_examples=15, deadline=None)
@given(st.floats(-3, 3), st.floats(-0.5, 0.5), st.sampled_from([-1, 1]))
def test_x_propagator_is_unimodular(kr, ki, lam):
    W = laxpair.integrate_x(bump, lam, np.array([kr + 1j * ki]), 0.0, 4.0)
    assert abs(det2(W)[0] - 1) < 1e-9


def test_x_propagator_composes():
    k = np.array([0.7, 1.3 + 0.2j])
    W1 = laxpair.integrate_x(bump, 1, k, 0.0, 1.5)
    W2 = laxpair.integrate_x(bump, 1, k, 1.5, 4.0)
    W = laxpair.integrate_x(bump, 1, k, 0.0, 4.0)
    assert np.allclose(W2 @ W1, W, atol=1e-10)


def test_reflectionless_soliton_transmission():
    # a soliton far from x = 0 is a full-line reflectionless potential
    kappa = 1.0
    prof = lambda x: soliton_profile(kappa, 15.0, 1.0, x, 0.0)[0]  # noqa: E731
    k = np.array([0.3, 1.0, 2.0, 0.5 + 0.5j])
    chi, eta = laxpair.jost_columns(prof, -1, k, 40.0, 0.0)
    assert np.allclose(chi[:, 1], (k - 1j * kappa) / (k + 1j * kappa), atol=1e-9)


def test_zero_curvature_for_the_soliton():
    # U_t - V_x + [U, V] = 0 along an exact solution
    kappa, x0, x, t, h = 0.6, 0.4, 0.9, 0.3, 1e-4
    k = np.array([0.8 + 0.3j])

    def U(x, t):
        return laxpair.u_matrix(soliton_profile(kappa, x0, 1.0, x, t)[0], -1, k)

    def V(x, t):
        return laxpair.v_matrix(*soliton_profile(kappa, x0, 1.0, x, t), -1, k)

    Ut = (U(x, t + h) - U(x, t - h)) / (2 * h)
    Vx = (V(x + h, t) - V(x - h, t)) / (2 * h)
    u, v = U(x, t), V(x, t)
    assert np.max(np.abs(Ut - Vx + u @ v - v @ u)) < 1e-6


def test_hat_phi_with_zero_data():
    cfg = ProblemConfig.from_dict({"lambda": 1, "T": 1.0})
    k = np.array([0.7, 1.1 * np.exp(1j * np.pi / 3)])
    assert np.allclose(laxpair.hat_phi(0.7, cfg.bt, 1, k), free_t(k, 0.7), atol=1e-12)


def test_hat_psi_is_normalised_at_T():
    cfg = soliton_config(T=1.0)
    k = np.array([0.7, 1.1 * np.exp(1j * np.pi / 3)])
    W = laxpair.hat_psi(cfg.T_eff, cfg.bt, -1, k, cfg.T_eff)
    assert np.allclose(W, free_t(k, cfg.T_eff), atol=1e-12)


def test_hat_psi_is_unimodular_at_zero():
    cfg = soliton_config(T=1.0)
    k = np.array([0.4, -1.0, 0.9 * np.exp(2j * np.pi / 3)])
    W = laxpair.hat_psi(0.0, cfg.bt, -1, k, cfg.T_eff)
    assert np.max(np.abs(det2(W) - 1)) < 1e-8


@pytest.mark.parametrize("lam", [-1, 1])
def test_v_matrix_is_traceless(lam):
    k = np.array([0.3 + 0.2j, -1.0])
    V = laxpair.v_matrix(0.4, -0.2, 0.1, lam, k)
    assert np.allclose(V[:, 0, 0] + V[:, 1, 1], 0)
