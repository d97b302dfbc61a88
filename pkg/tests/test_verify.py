import numpy as np
import pytest
import sympy as sp

from halfline_ist import ProblemConfig, SolutionGrid
from halfline_ist import scattering, verify
from halfline_ist.core import OMEGA1
from halfline_ist.errors import EigenvaluePresent, GridTooCoarse


def test_soliton_solves_the_focusing_equation_symbolically():
    x, t = sp.symbols("x t", real=True)
    kappa, x0 = sp.Rational(3, 5), sp.Rational(-1, 2)
    q = 2 * kappa / sp.cosh(2 * kappa * (x - 4 * kappa ** 2 * t - x0))
    res = sp.diff(q, t) + sp.diff(q, x, 3) + 6 * q ** 2 * sp.diff(q, x)
    assert sp.simplify(res.rewrite(sp.exp)) == 0
    f = verify.soliton_exact(0.6, -0.5)
    assert abs(f(0.3, 0.2) - float(q.subs({x: 0.3, t: 0.2}))) < 1e-14


def grid_of(fn, nx, nt, x1=6.0, t1=1.0):
    xs, ts = np.linspace(0, x1, nx), np.linspace(0, t1, nt)
    return SolutionGrid(xs, ts, verify.sample_grid(fn, xs, ts))


def test_pde_residual_of_exact_soliton_within_tolerance():
    g = grid_of(verify.soliton_exact(0.5, 2.0), 64, 32)
    assert verify.pde_residual(g, -1) <= verify.pde_tolerance(g)


def test_pde_residual_rejects_a_non_solution():
    g = grid_of(lambda x, t: x * t, 64, 32)
    assert verify.pde_residual(g, -1) > verify.pde_tolerance(g)


def test_pde_residual_orders():
    f = verify.soliton_exact(0.5, 3.0)
    # fine t: the x stencil dominates (order 4)
    rx = [verify.pde_residual(grid_of(f, n, 2001), -1) for n in (41, 81)]
    assert np.log2(rx[0] / rx[1]) > 3.5
    # fine x: the t stencil dominates (order 2)
    rt = [verify.pde_residual(grid_of(f, 801, n), -1) for n in (11, 21)]
    assert np.log2(rt[0] / rt[1]) > 1.8


def test_defocusing_sign_enters_the_residual():
    g = grid_of(verify.soliton_exact(0.5, 2.0), 64, 32)
    assert verify.pde_residual(g, 1) > 10 * verify.pde_residual(g, -1)


@pytest.mark.parametrize("nx, nt", [(6, 10), (10, 2)])
def test_too_coarse_grid(nx, nt):
    with pytest.raises(GridTooCoarse):
        verify.pde_residual(grid_of(lambda x, t: 0 * x, nx, nt), 1)


def test_uneven_grid_is_rejected():
    xs = np.array([0, 1, 2, 3, 4, 5, 7.0])
    g = SolutionGrid(xs, np.linspace(0, 1, 4), np.zeros((7, 4)))
    with pytest.raises(GridTooCoarse):
        verify.pde_residual(g, 1)


def test_contour_points_lie_on_sigma():
    k = verify.contour_points(10)
    assert np.max(np.abs((k ** 3).imag)) < 1e-12
    assert set(verify._ray_index(k)) == set(range(6))
    with pytest.raises(ValueError):
        verify._ray_index(np.array([1 + 1j]))


@pytest.fixture(scope="module")
def zero_cfg_plus():
    return ProblemConfig.from_dict({"lambda": 1, "T": 1.0})


def test_zero_data_jumps_are_trivial(zero_cfg_plus):
    data = scattering.assemble_scattering_data(zero_cfg_plus)
    k = verify.contour_points(6)
    for smp in verify.rh_jump_samples(lambda x: 0 * np.asarray(x), data, k, 1.0, 0.5, zero_cfg_plus):
        assert np.allclose(smp.J, np.eye(2))
        assert smp.residual < 1e-12


def test_jump_matrices_are_unimodular(solitonless_cfg):
    spc = scattering.Spectral(solitonless_cfg)
    k = verify.contour_points(12)
    J = verify.jump_matrix(spc, -1, k, 0.7, 0.4)
    assert np.max(np.abs(np.linalg.det(J) - 1)) < 1e-8


def test_x_jump_for_solitonless_data(solitonless_cfg, solitonless_data):
    q = verify.soliton_exact(0.5, -3.0)
    t = 0.6
    res = verify.rh_jump_samples(lambda x: q(x, t), solitonless_data, verify.contour_points(6),
                                 1.5, t, solitonless_cfg)
    assert max(s.residual for s in res) < 1e-5


def test_t_jump(solitonless_cfg):
    k = verify.contour_points(6)
    for t in (0.0, 0.5):
        res = verify.t_rh_jump_samples(solitonless_cfg, k, t)
        assert max(s.residual for s in res) < 1e-5
        assert max(abs(np.linalg.det(s.J) - 1) for s in res) < 1e-8


def test_eigenvalues_block_the_x_jump(soliton_cfg, soliton_data):
    with pytest.raises(EigenvaluePresent):
        verify.rh_jump_residual(soliton_cfg.u, soliton_data, 1.0 + 0j, 0.0, 0.0, soliton_cfg)


def test_global_relation_with_exact_final_profile(solitonless_cfg):
    q = verify.soliton_exact(0.5, -3.0)
    g = scattering.global_relation_residual(solitonless_cfg, verify.global_relation_points(),
                                            lambda x: q(x, solitonless_cfg.T))
    assert g < 1e-6


def test_global_relation_detects_a_wrong_final_profile(solitonless_cfg):
    q = verify.soliton_exact(0.5, -3.0)
    g = scattering.global_relation_residual(solitonless_cfg, verify.global_relation_points(),
                                            lambda x: 1.1 * q(x, solitonless_cfg.T))
    assert g > 1e-3


def test_oracle_and_report():
    ok = verify.Oracle("a", 1e-9, 1e-8)
    bad = verify.Oracle("b", float("nan"), 1.0)
    assert ok.passed and not bad.passed
    rep = verify.VerifyReport([ok, bad])
    assert not rep.overall and rep.to_dict()["oracles"][1]["pass"] is False


def test_algebraic_samples_cover_rays():
    k = verify.algebraic_samples()
    assert np.any(np.isclose(np.angle(k), np.angle(OMEGA1)))
    assert np.all(k.imag >= 0)
