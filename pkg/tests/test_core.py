import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfline_ist import (FunctionSpec, ProblemConfig, RegionId, ScatteringData, SolutionGrid,
                          classify_region, soliton_config)
from halfline_ist.core import (OMEGA1, OMEGA2, cpack, cunpack, det2, inv2,
                               omega2_boundary_quadrature, soliton_profile)
from halfline_ist.errors import ConfigError

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def test_config_defaults_and_roundtrip():
    cfg = ProblemConfig.from_dict({"lambda": -1, "T": 4.0,
                                   "u": {"preset": "gaussian_bump",
                                         "params": {"A": 1.0, "x0": 2.0, "w": 0.5}}})
    assert cfg.lam == -1 and cfg.T == 4.0
    assert cfg.t_grid == (0.0, 4.0, 32)
    assert cfg.x_max >= 10.0
    again = ProblemConfig.from_dict(cfg.to_dict())
    assert again == cfg


def test_infinite_horizon_uses_t_eff():
    cfg = ProblemConfig.from_dict({"lambda": 1, "T": "inf"})
    assert not cfg.finite_T
    assert cfg.T_eff == cfg.t_eff > 0
    assert ProblemConfig.from_dict(cfg.to_dict()).T == math.inf


@pytest.mark.parametrize("bad", [
    [],
    {"lambda": 2},
    {"T": 1.0},
    {"lambda": 1, "T": -1.0},
    {"lambda": 1, "T": "soon"},
    {"lambda": 1, "colour": "red"},
    {"lambda": 1, "u": {"preset": "square"}},
    {"lambda": 1, "u": {"preset": "gaussian_bump", "params": {"A": 1.0}}},
    {"lambda": 1, "u": {"table": [[0, 1], [1, 2]]}},
    {"lambda": 1, "u": {"table": [[0, 1], [2, 2], [1, 3], [4, 0]]}},
    {"lambda": 1, "grids": {"k_n": 100}},
    {"lambda": 1, "grids": {"nystrom_n": 2}},
    {"lambda": 1, "grids": {"warp": 9}},
    {"lambda": 1, "tolerances": {"step_tol": 0}},
])
def test_malformed_config_rejected(bad):
    with pytest.raises(ConfigError):
        ProblemConfig.from_dict(bad)


def test_table_spec_is_spline_extended_by_zero():
    xs = np.linspace(0, 3, 31)
    spec = FunctionSpec.from_dict({"table": np.stack([xs, np.sin(xs)], 1).tolist()})
    assert abs(spec(1.234) - math.sin(1.234)) < 1e-4
    assert spec(5.0) == 0.0


def test_soliton_trace_components_match_profile():
    cfg = soliton_config(kappa=0.7, x0=-1.0, T=2.0)
    t = np.linspace(0, 2, 7)
    q, qx, qxx = soliton_profile(0.7, -1.0, 1.0, 0.0, t)
    v, v1, v2 = cfg.bt(t)
    assert np.allclose(v, q) and np.allclose(v1, qx) and np.allclose(v2, qxx)
    assert np.allclose(cfg.u(np.array([0.0, 1.0])),
                       soliton_profile(0.7, -1.0, 1.0, np.array([0.0, 1.0]), 0.0)[0])


def test_soliton_profile_derivatives_by_differences():
    x = np.linspace(-3, 3, 13)
    h = 1e-4
    q, qx, qxx = soliton_profile(0.5, 0.3, -1.0, x, 0.2)
    qp = soliton_profile(0.5, 0.3, -1.0, x + h, 0.2)[0]
    qm = soliton_profile(0.5, 0.3, -1.0, x - h, 0.2)[0]
    assert np.allclose((qp - qm) / (2 * h), qx, atol=1e-7)
    assert np.allclose((qp - 2 * q + qm) / h ** 2, qxx, atol=1e-5)
    assert np.max(np.abs(soliton_profile(0.5, 0.0, 1.0, np.array([1e4]), 0.0)[0])) == 0.0


@given(st.lists(st.tuples(finite, finite), min_size=0, max_size=8))
def test_cpack_roundtrip(pairs):
    z = np.array([complex(a, b) for a, b in pairs], dtype=complex)
    assert np.array_equal(cunpack(cpack(z)), z)


@settings(max_examples=50)
@given(st.lists(finite, min_size=4, max_size=4))
def test_inverse_of_2x2(vals):
    a, b, c, d = vals
    W = np.array([[a + 1j, b], [c, d - 1j]])
    if abs(det2(W)) < 1e-3:
        return
    assert np.allclose(inv2(W) @ W, np.eye(2), atol=1e-8 * max(1.0, np.abs(W).max() ** 2))


@pytest.mark.parametrize("k, region", [
    (1.0 + 0.5j, RegionId.OMEGA1), (1j, RegionId.OMEGA2), (-1 + 0.5j, RegionId.OMEGA3),
    (-1 - 0.5j, RegionId.OMEGA4), (-1j, RegionId.OMEGA5), (1 - 0.5j, RegionId.OMEGA6),
    (2.0, RegionId.SIGMA_REAL), (-2.0, RegionId.SIGMA_REAL),
    (2 * OMEGA1, RegionId.SIGMA_PI3), (2 * OMEGA2, RegionId.SIGMA_2PI3),
])
def test_classify_region(k, region):
    assert classify_region(k) == region


def test_omega2_boundary_quadrature_integrates_polynomials():
    nodes, weights = omega2_boundary_quadrature(2.0, 32)
    # the oriented boundary from 2 w2 through 0 to 2 w1: int k^2 dk = (k^3)/3 difference
    exact = ((2 * OMEGA1) ** 3 - (2 * OMEGA2) ** 3) / 3
    assert abs(np.sum(weights * nodes ** 2) - exact) < 1e-12


def test_scattering_data_json_roundtrip(tmp_path):
    d = ScatteringData.empty(-1, 4.0)
    d.eigenvalues_bc = np.array([0.38j])
    d.norming_bc = np.array([-0.4 + 0j])
    d.meta = {"x_max": 27.3}
    again = ScatteringData.from_dict(d.to_dict())
    assert np.array_equal(again.eigenvalues_bc, d.eigenvalues_bc)
    assert again.T == 4.0 and again.meta == d.meta and again.n_eigenvalues == 1
    with pytest.raises(ConfigError):
        ScatteringData.from_dict({"lambda": 1})


def test_solution_csv_roundtrip_is_lossless():
    xs, ts = np.linspace(0, 1, 5), np.linspace(0, 2, 3)
    q = np.random.default_rng(1).standard_normal((5, 3)) / 3
    text = SolutionGrid(xs, ts, q).to_csv()
    assert text.splitlines()[0] == "x,t,q"
    # loop over t outside, x inside
    assert text.splitlines()[2].split(",")[:2] == ["0.25", "0"]
    g = SolutionGrid.from_csv(text)
    assert np.array_equal(g.q_values, q) and np.array_equal(g.x_nodes, xs)


@pytest.mark.parametrize("text", ["", "a,b,c\n1,2,3\n", "x,t,q\n1,2\n", "x,t,q\n0,0,1\n1,0,2\n0,1,3\n",
                                  "x,t,q\n0,0,zz\n"])
def test_solution_csv_rejects_bad_input(text):
    with pytest.raises(ConfigError):
        SolutionGrid.from_csv(text)
