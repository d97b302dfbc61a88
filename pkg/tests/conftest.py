import json
import time

import numpy as np
import pytest

from halfline_ist import ProblemConfig, soliton_config
from halfline_ist import marchenko, scattering

ACCEPTANCE_LINES = {}
TIMINGS = {}


def record(criterion, passed, detail):
    """Store the one-line outcome of an acceptance criterion."""
    line = f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])


def gaussian_config(A=0.3, x0=3.0, w=1.0, T=1.0, **grids):
    d = {"lambda": 1, "T": T, "u": {"preset": "gaussian_bump", "params": {"A": A, "x0": x0, "w": w}}}
    if grids:
        d["grids"] = grids
    return ProblemConfig.from_dict(d)


@pytest.fixture(scope="session")
def soliton_cfg():
    return soliton_config()


@pytest.fixture(scope="session")
def soliton_data(soliton_cfg):
    t0 = time.perf_counter()
    data = scattering.assemble_scattering_data(soliton_cfg)
    TIMINGS["soliton_forward"] = time.perf_counter() - t0
    return data


@pytest.fixture(scope="session")
def soliton_grid(soliton_cfg, soliton_data):
    t0 = time.perf_counter()
    out = marchenko.reconstruct_grid(soliton_data, soliton_cfg)
    TIMINGS["soliton_solve"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def solitonless_cfg():
    """Soliton traces on [0, 1]: the soliton has not reached x = 0, and
    neither s2+ nor r1- vanishes."""
    return soliton_config(T=1.0)


@pytest.fixture(scope="session")
def solitonless_data(solitonless_cfg):
    return scattering.assemble_scattering_data(solitonless_cfg)


@pytest.fixture(scope="session")
def gauss_cfg():
    return gaussian_config()


@pytest.fixture(scope="session")
def gauss_data(gauss_cfg):
    return scattering.assemble_scattering_data(gauss_cfg)


@pytest.fixture
def zero_cfg():
    return ProblemConfig.from_dict({"lambda": -1, "T": 1.0})


@pytest.fixture
def tmp_json(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return p
    return write


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
