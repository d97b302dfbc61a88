"""Shared numeric types: sectors of the spectral plane, the oriented
boundary of the sector between the rays arg k = pi/3 and 2pi/3, data
function specifications, the problem configuration and the containers
for scattering data and reconstructed solutions.

2x2 complex matrices are plain numpy arrays of shape (..., 2, 2).
"""

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConfigError

SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
OMEGA1 = np.exp(1j * np.pi / 3)      # direction of the outgoing ray
OMEGA2 = np.exp(2j * np.pi / 3)      # direction of the incoming ray
SIGMA_TOL = 1e-12


def lambda_matrix(lam):
    return np.array([[0, 1], [lam, 0]], dtype=complex)


def det2(W):
    W = np.asarray(W)
    return W[..., 0, 0] * W[..., 1, 1] - W[..., 0, 1] * W[..., 1, 0]


def inv2(W):
    """Inverse of a stack of 2x2 matrices (no determinant normalisation
    is assumed)."""
    W = np.asarray(W)
    d = det2(W)
    out = np.empty_like(W)
    out[..., 0, 0] = W[..., 1, 1] / d
    out[..., 1, 1] = W[..., 0, 0] / d
    out[..., 0, 1] = -W[..., 0, 1] / d
    out[..., 1, 0] = -W[..., 1, 0] / d
    return out


# ---------------------------------------------------------------------------
# sectors

class RegionId(enum.Enum):
    OMEGA1 = "Omega1"
    OMEGA2 = "Omega2"
    OMEGA3 = "Omega3"
    OMEGA4 = "Omega4"
    OMEGA5 = "Omega5"
    OMEGA6 = "Omega6"
    SIGMA_REAL = "SigmaRealAxis"
    SIGMA_PI3 = "SigmaRayPi3"
    SIGMA_2PI3 = "SigmaRay2Pi3"
    SIGMA_4PI3 = "SigmaRay4Pi3"
    SIGMA_5PI3 = "SigmaRay5Pi3"
    ORIGIN = "Origin"


_SECTORS = [RegionId.OMEGA1, RegionId.OMEGA2, RegionId.OMEGA3,
            RegionId.OMEGA4, RegionId.OMEGA5, RegionId.OMEGA6]
_RAYS = [RegionId.SIGMA_REAL, RegionId.SIGMA_PI3, RegionId.SIGMA_2PI3,
         RegionId.SIGMA_REAL, RegionId.SIGMA_4PI3, RegionId.SIGMA_5PI3]


def on_sigma(k, tol=SIGMA_TOL):
    k = np.asarray(k, dtype=complex)
    return np.abs((k ** 3).imag) <= tol * np.maximum(1.0, np.abs(k) ** 3)


def classify_region(k, tol=SIGMA_TOL):
    """Sector (or contour component) containing the point k."""
    k = complex(k)
    if k == 0:
        return RegionId.ORIGIN
    a = math.atan2(k.imag, k.real) % (2 * math.pi)
    if on_sigma(k, tol):
        j = int(round(a / (math.pi / 3))) % 6
        return _RAYS[j]
    j = int(a // (math.pi / 3))
    return _SECTORS[min(j, 5)]


def omega2_boundary_quadrature(s_max, n):
    """Gauss-Legendre rule for the boundary of the upper middle sector.

    Half of the n nodes lie on the ray arg k = pi/3 traversed outward,
    the other half on arg k = 2pi/3 traversed toward the origin, so the
    sector is kept on the left.  Weights include the ray direction and
    the orientation sign.  Returns (nodes, weights).
    """
    if n < 4 or n % 2:
        raise ValueError("n must be an even integer >= 4")
    if not s_max > 0:
        raise ValueError("s_max must be positive")
    g, w = np.polynomial.legendre.leggauss(n // 2)
    s = 0.5 * s_max * (g + 1)
    ws = 0.5 * s_max * w
    nodes = np.concatenate([s * OMEGA1, s * OMEGA2])
    weights = np.concatenate([ws * OMEGA1, -ws * OMEGA2])
    return nodes, weights


# ---------------------------------------------------------------------------
# data functions

def soliton_profile(kappa, x0, sign, x, t):
    """q, q_x, q_xx of sign*2k sech(2k(x - 4k^2 t - x0))."""
    a = 2.0 * kappa
    y = a * (np.asarray(x, dtype=float) - 4 * kappa ** 2 * np.asarray(t, dtype=float) - x0)
    # sech and tanh without overflow for large |y|
    e = np.exp(-np.abs(y))
    sech = 2 * e / (1 + e * e)
    tanh = np.sign(y) * (1 - e * e) / (1 + e * e)
    q = sign * a * sech
    qx = -sign * a * a * sech * tanh
    qxx = sign * a ** 3 * (sech * tanh ** 2 - sech ** 3)
    return q, qx, qxx


_PRESETS = {
    "zero": (),
    "gaussian_bump": ("A", "x0", "w"),
    "soliton_trace": ("kappa", "x0", "sign", "component"),
}
_COMPONENTS = ("u", "v", "v1", "v2")


@dataclass(frozen=True)
class FunctionSpec:
    """A real function on [0, inf) given by a preset or by samples.

    Tables are interpolated by a cubic spline and extended by zero
    beyond the last abscissa.
    """
    preset: str = "zero"
    params: tuple = ()
    table: tuple = ()

    @classmethod
    def from_dict(cls, d, slot="u"):
        if d is None:
            return cls()
        if not isinstance(d, dict):
            raise ConfigError(f"function spec for '{slot}' must be an object")
        if "table" in d:
            tab = np.asarray(d["table"], dtype=float)
            if tab.ndim != 2 or tab.shape[1] != 2 or tab.shape[0] < 4:
                raise ConfigError(f"table for '{slot}' must be a list of >= 4 [x, y] pairs")
            if np.any(np.diff(tab[:, 0]) <= 0):
                raise ConfigError(f"table abscissae for '{slot}' must be strictly increasing")
            if not np.all(np.isfinite(tab)):
                raise ConfigError(f"table for '{slot}' contains non-finite values")
            return cls(preset="table", table=tuple(map(tuple, tab.tolist())))
        name = d.get("preset")
        if name not in _PRESETS:
            raise ConfigError(f"unknown preset {name!r} for '{slot}'")
        p = dict(d.get("params", {}))
        if name == "soliton_trace":
            p.setdefault("sign", 1.0)
            p.setdefault("component", slot)
            if p["component"] not in _COMPONENTS:
                raise ConfigError(f"soliton_trace component must be one of {_COMPONENTS}")
            if float(p.get("kappa", 0)) <= 0:
                raise ConfigError("soliton_trace needs kappa > 0")
        elif name == "gaussian_bump":
            if float(p.get("w", 0)) <= 0:
                raise ConfigError("gaussian_bump needs w > 0")
        missing = [key for key in _PRESETS[name] if key not in p]
        if missing:
            raise ConfigError(f"preset {name!r} for '{slot}' lacks {missing}")
        items = tuple((key, p[key] if key == "component" else float(p[key]))
                      for key in _PRESETS[name])
        return cls(preset=name, params=items)

    def to_dict(self):
        if self.preset == "table":
            return {"table": [list(r) for r in self.table]}
        return {"preset": self.preset, "params": dict(self.params)}

    @property
    def is_zero(self):
        return self.preset == "zero"

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        p = dict(self.params)
        if self.preset == "zero":
            return np.zeros_like(x)
        if self.preset == "gaussian_bump":
            return p["A"] * np.exp(-((x - p["x0"]) / p["w"]) ** 2)
        if self.preset == "soliton_trace":
            c = p["component"]
            if c == "u":
                return soliton_profile(p["kappa"], p["x0"], p["sign"], x, 0.0)[0]
            idx = {"v": 0, "v1": 1, "v2": 2}[c]
            return soliton_profile(p["kappa"], p["x0"], p["sign"], 0.0, x)[idx]
        return self._spline(x)

    def _spline(self, x):
        tab = np.asarray(self.table)
        sp = _spline_cache.get(self.table)
        if sp is None:
            sp = CubicSpline(tab[:, 0], tab[:, 1])
            _spline_cache[self.table] = sp
        out = np.where((x >= tab[0, 0]) & (x <= tab[-1, 0]), sp(np.clip(x, tab[0, 0], tab[-1, 0])), 0.0)
        return out

    def support_end(self, level=1e-12, limit=400.0):
        """Smallest point beyond which |f| stays below level (sampled)."""
        if self.preset == "zero":
            return 0.0
        if self.preset == "table":
            return float(self.table[-1][0])
        xs = np.linspace(0.0, limit, int(limit * 20) + 1)
        big = np.nonzero(np.abs(self(xs)) >= level)[0]
        return float(xs[big[-1]]) if big.size else 0.0


_spline_cache = {}


@dataclass(frozen=True)
class BoundaryTriplet:
    """q, q_x and q_xx at x = 0 as functions of t."""
    v: FunctionSpec = field(default_factory=FunctionSpec)
    v1: FunctionSpec = field(default_factory=FunctionSpec)
    v2: FunctionSpec = field(default_factory=FunctionSpec)

    @property
    def is_zero(self):
        return self.v.is_zero and self.v1.is_zero and self.v2.is_zero

    def __call__(self, t):
        return self.v(t), self.v1(t), self.v2(t)


# ---------------------------------------------------------------------------
# configuration

_GRID_DEFAULTS = {
    "x_max": None,          # truncation of the half-line, auto from u
    "t_eff": None,          # horizon surrogate when T is infinite
    "k_max": 8.0,           # symmetric real grid for r samples
    "k_n": 161,
    "real_smax": 4.0,       # truncation of the sampled r integral
    "ray_smax": 2.5,        # truncation of the sampled c integral
    "ray_nodes": 16,        # Gauss-Legendre nodes per panel
    "panel_phase": 6.0,     # phase budget per panel (radians)
    "panel_hmax": 0.1,
    "tail_order": 9,
    "k_box": 4.0,           # eigenvalue search box
    "nystrom_n": 96,
    "x_grid": [0.0, 10.0, 64],
    "t_grid": None,         # default [0, T, 32]
    "z_panel": 2.0,         # kernel interpolation panels in z
    "z_nodes": 24,
}
_TOL_DEFAULTS = {
    "tol_root": 1e-8,
    "tol_quad": 1e-10,
    "tol_solve": 1e-10,
    "step_tol": 1e-12,
}
_TOP_KEYS = {"lambda", "T", "u", "v", "v1", "v2", "grids", "tolerances", "name"}


@dataclass(frozen=True)
class ProblemConfig:
    lam: int
    T: float
    u: FunctionSpec
    bt: BoundaryTriplet
    x_max: float
    t_eff: float
    k_max: float = 8.0
    k_n: int = 161
    real_smax: float = 4.0
    ray_smax: float = 2.5
    ray_nodes: int = 16
    panel_phase: float = 6.0
    panel_hmax: float = 0.1
    tail_order: int = 9
    k_box: float = 4.0
    nystrom_n: int = 96
    x_grid: tuple = (0.0, 10.0, 64)
    t_grid: tuple = (0.0, 1.0, 32)
    z_panel: float = 2.0
    z_nodes: int = 24
    tol_root: float = 1e-8
    tol_quad: float = 1e-10
    tol_solve: float = 1e-10
    step_tol: float = 1e-12
    name: str = ""

    @property
    def finite_T(self):
        return math.isfinite(self.T)

    @property
    def T_eff(self):
        """Horizon actually used for the t-equation."""
        return self.T if self.finite_T else self.t_eff

    def x_nodes(self):
        a, b, n = self.x_grid
        return np.linspace(a, b, int(n))

    def t_nodes(self):
        a, b, n = self.t_grid
        return np.linspace(a, b, int(n))

    def with_(self, **kw):
        return replace(self, **kw)

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise ConfigError("configuration must be a JSON object")
        unknown = set(d) - _TOP_KEYS
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        try:
            lam = int(d["lambda"])
        except (KeyError, TypeError, ValueError):
            raise ConfigError("'lambda' must be +1 or -1") from None
        if lam not in (1, -1):
            raise ConfigError("'lambda' must be +1 or -1")
        T = d.get("T", "inf")
        if isinstance(T, str):
            if T.lower() not in ("inf", "infinity"):
                raise ConfigError("'T' must be a positive number or \"inf\"")
            T = math.inf
        else:
            try:
                T = float(T)
            except (TypeError, ValueError):
                raise ConfigError("'T' must be a positive number or \"inf\"") from None
            if not T > 0:
                raise ConfigError("'T' must be positive")
        u = FunctionSpec.from_dict(d.get("u"), "u")
        bt = BoundaryTriplet(*(FunctionSpec.from_dict(d.get(s), s) for s in ("v", "v1", "v2")))
        g = dict(_GRID_DEFAULTS)
        grids = d.get("grids", {})
        tols = d.get("tolerances", {})
        if not isinstance(grids, dict) or not isinstance(tols, dict):
            raise ConfigError("'grids' and 'tolerances' must be objects")
        bad = (set(grids) - set(g)) | (set(tols) - set(_TOL_DEFAULTS))
        if bad:
            raise ConfigError(f"unknown grid/tolerance keys: {sorted(bad)}")
        g.update(grids)
        tl = dict(_TOL_DEFAULTS)
        tl.update(tols)
        if g["x_max"] is None:
            g["x_max"] = max(10.0, u.support_end() + 2.0)
        if g["t_eff"] is None:
            g["t_eff"] = max(1.0, max(f.support_end() for f in (bt.v, bt.v1, bt.v2)) + 1.0)
        if g["t_grid"] is None:
            g["t_grid"] = [0.0, T if math.isfinite(T) else float(g["t_eff"]), 32]
        try:
            cfg = cls(lam=lam, T=T, u=u, bt=bt,
                      x_max=float(g["x_max"]), t_eff=float(g["t_eff"]),
                      k_max=float(g["k_max"]), k_n=int(g["k_n"]),
                      real_smax=float(g["real_smax"]),
                      ray_smax=float(g["ray_smax"]), ray_nodes=int(g["ray_nodes"]),
                      panel_phase=float(g["panel_phase"]), panel_hmax=float(g["panel_hmax"]),
                      tail_order=int(g["tail_order"]), k_box=float(g["k_box"]),
                      nystrom_n=int(g["nystrom_n"]),
                      x_grid=_triple(g["x_grid"], "x_grid"), t_grid=_triple(g["t_grid"], "t_grid"),
                      z_panel=float(g["z_panel"]), z_nodes=int(g["z_nodes"]),
                      name=str(d.get("name", "")),
                      **{key: float(val) for key, val in tl.items()})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad numeric field: {exc}") from None
        cfg.check()
        return cfg

    def check(self):
        if self.x_max <= 0 or self.t_eff <= 0:
            raise ConfigError("x_max and t_eff must be positive")
        if self.nystrom_n < 8:
            raise ConfigError("nystrom_n must be >= 8")
        if min(self.tol_root, self.tol_quad, self.tol_solve, self.step_tol) <= 0:
            raise ConfigError("tolerances must be positive")
        if self.k_n < 5 or self.k_n % 2 == 0:
            raise ConfigError("k_n must be an odd integer >= 5")
        if self.ray_nodes < 4 or self.tail_order < 1 or self.z_nodes < 4:
            raise ConfigError("ray_nodes >= 4, z_nodes >= 4 and tail_order >= 1 are required")
        if min(self.ray_smax, self.real_smax) <= 0 or self.k_max <= 0 or self.k_box <= 0:
            raise ConfigError("real_smax, ray_smax, k_max and k_box must be positive")
        if self.x_grid[0] < 0 or self.t_grid[0] < 0:
            raise ConfigError("grids must start at a non-negative point")

    def to_dict(self):
        return {
            "name": self.name,
            "lambda": self.lam,
            "T": self.T if self.finite_T else "inf",
            "u": self.u.to_dict(),
            "v": self.bt.v.to_dict(), "v1": self.bt.v1.to_dict(), "v2": self.bt.v2.to_dict(),
            "grids": {
                "x_max": self.x_max, "t_eff": self.t_eff, "k_max": self.k_max, "k_n": self.k_n,
                "real_smax": self.real_smax, "ray_smax": self.ray_smax, "ray_nodes": self.ray_nodes,
                "panel_phase": self.panel_phase, "panel_hmax": self.panel_hmax,
                "tail_order": self.tail_order, "k_box": self.k_box, "nystrom_n": self.nystrom_n,
                "x_grid": list(self.x_grid), "t_grid": list(self.t_grid),
                "z_panel": self.z_panel, "z_nodes": self.z_nodes,
            },
            "tolerances": {"tol_root": self.tol_root, "tol_quad": self.tol_quad,
                           "tol_solve": self.tol_solve, "step_tol": self.step_tol},
        }


def _triple(v, name):
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        raise ConfigError(f"'{name}' must be [start, stop, count]")
    a, b, n = float(v[0]), float(v[1]), int(v[2])
    if n < 1 or b < a:
        raise ConfigError(f"'{name}' must have stop >= start and count >= 1")
    return (a, b, n)


def soliton_config(kappa=0.5, x0=-3.0, T=4.0, sign=1.0, **grids):
    """Configuration whose data are traces of an exact one-soliton."""
    p = {"kappa": kappa, "x0": x0, "sign": sign}
    d = {"lambda": -1, "T": T,
         "u": {"preset": "soliton_trace", "params": dict(p, component="u")},
         "v": {"preset": "soliton_trace", "params": dict(p, component="v")},
         "v1": {"preset": "soliton_trace", "params": dict(p, component="v1")},
         "v2": {"preset": "soliton_trace", "params": dict(p, component="v2")},
         "grids": grids}
    return ProblemConfig.from_dict(d)


# ---------------------------------------------------------------------------
# complex <-> JSON helpers

def cpack(z):
    """Complex array -> nested list of [re, im] pairs."""
    z = np.asarray(z, dtype=complex)
    return np.stack([z.real, z.imag], axis=-1).tolist()


def cunpack(a):
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return np.zeros(0, dtype=complex)
    if a.shape[-1] != 2:
        raise ConfigError("complex values must be [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


# ---------------------------------------------------------------------------
# containers

@dataclass
class ScatteringData:
    """Spectral data of the half-line problem.

    The continuous parts are stored as quadrature samples ready for the
    kernel: r on [0, cut] and c on the ray arg k = pi/3, each with fitted
    large-k tail coefficients.  The samples on both rays and on a
    symmetric real grid are kept for the admissibility checks.
    """
    lam: int
    T: float
    eigenvalues_x: np.ndarray
    norming_x: np.ndarray
    eigenvalues_bc: np.ndarray
    norming_bc: np.ndarray
    r_grid: np.ndarray = None            # symmetric real grid
    r_grid_values: np.ndarray = None
    r_nodes: np.ndarray = None           # quadrature on [0, cut]
    r_weights: np.ndarray = None
    r_values: np.ndarray = None
    r_tail: np.ndarray = None
    c_nodes: np.ndarray = None           # arc length s on arg k = pi/3
    c_weights: np.ndarray = None
    c_values: np.ndarray = None
    c_tail: np.ndarray = None            # shape (2, order)
    c_horizon: float = 0.0               # phase of the second tail family
    cut: float = 4.0                     # end of the sampled part of r
    c_cut: float = 2.5                   # end of the sampled part of c
    c_check_k: np.ndarray = None         # both rays, near origin included
    c_check_values: np.ndarray = None
    r_check_k: np.ndarray = None         # real samples clustered at k = 0
    r_check_values: np.ndarray = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def empty(cls, lam, T=math.inf, cut=4.0):
        z = np.zeros(0, dtype=complex)
        return cls(lam=lam, T=T, eigenvalues_x=z, norming_x=z, eigenvalues_bc=z, norming_bc=z,
                   r_grid=np.zeros(0), r_grid_values=z, r_nodes=np.zeros(0), r_weights=np.zeros(0),
                   r_values=z, r_tail=z, c_nodes=np.zeros(0), c_weights=np.zeros(0), c_values=z,
                   c_tail=np.zeros((2, 0), dtype=complex), cut=cut, c_check_k=z, c_check_values=z,
                   r_check_k=np.zeros(0), r_check_values=z)

    def to_dict(self):
        def real(a):
            return [] if a is None else np.asarray(a, dtype=float).tolist()

        def cplx(a):
            return [] if a is None else cpack(a)
        return {
            "lambda": self.lam,
            "T": self.T if math.isfinite(self.T) else "inf",
            "eigenvalues_x": cplx(self.eigenvalues_x),
            "norming_x": cplx(self.norming_x),
            "eigenvalues_bc": cplx(self.eigenvalues_bc),
            "norming_bc": cplx(self.norming_bc),
            "r_samples": {"k": real(self.r_grid), "r": cplx(self.r_grid_values),
                          "near_k": real(self.r_check_k), "near_r": cplx(self.r_check_values)},
            "r_quadrature": {"k": real(self.r_nodes), "w": real(self.r_weights),
                             "r": cplx(self.r_values), "tail": cplx(self.r_tail)},
            "c_ray": {"s": real(self.c_nodes), "w": real(self.c_weights),
                      "c": cplx(self.c_values), "tail": cplx(self.c_tail),
                      "horizon": self.c_horizon, "cut": self.c_cut},
            "c_samples": {"k": cplx(self.c_check_k), "c": cplx(self.c_check_values)},
            "cut": self.cut,
            "meta": self.meta,
        }

    @classmethod
    def from_dict(cls, d):
        try:
            T = d["T"]
            T = math.inf if isinstance(T, str) else float(T)
            ct = cunpack(d["c_ray"]["tail"])
            if ct.size == 0:
                ct = np.zeros((2, 0), dtype=complex)
            return cls(
                lam=int(d["lambda"]), T=T,
                eigenvalues_x=cunpack(d["eigenvalues_x"]), norming_x=cunpack(d["norming_x"]),
                eigenvalues_bc=cunpack(d["eigenvalues_bc"]), norming_bc=cunpack(d["norming_bc"]),
                r_grid=np.asarray(d["r_samples"]["k"], dtype=float),
                r_grid_values=cunpack(d["r_samples"]["r"]),
                r_nodes=np.asarray(d["r_quadrature"]["k"], dtype=float),
                r_weights=np.asarray(d["r_quadrature"]["w"], dtype=float),
                r_values=cunpack(d["r_quadrature"]["r"]), r_tail=cunpack(d["r_quadrature"]["tail"]),
                c_nodes=np.asarray(d["c_ray"]["s"], dtype=float),
                c_weights=np.asarray(d["c_ray"]["w"], dtype=float),
                c_values=cunpack(d["c_ray"]["c"]), c_tail=ct,
                c_horizon=float(d["c_ray"]["horizon"]), cut=float(d["cut"]),
                c_cut=float(d["c_ray"]["cut"]),
                c_check_k=cunpack(d["c_samples"]["k"]), c_check_values=cunpack(d["c_samples"]["c"]),
                r_check_k=np.asarray(d["r_samples"].get("near_k", []), dtype=float),
                r_check_values=cunpack(d["r_samples"].get("near_r", [])),
                meta=dict(d.get("meta", {})))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed scattering data: {exc!r}") from None

    @property
    def n_eigenvalues(self):
        return len(self.eigenvalues_x) + len(self.eigenvalues_bc)


@dataclass
class SolutionGrid:
    x_nodes: np.ndarray
    t_nodes: np.ndarray
    q_values: np.ndarray          # shape (len(x), len(t))
    provenance: dict = field(default_factory=dict)

    def to_csv(self):
        lines = ["x,t,q"]
        for j, t in enumerate(self.t_nodes):
            for i, x in enumerate(self.x_nodes):
                lines.append(f"{x:.17g},{t:.17g},{self.q_values[i, j]:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text):
        rows = text.strip().splitlines()
        if not rows or rows[0].strip() != "x,t,q":
            raise ConfigError("solution CSV must start with the header x,t,q")
        try:
            a = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
        except ValueError:
            raise ConfigError("solution CSV contains non-numeric entries") from None
        if a.ndim != 2 or a.shape[1] != 3:
            raise ConfigError("solution CSV rows must have three columns")
        t = np.unique(a[:, 1])
        x = a[a[:, 1] == t[0], 0]
        if a.shape[0] != len(x) * len(t):
            raise ConfigError("solution CSV is not a full lattice")
        q = a[:, 2].reshape(len(t), len(x)).T
        return cls(x_nodes=x, t_nodes=t, q_values=q)
