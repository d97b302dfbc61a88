"""Admissibility checks on a scattering data set.

Three groups of checks, mirroring the characterisation of admissible
data: A concerns r(k), B the discrete spectrum and C the boundary
spectral function c(k).  Each check records its measured value and
tolerance; the report passes when every check passes.
"""

from dataclasses import dataclass, field

import numpy as np

from . import scattering
from .core import OMEGA1, OMEGA2, RegionId, classify_region
from .errors import GridNotSymmetric, InsufficientNearOriginSamples
from .marchenko import KernelField

SYM_TOL = 1e-7
SMOOTH_TOL = 2.0
SMOOTH_POINTS = 257
TRACE_TOL = 1e-4
DERIV_TOL = 1e-4


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    tol: float

    def to_dict(self):
        return {"name": self.name, "pass": bool(self.passed),
                "value": float(self.value), "tol": float(self.tol)}


def _le(name, value, tol):
    value = float(value)
    return Check(name, bool(np.isfinite(value) and value <= tol), value, tol)


def _lt(name, value, tol):
    value = float(value)
    return Check(name, bool(np.isfinite(value) and value < tol), value, tol)


@dataclass
class ValidationReport:
    condition_A: list = field(default_factory=list)
    condition_B: list = field(default_factory=list)
    condition_C: list = field(default_factory=list)

    @property
    def overall(self):
        return all(c.passed for c in self.condition_A + self.condition_B + self.condition_C)

    def failed(self):
        return [c.name for c in self.condition_A + self.condition_B + self.condition_C
                if not c.passed]

    def to_dict(self):
        return {"condition_A": [c.to_dict() for c in self.condition_A],
                "condition_B": [c.to_dict() for c in self.condition_B],
                "condition_C": [c.to_dict() for c in self.condition_C],
                "overall": self.overall}


def divided_difference_bound(values, h, orders=(1, 2, 3)):
    """max over n of max |Delta^n f| / h^n."""
    v = np.asarray(values)
    out = 0.0
    for n in orders:
        if v.size <= n:
            break
        out = max(out, float(np.max(np.abs(np.diff(v, n)))) / h ** n)
    return out


def refinement_ratio(values, h, orders=(1, 2, 3), floor=1e-8):
    """Smoothness proxy: max over n of D_n(h) / D_n(2h), where D_n is the
    largest n-th divided difference on the grid of spacing h and on its
    every-other-point subgrid.  Resolved smooth samples give about 1; a
    jump in f gives about 2^n, a jump in f' about 2^(n-1)."""
    v = np.asarray(values)
    out = 0.0
    for n in orders:
        if v[::2].size <= n:
            break
        fine = divided_difference_bound(v, h, (n,))
        coarse = divided_difference_bound(v[::2], 2 * h, (n,))
        out = max(out, (fine + floor) / (coarse + floor))
    return out


def _growth(k, f):
    """How much |k f(k)| grows from the middle third to the outer third
    of the sampled range (bounded for f = O(1/k))."""
    a = np.abs(k)
    top = a.max()
    mid = (a >= top / 3) & (a < 2 * top / 3)
    out = a >= 2 * top / 3
    m_mid = np.max(np.abs(k[mid] * f[mid]), initial=0.0)
    m_out = np.max(np.abs(k[out] * f[out]), initial=0.0)
    return m_out / max(m_mid, 1e-12)


# one-sided stencils at the first sample: weights for f', f'' on 6 points
_D1 = np.array([-137, 300, -300, 200, -75, 12]) / 60.0
_D2 = np.array([45, -154, 214, -156, 61, -10]) / 12.0


def one_sided_derivatives(f, h):
    """(f(0), f'(0), f''(0)) from six equispaced samples starting at 0."""
    f = np.asarray(f)[:6]
    return np.array([f[0], _D1 @ f / h, _D2 @ f / h ** 2])


def check_condition_A(data, cfg=None):
    out = []
    k, r = np.asarray(data.r_grid), np.asarray(data.r_grid_values)
    if k.size < 3 or np.max(np.abs(k + k[::-1])) > 1e-12 * max(1.0, np.abs(k).max()):
        raise GridNotSymmetric("r samples must lie on a grid symmetric about k = 0")
    out.append(_le("A.symmetry r(-k) = conj r(k)", np.max(np.abs(r[::-1] - np.conj(r))), SYM_TOL))
    out.append(_le("A.decay |k r(k)| bounded", _growth(k, r), 10.0))
    if data.lam == 1:
        out.append(_lt("A.|r| < 1 (lambda = +1)", np.max(np.abs(r)), 1.0))
    if cfg is not None:
        kt = trace_test_points()
        s2 = scattering.Spectral(cfg).s_plus(kt)[1]
        tr = scattering.trace_formula_s2p(kt, data.r_nodes, data.r_weights, data.r_values,
                                          data.r_tail, data.cut, data.eigenvalues_x, data.lam)
        out.append(_le("A.trace formula for s2+", np.max(np.abs(tr - s2)), TRACE_TOL))
    h = k[1] - k[0]
    out.append(_le("A.smoothness of r (refinement ratio)", refinement_ratio(r, h), SMOOTH_TOL))
    return out


def trace_test_points():
    """20 points of the upper half-plane with Im k >= 0.1."""
    re = np.linspace(-2.0, 2.0, 5)
    im = np.array([0.1, 0.3, 0.7, 1.5])
    return (re[None, :] + 1j * im[:, None]).ravel()


def pairing_defect(points):
    """max over the list of the distance from -conj(k) to the list."""
    p = np.asarray(points, dtype=complex)
    if p.size == 0:
        return 0.0
    mirror = -np.conj(p)
    return float(max(np.min(np.abs(p - m)) for m in mirror))


def norming_pairing_defect(points, norming):
    """Norming constants at k and -conj(k) must be complex conjugates."""
    p = np.asarray(points, dtype=complex)
    m = np.asarray(norming, dtype=complex)
    out = 0.0
    for j, kj in enumerate(p):
        i = int(np.argmin(np.abs(p + np.conj(kj))))
        out = max(out, abs(m[i] - np.conj(m[j])) / max(abs(m[j]), 1e-300))
    return out


def check_condition_B(data):
    out = []
    kx = np.asarray(data.eigenvalues_x, dtype=complex)
    zb = np.asarray(data.eigenvalues_bc, dtype=complex)
    if data.lam == 1:
        out.append(_le("B.no eigenvalues (lambda = +1)", kx.size + zb.size, 0))
        return out
    out.append(_le("B.pairing of k_j", pairing_defect(kx), SYM_TOL))
    out.append(_le("B.pairing of z_j", pairing_defect(zb), SYM_TOL))
    out.append(_le("B.pairing of m_j", norming_pairing_defect(kx, data.norming_x), SYM_TOL))
    out.append(_le("B.pairing of m2_j", norming_pairing_defect(zb, data.norming_bc), SYM_TOL))
    bad_k = sum(1 for z in kx if not z.imag > 0)
    bad_z = sum(1 for z in zb if classify_region(z) != RegionId.OMEGA2)
    out.append(_le("B.k_j in the upper half-plane", bad_k, 0))
    out.append(_le("B.z_j in the open sector Omega2", bad_z, 0))
    return out


def check_condition_C(data, cfg=None):
    out = []
    kc = np.asarray(data.c_check_k, dtype=complex)
    cc = np.asarray(data.c_check_values, dtype=complex)
    n = kc.size // 2
    k1, k2, c1, c2 = kc[:n], kc[n:], cc[:n], cc[n:]
    s = np.abs(k1)
    near = s <= 0.1 + 1e-12
    if n == 0 or near.sum() < 6 or np.abs(k2 - s * OMEGA2).max() > 1e-12:
        raise InsufficientNearOriginSamples("c must be sampled on both rays with six points in [0, 0.1]")
    out.append(_le("C.symmetry c(-conj k) = conj c(k)", np.max(np.abs(c2 - np.conj(c1))), SYM_TOL))
    out.append(_le("C.decay |k c(k)| bounded", _growth(k1, c1), 10.0))
    T_inf = not np.isfinite(data.T)
    if T_inf:
        h = s[1] - s[0]
        rk = np.asarray(data.r_check_k)
        rv = np.asarray(data.r_check_values)
        pos = rk >= -1e-15
        dr = one_sided_derivatives(rv[pos], rk[pos][1] - rk[pos][0])
        dc = one_sided_derivatives(c1[near], h) / OMEGA1 ** np.arange(3)
        for j in range(3):
            out.append(_le(f"C.d^{j}c(0) = -d^{j}r(0)", abs(dc[j] + dr[j]), DERIV_TOL))
    if data.lam == -1 and cfg is not None:
        out.extend(_pole_checks(data, cfg))
    field_ = KernelField(data)
    t_top = cfg.t_grid[1] if cfg is not None else (data.T if np.isfinite(data.T) else 1.0)
    ts = np.linspace(0.0, t_top, SMOOTH_POINTS)
    vals = np.array([field_._real_part(np.zeros(1), t)[0] + field_._ray_part(np.zeros(1), t)[0]
                     for t in ts])
    out.append(_le("C.smoothness in t of the combined integral",
                   refinement_ratio(vals, ts[1] - ts[0]), SMOOTH_TOL))
    return out


def _pole_checks(data, cfg):
    """Poles of c in Omega2 against the stored z_j: the winding number of
    r1- on the sector boundary and the residue at each z_j."""
    sp = scattering.Spectral(cfg)
    K = cfg.k_box
    path = scattering._rect_path(0.0, K, np.pi / 3 + 0.01, 2 * np.pi / 3 - 0.01, scattering._polar)
    w = 0 if cfg.bt.is_zero else scattering._winding(sp.r1_minus, path)
    zb = np.asarray(data.eigenvalues_bc, dtype=complex)
    kx = np.asarray(data.eigenvalues_x, dtype=complex)
    in2 = sum(1 for z in kx if classify_region(z) == RegionId.OMEGA2)
    count = np.inf if w is None else abs(w - in2 - zb.size)
    out = [_le("C.pole count of c in Omega2", count, 0)]
    worst = 0.0
    for z, m in zip(zb, data.norming_bc):
        rad = scattering._radius(z)
        pts, e = scattering._circle(z, rad)
        res = np.mean(sp.c(pts) * rad * e)
        worst = max(worst, abs(-1j * res - m) / max(abs(m), 1e-300))
    out.append(_le("C.residues of c at z_j", worst, 1e-5))
    return out


def validate(data, cfg=None):
    return ValidationReport(check_condition_A(data, cfg), check_condition_B(data),
                            check_condition_C(data, cfg))
