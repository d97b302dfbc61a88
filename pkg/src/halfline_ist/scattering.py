"""Direct scattering: spectral functions of the initial profile u(x) and of
the boundary triplet (v, v1, v2), eigenvalues, norming constants and the
assembled scattering data.

Conventions.  S(k) = Psi(0,0,k)^{-1} = [[s2+, -s1+], [-s2-, s1-]] and
P(k) = hat-Psi(0,k) = [[p1-, p1+], [p2-, p2+]], R = S P.  The reflection
coefficient is r = -s2-/s2+, the boundary spectral function is
c = p2- / (s2+ r1-) with r1- = p1- s2+ - p2- s1+.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import exp1  # noqa: F401  (re-exported for kernel tails)

from . import laxpair
from .core import (OMEGA1, OMEGA2, RegionId, ScatteringData, classify_region,
                   det2, inv2)
from .errors import (BoundaryZero, InconsistentResidue, MultipleZero, NearPole,
                     RealZeroOfS2, SingularPsi, VanishingS1AtZero)


class Spectral:
    """Evaluator of the spectral functions for one configuration."""

    def __init__(self, cfg, u_profile=None):
        self.cfg = cfg
        self.lam = cfg.lam
        self.u = cfg.u if u_profile is None else u_profile
        self.bt = cfg.bt
        self.T = cfg.T_eff
        self.tol = cfg.step_tol

    # x-problem ---------------------------------------------------------
    def s_plus(self, k):
        """(s1+, s2+) from the chi-system; analytic for Im k >= 0."""
        chi, _ = laxpair.jost_columns(self.u, self.lam, k, self.cfg.x_max, 0.0, self.tol, "+")
        return chi[:, 0], chi[:, 1]

    def s_minus(self, k):
        """(s1-, s2-) from the other Jost column; analytic for Im k <= 0."""
        _, eta = laxpair.jost_columns(self.u, self.lam, k, self.cfg.x_max, 0.0, self.tol, "-")
        return eta[:, 0], eta[:, 1]

    def s_all(self, k):
        chi, eta = laxpair.jost_columns(self.u, self.lam, k, self.cfg.x_max, 0.0, self.tol, "+-")
        return chi[:, 0], chi[:, 1], eta[:, 0], eta[:, 1]

    # t-problem ---------------------------------------------------------
    def p_columns(self, k, which="-+"):
        """P columns (p1-, p2-) and (p1+, p2+)."""
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        if self.bt.is_zero:
            one, zero = np.ones(k.size, complex), np.zeros(k.size, complex)
            return np.stack([one, zero], 1), np.stack([zero, one], 1)
        return laxpair.hat_psi_columns(0.0, self.bt, self.lam, k, self.T, self.tol, which)

    # combined ----------------------------------------------------------
    def r1_minus(self, k, with_parts=False):
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        s1p, s2p = self.s_plus(k)
        pm, _ = self.p_columns(k, "-")
        r1m = pm[:, 0] * s2p - pm[:, 1] * s1p
        if with_parts:
            return r1m, s1p, s2p, pm
        return r1m

    def c(self, k):
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        if self.bt.is_zero:
            return np.zeros(k.size, complex)
        r1m, s1p, s2p, pm = self.r1_minus(k, with_parts=True)
        return pm[:, 1] / (s2p * r1m)

    def reflection(self, k):
        k = np.atleast_1d(np.real(np.asarray(k))).astype(complex)
        s1p, s2p, s1m, s2m = self.s_all(k)
        if np.any(np.abs(s2p) <= self.cfg.tol_root):
            raise RealZeroOfS2("s2+ vanishes on the real axis: data outside the admissible class")
        return -s2m / s2p


@dataclass
class MatrixSample:
    """2x2 matrices M (shape (n, 2, 2)) sampled at the points k."""
    k: np.ndarray
    M: np.ndarray

    @property
    def det(self):
        return det2(self.M)


class SMatrixSample(MatrixSample):
    s2p = property(lambda self: self.M[:, 0, 0])
    s1p = property(lambda self: -self.M[:, 0, 1])
    s2m = property(lambda self: -self.M[:, 1, 0])
    s1m = property(lambda self: self.M[:, 1, 1])


class PMatrixSample(MatrixSample):
    p1m = property(lambda self: self.M[:, 0, 0])
    p1p = property(lambda self: self.M[:, 0, 1])
    p2m = property(lambda self: self.M[:, 1, 0])
    p2p = property(lambda self: self.M[:, 1, 1])


class RMatrixSample(MatrixSample):
    r1m = property(lambda self: self.M[:, 0, 0])
    r1p = property(lambda self: self.M[:, 0, 1])
    r2m = property(lambda self: self.M[:, 1, 0])
    r2p = property(lambda self: self.M[:, 1, 1])


# ---------------------------------------------------------------------------
# operations on a configuration

def chi_system_s_column(cfg, k, u_profile=None):
    return Spectral(cfg, u_profile).s_plus(k)


def s_matrix(cfg, k, u_profile=None):
    """S(k) = Psi(0,0,k)^{-1} for real k."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    sp = Spectral(cfg, u_profile)
    Psi, _ = laxpair.jost_psi_at(0.0, 0.0, sp.u, cfg.lam, k, cfg.x_max, cfg.step_tol)
    if np.any(np.abs(det2(Psi)) < 1e-10):
        raise SingularPsi("Jost matrix is numerically singular")
    return SMatrixSample(k.astype(complex), inv2(Psi))


def reflection(cfg, k, u_profile=None):
    return Spectral(cfg, u_profile).reflection(k)


def p_matrix(cfg, k):
    """P(k) = hat-Psi(0, k)."""
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    pm, pp = Spectral(cfg).p_columns(k)
    return PMatrixSample(k, np.stack([pm, pp], axis=2))


def r_matrix(cfg, k):
    """R = S P for real k."""
    S = s_matrix(cfg, k)
    return RMatrixSample(S.k, S.M @ p_matrix(cfg, S.k).M)


def determinant_relation_residual(cfg, k):
    """max |1 - lam |rho|^2 - 1/|r1-|^2| on real k, rho = r + c."""
    sp = Spectral(cfg)
    k = np.atleast_1d(np.asarray(k, dtype=float)).astype(complex)
    r = sp.reflection(k)
    c = sp.c(k)
    r1m = sp.r1_minus(k)
    rho = r + c
    return float(np.max(np.abs(1 - cfg.lam * np.abs(rho) ** 2 - 1 / np.abs(r1m) ** 2)))


def r1_minus(cfg, k):
    return Spectral(cfg).r1_minus(k)


def c_function(cfg, k, poles=()):
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    for z in poles:
        if np.any(np.abs(k - z) <= cfg.tol_root):
            raise NearPole(f"evaluation point within tol_root of the pole {z}")
    return Spectral(cfg).c(k)


def global_relation_residual(cfg, k, q_T_profile):
    """max |s2+ p1+ - s1+ p2+ - r1+| / max(1, |r1+|) over the points k in
    the upper half-plane, with r1+(k, T) = -exp(8ik^3 T) s1+_T(k) obtained
    from the profile q(., T) by a separate x-problem solve.  Inside Omega2
    both sides grow like exp(8 |Im k^3| T), hence the relative scale."""
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    sp = Spectral(cfg)
    s1p, s2p = sp.s_plus(k)
    _, pp = sp.p_columns(k, "+")
    lhs = s2p * pp[:, 0] - s1p * pp[:, 1]
    s1T, _ = Spectral(cfg, q_T_profile).s_plus(k)
    rhs = -np.exp(8j * k ** 3 * cfg.T) * s1T
    return float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))))


def trace_formula_s2p(k, r_nodes, r_weights, r_values, r_tail, cut, eigenvalues, lam):
    """s2+(k) for Im k > 0 from |r| on the real line and the zeros k_j.

    s2+(k) = prod((k - k_j)/(k - conj k_j))^{(1-lam)/2}
             * exp( (i/2pi) int log(1 - lam |r(mu)|^2) / (mu - k) dmu ).
    Uses |r(-mu)| = |r(mu)|; the part beyond the cut is taken from the
    fitted tail model.
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    f = np.log(1 - lam * np.abs(r_values) ** 2)
    g, w = np.polynomial.legendre.leggauss(64)
    tau = 0.5 * (g + 1)               # mu = cut / tau on (cut, inf)
    mu = cut / tau
    wmu = 0.5 * w * cut / tau ** 2
    rt = sum(a * mu ** -(n + 1) for n, a in enumerate(r_tail))
    ft = np.log(1 - lam * np.abs(rt) ** 2)
    mus = np.concatenate([r_nodes, mu])
    ws = np.concatenate([r_weights, wmu])
    fs = np.concatenate([f, ft])
    kern = 2 * k[:, None] / (mus[None, :] ** 2 - k[:, None] ** 2)
    integral = (kern * (ws * fs)[None, :]).sum(axis=1)
    out = np.exp(1j / (2 * np.pi) * integral)
    if lam == -1:
        for kj in eigenvalues:
            out *= (k - kj) / (k - np.conj(kj))
    return out


# ---------------------------------------------------------------------------
# zeros by the argument principle

def _winding(f, path_fn, n0=48, max_pts=4000):
    """Winding number of f along a closed path given by path_fn(u), u in
    [0, 1].  Sampling is refined until every argument step is below pi/4."""
    u = np.linspace(0.0, 1.0, n0 + 1)
    vals = f(path_fn(u))
    while True:
        if np.any(vals == 0) or not np.all(np.isfinite(vals)):
            return None
        d = np.angle(vals[1:] / vals[:-1])
        bad = np.nonzero(np.abs(d) > np.pi / 4)[0]
        if bad.size == 0:
            return int(round(d.sum() / (2 * np.pi)))
        if u.size > max_pts:
            return None
        um = 0.5 * (u[bad] + u[bad + 1])
        vm = f(path_fn(um))
        u = np.insert(u, bad + 1, um)
        vals = np.insert(vals, bad + 1, vm)


SPLIT = 0.4637


def _rect_path(x0, x1, y0, y1, mapping):
    def path(u):
        u = np.asarray(u) * 4.0
        side = np.minimum(np.floor(u), 3).astype(int)
        s = u - side
        xs = np.choose(side, [x0 + s * (x1 - x0), np.full_like(s, x1),
                              x1 - s * (x1 - x0), np.full_like(s, x0)])
        ys = np.choose(side, [np.full_like(s, y0), y0 + s * (y1 - y0),
                              np.full_like(s, y1), y1 - s * (y1 - y0)])
        return mapping(xs, ys)
    return path


def _cartesian(x, y):
    return x + 1j * y


def _polar(r, a):
    return r * np.exp(1j * a)


def _newton(f, k0, tol, maxit=30):
    k = complex(k0)
    h = 1e-6 * max(1.0, abs(k))
    for _ in range(maxit):
        fv = f(np.array([k, k + h, k - h]))
        d = (fv[1] - fv[2]) / (2 * h)
        if d == 0:
            break
        step = fv[0] / d
        k -= step
        if abs(step) < tol * max(1.0, abs(k)):
            break
    return k


def find_zeros(f, box, mapping="cartesian", tol=1e-10, min_size=1e-3, depth=0):
    """Simple zeros of the analytic function f inside a parameter
    rectangle box = (x0, x1, y0, y1), mapped to the plane either
    identically or as polar coordinates (radius, angle).  Boxes with a
    nonzero winding number are quadrisected until each holds one zero,
    which is then polished by Newton's method."""
    mp = _cartesian if mapping == "cartesian" else _polar
    x0, x1, y0, y1 = box
    w = _winding(f, _rect_path(x0, x1, y0, y1, mp))
    if w is None:
        # a zero on (or extremely near) the boundary: enlarge the box slightly
        if depth > 40:
            raise BoundaryZero("argument principle failed to resolve a zero on a box edge")
        ex, ey = 3.1e-3 * (x1 - x0), 2.3e-3 * (y1 - y0)
        box = (max(x0 - ex, 0.0) if mapping == "polar" else x0 - ex, x1 + ex, y0 - ey, y1 + ey)
        return find_zeros(f, box, mapping, tol, min_size, depth + 1)
    if w <= 0:
        return []
    size = max(x1 - x0, (y1 - y0) * (max(abs(x0), abs(x1)) if mapping == "polar" else 1.0))
    if w == 1 and size < 0.25:
        kc = mp(np.array([0.5 * (x0 + x1)]), np.array([0.5 * (y0 + y1)]))[0]
        k = _newton(f, kc, tol)
        # keep the Newton result only if it stayed in the box
        xr, yr = (k.real, k.imag) if mapping == "cartesian" else (abs(k), math.atan2(k.imag, k.real))
        pad = 0.01 * (x1 - x0)
        if x0 - pad <= xr <= x1 + pad and y0 - pad * (1 if mapping == "cartesian" else 1) <= yr <= y1 + pad:
            return [k]
    if size < min_size:
        if w > 1:
            raise MultipleZero(f"{w} zeros inside a box of size {size:.2e}")
        kc = mp(np.array([0.5 * (x0 + x1)]), np.array([0.5 * (y0 + y1)]))[0]
        return [_newton(f, kc, tol)]
    # off-centre split: zeros on symmetry lines never sit on an edge
    xm, ym = x0 + SPLIT * (x1 - x0), y0 + SPLIT * (y1 - y0)
    out = []
    for b in [(x0, xm, y0, ym), (xm, x1, y0, ym), (x0, xm, ym, y1), (xm, x1, ym, y1)]:
        out += find_zeros(f, b, mapping, tol, min_size, depth + 1)
    return out


def _sort(zs):
    zs = sorted(zs, key=lambda z: (round(z.real, 10), round(z.imag, 10)))
    return np.array(zs, dtype=complex)


def find_zeros_s2p(cfg, u_profile=None, h_min=1e-3):
    """Zeros of s2+ in the box [-K, K] x [h_min, K] of the upper half-plane."""
    sp = Spectral(cfg, u_profile)
    K = cfg.k_box
    zs = find_zeros(lambda k: sp.s_plus(k)[1], (-K, K, h_min, K), "cartesian", 1e-12)
    return _sort(zs)


def find_zeros_r1m(cfg, delta=0.01):
    """Zeros of r1- inside the sector pi/3 < arg k < 2pi/3, |k| < K."""
    if cfg.bt.is_zero:
        return np.zeros(0, complex)
    sp = Spectral(cfg)
    K = cfg.k_box
    zs = find_zeros(sp.r1_minus, (0.0, K, np.pi / 3 + delta, 2 * np.pi / 3 - delta), "polar", 1e-12)
    return _sort(zs)


def _circle(z, radius, n=64):
    th = 2 * np.pi * np.arange(n) / n
    return z + radius * np.exp(1j * th), np.exp(1j * th)


def _radius(z):
    """Circle radius: a fixed fraction of the distance to the nearest
    sector boundary ray or to the real axis."""
    a = math.atan2(z.imag, z.real)
    dists = [abs(z) * abs(math.sin(a - b)) for b in (0.0, np.pi / 3, 2 * np.pi / 3, np.pi)]
    return min(0.05, max(1e-3, 0.05 * min(dists)))


def cauchy_derivative(f, z, radius=None, n=64):
    radius = _radius(z) if radius is None else radius
    pts, e = _circle(z, radius, n)
    return np.mean(f(pts) / e) / radius


def norming_x(cfg, kj, u_profile=None):
    """m_j = 1 / (i s1+(k_j) ds2+/dk(k_j))."""
    sp = Spectral(cfg, u_profile)
    s1p, _ = sp.s_plus(np.array([kj]))
    if abs(s1p[0]) < 1e-12:
        raise VanishingS1AtZero(f"s1+ vanishes at the zero {kj}")
    ds2 = cauchy_derivative(lambda k: sp.s_plus(k)[1], kj)
    return 1.0 / (1j * s1p[0] * ds2)


def norming_bc(cfg, zj, rel_tol=1e-5):
    """m_j^2 = -i res c at z_j, cross-checked against p1-/(i s1+ dr1-/dk)."""
    sp = Spectral(cfg)
    rad = _radius(zj)
    pts, e = _circle(zj, rad)
    res = np.mean(sp.c(pts) * rad * e)
    m_res = -1j * res
    dr = cauchy_derivative(sp.r1_minus, zj, rad)
    r1m, s1p, s2p, pm = sp.r1_minus(np.array([zj]), with_parts=True)
    m_alt = pm[0, 0] / (1j * s1p[0] * dr)
    if abs(m_res - m_alt) > rel_tol * max(1e-300, abs(m_res)):
        raise InconsistentResidue(f"residue route {m_res} vs derivative route {m_alt}")
    return m_res, m_alt


# ---------------------------------------------------------------------------
# quadrature layout for the kernel integrals

def panel_nodes(cut, rate, cfg):
    """Composite Gauss-Legendre nodes on [0, cut] with panel widths keeping
    the phase change per panel below cfg.panel_phase; rate(s) is the local
    phase derivative."""
    edges = [0.0]
    while edges[-1] < cut:
        s = edges[-1]
        h = cfg.panel_hmax
        for _ in range(3):
            h = min(cfg.panel_hmax, cfg.panel_phase / (rate(s + 0.5 * h) + 1e-300))
        edges.append(min(cut, s + h))
    e = np.array(edges)
    g, w = np.polynomial.legendre.leggauss(cfg.ray_nodes)
    a, b = e[:-1, None], e[1:, None]
    return ((a + b) / 2 + (b - a) / 2 * g).ravel(), ((b - a) / 2 * w).ravel()


def _fit_fixed_order(k, f, order, lead, horizon):
    fams = 1 if horizon is None else 2
    E = [np.ones_like(k)] + ([np.exp(-8j * k ** 3 * horizon)] if fams == 2 else [])
    rhs = f - sum(lead[j] * E[j] / k for j in range(fams))
    coef = np.zeros((fams, order), complex)
    coef[:, 0] = lead[:fams]
    if order > 1:
        # the symmetry under k -> -conj k makes the coefficient of k^-n
        # lie on i^n R, so the unknowns are real
        A = np.array([E[j] * (1j / k) ** (n + 1) for j in range(fams) for n in range(1, order)]).T
        A = np.concatenate([A.real, A.imag])
        # column scaling keeps the least-squares problem well conditioned
        sc = np.linalg.norm(A, axis=0)
        sol, *_ = np.linalg.lstsq(A / sc, np.concatenate([rhs.real, rhs.imag]), rcond=None)
        beta = (sol / sc).reshape(fams, order - 1)
        coef[:, 1:] = beta * 1j ** np.arange(2, order + 1)
    return coef


def tail_model(coef, k, horizon=None):
    k = np.asarray(k, dtype=complex)
    out = sum(coef[0, n] * k ** -(n + 1) for n in range(coef.shape[1]))
    if coef.shape[0] > 1 and horizon is not None:
        e = np.exp(-8j * k ** 3 * horizon)
        out = out + e * sum(coef[1, n] * k ** -(n + 1) for n in range(coef.shape[1]))
    return out


def fit_tail(k, f, order, lead, horizon=None):
    """Least-squares fit f(k) ~ sum_n a_n k^-n (+ e^{-8ik^3 T} sum_n b_n k^-n).

    The leading coefficients are fixed to the known values in lead (one
    per family).  The number of terms, up to order, is the one that best
    extrapolates from the inner 3/4 of the window to the outer quarter;
    data that are not yet in their power-law regime thus get a short
    model instead of large cancelling coefficients.  Returns an array of
    shape (families, order) padded with zeros.
    """
    k = np.asarray(k, dtype=complex)
    fams = 1 if horizon is None else 2
    ak = np.abs(k)
    split = ak.min() + 0.75 * (ak.max() - ak.min())
    inner, outer = ak <= split, ak > split
    best, best_err = 1, np.inf
    for n in range(1, order + 1):
        if fams * (n - 1) >= inner.sum():
            break
        co = _fit_fixed_order(k[inner], f[inner], n, lead, horizon)
        err = np.max(np.abs(tail_model(co, k[outer], horizon) - f[outer]))
        if err < best_err:
            best, best_err = n, err
    coef = np.zeros((fams, order), complex)
    coef[:, :best] = _fit_fixed_order(k, f, best, lead, horizon)
    return coef


FIT_WINDOW = 0.6    # tails are fitted on [FIT_WINDOW * cut, cut]
NEAR_ORIGIN_STEP = 0.02
NEAR_ORIGIN_COUNT = 6


def kernel_horizon(cfg):
    t_top = cfg.t_grid[1]
    return max(cfg.T_eff if cfg.finite_T else 0.0, t_top)


# ---------------------------------------------------------------------------
# assembly

def assemble_scattering_data(cfg, log=None):
    """Full scattering data set for the configuration."""
    say = log or (lambda *a: None)
    lam = cfg.lam
    sp = Spectral(cfg)
    cut, ccut = cfg.real_smax, cfg.ray_smax
    Th = kernel_horizon(cfg)
    # z-range on which the sampled integrals are resolved
    zmax = 2 * max(cfg.x_max, cfg.x_grid[1]) + 40.0
    u0 = float(cfg.u(0.0))
    v0 = float(cfg.bt.v(0.0))
    vT = float(cfg.bt.v(cfg.T_eff))
    data = ScatteringData.empty(lam, cfg.T, cut)

    # reflection coefficient on a symmetric real grid
    kg = np.linspace(-cfg.k_max, cfg.k_max, cfg.k_n)
    data.r_grid = kg
    data.r_grid_values = sp.reflection(kg)
    kn = NEAR_ORIGIN_STEP * np.arange(-NEAR_ORIGIN_COUNT + 1, NEAR_ORIGIN_COUNT)
    data.r_check_k = kn
    data.r_check_values = sp.reflection(kn)
    say("r on the real grid")

    # quadrature samples for the kernel
    kr, wr = panel_nodes(cut, lambda s: 24 * s * s * Th + zmax, cfg)
    rv = sp.reflection(kr)
    m = kr >= FIT_WINDOW * cut
    data.r_nodes, data.r_weights, data.r_values = kr, wr, rv
    data.r_tail = fit_tail(kr[m].astype(complex), rv[m], cfg.tail_order,
                           [-0.5j * lam * u0])[0]
    say("r quadrature samples", kr.size)

    # eigenvalues
    kx = find_zeros_s2p(cfg)
    if lam == 1 and kx.size:
        raise MultipleZero("zeros of s2+ found for lambda = +1")
    data.eigenvalues_x = kx
    data.norming_x = np.array([norming_x(cfg, z) for z in kx], dtype=complex)
    say("zeros of s2+", kx)
    zb = find_zeros_r1m(cfg) if lam == -1 else np.zeros(0, complex)
    # a zero of r1- that is also a zero of s2+ is not a pole of c
    zb = np.array([z for z in zb if np.min(np.abs(kx - z), initial=np.inf) > 1e-6], dtype=complex)
    data.eigenvalues_bc = zb
    data.norming_bc = np.array([norming_bc(cfg, z)[0] for z in zb], dtype=complex)
    say("zeros of r1-", zb)

    # c on the ray arg k = pi/3
    if cfg.bt.is_zero:
        data.c_nodes = np.zeros(0)
        data.c_weights = np.zeros(0)
        data.c_values = np.zeros(0, complex)
        data.c_tail = np.zeros((2, cfg.tail_order), complex)
    else:
        sc, wc = panel_nodes(ccut, lambda s: 24 * s * s * Th, cfg)
        cv = sp.c(sc * OMEGA1)
        m = sc >= FIT_WINDOW * ccut
        hz = cfg.T_eff if cfg.finite_T else None
        tail = fit_tail((sc[m] * OMEGA1), cv[m], cfg.tail_order,
                        [0.5j * lam * v0, -0.5j * lam * vT], hz)
        if tail.shape[0] == 1:
            tail = np.vstack([tail, np.zeros_like(tail)])
        data.c_nodes, data.c_weights, data.c_values, data.c_tail = sc, wc, cv, tail
        data.c_horizon = cfg.T_eff
        data.c_cut = ccut
        say("c quadrature samples", sc.size)

    # check samples of c on both rays, including a near-origin stencil
    s_chk = np.concatenate([NEAR_ORIGIN_STEP * np.arange(NEAR_ORIGIN_COUNT),
                            np.linspace(0.2, ccut, 12)])
    kc = np.concatenate([s_chk * OMEGA1, s_chk * OMEGA2])
    data.c_check_k = kc
    data.c_check_values = sp.c(kc)
    data.meta = {"x_max": cfg.x_max, "T_eff": cfg.T_eff, "kernel_horizon": Th, "z_resolved": zmax,
                 "u0": u0, "v0": v0, "vT": vT}
    return data


def eigen_regions(data):
    """Regions of the stored eigenvalues (diagnostic)."""
    return {"x": [classify_region(z).value for z in data.eigenvalues_x],
            "bc": [classify_region(z).value for z in data.eigenvalues_bc]}


def in_omega2(z):
    return classify_region(z) == RegionId.OMEGA2
