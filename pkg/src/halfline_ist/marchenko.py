"""Marchenko reconstruction of q(x, t) from the scattering data.

Kernel:
    H(z, t) = (1 - lam)/2 * [ sum_{k_j in Omega1,3} m_j e^{i k_j z + 8i k_j^3 t}
                              + sum_j m2_j e^{i z_j z + 8i z_j^3 t} ]
              + 1/(2 pi) * [ int_{dOmega2} c(k) e^{i(kz + 8k^3 t)} dk
                             + int_R r(k) e^{i(kz + 8k^3 t)} dk ].
The two integrals are folded onto k >= 0 (the arg = pi/3 ray for c) using
r(-k) = conj r(k) and c(-conj k) = conj c(k), so each becomes twice a real
part.  Beyond the sampled range the fitted inverse-power tails are
integrated in closed form (t = 0) or along a steepest-descent type path.

Marchenko system on [x, inf):
    K1(x, y) + lam int_x^inf K2(x, z) H(z + y) dz = 0,
    K2(x, y) + H(x + y) + int_x^inf K1(x, z) H(z + y) dz = 0,
and q(x, t) = -2 lam K2(x, x; t).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack, lu_factor, lu_solve
from scipy.special import exp1

from .core import OMEGA1, RegionId, SolutionGrid, classify_region
from .errors import SingularSystem

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
TP_ZERO = 1e-13
PATH_PANELS = 32
DECAY_END = 40.0


def tail_integrals(a, n_max, z, tp):
    """I_n(z) = int_a^inf k^-n exp(i(k z + 8 k^3 tp)) dk for n = 1..n_max.

    The contour starts at a (real, or on the pi/3 ray) and leaves to
    infinity inside a sector where the integrand decays.  Returns an
    array of shape (len(z), n_max).  At z = 0, tp = 0 the divergent real
    part of I_1 is dropped; it only ever multiplies a purely imaginary
    leading coefficient.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    out = np.zeros((z.size, n_max), complex)
    if abs(tp) < TP_ZERO:
        small = np.abs(a) * z <= 2.0
        idx = np.nonzero(small & (z > 0))[0]
        if idx.size:
            w = -1j * a * z[idx]
            E = exp1(w)
            for n in range(1, n_max + 1):
                out[idx, n - 1] = a ** (1 - n) * E
                E = (np.exp(-w) - w * E) / n
        idx0 = np.nonzero(z == 0)[0]
        if idx0.size:
            out[idx0, 0] = -1j * np.angle(-1j * a)
            for n in range(2, n_max + 1):
                out[idx0, n - 1] = a ** (1 - n) / (n - 1)
        big = np.nonzero(~small)[0]
        if big.size:
            out[big] = _path_rule(a, n_max, z[big], 0.0, 1j)
        return out
    if tp < 0 and a.imag == 0:
        raise ValueError("no decaying path from a real start point for tp < 0")
    d = np.exp(1j * np.pi / 6) if tp > 0 else 1j
    return _path_rule(a, n_max, z, tp, d)


def _path_rule(a, n_max, z, tp, d):
    """Composite Gauss-Legendre rule along k = a + rho d, rho in [0, rho_end],
    with geometrically growing panels.  On the chosen paths the decay
    exponent D(rho) = c1 rho + c2 rho^2 + c3 rho^3 has non-negative
    coefficients; rho_end solves D = DECAY_END."""
    c1 = z * d.imag + 8 * tp * (3 * a * a * d).imag
    c2 = 8 * tp * (3 * a * d * d).imag
    c3 = 8 * tp * (d ** 3).imag
    D = lambda r: (c1 + (c2 + c3 * r) * r) * r
    lo, hi = np.zeros(z.size), np.ones(z.size)
    while np.any(D(hi) < DECAY_END):
        hi = np.where(D(hi) < DECAY_END, 2 * hi, hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = D(mid) < DECAY_END
        lo, hi = np.where(below, mid, lo), np.where(below, hi, mid)
    r_end = hi
    slope = np.abs(z + 24 * tp * a * a)
    h0 = np.minimum(np.minimum(0.25 * abs(a), 3.0 / np.maximum(slope, 1e-300)), r_end / PATH_PANELS)
    # growth factor g with h0 (g^P - 1)/(g - 1) = r_end
    ratio = r_end / h0
    glo, ghi = np.ones(z.size), np.full(z.size, 2.0)
    S = lambda g: np.where(np.abs(g - 1) < 1e-12, PATH_PANELS,
                           (g ** PATH_PANELS - 1) / np.where(np.abs(g - 1) < 1e-12, 1.0, g - 1))
    while np.any(S(ghi) < ratio):
        ghi = np.where(S(ghi) < ratio, 2 * ghi, ghi)
    for _ in range(60):
        mid = 0.5 * (glo + ghi)
        below = S(mid) < ratio
        glo, ghi = np.where(below, mid, glo), np.where(below, ghi, mid)
    g = ghi
    j = np.arange(PATH_PANELS + 1)
    widths = h0[:, None] * g[:, None] ** j[None, :-1]
    edges = np.concatenate([np.zeros((z.size, 1)), np.cumsum(widths, axis=1)], axis=1)
    ea, eb = edges[:, :-1, None], edges[:, 1:, None]
    rho = ((ea + eb) / 2 + (eb - ea) / 2 * _GL_X).reshape(z.size, -1)
    wts = ((eb - ea) / 2 * _GL_W).reshape(z.size, -1)
    k = a + rho * d
    wt = wts * d * np.exp(1j * (k * z[:, None] + 8 * k ** 3 * tp))
    out = np.empty((z.size, n_max), complex)
    kinv = 1.0 / k
    p = kinv.copy()
    for n in range(n_max):
        out[:, n] = np.sum(wt * p, axis=1)
        p *= kinv
    return out


class KernelField:
    """Evaluator of H(z, t) and H0(z) from a ScatteringData set."""

    def __init__(self, data):
        self.data = data
        self.lam = data.lam
        self.disc_weight = (1 - data.lam) / 2
        self.kr = np.asarray(data.r_nodes, dtype=float)
        self.wr = np.asarray(data.r_weights) * np.asarray(data.r_values)
        self.r_tail = np.asarray(data.r_tail, dtype=complex)
        self.kc = np.asarray(data.c_nodes, dtype=float) * OMEGA1
        self.wc = np.asarray(data.c_weights) * np.asarray(data.c_values) * OMEGA1
        ct = np.asarray(data.c_tail, dtype=complex)
        self.c_tail = ct if ct.size else np.zeros((2, 0), complex)
        self.c_horizon = data.c_horizon
        self.cut = data.cut
        self.c_cut = data.c_cut
        # discrete part at t: Omega1 and Omega3 zeros of s2+ and zeros of r1-
        keep = [classify_region(kj) in (RegionId.OMEGA1, RegionId.OMEGA3)
                for kj in data.eigenvalues_x]
        self.pts = np.concatenate([np.asarray(data.eigenvalues_x)[keep] if len(keep) else
                                   np.zeros(0, complex), data.eigenvalues_bc]).astype(complex)
        self.ms = np.concatenate([np.asarray(data.norming_x)[keep] if len(keep) else
                                  np.zeros(0, complex), data.norming_bc]).astype(complex)
        self.pts0 = np.asarray(data.eigenvalues_x, dtype=complex)
        self.ms0 = np.asarray(data.norming_x, dtype=complex)

    def _real_part(self, z, t):
        out = np.zeros(z.size, complex)
        for lo in range(0, z.size, 64):
            zz = z[lo:lo + 64]
            E = np.exp(1j * (np.outer(zz, self.kr) + 8 * self.kr ** 3 * t))
            out[lo:lo + 64] = E @ self.wr
        if self.r_tail.size:
            out += tail_integrals(self.cut + 0j, self.r_tail.size, z, t) @ self.r_tail
        return 2 * out.real

    def _ray_part(self, z, t):
        if self.kc.size == 0 and not np.any(self.c_tail):
            return np.zeros(z.size)
        out = np.zeros(z.size, complex)
        for lo in range(0, z.size, 64):
            zz = z[lo:lo + 64]
            E = np.exp(1j * (np.outer(zz, self.kc) + 8 * self.kc ** 3 * t))
            out[lo:lo + 64] = E @ self.wc
        n = self.c_tail.shape[1]
        if n:
            a = self.c_cut * OMEGA1
            out += tail_integrals(a, n, z, t) @ self.c_tail[0]
            if np.any(self.c_tail[1]):
                out += tail_integrals(a, n, z, t - self.c_horizon) @ self.c_tail[1]
        return 2 * out.real

    def _discrete(self, z, t, pts, ms):
        if pts.size == 0:
            return np.zeros(z.size, complex)
        e = np.exp(1j * np.outer(z, pts) + 8j * pts ** 3 * t)
        return self.disc_weight * (e @ ms)

    def H_complex(self, z, t):
        z = np.atleast_1d(np.asarray(z, dtype=float))
        cont = (self._real_part(z, t) + self._ray_part(z, t)) / (2 * np.pi)
        return cont + self._discrete(z, t, self.pts, self.ms)

    def H(self, z, t):
        return self.H_complex(z, t).real

    def H0(self, z):
        """Full-line kernel of the initial profile (all zeros of s2+, r only)."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        val = self._real_part(z, 0.0) / (2 * np.pi) + self._discrete(z, 0.0, self.pts0, self.ms0)
        return val.real


class KernelTable:
    """H(., t) tabulated on Chebyshev panels in z and evaluated by
    barycentric interpolation; zero beyond the numerical support."""

    def __init__(self, field, t, panel=2.0, nodes=24, decay_tol=1e-12, z_cap=None):
        self.t = t
        self.panel = panel
        j = np.arange(nodes)
        self.cheb = np.cos(np.pi * j / (nodes - 1))[::-1]
        w = (-1.0) ** j
        w[0] *= 0.5
        w[-1] *= 0.5
        self.bw = w
        if z_cap is None:
            z_cap = float(field.data.meta.get("z_resolved", 400.0))
        vals, imag = [], 0.0
        scale = None
        quiet = 0
        a = 0.0
        while a < z_cap:
            zz = a + panel * (self.cheb + 1) / 2
            h = field.H_complex(zz, t)
            imag = max(imag, float(np.max(np.abs(h.imag))))
            vals.append(h.real)
            m = float(np.max(np.abs(h.real)))
            scale = m if scale is None else max(scale, m)
            quiet = quiet + 1 if m < decay_tol * max(1.0, scale) else 0
            a += panel
            if quiet >= 2:
                break
        self.values = np.array(vals)
        self.z_end = a
        self.max_imag = imag
        self.max_abs = scale

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        shape = z.shape
        z = z.ravel()
        out = np.zeros(z.size)
        inside = (z >= 0) & (z < self.z_end)
        zi = z[inside]
        p = np.minimum((zi // self.panel).astype(int), len(self.values) - 1)
        x = 2 * (zi - p * self.panel) / self.panel - 1
        diff = x[:, None] - self.cheb[None, :]
        hit = diff == 0
        diff[hit] = 1.0
        c = self.bw[None, :] / diff
        f = self.values[p]
        val = np.sum(c * f, axis=1) / np.sum(c, axis=1)
        rows, cols = np.nonzero(hit)
        val[rows] = f[rows, cols]
        out[inside] = val
        return out.reshape(shape)


def _nodes(x, length, n):
    """Composite 16-point Gauss-Legendre rule on [x, x + length]."""
    per = 16
    panels = max(1, math.ceil(n / per))
    g, w = np.polynomial.legendre.leggauss(per)
    e = x + length * np.arange(panels + 1) / panels
    a, b = e[:-1, None], e[1:, None]
    return ((a + b) / 2 + (b - a) / 2 * g).ravel(), ((b - a) / 2 * w).ravel()


@dataclass
class MarchenkoSolution:
    x: float
    t: float
    y_nodes: np.ndarray
    K1_values: np.ndarray
    K2_values: np.ndarray
    K2xx: float
    cond_estimate: float
    residual: float



def solve_marchenko_at(Hfun, lam, x, z_end, n=96, t=0.0, cond_limit=1e12):
    """Nystrom solve of the Marchenko system at one point x.

    Hfun evaluates H(., t) for a fixed t and z_end bounds its numerical
    support, so the y-interval is [x, z_end - x].  Unknowns are stored
    interleaved, [K1(y1), K2(y1), K1(y2), ...]; the LU solve is followed
    by one step of iterative refinement.
    """
    length = z_end - 2 * x
    if length <= 0:
        e = np.zeros(0)
        return MarchenkoSolution(x, t, e, e, e, 0.0, 1.0, 0.0)
    y, w = _nodes(x, length, n)
    m = y.size
    Hm = Hfun(y[:, None] + y[None, :]) * w[None, :]
    A = np.eye(2 * m)
    A[0::2, 1::2] += lam * Hm
    A[1::2, 0::2] += Hm
    rhs = np.zeros(2 * m)
    rhs[1::2] = -Hfun(x + y)
    anorm = np.max(np.sum(np.abs(A), axis=0))
    lu, piv = lu_factor(A, check_finite=False)
    rcond, _ = lapack.dgecon(lu, anorm, norm="1")
    if not np.isfinite(rcond) or rcond <= 1.0 / cond_limit:
        raise SingularSystem(f"Marchenko system singular at x={x:g} (rcond={rcond:.3g})")
    sol = lu_solve((lu, piv), rhs, check_finite=False)
    sol += lu_solve((lu, piv), rhs - A @ sol, check_finite=False)
    res = float(np.max(np.abs(A @ sol - rhs), initial=0.0))
    K1, K2 = sol[0::2], sol[1::2]
    # Nystrom interpolation of the second equation back to y = x
    K2xx = -Hfun(np.array([2 * x]))[0] - np.sum(w * K1 * Hfun(y + x))
    return MarchenkoSolution(x, t, y, K1, K2, float(K2xx), 1.0 / rcond, res)


def kernel_H(x, t, data):
    """H(x, t) for x >= 0 (real values)."""
    return KernelField(data).H(x, t)


def kernel_H0(x, data):
    return KernelField(data).H0(x)


def reconstruct_q(field, x, t, n=96, panel=2.0, nodes=24):
    """q(x, t) at one point."""
    table = KernelTable(field, t, panel, nodes)
    sol = solve_marchenko_at(table, field.lam, x, table.z_end, n, t)
    return -2 * field.lam * sol.K2xx


def reconstruct_column(field, t, xs, n, panel, nodes):
    table = KernelTable(field, t, panel, nodes)
    q = np.empty(len(xs))
    conds = np.empty(len(xs))
    for i, x in enumerate(xs):
        sol = solve_marchenko_at(table, field.lam, x, table.z_end, n, t)
        q[i] = -2 * field.lam * sol.K2xx
        conds[i] = sol.cond_estimate
    return q, conds, table


def reconstruct_grid(data, cfg, threads=1, keep_tables=False):
    """q on the configured (x, t) lattice.  Columns in t are independent
    and may run on several threads; results are placed by index so the
    output does not depend on the scheduling."""
    field = KernelField(data)
    xs, ts = cfg.x_nodes(), cfg.t_nodes()

    def column(j):
        return reconstruct_column(field, ts[j], xs, cfg.nystrom_n, cfg.z_panel, cfg.z_nodes)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            cols = list(ex.map(column, range(len(ts))))
    else:
        cols = [column(j) for j in range(len(ts))]
    q = np.stack([c[0] for c in cols], axis=1)
    cond = np.stack([c[1] for c in cols], axis=1)
    diag = {
        "max_condition": float(np.max(cond)),
        "max_kernel_imag": float(max(c[2].max_imag for c in cols)),
        "max_kernel_abs": float(max(c[2].max_abs for c in cols)),
        "kernel_support": float(max(c[2].z_end for c in cols)),
        "nystrom_n": cfg.nystrom_n,
    }
    grid = SolutionGrid(x_nodes=xs, t_nodes=ts, q_values=q)
    if keep_tables:
        return grid, diag, [c[2] for c in cols]
    return grid, diag
