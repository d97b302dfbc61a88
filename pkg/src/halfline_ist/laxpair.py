"""Lax pair of the mKdV equation q_t + q_xxx - 6 lam q^2 q_x = 0.

x-equation:  W_x = U W,  U = Q - i k sigma3,  Q = [[0, q], [lam q, 0]]
t-equation:  W_t = V W,  V = 2Q^3 - Q_xx - 2ik(Q^2 + Q_x) sigma3 + 4k^2 Q - 4ik^3 sigma3

Solutions are obtained by integrating these linear systems with an
adaptive Runge-Kutta method, vectorised over many spectral parameters at
once.  The free exponential is always divided out ("peeled") so that the
integrated quantity stays O(1) on the contour and in the sector where a
column is analytic.
"""

import numpy as np
from scipy.integrate import solve_ivp

from .core import IDENTITY
from .errors import StepFailure

BATCH = 192


def q_matrix(qval, lam):
    q = np.asarray(qval, dtype=float)
    out = np.zeros(q.shape + (2, 2), dtype=complex)
    out[..., 0, 1] = q
    out[..., 1, 0] = lam * q
    return out


def u_matrix(qval, lam, k):
    k = np.asarray(k, dtype=complex)
    Q = q_matrix(np.broadcast_to(qval, k.shape), lam)
    Q[..., 0, 0] -= 1j * k
    Q[..., 1, 1] += 1j * k
    return Q


def qhat_entries(v, v1, v2, lam, k):
    """Entries of V(0,t,k) + 4ik^3 sigma3 (the part vanishing with the data)."""
    q11 = -2j * lam * k * v * v
    q12 = 2 * lam * v ** 3 + 4 * k * k * v + 2j * k * v1 - v2
    q21 = 2 * v ** 3 + 4 * lam * k * k * v - 2j * lam * k * v1 - lam * v2
    return q11, q12, q21


def v_matrix(qval, qx, qxx, lam, k):
    k = np.asarray(k, dtype=complex)
    q11, q12, q21 = qhat_entries(qval, qx, qxx, lam, k)
    out = np.zeros(k.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = q11 - 4j * k ** 3
    out[..., 1, 1] = -q11 + 4j * k ** 3
    out[..., 0, 1] = q12
    out[..., 1, 0] = q21
    return out


def _run(rhs, a, b, y0, tol):
    if a == b:
        return y0.copy()
    sol = solve_ivp(rhs, (a, b), y0, method="DOP853", rtol=tol, atol=tol)
    if sol.status != 0:
        raise StepFailure(sol.message)
    return sol.y[:, -1]


def _batched(fn, k, batch=BATCH):
    """Apply fn to chunks of k sorted by modulus; fn returns arrays whose
    leading axis runs over the chunk.  Chunks with small |k| then take
    large steps.  Order of the result matches k."""
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    order = np.argsort(np.abs(k), kind="stable")
    outs = None
    for lo in range(0, k.size, batch):
        idx = order[lo:lo + batch]
        res = fn(k[idx])
        if not isinstance(res, tuple):
            res = (res,)
        if outs is None:
            outs = tuple(np.empty((k.size,) + r.shape[1:], dtype=r.dtype) for r in res)
        for o, r in zip(outs, res):
            o[idx] = r
    if outs is None:
        return None
    return outs if len(outs) > 1 else outs[0]


# ---------------------------------------------------------------------------
# x-equation

def integrate_x(q_profile, lam, k, x_from, x_to, W0=None, step_tol=1e-12):
    """W(x_to) for W_x = U W with W(x_from) = W0 (identity by default).

    Works with Wt = e^{ikx sigma3} W, whose generator only carries the
    potential.  Returns shape (n, 2, 2).
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    W0 = IDENTITY if W0 is None else np.asarray(W0, dtype=complex)
    W0 = np.broadcast_to(W0, k.shape + (2, 2))

    def one(kk, W0b):
        n = kk.size
        e0 = np.exp(1j * kk * x_from)
        Wt = W0b.copy()
        Wt[:, 0, :] *= e0[:, None]
        Wt[:, 1, :] /= e0[:, None]

        def rhs(x, y):
            W = y.reshape(2, 2, n)
            q = float(q_profile(x))
            e = np.exp(2j * kk * x)
            out = np.empty_like(W)
            out[0] = (q * e) * W[1]
            out[1] = (lam * q / e) * W[0]
            return out.ravel()
        y = _run(rhs, x_from, x_to, np.moveaxis(Wt, 0, -1).ravel(), step_tol)
        W = np.moveaxis(y.reshape(2, 2, n), -1, 0)
        e1 = np.exp(-1j * kk * x_to)
        W[:, 0, :] *= e1[:, None]
        W[:, 1, :] /= e1[:, None]
        return W

    order = np.argsort(np.abs(k), kind="stable")
    out = np.empty(k.shape + (2, 2), dtype=complex)
    for lo in range(0, k.size, BATCH):
        idx = order[lo:lo + BATCH]
        out[idx] = one(k[idx], W0[idx])
    return out


def jost_columns(q_profile, lam, k, x_max, x=0.0, step_tol=1e-12, which="+-"):
    """Normalised Jost columns at the point x.

    chi = e^{-ikx} Psi^+ with chi(x_max) = (0, 1) and
    eta = e^{ikx} Psi^- with eta(x_max) = (1, 0).
    chi is certified for Im k >= 0, eta for Im k <= 0.  Returns
    (chi, eta), each of shape (n, 2) (None when not requested).
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    want_p, want_m = "+" in which, "-" in which

    def one(kk):
        n = kk.size

        def rhs(s, y):
            q = float(q_profile(s))
            out = np.empty_like(y)
            i = 0
            if want_p:
                c1, c2 = y[0:n], y[n:2 * n]
                out[0:n] = -2j * kk * c1 + q * c2
                out[n:2 * n] = lam * q * c1
                i = 2 * n
            if want_m:
                e1, e2 = y[i:i + n], y[i + n:i + 2 * n]
                out[i:i + n] = q * e2
                out[i + n:i + 2 * n] = lam * q * e1 + 2j * kk * e2
            return out
        parts = []
        if want_p:
            parts += [np.zeros(n, complex), np.ones(n, complex)]
        if want_m:
            parts += [np.ones(n, complex), np.zeros(n, complex)]
        y = _run(rhs, x_max, x, np.concatenate(parts), step_tol)
        res = []
        i = 0
        if want_p:
            res.append(np.stack([y[0:n], y[n:2 * n]], axis=1))
            i = 2 * n
        if want_m:
            res.append(np.stack([y[i:i + n], y[i + n:i + 2 * n]], axis=1))
        return tuple(res)

    out = _batched(one, k)
    if not isinstance(out, tuple):
        out = (out,)
    chi = out[0] if want_p else None
    eta = out[-1] if want_m else None
    return chi, eta


def jost_psi_at(x, t_label, q_profile, lam, k, x_max, step_tol=1e-12):
    """Psi(x, t, k) ~ exp(-ik(x + 4k^2 t) sigma3) as x -> inf.

    q_profile is the potential at time t_label.  Returns (Psi, certified)
    where certified[:, j] marks the columns analytic at k (minus column
    for Im k <= 0, plus column for Im k >= 0).
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    chi, eta = jost_columns(q_profile, lam, k, x_max, x, step_tol)
    ph = 1j * k * (x + 4 * k * k * t_label)
    Psi = np.empty(k.shape + (2, 2), dtype=complex)
    Psi[:, :, 0] = eta * np.exp(-ph)[:, None]
    Psi[:, :, 1] = chi * np.exp(ph)[:, None]
    cert = np.stack([k.imag <= 0, k.imag >= 0], axis=1)
    return Psi, cert


def phi_at_t0(x, u_profile, lam, k, step_tol=1e-12):
    """Phi(x, 0, k): the x-equation solution equal to the identity at x = 0."""
    return integrate_x(u_profile, lam, k, 0.0, x, None, step_tol)


# ---------------------------------------------------------------------------
# t-equation at x = 0

def integrate_t(bt, lam, k, t_from, t_to, W0=None, step_tol=1e-12):
    """W(t_to) for W_t = V(0,t,k) W with W(t_from) = W0.

    Integrates Wt = e^{4ik^3 t sigma3} W; intended for k on the contour
    or close to it, where the conjugating exponentials are unimodular.
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    W0 = IDENTITY if W0 is None else np.asarray(W0, dtype=complex)
    W0 = np.broadcast_to(W0, k.shape + (2, 2))

    def one(kk, W0b):
        n = kk.size
        k3 = kk ** 3
        e0 = np.exp(4j * k3 * t_from)
        Wt = W0b.copy()
        Wt[:, 0, :] *= e0[:, None]
        Wt[:, 1, :] /= e0[:, None]

        def rhs(t, y):
            W = y.reshape(2, 2, n)
            v, v1, v2 = (float(f) for f in bt(t))
            q11, q12, q21 = qhat_entries(v, v1, v2, lam, kk)
            e = np.exp(8j * k3 * t)
            out = np.empty_like(W)
            out[0] = q11 * W[0] + (q12 * e) * W[1]
            out[1] = (q21 / e) * W[0] - q11 * W[1]
            return out.ravel()
        y = _run(rhs, t_from, t_to, np.moveaxis(Wt, 0, -1).ravel(), step_tol)
        W = np.moveaxis(y.reshape(2, 2, n), -1, 0)
        e1 = np.exp(-4j * k3 * t_to)
        W[:, 0, :] *= e1[:, None]
        W[:, 1, :] /= e1[:, None]
        return W

    order = np.argsort(np.abs(k), kind="stable")
    out = np.empty(k.shape + (2, 2), dtype=complex)
    for lo in range(0, k.size, BATCH):
        idx = order[lo:lo + BATCH]
        out[idx] = one(k[idx], W0[idx])
    return out


def _interaction_columns(bt, lam, kk, T, t, tol):
    """Peeled columns (a, b) from the full interaction-picture system."""
    n = kk.size
    k3 = kk ** 3

    def rhs(s, y):
        W = y.reshape(2, 2, n)
        v, v1, v2 = (float(f) for f in bt(s))
        q11, q12, q21 = qhat_entries(v, v1, v2, lam, kk)
        e = np.exp(8j * k3 * s)
        out = np.empty_like(W)
        out[0] = q11 * W[0] + (q12 * e) * W[1]
        out[1] = (q21 / e) * W[0] - q11 * W[1]
        return out.ravel()
    y0 = np.zeros((2, 2, n), complex)
    y0[0, 0] = 1
    y0[1, 1] = 1
    W = _run(rhs, T, t, y0.ravel(), tol).reshape(2, 2, n)
    e = np.exp(8j * k3 * t)
    a = np.stack([W[0, 0], e * W[1, 0]], axis=1)
    b = np.stack([W[0, 1] / e, W[1, 1]], axis=1)
    return a, b


def _column_system(bt, lam, kk, T, t, tol, minus):
    """Peeled column of hat-Psi integrated on its own (stable in the
    sectors where that column is analytic)."""
    n = kk.size
    d = 8j * kk ** 3

    def rhs(s, y):
        v, v1, v2 = (float(f) for f in bt(s))
        q11, q12, q21 = qhat_entries(v, v1, v2, lam, kk)
        w1, w2 = y[:n], y[n:]
        if minus:
            return np.concatenate([q11 * w1 + q12 * w2, q21 * w1 + (d - q11) * w2])
        return np.concatenate([(q11 - d) * w1 + q12 * w2, q21 * w1 - q11 * w2])
    y0 = np.concatenate([np.ones(n, complex), np.zeros(n, complex)] if minus
                        else [np.zeros(n, complex), np.ones(n, complex)])
    y = _run(rhs, T, t, y0, tol)
    return np.stack([y[:n], y[n:]], axis=1)


def hat_psi_columns(t, bt, lam, k, T, step_tol=1e-12, which="-+"):
    """Peeled columns of hat-Psi(t, k), normalised by exp(-4ik^3 T sigma3) at T.

    a = e^{4ik^3 t} hat-Psi^-   and   b = e^{-4ik^3 t} hat-Psi^+,
    so that P(k) = [a, b] at t = 0.  On (or very near) the contour the
    interaction picture is used; elsewhere each column is integrated on
    its own.  The minus column is stable in Omega_2,4,6 and the plus
    column in Omega_1,3,5; outside those sectors they grow like
    exp(8 |Im k^3| T), which is harmless for moderate k and finite T.
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    near = 8 * np.abs((k ** 3).imag) * T <= 1.0
    a = np.empty((k.size, 2), complex)
    b = np.empty((k.size, 2), complex)
    idx_near = np.nonzero(near)[0]
    idx_far = np.nonzero(~near)[0]
    if idx_near.size:
        def f_near(kk):
            return _interaction_columns(bt, lam, kk, T, t, step_tol)
        aa, bb = _batched(f_near, k[idx_near])
        a[idx_near], b[idx_near] = aa, bb
    if idx_far.size:
        kf = k[idx_far]
        if "-" in which:
            a[idx_far] = _batched(lambda kk: _column_system(bt, lam, kk, T, t, step_tol, True), kf)
        else:
            a[idx_far] = np.nan
        if "+" in which:
            b[idx_far] = _batched(lambda kk: _column_system(bt, lam, kk, T, t, step_tol, False), kf)
        else:
            b[idx_far] = np.nan
    return a, b


def hat_psi(t, bt, lam, k, T, step_tol=1e-12):
    """hat-Psi(t, k) = Y(0, t, k), equal to exp(-4ik^3 t sigma3) for t >= T."""
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    a, b = hat_psi_columns(t, bt, lam, k, T, step_tol)
    e = np.exp(4j * k ** 3 * t)
    W = np.empty(k.shape + (2, 2), dtype=complex)
    W[:, :, 0] = a / e[:, None]
    W[:, :, 1] = b * e[:, None]
    return W


def hat_phi(t, bt, lam, k, step_tol=1e-12):
    """hat-phi(t, k): the t-equation solution equal to the identity at t = 0."""
    return integrate_t(bt, lam, k, 0.0, t, None, step_tol)
