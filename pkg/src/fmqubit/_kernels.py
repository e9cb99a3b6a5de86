"""Hot numeric loops.

Each kernel exists as a scalar Python function (numba-compilable) and, where
the loop vectorizes, as a numpy twin. ``dispatch`` helpers at the bottom pick
one according to :mod:`fmqubit._accel`.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, compiled, jitable

# Dormand-Prince 5(4) tableau.
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = 9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0
_A71, _A73, _A74, _A75, _A76 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)
# continuous extension (Hairer & Wanner, DOPRI5 dense output)
_D1 = -12715105075.0 / 11282082432.0
_D3 = 87487479700.0 / 32700410799.0
_D4 = -10690763975.0 / 1880347072.0
_D5 = 701980252875.0 / 199316789632.0
_D6 = -1453857185.0 / 822651844.0
_D7 = 69997945.0 / 29380423.0

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_MAX_STEPS = 2


@jitable
def _phase(t, ratio, omega):
    if omega == 0.0:
        return 0.0
    return ratio * math.sin(omega * t)


@jitable
def _rhs(t, c, y, lam, ratio, omega):
    ph = _phase(t, ratio, omega)
    e = complex(math.cos(ph), math.sin(ph))
    dc = -0.5 * lam * e * y
    dy = -lam * y + e.conjugate() * c
    return dc, dy


def _amplitude_dopri(times, lam, ratio, omega, rtol, atol, max_steps):
    """Integrate the memory-variable system for the Lorentzian amplitude.

    ``C' = -(lam/2) e^{i phi} y``, ``y' = -lam y + e^{-i phi} C`` with
    ``phi = ratio sin(omega t)``, ``C(0) = 1``, ``y(0) = 0``. Output is written
    on ``times`` (ascending, ``times[0] == 0``) via the 4th-order continuous
    extension. Returns ``(c, y, status, n_steps)``.
    """
    n = times.shape[0]
    c_out = np.empty(n, dtype=np.complex128)
    y_out = np.empty(n, dtype=np.complex128)
    t_end = times[n - 1]
    t = 0.0
    c = 1.0 + 0.0j
    y = 0.0 + 0.0j
    c_out[0] = c
    y_out[0] = y
    j = 1
    while j < n and times[j] <= 0.0:
        c_out[j] = c
        y_out[j] = y
        j += 1
    if j >= n:
        return c_out, y_out, STATUS_OK, 0

    scale = lam + abs(ratio * omega) + 1.0
    h = min(0.01 / scale, t_end)
    k1c, k1y = _rhs(t, c, y, lam, ratio, omega)
    steps = 0
    fac_old = 1e-4
    while j < n:
        if steps >= max_steps:
            return c_out, y_out, STATUS_MAX_STEPS, steps
        if h < 1e-14 * max(1.0, abs(t)):
            return c_out, y_out, STATUS_STEP_UNDERFLOW, steps
        if t + h > t_end:
            h = t_end - t
        c2 = c + h * _A21 * k1c
        y2 = y + h * _A21 * k1y
        k2c, k2y = _rhs(t + _C2 * h, c2, y2, lam, ratio, omega)
        c3 = c + h * (_A31 * k1c + _A32 * k2c)
        y3 = y + h * (_A31 * k1y + _A32 * k2y)
        k3c, k3y = _rhs(t + _C3 * h, c3, y3, lam, ratio, omega)
        c4 = c + h * (_A41 * k1c + _A42 * k2c + _A43 * k3c)
        y4 = y + h * (_A41 * k1y + _A42 * k2y + _A43 * k3y)
        k4c, k4y = _rhs(t + _C4 * h, c4, y4, lam, ratio, omega)
        c5 = c + h * (_A51 * k1c + _A52 * k2c + _A53 * k3c + _A54 * k4c)
        y5 = y + h * (_A51 * k1y + _A52 * k2y + _A53 * k3y + _A54 * k4y)
        k5c, k5y = _rhs(t + _C5 * h, c5, y5, lam, ratio, omega)
        c6 = c + h * (_A61 * k1c + _A62 * k2c + _A63 * k3c + _A64 * k4c + _A65 * k5c)
        y6 = y + h * (_A61 * k1y + _A62 * k2y + _A63 * k3y + _A64 * k4y + _A65 * k5y)
        k6c, k6y = _rhs(t + h, c6, y6, lam, ratio, omega)
        cn = c + h * (_A71 * k1c + _A73 * k3c + _A74 * k4c + _A75 * k5c + _A76 * k6c)
        yn = y + h * (_A71 * k1y + _A73 * k3y + _A74 * k4y + _A75 * k5y + _A76 * k6y)
        k7c, k7y = _rhs(t + h, cn, yn, lam, ratio, omega)
        steps += 1

        ec = h * (_E1 * k1c + _E3 * k3c + _E4 * k4c + _E5 * k5c + _E6 * k6c + _E7 * k7c)
        ey = h * (_E1 * k1y + _E3 * k3y + _E4 * k4y + _E5 * k5y + _E6 * k6y + _E7 * k7y)
        sc = atol + rtol * max(abs(c), abs(cn))
        sy = atol + rtol * max(abs(y), abs(yn))
        err = math.sqrt(0.5 * ((abs(ec) / sc) ** 2 + (abs(ey) / sy) ** 2))

        if err <= 1.0:
            t_new = t + h
            if j < n and times[j] <= t_new:
                r2c = cn - c
                r3c = h * k1c - r2c
                r4c = r2c - h * k7c - r3c
                r5c = h * (_D1 * k1c + _D3 * k3c + _D4 * k4c + _D5 * k5c + _D6 * k6c + _D7 * k7c)
                r2y = yn - y
                r3y = h * k1y - r2y
                r4y = r2y - h * k7y - r3y
                r5y = h * (_D1 * k1y + _D3 * k3y + _D4 * k4y + _D5 * k5y + _D6 * k6y + _D7 * k7y)
                while j < n and times[j] <= t_new:
                    th = (times[j] - t) / h
                    th1 = 1.0 - th
                    c_out[j] = c + th * (r2c + th1 * (r3c + th * (r4c + th1 * r5c)))
                    y_out[j] = y + th * (r2y + th1 * (r3y + th * (r4y + th1 * r5y)))
                    j += 1
            t = t_new
            c = cn
            y = yn
            k1c = k7c
            k1y = k7y
            # PI step-size controller (Hairer's beta = 0.04)
            fac = err ** 0.17 / fac_old ** 0.04 / 0.9 if err > 0.0 else 0.1
            fac = min(5.0, max(0.1, fac))
            fac_old = max(err, 1e-4)
            h = h / fac
        else:
            h = h / min(5.0, err ** 0.2 / 0.9)
    return c_out, y_out, STATUS_OK, steps


def _volterra_trapezoid(times, lam, ratio, omega):
    """Direct history-sum integration of the Lorentzian Volterra equation.

    ``C'(t) = -int_0^t F(t,s) C(s) ds`` with
    ``F(t,s) = (lam/2) exp(-lam (t-s)) exp(i (phi(t) - phi(s)))`` and the
    implicit trapezoidal rule in both the outer time step and the inner
    history integral. ``times`` must be uniform. Cost is quadratic in
    ``len(times)``. Returns ``(c, c_dot)``.
    """
    n = times.shape[0]
    h = times[1] - times[0]
    decay = np.empty(n)
    for m in range(n):
        decay[m] = math.exp(-lam * m * h)
    phase = np.empty(n, dtype=np.complex128)
    for k in range(n):
        ph = _phase(times[k], ratio, omega)
        phase[k] = complex(math.cos(ph), math.sin(ph))
    kd = 0.5 * lam
    c = np.empty(n, dtype=np.complex128)
    cdot = np.empty(n, dtype=np.complex128)
    c[0] = 1.0
    cdot[0] = 0.0
    for m in range(n - 1):
        nxt = m + 1
        # explicit part of the history integral at t_{m+1}, C_{m+1} term excluded
        s = 0.5 * decay[nxt] * phase[0].conjugate() * c[0]
        for k in range(1, nxt):
            s += decay[nxt - k] * phase[k].conjugate() * c[k]
        s = h * kd * phase[nxt] * s
        c[nxt] = (c[m] + 0.5 * h * (cdot[m] - s)) / (1.0 + 0.25 * h * h * kd)
        cdot[nxt] = -(s + 0.5 * h * kd * c[nxt])
    return c, cdot


def _volterra_trapezoid_np(times, lam, ratio, omega):
    n = times.shape[0]
    h = times[1] - times[0]
    decay = np.exp(-lam * h * np.arange(n))
    phi = ratio * np.sin(omega * times) if omega != 0.0 else np.zeros(n)
    phase = np.exp(1j * phi)
    kd = 0.5 * lam
    c = np.empty(n, dtype=np.complex128)
    cdot = np.empty(n, dtype=np.complex128)
    c[0] = 1.0
    cdot[0] = 0.0
    weighted = np.empty(n, dtype=np.complex128)  # conj(phase_k) * C_k, filled as we go
    weighted[0] = phase[0].conjugate() * c[0]
    for m in range(n - 1):
        nxt = m + 1
        s = 0.5 * decay[nxt] * weighted[0]
        if nxt > 1:
            s += np.dot(decay[nxt - 1 : 0 : -1], weighted[1:nxt])
        s = h * kd * phase[nxt] * s
        c[nxt] = (c[m] + 0.5 * h * (cdot[m] - s)) / (1.0 + 0.25 * h * h * kd)
        cdot[nxt] = -(s + 0.5 * h * kd * c[nxt])
        weighted[nxt] = phase[nxt].conjugate() * c[nxt]
    return c, cdot


# Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half, Kronrod order).
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)
# full 15-point layout: nodes, Kronrod weights, Gauss weights (0 where not a Gauss node)
GK_NODES = np.concatenate([-_XGK[:7], [0.0], _XGK[6::-1]])
GK_WK = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[6::-1]])
_wg_full = np.zeros(15)
for _i, _w in zip((1, 3, 5), _WG[:3]):
    _wg_full[_i] = _w
    _wg_full[14 - _i] = _w
_wg_full[7] = _WG[3]
GK_WG = _wg_full


# relative round-off floor of one GK15 panel sum
ROUNDOFF = 50.0 * 2.220446049250313e-16
# extra bisections allowed per time point beyond the initial panels
MAX_SPLITS = 20_000
# coth(u) - 1 < 1e-17 for u > 20, i.e. x > 40 theta
THERMAL_SPLIT = 40.0
# panels are never bisected below 2^-60 of their starting width
MIN_PANEL = 2.0**-60


@jitable
def _coth_reg(x, theta):
    """``coth(x / (2 theta))`` with the small-argument series and ``theta = 0`` limit."""
    if theta == 0.0:
        return 1.0
    u = x / (2.0 * theta)
    if u < 1e-4:
        return 1.0 / u + u / 3.0
    if u > 20.0:
        return 1.0 + 2.0 * math.exp(-2.0 * u)
    return 1.0 / math.tanh(u)


@jitable
def _deph_integrands(x, b, s, theta):
    """Unit-coupling integrands at ``x = omega/omega_c`` for ``b = omega_c t``.

    Returns ``(g_exp, g_rate)``: ``g_exp = 4 x^{s-2} e^{-x} coth sin^2(bx/2)``
    (which is ``2 x^{s-2} e^{-x} coth (1 - cos bx)``) and
    ``g_rate = x^{s-1} e^{-x} coth sin(bx)``.
    """
    w = math.exp(-x) * _coth_reg(x, theta)
    if s != 1.0:
        w *= x ** (s - 1.0)
    sh = math.sin(0.5 * b * x)
    ch = math.cos(0.5 * b * x)
    return 4.0 * w * sh * sh / x, 2.0 * w * sh * ch


@jitable
def _gk_panel(a, bnd, b, s, theta, nodes, wk, wg, m, w1):
    """GK15 on ``[a, bnd]``; with ``m > 1`` the limits are in ``v`` where ``x = w1 v^m``.

    Returns the two integrals, their error estimates and their round-off floors.
    """
    mid = 0.5 * (a + bnd)
    half = 0.5 * (bnd - a)
    k1 = 0.0
    g1 = 0.0
    a1 = 0.0
    k2 = 0.0
    g2 = 0.0
    a2 = 0.0
    for i in range(15):
        v = mid + half * nodes[i]
        if m > 1:
            x = w1 * v**m
            jac = m * w1 * v ** (m - 1)
        else:
            x = v
            jac = 1.0
        f1, f2 = _deph_integrands(x, b, s, theta)
        f1 *= jac
        f2 *= jac
        k1 += wk[i] * f1
        g1 += wg[i] * f1
        a1 += wk[i] * abs(f1)
        k2 += wk[i] * f2
        g2 += wg[i] * f2
        a2 += wk[i] * abs(f2)
    # error estimates below the round-off floor of the panel cannot be improved
    d1 = max(half * abs(k1 - g1), ROUNDOFF * half * a1)
    d2 = max(half * abs(k2 - g2), ROUNDOFF * half * a2)
    return half * k1, d1, half * k2, d2, ROUNDOFF * half * a1, ROUNDOFF * half * a2


@jitable
def _first_panel_width(width, theta):
    """Split ``[0, width]`` at ``THERMAL_SPLIT * theta`` when that is inside it.

    ``coth(x / 2 theta)`` departs from 1 only for ``x`` of order ``theta``; on a
    panel much wider than that the GK nodes never sample the feature.
    Returns ``(w1, extra)`` with ``extra = 1`` when the split applies.
    """
    if theta > 0.0 and THERMAL_SPLIT * theta < width:
        return THERMAL_SPLIT * theta, 1
    return width, 0


@jitable
def _first_panel_power(s, theta):
    # at finite temperature the integrands behave as x^{s-1} near 0; x = w1 v^m
    # with m s >= 2 turns that into the regular v^{m s - 1}
    if theta > 0.0 and s < 1.0:
        return int(math.ceil(2.0 / s))
    return 1


def _dephasing_quad(bs, s, theta, cutoff, tol, nodes, wk, wg):
    """Adaptive Gauss-Kronrod quadrature of the unit-coupling dephasing integrals.

    For each ``b`` in ``bs`` integrates over ``x in [0, cutoff]`` on panels no
    wider than one period ``2 pi / b`` (and at most 1), bisecting any panel
    whose Kronrod-Gauss error estimate exceeds its share of
    ``tol * max(1, |I|)`` and is above the round-off floor. The first panel is
    split at ``40 theta`` to resolve the thermal ``coth`` feature, and for
    ``s < 1`` at finite temperature it is integrated in ``v`` with
    ``x = w1 v^m`` to remove the ``x^{s-1}`` endpoint singularity. At most
    ``MAX_SPLITS`` bisections are spent per time point.

    Returns ``(exponent, rate, err_exp, err_rate, worst)`` where ``worst[j]``
    is the left edge of the panel with the largest error.
    """
    m = bs.shape[0]
    out_e = np.zeros(m)
    out_r = np.zeros(m)
    err_e = np.zeros(m)
    err_r = np.zeros(m)
    worst = np.zeros(m)
    stack_a = np.empty(256)
    stack_b = np.empty(256)
    for j in range(m):
        b = bs[j]
        if b == 0.0:
            continue
        width = 1.0
        if b > 2.0 * math.pi:
            width = 2.0 * math.pi / b
        n_pan = int(math.ceil(cutoff / width))
        width = cutoff / n_pan
        tot_e = 0.0
        tot_r = 0.0
        ee = 0.0
        er = 0.0
        worst_err = -1.0
        worst_at = 0.0
        m0 = _first_panel_power(s, theta)
        w1, extra = _first_panel_width(width, theta)
        splits = 0
        for p in range(n_pan + extra):
            m = 1
            scale = w1
            if p == 0:
                m = m0
                if m > 1:
                    stack_a[0] = 0.0
                    stack_b[0] = 1.0
                else:
                    stack_a[0] = 0.0
                    stack_b[0] = w1
            elif p == 1 and extra == 1:
                stack_a[0] = w1
                stack_b[0] = width
                scale = width
            else:
                stack_a[0] = (p - extra) * width
                stack_b[0] = (p - extra + 1) * width
                scale = width
            top = 1
            while top > 0:
                top -= 1
                lo = stack_a[top]
                hi = stack_b[top]
                ie, de, ir, dr, fe, fr = _gk_panel(lo, hi, b, s, theta, nodes, wk, wg, m, scale)
                if m > 1:
                    share = scale * (hi**m - lo**m) / cutoff
                else:
                    share = (hi - lo) / cutoff
                lim_e = max(tol * max(1.0, abs(tot_e) + abs(ie)) * share, fe)
                lim_r = max(tol * max(1.0, abs(tot_r) + abs(ir)) * share, fr)
                span = hi - lo if m == 1 else (hi - lo) * scale
                if (de > lim_e or dr > lim_r) and top < 254 and span > MIN_PANEL * scale and splits < MAX_SPLITS:
                    splits += 1
                    mid = 0.5 * (lo + hi)
                    stack_a[top] = mid
                    stack_b[top] = hi
                    stack_a[top + 1] = lo
                    stack_b[top + 1] = mid
                    top += 2
                    continue
                tot_e += ie
                tot_r += ir
                ee += de
                er += dr
                if de + dr > worst_err:
                    worst_err = de + dr
                    worst_at = lo if m == 1 else scale * lo**m
        out_e[j] = tot_e
        out_r[j] = tot_r
        err_e[j] = ee
        err_r[j] = er
        worst[j] = worst_at
    return out_e, out_r, err_e, err_r, worst


def _deph_integrands_np(x, b, s, theta):
    if theta == 0.0:
        cth = np.ones_like(x)
    else:
        u = x / (2.0 * theta)
        with np.errstate(over="ignore", divide="ignore"):
            cth = np.where(u < 1e-4, 1.0 / u + u / 3.0, np.where(u > 20.0, 1.0 + 2.0 * np.exp(-2.0 * u), 1.0 / np.tanh(np.minimum(u, 20.0))))
    w = np.exp(-x) * cth
    if s != 1.0:
        w = w * x ** (s - 1.0)
    sh = np.sin(0.5 * b * x)
    return 4.0 * w * sh * sh / x, w * np.sin(b * x)


def _dephasing_quad_np(bs, s, theta, cutoff, tol, nodes, wk, wg):
    m0 = _first_panel_power(s, theta)
    m = bs.shape[0]
    out_e = np.zeros(m)
    out_r = np.zeros(m)
    err_e = np.zeros(m)
    err_r = np.zeros(m)
    worst = np.zeros(m)
    for j in range(m):
        b = bs[j]
        if b == 0.0:
            continue
        width = 2.0 * math.pi / b if b > 2.0 * math.pi else 1.0
        n_pan = int(math.ceil(cutoff / width))
        width = cutoff / n_pan
        edges = np.linspace(0.0, cutoff, n_pan + 1)
        w1, extra = _first_panel_width(width, theta)
        if extra:
            edges = np.concatenate(([0.0, w1], edges[1:]))
        lo, hi = edges[:-1].copy(), edges[1:].copy()
        # tr marks intervals in the transformed variable v of the first panel
        tr = np.zeros(lo.size, dtype=bool)
        if m0 > 1:
            lo[0], hi[0], tr[0] = 0.0, 1.0, True
        tot_e = tot_r = ee = er = 0.0
        worst_err, worst_at = -1.0, 0.0
        splits = 0
        for _depth in range(254):
            if lo.size == 0:
                break
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
            v = mid[:, None] + half[:, None] * nodes[None, :]
            trc = tr[:, None]
            x = np.where(trc, w1 * v**m0, v)
            jac = np.where(trc, m0 * w1 * v ** (m0 - 1), 1.0)
            f1, f2 = _deph_integrands_np(x, b, s, theta)
            f1, f2 = f1 * jac, f2 * jac
            ie, ir = half * (f1 @ wk), half * (f2 @ wk)
            fe, fr = ROUNDOFF * half * (np.abs(f1) @ wk), ROUNDOFF * half * (np.abs(f2) @ wk)
            de = np.maximum(half * np.abs(f1 @ wk - f1 @ wg), fe)
            dr = np.maximum(half * np.abs(f2 @ wk - f2 @ wg), fr)
            xlo = np.where(tr, w1 * lo**m0, lo)
            xhi = np.where(tr, w1 * hi**m0, hi)
            share = (xhi - xlo) / cutoff
            span = np.where(tr, (hi - lo) * w1, hi - lo)
            # running totals are not available per panel here; use the accepted-so-far
            # totals plus this batch, which is at least as strict as the scalar kernel
            lim_e = np.maximum(tol * max(1.0, abs(tot_e) + np.abs(ie).sum()) * share, fe)
            lim_r = np.maximum(tol * max(1.0, abs(tot_r) + np.abs(ir).sum()) * share, fr)
            bad = ((de > lim_e) | (dr > lim_r)) & (_depth < 253) & (span > MIN_PANEL * width)
            if splits + np.count_nonzero(bad) > MAX_SPLITS:
                bad[:] = False
            splits += np.count_nonzero(bad)
            good = ~bad
            tot_e += ie[good].sum()
            tot_r += ir[good].sum()
            ee += de[good].sum()
            er += dr[good].sum()
            if good.any():
                k = int(np.argmax((de + dr) * good))
                if de[k] + dr[k] > worst_err:
                    worst_err, worst_at = de[k] + dr[k], xlo[k]
            blo, bhi, btr = lo[bad], hi[bad], tr[bad]
            bmid = 0.5 * (blo + bhi)
            lo = np.concatenate([blo, bmid])
            hi = np.concatenate([bmid, bhi])
            tr = np.concatenate([btr, btr])
        out_e[j], out_r[j], err_e[j], err_r[j], worst[j] = tot_e, tot_r, ee, er, worst_at
    return out_e, out_r, err_e, err_r, worst


_amplitude_dopri_jit = compiled(_amplitude_dopri)
_volterra_trapezoid_jit = compiled(_volterra_trapezoid)
_dephasing_quad_jit = compiled(_dephasing_quad)


def amplitude_dopri(times, lam, ratio, omega, rtol, atol, max_steps, use_numba=None):
    use = USE_NUMBA if use_numba is None else use_numba
    fn = _amplitude_dopri_jit if (use and _amplitude_dopri_jit is not None) else _amplitude_dopri
    return fn(np.ascontiguousarray(times, dtype=np.float64), float(lam), float(ratio), float(omega),
              float(rtol), float(atol), int(max_steps))


def volterra_trapezoid(times, lam, ratio, omega, use_numba=None):
    use = USE_NUMBA if use_numba is None else use_numba
    fn = _volterra_trapezoid_jit if (use and _volterra_trapezoid_jit is not None) else _volterra_trapezoid_np
    return fn(np.ascontiguousarray(times, dtype=np.float64), float(lam), float(ratio), float(omega))


def dephasing_quad(bs, s, theta, cutoff, tol, use_numba=None):
    use = USE_NUMBA if use_numba is None else use_numba
    # the thermal correction scales as theta^2; below this it is far under
    # double precision and the tiny split panel would underflow
    if theta < 1e-100:
        theta = 0.0
    fn = _dephasing_quad_jit if (use and _dephasing_quad_jit is not None) else _dephasing_quad_np
    return fn(np.ascontiguousarray(bs, dtype=np.float64), float(s), float(theta), float(cutoff), float(tol),
              GK_NODES, GK_WK, GK_WG)
