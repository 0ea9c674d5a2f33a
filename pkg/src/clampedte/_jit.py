"""Scalar compiled counterparts of :func:`specfun.jy01` and :func:`specfun.ik01`.

The same regimes and recurrences as the vectorised code, written per point so
numba can fuse them into one parallel loop over a matrix of arguments.
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, njit

if HAVE_NUMBA:
    from numba import prange
else:  # pragma: no cover
    prange = range

EULER_GAMMA = 0.5772156649015329
K_STEEP = 1.35


@njit
def _jy01_series(z):
    q = -0.25 * z * z
    t = 1.0 + 0j
    u = 1.0 + 0j
    j0 = t
    s1 = u
    y0sum = 0j
    y1sum = u
    h = 0.0
    for k in range(1, 22):
        t = t * q / (k * k)
        u = u * q / (k * (k + 1))
        h += 1.0 / k
        j0 += t
        s1 += u
        y0sum += h * t
        y1sum += (2.0 * h + 1.0 / (k + 1)) * u
    j1 = 0.5 * z * s1
    lg = np.log(0.5 * z) + EULER_GAMMA
    y0 = (2 / np.pi) * (lg * j0 - y0sum)
    y1 = -2 / (np.pi * z) + (2 / np.pi) * lg * j1 - z / (2 * np.pi) * y1sum
    return j0, j1, y0, y1


@njit
def _jy01_miller(z):
    nstart = 2 * ((int(abs(z)) + 32) // 2)
    s = -1.0 if z.imag < 0 else 1.0
    phase = -1j * s
    target = np.exp(-1j * s * z)
    f_next = 0j
    f = 1e-30 + 0j
    ph = phase ** nstart
    acc_n = 2.0 * ph * f
    acc_y0 = (-1.0) ** (nstart // 2) / (nstart // 2) * f
    acc_y1 = 0j
    f1 = 0j
    for k in range(nstart, 0, -1):
        f_prev = (2.0 * k / z) * f - f_next
        f_next = f
        f = f_prev
        j = k - 1
        ph = ph / phase
        if j > 0:
            acc_n += 2.0 * ph * f
        else:
            acc_n += f
        if j > 0 and j % 2 == 0:
            p = j // 2
            acc_y0 += (-1.0) ** p / p * f
        elif j % 2 == 1:
            # J_j enters the Y1 sum through p = (j+1)/2 and p = (j-1)/2
            p = (j + 1) // 2
            w = (-1.0) ** p / p
            if j >= 3:
                p2 = (j - 1) // 2
                w -= (-1.0) ** p2 / p2
            acc_y1 += w * f
        if j == 1:
            f1 = f
    scale = target / acc_n
    j0 = f * scale
    j1 = f1 * scale
    lg = np.log(0.5 * z) + EULER_GAMMA
    y0 = (2 / np.pi) * lg * j0 - (4 / np.pi) * acc_y0 * scale
    y1 = -(2 / np.pi) * j0 / z + (2 / np.pi) * lg * j1 + (2 / np.pi) * acc_y1 * scale
    return j0, j1, y0, y1


@njit
def _hankel_pq(nu, z):
    mu = 4.0 * nu * nu
    p = 1.0 + 0j
    q = 0j
    term = 1.0 + 0j
    for k in range(1, 41):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        if k % 2 == 1:
            q += (-1.0) ** ((k - 1) // 2) * term
        else:
            p += (-1.0) ** (k // 2) * term
    return p, q


@njit
def _jy01_asymptotic(z):
    left = z.real < 0
    w = -z if left else z
    amp = np.sqrt(2.0 / (np.pi * w))
    p, q = _hankel_pq(0, w)
    chi = w - 0.25 * np.pi
    c = np.cos(chi)
    s = np.sin(chi)
    j0 = amp * (p * c - q * s)
    y0 = amp * (p * s + q * c)
    p, q = _hankel_pq(1, w)
    chi = w - 0.75 * np.pi
    c = np.cos(chi)
    s = np.sin(chi)
    j1 = amp * (p * c - q * s)
    y1 = amp * (p * s + q * c)
    if left:
        sg = 1.0 if (-w).imag >= 0 else -1.0
        y0 = y0 + 2j * sg * j0
        y1 = -(y1 + 2j * sg * j1)
        j1 = -j1
    return j0, j1, y0, y1


@njit
def jy01_scalar(z):
    a = abs(z)
    if a < 2.0:
        return _jy01_series(z)
    if a <= 25.0:
        return _jy01_miller(z)
    return _jy01_asymptotic(z)


@njit
def _i01_series(z):
    q = 0.25 * z * z
    t = 1.0 + 0j
    u = 1.0 + 0j
    i0 = t
    s1 = u
    for k in range(1, int(abs(z)) + 30):
        t = t * q / (k * k)
        u = u * q / (k * (k + 1))
        i0 += t
        s1 += u
    return i0, 0.5 * z * s1


@njit
def _i01_asymptotic(z):
    rt = np.sqrt(2 * np.pi * z)
    sg = -1.0 if z.imag < 0 else 1.0
    out0 = 0j
    out1 = 0j
    for nu in range(2):
        mu = 4.0 * nu * nu
        term = 1.0 + 0j
        dom = 1.0 + 0j
        sub = 1.0 + 0j
        for k in range(1, 61):
            nxt = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
            if abs(nxt) >= abs(term):
                break
            term = nxt
            dom += (-1.0) ** k * nxt
            sub += nxt
        val = (np.exp(z) * dom + np.exp(-z + 1j * sg * (nu + 0.5) * np.pi) * sub) / rt
        if nu == 0:
            out0 = val
        else:
            out1 = val
    return out0, out1


@njit
def _k01_series(z, i0, i1):
    q = 0.25 * z * z
    t = 1.0 + 0j
    v = 1.0 + 0j
    s0 = 0j
    s1 = v
    h = 0.0
    for k in range(1, int(abs(z)) + 30):
        t = t * q / (k * k)
        v = v * q / (k * (k + 1))
        h += 1.0 / k
        s0 += h * t
        s1 += (2.0 * h + 1.0 / (k + 1)) * v
    lg = np.log(0.5 * z) + EULER_GAMMA
    return -lg * i0 + s0, 1.0 / z + lg * i1 - 0.25 * z * s1


@njit
def _k01_integral_scaled(z):
    # u = sinh(t/2): exp(z) K0 = int 2 exp(-2 z u^2) / sqrt(1 + u^2) du, and K1
    # carries an extra 1 + 2 u^2; the Gaussian factor is advanced by products
    x = z.real
    theta = abs(math.atan2(z.imag, x))
    h = min(0.3 * (0.5 * np.pi - theta), 0.2 * math.sqrt(x) / abs(z))
    n = int(math.sqrt(21.0 / x) / h) + 2
    q = np.exp(-4.0 * z * h * h)
    r = np.exp(-2.0 * z * h * h)
    g = 1.0 + 0j
    s0 = 0.5 + 0j
    s1 = 0.5 + 0j
    for i in range(1, n):
        g *= r                          # exp(-2 z (i h)^2)
        r *= q
        u2 = (i * h) ** 2
        f = g / math.sqrt(1.0 + u2)
        s0 += f
        s1 += f * (1.0 + 2.0 * u2)
    return 2.0 * h * s0, 2.0 * h * s1


@njit
def _k01_asymptotic(z):
    amp = np.sqrt(0.5 * np.pi / z) * np.exp(-z)
    out0 = 0j
    out1 = 0j
    for nu in range(2):
        mu = 4.0 * nu * nu
        term = 1.0 + 0j
        acc = 1.0 + 0j
        for k in range(1, 61):
            nxt = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
            if abs(nxt) >= abs(term):
                break
            term = nxt
            acc += nxt
        if nu == 0:
            out0 = amp * acc
        else:
            out1 = amp * acc
    return out0, out1


@njit
def ik01_scalar(z):
    a = abs(z)
    steep = abs(math.atan2(z.imag, z.real)) > 0.25 * np.pi
    if a <= 25.0 and (a <= 12.0 or not steep):
        i0, i1 = _i01_series(z)
    else:
        i0, i1 = _i01_asymptotic(z)
    ksteep = abs(math.atan2(z.imag, z.real)) > K_STEEP
    if a < 2.0 or (ksteep and a <= 12.0):
        k0, k1 = _k01_series(z, i0, i1)
    elif not ksteep:
        s0, s1 = _k01_integral_scaled(z)
        e = np.exp(-z)
        k0 = s0 * e
        k1 = s1 * e
    else:
        k0, k1 = _k01_asymptotic(z)
    return i0, i1, k0, k1


@njit(parallel=True)
def jy01_grid(w):
    """``(J0, J1, Y0, Y1)`` over a flat complex array."""
    n = w.shape[0]
    j0 = np.empty(n, np.complex128)
    j1 = np.empty(n, np.complex128)
    y0 = np.empty(n, np.complex128)
    y1 = np.empty(n, np.complex128)
    for i in prange(n):
        a, b, c, d = jy01_scalar(w[i])
        j0[i] = a
        j1[i] = b
        y0[i] = c
        y1[i] = d
    return j0, j1, y0, y1


@njit(parallel=True)
def ik01_grid(w):
    """``(I0, I1, K0, K1)`` over a flat complex array with ``Re w > 0``."""
    n = w.shape[0]
    i0 = np.empty(n, np.complex128)
    i1 = np.empty(n, np.complex128)
    k0 = np.empty(n, np.complex128)
    k1 = np.empty(n, np.complex128)
    for i in prange(n):
        a, b, c, d = ik01_scalar(w[i])
        i0[i] = a
        i1[i] = b
        k0[i] = c
        k1[i] = d
    return i0, i1, k0, k1
