"""Integer-order cylinder functions J, Y, H^(1), I, K at complex argument.

Orders 0 and 1 (the only ones the layer kernels need) come from three regimes:

* ``|z| < 2``: ascending power series;
* ``2 <= |z| <= 25``: Miller backward recurrence for J with the Neumann
  series for Y; ascending series for I; trapezoidal rule on
  ``K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt`` for K;
* ``|z| > 25``: Hankel asymptotic expansions (J, Y, I); K keeps the integral.

Near the imaginary axis the ascending series for I and K lose about e^{|z|}
digits, so beyond |z| = 12 in that sector both switch to their large-argument
expansions (which there carry both exponentials).

Higher orders use Miller backward recurrence (J, I) or forward recurrence
(Y, K). Everything here is vectorised NumPy; the scalar numba twins used by
the matrix assembly live in :mod:`clampedte._jit`.
"""
import math

import numpy as np

__all__ = [
    "SpecialFunctionDomainError",
    "bessel_j",
    "bessel_y",
    "hankel1",
    "bessel_i",
    "bessel_k",
    "jy01",
    "ik01",
    "k01_scaled",
    "bessel_k_ratio",
    "MAX_ORDER",
    "MAX_ARG",
]

EULER_GAMMA = 0.5772156649015329
MAX_ORDER = 128
MAX_ARG = 1.0e4

SERIES_RADIUS = 2.0
ASYMPTOTIC_RADIUS = 25.0
# above this |z| the J family switches from Miller to asymptotics + recurrence
_J_MILLER_RADIUS = 60.0
_RESCALE = 1e200
# |arg z| beyond which K leaves the trapezoidal integral
K_STEEP = 1.35
# above this imaginary part hankel1 is evaluated through K_n(-iz)
HANKEL_VIA_K = 2.0


class SpecialFunctionDomainError(ValueError):
    """Order or argument outside the supported domain."""


# --------------------------------------------------------------------------
# orders 0 and 1
# --------------------------------------------------------------------------

def _jy01_series(z):
    q = -0.25 * z * z
    t = np.ones_like(z)          # q^k / (k!)^2
    u = np.ones_like(z)          # q^k / (k! (k+1)!)
    j0 = t.copy()
    s1 = u.copy()
    y0sum = np.zeros_like(z)
    y1sum = u.copy()             # (H_0 + H_1) u_0 = u_0
    h = 0.0
    for k in range(1, 22):
        t = t * q / (k * k)
        u = u * q / (k * (k + 1))
        h_next = h + 1.0 / k
        j0 = j0 + t
        s1 = s1 + u
        y0sum = y0sum + h_next * t
        y1sum = y1sum + (h_next + h_next + 1.0 / (k + 1)) * u
        h = h_next
    j1 = 0.5 * z * s1
    lg = np.log(0.5 * z) + EULER_GAMMA
    y0 = (2 / np.pi) * (lg * j0 - y0sum)
    y1 = -2 / (np.pi * z) + (2 / np.pi) * lg * j1 - z / (2 * np.pi) * y1sum
    return j0, j1, y0, y1


def _miller_coefficients(nstart):
    """Neumann-series weights for the Y0 and Y1 sums over the backward sequence."""
    y0w = np.zeros(nstart + 2)
    y1w = np.zeros(nstart + 2)
    for p in range(1, nstart // 2 + 2):
        sgn = (-1.0) ** p / p
        if 2 * p < nstart + 2:
            y0w[2 * p] = sgn
        if 2 * p - 1 < nstart + 2:
            y1w[2 * p - 1] += sgn
        if 2 * p + 1 < nstart + 2:
            y1w[2 * p + 1] -= sgn
    return y0w, y1w


def _miller_normaliser(z):
    """Phase factors and target for e^{-i s z} = J0 + 2 sum (-i s)^n J_n, s = sign(Im z).

    Unlike 1 = J0 + 2 sum J_2k this identity has no cancellation when
    |Im z| is large, because every term and the target grow like e^{|Im z|}.
    """
    s = np.where(z.imag < 0, -1.0, 1.0)
    return -1j * s, np.exp(-1j * s * z)


def _jy01_miller(z):
    nstart = 2 * ((int(np.max(np.abs(z))) + 32) // 2)
    y0w, y1w = _miller_coefficients(nstart)
    phase, target = _miller_normaliser(z)
    f_next = np.zeros_like(z)
    f = np.full_like(z, 1e-30)
    acc_n = 2.0 * phase ** nstart * f
    acc_y0 = y0w[nstart] * f
    acc_y1 = y1w[nstart] * f
    f1 = None
    for k in range(nstart, 0, -1):
        f_prev = (2.0 * k / z) * f - f_next
        f_next, f = f, f_prev
        j = k - 1
        acc_n = acc_n + (2.0 * phase ** j if j > 0 else 1.0) * f
        acc_y0 = acc_y0 + y0w[j] * f
        acc_y1 = acc_y1 + y1w[j] * f
        if j == 1:
            f1 = f
    scale = target / acc_n
    j0 = f * scale
    j1 = f1 * scale
    lg = np.log(0.5 * z) + EULER_GAMMA
    y0 = (2 / np.pi) * lg * j0 - (4 / np.pi) * acc_y0 * scale
    y1 = -(2 / np.pi) * j0 / z + (2 / np.pi) * lg * j1 + (2 / np.pi) * acc_y1 * scale
    return j0, j1, y0, y1


def _hankel_pq(nu, z, nterms=40):
    mu = 4.0 * nu * nu
    p = np.ones_like(z)
    q = np.zeros_like(z)
    term = np.ones_like(z)
    for k in range(1, nterms + 1):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        if k % 2:
            q = q + (-1) ** ((k - 1) // 2) * term
        else:
            p = p + (-1) ** (k // 2) * term
    return p, q


def _jy01_asymptotic_right(z):
    out = []
    amp = np.sqrt(2.0 / (np.pi * z))
    for nu in (0, 1):
        p, q = _hankel_pq(nu, z)
        chi = z - (0.5 * nu + 0.25) * np.pi
        c, s = np.cos(chi), np.sin(chi)
        out.append((amp * (p * c - q * s), amp * (p * s + q * c)))
    (j0, y0), (j1, y1) = out
    return j0, j1, y0, y1


def _jy01_asymptotic(z):
    """Large-|z| expansions, evaluated in Re z >= 0 and reflected otherwise."""
    left = z.real < 0
    w = np.where(left, -z, z)
    j0, j1, y0, y1 = _jy01_asymptotic_right(w)
    if left.any():
        # Y_n(-w) = (-1)^n (Y_n(w) + 2i s J_n(w)), s = +1 if Im(-w) > 0 else -1
        s = np.where((-w).imag >= 0, 1.0, -1.0)
        y0 = np.where(left, y0 + 2j * s * j0, y0)
        y1 = np.where(left, -(y1 + 2j * s * j1), y1)
        j1 = np.where(left, -j1, j1)
    return j0, j1, y0, y1


def jy01(z):
    """Return ``(J0, J1, Y0, Y1)`` at complex ``z`` (array or scalar).

    Y uses the principal branch (cut along the negative real axis). No domain
    checks; the public wrappers below validate.
    """
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.ravel()
    res = [np.empty_like(z) for _ in range(4)]
    a = np.abs(z)
    for mask, fn in (
        (a < SERIES_RADIUS, _jy01_series),
        ((a >= SERIES_RADIUS) & (a <= ASYMPTOTIC_RADIUS), _jy01_miller),
        (a > ASYMPTOTIC_RADIUS, _jy01_asymptotic),
    ):
        if mask.any():
            vals = fn(z[mask])
            for r, v in zip(res, vals):
                r[mask] = v
    return tuple(r.reshape(shape) for r in res)


def _i01_series(z):
    q = 0.25 * z * z
    kmax = int(np.max(np.abs(z))) + 30
    t = np.ones_like(z)
    u = np.ones_like(z)
    i0 = t.copy()
    s1 = u.copy()
    for k in range(1, kmax):
        t = t * q / (k * k)
        u = u * q / (k * (k + 1))
        i0 = i0 + t
        s1 = s1 + u
    return i0, 0.5 * z * s1


def _i01_asymptotic(z):
    # the e^{-z} branch matters once |arg z| approaches pi/2
    rt = np.sqrt(2 * np.pi * z)
    sgn = np.where(z.imag < 0, -1.0, 1.0)
    out = []
    for nu in (0, 1):
        mu = 4.0 * nu * nu
        term = np.ones_like(z)
        dom = np.ones_like(z)
        sub = np.ones_like(z)
        live = np.ones(z.shape, dtype=bool)
        for k in range(1, 61):
            nxt = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
            live &= np.abs(nxt) < np.abs(term)
            term = np.where(live, nxt, term)
            dom = dom + np.where(live, (-1) ** k * nxt, 0.0)
            sub = sub + np.where(live, nxt, 0.0)
        out.append((np.exp(z) * dom + np.exp(-z + 1j * sgn * (nu + 0.5) * np.pi) * sub) / rt)
    return out[0], out[1]


def _k01_series(z, i0, i1):
    q = 0.25 * z * z
    t = np.ones_like(z)
    v = np.ones_like(z)
    s0 = np.zeros_like(z)
    s1 = v.copy()            # (H_0 + H_1) v_0
    h = 0.0
    for k in range(1, int(np.max(np.abs(z))) + 30):
        t = t * q / (k * k)
        v = v * q / (k * (k + 1))
        h_next = h + 1.0 / k
        s0 = s0 + h_next * t
        s1 = s1 + (2 * h_next + 1.0 / (k + 1)) * v
        h = h_next
    lg = np.log(0.5 * z) + EULER_GAMMA
    k0 = -lg * i0 + s0
    k1 = 1.0 / z + lg * i1 - 0.25 * z * s1
    return k0, k1


def _k01_integral_scaled(z):
    """``exp(z) K_nu(z)`` for nu = 0, 1 by the trapezoidal rule.

    With u = sinh(t/2) the integrands become Gaussians,
    exp(z) K0(z) = int_0^inf 2 exp(-2 z u^2) / sqrt(1 + u^2) du, and K1 has an
    extra factor 1 + 2 u^2. Arguments are grouped by octave of |z| so that
    one tiny step needed by a large argument is not imposed on the whole batch.
    """
    octave = np.floor(np.log2(np.abs(z))).astype(int)
    s0 = np.empty_like(z)
    s1 = np.empty_like(z)
    for o in np.unique(octave):
        m = octave == o
        s0[m], s1[m] = _k01_trapezoid(z[m])
    return s0, s1


def _k01_trapezoid(z):
    theta = np.max(np.abs(np.angle(z)))
    # the step resolves both the angle and the width sqrt(Re z)/|z| of the Gaussian
    h = min(0.3 * (0.5 * np.pi - theta), 0.2 * float(np.min(np.sqrt(z.real) / np.abs(z))))
    umax = math.sqrt(21.0 / np.min(z.real))
    u2 = np.arange(0.0, umax + h, h) ** 2
    w = np.full(u2.shape, 2.0 * h)
    w[0] = h
    w /= np.sqrt(1.0 + u2)
    g = np.exp(-2.0 * np.multiply.outer(z, u2))
    return g @ w, g @ (w * (1.0 + 2.0 * u2))


def _k01_asymptotic(z):
    """Large-|z| expansion of K0, K1, truncated at its smallest term."""
    amp = np.sqrt(0.5 * np.pi / z) * np.exp(-z)
    out = []
    for nu in (0, 1):
        mu = 4.0 * nu * nu
        term = np.ones_like(z)
        acc = np.ones_like(z)
        live = np.ones(z.shape, dtype=bool)
        for k in range(1, 61):
            nxt = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
            live &= np.abs(nxt) < np.abs(term)
            term = np.where(live, nxt, term)
            acc = acc + np.where(live, nxt, 0.0)
        out.append(amp * acc)
    return out[0], out[1]


def ik01(z):
    """Return ``(I0, I1, K0, K1)`` at complex ``z`` with ``Re z > 0``."""
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.ravel()
    i0 = np.empty_like(z)
    i1 = np.empty_like(z)
    k0 = np.empty_like(z)
    k1 = np.empty_like(z)
    a = np.abs(z)
    steep = np.abs(np.angle(z)) > 0.25 * np.pi
    m = a <= ASYMPTOTIC_RADIUS
    if m.any():
        i0[m], i1[m] = _i01_series(z[m])
    m = ~m
    if m.any():
        i0[m], i1[m] = _i01_asymptotic(z[m])
    # off-axis the ascending series cancels like e^{|z|}; the two-exponential
    # expansion is already accurate there
    m = steep & (a > 12.0) & (a <= ASYMPTOTIC_RADIUS)
    if m.any():
        i0[m], i1[m] = _i01_asymptotic(z[m])
    # close to the imaginary axis the integral oscillates; the series stays
    # usable (cancellation ~ e^|z| eps) up to |z| = 12, asymptotics beyond
    steep = np.abs(np.angle(z)) > K_STEEP
    small = (a < SERIES_RADIUS) | (steep & (a <= 12.0))
    if small.any():
        k0[small], k1[small] = _k01_series(z[small], i0[small], i1[small])
    m = ~small & ~steep
    if m.any():
        zs = z[m]
        s0, s1 = _k01_integral_scaled(zs)
        e = np.exp(-zs)
        k0[m], k1[m] = s0 * e, s1 * e
    m = ~small & steep
    if m.any():
        k0[m], k1[m] = _k01_asymptotic(z[m])
    return i0.reshape(shape), i1.reshape(shape), k0.reshape(shape), k1.reshape(shape)


def k01_scaled(x):
    """``(exp(x) K0(x), exp(x) K1(x))`` for real ``x > 0``; no underflow."""
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel().astype(complex)
    out0 = np.empty_like(x)
    out1 = np.empty_like(x)
    small = np.abs(x) < SERIES_RADIUS
    if small.any():
        i0, i1, k0, k1 = ik01(x[small])
        e = np.exp(x[small])
        out0[small], out1[small] = k0 * e, k1 * e
    big = ~small
    if big.any():
        out0[big], out1[big] = _k01_integral_scaled(x[big])
    return out0.real.reshape(shape), out1.real.reshape(shape)


# --------------------------------------------------------------------------
# public integer-order API
# --------------------------------------------------------------------------

def _check_order(n):
    if isinstance(n, bool) or int(n) != n:
        raise SpecialFunctionDomainError(f"order must be an integer, got {n!r}")
    n = int(n)
    if n < 0:
        raise SpecialFunctionDomainError(
            "negative orders are not evaluated; use H_{-n} = (-1)^n H_n")
    if n > MAX_ORDER:
        raise SpecialFunctionDomainError(f"order {n} exceeds {MAX_ORDER}")
    return n


def _check_arg(z):
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise SpecialFunctionDomainError("non-finite argument")
    if np.any(np.abs(z) > MAX_ARG):
        raise SpecialFunctionDomainError(f"|z| exceeds {MAX_ARG:g}")
    return z


def _off_cut(z, name):
    if np.any((z.imag == 0) & (z.real <= 0)):
        raise SpecialFunctionDomainError(f"{name}: argument on the branch cut (-inf, 0]")


def _right_half(z, name):
    if np.any(z.real <= 0):
        raise SpecialFunctionDomainError(f"{name}: requires Re z > 0")


def _ret(v, z):
    """Scalar-or-array return with exact zero imaginary part on the real axis."""
    v = np.array(v, dtype=complex).reshape(z.shape)
    v.imag[z.imag == 0] = 0.0
    return v[()] if v.ndim == 0 else v


def _overflowed(v, inf):
    """Forward recurrences that left double range report a signed infinity."""
    v = np.array(v, dtype=complex)
    v[~np.isfinite(v)] = inf
    return v


def _jn_series(n, z):
    q = -0.25 * z * z
    with np.errstate(divide="ignore", invalid="ignore"):
        lead = np.exp(n * np.log(0.5 * z) - math.lgamma(n + 1))
    lead = np.where(z == 0, 0.0, lead)
    term = np.ones_like(z)
    acc = np.ones_like(z)
    for k in range(1, 30):
        term = term * q / (k * (n + k))
        acc = acc + term
    return lead * acc


def _jn_miller(n, z):
    """J_n by backward recurrence, normalised as in :func:`_jy01_miller`."""
    nstart = max(n, int(np.max(np.abs(z)))) + 40
    nstart += nstart % 2
    phase, target = _miller_normaliser(z)
    f_next = np.zeros_like(z)
    f = np.full_like(z, 1e-30)
    acc = 2.0 * phase ** nstart * f
    fn = None
    for k in range(nstart, 0, -1):
        f_prev = (2.0 * k / z) * f - f_next
        f_next, f = f, f_prev
        j = k - 1
        acc = acc + (2.0 * phase ** j if j > 0 else 1.0) * f
        if j == n:
            fn = f
        big = np.abs(f) > _RESCALE
        if big.any():
            s = np.where(big, 1.0 / _RESCALE, 1.0)
            f, f_next, acc = f * s, f_next * s, acc * s
            if fn is not None:
                fn = fn * s
    return fn * target / acc


def bessel_j(n, z):
    """Bessel function of the first kind J_n(z), integer ``0 <= n <= 128``."""
    n = _check_order(n)
    z = _check_arg(z)
    zz = z.ravel()
    out = np.empty_like(zz)
    a = np.abs(zz)
    if n <= 1:
        m = zz != 0
        out[~m] = 1.0 if n == 0 else 0.0
        if m.any():
            out[m] = jy01(zz[m])[n]
        return _ret(out, z)
    small = a < SERIES_RADIUS
    if small.any():
        out[small] = _jn_series(n, zz[small])
    mid = ~small & (a <= _J_MILLER_RADIUS)
    if mid.any():
        out[mid] = _jn_miller(n, zz[mid])
    large = a > _J_MILLER_RADIUS
    fwd = large & (a > n)
    if fwd.any():
        zf = zz[fwd]
        j0, j1, _, _ = jy01(zf)
        for k in range(1, n):
            j0, j1 = j1, (2.0 * k / zf) * j1 - j0
        out[fwd] = j1
    back = large & ~fwd
    if back.any():
        out[back] = _jn_miller(n, zz[back])
    return _ret(out, z)


def bessel_y(n, z):
    """Bessel function of the second kind Y_n(z) (principal branch)."""
    n = _check_order(n)
    z = _check_arg(z)
    _off_cut(z, "bessel_y")
    _, _, y0, y1 = jy01(z)
    if n == 0:
        return _ret(y0, z)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n):
            y0, y1 = y1, (2.0 * k / z) * y1 - y0
    return _ret(_overflowed(y1, -np.inf), z)


def hankel1(n, z):
    """Hankel function of the first kind H_n^(1)(z) = J_n(z) + i Y_n(z)."""
    n = _check_order(n)
    z = _check_arg(z)
    _off_cut(z, "hankel1")
    out = np.asarray(bessel_j(n, z) + 1j * bessel_y(n, z), dtype=complex)
    # J + iY cancels where H decays (upper half-plane); use K there instead
    up = np.asarray(z.imag > HANKEL_VIA_K)
    if up.any():
        w = -1j * np.atleast_1d(z)[np.atleast_1d(up)]
        _, _, k0, k1 = ik01(w)
        kn = k0
        if n >= 1:
            kn = k1
            with np.errstate(over="ignore", invalid="ignore"):
                for k in range(1, n):
                    k0, kn = kn, k0 + (2.0 * k / w) * kn
        vals = (2.0 / math.pi) * (1j ** (-(n + 1))) * kn
        if out.ndim == 0:
            out = vals[0]
        else:
            out[up] = vals
    return out[()] if np.ndim(out) == 0 else out


def _in_series(n, z):
    q = 0.25 * z * z
    lead = np.exp(n * np.log(0.5 * z) - math.lgamma(n + 1))
    kmax = int(np.max(np.abs(z))) + 40
    term = np.ones_like(z)
    acc = np.ones_like(z)
    for k in range(1, kmax):
        term = term * q / (k * (n + k))
        acc = acc + term
    return lead * acc


def _in_ratio(n, z, i0):
    """I_n from I_0 via backward recurrence of I_{k-1} = (2k/z) I_k + I_{k+1}."""
    nstart = n + int(math.sqrt(40.0 * float(np.max(np.abs(z))))) + 40
    f_next = np.zeros_like(z)
    f = np.full_like(z, 1e-30)
    fn = None
    for k in range(nstart, 0, -1):
        f_prev = (2.0 * k / z) * f + f_next
        f_next, f = f, f_prev
        if k - 1 == n:
            fn = f
        big = np.abs(f) > _RESCALE
        if big.any():
            s = np.where(big, 1.0 / _RESCALE, 1.0)
            f, f_next = f * s, f_next * s
            if fn is not None:
                fn = fn * s
    return i0 * fn / f


def bessel_i(n, z):
    """Modified Bessel function I_n(z) for ``Re z > 0``."""
    n = _check_order(n)
    z = _check_arg(z)
    _right_half(z, "bessel_i")
    zz = z.ravel()
    i0, i1, _, _ = ik01(zz)
    if n <= 1:
        return _ret(i0 if n == 0 else i1, z)
    out = np.empty_like(zz)
    # the ascending series cancels off-axis; the ratio route does not
    m = (np.abs(zz) <= ASYMPTOTIC_RADIUS) & (
        (np.abs(zz) <= 12.0) | (np.abs(np.angle(zz)) <= 0.25 * np.pi))
    if m.any():
        out[m] = _in_series(n, zz[m])
    if (~m).any():
        out[~m] = _in_ratio(n, zz[~m], i0[~m])
    return _ret(out, z)


def bessel_k(n, z):
    """Modified Bessel function K_n(z) for ``Re z > 0``."""
    n = _check_order(n)
    z = _check_arg(z)
    _right_half(z, "bessel_k")
    _, _, k0, k1 = ik01(z)
    if n == 0:
        return _ret(k0, z)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n):
            k0, k1 = k1, k0 + (2.0 * k / z) * k1
    return _ret(_overflowed(k1, np.inf), z)


def bessel_k_ratio(n, x):
    """``K_{n-1}(x) / K_n(x)`` for real ``x > 0`` (with ``K_{-1} = K_1``).

    Built from the exponentially scaled K0, K1 and the forward recurrence of
    the ratio, ``K_{j+1}/K_j = K_{j-1}/K_j + 2j/x``, so it neither underflows
    for large ``x`` nor overflows for large ``n``.
    """
    n = _check_order(n)
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x <= 0):
        raise SpecialFunctionDomainError("bessel_k_ratio: requires finite x > 0")
    k0, k1 = k01_scaled(x)
    if n == 0:
        return k1 / k0
    rho = k0 / k1                      # K_0 / K_1
    for j in range(1, n):
        rho = 1.0 / (rho + 2.0 * j / x)
    return rho
