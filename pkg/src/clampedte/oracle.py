"""Separation-of-variables reference spectra and scalar root finding.

On a disk of radius R with the fields v = a J_n(kr) e^{in theta} (inside) and
w = b K_n(kr) e^{in theta} (outside), the two boundary conditions have a
nontrivial solution exactly when

    W_n(k) = J_n(k) K_n'(k) - J_n'(k) K_n(k) = 0     (unit disk),

and Dirichlet/Neumann eigenvalues are zeros of J_n and J_n'.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import specfun

__all__ = [
    "DiskSpectrum",
    "ScanCeilingError",
    "bracketed_root",
    "disk_dirichlet",
    "disk_neumann",
    "disk_te_roots",
    "te_determinant",
    "te_determinant_scaled",
    "ellipse_lambda1",
    "scan_roots",
]

SCAN_STEP = 0.01
DEFAULT_KMAX = 12.0
AUTO_KMAX_LIMIT = 100.0


class ScanCeilingError(RuntimeError):
    """Fewer roots than requested below the scan ceiling."""


def bracketed_root(f, a, b, tol=1e-12):
    """Root of ``f`` in ``[a, b]`` given a sign change.

    Brent's method: bisection safeguarding secant/inverse-quadratic steps.
    """
    fa, fb = float(f(a)), float(f(b))
    if not (math.isfinite(fa) and math.isfinite(fb)):
        raise ArithmeticError("non-finite function value at a bracket end")
    if fa == 0:
        return float(a)
    if fb == 0:
        return float(b)
    if fa * fb > 0:
        raise ValueError(f"no sign change on [{a}, {b}]")

    def checked(x):
        v = float(f(x))
        if not math.isfinite(v):
            raise ArithmeticError(f"non-finite function value at {x}")
        return v

    return float(brentq(checked, a, b, xtol=tol, maxiter=500))


def scan_roots(f, lo, hi, step=SCAN_STEP, tol=1e-12):
    """All sign changes of ``f`` on a grid over ``[lo, hi]``, refined.

    ``f`` must accept an array (the scan) as well as a scalar (refinement).
    """
    grid = np.arange(lo, hi + 0.5 * step, step)
    vals = np.asarray(f(grid), dtype=float)
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0:
            roots.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0:
            roots.append(bracketed_root(f, grid[i], grid[i + 1], tol))
    return roots


# --------------------------------------------------------------------------
# disk spectra
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DiskSpectrum:
    """Sorted ``(value, order n, multiplicity)`` triples."""

    kind: str
    radius: float
    entries: tuple = field(default_factory=tuple)

    @property
    def values(self):
        """Values repeated by multiplicity, as eigenvalue tables list them."""
        out = []
        for value, _, mult in self.entries:
            out.extend([value] * mult)
        return out

    def first(self, count):
        return self.values[:count]


def _jn(n, x):
    return np.real(specfun.bessel_j(n, x))


def _jn_prime(n, x):
    # J_n' = (J_{n-1} - J_{n+1})/2 with J_{-1} = -J_1
    lower = -_jn(1, x) if n == 0 else _jn(n - 1, x)
    return 0.5 * (lower - _jn(n + 1, x))


def te_determinant(n, k):
    """W_n(k) = J_n(k) K_n'(k) - J_n'(k) K_n(k)."""
    kn = np.real(specfun.bessel_k(n, k))
    kprime = -0.5 * (np.real(specfun.bessel_k(abs(n - 1), k))
                     + np.real(specfun.bessel_k(n + 1, k)))
    return _jn(n, k) * kprime - _jn_prime(n, k) * kn


def te_determinant_scaled(n, k):
    """W_n(k) / K_n(k): same roots, no underflow of K_n."""
    # K_n'/K_n = -K_{n-1}/K_n - n/k
    ratio = -specfun.bessel_k_ratio(n, k) - n / k
    return _jn(n, k) * ratio - _jn_prime(n, k)


def _collect(kind, count, kmax, func, include_zero=False):
    """Roots of func(n, .) for n = 0, 1, ... until order n exceeds the cutoff."""
    if count < 1 or count > 50:
        raise ValueError("count must lie in 1..50")
    auto = kmax is None
    ceiling = DEFAULT_KMAX if auto else float(kmax)
    while True:
        entries = [(0.0, 0, 1)] if include_zero else []
        n = 0
        # every root of order n exceeds n for J_n, J_n' and W_n
        while n <= ceiling:
            for r in scan_roots(lambda x: func(n, x), SCAN_STEP, ceiling):
                entries.append((r, n, 1 if n == 0 else 2))
            n += 1
        entries.sort()
        total = sum(e[2] for e in entries)
        if total >= count:
            kept, acc = [], 0
            for e in entries:
                if acc >= count:
                    break
                kept.append(e)
                acc += e[2]
            return kept
        if not auto or ceiling >= AUTO_KMAX_LIMIT:
            raise ScanCeilingError(
                f"only {total} {kind} values below k_max = {ceiling:g}; increase k_max")
        ceiling *= 2


def _scaled(kind, entries, radius):
    return DiskSpectrum(kind, float(radius),
                        tuple((v / radius, n, m) for v, n, m in entries))


def disk_dirichlet(count, radius=1.0, kmax=None):
    """sqrt(lambda_j): zeros j_{n,m} of J_n."""
    entries = _collect("dirichlet", count, kmax, _jn)
    return _scaled("dirichlet", entries, radius)


def disk_neumann(count, radius=1.0, kmax=None):
    """sqrt(mu_j): 0 and the positive zeros j'_{n,m} of J_n'."""
    entries = _collect("neumann", count, kmax, _jn_prime, include_zero=True)
    return _scaled("neumann", entries, radius)


def disk_te_roots(count, radius=1.0, kmax=DEFAULT_KMAX):
    """Clamped transmission eigenvalues: positive roots of W_n."""
    entries = _collect("clamped_te", count, kmax, te_determinant_scaled)
    return _scaled("clamped_te", entries, radius)


def ellipse_lambda1(eps):
    """First Dirichlet eigenvalue of the ellipse x^2 + y^2/eps^2 < 1.

    Thin-domain expansion pi^2/(4 eps^2) + pi/(2 eps) + 3/4 + (11/(8 pi) + pi/12) eps;
    at eps = 1 the exact disk value j_{0,1}^2.
    """
    eps = float(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if eps == 1.0:
        return bracketed_root(lambda x: _jn(0, x), 2.0, 3.0) ** 2
    pi = math.pi
    return (pi ** 2 / (4 * eps ** 2) + pi / (2 * eps) + 0.75
            + (11 / (8 * pi) + pi / 12) * eps)
