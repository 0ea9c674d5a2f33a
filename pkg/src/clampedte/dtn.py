"""Exterior Dirichlet-to-Neumann map of the modified Helmholtz equation on a circle.

For boundary data f = sum f_n e^{int} on |x| = R, the decaying solution of
Delta u - k^2 u = 0 outside has normal derivative sum d_n f_n e^{int} with

    d_n = gamma_|n|(k) - |n|/R,   gamma_n(k) = -k K_{n-1}(kR) / K_n(kR),

and d_n = -|n|/R at k = 0. ``gamma_n`` equals the Hankel form
i k H_{n-1}(ikR) / H_n(ikR) through the connection formula.
"""
from dataclasses import dataclass

import numpy as np

from . import specfun

__all__ = [
    "DtnMatrix",
    "gamma_n",
    "gamma_hankel",
    "gamma_small_k",
    "dtn_matrix",
    "dtn_norm",
    "dtn_continuity_modulus",
    "sobolev_weights",
]


def gamma_n(n, k, R=1.0):
    """-k K_{n-1}(kR)/K_n(kR), real and negative for k > 0."""
    n = int(n)
    if n < 0:
        raise ValueError("gamma_n takes |n|")
    if not k > 0 or not R > 0:
        raise ValueError("k and R must be positive")
    return float(-k * specfun.bessel_k_ratio(n, k * R))


def gamma_hankel(n, k, R=1.0):
    """The same coefficient via i k H_{n-1}(ikR) / H_n(ikR) (H_{-1} = -H_1)."""
    z = 1j * k * R
    num = -specfun.hankel1(1, z) if n == 0 else specfun.hankel1(n - 1, z)
    return complex(1j * k * num / specfun.hankel1(n, z))


def gamma_small_k(n, k, R=1.0):
    """Leading small-k behaviour of gamma_n.

    n = 0: 1/(R ln k R) up to O(1/ln^2); n = 1: k^2 R ln(kR); n >= 2:
    -k^2 R / (2 (n - 1)) from K_n(x) ~ (n-1)! (2/x)^n / 2.
    """
    x = k * R
    if n == 0:
        return 1.0 / (R * np.log(x))
    if n == 1:
        return k * x * np.log(x)
    return -k * x / (2.0 * (n - 1))


def sobolev_weights(nf):
    n = np.arange(-nf, nf + 1)
    return np.sqrt(1.0 + n * n)


@dataclass(frozen=True)
class DtnMatrix:
    """Diagonal Fourier symbol of the DtN map, modes -N_f..N_f."""

    nf: int
    radius: float
    k: float
    diag: np.ndarray

    @property
    def modes(self):
        return np.arange(-self.nf, self.nf + 1)

    def entry(self, n):
        return self.diag[n + self.nf]

    def dense(self):
        return np.diag(self.diag)

    def apply(self, coeffs):
        return self.diag * np.asarray(coeffs)


def dtn_matrix(k, R=1.0, nf=40):
    """Truncated DtN symbol; k = 0 gives the Laplace map -|n|/R exactly."""
    nf = int(nf)
    if nf < 1:
        raise ValueError("N_f must be at least 1")
    if not R > 0 or k < 0:
        raise ValueError("need R > 0 and k >= 0")
    absn = np.abs(np.arange(-nf, nf + 1))
    d = -absn / R
    if k > 0:
        gam = np.array([gamma_n(j, k, R) for j in range(nf + 1)])
        d = gam[absn] + d
    d = np.asarray(d, dtype=float)
    d.setflags(write=False)
    return DtnMatrix(nf, float(R), float(k), d)


def dtn_norm(a, b):
    """||A - B|| from H^{1/2} to H^{-1/2}: max_n |a_n - b_n| / (1 + n^2)^{1/2}."""
    if a.nf != b.nf:
        raise ValueError("truncation orders differ")
    return float(np.max(np.abs(a.diag - b.diag) / sobolev_weights(a.nf)))


def dtn_continuity_modulus(k, tau, R=1.0, nf=40):
    if not (k > 0 and tau > 0):
        raise ValueError("k and tau must be positive")
    if k == tau:
        return 0.0
    return dtn_norm(dtn_matrix(k, R, nf), dtn_matrix(tau, R, nf))
