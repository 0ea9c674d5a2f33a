"""Contour-integral eigensolver for holomorphic matrix families T(z) q = 0.

The two-moment method: for a probe block V,

    A0 = (1/2 pi i) int T(z)^{-1} V dz,   A1 = (1/2 pi i) int z T(z)^{-1} V dz

over an ellipse, by the trapezoidal rule. A truncated SVD of A0 exposes the
eigenvalues inside as those of the small matrix U0^H A1 W0 S0^{-1}.
"""
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

__all__ = [
    "ContourSpec",
    "EigenResult",
    "BeynDiagnostics",
    "SweepResult",
    "SingularMatrixError",
    "RankOverflowError",
    "IllConditionedWarning",
    "beyn_solve",
    "dense_lu_solve",
    "dense_svd",
    "sweep_real_axis",
    "cluster",
    "REAL_TOL",
]

REAL_TOL = 1e-6          # |Im| <= REAL_TOL (1 + |Re|) counts as real
CLUSTER_TOL = 1e-6
EMPTY_TOL = 1e-8         # ||A0|| <= EMPTY_TOL * scale means no eigenvalue inside
MAX_DOUBLINGS = 3
COND_WARN = 1e12


class SingularMatrixError(ArithmeticError):
    """Exactly singular pivot in an LU factorisation."""

    def __init__(self, pivot):
        super().__init__(f"matrix is exactly singular at pivot {pivot}")
        self.pivot = pivot


class RankOverflowError(ArithmeticError):
    """The moment rank kept saturating the probe block after all doublings."""


class IllConditionedWarning(RuntimeWarning):
    pass


# --------------------------------------------------------------------------
# dense kernels
# --------------------------------------------------------------------------

def _lu_factor(a):
    with warnings.catch_warnings():
        # an exact zero pivot is reported below with its index
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(a, check_finite=True)
    zero = np.flatnonzero(np.diag(lu) == 0)
    if zero.size:
        raise SingularMatrixError(int(zero[0]))
    return lu, piv


def _rcond(lu, anorm):
    """LAPACK 1-norm reciprocal condition estimate from an LU factor."""
    gecon = sla.get_lapack_funcs("gecon", (lu,))
    rc, info = gecon(lu, anorm, norm="1")
    return float(rc)


def dense_lu_solve(a, b, return_rcond=False):
    """Solve ``A X = B`` by LU with partial pivoting.

    Raises :class:`SingularMatrixError` on an exactly zero pivot and warns with
    :class:`IllConditionedWarning` when the condition estimate exceeds 1e12.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("A must be square")
    lu, piv = _lu_factor(a)
    rc = _rcond(lu, np.linalg.norm(a, 1))
    if rc == 0 or 1.0 / rc > COND_WARN:
        warnings.warn(f"condition estimate {1.0 / max(rc, 1e-300):.3e} exceeds {COND_WARN:g}",
                      IllConditionedWarning, stacklevel=2)
    x = sla.lu_solve((lu, piv), b)
    return (x, rc) if return_rcond else x


def dense_svd(a):
    """Thin SVD ``A = U diag(s) V^H``; returns ``(U, s, V)`` (V, not V^H)."""
    try:
        u, s, vh = np.linalg.svd(np.asarray(a), full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(f"SVD did not converge: {exc}") from exc
    return u, s, vh.conj().T


# --------------------------------------------------------------------------
# contour solver
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ContourSpec:
    """Ellipse ``center + radius_real cos(theta) + i radius_imag sin(theta)``."""

    center: complex
    radius_real: float
    radius_imag: float
    quadrature_points: int = 32
    subspace_dim: int = 8

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if self.radius_real <= 0 or self.radius_imag <= 0:
            raise ValueError("ellipse semi-axes must be positive")
        if self.quadrature_points < 4 or self.quadrature_points % 2:
            raise ValueError("quadrature_points must be even and >= 4")
        if self.subspace_dim < 1:
            raise ValueError("subspace_dim must be positive")
        if self.center.real - self.radius_real <= 0:
            raise ValueError("contour must stay in Re z > 0 (kernel branch cut)")

    def nodes(self, shift=0.0):
        n = self.quadrature_points
        theta = 2 * np.pi * (np.arange(n) + shift) / n
        z = self.center + self.radius_real * np.cos(theta) + 1j * self.radius_imag * np.sin(theta)
        dz = -self.radius_real * np.sin(theta) + 1j * self.radius_imag * np.cos(theta)
        return z, dz

    def contains(self, z):
        z = np.asarray(z)
        u = (z.real - self.center.real) / self.radius_real
        v = (z.imag - self.center.imag) / self.radius_imag
        return u * u + v * v < 1.0


@dataclass
class EigenResult:
    eigenvalue: complex
    residual: float
    multiplicity: int = 1
    contour_id: int = 0
    raw: complex = None
    vectors: np.ndarray = field(default=None, repr=False)
    probe: object = None

    @property
    def value(self):
        return self.eigenvalue.real


@dataclass
class BeynDiagnostics:
    singular_values: np.ndarray
    scale: float
    rank: int
    subspace_dim: int
    node_shift: float
    empty: bool
    rejected: list = field(default_factory=list)


def _probe_block(size, cols, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((size, cols)) + 1j * rng.standard_normal((size, cols))


def cluster(values, tol=CLUSTER_TOL):
    """Group sorted-by-real-part values closer than ``tol (1 + |z|)``."""
    order = sorted(values, key=lambda v: (v.real, v.imag))
    groups = []
    for v in order:
        if groups and abs(v - groups[-1][-1]) <= tol * (1 + abs(v)):
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def snap_real(z):
    if abs(z.imag) <= REAL_TOL * (1 + abs(z.real)):
        return complex(z.real, 0.0)
    return complex(z)


def _null_vectors(mat, k):
    """Residual and the k right singular vectors of smallest singular value."""
    _, s, v = dense_svd(mat)
    return float(s[-k]), v[:, -k:]


def beyn_solve(family, contour, rank_tol=1e-8, seed=0, accept=None, contour_id=0,
               diagnostics=False):
    """All eigenvalues of ``family`` inside ``contour``.

    ``accept(z, q)`` may veto candidates (returning an object with a
    ``passed`` attribute); vetoed candidates go to ``BeynDiagnostics.rejected``.
    Returns the result list, or ``(results, diagnostics)``.
    """
    size = family.size
    ell = min(contour.subspace_dim, size)
    npts = contour.quadrature_points
    factors = None
    for shift in (0.0, 0.5, 0.25):
        zs, dzs = contour.nodes(shift)
        try:
            factors = [_lu_factor(family(z)) for z in zs]
            break
        except SingularMatrixError:
            continue
    if factors is None:
        raise SingularMatrixError(-1)

    probe = _probe_block(size, ell * 2 ** MAX_DOUBLINGS, seed)
    for doubling in range(MAX_DOUBLINGS + 1):
        vhat = probe[:, :ell]
        a0 = np.zeros((size, ell), complex)
        a1 = np.zeros((size, ell), complex)
        scale = 0.0
        for z, dz, fac in zip(zs, dzs, factors):
            x = sla.lu_solve(fac, vhat)
            scale = max(scale, np.linalg.norm(x, 2))
            x = x * (dz / (1j * npts))
            a0 += x
            a1 += z * x
        u, s, w = dense_svd(a0)
        if s[0] <= EMPTY_TOL * scale:
            diag = BeynDiagnostics(s, scale, 0, ell, shift, True)
            return ([], diag) if diagnostics else []
        rank = int(np.sum(s > max(rank_tol * s[0], EMPTY_TOL * scale)))
        # a block as wide as the matrix cannot be outgrown
        if rank < ell or ell == size:
            break
        if doubling == MAX_DOUBLINGS:
            raise RankOverflowError(
                f"moment rank saturated subspace dimension {ell} in contour {contour_id}")
        ell = min(2 * ell, size)

    u0, s0, w0 = u[:, :rank], s[:rank], w[:, :rank]
    b = (u0.conj().T @ a1 @ w0) / s0[None, :]
    lam = np.linalg.eigvals(b)
    lam = lam[contour.contains(lam)]

    results, rejected = [], []
    for group in cluster([complex(v) for v in lam]):
        raw = complex(np.mean(group))
        z = snap_real(raw)
        mult = len(group)
        res, vecs = _null_vectors(family(z), mult)
        item = EigenResult(z, res, mult, contour_id, raw, vecs)
        if accept is not None:
            item.probe = accept(z, vecs[:, 0])
            if not item.probe.passed:
                rejected.append(item)
                continue
        results.append(item)
    diag = BeynDiagnostics(s, scale, rank, ell, shift, False, rejected)
    return (results, diag) if diagnostics else results


# --------------------------------------------------------------------------
# covering a real interval
# --------------------------------------------------------------------------

@dataclass
class SweepResult:
    """Accepted eigenvalues in ascending order, plus vetoed candidates."""

    eigenvalues: list
    rejected: list
    contours: list
    complete: bool


def sweep_real_axis(family, count, z_min=0.5, z_max=12.0, half_width=1.0, overlap=0.25,
                    height=0.25, quadrature_points=32, subspace_dim=8, rank_tol=1e-8,
                    seed=0, accept=None):
    """Collect the first ``count`` eigenvalues (with multiplicity) above ``z_min``.

    Overlapping ellipses of real half-width ``half_width`` are laid along the
    axis; each one owns the part of its span up to the midpoint of the overlap
    with its neighbours, so an eigenvalue seen twice is kept once.
    """
    if count < 1:
        raise ValueError("count must be positive")
    step = 2 * half_width - overlap
    found, rejected, contours = [], [], []
    total = 0
    k = 0
    lo = z_min
    while True:
        center = z_min + half_width + k * step
        hi = center + half_width - 0.5 * overlap
        spec = ContourSpec(center, half_width, height, quadrature_points, subspace_dim)
        res, diag = beyn_solve(family, spec, rank_tol=rank_tol, seed=seed, accept=accept,
                               contour_id=k, diagnostics=True)
        contours.append((spec, diag))
        for r in res:
            if lo <= r.eigenvalue.real < hi:
                found.append(r)
                total += r.multiplicity
        rejected.extend(r for r in diag.rejected if lo <= r.eigenvalue.real < hi)
        if total >= count or hi >= z_max:
            break
        lo = hi
        k += 1
    found.sort(key=lambda r: r.eigenvalue.real)
    return SweepResult(found, rejected, contours, total >= count)
