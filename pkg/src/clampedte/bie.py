"""Nystrom discretisation of layer operators on analytic closed curves.

Every kernel is split as ``K(s,t) = K1(s,t) ln(4 sin^2((s-t)/2)) + K2(s,t)``
with smooth ``K1, K2``; the log part is integrated exactly against the
trigonometric interpolant of the density and the smooth part by the
trapezoidal rule. With 2m nodes the matrix entry is

    R_j(s) K1(s, t_j) + (pi/m) K2(s, t_j),
    R_j(s) = -(2 pi/m) sum_{q=1}^{m-1} cos(q(s-t_j))/q - (pi/m^2) cos(m(s-t_j)).

Two kernels are supported, both as functions of the distance r = |x - y|:
``helmholtz`` (i/4) H0(z r) and ``modified`` (1/(2 pi)) K0(z r).
"""
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from ._accel import resolve_backend
from .geometry import BoundaryDiscretization

__all__ = [
    "KernelFamily",
    "assemble_single_layer",
    "assemble_double_layer",
    "assemble_adjoint_double_layer",
    "assemble_all",
    "HolomorphicOperatorFamily",
    "dirichlet_family",
    "neumann_family",
    "clamped_te_family",
    "family_for",
    "probe_points",
    "transmission_probe",
    "ProbeCheck",
    "PROBE_COUNT",
    "PROBE_TOL",
]

EULER_GAMMA = specfun.EULER_GAMMA
KERNEL_KINDS = ("helmholtz", "modified")
PROBE_COUNT = 16
PROBE_TOL = 1e-4


@dataclass(frozen=True)
class KernelFamily:
    """Fundamental solution selector: ``helmholtz`` or ``modified`` at parameter z."""

    kind: str
    z: complex

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"kernel kind must be one of {KERNEL_KINDS}")
        z = complex(self.z)
        if z == 0:
            raise ValueError("kernel parameter z must be nonzero")
        if z.real <= 0:
            raise ValueError("kernel parameter must satisfy Re z > 0")
        object.__setattr__(self, "z", z)

    def value(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "helmholtz":
            return 0.25j * specfun.hankel1(0, self.z * r)
        return specfun.bessel_k(0, self.z * r) / (2 * np.pi)


# --------------------------------------------------------------------------
# z-independent pair geometry
# --------------------------------------------------------------------------

def _log_weights(diff, m):
    q = np.arange(1, m)
    acc = np.cos(np.multiply.outer(diff, q)) @ (1.0 / q)
    return -(2 * np.pi / m) * acc - (np.pi / m ** 2) * np.cos(m * diff)


@dataclass(frozen=True, eq=False)
class _PairGeometry:
    """Target/source data that does not depend on the kernel parameter."""

    nodal: bool
    weights: np.ndarray        # R_j(s_i)
    logterm: np.ndarray        # ln(4 sin^2((s_i - t_j)/2)), zero on the nodal diagonal
    dist: np.ndarray           # |x(s_i) - y(t_j)|, one on the nodal diagonal
    speed: np.ndarray          # |y'(t_j)| (row vector)
    g_double: np.ndarray       # n(t_j).(x_i - y_j)/r with n = (y2', -y1')
    g_adjoint: np.ndarray      # nu(s_i).(y_j - x_i)/r * |y'(t_j)|
    diag_curv: np.ndarray = field(default=None)   # -kappa |x'| / (4 pi) on nodes
    diag_speed: np.ndarray = field(default=None)


def _pair_geometry(bd, s=None):
    n, m = bd.n, bd.m
    t = bd.t
    y, dy = bd.points, bd.tangents
    speed = bd.speed
    nodal = s is None
    if nodal:
        # circulant: R depends only on (i - j) mod n
        k = np.arange(n)
        row = _log_weights(k * np.pi / m, m)
        weights = row[(k[:, None] - k[None, :]) % n]
        x, nu = y, bd.normals
        diff = t[:, None] - t[None, :]
    else:
        s = np.asarray(s, dtype=float)
        weights = _log_weights(s[:, None] - t[None, :], m)
        x, dx, _ = bd.curve.evaluate(s)
        nu = np.stack([dx[:, 1], -dx[:, 0]], axis=-1) / np.hypot(dx[:, 0], dx[:, 1])[:, None]
        diff = s[:, None] - t[None, :]
    sn = np.sin(0.5 * diff)
    X = x[:, None, :] - y[None, :, :]
    dist = np.hypot(X[..., 0], X[..., 1])
    if nodal:
        np.fill_diagonal(sn, 1.0)
        np.fill_diagonal(dist, 1.0)
    logterm = np.log(4.0 * sn * sn)
    if nodal:
        np.fill_diagonal(logterm, 0.0)
    nrm = np.stack([dy[:, 1], -dy[:, 0]], axis=-1)
    g_double = (nrm[None, :, 0] * X[..., 0] + nrm[None, :, 1] * X[..., 1]) / dist
    g_adjoint = -(nu[:, None, 0] * X[..., 0] + nu[:, None, 1] * X[..., 1]) / dist * speed[None, :]
    if nodal:
        np.fill_diagonal(g_double, 0.0)
        np.fill_diagonal(g_adjoint, 0.0)
        ddy = bd.second
        dcurv = (dy[:, 1] * ddy[:, 0] - dy[:, 0] * ddy[:, 1]) / (4 * np.pi * speed ** 2)
        return _PairGeometry(True, weights, logterm, dist, speed[None, :],
                             g_double, g_adjoint, dcurv, speed.copy())
    return _PairGeometry(False, weights, logterm, dist, speed[None, :], g_double, g_adjoint)


_GEOMETRY_CACHE_ATTR = "_clampedte_pairs"


def _nodal_geometry(bd):
    geo = bd.__dict__.get(_GEOMETRY_CACHE_ATTR)
    if geo is None:
        geo = _pair_geometry(bd)
        object.__setattr__(bd, _GEOMETRY_CACHE_ATTR, geo)
    return geo


# --------------------------------------------------------------------------
# kernel evaluation on the distance grid
# --------------------------------------------------------------------------

def _bessel_grid(kind, w, backend):
    flat = np.ascontiguousarray(w.ravel())
    if backend == "numba":
        from . import _jit
        vals = _jit.jy01_grid(flat) if kind == "helmholtz" else _jit.ik01_grid(flat)
    else:
        vals = specfun.jy01(flat) if kind == "helmholtz" else specfun.ik01(flat)
    return [v.reshape(w.shape) for v in vals]


def _assemble(geo, m, kernel, which, backend):
    """Return a dict with the requested operators among 'S', 'D', 'A'."""
    z = kernel.z
    w = z * geo.dist
    h = np.pi / m
    out = {}
    if kernel.kind == "helmholtz":
        j0, j1, y0, y1 = _bessel_grid("helmholtz", w, backend)
        reg0, log0 = 0.25j * (j0 + 1j * y0), -j0 / (4 * np.pi)
        reg1, log1 = 0.25j * z * (j1 + 1j * y1), -z / (4 * np.pi) * j1
    else:
        i0, i1, k0, k1 = _bessel_grid("modified", w, backend)
        reg0, log0 = k0 / (2 * np.pi), -i0 / (4 * np.pi)
        reg1, log1 = z / (2 * np.pi) * k1, z / (4 * np.pi) * i1
    for op in which:
        if op == "S":
            full = reg0 * geo.speed
            k1m = log0 * geo.speed
        elif op == "D":
            full = reg1 * geo.g_double
            k1m = log1 * geo.g_double
        else:
            full = reg1 * geo.g_adjoint
            k1m = log1 * geo.g_adjoint
        k2m = full - k1m * geo.logterm
        if geo.nodal:
            idx = np.diag_indices_from(k2m)
            if op == "S":
                sp = geo.diag_speed
                k1m[idx] = -sp / (4 * np.pi)
                if kernel.kind == "helmholtz":
                    k2m[idx] = (0.25j - EULER_GAMMA / (2 * np.pi)
                                - np.log(0.5 * z * sp) / (2 * np.pi)) * sp
                else:
                    k2m[idx] = -(np.log(0.5 * z * sp) + EULER_GAMMA) * sp / (2 * np.pi)
            else:
                k1m[idx] = 0.0
                k2m[idx] = geo.diag_curv
        out[op] = geo.weights * k1m + h * k2m
    return out


def assemble_all(bd, kernel, which=("S", "D", "A"), targets=None, backend=None):
    """Assemble several operators sharing one Bessel evaluation.

    ``targets=None`` collocates at the nodes; otherwise ``targets`` is an array
    of parameter values (off the nodes) and the rows evaluate the boundary
    operators there from the nodal density.
    """
    backend = resolve_backend(backend)
    geo = _nodal_geometry(bd) if targets is None else _pair_geometry(bd, targets)
    try:
        return _assemble(geo, bd.m, kernel, tuple(which), backend)
    except (FloatingPointError, ValueError) as exc:  # pragma: no cover
        raise ArithmeticError(f"kernel evaluation failed at z={kernel.z}: {exc}") from exc


def assemble_single_layer(bd, kernel, backend=None):
    return assemble_all(bd, kernel, ("S",), backend=backend)["S"]


def assemble_double_layer(bd, kernel, backend=None):
    return assemble_all(bd, kernel, ("D",), backend=backend)["D"]


def assemble_adjoint_double_layer(bd, kernel, backend=None):
    return assemble_all(bd, kernel, ("A",), backend=backend)["A"]


# --------------------------------------------------------------------------
# holomorphic families
# --------------------------------------------------------------------------

def _row_scale(z):
    # holomorphic stand-in for 1/max(1, |z|); |1/sqrt(1+z^2)| ~ 1/|z| for large z
    return 1.0 / np.sqrt(1.0 + z * z)


@dataclass(frozen=True, eq=False)
class HolomorphicOperatorFamily:
    """z -> T(z), a dense matrix depending holomorphically on z in Re z > 0."""

    role: str
    boundary: BoundaryDiscretization
    backend: str = None

    def __post_init__(self):
        if self.role not in ("dirichlet", "neumann", "clamped_te"):
            raise ValueError(f"unknown role {self.role!r}")
        object.__setattr__(self, "backend", resolve_backend(self.backend))

    @property
    def size(self):
        n = self.boundary.n
        return 2 * n if self.role == "clamped_te" else n

    def __call__(self, z):
        z = complex(z)
        bd = self.boundary
        n = bd.n
        eye = np.eye(n)
        if self.role == "dirichlet":
            d = assemble_all(bd, KernelFamily("helmholtz", z), ("D",), backend=self.backend)["D"]
            return d - 0.5 * eye
        if self.role == "neumann":
            a = assemble_all(bd, KernelFamily("helmholtz", z), ("A",), backend=self.backend)["A"]
            return a + 0.5 * eye
        hz = assemble_all(bd, KernelFamily("helmholtz", z), ("S", "A"), backend=self.backend)
        mz = assemble_all(bd, KernelFamily("modified", z), ("S", "A"), backend=self.backend)
        sc = _row_scale(z)
        top = np.hstack([hz["S"], mz["S"]])
        bottom = np.hstack([(hz["A"] + 0.5 * eye) * sc, (mz["A"] - 0.5 * eye) * sc])
        return np.vstack([top, bottom])


def dirichlet_family(bd, backend=None):
    """T(z) = -I/2 + D_z; singular where z^2 is a Dirichlet eigenvalue."""
    return HolomorphicOperatorFamily("dirichlet", bd, backend)


def neumann_family(bd, backend=None):
    """T(z) = I/2 + D'_z; singular where z^2 is a nonzero Neumann eigenvalue."""
    return HolomorphicOperatorFamily("neumann", bd, backend)


def clamped_te_family(bd, backend=None):
    """Block family for v = S^H phi (interior), w = S^M psi (decaying exterior).

    Rows impose v + w = 0 and d_nu(v + w) = 0 on the boundary; the second row
    carries the factor 1/sqrt(1 + z^2) to balance the two traces.
    """
    return HolomorphicOperatorFamily("clamped_te", bd, backend)


FAMILY_BUILDERS = {
    "DE": dirichlet_family,
    "NE": neumann_family,
    "TE": clamped_te_family,
}


def family_for(kind, bd, backend=None):
    try:
        return FAMILY_BUILDERS[kind.upper()](bd, backend=backend)
    except KeyError:
        raise ValueError(f"unknown spectrum type {kind!r}; expected DE, NE or TE") from None


# --------------------------------------------------------------------------
# off-node verification of clamped candidates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeCheck:
    """Relative mismatch of the two transmission conditions at probe points."""

    trace: float
    normal: float
    tol: float = PROBE_TOL

    @property
    def passed(self):
        return self.trace <= self.tol and self.normal <= self.tol


def probe_points(bd, count=PROBE_COUNT):
    """Parameter values halfway between nodes, spread around the curve."""
    base = 2 * np.pi * np.arange(count) / count
    return base + 0.5 * np.pi / bd.m


def _trig_interpolation(bd, s):
    """Rows evaluating the degree-m trigonometric interpolant at parameters s."""
    m, n = bd.m, bd.n
    d = np.asarray(s)[:, None] - bd.t[None, :]
    q = np.arange(1, m)
    acc = 1.0 + 2.0 * (np.cos(np.multiply.outer(d, q)).sum(-1)) + np.cos(m * d)
    return acc / n


def transmission_probe(bd, z, q, count=PROBE_COUNT, backend=None):
    """Check v + w = 0 and d_nu v + d_nu w = 0 away from the collocation nodes.

    ``q`` stacks the densities (phi, psi) of the clamped family. Genuine
    eigenvalues give mismatches near the discretisation error; singular points
    created by the first-kind block alone leave O(1) mismatches.
    """
    n = bd.n
    phi, psi = np.asarray(q[:n]), np.asarray(q[n:])
    s = probe_points(bd, count)
    hz = assemble_all(bd, KernelFamily("helmholtz", z), ("S", "A"), targets=s, backend=backend)
    mz = assemble_all(bd, KernelFamily("modified", z), ("S", "A"), targets=s, backend=backend)
    interp = _trig_interpolation(bd, s)
    v = hz["S"] @ phi
    w = mz["S"] @ psi
    dv = hz["A"] @ phi + 0.5 * (interp @ phi)
    dw = mz["A"] @ psi - 0.5 * (interp @ psi)
    tiny = np.finfo(float).tiny
    trace = np.max(np.abs(v + w)) / max(np.max(np.abs(v)), np.max(np.abs(w)), tiny)
    normal = np.max(np.abs(dv + dw)) / max(np.max(np.abs(dv)), np.max(np.abs(dw)), tiny)
    return ProbeCheck(float(trace), float(normal))
