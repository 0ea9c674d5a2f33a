"""Closed analytic boundary curves and their equispaced discretisation."""
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "PlanarCurve",
    "BoundaryDiscretization",
    "curve_point",
    "outward_normal",
    "enclosed_area",
    "curvature",
    "from_name",
    "disk",
    "ellipse",
    "star",
    "peanut",
    "kite",
    "fourier",
    "SHIPPED_SHAPES",
]

SHIPPED_SHAPES = ("disk", "star", "peanut", "kite")


def _polar(r, r1, r2, t):
    """Position and derivatives of x(t) = r(t) (cos t, sin t)."""
    e = np.stack([np.cos(t), np.sin(t)], axis=-1)
    p = np.stack([-np.sin(t), np.cos(t)], axis=-1)
    r, r1, r2 = r[..., None], r1[..., None], r2[..., None]
    return r * e, r1 * e + r * p, r2 * e + 2 * r1 * p - r * e


def _eval_disk(t, radius):
    c, s = np.cos(t), np.sin(t)
    x = radius * np.stack([c, s], axis=-1)
    dx = radius * np.stack([-s, c], axis=-1)
    return x, dx, -x


def _eval_ellipse(t, eps):
    c, s = np.cos(t), np.sin(t)
    return (np.stack([c, eps * s], axis=-1),
            np.stack([-s, eps * c], axis=-1),
            np.stack([-c, -eps * s], axis=-1))


def _eval_star(t):
    r = 0.25 * (0.3 * np.cos(5 * t) + 2.0)
    r1 = -0.375 * np.sin(5 * t)
    r2 = -1.875 * np.cos(5 * t)
    return _polar(r, r1, r2, t)


def _eval_peanut(t):
    g = 3.0 * np.cos(t) ** 2 + 1.0
    g1 = -3.0 * np.sin(2 * t)
    g2 = -6.0 * np.cos(2 * t)
    sg = np.sqrt(g)
    r = 0.5 * sg
    r1 = 0.25 * g1 / sg
    r2 = 0.25 * g2 / sg - 0.125 * g1 ** 2 / (g * sg)
    return _polar(r, r1, r2, t)


def _eval_kite(t):
    c, s = np.cos(t), np.sin(t)
    c2, s2 = np.cos(2 * t), np.sin(2 * t)
    return (np.stack([0.75 * c + 0.3 * c2, s], axis=-1),
            np.stack([-0.75 * s - 0.6 * s2, c], axis=-1),
            np.stack([-0.75 * c - 1.2 * c2, -s], axis=-1))


def _eval_fourier(t, coeffs):
    n = coeffs[:, 0]
    a, b, c, d = coeffs[:, 1], coeffs[:, 2], coeffs[:, 3], coeffs[:, 4]
    nt = np.multiply.outer(t, n)
    cs, sn = np.cos(nt), np.sin(nt)
    x = np.stack([cs @ a + sn @ b, cs @ c + sn @ d], axis=-1)
    dx = np.stack([(-sn * n) @ a + (cs * n) @ b, (-sn * n) @ c + (cs * n) @ d], axis=-1)
    n2 = n * n
    ddx = np.stack([(-cs * n2) @ a - (sn * n2) @ b, (-cs * n2) @ c - (sn * n2) @ d], axis=-1)
    return x, dx, ddx


@dataclass(frozen=True)
class PlanarCurve:
    """A 2*pi-periodic, counterclockwise, regular closed curve.

    ``kind`` is one of ``disk``, ``ellipse``, ``star``, ``peanut``, ``kite``,
    ``fourier``. ``param`` carries the radius (disk), the semi-axis ratio
    (ellipse) or the coefficient rows ``n a_n b_n c_n d_n`` (fourier).
    """

    kind: str
    param: object = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in ("disk", "ellipse", "star", "peanut", "kite", "fourier"):
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind == "fourier":
            arr = np.asarray(self.param, dtype=float)
            if arr.ndim != 2 or arr.shape[1] != 5:
                raise ValueError("fourier coefficients need rows 'n a_n b_n c_n d_n'")
            object.__setattr__(self, "param", tuple(map(tuple, arr)))
        elif self.kind == "ellipse" and not (0 < float(self.param) <= 1):
            raise ValueError("ellipse aspect ratio must lie in (0, 1]")
        elif self.kind == "disk" and not float(self.param) > 0:
            raise ValueError("disk radius must be positive")
        if not self.name:
            label = self.kind
            if self.kind == "ellipse":
                label = f"ellipse:{float(self.param):g}"
            elif self.kind == "disk" and float(self.param) != 1.0:
                label = f"disk:{float(self.param):g}"
            object.__setattr__(self, "name", label)

    def evaluate(self, t):
        """Return ``x(t), x'(t), x''(t)``, each with trailing axis of length 2."""
        t = np.asarray(t, dtype=float)
        if self.kind == "disk":
            return _eval_disk(t, float(self.param))
        if self.kind == "ellipse":
            return _eval_ellipse(t, float(self.param))
        if self.kind == "star":
            return _eval_star(t)
        if self.kind == "peanut":
            return _eval_peanut(t)
        if self.kind == "kite":
            return _eval_kite(t)
        return _eval_fourier(t, np.asarray(self.param))

    def discretize(self, nodes=128):
        return BoundaryDiscretization.build(self, nodes)


def disk(radius=1.0):
    return PlanarCurve("disk", float(radius))


def ellipse(eps):
    return PlanarCurve("ellipse", float(eps))


def star():
    return PlanarCurve("star")


def peanut():
    return PlanarCurve("peanut")


def kite():
    return PlanarCurve("kite")


def fourier(coeffs, name="fourier"):
    return PlanarCurve("fourier", coeffs, name=name)


def from_name(spec):
    """Parse ``disk``, ``disk:<R>``, ``ellipse:<eps>``, ``star``, ``peanut``,
    ``kite`` or ``fourier:<file>``."""
    spec = spec.strip()
    head, _, tail = spec.partition(":")
    head = head.lower()
    try:
        if head == "disk":
            return disk(float(tail) if tail else 1.0)
        if head == "ellipse":
            if not tail:
                raise ValueError("ellipse needs an aspect ratio, e.g. ellipse:0.5")
            return ellipse(float(tail))
        if head in ("star", "peanut", "kite") and not tail:
            return PlanarCurve(head)
        if head == "fourier" and tail:
            rows = np.loadtxt(Path(tail), ndmin=2)
            return fourier(rows, name=f"fourier:{Path(tail).name}")
    except OSError as exc:
        raise ValueError(f"cannot read shape file: {exc}") from exc
    raise ValueError(f"unknown shape {spec!r}")


def curve_point(curve, t):
    return curve.evaluate(t)[0]


def outward_normal(curve, t):
    _, dx, _ = curve.evaluate(t)
    n = np.stack([dx[..., 1], -dx[..., 0]], axis=-1)
    return n / np.linalg.norm(n, axis=-1, keepdims=True)


def curvature(curve, t):
    """Signed curvature (positive for a counterclockwise convex arc)."""
    _, dx, ddx = curve.evaluate(t)
    num = dx[..., 0] * ddx[..., 1] - dx[..., 1] * ddx[..., 0]
    return num / np.linalg.norm(dx, axis=-1) ** 3


def enclosed_area(curve, nodes=512):
    """Green's theorem, 0.5 * int (x1 x2' - x2 x1') dt, by the trapezoidal rule."""
    t = 2 * np.pi * np.arange(nodes) / nodes
    x, dx, _ = curve.evaluate(t)
    integrand = x[:, 0] * dx[:, 1] - x[:, 1] * dx[:, 0]
    return float(0.5 * integrand.sum() * 2 * np.pi / nodes)


@dataclass(frozen=True, eq=False)
class BoundaryDiscretization:
    """Equispaced parameter nodes t_j = j pi / m, j = 0..2m-1, with geometry."""

    curve: PlanarCurve
    t: np.ndarray
    points: np.ndarray
    tangents: np.ndarray
    second: np.ndarray
    speed: np.ndarray
    normals: np.ndarray
    curvature: np.ndarray

    @classmethod
    def build(cls, curve, nodes=128):
        nodes = int(nodes)
        if nodes < 4 or nodes % 2:
            raise ValueError("node count must be an even integer >= 4")
        t = np.pi * np.arange(nodes) / (nodes // 2)
        x, dx, ddx = curve.evaluate(t)
        speed = np.hypot(dx[:, 0], dx[:, 1])
        if np.any(speed <= 0):
            raise ValueError("curve parameterisation is not regular")
        normals = np.stack([dx[:, 1], -dx[:, 0]], axis=-1) / speed[:, None]
        kappa = (dx[:, 0] * ddx[:, 1] - dx[:, 1] * ddx[:, 0]) / speed ** 3
        arrays = [t, x, dx, ddx, speed, normals, kappa]
        for a in arrays:
            a.setflags(write=False)
        return cls(curve, *arrays)

    @property
    def n(self):
        return self.t.shape[0]

    @property
    def m(self):
        return self.t.shape[0] // 2
