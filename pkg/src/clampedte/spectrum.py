"""Spectra of a named shape and the report object written by the CLI."""
import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bie, nep
from .geometry import PlanarCurve, enclosed_area, from_name

__all__ = [
    "SolverParams",
    "SpectrumEntry",
    "SpectrumReport",
    "SpectrumError",
    "compute_spectrum",
    "build_report",
    "REPORT_SCHEMA",
    "CSV_COLUMNS",
    "TYPES",
]

TYPES = ("DE", "NE", "TE")
CSV_COLUMNS = ("shape", "type", "index", "value", "residual", "multiplicity")
# the Neumann family is evaluated here to certify the constant eigenfunction
NE_ZERO_PROBE = 1e-8


class SpectrumError(ArithmeticError):
    """The sweep ended before the requested number of eigenvalues was found."""


@dataclass(frozen=True)
class SolverParams:
    nodes: int = 128
    kmax: float = 12.0
    contour_height: float = 0.25
    half_width: float = 1.0
    overlap: float = 0.25
    z_min: float = 0.5
    quadrature_points: int = 32
    subspace_dim: int = 8
    rank_tol: float = 1e-8
    seed: int = 0


@dataclass
class SpectrumEntry:
    type: str
    index: int
    value: float
    residual: float
    multiplicity: int
    imag: float = 0.0          # imaginary part before snapping to the real axis


def _resolve(shape):
    return shape if isinstance(shape, PlanarCurve) else from_name(shape)


def compute_spectrum(shape, kind, count, params=SolverParams(), backend=None):
    """First ``count`` values of type DE, NE or TE, listed with multiplicity.

    Returns ``(entries, rejected)``; ``rejected`` holds the clamped candidates
    that failed the off-node transmission check.
    """
    kind = kind.upper()
    if kind not in TYPES:
        raise ValueError(f"unknown spectrum type {kind!r}")
    curve = _resolve(shape)
    bd = curve.discretize(params.nodes)
    family = bie.family_for(kind, bd, backend=backend)
    entries = []
    if kind == "NE":
        # the constant is always a Neumann eigenfunction; the family itself is
        # singular in the limit z -> 0, which gives the residual
        res = float(nep.dense_svd(family(NE_ZERO_PROBE))[1][-1])
        entries.append(SpectrumEntry("NE", 1, 0.0, res, 1))
    need = count - len(entries)
    rejected = []
    if need > 0:
        accept = None
        if kind == "TE":
            def accept(z, q):
                return bie.transmission_probe(bd, z, q, backend=backend)
        sweep = nep.sweep_real_axis(
            family, need, z_min=params.z_min, z_max=params.kmax,
            half_width=params.half_width, overlap=params.overlap,
            height=params.contour_height, quadrature_points=params.quadrature_points,
            subspace_dim=params.subspace_dim, rank_tol=params.rank_tol, seed=params.seed,
            accept=accept)
        if not sweep.complete:
            got = sum(r.multiplicity for r in sweep.eigenvalues)
            raise SpectrumError(
                f"{kind} on {curve.name}: found {got} of {need} values below k_max = "
                f"{params.kmax:g}")
        for r in sweep.eigenvalues:
            for _ in range(r.multiplicity):
                entries.append(SpectrumEntry(kind, len(entries) + 1, float(r.eigenvalue.real),
                                             float(r.residual), int(r.multiplicity),
                                             float(r.raw.imag)))
        rejected = sweep.rejected
    return entries[:count], rejected


@dataclass
class SpectrumReport:
    shape: str
    nodes: int
    params: dict
    spectra: dict                       # type -> list of SpectrumEntry
    area: float
    rejected: list = field(default_factory=list)   # (type, value, trace, normal)

    # verdicts are recomputed from the listed values every time
    @property
    def upperbound_ok(self):
        te, de = self.spectra.get("TE"), self.spectra.get("DE")
        if not te or not de:
            return None
        return te[0].value ** 2 <= de[0].value ** 2

    @property
    def interlacing_ok(self):
        ne, te, de = (self.spectra.get(t) for t in ("NE", "TE", "DE"))
        if not (ne and te and de):
            return None
        n = min(len(ne), len(te), len(de))
        return [ne[j].value ** 2 <= te[j].value ** 2 <= de[j].value ** 2 for j in range(n)]

    def to_dict(self):
        return {
            "shape": self.shape,
            "nodes": self.nodes,
            "params": dict(self.params),
            "spectra": {t: [asdict(e) for e in v] for t, v in sorted(self.spectra.items())},
            "area": self.area,
            "verdicts": {
                "upperbound_ok": self.upperbound_ok,
                "interlacing_ok": self.interlacing_ok,
            },
            "rejected": [list(r) for r in self.rejected],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for t in TYPES:
            for e in self.spectra.get(t, []):
                writer.writerow([self.shape, t, e.index, repr(e.value),
                                 f"{e.residual:.3e}", e.multiplicity])
        return buf.getvalue()


def build_report(shape, types=TYPES, count=5, params=SolverParams(), backend=None):
    curve = _resolve(shape)
    spectra, rejected = {}, []
    for t in types:
        entries, rej = compute_spectrum(curve, t, count, params, backend)
        spectra[t.upper()] = entries
        for r in rej:
            rejected.append((t.upper(), float(r.eigenvalue.real),
                             float(r.probe.trace), float(r.probe.normal)))
    params_d = asdict(params)
    params_d["backend"] = bie.resolve_backend(backend)
    return SpectrumReport(curve.name, params.nodes, params_d, spectra,
                          float(np.round(enclosed_area(curve), 12)), rejected)


_ENTRY_SCHEMA = {
    "type": "object",
    "required": ["type", "index", "value", "residual", "multiplicity", "imag"],
    "properties": {
        "type": {"enum": list(TYPES)},
        "index": {"type": "integer", "minimum": 1},
        "value": {"type": "number", "minimum": 0},
        "residual": {"type": "number", "minimum": 0},
        "multiplicity": {"type": "integer", "minimum": 1},
        "imag": {"type": "number"},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SpectrumReport",
    "type": "object",
    "required": ["shape", "nodes", "params", "spectra", "area", "verdicts", "rejected"],
    "properties": {
        "shape": {"type": "string"},
        "nodes": {"type": "integer", "minimum": 4},
        "params": {"type": "object"},
        "spectra": {
            "type": "object",
            "propertyNames": {"enum": list(TYPES)},
            "additionalProperties": {"type": "array", "items": _ENTRY_SCHEMA},
        },
        "area": {"type": "number", "exclusiveMinimum": 0},
        "verdicts": {
            "type": "object",
            "required": ["upperbound_ok", "interlacing_ok"],
            "properties": {
                "upperbound_ok": {"type": ["boolean", "null"]},
                "interlacing_ok": {
                    "anyOf": [{"type": "null"}, {"type": "array", "items": {"type": "boolean"}}]
                },
            },
        },
        "rejected": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [
                {"enum": list(TYPES)}, {"type": "number"}, {"type": "number"}, {"type": "number"}]},
        },
    },
    "additionalProperties": False,
}
