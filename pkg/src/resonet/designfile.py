"""Design-file persistence, config parsing, and bundled reference designs.

Design files are JSON with keys mirroring the model field names. Floats
round-trip exactly because they are serialized at shortest-exact
precision, so parse(serialize(d)) reproduces every numeric field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources

from ._util import atomic_write_text
from ._version import __version__
from .coupling import CouplingMatrix, from_couplings
from .errors import ParseError, UnknownPresetError
from .polynomials import CharacteristicPolynomials, extract_polynomials
from .prototype import (
    CouplingTargets,
    FilterSpec,
    LowpassPrototype,
    chebyshev_g_values,
    spec_to_couplings,
)


@dataclass
class DesignFile:
    """Everything the forward synthesis chain produces for one filter."""

    spec: FilterSpec
    prototype: LowpassPrototype
    targets: CouplingTargets
    matrix: CouplingMatrix
    polynomials: CharacteristicPolynomials | None = None
    provenance: dict = field(default_factory=dict)


def _provenance() -> dict:
    return {
        "tool": f"resonet {__version__}",
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }


def synthesize_design(spec: FilterSpec) -> DesignFile:
    """Run the full forward chain: prototype, targets, matrix, polynomials."""
    targets = spec_to_couplings(spec)
    matrix = from_couplings(targets, spec.fbw)
    return DesignFile(
        spec=spec,
        prototype=chebyshev_g_values(spec.order, spec.ripple_db),
        targets=targets,
        matrix=matrix,
        polynomials=extract_polynomials(matrix),
        provenance=_provenance(),
    )


def _roots_to_pairs(roots) -> list[list[float]]:
    return [[r.real, r.imag] for r in roots]


def _pairs_to_roots(pairs) -> tuple[complex, ...]:
    return tuple(complex(re, im) for re, im in pairs)


def design_to_dict(design: DesignFile) -> dict:
    out = {
        "spec": {
            "order": design.spec.order,
            "f0_hz": design.spec.f0_hz,
            "bandwidth_hz": design.spec.bandwidth_hz,
            "ripple_db": design.spec.ripple_db,
        },
        "prototype": {"g": list(design.prototype.g)},
        "targets": {
            "qe_in": design.targets.qe_in,
            "qe_out": design.targets.qe_out,
            "k": list(design.targets.k),
        },
        "matrix": {
            "n": design.matrix.n,
            "m": design.matrix.m.tolist(),
            "qe1": design.matrix.qe1,
            "qen": design.matrix.qen,
        },
        "provenance": dict(design.provenance),
    }
    if design.polynomials is not None:
        out["polynomials"] = {
            "e_roots": _roots_to_pairs(design.polynomials.e_roots),
            "f_roots": _roots_to_pairs(design.polynomials.f_roots),
            "p_roots": _roots_to_pairs(design.polynomials.p_roots),
            "epsilon": design.polynomials.epsilon,
        }
    return out


def _require(record: dict, key: str, where: str):
    if key not in record:
        raise ParseError(f"{where}: missing key {key!r}")
    return record[key]


def design_from_dict(data: dict) -> DesignFile:
    spec_rec = _require(data, "spec", "design file")
    matrix_rec = _require(data, "matrix", "design file")
    spec = FilterSpec(
        order=_require(spec_rec, "order", "design spec"),
        f0_hz=_require(spec_rec, "f0_hz", "design spec"),
        bandwidth_hz=_require(spec_rec, "bandwidth_hz", "design spec"),
        ripple_db=_require(spec_rec, "ripple_db", "design spec"),
    )
    prototype = LowpassPrototype(
        g=tuple(_require(_require(data, "prototype", "design file"), "g", "prototype"))
    )
    targets_rec = _require(data, "targets", "design file")
    targets = CouplingTargets(
        qe_in=_require(targets_rec, "qe_in", "targets"),
        qe_out=_require(targets_rec, "qe_out", "targets"),
        k=tuple(_require(targets_rec, "k", "targets")),
    )
    matrix = CouplingMatrix(
        m=_require(matrix_rec, "m", "matrix"),
        qe1=_require(matrix_rec, "qe1", "matrix"),
        qen=_require(matrix_rec, "qen", "matrix"),
    )
    polynomials = None
    if "polynomials" in data:
        rec = data["polynomials"]
        polynomials = CharacteristicPolynomials(
            e_roots=_pairs_to_roots(_require(rec, "e_roots", "polynomials")),
            f_roots=_pairs_to_roots(_require(rec, "f_roots", "polynomials")),
            p_roots=_pairs_to_roots(_require(rec, "p_roots", "polynomials")),
            epsilon=_require(rec, "epsilon", "polynomials"),
        )
    return DesignFile(
        spec=spec,
        prototype=prototype,
        targets=targets,
        matrix=matrix,
        polynomials=polynomials,
        provenance=dict(data.get("provenance", {})),
    )


def save_design(design: DesignFile, path) -> None:
    atomic_write_text(str(path), json.dumps(design_to_dict(design), indent=2) + "\n")


def _read_json(path) -> dict:
    with open(path) as handle:
        text = handle.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: line {err.lineno}, column {err.colno}: {err.msg}") from err
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return data


def load_design(path) -> DesignFile:
    return design_from_dict(_read_json(path))


def load_filter_config(path) -> FilterSpec:
    """Parse a synthesis config: order, f0_hz, ripple_db, and either
    bandwidth_hz or fbw."""
    data = _read_json(path)
    return filter_spec_from_config(data, where=str(path))


def filter_spec_from_config(data: dict, where: str = "config") -> FilterSpec:
    order = _require(data, "order", where)
    f0_hz = _require(data, "f0_hz", where)
    ripple_db = _require(data, "ripple_db", where)
    if "bandwidth_hz" in data:
        bandwidth_hz = data["bandwidth_hz"]
    elif "fbw" in data:
        bandwidth_hz = data["fbw"] * f0_hz
    else:
        raise ParseError(f"{where}: missing key 'bandwidth_hz' (or 'fbw')")
    return FilterSpec(order=order, f0_hz=f0_hz, bandwidth_hz=bandwidth_hz, ripple_db=ripple_db)


_reference_cache: dict | None = None


def _reference_designs() -> dict:
    global _reference_cache
    if _reference_cache is None:
        _reference_cache = json.loads(
            resources.files("resonet.data").joinpath("reference_designs.json").read_text()
        )
    return _reference_cache


def bundled_design_names() -> tuple[str, ...]:
    return tuple(sorted(_reference_designs()["designs"]))


def bundled_design(name: str) -> dict:
    """Full bundled record: filter config, waveguide band, and the
    reference physical dimensions (EM-derived data, not computed here)."""
    designs = _reference_designs()["designs"]
    for key, record in designs.items():
        if key.lower() == name.lower():
            return record
    raise UnknownPresetError(name, sorted(designs))


def bundled_filter_spec(name: str) -> FilterSpec:
    record = bundled_design(name)
    return filter_spec_from_config(record["spec"], where=f"bundled design {name!r}")
