"""Readers and writers for family files, profile tables and spherical coefficient tables.

Family file (JSON)::

    {"dim": 2,
     "metric": [1.0, 1.0],            # optional, null or omitted = all ones
     "points": [0.0, 1.0, 2.0],       # or [[x, a], ...] for 2-d coordinates
     "weights": [1.0, 1.0, 1.0],
     "vectors": [[[1, 0], [0, 0], [1, 0]],    # row = Hilbert index,
                 [[0, 0], [1, 0], [0, 0]]]}   # column = grid index, [re, im]

Profile tables are whitespace-separated ``grid_value re im`` rows. Spherical
coefficient tables are ``l n a_index re im`` rows. Both accept ``#`` comment
lines; metadata lines have the form ``# key: value`` (``n`` for radial
profiles, ``a`` and optionally ``a_weights`` for spherical tables).
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .gallery import FrequencyProfile, RadialProfile, SphericalCoefficients
from .hilbert import MeasureGrid, VectorFamily


class InputError(ValueError):
    """A malformed input file; the message names the file and the offending line or field."""


def family_to_dict(family: VectorFamily) -> dict:
    vec = np.stack([family.vectors.real, family.vectors.imag], axis=-1)
    points = family.grid.points
    return {
        "dim": family.dim,
        "metric": family.metric.tolist(),
        "points": points.tolist(),
        "weights": family.grid.weights.tolist(),
        "vectors": vec.tolist(),
    }


def write_family(family: VectorFamily, path) -> None:
    Path(path).write_text(json.dumps(family_to_dict(family)) + "\n")


def family_from_dict(doc: dict, source: str = "<family>") -> VectorFamily:
    if not isinstance(doc, dict):
        raise InputError(f"{source}: top level must be an object with fields dim, points, weights, vectors")
    for key in ("dim", "points", "weights", "vectors"):
        if key not in doc:
            raise InputError(f"{source}: missing field '{key}'")
    try:
        dim = int(doc["dim"])
    except (TypeError, ValueError):
        raise InputError(f"{source}: field 'dim' must be an integer") from None
    try:
        vec = np.asarray(doc["vectors"], dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{source}: field 'vectors' must be nested arrays of [re, im] pairs") from None
    if vec.ndim != 3 or vec.shape[-1] != 2:
        raise InputError(f"{source}: field 'vectors' must have shape (dim, N, 2), got {vec.shape}")
    if vec.shape[0] != dim:
        raise InputError(f"{source}: field 'vectors' has {vec.shape[0]} rows but dim is {dim}")
    try:
        grid = MeasureGrid(np.asarray(doc["points"], dtype=float), np.asarray(doc["weights"], dtype=float))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{source}: fields 'points'/'weights': {exc}") from None
    metric = doc.get("metric")
    try:
        return VectorFamily(grid, vec[..., 0] + 1j * vec[..., 1], None if metric is None else np.asarray(metric, dtype=float))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{source}: {exc}") from None


def read_family(path) -> VectorFamily:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: invalid JSON ({exc.msg})") from None
    return family_from_dict(doc, str(path))


def _read_table(path, ncols: int):
    """Numeric rows plus ``# key: value`` metadata."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None
    meta, rows = {}, []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, value = body.split(":", 1)
                meta[key.strip()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != ncols:
            raise InputError(f"{path}: line {lineno}: expected {ncols} columns, got {len(parts)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise InputError(f"{path}: line {lineno}: non-numeric entry") from None
    if not rows:
        raise InputError(f"{path}: no data rows")
    return np.array(rows), meta


def read_frequency_profile(path) -> FrequencyProfile:
    rows, _ = _read_table(path, 3)
    try:
        return FrequencyProfile.on_grid(rows[:, 0], rows[:, 1] + 1j * rows[:, 2])
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def read_radial_profile(path) -> RadialProfile:
    rows, meta = _read_table(path, 3)
    try:
        n = int(meta.get("n", 1))
        return RadialProfile(rows[:, 0], rows[:, 1] + 1j * rows[:, 2], n)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def write_profile(grid, values, path, meta: dict | None = None) -> None:
    values = np.asarray(values, dtype=complex)
    out = [f"# {k}: {v}" for k, v in (meta or {}).items()]
    out += [f"{g:.17g} {v.real:.17g} {v.imag:.17g}" for g, v in zip(grid, values)]
    Path(path).write_text("\n".join(out) + "\n")


def read_spherical(path) -> SphericalCoefficients:
    rows, meta = _read_table(path, 5)
    if "a" not in meta:
        raise InputError(f"{path}: missing metadata line '# a: <scales>'")
    try:
        a = np.array([float(v) for v in meta["a"].split()])
        weights = None
        if "a_weights" in meta:
            weights = np.array([float(v) for v in meta["a_weights"].split()])
    except ValueError:
        raise InputError(f"{path}: metadata 'a' must be a list of numbers") from None
    idx = rows[:, :3]
    if np.any(idx != np.round(idx)):
        raise InputError(f"{path}: l, n and a_index must be integers")
    l, n, k = idx.astype(int).T
    if np.any(l < 0) or np.any(np.abs(n) > l) or np.any(k < 0) or np.any(k >= a.size):
        bad = int(np.flatnonzero((l < 0) | (np.abs(n) > l) | (k < 0) | (k >= a.size))[0])
        raise InputError(f"{path}: data row {bad + 1}: index out of range")
    L = int(l.max())
    c = np.zeros((L + 1, 2 * L + 1, a.size), dtype=complex)
    c[l, n + L, k] = rows[:, 3] + 1j * rows[:, 4]
    try:
        return SphericalCoefficients(a, c, weights)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def write_spherical(coeffs: SphericalCoefficients, path) -> None:
    L = coeffs.L
    out = ["# a: " + " ".join(f"{v:.17g}" for v in coeffs.a),
           "# a_weights: " + " ".join(f"{v:.17g}" for v in coeffs.weights)]
    for l in range(L + 1):
        for n in range(-l, l + 1):
            for k in range(coeffs.a.size):
                v = coeffs.coeffs[l, n + L, k]
                out.append(f"{l} {n} {k} {v.real:.17g} {v.imag:.17g}")
    Path(path).write_text("\n".join(out) + "\n")
