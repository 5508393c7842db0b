"""File formats: samples CSV, model JSON, singular-value CSV and sweep CSV.

All floating-point text is written with 17 significant digits so values
round-trip exactly; identical inputs therefore produce byte-identical files.
Complex matrix entries are stored as ``[re, im]`` pairs in row-major nested
arrays.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .exceptions import DataError
from .paramfit import SweepResult
from .sampling import SampleSet
from .systems import DampingParams, FirstOrderSystem, SecondOrderSystem

SAMPLES_HEADER = ["s_re", "s_im", "h_re", "h_im"]
SV_HEADER = ["index", "sigma_rel"]
SWEEP_HEADER = ["alpha", "beta", "J", "status"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def save_samples_csv(path, data: SampleSet) -> None:
    """Write samples as ``s_re,s_im,h_re,h_im`` rows at full precision."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SAMPLES_HEADER)
        for p, v in zip(data.points, data.values):
            writer.writerow([_fmt(p.real), _fmt(p.imag), _fmt(v.real), _fmt(v.imag)])


def load_samples_csv(path) -> SampleSet:
    path = Path(path)
    if not path.exists():
        raise DataError(f"samples file not found: {path}")
    points: list[complex] = []
    values: list[complex] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != SAMPLES_HEADER:
            raise DataError(f"bad samples header in {path}: expected {','.join(SAMPLES_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise DataError(f"{path}:{lineno}: expected 4 columns, got {len(row)}")
            try:
                s_re, s_im, h_re, h_im = (float(x) for x in row)
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
            points.append(complex(s_re, s_im))
            values.append(complex(h_re, h_im))
    return SampleSet(np.array(points, dtype=complex), np.array(values, dtype=complex))


def _matrix_to_pairs(A: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(A)]


def _pairs_to_matrix(obj, name: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError):
        raise DataError(f"field {name} is not a numeric nested array") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise DataError(f"field {name} must be a 2-D array of [re, im] pairs")
    return arr[:, :, 0] + 1j * arr[:, :, 1]


def save_model_json(path, system: SecondOrderSystem | FirstOrderSystem) -> None:
    """Serialize a realization; second-order models record alpha/beta when present."""
    if isinstance(system, SecondOrderSystem):
        doc = {
            "kind": "so",
            "order": system.order,
            "M": _matrix_to_pairs(system.M),
            "D": _matrix_to_pairs(system.D),
            "K": _matrix_to_pairs(system.K),
            "B": _matrix_to_pairs(system.B),
            "C": _matrix_to_pairs(system.C),
        }
        if system.rayleigh is not None:
            doc["alpha"] = system.rayleigh.alpha
            doc["beta"] = system.rayleigh.beta
    elif isinstance(system, FirstOrderSystem):
        doc = {
            "kind": "fo",
            "order": system.order,
            "E": _matrix_to_pairs(system.E),
            "A": _matrix_to_pairs(system.A),
            "B": _matrix_to_pairs(system.B),
            "C": _matrix_to_pairs(system.C),
        }
    else:
        raise DataError(f"cannot serialize object of type {type(system).__name__}")
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_model_json(path) -> SecondOrderSystem | FirstOrderSystem:
    path = Path(path)
    if not path.exists():
        raise DataError(f"model file not found: {path}")
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON in {path}: {exc}") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DataError(f"{path}: model JSON needs a 'kind' field")
    kind = doc["kind"]
    if kind == "so":
        rayleigh = None
        if "alpha" in doc or "beta" in doc:
            try:
                rayleigh = DampingParams(float(doc["alpha"]), float(doc["beta"]))
            except (KeyError, TypeError, ValueError):
                raise DataError(f"{path}: alpha and beta must both be numeric") from None
        return SecondOrderSystem(
            M=_pairs_to_matrix(doc.get("M"), "M"),
            D=_pairs_to_matrix(doc.get("D"), "D"),
            K=_pairs_to_matrix(doc.get("K"), "K"),
            B=_pairs_to_matrix(doc.get("B"), "B"),
            C=_pairs_to_matrix(doc.get("C"), "C"),
            rayleigh=rayleigh,
        )
    if kind == "fo":
        return FirstOrderSystem(
            E=_pairs_to_matrix(doc.get("E"), "E"),
            A=_pairs_to_matrix(doc.get("A"), "A"),
            B=_pairs_to_matrix(doc.get("B"), "B"),
            C=_pairs_to_matrix(doc.get("C"), "C"),
        )
    raise DataError(f"{path}: unknown model kind {kind!r}")


def save_singular_values_csv(path, sigmas) -> None:
    """Write relative singular values, descending, 1-indexed."""
    sigmas = np.atleast_1d(np.asarray(sigmas, dtype=float))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SV_HEADER)
        for k, value in enumerate(sigmas, start=1):
            writer.writerow([k, _fmt(value)])


def save_sweep_csv(path, result: SweepResult) -> None:
    """Write the sweep surface row-major as ``alpha,beta,J,status``."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_HEADER)
        for cell in result.surface:
            writer.writerow([_fmt(cell.alpha), _fmt(cell.beta), _fmt(cell.objective), cell.status])
