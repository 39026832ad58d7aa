"""Matrix files and machine-readable run reports.

A matrix file is JSON with fields ``dim``, ``kind``, ``entries`` (a
row-major list of [re, im] pairs, dim^2 long) and a free-form ``meta``
map.  Floats are serialized as shortest-roundtrip decimals, so
load(save(x)) reproduces every entry bit-exactly.  The ``kind`` tag
(hermitian / projection / unitary / general) is re-validated on load at
the module tolerances; violations raise FormatError.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from typing import Any

import numpy as np

from .config import DEFAULT, Tolerances
from .core import HermitianOperator, OrthProjection, _op_norm, as_cmatrix
from .errors import FormatError

__all__ = ["MatrixFile", "RunReport", "save_matrix", "load_matrix", "file_digest"]

KINDS = ("hermitian", "projection", "unitary", "general")


@dataclasses.dataclass(frozen=True)
class MatrixFile:
    """A loaded matrix with its declared kind and metadata."""

    dim: int
    entries: np.ndarray
    kind: str
    meta: dict

    def as_hermitian(self, tol: Tolerances = DEFAULT) -> HermitianOperator:
        return HermitianOperator(self.entries, tol)

    def as_projection(self, tol: Tolerances = DEFAULT) -> OrthProjection:
        return OrthProjection(self.entries, tol)


def _validate_kind(m: np.ndarray, kind: str, tol: Tolerances) -> None:
    if kind == "hermitian":
        defect = float(np.max(np.abs(m - m.conj().T)))
        if defect > tol.sym_tol:
            raise FormatError(f"hermitian file has hermiticity defect {defect:.3e}")
    elif kind == "projection":
        if _op_norm(m - m.conj().T) > tol.proj_tol or _op_norm(m @ m - m) > tol.proj_tol:
            raise FormatError("projection file fails symmetry/idempotence at proj_tol")
    elif kind == "unitary":
        eye = np.eye(m.shape[0], dtype=np.complex128)
        if _op_norm(m.conj().T @ m - eye) > tol.unitary_tol:
            raise FormatError("unitary file fails U*U = I at unitary_tol")
    elif kind != "general":
        raise FormatError(f"unknown matrix kind {kind!r}")


def save_matrix(path, matrix, kind: str, meta: dict | None = None) -> None:
    """Write a matrix file; entries roundtrip bit-exactly."""
    m = as_cmatrix(matrix)
    if kind not in KINDS:
        raise FormatError(f"unknown matrix kind {kind!r}")
    doc = {
        "dim": m.shape[0],
        "kind": kind,
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
        "meta": dict(meta or {}),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def load_matrix(path, tol: Tolerances = DEFAULT) -> MatrixFile:
    """Read and re-validate a matrix file (FormatError on any defect)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON in {path}: {exc}") from exc
    try:
        dim = int(doc["dim"])
        kind = str(doc["kind"])
        raw = doc["entries"]
        meta = dict(doc.get("meta", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"matrix file {path} missing or mistyped field: {exc}") from exc
    if dim < 1:
        raise FormatError(f"dim must be >= 1, got {dim}")
    if not isinstance(raw, list) or len(raw) != dim * dim:
        raise FormatError(f"entries must hold dim^2 = {dim * dim} pairs, got {len(raw)}")
    try:
        flat = np.array([complex(re, im) for re, im in raw], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"entries must be [re, im] pairs: {exc}") from exc
    m = flat.reshape(dim, dim)
    if not np.all(np.isfinite(flat.real)) or not np.all(np.isfinite(flat.imag)):
        raise FormatError("matrix entries must be finite")
    _validate_kind(m, kind, tol)
    return MatrixFile(dim=dim, entries=m, kind=kind, meta=meta)


def file_digest(path) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


@dataclasses.dataclass
class RunReport:
    """Single-line JSON report emitted by every CLI invocation."""

    command: str
    inputs: list[str]
    outputs: dict[str, Any]
    status: str = "ok"
    elapsed_ms: int = 0

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "status": self.status,
            "elapsed_ms": self.elapsed_ms,
        }
        # allow_nan=False enforces the every-scalar-finite invariant
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)
