"""Gram matrices and their deviation from the identity."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass(frozen=True, eq=False)
class GramReport:
    kind: str
    matrix: np.ndarray
    labels: tuple[str, ...]
    N_used: int
    seconds: float
    t: float
    normalization: float
    refinement_delta: float | None = None
    parameters: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        matrix = np.atleast_2d(np.asarray(self.matrix, dtype=np.complex128))
        if matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {matrix.shape}")
        if len(self.labels) != matrix.shape[0]:
            raise ValueError(f"{len(self.labels)} labels for a {matrix.shape[0]}x{matrix.shape[0]} Gram")
        matrix = 0.5 * (matrix + matrix.conj().T)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def max_offdiag(self) -> float:
        if self.dimension == 1:
            return 0.0
        off = self.matrix - np.diag(np.diag(self.matrix))
        return float(np.abs(off).max())

    @property
    def max_diag_deviation(self) -> float:
        return float(np.abs(np.diag(self.matrix) - 1.0).max())

    @property
    def max_deviation(self) -> float:
        return float(np.abs(self.matrix - np.eye(self.dimension)).max())

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix).min())

    def is_identity(self, tolerance: float) -> bool:
        return self.max_deviation <= tolerance

    def as_json_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "labels": list(self.labels),
            "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in self.matrix],
            "max_offdiag": self.max_offdiag,
            "max_diag_deviation": self.max_diag_deviation,
            "min_eigenvalue": self.min_eigenvalue,
            "N": self.N_used,
            "seconds": self.seconds,
            "t": self.t,
            "normalization": self.normalization,
            "refinement_delta": self.refinement_delta,
            "parameters": dict(self.parameters),
        }


__all__ = ["GramReport"]
