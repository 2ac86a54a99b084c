from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

OUTPUT_ENV = "KIPPENHAHN_OUTPUT_DIR"


def _default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "."))


@dataclass(frozen=True)
class RunConfig:
    """Numerical knobs shared by the library entry points and the CLI.

    ``tol_cluster=None`` means ``1e-7 * (||H1|| + ||H2||)`` for the matrix at hand.
    """

    grid_size: int = 720
    tol_cluster: float | None = None
    tol_orth: float = 1e-8
    tol_order: float = 1e-6
    tol_coeff: float = 1e-8
    tol_boundary: float = 1e-6
    budget: int = 256
    output_dir: Path = field(default_factory=_default_output_dir)
    seed: int = 0

    def __post_init__(self):
        if self.grid_size < 8:
            raise ValueError("grid_size must be >= 8")
        for name in ("tol_orth", "tol_order", "tol_coeff", "tol_boundary"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.tol_cluster is not None and not self.tol_cluster > 0:
            raise ValueError("tol_cluster must be positive")
        if self.budget < 8:
            raise ValueError("budget must be >= 8")
