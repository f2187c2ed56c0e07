"""Shared numerical tolerances and run configuration.

All thresholds used by the checkers live here so that a run can be
reproduced from (seed, config) alone.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

# Singular values below RANK_RTOL * max(singular values) are treated as zero.
# Deterministic tie-breaking for all rank / kernel decisions.
RANK_RTOL = 1e-10

# Absolute floor below which singular values are zero regardless of scale;
# catches maps that are zero up to accumulated rounding.
ZERO_SV_ATOL = 1e-12

# Relative slack applied to the probe position when evaluating the right-hand
# side of a step-function inequality.  Forgives pure floating-point ties
# between breakpoints computed through different eigensolves.
TIE_RTOL = 1e-9

# Absolute slack on step-function *values* in inequality checks.
VALUE_ATOL = 1e-9

# Residual tolerance for structural identities (complex property c∘c = 0,
# chain-map commutation, homotopy relations).
STRUCTURE_ATOL = 1e-10

# Adjoint defect tolerance checked on basis vectors at construction time.
ADJOINT_ATOL = 1e-12

# Absolute quadrature target for all torsion/zeta integrals.
QUAD_ATOL = 1e-10

DEFAULT_SEED = 20240801

SEED_ENV_VAR = "L2TOR_SEED"


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    """Resolve the master seed, honouring the L2TOR_SEED variable."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return default
    return int(raw)


@dataclass
class RunConfig:
    """Configuration for a CLI run.

    tolerances maps check names to strictly positive overrides; anything
    missing falls back to the module-level defaults above.
    """

    seed: int = field(default_factory=seed_from_env)
    tolerances: dict[str, float] = field(default_factory=dict)
    output: str | None = None
    output_format: str = "json"

    def __post_init__(self) -> None:
        for name, tol in self.tolerances.items():
            if not tol > 0:
                raise ValueError(f"tolerance {name!r} must be positive, got {tol}")

    def tol(self, name: str, default: float) -> float:
        return self.tolerances.get(name, default)
