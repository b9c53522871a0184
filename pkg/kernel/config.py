"""
Runtime limits for evaluation and analysis.
"""

import os
from dataclasses import dataclass, field, replace
from typing import Optional

SUBST_BUDGET_ENV = "TERMLINT_MAX_SUBST_BYTES"


@dataclass(frozen=True)
class Fuel:
    """Bounds for bottom-up evaluation of possibly diverging programs."""

    max_iterations: int = 10_000
    max_atoms: int = 1_000_000
    max_term_depth: int = 32

    def __post_init__(self):
        for name in ("max_iterations", "max_atoms", "max_term_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class AnalysisConfig:
    """
    Analysis settings.

    Attributes:
        strict: Reject invalid input instead of flagging it
        k: Largest k for k-safety
        max_subst_bytes: Size budget for instantiated heads along active paths
        stable_model_atom_cap: Largest ground atom count for brute-force stable models
        grounding_cap: Largest number of ground rule instances
        fuel: Evaluation bounds
    """

    strict: bool = False
    k: int = 1
    max_subst_bytes: int = 65536
    stable_model_atom_cap: int = 20
    grounding_cap: int = 100_000
    fuel: Fuel = field(default_factory=Fuel)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.max_subst_bytes < 1:
            raise ValueError("max_subst_bytes must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "AnalysisConfig":
        """
        Build a config, reading the substitution budget from the environment.

        Explicit keyword overrides win over the environment.

        Raises:
            ValueError: the environment value is not a positive integer
        """
        raw: Optional[str] = os.getenv(SUBST_BUDGET_ENV)
        if raw is not None and "max_subst_bytes" not in overrides:
            try:
                budget = int(raw)
            except ValueError:
                raise ValueError(f"{SUBST_BUDGET_ENV} must be an integer, got {raw!r}")
            if budget < 1:
                raise ValueError(f"{SUBST_BUDGET_ENV} must be positive, got {budget}")
            overrides["max_subst_bytes"] = budget
        return cls(**overrides)

    def with_k(self, k: int) -> "AnalysisConfig":
        return replace(self, k=k)
