"""Numerical configuration shared by the quadrature and search engines."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace


class NumericalError(RuntimeError):
    """Quadrature or search failed to reach the requested tolerance."""

    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_radius: float = 50.0
    radial_panels: int = 8
    angular_samples: int = 64
    max_refinements: int = 14
    normalizer: str = "canonical"

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, float) and not math.isfinite(v):
                raise ValueError(f"{f.name} must be finite")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_radius < 10:
            raise ValueError("max_radius must be at least 10")
        if self.angular_samples < 8:
            raise ValueError("angular_samples must be at least 8")
        if self.radial_panels < 1 or self.max_refinements < 1:
            raise ValueError("radial_panels and max_refinements must be positive")
        if self.normalizer not in ("canonical", "clamped"):
            raise ValueError(f"unknown normalizer {self.normalizer!r}")

    def with_(self, **kw) -> "QuadConfig":
        return replace(self, **kw)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "QuadConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown QuadConfig fields: {sorted(unknown)}")
        return cls(**data)


DEFAULT = QuadConfig()
