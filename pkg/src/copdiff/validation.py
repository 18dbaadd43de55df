from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ValidationReport:
    """Named non-negative residuals; a check passes when each is <= tolerance."""

    residuals: dict[str, float]
    tolerance: float
    locations: dict[str, tuple] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r <= self.tolerance for r in self.residuals.values())

    @property
    def worst(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def failures(self) -> dict[str, float]:
        return {k: r for k, r in self.residuals.items() if r > self.tolerance}

    def summary(self) -> str:
        parts = ", ".join(f"{k}={r:.3g}" for k, r in self.residuals.items())
        return f"{'pass' if self.passed else 'FAIL'} ({parts}; tol={self.tolerance:g})"

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "residuals": dict(self.residuals),
            "locations": {k: list(v) for k, v in self.locations.items()},
        }
