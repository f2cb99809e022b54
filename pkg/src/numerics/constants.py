"""Model constants and the report types returned by bound evaluators."""

import logging
import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

logger = logging.getLogger(__name__)


class Constants(BaseModel):
    """Infection probability and the large/small constants of the droplet bounds.

    The bounds only hold for "sufficiently large" B, C, L1..L6 and
    "sufficiently small" delta; the defaults are placeholders, and every
    evaluator reports which of its preconditions actually held.
    """

    model_config = ConfigDict(frozen=True)

    p: float = Field(0.1, gt=0.0, lt=1.0, description="Infection probability")
    B: float = Field(5.0, gt=0.0, description="Large constant B")
    C: float = Field(50.0, gt=0.0, description="Large constant C = C(B)")
    delta: float = Field(0.05, gt=0.0, lt=1.0, description="Small constant delta")
    L1: float = Field(1e3, ge=0.0, description="Large constant L1")
    L2: float = Field(1e4, ge=0.0, description="Large constant L2")
    L3: float = Field(1e5, ge=0.0, description="Large constant L3")
    L4: float = Field(1e6, ge=0.0, description="Large constant L4")
    L5: float = Field(1e7, ge=0.0, description="Large constant L5")
    L6: float = Field(1e8, ge=0.0, description="Large constant L6")

    @field_validator("p", "B", "C", "delta", "L1", "L2", "L3", "L4", "L5", "L6")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("Constants must be finite")
        return v

    @property
    def q(self) -> float:
        """-log(1 - p)."""
        return -math.log1p(-self.p)

    @property
    def large(self) -> tuple[float, ...]:
        return (self.L1, self.L2, self.L3, self.L4, self.L5, self.L6)

    def with_p(self, p: float) -> "Constants":
        return self.model_copy(update={"p": p})

    def ordering_violations(self) -> list[str]:
        """Which links of delta < 1 < B <= C <= L1 <= ... <= L6 fail.

        The ordering is advisory: tests deliberately use small constants,
        so a violation is logged rather than rejected.
        """
        chain = [("B", self.B), ("C", self.C)] + [
            (f"L{i}", value) for i, value in enumerate(self.large, start=1)
        ]
        problems = []
        if self.B <= 1.0:
            problems.append(f"B={self.B} is not > 1")
        for (left, lv), (right, rv) in zip(chain, chain[1:], strict=False):
            if lv > rv:
                problems.append(f"{left}={lv} > {right}={rv}")
        if problems:
            logger.warning(f"Constant ordering violated: {'; '.join(problems)}")
        return problems


class BoundReport(BaseModel):
    """A probability bound together with the conditions it was evaluated under.

    ``log_value`` is the natural logarithm of the bound; ``value`` is its
    exponential (infinite when the logarithm overflows).
    """

    formula: str = Field(..., description="Identifier of the evaluated bound")
    log_value: float = Field(..., description="Natural log of the bound")
    inputs: dict[str, Any] = Field(default_factory=dict)
    preconditions: dict[str, bool] = Field(default_factory=dict)
    branch: str | None = Field(None, description="Branch taken by a min/max bound")
    details: dict[str, float] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def value(self) -> float:
        if self.log_value > 700:
            return math.inf
        return math.exp(self.log_value)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def valid(self) -> bool:
        """All preconditions of the underlying inequality held."""
        return all(self.preconditions.values())

    @computed_field  # type: ignore[prop-decorator]
    @property
    def vacuous(self) -> bool:
        """The bound says nothing about a probability."""
        return not math.isfinite(self.log_value) or self.log_value >= 0.0


class InequalityCheck(BaseModel):
    """A deterministic numeric inequality lhs <= rhs and its preconditions."""

    name: str
    lhs: float
    rhs: float
    inputs: dict[str, Any] = Field(default_factory=dict)
    preconditions: dict[str, bool] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @computed_field  # type: ignore[prop-decorator]
    @property
    def valid(self) -> bool:
        return all(self.preconditions.values())
