"""
The full scenario configuration: one sphere in one trap and environment,
the CSL parameters under test and the evolution settings.
"""

import math
from typing import Any, TypeVar

from pydantic import Field, model_validator

from ..cooling.cavity import CavityParams
from ..utils.utils import canonical_digest, canonical_json
from .budget import assemble_budget
from .enums import GasDiffusionConvention, SweepAxis
from .models import (
    CslParams,
    EFieldReference,
    Environment,
    NoiseBudget,
    PhysicalModel,
    Sphere,
    Trap,
)

_M = TypeVar("_M", bound=PhysicalModel)

# sweep axis -> (sub-model attribute or None for the scenario itself, field)
_AXIS_FIELDS: dict[SweepAxis, tuple[str | None, str]] = {
    SweepAxis.PRESSURE: ("environment", "pressure"),
    SweepAxis.T_INT: ("environment", "T_int"),
    SweepAxis.OMEGA_M: ("trap", "omega_m"),
    SweepAxis.RADIUS: ("sphere", "radius"),
    SweepAxis.LAMBDA_CSL: ("csl", "lambda_csl"),
    SweepAxis.T_EVOLVE: (None, "t_evolve"),
}


def replace_fields(model: _M, **changes: Any) -> _M:
    """Validated copy of a frozen model with some fields replaced."""
    data = model.model_dump()
    data.update(changes)
    return type(model).model_validate(data)


class ScenarioConfig(PhysicalModel):
    sphere: Sphere = Sphere()
    environment: Environment = Environment()
    trap: Trap = Trap()
    csl: CslParams = CslParams()
    cooling: CavityParams | None = None
    efield_reference: EFieldReference | None = None
    n0: float = Field(50.0, ge=0)
    t_evolve: float = Field(1.0, alias="t_evolve_s", gt=0)
    seed: int = Field(0, ge=0)
    gas_diffusion_convention: GasDiffusionConvention = GasDiffusionConvention.MAIN_TEXT

    @model_validator(mode="after")
    def validate_cooling_frequency(self) -> "ScenarioConfig":
        """The cooling stage releases the sphere into this scenario's trap."""
        if self.cooling is not None and self.cooling.omega_s is not None:
            if not math.isclose(self.cooling.omega_s, self.trap.omega_m, rel_tol=1e-9):
                raise ValueError(
                    f"cooling.omega_s ({self.cooling.omega_s}) must equal "
                    f"trap.omega_m ({self.trap.omega_m})"
                )
        return self

    def budget(self, lambda_csl: float | None = None) -> NoiseBudget:
        """Noise budget at the configured lambda_csl, or at an override."""
        csl = self.csl
        if lambda_csl is not None:
            csl = replace_fields(csl, lambda_csl=lambda_csl)
        return assemble_budget(
            self.sphere,
            self.environment,
            self.trap,
            csl,
            self.efield_reference,
            self.gas_diffusion_convention,
        )

    def budget_pair(self) -> tuple[NoiseBudget, NoiseBudget]:
        """(with collapse, without collapse) budgets."""
        return self.budget(), self.budget(lambda_csl=0.0)

    def with_axis(self, axis: SweepAxis, value: float) -> "ScenarioConfig":
        """Copy of this scenario with one sweep axis set to `value` (SI units)."""
        axis = SweepAxis(axis)
        owner, name = _AXIS_FIELDS[axis]
        if owner is None:
            return self.replace(**{name: value})
        changes = {owner: replace_fields(getattr(self, owner), **{name: value})}
        # the cooling stage releases into the same trap
        if axis == SweepAxis.OMEGA_M and self.cooling is not None:
            if self.cooling.omega_s is not None:
                changes["cooling"] = replace_fields(self.cooling, omega_s=value)
        return self.replace(**changes)

    def axis_value(self, axis: SweepAxis) -> float:
        owner, name = _AXIS_FIELDS[SweepAxis(axis)]
        return getattr(self if owner is None else getattr(self, owner), name)

    def replace(self, **changes: Any) -> "ScenarioConfig":
        data = {name: getattr(self, name) for name in type(self).model_fields}
        data.update(changes)
        return type(self).model_validate(data)

    def canonical_json(self) -> str:
        return canonical_json(self)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON, the configuration identity used in run manifests."""
        return canonical_digest(self)
