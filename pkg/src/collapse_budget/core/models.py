"""Domain types: the levitated sphere, its environment, the trap and the CSL parameters.

All models are frozen. Python code builds them by field name, JSON uses the
unit-suffixed aliases (``radius_m``, ``pressure_pa`` ...). Each model also
accepts a few alternative suffixes (``pressure_mbar``, ``omega_m_hz``,
``gas_mass_amu``) that are converted to SI on construction.
"""

import math
from typing import Any, ClassVar

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from ..utils.utils import convert_unit_suffixes
from .constants import (
    BB_RESPONSE_IM_CALIBRATED,
    CONST,
    H2_MASS,
    ION_REF_MASS,
    ION_REF_OMEGA,
    ION_REF_RATE,
    MBAR_TO_PA,
)

TWO_PI = 2.0 * math.pi


def solid_sphere_volume(radius: float) -> float:
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    return 4.0 / 3.0 * math.pi * radius**3


def solid_sphere_mass(radius: float, density: float) -> float:
    if density <= 0:
        raise ValueError(f"density must be positive, got {density}")
    return solid_sphere_volume(radius) * density


class PhysicalModel(BaseModel):
    """
    Base for the frozen domain types.

    Subclasses list accepted alternative keys in `unit_suffixes` as
    {alternative_key: (canonical_alias, factor)}.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    unit_suffixes: ClassVar[dict[str, tuple[str, float]]] = {}

    @model_validator(mode="before")
    @classmethod
    def _convert_unit_suffixes(cls, data: Any) -> Any:
        if not isinstance(data, dict) or not cls.unit_suffixes:
            return data
        for source_key, (target_alias, _) in cls.unit_suffixes.items():
            if source_key not in data:
                continue
            for name, field in cls.model_fields.items():
                if field.alias == target_alias and name in data:
                    raise ValueError(
                        f"Both '{source_key}' and '{name}' given; supply only one"
                    )
        return convert_unit_suffixes(data, cls.unit_suffixes)


class Sphere(PhysicalModel):
    """The levitated nanosphere. Mass and volume are derived from radius and density."""

    radius: float = Field(1.0e-7, alias="radius_m", gt=0)
    density: float = Field(2300.0, alias="density_kg_m3", gt=0)
    eps1: float = 2.1
    eps2: float = Field(1.0e-8, ge=0)
    bb_response_im: float = Field(BB_RESPONSE_IM_CALIBRATED, ge=0)
    emissivity: float = Field(0.1, ge=0, le=1)
    charge: float = Field(CONST.e, alias="charge_c")

    @property
    def volume(self) -> float:
        return solid_sphere_volume(self.radius)

    @property
    def mass(self) -> float:
        return solid_sphere_mass(self.radius, self.density)


class Environment(PhysicalModel):
    T_env: float = Field(4.0, alias="T_env_K", ge=0)
    pressure: float = Field(1.0e-10, alias="pressure_pa", ge=0)
    gas_mass: float = Field(H2_MASS, alias="gas_mass_kg", gt=0)
    T_int: float = Field(65.0, alias="T_int_K", ge=0)

    unit_suffixes: ClassVar[dict[str, tuple[str, float]]] = {
        "pressure_mbar": ("pressure_pa", MBAR_TO_PA),
        "gas_mass_amu": ("gas_mass_kg", CONST.m_amu),
    }


class Trap(PhysicalModel):
    """Paul trap, reduced to its secular angular frequency."""

    omega_m: float = Field(TWO_PI * 5.0e3, alias="omega_m_rad_s", gt=0)

    unit_suffixes: ClassVar[dict[str, tuple[str, float]]] = {
        "omega_m_hz": ("omega_m_rad_s", TWO_PI),
    }


class CslParams(PhysicalModel):
    # lambda_csl is a rate in 1/s; the _hz alias is never multiplied by 2*pi
    lambda_csl: float = Field(1.0e-8, alias="lambda_csl_hz", ge=0)
    r_c: float = Field(1.0e-7, alias="r_c_m", gt=0)


class EFieldReference(PhysicalModel):
    """
    A measured electric-field heating rate for a reference particle,
    translated to the sphere by charge, mass and frequency scaling.
    """

    rate: float = Field(ION_REF_RATE, alias="rate_phonons_s", gt=0)
    charge: float = Field(CONST.e, alias="charge_c", gt=0)
    mass: float = Field(ION_REF_MASS, alias="mass_kg", gt=0)
    omega: float = Field(ION_REF_OMEGA, alias="omega_rad_s", gt=0)

    unit_suffixes: ClassVar[dict[str, tuple[str, float]]] = {
        "mass_amu": ("mass_kg", CONST.m_amu),
        "omega_hz": ("omega_rad_s", TWO_PI),
    }

    @classmethod
    def ion_trap(cls) -> "EFieldReference":
        """Singly charged 88Sr+ ion heating at ~10 phonons/s at 2*pi*1 MHz."""
        return cls()


class NoiseBudget(PhysicalModel):
    """
    Per-source momentum diffusion (phonons/s) and damping (1/s).
    Totals are derived from the components and never stored independently.
    """

    D_gas: float = Field(0.0, ge=0)
    D_bb: float = Field(0.0, ge=0)
    D_csl: float = Field(0.0, ge=0)
    D_efield: float = Field(0.0, ge=0)
    D_pos: float = Field(0.0, ge=0)
    gamma_gas: float = Field(0.0, ge=0)
    gamma_bb_e: float = Field(0.0, ge=0)
    gamma_bb_a: float = Field(0.0, ge=0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def Gamma_total(self) -> float:
        return (self.gamma_gas + self.gamma_bb_e + self.gamma_bb_a) / 4.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def D_diff_total(self) -> float:
        return self.D_gas + self.D_bb + self.D_csl + self.D_efield

    def with_csl(self, D_csl: float) -> "NoiseBudget":
        """Copy of this budget with only the CSL diffusion replaced."""
        if D_csl < 0:
            raise ValueError(f"D_csl must be non-negative, got {D_csl}")
        return self.model_copy(update={"D_csl": D_csl})
