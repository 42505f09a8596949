"""Named presets: the reference scenario, the four single-axis sweeps and the testable-range grid."""

from pydantic import BaseModel, ConfigDict

from ..analysis.sweeps import SweepSpec
from ..cooling.cavity import CavityParams
from ..core.constants import MBAR_TO_PA
from ..core.enums import GridScale, SweepAxis
from ..core.models import TWO_PI, CslParams, EFieldReference, Environment, Sphere, Trap
from ..core.scenario import ScenarioConfig
from ..optimizer.testable import OptimizeSpec
from ..utils.utils import canonical_json, make_grid

SWEEP_POINTS = 41


class RangePreset(BaseModel):
    """A testable-range grid: every pressure crossed with every internal temperature."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    pressures: list[float]
    T_int_values: list[float]
    template: OptimizeSpec


def reference_scenario() -> ScenarioConfig:
    """n0 = 50, R = 100 nm, P = 1e-12 mbar, f_m = 5 kHz, T_env = 4 K, T_int = 65 K, lambda = 1e-8 Hz."""
    return ScenarioConfig(
        sphere=Sphere(radius=100e-9, density=2300.0),
        environment=Environment(T_env=4.0, pressure=1e-12 * MBAR_TO_PA, T_int=65.0),
        trap=Trap(omega_m=TWO_PI * 5e3),
        csl=CslParams(lambda_csl=1e-8, r_c=100e-9),
        n0=50.0,
        t_evolve=1.0,
    )


def fig2() -> ScenarioConfig:
    return reference_scenario().replace(
        cooling=CavityParams(), efield_reference=EFieldReference.ion_trap()
    )


def _sweep(axis: SweepAxis, lo: float, hi: float) -> SweepSpec:
    return SweepSpec(
        axis=axis,
        lo=lo,
        hi=hi,
        points=SWEEP_POINTS,
        scale=GridScale.LOG,
        base_config=reference_scenario(),
    )


def fig3a() -> SweepSpec:
    return _sweep(SweepAxis.PRESSURE, 1e-14 * MBAR_TO_PA, 1e-6 * MBAR_TO_PA)


def fig3b() -> SweepSpec:
    return _sweep(SweepAxis.T_INT, 1.0, 300.0)


def fig3c() -> SweepSpec:
    return _sweep(SweepAxis.OMEGA_M, TWO_PI * 100.0, TWO_PI * 1e6)


def fig3d() -> SweepSpec:
    return _sweep(SweepAxis.RADIUS, 1e-9, 1e-5)


def fig4() -> RangePreset:
    pressures = make_grid(1e-13 * MBAR_TO_PA, 1e-9 * MBAR_TO_PA, 20, log=True)
    return RangePreset(
        pressures=pressures.tolist(),
        T_int_values=[20.0, 40.0, 60.0, 80.0],
        template=OptimizeSpec(
            pressure=float(pressures[0]),
            T_int=20.0,
            base_config=reference_scenario(),
        ),
    )


PRESETS = {
    "fig2": fig2,
    "fig3a": fig3a,
    "fig3b": fig3b,
    "fig3c": fig3c,
    "fig3d": fig3d,
    "fig4": fig4,
}

SWEEP_PRESETS = ("fig3a", "fig3b", "fig3c", "fig3d")


def get_preset(name: str) -> ScenarioConfig | SweepSpec | RangePreset:
    if name not in PRESETS:
        raise ValueError(f"Unknown preset '{name}', choose from {sorted(PRESETS)}")
    return PRESETS[name]()


def preset_json(name: str) -> str:
    """Canonical JSON of a preset (aliased keys, sorted, compact)."""
    return canonical_json(get_preset(name))
