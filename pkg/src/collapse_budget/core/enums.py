"""Enums for scenario configuration and analysis."""

from enum import Enum


class GasDiffusionConvention(str, Enum):
    """
    Prefactor of the gas momentum-diffusion rate.
    MAIN_TEXT uses 1/(2*hbar*omega_m); SUPPLEMENTARY uses 1/(hbar*omega_m).
    """

    MAIN_TEXT = "main_text"
    SUPPLEMENTARY = "supplementary"


class SweepAxis(str, Enum):
    PRESSURE = "pressure"
    T_INT = "T_int"
    OMEGA_M = "omega_m"
    RADIUS = "radius"
    LAMBDA_CSL = "lambda_csl"
    T_EVOLVE = "t_evolve"


class GridScale(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class IntegratorMethod(str, Enum):
    """Integration scheme for the second-moment equations."""

    ADAPTIVE = "adaptive"  # embedded RK45 with error control
    FIXED = "fixed"  # classical RK4 at a fixed step


class Hypothesis(str, Enum):
    CSL = "csl"
    CQM = "cqm"
