"""Natural-unit system and lab-unit conversions.

All internal computation uses the natural units of the pair potential:
length sigma, energy epsilon, mass mu (the particle mass).  In these units
the only trace of hbar is the dimensionless coupling

    Lambda = hbar^2 / (mu sigma^2 epsilon_J),

which multiplies every kinetic term.  SI constants appear exclusively here,
at the boundary; everything downstream works with pure numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# CODATA 2018 / exact SI-2019 values.
HBAR_SI = 1.054571817e-34  # J s
KB_SI = 1.380649e-23  # J/K (exact)
AMU_SI = 1.66053906660e-27  # kg
AVOGADRO = 6.02214076e23  # 1/mol (exact)
CAL_TO_J = 4.184  # thermochemical calorie (exact)

KRYPTON_SIGMA_M = 3.6e-10
KRYPTON_EPSILON_K = 170.0
KRYPTON_MASS_U = 83.798  # standard atomic weight


@dataclass(frozen=True)
class UnitSystem:
    """Length/energy/mass scales plus the derived kinetic coupling.

    ``coupling`` is computed in ``__post_init__`` from the other fields and
    must never be supplied by hand.
    """

    sigma_m: float
    epsilon_K: float
    mass_u: float
    hbar_SI: float = HBAR_SI
    kB_SI: float = KB_SI
    amu_SI: float = AMU_SI
    avogadro: float = AVOGADRO
    coupling: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("sigma_m", "epsilon_K", "mass_u", "hbar_SI", "kB_SI",
                     "amu_SI", "avogadro"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        object.__setattr__(self, "coupling", self.hbar_SI**2 / (
            self.mass_u * self.amu_SI * self.sigma_m**2 * self.epsilon_J))

    @property
    def epsilon_J(self) -> float:
        """Well depth in joules."""
        return self.kB_SI * self.epsilon_K

    @property
    def mass_kg(self) -> float:
        return self.mass_u * self.amu_SI

    @property
    def sigma_angstrom(self) -> float:
        return self.sigma_m * 1e10

    def energy_to_cal_per_mole(self, u: float) -> float:
        """Per-particle energy in epsilon units -> cal/mole."""
        return u * self.epsilon_J * self.avogadro / CAL_TO_J

    def cal_per_mole_to_energy(self, u_cal: float) -> float:
        return u_cal * CAL_TO_J / (self.epsilon_J * self.avogadro)

    def pressure_to_kbar(self, p: float) -> float:
        """Pressure in epsilon/sigma^3 units -> kbar (1 kbar = 1e8 Pa)."""
        return p * self.epsilon_J / self.sigma_m**3 / 1e8

    def kbar_to_pressure(self, p_kbar: float) -> float:
        return p_kbar * 1e8 * self.sigma_m**3 / self.epsilon_J


def make_krypton_units() -> UnitSystem:
    """Unit system for solid Krypton: sigma = 3.6 A, epsilon = 170 K.

    The mass is the modern standard atomic weight, 83.798 u.  The coupling
    comes out near 2.6e-4, i.e. kinetic energy is a small perturbation on
    the potential landscape, which is what makes the lattice-localized
    product state competitive in the first place.
    """
    return UnitSystem(sigma_m=KRYPTON_SIGMA_M,
                      epsilon_K=KRYPTON_EPSILON_K,
                      mass_u=KRYPTON_MASS_U)
