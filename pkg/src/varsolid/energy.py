"""Energy per particle of the lattice-localized product state.

With one particle per site the expectation of H splits into the analytic
kinetic term of the exponential orbital and a shell sum of pair energies,

    u(lam, d) = Lambda lam^2 / 8 + (1/2) sum_n c_n E_pair(r_n),

where c_n is the coordination count of shell n and the 1/2 stops double
counting.  Everything is per particle; surface corrections of a finite body
are O(N^{-1/3}) and ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .lattice import LatticeShells
from .model import OrbitalParams, TwoYukawaParams, pair_energy
from .units import UnitSystem


@dataclass(frozen=True)
class EnergyBreakdown:
    """Kinetic, per-shell potential, and total energy per particle (epsilon)."""

    kinetic: float
    potential_shells: tuple[tuple[float, float], ...]  # (distance, contribution)
    potential_total: float
    total: float


class SameSiteW(NamedTuple):
    W: float
    ratio: float


def kinetic_per_particle(p: OrbitalParams, units: UnitSystem) -> float:
    """hbar^2 lam^2 / (8 mu) = Lambda lam^2 / 8 in epsilon units.

    For phi ~ e^{-lam r/2} the gradient is radial with |grad phi| =
    (lam/2) phi, so int |grad phi|^2 = lam^2/4 and T = (hbar^2/2mu)(lam^2/4).
    Requires the infinite-cutoff orbital: a finite cutoff introduces a
    derivative kink at r = a that this closed form does not include.
    """
    if not p.has_infinite_cutoff:
        raise ValueError("kinetic closed form requires an infinite orbital cutoff")
    return units.coupling * p.lam**2 / 8.0


def energy_per_particle(p: OrbitalParams, pot: TwoYukawaParams,
                        shells: LatticeShells, units: UnitSystem) -> EnergyBreakdown:
    """Average energy per particle for orbital p on the given shell structure."""
    if not shells.shells:
        raise ValueError("shell list is empty")
    kinetic = kinetic_per_particle(p, units)
    contributions = tuple((r, 0.5 * c * pair_energy(p, pot, r))
                          for r, c in shells.shells)
    potential_total = math.fsum(v for _, v in contributions)
    return EnergyBreakdown(kinetic=kinetic,
                           potential_shells=contributions,
                           potential_total=potential_total,
                           total=kinetic + potential_total)


def same_site_W(p: OrbitalParams, pot: TwoYukawaParams,
                shells: LatticeShells, units: UnitSystem) -> SameSiteW:
    """Double-occupancy penalty W = E_pair(0) and its size relative to binding.

    The ratio compares W against |potential energy per particle| (the
    interaction part alone, not the total): at the solid's optimum it is of
    order 1e7, which is what forbids multiply-occupied sites energetically.
    """
    w = pair_energy(p, pot, 0.0)
    potential = energy_per_particle(p, pot, shells, units).potential_total
    ratio = math.inf if potential == 0.0 else w / abs(potential)
    return SameSiteW(W=w, ratio=ratio)


def occupancy_penalty(w: float, occupancy: int) -> float:
    """Energy cost of stacking `occupancy` particles on one site: p(p-1)W/2."""
    if occupancy < 0:
        raise ValueError(f"occupancy must be >= 0, got {occupancy}")
    return occupancy * (occupancy - 1) / 2.0 * w
