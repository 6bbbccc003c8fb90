"""FCC neighbor-shell enumeration and finite spherical clusters.

The FCC lattice with nearest-neighbor distance d is generated by the
primitive vectors (d/sqrt(2))*(0,1,1), (d/sqrt(2))*(1,0,1), (d/sqrt(2))*(1,1,0),
so every site is

    x(n1,n2,n3) = (d/sqrt(2)) * (n2+n3, n1+n3, n1+n2),   n_i integer,

and the squared distance is (d^2/2) * m with integer
m = (n2+n3)^2 + (n1+n3)^2 + (n1+n2)^2.  Shell grouping is therefore exact:
sites are binned by the integer m, never by floating-point distance
comparisons.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np


class LatticeKind(enum.Enum):
    FCC = "fcc"


@dataclass(frozen=True)
class LatticeShells:
    """Ordered neighbor shells (distance, coordination count) of one site."""

    kind: LatticeKind
    spacing_d: float
    shells: tuple[tuple[float, int], ...]

    def distances(self) -> np.ndarray:
        return np.array([s[0] for s in self.shells])

    def counts(self) -> np.ndarray:
        return np.array([s[1] for s in self.shells])

    def scaled(self, new_d: float) -> "LatticeShells":
        """Same shell structure at a different lattice spacing.

        Coordination counts are spacing-independent; distances rescale
        linearly.  Used by the optimizer to avoid re-enumerating while d moves.
        """
        if new_d <= 0.0:
            raise ValueError(f"spacing must be positive, got {new_d}")
        factor = new_d / self.spacing_d
        return replace(self, spacing_d=new_d,
                       shells=tuple((r * factor, c) for r, c in self.shells))


@dataclass(frozen=True)
class Cluster:
    """Finite piece of lattice: N sites nearest the origin, centroid at zero."""

    kind: LatticeKind
    spacing_d: float
    sites: np.ndarray  # shape (N, 3)
    count_N: int


def _fcc_integer_m(n1: np.ndarray, n2: np.ndarray, n3: np.ndarray) -> np.ndarray:
    return (n2 + n3) ** 2 + (n1 + n3) ** 2 + (n1 + n2) ** 2


def enumerate_shells(kind: LatticeKind, d: float, max_distance: float) -> LatticeShells:
    """All distinct inter-site distances <= max_distance, with multiplicities.

    Brute-force enumeration over a padded integer box.  A site at distance r
    has m = 2 (r/d)^2 <= m_max; each of n1, n2, n3 is bounded by
    sqrt(6)/2 * r/d < sqrt(2) * r/d, so the box below is safely padded.
    """
    if kind is not LatticeKind.FCC:
        raise ValueError(f"unsupported lattice kind: {kind}")
    if d <= 0.0:
        raise ValueError(f"spacing must be positive, got {d}")
    if max_distance < d:
        raise ValueError(f"max_distance {max_distance} is below one spacing {d}")

    m_max = math.floor(2.0 * (max_distance / d) ** 2 + 1e-9)
    nmax = math.ceil(math.sqrt(2.0) * max_distance / d) + 1
    rng = np.arange(-nmax, nmax + 1)
    n1, n2, n3 = np.meshgrid(rng, rng, rng, indexing="ij")
    m = _fcc_integer_m(n1, n2, n3).ravel()
    m = m[(m > 0) & (m <= m_max)]
    counts = np.bincount(m, minlength=m_max + 1)
    shells = tuple((d * math.sqrt(mm / 2.0), int(counts[mm]))
                   for mm in range(1, m_max + 1) if counts[mm] > 0)
    return LatticeShells(kind=kind, spacing_d=d, shells=shells)


def build_cluster(kind: LatticeKind, d: float, N: int) -> Cluster:
    """The N lattice sites closest to the origin, rigidly re-centered.

    Ordering is by squared distance, with exact lexicographic tie-breaking
    on the integer coordinates (which order identically to the Cartesian
    ones, so the result is platform-independent).
    """
    if kind is not LatticeKind.FCC:
        raise ValueError(f"unsupported lattice kind: {kind}")
    if d <= 0.0:
        raise ValueError(f"spacing must be positive, got {d}")
    if N < 1:
        raise ValueError(f"cluster size must be >= 1, got {N}")

    # FCC site density is sqrt(2)/d^3; start from the radius enclosing N
    # sites on average and grow until enough candidates are inside.
    radius = d * ((3.0 * N / (4.0 * math.pi * math.sqrt(2.0))) ** (1.0 / 3.0) + 2.0)
    while True:
        nmax = math.ceil(math.sqrt(2.0) * radius / d) + 1
        rng = np.arange(-nmax, nmax + 1)
        n1, n2, n3 = np.meshgrid(rng, rng, rng, indexing="ij")
        cx = (n2 + n3).ravel()
        cy = (n1 + n3).ravel()
        cz = (n1 + n2).ravel()
        m = cx * cx + cy * cy + cz * cz
        keep = m <= math.floor(2.0 * (radius / d) ** 2)
        if int(np.count_nonzero(keep)) >= N:
            break
        radius *= 1.3

    order = sorted(zip(m[keep], cx[keep], cy[keep], cz[keep]))
    chosen = np.array([(x, y, z) for _, x, y, z in order[:N]], dtype=float)
    sites = chosen * (d / math.sqrt(2.0))
    sites -= sites.mean(axis=0)
    return Cluster(kind=kind, spacing_d=d, sites=sites, count_N=N)
