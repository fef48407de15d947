"""Dehn filling estimates from normalized slope lengths.

For long slopes the core geodesic of a filled cusp has length about
``2 pi / L^2`` and the volume drops by about ``pi^2 / L^2`` per cusp, where
``L`` is the normalized length of the slope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateLattice, UnsortedInput

# Volume of the smallest hyperbolic 3-orbifold (five digits only).
VOL_MIN_ORBIFOLD = 0.03905
DEFAULT_MARGIN = 10.0
SQRT_2PI = math.sqrt(2 * math.pi)


@dataclass(frozen=True)
class CuspLattice:
    """Translations of a rank-two cusp seen at height 1."""

    t1: complex
    t2: complex

    def __post_init__(self):
        object.__setattr__(self, "t1", complex(self.t1))
        object.__setattr__(self, "t2", complex(self.t2))
        if not self.area > 0:
            raise DegenerateLattice(f"translations {self.t1}, {self.t2} are dependent over R")

    @property
    def area(self) -> float:
        return abs((self.t1.conjugate() * self.t2).imag)

    def scaled(self, lam: complex) -> CuspLattice:
        return CuspLattice(lam * self.t1, lam * self.t2)

    def rebased(self, a: int, b: int, c: int, d: int) -> CuspLattice:
        """Basis ``(a t1 + b t2, c t1 + d t2)`` for an integer matrix of determinant +-1."""
        if abs(a * d - b * c) != 1:
            raise DegenerateLattice("change of basis must be unimodular")
        return CuspLattice(a * self.t1 + b * self.t2, c * self.t1 + d * self.t2)


@dataclass(frozen=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0) or math.gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not a primitive slope")

    def translation(self, c: CuspLattice) -> complex:
        return self.p * c.t1 + self.q * c.t2


def normalized_length(s: Slope, c: CuspLattice) -> float:
    return abs(s.translation(c)) / math.sqrt(c.area)


def core_length_estimate(lhat: float) -> tuple[float, float]:
    """``(2 pi / L^2, L^-4)``: the estimate and the order of its error term."""
    if not lhat > 0:
        raise ValueError("normalized length must be positive")
    # (sqrt(2 pi) / L)^2 rather than 2 pi / L^2: equal, but exact at L = sqrt(2 pi)
    return (SQRT_2PI / lhat) ** 2, lhat ** -4


def volume_drop_estimate(lhats) -> float:
    lhats = list(lhats)
    if any(not x > 0 for x in lhats):
        raise ValueError("normalized lengths must be positive")
    return math.pi ** 2 * sum(x ** -2 for x in lhats)


@dataclass(frozen=True)
class DifferenceReport:
    holds: bool
    V: float
    margin: float
    ratios: tuple[float, float]
    core_lengths: tuple[float, float, float]
    chain: tuple[float, float, float]
    chain_holds: bool


def sufficiently_different(lhats, vol_m: float, margin: float = DEFAULT_MARGIN) -> DifferenceReport:
    """Whether three normalized lengths are separated by factors of ``V``.

    ``lhats`` must be sorted descending.  With ``V = vol_m / 0.03905`` the
    test is ``L1^2 >= margin V L2^2`` and ``L2^2 >= margin V L3^2``.  The
    report also carries the predicted core lengths ``l_i`` and the chain
    ``(l3, V l2, V^2 l1)``, which should be strictly decreasing.
    """
    lhats = tuple(float(x) for x in lhats)
    if len(lhats) != 3:
        raise ValueError("exactly three normalized lengths expected")
    if any(a < b for a, b in zip(lhats, lhats[1:])):
        raise UnsortedInput("normalized lengths must be sorted in descending order")
    if not vol_m > 0 or not margin >= 1:
        raise ValueError("need vol_m > 0 and margin >= 1")
    V = vol_m / VOL_MIN_ORBIFOLD
    l1, l2, l3 = lhats
    r1, r2 = l1 ** 2 / (V * l2 ** 2), l2 ** 2 / (V * l3 ** 2)
    cores = tuple(core_length_estimate(x)[0] for x in lhats)
    chain = (cores[2], V * cores[1], V ** 2 * cores[0])
    return DifferenceReport(
        holds=r1 >= margin and r2 >= margin,
        V=V,
        margin=margin,
        ratios=(r1, r2),
        core_lengths=cores,
        chain=chain,
        chain_holds=chain[0] > chain[1] > chain[2],
    )
