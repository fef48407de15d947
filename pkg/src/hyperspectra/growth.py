"""Geodesic counting asymptotics.

Evaluates the logarithmic integral, the Margulis leading term, a
Pollicott–Sharp style lower bound ``li(e^L) - A e^{cL}`` and the length
beyond which that bound dominates ``e^L / L``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import DomainError, InsufficientData, SearchExhausted

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class CountingModel:
    """Error-term parameters of a lower bound for the counting function."""

    h: float = 1.0
    A: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("growth exponent h must be positive")
        if not self.A >= 0:
            raise ValueError("A must be non-negative")
        if not 0 <= self.c < 1:
            raise ValueError("c must lie in [0, 1)")


def _li_scaled(S: float) -> float:
    """``e^{-S} * li(e^S)`` computed in the variable s = log u."""
    if S == LOG2:
        return 0.0
    f = lambda s: math.exp(s - S) / s
    # Most of the mass sits within a few units of the upper end; splitting
    # there keeps quad's error estimate honest for large S.
    split = max(LOG2, S - 40.0)
    val = 0.0
    if split > LOG2:
        val += integrate.quad(f, LOG2, split, epsabs=0, epsrel=1e-13, limit=200)[0]
    val += integrate.quad(f, split, S, epsabs=0, epsrel=1e-13, limit=200)[0]
    return val


def logarithmic_integral(y: float) -> float:
    """The offset logarithmic integral, the integral of 1/log u from 2 to y.

    Accurate to about 1e-13 relative; above ``e^30`` or so this is better
    than any absolute bound float64 can express.
    """
    if not y >= 2:
        raise DomainError(f"li(y) needs y >= 2, got {y}")
    if y == 2:
        return 0.0
    S = math.log(y)
    return math.exp(S) * _li_scaled(S)


def li_exp(L: float) -> float:
    """``li(e^L)`` without forming ``e^L`` first."""
    if not L >= LOG2:
        raise DomainError(f"li(e^L) needs L >= log 2, got {L}")
    return math.exp(L) * _li_scaled(L)


def margulis_count(L: float, h: float) -> float:
    """Leading term ``e^{hL} / (hL)`` of the geodesic count."""
    if not (L > 0 and h > 0):
        raise ValueError("need L > 0 and h > 0")
    return math.exp(h * L) / (h * L)


def ps_lower_bound(L: float, m: CountingModel) -> float:
    if not L >= LOG2:
        raise DomainError(f"need L >= log 2, got {L}")
    return li_exp(L) - m.A * math.exp(m.c * L)


def calculus_difference(x: float, m: CountingModel) -> float:
    """``li(e^x) - A e^{cx} - e^x/x``; tends to infinity for every model."""
    return ps_lower_bound(x, m) - math.exp(x) / x


def crossover_length(m: CountingModel, *, step: float = 0.05, window: float = 20.0,
                     cap: float = 200.0, tol: float = 1e-6) -> float:
    """Smallest L0 (to ``tol``) after which the bound beats ``e^L/L``.

    Scans upward for a sign change of the difference, checks that it stays
    non-negative on unit samples of ``[L, L + window]``, and bisects the
    bracket.  Differences are compared after dividing by ``e^L`` so they
    stay finite all the way to ``cap``.
    """
    d = lambda x: _li_scaled(x) - m.A * math.exp((m.c - 1) * x) - 1 / x
    grid = np.arange(LOG2, cap + step, step)
    prev = grid[0]
    for x in grid[1:]:
        if d(x) >= 0 and d(prev) < 0:
            samples = np.arange(x, x + window + 1e-9, 1.0)
            if all(d(s) >= 0 for s in samples):
                lo, hi = float(prev), float(x)
                root = optimize.brentq(d, lo, hi, xtol=tol / 4, rtol=4 * np.finfo(float).eps)
                return float(root)
        prev = x
    if d(grid[0]) >= 0:
        return float(LOG2)
    raise SearchExhausted(f"no crossover found below L = {cap}")


def fit_growth_exponent(counts) -> float:
    """Least-squares slope of ``log(pi(L) * L)`` against ``L``."""
    data = np.asarray(counts, dtype=float)
    if data.ndim != 2 or len(data) < 5:
        raise InsufficientData("need at least five (L, count) samples")
    L, n = data[:, 0], data[:, 1]
    if np.any(np.diff(L) <= 0) or np.any(n < 1):
        raise InsufficientData("lengths must increase strictly and counts be at least 1")
    slope, _ = np.polyfit(L, np.log(n * L), 1)
    return float(slope)
