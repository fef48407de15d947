"""PSL(2,C) elements, their classification, and their action on horoballs.

Matrices are stored with four complex entries and compared modulo the
global sign.  Upper half-space points are pairs ``(z, t)`` with ``t > 0``;
the Fuchsian case is simply ``t = Im`` of the plane point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import MalformedMatrix, NotLoxodromic, SameIdealPoint

DET_TOL = 1e-10
TRACE_TOL = 1e-9
IDENTITY_TOL = 1e-8


def _canonical_sign(entries):
    for e in entries:
        if abs(e) > 1e-14:
            arg = cmath.phase(e)
            if not -math.pi / 2 < arg <= math.pi / 2:
                entries = tuple(-x for x in entries)
            break
    # adding 0j turns signed zeros into plain zeros
    return tuple(x + 0j for x in entries)


@dataclass(frozen=True)
class ProjectiveMatrix:
    """A determinant-one 2x2 complex matrix taken up to sign.

    The sign is fixed so that the first nonzero entry (row-major) has
    argument in (-pi/2, pi/2].
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        entries = tuple(complex(x) for x in (self.a, self.b, self.c, self.d))
        if not all(cmath.isfinite(x) for x in entries):
            raise MalformedMatrix(f"non-finite entry in {entries}")
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if abs(det - 1) > DET_TOL:
            raise MalformedMatrix(f"determinant {det} is not 1")
        entries = _canonical_sign(entries)
        for name, value in zip("abcd", entries):
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, m) -> ProjectiveMatrix:
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def normalized(cls, a, b, c, d) -> ProjectiveMatrix:
        """Scale an invertible matrix to determinant one."""
        det = complex(a) * d - complex(b) * c
        if abs(det) < 1e-300:
            raise MalformedMatrix("singular matrix")
        s = cmath.sqrt(det)
        return cls(a / s, b / s, c / s, d / s)

    @classmethod
    def rounded(cls, a, b, c, d, tol: float = 1e-9) -> ProjectiveMatrix:
        """Accept entries that were rounded for storage, keeping them as given.

        The determinant only has to be 1 up to ``tol`` relative to the
        squared entry size.
        """
        entries = tuple(complex(x) for x in (a, b, c, d))
        if not all(cmath.isfinite(x) for x in entries):
            raise MalformedMatrix(f"non-finite entry in {entries}")
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if abs(det - 1) > tol * max(1.0, max(abs(x) for x in entries) ** 2):
            raise MalformedMatrix(f"determinant {det} is not 1")
        return _trusted(*entries)

    @classmethod
    def identity(cls) -> ProjectiveMatrix:
        return cls(1, 0, 0, 1)

    @classmethod
    def diagonal(cls, lam) -> ProjectiveMatrix:
        return cls(lam, 0, 0, 1 / lam)

    @classmethod
    def translation(cls, t) -> ProjectiveMatrix:
        return cls(1, t, 0, 1)

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __matmul__(self, other: ProjectiveMatrix) -> ProjectiveMatrix:
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return _trusted(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> ProjectiveMatrix:
        return _trusted(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> ProjectiveMatrix:
        base = self if k >= 0 else self.inverse()
        out = ProjectiveMatrix.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def close_to(self, other: ProjectiveMatrix, tol: float = 1e-9) -> bool:
        x = np.array(self.entries())
        y = np.array(other.entries())
        return bool(min(np.max(np.abs(x - y)), np.max(np.abs(x + y))) <= tol)

    def distance_from_identity(self) -> float:
        x = np.array(self.entries())
        e = np.array([1, 0, 0, 1])
        return float(min(np.max(np.abs(x - e)), np.max(np.abs(x + e))))

    def act(self, z: complex) -> complex:
        """Action on the Riemann sphere (``math.inf`` stands for infinity)."""
        a, b, c, d = self.entries()
        if z == math.inf:
            return math.inf if abs(c) < 1e-15 else a / c
        den = c * z + d
        if abs(den) < 1e-15:
            return math.inf
        return (a * z + b) / den

    def act_upper(self, z: complex, t: float) -> tuple[complex, float]:
        """Action on a point (z, t) of upper half-space."""
        a, b, c, d = self.entries()
        w = c * z + d
        den = abs(w) ** 2 + abs(c) ** 2 * t * t
        z1 = ((a * z + b) * w.conjugate() + a * c.conjugate() * t * t) / den
        return z1, t / den


def _trusted(a, b, c, d) -> ProjectiveMatrix:
    # Products of determinant-one matrices: skip the determinant check,
    # which would drift past DET_TOL for long words with large entries.
    m = object.__new__(ProjectiveMatrix)
    entries = _canonical_sign((complex(a), complex(b), complex(c), complex(d)))
    for name, value in zip("abcd", entries):
        object.__setattr__(m, name, value)
    return m


class ComplexLength(NamedTuple):
    length: float
    rotation: float

    @property
    def value(self) -> complex:
        return complex(self.length, self.rotation)


class IsometryKind:
    name = "isometry"

    def __repr__(self):
        return f"{type(self).__name__}()"

    def __eq__(self, other):
        return type(self) is type(other) and vars(self) == vars(other)


class Identity(IsometryKind):
    name = "identity"


class Parabolic(IsometryKind):
    name = "parabolic"


class Elliptic(IsometryKind):
    name = "elliptic"

    def __init__(self, angle: float):
        self.angle = angle

    def __repr__(self):
        return f"Elliptic(angle={self.angle!r})"


class Loxodromic(IsometryKind):
    name = "loxodromic"

    def __init__(self, complex_length: ComplexLength):
        self.complex_length = complex_length

    def __repr__(self):
        return f"Loxodromic({self.complex_length!r})"


def _check(m: ProjectiveMatrix) -> None:
    if abs(m.det() - 1) > DET_TOL * max(1.0, max(abs(x) for x in m.entries()) ** 2):
        raise MalformedMatrix(f"determinant {m.det()} is not 1")


def classify(m: ProjectiveMatrix) -> IsometryKind:
    _check(m)
    tr = m.trace
    tr2 = tr * tr
    if abs(tr2 - 4) <= TRACE_TOL:
        if m.distance_from_identity() <= IDENTITY_TOL:
            return Identity()
        return Parabolic()
    if abs(tr2.imag) <= TRACE_TOL and -TRACE_TOL <= tr2.real < 4:
        half = min(1.0, abs(tr) / 2)
        return Elliptic(2 * math.acos(half))
    return Loxodromic(_complex_length_from_trace(tr))


def _normalize_angle(theta: float) -> float:
    theta = math.remainder(theta, 2 * math.pi)
    if theta <= -math.pi:
        theta += 2 * math.pi
    return theta


def _complex_length_from_trace(tr: complex) -> ComplexLength:
    root = cmath.sqrt(tr * tr - 4)
    lam = (tr + root) / 2
    if abs(lam) < 1:
        lam = (tr - root) / 2
    ell = 2 * cmath.log(lam)
    return ComplexLength(ell.real, _normalize_angle(ell.imag))


def complex_length(m: ProjectiveMatrix) -> ComplexLength:
    """Translation length and rotation of a loxodromic element.

    The value depends only on the trace up to sign, so it is a conjugacy
    invariant and agrees for ``m`` and its inverse.
    """
    kind = classify(m)
    if not isinstance(kind, Loxodromic):
        raise NotLoxodromic(f"{kind.name} element has no translation length")
    return kind.complex_length


def length_from_trace(tr: float) -> float:
    """Real translation length for a real trace with ``|tr| > 2``."""
    return 2 * math.acosh(abs(tr) / 2)


@dataclass(frozen=True)
class Horoball:
    """Horoball in upper half-space.

    For a ball at infinity ``diameter`` is the height of its bounding
    horizontal plane and ``center`` is ignored.
    """

    at_infinity: bool
    center: complex
    diameter: float

    def __post_init__(self):
        if not self.diameter > 0 or not math.isfinite(self.diameter):
            raise ValueError(f"horoball diameter must be positive, got {self.diameter}")
        object.__setattr__(self, "center", complex(self.center))

    @classmethod
    def at_height(cls, height: float) -> Horoball:
        return cls(True, 0j, height)

    @classmethod
    def ball(cls, center: complex, diameter: float) -> Horoball:
        return cls(False, center, diameter)


def apply_to_horoball(m: ProjectiveMatrix, h: Horoball) -> Horoball:
    _check(m)
    a, b, c, d = m.entries()
    scale = max(1.0, abs(a), abs(b), abs(c), abs(d))
    if h.at_infinity:
        if abs(c) <= 1e-14 * scale:
            return Horoball.at_height(h.diameter * abs(a) ** 2)
        return Horoball.ball(a / c, 1 / (abs(c) ** 2 * h.diameter))
    w = c * h.center + d
    if abs(w) <= 1e-14 * scale:
        return Horoball.at_height(1 / (abs(c) ** 2 * h.diameter))
    return Horoball.ball((a * h.center + b) / w, h.diameter / abs(w) ** 2)


def horoball_distance(h1: Horoball, h2: Horoball) -> float:
    """Signed hyperbolic distance; zero at tangency, negative on overlap."""
    if h1.at_infinity and h2.at_infinity:
        raise SameIdealPoint("both horoballs are centered at infinity")
    if h1.at_infinity:
        return math.log(h1.diameter / h2.diameter)
    if h2.at_infinity:
        return math.log(h2.diameter / h1.diameter)
    gap = abs(h1.center - h2.center) ** 2
    if gap == 0:
        raise SameIdealPoint("horoballs share an ideal point")
    return math.log(gap / (h1.diameter * h2.diameter))


def hyperbolic_distance(p: tuple[complex, float], q: tuple[complex, float]) -> float:
    """Distance between two points of upper half-space."""
    (z1, t1), (z2, t2) = p, q
    arg = 1 + (abs(z1 - z2) ** 2 + (t1 - t2) ** 2) / (2 * t1 * t2)
    return math.acosh(max(arg, 1.0))
