"""Marked Fuchsian groups for pants and genus-two surfaces.

Genus-two groups are glued from two one-holed tori ("handles") along the
separating curve ``gamma = [A1, B1]``.  The normal form puts the axis of
``gamma`` on the imaginary axis, translating upward, with the first handle
on one side and the second handle (rotated by ``J = [[0,-1],[1,0]]``) on
the other.  Twisting conjugates the second handle by a translation along
that axis, which commutes with ``gamma`` and so keeps the surface relator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import words as W
from .errors import (
    IncompatibleTraces,
    InvalidBoundaryData,
    MalformedMatrix,
    NotHyperbolic,
    NotSymmetricForm,
    NotTwistNormalized,
)
from .moebius import Parabolic, ProjectiveMatrix, classify

RELATOR_TOL = 1e-8


@dataclass(frozen=True)
class MarkedGroup:
    generators: tuple[ProjectiveMatrix, ...]
    labels: tuple[str, ...]
    peripheral: tuple[W.Word, ...] = ()
    relators: tuple[W.Word, ...] = ()
    signature: tuple[int, int] = (0, 3)
    # Order-two elliptic realizing the hyper-elliptic involution, if known.
    symmetry: ProjectiveMatrix | None = None
    # Genus-two normal form data: separating curve length and twist so far.
    curve_length: float | None = None
    twist: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "peripheral", tuple(tuple(w) for w in self.peripheral))
        object.__setattr__(self, "relators", tuple(tuple(w) for w in self.relators))
        object.__setattr__(self, "signature", tuple(self.signature))
        if len(self.labels) != len(self.generators):
            raise MalformedMatrix("one label per generator required")
        genus, punctures = self.signature
        if genus < 0 or punctures < 0 or 3 * genus + punctures - 3 < 0:
            raise NotHyperbolic(f"signature {self.signature} has negative complexity")
        for w in self.peripheral:
            if not isinstance(classify(self.evaluate(w)), Parabolic):
                raise MalformedMatrix(f"peripheral word {w} is not parabolic")
        for w in self.relators:
            if self.evaluate(w).distance_from_identity() > RELATOR_TOL:
                raise MalformedMatrix(f"relator {w} does not evaluate to the identity")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def evaluate(self, word) -> ProjectiveMatrix:
        return W.evaluate(self.generators, word)

    def trace(self, word) -> complex:
        return self.evaluate(word).trace

    def conjugated(self, m: ProjectiveMatrix) -> MarkedGroup:
        """The same marked group conjugated by ``m`` (g -> m g m^-1)."""
        mi = m.inverse()
        sym = None if self.symmetry is None else m @ self.symmetry @ mi
        return replace(
            self,
            generators=tuple(m @ g @ mi for g in self.generators),
            symmetry=sym,
            curve_length=None,
            twist=None,
        )


# --------------------------------------------------------------------------
# pants


def pants_group(cusp_case: bool, boundary_lengths=(0.0, 0.0, 0.0)) -> MarkedGroup:
    """Two-generator group of a pair of pants.

    Cusped: the rigid thrice-punctured sphere with ``A = [[1,2],[0,1]]`` and
    ``B = [[1,0],[-2,1]]``.  Otherwise ``A``, ``B`` and ``AB`` are hyperbolic
    with traces ``-2 cosh(l_i / 2)`` (before projectivizing), so the three
    boundary geodesics have the prescribed lengths.
    """
    lengths = tuple(float(x) for x in boundary_lengths)
    if len(lengths) != 3:
        raise InvalidBoundaryData("three boundary lengths required")
    if cusp_case:
        if any(x != 0 for x in lengths):
            raise InvalidBoundaryData("cusped pants take boundary lengths (0, 0, 0)")
        gens = (ProjectiveMatrix(1, 2, 0, 1), ProjectiveMatrix(1, 0, -2, 1))
        return MarkedGroup(gens, ("A", "B"), peripheral=((1,), (2,), (1, 2)), signature=(0, 3))
    if any(not (x > 0) for x in lengths):
        raise InvalidBoundaryData("geodesic boundary lengths must all be positive")
    s = lengths[0] / 2
    y = -2 * math.cosh(lengths[1] / 2)
    z = -2 * math.cosh(lengths[2] / 2)
    # A = -diag(e^s, e^-s) translates the imaginary axis upward by l_1.
    a = (-z - math.exp(-s) * y) / (2 * math.sinh(s))
    d = y - a
    bc = a * d - 1
    b = math.sqrt(abs(bc))
    c = bc / b
    A = ProjectiveMatrix(-math.exp(s), 0, 0, -math.exp(-s))
    B = ProjectiveMatrix(a, b, c, d)
    return MarkedGroup((A, B), ("A", "B"), signature=(0, 3))


# --------------------------------------------------------------------------
# genus two


def commutator_trace(x: float, y: float, z: float) -> float:
    """Trace of [A, B] for tr A = x, tr B = y, tr AB = z."""
    return x * x + y * y + z * z - x * y * z - 2


def handle_traces_for(curve_length: float, x: float | None = None, y: float | None = None):
    """A trace triple whose commutator has length ``curve_length``.

    With neither ``x`` nor ``y`` given the triple is symmetric (x = y = z).
    """
    target = -2 * math.cosh(curve_length / 2)
    if x is None and y is None:
        # 3x^2 - x^3 = target + 2, root above 3.
        from scipy.optimize import brentq

        f = lambda t: 3 * t * t - t ** 3 - (target + 2)
        t = brentq(f, 3.0, 10.0 + curve_length)
        return (t, t, t)
    x = float(x)
    y = float(y if y is not None else x)
    const = x * x + y * y - 2 - target
    disc = (x * y) ** 2 - 4 * const
    if disc < 0:
        raise IncompatibleTraces("no real z for these traces")
    return (x, y, (x * y + math.sqrt(disc)) / 2)


@dataclass(frozen=True)
class FenchelNielsenGenus2:
    """Handle trace triples, separating curve length, and twist distance."""

    handle_traces: tuple[tuple[float, float, float], tuple[float, float, float]]
    curve_length: float
    twist: float = 0.0

    def __post_init__(self):
        if not self.curve_length > 0:
            raise IncompatibleTraces("separating curve length must be positive")
        target = -2 * math.cosh(self.curve_length / 2)
        for triple in self.handle_traces:
            x, y, z = triple
            if not (x > 2 and y > 2 and z > 2):
                raise IncompatibleTraces(f"handle traces {triple} must exceed 2")
            if abs(commutator_trace(x, y, z) - target) > 1e-8:
                raise IncompatibleTraces(
                    f"handle traces {triple} give commutator trace "
                    f"{commutator_trace(x, y, z)}, need {target}"
                )

    @classmethod
    def symmetric(cls, curve_length: float, twist: float = 0.0) -> FenchelNielsenGenus2:
        t = handle_traces_for(curve_length)
        return cls((t, t), curve_length, twist)


J = ProjectiveMatrix(0, -1, 1, 0)

# Generator order A1, B1, A2, B2.
GENUS2_RELATOR = (1, 2, -1, -2, 3, 4, -3, -4)
GAMMA = (1, 2, -1, -2)

# Images of the generators under the hyper-elliptic involution.  It acts on
# each handle as its elliptic involution; on the second handle the
# conjugator is shifted by (A1 B1) so that a single elliptic realizes it.
_MU = {
    1: (-1,),
    2: (-2,),
    3: (-2, -1, 4, -3, -4, 1, 2),
    4: (-2, -1, 4, 3, -4, -3, -4, 1, 2),
}


def _handle(x: float, y: float, z: float):
    """Matrices (A, B) with the given traces and [A, B] = diag(m, 1/m), |m| > 1."""
    s = (z + math.sqrt(z * z - 4)) / 2
    A = np.array([[x, -1.0], [1.0, 0.0]])
    B = np.array([[0.0, s], [-1 / s, y]])
    K = A @ B @ np.linalg.inv(A) @ np.linalg.inv(B)
    vals, vecs = np.linalg.eig(K)
    vals, vecs = vals.real, vecs.real
    order = np.argsort(-np.abs(vals))
    P = vecs[:, order]
    if np.linalg.det(P) < 0:
        P[:, 1] *= -1
    P = P / math.sqrt(np.linalg.det(P))
    Pi = np.linalg.inv(P)
    return Pi @ A @ P, Pi @ B @ P


def _translation(t: float) -> ProjectiveMatrix:
    return ProjectiveMatrix.diagonal(math.exp(t / 2))


def genus2_from_fn(fn: FenchelNielsenGenus2) -> MarkedGroup:
    A1, B1 = _handle(*fn.handle_traces[0])
    A2, B2 = _handle(*fn.handle_traces[1])
    Jm = J.as_array()
    Ji = np.linalg.inv(Jm)
    A2, B2 = Jm @ A2 @ Ji, Jm @ B2 @ Ji
    a1, b1 = ProjectiveMatrix.from_array(A1), ProjectiveMatrix.from_array(B1)
    a2, b2 = ProjectiveMatrix.from_array(A2), ProjectiveMatrix.from_array(B2)
    # Elliptic involution of the first handle: E A E^-1 = A^-1, E B E^-1 = B^-1.
    E = A1 @ B1 - B1 @ A1
    e = ProjectiveMatrix.normalized(E[0, 0], E[0, 1], E[1, 0], E[1, 1])
    base = MarkedGroup(
        (a1, b1, a2, b2),
        ("A1", "B1", "A2", "B2"),
        relators=(GENUS2_RELATOR,),
        signature=(2, 0),
        symmetry=e,
        curve_length=fn.curve_length,
        twist=0.0,
    )
    _check_symmetry(base)
    return twist_along_curve(base, fn.twist) if fn.twist else base


def _check_symmetry(g: MarkedGroup) -> None:
    e = g.symmetry
    for k, image in _MU.items():
        lhs = e @ g.generators[k - 1] @ e.inverse()
        if not lhs.close_to(g.evaluate(image), 1e-7):
            raise NotSymmetricForm(f"involution does not map generator {k} as expected")


def _is_twist_normalized(g: MarkedGroup) -> bool:
    if g.signature != (2, 0) or g.curve_length is None or g.rank != 4:
        return False
    k = g.evaluate(GAMMA)
    scale = max(1.0, abs(k.a), abs(k.d))
    return abs(k.b) <= 1e-8 * scale and abs(k.c) <= 1e-8 * scale


def twist_along_curve(g: MarkedGroup, delta_t: float) -> MarkedGroup:
    """Cut along the separating curve, twist by ``delta_t``, and reglue."""
    if not _is_twist_normalized(g):
        raise NotTwistNormalized("group is not in genus-two normal form")
    if delta_t == 0:
        return g
    T = _translation(delta_t)
    Ti = T.inverse()
    a1, b1, a2, b2 = g.generators
    return replace(
        g,
        generators=(a1, b1, T @ a2 @ Ti, T @ b2 @ Ti),
        twist=(g.twist or 0.0) + delta_t,
    )


def hyperelliptic_action(g: MarkedGroup, word) -> W.Word:
    """Image of ``word`` under the hyper-elliptic involution.

    On the group side this is conjugation by ``g.symmetry``, so traces and
    complex lengths are preserved.
    """
    if g.symmetry is None or g.signature != (2, 0):
        raise NotSymmetricForm("hyper-elliptic action needs a genus-two normal form")
    out: list[int] = []
    for x in word:
        image = _MU[abs(x)]
        out.extend(image if x > 0 else W.inverse(image))
    return W.free_reduce(out)


def collar_condition(curve_length: float, n: float) -> bool:
    """True when a curve of this length has a collar wide enough that
    every closed geodesic shorter than ``n`` misses it."""
    if not curve_length > 0 or n < 0:
        raise ValueError("need curve_length > 0 and n >= 0")
    return 1 / math.tanh(curve_length / 2) > math.cosh(n / 4)


def euler_characteristic(signature) -> int:
    genus, punctures = signature
    return 2 - 2 * genus - punctures


def gauss_bonnet_area(signature) -> float:
    chi = euler_characteristic(signature)
    if chi >= 0:
        raise NotHyperbolic(f"signature {tuple(signature)} has chi = {chi} >= 0")
    return -2 * math.pi * chi
