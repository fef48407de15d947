"""Horoball diagrams seen from a cusp.

A diagram is normalized so that the chosen cusp sits at infinity with its
horoball at height 1.  Every cusp of the group gets a horoball of the same
size, as large as possible without overlaps; the diagram lists the shadows
of all the other horoballs, one per orbit of the cusp's translation lattice.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from . import words as W
from .errors import (
    BudgetExhausted,
    DegenerateLattice,
    NotParabolic,
    PossiblyIncompleteDiagram,
)
from .moebius import Horoball, Parabolic, ProjectiveMatrix, apply_to_horoball, classify
from .surfaces import MarkedGroup

FULL_TOL = 1e-6
TANGENT_TOL = 1e-6
SYMMETRY_TOL = 1e-5


# --------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class CuspNormalization:
    """Translations of the cusp stabilizer and the conjugator that put the
    cusp at infinity (``g -> conjugator @ g @ conjugator^-1``)."""

    peripheral_translations: tuple[complex, ...]
    conjugator: ProjectiveMatrix = field(default_factory=ProjectiveMatrix.identity)

    def __post_init__(self):
        ts = tuple(complex(t) for t in self.peripheral_translations)
        object.__setattr__(self, "peripheral_translations", ts)
        if not 1 <= len(ts) <= 2 or any(abs(t) < 1e-12 for t in ts):
            raise DegenerateLattice("need one or two nonzero translations")
        if len(ts) == 2 and abs((ts[1] / ts[0]).imag) < 1e-9:
            raise DegenerateLattice("rank-two translations must be independent over R")

    @property
    def rank(self) -> int:
        return len(self.peripheral_translations)

    def coordinates(self, z) -> np.ndarray:
        """Real coordinates of z in the lattice basis (rank 1: along t, across t)."""
        z = np.asarray(z, dtype=complex)
        t = self.peripheral_translations
        if self.rank == 1:
            w = z / t[0]
            return np.stack([w.real, w.imag], axis=-1)
        m = np.array([[t[0].real, t[1].real], [t[0].imag, t[1].imag]])
        return np.linalg.solve(m, np.stack([z.real, z.imag]).reshape(2, -1)).T.reshape(z.shape + (2,))

    def reduce(self, z: complex) -> tuple[complex, tuple[int, ...]]:
        """Representative of z in the fundamental strip/parallelogram and the
        lattice shift ``k`` with ``z = rep + sum k_i t_i``."""
        xy = self.coordinates(z)
        ks = [math.floor(xy[0] + 1e-9)]
        if self.rank == 2:
            ks.append(math.floor(xy[1] + 1e-9))
        rep = complex(z) - sum(k * t for k, t in zip(ks, self.peripheral_translations))
        return rep, tuple(ks)

    def vectors(self, radius: int = 1):
        """Lattice vectors with coefficients in [-radius, radius]."""
        t = self.peripheral_translations
        if self.rank == 1:
            return [i * t[0] for i in range(-radius, radius + 1)]
        return [i * t[0] + j * t[1] for i in range(-radius, radius + 1) for j in range(-radius, radius + 1)]

    def contains(self, v: complex, tol: float = 1e-7) -> bool:
        xy = self.coordinates(v)
        if self.rank == 1:
            return abs(xy[1]) <= tol and abs(xy[0] - round(xy[0])) <= tol
        return bool(np.all(np.abs(xy - np.round(xy)) <= tol))


@dataclass(frozen=True)
class DiagramBall:
    center: complex
    diameter: float
    witness: W.Word = ()
    cusp: int = 0


@dataclass(frozen=True)
class HoroballDiagram:
    normalization: CuspNormalization
    balls: tuple[DiagramBall, ...]
    diameter_floor: float
    complete: bool = True

    def full_sized(self) -> list[int]:
        return [i for i, b in enumerate(self.balls) if abs(b.diameter - 1) <= FULL_TOL]

    def validate(self) -> None:
        """Check floor, size and disjointness of the listed balls."""
        for b in self.balls:
            if b.diameter < self.diameter_floor - 1e-12 or b.diameter > 1 + 1e-8:
                raise ValueError(f"ball diameter {b.diameter} outside [floor, 1]")
        if not self.balls:
            return
        c = np.array([b.center for b in self.balls])
        d = np.array([b.diameter for b in self.balls])
        for v in self.normalization.vectors(1):
            gap = np.abs(c[:, None] - (c[None, :] + v)) ** 2
            prod = d[:, None] * d[None, :]
            mask = gap > 1e-18
            if np.any(gap[mask] < prod[mask] * math.exp(-1e-8)):
                raise ValueError("two horoballs of the diagram overlap")


@dataclass(frozen=True)
class DistinguishedLine:
    """A periodic row of pairwise tangent full-sized horoballs.

    ``members`` are ball indices in order along ``direction`` starting at
    ``basepoint``; ``period`` is the lattice vector translating the row to
    itself, and ``slope`` that vector's lattice coordinates.
    """

    basepoint: complex
    direction: complex
    members: tuple[int, ...]
    period: complex
    slope: tuple[int, int]

    @property
    def slope_value(self) -> float:
        p, q = self.slope
        return math.inf if p == 0 else q / p


# --------------------------------------------------------------------------
# normalizing cusps


def _parabolic(g: MarkedGroup, word) -> ProjectiveMatrix:
    m = g.evaluate(word)
    if not isinstance(classify(m), Parabolic):
        raise NotParabolic(f"cusp word {tuple(word)} is not parabolic")
    return m


def _cusp_frame(m: ProjectiveMatrix) -> tuple[ProjectiveMatrix, complex]:
    """(C, t) with C(inf) the fixed point of m and C^-1 m C = z + t."""
    a, b, c, d = m.entries()
    if abs(c) < 1e-12:
        C = ProjectiveMatrix.identity()
    else:
        p = (a - d) / (2 * c)
        C = ProjectiveMatrix(p, -1, 1, 0)
    n = C.inverse() @ m @ C
    t = n.b / n.a  # n = +-[[1, t], [0, 1]]
    return C, t


def _scale(s: float) -> ProjectiveMatrix:
    r = math.sqrt(s)
    return ProjectiveMatrix(r, 0, 0, 1 / r)


def _orbit_balls(letters, seeds, lattice: CuspNormalization, cusp_word, floor, budget, prune):
    """BFS over horoball images, reduced modulo the lattice at infinity."""
    found: dict = {}
    order = []
    queue = deque()
    steps = 0
    truncated = False

    def visit(ball: Horoball, word, cusp):
        if ball.at_infinity or ball.diameter < prune:
            return
        rep, ks = lattice.reduce(ball.center)
        # No two horoballs share an ideal point, so the center alone is the
        # key; this also merges a cusp passed in under a second name.
        key = (round(rep.real * 1e7), round(rep.imag * 1e7))
        if key in found:
            return
        shift = _shift_word([-k for k in ks], cusp_word)
        found[key] = DiagramBall(rep, ball.diameter, W.multiply(shift, word), cusp)
        order.append(key)
        queue.append((Horoball.ball(rep, ball.diameter), found[key].witness, cusp))

    for ball, word, cusp in seeds:
        if ball.at_infinity:
            queue.append((ball, word, cusp))
        else:
            visit(ball, word, cusp)
    while queue and not truncated:
        ball, word, cusp = queue.popleft()
        for m, w in letters:
            # A ball stands for its whole lattice orbit, so every translate
            # whose image can still be large enough must be tried.
            for v, k_word in _useful_translates(m, ball, lattice, cusp_word, prune):
                steps += 1
                if steps > budget:
                    truncated = True
                    break
                moved = Horoball.ball(ball.center + v, ball.diameter) if not ball.at_infinity else ball
                visit(apply_to_horoball(m, moved), W.multiply(w, k_word, word), cusp)
            if truncated:
                break
    balls = [found[k] for k in order if found[k].diameter >= floor]
    return balls, truncated


def _shift_word(ks, cusp_word):
    out = ()
    for k, w in zip(ks, cusp_word):
        out = W.multiply(w * k if k > 0 else W.inverse(w) * (-k), out)
    return out


def _useful_translates(m: ProjectiveMatrix, ball: Horoball, lattice: CuspNormalization,
                       cusp_word, prune):
    """Lattice vectors v such that m(ball + v) may have diameter >= prune."""
    if ball.at_infinity or abs(m.c) < 1e-12:
        return [(0j, ())]
    # diameter of the image is D / |c|^2 / |x + v + d/c|^2
    reach = math.sqrt(ball.diameter / prune) / abs(m.c)
    target = -m.d / m.c - ball.center
    lo_hi = []
    t = lattice.peripheral_translations
    if lattice.rank == 1:
        mid = (target / t[0]).real
        span = reach / abs(t[0])
        ranges = [range(math.floor(mid - span), math.ceil(mid + span) + 1)]
    else:
        xy = lattice.coordinates(target)
        # generous box: reach measured against the shorter lattice height
        area = abs((t[1] * t[0].conjugate()).imag)
        hx, hy = area / abs(t[1]), area / abs(t[0])
        ranges = [range(math.floor(xy[0] - reach / hx), math.ceil(xy[0] + reach / hx) + 1),
                  range(math.floor(xy[1] - reach / hy), math.ceil(xy[1] + reach / hy) + 1)]
    out = []
    for ks in (((i,) for i in ranges[0]) if lattice.rank == 1 else
               ((i, j) for i in ranges[0] for j in ranges[1])):
        v = sum(k * tt for k, tt in zip(ks, t))
        if abs(target - v) <= reach * (1 + 1e-9):
            out.append((v, _shift_word(ks, cusp_word)))
    return out


def _letters(g: MarkedGroup, conj: ProjectiveMatrix):
    ci = conj.inverse()
    out = []
    for k, m in enumerate(g.generators, start=1):
        mm = conj @ m @ ci
        out += [(mm, (k,)), (mm.inverse(), (-k,))]
    return out


def build_horoball_diagram(
    g: MarkedGroup,
    cusp_word,
    diameter_floor: float,
    budget: int = 200_000,
    *,
    cusp_words=None,
    allow_incomplete: bool = False,
) -> HoroballDiagram:
    """Horoball diagram of ``g`` from the cusp fixed by ``cusp_word``.

    ``cusp_word`` may be one word (rank-one cusp) or a pair of words for a
    rank-two cusp.  ``cusp_words`` lists one peripheral word per cusp of
    the quotient (default: ``g.peripheral``); all cusps receive equal,
    maximal horoballs.  The search only continues through balls of
    diameter at least ``diameter_floor / 4``.
    """
    if not 0 < diameter_floor < 1:
        raise ValueError("diameter_floor must lie in (0, 1)")
    words0 = [tuple(cusp_word)] if cusp_word and isinstance(cusp_word[0], int) else [tuple(w) for w in cusp_word]
    cusp_words = [tuple(w) for w in (cusp_words if cusp_words is not None else g.peripheral)]
    if words0[0] not in cusp_words:
        cusp_words = [words0[0]] + cusp_words
    frames = [_cusp_frame(_parabolic(g, w)) for w in cusp_words]
    for w in words0:
        _parabolic(g, w)

    # Horocycle of length one about each cusp, seen in each cusp's frame,
    # then the largest common rescaling that keeps all balls disjoint.
    def seeds_in(frame_conj):
        out = []
        for j, (C, t) in enumerate(frames):
            ball = apply_to_horoball(frame_conj @ C, Horoball.at_height(abs(t)))
            out.append((ball, (), j))
        return out

    closest = math.inf
    for i, (C, t) in enumerate(frames):
        conj = C.inverse()
        lattice = CuspNormalization((t,))
        seeds = seeds_in(conj)
        h = abs(t)
        balls, _ = _orbit_balls(_letters(g, conj), seeds, lattice, [cusp_words[i]],
                                h * 1e-2, budget, h * 1e-2)
        biggest = max((b.diameter for b in balls), default=0.0)
        if biggest > 0:
            closest = min(closest, math.log(h / biggest))
    if not math.isfinite(closest):
        raise BudgetExhausted("found no horoballs to size the cusps against")
    grow = math.exp(closest / 2)  # horocycle length after rescaling

    C0, t0 = frames[cusp_words.index(words0[0])]
    conj = _scale(grow / abs(t0)) @ C0.inverse()
    translations = [t0 * grow / abs(t0)]
    if len(words0) == 2:
        m2 = conj @ g.evaluate(words0[1]) @ conj.inverse()
        translations.append(m2.b / m2.a)
    lattice = CuspNormalization(tuple(translations), conj)
    seeds = []
    for j, (C, t) in enumerate(frames):
        seeds.append((apply_to_horoball(conj @ C, Horoball.at_height(abs(t) / grow)), (), j))
    balls, truncated = _orbit_balls(_letters(g, conj), seeds, lattice, words0,
                                    diameter_floor, budget, diameter_floor / 4)
    if truncated and not allow_incomplete:
        raise BudgetExhausted(f"horoball search exceeded {budget} steps")
    balls.sort(key=lambda b: (-round(b.diameter, 9), round(b.center.real, 9), round(b.center.imag, 9)))
    return HoroballDiagram(lattice, tuple(balls), diameter_floor, complete=not truncated)


# --------------------------------------------------------------------------
# lines, tangency, isolation, symmetry


def _tangent(c1, d1, c2, d2) -> bool:
    return abs(abs(c1 - c2) ** 2 - d1 * d2) <= TANGENT_TOL


def _full_translates(d: HoroballDiagram, reach: int = 2):
    """(index, position) for full-sized balls and their nearby lattice translates."""
    out = []
    for i in d.full_sized():
        for v in d.normalization.vectors(reach):
            out.append((i, d.balls[i].center + v))
    return out


def _lattice_slope(lat: CuspNormalization, v: complex) -> tuple[int, int]:
    xy = lat.coordinates(v)
    if lat.rank == 1:
        return (int(round(xy[0])), 0)
    p, q = int(round(xy[0])), int(round(xy[1]))
    g = math.gcd(p, q) or 1
    return (p // g, q // g)


def _full_at(d: HoroballDiagram, full, pos: complex):
    """Index of a full-sized ball centered at ``pos`` modulo the lattice."""
    for j in full:
        if d.normalization.contains(d.balls[j].center - pos, tol=1e-6):
            return j
    return None


def find_distinguished_lines(d: HoroballDiagram, max_period: int = 12) -> list[DistinguishedLine]:
    """Periodic rows of tangent full-sized balls, one per lattice orbit."""
    full = d.full_sized()
    lat = d.normalization
    lines, seen = [], set()
    pts = _full_translates(d, reach=2)
    for i in full:
        c = d.balls[i].center
        for _, p in pts:
            if abs(abs(p - c) - 1) > FULL_TOL:
                continue
            u = (p - c) / abs(p - c)
            if u.real < -1e-9 or (abs(u.real) <= 1e-9 and u.imag < 0):
                continue  # each row is walked in one direction only
            members, period = [i], None
            for step in range(1, max_period + 1):
                pos = c + step * u
                if lat.contains(pos - c, tol=1e-6):
                    period = step * u
                    break
                j = _full_at(d, full, pos)
                if j is None:
                    break
                members.append(j)
            if period is None:
                continue
            key = (frozenset(members), round(u.real, 6), round(u.imag, 6))
            if key in seen:
                continue
            seen.add(key)
            start = min(members)
            base = d.balls[start].center
            line = DistinguishedLine(base, u, (), period, _lattice_slope(lat, period))
            pos = _line_positions(d, DistinguishedLine(base, u, tuple(members), period, line.slope))
            ordered = tuple(j for _, j, _ in pos) if pos else tuple(members)
            lines.append(DistinguishedLine(base, u, ordered, period, line.slope))
    lines.sort(key=lambda l: (l.slope, l.members))
    return lines


def _line_positions(d: HoroballDiagram, line: DistinguishedLine):
    """Positions of the members' translates on one period of the line."""
    lat = d.normalization
    span = abs(line.period)
    out = []
    for j in line.members:
        c = d.balls[j].center
        best = None
        for v in lat.vectors(3):
            q = c + v
            rel = (q - line.basepoint) / line.direction
            if abs(rel.imag) <= 1e-6 and -1e-6 <= rel.real < span - 1e-6:
                best = (rel.real, q)
                break
        if best is None:
            return None
        out.append((best[0], j, best[1]))
    out.sort()
    return out


def check_pairwise_tangent(d: HoroballDiagram, line: DistinguishedLine) -> bool:
    pos = _line_positions(d, line)
    if not pos:
        return False
    for _, j, _ in pos:
        if abs(d.balls[j].diameter - 1) > FULL_TOL:
            return False
    ring = pos + [(pos[0][0] + abs(line.period), pos[0][1], pos[0][2] + line.period)]
    for (s1, j1, q1), (s2, j2, q2) in zip(ring, ring[1:]):
        if abs((s2 - s1) - 1) > FULL_TOL:
            return False
        if not _tangent(q1, d.balls[j1].diameter, q2, d.balls[j2].diameter):
            return False
    return True


def _side(line: DistinguishedLine, z: complex) -> int:
    s = (np.conj(line.direction) * (z - line.basepoint)).imag
    return 0 if abs(s) <= 1e-6 else (1 if s > 0 else -1)


def check_one_sided_isolation(d: HoroballDiagram, line: DistinguishedLine, side: int) -> bool:
    """True when no off-line full-sized ball on ``side`` touches the line."""
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    if not d.complete:
        raise PossiblyIncompleteDiagram("diagram was truncated by its budget")
    pos = _line_positions(d, line)
    if pos is None:
        return False
    others = _full_translates(d, reach=3)
    for _, j, q in pos:
        for k, p in others:
            if _side(line, p) != side:
                continue
            if _tangent(q, d.balls[j].diameter, p, d.balls[k].diameter):
                return False
    return True


def _rotation_lattice_ok(lat: CuspNormalization, w: complex) -> bool:
    return all(lat.contains(w * t) for t in lat.peripheral_translations)


def check_rotational_symmetry(d: HoroballDiagram, order: int) -> bool:
    """Is the diagram invariant under a rotation of the given order?

    Candidate centers are found exhaustively: a rotation must send the
    first ball of the largest tier onto some ball of that tier, which fixes
    the center up to finitely many lattice choices.
    """
    if order not in (2, 3, 4, 6):
        raise ValueError("rotation order must be 2, 3, 4 or 6")
    if not d.complete:
        raise PossiblyIncompleteDiagram("diagram was truncated by its budget")
    if not d.balls:
        return True
    lat = d.normalization
    w = complex(math.cos(2 * math.pi / order), math.sin(2 * math.pi / order))
    if not _rotation_lattice_ok(lat, w):
        return False
    top = max(b.diameter for b in d.balls)
    tier = [b for b in d.balls if abs(b.diameter - top) <= SYMMETRY_TOL]
    c1 = tier[0].center
    centers = np.array([b.center for b in d.balls])
    diams = np.array([b.diameter for b in d.balls])
    for b in tier:
        for v in lat.vectors(3):
            p = (b.center + v - w * c1) / (1 - w)
            if _maps_to_itself(lat, centers, diams, p, w):
                return True
    return False


def _maps_to_itself(lat, centers, diams, p, w) -> bool:
    images = p + w * (centers - p)
    for z, dm in zip(images, diams):
        rep, _ = lat.reduce(z)
        ok = False
        for v in lat.vectors(1):
            near = np.abs(centers - (rep + v)) <= SYMMETRY_TOL
            if np.any(near & (np.abs(diams - dm) <= SYMMETRY_TOL)):
                ok = True
                break
        if not ok:
            return False
    return True


# --------------------------------------------------------------------------
# the pants picture


def pants_voronoi_constants() -> dict:
    """Constants of the cusp cell for the thrice-punctured sphere.

    Configuration: horoball at infinity at height 1, full-sized balls at the
    integers, translation 2.  Everything below is computed from that
    configuration rather than typed in.
    """
    spacing = 1.0  # consecutive full-sized balls on the line
    period = 2.0
    d_inf = lambda x, y: -math.log(y)
    d_ball = lambda x, y, c: math.log(((x - c) ** 2 + y * y) / y)

    # trivalent vertex above the midpoint between two full-sized balls
    x_mid = spacing / 2
    height = optimize.brentq(lambda y: d_inf(x_mid, y) - d_ball(x_mid, y, 0.0), 0.1, 0.999999,
                             xtol=1e-15)
    max_distance = d_inf(x_mid, height)

    # the cell of the cusp: above the bisectors |z - n| = 1, one period wide
    def boundary(x):
        u = abs(x - round(x / spacing) * spacing)
        return math.sqrt(1 - u * u)

    cell_area = integrate.quad(lambda x: 1 / boundary(x), 0, period, points=[0.5, 1.0, 1.5],
                               epsabs=1e-13)[0]
    cusp_area = integrate.quad(lambda y: period / y ** 2, 1, np.inf, epsabs=1e-13)[0]
    doubled = 2 * max_distance
    min_radius = 0.5 * math.exp(-doubled)
    center_clearance = math.sqrt(2 * min_radius - (spacing / 2) ** 2)
    return {
        "maxDistance": max_distance,
        "vertexHeight": height,
        "cellArea": cell_area,
        "cuspArea": cusp_area,
        "density": cusp_area / cell_area,
        "doubledPathBound": doubled,
        "minRadius": min_radius,
        "centerClearance": center_clearance,
        "clearance": center_clearance - min_radius,
    }


def horocycle_shortcut(geodesic_arc_length: float) -> float:
    """Length of the horocyclic arc homotopic to a geodesic arc through the cusp."""
    if geodesic_arc_length < 0:
        raise ValueError("arc length must be non-negative")
    return 2 * math.sinh(geodesic_arc_length / 2)
