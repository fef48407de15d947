"""Length spectra of marked groups by orbit enumeration.

The orbit of the basepoint ``j`` (the point ``(0, 1)`` of upper half-space)
is enumerated out to radius ``R = cutoff + 2 * diameter_estimate``.  A
loxodromic element is kept when its axis is a *closest lift*: no orbit
point is nearer to the axis than the basepoint itself.  Every closed
geodesic has such a lift within ``diameter_estimate`` of the basepoint, and
generically exactly one, so counting closest lifts counts closed geodesics
without having to solve the conjugacy problem in the group.  Ties (several
orbit points equally close) are split fractionally.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import words as W
from .errors import BeyondCutoff, CutoffTooLarge, NonDiscreteWarning, PoleProximity
from .moebius import ProjectiveMatrix
from .surfaces import MarkedGroup

BUCKET_TOL = 1e-7
DEFAULT_BUDGET = 10 ** 7
DEFAULT_DIAMETER = 3.0


@dataclass(frozen=True)
class SpectrumEntry:
    length: float
    rotation: float
    multiplicity: int
    witness: W.Word


@dataclass(frozen=True)
class LengthSpectrum:
    entries: tuple[SpectrumEntry, ...]
    cutoff: float
    completeness_radius: float

    def lengths(self) -> list[float]:
        """The multiset of lengths, each repeated by its multiplicity."""
        return [e.length for e in self.entries for _ in range(e.multiplicity)]

    def __len__(self):
        return sum(e.multiplicity for e in self.entries)

    def restricted(self, cutoff: float) -> LengthSpectrum:
        kept = tuple(e for e in self.entries if e.length <= cutoff)
        return LengthSpectrum(kept, min(cutoff, self.cutoff), self.completeness_radius)


# --------------------------------------------------------------------------
# batched matrix helpers


def _hyperboloid(M: np.ndarray) -> np.ndarray:
    """Hyperboloid coordinates (x0, x1, x2, x3) of M(j) for a stack of matrices."""
    a, b, c, d = M[:, 0, 0], M[:, 0, 1], M[:, 1, 0], M[:, 1, 1]
    aa, bb, cc, dd = (np.abs(v) ** 2 for v in (a, b, c, d))
    w = a * np.conj(c) + b * np.conj(d)
    return np.stack([(aa + bb + cc + dd) / 2, w.real, w.imag, (aa + bb - cc - dd) / 2], axis=1)


def _upper(M: np.ndarray):
    """Upper half-space coordinates (z, t) of M(j)."""
    a, b, c, d = M[:, 0, 0], M[:, 0, 1], M[:, 1, 0], M[:, 1, 1]
    den = np.abs(c) ** 2 + np.abs(d) ** 2
    z = (a * np.conj(c) + b * np.conj(d)) / den
    return z, 1 / den


def _keys(X: np.ndarray) -> np.ndarray:
    ball = X[:, 1:] / (X[:, :1] + 1)
    return np.round(ball * 1e10).astype(np.int64)


def _act_points(N: np.ndarray, z: np.ndarray, t: np.ndarray):
    a, b, c, d = N[0, 0], N[0, 1], N[1, 0], N[1, 1]
    w = c * z + d
    den = np.abs(w) ** 2 + abs(c) ** 2 * t * t
    z1 = ((a * z + b) * np.conj(w) + a * np.conj(c) * t * t) / den
    return z1, t / den


@dataclass
class OrbitBall:
    """Group elements whose displacement of ``j`` is at most ``radius``.

    ``words[i]`` is a word in the original generators evaluating to
    ``matrices[i]`` (modulo sign).
    """

    matrices: np.ndarray
    distances: np.ndarray
    words: list
    radius: float
    z: np.ndarray = field(init=False)
    t: np.ndarray = field(init=False)

    def __post_init__(self):
        order = np.argsort(self.distances, kind="stable")
        self.matrices = self.matrices[order]
        self.distances = self.distances[order]
        self.words = [self.words[i] for i in order]
        self.z, self.t = _upper(self.matrices)

    def __len__(self):
        return len(self.distances)

    def within(self, r: float) -> int:
        return int(np.searchsorted(self.distances, r, side="right"))


def _bfs(letters: np.ndarray, letter_words, radius: float, expand_radius: float, budget: int):
    """Breadth-first orbit search right-multiplying by ``letters``."""
    ident = np.eye(2, dtype=complex)[None]
    mats = [ident]
    dists = [np.zeros(1)]
    parents = [np.array([-1])]
    via = [np.array([-1])]
    seen = {(0, 0, 0)}
    frontier = ident
    frontier_idx = np.array([0])
    total = 1
    n_letters = len(letters)
    while len(frontier):
        P = np.matmul(frontier[:, None], letters[None]).reshape(-1, 2, 2)
        X = _hyperboloid(P)
        dist = np.arccosh(np.maximum(X[:, 0], 1.0))
        ok = np.nonzero(dist <= expand_radius)[0]
        if not len(ok):
            break
        keys = _keys(X[ok])
        _, first = np.unique(keys, axis=0, return_index=True)
        first.sort()
        fresh = []
        for i in first:
            k = tuple(keys[i])
            if k not in seen:
                seen.add(k)
                fresh.append(ok[i])
        if not fresh:
            break
        fresh = np.array(fresh)
        total += len(fresh)
        if total > budget:
            raise CutoffTooLarge(f"orbit search exceeded the element budget of {budget}")
        mats.append(P[fresh])
        dists.append(dist[fresh])
        parents.append(frontier_idx[fresh // n_letters])
        via.append(fresh % n_letters)
        frontier = P[fresh]
        frontier_idx = np.arange(total - len(fresh), total)
    mats = np.concatenate(mats)
    dists = np.concatenate(dists)
    parents = np.concatenate(parents)
    via = np.concatenate(via)
    words: list = [()] * len(mats)
    for i in range(1, len(mats)):
        words[i] = words[parents[i]] + letter_words[via[i]]
    keep = np.nonzero(dists <= radius)[0]
    return mats[keep], dists[keep], [W.free_reduce(words[i]) for i in keep]


def _generator_stack(group: MarkedGroup):
    letters, letter_words = [], []
    for k, g in enumerate(group.generators, start=1):
        A = g.as_array()
        letters += [A, np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]])]
        letter_words += [(k,), (-k,)]
    return np.array(letters), letter_words


def face_pairings(group: MarkedGroup, search_radius: float, budget: int = DEFAULT_BUDGET):
    """Elements pairing faces of the Dirichlet domain centered at ``j``.

    Candidates are all elements moving ``j`` at most ``search_radius``; the
    bisector of ``j`` and ``h(j)`` is the half-space ``v . k <= x0 - 1`` in
    Klein coordinates ``k``, so the irredundant faces are the vertices of
    the convex hull of the dual points ``v / (x0 - 1)``.
    """
    letters, letter_words = _generator_stack(group)
    slack = float(np.max(np.arccosh(np.maximum(_hyperboloid(letters)[:, 0], 1.0))))
    mats, dists, wrds = _bfs(letters, letter_words, search_radius, search_radius + slack, budget)
    keep = np.nonzero(dists > 1e-6)[0]
    mats, dists, wrds = mats[keep], dists[keep], [wrds[i] for i in keep]
    X = _hyperboloid(mats)
    dual = X[:, 1:] / (X[:, :1] - 1)
    fuchsian = np.allclose(dual[:, 1], 0) and all(
        abs(complex(x).imag) < 1e-12 for g in group.generators for x in g.entries()
    )
    pts = dual[:, [0, 2]] if fuchsian else dual
    try:
        hull = ConvexHull(pts)
        chosen = sorted(set(hull.vertices.tolist()))
    except (QhullError, ValueError):
        chosen = list(range(len(mats)))
    chosen_words = {wrds[i] for i in chosen}
    letters_out = [mats[i] for i in chosen]
    words_out = [wrds[i] for i in chosen]
    # Always keep the original generators so the letters generate the group.
    for A, w in zip(letters, letter_words):
        if w not in chosen_words:
            letters_out.append(A)
            words_out.append(w)
    return np.array(letters_out), words_out


def orbit_ball(
    group: MarkedGroup,
    radius: float,
    diameter_estimate: float = DEFAULT_DIAMETER,
    budget: int = DEFAULT_BUDGET,
) -> OrbitBall:
    """All elements g with d(j, g j) <= radius.

    The search walks through Dirichlet-domain face pairings and expands
    nodes up to ``radius + diameter_estimate``; this is complete when
    ``diameter_estimate`` bounds the covering radius of the domain.
    """
    letters, letter_words = face_pairings(group, 2 * diameter_estimate + 1.0, budget)
    mats, dists, wrds = _bfs(letters, letter_words, radius, radius + diameter_estimate, budget)
    return OrbitBall(mats, dists, wrds, radius)


# --------------------------------------------------------------------------
# closest-lift selection


def _normalizer(M: np.ndarray):
    """(N, lam) with N M N^-1 = diag(lam, 1/lam), |lam| > 1, det N = 1."""
    vals, vecs = np.linalg.eig(M)
    order = np.argsort(-np.abs(vals))
    P = vecs[:, order]
    det = np.linalg.det(P)
    P = P / np.sqrt(det)
    Ninv = P
    N = np.array([[P[1, 1], -P[0, 1]], [-P[1, 0], P[0, 0]]])
    return N, vals[order[0]]


def _axis_endpoints(N: np.ndarray) -> np.ndarray:
    """Endpoints of the axis (images of 0 and infinity under N^-1) on the unit sphere."""
    P = np.array([[N[1, 1], -N[0, 1]], [-N[1, 0], N[0, 0]]])
    out = []
    for p, q in ((P[0, 0], P[1, 0]), (P[0, 1], P[1, 1])):
        s = abs(p) ** 2 + abs(q) ** 2
        w = p * np.conj(q)
        out.append(np.array([2 * w.real, 2 * w.imag, abs(p) ** 2 - abs(q) ** 2]) / s)
    return np.array(out)


@dataclass
class _Lift:
    length: float
    rotation: float
    weight: float
    word: W.Word
    endpoints: np.ndarray


def _classify_candidates(ball: OrbitBall, indices, cutoff, diameter_estimate, tol):
    lifts = []
    elliptic = False
    x0 = (np.array([0j]), np.array([1.0]))
    for i in indices:
        M = ball.matrices[i]
        tr = M[0, 0] + M[1, 1]
        tr2 = tr * tr
        if abs(tr2 - 4) <= 1e-9:
            continue
        if abs(tr2.imag) <= 1e-9 and tr2.real < 4:
            elliptic = True
            continue
        N, lam = _normalizer(M)
        ell_c = 2 * np.log(lam)
        ell = float(ell_c.real)
        if ell > cutoff + tol:
            continue
        z0, t0 = _act_points(N, *x0)
        r0 = math.hypot(abs(z0[0]), t0[0])
        delta = math.acosh(max(r0 / t0[0], 1.0))
        if delta > diameter_estimate + tol or ell + 2 * delta > ball.radius + tol:
            continue
        n = ball.within(2 * delta + ell / 2 + 1e-6)
        zs, ts = _act_points(N, ball.z[:n], ball.t[:n])
        rs = np.hypot(np.abs(zs), ts)
        ds = np.arccosh(np.maximum(rs / ts, 1.0))
        if np.any(ds < delta - 1e-8):
            continue
        tied = np.nonzero(ds <= delta + 1e-8)[0]
        foot = np.log(rs[tied]) - math.log(r0)
        phase = np.sort(np.mod(foot + 1e-7, ell))
        clusters = 1 + int(np.sum(np.diff(phase) > 1e-6))
        if len(phase) > 1 and phase[0] + ell - phase[-1] <= 1e-6:
            clusters -= 1
        rot = math.remainder(ell_c.imag, 2 * math.pi)
        lifts.append(_Lift(ell, float(abs(rot)), 1.0 / max(clusters, 1), ball.words[i], _axis_endpoints(N)))
    return lifts, elliptic


def _same_axis(e1: np.ndarray, e2: np.ndarray, tol=1e-6) -> bool:
    d_direct = max(np.max(np.abs(e1[0] - e2[0])), np.max(np.abs(e1[1] - e2[1])))
    d_swap = max(np.max(np.abs(e1[0] - e2[1])), np.max(np.abs(e1[1] - e2[0])))
    return min(d_direct, d_swap) <= tol


def _prefix_partition(ball: OrbitBall, indices, parts: int):
    """Split candidate indices by the first letter of their words."""
    groups = defaultdict(list)
    for i in indices:
        w = ball.words[i]
        first = w[0] if w else 0
        groups[first].append(i)
    buckets = [[] for _ in range(parts)]
    for n, key in enumerate(sorted(groups)):
        buckets[n % parts].extend(groups[key])
    return [b for b in buckets if b]


def enumerate_spectrum(
    group: MarkedGroup,
    cutoff: float,
    diameter_estimate: float = DEFAULT_DIAMETER,
    *,
    workers: int = 1,
    oriented: bool = False,
    primitive: bool = True,
    budget: int = DEFAULT_BUDGET,
    ball: OrbitBall | None = None,
) -> LengthSpectrum:
    """Closed geodesics of length at most ``cutoff``.

    By default geodesics are unoriented and primitive; ``oriented`` doubles
    each multiplicity and ``primitive=False`` adds the proper powers.
    """
    if not cutoff > 0 or diameter_estimate < 0:
        raise ValueError("need cutoff > 0 and diameter_estimate >= 0")
    radius = cutoff + 2 * diameter_estimate
    if ball is None or ball.radius < radius:
        ball = orbit_ball(group, radius, diameter_estimate, budget)
    tol = 1e-9
    indices = list(range(1, ball.within(radius)))
    parts = _prefix_partition(ball, indices, max(1, workers))
    job = lambda idx: _classify_candidates(ball, idx, cutoff, diameter_estimate, tol)
    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, parts))
    else:
        results = [job(p) for p in parts]
    lifts = [x for r, _ in results for x in r]
    if any(e for _, e in results):
        warnings.warn("elliptic element found during enumeration", NonDiscreteWarning, stacklevel=2)
    lifts.sort(key=lambda x: (x.length, W.shortlex_key(x.word)))

    # One representative per axis: the shortest element is the primitive one.
    reps: list[_Lift] = []
    for lift in lifts:
        if any(
            _same_axis(lift.endpoints, r.endpoints)
            for r in reps
            if abs(round(lift.length / r.length) * r.length - lift.length) < 1e-6
        ):
            continue
        reps.append(lift)

    classes = []
    for r in reps:
        powers = 1 if primitive else int(cutoff / r.length + 1e-9)
        for k in range(1, powers + 1):
            rot = abs(math.remainder(k * r.rotation, 2 * math.pi))
            word = r.word * k
            classes.append((k * r.length, rot, r.weight * (2 if oriented else 1), word))
    return LengthSpectrum(_bucket(classes), cutoff, radius)


def _bucket(classes) -> tuple[SpectrumEntry, ...]:
    classes = sorted(classes, key=lambda c: (c[0], c[1]))
    groups: list[list] = []
    for c in classes:
        for g in groups[-8:]:
            if abs(g[0][0] - c[0]) <= BUCKET_TOL and _rot_gap(g[0][1], c[1]) <= BUCKET_TOL:
                g.append(c)
                break
        else:
            groups.append([c])
    entries = []
    for g in groups:
        weight = sum(c[2] for c in g)
        mult = int(round(weight))
        if abs(weight - mult) > 1e-6 or mult < 1:
            warnings.warn(f"fractional multiplicity {weight} at length {g[0][0]}", RuntimeWarning)
            mult = max(mult, 1)
        length = min(c[0] for c in g)
        witness = min((c[3] for c in g), key=W.shortlex_key)
        entries.append(SpectrumEntry(length, g[0][1], mult, witness))
    entries.sort(key=lambda e: (e.length, e.rotation))
    return tuple(entries)


def _rot_gap(r1: float, r2: float) -> float:
    d = abs(r1 - r2) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


# --------------------------------------------------------------------------
# oracle, counting, comparison, zeta


def word_layers(group: MarkedGroup, max_length: int):
    """Yield ``(words, matrices)`` for the reduced words of each length 1..max_length."""
    letters, letter_words = _generator_stack(group)
    codes = [w[0] for w in letter_words]
    words = [()]
    mats = np.eye(2, dtype=complex)[None]
    for _ in range(max_length):
        nxt_words, pick, via = [], [], []
        for i, w in enumerate(words):
            for j, x in enumerate(codes):
                if not w or w[-1] != -x:
                    nxt_words.append(w + (x,))
                    pick.append(i)
                    via.append(j)
        mats = np.matmul(mats[pick], letters[via])
        words = nxt_words
        yield words, mats


def _loxodromic_lengths(mats: np.ndarray):
    tr = mats[:, 0, 0] + mats[:, 1, 1]
    tr2 = tr * tr
    lox = np.abs(tr2 - 4) > 1e-9
    lox &= ~((np.abs(tr2.imag) <= 1e-9) & (tr2.real < 4))
    root = np.sqrt(tr2 - 4 + 0j)
    lam = np.where(np.abs(tr + root) >= np.abs(tr - root), tr + root, tr - root) / 2
    ell = 2 * np.log(lam + 0j)
    rot = np.abs(np.remainder(ell.imag + math.pi, 2 * math.pi) - math.pi)
    return lox, ell.real, rot


def word_oracle_spectrum(group: MarkedGroup, max_word_length: int):
    """Primitive unoriented classes from every reduced word up to a length.

    Classes are canonical cyclic words (merged with their inverses), which
    is exact for free groups only.  Returns ``{canonical word: (length,
    rotation)}`` for the loxodromic classes.
    """
    out = {}
    for words, mats in word_layers(group, max_word_length):
        lox, ell, rot = _loxodromic_lengths(mats)
        for w, ok, l, r in zip(words, lox, ell, rot):
            if not ok or W.cyclic_reduce(w) != w or not W.is_primitive_word(w):
                continue
            key = W.canonical_cyclic(w)
            if key not in out:
                out[key] = (float(l), float(r))
    return out


def word_oracle_threshold(group: MarkedGroup, max_word_length: int, lookahead: int = 2) -> float:
    """Shortest class needing between ``max_word_length + 1`` and
    ``max_word_length + lookahead`` letters.

    Below this length the word oracle of ``max_word_length`` is taken to be
    complete (a heuristic: word length and geodesic length grow together).
    """
    best = math.inf
    for n, (words, mats) in enumerate(word_layers(group, max_word_length + lookahead), start=1):
        if n <= max_word_length:
            continue
        lox, ell, _ = _loxodromic_lengths(mats)
        cyc = np.array([w[0] != -w[-1] for w in words])
        for i in np.nonzero(lox & cyc & (ell < best))[0]:
            if W.is_primitive_word(words[i]):
                best = min(best, float(ell[i]))
    return best


def spectrum_from_lengths(pairs, cutoff: float, radius: float = math.nan, witnesses=None) -> LengthSpectrum:
    """Bucket raw ``(length, rotation)`` pairs into a spectrum."""
    witnesses = witnesses or [()] * len(pairs)
    classes = [(l, abs(r), 1.0, w) for (l, r), w in zip(pairs, witnesses) if l <= cutoff]
    return LengthSpectrum(_bucket(classes), cutoff, radius)


def counting_function(s: LengthSpectrum, L: float) -> int:
    if L > s.cutoff + 1e-12:
        raise BeyondCutoff(f"L = {L} exceeds the spectrum cutoff {s.cutoff}")
    return sum(e.multiplicity for e in s.entries if e.length <= L)


@dataclass(frozen=True)
class SpectrumComparison:
    matched: tuple[tuple[SpectrumEntry, SpectrumEntry], ...]
    only_left: tuple[SpectrumEntry, ...]
    only_right: tuple[SpectrumEntry, ...]
    agree_up_to: float


def _units(s: LengthSpectrum):
    return [e for e in s.entries for _ in range(e.multiplicity)]


def compare_spectra(s1: LengthSpectrum, s2: LengthSpectrum, tol: float = 1e-7,
                    flip_rotation: bool = True) -> SpectrumComparison:
    """Greedy matching of two spectra in sorted order.

    Entries match when lengths agree within ``tol`` and rotations agree
    within ``tol`` (modulo 2 pi, optionally after negating one).
    ``agree_up_to`` is the length of the first unmatched entry, or the
    smaller cutoff when everything below it matched.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    left, right = _units(s1), _units(s2)
    used = [False] * len(right)
    matched, only_left = [], []
    start = 0
    for e in left:
        hit = None
        for j in range(start, len(right)):
            f = right[j]
            if f.length > e.length + tol:
                break
            if used[j] or abs(f.length - e.length) > tol:
                continue
            gap = _rot_gap(e.rotation, f.rotation)
            if flip_rotation:
                gap = min(gap, _rot_gap(e.rotation, -f.rotation))
            if gap <= tol:
                hit = j
                break
        if hit is None:
            only_left.append(e)
        else:
            used[hit] = True
            matched.append((e, right[hit]))
        while start < len(right) and used[start]:
            start += 1
    only_right = [f for f, u in zip(right, used) if not u]
    limit = min(s1.cutoff, s2.cutoff)
    firsts = [e.length for e in only_left if e.length <= limit] + [
        f.length for f in only_right if f.length <= limit
    ]
    agree = min(firsts) if firsts else limit
    return SpectrumComparison(tuple(matched), tuple(only_left), tuple(only_right), agree)


def zeta_truncated(s: LengthSpectrum, z: complex) -> complex:
    """Finite Euler product over the spectrum's entries."""
    z = complex(z)
    if not z.real > 0:
        raise ValueError("need Re(z) > 0")
    out = 1 + 0j
    for e in s.entries:
        factor = 1 - np.exp(-z * e.length)
        if abs(factor) < 1e-12:
            raise PoleProximity(f"factor vanishes at length {e.length}")
        out /= complex(factor) ** e.multiplicity
    return out


def dirichlet_covering_radius(group: MarkedGroup, search_radius: float = 8.0,
                              budget: int = DEFAULT_BUDGET) -> float:
    """Largest distance from ``j`` to a vertex of its Dirichlet polygon.

    Fuchsian groups only; returns ``inf`` when the polygon reaches the
    circle at infinity.  A value well below ``search_radius / 2`` certifies
    that every face was found, which makes it a rigorous
    ``diameter_estimate`` for :func:`enumerate_spectrum`.
    """
    from scipy.spatial import HalfspaceIntersection

    letters, letter_words = _generator_stack(group)
    if np.max(np.abs(letters.imag)) > 1e-12:
        raise ValueError("covering radius is implemented for Fuchsian groups only")
    slack = float(np.max(np.arccosh(np.maximum(_hyperboloid(letters)[:, 0], 1.0))))
    mats, _, _ = _bfs(letters, letter_words, search_radius, search_radius + slack, budget)
    X = _hyperboloid(mats[1:])
    X = X[X[:, 0] > 1 + 1e-6]  # drop numerical copies of the identity
    # Klein-disk half-planes v.k <= x0 - 1, written as [v, -(x0-1)] . [k, 1] <= 0,
    # plus a bounding box so that the intersection is always bounded.
    halfspaces = np.column_stack([X[:, 1], X[:, 3], -(X[:, 0] - 1)])
    box = np.array([[1, 0, -2], [-1, 0, -2], [0, 1, -2], [0, -1, -2]], dtype=float)
    hs = HalfspaceIntersection(np.vstack([halfspaces, box]), np.zeros(2))
    r = np.max(np.hypot(hs.intersections[:, 0], hs.intersections[:, 1]))
    if r >= 1 - 1e-12:
        return math.inf
    return float(np.arctanh(r))
