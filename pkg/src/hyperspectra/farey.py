"""The Farey graph as the curve complex of a once-punctured torus or
four-punctured sphere.

Vertices are slopes ``p/q`` (``1/0`` is infinity), joined when
``|ps - qr| = 1``.  Integer matrices of determinant one act by isometries.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import OverflowGuard

DEFAULT_BIT_CAP = 1 << 14


@dataclass(frozen=True, order=True)
class FareySlope:
    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if (p, q) == (0, 0) or math.gcd(p, q) != 1:
            raise ValueError(f"{p}/{q} is not a reduced slope")
        if q < 0 or (q == 0 and p != 1):
            raise ValueError(f"{p}/{q} is not in canonical form")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def of(cls, p: int, q: int) -> FareySlope:
        """Canonical slope for any nonzero integer vector (divides out the gcd)."""
        g = math.gcd(p, q)
        if g == 0:
            raise ValueError("0/0 is not a slope")
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def infinity(cls) -> FareySlope:
        return cls(1, 0)

    def __str__(self):
        return f"{self.p}/{self.q}"


def farey_adjacent(a: FareySlope, b: FareySlope) -> bool:
    return abs(a.p * b.q - a.q * b.p) == 1


@dataclass(frozen=True)
class IntegerMappingClass:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("mapping class matrix must have determinant 1")

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def kind(self) -> str:
        t = abs(self.trace)
        return "pseudo-Anosov" if t > 2 else ("reducible" if t == 2 else "finite order")

    def __matmul__(self, o: IntegerMappingClass) -> IntegerMappingClass:
        return IntegerMappingClass(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                                   self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> IntegerMappingClass:
        return IntegerMappingClass(self.d, -self.b, -self.c, self.a)

    def act(self, s: FareySlope) -> FareySlope:
        return FareySlope.of(self.a * s.p + self.b * s.q, self.c * s.p + self.d * s.q)


def _to_infinity(a: FareySlope) -> IntegerMappingClass:
    """A matrix sending ``a`` to 1/0."""
    # Find r, s with p s - q r = 1, so [[p, r], [q, s]] sends 1/0 to p/q.
    g, x, y = _egcd(a.p, a.q)  # x p + y q = 1
    return IntegerMappingClass(a.p, -y, a.q, x).inverse()


def _egcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _partial_quotients(p: int, q: int) -> list[int]:
    out = []
    while q:
        k, r = divmod(p, q)
        out.append(k)
        p, q = q, r
    return out


def _distance_from_infinity(s: FareySlope) -> int:
    """Shortest path from 1/0 inside the ladder of s.

    The ladder is made of the convergents of the continued fraction and the
    intermediate fractions between them; long fans are shortened to their
    first and last two members, which never lengthens a shortest path
    because the fan's pivot is adjacent to all of them.
    """
    if s.q == 0:
        return 0
    p, q = (s.p, s.q) if s.p >= 0 else (-s.p, s.q)  # reflection x -> -x fixes 1/0
    if q == 1:
        return 1
    quotients = _partial_quotients(p, q)
    nodes = {(1, 0): -1}
    pm2, qm2, pm1, qm1 = 0, 1, 1, 0
    for k, a in enumerate(quotients):
        for j in sorted({0, 1, a - 1, a}):
            if 0 <= j <= a:
                nodes.setdefault((pm2 + j * pm1, qm2 + j * qm1), k)
        pm2, qm2, pm1, qm1 = pm1, qm1, a * pm1 + pm2, a * qm1 + qm2
    keys = list(nodes)
    fan = [nodes[k] for k in keys]
    n = len(keys)
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if abs(fan[i] - fan[j]) <= 2 or fan[i] < 0 or fan[j] < 0:
                (p1, q1), (p2, q2) = keys[i], keys[j]
                if abs(p1 * q2 - q1 * p2) == 1:
                    adj[i].append(j)
                    adj[j].append(i)
    target = keys.index((p, q))
    dist = [-1] * n
    dist[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        if u == target:
            return dist[u]
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    raise RuntimeError(f"ladder of {s} is disconnected")


def farey_distance(a: FareySlope, b: FareySlope) -> int:
    if a == b:
        return 0
    return _distance_from_infinity(_to_infinity(a).act(b))


def farey_bfs_distances(sources, bound: int) -> dict[FareySlope, dict[FareySlope, int]]:
    """Brute-force distances inside the subgraph of slopes with ``|p|, |q| <= bound``.

    Independent of the ladder algorithm; used as its oracle.
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    verts = [FareySlope(1, 0)] + [
        FareySlope(p, q) for q in range(1, bound + 1) for p in range(-bound, bound + 1)
        if math.gcd(p, q) == 1
    ]
    P = np.array([v.p for v in verts], dtype=np.int64)
    Q = np.array([v.q for v in verts], dtype=np.int64)
    adj = np.abs(P[:, None] * Q[None, :] - Q[:, None] * P[None, :]) == 1
    index = {v: i for i, v in enumerate(verts)}
    sources = list(sources)
    table = shortest_path(csr_matrix(adj), unweighted=True, directed=False,
                          indices=[index[s] for s in sources])
    out = {}
    for s, row in zip(sources, table):
        out[s] = {v: int(d) for v, d in zip(verts, row) if np.isfinite(d)}
    return out


class TranslationLength(NamedTuple):
    estimates: list
    final: float
    alternate_final: float
    subadditive: bool


def _power_orbit(phi: IntegerMappingClass, v: FareySlope, n_max: int, bit_cap: int):
    out, m = [], IntegerMappingClass(1, 0, 0, 1)
    for _ in range(n_max):
        m = m @ phi
        if max(abs(x).bit_length() for x in (m.a, m.b, m.c, m.d)) > bit_cap:
            raise OverflowGuard(f"matrix power exceeded {bit_cap} bits")
        out.append(m.act(v))
    return out


def stable_translation_length(phi: IntegerMappingClass, v: FareySlope | None = None,
                              n_max: int = 12, bit_cap: int = DEFAULT_BIT_CAP) -> TranslationLength:
    """Estimates ``d(v, phi^n v) / n`` for n = 1..n_max.

    The same limit is estimated from a second vertex adjacent to ``v`` and
    the sampled distances are checked for subadditivity.
    """
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    v = v or FareySlope(0, 1)
    dists = [farey_distance(v, w) for w in _power_orbit(phi, v, n_max, bit_cap)]
    estimates = [d / n for n, d in enumerate(dists, start=1)]
    # a neighbour of v as the second base vertex: image of 0/1 under a map 1/0 -> v
    u = _to_infinity(v).inverse().act(FareySlope(0, 1))
    alt = farey_distance(u, _power_orbit(phi, u, n_max, bit_cap)[-1]) / n_max
    table = [0] + dists
    subadditive = all(
        table[m + n] <= table[m] + table[n]
        for m in range(1, n_max + 1) for n in range(1, n_max + 1 - m)
    )
    return TranslationLength(estimates, estimates[-1], alt, subadditive)
