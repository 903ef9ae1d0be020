"""Highway-dimension machinery: witness paths, significant-path enumeration,
neighborhoods, sparse shortest-path hitting sets, and the multiscale labeling
construction, plus the per-level label audit for distance-greedy runs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import DistMatrix, Graph
from .greedy import RunTrace, TraceNotFromDHHLError
from .labeling import Labeling, Order


class CapExceededError(RuntimeError):
    """Shortest-path enumeration exceeded the configured cap."""


class DirectedInputError(ValueError):
    """Highway-dimension machinery is defined on undirected graphs."""


class InvalidSPHSError(ValueError):
    """A multiscale hitting-set family failed validation."""


@dataclass(frozen=True)
class SignificantPath:
    """A shortest path that extends by at most one vertex per end to a long witness."""

    vertices: tuple[int, ...]
    length: int


def _floor(x) -> int:
    return math.floor(x) if isinstance(x, Fraction) else int(math.floor(x))


def _all_shortest_paths(g: Graph, d: DistMatrix, cap: int) -> list[tuple[int, ...]]:
    """Every shortest path between every reachable pair, trivial paths included.

    Paths are emitted in canonical direction (smaller endpoint first).
    """
    if g.directed:
        raise DirectedInputError("undirected graph required")
    m = d.matrix
    adj = g.adjacency
    out: list[tuple[int, ...]] = [(v,) for v in range(g.n)]
    budget = cap - len(out)
    if budget < 0:
        raise CapExceededError(f"more than {cap} shortest paths")

    def extend(u: int, prefix: list[int], remaining: float):
        nonlocal budget
        tip = prefix[-1]
        if tip == u and remaining == 0:
            budget -= 1
            if budget < 0:
                raise CapExceededError(f"more than {cap} shortest paths")
            out.append(tuple(reversed(prefix)))
            return
        for x, ln in adj[tip]:
            if m[u, x] + ln == remaining:
                prefix.append(x)
                extend(u, prefix, remaining - ln)
                prefix.pop()

    for u in range(g.n):
        for w in range(u + 1, g.n):
            if math.isfinite(m[u, w]):
                extend(u, [w], m[u, w])
    return out


def _witnesses(g: Graph, d: DistMatrix, path: tuple[int, ...]):
    """All witness extensions of a shortest path: the path itself and the
    single-vertex extensions per end that remain shortest paths. Returns
    (length, vertices) pairs."""
    m = d.matrix
    first, last = path[0], path[-1]
    length = int(m[first, last])
    pset = set(path)
    pres = [
        (x, ln)
        for x, ln in g.adjacency[first]
        if x not in pset and ln + length == m[x, last]
    ]
    posts = [
        (y, ln)
        for y, ln in g.adjacency[last]
        if y not in pset and length + ln == m[first, y]
    ]
    out = [(length, path)]
    for x, lx in pres:
        out.append((length + lx, (x,) + path))
    for y, ly in posts:
        out.append((length + ly, path + (y,)))
    for x, lx in pres:
        for y, ly in posts:
            if x != y and lx + length + ly == m[x, y]:
                out.append((lx + length + ly, (x,) + path + (y,)))
    return out


def _paths_with_witnesses(g: Graph, d: DistMatrix, cap: int):
    return [(p, _witnesses(g, d, p)) for p in _all_shortest_paths(g, d, cap)]


def enumerate_significant_paths(
    g: Graph, d: DistMatrix, r, cap: int = 10**6
) -> list[SignificantPath]:
    """All r-significant shortest paths: those with a witness longer than r."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    m = d.matrix
    out = []
    for p, wits in _paths_with_witnesses(g, d, cap):
        if any(wlen > r for wlen, _ in wits):
            out.append(SignificantPath(p, int(m[p[0], p[-1]])))
    return sorted(out, key=lambda sp: (len(sp.vertices), sp.vertices))


def neighborhood_S(
    g: Graph, d: DistMatrix, v: int, r, cap: int = 10**6
) -> list[SignificantPath]:
    """r-significant paths that are (r, 2r)-close to v: some witness longer
    than r lies within distance 2r of v."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    thr = _floor(2 * r)
    m = d.matrix
    out = []
    for p, wits in _paths_with_witnesses(g, d, cap):
        close = False
        for wlen, wverts in wits:
            if wlen > r and min(m[v, x] for x in wverts) <= thr:
                close = True
                break
        if close:
            out.append(SignificantPath(p, int(m[p[0], p[-1]])))
    return sorted(out, key=lambda sp: (len(sp.vertices), sp.vertices))


def ball(d: DistMatrix, v: int, r) -> set[int]:
    """Vertices within distance r of v (exact for rational r: dist <= floor(r))."""
    thr = _floor(Fraction(r)) if not isinstance(r, int) else r
    return set(np.flatnonzero(d.matrix[v] <= thr).tolist())


def is_sphs(g: Graph, d: DistMatrix, c, h: int, r, cap: int = 10**6) -> bool:
    """Check the sparse shortest-path hitting set conditions.

    ``c`` must hit every positive-length r-significant path, and every ball of
    radius 2r may contain at most ``h`` members of ``c``. Zero-length paths are
    excluded from the hitting requirement: each is hit only by its own vertex,
    which would degenerate the measure; the multiscale construction covers them
    with its bottom level instead.
    """
    cset = set(c)
    for sp in enumerate_significant_paths(g, d, r, cap):
        if sp.length > 0 and cset.isdisjoint(sp.vertices):
            return False
    if not cset:
        return True
    thr = _floor(2 * Fraction(r))
    carr = np.array(sorted(cset), dtype=np.int64)
    counts = (d.matrix[:, carr] <= thr).sum(axis=1)
    return bool(counts.max() <= h)


@dataclass(frozen=True)
class MultiscaleSPHS:
    """Hitting sets C_0..C_T with C_0 = V; level i hits paths longer than 2^(i-1).

    ``ball_caps[i]`` is the exact maximum of |C_i intersect B(v, 2^i)| over v.
    """

    levels: tuple[frozenset[int], ...]
    ball_caps: tuple[int, ...]
    diameter: int

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def vertex_level(self, v: int) -> int:
        for i in range(self.top, -1, -1):
            if v in self.levels[i]:
                return i
        raise ValueError(f"vertex {v} missing from the bottom level")

    def q_sets(self) -> tuple[frozenset[int], ...]:
        """Q_i: vertices whose highest level is i (a partition of V)."""
        out = []
        taken: set[int] = set()
        for i in range(self.top, -1, -1):
            q = frozenset(self.levels[i] - taken)
            taken |= self.levels[i]
            out.append(q)
        return tuple(reversed(out))


def _greedy_hitting_set(path_sets: list[frozenset[int]], n: int) -> set[int]:
    unhit = list(path_sets)
    hit: set[int] = set()
    while unhit:
        counts = [0] * n
        for s in unhit:
            for v in s:
                counts[v] += 1
        best = max(range(n), key=lambda v: (counts[v], -v))
        hit.add(best)
        unhit = [s for s in unhit if best not in s]
    return hit


def _ball_cap(d: DistMatrix, members: frozenset[int], radius: int) -> int:
    if not members:
        return 0
    carr = np.array(sorted(members), dtype=np.int64)
    return int((d.matrix[:, carr] <= radius).sum(axis=1).max())


def greedy_multiscale_sphs(g: Graph, d: DistMatrix, cap: int = 10**6) -> MultiscaleSPHS:
    """Greedy hitting sets for every scale 2^(i-1), i = 1..ceil(log2 D), C_0 = V."""
    if g.directed:
        raise DirectedInputError("undirected graph required")
    if any(ln < 1 for _, _, ln in g.arcs):
        raise ValueError("edge lengths must be at least 1")
    n = g.n
    diam = d.diameter
    top = 0 if diam <= 1 else (diam - 1).bit_length()
    levels = [frozenset(range(n))]
    for i in range(1, top + 1):
        r = 2 ** (i - 1)
        targets = [
            frozenset(sp.vertices)
            for sp in enumerate_significant_paths(g, d, r, cap)
            if sp.length > 0
        ]
        levels.append(frozenset(_greedy_hitting_set(targets, n)))
    caps = tuple(_ball_cap(d, levels[i], 2**i) for i in range(top + 1))
    return MultiscaleSPHS(tuple(levels), caps, diam)


def sphs_to_hhl(g: Graph, d: DistMatrix, ms: MultiscaleSPHS):
    """Order and labeling from a multiscale hitting-set family.

    Vertices rank by their highest level (higher level = more important, ties by
    id); each label keeps the more important members of every C_j within
    distance 2^j. The result covers all pairs and the maximum label size is at
    most 1 + sum of the per-level ball caps.
    """
    if g.directed:
        raise DirectedInputError("undirected graph required")
    n = g.n
    if ms.levels and ms.levels[0] != frozenset(range(n)):
        raise InvalidSPHSError("bottom level must contain every vertex")
    for i in range(1, ms.top + 1):
        r = 2 ** (i - 1)
        cset = ms.levels[i]
        for sp in enumerate_significant_paths(g, d, r):
            if sp.length > 0 and cset.isdisjoint(sp.vertices):
                raise InvalidSPHSError(f"level {i} misses a {r}-significant path")
    vlevel = [ms.vertex_level(v) for v in range(n)]
    by_importance = sorted(range(n), key=lambda v: (-vlevel[v], v))
    order = Order.from_sequence(by_importance)
    m = d.matrix
    labels: list[dict[int, int]] = [dict() for _ in range(n)]
    for v in range(n):
        labels[v][v] = 0
        rv = order.rank(v)
        for j, members in enumerate(ms.levels):
            thr = 2**j
            for w in members:
                if order.rank(w) < rv and m[v, w] <= thr:
                    labels[v][w] = int(m[v, w])
    return order, Labeling(False, n, labels)


@dataclass(frozen=True)
class DhhlLevelAudit:
    """Per-vertex, per-level hub counts of a distance-greedy run."""

    per_vertex_level: dict[int, dict[int | float, int]]
    label_sizes: dict[int, int]
    max_level_count: int
    bound_ratio: float

    def max_label_size(self) -> int:
        return max(self.label_sizes.values(), default=0)


def audit_dhhl_levels(trace: RunTrace, d: DistMatrix, h: int) -> DhhlLevelAudit:
    """Count, per vertex, the hubs contributed at each selection level.

    ``h`` is the highway dimension used to scale the reported ratio
    max_count / (h * log2(n + 1)); a ratio of infinity is reported when h = 0.
    """
    if trace.algo != "d-hhl":
        raise TraceNotFromDHHLError(f"trace is from {trace.algo!r}")
    per: dict[int, dict[int | float, int]] = {v: {} for v in range(trace.n)}
    sizes: dict[int, int] = {v: 0 for v in range(trace.n)}
    for rec in trace.iterations:
        for u in rec.receivers_fwd:
            per[u][rec.level] = per[u].get(rec.level, 0) + 1
            sizes[u] += 1
        for w in rec.receivers_bwd:
            per[w][rec.level] = per[w].get(rec.level, 0) + 1
            sizes[w] += 1
    max_count = max((c for counts in per.values() for c in counts.values()), default=0)
    denom = h * math.log2(trace.n + 1)
    ratio = max_count / denom if denom > 0 else math.inf
    return DhhlLevelAudit(per, sizes, max_count, ratio)
