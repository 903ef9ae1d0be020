"""Center graphs over uncovered vertex pairs: edge counts, density, level profiles,
and the incremental coverage engine that drives the greedy selection loops."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import DistMatrix, path_membership

NEG_INF_LEVEL = float("-inf")


class EmptyCenterGraphError(ValueError):
    """Density or subgraph selection requested on a center graph with no edges."""


def make_pair(directed: bool, u: int, w: int) -> tuple[int, int]:
    """Canonical pair representation: ordered when directed, min-first otherwise."""
    return (u, w) if directed or u <= w else (w, u)


def pair_level(dist: int) -> int | float:
    """Level of a pair: floor(log2 dist), with dist 0 mapping to -inf."""
    return NEG_INF_LEVEL if dist == 0 else dist.bit_length() - 1


class UncoveredSet:
    """Set of still-uncovered vertex pairs; shrinks monotonically over a run."""

    __slots__ = ("directed", "n", "_pairs")

    def __init__(self, directed: bool, n: int, pairs):
        self.directed = bool(directed)
        self.n = n
        norm = set()
        for u, w in pairs:
            u, w = int(u), int(w)
            if not (0 <= u < n and 0 <= w < n):
                raise ValueError(f"pair ({u},{w}) out of range")
            norm.add(make_pair(self.directed, u, w))
        self._pairs = norm

    @property
    def count(self) -> int:
        return len(self._pairs)

    def __len__(self) -> int:
        return len(self._pairs)

    def __contains__(self, pair) -> bool:
        u, w = pair
        return make_pair(self.directed, u, w) in self._pairs

    def __iter__(self):
        return iter(sorted(self._pairs))

    def discard(self, pair) -> None:
        u, w = pair
        self._pairs.discard(make_pair(self.directed, u, w))

    def copy(self) -> "UncoveredSet":
        return UncoveredSet(self.directed, self.n, self._pairs)

    def __repr__(self) -> str:
        return f"UncoveredSet(n={self.n}, count={self.count})"


def initial_uncovered(d: DistMatrix) -> UncoveredSet:
    """All reachable pairs, including every [v,v]."""
    return UncoveredSet(d.directed, d.n, d.reachable_pairs())


@dataclass(frozen=True)
class CenterGraph:
    """Uncovered pairs whose shortest paths pass through ``center``.

    Directed center graphs are bipartite (tail side, head side); undirected ones
    live on V and carry a self-loop for the pair [center, center] while uncovered.
    """

    center: int
    directed: bool
    arcs: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.arcs)

    def tails(self) -> set[int]:
        return {u for u, _ in self.arcs}

    def heads(self) -> set[int]:
        return {w for _, w in self.arcs}

    def vertices(self) -> set[int]:
        return {v for arc in self.arcs for v in arc}

    @property
    def nonisolated_count(self) -> int:
        """Distinct incident vertices; the directed case counts side occurrences."""
        if self.directed:
            return len(self.tails()) + len(self.heads())
        return len(self.vertices())


def build_center_graph(d: DistMatrix, uncovered: UncoveredSet, v: int) -> CenterGraph:
    """From-scratch center graph of v over the given uncovered pairs."""
    m = d.matrix
    arcs = tuple(
        sorted((u, w) for u, w in uncovered if np.isfinite(m[u, v]) and m[u, v] + m[v, w] == m[u, w])
    )
    return CenterGraph(v, d.directed, arcs)


def density(cg: CenterGraph) -> Fraction:
    """Edges over non-isolated vertices, as an exact rational."""
    if cg.edge_count == 0:
        raise EmptyCenterGraphError(f"center graph of {cg.center} has no edges")
    return Fraction(cg.edge_count, cg.nonisolated_count)


@dataclass(frozen=True)
class LevelProfile:
    """Per-level edge counts of a center graph.

    ``key()`` compares finite levels lexicographically from the top; it orders
    center graphs exactly like comparing total pair weights n^(2*level), where
    dist-0 pairs weigh nothing, so the -inf bucket is excluded from the key.
    """

    counts: tuple[tuple[int | float, int], ...]
    top_level: int

    def count(self, level) -> int:
        return dict(self.counts).get(level, 0)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def key(self) -> tuple[int, ...]:
        by_level = dict(self.counts)
        return tuple(by_level.get(i, 0) for i in range(self.top_level, -1, -1))


def level_profile(cg: CenterGraph, d: DistMatrix) -> LevelProfile:
    m = d.matrix
    counts: dict[int | float, int] = {}
    for u, w in cg.arcs:
        lvl = pair_level(int(m[u, w]))
        counts[lvl] = counts.get(lvl, 0) + 1
    diam = d.diameter
    top = diam.bit_length() - 1 if diam >= 1 else -1
    ordered = tuple(sorted(counts.items(), key=lambda kv: kv[0]))
    return LevelProfile(ordered, top)


class CoverageState:
    """Pair coverage with incrementally maintained per-center statistics.

    Value-equal to rebuilding every center graph from scratch after each update;
    the greedy loops and the set-cover runner rely on that contract.
    """

    def __init__(self, d: DistMatrix, pairs: UncoveredSet | None = None):
        self.d = d
        self.n = n = d.n
        self.directed = d.directed
        if pairs is None:
            pairs = initial_uncovered(d)
        m = d.matrix
        diam = d.diameter
        self.top_level = diam.bit_length() - 1 if diam >= 1 else -1
        width = self.top_level + 1

        by_source: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self.pair_list: list[tuple[int, int]] = []
        for u, w in pairs:
            if not np.isfinite(m[u, w]):
                raise ValueError(f"pair ({u},{w}) is unreachable and can never be covered")
            pid = len(self.pair_list)
            self.pair_list.append((u, w))
            by_source[u].append((pid, w))
        self.pair_path: list[tuple[int, ...]] = [()] * len(self.pair_list)
        self.pair_lvl: list[int] = [0] * len(self.pair_list)

        self._edges = [0] * n
        self._noniso = [0] * n
        self._lvl_counts = [[0] * width for _ in range(n)]
        self._global_lvl = [0] * width
        if self.directed:
            self._deg_t = [[0] * n for _ in range(n)]
            self._deg_h = [[0] * n for _ in range(n)]
        else:
            self._deg = [[0] * n for _ in range(n)]

        for u in range(n):
            if not by_source[u]:
                continue
            member = path_membership(d, u)
            for pid, w in by_source[u]:
                path = tuple(np.flatnonzero(member[:, w]).tolist())
                self.pair_path[pid] = path
                dist = int(m[u, w])
                lvl = -1 if dist == 0 else dist.bit_length() - 1
                self.pair_lvl[pid] = lvl
                if lvl >= 0:
                    self._global_lvl[lvl] += 1
                for x in path:
                    self._edges[x] += 1
                    if lvl >= 0:
                        self._lvl_counts[x][lvl] += 1
                    if self.directed:
                        rt, rh = self._deg_t[x], self._deg_h[x]
                        if rt[u] == 0:
                            self._noniso[x] += 1
                        rt[u] += 1
                        if rh[w] == 0:
                            self._noniso[x] += 1
                        rh[w] += 1
                    else:
                        row = self._deg[x]
                        if row[u] == 0:
                            self._noniso[x] += 1
                        row[u] += 1
                        if u != w:
                            if row[w] == 0:
                                self._noniso[x] += 1
                            row[w] += 1
        self.uncovered: set[int] = set(range(len(self.pair_list)))

    @property
    def uncovered_count(self) -> int:
        return len(self.uncovered)

    def pair(self, pid: int) -> tuple[int, int]:
        return self.pair_list[pid]

    def uncovered_pairs(self) -> UncoveredSet:
        return UncoveredSet(self.directed, self.n, (self.pair_list[p] for p in self.uncovered))

    def edge_count(self, v: int) -> int:
        return self._edges[v]

    def nonisolated_count(self, v: int) -> int:
        return self._noniso[v]

    def density(self, v: int) -> Fraction:
        if self._edges[v] == 0:
            raise EmptyCenterGraphError(f"center graph of {v} has no edges")
        return Fraction(self._edges[v], self._noniso[v])

    def profile_key(self, v: int) -> tuple[int, ...]:
        return tuple(reversed(self._lvl_counts[v]))

    def max_uncovered_level(self) -> int | float:
        for lvl in range(self.top_level, -1, -1):
            if self._global_lvl[lvl]:
                return lvl
        return NEG_INF_LEVEL

    def receivers(self, v: int) -> tuple[tuple[int, ...], ...]:
        """Non-isolated vertices of G_v per side: (tails, heads) or a single tuple."""
        if self.directed:
            tails = tuple(u for u in range(self.n) if self._deg_t[v][u])
            heads = tuple(w for w in range(self.n) if self._deg_h[v][w])
            return tails, heads
        return (tuple(u for u in range(self.n) if self._deg[v][u]),)

    def pairs_through(self, v: int) -> list[int]:
        paths = self.pair_path
        return sorted(pid for pid in self.uncovered if v in paths[pid])

    def center_graph(self, v: int) -> CenterGraph:
        arcs = tuple(sorted(self.pair_list[pid] for pid in self.pairs_through(v)))
        return CenterGraph(v, self.directed, arcs)

    def cover_pairs(self, pids) -> None:
        for pid in pids:
            self.uncovered.remove(pid)
            u, w = self.pair_list[pid]
            lvl = self.pair_lvl[pid]
            if lvl >= 0:
                self._global_lvl[lvl] -= 1
            for x in self.pair_path[pid]:
                self._edges[x] -= 1
                if lvl >= 0:
                    self._lvl_counts[x][lvl] -= 1
                if self.directed:
                    rt, rh = self._deg_t[x], self._deg_h[x]
                    rt[u] -= 1
                    if rt[u] == 0:
                        self._noniso[x] -= 1
                    rh[w] -= 1
                    if rh[w] == 0:
                        self._noniso[x] -= 1
                else:
                    row = self._deg[x]
                    row[u] -= 1
                    if row[u] == 0:
                        self._noniso[x] -= 1
                    if u != w:
                        row[w] -= 1
                        if row[w] == 0:
                            self._noniso[x] -= 1

    def cover_center(self, v: int) -> list[int]:
        """Cover every uncovered pair with a shortest path through v; returns their ids."""
        pids = self.pairs_through(v)
        self.cover_pairs(pids)
        return pids
