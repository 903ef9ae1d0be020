"""Deterministic builders for the adversarial instance families and the explicit
labelings that accompany them."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import Graph, all_pairs_distances
from .labeling import Labeling


class NotAVertexCoverError(ValueError):
    """The supplied vertex set does not cover every base-graph edge."""


class InfeasibleParamsError(ValueError):
    """Generator parameters admit no graph."""


@dataclass(frozen=True)
class BadGIds:
    """Vertex numbering of the layered directed family: a's, then b's, then c's row-major."""

    k: int
    a: range
    b: range
    c: range

    def c_id(self, i: int, j: int) -> int:
        """c vertex in row i (1..k+1, under b_i) and column j (1..k)."""
        return self.c.start + (i - 1) * self.k + (j - 1)


def bad_g_ids(k: int) -> BadGIds:
    return BadGIds(k, range(0, k), range(k, 2 * k + 1), range(2 * k + 1, 2 * k + 1 + k * (k + 1)))


def gen_bad_g(k: int) -> Graph:
    """Directed three-layer family where most-edges greedy picks the wrong layer.

    Complete a->b bipartite layer, then k private c's per b; all lengths 1.
    """
    if k < 2:
        raise InfeasibleParamsError("k must be at least 2")
    ids = bad_g_ids(k)
    arcs = []
    for a in ids.a:
        for b in ids.b:
            arcs.append((a, b, 1))
    for i in range(1, k + 2):
        b = ids.b[i - 1]
        for j in range(1, k + 1):
            arcs.append((b, ids.c_id(i, j), 1))
    return Graph(True, 2 * k + 1 + k * (k + 1), arcs)


@dataclass(frozen=True)
class BadWIds:
    """Vertex numbering of the density trap: a, b, c's, then d's row-major."""

    k: int
    l: int
    a: int
    b: int
    c: range
    d: range

    def d_id(self, i: int, j: int) -> int:
        """d vertex under c_i (i in 1..k), column j (1..l)."""
        return self.d.start + (i - 1) * self.l + (j - 1)


def bad_w_ids(k: int) -> BadWIds:
    l = 2 * k * k
    return BadWIds(k, l, 0, 1, range(2, 2 + k), range(2 + k, 2 + k + k * l))


def gen_bad_w(k: int) -> Graph:
    """Undirected family (l = 2k^2) where density greedy defers b too long.

    Edges a-d of length 3, b-c and c-d of length 2, so d-d detours through c.
    """
    if k < 2:
        raise InfeasibleParamsError("k must be at least 2")
    ids = bad_w_ids(k)
    arcs = []
    for i in range(1, k + 1):
        for j in range(1, ids.l + 1):
            arcs.append((ids.a, ids.d_id(i, j), 3))
    for i in range(1, k + 1):
        arcs.append((ids.b, ids.c[i - 1], 2))
    for i in range(1, k + 1):
        for j in range(1, ids.l + 1):
            arcs.append((ids.c[i - 1], ids.d_id(i, j), 2))
    return Graph(False, 2 + k + k * ids.l, arcs)


@dataclass(frozen=True)
class SeparatorIds:
    """Vertex numbering of the star-clique family: centers, leaves star-major, then s."""

    k: int
    centers: range
    leaves: range
    s: int

    def leaf_id(self, star: int, j: int) -> int:
        return self.leaves.start + star * (self.k - 1) + j


def separator_ids(k: int) -> SeparatorIds:
    return SeparatorIds(k, range(0, k), range(k, k + k * (k - 1)), k * k)


def gen_separator(k: int) -> Graph:
    """k stars with k-1 leaves each, centers forming a clique, and a vertex s
    adjacent to every leaf; unit lengths. Flat labelings beat hierarchical ones here."""
    if k < 2:
        raise InfeasibleParamsError("k must be at least 2")
    ids = separator_ids(k)
    arcs = []
    for i in range(k):
        for j in range(i + 1, k):
            arcs.append((ids.centers[i], ids.centers[j], 1))
    for star in range(k):
        for j in range(k - 1):
            arcs.append((ids.centers[star], ids.leaf_id(star, j), 1))
    for star in range(k):
        for j in range(k - 1):
            arcs.append((ids.s, ids.leaf_id(star, j), 1))
    return Graph(False, k * k + 1, arcs)


def gen_cycle4(directed: bool = False) -> Graph:
    """The 4-cycle with unit lengths; the directed version carries both arc directions."""
    edges = [(i, (i + 1) % 4, 1) for i in range(4)]
    if not directed:
        return Graph(False, 4, edges)
    arcs = edges + [(h, t, ln) for t, h, ln in edges]
    return Graph(True, 4, arcs)


def construct_c4prime_hl() -> Labeling:
    """Size-16 labeling of the directed 4-cycle, completed by the figure's
    reflection pattern; asymmetric (forward and backward lists differ)."""
    fwd = [{v: 0, 3 - v: 1} for v in range(4)]
    bwd = [{v: 0, v ^ 1: 1} for v in range(4)]
    return Labeling(True, 4, fwd, bwd)


def construct_separator_hl(k: int) -> Labeling:
    """Flat labeling of the star-clique family: s everywhere, own center per star
    vertex, and all centers mutually; total size 3k(k-1) + k(k+1) + 1."""
    if k < 2:
        raise InfeasibleParamsError("k must be at least 2")
    ids = separator_ids(k)
    n = k * k + 1
    labels: list[dict[int, int]] = [dict() for _ in range(n)]
    labels[ids.s][ids.s] = 0
    for star in range(k):
        c = ids.centers[star]
        labels[c][c] = 0
        labels[c][ids.s] = 2
        for other in range(k):
            if other != star:
                labels[c][ids.centers[other]] = 1
        for j in range(k - 1):
            leaf = ids.leaf_id(star, j)
            labels[leaf][leaf] = 0
            labels[leaf][ids.s] = 1
            labels[leaf][c] = 1
    return Labeling(False, n, labels)


def reduce_vc_undirected(g: Graph, unique_shortest_paths: bool = False) -> Graph:
    """Vertex-cover gadget graph: a 3-path per base vertex, base edges joined at
    the path heads, and a star whose root s is wired to every path head.

    With ``unique_shortest_paths`` all lengths scale by 10 and the s-head edges
    shorten to 9, which makes every shortest path unique.
    """
    if g.directed:
        raise ValueError("base graph must be undirected")
    n = g.n
    unit = 10 if unique_shortest_paths else 1
    short = 9 if unique_shortest_paths else 1
    s = 3 * n
    arcs = []
    for v in range(n):
        arcs.append((3 * v, 3 * v + 1, unit))
        arcs.append((3 * v + 1, 3 * v + 2, unit))
    for t, h, _ in sorted(g.arcs):
        u, v = min(t, h), max(t, h)
        arcs.append((3 * u, 3 * v, unit))
    for leaf in range(3 * n + 1, 6 * n + 1):
        arcs.append((s, leaf, unit))
    for v in range(n):
        arcs.append((s, 3 * v, short))
    return Graph(False, 6 * n + 1, arcs)


def _undirected_reduction_base(gp: Graph) -> tuple[int, list[tuple[int, int]]]:
    n_base = (gp.n - 1) // 6
    if gp.n != 6 * n_base + 1:
        raise ValueError("not an undirected reduction graph")
    s = 3 * n_base
    base_edges = sorted(
        (min(t, h) // 3, max(t, h) // 3)
        for t, h, _ in gp.arcs
        if t != s and h != s and t % 3 == 0 and h % 3 == 0
    )
    return n_base, base_edges


def construct_reduction_labeling_undirected(gp: Graph, vc) -> Labeling:
    """Valid labeling of an undirected reduction graph from a vertex cover.

    s and the vertex itself sit in every label, cover vertices get the
    three-hub path pattern, the others the two-hub one, and each base edge is
    crossed exactly three times by the head vertex of a covering endpoint.
    Total size: 12|V| + 1 + 3|E| + |vc|.
    """
    n_base, base_edges = _undirected_reduction_base(gp)
    vc = frozenset(int(v) for v in vc)
    if not vc <= set(range(n_base)):
        raise NotAVertexCoverError("cover contains non-base vertices")
    for u, v in base_edges:
        if u not in vc and v not in vc:
            raise NotAVertexCoverError(f"edge ({u},{v}) uncovered")
    m = all_pairs_distances(gp).matrix
    s = 3 * n_base
    labels: list[dict[int, int]] = [dict() for _ in range(gp.n)]
    for x in range(gp.n):
        labels[x][x] = 0
        labels[x][s] = int(m[x, s])
    for v in range(n_base):
        v1, v2, v3 = 3 * v, 3 * v + 1, 3 * v + 2
        if v in vc:
            labels[v2][v1] = int(m[v2, v1])
            labels[v3][v1] = int(m[v3, v1])
            labels[v3][v2] = int(m[v3, v2])
        else:
            labels[v1][v2] = int(m[v1, v2])
            labels[v3][v2] = int(m[v3, v2])
    for u, v in base_edges:
        x = u if u in vc else v
        y = v if x == u else u
        x1 = 3 * x
        for yj in (3 * y, 3 * y + 1, 3 * y + 2):
            labels[yj][x1] = int(m[yj, x1])
    return Labeling(False, gp.n, labels)


def reduce_vc_directed(g: Graph) -> Graph:
    """Directed vertex-cover gadget: root w, a two-arc chain per base vertex,
    crossed chains per base edge, and one sink vertex per base edge; unit lengths."""
    if g.directed:
        raise ValueError("base graph must be undirected")
    n = g.n
    base_edges = sorted((min(t, h), max(t, h)) for t, h, _ in g.arcs)
    v1 = lambda v: 1 + 2 * v
    v2 = lambda v: 2 + 2 * v
    arcs = []
    for v in range(n):
        arcs.append((0, v1(v), 1))
        arcs.append((v1(v), v2(v), 1))
    e_base = 2 * n + 1
    for idx, (u, v) in enumerate(base_edges):
        e = e_base + idx
        arcs.append((v1(u), v2(v), 1))
        arcs.append((v1(v), v2(u), 1))
        arcs.append((v2(u), e, 1))
        arcs.append((v2(v), e, 1))
    return Graph(True, 1 + 2 * n + len(base_edges), arcs)


def _directed_reduction_base(gp: Graph) -> tuple[int, list[tuple[int, int]]]:
    n_base = sum(1 for t, _, _ in gp.arcs if t == 0)
    e_base = 2 * n_base + 1
    edge_of: dict[int, list[int]] = {}
    for t, h, _ in gp.arcs:
        if h >= e_base:
            edge_of.setdefault(h, []).append((t - 2) // 2)
    base_edges = [tuple(sorted(edge_of[e])) for e in sorted(edge_of)]
    return n_base, base_edges


def construct_reduction_labeling_directed(gp: Graph, vc) -> Labeling:
    """Valid labeling of a directed reduction graph: one mandatory hub per vertex
    side and per arc, plus the cover vertices' second chain vertex in the root's
    forward label. Total size: 2|V'| + |A'| + |vc|."""
    n_base, base_edges = _directed_reduction_base(gp)
    vc = frozenset(int(v) for v in vc)
    if not vc <= set(range(n_base)):
        raise NotAVertexCoverError("cover contains non-base vertices")
    for u, v in base_edges:
        if u not in vc and v not in vc:
            raise NotAVertexCoverError(f"edge ({u},{v}) uncovered")
    m = all_pairs_distances(gp).matrix
    n = gp.n
    fwd: list[dict[int, int]] = [dict() for _ in range(n)]
    bwd: list[dict[int, int]] = [dict() for _ in range(n)]
    for x in range(n):
        fwd[x][x] = 0
        bwd[x][x] = 0
    e_base = 2 * n_base + 1
    for t, h, _ in gp.arcs:
        if t == 0:
            fwd[0][h] = int(m[0, h])
        elif h >= e_base:
            bwd[h][t] = int(m[t, h])
        elif t % 2 == 1 and h == t + 1:
            bwd[h][t] = int(m[t, h])
        else:
            fwd[t][h] = int(m[t, h])
    for v in sorted(vc):
        hub = 2 + 2 * v
        fwd[0][hub] = int(m[0, hub])
    return Labeling(True, n, fwd, bwd)


def gen_random(n: int, m: int, maxlen: int, seed: int) -> Graph:
    """Seeded connected undirected graph: random attachment tree plus sampled
    extra edges, lengths uniform in 1..maxlen."""
    if n < 1:
        raise InfeasibleParamsError("n must be at least 1")
    if maxlen < 1:
        raise InfeasibleParamsError("maxlen must be at least 1")
    if m < n - 1 or m > n * (n - 1) // 2:
        raise InfeasibleParamsError(f"m={m} infeasible for n={n}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    for i in range(1, n):
        edges.append((rng.randrange(i), i))
    present = {(min(a, b), max(a, b)) for a, b in edges}
    candidates = sorted(
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present
    )
    edges.extend(rng.sample(candidates, m - (n - 1)))
    arcs = [(u, v, rng.randint(1, maxlen)) for u, v in edges]
    return Graph(False, n, arcs)
