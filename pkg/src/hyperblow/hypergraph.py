"""Uniform hypergraphs, the standard builders, blow-ups and link sets.

Vertices are the integers ``1..order``. Edges are stored as sorted tuples and
the edge tuple itself is kept in lexicographic order, so two hypergraphs with
the same edge set compare (and serialize) identically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs, parameters or text input."""


Edge = tuple[int, ...]


@dataclass(frozen=True)
class UniformHypergraph:
    rank: int
    order: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.rank < 2:
            raise HypergraphError(f"rank must be >= 2, got {self.rank}")
        if self.order < self.rank:
            raise HypergraphError(f"order {self.order} is smaller than rank {self.rank}")
        canon = []
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.rank or len(set(e)) != self.rank:
                raise HypergraphError(f"edge {e} does not have {self.rank} distinct vertices")
            if e[0] < 1 or e[-1] > self.order:
                raise HypergraphError(f"edge {e} has a vertex outside 1..{self.order}")
            canon.append(e)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise HypergraphError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.order + 1)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as a 0-based ``(num_edges, rank)`` integer array."""
        arr = np.array(self.edges, dtype=np.intp).reshape(-1, self.rank)
        return arr - 1

    def incident(self, v: int) -> list[Edge]:
        return [e for e in self.edges if v in e]

    def adjacent(self, i: int, j: int) -> bool:
        return any(i in e and j in e for e in self.edges)

    def without_edge(self, edge: Iterable[int]) -> "UniformHypergraph":
        edge = tuple(sorted(edge))
        if edge not in self.edges:
            raise HypergraphError(f"{edge} is not an edge")
        return UniformHypergraph(self.rank, self.order, tuple(e for e in self.edges if e != edge))

    def relabel(self, mapping: dict[int, int] | Sequence[int]) -> "UniformHypergraph":
        """Apply a vertex bijection. A sequence maps vertex ``v`` to ``mapping[v-1]``."""
        if not isinstance(mapping, dict):
            mapping = {v: int(w) for v, w in zip(self.vertices, mapping)}
        if sorted(mapping) != list(self.vertices) or sorted(mapping.values()) != list(self.vertices):
            raise HypergraphError("relabeling is not a permutation of the vertex set")
        return UniformHypergraph(self.rank, self.order, tuple(tuple(mapping[v] for v in e) for e in self.edges))

    def __str__(self):
        return f"UniformHypergraph(r={self.rank}, n={self.order}, m={self.num_edges})"


def complete_hypergraph(t: int, r: int) -> UniformHypergraph:
    """K_t^r: all r-subsets of ``1..t``."""
    if r < 2 or r > t:
        raise HypergraphError(f"complete hypergraph needs 2 <= r <= t, got t={t}, r={r}")
    return UniformHypergraph(r, t, tuple(itertools.combinations(range(1, t + 1), r)))


@dataclass(frozen=True)
class SunflowerParams:
    """Sunflower SH(m, q, r): a kernel of r-q vertices shared by m petals of q vertices.

    Labels: kernel ``X = 1..r-q``, then the petals as consecutive blocks of q.
    """

    m: int
    q: int
    r: int

    def __post_init__(self):
        if self.m < 1:
            raise HypergraphError(f"sunflower needs m >= 1, got {self.m}")
        if not 0 < self.q < self.r:
            raise HypergraphError(f"sunflower needs 0 < q < r, got q={self.q}, r={self.r}")

    @property
    def order(self) -> int:
        return self.r + (self.m - 1) * self.q

    @property
    def kernel(self) -> tuple[int, ...]:
        return tuple(range(1, self.r - self.q + 1))

    @property
    def petals(self) -> tuple[tuple[int, ...], ...]:
        start = self.r - self.q + 1
        return tuple(tuple(range(start + l * self.q, start + (l + 1) * self.q)) for l in range(self.m))

    def hypergraph(self) -> UniformHypergraph:
        return UniformHypergraph(self.r, self.order, tuple(self.kernel + y for y in self.petals))


def sunflower(m: int, q: int, r: int) -> UniformHypergraph:
    return SunflowerParams(m, q, r).hypergraph()


def as_sunflower(G: UniformHypergraph) -> SunflowerParams | None:
    """Recover (m, q, r) if ``G`` is literally a labeled sunflower, else None."""
    m, r, t = G.num_edges, G.rank, G.order
    if m == 1:
        q = 1
    elif m > 1 and (t - r) % (m - 1) == 0:
        q = (t - r) // (m - 1)
    else:
        return None
    if not 0 < q < r:
        return None
    params = SunflowerParams(m, q, r)
    return params if params.hypergraph() == G else None


def balanced_parts(n: int, t: int) -> tuple[int, ...]:
    """Split n into t near-equal positive parts, larger parts first."""
    if t < 1 or n < t:
        raise HypergraphError(f"cannot split {n} into {t} positive parts")
    a, l = divmod(n, t)
    return (a + 1,) * l + (a,) * (t - l)


@dataclass(frozen=True)
class BlowupSpec:
    base: UniformHypergraph
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) != self.base.order:
            raise HypergraphError(f"expected {self.base.order} parts, got {len(parts)}")
        if any(p < 1 for p in parts):
            raise HypergraphError(f"all parts must be positive, got {parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)


@dataclass(frozen=True)
class VertexClassMap:
    """``classes[v-1]`` is the base vertex whose class contains blow-up vertex ``v``."""

    classes: tuple[int, ...]

    def members(self, j: int) -> list[int]:
        return [v for v, c in enumerate(self.classes, start=1) if c == j]

    def sizes(self) -> tuple[int, ...]:
        t = max(self.classes, default=0)
        return tuple(self.classes.count(j) for j in range(1, t + 1))


def blow_up(spec: BlowupSpec) -> tuple[UniformHypergraph, VertexClassMap]:
    """Build G o (n_1, ..., n_t). Class j receives the next n_j consecutive ids."""
    starts = list(itertools.accumulate(spec.parts, initial=1))
    ranges = [range(starts[j], starts[j + 1]) for j in range(len(spec.parts))]
    edges = []
    for e in spec.base.edges:
        edges.extend(itertools.product(*(ranges[j - 1] for j in e)))
    classes = tuple(j + 1 for j, nj in enumerate(spec.parts) for _ in range(nj))
    return UniformHypergraph(spec.base.rank, spec.total, tuple(edges)), VertexClassMap(classes)


def turan_hypergraph(t: int, r: int, n: int) -> UniformHypergraph:
    """T_t^r(n), the complete t-partite r-uniform hypergraph with balanced parts."""
    if n < t:
        raise HypergraphError(f"Turan hypergraph needs n >= t, got n={n}, t={t}")
    return blow_up(BlowupSpec(complete_hypergraph(t, r), balanced_parts(n, t)))[0]


def link_set(G: UniformHypergraph, i: int, S: Iterable[int] = ()) -> frozenset[Edge]:
    """Residues e - {i} over edges that contain i and miss every vertex of S."""
    S = set(S)
    if not 1 <= i <= G.order or any(not 1 <= v <= G.order for v in S):
        raise HypergraphError("vertex id out of range")
    if i in S:
        raise HypergraphError(f"vertex {i} must not belong to S")
    return frozenset(
        tuple(v for v in e if v != i) for e in G.edges if i in e and S.isdisjoint(e)
    )


def components(G: UniformHypergraph) -> list[list[int]]:
    """Vertex sets of the connected components (isolated vertices are singletons)."""
    parent = list(range(G.order + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in G.edges:
        root = find(e[0])
        for v in e[1:]:
            w = find(v)
            if w != root:
                parent[w] = root
    groups: dict[int, list[int]] = {}
    for v in G.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(G: UniformHypergraph) -> bool:
    return len(components(G)) == 1


def induced_on(G: UniformHypergraph, verts: Sequence[int]) -> tuple[UniformHypergraph, list[int]]:
    """Sub-hypergraph on ``verts`` (edges fully inside), relabeled to ``1..len(verts)``.

    Returns the new hypergraph and the list mapping new ids back to old ids.
    """
    index = {v: k for k, v in enumerate(verts, start=1)}
    edges = tuple(tuple(index[v] for v in e) for e in G.edges if all(v in index for v in e))
    return UniformHypergraph(G.rank, max(len(verts), G.rank), edges), list(verts)


# text format: "r n m" header, then one edge per line; '#' starts a comment


def format_hypergraph(G: UniformHypergraph) -> str:
    lines = [f"{G.rank} {G.order} {G.num_edges}"]
    lines.extend(" ".join(map(str, e)) for e in G.edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> UniformHypergraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise HypergraphError(f"line {lineno}: expected integers, got {raw!r}") from None
    if not rows:
        raise HypergraphError("empty hypergraph file")
    lineno, header = rows[0]
    if len(header) != 3:
        raise HypergraphError(f"line {lineno}: header must be 'r n m'")
    r, n, m = header
    body = rows[1:]
    if len(body) != m:
        raise HypergraphError(f"header announces {m} edges, found {len(body)}")
    for lineno, e in body:
        if len(e) != r:
            raise HypergraphError(f"line {lineno}: edge has {len(e)} vertices, expected {r}")
    return UniformHypergraph(r, n, tuple(tuple(e) for _, e in body))


def read_hypergraph(path: str | Path) -> UniformHypergraph:
    return parse_hypergraph(Path(path).read_text())


def write_hypergraph(G: UniformHypergraph, path: str | Path) -> None:
    Path(path).write_text(format_hypergraph(G))

