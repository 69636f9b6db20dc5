"""Triangular-cactus subgraphs over a fixed host plane graph.

A cactus here is a set of candidate triangles (triangular faces of the
host) whose edge sets are pairwise disjoint and in which every cycle is
one of the chosen triangles.  Equivalently, over the spanned vertices the
rank identity holds: spanned_vertices - spanned_components = 2k for k
triangles.  The mutable structure accepts triangles only when their three
corners sit in three distinct components, which preserves the identity by
construction; ``is_valid_cactus`` re-checks any triangle set from scratch
and serves as the independent oracle for the incremental bookkeeping.

Removal does a full rebuild of the disjoint-set state.  Swaps remove at
most two triangles on host graphs of desk scale, so simplicity wins over
a decremental connectivity structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvalidCactusError,
    TriangleNotInCactusError,
    UnknownTriangleError,
)
from .plane_graph import PlaneGraph, Triangle

__all__ = [
    "TriangularCactus",
    "SplitComponents",
    "try_add_triangle",
    "is_valid_cactus",
    "triples_form_cactus",
    "components",
    "split_at",
    "cactus_to_triples",
    "cactus_from_triples",
]


@dataclass(frozen=True)
class SplitComponents:
    """Vertex sets left after deleting one triangle's edges from its cactus.

    parts maps each corner of the split triangle to the vertex set that
    stays attached to it."""

    triangle: int
    parts: Mapping[int, frozenset[int]]


def _as_triangle(host: PlaneGraph, t: int | Triangle) -> Triangle:
    if isinstance(t, Triangle):
        tid = t.id
    else:
        tid = t
    if not isinstance(tid, int) or not 0 <= tid < len(host.triangles):
        raise UnknownTriangleError(
            f"{t!r} is not a candidate triangle of the host graph"
        )
    cand = host.triangles[tid]
    if isinstance(t, Triangle) and cand != t:
        raise UnknownTriangleError(
            f"triangle {t.vertices} does not match host candidate {tid}"
        )
    return cand


class TriangularCactus:
    """Mutable cactus state: chosen triangles plus vertex components.

    Components partition all of V(host); vertices untouched by any
    triangle are singletons.
    """

    def __init__(self, host: PlaneGraph, triangles: Iterable[int | Triangle] = ()):
        self.host = host
        self._triangles: set[int] = set()
        self._parent = list(range(host.n))
        self._size = [1] * host.n
        self.edge_owner: dict[tuple[int, int], int] = {}
        self._adj: dict[int, set[int]] = {}
        for t in triangles:
            if not self.try_add_triangle(t):
                cand = _as_triangle(host, t)
                raise InvalidCactusError(
                    f"triangle {cand.vertices} does not extend the cactus; "
                    "the triangle set is not a valid cactus"
                )

    # -- disjoint-set ---------------------------------------------------

    def _root(self, v: int) -> int:
        parent = self._parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def same_component(self, u: int, v: int) -> bool:
        return self._root(u) == self._root(v)

    def _union(self, u: int, v: int) -> None:
        ru, rv = self._root(u), self._root(v)
        if ru == rv:
            return
        if self._size[ru] < self._size[rv]:
            ru, rv = rv, ru
        self._parent[rv] = ru
        self._size[ru] += self._size[rv]

    # -- views ------------------------------------------------------------

    @property
    def triangle_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._triangles))

    @property
    def delta(self) -> int:
        """Number of triangles in the cactus."""
        return len(self._triangles)

    def __contains__(self, t: int | Triangle) -> bool:
        tid = t.id if isinstance(t, Triangle) else t
        return tid in self._triangles

    def __len__(self) -> int:
        return len(self._triangles)

    def spanned_vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    def component_of(self, v: int) -> frozenset[int]:
        root = self._root(v)
        return frozenset(
            u for u in range(self.host.n) if self._root(u) == root
        )

    def components(self) -> tuple[tuple[int, ...], ...]:
        """All components, singletons included, ordered by smallest member."""
        buckets: dict[int, list[int]] = {}
        for v in range(self.host.n):
            buckets.setdefault(self._root(v), []).append(v)
        return tuple(tuple(b) for b in sorted(buckets.values()))

    def copy(self) -> "TriangularCactus":
        dup = TriangularCactus.__new__(TriangularCactus)
        dup.host = self.host
        dup._triangles = set(self._triangles)
        dup._parent = list(self._parent)
        dup._size = list(self._size)
        dup.edge_owner = dict(self.edge_owner)
        dup._adj = {v: set(nbrs) for v, nbrs in self._adj.items()}
        return dup

    # -- mutation -----------------------------------------------------------

    def try_add_triangle(self, t: int | Triangle) -> bool:
        """Add t if its corners lie in three distinct components."""
        cand = _as_triangle(self.host, t)
        u, v, w = cand.vertices
        if (
            self._root(u) == self._root(v)
            or self._root(v) == self._root(w)
            or self._root(u) == self._root(w)
        ):
            return False
        self._triangles.add(cand.id)
        self._union(u, v)
        self._union(u, w)
        for a, b in cand.edges:
            self.edge_owner[(a, b)] = cand.id
            self._adj.setdefault(a, set()).add(b)
            self._adj.setdefault(b, set()).add(a)
        return True

    def remove_triangle(self, t: int | Triangle) -> None:
        """Drop t and rebuild the component structure from scratch."""
        cand = _as_triangle(self.host, t)
        if cand.id not in self._triangles:
            raise TriangleNotInCactusError(
                f"triangle {cand.vertices} is not in the cactus"
            )
        remaining = self._triangles - {cand.id}
        self._triangles = set()
        self._parent = list(range(self.host.n))
        self._size = [1] * self.host.n
        self.edge_owner = {}
        self._adj = {}
        for tid in sorted(remaining):
            if not self.try_add_triangle(tid):
                raise AssertionError(
                    "subset of a valid cactus failed to rebuild"
                )

    # -- splitting ---------------------------------------------------------

    def split_at(self, t: int | Triangle) -> SplitComponents:
        """Delete t's edges (keeping its corners) and report the three
        vertex sets hanging off its corners."""
        cand = _as_triangle(self.host, t)
        if cand.id not in self._triangles:
            raise TriangleNotInCactusError(
                f"triangle {cand.vertices} is not in the cactus"
            )
        dropped = set(cand.edges)
        parts: dict[int, frozenset[int]] = {}
        claimed: set[int] = set()
        for corner in cand.vertices:
            seen = {corner}
            stack = [corner]
            while stack:
                x = stack.pop()
                for y in self._adj.get(x, ()):
                    pair = (x, y) if x < y else (y, x)
                    if pair in dropped or y in seen:
                        continue
                    seen.add(y)
                    stack.append(y)
            parts[corner] = frozenset(seen)
            if claimed & seen:
                raise AssertionError("split parts overlap; cactus state corrupt")
            claimed |= seen
        if claimed != self.component_of(cand.vertices[0]):
            raise AssertionError("split parts do not cover the component")
        return SplitComponents(triangle=cand.id, parts=parts)

    def __repr__(self) -> str:
        return f"TriangularCactus(delta={self.delta}, host={self.host!r})"


# -- module-level operation spellings ------------------------------------


def try_add_triangle(c: TriangularCactus, t: int | Triangle) -> bool:
    return c.try_add_triangle(t)


def components(c: TriangularCactus, g: PlaneGraph | None = None) -> tuple[tuple[int, ...], ...]:
    if g is not None and g is not c.host:
        raise ValueError("cactus was built over a different host graph")
    return c.components()


def split_at(c: TriangularCactus, t: int | Triangle) -> SplitComponents:
    return c.split_at(t)


def triples_form_cactus(triples: Iterable[Sequence[int]]) -> bool:
    """Rank-identity check on bare vertex triples, no host graph needed.

    True iff the implied edge sets are pairwise disjoint and
    spanned_vertices - spanned_components = 2k.  Host-independent so the
    exact solvers can reuse it for non-face (even non-planar) triangles.
    """
    triples = [tuple(sorted(t)) for t in triples]
    edges: set[tuple[int, int]] = set()
    for u, v, w in triples:
        for e in ((u, v), (u, w), (v, w)):
            if e in edges:
                return False
            edges.add(e)

    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    spanned = len(parent)
    comps = len({find(x) for x in parent})
    return spanned - comps == 2 * len(triples)


def is_valid_cactus(g: PlaneGraph, tris: Iterable[int | Triangle]) -> bool:
    """Order-independent validity check straight from the definition.

    True iff the triangles' edge sets are pairwise disjoint and the rank
    identity spanned_vertices - spanned_components = 2k holds.
    """
    cands = [_as_triangle(g, t) for t in tris]
    if len({c.id for c in cands}) != len(cands):
        return False
    return triples_form_cactus([c.vertices for c in cands])


# -- serialization -------------------------------------------------------


def cactus_to_triples(c: TriangularCactus) -> list[list[int]]:
    """JSON-ready list of sorted vertex triples, sorted lexicographically."""
    return [list(c.host.triangles[tid].vertices) for tid in c.triangle_ids]


def cactus_from_triples(
    g: PlaneGraph, triples: Sequence[Sequence[int]]
) -> TriangularCactus:
    """Rebuild a cactus from vertex triples, re-validating against g."""
    by_vertices = {cand.vertices: cand.id for cand in g.triangles}
    ids = []
    for triple in triples:
        key = tuple(sorted(triple))
        if len(key) != 3 or key not in by_vertices:
            raise UnknownTriangleError(
                f"{list(triple)} is not a candidate triangle of the instance"
            )
        ids.append(by_vertices[key])
    if len(set(ids)) != len(ids):
        raise InvalidCactusError("cactus file repeats a triangle")
    return TriangularCactus(g, ids)
