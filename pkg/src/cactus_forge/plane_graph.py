"""Plane graphs stored as rotation systems.

Every edge {u, v} is split into two darts u->v and v->u.  Each vertex
carries the counterclockwise cyclic order of its neighbors, and a single
dart designates the outer face.  Faces fall out of the orbit rule: the
successor of dart u->v along its face is the dart from v to the rotation
predecessor of u at v.  With counterclockwise rotations this walks every
bounded face counterclockwise, keeping the face interior on the left of
each dart.

A disconnected rotation system is read as components drawn side by side:
one face walk from every component joins the shared unbounded region, so
the face count obeys n - |E| + |F| = 1 + c.  Which walk joins the outer
region is a convention (the walk holding the component's smallest dart),
chosen so instances round-trip deterministically.  Induced subgraphs
override that convention with the true region merges inherited from the
host drawing, which is what face provenance records.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    AsymmetricAdjacencyError,
    BadOuterDesignatorError,
    DisconnectedError,
    EmptyVertexSetError,
    IdentityViolationError,
    InstanceFormatError,
    LoopEdgeError,
    NonPlanarEmbeddingError,
    ParallelEdgeError,
    TooFewVerticesError,
)

__all__ = [
    "Dart",
    "Face",
    "Triangle",
    "FaceProvenance",
    "PlaneGraph",
    "build_from_rotation",
    "triangular_faces",
    "induced_plane_subgraph",
    "missing_edges_to_triangulation",
    "relabeled",
    "parse_instance",
    "load_instance",
    "instance_to_dict",
    "dump_instance",
]


@dataclass(frozen=True)
class Dart:
    """One directed half of an edge.

    next_at_vertex is the dart's counterclockwise successor among the
    darts leaving the same origin.
    """

    id: int
    origin: int
    head: int
    twin: int
    next_at_vertex: int


@dataclass(frozen=True)
class Face:
    """A face of the embedding.

    boundary lists dart ids walk after walk; for ordinary faces there is a
    single walk, while the outer face of a disconnected drawing collects
    one walk per component.  length counts darts on the boundary, so a
    bridge contributes 2 to the length of its face.
    """

    id: int
    boundary: tuple[int, ...]
    walks: tuple[tuple[int, ...], ...]
    length: int
    is_outer: bool
    is_triangle: bool
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Triangle:
    """A candidate triangle: an edge triple bounding at least one triangular face.

    A standalone 3-cycle bounds two triangular faces with the same edges;
    they collapse into one candidate.  face_id is the representative face
    (the unique bounded one when there is a choice, else the smallest id).
    """

    id: int
    vertices: tuple[int, int, int]
    edges: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    face_ids: tuple[int, ...]
    face_id: int


@dataclass(frozen=True)
class FaceProvenance:
    """How faces of a host graph merge into faces of an induced subgraph.

    merged_host_faces[i] is the set of host face ids absorbed into
    subgraph face i; the sets partition the host's faces.
    sub_of_host_face is the inverse, indexed by host face id.  Vertices of
    the subgraph are relabeled 0..|S|-1 in sorted host order; the two
    vertex maps translate between the labelings.
    """

    merged_host_faces: tuple[frozenset[int], ...]
    sub_of_host_face: tuple[int, ...]
    outer_face_id: int
    to_host_vertex: tuple[int, ...]
    to_sub_vertex: Mapping[int, int]


class _Core:
    """Dart tables and face walks of a validated rotation system."""

    __slots__ = (
        "n",
        "rotations",
        "tail",
        "head",
        "twin",
        "next_at_vertex",
        "face_next",
        "dart_of",
        "walks",
        "walk_of_dart",
        "comp_of_vertex",
        "comp_count",
        "isolated_count",
    )


def _build_core(n: int, rotations: Sequence[Sequence[int]]) -> _Core:
    if n < 0:
        raise InstanceFormatError(f"vertex count must be nonnegative, got {n}")
    if len(rotations) != n:
        raise InstanceFormatError(
            f"expected {n} rotation lists, got {len(rotations)}"
        )

    dart_of: dict[tuple[int, int], int] = {}
    tail: list[int] = []
    head: list[int] = []
    for u, nbrs in enumerate(rotations):
        seen: set[int] = set()
        for v in nbrs:
            if v == u:
                raise LoopEdgeError(u)
            if not 0 <= v < n:
                raise InstanceFormatError(
                    f"vertex {u} lists neighbor {v}, outside 0..{n - 1}"
                )
            if v in seen:
                raise ParallelEdgeError(u, v)
            seen.add(v)
            dart_of[(u, v)] = len(tail)
            tail.append(u)
            head.append(v)

    dart_count = len(tail)
    twin = [0] * dart_count
    for d in range(dart_count):
        t = dart_of.get((head[d], tail[d]))
        if t is None:
            raise AsymmetricAdjacencyError(tail[d], head[d])
        twin[d] = t

    nxt = [0] * dart_count
    prv = [0] * dart_count
    for u, nbrs in enumerate(rotations):
        k = len(nbrs)
        for i, v in enumerate(nbrs):
            d = dart_of[(u, v)]
            nxt[d] = dart_of[(u, nbrs[(i + 1) % k])]
            prv[d] = dart_of[(u, nbrs[(i - 1) % k])]

    # Successor along the face: at the head of d, turn to the rotation
    # predecessor of the reverse dart.  Keeps the face on the left.
    face_next = [prv[twin[d]] for d in range(dart_count)]

    walk_of_dart = [-1] * dart_count
    walks: list[tuple[int, ...]] = []
    for d0 in range(dart_count):
        if walk_of_dart[d0] >= 0:
            continue
        walk: list[int] = []
        d = d0
        while walk_of_dart[d] < 0:
            walk_of_dart[d] = len(walks)
            walk.append(d)
            d = face_next[d]
        if d != d0:
            raise IdentityViolationError("face walk did not close at its start")
        walks.append(tuple(walk))

    comp_of_vertex = [-1] * n
    comp_count = 0
    for start in range(n):
        if comp_of_vertex[start] >= 0:
            continue
        comp_of_vertex[start] = comp_count
        stack = [start]
        while stack:
            u = stack.pop()
            for v in rotations[u]:
                if comp_of_vertex[v] < 0:
                    comp_of_vertex[v] = comp_count
                    stack.append(v)
        comp_count += 1

    isolated_count = sum(1 for nbrs in rotations if not nbrs)

    # Genus-0 check in counting form: each of the c components drawn in
    # the plane satisfies Euler's formula, and merging them side by side
    # into one drawing leaves n - |E| + W + isolated = 2c.
    edge_count = dart_count // 2
    if n - edge_count + len(walks) + isolated_count != 2 * comp_count:
        raise NonPlanarEmbeddingError(
            f"n={n}, |E|={edge_count}, walks={len(walks)}, "
            f"isolated={isolated_count}, components={comp_count}"
        )

    core = _Core()
    core.n = n
    core.rotations = tuple(tuple(nbrs) for nbrs in rotations)
    core.tail = tail
    core.head = head
    core.twin = twin
    core.next_at_vertex = nxt
    core.face_next = face_next
    core.dart_of = dart_of
    core.walks = walks
    core.walk_of_dart = walk_of_dart
    core.comp_of_vertex = comp_of_vertex
    core.comp_count = comp_count
    core.isolated_count = isolated_count
    return core


def _default_walk_groups(core: _Core, outer_walk: int) -> list[list[int]]:
    """Side-by-side grouping: the outer walk plus the first-discovered walk
    of every other component form the outer region; all remaining walks
    stand alone."""
    walk_comp = [core.comp_of_vertex[core.tail[w[0]]] for w in core.walks]
    merged = {outer_walk}
    seen = {walk_comp[outer_walk]}
    for w, comp in enumerate(walk_comp):
        if comp not in seen:
            merged.add(w)
            seen.add(comp)
    groups = [sorted(merged)]
    groups.extend([w] for w in range(len(core.walks)) if w not in merged)
    return groups


class PlaneGraph:
    """An immutable plane graph: simple graph plus combinatorial embedding.

    Construct with ``PlaneGraph(n, rotations, outer)`` where rotations are
    counterclockwise neighbor lists and ``outer`` is an ``(u, v)`` pair
    naming a dart on the outer face (``None`` only for edgeless graphs).
    All derived tables (faces, edge list, triangle candidates) are built
    eagerly and never change, so instances are safe to share.
    """

    __slots__ = (
        "n",
        "rotations",
        "dart_count",
        "edge_count",
        "tail",
        "head",
        "twin",
        "next_at_vertex",
        "face_next",
        "faces",
        "face_of_dart",
        "outer_dart",
        "outer_face_id",
        "edges",
        "edge_set",
        "comp_of_vertex",
        "comp_count",
        "_dart_of",
        "_triangles",
    )

    def __init__(
        self,
        n: int,
        rotations: Sequence[Sequence[int]],
        outer: tuple[int, int] | None = None,
        *,
        _walk_groups: list[list[int]] | None = None,
    ):
        core = _build_core(n, rotations)
        self.n = n
        self.rotations = core.rotations
        self.tail = tuple(core.tail)
        self.head = tuple(core.head)
        self.twin = tuple(core.twin)
        self.next_at_vertex = tuple(core.next_at_vertex)
        self.face_next = tuple(core.face_next)
        self._dart_of = core.dart_of
        self.dart_count = len(core.tail)
        self.edge_count = self.dart_count // 2
        self.comp_of_vertex = tuple(core.comp_of_vertex)
        self.comp_count = core.comp_count

        if self.dart_count == 0:
            if outer is not None:
                raise BadOuterDesignatorError(
                    "graph has no edges, so no dart can designate the outer face"
                )
            self.outer_dart = None
            self.outer_face_id = 0
            self.faces = (
                Face(
                    id=0,
                    boundary=(),
                    walks=(),
                    length=0,
                    is_outer=True,
                    is_triangle=False,
                    vertices=(),
                ),
            )
            self.face_of_dart = ()
        else:
            if outer is None:
                raise BadOuterDesignatorError(
                    "an outer dart [u, v] is required when the graph has edges"
                )
            try:
                ou, ov = outer
            except (TypeError, ValueError):
                raise BadOuterDesignatorError(
                    f"expected a [u, v] pair, got {outer!r}"
                ) from None
            od = core.dart_of.get((ou, ov))
            if od is None:
                raise BadOuterDesignatorError(f"{ou}->{ov} is not a dart of the graph")
            self.outer_dart = od

            outer_walk = core.walk_of_dart[od]
            if _walk_groups is None:
                groups = _default_walk_groups(core, outer_walk)
            else:
                groups = [sorted(g) for g in _walk_groups]
                covered = sorted(w for g in groups for w in g)
                if covered != list(range(len(core.walks))):
                    raise IdentityViolationError(
                        "supplied walk groups do not partition the face walks"
                    )
            groups.sort(key=lambda g: g[0])

            faces = []
            face_of_dart = [-1] * self.dart_count
            outer_face_id = -1
            for fid, walk_ids in enumerate(groups):
                boundary: list[int] = []
                for w in walk_ids:
                    boundary.extend(core.walks[w])
                for d in boundary:
                    face_of_dart[d] = fid
                verts = sorted({core.tail[d] for d in boundary})
                is_outer = outer_walk in walk_ids
                if is_outer:
                    outer_face_id = fid
                is_triangle = len(walk_ids) == 1 and len(boundary) == 3
                if is_triangle and len(verts) != 3:
                    raise IdentityViolationError(
                        "length-3 face walk without 3 distinct vertices"
                    )
                faces.append(
                    Face(
                        id=fid,
                        boundary=tuple(boundary),
                        walks=tuple(core.walks[w] for w in walk_ids),
                        length=len(boundary),
                        is_outer=is_outer,
                        is_triangle=is_triangle,
                        vertices=tuple(verts),
                    )
                )
            if outer_face_id < 0:
                raise IdentityViolationError("outer walk missing from face grouping")
            self.faces = tuple(faces)
            self.face_of_dart = tuple(face_of_dart)
            self.outer_face_id = outer_face_id

        edges = []
        for d in range(self.dart_count):
            if d < self.twin[d]:
                u, v = self.tail[d], self.head[d]
                edges.append((u, v) if u < v else (v, u))
        self.edges = tuple(edges)
        self.edge_set = frozenset(edges)
        self._triangles: tuple[Triangle, ...] | None = None

    # ------------------------------------------------------------------
    # plain accessors

    @property
    def darts(self) -> tuple[Dart, ...]:
        return tuple(
            Dart(
                id=d,
                origin=self.tail[d],
                head=self.head[d],
                twin=self.twin[d],
                next_at_vertex=self.next_at_vertex[d],
            )
            for d in range(self.dart_count)
        )

    def dart_id(self, u: int, v: int) -> int:
        """Dart id of u->v; KeyError if {u, v} is not an edge."""
        return self._dart_of[(u, v)]

    def has_dart(self, u: int, v: int) -> bool:
        return (u, v) in self._dart_of

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._dart_of

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    @property
    def outer_face(self) -> Face:
        return self.faces[self.outer_face_id]

    @property
    def connected(self) -> bool:
        return self.comp_count <= 1

    def components(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in range(self.comp_count)]
        for v in range(self.n):
            buckets[self.comp_of_vertex[v]].append(v)
        return tuple(tuple(b) for b in buckets)

    @property
    def f3_all(self) -> int:
        """Number of triangular faces, the outer face included."""
        return sum(1 for f in self.faces if f.is_triangle)

    @property
    def f3_internal(self) -> int:
        """Number of triangular faces other than the outer face."""
        return sum(1 for f in self.faces if f.is_triangle and not f.is_outer)

    @property
    def triangles(self) -> tuple[Triangle, ...]:
        if self._triangles is None:
            self._triangles = _collect_triangles(self)
        return self._triangles

    def face_at(self, u: int, v: int) -> Face:
        """The face lying to the left of the dart u->v."""
        return self.faces[self.face_of_dart[self.dart_id(u, v)]]

    def __repr__(self) -> str:
        return (
            f"PlaneGraph(n={self.n}, edges={self.edge_count}, "
            f"faces={len(self.faces)})"
        )


def build_from_rotation(
    n: int,
    adjacency: Sequence[Sequence[int]],
    outer: tuple[int, int] | None,
) -> PlaneGraph:
    """Validate a rotation system and assemble the plane graph."""
    return PlaneGraph(n, adjacency, outer)


def _collect_triangles(g: PlaneGraph) -> tuple[Triangle, ...]:
    by_edges: dict[tuple, list[int]] = {}
    for f in g.faces:
        if not f.is_triangle:
            continue
        key = tuple(
            sorted(
                tuple(sorted((g.tail[d], g.head[d]))) for d in f.boundary
            )
        )
        by_edges.setdefault(key, []).append(f.id)

    # Sorting the edge triples also sorts the vertex triples: the triple
    # (a, b), (a, c), (b, c) with a < b < c compares by (a, b, c) first.
    records = []
    for tid, key in enumerate(sorted(by_edges)):
        face_ids = tuple(sorted(by_edges[key]))
        verts = tuple(sorted({v for e in key for v in e}))
        bounded = [fid for fid in face_ids if fid != g.outer_face_id]
        face_id = bounded[0] if len(bounded) == 1 else min(face_ids)
        records.append(
            Triangle(
                id=tid,
                vertices=verts,
                edges=key,
                face_ids=face_ids,
                face_id=face_id,
            )
        )
    return tuple(records)


def triangular_faces(g: PlaneGraph) -> tuple[Triangle, ...]:
    """Candidate triangles of g, deduplicated by edge triple and ordered by
    vertex triple."""
    return g.triangles


def missing_edges_to_triangulation(g: PlaneGraph) -> int:
    """How many edges g is short of a maximal simple plane graph, 3n - 6 - |E|."""
    if g.n < 3:
        raise TooFewVerticesError(
            f"triangulation deficit needs at least 3 vertices, got {g.n}"
        )
    if not g.connected:
        raise DisconnectedError("triangulation deficit is defined for connected graphs")
    t = 3 * g.n - 6 - g.edge_count
    if t < 0:
        raise IdentityViolationError(
            f"simple plane graph with {g.edge_count} > 3n-6 edges"
        )
    return t


def plane_subgraph(
    g: PlaneGraph,
    vertices: Iterable[int],
    dropped_edges: Iterable[tuple[int, int]] = (),
) -> tuple[PlaneGraph, FaceProvenance]:
    """Subgraph on the given vertices minus dropped edges, keeping the
    inherited drawing.

    The subgraph reuses g's rotations filtered to the kept darts (vertices
    relabeled to 0..|S|-1 in sorted order).  Faces of the subgraph are the
    regions that remain after the deletions; deleting an edge merges the
    two regions it separated, so the provenance classes come from a
    union-find over g's faces.  This can disagree with the side-by-side
    default (subgraph components may be nested in the host drawing), so
    the region grouping is passed down explicitly.
    """
    sset = frozenset(vertices)
    if not sset:
        raise EmptyVertexSetError("cannot take a subgraph on the empty vertex set")
    for v in sset:
        if not 0 <= v < g.n:
            raise InstanceFormatError(f"vertex {v} is not a vertex of the host graph")
    dropped = set()
    for u, v in dropped_edges:
        e = (u, v) if u < v else (v, u)
        if not g.has_edge(u, v):
            raise InstanceFormatError(f"dropped edge {e} is not an edge of the host")
        if u not in sset or v not in sset:
            raise InstanceFormatError(
                f"dropped edge {e} must join kept vertices (it is gone already)"
            )
        dropped.add(e)

    def kept(d: int) -> bool:
        u, v = g.tail[d], g.head[d]
        if u not in sset or v not in sset:
            return False
        return ((u, v) if u < v else (v, u)) not in dropped

    to_host = tuple(sorted(sset))
    to_sub = {h: i for i, h in enumerate(to_host)}
    rotations = tuple(
        tuple(
            to_sub[v]
            for v in g.rotations[h]
            if kept(g.dart_id(h, v))
        )
        for h in to_host
    )

    parent = list(range(len(g.faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(g.dart_count):
        if d < g.twin[d] and not kept(d):
            a, b = find(g.face_of_dart[d]), find(g.face_of_dart[g.twin[d]])
            if a != b:
                parent[a] = b

    core = _build_core(len(to_host), rotations)

    if not core.tail:
        roots = {find(fid) for fid in range(len(g.faces))}
        if len(roots) != 1:
            raise IdentityViolationError(
                "edgeless subgraph left more than one host region"
            )
        sub = PlaneGraph(len(to_host), rotations, None)
        prov = FaceProvenance(
            merged_host_faces=(frozenset(range(len(g.faces))),),
            sub_of_host_face=tuple(0 for _ in g.faces),
            outer_face_id=0,
            to_host_vertex=to_host,
            to_sub_vertex=to_sub,
        )
        return sub, prov

    group_of_root: dict[int, list[int]] = {}
    for w, walk in enumerate(core.walks):
        d = walk[0]
        hd = g.dart_id(to_host[core.tail[d]], to_host[core.head[d]])
        group_of_root.setdefault(find(g.face_of_dart[hd]), []).append(w)

    outer_root = find(g.outer_face_id)
    if outer_root not in group_of_root:
        # A drawing with at least one edge always has edges on its outer
        # boundary, so the outer region must have picked up a walk.
        raise IdentityViolationError("outer region of the subgraph has no boundary walk")

    first_outer_dart = core.walks[group_of_root[outer_root][0]][0]
    outer_pair = (core.tail[first_outer_dart], core.head[first_outer_dart])
    sub = PlaneGraph(
        len(to_host),
        rotations,
        outer_pair,
        _walk_groups=list(group_of_root.values()),
    )

    root_of_sub_face: dict[int, int] = {}
    for f in sub.faces:
        d = f.boundary[0]
        hd = g.dart_id(to_host[sub.tail[d]], to_host[sub.head[d]])
        root_of_sub_face[f.id] = find(g.face_of_dart[hd])
    sub_of_root = {root: fid for fid, root in root_of_sub_face.items()}

    merged: list[set[int]] = [set() for _ in sub.faces]
    sub_of_host = []
    for hf in range(len(g.faces)):
        root = find(hf)
        fid = sub_of_root.get(root)
        if fid is None:
            raise IdentityViolationError(
                f"host face {hf} merged into a region with no subgraph walk"
            )
        merged[fid].add(hf)
        sub_of_host.append(fid)

    if g.outer_face_id not in merged[sub.outer_face_id]:
        raise IdentityViolationError("outer face provenance lost its host outer face")

    prov = FaceProvenance(
        merged_host_faces=tuple(frozenset(m) for m in merged),
        sub_of_host_face=tuple(sub_of_host),
        outer_face_id=sub.outer_face_id,
        to_host_vertex=to_host,
        to_sub_vertex=to_sub,
    )
    return sub, prov


def induced_plane_subgraph(
    g: PlaneGraph, s: Iterable[int]
) -> tuple[PlaneGraph, FaceProvenance]:
    """Restrict g to the vertex set s, keeping the inherited drawing."""
    return plane_subgraph(g, s)


def relabeled(g: PlaneGraph, perm: Sequence[int]) -> PlaneGraph:
    """Apply a vertex permutation (perm[old] = new) to the whole embedding."""
    if sorted(perm) != list(range(g.n)):
        raise InstanceFormatError("relabeling must be a permutation of the vertices")
    rotations: list[tuple[int, ...]] = [()] * g.n
    for u in range(g.n):
        rotations[perm[u]] = tuple(perm[v] for v in g.rotations[u])
    outer = None
    if g.outer_dart is not None:
        outer = (perm[g.tail[g.outer_dart]], perm[g.head[g.outer_dart]])
    return PlaneGraph(g.n, rotations, outer)


# ----------------------------------------------------------------------
# JSON instance format


def parse_instance(data: object) -> PlaneGraph:
    """Build a PlaneGraph from the JSON instance shape.

    Expected: {"n": int, "rotations": [[int, ...], ...], "outer": [u, v]}
    with counterclockwise rotations and "outer" naming the dart u->v on
    the outer face ("outer": null is accepted for edgeless graphs).
    """
    if not isinstance(data, dict):
        raise InstanceFormatError(f"instance must be a JSON object, got {type(data).__name__}")
    missing = [k for k in ("n", "rotations", "outer") if k not in data]
    if missing:
        raise InstanceFormatError(f"instance is missing keys: {', '.join(missing)}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InstanceFormatError(f'"n" must be a nonnegative integer, got {n!r}')
    rotations = data["rotations"]
    if not isinstance(rotations, list):
        raise InstanceFormatError('"rotations" must be a list of neighbor lists')
    for u, nbrs in enumerate(rotations):
        if not isinstance(nbrs, list):
            raise InstanceFormatError(f"rotation of vertex {u} must be a list")
        for v in nbrs:
            if not isinstance(v, int) or isinstance(v, bool):
                raise InstanceFormatError(
                    f"rotation of vertex {u} holds a non-integer entry {v!r}"
                )
    outer = data["outer"]
    if outer is not None:
        if (
            not isinstance(outer, (list, tuple))
            or len(outer) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in outer)
        ):
            raise InstanceFormatError(f'"outer" must be [u, v] or null, got {outer!r}')
        outer = (outer[0], outer[1])
    return PlaneGraph(n, rotations, outer)


def load_instance(path) -> PlaneGraph:
    """Read and validate a JSON instance file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"{path}: not valid JSON ({exc})") from exc
    return parse_instance(data)


def instance_to_dict(g: PlaneGraph) -> dict:
    outer = None
    if g.outer_dart is not None:
        outer = [g.tail[g.outer_dart], g.head[g.outer_dart]]
    return {
        "n": g.n,
        "rotations": [list(nbrs) for nbrs in g.rotations],
        "outer": outer,
    }


def dump_instance(g: PlaneGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(g), fh)
        fh.write("\n")
