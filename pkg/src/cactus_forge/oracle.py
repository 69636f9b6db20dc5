"""Exact maximum-cactus solvers for small instances.

Plain depth-first branch and bound over a fixed candidate order.  The
bound at each node is the partial size plus the number of remaining
candidates whose edges do not clash with the partial solution; that
overcounts (it ignores component constraints and clashes among the
remaining candidates themselves) but is cheap and correct.  Results from
these solvers are the ground truth every approximation column is compared
against, so the node budget is enforced loudly: running out raises, and
the partial result rides along on the exception marked non-exhaustive.

Two candidate universes are offered: the triangular faces of a plane
graph (matching the local search's move set) and all 3-cliques of an
arbitrary graph, which needs no embedding at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .cactus import triples_form_cactus
from .errors import BudgetExceededError, CandidateGuardError, IdentityViolationError
from .plane_graph import PlaneGraph

__all__ = [
    "OracleResult",
    "exact_beta_faces",
    "exact_beta_all_triangles",
    "CANDIDATE_GUARD",
    "DEFAULT_BUDGET",
]

CANDIDATE_GUARD = 40
DEFAULT_BUDGET = 10_000_000

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: tuple[Triple, ...]
    nodes_explored: int
    exhausted: bool


def _edges_of(triple: Triple) -> tuple[tuple[int, int], ...]:
    u, v, w = triple
    return ((u, v), (u, w), (v, w))


def _search(
    candidates: Sequence[Triple],
    degree_sum: Sequence[int],
    budget: int,
) -> OracleResult:
    order = sorted(
        range(len(candidates)), key=lambda i: (-degree_sum[i], candidates[i])
    )
    triples = [candidates[i] for i in order]
    edge_lists = [_edges_of(t) for t in triples]
    total = len(triples)

    vertices = {v for t in triples for v in t}
    parent = {v: v for v in vertices}
    size = {v: 1 for v in vertices}
    trail: list[int] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
        trail.append(b)

    def undo(mark: int) -> None:
        while len(trail) > mark:
            b = trail.pop()
            a = parent[b]
            size[a] -= size[b]
            parent[b] = b

    used_edges: set[tuple[int, int]] = set()
    chosen: list[Triple] = []
    best = 0
    best_witness: tuple[Triple, ...] = ()
    nodes = 0

    def partial() -> OracleResult:
        return OracleResult(best, best_witness, nodes, exhausted=False)

    def recurse(i: int) -> None:
        nonlocal nodes, best, best_witness
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(partial())
        compatible = sum(
            1
            for j in range(i, total)
            if not any(e in used_edges for e in edge_lists[j])
        )
        if len(chosen) + compatible <= best:
            return
        if i == total:
            return
        u, v, w = triples[i]
        ru, rv, rw = find(u), find(v), find(w)
        if ru != rv and rv != rw and ru != rw:
            mark = len(trail)
            union(find(u), find(v))
            union(find(u), find(w))
            used_edges.update(edge_lists[i])
            chosen.append(triples[i])
            if len(chosen) > best:
                best = len(chosen)
                best_witness = tuple(sorted(chosen))
            recurse(i + 1)
            chosen.pop()
            used_edges.difference_update(edge_lists[i])
            undo(mark)
        recurse(i + 1)

    recurse(0)
    result = OracleResult(best, best_witness, nodes, exhausted=True)
    if len(result.witness) != result.optimum or not triples_form_cactus(result.witness):
        raise IdentityViolationError("oracle produced a witness that is not a cactus")
    return result


def _guard(count: int, allow_large: bool) -> None:
    if count > CANDIDATE_GUARD and not allow_large:
        raise CandidateGuardError(count, CANDIDATE_GUARD)


def exact_beta_faces(
    g: PlaneGraph,
    budget: int = DEFAULT_BUDGET,
    *,
    allow_large: bool = False,
) -> OracleResult:
    """Maximum cactus drawn from the triangular faces of g."""
    cands = [t.vertices for t in g.triangles]
    _guard(len(cands), allow_large)
    degs = [sum(g.degree(v) for v in t) for t in cands]
    return _search(cands, degs, budget)


def _adjacency_of(
    graph: PlaneGraph | Mapping[int, Iterable[int]] | Iterable[tuple[int, int]],
) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    if isinstance(graph, PlaneGraph):
        pairs: Iterable[tuple[int, int]] = graph.edges
    elif isinstance(graph, Mapping):
        pairs = [(u, v) for u, nbrs in graph.items() for v in nbrs]
    else:
        pairs = graph
    for u, v in pairs:
        if u == v:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def exact_beta_all_triangles(
    graph: PlaneGraph | Mapping[int, Iterable[int]] | Iterable[tuple[int, int]],
    budget: int = DEFAULT_BUDGET,
    *,
    allow_large: bool = False,
) -> OracleResult:
    """Maximum cactus over all 3-cliques of an arbitrary graph.

    Accepts a PlaneGraph, an adjacency mapping, or a bare edge list; no
    embedding is used, so non-planar graphs are fine.
    """
    adj = _adjacency_of(graph)
    cands: list[Triple] = []
    for u in sorted(adj):
        for v in sorted(adj[u]):
            if v <= u:
                continue
            for w in sorted(adj[u] & adj[v]):
                if w > v:
                    cands.append((u, v, w))
    _guard(len(cands), allow_large)
    degs = [sum(len(adj[v]) for v in t) for t in cands]
    return _search(cands, degs, budget)
