"""End-to-end pipelines and the corpus verification harness.

Two pipelines ride on the local search.  The planar-subgraph pipeline
(mps) outputs the cactus edges plus a spanning forest between cactus
components, which for a connected input is exactly n - 1 + delta edges.
The triangle pipeline (mpt) outputs the cactus itself and re-embeds it to
recount its triangular faces, confirming the count equals delta.

verify_corpus sweeps a corpus of generator specs, solving each instance
at three strengths (greedy, 1-swap, 2-swap), analyzing the 2-swap result,
and calling the exact oracle when the instance is small enough.  Rows are
computed concurrently but reduced in corpus order, and wall-clock numbers
are confined to the JSON sidecar, so the CSV is byte-identical across
runs with the same corpus and config.
"""

from __future__ import annotations

import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .analyzer import CactusReport, analyze_cactus
from .cactus import TriangularCactus, cactus_to_triples
from .errors import (
    BudgetExceededError,
    CactusForgeError,
    IdentityViolationError,
)
from .generators import GeneratorSpec, build
from .local_search import SearchConfig, greedy_initial, local_search
from .oracle import CANDIDATE_GUARD, exact_beta_faces
from .plane_graph import PlaneGraph, plane_subgraph

__all__ = [
    "MpsResult",
    "MptResult",
    "BenchRow",
    "CorpusResult",
    "CSV_COLUMNS",
    "mps_pipeline",
    "mpt_pipeline",
    "verify_corpus",
    "acceptance_corpus",
    "report_to_dict",
    "write_csv",
    "write_sidecar",
    "worker_count",
]


# ----------------------------------------------------------------------
# single-instance pipelines


@dataclass(frozen=True)
class MpsResult:
    """Planar spanning subgraph built from a cactus plus a forest.

    The subgraph keeps every cactus edge and adds, per pair of cactus
    components that some input edge joins, the lexicographically smallest
    such edge until the components are connected within each component of
    the input.  Ratios are exact fractions; ratio_vs_triangulation uses
    the 3n - 6 planar edge maximum as denominator and is None for n < 3.
    """

    edges: tuple[tuple[int, int], ...]
    cactus_triples: tuple[tuple[int, int, int], ...]
    triangle_count: int
    edge_count: int
    input_edge_count: int
    ratio_vs_input: Fraction | None
    ratio_vs_triangulation: Fraction | None
    meets_four_ninths: bool | None  # None when the input is not a triangulation


@dataclass(frozen=True)
class MptResult:
    """The cactus as a plane subgraph, with its face count recounted."""

    cactus_triples: tuple[tuple[int, int, int], ...]
    output_triangles: int
    f3_internal_input: int
    ratio: Fraction | None
    meets_one_sixth: bool | None  # None when t < 2 or f3_internal is 0


def _cactus_partition_roots(g: PlaneGraph, c: TriangularCactus) -> list[int]:
    root: list[int] = list(range(g.n))

    def find(v: int) -> int:
        while root[v] != v:
            root[v] = root[root[v]]
            v = root[v]
        return v

    for tid in c.triangle_ids:
        a, b, d = g.triangles[tid].vertices
        for u, v in ((a, b), (a, d)):
            ru, rv = find(u), find(v)
            if ru != rv:
                root[ru] = rv
    return [find(v) for v in range(g.n)]


def mps_pipeline(g: PlaneGraph, cfg: SearchConfig = SearchConfig()) -> MpsResult:
    """Cactus edges plus a lexicographically-first inter-component forest.

    Works per component of a disconnected input; the exact edge count
    n - (input components) + delta is re-checked and a mismatch raised as
    an implementation bug.
    """
    c, _ = local_search(g, cfg)
    kept: set[tuple[int, int]] = set()
    for tid in c.triangle_ids:
        kept.update(g.triangles[tid].edges)

    root = _cactus_partition_roots(g, c)

    def find(v: int) -> int:
        while root[v] != v:
            root[v] = root[root[v]]
            v = root[v]
        return v

    for u, v in sorted(g.edge_set):
        ru, rv = find(u), find(v)
        if ru != rv:
            kept.add((u, v) if u < v else (v, u))
            root[ru] = rv

    delta = len(c)
    expected = g.n - g.comp_count + delta
    if len(kept) != expected:
        raise IdentityViolationError(
            f"spanning subgraph has {len(kept)} edges, expected "
            f"n - c + delta = {g.n} - {g.comp_count} + {delta} = {expected}"
        )

    ratio_in = Fraction(len(kept), g.edge_count) if g.edge_count else None
    ratio_tri = Fraction(len(kept), 3 * g.n - 6) if g.n >= 3 else None
    is_triangulation = g.connected and g.edge_count == 3 * g.n - 6
    meets = None
    if is_triangulation and ratio_tri is not None:
        meets = ratio_tri >= Fraction(4, 9)
    return MpsResult(
        edges=tuple(sorted(kept)),
        cactus_triples=tuple(tuple(t) for t in cactus_to_triples(c)),
        triangle_count=delta,
        edge_count=len(kept),
        input_edge_count=g.edge_count,
        ratio_vs_input=ratio_in,
        ratio_vs_triangulation=ratio_tri,
        meets_four_ninths=meets,
    )


def mpt_pipeline(g: PlaneGraph, cfg: SearchConfig = SearchConfig()) -> MptResult:
    """Solve, then re-embed the cactus alone and recount its triangles.

    Every cactus triangle bounds an empty face of the input, and deleting
    the other edges cannot disturb it, so each must survive as an intact
    face of the re-embedding (checked through the face provenance).  The
    re-embedding has no other triangular faces either, except that a lone
    triangle shows a second 3-walk on its far side; so f3_all of the
    re-embedding is delta, plus one exactly when delta == 1.  Mismatches
    are raised as implementation bugs.
    """
    c, _ = local_search(g, cfg)
    kept: set[tuple[int, int]] = set()
    for tid in c.triangle_ids:
        kept.update(g.triangles[tid].edges)
    dropped = [e for e in g.edge_set if e not in kept]
    sub, prov = plane_subgraph(g, range(g.n), dropped)
    delta = len(c)
    surviving = 0
    for tid in c.triangle_ids:
        hf = g.triangles[tid].face_id
        sf = prov.sub_of_host_face[hf]
        if prov.merged_host_faces[sf] == frozenset({hf}) and sub.faces[sf].is_triangle:
            surviving += 1
    if surviving != delta:
        raise IdentityViolationError(
            f"only {surviving} of {delta} cactus triangles survive as faces "
            f"of the re-embedded subgraph"
        )
    if sub.f3_all != delta + (1 if delta == 1 else 0):
        raise IdentityViolationError(
            f"re-embedded cactus has {sub.f3_all} triangular faces, "
            f"expected {delta + (1 if delta == 1 else 0)}"
        )
    f3 = g.f3_internal
    ratio = Fraction(delta, f3) if f3 else None
    meets = None
    if cfg.t >= 2 and f3:
        meets = 6 * delta >= f3
    return MptResult(
        cactus_triples=tuple(tuple(t) for t in cactus_to_triples(c)),
        output_triangles=delta,
        f3_internal_input=f3,
        ratio=ratio,
        meets_one_sixth=meets,
    )


# ----------------------------------------------------------------------
# corpus harness


@dataclass(frozen=True)
class BenchRow:
    """One corpus instance's numbers.

    Wall-clock fields are excluded from the CSV (see CSV_COLUMNS) so the
    CSV stays deterministic; they travel in the JSON sidecar instead.
    beta_faces is None when the oracle was skipped (too many candidates)
    or gave up (budget).  failures is empty on a clean row.
    """

    instance: str
    n: int
    edges: int
    f3_internal: int
    f3_all: int
    delta_greedy: int | None
    delta_1swap: int | None
    delta_2swap: int | None
    beta_faces: int | None
    slack_2swap: int | None  # 6 * delta_2swap - f3_internal
    ok: bool
    failures: tuple[str, ...]
    wall_solve_s: float = 0.0
    wall_analyze_s: float = 0.0
    wall_oracle_s: float = 0.0


CSV_COLUMNS = (
    "instance",
    "n",
    "edges",
    "f3_internal",
    "f3_all",
    "delta_greedy",
    "delta_1swap",
    "delta_2swap",
    "beta_faces",
    "slack_2swap",
    "ok",
    "failures",
)


@dataclass(frozen=True)
class CorpusResult:
    rows: tuple[BenchRow, ...]
    failures: tuple[tuple[str, str], ...]  # (instance label, message)
    reports: tuple[dict, ...]  # JSON-ready analyzer sidecar, corpus order
    strict_discrepancies: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def identity_failures(self) -> tuple[tuple[str, str], ...]:
        return tuple(f for f in self.failures if f[1].startswith("identity:"))


def report_to_dict(report: CactusReport) -> dict:
    """Flatten a CactusReport into JSON-serializable plumbing."""
    comps = []
    for r in report.components:
        comps.append(
            {
                "vertices": list(r.vertices),
                "p": r.cactus_count,
                "q": r.anchored_count,
                "triangle_types": list(r.cactus_type_counts),
                "chord_types": list(r.chord_type_counts),
                "outer": {
                    "len": r.outer_len,
                    "occupied": r.outer_occupied,
                    "free": r.outer_free,
                },
                "all_heavy": r.all_heavy,
                "verified_optimal": r.verified_optimal,
                "eq_residual_half": r.eq_residual_half,
                "super_faces": [
                    {
                        "is_outer": f.is_outer,
                        "boundary_len": f.boundary_len,
                        "occupied": f.occupied,
                        "free": f.free,
                        "survive": f.survive,
                        "gain_half": f.gain_half,
                        "label": list(f.label) if f.label is not None else None,
                        "floor_half": f.floor_half,
                        "gain_ok": f.gain_ok,
                    }
                    for f in r.super_faces
                ],
                "verdicts": [
                    {
                        "name": v.name,
                        "ok": v.ok,
                        "required": v.required,
                        "detail": v.detail,
                    }
                    for v in r.verdicts
                ],
                "notes": list(r.notes),
            }
        )
    return {
        "maximal": report.maximal,
        "verified_optimal": report.verified_optimal,
        "ok": report.ok,
        "singletons": report.singleton_count,
        "anchored_total": report.anchored_total,
        "triangular_faces": report.triangular_faces,
        "verdicts": [
            {"name": v.name, "ok": v.ok, "required": v.required, "detail": v.detail}
            for v in report.verdicts
        ],
        "components": comps,
    }


def _strict_misses(label: str, report: CactusReport) -> list[str]:
    out = []
    for i, r in enumerate(report.components):
        for v in r.verdicts:
            if v.name == "strict-coverage-bound" and not v.ok and not v.required:
                out.append(f"{label}[component {i}]: {v.detail}")
    return out


def _bench_one(spec: GeneratorSpec, cfg: SearchConfig) -> tuple[BenchRow, dict]:
    """Solve one instance at all three strengths and grade the result.

    Never raises: every error becomes a failure string on the row, so a
    broken instance cannot take down the sweep.
    """
    label = spec.label()
    failures: list[str] = []
    sidecar: dict = {"instance": label}
    try:
        g = build(spec)
    except CactusForgeError as exc:
        row = BenchRow(label, 0, 0, 0, 0, None, None, None, None, None,
                       False, (f"generate: {exc}",))
        return row, sidecar

    d_greedy = d1 = d2 = None
    beta = None
    slack = None
    t_solve = t_analyze = t_oracle = 0.0
    try:
        start = time.perf_counter()
        d_greedy = len(greedy_initial(g, cfg.seed))
        c1, _ = local_search(g, SearchConfig(t=1, seed=cfg.seed, pivot=cfg.pivot))
        d1 = len(c1)
        c2, _ = local_search(g, SearchConfig(t=2, seed=cfg.seed, pivot=cfg.pivot))
        d2 = len(c2)
        t_solve = time.perf_counter() - start

        slack = 6 * d2 - g.f3_internal
        if slack < 0:
            failures.append(f"main-bound: 6*{d2} < f3_internal {g.f3_internal}")

        start = time.perf_counter()
        report = analyze_cactus(g, c2)
        t_analyze = time.perf_counter() - start
        sidecar.update(report_to_dict(report))
        sidecar["strict_discrepancies"] = _strict_misses(label, report)
        if not report.maximal:
            failures.append("analyzer: 2-swap result is not maximal")
        if not report.verified_optimal:
            failures.append("analyzer: 2-swap result fails the verifier")
        for v in report.failed():
            if v.required:
                failures.append(f"verdict {v.name}: {v.detail}")

        if g.f3_all <= CANDIDATE_GUARD:
            start = time.perf_counter()
            try:
                res = exact_beta_faces(g)
                if res.exhausted:
                    beta = res.optimum
                    if d2 > beta:
                        failures.append(f"oracle: delta_2swap {d2} > beta {beta}")
                    if 2 * d_greedy < beta:
                        failures.append(
                            f"oracle: 2*delta_greedy {2 * d_greedy} < beta {beta}"
                        )
            except BudgetExceededError:
                pass
            t_oracle = time.perf_counter() - start
    except IdentityViolationError as exc:
        failures.append(f"identity: {exc}")
    except CactusForgeError as exc:
        failures.append(f"error: {type(exc).__name__}: {exc}")

    sidecar["wall"] = {
        "solve_s": round(t_solve, 6),
        "analyze_s": round(t_analyze, 6),
        "oracle_s": round(t_oracle, 6),
    }
    row = BenchRow(
        instance=label,
        n=g.n,
        edges=g.edge_count,
        f3_internal=g.f3_internal,
        f3_all=g.f3_all,
        delta_greedy=d_greedy,
        delta_1swap=d1,
        delta_2swap=d2,
        beta_faces=beta,
        slack_2swap=slack,
        ok=not failures,
        failures=tuple(failures),
        wall_solve_s=t_solve,
        wall_analyze_s=t_analyze,
        wall_oracle_s=t_oracle,
    )
    return row, sidecar


def worker_count(requested: int | None = None) -> int:
    """Resolve worker count: argument, then CACTUS_FORGE_THREADS, then 1."""
    if requested is not None:
        return max(1, requested)
    env = os.environ.get("CACTUS_FORGE_THREADS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            raise CactusForgeError(
                f"CACTUS_FORGE_THREADS must be an integer, got {env!r}"
            ) from None
    return 1


def verify_corpus(
    corpus: Iterable[GeneratorSpec],
    cfg: SearchConfig = SearchConfig(),
    threads: int | None = None,
) -> CorpusResult:
    """Run the harness over a corpus and collect rows plus failures.

    Rows come back in corpus order no matter how many workers ran; the
    sweep never aborts on a bad row.  The strict per-component coverage
    bound is tracked as a discrepancy log, not as a failure.
    """
    specs = list(corpus)
    workers = worker_count(threads)
    pairs: list[tuple[BenchRow, dict]]
    if workers == 1 or len(specs) <= 1:
        pairs = [_bench_one(s, cfg) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = list(pool.map(_bench_one, specs, [cfg] * len(specs)))

    rows = tuple(row for row, _ in pairs)
    reports = tuple(side for _, side in pairs)
    failures = tuple(
        (row.instance, msg) for row in rows for msg in row.failures
    )
    strict = tuple(
        miss for side in reports for miss in side.get("strict_discrepancies", ())
    )
    return CorpusResult(rows, failures, reports, strict)


def acceptance_corpus(rmp_count: int = 200) -> tuple[GeneratorSpec, ...]:
    """The default corpus: seeded triangulations plus the fixed families.

    Triangulation sizes cycle over n in [4, 64] as the seed increases, so
    any prefix of the corpus still spans small and large instances.
    """
    specs = [
        GeneratorSpec("random_maximal_planar", n=4 + (i % 61), seed=i)
        for i in range(rmp_count)
    ]
    specs.extend(GeneratorSpec("wheel", n=k) for k in range(4, 11))
    specs.extend(GeneratorSpec("fan", n=k) for k in range(4, 11))
    specs.extend(
        GeneratorSpec("platonic", name=name)
        for name in ("tetrahedron", "octahedron", "icosahedron")
    )
    specs.append(GeneratorSpec("grid_triangulation", width=3, height=3))
    specs.append(GeneratorSpec("grid_triangulation", width=4, height=4))
    return tuple(specs)


# ----------------------------------------------------------------------
# serialization


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ";".join(value)
    return str(value)


def write_csv(rows: Sequence[BenchRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_csv_cell(getattr(row, col)) for col in CSV_COLUMNS])


def write_sidecar(reports: Sequence[dict], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(list(reports), fh, indent=2)
        fh.write("\n")
