"""Property-based invariants over the generator families.

Everything here must hold for every instance, so shrinking failures
point straight at the broken invariant rather than at a lucky seed.
"""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from cactus_forge import (
    GeneratorSpec,
    SearchConfig,
    build_instance,
    exact_beta_faces,
    greedy_initial,
    is_valid_cactus,
    local_search,
    mps_pipeline,
    mpt_pipeline,
    relabeled,
    verify_local_optimality,
)

rmp_specs = st.builds(
    lambda n, seed: GeneratorSpec("random_maximal_planar", n=n, seed=seed),
    st.integers(4, 24),
    st.integers(0, 500),
)

small_rmp_specs = st.builds(
    lambda n, seed: GeneratorSpec("random_maximal_planar", n=n, seed=seed),
    st.integers(4, 12),
    st.integers(0, 200),
)

mixed_specs = st.one_of(
    rmp_specs,
    st.builds(lambda n: GeneratorSpec("wheel", n=n), st.integers(4, 15)),
    st.builds(lambda n: GeneratorSpec("fan", n=n), st.integers(3, 15)),
    st.builds(
        lambda w, h: GeneratorSpec("grid_triangulation", width=w, height=h),
        st.integers(2, 5),
        st.integers(2, 5),
    ),
)


@settings(max_examples=40, deadline=None)
@given(mixed_specs)
def test_embedding_counts(spec):
    g = build_instance(spec)
    assert sum(len(f.vertices) for f in g.faces) == 2 * g.edge_count
    assert g.n - g.edge_count + len(g.faces) == 2  # all these families connect
    assert g.f3_internal <= g.f3_all <= len(g.faces)


@settings(max_examples=25, deadline=None)
@given(rmp_specs)
def test_generator_is_deterministic(spec):
    assert build_instance(spec).rotations == build_instance(spec).rotations


@settings(max_examples=25, deadline=None)
@given(mixed_specs)
def test_solver_reaches_a_true_local_optimum(spec):
    g = build_instance(spec)
    c, trace = local_search(g)
    assert trace.final_delta == c.delta
    assert verify_local_optimality(g, c, 2) == (True, None)


@settings(max_examples=25, deadline=None)
@given(mixed_specs)
def test_cactus_property_is_downward_closed(spec):
    g = build_instance(spec)
    c, _ = local_search(g)
    ids = list(c.triangle_ids)
    for k in range(len(ids) + 1):
        assert is_valid_cactus(g, ids[:k])
        assert is_valid_cactus(g, ids[k:])


@settings(max_examples=25, deadline=None)
@given(rmp_specs)
def test_search_strength_ordering(spec):
    g = build_instance(spec)
    greedy = greedy_initial(g).delta
    d1 = local_search(g, SearchConfig(t=1))[0].delta
    d2 = local_search(g, SearchConfig(t=2))[0].delta
    assert greedy <= d1 <= d2 <= g.f3_all
    assert 6 * d2 >= g.f3_internal  # the headline coverage bound


@settings(max_examples=20, deadline=None)
@given(small_rmp_specs)
def test_oracle_dominates_and_greedy_halves(spec):
    g = build_instance(spec)
    beta = exact_beta_faces(g).optimum
    assert local_search(g)[0].delta <= beta
    assert 2 * greedy_initial(g).delta >= beta


@settings(max_examples=20, deadline=None)
@given(rmp_specs)
def test_mps_guarantee_on_triangulations(spec):
    g = build_instance(spec)
    r = mps_pipeline(g)
    assert r.edge_count == g.n - 1 + r.triangle_count
    assert r.meets_four_ninths is True
    assert r.ratio_vs_triangulation >= Fraction(4, 9)


@settings(max_examples=20, deadline=None)
@given(mixed_specs)
def test_mpt_recount_agrees(spec):
    g = build_instance(spec)
    r = mpt_pipeline(g)
    assert r.ratio == Fraction(r.output_triangles, r.f3_internal_input)
    assert r.meets_one_sixth is True


@settings(max_examples=20, deadline=None)
@given(small_rmp_specs, st.randoms(use_true_random=False))
def test_relabeling_invariance(spec, rng):
    g = build_instance(spec)
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = relabeled(g, perm)
    assert h.edge_count == g.edge_count
    assert h.f3_internal == g.f3_internal
    assert h.f3_all == g.f3_all
    assert exact_beta_faces(h).optimum == exact_beta_faces(g).optimum
