import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emoswarm.model import (
    DecisionState,
    EmotionState,
    GridDims,
    GroupEmotionSpec,
    InitSpec,
    ModelParams,
    Population,
    dump_grid,
    fractions,
    init_population,
    neighbor_table,
    neighbors,
    sample_truncated_normal,
)

dims_st = st.builds(
    GridDims,
    width=st.integers(min_value=3, max_value=12),
    height=st.integers(min_value=3, max_value=12),
)


def make_population(dims, n_a, n_b):
    n = dims.n
    decisions = np.zeros(n, dtype=np.int8)
    decisions[:n_a] = 1
    decisions[n_a : n_a + n_b] = 2
    return Population(
        dims=dims,
        decisions=decisions,
        valence=np.zeros(n),
        arousal=np.full(n, 0.5),
        n_a=n_a,
        n_b=n_b,
    )


class TestNeighbors:
    def test_corner_wraps_around(self):
        dims = GridDims(20, 20)
        got = set(neighbors(dims, (0, 0)))
        assert got == {(19, 19), (19, 0), (19, 1), (0, 19), (0, 1), (1, 19), (1, 0), (1, 1)}

    def test_interior_cell(self):
        dims = GridDims(20, 20)
        got = set(neighbors(dims, (10, 10)))
        want = {(r, c) for r in (9, 10, 11) for c in (9, 10, 11)} - {(10, 10)}
        assert got == want

    def test_3x3_covers_whole_grid(self):
        dims = GridDims(3, 3)
        for row in range(3):
            for col in range(3):
                got = set(neighbors(dims, (row, col)))
                assert len(got) == 8
                assert got == {(r, c) for r in range(3) for c in range(3)} - {(row, col)}

    def test_out_of_range_cell_rejected(self):
        with pytest.raises(ValueError):
            neighbors(GridDims(5, 5), (5, 0))
        with pytest.raises(ValueError):
            neighbors(GridDims(5, 5), (0, -1))

    @given(dims=dims_st, data=st.data())
    def test_regularity_and_symmetry(self, dims, data):
        row = data.draw(st.integers(0, dims.height - 1))
        col = data.draw(st.integers(0, dims.width - 1))
        nbrs = neighbors(dims, (row, col))
        assert len(nbrs) == 8
        assert len(set(nbrs)) == 8
        assert (row, col) not in nbrs
        for other in nbrs:
            assert (row, col) in neighbors(dims, other)

    @given(dims=dims_st)
    def test_table_matches_coordinate_version(self, dims):
        table = neighbor_table(dims)
        assert table.shape == (dims.n, 8)
        for row in range(dims.height):
            for col in range(dims.width):
                flat = [r * dims.width + c for r, c in neighbors(dims, (row, col))]
                assert list(table[row * dims.width + col]) == flat


class TestFractions:
    def test_all_uncommitted(self):
        pop = make_population(GridDims(20, 20), 0, 0)
        assert fractions(pop) == (0.0, 0.0, 1.0)

    def test_integer_ratio(self):
        pop = make_population(GridDims(20, 20), 40, 40)
        assert fractions(pop) == (0.1, 0.1, 0.8)

    def test_consensus(self):
        pop = make_population(GridDims(20, 20), 400, 0)
        assert fractions(pop) == (1.0, 0.0, 0.0)

    @given(dims=dims_st, data=st.data())
    def test_sum_is_exactly_one(self, dims, data):
        n_a = data.draw(st.integers(0, dims.n))
        n_b = data.draw(st.integers(0, dims.n - n_a))
        phi_a, phi_b, u = fractions(make_population(dims, n_a, n_b))
        assert phi_a + phi_b + u == 1.0
        assert phi_a == n_a / dims.n
        assert phi_b == n_b / dims.n


class TestTruncatedNormal:
    def test_degenerate_sd_returns_mean(self):
        rng = np.random.default_rng(0)
        assert sample_truncated_normal(0.5, 0.0, 0.0, 1.0, rng) == 0.5

    def test_degenerate_sd_clamps_out_of_range_mean(self):
        rng = np.random.default_rng(0)
        assert sample_truncated_normal(2.0, 0.0, -1.0, 1.0, rng) == 1.0

    def test_empty_interval_rejected(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError):
            sample_truncated_normal(0.5, 0.1, 1.0, 1.0, rng)
        with pytest.raises(ValueError):
            sample_truncated_normal(0.5, -0.1, 0.0, 1.0, rng)

    def test_many_draws_match_statistical_oracle(self):
        # sd 0.05 far from both bounds: truncation is negligible, so the
        # sample mean of 10^4 draws lies within 4 standard errors of 0.5
        rng = np.random.default_rng(1234)
        draws = [sample_truncated_normal(0.5, 0.05, 0.0, 1.0, rng) for _ in range(10_000)]
        assert all(0.0 <= x <= 1.0 for x in draws)
        assert abs(np.mean(draws) - 0.5) < 0.002

    @given(
        mean=st.floats(-2, 2),
        sd=st.floats(0, 0.5),
        seed=st.integers(0, 2**31),
    )
    @settings(max_examples=50)
    def test_always_in_bounds(self, mean, sd, seed):
        rng = np.random.default_rng(seed)
        x = sample_truncated_normal(mean, sd, -1.0, 1.0, rng)
        assert -1.0 <= x <= 1.0


def symmetric_spec(sd=0.05):
    return InitSpec(0.1, 0.1, GroupEmotionSpec(0.5, 0.5, sd), GroupEmotionSpec(0.5, 0.5, sd))


class TestInitPopulation:
    def test_no_committed_agents(self):
        dims = GridDims(20, 20)
        spec = InitSpec(0.0, 0.0, GroupEmotionSpec(0.5, 0.5), GroupEmotionSpec(0.5, 0.5))
        pop = init_population(dims, spec, np.random.default_rng(0))
        assert pop.counts == (0, 0, 400)
        assert (pop.decisions == 0).all()
        assert (pop.valence == 0.0).all()
        assert (pop.arousal == 0.5).all()

    def test_rounded_counts(self):
        pop = init_population(GridDims(20, 20), symmetric_spec(), np.random.default_rng(0))
        assert pop.counts == (40, 40, 320)
        assert pop.recount() == (40, 40, 320)

    def test_fixed_emotions_with_zero_sd(self):
        dims = GridDims(20, 20)
        spec = InitSpec(
            0.1, 0.0, GroupEmotionSpec(0.8, 0.5, sd=0.0), GroupEmotionSpec(0.5, 0.5, sd=0.0)
        )
        pop = init_population(dims, spec, np.random.default_rng(3))
        committed = pop.decisions == 1
        assert committed.sum() == 40
        assert (pop.valence[committed] == 0.8).all()
        assert (pop.arousal[committed] == 0.5).all()

    def test_overfull_fractions_rejected(self):
        with pytest.raises(ValueError):
            InitSpec(0.7, 0.5, GroupEmotionSpec(0.5, 0.5), GroupEmotionSpec(0.5, 0.5))

    def test_placement_varies_with_seed(self):
        dims = GridDims(10, 10)
        a = init_population(dims, symmetric_spec(), np.random.default_rng(0))
        b = init_population(dims, symmetric_spec(), np.random.default_rng(1))
        assert (a.decisions != b.decisions).any()

    def test_swap_labels_is_exact_mirror(self):
        dims = GridDims(10, 10)
        spec = InitSpec(0.2, 0.1, GroupEmotionSpec(0.9, 0.8), GroupEmotionSpec(-0.3, 0.2))
        plain = init_population(dims, spec, np.random.default_rng(7))
        swapped = init_population(dims, spec, np.random.default_rng(7), swap_labels=True)
        assert (swapped.valence == plain.valence).all()
        assert (swapped.arousal == plain.arousal).all()
        assert ((plain.decisions == 1) == (swapped.decisions == 2)).all()
        assert ((plain.decisions == 2) == (swapped.decisions == 1)).all()
        assert (swapped.n_a, swapped.n_b) == (plain.n_b, plain.n_a)

    @given(
        dims=dims_st,
        frac_a=st.floats(0, 0.5),
        frac_b=st.floats(0, 0.5),
        seed=st.integers(0, 2**31),
    )
    @settings(max_examples=40)
    def test_counts_and_emotion_ranges(self, dims, frac_a, frac_b, seed):
        spec = InitSpec(
            frac_a, frac_b, GroupEmotionSpec(0.9, 0.9, 0.3), GroupEmotionSpec(-0.9, 0.1, 0.3)
        )
        pop = init_population(dims, spec, np.random.default_rng(seed))
        n_a, n_b, n_u = pop.recount()
        assert pop.counts == (n_a, n_b, n_u)
        assert n_a + n_b + n_u == dims.n
        assert n_a == round(frac_a * dims.n)
        assert (pop.valence >= -1.0).all() and (pop.valence <= 1.0).all()
        assert (pop.arousal >= 0.0).all() and (pop.arousal <= 1.0).all()


class TestValidation:
    def test_emotion_ranges(self):
        with pytest.raises(ValueError):
            EmotionState(1.5, 0.5)
        with pytest.raises(ValueError):
            EmotionState(0.0, -0.1)

    def test_grid_minimum(self):
        with pytest.raises(ValueError):
            GridDims(2, 5)

    def test_param_ranges(self):
        with pytest.raises(ValueError):
            ModelParams(r0=-0.1)
        with pytest.raises(ValueError):
            ModelParams(gamma_v=1.5)

    def test_group_spec_ranges(self):
        with pytest.raises(ValueError):
            GroupEmotionSpec(mean_v=2.0, mean_a=0.5)


class TestViews:
    def test_agent_snapshot(self):
        pop = make_population(GridDims(3, 3), 1, 1)
        agent = pop.agent_at(0, 0)
        assert agent.decision is DecisionState.A
        assert agent.emotion == EmotionState(0.0, 0.5)
        assert len(pop.agents) == 9

    def test_dump_grid(self):
        pop = make_population(GridDims(3, 3), 1, 1)
        assert dump_grid(pop) == "AB.\n...\n..."
