"""Code family generators: Barker, Frank, Chu, random, max-average, reference."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risbeam import (
    AngularGrid,
    ArrayGeometry,
    InvalidInputError,
    acf,
    a_min_db,
    barker,
    barker_sidelobe_ratio_db,
    chu,
    chu_best_q,
    fitness,
    frank,
    max_average,
    random_best,
    reference_code,
    u_half,
)
from risbeam.refdata import (
    BARKER_CODES,
    BARKER_SIDELOBE_RATIO_DB,
    CHU_BEST_Q,
    COMPARISON_M,
    REFERENCE_CODES,
)

PI = math.pi


class TestBarker:
    @pytest.mark.parametrize("m", sorted(BARKER_CODES))
    def test_known_lengths(self, m):
        code = barker(m)
        assert len(code) == m
        assert set(np.unique(code.phases)) <= {0.0, PI}

    def test_length_13(self):
        expected = [0, 0, 0, 0, 0, PI, PI, 0, 0, PI, 0, PI, 0]
        np.testing.assert_array_equal(barker(13).phases, expected)

    def test_alternates_where_listed(self):
        assert barker(4, alternate=True) != barker(4)
        with pytest.raises(InvalidInputError):
            barker(13, alternate=True)

    def test_unknown_length_rejected(self):
        for m in (6, 8, 12, 14):
            with pytest.raises(InvalidInputError):
                barker(m)

    @pytest.mark.parametrize("m", sorted(BARKER_SIDELOBE_RATIO_DB))
    def test_sidelobe_ratio_formula(self, m):
        assert barker_sidelobe_ratio_db(m) == pytest.approx(
            20.0 * math.log10(1.0 / m)
        )

    @pytest.mark.parametrize("m", sorted(BARKER_CODES))
    def test_acf_sidelobes_at_most_one_and_real(self, m):
        for alternate in range(len(BARKER_CODES[m])):
            seq = acf(barker(m, alternate=bool(alternate)))
            off = seq.values[seq.lags != 0]
            assert np.max(np.abs(off.real)) <= 1.0
            assert np.all(off.imag == 0.0)


class TestFrank:
    def test_m4(self):
        np.testing.assert_array_equal(frank(4).phases, [0.0, 0.0, 0.0, PI])

    def test_m16_structure(self):
        # row m, column k of the 4x4 construction carries phase 2*pi*m*k/4
        code = frank(16)
        grid = np.outer(np.arange(4), np.arange(4)) % 4
        expected = (2.0 * PI / 4.0) * grid
        np.testing.assert_allclose(code.phases, expected.ravel())

    def test_requires_perfect_square(self):
        with pytest.raises(InvalidInputError):
            frank(15)

    @pytest.mark.parametrize("m", [16, 36, 64])
    def test_acf_sidelobes_are_low(self, m):
        seq = acf(frank(m))
        off = np.abs(seq.values[seq.lags != 0])
        assert np.max(off) / m < 0.35


class TestChu:
    def test_even_length_formula(self):
        # q pi (m-1)^2 / M for even M, here M=4, q=1
        np.testing.assert_allclose(
            chu(4, 1).phases, [0.0, PI / 4.0, PI, PI / 4.0]
        )

    def test_odd_length_formula(self):
        # q pi m (m-1) / M for odd M, here M=3, q=1
        np.testing.assert_allclose(
            chu(3, 1).phases, [0.0, 2.0 * PI / 3.0, 0.0]
        )

    def test_rejects_non_coprime_q(self):
        with pytest.raises(InvalidInputError):
            chu(16, 12)

    def test_rejects_bad_q(self):
        with pytest.raises(InvalidInputError):
            chu(16, 0)

    @pytest.mark.parametrize("m", [13, 16, 36, 64])
    def test_acf_sidelobes_are_low(self, m):
        seq = acf(chu(m, CHU_BEST_Q[m]))
        off = np.abs(seq.values[seq.lags != 0])
        assert np.max(off) / m < 0.35

    @pytest.mark.parametrize("m", COMPARISON_M)
    def test_best_q_search(self, m, grid1000):
        geom = ArrayGeometry(m, 0.5, 0.0)
        q, code = chu_best_q(m, geom, grid1000)
        assert q == CHU_BEST_Q[m]
        assert code == chu(m, q)

    def test_best_q_is_argmax(self, grid1000):
        geom = ArrayGeometry(12, 0.5, 0.0)
        q, code = chu_best_q(12, geom, grid1000)
        best = fitness(code, geom, grid1000)
        for other in range(1, 12):
            if math.gcd(other, 12) == 1:
                assert fitness(chu(12, other), geom, grid1000) <= best * (1 + 1e-9)


class TestRandomBest:
    def test_deterministic_for_seed(self, geom13, grid1000):
        a = random_best(13, 50, 7, geom13, grid1000)
        b = random_best(13, 50, 7, geom13, grid1000)
        assert a == b
        assert a != random_best(13, 50, 8, geom13, grid1000)

    def test_more_trials_never_hurt(self, geom13, grid1000):
        few = random_best(13, 20, 3, geom13, grid1000)
        many = random_best(13, 200, 3, geom13, grid1000)
        # same stream prefix, so the larger search dominates
        assert fitness(many, geom13, grid1000) >= fitness(few, geom13, grid1000)

    def test_beats_most_single_draws(self, geom13, grid1000, rng):
        from risbeam import PhaseCode

        best = fitness(random_best(13, 1000, 0, geom13, grid1000), geom13, grid1000)
        draws = rng.uniform(0.0, 2.0 * PI, (200, 13))
        singles = [
            fitness(PhaseCode(row), geom13, grid1000) for row in draws
        ]
        assert best >= np.quantile(singles, 0.99)

    def test_validates_inputs(self, geom13, grid1000):
        with pytest.raises(InvalidInputError):
            random_best(13, 0, 0, geom13, grid1000)


class TestMaxAverage:
    def test_broadside_alternating(self):
        geom = ArrayGeometry(4, 0.5, 0.0)
        np.testing.assert_array_equal(
            max_average(4, geom).phases, [0.0, PI, 0.0, PI]
        )

    def test_grazing_incidence_all_zero(self):
        # at theta_h = pi/2 the ramp hits 2 pi per element and wraps away
        geom = ArrayGeometry(3, 0.5, PI / 2.0)
        np.testing.assert_array_equal(max_average(3, geom).phases, [0.0, 0.0, 0.0])

    def test_phase_offset_applied(self):
        geom = ArrayGeometry(2, 0.5, 0.0)
        code = max_average(2, geom, phi0=0.25)
        np.testing.assert_allclose(code.phases, [0.25, 0.25 + PI])

    def test_u_half_is_exactly_one(self):
        for m in (2, 5, 13, 36):
            geom = ArrayGeometry(m, 0.5, 0.0)
            assert u_half(max_average(m, geom), geom) == 1.0

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_maximizes_average_pdaf(self, seed):
        # no uniform random competitor reaches a higher closed-form average
        from risbeam import PhaseCode, avg_pdaf_closed_form

        m = 9
        geom = ArrayGeometry(m, 0.5, 0.0)
        champion = avg_pdaf_closed_form(max_average(m, geom), geom)
        rng = np.random.default_rng(seed)
        challenger = avg_pdaf_closed_form(
            PhaseCode(rng.uniform(0.0, 2.0 * PI, m)), geom
        )
        assert challenger <= champion + 1e-9


class TestReferenceCodes:
    @pytest.mark.parametrize("m", COMPARISON_M)
    def test_published_vectors(self, m):
        code = reference_code(m)
        assert len(code) == m
        np.testing.assert_array_equal(code.phases, REFERENCE_CODES[m])

    def test_unknown_length(self):
        with pytest.raises(InvalidInputError):
            reference_code(15)

    @pytest.mark.parametrize("m", COMPARISON_M)
    def test_beats_classical_families_on_grid_min(self, m, grid1000):
        geom = ArrayGeometry(m, 0.5, 0.0)
        ref = a_min_db(reference_code(m), geom, grid1000)
        rival = barker(m) if m == 13 else frank(m)
        assert ref > a_min_db(rival, geom, grid1000)
        assert ref > a_min_db(chu(m, CHU_BEST_Q[m]), geom, grid1000)
