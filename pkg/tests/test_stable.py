import pytest

from hypermod.cohomology import betti_table, monomial_counts
from hypermod.grca import FreeGCA
from hypermod.haefliger import CDGAPresentation
from hypermod.stable import (
    PoincareSeries,
    compare_stable,
    free_gca_series,
    grw_series,
    series_mul,
    stable_moduli_series,
)
from hypermod.variety import curve, product, projective_space, torus

from support import scaled_alpha


class TestFreeSeries:
    def test_single_odd_generator(self):
        s = free_gca_series([(3, 1)], 50)
        for d in range(51):
            assert s.coefficients[d] == (1 if d in (0, 3) else 0)

    def test_single_even_generator(self):
        s = free_gca_series([(2, 1)], 50)
        for d in range(51):
            assert s.coefficients[d] == (1 if d % 2 == 0 else 0)

    def test_two_odd_generators(self):
        s = free_gca_series([(3, 1), (5, 1)], 8)
        assert s.coefficients == (1, 0, 0, 1, 0, 1, 0, 0, 1)

    def test_even_multiplicity_two(self):
        s = free_gca_series([(2, 2)], 20)
        for m in range(11):
            assert s.coefficients[2 * m] == m + 1

    def test_degree_zero_generator_rejected(self):
        with pytest.raises(ValueError):
            free_gca_series([(0, 1)], 5)

    def test_matches_zero_differential_cdga(self):
        spec = [("t1", 2), ("t2", 2), ("o1", 3), ("o2", 5), ("e1", 4)]
        alg = FreeGCA(spec)
        cdga = CDGAPresentation(
            alg, {g.index: alg.zero() for g in alg.generators})
        series = free_gca_series([(2, 2), (3, 1), (5, 1), (4, 1)], 8)
        assert betti_table(cdga, 8).betti == series.coefficients
        assert monomial_counts(alg, 8) == list(series.coefficients)


class TestSeriesAlgebra:
    def test_validation(self):
        with pytest.raises(ValueError):
            PoincareSeries(2, (1, 0))
        with pytest.raises(ValueError):
            PoincareSeries(1, (2, 0))
        with pytest.raises(ValueError):
            PoincareSeries(1, (1, -1))

    def test_mul_commutes_and_truncates(self):
        a = free_gca_series([(2, 1)], 12)
        b = free_gca_series([(3, 2)], 9)
        ab = series_mul(a, b)
        assert ab == series_mul(b, a)
        assert ab.max_degree == 9

    def test_truncation_stability(self):
        gens = [(2, 2), (3, 1), (1, 1)]
        long = free_gca_series(gens, 40)
        short = free_gca_series(gens, 15)
        assert long.truncated(15) == short
        with pytest.raises(ValueError):
            short.truncated(16)


class TestStableSeries:
    def test_line(self):
        assert stable_moduli_series(projective_space(1), 3).coefficients \
            == (1, 0, 0, 1)

    def test_plane(self):
        assert stable_moduli_series(projective_space(2), 8).coefficients \
            == (1, 0, 0, 1, 0, 1, 0, 0, 1)

    def test_torus(self):
        assert stable_moduli_series(torus(), 5).coefficients \
            == (1, 0, 2, 1, 3, 2)

    def test_grw_equals_stable_without_odd_top_cohomology(self):
        for v in (projective_space(1), projective_space(2),
                  projective_space(3), curve(0),
                  product(projective_space(1), projective_space(1))):
            assert grw_series(v, 10) == stable_moduli_series(v, 10), v.name

    def test_grw_torus_tacks_on_degree_one_factor(self):
        stable = stable_moduli_series(torus(), 6)
        extra = free_gca_series([(1, 2)], 6)
        assert grw_series(torus(), 6) == series_mul(stable, extra)


class TestCompare:
    def test_line_with_ample_class(self):
        v = scaled_alpha(projective_space(1), 9)
        report = compare_stable(v, 9)
        assert report.max_valid_degree == 2
        assert report.rows == ((0, 1, 1, True), (1, 0, 0, True),
                               (2, 0, 0, True))
        assert report.all_equal

    def test_empty_certified_range(self):
        v = scaled_alpha(projective_space(1), 2)
        report = compare_stable(v, 2)
        assert report.rows == ()
        assert report.all_equal

    def test_refuses_nonzero_first_betti(self):
        with pytest.raises(ValueError, match="H\\^1"):
            compare_stable(scaled_alpha(torus(), 3), 1)
