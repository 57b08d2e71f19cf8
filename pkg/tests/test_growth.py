"""Ratio-method growth estimation."""

import decimal

import pytest

from oneexpr import A, AM, build_count_table, estimate_growth


def power_law_sequence(mu: int, g: str, n_max: int) -> list[int]:
    """a(n) = round(mu**n * n**(-g)) at 80-digit precision; an exactly
    known fixture for the estimator."""
    with decimal.localcontext() as ctx:
        ctx.prec = 80
        mu_d = decimal.Decimal(mu)
        g_d = decimal.Decimal(g)
        return [
            int(
                (mu_d**n / decimal.Decimal(n) ** g_d).to_integral_value(
                    rounding=decimal.ROUND_HALF_EVEN
                )
            )
            for n in range(1, n_max + 1)
        ]


class TestSyntheticRecovery:
    def test_known_power_law(self):
        # mu=3, g=3/2 exactly; the estimator must land very close by N=500
        est = estimate_growth(power_law_sequence(3, "1.5", 500))
        assert abs(est.mu_hat - 3.0) < 1e-3
        assert abs(est.g_hat - 1.5) < 1e-2

    def test_catalan_sanity(self):
        est = estimate_growth(build_count_table(A, 500).totals())
        assert abs(est.mu_hat - 4.0) < 0.02
        assert abs(est.g_hat - 1.5) < 0.05


class TestStructure:
    def test_tail_shape(self):
        est = estimate_growth(build_count_table(AM, 120).totals(), window=15)
        tail = est.tail()
        assert len(tail) == 15
        assert [n for n, _, _ in tail] == list(range(106, 121))
        assert est.window == 15

    def test_window_clipped(self):
        est = estimate_growth(list(range(1, 13)), window=1000)
        assert est.window == len(est.g)

    def test_estimates_finite(self):
        est = estimate_growth(build_count_table(AM, 200).totals())
        assert all(r > 0 for r in est.ratio.values())
        assert all(abs(v) < 100 for v in est.mu.values())

    def test_spread_shrinks_with_length(self):
        def spread(est):
            values = [mu for _, mu, _ in est.tail()]
            return max(values) - min(values)

        short = estimate_growth(build_count_table(AM, 200).totals())
        long = estimate_growth(build_count_table(AM, 1000).totals())
        assert spread(long) < spread(short)


class TestValidation:
    def test_sequence_too_short(self):
        with pytest.raises(ValueError, match="too short"):
            estimate_growth([1] * 9)

    def test_nonpositive_entry(self):
        with pytest.raises(ValueError, match="nonpositive"):
            estimate_growth([1, 2, 3, 4, 0, 6, 7, 8, 9, 10])
        with pytest.raises(ValueError, match="nonpositive"):
            estimate_growth([1, 2, 3, 4, -5, 6, 7, 8, 9, 10])

    def test_bad_window(self):
        with pytest.raises(ValueError, match="window"):
            estimate_growth(list(range(1, 20)), window=0)
