# This module is part of levyzoom, a toolkit for the small-time scaling of Lévy processes.
# Copyright (C) 2026 The levyzoom developers.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.
import math
import os
import unittest
import numpy as np
from scipy import stats
from src.errors import DegenerateFitError, InvalidParameterError, NoLimitError, UnsupportedCase
from src.estimate import (
	EstimateReport, LDPWindow, TauFit, empirical_moment, fit_tau0, gaussian_abs_moment, gaussian_tail_compare, ldp_probability,
	lemma1_asymptotic, lemma1_check, lemma2_asymptotic, lemma2_check, stable_abs_moment, toy_moment_exact, z_concentration,
	z_rate_samples
)
from src.jumps import DiscreteJumps, GaussianJumps
from src.measure import CompoundPoisson, StableLike, ZeroMeasure
from src.scaling import theoretical_tau0
from src.schema import REPORT_SCHEMA, jsonsafe, validate
from src.simulate import SimConfig, ToyModelParams, batch_toy, stable_draws, stream
from src.triplet import LevyTriplet, load_triplet

INF = float("inf")
FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "fixtures")


def fixture(name):
	return load_triplet(os.path.join(FIXTURES, name))


class TestClosedForms(unittest.TestCase):
	def test_toy_moment(self):
		self.assertAlmostEqual(toy_moment_exact(ToyModelParams(1.0, 100), 2.0), 0.010099, delta=1e-15)
		self.assertAlmostEqual(toy_moment_exact(ToyModelParams(1.0, 100), 0.0), 1.0, delta=1e-15)
		self.assertAlmostEqual(toy_moment_exact(ToyModelParams(2.0, 4), 2.0), 0.4375, delta=1e-15)

	def test_gaussian_tail(self):
		comparison = gaussian_tail_compare(1.0, 10000, 0.25)
		self.assertFalse(comparison.underflow)
		self.assertAlmostEqual(comparison.asymptotic / comparison.exact, 1.0, delta=0.02, msg="Mills ratio at z = 10")

		comparison = gaussian_tail_compare(2.0, 100, 0.1)
		self.assertAlmostEqual(comparison.exact, 0.2141, delta=5e-4)
		self.assertAlmostEqual(comparison.exact, stats.norm.sf(100 ** 0.1 / 2.0), delta=1e-15)

		comparison = gaussian_tail_compare(1.0, 10000, 1.0)
		self.assertTrue(comparison.underflow)
		self.assertEqual(comparison.exact, 0.0)

		self.assertRaises(InvalidParameterError, gaussian_tail_compare, 0.0, 100, 0.1)
		self.assertRaises(InvalidParameterError, gaussian_tail_compare, 1.0, 1, 0.1)
		self.assertRaises(InvalidParameterError, gaussian_tail_compare, 1.0, 100, 0.0)

	def test_gaussian_abs_moment(self):
		self.assertAlmostEqual(gaussian_abs_moment(1.0, 1.0), math.sqrt(2.0 / math.pi), delta=1e-15)
		self.assertAlmostEqual(gaussian_abs_moment(3.0, 2.0), 9.0, delta=1e-12)

	def test_stable_abs_moment(self):
		self.assertAlmostEqual(stable_abs_moment(1.0, 1.0, 0.0, 0.5), math.sqrt(2.0), delta=1e-12)
		self.assertAlmostEqual(
			stable_abs_moment(2.0, 1.0, 0.0, 1.0), gaussian_abs_moment(math.sqrt(2.0), 1.0), delta=1e-12,
			msg="S_2(1) is N(0, 2)"
		)
		self.assertRaises(InvalidParameterError, stable_abs_moment, 1.5, 1.0, 0.0, 1.5)
		self.assertRaises(UnsupportedCase, stable_abs_moment, 1.0, 1.0, 0.5, 0.5)

	def test_stable_abs_moment_of_skewed_draws(self):
		N = 20000
		values = np.abs(stable_draws(stream(1, 0), 1.5, 1.0, 0.6, N)) ** 0.5
		self.assertAlmostEqual(values.mean(), stable_abs_moment(1.5, 1.0, 0.6, 0.5), delta=4.0 * values.std() / math.sqrt(N))


class TestToyModelOracle(unittest.TestCase):
	GRID = [(alpha, n, q) for alpha in [0.5, 1.0, 2.0] for n in [100, 1000, 10000] for q in [0.5, alpha, 2.0 * alpha]]

	def test_exact_moments(self):
		for alpha, n, q in self.GRID:
			atoms = [(n ** (-1.0 / alpha), 1.0 - 1.0 / n), (1.0, 1.0 / n)]
			direct = math.fsum(p * value ** q for value, p in atoms)
			self.assertAlmostEqual(
				toy_moment_exact(ToyModelParams(alpha, n), q) / direct, 1.0, delta=1e-12, msg="alpha={} n={} q={}".format(alpha, n, q)
			)

	def test_simulated_moments(self):
		N = 10 ** 6
		for i, (alpha, n, q) in enumerate(self.GRID):
			params = ToyModelParams(alpha, n)
			values = batch_toy(params, N, SimConfig(seed=100 + i)) ** q
			self.assertAlmostEqual(
				values.mean(), toy_moment_exact(params, q), delta=4.0 * values.std() / math.sqrt(N),
				msg="alpha={} n={} q={}".format(alpha, n, q)
			)

	def test_scaling_function(self):
		# Exact log-moments over n = 2^4..2^20 fall with slope -q/alpha below the kink and -1 above it.
		n_grid = [2 ** k for k in range(4, 21)]
		for alpha, _, q in self.GRID:
			moments = [math.log(toy_moment_exact(ToyModelParams(alpha, n), q)) for n in n_grid]
			fit = stats.linregress([math.log(n) for n in n_grid], moments)
			self.assertAlmostEqual(fit.slope, max(-q / alpha, -1.0), delta=0.02, msg="alpha={} q={}".format(alpha, q))


class TestReports(unittest.TestCase):
	def test_validation(self):
		report = EstimateReport(0.5, 0.01, 100, 7, {"q":1.0})
		validate(jsonsafe(report.todict()), REPORT_SCHEMA)
		self.assertRaises(InvalidParameterError, EstimateReport, 0.5, -0.01, 100, 7)
		self.assertRaises(InvalidParameterError, EstimateReport, 0.5, 0.01, 0, 7)

	def test_tau_fit(self):
		self.assertRaises(InvalidParameterError, TauFit, 1.0, -0.5, 0.0, 1.0, 0.0, [(16, 0.0, 0.1), (32, 0.0, 0.1)])
		self.assertRaises(InvalidParameterError, TauFit, 1.0, -0.5, 0.0, 1.0, 0.0, [(16, 0.0, 0.1), (64, 0.0, 0.1), (32, 0.0, 0.1)])

	def test_window(self):
		window = LDPWindow(-1.0, 0.5)
		np.testing.assert_array_equal(window.contains(np.array([-1.0, 0.0, 0.5, 0.7])), [False, True, False, False])
		self.assertRaises(InvalidParameterError, LDPWindow, 1.0, 1.0)


class TestMoments(unittest.TestCase):
	def test_empirical_moment(self):
		report = empirical_moment(fixture("bm.json"), 2.0, 0.25, 20000, SimConfig(seed=2))
		self.assertAlmostEqual(report.estimate, 0.25, delta=4.0 * report.std_error)
		self.assertEqual(report.n_samples, 20000)
		self.assertEqual(report.seed, 2)
		self.assertEqual(report.meta, {"q":2.0, "dt":0.25})

		self.assertRaises(InvalidParameterError, empirical_moment, fixture("bm.json"), 0.0, 0.25, 1000)
		self.assertRaises(InvalidParameterError, empirical_moment, fixture("bm.json"), 1.0, 0.25, 10)

	def test_fit_brownian_motion(self):
		fit = fit_tau0(fixture("bm.json"), 1.0, [2 ** k for k in range(6, 13)], 10000, SimConfig(seed=1))
		self.assertAlmostEqual(fit.slope, -0.5, delta=0.02)
		self.assertGreater(fit.r_squared, 0.99)
		self.assertEqual([n for n, _, _ in fit.grid], [2 ** k for k in range(6, 13)])

	def test_fit_stable(self):
		fit = fit_tau0(fixture("stable.yaml"), 0.5, [2 ** k for k in range(6, 13)], 10000, SimConfig(seed=2))
		self.assertAlmostEqual(fit.slope, -1.0 / 3.0, delta=0.02)
		self.assertEqual(fit.todict()["q"], 0.5)

	def test_fit_brownian_motion_with_jumps(self):
		triplet = fixture("bm_cp.json")
		tau0 = theoretical_tau0(triplet)
		n_grid = [2 ** k for k in range(8, 15)]
		for q in [0.5, 1.0]:
			fit = fit_tau0(triplet, q, n_grid, 20000, SimConfig(seed=20))
			self.assertAlmostEqual(fit.slope, tau0(q), delta=0.05, msg="q={}".format(q))

		# Above 2 the moments come from the rare jumps, so every point needs N >> n.
		# The Gaussian part adds a finite-grid bias of about -0.03 at q=3 and -0.015 at q=4.
		n_grid = [2 ** k for k in range(7, 14)]
		for q, tolerance in [(3.0, 0.08), (4.0, 0.05)]:
			fit = fit_tau0(triplet, q, n_grid, 2 * 10 ** 6, SimConfig(seed=21))
			self.assertAlmostEqual(fit.slope, tau0(q), delta=tolerance, msg="q={}".format(q))
			self.assertEqual(tau0(q), -1.0)

	def test_fit_tempered(self):
		triplet = fixture("tempered.json")
		tau0 = theoretical_tau0(triplet)

		fit = fit_tau0(triplet, 0.4, [2 ** k for k in range(6, 13)], 20000, SimConfig(seed=22))
		self.assertAlmostEqual(tau0(0.4), -0.5, delta=1e-12)
		self.assertAlmostEqual(fit.slope, tau0(0.4), delta=0.05)

		# A coarse cutoff keeps the second moment exact, the compensating Gaussian carries the small jumps.
		config = SimConfig(seed=23, truncation_delta=0.05, relative_cutoff=None)
		fit = fit_tau0(triplet, 2.0, [2 ** k for k in range(4, 11)], 2 * 10 ** 5, config)
		self.assertEqual(tau0(2.0), -1.0)
		self.assertAlmostEqual(fit.slope, tau0(2.0), delta=0.05)

	def test_fit_warns_near_the_kink(self):
		with self.assertLogs("src.estimate", "WARNING") as logs:
			fit_tau0(fixture("bm_cp.json"), 1.95, [16, 32, 64], 200)
		self.assertTrue(any("kink" in line for line in logs.output))

	def test_fit_of_a_process_that_stays_at_zero(self):
		triplet = LevyTriplet(1e-9, 0.0, CompoundPoisson(1e-9, DiscreteJumps([(1.0, 1.0)])))
		self.assertRaises(DegenerateFitError, fit_tau0, triplet, 1.0, [16, 32, 64], 200)


class TestMomentAsymptotics(unittest.TestCase):
	def assertConverged(self, rows, slack=0.0):
		for row in rows:
			self.assertAlmostEqual(
				row.scaled, row.target, delta=4.0 * row.std_error + slack, msg="n={} scaled={} target={}".format(row.n, row.scaled, row.target)
			)

	def test_lemma1_brownian_motion(self):
		asymptotic = lemma1_asymptotic(fixture("bm.json"), 1.0)
		self.assertEqual(asymptotic.exponent, 0.5)
		self.assertAlmostEqual(asymptotic.constant, math.sqrt(2.0 / math.pi), delta=1e-12)
		self.assertConverged(lemma1_check(fixture("bm.json"), 1.0, n_grid=[16, 256], N=20000, config=SimConfig(seed=3)))

	def test_lemma1_tempered(self):
		asymptotic = lemma1_asymptotic(fixture("tempered.json"), 0.3)
		self.assertAlmostEqual(asymptotic.exponent, 0.375, delta=1e-12)
		rows = lemma1_check(fixture("tempered.json"), 0.3, n_grid=[4096], N=20000, config=SimConfig(seed=4))
		self.assertConverged(rows, 0.03 * asymptotic.constant)

	def test_lemma1_cauchy(self):
		asymptotic = lemma1_asymptotic(LevyTriplet(0.0, 0.0, StableLike(1.0, 1.0, 1.0)), 0.5)
		self.assertAlmostEqual(asymptotic.exponent, 0.5, delta=1e-12)
		self.assertAlmostEqual(asymptotic.constant, math.sqrt(2.0 * math.pi), delta=1e-3, msg="E|C|^(1/2) for a Cauchy law of scale pi")

	def test_lemma1_drift(self):
		asymptotic = lemma1_asymptotic(fixture("drift.json"), 0.5, t_fixed=2.0)
		self.assertEqual(asymptotic.exponent, 0.5)
		self.assertAlmostEqual(asymptotic.constant, 2.0, delta=1e-12)

	def test_lemma1_illegal_orders(self):
		self.assertRaises(UnsupportedCase, lemma1_asymptotic, fixture("stable.yaml"), 1.5)
		self.assertRaises(UnsupportedCase, lemma1_asymptotic, fixture("bm.json"), 0.0)
		triplet = LevyTriplet(0.0, 0.0, CompoundPoisson(1.0, DiscreteJumps([(-2.0, 0.5), (2.0, 0.5)])))
		self.assertRaises(NoLimitError, lemma1_asymptotic, triplet, 1.0)

	def test_lemma2_pure_jumps_above_one(self):
		triplet = LevyTriplet(0.0, 0.0, CompoundPoisson(1.0, GaussianJumps(0.0, 1.0)))
		asymptotic = lemma2_asymptotic(triplet, 2.0)
		self.assertEqual((asymptotic.exponent, asymptotic.constant), (1.0, 1.0))
		self.assertConverged(lemma2_check(triplet, 2.0, n_grid=[64], N=20000, config=SimConfig(seed=5)))

	def test_lemma2_pure_jumps_below_one(self):
		triplet = LevyTriplet(0.0, 0.0, CompoundPoisson(1.0, DiscreteJumps([(-2.0, 0.5), (2.0, 0.5)])))
		asymptotic = lemma2_asymptotic(triplet, 0.5)
		self.assertEqual(asymptotic.exponent, 1.0)
		self.assertAlmostEqual(asymptotic.constant, math.sqrt(2.0), delta=1e-12)
		self.assertConverged(lemma2_check(triplet, 0.5, n_grid=[64], N=20000, config=SimConfig(seed=6)), 0.03)

	def test_lemma2_drift_below_one(self):
		triplet = fixture("drift.json")
		asymptotic = lemma2_asymptotic(triplet, 0.5)
		self.assertEqual(asymptotic.exponent, 0.5)
		self.assertAlmostEqual(asymptotic.constant, math.sqrt(2.0), delta=1e-12)
		self.assertConverged(lemma2_check(triplet, 0.5, n_grid=[4096], N=20000, config=SimConfig(seed=7)), 0.02)
		self.assertRaises(UnsupportedCase, lemma2_asymptotic, triplet, 1.0)

	def test_lemma2_gaussian_part(self):
		self.assertConverged(lemma2_check(fixture("bm_cp.json"), 1.0, n_grid=[4096], N=20000, config=SimConfig(seed=8)), 0.03)

		triplet = LevyTriplet(0.0, 1.0, CompoundPoisson(1.0, DiscreteJumps([(2.0, 1.0)])))
		asymptotic = lemma2_asymptotic(triplet, 2.0)
		self.assertEqual((asymptotic.exponent, asymptotic.constant), (1.0, 5.0))
		self.assertConverged(lemma2_check(triplet, 2.0, n_grid=[64], N=20000, config=SimConfig(seed=9)), 0.1)

		asymptotic = lemma2_asymptotic(triplet, 3.0)
		self.assertEqual((asymptotic.exponent, asymptotic.constant), (1.0, 8.0))

	def test_lemma2_at_the_reference_level(self):
		N, n_grid = 10 ** 6, [2 ** 12]
		gaussian = LevyTriplet(0.0, 1.0, ZeroMeasure())
		atoms = LevyTriplet(0.0, 0.0, CompoundPoisson(1.0, DiscreteJumps([(-2.0, 0.5), (2.0, 0.5)])))
		mixed = LevyTriplet(0.0, 1.0, CompoundPoisson(1.0, DiscreteJumps([(2.0, 1.0)])))
		cases = [
			(LevyTriplet(2.0, 0.0, ZeroMeasure()), 3.0, 8.0, 1e-9),
			(gaussian, 3.0, 2.0 * math.sqrt(2.0 / math.pi), 0.0),
			(LevyTriplet(0.0, 0.0, CompoundPoisson(1.0, GaussianJumps(0.0, 1.0))), 2.0, 1.0, 0.0),
			(atoms, 0.5, math.sqrt(2.0), 0.0),
			(mixed, 2.0, 5.0, 0.01),
			(mixed, 3.0, 8.0, 0.05)
		]
		for i, (triplet, q, target, slack) in enumerate(cases):
			self.assertAlmostEqual(lemma2_asymptotic(triplet, q).constant, target, delta=1e-12, msg="{} q={}".format(triplet, q))
			rows = lemma2_check(triplet, q, n_grid=n_grid, N=N, config=SimConfig(seed=30 + i))
			self.assertConverged(rows, slack)

		rows = lemma2_check(LevyTriplet(2.0, 0.0, ZeroMeasure()), 3.0, n_grid=n_grid, N=1000)
		self.assertAlmostEqual(rows[0].scaled, 8.0, delta=1e-9, msg="A pure drift is deterministic")
		self.assertLess(rows[0].std_error, 1e-9)

	def test_lemma2_illegal_orders(self):
		self.assertRaises(UnsupportedCase, lemma2_asymptotic, fixture("tempered.json"), 0.5)
		self.assertRaises(UnsupportedCase, lemma2_asymptotic, fixture("stable.yaml"), 1.6)


class TestRateSequence(unittest.TestCase):
	def test_drift(self):
		z = z_rate_samples(LevyTriplet(1.0, 0.0, ZeroMeasure()), 1024, 100)
		np.testing.assert_allclose(z, np.full(100, -1.0), atol=1e-12)

	def test_brownian_median(self):
		z = z_rate_samples(fixture("bm.json"), 1024, 20000, SimConfig(seed=10))
		self.assertAlmostEqual(np.median(z), -0.5 + math.log(stats.norm.ppf(0.75)) / math.log(1024), delta=0.01)

	def test_brownian_concentration(self):
		n = 2 ** 16
		report = z_concentration(fixture("bm.json"), n, 20000, SimConfig(seed=11))
		exact = 2.0 * (stats.norm.sf(n ** -0.1) - stats.norm.sf(n ** 0.1))
		self.assertAlmostEqual(report.estimate, exact, delta=4.0 * report.std_error)
		self.assertEqual(report.meta["H"], 0.5)

	def test_atom_at_zero(self):
		triplet = LevyTriplet(0.0, 0.0, CompoundPoisson(1.0, DiscreteJumps([(-2.0, 0.5), (2.0, 0.5)])))
		self.assertRaises(UnsupportedCase, z_rate_samples, triplet, 16, 100)
		self.assertRaises(NoLimitError, z_concentration, triplet, 16, 100)

	def test_illegal_n(self):
		self.assertRaises(InvalidParameterError, z_rate_samples, fixture("bm.json"), 1, 100)
		self.assertRaises(InvalidParameterError, z_rate_samples, fixture("bm.json"), 2.5, 100)


class TestLDPProbability(unittest.TestCase):
	def test_brownian_window(self):
		report = ldp_probability(fixture("bm.json"), 1024, LDPWindow(-0.6, -0.4), 20000, SimConfig(seed=12))
		self.assertAlmostEqual(report.estimate, report.meta["gaussian_exact"], delta=4.0 * report.std_error)
		self.assertEqual(report.meta["hits"], round(report.estimate * 20000))
		self.assertEqual(report.meta["sandwich"][1], 0.0)
		validate(jsonsafe(report.todict()), REPORT_SCHEMA)

	def test_tempered_central_window(self):
		report = ldp_probability(fixture("tempered.json"), 4096, LDPWindow(-1.35, -1.15), 20000, SimConfig(seed=13))
		self.assertGreater(report.meta["normalized_log_prob"], -0.1)
		self.assertAlmostEqual(report.meta["sandwich"][1], 0.0, delta=1e-12)
		self.assertNotIn("gaussian_exact", report.meta)

	def test_tempered_order_one_window(self):
		N = 2 * 10 ** 5
		report = ldp_probability(fixture("tempered.json"), 4096, LDPWindow(-0.1, 0.1), N, SimConfig(seed=15))
		lower, upper = report.meta["sandwich"]
		self.assertAlmostEqual(upper, -0.92, delta=1e-12, msg="Minus the rate at -0.1")
		self.assertGreater(report.meta["hits"], 10)
		normalized = report.meta["normalized_log_prob"]
		self.assertGreater(normalized, -1.05)
		self.assertLess(normalized, -0.92 + 0.05)

	def test_brownian_decay(self):
		# Windows reaching above n^-1/2 lose mass faster than any power of n.
		bm = fixture("bm.json")
		report = ldp_probability(bm, 4096, LDPWindow(-0.2, 10.0), 10 ** 5, SimConfig(seed=16))
		self.assertEqual(report.meta["hits"], 0)
		self.assertLess(report.meta["normalized_log_prob"], -3.0)
		exact = report.meta["gaussian_exact"]
		self.assertLess(math.log(exact) / math.log(4096), -3.0)
		self.assertAlmostEqual(exact / (2.0 * stats.norm.sf(4096 ** 0.3)), 1.0, delta=1e-9)

		window = LDPWindow(-0.3, 10.0)
		rates = []
		for k in [8, 12, 16, 20]:
			n = 2 ** k
			report = ldp_probability(bm, n, window, 1000, SimConfig(seed=k))
			rates.append(math.log(report.meta["gaussian_exact"]) / math.log(n))
		self.assertEqual(rates, sorted(rates, reverse=True), "The normalised log-probability keeps falling")
		self.assertLess(rates[-1], -3.0)

	def test_zero_hits(self):
		with self.assertLogs("src.estimate", "WARNING"):
			report = ldp_probability(fixture("bm.json"), 1024, LDPWindow(1.0, 2.0), 1000, SimConfig(seed=14))
		self.assertEqual(report.estimate, 0.0)
		self.assertTrue(report.meta["zero_hits"])
		self.assertAlmostEqual(report.meta["upper_bound_95"], 0.003, delta=1e-15)
		self.assertEqual(report.meta["normalized_log_prob"], -INF)
		self.assertEqual(report.meta["gaussian_exact"], 0.0)
		validate(jsonsafe(report.todict()), REPORT_SCHEMA)

	def test_illegal_n(self):
		self.assertRaises(InvalidParameterError, ldp_probability, fixture("bm.json"), 1, LDPWindow(-1.0, 0.0), 100)


if __name__ == "__main__":
	unittest.main()
