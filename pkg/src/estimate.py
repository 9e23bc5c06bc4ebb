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
"""
Monte Carlo checks of the small-time theory: empirical moments and scaling
functions, moment asymptotics, the rate sequence log|X(1/n)| / log n and the
probabilities of its large deviations.
"""
import collections
import logging
import math
import numpy as np
from scipy import special, stats
from src.errors import DegenerateFitError, InvalidParameterError, LevyZoomError, NoLimitError, SimulationError, UnsupportedCase
from src.simulate import SimConfig, batch_sample
from src.triplet import LimitKind, bv_drift, classify_small_time_limit, stable_parameters

logger = logging.getLogger(__name__)

INF = float("inf")

DEFAULT_N_GRID = [2 ** k for k in range(4, 15)]
KINK_DISTANCE  = 0.1
MIN_SAMPLES    = 100
MIN_HITS       = 10

# One scaled moment of a moment asymptotic: n^exponent E|X(t/n)|^q against its limit.
ScaledMoment = collections.namedtuple("ScaledMoment", ["n", "scaled", "std_error", "target"])

# The statement n^exponent E|X(t/n)|^q -> constant.
MomentAsymptotic = collections.namedtuple("MomentAsymptotic", ["q", "exponent", "constant"])

TailComparison = collections.namedtuple("TailComparison", ["exact", "asymptotic", "underflow"])


class EstimateReport:
	estimate = None
	std_error = None
	n_samples = None
	seed = None
	meta = None

	def __init__(self, estimate, std_error, n_samples, seed, meta=None):
		"""__init__(estimate:float, std_error:float, n_samples:int, seed:int, meta:dict)
		Instantiates the report of a Monte Carlo estimate.
		"""
		self.estimate = float(estimate)
		self.std_error = float(std_error)
		self.n_samples = int(n_samples)
		self.seed = int(seed)
		self.meta = dict(meta or {})

		valid, message = EstimateReport.isvalid(self)
		if not valid:
			raise InvalidParameterError(message)


	def __repr__(self):
		return "EstimateReport(estimate={!r}, std_error={!r}, n_samples={}, seed={}, meta={!r})".format(
			self.estimate, self.std_error, self.n_samples, self.seed, self.meta
		)


	def todict(self):
		return {
			"estimate":self.estimate,
			"std_error":self.std_error,
			"n_samples":self.n_samples,
			"seed":self.seed,
			"meta":dict(self.meta)
		}


	@staticmethod
	def isvalid(report):
		"""isvalid(report:EstimateReport) -> (bool, string)
		Returns true if the report is valid, false otherwise.
		"""
		if not report.std_error >= 0.0:
			return (False, "Error! A standard error must be non-negative, got {}.".format(report.std_error))
		if report.n_samples < 1:
			return (False, "Error! A report requires at least one sample, got {}.".format(report.n_samples))
		return (True, None)


class TauFit:
	q = None
	slope = None
	intercept = None
	r_squared = None
	slope_std_error = None
	grid = None

	def __init__(self, q, slope, intercept, r_squared, slope_std_error, grid):
		"""__init__(q:float, slope:float, intercept:float, r_squared:float, slope_std_error:float, grid:list<tuple>)
		Instantiates the least-squares fit of log E|X(1/n)|^q on log n, whose
		slope estimates the scaling function at q. The grid holds the triples
		(n, log-moment estimate, standard error).
		"""
		self.q = q
		self.slope = slope
		self.intercept = intercept
		self.r_squared = r_squared
		self.slope_std_error = slope_std_error
		self.grid = list(grid)

		if len(self.grid) < 3:
			raise InvalidParameterError("Error! A scaling fit requires at least 3 grid points, got {}.".format(len(self.grid)))
		if any(n1 <= n0 for (n0, _, _), (n1, _, _) in zip(self.grid, self.grid[1:])):
			raise InvalidParameterError("Error! The n values of a scaling fit must be strictly increasing.")


	def todict(self):
		return {
			"q":self.q,
			"slope":self.slope,
			"intercept":self.intercept,
			"r_squared":self.r_squared,
			"slope_std_error":self.slope_std_error,
			"grid":[{"n":n, "log_moment":m, "std_error":s} for n, m, s in self.grid]
		}


class LDPWindow:
	a = None
	b = None

	def __init__(self, a, b):
		"""__init__(a:float, b:float)
		Instantiates the exponent window of the event n^a < |X(1/n)| < n^b.
		"""
		self.a, self.b = float(a), float(b)
		if not self.a < self.b:
			raise InvalidParameterError("Error! The window ({}, {}) is empty: a must be smaller than b.".format(a, b))


	def __repr__(self):
		return "LDPWindow(a={!r}, b={!r})".format(self.a, self.b)


	def contains(self, z):
		"""contains(z:numpy.ndarray) -> numpy.ndarray
		Returns a mask of the rates lying strictly inside the window.
		"""
		return (z > self.a) & (z < self.b)


def gaussian_abs_moment(sigma, q):
	"""gaussian_abs_moment(sigma:float, q:float) -> float
	Returns E|N(0, sigma^2)|^q.
	"""
	return sigma ** q * 2.0 ** (q / 2.0) * special.gamma((q + 1.0) / 2.0) / math.sqrt(math.pi)


def stable_abs_moment(alpha, scale, skew, q):
	"""stable_abs_moment(alpha:float, scale:float, skew:float, q:float) -> float
	Returns E|S|^q for the strictly stable S ~ S_alpha(scale, skew, 0) and
	0 < q < alpha.
	"""
	if not 0.0 < q < alpha:
		raise InvalidParameterError("Error! The absolute moment of order {} of an {}-stable law is infinite.".format(q, alpha))
	if alpha == 1.0 and skew != 0.0:
		raise UnsupportedCase("Error! Only the symmetric strictly 1-stable law is supported.")

	base = scale ** q * special.gamma(1.0 - q / alpha) * 2.0 * special.gamma(q) * math.sin(math.pi * q / 2.0) / math.pi
	if alpha == 1.0:
		return float(base)
	tilt = skew * math.tan(math.pi * alpha / 2.0)
	return float(base * (1.0 + tilt ** 2) ** (q / (2.0 * alpha)) * math.cos(q / alpha * math.atan(tilt)))


def empirical_moment(triplet, q, dt, N, config=None):
	"""empirical_moment(triplet:LevyTriplet, q:float, dt:float, N:int, config:SimConfig) -> EstimateReport
	Returns the sample mean of |X(dt)|^q and its plug-in standard error.
	"""
	config = config or SimConfig()
	if not q > 0.0:
		raise InvalidParameterError("Error! The moment order q must be positive, got {}.".format(q))
	if N < MIN_SAMPLES:
		raise InvalidParameterError("Error! A moment estimate requires at least {} samples, got {}.".format(MIN_SAMPLES, N))

	values = np.abs(batch_sample(triplet, dt, N, config)) ** q
	return EstimateReport(
		float(np.mean(values)),
		float(np.std(values, ddof=1) / math.sqrt(N)),
		N,
		config.seed,
		{"q":q, "dt":dt}
	)


def fit_tau0(triplet, q, n_grid=None, N=10 ** 5, config=None):
	"""fit_tau0(triplet:LevyTriplet, q:float, n_grid:list<int>, N:int, config:SimConfig) -> TauFit
	Estimates the scaling function at q as the least-squares slope of the
	empirical log E|X(1/n)|^q against log n. Every grid point is simulated
	from its own derived seed.
	"""
	config = config or SimConfig()
	n_grid = sorted(n_grid or DEFAULT_N_GRID)

	try:
		alpha = classify_small_time_limit(triplet).alpha
	except LevyZoomError:
		alpha = None
	if alpha is not None and not triplet.measure.iszero() and abs(q - alpha) < KINK_DISTANCE:
		logger.warning(
			"[estimate::fit_tau0] Warning! The order q=%g lies within %g of the kink at alpha=%g, where convergence is logarithmically slow.",
			q, KINK_DISTANCE, alpha
		)

	grid = []
	for i, n in enumerate(n_grid):
		report = empirical_moment(triplet, q, 1.0 / n, N, config.derive(i))
		if not report.estimate > 0.0:
			raise DegenerateFitError("Error! Every sample of |X(1/{})|^{} is zero, so its logarithm is undefined.".format(n, q))
		grid.append((n, math.log(report.estimate), report.std_error / report.estimate))
		logger.info("[estimate::fit_tau0] q=%g n=%d log-moment=%g", q, n, grid[-1][1])

	fit = stats.linregress([math.log(n) for n, _, _ in grid], [m for _, m, _ in grid])
	return TauFit(q, float(fit.slope), float(fit.intercept), float(fit.rvalue ** 2), float(fit.stderr), grid)


def lemma1_asymptotic(triplet, q, t_fixed=1.0):
	"""lemma1_asymptotic(triplet:LevyTriplet, q:float, t_fixed:float) -> MomentAsymptotic
	Returns the limit of n^(qH) E|X(t/n)|^q for orders below 1/H and the tail
	index, that is the q-th absolute moment of the zoomed-in process at t.
	"""
	limit = classify_small_time_limit(triplet)
	if not limit.isnontrivial():
		raise NoLimitError("Error! The process has no non-trivial small-time limit.")

	bound = min(1.0 / limit.H, triplet.measure.tail_index())
	if not 0.0 < q < bound:
		raise UnsupportedCase("Error! The order q={} must lie in (0, min(1/H, beta_inf)) = (0, {}).".format(q, bound))

	t = t_fixed
	if limit.kind is LimitKind.BROWNIAN_MOTION:
		constant = t ** (q / 2.0) * gaussian_abs_moment(triplet.sigma, q)
	elif limit.kind is LimitKind.LINEAR_DRIFT:
		constant = abs(limit.limit_params["gamma"] * t) ** q
	else:
		params = limit.limit_params
		scale, skew = stable_parameters(params["c_plus"], params["c_minus"], limit.alpha)
		if limit.alpha == 1.0:
			# The symmetric Cauchy limit keeps the center as a drift.
			law = stats.cauchy(loc=params["gamma"] * t, scale=scale * t)
			constant = float(law.expect(lambda x: abs(x) ** q))
		else:
			constant = stable_abs_moment(limit.alpha, scale * t ** limit.H, skew, q)
	return MomentAsymptotic(q, q * limit.H, constant)


def lemma1_check(triplet, q, t_fixed=1.0, n_grid=None, N=10 ** 5, config=None):
	"""lemma1_check(triplet:LevyTriplet, q:float, t_fixed:float, n_grid:list<int>, N:int, config:SimConfig) -> list<ScaledMoment>
	Compares n^(qH) E|X(t/n)|^q with its limit along the grid.
	"""
	asymptotic = lemma1_asymptotic(triplet, q, t_fixed)
	return _scaled_moments(triplet, asymptotic, t_fixed, n_grid, N, config)


def lemma2_asymptotic(triplet, q, t_fixed=1.0):
	"""lemma2_asymptotic(triplet:LevyTriplet, q:float, t_fixed:float) -> MomentAsymptotic
	Returns the scaling and the limit of E|X(t/n)|^q for orders between the
	Blumenthal-Getoor index and the tail index.
	"""
	measure = triplet.measure
	beta0, beta_inf = measure.bg_index(), measure.tail_index()
	if not q > beta0:
		raise UnsupportedCase("Error! The order q={} must exceed the Blumenthal-Getoor index {}.".format(q, beta0))
	if not q < beta_inf:
		raise UnsupportedCase("Error! The order q={} must lie below the tail index {}.".format(q, beta_inf))

	t, sigma = t_fixed, triplet.sigma
	if measure.iszero():
		if sigma == 0.0:
			return MomentAsymptotic(q, q, (t * abs(triplet.gamma)) ** q)
		return MomentAsymptotic(q, q / 2.0, t ** (q / 2.0) * gaussian_abs_moment(sigma, q))

	if sigma == 0.0:
		if q > 1.0:
			return MomentAsymptotic(q, 1.0, t * measure.frac_moment(q))
		if not beta0 < 1.0:
			raise UnsupportedCase("Error! Orders q <= 1 require a Blumenthal-Getoor index below 1, got {}.".format(beta0))
		drift = bv_drift(triplet)
		if drift == 0.0:
			return MomentAsymptotic(q, 1.0, t * measure.frac_moment(q))
		if q == 1.0:
			raise UnsupportedCase("Error! The order q=1 is not covered when the bounded variation drift is non-zero.")
		return MomentAsymptotic(q, q, (t * abs(drift)) ** q)

	if q > 2.0:
		return MomentAsymptotic(q, 1.0, t * measure.frac_moment(q))
	elif q == 2.0:
		return MomentAsymptotic(q, 1.0, t * sigma ** 2 + t * measure.frac_moment(2.0))
	return MomentAsymptotic(q, q / 2.0, t ** (q / 2.0) * gaussian_abs_moment(sigma, q))


def lemma2_check(triplet, q, t_fixed=1.0, n_grid=None, N=10 ** 5, config=None):
	"""lemma2_check(triplet:LevyTriplet, q:float, t_fixed:float, n_grid:list<int>, N:int, config:SimConfig) -> list<ScaledMoment>
	Compares the correctly scaled moments E|X(t/n)|^q with their limits along
	the grid. The case is selected from the triplet.
	"""
	asymptotic = lemma2_asymptotic(triplet, q, t_fixed)
	return _scaled_moments(triplet, asymptotic, t_fixed, n_grid, N, config)


def _scaled_moments(triplet, asymptotic, t_fixed, n_grid, N, config):
	config = config or SimConfig()
	rows = []
	for i, n in enumerate(sorted(n_grid or [2 ** 12])):
		report = empirical_moment(triplet, asymptotic.q, t_fixed / n, N, config.derive(i))
		factor = float(n) ** asymptotic.exponent
		rows.append(ScaledMoment(n, factor * report.estimate, factor * report.std_error, asymptotic.constant))
	return rows


def z_rate_samples(triplet, n, N, config=None):
	"""z_rate_samples(triplet:LevyTriplet, n:int, N:int, config:SimConfig) -> numpy.ndarray
	Returns N draws of log|X(1/n)| / log n.
	"""
	config = config or SimConfig()
	if not (isinstance(n, int) and n >= 2):
		raise InvalidParameterError("Error! The rate sequence requires an integer n >= 2, got {!r}.".format(n))
	if _has_atom_at_zero(triplet):
		raise UnsupportedCase(
			"Error! X(1/{}) has an atom at zero (no Gaussian part, finite activity and no drift), so log|X(1/n)| is undefined.".format(n)
		)

	x = batch_sample(triplet, 1.0 / n, N, config)
	zeros = np.nonzero(x == 0.0)[0]
	if len(zeros) > 0:
		logger.warning("[estimate::z_rate_samples] Warning! %d draws of X(1/%d) were exactly zero and are drawn again.", len(zeros), n)
		x[zeros] = batch_sample(triplet, 1.0 / n, len(zeros), config.derive(0))
		if np.any(x[zeros] == 0.0):
			raise SimulationError("Error! Draws of X(1/{}) were exactly zero twice in a row.".format(n))
	return np.log(np.abs(x)) / math.log(n)


def z_concentration(triplet, n, N, config=None, width=0.1):
	"""z_concentration(triplet:LevyTriplet, n:int, N:int, config:SimConfig, width:float) -> EstimateReport
	Returns the fraction of rates log|X(1/n)| / log n within width of -H.
	"""
	config = config or SimConfig()
	limit = classify_small_time_limit(triplet)
	if not limit.isnontrivial():
		raise NoLimitError("Error! The process has no non-trivial small-time limit, so the rate sequence has no concentration point.")

	z = z_rate_samples(triplet, n, N, config)
	p = float(np.mean(np.abs(z + limit.H) <= width))
	return EstimateReport(p, math.sqrt(p * (1.0 - p) / N), N, config.seed, {"n":n, "H":limit.H, "width":width})


def ldp_probability(triplet, n, window, N, config=None):
	"""ldp_probability(triplet:LevyTriplet, n:int, window:LDPWindow, N:int, config:SimConfig) -> EstimateReport
	Estimates P(n^a < |X(1/n)| < n^b) with its binomial standard error. The
	meta data carries the normalised log-probability and, when available, the
	bounds implied by the rate function.
	"""
	from src.scaling import ldp_bounds, rate_function

	config = config or SimConfig()
	if not (isinstance(n, int) and n >= 2):
		raise InvalidParameterError("Error! The probability requires an integer n >= 2, got {!r}.".format(n))

	x = np.abs(batch_sample(triplet, 1.0 / n, N, config))
	with np.errstate(divide="ignore"):
		z = np.log(x) / math.log(n)
	hits = int(np.count_nonzero(window.contains(z)))
	p = hits / N

	meta = {"n":n, "a":window.a, "b":window.b, "hits":hits}
	try:
		lower, upper = ldp_bounds(rate_function(triplet), window.a, window.b)
		meta["sandwich"] = [lower, upper]
		expected = N * float(n) ** upper
		if expected < MIN_HITS:
			logger.warning(
				"[estimate::ldp_probability] Warning! At most %.3g hits are expected with N=%d, fewer than %d.", expected, N, MIN_HITS
			)
	except LevyZoomError:
		pass

	if triplet.measure.iszero() and triplet.gamma == 0.0 and triplet.sigma > 0.0:
		meta["gaussian_exact"] = _gaussian_window(triplet.sigma, n, window)

	if hits == 0:
		logger.warning("[estimate::ldp_probability] Warning! No draw fell inside the window (%g, %g).", window.a, window.b)
		meta["zero_hits"] = True
		meta["upper_bound_95"] = 3.0 / N
		meta["normalized_log_prob"] = -INF
		return EstimateReport(0.0, 0.0, N, config.seed, meta)

	meta["normalized_log_prob"] = math.log(p) / math.log(n)
	return EstimateReport(p, math.sqrt(p * (1.0 - p) / N), N, config.seed, meta)


def toy_moment_exact(params, q):
	"""toy_moment_exact(params:ToyModelParams, q:float) -> float
	Returns E|Z_n|^q = n^(-q/alpha) (1 - 1/n) + 1/n.
	"""
	n = float(params.n)
	return n ** (-q / params.alpha) * (1.0 - 1.0 / n) + 1.0 / n


def gaussian_tail_compare(sigma, n, epsilon):
	"""gaussian_tail_compare(sigma:float, n:int, epsilon:float) -> TailComparison
	Returns P(X(1/n) > n^(-1/2 + epsilon)) for a Brownian motion with
	coefficient sigma, next to its Mills-ratio approximation
	sigma (2 pi)^(-1/2) n^(-epsilon) exp(-n^(2 epsilon) / (2 sigma^2)).
	"""
	if not sigma > 0.0:
		raise InvalidParameterError("Error! sigma must be positive, got {}.".format(sigma))
	if not n >= 2:
		raise InvalidParameterError("Error! n must be at least 2, got {}.".format(n))
	if not epsilon > 0.0:
		raise InvalidParameterError("Error! epsilon must be positive, got {}.".format(epsilon))

	z = float(n) ** epsilon / sigma
	exact = float(stats.norm.sf(z))
	with np.errstate(over="ignore", under="ignore"):
		asymptotic = float(sigma / math.sqrt(2.0 * math.pi) * float(n) ** -epsilon * np.exp(-0.5 * z * z))
	if exact == 0.0 or asymptotic == 0.0:
		return TailComparison(0.0, 0.0, True)
	return TailComparison(exact, asymptotic, False)


def _has_atom_at_zero(triplet):
	if triplet.sigma > 0.0 or not triplet.measure.isfinite():
		return False
	return bv_drift(triplet) == 0.0


def _gaussian_window(sigma, n, window):
	# X(1/n) ~ N(0, sigma^2 / n), so P(n^a < |X| < n^b) = 2 (sf(n^a sqrt(n)/sigma) - sf(n^b sqrt(n)/sigma)).
	scale = sigma / math.sqrt(n)
	upper = 0.0 if window.b == INF else float(stats.norm.sf(float(n) ** window.b / scale))
	lower = 0.5 if window.a == -INF else float(stats.norm.sf(float(n) ** window.a / scale))
	return 2.0 * (lower - upper)
