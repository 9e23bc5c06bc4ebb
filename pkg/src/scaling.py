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
Small-time scaling functions of Lévy processes, their Legendre-Fenchel
transforms and the large deviation rate function of log|X(1/n)| / log n.
"""
import numpy as np
from src.errors import InvalidParameterError, NoLimitError, UnsupportedCase
from src.piecewise import PiecewiseLinearFn
from src.triplet import classify_small_time_limit

INF = float("inf")


class RateFunction:
	"""
	The Legendre transform of the scaling function restricted to positive
	orders. Left of -1/alpha only the lower bound max{0, alpha x + 1} is known.
	"""
	alpha = None
	beta_inf = None
	pieces = None
	partial_region = None
	exposed_points = None

	def __init__(self, alpha, beta_inf):
		"""__init__(alpha:float, beta_inf:float)
		Instantiates the rate function of a process whose scaling function
		bends at alpha and whose moments are finite below beta_inf.
		"""
		self.alpha = float(alpha)
		self.beta_inf = float(beta_inf)
		if not self.beta_inf > self.alpha:
			raise UnsupportedCase("Error! There is no intermittent regime: beta_inf={} does not exceed alpha={}.".format(beta_inf, alpha))

		x0 = -1.0 / self.alpha
		if self.beta_inf == INF:
			self.pieces = PiecewiseLinearFn([x0, 0.0], [0.0, 1.0])
		else:
			self.pieces = PiecewiseLinearFn([x0, 0.0], [0.0, 1.0], right_slope=self.beta_inf)
		self.partial_region = (-INF, x0)
		self.exposed_points = (x0, 0.0)


	def __call__(self, x):
		if self.isbound(x):
			return max(0.0, self.alpha * x + 1.0)
		return self.pieces(x)


	def __repr__(self):
		return "RateFunction(alpha={!r}, beta_inf={!r})".format(self.alpha, self.beta_inf)


	def isbound(self, x):
		"""isbound(x:float) -> bool
		Returns true if only a lower bound of the rate is known at x.
		"""
		return x < self.partial_region[1]


	def breakpoints(self):
		return list(self.pieces.knots)


	def todict(self):
		return {
			"alpha":self.alpha,
			"beta_inf":self.beta_inf,
			"pieces":self.pieces.tojson(),
			"partial_region":list(self.partial_region),
			"exposed_points":list(self.exposed_points)
		}


class TauPropertyReport:
	"""
	The outcome of check_tau_properties. Violations are collected as messages.
	"""
	convex = None
	ratio_nondecreasing = None
	ratio_infimum = None
	violations = None

	def __init__(self, convex, ratio_nondecreasing, ratio_infimum, violations):
		self.convex = convex
		self.ratio_nondecreasing = ratio_nondecreasing
		self.ratio_infimum = ratio_infimum
		self.violations = list(violations)


	def negative_q_bound(self, q):
		"""negative_q_bound(q:float) -> float
		Returns the lower bound q inf_{q'>0} f(q')/q' of the scaling function at
		a negative order q.
		"""
		if not q < 0.0:
			raise InvalidParameterError("Error! The bound only applies to negative orders, got q={}.".format(q))
		return q * self.ratio_infimum


	def todict(self):
		return {
			"convex":self.convex,
			"ratio_nondecreasing":self.ratio_nondecreasing,
			"ratio_infimum":self.ratio_infimum,
			"violations":list(self.violations)
		}


def theoretical_tau0(triplet):
	"""theoretical_tau0(triplet:LevyTriplet) -> PiecewiseLinearFn
	Returns the scaling function q -> lim log E|X(1/n)|^q / log n.
	"""
	limit = classify_small_time_limit(triplet)
	if not limit.isnontrivial():
		raise NoLimitError("Error! The process has no non-trivial small-time limit, so its scaling function is not determined.")

	measure = triplet.measure
	if measure.iszero():
		return PiecewiseLinearFn([0.0], [0.0], right_slope=-limit.H, closed=(False, False))

	alpha = limit.alpha
	beta_inf = measure.tail_index()
	if beta_inf == INF:
		return PiecewiseLinearFn([0.0, alpha], [0.0, -1.0], right_slope=0.0, closed=(False, False))
	elif beta_inf > alpha:
		return PiecewiseLinearFn([0.0, alpha, beta_inf], [0.0, -1.0, -1.0], closed=(False, False))
	# Moments blow up before the kink is reached.
	return PiecewiseLinearFn([0.0, beta_inf], [0.0, -beta_inf / alpha], closed=(False, False))


def legendre_transform(f, restrict_positive=True):
	"""legendre_transform(f:PiecewiseLinearFn, restrict_positive:bool) -> PiecewiseLinearFn
	Returns the exact Legendre-Fenchel transform of f, taken over positive
	orders only when restrict_positive is set.
	"""
	if restrict_positive:
		f = f.restrict(0.0, INF, lo_closed=False)
	return f.conjugate()


def rate_function(triplet):
	"""rate_function(triplet:LevyTriplet) -> RateFunction
	Returns the large deviation rate function of log|X(1/n)| / log n.
	"""
	if triplet.measure.iszero():
		raise UnsupportedCase("Error! The scaling is monofractal: without jumps the rate sequence concentrates at -H with no polynomial deviations.")

	limit = classify_small_time_limit(triplet)
	if not limit.isnontrivial():
		raise NoLimitError("Error! The process has no non-trivial small-time limit, so it has no rate function.")
	return RateFunction(limit.alpha, triplet.measure.tail_index())


def ldp_bounds(rate, a, b):
	"""ldp_bounds(rate:RateFunction, a:float, b:float) -> (float, float)
	Returns the lower and upper limits of log P(n^a < |X(1/n)| < n^b) / log n
	implied by the rate function: minus its infimum over the exposed points
	in (a, b) and minus its infimum over [a, b].
	"""
	if not a < b:
		raise InvalidParameterError("Error! The window ({}, {}) is empty.".format(a, b))

	exposed = [rate(x) for x in rate.exposed_points if a < x < b]
	lower = -min(exposed) if exposed else -INF

	# The rate (with its bound) is piecewise linear, so its infimum over the
	# closed window is reached at an end or at a breakpoint.
	candidates = [x for x in [a, b] + rate.breakpoints() if a <= x <= b and abs(x) < INF]
	values = [rate(x) for x in candidates]
	if a == -INF:
		values.append(0.0)
	upper = -min(values) if values else -INF
	return (lower, upper)


def is_intermittent(triplet):
	"""is_intermittent(triplet:LevyTriplet) -> bool
	Returns true if q -> tau0(q)/q has points of strict increase.
	"""
	theoretical_tau0(triplet)
	if triplet.measure.iszero():
		return False
	return triplet.measure.tail_index() > classify_small_time_limit(triplet).alpha


def check_tau_properties(f, grid=None, tolerance=1e-9):
	"""check_tau_properties(f:PiecewiseLinearFn, grid:iterable<float>, tolerance:float) -> TauPropertyReport
	Checks that f is convex and that q -> f(q)/q is nondecreasing on positive
	orders, sampled on the grid, and computes the infimum of f(q)/q that
	bounds f at negative orders. Violations are reported, not raised.
	"""
	positive = f.restrict(0.0, INF, lo_closed=False)
	if grid is None:
		grid = _default_grid(positive)
	q = np.asarray(sorted(v for v in grid if v > 0.0), dtype=float)
	values = f.sample(q)
	finite = np.isfinite(values)
	q, values = q[finite], values[finite]

	violations = []
	convex = True
	if len(q) >= 3:
		# Convexity through slopes of consecutive chords, so the grid may be uneven.
		chords = np.diff(values) / np.diff(q)
		bad = np.nonzero(np.diff(chords) < -tolerance)[0]
		if len(bad) > 0:
			convex = False
			violations.append("Error! The function is not convex near q={}.".format(q[bad[0] + 1]))

	ratio_nondecreasing = True
	if len(q) >= 2:
		ratio = values / q
		bad = np.nonzero(np.diff(ratio) < -tolerance)[0]
		if len(bad) > 0:
			ratio_nondecreasing = False
			violations.append("Error! The ratio f(q)/q decreases near q={}.".format(q[bad[0] + 1]))

	return TauPropertyReport(convex, ratio_nondecreasing, _ratio_infimum(positive), violations)


def _ratio_infimum(f):
	# inf_{q>0} f(q)/q for f finite on a subset of (0, inf). On a segment the
	# ratio is monotone, so the infimum is at a knot or a limit at an end.
	candidates = [v / q for q, v in zip(f.knots, f.values) if q > 0.0]
	if f.knots[0] == 0.0:
		v0 = f.values[0]
		if v0 < 0.0:
			return -INF
		elif v0 == 0.0:
			candidates.append(f.slopes()[0] if len(f.knots) > 1 or f.right_slope is not None else 0.0)
	if f.right_slope is not None:
		candidates.append(f.right_slope)
	return min(candidates) if candidates else INF


def _default_grid(f, points=1000):
	lo, hi = f.domain
	if hi == INF:
		hi = f.knots[-1] + max(1.0, f.knots[-1] - lo)
	return np.linspace(lo, hi, points + 2)[1:-1]
