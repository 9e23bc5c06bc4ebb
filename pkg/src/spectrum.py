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
Spectra of singularities: the multifractal formalism applied to the moment
scaling exponents, and the closed-form spectrum of Lévy sample paths.
"""
import numpy as np
from src.errors import InvalidParameterError, UnsupportedCase
from src.piecewise import PiecewiseLinearFn
from src.scaling import theoretical_tau0
from src.triplet import LimitKind, classify_small_time_limit

INF = float("inf")


class SingularitySpectrum:
	support = None
	values = None

	def __init__(self, values):
		"""__init__(values:PiecewiseLinearFn)
		Instantiates the spectrum h -> d(h) that equals the specified function
		on its (finite) domain and -inf elsewhere.
		"""
		if min(values.values) < -1e-12 or max(values.values) > 1.0 + 1e-12:
			raise InvalidParameterError("Error! A spectrum of singularities takes values in [0, 1], got {}.".format(list(values.values)))
		self.values = values
		self.support = values.domain


	def __call__(self, h):
		d = self.values(h)
		return -INF if d == INF else d


	def __repr__(self):
		return "SingularitySpectrum(support={}, values={})".format(self.support, self.values)


	def sample(self, grid):
		return np.array([self(h) for h in grid], dtype=float)


	def maximum(self):
		"""maximum() -> (float, float)
		Returns the point (h, d(h)) where the spectrum is largest. The spectrum
		is concave, so the maximum sits at a breakpoint.
		"""
		i = int(np.argmax(self.values.values))
		return (self.values.knots[i], self.values.values[i])


	def todict(self):
		h, d = self.maximum()
		return {"support":list(self.support), "maximum":{"h":h, "d":d}, "values":self.values.tojson()}


def zeta_from_tau0(tau0):
	"""zeta_from_tau0(tau0:PiecewiseLinearFn) -> PiecewiseLinearFn
	Returns zeta(q) = lim_{t->0} log E|X(t)|^q / log t, that is -tau0(q) on the
	domain of tau0.
	"""
	return -tau0


def formalism_spectrum(zeta, extend_negative=True):
	"""formalism_spectrum(zeta:PiecewiseLinearFn, extend_negative:bool) -> SingularitySpectrum
	Returns d(h) = inf_q (h q - zeta(q) + 1), with negative values mapped to
	-inf. The infimum runs over positive orders below the end of the domain of
	zeta and, when extend_negative is set, over negative orders too, where zeta
	is continued linearly with its slope at 0+.
	"""
	tau = (-zeta).restrict(0.0, INF, lo_closed=False)
	if extend_negative:
		tau = tau.extend_left()

	# d(h) = 1 - tau*(-h), so the spectrum is the conjugate reflected about 0.
	conjugate = tau.conjugate()
	reflected = PiecewiseLinearFn(
		[-x for x in reversed(conjugate.knots)],
		[1.0 - v for v in reversed(conjugate.values)],
		conjugate.right_slope,
		conjugate.left_slope
	)
	return SingularitySpectrum(_nonnegative_part(reflected))


def levy_spectrum(beta0):
	"""levy_spectrum(beta0:float) -> SingularitySpectrum
	Returns the almost sure spectrum of singularities beta0 h on [0, 1/beta0]
	of a Lévy process with Blumenthal-Getoor index beta0.
	"""
	beta0 = float(beta0)
	if not 0.0 < beta0 <= 2.0:
		raise InvalidParameterError("Error! The Lévy spectrum requires a Blumenthal-Getoor index in (0, 2], got {}.".format(beta0))
	return SingularitySpectrum(PiecewiseLinearFn([0.0, 1.0 / beta0], [0.0, 1.0]))


def verify_formalism(triplet, points=1000, tolerance=1e-10):
	"""verify_formalism(triplet:LevyTriplet, points:int, tolerance:float) -> bool
	Returns true if the formalism applied to the scaling function reproduces
	the Lévy spectrum on its support and both vanish (-inf) beyond it.
	"""
	if triplet.sigma > 0.0:
		raise UnsupportedCase("Error! The multifractal formalism is untested for processes with a Gaussian component.")

	limit = classify_small_time_limit(triplet)
	if limit.kind is not LimitKind.STRICTLY_STABLE:
		raise UnsupportedCase(
			"Error! The formalism is checked for processes zooming in on a strictly stable law, not on '{}'.".format(limit.kind.value)
		)

	formalism = formalism_spectrum(zeta_from_tau0(theoretical_tau0(triplet)))
	closed_form = levy_spectrum(triplet.measure.bg_index())

	lo = min(formalism.support[0], closed_form.support[0])
	hi = max(formalism.support[1], closed_form.support[1])
	width = hi - lo
	grid = np.concatenate([
		np.linspace(lo, hi, points),
		[lo - 0.5 * width - 1.0, lo - 1e-3, hi + 1e-3, hi + 0.5 * width + 1.0]
	])

	d1, d2 = formalism.sample(grid), closed_form.sample(grid)
	same_support = np.array_equal(np.isinf(d1), np.isinf(d2))
	finite = np.isfinite(d1) & np.isfinite(d2)
	return bool(same_support and np.all(np.abs(d1[finite] - d2[finite]) <= tolerance))


def _nonnegative_part(d):
	# Restricts a concave piecewise linear d to {d >= 0}.
	values = list(d.values)
	if max(values) < 0.0:
		raise UnsupportedCase("Error! The formalism yields an empty spectrum: d(h) < 0 everywhere.")

	lo, hi = d.domain
	k = int(np.argmax(values))
	peak = d.knots[k]

	if lo == -INF or d.values[0] < 0.0:
		lo = _root(d, peak, -1)
	if hi == INF or d.values[-1] < 0.0:
		hi = _root(d, peak, 1)
	return d.restrict(lo, hi)


def _root(d, peak, direction):
	# The point where the concave d crosses zero on the specified side of its peak.
	knots = list(d.knots) if direction > 0 else list(reversed(d.knots))
	values = list(d.values) if direction > 0 else list(reversed(d.values))
	for (q0, v0), (q1, v1) in zip(zip(knots, values), zip(knots[1:], values[1:])):
		if direction * (q1 - peak) > 0.0 and v0 >= 0.0 > v1:
			return q0 + (q1 - q0) * v0 / (v0 - v1)

	slope = d.right_slope if direction > 0 else d.left_slope
	q0, v0 = knots[-1], values[-1]
	if slope is None:
		return q0
	if direction * slope >= 0.0:
		return direction * INF
	return q0 - v0 / slope
