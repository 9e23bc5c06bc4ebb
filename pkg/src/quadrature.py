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
Adaptive quadrature for integrands with a power-law singularity at the origin
or a slowly decaying tail.

The inner region (0, 1] is cut into dyadic shells [2^-(k+1), 2^-k] and the
outer region (1, inf) into shells [e^k, e^(k+1)] after the substitution
x = e^u. Each shell is integrated with QUADPACK and the partial sums are
extrapolated with a geometric tail, which is exact for pure power laws.
"""
import enum
import math
from scipy import integrate
from src.errors import NumericFailure

ABSOLUTE_TOLERANCE = 1e-10
RELATIVE_TOLERANCE = 1e-8
MAX_EVALUATIONS    = 10 ** 6
MAX_INNER_SHELLS   = 1000
MAX_OUTER_SHELLS   = 700


def integrate_inner(f):
	"""integrate_inner(f:callable) -> float
	Returns the integral of f over (0, 1].
	"""
	return _integrate_shells(f, lambda k: (2.0 ** -(k + 1), 2.0 ** -k), MAX_INNER_SHELLS)


def integrate_outer(f):
	"""integrate_outer(f:callable) -> float
	Returns the integral of f over (1, inf).
	"""
	def g(u):
		x = math.exp(u)
		return f(x) * x

	return _integrate_shells(g, lambda k: (float(k), float(k + 1)), MAX_OUTER_SHELLS)


def integrate_interval(f, a, b, points=None):
	"""integrate_interval(f:callable, a:float, b:float, points:list) -> float
	Returns the integral of a bounded integrand over a finite interval, under
	the same tolerance policy.
	"""
	if a >= b:
		return 0.0

	result = integrate.quad(
		f, a, b,
		epsabs=ABSOLUTE_TOLERANCE,
		epsrel=RELATIVE_TOLERANCE,
		limit=500,
		points=points,
		full_output=1
	)
	value, error = result[0], result[1]
	if not math.isfinite(value) or error > max(ABSOLUTE_TOLERANCE, RELATIVE_TOLERANCE * abs(value)) * 100:
		raise NumericFailure(
			"Error! Quadrature over [{}, {}] did not converge.".format(a, b),
			tolerance=error / max(abs(value), ABSOLUTE_TOLERANCE)
		)
	return value


def _integrate_shells(f, shell, maxshells):
	total       = 0.0
	previous    = None
	estimate    = None
	evaluations = 0
	achieved    = float("inf")

	for k in range(maxshells):
		a, b = shell(k)
		result = integrate.quad(
			f, a, b,
			epsabs=ABSOLUTE_TOLERANCE * 1e-3,
			epsrel=RELATIVE_TOLERANCE * 1e-2,
			limit=200,
			full_output=1
		)
		value = result[0]
		evaluations += result[2]["neval"]
		if not math.isfinite(value):
			raise NumericFailure("Error! The integrand is not finite on the shell [{}, {}].".format(a, b))

		total += value
		current = total + _geometric_tail(value, previous)
		if estimate is not None:
			achieved = abs(current - estimate)
			if k >= 2 and achieved <= max(ABSOLUTE_TOLERANCE, RELATIVE_TOLERANCE * abs(current)):
				return current

		if evaluations > MAX_EVALUATIONS:
			break

		estimate = current
		previous = value

	raise NumericFailure(
		"Error! Adaptive quadrature did not converge after {} evaluations.".format(evaluations),
		tolerance=achieved / max(abs(total), ABSOLUTE_TOLERANCE)
	)


def _geometric_tail(value, previous):
	# Sum of the remaining shells assuming a constant ratio between them.
	if previous is None or previous == 0.0 or value == 0.0:
		return 0.0
	ratio = value / previous
	if 0.0 < ratio < 1.0:
		return value * ratio / (1.0 - ratio)
	return 0.0


class Region(enum.Enum):
	INNER = "inner"
	OUTER = "outer"
	ALL   = "all"

	def contains(self, x):
		"""contains(x:float) -> bool
		Returns true if the jump size x belongs to this region.
		"""
		if self is Region.INNER:
			return abs(x) <= 1.0
		elif self is Region.OUTER:
			return abs(x) > 1.0
		return True
