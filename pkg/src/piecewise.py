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
Continuous piecewise linear functions with values in (-inf, +inf].

A function is stored as its finite breakpoints (knots) and the values at
those knots, plus an optional slope for a ray towards -inf and towards +inf.
The function is +inf outside its domain. A finite end of the domain can be
open, in which case the knot value there is only a limit.
"""
import math
import numpy as np
from src.errors import InvalidParameterError

INF = float("inf")


class PiecewiseLinearFn:
	knots = None
	values = None
	left_slope = None
	right_slope = None
	closed = None

	def __init__(self, knots, values, left_slope=None, right_slope=None, closed=(True, True)):
		"""__init__(knots:list<float>, values:list<float>, left_slope:float, right_slope:float, closed:tuple<bool, bool>)
		Instantiates the function interpolating the values at the knots,
		extended with the specified slopes beyond the first and last knot. A
		missing slope means the domain ends at that knot.
		"""
		self.knots = tuple(float(k) for k in knots)
		self.values = tuple(float(v) for v in values)
		self.left_slope = None if left_slope is None else float(left_slope)
		self.right_slope = None if right_slope is None else float(right_slope)
		self.closed = (
			bool(closed[0]) and self.left_slope is None,
			bool(closed[1]) and self.right_slope is None
		)

		valid, message = PiecewiseLinearFn.isvalid(self)
		if not valid:
			raise InvalidParameterError(message)


	@property
	def domain(self):
		"""
		Returns the interval (lo, hi) outside which the function is +inf.
		"""
		lo = -INF if self.left_slope is not None else self.knots[0]
		hi = INF if self.right_slope is not None else self.knots[-1]
		return (lo, hi)


	def __call__(self, q):
		q = float(q)
		lo, hi = self.domain
		if q < lo or q > hi or (q == lo and not self.closed[0]) or (q == hi and not self.closed[1]):
			return INF
		return self._extend(q)


	def __neg__(self):
		"""
		Returns the function -f on the same domain.
		"""
		return PiecewiseLinearFn(
			self.knots,
			[-v for v in self.values],
			None if self.left_slope is None else -self.left_slope,
			None if self.right_slope is None else -self.right_slope,
			self.closed
		)


	def __repr__(self):
		return "PiecewiseLinearFn(knots={}, values={}, left_slope={}, right_slope={}, closed={})".format(
			list(self.knots), list(self.values), self.left_slope, self.right_slope, self.closed
		)


	def __eq__(self, other):
		return (
			isinstance(other, PiecewiseLinearFn)
			and self.knots == other.knots
			and self.values == other.values
			and self.left_slope == other.left_slope
			and self.right_slope == other.right_slope
			and self.closed == other.closed
		)


	def __hash__(self):
		return hash((self.knots, self.values, self.left_slope, self.right_slope, self.closed))


	def slopes(self):
		"""slopes() -> list<float>
		Returns the slope of every segment from left to right, rays included.
		"""
		slopes = [] if self.left_slope is None else [self.left_slope]
		for (q0, v0), (q1, v1) in zip(zip(self.knots, self.values), zip(self.knots[1:], self.values[1:])):
			slopes.append((v1 - v0) / (q1 - q0))
		if self.right_slope is not None:
			slopes.append(self.right_slope)
		return slopes


	def segments(self):
		"""segments() -> list<dict>
		Returns the segments of the function as dictionaries with the keys
		'q_lo', 'q_hi', 'slope' and 'value_at_lo'. A ray starting at -inf
		carries the limit of the function there as its value_at_lo.
		"""
		segments = []
		if self.left_slope is not None:
			s = self.left_slope
			segments.append({"q_lo":-INF, "q_hi":self.knots[0], "slope":s, "value_at_lo":self.values[0] if s == 0.0 else math.copysign(INF, -s)})
		for i in range(len(self.knots) - 1):
			q0, q1 = self.knots[i], self.knots[i + 1]
			v0, v1 = self.values[i], self.values[i + 1]
			segments.append({"q_lo":q0, "q_hi":q1, "slope":(v1 - v0) / (q1 - q0), "value_at_lo":v0})
		if self.right_slope is not None:
			segments.append({"q_lo":self.knots[-1], "q_hi":INF, "slope":self.right_slope, "value_at_lo":self.values[-1]})
		if not segments:
			segments.append({"q_lo":self.knots[0], "q_hi":self.knots[0], "slope":0.0, "value_at_lo":self.values[0]})
		return segments


	def tojson(self):
		"""tojson() -> dict
		Returns the function as a JSON-compatible document.
		"""
		from src.schema import jsonsafe
		return jsonsafe({"segments":self.segments(), "domain":list(self.domain), "closed":list(self.closed)})


	@staticmethod
	def fromjson(document):
		"""fromjson(document:dict) -> PiecewiseLinearFn
		Instantiates the function described by a document produced by tojson.
		"""
		from src.schema import PIECEWISE_SCHEMA, fromextended, validate
		validate(document, PIECEWISE_SCHEMA)

		segments = [{key:fromextended(value) for key, value in segment.items()} for segment in document["segments"]]
		left_slope = right_slope = None
		knots, values = [], []
		for segment in segments:
			q_lo, q_hi = segment["q_lo"], segment["q_hi"]
			if q_lo == -INF:
				left_slope = segment["slope"]
				continue
			if q_hi == INF:
				right_slope = segment["slope"]
			if not knots or knots[-1] != q_lo:
				knots.append(q_lo)
				values.append(segment["value_at_lo"])
			if q_hi != INF and q_hi != q_lo:
				knots.append(q_hi)
				values.append(segment["value_at_lo"] + segment["slope"] * (q_hi - q_lo))

		if not knots:
			raise InvalidParameterError("Error! A piecewise linear function requires at least one finite breakpoint.")

		closed = document.get("closed", [True, True])
		return PiecewiseLinearFn(knots, values, left_slope, right_slope, closed)


	def sample(self, grid):
		"""sample(grid:iterable<float>) -> numpy.ndarray
		Returns the function evaluated at every point of the grid.
		"""
		return np.array([self(q) for q in grid], dtype=float)


	def restrict(self, lo, hi, lo_closed=True, hi_closed=True):
		"""restrict(lo:float, hi:float, lo_closed:bool, hi_closed:bool) -> PiecewiseLinearFn
		Returns the function restricted to the intersection of its domain with
		the specified interval, and +inf elsewhere.
		"""
		old_lo, old_hi = self.domain
		if lo > old_lo:
			new_lo, new_lo_closed = float(lo), bool(lo_closed)
		elif lo == old_lo:
			new_lo, new_lo_closed = old_lo, bool(lo_closed) and self.closed[0]
		else:
			new_lo, new_lo_closed = old_lo, self.closed[0]

		if hi < old_hi:
			new_hi, new_hi_closed = float(hi), bool(hi_closed)
		elif hi == old_hi:
			new_hi, new_hi_closed = old_hi, bool(hi_closed) and self.closed[1]
		else:
			new_hi, new_hi_closed = old_hi, self.closed[1]

		if new_lo > new_hi or (new_lo == new_hi and not (new_lo_closed and new_hi_closed)):
			raise InvalidParameterError("Error! The restriction to [{}, {}] leaves the function with an empty finite domain.".format(lo, hi))

		knots = [q for q in self.knots if new_lo < q < new_hi]
		if new_lo > -INF:
			knots.insert(0, new_lo)
		if new_hi < INF and new_hi != new_lo:
			knots.append(new_hi)
		if not knots:
			# Both ends are rays of the original function.
			knots = [self.knots[0]]

		return PiecewiseLinearFn(
			knots,
			[self._extend(q) for q in knots],
			self.left_slope if new_lo == -INF else None,
			self.right_slope if new_hi == INF else None,
			(new_lo_closed, new_hi_closed)
		)


	def extend_left(self, slope=None):
		"""extend_left(slope:float) -> PiecewiseLinearFn
		Returns the function continued linearly to -inf from its lowest
		breakpoint, by default with the slope of its first segment.
		"""
		if slope is None:
			slope = self.slopes()[0] if len(self.knots) > 1 or self.right_slope is not None else 0.0
		return PiecewiseLinearFn(self.knots, self.values, slope, self.right_slope, (True, self.closed[1]))


	def isconvex(self, tolerance=1e-12):
		"""isconvex(tolerance:float) -> bool
		Returns true if the slopes are nondecreasing, false otherwise.
		"""
		slopes = self.slopes()
		return all(s1 >= s0 - tolerance for s0, s1 in zip(slopes, slopes[1:]))


	def conjugate(self):
		"""conjugate() -> PiecewiseLinearFn
		Returns the Legendre-Fenchel transform x -> sup_q (q x - f(q)).

		The supremum over a piecewise linear function is attained at a knot,
		or diverges along a ray, so the transform is the upper envelope of the
		lines x -> q_i x - f(q_i), finite between the ray slopes. Open ends
		do not change the supremum.
		"""
		lo = -INF if self.left_slope is None else self.left_slope
		hi = INF if self.right_slope is None else self.right_slope
		if lo > hi:
			raise InvalidParameterError("Error! The conjugate is +inf everywhere: the left ray is steeper than the right one.")

		lines = _upper_envelope(self.knots, [-v for v in self.values])
		breaks = [(b0 - b1) / (a1 - a0) for (a0, b0), (a1, b1) in zip(lines, lines[1:])]

		knots = []
		for x in breaks:
			# Rounding can reorder the crossings of nearly parallel lines.
			if lo < x < hi and (not knots or x > knots[-1]):
				knots.append(x)
		if lo > -INF:
			knots.insert(0, lo)
		if hi < INF and hi != lo:
			knots.append(hi)
		if not knots:
			knots = [0.0]

		return PiecewiseLinearFn(
			knots,
			[max(a * x + b for a, b in lines) for x in knots],
			lines[0][0] if lo == -INF else None,
			lines[-1][0] if hi == INF else None
		)


	def _extend(self, q):
		# Evaluates the linear interpolation and its rays, ignoring the domain ends.
		if q < self.knots[0]:
			return self.values[0] + (self.left_slope or 0.0) * (q - self.knots[0])
		elif q > self.knots[-1]:
			return self.values[-1] + (self.right_slope or 0.0) * (q - self.knots[-1])
		return float(np.interp(q, self.knots, self.values))


	@staticmethod
	def isvalid(f):
		"""isvalid(f:PiecewiseLinearFn) -> (bool, string)
		Returns true if the breakpoints are strictly increasing and every value
		is finite, false otherwise.
		"""
		if len(f.knots) < 1:
			return (False, "Error! A piecewise linear function requires at least one breakpoint.")
		if len(f.knots) != len(f.values):
			return (False, "Error! There are {} breakpoints but {} values.".format(len(f.knots), len(f.values)))
		if not all(math.isfinite(v) for v in f.knots + f.values):
			return (False, "Error! Breakpoints and values must be finite.")
		if any(q1 <= q0 for q0, q1 in zip(f.knots, f.knots[1:])):
			return (False, "Error! The breakpoints {} are not strictly increasing.".format(list(f.knots)))
		for slope in (f.left_slope, f.right_slope):
			if slope is not None and not math.isfinite(slope):
				return (False, "Error! The slope of a ray must be finite.")
		return (True, None)


def numeric_conjugate(f, x, q_grid):
	"""numeric_conjugate(f:callable, x:iterable<float>, q_grid:iterable<float>) -> numpy.ndarray
	Returns max_q (q x - f(q)) over the finite values of f on the grid, for
	every x. Used to cross-check the exact transform.
	"""
	q = np.asarray(list(q_grid), dtype=float)
	fq = np.array([f(v) for v in q], dtype=float)
	finite = np.isfinite(fq)
	if not finite.any():
		raise InvalidParameterError("Error! The function is not finite anywhere on the grid.")
	q, fq = q[finite], fq[finite]
	x = np.asarray(list(x), dtype=float)
	return np.max(np.outer(x, q) - fq[np.newaxis, :], axis=1)


def _upper_envelope(slopes, intercepts):
	# Lines sorted by strictly increasing slope. A line is dropped when the
	# intersection of its neighbours lies at or left of its own crossing.
	hull = []
	for a, b in zip(slopes, intercepts):
		while len(hull) >= 2:
			(a1, b1), (a2, b2) = hull[-2], hull[-1]
			if (b1 - b) * (a2 - a1) <= (b1 - b2) * (a - a1):
				hull.pop()
			else:
				break
		hull.append((a, b))
	return hull
