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
Lévy measures from four parametric families. Every family answers the
questions the small-time theory asks of a Lévy measure (indices, fractional
moments, the compensator, the characteristic exponent) and provides the
pieces the simulator needs (mass above a cutoff, small-jump variance, large
jump sampling).
"""
import functools
import math
import numpy as np
from scipy import integrate, special
from src.errors import InvalidParameterError, NotBoundedVariation
from src.jumps import JumpDist
from src.quadrature import Region, integrate_inner, integrate_outer, integrate_interval

INF = float("inf")


class LevyMeasure:
	kind = None

	def iszero(self):
		return False


	def isfinite(self):
		"""isfinite() -> bool
		Returns true if the measure has finite total mass (finite activity).
		"""
		return False


	def bg_index(self):
		raise NotImplementedError


	def tail_index(self):
		raise NotImplementedError


	def frac_moment(self, q, region=Region.ALL):
		"""frac_moment(q:float, region:Region) -> float
		Returns the integral of |x|^q over the region, or +inf if it diverges.
		"""
		raise NotImplementedError


	def has_inner_first_moment(self):
		"""has_inner_first_moment() -> bool
		Returns true if the integral of |x| over {|x| <= 1} is finite.
		"""
		return self.bg_index() < 1.0


	def signed_inner_moment(self):
		"""signed_inner_moment() -> float
		Returns the integral of x over {|x| <= 1}.
		"""
		raise NotImplementedError


	def exponent(self, zeta):
		"""exponent(zeta:float) -> complex
		Returns the jump part of the characteristic exponent, that is the
		integral of exp(i zeta x) - 1 - i zeta x 1{|x| <= 1}.
		"""
		raise NotImplementedError


	def density(self, x):
		"""density(x:float) -> float
		Returns the Lévy density at x != 0, or None if the measure has atoms.
		"""
		return None


	def quadrature_moment(self, q, region=Region.ALL):
		"""quadrature_moment(q:float, region:Region) -> float
		Returns the same integral as frac_moment, computed by adaptive
		quadrature of the Lévy density. Divergence is decided from the indices.
		"""
		inner = INF if q <= self.bg_index() and not self.isfinite() else None
		outer = INF if q >= self.tail_index() else None

		if inner is None and region is not Region.OUTER:
			inner = integrate_inner(lambda x: x ** q * (self.density(x) + self.density(-x)))
		if outer is None and region is not Region.INNER:
			outer = integrate_outer(lambda x: x ** q * (self.density(x) + self.density(-x)))

		if region is Region.INNER:
			return inner
		elif region is Region.OUTER:
			return outer
		return inner + outer


	def tail_mass(self, delta):
		"""tail_mass(delta:float) -> float
		Returns the mass of {|x| > delta}.
		"""
		raise NotImplementedError


	def small_jump_variance(self, delta):
		"""small_jump_variance(delta:float) -> float
		Returns the integral of x^2 over {|x| <= delta}.
		"""
		raise NotImplementedError


	def compensator_mean(self, delta):
		"""compensator_mean(delta:float) -> float
		Returns the integral of x over {delta < |x| <= 1}.
		"""
		raise NotImplementedError


	def sample_large_jumps(self, rng, count, delta):
		"""sample_large_jumps(rng:numpy.random.Generator, count:int, delta:float) -> numpy.ndarray
		Draws jumps from the measure restricted to {|x| > delta} and normalised.
		"""
		raise NotImplementedError


	def todict(self):
		raise NotImplementedError


	def key(self):
		return repr(sorted(self.todict().items()))


	def __eq__(self, other):
		return isinstance(other, LevyMeasure) and self.key() == other.key()


	def __hash__(self):
		return hash(self.key())


	def __repr__(self):
		return "{}({})".format(type(self).__name__, self.todict())


	@staticmethod
	def fromdict(configuration):
		"""fromdict(configuration:dict) -> LevyMeasure
		Instantiates the Lévy measure described by the specified configuration.
		"""
		kind = configuration.get("type")
		if kind == "zero":
			return ZeroMeasure()
		elif kind == "compound_poisson":
			return CompoundPoisson(configuration["rate"], JumpDist.fromdict(configuration["jump_dist"]))
		elif kind == "stable_like":
			return StableLike(configuration["c_plus"], configuration["c_minus"], configuration["alpha"])
		elif kind == "tempered_stable":
			return TemperedStable(
				configuration["c_plus"],
				configuration["c_minus"],
				configuration["alpha"],
				configuration["lambda_plus"],
				configuration["lambda_minus"]
			)
		raise InvalidParameterError(
			"Error! The measure type '{}' is not recognized. Supported types are: {}.".format(kind, ", ".join(MEASURE_TYPES))
		)


class ZeroMeasure(LevyMeasure):
	kind = "zero"

	def iszero(self):
		return True

	def isfinite(self):
		return True

	def bg_index(self):
		return 0.0

	def tail_index(self):
		return INF

	def frac_moment(self, q, region=Region.ALL):
		return 0.0

	def quadrature_moment(self, q, region=Region.ALL):
		return 0.0

	def signed_inner_moment(self):
		return 0.0

	def exponent(self, zeta):
		return 0.0j

	def tail_mass(self, delta):
		return 0.0

	def small_jump_variance(self, delta):
		return 0.0

	def compensator_mean(self, delta):
		return 0.0

	def todict(self):
		return {"type":self.kind}


class CompoundPoisson(LevyMeasure):
	kind = "compound_poisson"
	rate = None
	jumps = None

	def __init__(self, rate, jumps):
		"""__init__(rate:float, jumps:JumpDist)
		Instantiates the Lévy measure rate * F(dx) of a compound Poisson
		process with jump law F.
		"""
		self.rate = float(rate)
		self.jumps = jumps
		if not (math.isfinite(self.rate) and self.rate > 0.0):
			raise InvalidParameterError("Error! The compound Poisson rate must be positive, got {}.".format(rate))
		if not isinstance(jumps, JumpDist):
			raise InvalidParameterError("Error! A compound Poisson measure requires a jump distribution.")


	def isfinite(self):
		return True

	def bg_index(self):
		return 0.0

	def tail_index(self):
		# Discrete, uniform and Gaussian jump laws have every moment.
		return INF

	def frac_moment(self, q, region=Region.ALL):
		return self.rate * self.jumps.abs_moment(q, region)


	def quadrature_moment(self, q, region=Region.ALL):
		if self.jumps.density(1.0) is None:
			return self.frac_moment(q, region)
		return LevyMeasure.quadrature_moment(self, q, region)


	def signed_inner_moment(self):
		return self.rate * self.jumps.inner_mean()


	def exponent(self, zeta):
		return self.rate * (self.jumps.characteristic_function(zeta) - 1.0) - 1j * zeta * self.signed_inner_moment()


	def density(self, x):
		d = self.jumps.density(x)
		return None if d is None else self.rate * d


	def tail_mass(self, delta):
		return self.rate


	def small_jump_variance(self, delta):
		return 0.0


	def compensator_mean(self, delta):
		return self.signed_inner_moment()


	def sample_large_jumps(self, rng, count, delta):
		return self.jumps.sample(rng, count)


	def todict(self):
		return {"type":self.kind, "rate":self.rate, "jump_dist":self.jumps.todict()}


class StableLike(LevyMeasure):
	"""
	The Lévy measure c+ x^(-1-alpha) dx on x > 0 and c- |x|^(-1-alpha) dx on
	x < 0.
	"""
	kind = "stable_like"
	c_plus = None
	c_minus = None
	alpha = None

	def __init__(self, c_plus, c_minus, alpha):
		self.c_plus, self.c_minus, self.alpha = float(c_plus), float(c_minus), float(alpha)

		valid, message = StableLike.isvalid(self.c_plus, self.c_minus, self.alpha)
		if not valid:
			raise InvalidParameterError(message)


	def bg_index(self):
		return self.alpha

	def tail_index(self):
		return self.alpha

	def issymmetric(self):
		return self.c_plus == self.c_minus


	def frac_moment(self, q, region=Region.ALL):
		c = self.c_plus + self.c_minus
		inner = c / (q - self.alpha) if q > self.alpha else INF
		outer = c / (self.alpha - q) if q < self.alpha else INF
		if region is Region.INNER:
			return inner
		elif region is Region.OUTER:
			return outer
		return inner + outer


	def signed_inner_moment(self):
		if not self.has_inner_first_moment():
			raise NotBoundedVariation(
				"Error! The stable-like measure with alpha={} is not of bounded variation: the inner first moment diverges.".format(self.alpha)
			)
		return (self.c_plus - self.c_minus) / (1.0 - self.alpha)


	def exponent(self, zeta):
		if zeta == 0.0:
			return 0.0j
		a, cp, cm = self.alpha, self.c_plus, self.c_minus
		if a == 1.0:
			return complex(
				-(cp + cm) * math.pi * abs(zeta) / 2.0,
				-(cp - cm) * zeta * math.log(abs(zeta)) + (cp - cm) * (1.0 - np.euler_gamma) * zeta
			)
		g = special.gamma(-a)
		return g * (cp * (-1j * zeta) ** a + cm * (1j * zeta) ** a) + 1j * zeta * (cp - cm) / (a - 1.0)


	def density(self, x):
		if x > 0.0:
			return self.c_plus * x ** (-1.0 - self.alpha)
		return self.c_minus * (-x) ** (-1.0 - self.alpha)


	def tail_mass(self, delta):
		return (self.c_plus + self.c_minus) * delta ** -self.alpha / self.alpha


	def small_jump_variance(self, delta):
		return (self.c_plus + self.c_minus) * delta ** (2.0 - self.alpha) / (2.0 - self.alpha)


	def compensator_mean(self, delta):
		if self.alpha == 1.0:
			return (self.c_plus - self.c_minus) * -math.log(delta)
		return (self.c_plus - self.c_minus) * (1.0 - delta ** (1.0 - self.alpha)) / (1.0 - self.alpha)


	def sample_large_jumps(self, rng, count, delta):
		# Pareto magnitudes by inversion: P(|J| > x) = (x / delta)^(-alpha).
		signs = np.where(rng.random(count) * (self.c_plus + self.c_minus) < self.c_plus, 1.0, -1.0)
		with np.errstate(over="ignore", divide="ignore"):
			return signs * np.exp(math.log(delta) - np.log(rng.random(count)) / self.alpha)


	def todict(self):
		return {"type":self.kind, "c_plus":self.c_plus, "c_minus":self.c_minus, "alpha":self.alpha}


	@staticmethod
	def isvalid(c_plus, c_minus, alpha):
		"""isvalid(c_plus:float, c_minus:float, alpha:float) -> (bool, string)
		Returns true if the parameters describe a non-degenerate stable-like
		measure, false otherwise.
		"""
		if not (0.0 < alpha < 2.0):
			return (False, "Error! The stability index alpha={} does not lie in (0, 2).".format(alpha))
		return _isvalid_weights(c_plus, c_minus)


class TemperedStable(LevyMeasure):
	"""
	The stable-like measure with exponential tempering e^(-lambda+ x) on the
	positive half-line and e^(-lambda- |x|) on the negative one.
	"""
	kind = "tempered_stable"
	c_plus = None
	c_minus = None
	alpha = None
	lambda_plus = None
	lambda_minus = None

	def __init__(self, c_plus, c_minus, alpha, lambda_plus, lambda_minus):
		self.c_plus, self.c_minus, self.alpha = float(c_plus), float(c_minus), float(alpha)
		self.lambda_plus, self.lambda_minus = float(lambda_plus), float(lambda_minus)

		valid, message = TemperedStable.isvalid(self.c_plus, self.c_minus, self.alpha, self.lambda_plus, self.lambda_minus)
		if not valid:
			raise InvalidParameterError(message)


	def bg_index(self):
		return self.alpha

	def tail_index(self):
		return INF

	def issymmetric(self):
		return self.c_plus == self.c_minus and self.lambda_plus == self.lambda_minus


	def frac_moment(self, q, region=Region.ALL):
		return self.quadrature_moment(q, region)


	def signed_inner_moment(self):
		if not self.has_inner_first_moment():
			raise NotBoundedVariation(
				"Error! The tempered stable measure with alpha={} is not of bounded variation: the inner first moment diverges.".format(self.alpha)
			)
		a = self.alpha
		positive = integrate_inner(lambda x: x ** -a * math.exp(-self.lambda_plus * x)) if self.c_plus > 0.0 else 0.0
		negative = integrate_inner(lambda x: x ** -a * math.exp(-self.lambda_minus * x)) if self.c_minus > 0.0 else 0.0
		return self.c_plus * positive - self.c_minus * negative


	def exponent(self, zeta):
		return (
			self.c_plus * _tempered_side_exponent(zeta, self.alpha, self.lambda_plus)
			+ self.c_minus * _tempered_side_exponent(-zeta, self.alpha, self.lambda_minus)
		)


	def density(self, x):
		if x > 0.0:
			return self.c_plus * math.exp(-self.lambda_plus * x) * x ** (-1.0 - self.alpha)
		return self.c_minus * math.exp(self.lambda_minus * x) * (-x) ** (-1.0 - self.alpha)


	def tail_mass(self, delta):
		return sum(c * lam ** self.alpha * upper_gamma(-self.alpha, lam * delta) for c, lam in self._sides())


	def small_jump_variance(self, delta):
		s = 2.0 - self.alpha
		return sum(c * lam ** -s * special.gammainc(s, lam * delta) * special.gamma(s) for c, lam in self._sides())


	def compensator_mean(self, delta):
		s = 1.0 - self.alpha
		sides = [
			c * lam ** -s * (upper_gamma(s, lam * delta) - upper_gamma(s, lam))
			for c, lam in self._sides()
		]
		return sides[0] - sides[1]


	def sample_large_jumps(self, rng, count, delta):
		positive = self.c_plus * self.lambda_plus ** self.alpha * upper_gamma(-self.alpha, self.lambda_plus * delta)
		negative = self.c_minus * self.lambda_minus ** self.alpha * upper_gamma(-self.alpha, self.lambda_minus * delta)
		up = rng.random(count) * (positive + negative) < positive

		jumps = np.empty(count)
		for mask, lam, sign in ((up, self.lambda_plus, 1.0), (~up, self.lambda_minus, -1.0)):
			k = int(mask.sum())
			if k > 0:
				grid, cdf = _tempered_inverse_table(self.alpha, lam, delta)
				jumps[mask] = sign * np.exp(np.interp(rng.random(k), cdf, grid))
		return jumps


	def todict(self):
		return {
			"type":self.kind,
			"c_plus":self.c_plus,
			"c_minus":self.c_minus,
			"alpha":self.alpha,
			"lambda_plus":self.lambda_plus,
			"lambda_minus":self.lambda_minus
		}


	def _sides(self):
		return [(self.c_plus, self.lambda_plus), (self.c_minus, self.lambda_minus)]


	@staticmethod
	def isvalid(c_plus, c_minus, alpha, lambda_plus, lambda_minus):
		"""isvalid(c_plus:float, c_minus:float, alpha:float, lambda_plus:float, lambda_minus:float) -> (bool, string)
		Returns true if the parameters describe a non-degenerate tempered
		stable measure, false otherwise.
		"""
		if not (0.0 <= alpha < 2.0):
			return (False, "Error! The tempered stable index alpha={} does not lie in [0, 2).".format(alpha))
		for name, value in (("lambda_plus", lambda_plus), ("lambda_minus", lambda_minus)):
			if not (math.isfinite(value) and value > 0.0):
				return (False, "Error! The tempering rate {}={} must be positive.".format(name, value))
		return _isvalid_weights(c_plus, c_minus)


def upper_gamma(s, z):
	"""upper_gamma(s:float, z:float) -> float
	Returns the upper incomplete gamma function Γ(s, z) for z > 0 and any real
	s, using the recurrence Γ(s, z) = (Γ(s+1, z) - z^s e^-z) / s below zero.
	"""
	if not z > 0.0:
		raise InvalidParameterError("Error! The upper incomplete gamma function requires z > 0, got {}.".format(z))
	if s > 0.0:
		return float(special.gammaincc(s, z) * special.gamma(s))
	elif s == 0.0:
		return float(special.exp1(z))
	return (upper_gamma(s + 1.0, z) - z ** s * math.exp(-z)) / s


def _tempered_side_exponent(zeta, alpha, lam):
	# Integral of exp(i zeta x) - 1 - i zeta x 1{x <= 1} against e^(-lam x) x^(-1-alpha) on x > 0.
	if zeta == 0.0:
		return 0.0j
	if alpha == 0.0:
		return -np.log(1.0 - 1j * zeta / lam) - 1j * zeta * (1.0 - math.exp(-lam)) / lam
	if alpha == 1.0:
		return (lam - 1j * zeta) * np.log(1.0 - 1j * zeta / lam) + 1j * zeta + 1j * zeta * special.exp1(lam)
	g = special.gamma(-alpha)
	return (
		g * ((lam - 1j * zeta) ** alpha - lam ** alpha + 1j * zeta * alpha * lam ** (alpha - 1.0))
		+ 1j * zeta * lam ** (alpha - 1.0) * upper_gamma(1.0 - alpha, lam)
	)


@functools.lru_cache(maxsize=64)
def _tempered_inverse_table(alpha, lam, delta):
	# Tabulated CDF of e^(-lam x) x^(-1-alpha) on (delta, inf) in the variable u = log x.
	upper = delta + 50.0 / lam
	grid = np.linspace(math.log(delta), math.log(upper), 8193)
	x = np.exp(grid)
	weight = np.exp(-lam * x) * x ** -alpha
	cdf = integrate.cumulative_trapezoid(weight, grid, initial=0.0)
	return grid, cdf / cdf[-1]


def _isvalid_weights(c_plus, c_minus):
	if not (math.isfinite(c_plus) and math.isfinite(c_minus)) or c_plus < 0.0 or c_minus < 0.0:
		return (False, "Error! The weights c_plus={} and c_minus={} must be non-negative.".format(c_plus, c_minus))
	if c_plus + c_minus <= 0.0:
		return (False, "Error! The weights c_plus and c_minus can not both be zero.")
	return (True, None)


MEASURE_TYPES = [ZeroMeasure.kind, CompoundPoisson.kind, StableLike.kind, TemperedStable.kind]
