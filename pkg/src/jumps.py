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
import numpy as np
from scipy import special, stats
from src.errors import InvalidParameterError
from src.quadrature import Region, integrate_interval

class JumpDist:
	"""
	The law of a single jump of a compound Poisson process.
	"""
	kind = None

	def abs_moment(self, q, region=Region.ALL):
		"""abs_moment(q:float, region:Region) -> float
		Returns E[|J|^q ; J in region].
		"""
		raise NotImplementedError


	def mass(self, region=Region.ALL):
		"""mass(region:Region) -> float
		Returns P(J in region).
		"""
		return self.abs_moment(0.0, region)


	def inner_mean(self):
		"""inner_mean() -> float
		Returns E[J ; |J| <= 1], the part of the mean that the Lévy-Khintchine
		compensator removes.
		"""
		raise NotImplementedError


	def characteristic_function(self, zeta):
		raise NotImplementedError


	def sample(self, rng, size):
		"""sample(rng:numpy.random.Generator, size:int) -> numpy.ndarray
		Draws the specified number of jumps.
		"""
		raise NotImplementedError


	def density(self, x):
		"""density(x:float) -> float
		Returns the jump density at x, or None if the law has atoms.
		"""
		return None


	def todict(self):
		raise NotImplementedError


	@staticmethod
	def fromdict(configuration):
		"""fromdict(configuration:dict) -> JumpDist
		Instantiates the jump law described by the specified configuration.
		"""
		kind = configuration.get("type")
		if kind == "discrete":
			return DiscreteJumps([(atom["size"], atom["prob"]) for atom in configuration["atoms"]])
		elif kind == "uniform":
			return UniformJumps(configuration["a"], configuration["b"])
		elif kind == "gaussian":
			return GaussianJumps(configuration["mean"], configuration["sd"])
		raise InvalidParameterError(
			"Error! The jump distribution '{}' is not recognized. Supported types are: {}.".format(kind, ", ".join(JUMP_TYPES))
		)


class DiscreteJumps(JumpDist):
	kind = "discrete"
	atoms = None

	def __init__(self, atoms):
		"""__init__(atoms:list<tuple<float, float>>)
		Instantiates a jump law with finitely many atoms, given as a list of
		(size, probability) pairs.
		"""
		self.atoms = tuple((float(size), float(prob)) for size, prob in atoms)

		valid, message = DiscreteJumps.isvalid(self.atoms)
		if not valid:
			raise InvalidParameterError(message)

		self._sizes = np.array([size for size, _ in self.atoms])
		self._probs = np.array([prob for _, prob in self.atoms])


	def abs_moment(self, q, region=Region.ALL):
		return math.fsum(prob * abs(size) ** q for size, prob in self.atoms if region.contains(size))


	def inner_mean(self):
		return math.fsum(prob * size for size, prob in self.atoms if abs(size) <= 1.0)


	def characteristic_function(self, zeta):
		return complex(np.sum(self._probs * np.exp(1j * zeta * self._sizes)))


	def sample(self, rng, size):
		if len(self.atoms) == 1:
			return np.full(size, self._sizes[0])
		# Renormalise so that rounding within the 1e-12 tolerance is accepted by numpy.
		return rng.choice(self._sizes, size=size, p=self._probs / self._probs.sum())


	def todict(self):
		return {"type":self.kind, "atoms":[{"size":size, "prob":prob} for size, prob in self.atoms]}


	@staticmethod
	def isvalid(atoms):
		"""isvalid(atoms:tuple) -> (bool, string)
		Returns true if the atoms describe a probability law without an atom at
		zero, false otherwise.
		"""
		if len(atoms) < 1:
			return (False, "Error! A discrete jump law requires at least one atom.")
		for size, prob in atoms:
			if not math.isfinite(size) or size == 0.0:
				return (False, "Error! The jump size '{}' is not allowed. Atoms must be finite and non-zero.".format(size))
			if not (0.0 < prob <= 1.0):
				return (False, "Error! The atom probability '{}' does not lie in (0, 1].".format(prob))
		total = math.fsum(prob for _, prob in atoms)
		if abs(total - 1.0) > 1e-12:
			return (False, "Error! The atom probabilities sum to {!r} instead of 1.".format(total))
		return (True, None)


class UniformJumps(JumpDist):
	kind = "uniform"
	a = None
	b = None

	def __init__(self, a, b):
		"""__init__(a:float, b:float)
		Instantiates jumps distributed uniformly on [a, b].
		"""
		self.a, self.b = float(a), float(b)
		if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
			raise InvalidParameterError("Error! A uniform jump law requires finite bounds a < b, got [{}, {}].".format(a, b))


	def abs_moment(self, q, region=Region.ALL):
		def antiderivative(x):
			return math.copysign(abs(x) ** (q + 1.0), x) / (q + 1.0)

		total = 0.0
		for lo, hi in self._pieces(region):
			total += antiderivative(hi) - antiderivative(lo)
		return total / (self.b - self.a)


	def inner_mean(self):
		lo, hi = max(self.a, -1.0), min(self.b, 1.0)
		if lo >= hi:
			return 0.0
		return (hi * hi - lo * lo) / (2.0 * (self.b - self.a))


	def characteristic_function(self, zeta):
		if zeta == 0.0:
			return 1.0 + 0.0j
		return (np.exp(1j * zeta * self.b) - np.exp(1j * zeta * self.a)) / (1j * zeta * (self.b - self.a))


	def sample(self, rng, size):
		return rng.uniform(self.a, self.b, size)


	def density(self, x):
		return 1.0 / (self.b - self.a) if self.a <= x <= self.b else 0.0


	def todict(self):
		return {"type":self.kind, "a":self.a, "b":self.b}


	def _pieces(self, region):
		if region is Region.INNER:
			bounds = [(max(self.a, -1.0), min(self.b, 1.0))]
		elif region is Region.OUTER:
			bounds = [(self.a, min(self.b, -1.0)), (max(self.a, 1.0), self.b)]
		else:
			bounds = [(self.a, self.b)]
		return [(lo, hi) for lo, hi in bounds if lo < hi]


class GaussianJumps(JumpDist):
	kind = "gaussian"
	mean = None
	sd = None

	def __init__(self, mean, sd):
		"""__init__(mean:float, sd:float)
		Instantiates normally distributed jumps.
		"""
		self.mean, self.sd = float(mean), float(sd)
		if not (math.isfinite(self.mean) and math.isfinite(self.sd) and self.sd > 0.0):
			raise InvalidParameterError("Error! A Gaussian jump law requires a finite mean and a positive standard deviation.")


	def abs_moment(self, q, region=Region.ALL):
		# E|J|^q through the confluent hypergeometric representation.
		total = (
			self.sd ** q * 2.0 ** (q / 2.0) * special.gamma((q + 1.0) / 2.0) / math.sqrt(math.pi)
			* special.hyp1f1(-q / 2.0, 0.5, -self.mean ** 2 / (2.0 * self.sd ** 2))
		)
		if region is Region.ALL:
			return float(total)

		inner = integrate_interval(lambda x: abs(x) ** q * self.density(x), -1.0, 1.0, points=[0.0])
		return inner if region is Region.INNER else max(float(total) - inner, 0.0)


	def mass(self, region=Region.ALL):
		inner = stats.norm.cdf(1.0, self.mean, self.sd) - stats.norm.cdf(-1.0, self.mean, self.sd)
		if region is Region.INNER:
			return float(inner)
		elif region is Region.OUTER:
			return float(1.0 - inner)
		return 1.0


	def inner_mean(self):
		lo = (-1.0 - self.mean) / self.sd
		hi = (1.0 - self.mean) / self.sd
		return float(
			self.mean * (stats.norm.cdf(hi) - stats.norm.cdf(lo))
			- self.sd * (stats.norm.pdf(hi) - stats.norm.pdf(lo))
		)


	def characteristic_function(self, zeta):
		return complex(np.exp(1j * self.mean * zeta - 0.5 * (self.sd * zeta) ** 2))


	def sample(self, rng, size):
		return rng.normal(self.mean, self.sd, size)


	def density(self, x):
		return float(stats.norm.pdf(x, self.mean, self.sd))


	def todict(self):
		return {"type":self.kind, "mean":self.mean, "sd":self.sd}


JUMP_TYPES = [DiscreteJumps.kind, UniformJumps.kind, GaussianJumps.kind]
