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
Samplers for the increment X(dt) of a Lévy process and for the two-point toy
model, with seeding that does not depend on how the work is shared.

Every batch is cut into blocks of BLOCK_SIZE consecutive draws, and block k
is drawn from a PCG64 stream seeded with mix_seed(seed, k). Workers only
decide which thread draws which block.
"""
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from src.errors import InvalidParameterError, NumericFailure, SimulationError, UnsupportedCase
from src.measure import StableLike
from src.triplet import stable_parameters

logger = logging.getLogger(__name__)

BLOCK_SIZE       = 4096
MAX_POISSON_MEAN = 1e9
MASK64           = (1 << 64) - 1
GOLDEN_GAMMA     = 0x9E3779B97F4A7C15

# Derived configurations (one per estimation grid point) draw their seeds
# far from the block indices of the parent seed.
DERIVED_OFFSET   = 1 << 40


class SimConfig:
	seed = 0
	truncation_delta = 1e-4
	gaussian_compensation = True
	workers = 1
	relative_cutoff = 0.05

	def __init__(self, seed=0, truncation_delta=1e-4, gaussian_compensation=True, workers=1, relative_cutoff=0.05):
		"""__init__(seed:int, truncation_delta:float, gaussian_compensation:bool, workers:int, relative_cutoff:float)
		Instantiates the settings of a simulation. Jumps smaller than the
		cutoff min(truncation_delta, relative_cutoff dt^(1/beta0)) are replaced
		by a Gaussian of matching variance, or dropped without compensation.
		A relative_cutoff of None keeps the cutoff at truncation_delta.
		"""
		self.seed = seed
		self.truncation_delta = truncation_delta
		self.gaussian_compensation = bool(gaussian_compensation)
		self.workers = workers
		self.relative_cutoff = relative_cutoff

		valid, message = SimConfig.isvalid(self)
		if not valid:
			raise InvalidParameterError(message)


	def __repr__(self):
		return "SimConfig(seed={}, truncation_delta={}, gaussian_compensation={}, workers={}, relative_cutoff={})".format(
			self.seed, self.truncation_delta, self.gaussian_compensation, self.workers, self.relative_cutoff
		)


	def replace(self, **changes):
		"""replace(**changes) -> SimConfig
		Returns a copy of the configuration with the specified fields changed.
		"""
		fields = {
			"seed":self.seed,
			"truncation_delta":self.truncation_delta,
			"gaussian_compensation":self.gaussian_compensation,
			"workers":self.workers,
			"relative_cutoff":self.relative_cutoff
		}
		fields.update(changes)
		return SimConfig(**fields)


	def derive(self, index):
		"""derive(index:int) -> SimConfig
		Returns the configuration of the index-th independent sub-experiment.
		"""
		return self.replace(seed=mix_seed(self.seed, DERIVED_OFFSET + index))


	def cutoff(self, measure, dt):
		"""cutoff(measure:LevyMeasure, dt:float) -> float
		Returns the small-jump cutoff used at the time step dt.
		"""
		delta = self.truncation_delta
		beta0 = measure.bg_index()
		if self.relative_cutoff is not None and beta0 > 0.0:
			# dt^(1/beta0) underflows for beta0 near 0; the cutoff stays a positive float.
			delta = min(delta, max(self.relative_cutoff * dt ** (1.0 / beta0), sys.float_info.min))
		return delta


	@staticmethod
	def isvalid(config):
		"""isvalid(config:SimConfig) -> (bool, string)
		Returns true if the configuration is valid, false otherwise.
		"""
		if not isinstance(config.seed, int) or isinstance(config.seed, bool) or not (0 <= config.seed <= MASK64):
			return (False, "Error! The seed must be an unsigned 64-bit integer, got {!r}.".format(config.seed))
		if not (0.0 < config.truncation_delta <= 1.0):
			return (False, "Error! The truncation delta must lie in (0, 1], got {}.".format(config.truncation_delta))
		if not isinstance(config.workers, int) or config.workers < 1:
			return (False, "Error! The number of workers must be a positive integer, got {!r}.".format(config.workers))
		if config.relative_cutoff is not None and not config.relative_cutoff > 0.0:
			return (False, "Error! The relative cutoff must be positive, got {}.".format(config.relative_cutoff))
		return (True, None)


class ToyModelParams:
	"""
	The two-point law Z_n = n^(-1/alpha) with probability 1 - 1/n and 1 with
	probability 1/n, whose moments scale like those of an intermittent process.
	"""
	alpha = None
	n = None

	def __init__(self, alpha, n):
		self.alpha = float(alpha)
		self.n = n

		valid, message = ToyModelParams.isvalid(self)
		if not valid:
			raise InvalidParameterError(message)


	def __repr__(self):
		return "ToyModelParams(alpha={}, n={})".format(self.alpha, self.n)


	@staticmethod
	def isvalid(params):
		"""isvalid(params:ToyModelParams) -> (bool, string)
		Returns true if the parameters are valid, false otherwise.
		"""
		if not (0.0 < params.alpha <= 2.0):
			return (False, "Error! The toy model index alpha must lie in (0, 2], got {}.".format(params.alpha))
		if not isinstance(params.n, int) or isinstance(params.n, bool) or params.n < 2:
			return (False, "Error! The toy model requires an integer n >= 2, got {!r}.".format(params.n))
		return (True, None)


class IncrementSampler:
	"""
	Draws X(dt) for a fixed triplet and time step. Compound Poisson measures
	are sampled exactly, StableLike measures exactly when they are strictly
	stable up to a drift, and the other infinite-activity measures by
	truncating the jumps at a small cutoff.
	"""
	def __init__(self, triplet, dt, config=None):
		"""__init__(triplet:LevyTriplet, dt:float, config:SimConfig)
		Prepares the sampler. Raises a SimulationError if the truncated
		measure would require an unreasonable number of jumps per draw.
		"""
		self.config = config or SimConfig()
		self.triplet = triplet
		self.dt = _timestep(dt)

		measure = triplet.measure
		self.drift = triplet.gamma * self.dt
		self.diffusion = triplet.sigma * math.sqrt(self.dt)
		self.stable = None
		self.cutoff = None
		self.jump_rate = 0.0
		self.small_jump_sd = 0.0

		if isinstance(measure, StableLike) and (measure.alpha != 1.0 or measure.issymmetric()):
			self._prepare_stable(measure)
		elif not measure.iszero():
			self._prepare_truncation(measure)


	def _prepare_stable(self, measure):
		# X(dt) = (gamma - gamma0) dt + S(dt), where gamma0 = (c+ - c-)/(1 - alpha)
		# is the center for which the process is strictly stable.
		alpha = measure.alpha
		try:
			scale, skew = stable_parameters(measure.c_plus, measure.c_minus, alpha)
		except (NumericFailure, UnsupportedCase) as e:
			raise SimulationError("{} Simulate with a tempered measure or shift alpha away from 1.".format(e))

		if alpha != 1.0:
			self.drift -= (measure.c_plus - measure.c_minus) / (1.0 - alpha) * self.dt
		self.stable = (alpha, stable_scale(scale, self.dt, alpha), skew)


	def _prepare_truncation(self, measure):
		if measure.isfinite():
			self.cutoff = 0.0
		else:
			self.cutoff = self.config.cutoff(measure, self.dt)
		self.jump_rate = self.dt * measure.tail_mass(self.cutoff)
		if self.jump_rate > MAX_POISSON_MEAN:
			raise SimulationError(
				"Error! The truncated measure produces {:.3g} jumps per draw on average. Reduce dt or raise delta.".format(self.jump_rate)
			)

		# Large jumps below 1 are compensated, the compensated small jumps are centred.
		self.drift -= self.dt * measure.compensator_mean(self.cutoff)
		if self.config.gaussian_compensation and self.cutoff > 0.0:
			self.small_jump_sd = math.sqrt(self.dt * measure.small_jump_variance(self.cutoff))
		logger.info(
			"[simulate::IncrementSampler] dt=%g cutoff=%g expected jumps per draw=%g", self.dt, self.cutoff, self.jump_rate
		)


	def draw(self, rng, size):
		"""draw(rng:numpy.random.Generator, size:int) -> numpy.ndarray
		Draws size independent copies of X(dt).
		"""
		x = np.full(size, self.drift)
		if self.diffusion > 0.0:
			x += self.diffusion * rng.standard_normal(size)
		if self.stable is not None:
			alpha, scale, skew = self.stable
			x += stable_draws(rng, alpha, scale, skew, size)
		if self.jump_rate > 0.0:
			counts = rng.poisson(self.jump_rate, size)
			jumps = self.triplet.measure.sample_large_jumps(rng, int(counts.sum()), self.cutoff)
			x += np.bincount(np.repeat(np.arange(size), counts), weights=jumps, minlength=size)
		if self.small_jump_sd > 0.0:
			x += self.small_jump_sd * rng.standard_normal(size)
		return x


def mix_seed(seed, index):
	"""mix_seed(seed:int, index:int) -> int
	Returns the 64-bit seed of the stream with the specified index: the
	SplitMix64 finaliser applied to seed + (index + 1) * 0x9E3779B97F4A7C15.
	"""
	z = (seed + (index + 1) * GOLDEN_GAMMA) & MASK64
	z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
	z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
	return z ^ (z >> 31)


def stream(seed, index):
	"""stream(seed:int, index:int) -> numpy.random.Generator
	Returns the random number generator of the stream with the specified index.
	"""
	return np.random.Generator(np.random.PCG64(mix_seed(seed, index)))


def stable_draws(rng, alpha, scale, skew, size):
	"""stable_draws(rng:numpy.random.Generator, alpha:float, scale:float, skew:float, size:int) -> numpy.ndarray
	Draws from the strictly stable law S_alpha(scale, skew, 0) with the
	Chambers-Mallows-Stuck method. For alpha = 1 only the symmetric (Cauchy)
	law is supported.
	"""
	if alpha == 1.0:
		if skew != 0.0:
			raise UnsupportedCase("Error! Only the symmetric strictly 1-stable law can be sampled.")
		return scale * rng.standard_cauchy(size)

	u = rng.uniform(-0.5 * np.pi, 0.5 * np.pi, size)
	w = rng.standard_exponential(size)
	t = np.arctan(skew * np.tan(0.5 * np.pi * alpha)) / alpha
	# Magnitudes are combined as logarithms, the powers 1/alpha overflow for small alpha.
	numerator = np.sin(alpha * (u + t))
	with np.errstate(divide="ignore"):
		magnitude = (
			np.log(scale) + np.log(np.abs(numerator))
			- np.log(np.cos(alpha * t) * np.cos(u)) / alpha
			+ (1.0 - alpha) / alpha * (np.log(np.cos(alpha * t + (alpha - 1.0) * u)) - np.log(w))
		)
	with np.errstate(over="ignore"):
		return np.sign(numerator) * np.exp(magnitude)


def stable_scale(scale, dt, alpha):
	"""stable_scale(scale:float, dt:float, alpha:float) -> float
	Returns the scale of the strictly stable increment over dt, scale * dt^(1/alpha),
	computed in log space.
	"""
	with np.errstate(over="ignore"):
		return float(np.exp(math.log(scale) + math.log(dt) / alpha))


def toy_draws(params, rng, size):
	"""toy_draws(params:ToyModelParams, rng:numpy.random.Generator, size:int) -> numpy.ndarray
	Draws size copies of the toy variable Z_n.
	"""
	small = params.n ** (-1.0 / params.alpha)
	return np.where(rng.random(size) < 1.0 / params.n, 1.0, small)


def sample_increment(triplet, dt, config=None, stream_index=0):
	"""sample_increment(triplet:LevyTriplet, dt:float, config:SimConfig, stream_index:int) -> float
	Returns one draw of X(dt) from the stream with the specified index.
	"""
	config = config or SimConfig()
	return float(IncrementSampler(triplet, dt, config).draw(stream(config.seed, stream_index), 1)[0])


def sample_stable(alpha, c_plus, c_minus, dt, config=None, stream_index=0):
	"""sample_stable(alpha:float, c_plus:float, c_minus:float, dt:float, config:SimConfig, stream_index:int) -> float
	Returns one draw of the strictly stable increment S(dt) with Lévy density
	c+- |x|^(-1-alpha), centred so that the process is strictly stable.
	"""
	config = config or SimConfig()
	dt = _timestep(dt)
	try:
		scale, skew = stable_parameters(c_plus, c_minus, alpha)
	except (NumericFailure, UnsupportedCase) as e:
		raise SimulationError("{} Shift alpha away from 1 or use c_plus = c_minus.".format(e))
	draw = stable_draws(stream(config.seed, stream_index), float(alpha), stable_scale(scale, dt, alpha), skew, 1)
	return float(draw[0])


def sample_toy(params, config=None, stream_index=0):
	"""sample_toy(params:ToyModelParams, config:SimConfig, stream_index:int) -> float
	Returns one draw of the toy variable Z_n.
	"""
	config = config or SimConfig()
	return float(toy_draws(params, stream(config.seed, stream_index), 1)[0])


def batch_sample(triplet, dt, N, config=None):
	"""batch_sample(triplet:LevyTriplet, dt:float, N:int, config:SimConfig) -> numpy.ndarray
	Returns N independent draws of X(dt). The output only depends on the seed,
	never on the number of workers.
	"""
	config = config or SimConfig()
	sampler = IncrementSampler(triplet, dt, config)
	return _blocks(sampler.draw, N, config)


def batch_toy(params, N, config=None):
	"""batch_toy(params:ToyModelParams, N:int, config:SimConfig) -> numpy.ndarray
	Returns N independent draws of the toy variable Z_n.
	"""
	config = config or SimConfig()
	return _blocks(lambda rng, size: toy_draws(params, rng, size), N, config)


def _timestep(dt):
	try:
		dt = float(dt)
	except (TypeError, ValueError):
		dt = float("nan")
	if not (math.isfinite(dt) and dt > 0.0):
		raise InvalidParameterError("Error! The time step dt must be positive and finite.")
	return dt


def _blocks(draw, N, config):
	if not isinstance(N, (int, np.integer)) or isinstance(N, bool) or N < 1:
		raise InvalidParameterError("Error! The number of samples must be a positive integer, got {!r}.".format(N))

	N = int(N)
	count = (N + BLOCK_SIZE - 1) // BLOCK_SIZE

	def work(k):
		return draw(stream(config.seed, k), min(BLOCK_SIZE, N - k * BLOCK_SIZE))

	if config.workers == 1 or count == 1:
		parts = [work(k) for k in range(count)]
	else:
		with ThreadPoolExecutor(max_workers=config.workers) as pool:
			parts = list(pool.map(work, range(count)))
	return np.concatenate(parts)
