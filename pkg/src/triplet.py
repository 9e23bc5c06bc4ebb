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
import enum
import math
import os
from scipy import special
from src.errors import InvalidParameterError, NotBoundedVariation, NumericFailure, TripletFileError, UnsupportedCase
from src.measure import LevyMeasure, StableLike, TemperedStable
from src.quadrature import Region

# A bounded-variation drift smaller than this (relative to max(1, |gamma|)) is
# treated as zero, so that a center chosen to cancel the compensator is honoured.
DRIFT_TOLERANCE = 1e-12


class LimitKind(enum.Enum):
	BROWNIAN_MOTION     = "brownian_motion"
	LINEAR_DRIFT        = "linear_drift"
	STRICTLY_STABLE     = "strictly_stable"
	NO_NONTRIVIAL_LIMIT = "no_nontrivial_limit"


class LevyTriplet:
	gamma = None
	sigma = None
	measure = None

	def __init__(self, gamma, sigma, measure):
		"""__init__(gamma:float, sigma:float, measure:LevyMeasure)
		Instantiates the characteristic triplet of a Lévy process, where gamma
		is the center term, sigma the Gaussian coefficient and measure the
		Lévy measure.
		"""
		self.gamma = float(gamma)
		self.sigma = float(sigma)
		self.measure = measure

		valid, message = LevyTriplet.isvalid(self)
		if not valid:
			raise InvalidParameterError(message)


	def __repr__(self):
		return "LevyTriplet(gamma={!r}, sigma={!r}, measure={!r})".format(self.gamma, self.sigma, self.measure)


	def __eq__(self, other):
		return isinstance(other, LevyTriplet) and self.todict() == other.todict()


	def __hash__(self):
		return hash((self.gamma, self.sigma, self.measure))


	def todict(self):
		"""todict() -> dict
		Returns the triplet in the form of a triplet document.
		"""
		return {"gamma":self.gamma, "sigma":self.sigma, "measure":self.measure.todict()}


	@staticmethod
	def isvalid(triplet):
		"""isvalid(triplet:LevyTriplet) -> (bool, string)
		Returns true if the triplet is valid, false otherwise.
		"""
		if not math.isfinite(triplet.gamma):
			return (False, "Error! The center gamma must be finite, got {}.".format(triplet.gamma))
		if not (math.isfinite(triplet.sigma) and triplet.sigma >= 0.0):
			return (False, "Error! The Gaussian coefficient sigma must be finite and non-negative, got {}.".format(triplet.sigma))
		if not isinstance(triplet.measure, LevyMeasure):
			return (False, "Error! The measure of a triplet must be a LevyMeasure.")
		return (True, None)


class SmallTimeLimit:
	"""
	The self-similar Lévy process obtained by zooming in on a triplet, together
	with its self-similarity index H and the index alpha of its scaling
	function.
	"""
	kind = None
	H = None
	alpha = None
	limit_params = None

	def __init__(self, kind, H=None, alpha=None, limit_params=None):
		self.kind = kind
		self.H = H
		self.alpha = alpha
		self.limit_params = dict(limit_params or {})

		valid, message = SmallTimeLimit.isvalid(self)
		if not valid:
			raise InvalidParameterError(message)


	def __repr__(self):
		return "SmallTimeLimit(kind={}, H={!r}, alpha={!r}, limit_params={!r})".format(self.kind.value, self.H, self.alpha, self.limit_params)


	def isnontrivial(self):
		return self.kind is not LimitKind.NO_NONTRIVIAL_LIMIT


	def todict(self):
		return {"kind":self.kind.value, "H":self.H, "alpha":self.alpha, "limit_params":dict(self.limit_params)}


	@staticmethod
	def isvalid(limit):
		"""isvalid(limit:SmallTimeLimit) -> (bool, string)
		Returns true if the index H and alpha agree with the kind of limit, false
		otherwise.
		"""
		kind, H, alpha = limit.kind, limit.H, limit.alpha
		if kind is LimitKind.BROWNIAN_MOTION:
			valid = (H == 0.5 and alpha == 2.0)
		elif kind is LimitKind.LINEAR_DRIFT:
			valid = (H == 1.0 and alpha == 1.0)
		elif kind is LimitKind.STRICTLY_STABLE:
			valid = alpha is not None and 0.0 < alpha < 2.0 and H == 1.0 / alpha
		elif kind is LimitKind.NO_NONTRIVIAL_LIMIT:
			valid = (H is None and alpha is None)
		else:
			return (False, "Error! '{}' is not a kind of small-time limit.".format(kind))

		if not valid:
			return (False, "Error! The indices H={} and alpha={} do not describe a {} limit.".format(H, alpha, kind.value))
		return (True, None)


def characteristic_exponent(triplet, zeta):
	"""characteristic_exponent(triplet:LevyTriplet, zeta:float) -> complex
	Returns the Lévy-Khintchine exponent Ψ(zeta), so that E exp(i zeta X(t)) =
	exp(t Ψ(zeta)).
	"""
	zeta = float(zeta)
	return complex(1j * triplet.gamma * zeta - 0.5 * triplet.sigma ** 2 * zeta ** 2 + triplet.measure.exponent(zeta))


def bg_index(measure):
	"""bg_index(measure:LevyMeasure) -> float
	Returns the Blumenthal-Getoor index of the measure.
	"""
	return measure.bg_index()


def tail_index(measure):
	"""tail_index(measure:LevyMeasure) -> float
	Returns the smallest order beyond which the large jumps have no moment.
	"""
	return measure.tail_index()


def frac_moment_measure(measure, q, region=Region.ALL):
	"""frac_moment_measure(measure:LevyMeasure, q:float, region:Region) -> float
	Returns the integral of |x|^q against the measure over the region, or +inf
	when it diverges.
	"""
	_require_positive_order(q)
	return measure.frac_moment(q, region)


def quadrature_frac_moment(measure, q, region=Region.ALL):
	"""quadrature_frac_moment(measure:LevyMeasure, q:float, region:Region) -> float
	Returns frac_moment_measure computed by adaptive quadrature of the Lévy
	density, or by exact summation for atomic jump laws.
	"""
	_require_positive_order(q)
	return measure.quadrature_moment(q, region)


def signed_inner_moment(measure):
	"""signed_inner_moment(measure:LevyMeasure) -> float
	Returns the integral of x over {|x| <= 1}.
	"""
	return measure.signed_inner_moment()


def is_bounded_variation(triplet):
	"""is_bounded_variation(triplet:LevyTriplet) -> bool
	Returns true if the paths of the process have bounded variation.
	"""
	return triplet.sigma == 0.0 and triplet.measure.has_inner_first_moment()


def bv_drift(triplet):
	"""bv_drift(triplet:LevyTriplet) -> float
	Returns the drift gamma' = gamma - ∫_{|x|<=1} x Π(dx) of the bounded
	variation form of the exponent.
	"""
	if not triplet.measure.has_inner_first_moment():
		raise NotBoundedVariation(
			"Error! The process is not of bounded variation: the Lévy measure has Blumenthal-Getoor index {} >= 1.".format(triplet.measure.bg_index())
		)
	drift = triplet.gamma - triplet.measure.signed_inner_moment()
	if abs(drift) <= DRIFT_TOLERANCE * max(1.0, abs(triplet.gamma)):
		return 0.0
	return drift


def classify_small_time_limit(triplet):
	"""classify_small_time_limit(triplet:LevyTriplet) -> SmallTimeLimit
	Returns the limit of the zoomed-in process a_e^-1 X(e t) as e goes to 0.
	"""
	measure = triplet.measure

	if triplet.sigma > 0.0:
		return SmallTimeLimit(LimitKind.BROWNIAN_MOTION, 0.5, 2.0, {"sigma":triplet.sigma})

	if measure.has_inner_first_moment():
		drift = bv_drift(triplet)
		if drift != 0.0:
			return SmallTimeLimit(LimitKind.LINEAR_DRIFT, 1.0, 1.0, {"gamma":drift})

	if isinstance(measure, (StableLike, TemperedStable)):
		alpha = measure.alpha
		# Gamma-like measures (alpha = 0) and asymmetric alpha = 1 measures have
		# no strictly stable limit.
		if alpha == 0.0 or (alpha == 1.0 and measure.c_plus != measure.c_minus):
			return SmallTimeLimit(LimitKind.NO_NONTRIVIAL_LIMIT)

		params = {"c_plus":measure.c_plus, "c_minus":measure.c_minus, "alpha":alpha}
		if alpha == 1.0:
			# The center survives the zoom for the symmetric Cauchy limit.
			params["gamma"] = triplet.gamma
		return SmallTimeLimit(LimitKind.STRICTLY_STABLE, 1.0 / alpha, alpha, params)

	return SmallTimeLimit(LimitKind.NO_NONTRIVIAL_LIMIT)


def stable_parameters(c_plus, c_minus, alpha):
	"""stable_parameters(c_plus:float, c_minus:float, alpha:float) -> (float, float)
	Returns the scale and skewness of the strictly stable law with Lévy
	density c+- |x|^(-1-alpha) and center (c+ - c-)/(1 - alpha).
	"""
	valid, message = StableLike.isvalid(float(c_plus), float(c_minus), float(alpha))
	if not valid:
		raise InvalidParameterError(message)

	total = c_plus + c_minus
	if alpha == 1.0:
		if c_plus != c_minus:
			raise UnsupportedCase("Error! A strictly 1-stable law requires c_plus = c_minus, got {} and {}.".format(c_plus, c_minus))
		return (total * math.pi / 2.0, 0.0)

	# Γ(-alpha) cos(pi alpha / 2) is negative on (0, 1) and (1, 2) and tends to
	# -pi/2 at alpha = 1, where both factors blow up or vanish.
	weight = -total * special.gamma(-alpha) * math.cos(math.pi * alpha / 2.0)
	if not (math.isfinite(weight) and weight > 0.0):
		raise NumericFailure(
			"Error! The stable scale for alpha={} could not be computed. Move alpha away from 1 or use a symmetric measure with alpha = 1.".format(alpha)
		)
	return (weight ** (1.0 / alpha), (c_plus - c_minus) / total)


def triplet_from_dict(document):
	"""triplet_from_dict(document:dict) -> LevyTriplet
	Validates a triplet document and instantiates the triplet it describes.
	"""
	from src.schema import validate_triplet

	validate_triplet(document)
	try:
		return LevyTriplet(document["gamma"], document["sigma"], LevyMeasure.fromdict(document["measure"]))
	except InvalidParameterError as e:
		raise TripletFileError(str(e))


def load_triplet(path):
	"""load_triplet(path:string) -> LevyTriplet
	Reads the triplet file located at the specified path. The file format is
	chosen from its extension.
	"""
	import simplejson, yaml

	parsers = {
		".json":simplejson.loads,
		".yaml":yaml.safe_load,
		".yml":yaml.safe_load
	}
	extension = os.path.splitext(path)[1].lower()
	parser = parsers.get(extension)
	if parser is None:
		raise TripletFileError("Error! Could not find a suitable triplet file parser for the extension '{}'.".format(extension))

	try:
		with open(path, "r", encoding="utf-8") as file:
			data = file.read()
	except (IOError, OSError) as e:
		raise TripletFileError("Error! The triplet file '{}' could not be read: {}.".format(path, e.strerror or e))

	try:
		document = parser(data)
	except simplejson.JSONDecodeError as e:
		raise TripletFileError(
			"Error! The triplet file '{}' is not valid JSON at line {}, column {}: {}.".format(path, e.lineno, e.colno, e.msg),
			line=e.lineno,
			column=e.colno
		)
	except yaml.YAMLError as e:
		mark = getattr(e, "problem_mark", None)
		line, column = (mark.line + 1, mark.column + 1) if mark is not None else (None, None)
		raise TripletFileError(
			"Error! The triplet file '{}' is not valid YAML at line {}, column {}.".format(path, line, column),
			line=line,
			column=column
		)

	return triplet_from_dict(document)


def _require_positive_order(q):
	if not q > 0.0:
		raise InvalidParameterError("Error! The moment order q must be positive, got {}.".format(q))
