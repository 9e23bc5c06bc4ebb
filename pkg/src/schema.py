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
JSON schemas of the documents levyzoom reads and writes.
"""
import jsonschema
from src.errors import TripletFileError
from src.jumps import JUMP_TYPES
from src.measure import MEASURE_TYPES

_NUMBER   = {"type":"number"}
_POSITIVE = {"type":"number", "exclusiveMinimum":0}
_NONNEG   = {"type":"number", "minimum":0}

# Infinities are written as the strings "inf" and "-inf".
_EXTENDED = {"oneOf":[{"type":"number"}, {"enum":["inf", "-inf"]}]}


def _family(name, properties):
	return {
		"type":"object",
		"properties":dict(properties, type={"const":name}),
		"required":["type"] + sorted(properties.keys()),
		"additionalProperties":False
	}


JUMP_SCHEMA = {
	"oneOf":[
		_family("discrete", {
			"atoms":{
				"type":"array",
				"minItems":1,
				"items":{
					"type":"object",
					"properties":{"size":_NUMBER, "prob":{"type":"number", "exclusiveMinimum":0, "maximum":1}},
					"required":["size", "prob"],
					"additionalProperties":False
				}
			}
		}),
		_family("uniform", {"a":_NUMBER, "b":_NUMBER}),
		_family("gaussian", {"mean":_NUMBER, "sd":_POSITIVE})
	]
}

MEASURE_SCHEMA = {
	"oneOf":[
		_family("zero", {}),
		_family("compound_poisson", {"rate":_POSITIVE, "jump_dist":JUMP_SCHEMA}),
		_family("stable_like", {
			"c_plus":_NONNEG,
			"c_minus":_NONNEG,
			"alpha":{"type":"number", "exclusiveMinimum":0, "exclusiveMaximum":2}
		}),
		_family("tempered_stable", {
			"c_plus":_NONNEG,
			"c_minus":_NONNEG,
			"alpha":{"type":"number", "minimum":0, "exclusiveMaximum":2},
			"lambda_plus":_POSITIVE,
			"lambda_minus":_POSITIVE
		})
	]
}

TRIPLET_SCHEMA = {
	"$schema":"http://json-schema.org/draft-07/schema#",
	"title":"Lévy triplet",
	"type":"object",
	"properties":{
		"gamma":_NUMBER,
		"sigma":_NONNEG,
		"measure":MEASURE_SCHEMA
	},
	"required":["gamma", "sigma", "measure"],
	"additionalProperties":False
}

PIECEWISE_SCHEMA = {
	"$schema":"http://json-schema.org/draft-07/schema#",
	"title":"Piecewise linear function",
	"type":"object",
	"properties":{
		"segments":{
			"type":"array",
			"minItems":1,
			"items":{
				"type":"object",
				"properties":{"q_lo":_EXTENDED, "q_hi":_EXTENDED, "slope":_NUMBER, "value_at_lo":_EXTENDED},
				"required":["q_lo", "q_hi", "slope", "value_at_lo"],
				"additionalProperties":False
			}
		},
		"domain":{"type":"array", "items":_EXTENDED, "minItems":2, "maxItems":2},
		"closed":{"type":"array", "items":{"type":"boolean"}, "minItems":2, "maxItems":2}
	},
	"required":["segments", "domain"]
}

REPORT_SCHEMA = {
	"$schema":"http://json-schema.org/draft-07/schema#",
	"title":"Estimate report",
	"type":"object",
	"properties":{
		"estimate":_EXTENDED,
		"std_error":{"oneOf":[_NONNEG, {"const":"inf"}]},
		"n_samples":{"type":"integer", "minimum":1},
		"seed":{"type":"integer", "minimum":0},
		"meta":{"type":"object"}
	},
	"required":["estimate", "std_error", "n_samples", "seed", "meta"]
}

LIMIT_SCHEMA = {
	"$schema":"http://json-schema.org/draft-07/schema#",
	"title":"Small-time limit",
	"type":"object",
	"properties":{
		"kind":{"enum":["brownian_motion", "linear_drift", "strictly_stable", "no_nontrivial_limit"]},
		"H":{"oneOf":[_POSITIVE, {"type":"null"}]},
		"alpha":{"oneOf":[_POSITIVE, {"type":"null"}]},
		"limit_params":{"type":"object"}
	},
	"required":["kind", "H", "alpha"]
}


def validate_triplet(document):
	"""validate_triplet(document:object)
	Validates a parsed triplet document, raising a TripletFileError that
	describes the first problem found.
	"""
	if not isinstance(document, dict):
		raise TripletFileError("Error! A triplet document must be an object with the fields 'gamma', 'sigma' and 'measure'.")

	# Unknown family names would otherwise surface as an opaque 'oneOf' failure.
	measure = document.get("measure")
	if isinstance(measure, dict):
		kind = measure.get("type")
		if kind not in MEASURE_TYPES:
			raise TripletFileError(
				"Error! The measure type '{}' is not recognized. Supported types are: {}.".format(kind, ", ".join(MEASURE_TYPES))
			)
		jumps = measure.get("jump_dist")
		if kind == "compound_poisson" and isinstance(jumps, dict) and jumps.get("type") not in JUMP_TYPES:
			raise TripletFileError(
				"Error! The jump distribution '{}' is not recognized. Supported types are: {}.".format(jumps.get("type"), ", ".join(JUMP_TYPES))
			)

	validate(document, TRIPLET_SCHEMA)


def validate(document, schema):
	"""validate(document:object, schema:dict)
	Validates the document against the specified Draft 7 schema.
	"""
	validator = jsonschema.Draft7Validator(schema)
	error = jsonschema.exceptions.best_match(validator.iter_errors(document))
	if error is not None:
		where = "/".join(str(p) for p in error.absolute_path) or "(root)"
		raise TripletFileError("Error! The document is not valid at '{}': {}".format(where, error.message))


def toextended(value):
	"""toextended(value:float) -> float|string
	Returns the value with infinities replaced by the strings "inf" and "-inf".
	"""
	if value == float("inf"):
		return "inf"
	elif value == float("-inf"):
		return "-inf"
	return value


def fromextended(value):
	"""fromextended(value:float|string) -> float
	Reverses toextended.
	"""
	return float(value)


def jsonsafe(document):
	"""jsonsafe(document:object) -> object
	Returns a copy of the document in which every infinity, including those
	nested in lists and dictionaries, is replaced by its string form.
	"""
	if isinstance(document, dict):
		return {key:jsonsafe(value) for key, value in document.items()}
	elif isinstance(document, (list, tuple)):
		return [jsonsafe(value) for value in document]
	elif isinstance(document, float):
		return toextended(document)
	return document
