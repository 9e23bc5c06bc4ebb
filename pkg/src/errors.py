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
class LevyZoomError(Exception):
	"""Base class of every domain error raised by levyzoom."""
	pass


class InvalidParameterError(LevyZoomError, ValueError):
	pass


class TripletFileError(LevyZoomError):
	"""A triplet file could not be read, parsed or validated."""
	line = None
	column = None

	def __init__(self, message, line=None, column=None):
		super(TripletFileError, self).__init__(message)
		self.line = line
		self.column = column


class NumericFailure(LevyZoomError):
	tolerance = None

	def __init__(self, message, tolerance=None):
		"""__init__(message:string, tolerance:float)
		Instantiates a numeric failure that records the tolerance that was
		actually achieved.
		"""
		super(NumericFailure, self).__init__(message)
		self.tolerance = tolerance


class NotBoundedVariation(LevyZoomError):
	pass


class NoLimitError(LevyZoomError):
	pass


class UnsupportedCase(LevyZoomError):
	pass


class SimulationError(LevyZoomError):
	pass


class DegenerateFitError(LevyZoomError):
	pass
