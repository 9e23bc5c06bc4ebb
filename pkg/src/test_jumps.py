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
import unittest
import numpy as np
from scipy import stats
from src.errors import InvalidParameterError
from src.jumps import DiscreteJumps, GaussianJumps, JumpDist, UniformJumps
from src.quadrature import Region

class TestJumpDist(unittest.TestCase):
	def test_discrete_moments(self):
		jumps = DiscreteJumps([(1.0, 0.5), (-2.0, 0.5)])
		self.assertAlmostEqual(jumps.abs_moment(2.0), 2.5, places=14, msg="Second moment")
		self.assertAlmostEqual(jumps.abs_moment(2.0, Region.INNER), 0.5, places=14, msg="Inner second moment")
		self.assertAlmostEqual(jumps.abs_moment(2.0, Region.OUTER), 2.0, places=14, msg="Outer second moment")
		self.assertAlmostEqual(jumps.mass(Region.OUTER), 0.5, places=14, msg="Outer mass")
		self.assertAlmostEqual(jumps.inner_mean(), 0.5, places=14, msg="Mean of the jumps of size at most 1")

	def test_uniform_moments(self):
		jumps = UniformJumps(-1.0, 3.0)
		self.assertAlmostEqual(jumps.abs_moment(1.0), 1.25, places=12, msg="First absolute moment")
		self.assertAlmostEqual(jumps.abs_moment(1.0, Region.INNER), 0.25, places=12, msg="Inner first moment")
		self.assertAlmostEqual(jumps.abs_moment(1.0, Region.OUTER), 1.0, places=12, msg="Outer first moment")
		self.assertAlmostEqual(jumps.inner_mean(), 0.0, places=14, msg="Symmetric inner part")
		self.assertAlmostEqual(UniformJumps(0.0, 2.0).inner_mean(), 0.25, places=14, msg="One-sided inner part")

	def test_gaussian_moments(self):
		jumps = GaussianJumps(0.0, 1.0)
		self.assertAlmostEqual(jumps.abs_moment(2.0), 1.0, places=10, msg="Variance")
		self.assertAlmostEqual(jumps.abs_moment(1.0), math.sqrt(2.0 / math.pi), places=10, msg="Half-normal mean")
		self.assertAlmostEqual(jumps.mass(Region.INNER), 0.6826894921370859, places=10, msg="Mass of [-1, 1]")
		self.assertAlmostEqual(jumps.inner_mean(), 0.0, places=14, msg="Centred jumps")
		self.assertAlmostEqual(GaussianJumps(0.5, 1.0).abs_moment(2.0), 1.25, places=10, msg="Shifted second moment")

		inner = jumps.abs_moment(3.0, Region.INNER)
		outer = jumps.abs_moment(3.0, Region.OUTER)
		self.assertAlmostEqual(inner + outer, jumps.abs_moment(3.0), places=8, msg="Regions add up")

	def test_gaussian_inner_mean(self):
		jumps = GaussianJumps(0.7, 0.4)
		expected = stats.norm(0.7, 0.4).expect(lambda x: x, lb=-1.0, ub=1.0)
		self.assertAlmostEqual(jumps.inner_mean(), expected, places=8)

	def test_characteristic_functions(self):
		self.assertAlmostEqual(DiscreteJumps([(1.0, 1.0)]).characteristic_function(0.3), complex(math.cos(0.3), math.sin(0.3)), places=14)
		self.assertAlmostEqual(UniformJumps(-1.0, 1.0).characteristic_function(2.0), math.sin(2.0) / 2.0, places=14)
		self.assertAlmostEqual(GaussianJumps(0.0, 2.0).characteristic_function(1.0), math.exp(-2.0), places=14)

	def test_sampling(self):
		rng = np.random.Generator(np.random.PCG64(3))
		draws = DiscreteJumps([(1.0, 0.25), (-1.0, 0.75)]).sample(rng, 20000)
		self.assertTrue(set(np.unique(draws)) <= {1.0, -1.0}, "Only the atoms are drawn")
		self.assertAlmostEqual(np.mean(draws == 1.0), 0.25, delta=4.0 * math.sqrt(0.25 * 0.75 / 20000))

		draws = UniformJumps(2.0, 4.0).sample(rng, 20000)
		self.assertTrue(np.all((draws >= 2.0) & (draws <= 4.0)), "Draws within the support")

	def test_serialisation(self):
		for jumps in [DiscreteJumps([(1.5, 0.4), (-0.5, 0.6)]), UniformJumps(-2.0, 1.0), GaussianJumps(0.1, 0.3)]:
			again = JumpDist.fromdict(jumps.todict())
			self.assertEqual(type(again), type(jumps))
			self.assertEqual(again.todict(), jumps.todict())

	def test_illegal_jump_laws(self):
		self.assertFalse(DiscreteJumps.isvalid(())[0], "No atoms")
		self.assertFalse(DiscreteJumps.isvalid(((0.0, 1.0),))[0], "Atom at zero")
		self.assertFalse(DiscreteJumps.isvalid(((1.0, 0.5), (2.0, 0.4)))[0], "Probabilities do not sum to 1")
		self.assertFalse(DiscreteJumps.isvalid(((1.0, 1.5),))[0], "Probability above 1")
		self.assertRaises(InvalidParameterError, UniformJumps, 1.0, 1.0)
		self.assertRaises(InvalidParameterError, GaussianJumps, 0.0, 0.0)
		self.assertRaises(InvalidParameterError, JumpDist.fromdict, {"type":"laplace"})


if __name__ == "__main__":
	unittest.main()
