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
import argparse
import csv
import io
import os
import shutil
import tempfile
import unittest
import mock
import simplejson
from src.cli import formatnumber, grid, run, seed
from src.piecewise import PiecewiseLinearFn
from src.scaling import theoretical_tau0
from src.schema import LIMIT_SCHEMA, PIECEWISE_SCHEMA, REPORT_SCHEMA, validate
from src.triplet import load_triplet

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "fixtures")


def fixture(name):
	return os.path.join(FIXTURES, name)


class TestCommandLine(unittest.TestCase):
	def setUp(self):
		self.directory = tempfile.mkdtemp()

	def tearDown(self):
		shutil.rmtree(self.directory)

	def path(self, name):
		return os.path.join(self.directory, name)

	def invoke(self, *argv):
		"""invoke(*argv:string) -> (int, string, string)
		Runs the command line and returns its exit status, standard output and
		standard error.
		"""
		with mock.patch("sys.stdout", new_callable=io.StringIO) as stdout, mock.patch("sys.stderr", new_callable=io.StringIO) as stderr:
			status = run(list(argv))
		return status, stdout.getvalue(), stderr.getvalue()

	def table(self, text):
		return list(csv.reader(io.StringIO(text)))

	def test_classify(self):
		status, out, _ = self.invoke("classify", "--triplet", fixture("bm_cp.json"))
		self.assertEqual(status, 0)
		document = simplejson.loads(out)
		validate(document, LIMIT_SCHEMA)
		self.assertEqual(document["kind"], "brownian_motion")
		self.assertEqual((document["H"], document["alpha"]), (0.5, 2.0))

	def test_tau_theoretical(self):
		status, out, _ = self.invoke("tau-theoretical", "--triplet", fixture("drift.json"), "--q-grid", "0.5:3:0.5")
		self.assertEqual(status, 0)
		rows = self.table(out)
		self.assertEqual(rows[0], ["q", "tau0"])
		values = [(float(q), float(tau)) for q, tau in rows[1:]]
		self.assertEqual(len(values), 6)
		for q, tau in values:
			self.assertAlmostEqual(tau, max(-q, -1.0), delta=1e-12, msg="q={}".format(q))

	def test_tau_theoretical_json(self):
		path = self.path("tau0.json")
		status, _, _ = self.invoke("tau-theoretical", "--triplet", fixture("bm_cp.json"), "--json", path)
		self.assertEqual(status, 0)
		with open(path, "r", encoding="utf-8") as file:
			document = simplejson.load(file)
		validate(document, PIECEWISE_SCHEMA)
		self.assertEqual(PiecewiseLinearFn.fromjson(document), theoretical_tau0(load_triplet(fixture("bm_cp.json"))))

	def test_rate_function(self):
		status, out, _ = self.invoke("rate-function", "--triplet", fixture("drift.json"), "--x-grid", "-2:0:1")
		self.assertEqual(status, 0)
		rows = self.table(out)
		self.assertEqual(rows[0], ["x", "rate", "bound_only"])
		self.assertEqual(rows[3][:2], ["0", "1"], "I(0) = 1")
		self.assertEqual(rows[2][1], "0", "I(-1/alpha) = 0")
		self.assertEqual(rows[1][2], "1", "Left of -1/alpha only a bound is known")

	def test_toy(self):
		status, out, _ = self.invoke("toy", "--alpha", "1", "--n", "100", "--q", "2", "--seed", "7", "--samples", "20000")
		self.assertEqual(status, 0)
		document = simplejson.loads(out)
		validate(document, REPORT_SCHEMA)
		self.assertEqual(document["seed"], 7)
		self.assertAlmostEqual(document["meta"]["exact"], 0.010099, delta=1e-15)
		self.assertAlmostEqual(document["estimate"], 0.010099, delta=4.0 * document["std_error"])

	def test_spectrum_with_a_gaussian_part(self):
		status, out, _ = self.invoke("spectrum", "--triplet", fixture("bm_cp.json"), "--h-grid", "0:1:0.5")
		self.assertEqual(status, 0)
		rows = self.table(out)
		self.assertEqual(rows[0], ["h", "d_formalism", "d_levy"])
		self.assertEqual(len(rows), 4)
		self.assertTrue(all(row[2] == "" for row in rows[1:]), "No closed form when sigma > 0")

	def test_spectrum_of_a_tempered_process(self):
		path = self.path("spectrum.json")
		status, out, _ = self.invoke("spectrum", "--triplet", fixture("tempered.json"), "--h-grid", "0:1.25:1.25", "--json", path)
		self.assertEqual(status, 0)
		rows = self.table(out)
		self.assertAlmostEqual(float(rows[2][1]), 1.0, delta=1e-12)
		self.assertAlmostEqual(float(rows[2][2]), 1.0, delta=1e-12)
		with open(path, "r", encoding="utf-8") as file:
			self.assertIn("levy", simplejson.load(file))

	def test_ldp(self):
		status, out, _ = self.invoke(
			"ldp", "--triplet", fixture("bm.json"), "--n", "1024", "--window=-1.45,-1.05", "--samples", "20000", "--seed", "3"
		)
		self.assertEqual(status, 0)
		document = simplejson.loads(out)
		validate(document, REPORT_SCHEMA)
		self.assertEqual((document["meta"]["a"], document["meta"]["b"]), (-1.45, -1.05))
		self.assertIn("gaussian_exact", document["meta"])

	def test_simulate_is_reproducible(self):
		first, second = self.path("first.csv"), self.path("second.csv")
		for path in [first, second]:
			status, out, _ = self.invoke("simulate", "--triplet", fixture("bm_cp.json"), "--dt", "0.01", "--n-samples", "500", "--seed", "5", "--out", path)
			self.assertEqual(status, 0)
			self.assertEqual(out, "", "The table goes to the file")
		with open(first, "r", encoding="utf-8") as a, open(second, "r", encoding="utf-8") as b:
			self.assertEqual(a.read(), b.read())

	def test_seed_from_the_environment(self):
		argv = ["simulate", "--triplet", fixture("bm.json"), "--dt", "0.5", "--n-samples", "20"]
		_, explicit, _ = self.invoke(*(argv + ["--seed", "5"]))
		with mock.patch.dict(os.environ, {"LEVYZOOM_SEED":"5"}):
			_, implicit, _ = self.invoke(*argv)
		self.assertEqual(explicit, implicit)
		self.assertEqual(len(self.table(explicit)), 21)

		with mock.patch.dict(os.environ, {"LEVYZOOM_SEED":"five"}):
			status, _, _ = self.invoke(*argv)
		self.assertEqual(status, 2)
		with mock.patch.dict(os.environ, {"LEVYZOOM_SEED":"-3"}):
			status, _, _ = self.invoke(*argv)
		self.assertEqual(status, 2)

	def test_seed_range(self):
		argv = ["simulate", "--triplet", fixture("bm.json"), "--dt", "1", "--n-samples", "10", "--seed"]
		status, _, err = self.invoke(*(argv + ["-1"]))
		self.assertEqual(status, 2, "Negative seeds are usage errors")
		self.assertIn("unsigned 64-bit seed", err)
		self.assertEqual(self.invoke(*(argv + [str(2 ** 64)]))[0], 2)
		self.assertEqual(self.invoke(*(argv + [str(2 ** 64 - 1)]))[0], 0)

	def test_workers_do_not_change_the_output(self):
		argv = ["simulate", "--triplet", fixture("tempered.json"), "--dt", "0.01", "--n-samples", "9000", "--delta", "0.01"]
		_, serial, _ = self.invoke(*argv)
		_, parallel, _ = self.invoke(*(argv + ["--workers", "3"]))
		self.assertEqual(serial, parallel)

	def test_usage_errors(self):
		status, _, err = self.invoke("classify", "--triplet", fixture("malformed.json"))
		self.assertEqual(status, 2)
		self.assertIn("line 4", err)

		status, _, err = self.invoke("classify", "--triplet", fixture("unknown_measure.json"))
		self.assertEqual(status, 2)
		self.assertIn("meixner", err)

		self.assertEqual(self.invoke("classify", "--triplet", self.path("missing.json"))[0], 2)
		self.assertEqual(self.invoke("classify")[0], 2, "The triplet is required")
		self.assertEqual(self.invoke("frobnicate")[0], 2)
		self.assertEqual(self.invoke()[0], 2)
		self.assertEqual(self.invoke("tau-theoretical", "--triplet", fixture("bm.json"), "--q-grid", "1:0:0.5")[0], 2)
		self.assertEqual(self.invoke("ldp", "--triplet", fixture("bm.json"), "--n", "16", "--window=1,0")[0], 2)
		self.assertEqual(self.invoke("simulate", "--triplet", fixture("bm.json"), "--dt", "1", "--n-samples", "0")[0], 2)

	def test_domain_errors(self):
		path = self.path("poisson.json")
		with open(path, "w", encoding="utf-8") as file:
			simplejson.dump({
				"gamma":0.0,
				"sigma":0.0,
				"measure":{
					"type":"compound_poisson",
					"rate":1.0,
					"jump_dist":{"type":"discrete", "atoms":[{"size":-2.0, "prob":0.5}, {"size":2.0, "prob":0.5}]}
				}
			}, file)

		status, out, err = self.invoke("rate-function", "--triplet", path)
		self.assertEqual(status, 1)
		self.assertEqual(out, "")
		self.assertTrue(err.startswith("Error!"))

		self.assertEqual(self.invoke("toy", "--alpha", "3", "--n", "10", "--q", "1")[0], 1)
		self.assertEqual(self.invoke("simulate", "--triplet", fixture("bm.json"), "--dt", "-1", "--n-samples", "10")[0], 1)

	def test_help(self):
		status, out, _ = self.invoke("--help")
		self.assertEqual(status, 0)
		self.assertIn("tau-theoretical", out)
		self.assertIn("LEVYZOOM_SEED", out)


class TestFormatting(unittest.TestCase):
	def test_grid(self):
		self.assertEqual(grid("0.5:2:0.5"), [0.5, 1.0, 1.5, 2.0])
		self.assertEqual(grid("16:128:dyadic"), [16, 32, 64, 128])
		self.assertEqual(grid("10:100:dyadic"), [16, 32, 64])

	def test_seed(self):
		self.assertEqual(seed("0"), 0)
		self.assertEqual(seed(str(2 ** 64 - 1)), 2 ** 64 - 1)
		for text in ["-1", str(2 ** 64), "1.5", "seven"]:
			self.assertRaises(argparse.ArgumentTypeError, seed, text)

	def test_numbers(self):
		self.assertEqual(formatnumber(0.1), "0.10000000000000001")
		self.assertEqual(formatnumber(float("inf")), "inf")
		self.assertEqual(formatnumber(float("-inf")), "-inf")
		self.assertEqual(formatnumber(None), "")
		self.assertEqual(formatnumber(2), "2")


if __name__ == "__main__":
	unittest.main()
