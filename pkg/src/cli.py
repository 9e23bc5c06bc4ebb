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
The levyzoom command line: every subcommand reads a triplet file, runs one
computation and writes a CSV table or a JSON document.
"""
import argparse
import csv
import io
import logging
import math
import os
import sys
import numpy as np
import simplejson
from src._argparse import USAGE_ERROR, CustomArgumentParser, CustomHelpFormatter
from src.errors import LevyZoomError, TripletFileError
from src.schema import jsonsafe

logger = logging.getLogger(__name__)

SEED_VARIABLE = "LEVYZOOM_SEED"
DOMAIN_ERROR  = 1

DEFAULT_Q_GRID = "0.25:4:0.25"
DEFAULT_N_GRID = "16:16384:dyadic"
DEFAULT_X_GRID = "-2:2:0.05"
DEFAULT_H_GRID = "0:2:0.01"


def grid(text):
	"""grid(text:string) -> list<float>
	Parses the grid specification "lo:hi:step", whose points run from lo to hi
	inclusive in increments of step, or "lo:hi:dyadic", whose points are the
	powers of two between lo and hi.
	"""
	parts = text.split(":")
	if len(parts) != 3:
		raise argparse.ArgumentTypeError("Error! The grid '{}' must have the form lo:hi:step or lo:hi:dyadic.".format(text))
	try:
		lo, hi = float(parts[0]), float(parts[1])
	except ValueError:
		raise argparse.ArgumentTypeError("Error! The bounds of the grid '{}' are not numbers.".format(text))
	if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
		raise argparse.ArgumentTypeError("Error! The grid '{}' requires finite bounds with lo <= hi.".format(text))

	if parts[2] == "dyadic":
		if not lo > 0.0:
			raise argparse.ArgumentTypeError("Error! A dyadic grid requires a positive lower bound, got {}.".format(lo))
		k0, k1 = int(math.ceil(math.log2(lo) - 1e-12)), int(math.floor(math.log2(hi) + 1e-12))
		points = [2 ** k for k in range(k0, k1 + 1)]
		if not points:
			raise argparse.ArgumentTypeError("Error! The grid '{}' contains no power of two.".format(text))
		return points

	try:
		step = float(parts[2])
	except ValueError:
		raise argparse.ArgumentTypeError("Error! The step of the grid '{}' is not a number.".format(text))
	if not step > 0.0:
		raise argparse.ArgumentTypeError("Error! The step of the grid '{}' must be positive.".format(text))

	count = int(math.floor((hi - lo) / step + 1e-9))
	return [lo + i * step for i in range(count + 1)]


def window(text):
	"""window(text:string) -> LDPWindow
	Parses the exponent window "a,b". Either end may be "inf" or "-inf".
	"""
	from src.estimate import LDPWindow

	parts = text.split(",")
	try:
		a, b = float(parts[0]), float(parts[1])
		if len(parts) != 2:
			raise ValueError(text)
		return LDPWindow(a, b)
	except (ValueError, IndexError, LevyZoomError):
		raise argparse.ArgumentTypeError("Error! The window '{}' must have the form a,b with a < b.".format(text))


def positive_int(text):
	try:
		value = int(text)
	except ValueError:
		value = 0
	if value < 1:
		raise argparse.ArgumentTypeError("Error! '{}' is not a positive integer.".format(text))
	return value


def seed(text):
	try:
		value = int(text)
	except ValueError:
		value = -1
	if not 0 <= value < 2 ** 64:
		raise argparse.ArgumentTypeError("Error! '{}' is not an unsigned 64-bit seed.".format(text))
	return value


def formatnumber(value):
	"""formatnumber(value:float) -> string
	Formats a CSV cell with 17 significant digits. Missing values are empty.
	"""
	if value is None:
		return ""
	value = float(value)
	if value == math.inf:
		return "inf"
	elif value == -math.inf:
		return "-inf"
	return "%.17g" % value


def tocsv(header, rows):
	"""tocsv(header:list<string>, rows:iterable<list>) -> string
	Returns the rows as CSV text, numbers formatted with formatnumber.
	"""
	buffer = io.StringIO()
	writer = csv.writer(buffer, lineterminator="\n")
	writer.writerow(header)
	for row in rows:
		writer.writerow([formatnumber(v) for v in row])
	return buffer.getvalue()


def tojson(document):
	"""tojson(document:object) -> string
	Returns the document as JSON text, infinities written as "inf"/"-inf".
	"""
	return simplejson.dumps(jsonsafe(_native(document)), indent=2, sort_keys=True) + "\n"


def emit(text, path=None):
	"""emit(text:string, path:string)
	Writes the text to the file at the specified path, or to the standard
	output when no path is given.
	"""
	if path is None:
		sys.stdout.write(text)
		return
	try:
		with open(path, "w", encoding="utf-8", newline="") as file:
			file.write(text)
	except (IOError, OSError) as e:
		raise LevyZoomError("Error! Could not write to '{}': {}.".format(path, e.strerror or e))
	logger.info("[cli::emit] Wrote %s.", os.path.realpath(path))


def _native(document):
	# numpy scalars are not serialisable as they are.
	if isinstance(document, dict):
		return {key:_native(value) for key, value in document.items()}
	elif isinstance(document, (list, tuple)):
		return [_native(value) for value in document]
	elif isinstance(document, np.generic):
		return document.item()
	return document


def default_seed():
	"""default_seed() -> int
	Returns the seed given by the LEVYZOOM_SEED environment variable, or 0.
	"""
	value = os.environ.get(SEED_VARIABLE)
	if value is None or not value.strip():
		return 0
	try:
		return seed(value)
	except argparse.ArgumentTypeError:
		raise argparse.ArgumentTypeError("Error! The environment variable {}='{}' is not an unsigned 64-bit seed.".format(SEED_VARIABLE, value))


def config(args):
	"""config(args:argparse.Namespace) -> SimConfig
	Returns the simulation settings selected on the command line.
	"""
	from src.simulate import SimConfig

	fields = {"seed":args.seed, "workers":args.workers}
	if args.delta is not None:
		fields["truncation_delta"] = args.delta
	return SimConfig(**fields)


def tau_theoretical(args):
	from src.scaling import theoretical_tau0

	tau0 = theoretical_tau0(args.triplet)
	if args.json is not None:
		emit(tojson(tau0.tojson()), args.json)
	return tocsv(["q", "tau0"], [[q, tau0(q)] for q in args.q_grid])


def tau_empirical(args):
	from src.estimate import fit_tau0
	from src.scaling import theoretical_tau0

	try:
		theory = theoretical_tau0(args.triplet)
	except LevyZoomError:
		theory = None

	settings = config(args)
	rows = []
	for i, q in enumerate(args.q_grid):
		if not q > 0.0:
			logger.warning("[cli::tau_empirical] Warning! Skipping the non-positive order q=%g.", q)
			continue
		fit = fit_tau0(args.triplet, q, args.n_grid, args.samples, settings.derive(i))
		expected = None if theory is None else theory(q)
		rows.append([q, fit.slope, fit.slope_std_error, expected])
	return tocsv(["q", "tau_hat", "stderr", "tau_theory"], rows)


def legendre(args):
	from src.scaling import legendre_transform, theoretical_tau0

	conjugate = legendre_transform(theoretical_tau0(args.triplet), restrict_positive=not args.all_orders)
	if args.json is not None:
		emit(tojson(conjugate.tojson()), args.json)
	return tocsv(["x", "tau0_star"], [[x, conjugate(x)] for x in args.x_grid])


def rate(args):
	from src.scaling import rate_function

	function = rate_function(args.triplet)
	if args.json is not None:
		emit(tojson(function.todict()), args.json)
	return tocsv(["x", "rate", "bound_only"], [[x, function(x), int(function.isbound(x))] for x in args.x_grid])


def ldp(args):
	from src.estimate import ldp_probability

	report = ldp_probability(args.triplet, args.n, args.window, args.samples, config(args))
	return tojson(report.todict())


def lemma(check):
	def command(args):
		rows = check(args.triplet, args.q, args.t, args.n_grid, args.samples, config(args))
		return tocsv(["n", "scaled_moment", "stderr", "target"], [[r.n, r.scaled, r.std_error, r.target] for r in rows])
	return command


def spectrum(args):
	from src.spectrum import formalism_spectrum, levy_spectrum, zeta_from_tau0
	from src.scaling import theoretical_tau0

	formalism = formalism_spectrum(zeta_from_tau0(theoretical_tau0(args.triplet)), extend_negative=not args.literal)
	closed_form = None
	beta0 = args.triplet.measure.bg_index()
	if args.triplet.sigma == 0.0 and beta0 > 0.0:
		closed_form = levy_spectrum(beta0)

	if args.json is not None:
		summary = formalism.todict()
		if closed_form is not None:
			summary["levy"] = closed_form.todict()
		emit(tojson(summary), args.json)

	rows = [[h, formalism(h), None if closed_form is None else closed_form(h)] for h in args.h_grid]
	return tocsv(["h", "d_formalism", "d_levy"], rows)


def simulate(args):
	from src.simulate import batch_sample

	x = batch_sample(args.triplet, args.dt, args.n_samples, config(args))
	return tocsv(["x"], [[v] for v in x])


def toy(args):
	from src.estimate import EstimateReport, toy_moment_exact
	from src.simulate import ToyModelParams, batch_toy

	params = ToyModelParams(args.alpha, args.n)
	settings = config(args)
	values = np.abs(batch_toy(params, args.samples, settings)) ** args.q
	std_error = float(np.std(values, ddof=1) / math.sqrt(args.samples)) if args.samples > 1 else 0.0
	meta = {"alpha":params.alpha, "n":params.n, "q":args.q, "exact":toy_moment_exact(params, args.q)}
	return tojson(EstimateReport(float(np.mean(values)), std_error, args.samples, settings.seed, meta).todict())


def classify(args):
	from src.triplet import classify_small_time_limit
	return tojson(classify_small_time_limit(args.triplet).todict())


def parser():
	"""parser() -> CustomArgumentParser
	Returns the parser of the levyzoom command line.
	"""
	from src import estimate
	from src.triplet import load_triplet

	def triplet(path):
		# Triplet file errors are usage errors and leave with exit status 2.
		try:
			return load_triplet(path)
		except TripletFileError as e:
			raise argparse.ArgumentTypeError(str(e))

	common = CustomArgumentParser(add_help=False, formatter_class=CustomHelpFormatter)
	group = common.add_argument_group("common options")
	group.add_argument("-h", "--help",    action="help",                   help="prints this help message and exits.")
	group.add_argument("--seed",          type=seed,         default=None, help="sets the 64-bit simulation seed. Defaults to ${} or 0.".format(SEED_VARIABLE))
	group.add_argument("--out",           metavar="PATH",    default=None, help="writes the output to PATH instead of the standard output.")
	group.add_argument("--workers",       type=positive_int, default=1,    help="sets the number of threads drawing samples. The output does not depend on it.")
	group.add_argument("--delta",         type=float,        default=None, help="sets the small-jump truncation cutoff of the simulator.")
	group.add_argument("-v", "--verbose", action="store_true",             help="reports progress on the standard error.")

	def triplet_option(p):
		p.add_argument("--triplet", metavar="PATH", type=triplet, required=True, help="sets the JSON or YAML file describing the Lévy triplet.")

	main = CustomArgumentParser(
		prog="levyzoom",
		description="studies the small-time scaling of Lévy processes.",
		epilog="{} sets the default seed when --seed is not given.".format(SEED_VARIABLE),
		formatter_class=CustomHelpFormatter,
		add_help=False
	)
	main.add_argument("-h", "--help", action="help", help="prints this help message and exits.")
	commands = main.add_subparsers(dest="command", metavar="COMMAND", parser_class=CustomArgumentParser, help="selects the computation to run.")
	commands.required = True

	def command(name, function, description):
		p = commands.add_parser(name, parents=[common], description=description, formatter_class=CustomHelpFormatter, add_help=False, help=description)
		p.set_defaults(function=function)
		return p

	p = command("tau-theoretical", tau_theoretical, "tabulates the theoretical scaling function.")
	triplet_option(p)
	p.add_argument("--q-grid", type=grid, default=grid(DEFAULT_Q_GRID), help="sets the orders q as lo:hi:step.")
	p.add_argument("--json",   metavar="PATH",                           help="writes the piecewise linear function to PATH.")

	p = command("tau-empirical", tau_empirical, "estimates the scaling function by log-log regression of simulated moments.")
	triplet_option(p)
	p.add_argument("--q-grid",  type=grid,         default=grid(DEFAULT_Q_GRID), help="sets the orders q as lo:hi:step.")
	p.add_argument("--n-grid",  type=grid,         default=grid(DEFAULT_N_GRID), help="sets the zoom factors n as lo:hi:dyadic.")
	p.add_argument("--samples", type=positive_int, default=10 ** 5,              help="sets the number of samples per zoom factor.")

	p = command("legendre", legendre, "tabulates the Legendre-Fenchel transform of the scaling function.")
	triplet_option(p)
	p.add_argument("--x-grid",     type=grid,           default=grid(DEFAULT_X_GRID), help="sets the points x as lo:hi:step.")
	p.add_argument("--all-orders", action="store_true",                                help="takes the transform over every order instead of positive ones only.")
	p.add_argument("--json",       metavar="PATH",                                     help="writes the piecewise linear transform to PATH.")

	p = command("rate-function", rate, "tabulates the large deviation rate function of log|X(1/n)|/log n.")
	triplet_option(p)
	p.add_argument("--x-grid", type=grid,     default=grid(DEFAULT_X_GRID), help="sets the points x as lo:hi:step.")
	p.add_argument("--json",   metavar="PATH",                              help="writes the rate function to PATH.")

	p = command("ldp", ldp, "estimates the probability of n^a < |X(1/n)| < n^b.")
	triplet_option(p)
	p.add_argument("--n",       type=positive_int, required=True,  help="sets the zoom factor n.")
	p.add_argument("--window",  type=window,       required=True,  help="sets the exponent window as a,b. Write --window=a,b when a is negative.")
	p.add_argument("--samples", type=positive_int, default=10 ** 6, help="sets the number of samples.")

	for name, check, description in [
		("lemma1", "lemma1_check", "compares n^(qH) E|X(t/n)|^q with the moment of the small-time limit."),
		("lemma2", "lemma2_check", "compares the scaled moments E|X(t/n)|^q with their closed-form limits.")
	]:
		p = command(name, lemma(getattr(estimate, check)), description)
		triplet_option(p)
		p.add_argument("--q",       type=float,        required=True,                help="sets the moment order q.")
		p.add_argument("--t",       type=float,        default=1.0,                  help="sets the fixed time t.")
		p.add_argument("--n-grid",  type=grid,         default=grid("4096:4096:dyadic"), help="sets the zoom factors n as lo:hi:dyadic.")
		p.add_argument("--samples", type=positive_int, default=10 ** 5,              help="sets the number of samples per zoom factor.")

	p = command("spectrum", spectrum, "tabulates the spectrum of singularities from the multifractal formalism.")
	triplet_option(p)
	p.add_argument("--h-grid",  type=grid,           default=grid(DEFAULT_H_GRID), help="sets the Hölder exponents h as lo:hi:step.")
	p.add_argument("--literal", action="store_true",                               help="takes the infimum over positive orders only.")
	p.add_argument("--json",    metavar="PATH",                                    help="writes the support and the maximum to PATH.")

	p = command("simulate", simulate, "draws independent copies of the increment X(dt).")
	triplet_option(p)
	p.add_argument("--dt",        type=float,        required=True, help="sets the time step dt.")
	p.add_argument("--n-samples", type=positive_int, required=True, help="sets the number of draws.")

	p = command("toy", toy, "estimates a moment of the two-point toy model and reports its exact value.")
	p.add_argument("--alpha",   type=float,        required=True,   help="sets the index alpha in (0, 2].")
	p.add_argument("--n",       type=int,          required=True,   help="sets the integer n >= 2.")
	p.add_argument("--q",       type=float,        required=True,   help="sets the moment order q.")
	p.add_argument("--samples", type=positive_int, default=10 ** 6, help="sets the number of samples.")

	p = command("classify", classify, "reports the small-time limit of the process.")
	triplet_option(p)

	return main


def run(argv):
	"""run(argv:list<string>) -> int
	Runs the command line with the specified arguments, excluding the program
	name, and returns the exit status: 0 on success, 1 on a domain error and 2
	on a usage or triplet file error.
	"""
	try:
		args = _parse(argv)
	except SystemExit as e:
		return e.code if isinstance(e.code, int) else USAGE_ERROR

	logging.basicConfig(
		stream=sys.stderr,
		level=logging.INFO if args.verbose else logging.WARNING,
		format="%(levelname)s %(message)s",
		force=True
	)
	try:
		emit(args.function(args), args.out)
	except TripletFileError as e:
		sys.stderr.write("{}\n".format(e))
		return USAGE_ERROR
	except LevyZoomError as e:
		sys.stderr.write("{}\n".format(e))
		return DOMAIN_ERROR
	return 0


def _parse(argv):
	main = parser()
	args = main.parse_args(argv)
	if args.seed is None:
		try:
			args.seed = default_seed()
		except argparse.ArgumentTypeError as e:
			main.error(str(e))
	return args
