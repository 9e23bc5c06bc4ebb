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
from colorama import Style

USAGE_ERROR = 2

def bold(text):
	"""bold(text:string) -> string
	Returns the specified text wrapped in the terminal's bold style.
	"""
	return Style.BRIGHT + text + Style.RESET_ALL


class CustomHelpFormatter(argparse.RawTextHelpFormatter):
	def _multiline(self, text):
		"""_multiline(text:string) -> list<string>
		Wraps the block of text into lines that fit the formatter's width.
		"""
		import textwrap

		text = self._whitespace_matcher.sub(" ", text).strip()
		return textwrap.wrap(text, self._width)


	def _format_action(self, action):
		if not action.help or action.help == argparse.SUPPRESS:
			return ""

		invocation = bold(self._format_action_invocation(action))
		parts      = ["\t%s\n" % (invocation)]

		for line in self._multiline(self._expand_help(action)):
			parts.append("\t%*s%s\n" % (6, " ", line))

		parts.append("\n")

		for subaction in self._iter_indented_subactions(action):
			parts.append(self._format_action(subaction))

		return self._join_parts(parts)


	def add_name(self, name):
		self.add_text("{0}\n\t{1}".format(bold("NAME"), name))


	def add_synopsis(self, prog, commands=None):
		if commands:
			synopsis = "{0} {{{1}}} [OPTIONS]...".format(bold(prog), ",".join(commands))
		else:
			synopsis = "{0} [OPTIONS]...".format(bold(prog))
		self.add_text("{0}\n\t{1}".format(bold("SYNOPSIS"), synopsis))


	def add_description(self, action_groups):
		"""add_description(action_groups:list<ActionGroup>)
		Pretty-prints the command's arguments, as well as user-defined groups.
		"""
		self.add_text("{0}\n\t{1}".format(
			bold("DESCRIPTION"),
			"The following is a set of OPTIONS you can use to modify the command's behavior:")
		)
		for group in action_groups:
			self.add_text(group.description)
			self.add_arguments(group._group_actions)


	def add_epilogue(self, epilogue):
		"""add_epilogue(epilogue:string)
		Adds an epilogue to the help.
		"""
		if epilogue:
			self.add_text("{0}\n\t{1}".format(bold("ENVIRONMENT"), "\n\t".join(self._multiline(epilogue))))
		self.add_text(
			"{copyright_label}\n\t{copyright_notice}".format(
				copyright_label  = bold("COPYRIGHT"),
				copyright_notice = "\n\t".join(self._multiline("Copyright (c) 2026 The levyzoom developers. This program is free software: you can redistribute it and/or modify it under the terms of the GNU Affero General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version."))
			)
		)


class CustomArgumentParser(argparse.ArgumentParser):
	def error(self, message):
		"""error(message:string)
		Prints the usage and an error message to stderr and exits with the
		usage error status.
		"""
		self.print_usage(_stderr())
		self.exit(USAGE_ERROR, ("%s: error: %s\n") % (self.prog, message))


	def format_help(self):
		"""
		Formats the help.
		"""
		formatter = self._get_formatter()

		commands = None
		if self._subparsers is not None:
			for action in self._subparsers._group_actions:
				if isinstance(action, argparse._SubParsersAction):
					commands = list(action.choices.keys())

		formatter.add_name("{0} - {1}".format(self.prog, self.description))
		formatter.add_synopsis(self.prog, commands)
		formatter.add_description(self._action_groups)
		formatter.add_epilogue(self.epilog)

		return formatter.format_help()


def _stderr():
	import sys
	return sys.stderr
