#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# levyzoom, a toolkit for the small-time scaling of Lévy processes.
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
import sys
from src.cli import run

def main(argv):
	sys.exit(run(argv[1:]))


if __name__ == "__main__":
	main(sys.argv)
