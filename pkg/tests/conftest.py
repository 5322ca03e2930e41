from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from heckeq.chartab import apply_labels, galois_orbits, ingest_table  # noqa: E402
from heckeq.cli import _data_path, parse_group_file  # noqa: E402
from heckeq.hecke import build_hecke  # noqa: E402
from heckeq.homology import regular_module  # noqa: E402
from heckeq.permgrp import generate, parse_cycles  # noqa: E402


class Example:
    """A bundled group with named subgroups, table and labelled characters."""

    def __init__(self, group_file: str, table_file: str):
        self.gf = parse_group_file(_data_path(group_file).read_text(), group_file)
        self.G = generate(self.gf.generators, degree=self.gf.degree)
        self.table = ingest_table(_data_path(table_file), self.G)
        self.rcs = apply_labels(galois_orbits(self.table), self.gf.labels)
        self._hecke = {}
        self._regular = None

    def el(self, text: str):
        return parse_cycles(text, self.G.degree)

    def sub(self, name: str):
        return self.G.subgroup(self.gf.subgroups[name])

    def rc(self, label: str):
        return next(r for r in self.rcs if r.label == label)

    def hecke(self, name: str):
        if name not in self._hecke:
            self._hecke[name] = build_hecke(self.G, self.sub(name), self.gf.representatives.get(name))
        return self._hecke[name]

    @property
    def regular(self):
        if self._regular is None:
            self._regular = regular_module(self.G)
        return self._regular


@pytest.fixture(scope="session")
def s4():
    return Example("s4.group", "s4.table")


@pytest.fixture(scope="session")
def g80():
    return Example("g80.group", "g80.table")


@pytest.fixture(scope="session")
def frozen():
    from oracles import load_frozen

    return load_frozen()


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])

