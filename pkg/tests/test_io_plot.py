from fractions import Fraction as Q
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given

from plthompson.constructions import make_bump
from plthompson.io import FormatError, format_map, load_pairs, parse_map, save_map, save_pairs
from plthompson.numbers import THOMPSON, GroupContext
from plthompson.plmaps import PLMap
from plthompson.plot import to_csv, to_svg

from conftest import maps


@given(maps())
def test_map_text_round_trip(x):
    assert parse_map(format_map(x)) == x


def test_map_file_format():
    text = "# a bump\n2 1\n\n0 0\n1/4 1/2\n1/2 3/4\n1 1\n"
    x = parse_map(text)
    assert x.ctx == THOMPSON
    assert x(Q(1, 4)) == Q(1, 2)
    assert format_map(x).splitlines()[0] == "2 1"


@pytest.mark.parametrize("text, where", [
    ("", "empty"), ("2\n0 0\n1 1\n", "line 1"), ("2 1\n0 0 0\n1 1\n", "line 2"),
    ("2 1\n0 0\n1/0 1\n", "line 3"), ("2 1\n0 0\nx 1\n", "line 3"),
])
def test_map_format_errors(text, where):
    with pytest.raises(FormatError, match=where):
        parse_map(text)


def test_invalid_breakpoints_are_rejected():
    with pytest.raises(ValueError):
        parse_map("2 1\n0 0\n1/3 1/2\n1 1\n")


def test_pairs_round_trip(tmp_path):
    x = make_bump(THOMPSON, Q(1, 4), Q(1, 2), 2, Q(1, 2))
    y = PLMap.identity(THOMPSON)
    written = save_pairs(tmp_path / "list.txt", [(x, y), (y, x)])
    assert len(written) == 4
    assert load_pairs(tmp_path / "list.txt") == [(x, y), (y, x)]


def test_odd_pairs_file(tmp_path):
    save_map(tmp_path / "a.map", PLMap.identity(THOMPSON))
    (tmp_path / "list.txt").write_text("a.map\n")
    with pytest.raises(FormatError):
        load_pairs(tmp_path / "list.txt")


def test_csv():
    x = make_bump(THOMPSON, Q(1, 4), Q(1, 2), 2, Q(1, 2))
    rows = to_csv(x).splitlines()
    assert rows[0] == "x,y,x_float,y_float"
    assert len(rows) == 1 + len(x.xs)
    first = rows[2].split(",")
    assert Q(first[0]) == x.xs[1] and float(first[2]) == float(x.xs[1])


def test_svg_is_well_formed():
    ctx = GroupContext(3, Q(2))
    x = make_bump(ctx, Q(1, 3), Q(5, 3), 3, Q(1, 3))
    svg = to_svg([x, PLMap.identity(ctx)], size=200)
    root = ET.fromstring(svg)
    lines = root.findall("{http://www.w3.org/2000/svg}polyline")
    assert len(lines) == 2
    assert root.get("width") == "260"
    with pytest.raises(ValueError):
        to_svg([])
