import re
import xml.etree.ElementTree as ET

import pytest

from mixforge.errors import UnsupportedDimension
from mixforge.geometry import to_path
from mixforge.splitter import find_split
from mixforge.svg import ARC_COLORS, render_svg, witness_annotations

FIG1 = "abbAbaBaBBBAbA"
NS = "{http://www.w3.org/2000/svg}"


def _arrows(svg):
    root = ET.fromstring(svg)
    return [el for el in root.iter(f"{NS}line") if el.get("marker-end")]


def test_deterministic_and_well_formed():
    a, b = render_svg(FIG1), render_svg(FIG1)
    assert a == b
    assert ET.fromstring(a).tag == f"{NS}svg"


def test_one_arrow_per_step():
    assert len(_arrows(render_svg(FIG1))) == len(FIG1)


def test_arrow_geometry_follows_path():
    svg = render_svg("ab")
    (first, second) = _arrows(svg)
    # a goes right, b goes up (screen y decreases)
    assert float(first.get("x2")) > float(first.get("x1"))
    assert first.get("y1") == first.get("y2")
    assert float(second.get("y2")) < float(second.get("y1"))


def test_empty_word_is_origin_dot():
    root = ET.fromstring(render_svg(""))
    assert not _arrows(render_svg(""))
    assert len(list(root.iter(f"{NS}circle"))) == 1


def test_rejects_third_letter():
    with pytest.raises(UnsupportedDimension):
        render_svg("cC")
    with pytest.raises(UnsupportedDimension):
        render_svg(to_path("aA", 3))


def test_accepts_path_object():
    assert render_svg(to_path("abAB", 2)) == render_svg("abAB")


def test_witness_colors_arcs():
    wit = find_split("abbAb", "aBaBBBAbA")
    svg = render_svg(FIG1, wit)
    root = ET.fromstring(svg)
    groups = [g for g in root.iter(f"{NS}g") if g.get("data-arc")]
    labels = [g.get("data-arc") for g in groups]
    assert labels == sorted(labels) and set(labels) <= {"K1", "K2", "K3", "K4"}
    assert {g.get("stroke") for g in groups} <= set(ARC_COLORS)
    bounds = (0, *wit.cuts, len(FIG1))
    sizes = [b - a for a, b in zip(bounds, bounds[1:]) if b > a]
    assert [len(list(g.iter(f"{NS}line"))) for g in groups] == sizes


def test_witness_marks_pqrs():
    wit = find_split("abbAb", "aBaBBBAbA")
    marks = witness_annotations(wit)
    assert marks["p"] == 0 and marks["q"] == 5
    texts = re.findall(r">([pqrs])</text>", render_svg(FIG1, wit))
    assert texts[:2] == ["p", "q"]


def test_explicit_annotations():
    svg = render_svg("abAB", annotations={"q": 2, "r": 99})
    assert re.findall(r">([pqrs])</text>", svg) == ["q"]
