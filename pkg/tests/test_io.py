from __future__ import annotations

import json
import math

import pytest
from _strategies import figures
from hypothesis import given

from circpoly.dissect import dissect, verify
from circpoly.figure import InvalidChain, circle, congruent, lens, rectangle, signature, square
from circpoly.io import (
    FormatError,
    dumps_dissection,
    dumps_figure,
    figure_to_dict,
    loads_dissection,
    loads_figure,
    read_dissection,
    read_figure,
    write_dissection,
    write_figure,
)
from circpoly.oval import oval_from_profile
from circpoly.suites import decision_pair


@given(figures)
def test_figure_round_trip(c):
    text = dumps_figure(c)
    back = loads_figure(text)
    assert congruent(back, c) is not None
    assert dumps_figure(back) == text


def test_figure_file_round_trip(tmp_path):
    p = tmp_path / "lens.cpfig"
    write_figure(p, lens(1.0, math.pi))
    first = p.read_bytes()
    write_figure(p, read_figure(p))
    assert p.read_bytes() == first


def test_oval_annotation_is_ignored_on_load():
    v = oval_from_profile(signature(lens(1.0, 2.0)))
    text = dumps_figure(v.chain, oval=True)
    assert json.loads(text)["oval"] is True
    assert congruent(loads_figure(text), v.chain) is not None


def test_figure_format_is_the_documented_one():
    d = json.loads(dumps_figure(square(1.0)))
    assert d["format"] == "cpfig/1"
    assert {e["k"] for e in d["elements"]} == {"seg", "corner"}
    assert json.loads(dumps_figure(circle(2.0)))["elements"] == [{"k": "arc", "r": 2.0, "sweep": 2 * math.pi}]


@pytest.mark.parametrize("text", [
    "not json",
    '{"format": "cpfig/2", "start": [0, 0], "heading": 0, "elements": []}',
    '{"format": "cpfig/1", "heading": 0, "elements": []}',
    '{"format": "cpfig/1", "start": [0], "heading": 0, "elements": []}',
    '{"format": "cpfig/1", "start": [0, 0], "heading": "x", "elements": []}',
    '{"format": "cpfig/1", "start": [0, 0], "heading": 0, "elements": {}}',
    '{"format": "cpfig/1", "start": [0, 0], "heading": 0, "elements": [{"k": "spline"}]}',
    '{"format": "cpfig/1", "start": [0, 0], "heading": 0, "elements": [{"k": "arc", "r": 1}]}',
])
def test_malformed_figures(text):
    with pytest.raises(FormatError):
        loads_figure(text)


def test_negative_length_is_invalid():
    with pytest.raises(InvalidChain):
        loads_figure('{"format": "cpfig/1", "start": [0, 0], "heading": 0, "elements": [{"k": "seg", "len": -1}]}')


def test_open_chain_is_invalid():
    d = figure_to_dict(square(1.0))
    d["elements"][0]["len"] = 1.5
    with pytest.raises(InvalidChain):
        loads_figure(json.dumps(d))
    assert loads_figure(json.dumps(d), check=False).elements[0].length == 1.5


def test_missing_file():
    with pytest.raises(FormatError):
        read_figure("/nonexistent/x.cpfig")


@pytest.mark.parametrize("pair", [
    (square(2.0), rectangle(1.0, 4.0)),
    decision_pair("lens", 3, 0, True),
])
def test_dissection_round_trip(tmp_path, pair):
    d = dissect(*pair)
    text = dumps_dissection(d)
    back = loads_dissection(text)
    assert dumps_dissection(back) == text
    assert verify(back, 20_000).passed
    p = tmp_path / "d.cpdis"
    write_dissection(p, back)
    assert p.read_text() == text
    assert dumps_dissection(read_dissection(p)) == text


def test_dissection_format_fields():
    doc = json.loads(dumps_dissection(dissect(circle(1.0), circle(1.0))))
    assert doc["format"] == "cpdis/1"
    (piece,) = doc["pieces"]
    assert piece["edges"][0]["k"] == "arc"
    assert set(piece["edges"][0]) == {"k", "c", "r", "a", "b", "ccw"}
    assert set(piece["source"]) == {"rot", "tx", "ty", "flip"}


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(format="cpdis/0"),
    lambda d: d.update(pieces={}),
    lambda d: d["pieces"][0].update(edges=[]),
    lambda d: d["pieces"][0]["edges"][0].update(k="bezier"),
    lambda d: d["pieces"][0]["source"].update(flip="no"),
    lambda d: d["pieces"][0].pop("target"),
])
def test_malformed_dissections(mutate):
    doc = json.loads(dumps_dissection(dissect(square(2.0), rectangle(1.0, 4.0))))
    mutate(doc)
    with pytest.raises(FormatError):
        loads_dissection(json.dumps(doc))
