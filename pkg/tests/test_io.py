import json
import math

import pytest

from hyperspectra import io
from hyperspectra.cusps import find_distinguished_lines
from hyperspectra.errors import InvalidDocument
from hyperspectra.spectrum import compare_spectra
from hyperspectra.surfaces import FenchelNielsenGenus2, genus2_from_fn, pants_group


def test_fmt():
    assert io.fmt(1 / 3) == 0.333333333333
    assert io.fmt(-0.0) == 0.0 and str(io.fmt(-0.0)) == "0.0"
    assert io.fmt(math.inf) == "inf" and io.fmt(math.nan) == "nan"
    assert io.fmt(123456789.123456789) == 123456789.123


@pytest.mark.parametrize("g", [
    pants_group(True),
    pants_group(False, (1, 1, 1)),
    genus2_from_fn(FenchelNielsenGenus2.symmetric(0.9, 0.7)),
])
def test_group_round_trip(g):
    text = io.dumps(io.group_doc(g))
    g2 = io.loads(text)
    assert io.dumps(io.group_doc(g2)) == text
    for a, b in zip(g.generators, g2.generators):
        assert a.close_to(b, 1e-10)
    assert g2.labels == g.labels and g2.relators == g.relators and g2.signature == g.signature


def test_group_json_shape():
    doc = json.loads(io.dumps(io.group_doc(pants_group(True))))
    assert doc["kind"] == "group" and doc["version"] == 1
    assert doc["generators"][0] == {"a": [1.0, 0.0], "b": [2.0, 0.0], "c": [0.0, 0.0], "d": [1.0, 0.0]}
    assert doc["peripheral"] == [[1], [2], [1, 2]] and doc["signature"] == [0, 3]


def test_spectrum_round_trip(cusped_spectrum_4):
    s = cusped_spectrum_4
    text = io.dumps(io.spectrum_doc(s))
    s2 = io.loads(text)
    assert io.dumps(io.spectrum_doc(s2)) == text
    c = compare_spectra(s, s2, 1e-9)
    assert not c.only_left and not c.only_right


def test_diagram_round_trip(cusped_diagram):
    d = cusped_diagram
    lines = find_distinguished_lines(d)
    text = io.dumps(io.diagram_doc(d, lines))
    doc = json.loads(text)
    d2 = io.load_diagram(doc)
    assert io.dumps(io.diagram_doc(d2, io.load_lines(doc))) == text
    assert len(d2.balls) == len(d.balls)


def test_deterministic_bytes(cusped_spectrum_4):
    a = io.dumps(io.spectrum_doc(cusped_spectrum_4))
    b = io.dumps(io.spectrum_doc(cusped_spectrum_4))
    assert a == b and a.endswith("\n")


def test_invalid_documents(cusped_spectrum_4):
    with pytest.raises(InvalidDocument):
        io.loads("not json")
    with pytest.raises(InvalidDocument):
        io.loads('{"kind": "banana", "version": 1}')
    with pytest.raises(InvalidDocument):
        io.loads('{"kind": "group", "version": 2}')
    doc = io.spectrum_doc(cusped_spectrum_4)
    doc = json.loads(io.dumps(doc))
    extra = {"length": 3.9, "rotation": 0.0, "mult": 1, "witness": []}
    doc["entries"] = [extra] + doc["entries"]
    with pytest.raises(InvalidDocument):
        io.load_spectrum(doc)
    doc["entries"] = [{"length": 9.0, "rotation": 0.0, "mult": 1, "witness": [1]}]
    with pytest.raises(InvalidDocument):
        io.load_spectrum(doc)
    g = json.loads(io.dumps(io.group_doc(pants_group(True))))
    g["generators"][0]["b"] = [5.0, 0.0]
    g["generators"][0]["a"] = [2.0, 0.0]
    with pytest.raises(Exception):
        io.load_group(g)
    d = {"kind": "diagram", "version": 1, "lattice": [[2, 0]],
         "balls": [{"center": [0, 0], "diameter": 1}, {"center": [0.5, 0], "diameter": 1}],
         "floor": 0.1}
    with pytest.raises(InvalidDocument):
        io.load_diagram(d)


def test_svg(cusped):
    from hyperspectra.cusps import build_horoball_diagram

    d = build_horoball_diagram(cusped, (1,), 0.2)
    svg = io.render_svg(d, find_distinguished_lines(d))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    full = [l for l in svg.splitlines() if 'class="full"' in l]
    # two full-sized balls per period, drawn over three periods, radius 50px
    assert len(full) == 6
    for l in full:
        assert 'r="50.00"' in l
        cx = float(l.split('cx="')[1].split('"')[0])
        assert cx / 100 == round(cx / 100)
    assert 'class="distinguished"' in svg
