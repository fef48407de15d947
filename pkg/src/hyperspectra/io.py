"""JSON documents for groups, spectra, diagrams and reports, plus SVG output.

Every document is ``{"kind": ..., "version": 1, ...}``.  Floats are written
with at most 12 significant digits and keys are sorted, so identical
objects always serialize to identical bytes.  Loading re-checks the
invariants of the object being rebuilt.
"""

from __future__ import annotations

import json
import math

from .cusps import CuspNormalization, DiagramBall, DistinguishedLine, HoroballDiagram
from .errors import InvalidDocument
from .moebius import ProjectiveMatrix
from .spectrum import LengthSpectrum, SpectrumEntry
from .surfaces import MarkedGroup

VERSION = 1
KINDS = ("group", "spectrum", "diagram", "report")


def fmt(x: float):
    """Round to 12 significant digits; non-finite values become strings."""
    x = float(x)
    if not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    y = float(f"{x:.12g}")
    return 0.0 if y == 0 else y


def _num(x) -> float:
    if isinstance(x, str):
        return float(x)
    return float(x)


def _cx(z) -> list:
    z = complex(z)
    return [fmt(z.real), fmt(z.imag)]


def _uncx(v) -> complex:
    if not (isinstance(v, list) and len(v) == 2):
        raise InvalidDocument(f"expected [re, im], got {v!r}")
    return complex(_num(v[0]), _num(v[1]))


def _clean(obj):
    """Recursively round floats and turn tuples/complex numbers into lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, complex):
        return _cx(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _clean(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(_clean(doc), sort_keys=True, indent=2) + "\n"


def _matrix_doc(m: ProjectiveMatrix) -> dict:
    return {k: _cx(v) for k, v in zip("abcd", m.entries())}


def _matrix_load(d: dict) -> ProjectiveMatrix:
    try:
        return ProjectiveMatrix.rounded(*(_uncx(d[k]) for k in "abcd"))
    except KeyError as e:
        raise InvalidDocument(f"matrix entry {e} missing") from None


# --------------------------------------------------------------------------


def group_doc(g: MarkedGroup) -> dict:
    doc = {
        "kind": "group",
        "version": VERSION,
        "generators": [_matrix_doc(m) for m in g.generators],
        "labels": list(g.labels),
        "peripheral": [list(w) for w in g.peripheral],
        "relators": [list(w) for w in g.relators],
        "signature": list(g.signature),
    }
    if g.symmetry is not None:
        doc["symmetry"] = _matrix_doc(g.symmetry)
    if g.curve_length is not None:
        doc["curveLength"] = g.curve_length
        doc["twist"] = g.twist
    return doc


def load_group(doc: dict) -> MarkedGroup:
    _expect(doc, "group")
    try:
        return MarkedGroup(
            generators=tuple(_matrix_load(m) for m in doc["generators"]),
            labels=tuple(doc["labels"]),
            peripheral=tuple(tuple(int(x) for x in w) for w in doc.get("peripheral", [])),
            relators=tuple(tuple(int(x) for x in w) for w in doc.get("relators", [])),
            signature=tuple(doc["signature"]),
            symmetry=_matrix_load(doc["symmetry"]) if "symmetry" in doc else None,
            curve_length=doc.get("curveLength"),
            twist=doc.get("twist"),
        )
    except KeyError as e:
        raise InvalidDocument(f"group document lacks {e}") from None


def spectrum_doc(s: LengthSpectrum) -> dict:
    return {
        "kind": "spectrum",
        "version": VERSION,
        "entries": [
            {"length": e.length, "rotation": e.rotation, "mult": e.multiplicity,
             "witness": list(e.witness)}
            for e in s.entries
        ],
        "cutoff": s.cutoff,
        "completenessRadius": s.completeness_radius,
    }


def load_spectrum(doc: dict) -> LengthSpectrum:
    _expect(doc, "spectrum")
    try:
        entries = tuple(
            SpectrumEntry(_num(e["length"]), _num(e["rotation"]), int(e["mult"]),
                          tuple(int(x) for x in e["witness"]))
            for e in doc["entries"]
        )
        s = LengthSpectrum(entries, _num(doc["cutoff"]), _num(doc["completenessRadius"]))
    except (KeyError, TypeError) as e:
        raise InvalidDocument(f"malformed spectrum document: {e}") from None
    keys = [(e.length, e.rotation) for e in s.entries]
    if keys != sorted(keys):
        raise InvalidDocument("spectrum entries are not sorted")
    if any(e.multiplicity < 1 or e.length > s.cutoff + 1e-9 for e in s.entries):
        raise InvalidDocument("spectrum entry violates multiplicity or cutoff")
    return s


def diagram_doc(d: HoroballDiagram, lines=()) -> dict:
    doc = {
        "kind": "diagram",
        "version": VERSION,
        "lattice": [_cx(t) for t in d.normalization.peripheral_translations],
        "conjugator": _matrix_doc(d.normalization.conjugator),
        "balls": [
            {"center": _cx(b.center), "diameter": b.diameter, "witness": list(b.witness),
             "cusp": b.cusp}
            for b in d.balls
        ],
        "floor": d.diameter_floor,
        "complete": d.complete,
    }
    if lines:
        doc["lines"] = [
            {"basepoint": _cx(l.basepoint), "direction": _cx(l.direction),
             "members": list(l.members), "period": _cx(l.period), "slope": list(l.slope)}
            for l in lines
        ]
    return doc


def load_diagram(doc: dict) -> HoroballDiagram:
    _expect(doc, "diagram")
    try:
        conj = _matrix_load(doc["conjugator"]) if "conjugator" in doc else ProjectiveMatrix.identity()
        norm = CuspNormalization(tuple(_uncx(t) for t in doc["lattice"]), conj)
        balls = tuple(
            DiagramBall(_uncx(b["center"]), _num(b["diameter"]),
                        tuple(int(x) for x in b.get("witness", [])), int(b.get("cusp", 0)))
            for b in doc["balls"]
        )
        d = HoroballDiagram(norm, balls, _num(doc["floor"]), bool(doc.get("complete", True)))
    except (KeyError, TypeError) as e:
        raise InvalidDocument(f"malformed diagram document: {e}") from None
    try:
        d.validate()
    except ValueError as e:
        raise InvalidDocument(str(e)) from None
    return d


def load_lines(doc: dict) -> list[DistinguishedLine]:
    return [
        DistinguishedLine(_uncx(l["basepoint"]), _uncx(l["direction"]), tuple(l["members"]),
                          _uncx(l["period"]), tuple(l["slope"]))
        for l in doc.get("lines", [])
    ]


def report_doc(payload: dict) -> dict:
    return {"kind": "report", "version": VERSION, "payload": payload}


def _expect(doc, kind: str) -> None:
    if not isinstance(doc, dict):
        raise InvalidDocument("document must be a JSON object")
    if doc.get("kind") != kind:
        raise InvalidDocument(f"expected a {kind} document, got kind={doc.get('kind')!r}")
    if doc.get("version") != VERSION:
        raise InvalidDocument(f"unsupported version {doc.get('version')!r}")


def loads(text: str):
    """Parse any document and rebuild its object (reports stay dicts)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidDocument(f"not JSON: {e}") from None
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "group":
        return load_group(doc)
    if kind == "spectrum":
        return load_spectrum(doc)
    if kind == "diagram":
        return load_diagram(doc)
    if kind == "report":
        _expect(doc, "report")
        return doc["payload"]
    raise InvalidDocument(f"unknown document kind {kind!r}")


# --------------------------------------------------------------------------
# SVG


SCALE = 100.0


def render_svg(d: HoroballDiagram, lines=(), margin: float = 0.6) -> str:
    """Shadows of the horoballs at 100 px per unit.

    One fundamental domain is drawn together with one lattice period on
    each side; full-sized balls get the class ``full``.
    """
    shifts = d.normalization.vectors(1)
    circles = []
    for b in d.balls:
        for v in shifts:
            c = b.center + v
            circles.append((c, b.diameter, abs(b.diameter - 1) <= 1e-6))
    if circles:
        xs = [c.real for c, r, _ in circles]
        ys = [-c.imag for c, r, _ in circles]
        rmax = max(r for _, r, _ in circles) / 2
    else:
        xs, ys, rmax = [0.0], [0.0], 0.5
    x0, x1 = min(xs) - rmax - margin, max(xs) + rmax + margin
    y0, y1 = min(ys) - rmax - margin, max(ys) + rmax + margin
    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2f}" height="{h:.2f}" '
        f'viewBox="{x0 * SCALE:.2f} {y0 * SCALE:.2f} {w:.2f} {h:.2f}">',
        "<style>circle{fill:none;stroke:#444;stroke-width:1}"
        "circle.full{stroke:#000;stroke-width:2.5}line.distinguished{stroke:#c00;stroke-width:1.5}</style>",
    ]
    for c, diam, full in sorted(circles, key=lambda t: (-t[1], t[0].real, t[0].imag)):
        cls = ' class="full"' if full else ""
        out.append(f'<circle{cls} cx="{c.real * SCALE:.2f}" cy="{-c.imag * SCALE:.2f}" '
                   f'r="{diam / 2 * SCALE:.2f}"/>')
    for l in lines:
        p, q = l.basepoint - 10 * l.direction, l.basepoint + 10 * l.direction
        out.append(f'<line class="distinguished" x1="{p.real * SCALE:.2f}" y1="{-p.imag * SCALE:.2f}" '
                   f'x2="{q.real * SCALE:.2f}" y2="{-q.imag * SCALE:.2f}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
