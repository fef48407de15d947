"""Command-line front end: ``hyperspectra <subcommand> ...``.

Every subcommand prints (or writes with ``-o``) one JSON document.  Errors
from the library are reported as a JSON object on stderr with exit status 2
(bad input) or 3 (a search budget ran out).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import io
from .errors import HyperspectraError


def _word(text: str):
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.replace(" ", "").split(","))


def _group_args(p: argparse.ArgumentParser, required: bool = True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--group", metavar="FILE", help="group document to load")
    src.add_argument("--pants-cusped", action="store_true", help="thrice-punctured sphere")
    src.add_argument("--pants-boundary", nargs=3, type=float, metavar="L",
                     help="pants with three geodesic boundary lengths")
    src.add_argument("--genus2", type=float, metavar="LENGTH",
                     help="symmetric genus-two surface with this separating curve length")
    p.add_argument("--twist", type=float, default=0.0, help="twist for --genus2 (default 0)")


def _load_group(args):
    from .surfaces import FenchelNielsenGenus2, genus2_from_fn, pants_group

    if args.group:
        with open(args.group) as f:
            return io.load_group(json.load(f))
    if args.pants_cusped:
        return pants_group(True)
    if args.pants_boundary:
        return pants_group(False, tuple(args.pants_boundary))
    return genus2_from_fn(FenchelNielsenGenus2.symmetric(args.genus2, args.twist))


def _emit(doc: dict, args) -> None:
    text = io.dumps(doc)
    if getattr(args, "output", None):
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------


def cmd_pants(args):
    from .surfaces import pants_group

    g = pants_group(True) if args.boundary is None else pants_group(False, tuple(args.boundary))
    _emit(io.group_doc(g), args)


def cmd_genus2(args):
    from .surfaces import FenchelNielsenGenus2, genus2_from_fn, handle_traces_for

    if args.traces:
        x, y = args.traces
        t = handle_traces_for(args.curve_length, x, y)
        fn = FenchelNielsenGenus2((t, t), args.curve_length, args.twist)
    else:
        fn = FenchelNielsenGenus2.symmetric(args.curve_length, args.twist)
    _emit(io.group_doc(genus2_from_fn(fn)), args)


def cmd_spectrum(args):
    from .spectrum import enumerate_spectrum

    g = _load_group(args)
    s = enumerate_spectrum(g, args.cutoff, args.diameter, workers=args.workers,
                           oriented=args.oriented, primitive=not args.imprimitive,
                           budget=args.budget)
    _emit(io.spectrum_doc(s), args)


def cmd_compare(args):
    from .spectrum import compare_spectra

    with open(args.left) as f:
        s1 = io.load_spectrum(json.load(f))
    with open(args.right) as f:
        s2 = io.load_spectrum(json.load(f))
    c = compare_spectra(s1, s2, args.tol)
    payload = {
        "agreeUpTo": c.agree_up_to,
        "matched": len(c.matched),
        "onlyLeft": [[e.length, e.rotation] for e in c.only_left],
        "onlyRight": [[e.length, e.rotation] for e in c.only_right],
        "tol": args.tol,
    }
    if args.require is not None:
        payload["require"] = args.require
    _emit(io.report_doc(payload), args)
    if args.require is not None and c.agree_up_to < args.require:
        return 1
    return 0


def _diagram(args):
    from .cusps import build_horoball_diagram

    g = _load_group(args)
    word = _word(args.cusp_word) if args.cusp_word else (g.peripheral[0] if g.peripheral else None)
    if word is None:
        raise HyperspectraError("group has no peripheral words; pass --cusp-word")
    return build_horoball_diagram(g, word, args.floor, args.budget)


def cmd_diagram(args):
    from .cusps import find_distinguished_lines

    d = _diagram(args)
    lines = find_distinguished_lines(d)
    if args.svg:
        with open(args.svg, "w") as f:
            f.write(io.render_svg(d, lines))
    _emit(io.diagram_doc(d, lines), args)


def cmd_isolate(args):
    from .cusps import (check_one_sided_isolation, check_pairwise_tangent,
                        check_rotational_symmetry, find_distinguished_lines)

    d = _diagram(args)
    lines = find_distinguished_lines(d)
    payload = {
        "floor": d.diameter_floor,
        "fullSized": len(d.full_sized()),
        "lines": [
            {
                "slope": list(l.slope),
                "members": list(l.members),
                "pairwiseTangent": check_pairwise_tangent(d, l),
                "isolatedAbove": check_one_sided_isolation(d, l, 1),
                "isolatedBelow": check_one_sided_isolation(d, l, -1),
            }
            for l in lines
        ],
        "rotationalSymmetry": {str(k): check_rotational_symmetry(d, k) for k in (2, 3, 4, 6)},
    }
    _emit(io.report_doc(payload), args)


def cmd_nz(args):
    from .filling import (CuspLattice, Slope, core_length_estimate, normalized_length,
                          sufficiently_different, volume_drop_estimate)

    lhats = list(args.lhat or [])
    if args.lattice:
        t1 = complex(args.lattice[0], args.lattice[1])
        t2 = complex(args.lattice[2], args.lattice[3])
        lat = CuspLattice(t1, t2)
        for p, q in zip(args.slope[::2], args.slope[1::2]) if args.slope else []:
            lhats.append(normalized_length(Slope(p, q), lat))
    payload = {
        "normalizedLengths": lhats,
        "coreLengths": [list(core_length_estimate(x)) for x in lhats],
        "volumeDrop": volume_drop_estimate(lhats),
    }
    if args.vol is not None and len(lhats) == 3:
        rep = sufficiently_different(lhats, args.vol, args.margin)
        payload["sufficientlyDifferent"] = {
            "holds": rep.holds, "V": rep.V, "margin": rep.margin, "ratios": list(rep.ratios),
            "chain": list(rep.chain), "chainHolds": rep.chain_holds,
        }
    _emit(io.report_doc(payload), args)


def _slope(text: str):
    from .farey import FareySlope

    if text in ("inf", "oo", "1/0"):
        return FareySlope(1, 0)
    p, _, q = text.partition("/")
    return FareySlope.of(int(p), int(q or 1))


def cmd_farey(args):
    from .farey import IntegerMappingClass, farey_distance, stable_translation_length

    if args.matrix:
        phi = IntegerMappingClass(*args.matrix)
        v = _slope(args.base) if args.base else None
        r = stable_translation_length(phi, v, args.n)
        payload = {"kind": phi.kind, "estimates": r.estimates, "final": r.final,
                   "alternateFinal": r.alternate_final, "subadditive": r.subadditive}
    else:
        if not args.slopes or len(args.slopes) != 2:
            raise HyperspectraError("give two slopes, or --matrix for a translation length")
        a, b = (_slope(x) for x in args.slopes)
        payload = {"from": str(a), "to": str(b), "distance": farey_distance(a, b)}
    _emit(io.report_doc(payload), args)


def cmd_asymptotics(args):
    from .growth import (CountingModel, crossover_length, logarithmic_integral, margulis_count,
                         ps_lower_bound)

    m = CountingModel(args.h, args.A, args.c)
    payload = {"model": {"h": m.h, "A": m.A, "c": m.c}, "crossover": crossover_length(m)}
    if args.L:
        payload["samples"] = [
            {"L": L, "li": logarithmic_integral(math.exp(L)) if L < 700 else None,
             "margulis": margulis_count(L, m.h), "lowerBound": ps_lower_bound(L, m)}
            for L in args.L
        ]
    _emit(io.report_doc(payload), args)


def cmd_reproduce(args):
    from .acceptance import run_all

    color = sys.stdout.isatty() and "NO_COLOR" not in os.environ
    paint = (lambda s, c: f"\033[{c}m{s}\033[0m") if color else (lambda s, c: s)
    results = run_all(set(args.only) if args.only else None)
    for r in results:
        line = r.line()
        print(paint(line, "32" if r.passed else "31"))
    if args.output:
        payload = {f"criterion{r.number}": {"passed": r.passed, "details": r.details}
                   for r in results}
        with open(args.output, "w") as f:
            f.write(io.dumps(io.report_doc(payload)))
    return 0 if all(r.passed for r in results) else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperspectra", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("-o", "--output", metavar="FILE", help="write the JSON here instead of stdout")
        return sp

    sp = add("pants", cmd_pants, "emit a pair-of-pants group")
    sp.add_argument("--boundary", nargs=3, type=float, metavar="L",
                    help="geodesic boundary lengths (default: cusped)")

    sp = add("genus2", cmd_genus2, "emit a genus-two group from Fenchel-Nielsen data")
    sp.add_argument("--curve-length", type=float, required=True)
    sp.add_argument("--twist", type=float, default=0.0)
    sp.add_argument("--traces", nargs=2, type=float, metavar=("X", "Y"),
                    help="handle traces tr A, tr B (default: symmetric)")

    sp = add("spectrum", cmd_spectrum, "enumerate the length spectrum")
    _group_args(sp)
    sp.add_argument("--cutoff", type=float, required=True)
    sp.add_argument("--diameter", type=float, default=3.0, help="diameter estimate (default 3)")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--oriented", action="store_true", help="count both orientations")
    sp.add_argument("--imprimitive", action="store_true", help="include proper powers")
    sp.add_argument("--budget", type=int, default=10 ** 7)

    sp = add("compare", cmd_compare, "compare two spectrum documents")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--tol", type=float, default=1e-7)
    sp.add_argument("--require", type=float, help="exit 1 unless agreeUpTo >= this")

    for name, fn, help_ in (("diagram", cmd_diagram, "build a horoball diagram"),
                            ("isolate", cmd_isolate, "check lines, tangency, isolation, symmetry")):
        sp = add(name, fn, help_)
        _group_args(sp)
        sp.add_argument("--cusp-word", help="comma-separated word, e.g. 1 or 1,2 (default: first peripheral)")
        sp.add_argument("--floor", type=float, default=0.1)
        sp.add_argument("--budget", type=int, default=200_000)
        if name == "diagram":
            sp.add_argument("--svg", metavar="FILE", help="also render the diagram as SVG")

    sp = add("nz", cmd_nz, "Dehn filling estimates from normalized lengths")
    sp.add_argument("--lhat", type=float, nargs="+", help="normalized lengths")
    sp.add_argument("--lattice", type=float, nargs=4, metavar=("RE1", "IM1", "RE2", "IM2"))
    sp.add_argument("--slope", type=int, nargs="+", help="p q [p q ...] on --lattice")
    sp.add_argument("--vol", type=float, help="volume for the separation test")
    sp.add_argument("--margin", type=float, default=10.0)

    sp = add("farey", cmd_farey, "Farey graph distance or stable translation length")
    sp.add_argument("slopes", nargs="*", help="two slopes like 0/1 2/5 inf")
    sp.add_argument("--matrix", type=int, nargs=4, metavar=("A", "B", "C", "D"))
    sp.add_argument("--base", help="base slope for --matrix (default 0/1)")
    sp.add_argument("--n", type=int, default=12)

    sp = add("asymptotics", cmd_asymptotics, "counting-model crossover and samples")
    sp.add_argument("--h", type=float, default=1.0)
    sp.add_argument("--A", type=float, default=0.0)
    sp.add_argument("--c", type=float, default=0.0)
    sp.add_argument("--L", type=float, nargs="*")

    sp = add("reproduce", cmd_reproduce, "run the acceptance suite")
    sp.add_argument("--only", type=int, nargs="+", metavar="N", help="criterion numbers")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except (ValueError, OSError) as e:  # HyperspectraError is a ValueError
        code = getattr(e, "exit_code", 2)
        err = {"error": type(e).__name__, "message": str(e), "exitCode": code}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
