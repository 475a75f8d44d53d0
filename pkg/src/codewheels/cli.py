"""Command-line entry point: ``codewheels <subcommand>``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .core import Code, SimplicialComplex, fmt_set, labels, neural_complex, neurons, parse_set, parse_sets, trunk
from .enumeration import enumerate_connected, read_complexes
from .obstructions import obstruction_report, pure_fast_path
from .pipeline import (
    appendix_check,
    classify,
    classify_all,
    read_records,
    table1_report,
    table2_report,
    theorem5_check,
)
from .reduction import find_decomposition, reduce
from .topology import UndeterminedContractibility
from .wheels import PartialWheel, SprocketCert, WheelFrameCert, WireWheelCert, check_certificate, wheel_report

EXIT_OK = 0
EXIT_UNDETERMINED = 2
EXIT_MISMATCH = 3


def _facet_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    return (int(lo), int(hi)) if sep else (int(lo), int(lo))


def _sets_json(masks) -> list[list[int]]:
    return [labels(m) for m in masks]


def cmd_enumerate(args) -> int:
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for i, cx in enumerate(enumerate_connected(args.n, _facet_range(args.facets), args.pure_dim)):
            if args.json:
                out.write(json.dumps({"id": i, "n": cx.n, "facets": _sets_json(cx.facets)}) + "\n")
            else:
                out.write(" ".join(fmt_set(f) for f in cx.facets) + "\n")
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def _read_input(path: str, n: int | None) -> list[SimplicialComplex]:
    with open(path) as fh:
        lines = [ln for ln in fh if ln.strip()]
    if lines and lines[0].lstrip().startswith("{"):
        return [
            SimplicialComplex(d["n"], tuple(neurons(*f) for f in d["facets"]))
            for d in (json.loads(ln) for ln in lines)
        ]
    return list(read_complexes(lines, n))


def cmd_classify(args) -> int:
    complexes = _read_input(args.input, args.n)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for rec in classify_all(complexes, args.jobs, args.brute_force):
            out.write(rec.to_json(timings=not args.no_timings) + "\n")
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_analyze(args) -> int:
    code = Code.from_sets(parse_sets(args.code), args.n)
    cx = neural_complex(code)
    reduced, steps = reduce(code)
    dec = find_decomposition(code)
    obs = obstruction_report(code)
    wr = wheel_report(code)
    rec = classify(code)
    report = {
        "code": str(code),
        "n": code.n,
        "facets": _sets_json(cx.facets),
        "trunks": {t: _sets_json(trunk(code, parse_set(t))) for t in args.trunk or []},
        "reduction": {"steps": [s.to_json() for s in steps], "reduced_code": str(reduced), "reduced_n": reduced.n},
        "decomposition": dec.to_json() if dec else None,
        "obstructions": {
            "max_intersection_faces": _sets_json(sorted(obs.max_intersection_faces)),
            "mandatory_faces": _sets_json(sorted(obs.mandatory_faces)),
            "missing_mandatory": _sets_json(sorted(obs.missing_mandatory)),
            "max_intersection_complete": obs.is_max_int_complete,
        },
        "pure_fast_path": pure_fast_path(code),
        "wheels": {
            "sprocket": wr.sprocket.to_json() if wr.sprocket else None,
            "wire_wheel": wr.wire_wheel.to_json() if wr.wire_wheel else None,
            "wheel_frame": wr.wheel_frame.to_json() if wr.wheel_frame else None,
        },
        "status": rec.status,
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_check(args) -> int:
    code = Code.from_sets(parse_sets(args.code), args.n)
    spokes = [parse_set(s) for s in args.spokes]
    rim = parse_set(args.rim)
    if args.kind == "wheelframe":
        if len(spokes) != 2:
            raise SystemExit("a wheel frame takes two spokes")
        cert = WheelFrameCert(spokes[0], spokes[1], rim)
    else:
        if len(spokes) != 3:
            raise SystemExit(f"a {args.kind} takes three spokes")
        if args.kind == "sprocket":
            if not args.witnesses or len(args.witnesses) != 2:
                raise SystemExit("a sprocket needs --witnesses R1 R3")
            r1, r3 = (parse_set(w) for w in args.witnesses)
            cert = SprocketCert(PartialWheel(*spokes, rim), r1, r3)
        else:
            cert = WireWheelCert(*spokes, rim)
    ok = check_certificate(code, cert)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else 1


def _dump(obj, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(obj, fh, indent=1)


def cmd_report(args) -> int:
    if args.what == "theorem5":
        rep = theorem5_check()
        print(f"minimal codes checked: {len(rep.rows)}")
        print(f"5-neuron codes without local obstruction flagged by a wheel frame: {rep.wheel_frame_classes_n5}")
        print(f"flagged class is the C* class: {rep.matches_c_star}")
        print(f"no wheel of any kind on <= 4 neurons: {rep.small_codes_clean}")
        _dump(rep.rows, args.details)
        return EXIT_OK if rep.ok else EXIT_MISMATCH
    if not args.input:
        raise SystemExit("--in is required for this report")
    records = read_records(args.input)
    if args.what == "appendix":
        rep = appendix_check(records)
        found = sum(e["found"] for e in rep.entries)
        print(f"sample codes found among Unknown records: {found}/{len(rep.entries)}")
        for e in rep.entries:
            if not e["found"]:
                print(f"  missing {e['bucket']} #{e['item']}: {e['code']}  {e.get('diagnosis')}")
        _dump(rep.entries, args.details)
        return EXIT_OK if rep.ok else EXIT_MISMATCH
    table, discrepancies = (table1_report if args.what == "table1" else table2_report)(records)
    print(table.render())
    if discrepancies is None:
        return EXIT_OK
    n_codes = len(discrepancies["codes"])
    print(f"{len(discrepancies['mismatched_cells'])} cells differ; discrepancy report covers {n_codes} codes")
    _dump(discrepancies, args.details)
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="codewheels", description="Convexity analysis of combinatorial neural codes.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="connected complexes up to isomorphism")
    e.add_argument("--n", type=int, default=6)
    e.add_argument("--facets", default="4..7", help="facet count or inclusive range LO..HI")
    e.add_argument("--pure-dim", type=int, default=None)
    e.add_argument("--out")
    e.add_argument("--json", action="store_true", help="JSON lines {id, n, facets}")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("classify", help="classify the minimal code of each input complex")
    c.add_argument("--in", dest="input", required=True, help="complexes, text or JSON lines")
    c.add_argument("--out")
    c.add_argument("--n", type=int, default=None, help="neuron count for text input")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--brute-force", action="store_true", help="use the exhaustive wheel searches")
    c.add_argument("--no-timings", action="store_true", help="write ms=0 for byte-reproducible output")
    c.set_defaults(func=cmd_classify)

    a = sub.add_parser("analyze", help="full report for one code")
    a.add_argument("--code", required=True)
    a.add_argument("--n", type=int, default=None)
    a.add_argument("--trunk", action="append", help="print the trunk of this set (repeatable)")
    a.set_defaults(func=cmd_analyze)

    k = sub.add_parser("check", help="validate a wheel certificate")
    k.add_argument("kind", choices=["sprocket", "wirewheel", "wheelframe"])
    k.add_argument("--code", required=True)
    k.add_argument("--n", type=int, default=None)
    k.add_argument("--spokes", nargs="+", required=True)
    k.add_argument("--rim", required=True)
    k.add_argument("--witnesses", nargs=2)
    k.set_defaults(func=cmd_check)

    r = sub.add_parser("report", help="tallies and comparisons against reference values")
    r.add_argument("what", choices=["table1", "table2", "theorem5", "appendix"])
    r.add_argument("--in", dest="input", nargs="+")
    r.add_argument("--details", help="write the discrepancy or detail report as JSON here")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UndeterminedContractibility as exc:
        print(json.dumps({"error": "undetermined contractibility", "complex": str(exc.complex), "n": exc.complex.n}), file=sys.stderr)
        return EXIT_UNDETERMINED


if __name__ == "__main__":
    sys.exit(main())
