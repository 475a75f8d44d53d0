"""Batch classification of minimal codes, tallies and cross-checks.

Each complex is classified through its minimal code:

1. a removable neuron or a decomposition -> ``ReducibleOrDecomposable``
2. every max-intersection face a codeword -> ``MaxIntersectionComplete``
3. any sprocket, wire wheel or wheel frame -> ``Wheel`` (all three searched)
4. otherwise ``Unknown``
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import expected
from .core import Code, SimplicialComplex, labels, neurons, parse_sets
from .enumeration import code_canonical_words, canonical_form, enumerate_connected
from .obstructions import has_local_obstruction, is_max_intersection_complete, minimal_code
from .reduction import find_decomposition, removable_neuron
from .wheels import (
    _Ctx,
    audit_certificate,
    brute_force_find_sprocket,
    brute_force_find_wheel_frame,
    brute_force_find_wire_wheel,
    find_wheel_frame,
    wheel_report,
)

REDUCIBLE = "ReducibleOrDecomposable"
MAX_INT_COMPLETE = "MaxIntersectionComplete"
WHEEL = "Wheel"
UNKNOWN = "Unknown"
STATUSES = (REDUCIBLE, MAX_INT_COMPLETE, WHEEL, UNKNOWN)


class ExpectedValueMismatch(RuntimeError):
    pass


@dataclass
class ClassificationRecord:
    id: int
    n: int
    facets: list[list[int]]
    facet_count: int
    dim: int
    pure: bool
    status: str
    wheel_profile: dict
    certificates: list[dict]
    ms: float
    violations: list[str] = field(default_factory=list)

    def to_json(self, timings: bool = True) -> str:
        d = {
            "id": self.id,
            "n": self.n,
            "facets": self.facets,
            "facet_count": self.facet_count,
            "dim": self.dim,
            "pure": self.pure,
            "status": self.status,
            "wheel_profile": self.wheel_profile,
            "certificates": self.certificates,
            "ms": round(self.ms, 3) if timings else 0,
        }
        if self.violations:
            d["violations"] = self.violations
        return json.dumps(d, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ClassificationRecord":
        d = json.loads(line)
        d.setdefault("violations", [])
        return cls(**d)

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.n, tuple(neurons(*f) for f in self.facets))

    @property
    def profile_key(self) -> tuple[bool, bool, bool]:
        p = self.wheel_profile
        return p["has_sprocket"], p["has_wire_wheel"], p["has_wheel_frame"]


def _profile(sprocket: bool, wire: bool, frame: bool) -> dict:
    return {"has_sprocket": sprocket, "has_wire_wheel": wire, "has_wheel_frame": frame}


def classify(
    code: Code,
    cid: int = 0,
    skip_trivial: bool = False,
    brute_force: bool = False,
    audit: bool = True,
) -> ClassificationRecord:
    """Classify one code.

    ``skip_trivial`` ignores unused neurons (safe for connected complexes on
    all neurons).  ``brute_force`` replaces the pruned wheel finders by the
    exhaustive ones.  ``audit`` re-checks every certificate against the
    structural facts and, for max-intersection-complete codes, confirms that
    no wheel is found; failures land in ``violations``.
    """
    t0 = time.perf_counter()
    cx = SimplicialComplex(code.n, tuple(w for w in code.words))
    certs: list[dict] = []
    violations: list[str] = []
    profile = _profile(False, False, False)
    step = removable_neuron(code, check_trivial=not skip_trivial)
    if step is not None:
        status = REDUCIBLE
        certs.append(step.to_json())
    else:
        dec = find_decomposition(code)
        if dec is not None:
            status = REDUCIBLE
            certs.append(dec.to_json())
        elif is_max_intersection_complete(code):
            status = MAX_INT_COMPLETE
            if audit and wheel_report(code).any:
                violations.append("wheel found in a max-intersection-complete code")
        else:
            ctx = _Ctx(code)
            if brute_force:
                found = [brute_force_find_sprocket(ctx), brute_force_find_wire_wheel(ctx), brute_force_find_wheel_frame(ctx)]
            else:
                r = wheel_report(ctx)
                found = [r.sprocket, r.wire_wheel, r.wheel_frame]
            profile = _profile(*(f is not None for f in found))
            for cert in found:
                if cert is not None:
                    certs.append(cert.to_json())
                    if audit:
                        violations.extend(f"{cert.kind}: {p}" for p in audit_certificate(ctx, cert))
            status = WHEEL if any(f is not None for f in found) else UNKNOWN
    ms = (time.perf_counter() - t0) * 1000
    return ClassificationRecord(
        id=cid,
        n=code.n,
        facets=[labels(f) for f in cx.facets],
        facet_count=len(cx.facets),
        dim=cx.dim,
        pure=cx.is_pure,
        status=status,
        wheel_profile=profile,
        certificates=certs,
        ms=ms,
        violations=violations,
    )


def classify_complex(cx: SimplicialComplex, cid: int = 0, brute_force: bool = False) -> ClassificationRecord:
    """Classify the minimal code of a connected complex on all its neurons."""
    return classify(minimal_code(cx), cid, skip_trivial=True, brute_force=brute_force)


def _work(item: tuple[int, int, tuple[int, ...], bool]) -> str:
    cid, n, facets, brute = item
    return classify_complex(SimplicialComplex(n, facets), cid, brute).to_json()


def classify_all(
    complexes: Iterable[SimplicialComplex],
    jobs: int = 1,
    brute_force: bool = False,
) -> Iterator[ClassificationRecord]:
    """Classify complexes in input order; ``jobs > 1`` fans out over processes."""
    items = ((i, cx.n, cx.facets, brute_force) for i, cx in enumerate(complexes))
    if jobs <= 1:
        for item in items:
            yield ClassificationRecord.from_json(_work(item))
        return
    import multiprocessing as mp

    with mp.get_context("fork").Pool(jobs) as pool:
        # imap preserves input order, which is id order
        for line in pool.imap(_work, items, chunksize=8):
            yield ClassificationRecord.from_json(line)


def table1_complexes() -> Iterator[SimplicialComplex]:
    return enumerate_connected(6, (4, 7))


def table2_complexes() -> Iterator[SimplicialComplex]:
    for d in expected.TABLE2_COLUMNS:
        yield from enumerate_connected(6, pure_dim=d)


def run_table1(jobs: int = 1) -> list[ClassificationRecord]:
    return list(classify_all(table1_complexes(), jobs))


def run_table2(jobs: int = 1) -> list[ClassificationRecord]:
    return list(classify_all(table2_complexes(), jobs))


# ---------------------------------------------------------------------------
# Tallies


OTHER_WHEEL = "Other wheel combination"


def table1_row(rec: ClassificationRecord) -> str:
    if rec.status == REDUCIBLE:
        return "Reducible or decomposable"
    if rec.status == MAX_INT_COMPLETE:
        return "Max-intersection-complete"
    if rec.status == UNKNOWN:
        return "Unknown"
    sprocket, wire, frame = rec.profile_key
    if wire:
        return "Wire wheel only" if not (sprocket or frame) else OTHER_WHEEL
    if sprocket and frame:
        return "Wheel frame and sprocket"
    return "Sprocket only" if sprocket else "Wheel frame only"


def table2_row(rec: ClassificationRecord) -> str:
    return {
        REDUCIBLE: "Reducible or decomposable",
        MAX_INT_COMPLETE: "Max-intersection-complete",
        WHEEL: "Wheel",
        UNKNOWN: "Unknown",
    }[rec.status]


@dataclass
class Table:
    name: str
    columns: tuple[int, ...]
    rows: tuple[str, ...]
    counts: dict[str, list[int]]
    expected: dict[str, tuple[int, ...]]

    def mismatches(self) -> list[tuple[str, int, int, int]]:
        """``(row, column, got, want)`` for every differing cell."""
        out = []
        for row in self.rows + ("Total",):
            want = self.expected.get(row, (0,) * len(self.columns))
            for j, col in enumerate(self.columns):
                if self.counts[row][j] != want[j]:
                    out.append((row, col, self.counts[row][j], want[j]))
        return out

    def render(self) -> str:
        head = f"{'':<28}" + "".join(f"{c:>14}" for c in self.columns)
        lines = [self.name, head]
        for row in self.rows + ("Total",):
            want = self.expected.get(row, (0,) * len(self.columns))
            cells = "".join(
                f"{self.counts[row][j]:>8}" + (f" ({want[j]:>3})" if self.counts[row][j] != want[j] else "      ")
                for j in range(len(self.columns))
            )
            lines.append(f"{row:<28}{cells}")
        lines.append("cells that differ from the reference show it in parentheses")
        return "\n".join(lines)


def tally_table1(records: Sequence[ClassificationRecord]) -> Table:
    rows = expected.TABLE1_ROWS[:-1] + (OTHER_WHEEL, "Unknown")
    cols = expected.TABLE1_COLUMNS
    counts = {r: [0] * len(cols) for r in rows + ("Total",)}
    for rec in records:
        if rec.facet_count not in cols:
            continue
        j = cols.index(rec.facet_count)
        counts[table1_row(rec)][j] += 1
        counts["Total"][j] += 1
    return Table("Table 1: minimal codes on 6 neurons by number of maximal codewords", cols, rows, counts, expected.TABLE1)


def tally_table2(records: Sequence[ClassificationRecord]) -> Table:
    cols = expected.TABLE2_COLUMNS
    rows = expected.TABLE2_ROWS
    counts = {r: [0] * len(cols) for r in rows + ("Total",)}
    for rec in records:
        if not rec.pure or rec.dim not in cols:
            continue
        j = cols.index(rec.dim)
        counts[table2_row(rec)][j] += 1
        counts["Total"][j] += 1
    return Table("Table 2: minimal codes of pure complexes on 6 neurons by dimension", cols, rows, counts, expected.TABLE2)


# ---------------------------------------------------------------------------
# Discrepancy report


def search_transcript(code: Code) -> list[dict]:
    """Per-rim log of the pruned searches for all three wheel kinds."""
    trace: list[dict] = []
    wheel_report(code, trace)
    return trace


def discrepancy_report(table: Table, records: Sequence[ClassificationRecord], row_of, column_of) -> dict:
    """Evidence for every code in a mismatched cell.

    Positive claims (a wheel was found) carry certificates that are re-checked
    here; negative claims (``Unknown``) carry the full search transcript.
    """
    from .wheels import cert_from_json, check_certificate

    cells = table.mismatches()
    report: dict = {"table": table.name, "mismatched_cells": [], "codes": []}
    bad = set()
    for row, col, got, want in cells:
        report["mismatched_cells"].append({"row": row, "column": col, "got": got, "expected": want})
        bad.add((row, col))
    for rec in records:
        key = (row_of(rec), column_of(rec))
        if key not in bad:
            continue
        code = minimal_code(rec.complex())
        entry = {"id": rec.id, "code": str(code), "row": key[0], "column": key[1], "status": rec.status}
        if rec.status == WHEEL:
            entry["certificates"] = [
                {"certificate": c, "revalidates": check_certificate(code, cert_from_json(c))} for c in rec.certificates
            ]
            entry["transcript"] = search_transcript(code)
        elif rec.status == UNKNOWN:
            entry["transcript"] = search_transcript(code)
        else:
            entry["certificates"] = rec.certificates
        report["codes"].append(entry)
    return report


# ---------------------------------------------------------------------------
# Cross-checks on small codes and sample lists


@dataclass
class Theorem5Report:
    rows: list[dict]
    wheel_frame_classes_n5: list[str]
    matches_c_star: bool
    small_codes_clean: bool

    @property
    def ok(self) -> bool:
        return self.matches_c_star and self.small_codes_clean


def theorem5_check(max_n: int = 5) -> Theorem5Report:
    """Obstruction and wheel-frame flags for minimal codes on up to ``max_n`` neurons."""
    rows = []
    frame_codes = []
    clean = True
    for n in range(1, max_n + 1):
        for cx in enumerate_connected(n):
            code = minimal_code(cx)
            obstructed, _ = has_local_obstruction(code)
            frame = find_wheel_frame(code)
            row = {"n": n, "code": str(code), "local_obstruction": obstructed, "wheel_frame": frame is not None}
            if n <= 4:
                row["any_wheel"] = wheel_report(code).any
                clean = clean and not row["any_wheel"]
            rows.append(row)
            if n == max_n and not obstructed and frame is not None:
                frame_codes.append(code)
    c_star = code_canonical_words(Code.parse(expected.C_STAR, 5))
    matches = max_n == 5 and len(frame_codes) == 1 and code_canonical_words(frame_codes[0]) == c_star
    return Theorem5Report(rows, [str(c) for c in frame_codes], matches, clean)


@dataclass
class AppendixReport:
    entries: list[dict]

    @property
    def ok(self) -> bool:
        return all(e["found"] for e in self.entries)


def _bucket_of(rec: ClassificationRecord) -> list[tuple[str, int]]:
    out = [("facets", rec.facet_count)]
    if rec.pure:
        out.append(("pure", rec.dim))
    return out


def appendix_check(records: Sequence[ClassificationRecord], samples: dict | None = None) -> AppendixReport:
    """Look up each sample code among ``Unknown`` records of its bucket, up to isomorphism.

    A sample that is not found is diagnosed through its complex: the status of
    the record with an isomorphic complex and whether the sample equals that
    complex's minimal code.
    """
    samples = expected.APPENDIX_SAMPLES if samples is None else samples
    by_bucket: dict[tuple[str, int], dict] = {}
    complexes: dict[tuple, ClassificationRecord] = {}
    for rec in records:
        cx = rec.complex()
        complexes.setdefault(canonical_form(cx).facets, rec)
        if rec.status != UNKNOWN:
            continue
        for b in _bucket_of(rec):
            if b in samples:
                by_bucket.setdefault(b, {})[code_canonical_words(minimal_code(cx))] = rec.id
    entries = []
    for bucket, codes in samples.items():
        for k, text in enumerate(codes, 1):
            code = Code.parse(text, 6)
            key = code_canonical_words(code)
            hit = by_bucket.get(bucket, {}).get(key)
            entry = {"bucket": list(bucket), "item": k, "code": text, "found": hit is not None, "id": hit}
            if hit is None:
                cx = SimplicialComplex(6, tuple(code.words))
                twin = complexes.get(canonical_form(cx).facets)
                entry["diagnosis"] = (
                    "complex not in the run"
                    if twin is None
                    else {
                        "complex_status": twin.status,
                        "record_id": twin.id,
                        "sample_is_minimal_code": code_canonical_words(minimal_code(cx)) == key,
                    }
                )
            entries.append(entry)
    return AppendixReport(entries)


def read_records(paths: Iterable[str]) -> list[ClassificationRecord]:
    out = []
    for p in paths:
        with open(p) as fh:
            out.extend(ClassificationRecord.from_json(line) for line in fh if line.strip())
    return out


def parse_code_arg(text: str, n: int | None = None) -> Code:
    return Code.from_sets(parse_sets(text), n)


def table1_report(records: Sequence[ClassificationRecord]) -> tuple[Table, dict | None]:
    table = tally_table1(records)
    if not table.mismatches():
        return table, None
    return table, discrepancy_report(table, records, table1_row, lambda r: r.facet_count)


def table2_report(records: Sequence[ClassificationRecord]) -> tuple[Table, dict | None]:
    records = [r for r in records if r.pure and r.dim in expected.TABLE2_COLUMNS]
    table = tally_table2(records)
    if not table.mismatches():
        return table, None
    return table, discrepancy_report(table, records, table2_row, lambda r: r.dim)
