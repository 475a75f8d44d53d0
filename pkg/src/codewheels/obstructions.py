"""Max-intersection faces, mandatory faces and local obstructions."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Code, NeuronSet, SimplicialComplex, link, neural_complex, popcount
from .topology import require_decided


@dataclass(frozen=True)
class ObstructionReport:
    max_intersection_faces: frozenset[NeuronSet]
    mandatory_faces: frozenset[NeuronSet]
    missing_mandatory: frozenset[NeuronSet]
    is_max_int_complete: bool


def facet_intersections(facets) -> set[NeuronSet]:
    """Intersections of two or more of the given facets."""
    facets = list(facets)
    found: set[NeuronSet] = set()
    frontier = set()
    for i, a in enumerate(facets):
        for b in facets[i + 1 :]:
            frontier.add(a & b)
    while frontier:
        found |= frontier
        nxt = set()
        for s in frontier:
            for f in facets:
                t = s & f
                if t not in found:
                    nxt.add(t)
        frontier = nxt
    return found


def max_intersection_faces(code: Code) -> set[NeuronSet]:
    return facet_intersections(neural_complex(code).facets)


def complex_mandatory_faces(cx: SimplicialComplex) -> set[NeuronSet]:
    """Nonempty faces of ``cx`` whose link is not contractible.

    Only intersections of facets can qualify, so only those are tested.
    """
    return {s for s in facet_intersections(cx.facets) if s and not require_decided(link(cx, s))}


def mandatory_faces(code: Code) -> set[NeuronSet]:
    return complex_mandatory_faces(neural_complex(code))


def is_max_intersection_complete(code: Code) -> bool:
    return all(s in code for s in max_intersection_faces(code))


def has_local_obstruction(code: Code) -> tuple[bool, NeuronSet | None]:
    """``(True, sigma)`` for the smallest mandatory face missing from the code."""
    missing = sorted(s for s in mandatory_faces(code) if s not in code)
    if missing:
        return True, missing[0]
    return False, None


def obstruction_report(code: Code) -> ObstructionReport:
    mi = frozenset(max_intersection_faces(code))
    man = frozenset(mandatory_faces(code))
    return ObstructionReport(
        max_intersection_faces=mi,
        mandatory_faces=man,
        missing_mandatory=frozenset(s for s in man if s not in code),
        is_max_int_complete=all(s in code for s in mi),
    )


def minimal_code(cx: SimplicialComplex) -> Code:
    """Facets, mandatory faces and the empty set."""
    if cx.is_void:
        raise ValueError("minimal code of the void complex")
    return Code(cx.n, tuple(cx.facets) + tuple(complex_mandatory_faces(cx)))


def pure_fast_path(code: Code) -> str | None:
    """``"convex"``/``"nonconvex"`` when purity settles convexity, else None.

    Applies to complexes pure of dimension 0, 1, ``n - 2`` or ``n - 1``, where
    convexity is equivalent to max-intersection-completeness.
    """
    cx = neural_complex(code)
    if len(cx.facets) <= 1:
        return "convex"
    sizes = {popcount(f) for f in cx.facets}
    if len(sizes) != 1:
        return None
    d = sizes.pop() - 1
    if d in (0, 1, code.n - 2, code.n - 1):
        return "convex" if is_max_intersection_complete(code) else "nonconvex"
    return None
