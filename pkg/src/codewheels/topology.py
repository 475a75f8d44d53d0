"""Contractibility of small simplicial complexes.

The decision is layered from cheap to expensive: trivial shapes, connectivity,
cones, graphs, an exhaustive collapse search, and finally integer homology.
Every decisive verdict carries a witness that can be re-checked on its own.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Union

from .core import NeuronSet, SimplicialComplex, labels, popcount
from .enumeration import MAX_CANON_VERTICES, canonical_form, map_mask

# Collapse search gives up (-> Undetermined) after visiting this many states.
COLLAPSE_STATE_BUDGET = 200_000


class VoidComplex(ValueError):
    """The void complex has no homotopy type to speak of."""


class UndeterminedContractibility(RuntimeError):
    """Neither a collapse nor nonzero homology settled contractibility."""

    def __init__(self, cx: SimplicialComplex):
        super().__init__(f"contractibility undetermined for complex [{cx}] on n={cx.n}")
        self.complex = cx


@dataclass(frozen=True)
class HomologyProfile:
    reduced_betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    @property
    def is_trivial(self) -> bool:
        return not any(self.reduced_betti) and not any(self.torsion)

    def to_json(self) -> dict:
        return {"reduced_betti": list(self.reduced_betti), "torsion": [list(t) for t in self.torsion]}


@dataclass(frozen=True)
class Contractible:
    collapses: tuple[tuple[int, int], ...] = ()
    apex: int | None = None

    def to_json(self) -> dict:
        out: dict = {"verdict": "contractible"}
        if self.apex is not None:
            out["apex"] = labels(self.apex)
        else:
            out["collapses"] = [[labels(a), labels(b)] for a, b in self.collapses]
        return out


@dataclass(frozen=True)
class NonContractible:
    witness: Union[HomologyProfile, str]

    def to_json(self) -> dict:
        w = self.witness
        return {"verdict": "noncontractible", "witness": w if isinstance(w, str) else w.to_json()}


@dataclass(frozen=True)
class Undetermined:
    def to_json(self) -> dict:
        return {"verdict": "undetermined"}


Verdict = Union[Contractible, NonContractible, Undetermined]


# ---------------------------------------------------------------------------
# Homology


def _faces_by_dim(cx: SimplicialComplex) -> list[list[int]]:
    by_dim: dict[int, list[int]] = {}
    for s in cx.faces():
        if s:
            by_dim.setdefault(popcount(s) - 1, []).append(s)
    top = max(by_dim) if by_dim else -1
    return [sorted(by_dim.get(d, [])) for d in range(top + 1)]


def _boundary_matrix(rows: list[int], cols: list[int]) -> list[list[int]]:
    index = {s: i for i, s in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        sign = 1
        for v in labels(s):
            mat[index[s & ~(1 << (v - 1))]][j] = sign
            sign = -sign
    return mat


def _rank_and_divisors(mat: list[list[int]]) -> tuple[int, list[int]]:
    if not mat or not mat[0]:
        return 0, []
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    factors = [abs(int(f)) for f in invariant_factors(Matrix(mat), domain=ZZ)]
    nonzero = [f for f in factors if f != 0]
    return len(nonzero), nonzero


def reduced_homology(cx: SimplicialComplex) -> HomologyProfile:
    """Integer reduced homology in dimensions ``0..dim``.

    The augmented chain complex is used, so ``{∅}`` (no vertices) is reported
    with an empty Betti list; callers treat it separately.
    """
    if cx.is_void:
        raise VoidComplex("reduced homology of the void complex")
    by_dim = _faces_by_dim(cx)
    if not by_dim:
        return HomologyProfile((), ())
    ranks = []
    divisors = []
    # augmentation C_0 -> Z has rank 1 whenever a vertex exists
    ranks.append(1)
    divisors.append([])
    for d in range(1, len(by_dim)):
        r, divs = _rank_and_divisors(_boundary_matrix(by_dim[d - 1], by_dim[d]))
        ranks.append(r)
        divisors.append(divs)
    ranks.append(0)
    divisors.append([])
    betti = []
    torsion = []
    for d in range(len(by_dim)):
        betti.append(len(by_dim[d]) - ranks[d] - ranks[d + 1])
        torsion.append(tuple(f for f in divisors[d + 1] if f > 1))
    return HomologyProfile(tuple(betti), tuple(torsion))


# ---------------------------------------------------------------------------
# Collapses


def _all_faces(cx: SimplicialComplex) -> frozenset[int]:
    return frozenset(s for s in cx.faces() if s)


def _free_pairs(faces: frozenset[int]) -> list[tuple[int, int]]:
    """``(sigma, tau)`` with ``tau`` the only face strictly containing ``sigma``."""
    out = []
    for s in faces:
        coface = None
        count = 0
        for t in faces:
            if t != s and s & ~t == 0:
                count += 1
                if count > 1:
                    break
                coface = t
        if count == 1:
            out.append((s, coface))
    out.sort(key=lambda p: (-popcount(p[1]), p[1], p[0]))
    return out


def find_collapse(cx: SimplicialComplex, budget: int = COLLAPSE_STATE_BUDGET) -> tuple[tuple[int, int], ...] | None:
    """Elementary collapses reducing ``cx`` to one vertex, or None.

    Backtracks over the choice of free pair; dead states are memoized, so a
    complex is declared non-collapsible only after the search space is
    exhausted.  Raises ``RuntimeError`` when the state budget runs out.
    """
    start = _all_faces(cx)
    dead: set[frozenset[int]] = set()
    path: list[tuple[int, int]] = []
    visited = 0

    def search(faces: frozenset[int]) -> bool:
        nonlocal visited
        if len(faces) == 1:
            return True
        if faces in dead:
            return False
        visited += 1
        if visited > budget:
            raise RuntimeError("collapse search budget exhausted")
        for s, t in _free_pairs(faces):
            path.append((s, t))
            if search(faces - {s, t}):
                return True
            path.pop()
        dead.add(faces)
        return False

    return tuple(path) if search(start) else None


def cone_collapses(cx: SimplicialComplex, apex: NeuronSet) -> tuple[tuple[int, int], ...]:
    """Collapses of a cone onto its apex: pair each face missing the apex with its join.

    Largest faces go first, so ``s | apex`` is the only coface of ``s`` left.
    """
    rest = sorted((s for s in _all_faces(cx) if not s & apex), key=lambda s: (-popcount(s), s))
    return tuple((s, s | apex) for s in rest)


def collapse_sequence(cx: SimplicialComplex, verdict: Contractible) -> tuple[tuple[int, int], ...]:
    """Explicit collapses for a contractible verdict, expanding a cone apex if needed."""
    if verdict.apex is not None:
        return cone_collapses(cx, verdict.apex)
    return verdict.collapses


def replay_collapses(cx: SimplicialComplex, collapses) -> bool:
    """Apply the collapses in order; True iff each is elementary and a point remains."""
    faces = set(_all_faces(cx))
    for s, t in collapses:
        if s not in faces or t not in faces or s & ~t or s == t:
            return False
        if any(u != s and s & ~u == 0 and u != t for u in faces):
            return False
        faces -= {s, t}
    return len(faces) == 1 and popcount(next(iter(faces))) == 1


# ---------------------------------------------------------------------------
# Decision


def _is_graph_connected(cx: SimplicialComplex) -> bool:
    verts = cx.vertices
    reached = cx.facets[0]
    changed = True
    while changed:
        changed = False
        for f in cx.facets:
            if f & reached and f & ~reached:
                reached |= f
                changed = True
    return reached == verts


def _tree_collapses(cx: SimplicialComplex) -> tuple[tuple[int, int], ...]:
    edges = set(f for f in cx.facets if popcount(f) == 2)
    out = []
    while edges:
        deg: dict[int, int] = {}
        for e in edges:
            for v in labels(e):
                deg[v] = deg.get(v, 0) + 1
        leaf = min(v for v, d in deg.items() if d == 1)
        bit = 1 << (leaf - 1)
        e = next(e for e in edges if e & bit)
        out.append((bit, e))
        edges.remove(e)
    return tuple(out)


def _decide(cx: SimplicialComplex) -> Verdict:
    if cx.facets == (0,):
        return NonContractible("empty")
    if len(cx.facets) == 1:
        f = cx.facets[0]
        return Contractible(apex=f & -f)
    if not _is_graph_connected(cx):
        return NonContractible("disconnected")
    common = cx.facets[0]
    for f in cx.facets:
        common &= f
    if common:
        return Contractible(apex=common & -common)
    if cx.dim <= 1:
        n_vertices = popcount(cx.vertices)
        n_edges = sum(1 for f in cx.facets if popcount(f) == 2)
        if n_edges == n_vertices - 1:
            return Contractible(collapses=_tree_collapses(cx))
        return NonContractible(reduced_homology(cx))
    try:
        seq = find_collapse(cx)
    except RuntimeError:
        seq = None
    if seq is not None:
        return Contractible(collapses=seq)
    hom = reduced_homology(cx)
    if not hom.is_trivial:
        return NonContractible(hom)
    return Undetermined()


class VerdictCache:
    """Verdicts keyed by canonical form; safe under concurrent use.

    Readers never block each other on the dict lookup; writers store the same
    value for the same key, so a racing double insert is harmless.
    """

    def __init__(self):
        self._data: dict[tuple, Verdict] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        v = self._data.get(key)
        if v is None:
            self.misses += 1
        else:
            self.hits += 1
        return v

    def put(self, key, verdict: Verdict) -> None:
        with self._lock:
            self._data.setdefault(key, verdict)

    def __len__(self) -> int:
        return len(self._data)


_CACHE = VerdictCache()


def _relabel(v: Verdict, mapping: list[int]) -> Verdict:
    if isinstance(v, Contractible):
        if v.apex is not None:
            return Contractible(apex=map_mask(v.apex, mapping))
        return Contractible(collapses=tuple((map_mask(a, mapping), map_mask(b, mapping)) for a, b in v.collapses))
    return v


def is_contractible(cx: SimplicialComplex, cache: VerdictCache | None = _CACHE) -> Verdict:
    """Layered contractibility decision with a replayable witness."""
    if cx.is_void:
        raise VoidComplex("contractibility of the void complex")
    verts = labels(cx.vertices)
    m = len(verts)
    if cache is None or m > MAX_CANON_VERTICES or cx.facets == (0,):
        return _decide(cx)
    # compact to vertices 0..m-1, canonicalize, decide there, map back
    to_compact = [0] * (max(verts) if verts else 0)
    for new, old in enumerate(verts):
        to_compact[old - 1] = new
    compact = SimplicialComplex(m, tuple(map_mask(f, to_compact) for f in cx.facets))
    canon = canonical_form(compact)
    key = (m, canon.facets)
    verdict = cache.get(key)
    if verdict is None:
        verdict = _decide(SimplicialComplex(m, canon.facets))
        cache.put(key, verdict)
    back = [0] * m
    for i, p in enumerate(canon.perm):
        back[p] = verts[i] - 1
    return _relabel(verdict, back)


def require_decided(cx: SimplicialComplex) -> bool:
    """True iff contractible; raises ``UndeterminedContractibility`` otherwise."""
    v = is_contractible(cx)
    if isinstance(v, Undetermined):
        raise UndeterminedContractibility(cx)
    return isinstance(v, Contractible)


def hollow_simplex(m: int) -> SimplicialComplex:
    """Boundary of the simplex on vertices ``1..m``."""
    full = (1 << m) - 1
    return SimplicialComplex(m, tuple(full & ~(1 << i) for i in range(m)))


def verify_verdict(cx: SimplicialComplex, verdict: Verdict) -> bool:
    """Re-check a verdict's witness against the complex."""
    if isinstance(verdict, Contractible):
        if verdict.apex is not None:
            return popcount(verdict.apex) == 1 and all(verdict.apex & f for f in cx.facets)
        if popcount(cx.vertices) == 1 and not verdict.collapses:
            return len(cx.facets) == 1
        return replay_collapses(cx, verdict.collapses)
    if isinstance(verdict, NonContractible):
        w = verdict.witness
        if w == "empty":
            return cx.facets == (0,)
        if w == "disconnected":
            return not _is_graph_connected(cx)
        return not w.is_trivial and w == reduced_homology(cx)
    return False

