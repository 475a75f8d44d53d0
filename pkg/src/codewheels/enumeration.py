"""Canonical forms and isomorph-free enumeration of small simplicial complexes.

A complex is canonical when its facet list, sorted as bitmask integers, is the
lexicographically least among all relabelings of the vertices.  That order has
the property orderly generation needs: dropping the largest facet of a
canonical list leaves a canonical list.  So every canonical ``k``-facet list
is reached exactly once by appending a larger facet to a canonical
``(k - 1)``-facet list, and no seen-set is ever kept.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

from .core import (
    NeuronSet,
    SimplicialComplex,
    full_set,
    parse_sets,
    popcount,
)

MAX_CANON_VERTICES = 7


class VertexBoundExceeded(ValueError):
    """Raised when canonical labeling is requested for more than 7 vertices."""


@lru_cache(maxsize=None)
def _perm_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(perms, table)`` with ``table[p, mask]`` the image of ``mask`` under perm ``p``.

    ``perms[p, i]`` is the new position of vertex ``i``.
    """
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    masks = np.arange(1 << n, dtype=np.int64)
    table = np.zeros((perms.shape[0], 1 << n), dtype=np.int64)
    for b in range(n):
        bit = (masks >> b) & 1
        table |= bit[None, :] << perms[:, b][:, None]
    return perms, table


def _check_bound(n: int) -> None:
    if n > MAX_CANON_VERTICES:
        raise VertexBoundExceeded(f"canonical labeling supports n <= {MAX_CANON_VERTICES}, got {n}")


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    facets: tuple[NeuronSet, ...]
    perm: tuple[int, ...]

    def apply(self, mask: NeuronSet) -> NeuronSet:
        """Map a vertex set of the original complex into canonical labels."""
        return map_mask(mask, self.perm)

    def unapply(self, mask: NeuronSet) -> NeuronSet:
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return map_mask(mask, inv)


def map_mask(mask: NeuronSet, mapping: Sequence[int]) -> NeuronSet:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << mapping[i]
        mask >>= 1
        i += 1
    return out


def canonical_form(cx: SimplicialComplex) -> CanonicalForm:
    """Least sorted facet list over all ``n!`` vertex relabelings."""
    n = cx.n
    _check_bound(n)
    facets = np.array(cx.facets, dtype=np.int64)
    if facets.size == 0:
        return CanonicalForm(n, (), tuple(range(n)))
    perms, table = _perm_table(n)
    imgs = np.sort(table[:, facets], axis=1)
    best = np.lexsort(imgs.T[::-1])[0]
    return CanonicalForm(n, tuple(int(x) for x in imgs[best]), tuple(int(x) for x in perms[best]))


def is_canonical(cx: SimplicialComplex) -> bool:
    return canonical_form(cx).facets == tuple(sorted(cx.facets))


def are_isomorphic(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    if a.n != b.n or len(a.facets) != len(b.facets):
        return False
    if sorted(popcount(f) for f in a.facets) != sorted(popcount(f) for f in b.facets):
        return False
    return canonical_form(a).facets == canonical_form(b).facets


def is_connected(cx: SimplicialComplex) -> bool:
    """Connected and using every vertex of ``[n]``."""
    if not cx.facets or cx.vertices != full_set(cx.n):
        return False
    reached = cx.facets[0]
    pending = list(cx.facets[1:])
    grew = True
    while pending and grew:
        grew = False
        rest = []
        for f in pending:
            if f & reached:
                reached |= f
                grew = True
            else:
                rest.append(f)
        pending = rest
    return not pending


def _smaller_exists(rows: np.ndarray, target: np.ndarray) -> np.ndarray:
    """For each batch item, whether some permuted row sorts before the target.

    ``rows`` has shape ``(P, m, k)`` (already sorted on the last axis) and
    ``target`` shape ``(m, k)``.
    """
    neq = rows != target[None, :, :]
    first = neq.argmax(axis=2)
    has = neq.any(axis=2)
    picked = np.take_along_axis(rows, first[:, :, None], axis=2)[:, :, 0]
    ref = np.take_along_axis(target, first.T, axis=1).T
    return (has & (picked < ref)).any(axis=0)


def _candidate_facets(n: int, pure_dim: int | None) -> list[NeuronSet]:
    if n == 1:
        return [1]
    sizes = range(2, n + 1) if pure_dim is None else [pure_dim + 1]
    return [m for m in range(1, 1 << n) if popcount(m) in sizes]


def _canonical_lists(n: int, max_facets: int, pure_dim: int | None) -> Iterator[tuple[NeuronSet, ...]]:
    """Every canonical antichain (sorted ascending) with 1..max_facets members."""
    _check_bound(n)
    cands = _candidate_facets(n, pure_dim)
    if not cands or max_facets < 1:
        return
    _, table = _perm_table(n)
    first = np.array([[c] for c in cands], dtype=np.int64)
    rows = table[:, first]
    keep = ~_smaller_exists(rows, first)
    level = [(int(c),) for c, ok in zip(cands, keep) if ok]
    k = 1
    while level:
        yield from level
        if k == max_facets:
            return
        nxt: list[tuple[NeuronSet, ...]] = []
        for parent in level:
            top = parent[-1]
            ext = [c for c in cands if c > top and all(c & ~f and f & ~c for f in parent)]
            if not ext:
                continue
            batch = np.array([parent + (c,) for c in ext], dtype=np.int64)
            rows = np.sort(table[:, batch], axis=2)
            ok = ~_smaller_exists(rows, batch)
            nxt.extend(tuple(int(x) for x in row) for row, good in zip(batch, ok) if good)
        level = nxt
        k += 1


def enumerate_connected(
    n: int,
    facet_range: tuple[int, int] | None = None,
    pure_dim: int | None = None,
) -> Iterator[SimplicialComplex]:
    """One canonical representative per isomorphism class of connected complexes.

    Only complexes using all ``n`` vertices are produced.  ``facet_range`` is
    inclusive; ``None`` means every facet count.
    """
    if n < 1:
        return
    lo, hi = facet_range if facet_range is not None else (1, 1 << n)
    for facets in _canonical_lists(n, hi, pure_dim):
        if len(facets) < lo:
            continue
        cx = SimplicialComplex(n, facets)
        if is_connected(cx):
            yield cx


def read_complexes(stream: TextIO, n: int | None = None) -> Iterator[SimplicialComplex]:
    """Parse one complex per non-blank line (``#`` starts a comment)."""
    for line in stream:
        line = line.split("#", 1)[0].strip()
        if line:
            yield SimplicialComplex.from_facets(parse_sets(line), n)


def count_by_facets(complexes: Iterable[SimplicialComplex]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for cx in complexes:
        counts[len(cx.facets)] = counts.get(len(cx.facets), 0) + 1
    return counts


def code_canonical_words(code) -> tuple[NeuronSet, ...]:
    """Least sorted codeword list over all relabelings; equal iff codes are isomorphic."""
    n = code.n
    _check_bound(n)
    _, table = _perm_table(n)
    imgs = np.sort(table[:, np.array(code.words, dtype=np.int64)], axis=1)
    best = np.lexsort(imgs.T[::-1])[0]
    return tuple(int(x) for x in imgs[best])


def codes_isomorphic(a, b) -> bool:
    if a.n != b.n or len(a.words) != len(b.words):
        return False
    return code_canonical_words(a) == code_canonical_words(b)
