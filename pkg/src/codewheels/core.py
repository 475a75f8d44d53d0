"""Neural codes, simplicial complexes and the set algebra on top of them.

Neuron sets are plain ``int`` bitmasks: neuron ``i`` (1-based, as written in
codewords like ``"2356"``) lives at bit ``i - 1``.  Keeping them as ints makes
subset tests, unions and intersections single machine operations and lets the
search code stay allocation-free.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_NEURONS = 16

NeuronSet = int


class NotAFace(ValueError):
    """Raised when a link is requested for a set outside the complex."""


# ---------------------------------------------------------------------------
# NeuronSet helpers


def neurons(*labels: int) -> NeuronSet:
    """Build a neuron set from 1-based labels."""
    mask = 0
    for i in labels:
        if not 1 <= i <= MAX_NEURONS:
            raise ValueError(f"neuron label {i} outside 1..{MAX_NEURONS}")
        mask |= 1 << (i - 1)
    return mask


def labels(mask: NeuronSet) -> list[int]:
    """1-based labels of a neuron set, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: NeuronSet) -> int:
    return bin(mask).count("1")


def is_subset(a: NeuronSet, b: NeuronSet) -> bool:
    return a & ~b == 0


def full_set(n: int) -> NeuronSet:
    return (1 << n) - 1


def subsets(mask: NeuronSet) -> Iterator[NeuronSet]:
    """All subsets of ``mask`` (including 0 and ``mask``), ascending."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def fmt_set(mask: NeuronSet) -> str:
    """Render a neuron set in the text grammar (``-`` for the empty set)."""
    if mask == 0:
        return "-"
    ls = labels(mask)
    if ls[-1] <= 9:
        return "".join(str(i) for i in ls)
    return "{" + ",".join(str(i) for i in ls) + "}"


def parse_set(token: str) -> NeuronSet:
    """Parse one token: ``2356``, ``{2,3,5,6}`` or ``-``."""
    token = token.strip()
    if token in ("-", "{}", "∅"):
        return 0
    if token.startswith("{"):
        if not token.endswith("}"):
            raise ValueError(f"unterminated brace token {token!r}")
        body = token[1:-1].strip()
        if not body:
            return 0
        return neurons(*(int(x) for x in body.split(",")))
    if not token.isdigit():
        raise ValueError(f"bad neuron-set token {token!r}")
    if "0" in token:
        raise ValueError(f"neuron 0 in token {token!r}; labels start at 1")
    return neurons(*(int(ch) for ch in token))


_TOKEN = re.compile(r"\{[^}]*\}|[^\s{}]+")


def parse_sets(text: str) -> list[NeuronSet]:
    """Split a whitespace-separated listing into neuron sets."""
    return [parse_set(t) for t in _TOKEN.findall(text)]


# ---------------------------------------------------------------------------
# Codes and complexes


def _max_label(masks: Iterable[NeuronSet]) -> int:
    top = 0
    for m in masks:
        top = max(top, m.bit_length())
    return top


def maximal_sets(sets: Iterable[NeuronSet]) -> list[NeuronSet]:
    """Inclusion-maximal members of ``sets``, sorted ascending, deduplicated."""
    uniq = sorted(set(sets), key=lambda m: (-popcount(m), m))
    kept: list[NeuronSet] = []
    for s in uniq:
        if not any(s & ~k == 0 for k in kept):
            kept.append(s)
    return sorted(kept)


@dataclass(frozen=True)
class Code:
    """A neural code on ``n`` neurons; always contains the empty codeword."""

    n: int
    words: tuple[NeuronSet, ...]
    _trunks: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_NEURONS:
            raise ValueError(f"n={self.n} outside 0..{MAX_NEURONS}")
        words = set(self.words)
        words.add(0)
        top = full_set(self.n)
        for w in words:
            if w & ~top:
                raise ValueError(f"codeword {fmt_set(w)} not contained in [{self.n}]")
        object.__setattr__(self, "words", tuple(sorted(words)))

    @classmethod
    def from_sets(cls, sets: Iterable[NeuronSet], n: int | None = None) -> "Code":
        sets = list(sets)
        return cls(n if n is not None else _max_label(sets), tuple(sets))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Code":
        return cls.from_sets(parse_sets(text), n)

    def __contains__(self, sigma: NeuronSet) -> bool:
        return sigma in self._wordset

    @property
    def _wordset(self) -> frozenset:
        ws = self._trunks.get("_set")
        if ws is None:
            ws = self._trunks["_set"] = frozenset(self.words)
        return ws

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[NeuronSet]:
        return iter(self.words)

    def trunk_mask(self, sigma: NeuronSet) -> int:
        """Trunk of ``sigma`` as a bitmask over indices into ``words``."""
        tm = self._trunks.get(sigma)
        if tm is None:
            tm = 0
            for k, w in enumerate(self.words):
                if sigma & ~w == 0:
                    tm |= 1 << k
            self._trunks[sigma] = tm
        return tm

    def words_of(self, mask: int) -> list[NeuronSet]:
        return [w for k, w in enumerate(self.words) if mask >> k & 1]

    def __str__(self) -> str:
        ordered = sorted(self.words, key=lambda m: (-popcount(m), labels(m)))
        return " ".join(fmt_set(w) for w in ordered)


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on vertex set ``[n]`` given by its facets.

    ``facets == (0,)`` is the complex ``{∅}``; ``facets == ()`` is the void
    complex.  Faces are implicit: any subset of a facet.
    """

    n: int
    facets: tuple[NeuronSet, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_NEURONS:
            raise ValueError(f"n={self.n} outside 0..{MAX_NEURONS}")
        top = full_set(self.n)
        for f in self.facets:
            if f & ~top:
                raise ValueError(f"facet {fmt_set(f)} not contained in [{self.n}]")
        object.__setattr__(self, "facets", tuple(maximal_sets(self.facets)))

    @classmethod
    def from_facets(cls, facets: Iterable[NeuronSet], n: int | None = None) -> "SimplicialComplex":
        facets = list(facets)
        return cls(n if n is not None else _max_label(facets), tuple(facets))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "SimplicialComplex":
        return cls.from_facets(parse_sets(text), n)

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def vertices(self) -> NeuronSet:
        v = 0
        for f in self.facets:
            v |= f
        return v

    @property
    def dim(self) -> int:
        if not self.facets:
            raise ValueError("the void complex has no dimension")
        return max(popcount(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) <= 1

    def faces(self) -> Iterator[NeuronSet]:
        """Every face exactly once, generated from the facets on demand."""
        seen: set[NeuronSet] = set()
        for f in self.facets:
            for s in subsets(f):
                if s not in seen:
                    seen.add(s)
                    yield s

    def __contains__(self, sigma: NeuronSet) -> bool:
        return is_face(self, sigma)

    def __str__(self) -> str:
        if not self.facets:
            return "(void)"
        return " ".join(fmt_set(f) for f in sorted(self.facets, key=lambda m: (-popcount(m), labels(m))))


# ---------------------------------------------------------------------------
# Operations


def trunk(code: Code, sigma: NeuronSet) -> list[NeuronSet]:
    """Codewords containing ``sigma``."""
    return [w for w in code.words if sigma & ~w == 0]


def neural_complex(code: Code) -> SimplicialComplex:
    return SimplicialComplex(code.n, tuple(maximal_sets(code.words)))


def is_face(cx: SimplicialComplex, sigma: NeuronSet) -> bool:
    return any(sigma & ~f == 0 for f in cx.facets)


def link(cx: SimplicialComplex, sigma: NeuronSet) -> SimplicialComplex:
    """Link of ``sigma``, facets ``F - sigma`` for facets ``F`` containing it."""
    star = [f & ~sigma for f in cx.facets if sigma & ~f == 0]
    if not star:
        raise NotAFace(f"{fmt_set(sigma)} is not a face of the complex")
    return SimplicialComplex(cx.n, tuple(star))


def restrict(code: Code, chi: NeuronSet) -> Code:
    """The restricted code ``{c & chi}``; stays on the same ``n`` neurons."""
    return Code(code.n, tuple(w & chi for w in code.words))


def trunk_covered_by(code: Code, phi: NeuronSet, psis: Sequence[NeuronSet]) -> bool:
    """Whether every codeword containing ``phi`` contains some ``psi``."""
    for w in code.words:
        if phi & ~w == 0 and not any(p & ~w == 0 for p in psis):
            return False
    return True


def relabel_compact(code: Code, keep: NeuronSet) -> Code:
    """Restrict to ``keep`` and renumber the kept neurons to ``1..|keep|``."""
    idx = labels(keep)
    remap = {old - 1: new for new, old in enumerate(idx)}

    def squash(w: NeuronSet) -> NeuronSet:
        out = 0
        for old, new in remap.items():
            if w >> old & 1:
                out |= 1 << new
        return out

    return Code(len(idx), tuple(squash(w) for w in code.words))
