"""Sprockets, wire wheels and wheel frames: checkers, finders, brute-force twins.

Each finder returns the first certificate in a fixed search order (rims, then
spokes, ascending as bitmask integers), so repeated runs agree byte for byte.
The pruned finders restrict the search using structural facts about these
objects:

* rims of sprockets and wire wheels are non-codeword intersections of
  facets, rims of wheel frames can be taken to be intersections of facets;
* spokes of sprockets never contain one another, and sprocket witnesses
  are distinct nonempty subsets of ``cl(spoke | rim)``;
* all three objects are symmetric under swapping the outer spokes.

The ``brute_force_*`` twins use none of this and enumerate every tuple of
faces, so they serve as an independent oracle on small codes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Union

from .core import Code, NeuronSet, SimplicialComplex, labels, link, neural_complex, subsets
from .obstructions import facet_intersections

DEFAULT_BRUTE_FORCE_BUDGET = 2_000_000


class SearchBudgetExceeded(RuntimeError):
    """The unpruned search would visit more face tuples than allowed."""


@dataclass(frozen=True)
class PartialWheel:
    s1: NeuronSet
    s2: NeuronSet
    s3: NeuronSet
    tau: NeuronSet


@dataclass(frozen=True)
class SprocketCert:
    wheel: PartialWheel
    rho1: NeuronSet
    rho3: NeuronSet

    kind = "sprocket"

    def to_json(self) -> dict:
        w = self.wheel
        return {
            "kind": self.kind,
            "spokes": [labels(w.s1), labels(w.s2), labels(w.s3)],
            "rim": labels(w.tau),
            "witnesses": [labels(self.rho1), labels(self.rho3)],
        }


@dataclass(frozen=True)
class WireWheelCert:
    s1: NeuronSet
    s2: NeuronSet
    s3: NeuronSet
    tau: NeuronSet

    kind = "wire_wheel"

    def to_json(self) -> dict:
        return {"kind": self.kind, "spokes": [labels(self.s1), labels(self.s2), labels(self.s3)], "rim": labels(self.tau)}


@dataclass(frozen=True)
class WheelFrameCert:
    s1: NeuronSet
    s3: NeuronSet
    tau: NeuronSet

    kind = "wheel_frame"

    def to_json(self) -> dict:
        return {"kind": self.kind, "spokes": [labels(self.s1), labels(self.s3)], "rim": labels(self.tau)}


WheelCert = Union[SprocketCert, WireWheelCert, WheelFrameCert]


def cert_from_json(obj: dict) -> WheelCert:
    from .core import neurons

    spokes = [neurons(*s) for s in obj["spokes"]]
    rim = neurons(*obj["rim"])
    kind = obj["kind"]
    if kind == "sprocket":
        r1, r3 = (neurons(*r) for r in obj["witnesses"])
        return SprocketCert(PartialWheel(spokes[0], spokes[1], spokes[2], rim), r1, r3)
    if kind == "wire_wheel":
        return WireWheelCert(spokes[0], spokes[1], spokes[2], rim)
    if kind == "wheel_frame":
        return WheelFrameCert(spokes[0], spokes[1], rim)
    raise ValueError(f"unknown certificate kind {kind!r}")


class _Ctx:
    """Memoized trunk / face / closure lookups for one code."""

    def __init__(self, code: Code):
        self.code = code
        self.cx = neural_complex(code)
        self.facets = self.cx.facets
        self.words = code.words
        self._face: dict[int, bool] = {}
        self._cl: dict[int, int] = {}

    def tk(self, s: NeuronSet) -> int:
        return self.code.trunk_mask(s)

    def face(self, s: NeuronSet) -> bool:
        f = self._face.get(s)
        if f is None:
            f = self._face[s] = any(s & ~F == 0 for F in self.facets)
        return f

    def closure(self, s: NeuronSet) -> int:
        """Intersection of the codewords containing ``s`` (``s`` must be a face)."""
        c = self._cl.get(s)
        if c is None:
            c = -1
            for w in self.words:
                if s & ~w == 0:
                    c &= w
            self._cl[s] = c
        return c

    def star_faces(self, tau: NeuronSet) -> list[NeuronSet]:
        """Nonempty faces ``sigma`` with ``sigma | tau`` a face, ascending."""
        out: set[int] = set()
        for F in self.facets:
            if tau & ~F == 0:
                out.update(subsets(F))
        out.discard(0)
        return sorted(out)

    def all_faces(self) -> list[NeuronSet]:
        return sorted(self.cx.faces())

    def covered(self, tau: NeuronSet, cover: NeuronSet) -> bool:
        """Every codeword containing ``tau`` meets ``cover``."""
        return all(w & cover for w in self.words if tau & ~w == 0)


def _ctx(code) -> _Ctx:
    return code if isinstance(code, _Ctx) else _Ctx(code)


# ---------------------------------------------------------------------------
# Checkers


def check_partial_wheel(code, s1: NeuronSet, s2: NeuronSet, s3: NeuronSet, tau: NeuronSet) -> bool:
    c = _ctx(code)
    u = s1 | s2 | s3
    if not c.face(u):
        return False
    t = c.tk(u)
    if c.tk(s1 | s2) != t or c.tk(s1 | s3) != t or c.tk(s2 | s3) != t:
        return False
    if c.face(u | tau):
        return False
    return c.face(s1 | tau) and c.face(s2 | tau) and c.face(s3 | tau)


def _witnesses_ok(c: _Ctx, s1, s2, s3, tau, rho1, rho3) -> bool:
    t1, t3 = c.tk(rho1), c.tk(rho3)
    if c.tk(s1 | tau) & ~t1 or c.tk(s3 | tau) & ~t3:
        return False
    if c.tk(tau) & ~(t1 | t3):
        return False
    return c.tk(rho1 | rho3 | tau) & ~c.tk(s2) == 0


def check_sprocket(code, cert: SprocketCert) -> bool:
    c = _ctx(code)
    w = cert.wheel
    if not check_partial_wheel(c, w.s1, w.s2, w.s3, w.tau):
        return False
    if not (c.face(cert.rho1) and c.face(cert.rho3)):
        return False
    return _witnesses_ok(c, w.s1, w.s2, w.s3, w.tau, cert.rho1, cert.rho3)


def _link_tree(c: _Ctx, tau: NeuronSet) -> dict[int, list[int]] | None:
    """Adjacency of ``Lk_tau`` if it is a tree (graph, connected, acyclic)."""
    lk = link(c.cx, tau)
    if lk.facets == (0,):
        return None
    adj: dict[int, list[int]] = {}
    n_edges = 0
    for f in lk.facets:
        ls = labels(f)
        if len(ls) > 2:
            return None
        for v in ls:
            adj.setdefault(v, [])
        if len(ls) == 2:
            a, b = ls
            adj[a].append(b)
            adj[b].append(a)
            n_edges += 1
    if n_edges != len(adj) - 1:
        return None
    start = next(iter(adj))
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return adj if len(seen) == len(adj) else None


def _tree_path(adj: dict[int, list[int]], a: int, b: int) -> list[int]:
    parent = {a: None}
    q = deque([a])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                q.append(u)
    path = []
    v = b
    while v is not None:
        path.append(v)
        v = parent[v]
    return path[::-1]


def _single_label(mask: NeuronSet) -> int | None:
    if mask and mask & (mask - 1) == 0:
        return mask.bit_length()
    return None


def check_wire_wheel(code, cert: WireWheelCert) -> bool:
    c = _ctx(code)
    s1, s2, s3, tau = cert.s1, cert.s2, cert.s3, cert.tau
    if not all(c.face(s) for s in (s1, s2, s3, tau)):
        return False
    u = s1 | s2 | s3
    if not c.face(u):
        return False
    t = c.tk(u)
    if c.tk(s1 | s2) != t or c.tk(s1 | s3) != t or c.tk(s2 | s3) != t:
        return False
    if c.face(u | tau) or tau in c.code:
        return False
    adj = _link_tree(c, tau)
    if adj is None:
        return False
    vs = [_single_label(s & ~tau) for s in (s1, s2, s3)]
    if any(v is None or v not in adj for v in vs):
        return False
    return vs[1] in _tree_path(adj, vs[0], vs[2])


def check_wheel_frame(code, cert: WheelFrameCert) -> bool:
    c = _ctx(code)
    s1, s3, tau = cert.s1, cert.s3, cert.tau
    if not all(c.face(s) for s in (s1, s3, tau)):
        return False
    both = s1 | s3
    # F(iv)
    if s1 & s3 or not c.covered(tau, both):
        return False
    # F(iii), F(ii)
    if not (c.face(s1 | tau) and c.face(s3 | tau)) or c.face(both | tau):
        return False
    # F(i)
    return _frame_omega_ok(c, s1, s3, tau)


def _frame_omega_ok(c: _Ctx, s1, s3, tau) -> bool:
    both = s1 | s3
    if not c.face(both):
        return False
    t = c.tk(both)
    for w in subsets(both):
        if w & ~s1 == 0 or w & ~s3 == 0 or not c.face(w | tau):
            continue
        if c.tk(s1 | w) != t or c.tk(s3 | w) != t:
            return False
    return True


# ---------------------------------------------------------------------------
# Pruned finders


def candidate_rims(code, include_codewords: bool = False) -> list[NeuronSet]:
    c = _ctx(code)
    mi = facet_intersections(c.facets)
    return sorted(t for t in mi if t and (include_codewords or t not in c.code))


def find_sprocket(code, trace: list | None = None) -> SprocketCert | None:
    """First sprocket in search order.

    ``trace``, if given, receives one entry per rim examined with the number
    of outer-spoke pairs and partial wheels tried, making a negative answer
    auditable.
    """
    c = _ctx(code)
    for tau in candidate_rims(c):
        star = c.star_faces(tau)
        tk_tau = c.tk(tau)
        log = {"kind": "sprocket", "rim": labels(tau), "spoke_pairs": 0, "partial_wheels": 0}
        if trace is not None:
            trace.append(log)
        for i, s1 in enumerate(star):
            for s3 in star[i + 1 :]:
                log["spoke_pairs"] += 1
                if s1 & ~s3 == 0 or s3 & ~s1 == 0:
                    continue
                pair = s1 | s3
                if not c.face(pair):
                    continue
                t = c.tk(pair)
                k = c.closure(pair)
                mids = [
                    s2
                    for s2 in star
                    if s2 & ~k == 0
                    and s2 & ~s1
                    and s1 & ~s2
                    and s2 & ~s3
                    and s3 & ~s2
                    and c.tk(s1 | s2) == t
                    and c.tk(s2 | s3) == t
                    and not c.face(pair | s2 | tau)
                ]
                if not mids:
                    continue
                log["partial_wheels"] += len(mids)
                pairs = _witness_pairs(c, s1, s3, tau, tk_tau)
                if not pairs:
                    continue
                for s2 in mids:
                    tk2 = c.tk(s2)
                    for r1, r3, m in pairs:
                        if m & ~tk2 == 0:
                            return SprocketCert(PartialWheel(s1, s2, s3, tau), r1, r3)
    return None


def _witness_pairs(c: _Ctx, s1, s3, tau, tk_tau) -> list[tuple[int, int, int]]:
    """Witness pairs meeting the first two sprocket conditions, with ``Tk(r1|r3|tau)``."""
    need1 = c.tk(s1 | tau)
    need3 = c.tk(s3 | tau)
    r1s = [(r, c.tk(r)) for r in subsets(c.closure(s1 | tau)) if r]
    r3s = [(r, c.tk(r)) for r in subsets(c.closure(s3 | tau)) if r]
    r1s = [(r, t) for r, t in r1s if need1 & ~t == 0]
    r3s = [(r, t) for r, t in r3s if need3 & ~t == 0]
    out = []
    for r1, t1 in r1s:
        for r3, t3 in r3s:
            if r1 != r3 and tk_tau & ~(t1 | t3) == 0:
                out.append((r1, r3, c.tk(r1 | r3 | tau)))
    return out


def find_wire_wheel(code, trace: list | None = None) -> WireWheelCert | None:
    c = _ctx(code)
    for tau in candidate_rims(c):
        adj = _link_tree(c, tau)
        log = {"kind": "wire_wheel", "rim": labels(tau), "link_is_tree": adj is not None, "spoke_triples": 0}
        if trace is not None:
            trace.append(log)
        if adj is None or len(adj) < 3:
            continue
        verts = sorted(adj)
        tau_subs = list(subsets(tau))
        for v1 in verts:
            for v3 in verts:
                if v3 <= v1:
                    continue
                path = _tree_path(adj, v1, v3)
                for v2 in path[1:-1]:
                    b1, b2, b3 = (1 << (v - 1) for v in (v1, v2, v3))
                    if c.face(tau | b1 | b2 | b3):
                        continue
                    for t1 in tau_subs:
                        for t3 in tau_subs:
                            for t2 in tau_subs:
                                cert = WireWheelCert(t1 | b1, t2 | b2, t3 | b3, tau)
                                log["spoke_triples"] += 1
                                if _partial_i(c, cert.s1, cert.s2, cert.s3):
                                    return cert
    return None


def _partial_i(c: _Ctx, s1, s2, s3) -> bool:
    u = s1 | s2 | s3
    if not c.face(u):
        return False
    t = c.tk(u)
    return c.tk(s1 | s2) == t and c.tk(s1 | s3) == t and c.tk(s2 | s3) == t


def find_wheel_frame(code, trace: list | None = None) -> WheelFrameCert | None:
    c = _ctx(code)
    for tau in candidate_rims(c, include_codewords=True):
        star = c.star_faces(tau)
        log = {"kind": "wheel_frame", "rim": labels(tau), "spoke_pairs": 0}
        if trace is not None:
            trace.append(log)
        for i, s1 in enumerate(star):
            for s3 in star[i + 1 :]:
                if s1 & s3:
                    continue
                log["spoke_pairs"] += 1
                both = s1 | s3
                if c.face(both | tau) or not c.face(both):
                    continue
                if not c.covered(tau, both):
                    continue
                if _frame_omega_ok(c, s1, s3, tau):
                    return WheelFrameCert(s1, s3, tau)
    return None


@dataclass(frozen=True)
class WheelReport:
    sprocket: SprocketCert | None
    wire_wheel: WireWheelCert | None
    wheel_frame: WheelFrameCert | None

    @property
    def any(self) -> bool:
        return bool(self.sprocket or self.wire_wheel or self.wheel_frame)

    def certificates(self) -> list[WheelCert]:
        return [x for x in (self.sprocket, self.wire_wheel, self.wheel_frame) if x is not None]


def wheel_report(code, trace: list | None = None) -> WheelReport:
    """All three finders, each run to completion regardless of the others."""
    c = _ctx(code)
    return WheelReport(find_sprocket(c, trace), find_wire_wheel(c, trace), find_wheel_frame(c, trace))


def check_certificate(code, cert: WheelCert) -> bool:
    if isinstance(cert, SprocketCert):
        return check_sprocket(code, cert)
    if isinstance(cert, WireWheelCert):
        return check_wire_wheel(code, cert)
    return check_wheel_frame(code, cert)


# ---------------------------------------------------------------------------
# Brute-force twins


def _guard(n_faces: int, arity: int, budget: int) -> None:
    if n_faces**arity > budget:
        raise SearchBudgetExceeded(f"{n_faces}^{arity} face tuples exceeds budget {budget}")


def brute_force_find_sprocket(code, budget: int = DEFAULT_BRUTE_FORCE_BUDGET) -> SprocketCert | None:
    c = _ctx(code)
    faces = c.all_faces()
    _guard(len(faces), 4, budget)
    for tau in faces:
        for s1 in faces:
            if not c.face(s1 | tau):
                continue
            for s2 in faces:
                if not c.face(s2 | tau):
                    continue
                for s3 in faces:
                    if not check_partial_wheel(c, s1, s2, s3, tau):
                        continue
                    for r1 in faces:
                        for r3 in faces:
                            if _witnesses_ok(c, s1, s2, s3, tau, r1, r3):
                                return SprocketCert(PartialWheel(s1, s2, s3, tau), r1, r3)
    return None


def brute_force_find_wire_wheel(code, budget: int = DEFAULT_BRUTE_FORCE_BUDGET) -> WireWheelCert | None:
    c = _ctx(code)
    faces = c.all_faces()
    _guard(len(faces), 4, budget)
    for tau in faces:
        if tau in c.code:
            continue
        for s1 in faces:
            if _single_label(s1 & ~tau) is None:
                continue
            for s2 in faces:
                if _single_label(s2 & ~tau) is None:
                    continue
                for s3 in faces:
                    cert = WireWheelCert(s1, s2, s3, tau)
                    if check_wire_wheel(c, cert):
                        return cert
    return None


def brute_force_find_wheel_frame(code, budget: int = DEFAULT_BRUTE_FORCE_BUDGET) -> WheelFrameCert | None:
    c = _ctx(code)
    faces = c.all_faces()
    _guard(len(faces), 3, budget)
    for tau in faces:
        for s1 in faces:
            for s3 in faces:
                cert = WheelFrameCert(s1, s3, tau)
                if check_wheel_frame(c, cert):
                    return cert
    return None


# ---------------------------------------------------------------------------
# Structural facts, used as runtime audits


def bubble_rim(code, tau: NeuronSet) -> NeuronSet:
    """Intersection of all facets containing ``tau``."""
    c = _ctx(code)
    out = -1
    for F in c.facets:
        if tau & ~F == 0:
            out &= F
    return out


def audit_certificate(code, cert: WheelCert) -> list[str]:
    """Violations of the known structural facts; empty when all hold."""
    c = _ctx(code)
    problems = []
    if not check_certificate(c, cert):
        problems.append("certificate does not re-validate")
    mi = facet_intersections(c.facets)
    if isinstance(cert, SprocketCert):
        w = cert.wheel
        if w.tau in c.code:
            problems.append("sprocket rim is a codeword")
        if w.tau not in mi:
            problems.append("sprocket rim is not a max-intersection face")
        if cert.rho1 == cert.rho3:
            problems.append("sprocket witnesses coincide")
        if _spokes_nested((w.s1, w.s2, w.s3)):
            problems.append("sprocket spokes nested")
        lifted = SprocketCert(PartialWheel(w.s1, w.s2, w.s3, bubble_rim(c, w.tau)), cert.rho1, cert.rho3)
        if not check_sprocket(c, lifted):
            problems.append("sprocket fails bubble-up")
    elif isinstance(cert, WireWheelCert):
        if cert.tau in c.code or cert.tau not in mi:
            problems.append("wire wheel rim not a non-codeword max-intersection face")
        if _spokes_nested((cert.s1, cert.s2, cert.s3)):
            problems.append("wire wheel spokes nested")
        if len({s & ~cert.tau for s in (cert.s1, cert.s2, cert.s3)}) != 3:
            problems.append("wire wheel spoke tips not distinct")
    else:
        if not cert.s1 or not cert.s3 or not cert.tau:
            problems.append("wheel frame has an empty member")
        if cert.s1 & ~cert.s3 == 0 or cert.s3 & ~cert.s1 == 0:
            problems.append("wheel frame outer spokes nested")
        lifted = WheelFrameCert(cert.s1, cert.s3, bubble_rim(c, cert.tau))
        if not check_wheel_frame(c, lifted):
            problems.append("wheel frame fails bubble-up")
    return problems


def _spokes_nested(spokes: Iterable[NeuronSet]) -> bool:
    spokes = list(spokes)
    return any(a & ~b == 0 for i, a in enumerate(spokes) for j, b in enumerate(spokes) if i != j)


def complex_of(code: Code) -> SimplicialComplex:
    return neural_complex(code)
