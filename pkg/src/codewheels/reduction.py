"""Trivial and redundant neurons, reduction, and decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .core import Code, NeuronSet, full_set, labels, relabel_compact


@dataclass(frozen=True)
class ReductionStep:
    """One removed neuron.  ``neuron`` is its label in the code it was removed from."""

    neuron: int
    kind: Literal["trivial", "redundant"]
    witness_sigma: NeuronSet | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "neuron": self.neuron}
        if self.witness_sigma is not None:
            out["witness_sigma"] = labels(self.witness_sigma)
        return out


@dataclass(frozen=True)
class Decomposition:
    phi: NeuronSet
    psi: NeuronSet

    def to_json(self) -> dict:
        return {"kind": "decomposition", "phi": labels(self.phi), "psi": labels(self.psi)}


def is_trivial_neuron(code: Code, i: int) -> bool:
    return code.trunk_mask(1 << (i - 1)) == 0


def redundant_neuron_witness(code: Code, i: int) -> NeuronSet | None:
    """``sigma`` not containing ``i`` with ``Tk(sigma) == Tk(i)``, if any.

    Any such ``sigma`` lies inside every word containing ``i``, so testing the
    largest candidate ``(∩ Tk(i)) - i`` decides existence.
    """
    if not 1 <= i <= code.n:
        raise ValueError(f"neuron {i} outside 1..{code.n}")
    bit = 1 << (i - 1)
    tk_i = code.trunk_mask(bit)
    if not tk_i:
        return None
    common = -1
    for w in code.words_of(tk_i):
        common &= w
    sigma = common & ~bit
    return sigma if code.trunk_mask(sigma) == tk_i else None


def removable_neuron(code: Code, check_trivial: bool = True) -> ReductionStep | None:
    """Lowest-labelled trivial or redundant neuron."""
    for i in range(1, code.n + 1):
        if is_trivial_neuron(code, i):
            if check_trivial:
                return ReductionStep(i, "trivial")
            continue
        sigma = redundant_neuron_witness(code, i)
        if sigma is not None:
            return ReductionStep(i, "redundant", sigma)
    return None


def reduce(code: Code, check_trivial: bool = True) -> tuple[Code, list[ReductionStep]]:
    """Remove removable neurons one at a time until none is left.

    Survivors are renumbered ``1..m`` after each step, and each step records
    the label as it was in the code it was removed from.
    """
    steps = []
    while True:
        step = removable_neuron(code, check_trivial)
        if step is None:
            return code, steps
        steps.append(step)
        code = relabel_compact(code, full_set(code.n) & ~(1 << (step.neuron - 1)))


def find_decomposition(code: Code) -> Decomposition | None:
    """First ``(phi, psi)`` in ascending ``phi`` order making the code decomposable."""
    n = code.n
    top = full_set(n)
    words = code.words
    for phi in range(1, top):
        psi = None
        ok = True
        for w in words:
            if w & phi:
                rest = w & ~phi
                if psi is None:
                    psi = rest
                elif rest != psi:
                    ok = False
                    break
        if not ok or psi is None:
            continue
        if psi == top or psi not in code:
            continue
        dec = Decomposition(phi, psi)
        assert all(w & ~phi == psi for w in words if w & phi)
        return dec
    return None
