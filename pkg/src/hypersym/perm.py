"""Permutations of the points 0..n-1 and their cycle structure.

Permutations act on the right: ``i ^ (a * b) == (i ^ a) ^ b``, so
``compose(a, b)`` applies ``a`` first.  Cycle strings use 0-based labels
unless ``one_based=True`` is passed (catalog files are 1-based).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded

DEGREE_CAP = 4096

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class CycleStructure:
    degree: int
    cycle_lengths: tuple  # sorted, longest first, fixed points included
    support: int
    order: int
    prime_order: Optional[int]


class Permutation:
    """Immutable bijection of ``range(degree)`` stored as an image tuple."""

    __slots__ = ("images", "_cycles", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check:
            n = len(images)
            if n < 1:
                raise ValueError("degree must be at least 1")
            if n > DEGREE_CAP:
                raise CapExceeded(f"degree {n} exceeds cap {DEGREE_CAP}")
            if sorted(images) != list(range(n)):
                raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._cycles = None
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x} outside 0..{degree - 1}")
                if x in seen:
                    raise ValueError(f"point {x} appears in more than one cycle")
                seen.add(x)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int, one_based: bool = False) -> "Permutation":
        """Parse disjoint-cycle notation such as ``"(1 2 3)(4 5)"``."""
        stripped = "".join(text.split())
        if _CYCLE_RE.sub("", stripped) != "":
            raise ValueError(f"cannot parse permutation {text!r}")
        shift = 1 if one_based else 0
        cycles = []
        for body in _CYCLE_RE.findall(text):
            parts = body.replace(",", " ").split()
            if parts:
                cycles.append([int(x) - shift for x in parts])
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self):
        return f"Permutation({self.to_cycles()!r}, degree={self.degree})"

    def __str__(self):
        return self.to_cycles()

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list:
        """Nontrivial cycles, each starting at its smallest point."""
        if self._cycles is None:
            seen = [False] * self.degree
            out = []
            for i in range(self.degree):
                if seen[i] or self.images[i] == i:
                    continue
                cyc = [i]
                seen[i] = True
                j = self.images[i]
                while j != i:
                    seen[j] = True
                    cyc.append(j)
                    j = self.images[j]
                out.append(tuple(cyc))
            self._cycles = tuple(out)
        return list(self._cycles)

    def support(self) -> frozenset:
        return frozenset(i for i, x in enumerate(self.images) if i != x)

    def cycle_structure(self) -> CycleStructure:
        return cycle_structure(self)

    def to_cycles(self, one_based: bool = False) -> str:
        shift = 1 if one_based else 0
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + shift) for x in c) + ")" for c in cyc)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` then ``b``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} != {b.degree}")
    bi = b.images
    return Permutation([bi[x] for x in a.images], check=False)


def inverse(a: Permutation) -> Permutation:
    out = [0] * a.degree
    for i, x in enumerate(a.images):
        out[x] = i
    return Permutation(out, check=False)


def cycle_structure(a: Permutation) -> CycleStructure:
    lengths = [len(c) for c in a.cycles()]
    support = sum(lengths)
    lengths += [1] * (a.degree - support)
    lengths.sort(reverse=True)
    order = math.lcm(*lengths) if lengths else 1
    prime = order if _is_prime(order) else None
    return CycleStructure(a.degree, tuple(lengths), support, order, prime)


def parse_generators(text: str, degree: int, one_based: bool = False) -> list:
    """Split a ``;``-separated generator list into permutations."""
    return [Permutation.parse(chunk, degree, one_based)
            for chunk in text.split(";") if chunk.strip()]
