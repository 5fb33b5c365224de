"""Constructors for the concrete groups and actions used by the experiments.

Field elements of GF(p^e) are encoded as integers ``0..q-1`` via their
coefficient vectors in base ``p``; on the projective line the point ``q``
stands for infinity.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded
from .groups import PermGroup, build_group
from .perm import DEGREE_CAP, Permutation

PROJECTIVE_Q = (4, 5, 7, 8, 9)

# x^e + (lower terms), lowest coefficient first
_CONWAY = {4: (2, (1, 1)), 8: (2, (1, 1, 0)), 9: (3, (1, 0))}


class KSetIndex:
    """Lexicographic ranking of the k-subsets of ``range(n)``."""

    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
        self.n = n
        self.k = k
        self.size = math.comb(n, k)

    def rank(self, subset) -> int:
        items = sorted(subset)
        if len(items) != self.k or len(set(items)) != self.k:
            raise ValueError(f"expected {self.k} distinct points, got {subset}")
        n, k = self.n, self.k
        r, prev = 0, -1
        for i, c in enumerate(items):
            for j in range(prev + 1, c):
                r += math.comb(n - 1 - j, k - 1 - i)
            prev = c
        return r

    def unrank(self, r: int) -> tuple:
        if not 0 <= r < self.size:
            raise ValueError(f"rank {r} outside 0..{self.size - 1}")
        n, k = self.n, self.k
        out = []
        x = 0
        for i in range(k):
            while True:
                block = math.comb(n - 1 - x, k - 1 - i)
                if r < block:
                    break
                r -= block
                x += 1
            out.append(x)
            x += 1
        return tuple(out)

    def subsets(self):
        return itertools.combinations(range(self.n), self.k)


def induced_kset_action(G: PermGroup, k: int):
    """Action of G on the k-subsets of its points; returns ``(image, index)``."""
    n = G.degree
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    index = KSetIndex(n, k)
    if index.size > DEGREE_CAP:
        raise CapExceeded(f"C({n},{k}) = {index.size} exceeds degree cap {DEGREE_CAP}")
    subsets = list(index.subsets())
    rank = {s: i for i, s in enumerate(subsets)}
    gens = []
    for g in G.generators:
        im = g.images
        gens.append(Permutation([rank[tuple(sorted(im[x] for x in s))] for s in subsets],
                                check=False))
    return PermGroup(index.size, gens), index


def wreath_product_action(m: int, k: int) -> PermGroup:
    """S_m wr S_k in product action on ``range(m)**k``.

    The tuple ``(x_0, ..., x_{k-1})`` is the point ``sum x_i * m**(k-1-i)``.
    """
    if m < 3 or k < 2:
        raise ValueError(f"need m >= 3 and k >= 2, got m={m}, k={k}")
    if m**k > DEGREE_CAP:
        raise CapExceeded(f"degree {m**k} exceeds cap {DEGREE_CAP}")
    points = list(itertools.product(range(m), repeat=k))
    index = {p: i for i, p in enumerate(points)}

    def lift(fn):
        return Permutation([index[fn(p)] for p in points], check=False)

    swap = lambda x: 1 - x if x < 2 else x
    shift = lambda x: (x + 1) % m
    return PermGroup(m**k, [
        lift(lambda p: (swap(p[0]),) + p[1:]),
        lift(lambda p: (shift(p[0]),) + p[1:]),
        lift(lambda p: (p[1], p[0]) + p[2:]),
        lift(lambda p: p[1:] + p[:1]),
    ])


@dataclass(frozen=True)
class Field:
    """Addition and multiplication tables for GF(q)."""

    q: int
    p: int
    e: int
    add: tuple
    mul: tuple

    def neg(self, a):
        return self.add[a].index(0)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.mul[a].index(1)

    def power(self, a, k):
        r = 1
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def primitive_element(self):
        for a in range(2, self.q) if self.q > 2 else [1]:
            x, order = a, 1
            while x != 1:
                x = self.mul[x][a]
                order += 1
            if order == self.q - 1:
                return a
        return 1


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1:
                return None
            return p, e
    return None


@lru_cache(maxsize=None)
def finite_field(q: int) -> Field:
    pe = _factor_prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    p, e = pe
    if e == 1:
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
        return Field(q, p, 1, add, mul)
    if q not in _CONWAY:
        raise ValueError(f"no field tables for q={q}")
    _, low = _CONWAY[q]

    def vec(a):
        return [(a // p**i) % p for i in range(e)]

    def num(v):
        return sum(c * p**i for i, c in enumerate(v))

    def polymul(a, b):
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(vec(a)):
            for j, y in enumerate(vec(b)):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce with x^e = -(low)
        for d in range(2 * e - 2, e - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i, l in enumerate(low):
                    prod[d - e + i] = (prod[d - e + i] - c * l) % p
        return num(prod[:e])

    add = tuple(tuple(num([(x + y) % p for x, y in zip(vec(a), vec(b))]) for b in range(q))
                for a in range(q))
    mul = tuple(tuple(polymul(a, b) for b in range(q)) for a in range(q))
    return Field(q, p, e, add, mul)


def _mobius(F: Field, a, b, c, d):
    """x -> (a x + b) / (c x + d) on the projective line, infinity = q."""
    q = F.q
    images = []
    for x in range(q + 1):
        if x == q:
            num, den = a, c
        else:
            num = F.add[F.mul[a][x]][b]
            den = F.add[F.mul[c][x]][d]
        images.append(q if den == 0 else F.mul[num][F.inv(den)])
    return Permutation(images)


def _frobenius_map(F: Field, points):
    return Permutation([x if x == F.q else F.power(x, F.p) for x in range(points)])


def projective_group(q: int, kind: str = "PGL") -> PermGroup:
    """PSL(2,q), PGL(2,q) or PGammaL(2,q) on the q+1 points of the projective line."""
    if q not in PROJECTIVE_Q:
        raise ValueError(f"unsupported q={q}; expected one of {PROJECTIVE_Q}")
    kind = _normalize_kind(kind)
    F = finite_field(q)
    w = F.primitive_element()
    one, zero = 1, 0
    minus_one = F.neg(one)
    gens = [_mobius(F, one, one, zero, one)]
    if kind == "PSL":
        gens += [_mobius(F, F.mul[w][w], zero, zero, one), _mobius(F, zero, minus_one, one, zero)]
    else:
        gens += [_mobius(F, w, zero, zero, one), _mobius(F, zero, one, one, zero)]
    if kind == "PGammaL" and F.e > 1:
        gens.append(_frobenius_map(F, q + 1))
    return PermGroup(q + 1, gens)


def _normalize_kind(kind):
    key = kind.upper().replace("Γ", "GAMMA")
    try:
        return {"PSL": "PSL", "PGL": "PGL", "PGAMMAL": "PGammaL"}[key]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected PSL, PGL or PGammaL") from None


def projective_order(q: int, kind: str) -> int:
    pgl = q * (q * q - 1)
    p, e = _factor_prime_power(q)
    return {"PSL": pgl // math.gcd(2, q - 1), "PGL": pgl, "PGammaL": pgl * e}[_normalize_kind(kind)]


def _primitive_root(p):
    for g in range(1, p):
        if len({pow(g, i, p) for i in range(1, p)}) == p - 1:
            return g
    raise ValueError(f"{p} is not prime")


def frobenius_group(p: int, d: int) -> PermGroup:
    """The affine maps x -> a x + b on Z_p with a in the subgroup of order d."""
    if p < 2 or any(p % r == 0 for r in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    if d < 1 or (p - 1) % d:
        raise ValueError(f"d={d} does not divide p-1={p - 1}")
    a = pow(_primitive_root(p), (p - 1) // d, p)
    gens = [Permutation([(x + 1) % p for x in range(p)])]
    if d > 1:
        gens.append(Permutation([(a * x) % p for x in range(p)]))
    return PermGroup(p, gens)


def affine_group(q: int, semilinear: bool = False) -> PermGroup:
    """AGL(1,q), or AGammaL(1,q) when ``semilinear``, on the field GF(q)."""
    F = finite_field(q)
    w = F.primitive_element()
    gens = [Permutation([F.add[x][b] for x in range(q)]) for b in _additive_basis(F)]
    gens.append(Permutation([F.mul[w][x] for x in range(q)]))
    if semilinear and F.e > 1:
        gens.append(_frobenius_map(F, q))
    return PermGroup(q, gens)


def _additive_basis(F):
    return [F.p**i for i in range(F.e)]


def affine_space_group(p: int, d: int) -> PermGroup:
    """AGL(d,p) on the p**d vectors of GF(p)^d (vector v is point sum v_i p^i)."""
    vectors = list(itertools.product(range(p), repeat=d))
    index = {v: sum(c * p**i for i, c in enumerate(v)) for v in vectors}
    n = p**d

    def perm(fn):
        return Permutation([index[fn(v)] for v in sorted(vectors, key=index.get)])

    gens = [perm(lambda v: ((v[0] + 1) % p,) + v[1:])]
    # GL(d,p) is generated by diag(w,1,...,1), a transvection and a coordinate cycle
    w = _primitive_root(p) if p > 2 else 1
    if w != 1:
        gens.append(perm(lambda v: ((w * v[0]) % p,) + v[1:]))
    gens.append(perm(lambda v: ((v[0] + v[1]) % p,) + v[1:]))
    gens.append(perm(lambda v: v[1:] + v[:1]))
    if d > 2:
        gens.append(perm(lambda v: (v[1], v[0]) + v[2:]))
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [Permutation([(i + 1) % n for i in range(n)])])


def dihedral_group(n: int) -> PermGroup:
    return PermGroup(n, [Permutation([(i + 1) % n for i in range(n)]),
                         Permutation([(-i) % n for i in range(n)])])


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(n, [])
    gens = [Permutation([(i + 1) % n for i in range(n)])]
    if n > 2:
        gens.append(Permutation.from_cycles([(0, 1)], n))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(n, [])
    gens = [Permutation.from_cycles([(0, 1, 2)], n)]
    if n > 3:
        # (0 1 ... n-1) is even for odd n; (1 2 ... n-1) is even for even n
        cyc = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens.append(Permutation.from_cycles([cyc], n))
    return PermGroup(n, gens)


def fano_group() -> PermGroup:
    """PGL(3,2) on the seven points of the Fano plane with lines {x, x+1, x+3} mod 7."""
    return PermGroup(7, [Permutation([(x + 1) % 7 for x in range(7)]),
                         Permutation([(2 * x) % 7 for x in range(7)]),
                         Permutation.from_cycles([(1, 3), (2, 6)], 7)])
