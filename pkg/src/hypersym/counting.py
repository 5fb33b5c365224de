"""Exact counts of moved t-sets and the closed-form probability bounds.

Integer quantities are exact Python ints.  Real-valued bounds are evaluated
with mpmath at ``PRECISION_BITS`` bits of mantissa (round-to-nearest), so
terms such as ``2**(-N/2)`` with N in the thousands stay representable.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .errors import CapExceeded
from .groups import PermGroup, minimal_degree
from .perm import Permutation

PRECISION_BITS = 128
ROUNDING = f"mpmath binary, {PRECISION_BITS}-bit mantissa, round-to-nearest"
UNION_BOUND_MAX_N = 64


def _mp():
    ctx = mpmath.mp.clone()
    ctx.prec = PRECISION_BITS
    return ctx


def is_mpf(v) -> bool:
    # values from a cloned context are not instances of mpmath.mpf
    return hasattr(v, "_mpf_")


def primes_upto(n: int) -> list:
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


@dataclass(frozen=True)
class MovedCountResult:
    n: int
    t: int
    fixed: int
    moved: int


@dataclass
class BoundReport:
    name: str
    inputs: dict
    value: object  # mpmath mpf or Fraction
    vacuous: bool = False
    extra: dict = field(default_factory=dict)
    rounding: str = ROUNDING

    def as_float(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return {"exact": f"{v.numerator}/{v.denominator}", "float": float(v)}
            if is_mpf(v):
                return {"decimal": mpmath.nstr(v, 30), "float": float(v)}
            return v

        return {
            "bound": self.name,
            "inputs": dict(self.inputs),
            "value": enc(self.value),
            "vacuous": self.vacuous,
            "extra": {k: enc(v) for k, v in self.extra.items()},
            "rounding": self.rounding,
        }


def fixed_tsets(sigma: Permutation, t: int) -> MovedCountResult:
    """Count the t-sets fixed setwise by sigma.

    A t-set is fixed iff it is a union of cycles, so the count is the
    coefficient of x^t in the product over cycles of (1 + x^length).
    """
    n = sigma.degree
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}")
    coeffs = [1] + [0] * t
    for length in sigma.cycle_structure().cycle_lengths:
        for j in range(t, length - 1, -1):
            coeffs[j] += coeffs[j - length]
    fixed = coeffs[t]
    return MovedCountResult(n, t, fixed, math.comb(n, t) - fixed)


def rho(s: int, l: int, p: int) -> int:
    """C(s/p, l/p) when p divides l, else 0."""
    return math.comb(s // p, l // p) if l % p == 0 else 0


def prime_moved_formula(n: int, s: int, p: int, t: int) -> int:
    """t-sets moved by a permutation of prime order p with support s."""
    if p not in primes_upto(p):
        raise ValueError(f"{p} is not prime")
    if s % p:
        raise ValueError(f"p={p} does not divide s={s}")
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    return sum((math.comb(s, l) - rho(s, l, p)) * math.comb(n - s, t - l)
               for l in range(1, t + 1))


def prime_class_size(n: int, s: int, p: int) -> int:
    """Number of permutations of range(n) that are products of s/p disjoint p-cycles."""
    if s % p:
        return 0
    j = s // p
    return math.comb(n, s) * math.factorial(s) // (p**j * math.factorial(j))


def _layer_cycles(sigma: Permutation, layers):
    layer_of = {}
    for i, L in enumerate(layers):
        for v in L:
            layer_of[v] = i
    pi = []
    for L in layers:
        targets = {layer_of[sigma.images[v]] for v in L}
        if len(targets) != 1:
            raise ValueError("permutation does not respect the layer partition")
        pi.append(targets.pop())
    return pi


def transversal_moved(sigma: Permutation, layers: Sequence[Sequence[int]]) -> int:
    """Transversal t-sets moved by sigma, for sigma respecting the layers.

    A fixed transversal is determined by a point x of one layer in each
    cycle of the induced layer permutation with x returned to itself after
    going once around that cycle.
    """
    layers = [tuple(L) for L in layers]
    sizes = {len(L) for L in layers}
    if len(sizes) != 1:
        raise ValueError("layers must have equal size")
    r = sizes.pop()
    t = len(layers)
    pi = _layer_cycles(sigma, layers)
    im = sigma.images
    fixed = 1
    seen = [False] * t
    for i in range(t):
        if seen[i]:
            continue
        c = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = pi[j]
            c += 1
        count = 0
        for x in layers[i]:
            y = x
            for _ in range(c):
                y = im[y]
            count += y == x
        fixed *= count
    return r**t - fixed


def union_bound_asymmetry(n: int, t: int) -> BoundReport:
    """Sum of 2^(-N(sigma)/2) over all permutations of prime order.

    Permutations are grouped by (prime p, support s); the class size is
    C(n,s) s! / (p^(s/p) (s/p)!).  ``extra["relaxed"]`` holds the weaker sum
    obtained from N >= (C(n,t) - C(n-s,t))/2 over all s and all s! - 1
    non-identity permutations of the support.
    """
    if n > UNION_BOUND_MAX_N:
        raise ValueError(f"n={n} exceeds union-bound cap {UNION_BOUND_MAX_N}")
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= n, got t={t}")
    mp = _mp()
    total = mp.mpf(0)
    terms = {}
    for p in primes_upto(n):
        for s in range(p, n + 1, p):
            count = prime_class_size(n, s, p)
            N = prime_moved_formula(n, s, p, t)
            term = count * mp.power(2, mp.mpf(-N) / 2)
            terms[f"p={p},s={s}"] = term
            total += term
    relaxed_terms = []
    for s in range(2, n + 1):
        half_moved = mp.mpf(math.comb(n, t) - math.comb(n - s, t)) / 2
        relaxed_terms.append(math.comb(n, s) * (math.factorial(s) - 1)
                             * mp.power(2, -half_moved / 2))
    dominant = max(terms, key=terms.get)
    return BoundReport("union_bound_asymmetry", {"n": n, "t": t}, total,
                       vacuous=total > 1,
                       extra={"relaxed": mp.fsum(relaxed_terms),
                              "relaxed_transposition_term": relaxed_terms[0],
                              "dominant_class": dominant,
                              "dominant_term": terms[dominant]})


def _involution_like_classes(r, p):
    """(support, count) of elements of S_r whose cycles all have length 1 or p."""
    return [(s, prime_class_size(r, s, p)) for s in range(0, r + 1, p)]


def union_bound_transversal(t: int, r: int) -> BoundReport:
    """Sum of 2^(-N(sigma)/2) over prime-order layer-respecting permutations.

    Such sigma induce a layer permutation pi with pi^p = 1.  On each p-cycle
    of pi there are (r!)^(p-1) choices with sigma^p = 1 there, and every
    transversal point of that cycle returns to itself; on each fixed layer
    sigma restricts to an element with cycles of length 1 or p.
    """
    mp = _mp()
    total = mp.mpf(0)
    rt = r**t
    for p in primes_upto(max(t, r)):
        classes = _involution_like_classes(r, p)
        for j in range(0, t // p + 1):
            fixed_layers = t - p * j
            layer_perms = (math.comb(t, p * j) * math.factorial(p * j)
                           // (p**j * math.factorial(j)))
            moving = math.factorial(r) ** ((p - 1) * j)
            # multisets of supports on the fixed layers
            for combo in itertools.combinations_with_replacement(range(len(classes)),
                                                                 fixed_layers):
                if j == 0 and all(classes[c][0] == 0 for c in combo):
                    continue
                arrangements = math.factorial(fixed_layers)
                for _, mult in itertools.groupby(combo):
                    arrangements //= math.factorial(len(list(mult)))
                count = layer_perms * moving * arrangements
                fixed = r**j
                for c in combo:
                    s, size = classes[c]
                    count *= size
                    fixed *= r - s
                N = rt - fixed
                total += count * mp.power(2, mp.mpf(-N) / 2)
    return BoundReport("union_bound_transversal", {"t": t, "r": r, "n": t * r}, total,
                       vacuous=total > 1)


def asymptotic_P2(n: int) -> BoundReport:
    """Leading term sqrt(2) n^2 2^(-n/2) of the non-asymmetry probability for graphs."""
    if n < 4:
        raise ValueError("n must be at least 4")
    mp = _mp()
    value = mp.sqrt(2) * n * n * mp.power(2, mp.mpf(-n) / 2)
    return BoundReport("asymptotic_P2", {"n": n}, value, vacuous=value > 1)


def asymptotic_Q2_rate(n: int) -> BoundReport:
    """n^2 2^(-n/4): the transversal rate with its unknown constant set to 1."""
    mp = _mp()
    value = n * n * mp.power(2, mp.mpf(-n) / 4)
    return BoundReport("asymptotic_Q2_rate", {"n": n, "constant": 1}, value)


def stabilizer_prob_bound(order: int, n: int, m: int, k: int) -> BoundReport:
    """Bounds on Prob(M_Y != 1) for a random k-set Y.

    ``value`` is the binomial form 2|M| C(n - ceil(m/2), k) / C(n, k) as an
    exact fraction; ``extra["exponential"]`` is 2|M| (1 - m/(2n))^k.
    """
    if not 0 <= m <= n or not 0 <= k <= n:
        raise ValueError(f"need 0 <= m, k <= n, got m={m}, k={k}, n={n}")
    half = -(-m // 2)
    binomial = Fraction(2 * order * math.comb(n - half, k), math.comb(n, k))
    mp = _mp()
    exponential = 2 * order * mp.power(1 - mp.mpf(m) / (2 * n), k)
    return BoundReport("stabilizer_prob_bound", {"order": order, "n": n, "m": m, "k": k},
                       binomial, vacuous=binomial > 1 or m == 0,
                       extra={"exponential": exponential,
                              "exp_tail": 2 * order * mp.exp(-mp.mpf(k * m) / (2 * n))})


def fixed_kset_bound(n: int, m: int, k: int) -> int:
    """2 C(n - ceil(m/2), k): cap on k-sets fixed by a non-identity element."""
    return 2 * math.comb(n - -(-m // 2), k)


def order_vs_mindeg_check(G: PermGroup, cap: Optional[int] = None) -> bool:
    """True iff |G| >= 2^(n/m) for transitive G of minimal degree m."""
    if not G.is_transitive():
        raise ValueError("group is not transitive")
    md = minimal_degree(G) if cap is None else minimal_degree(G, cap)
    if md is None:
        raise CapExceeded("minimal degree not computable under the order cap")
    m, _ = md
    if m is None:
        return True
    # |G|^m >= 2^n avoids fractional powers
    return G.order**m >= 2**G.degree
