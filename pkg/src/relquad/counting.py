"""Counting square roots of a discriminant modulo ideals.

The central object is N(a) = card{ x mod 2a : x^2 = delta mod 4a }.  It is
computed three independent ways: brute-force residue enumeration, the
divisor sum of the extended character over divisors b | a with a/b
squarefree, and a fast multiplicative evaluator assembled from local
casework at each prime power.  All three must agree everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .arith import smallest_prime_factors
from .characters import QuadCharacter
from .discriminants import local_square_solvable, uniformizer_of
from .field import Elem, QuadField
from .ideals import Ideal, PrimeIdeal, ideals_of_norm

__all__ = [
    "count_square_roots",
    "count_square_roots_formula",
    "count_square_roots_local",
    "count_square_roots_local_product",
    "zeta_coefficients",
    "RootPair",
    "square_root_pairs",
    "order_ideal_count",
    "order_ideal_count_sublattice",
    "ideal_count_table",
    "primitive_character_table",
    "dirichlet_convolution",
    "square_stretch",
]


def count_square_roots(delta: Elem, a: Ideal) -> int:
    """Brute force straight from the definition, on integer coordinates."""
    if not a.is_integral():
        raise ValueError("integral ideal required")
    K = delta.field
    two_a = a * 2
    four_a = a * 4
    if K.degree == 1:
        m2, m4 = two_a.norm_int(), four_a.norm_int()
        D = int(delta.x)
        return sum(1 for x in range(m2) if (x * x - D) % m4 == 0)
    t, n = K.omega_trace, K.omega_norm
    A2, B2, C2 = two_a.hnf
    A4, B4, C4 = four_a.hnf
    X, Y = int(delta.x), int(delta.y)
    count = 0
    for j in range(C2):
        jj_x = -n * j * j - X
        jj_y = t * j * j - Y
        for i in range(A2):
            u = i * i + jj_x
            v = 2 * i * j + jj_y
            if v % C4 == 0 and (u - (v // C4) * B4) % A4 == 0:
                count += 1
    return count


def count_square_roots_formula(chi: QuadCharacter, a: Ideal) -> int:
    """Divisor sum of the extended character over b | a with a/b squarefree."""
    if not a.is_integral():
        raise ValueError("integral ideal required")
    total = 0
    fac = a.factor()
    # divisors b of a with squarefree quotient: each prime keeps e or e-1
    choices = [[(P, e), (P, e - 1)] for P, e in fac]
    from itertools import product as iproduct

    from .ideals import unit_ideal

    for combo in iproduct(*choices):
        b = unit_ideal(a.field)
        for P, e in combo:
            b = b * P.ideal**e
        total += chi.extended(b)
    return total


def _dyadic_ramification(P: PrimeIdeal) -> int:
    if P.p != 2:
        return 0
    return 2 if P.ramified else 1


def count_square_roots_local(chi: QuadCharacter, P: PrimeIdeal, k: int) -> int:
    """N(P^k) from the local casework at one prime power."""
    if k == 0:
        return 1
    delta = chi.delta
    l = chi.modulus.valuation(P)
    if l == 0:
        return 1 + chi.at_prime(P)
    e2 = _dyadic_ramification(P)
    Np = P.norm()
    if 2 * e2 + k <= l:
        return Np ** (k // 2)
    if l % 2:
        return 0
    pi = uniformizer_of(P)
    delta1 = delta / pi**l  # unit at P; other primes are irrelevant here
    if local_square_solvable(delta1, P, 2 * e2):
        # delta1 is a square mod 4 locally
        if k <= l:
            return Np ** (k // 2)
        leg_local = 1 if local_square_solvable(delta1, P, 2 * e2 + 1) else -1
        return Np ** (l // 2) * (1 + leg_local)
    # dyadic, delta1 not a square mod 4: the odd threshold
    assert e2 >= 1
    level = 0
    for m in range(2 * e2 - 1, 0, -1):
        if local_square_solvable(delta1, P, m):
            level = m
            break
    assert level >= 1 and level % 2 == 1, "threshold must exist and be odd"
    if k >= l:
        return 0
    if 2 * e2 + k - l <= level:
        return Np ** (k // 2)
    return 0


def count_square_roots_local_product(chi: QuadCharacter, a: Ideal) -> int:
    total = 1
    for P, e in a.factor():
        total *= count_square_roots_local(chi, P, e)
        if total == 0:
            return 0
    return total


def zeta_coefficients(delta: Elem, norm_bound: int, method: str = "brute") -> list[int]:
    """[0, N(delta, a) summed over norm 1, ..., norm bound]."""
    K = delta.field
    chi = QuadCharacter(delta) if method != "brute" else None
    out = [0] * (norm_bound + 1)
    for n in range(1, norm_bound + 1):
        for a in ideals_of_norm(K, n):
            if method == "brute":
                out[n] += count_square_roots(delta, a)
            elif method == "local":
                out[n] += count_square_roots_local_product(chi, a)
            elif method == "formula":
                out[n] += count_square_roots_formula(chi, a)
            else:
                raise ValueError(f"unknown method {method!r}")
    return out


@dataclass(frozen=True)
class RootPair:
    """(a, b mod 2a) with b^2 = delta mod 4a; b is the canonical HNF-box
    representative, the lexicographically least one."""

    a_ideal: Ideal
    b: Elem


def square_root_pairs(delta: Elem, norm_bound: int) -> list[RootPair]:
    K = delta.field
    out = []
    for n in range(1, norm_bound + 1):
        for a in ideals_of_norm(K, n):
            two_a = a * 2
            four_a = a * 4
            for b in two_a.residues():
                if (b * b - delta) in four_a:
                    out.append(RootPair(a_ideal=a, b=two_a.reduce(b)))
    return out


def order_ideal_count(delta: Elem, n: int) -> int:
    """Number of pairs (b ideal, root pair class (a, x)) with
    N(b)^2 N(a) = n; counts the ideals of the order O + O(b+sqrt delta)/2
    of index n through the pair parametrization."""
    K = delta.field
    total = 0
    for m in range(1, isqrt(n) + 1):
        if n % (m * m):
            continue
        r = n // (m * m)
        scale = len(ideals_of_norm(K, m))
        if scale == 0:
            continue
        pairs = sum(count_square_roots(delta, a) for a in ideals_of_norm(K, r))
        total += scale * pairs
    return total


def order_ideal_count_sublattice(delta: int, n: int) -> int:
    """Independent oracle over Q: ideals of index n in Z + Z(delta+sqrt delta)/2,
    counted as HNF sublattices stable under multiplication by the generator."""
    if delta % 4 not in (0, 1):
        raise ValueError("delta must be 0 or 1 mod 4")
    from .arith import divisors

    tr = delta
    nm = (delta * delta - delta) // 4
    count = 0
    for C in divisors(n):
        A = n // C
        for B in range(A):
            # w*(A, 0) = (0, A); w*(B, C) = (-nm*C, B + tr*C)
            if A % C:
                continue
            if ((A // C) * B) % A:
                continue
            y = B + tr * C
            if y % C:
                continue
            x = -nm * C
            if (x - (y // C) * B) % A:
                continue
            count += 1
    return count


# -- Dirichlet series tables ---------------------------------------------------


def ideal_count_table(K: QuadField, norm_bound: int) -> list[int]:
    """[0, #ideals of norm 1, 2, ..., norm_bound], sieved."""
    from .arith import kronecker

    spf = smallest_prime_factors(norm_bound)
    sym: dict[int, int] = {}
    out = [0] * (norm_bound + 1)
    for n in range(1, norm_bound + 1):
        total = 1
        m = n
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if K.degree == 1:
                continue
            s = sym.get(p)
            if s is None:
                s = sym[p] = kronecker(K.disc, p)
            if s == 1:
                total *= e + 1
            elif s == -1 and e % 2:
                total = 0
                break
        out[n] = total
    return out


def primitive_character_table(chi: QuadCharacter, norm_bound: int) -> list[int]:
    """chi'(n) for n <= bound over Q: completely multiplicative from the
    prime values, zero at primes dividing the conductor."""
    from .ideals import primes_above

    K = chi.field
    if K.degree != 1:
        raise ValueError("rational base field required")
    spf = smallest_prime_factors(norm_bound)
    pv: dict[int, int] = {}
    out = [0] * (norm_bound + 1)
    out[1] = 1 if norm_bound >= 1 else 0
    for n in range(2, norm_bound + 1):
        total = 1
        m = n
        while m > 1 and total:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            v = pv.get(p)
            if v is None:
                P = primes_above(K, p)[0]
                if chi.modulus.valuation(P) != 0:
                    v = chi.primitive(P.ideal)  # 0 unless prime to conductor
                else:
                    v = chi.at_prime(P)
                pv[p] = v
            total *= v**e
        out[n] = total
    return out


def dirichlet_convolution(A: list[int], B: list[int]) -> list[int]:
    n = min(len(A), len(B)) - 1
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        if not A[d]:
            continue
        for m in range(d, n + 1, d):
            out[m] += A[d] * B[m // d]
    return out


def square_stretch(A: list[int], norm_bound: int) -> list[int]:
    """Coefficients of the series with A at square indices: n = m^2 -> A[m]."""
    out = [0] * (norm_bound + 1)
    m = 1
    while m * m <= norm_bound:
        if m < len(A):
            out[m * m] = A[m]
        m += 1
    return out
