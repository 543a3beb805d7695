"""Discriminants of K, conductor ideals, relative discriminants, and
discriminant-class enumeration.

A discriminant is a nonzero algebraic integer that is a square modulo 4.
Its conductor ideal f is the largest integral ideal with f^2 | (delta) and
delta = x^2 mod 4f^2 solvable; the relative discriminant of K(sqrt delta)/K
is (delta)/f^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .field import Elem, QuadField, fundamental_unit, is_unit_square
from .ideals import Ideal, PrimeIdeal, principal_ideal, unit_ideal

__all__ = [
    "DiscriminantInfo",
    "GeneralDiscFactorization",
    "FundDiscData",
    "LocalComponent",
    "discriminant_witness",
    "is_discriminant",
    "conductor_ideal",
    "relative_discriminant_general",
    "is_unit_discriminant",
    "fundamental_discriminant_data",
    "discriminant_classes",
    "same_class_mod_unit_squares",
    "same_class_mod_squares",
    "element_valuation",
    "uniformizer_of",
    "local_square_solvable",
]


@dataclass(frozen=True)
class DiscriminantInfo:
    delta: Elem
    f_delta: Ideal
    rel_disc: Ideal
    is_square_in_K: bool
    witness_x: Elem  # x with x^2 = delta mod 4 f^2


@dataclass(frozen=True)
class GeneralDiscFactorization:
    s: Ideal  # largest integral ideal with s^2 | (delta)
    t: Ideal  # largest divisor of (2) with delta a square mod (s t)^2
    rel_disc_general: Ideal  # 4 delta / (s t)^2


@dataclass(frozen=True)
class LocalComponent:
    prime: PrimeIdeal
    residual_exponent: int  # v_P(delta) - 2 v_P(f), equals v_P(rel_disc)
    component: Elem  # delta / pi^(2 v_P(f)); well defined modulo local squares


@dataclass(frozen=True)
class FundDiscData:
    local_components: tuple[LocalComponent, ...]
    real_signs: tuple[int, ...]
    principal_rep: Elem | None  # delta0 with f_{delta0} = (1), if f is principal


def element_valuation(e: Elem, P: PrimeIdeal) -> int | None:
    """v_P(e) for nonzero e (fractional allowed); None means e = 0."""
    if not e:
        return None
    return principal_ideal(e).valuation(P)


def uniformizer_of(P: PrimeIdeal) -> Elem:
    """An element of P of valuation exactly 1."""
    cands = P.ideal.basis_elems()
    cands.append(cands[0] + cands[-1])
    for c in cands:
        if element_valuation(c, P) == 1:
            return c
    raise AssertionError(f"no uniformizer among basis combinations of {P}")


def discriminant_witness(delta: Elem) -> Elem | None:
    """x mod 2 with x^2 = delta mod 4, or None if delta is not a discriminant."""
    if not delta or not delta.is_integral():
        raise ValueError("nonzero integral element required")
    K = delta.field
    if K.degree == 1:
        X = int(delta.x)
        for i in (0, 1):
            if (i * i - X) % 4 == 0:
                return K.elem(i)
        return None
    t, n = K.omega_trace, K.omega_norm
    X, Y = int(delta.x), int(delta.y)
    for i in (0, 1):
        for j in (0, 1):
            # (i + j w)^2 = (i^2 - n j^2) + (2 i j + t j^2) w
            if (i * i - n * j * j - X) % 4 == 0 and (2 * i * j + t * j * j - Y) % 4 == 0:
                return K.elem(i, j)
    return None


def is_discriminant(delta: Elem) -> bool:
    return discriminant_witness(delta) is not None


def local_square_solvable(delta: Elem, P: PrimeIdeal, target: int) -> bool:
    """Whether x^2 = delta mod P^target is solvable, by exhaustive search
    over residues modulo P^ceil(target/2).

    That search modulus is sufficient at every call site in this package:
    if x0 is a solution and x = x0 mod P^ceil(target/2), then
    (x-x0)(x+x0) keeps valuation >= target because v(x0) is forced up to
    at least v(delta)/2 capped suitably; the brute-force residue tests in
    the test suite re-check this at full modulus.
    """
    if target <= 0:
        return True
    search = P.ideal ** ((target + 1) // 2)
    for x in search.residues():
        diff = x * x - delta
        v = element_valuation(diff, P)
        if v is None or v >= target:
            return True
    return False


def _dyadic_ramification(P: PrimeIdeal) -> int:
    # v_P(2)
    if P.p != 2:
        return 0
    return 2 if P.ramified else 1


def conductor_ideal(delta: Elem, enumeration_bound: int = 1 << 20) -> DiscriminantInfo:
    """Conductor ideal, relative discriminant, and witness for a discriminant.

    Odd primes P^l || (delta) contribute floor(l/2); a dyadic prime
    contributes the largest k <= floor(l/2) such that x^2 = delta is
    solvable modulo P^(2k + 2 v_P(2)), decided by finite residue search.
    """
    w = discriminant_witness(delta)
    if w is None:
        raise ValueError(f"{delta} is not a discriminant (not a square mod 4)")
    K = delta.field
    f = unit_ideal(K)
    for P, l in principal_ideal(delta).factor():
        e2 = _dyadic_ramification(P)
        if e2 == 0:
            k = l // 2
        else:
            k = l // 2
            while k > 0 and not local_square_solvable(delta, P, 2 * k + 2 * e2):
                k -= 1
        f = f * P.ideal**k
    rel = principal_ideal(delta).divide_exact(f * f)
    witness = _global_witness(delta, f, enumeration_bound)
    return DiscriminantInfo(
        delta=delta,
        f_delta=f,
        rel_disc=rel,
        is_square_in_K=delta.is_square(),
        witness_x=witness,
    )


def _global_witness(delta: Elem, f: Ideal, enumeration_bound: int) -> Elem:
    four_f2 = f * f * 4
    for x in (f * 2).residues(enumeration_bound):
        if (x * x - delta) in four_f2:
            return x
    raise AssertionError("per-prime solvability holds but no global witness found")


def relative_discriminant_general(delta: Elem) -> GeneralDiscFactorization:
    """4*delta/(s t)^2 for arbitrary nonzero integral delta: s is the largest
    ideal whose square divides delta, t the largest divisor of (2) keeping
    delta a square mod (s t)^2."""
    if not delta or not delta.is_integral():
        raise ValueError("nonzero integral element required")
    K = delta.field
    dl = principal_ideal(delta)
    s = unit_ideal(K)
    for P, l in dl.factor():
        s = s * P.ideal ** (l // 2)
    two = principal_ideal(K.elem(2))
    best = None
    for t in sorted(two.divisors(), key=lambda d: -d.norm_int()):
        st = s * t
        st2 = st * st
        if any((x * x - delta) in st2 for x in st.residues()):
            best = t
            break
    assert best is not None  # t = (1) always works: delta is a square mod s^2
    st = s * best
    rel = (dl * 4).divide_exact(st * st)
    return GeneralDiscFactorization(s=s, t=best, rel_disc_general=rel)


def is_unit_discriminant(delta: Elem) -> bool:
    """True iff (delta) = f^2, i.e. K(sqrt delta)/K is unramified at all
    finite places."""
    info = delta if isinstance(delta, DiscriminantInfo) else conductor_ideal(delta)
    return info.rel_disc.is_unit_ideal()


def fundamental_discriminant_data(delta: Elem) -> FundDiscData:
    info = conductor_ideal(delta)
    K = delta.field
    comps = []
    for P, l in principal_ideal(delta).factor():
        k = info.f_delta.valuation(P)
        pi = uniformizer_of(P)
        comp = delta / pi ** (2 * k)
        residual = l - 2 * k
        assert residual == info.rel_disc.valuation(P) >= 0
        comps.append(LocalComponent(prime=P, residual_exponent=residual, component=comp))
    signs = tuple(delta.sign_at(i) for i in K.real_embeddings)
    rep = None
    g = info.f_delta.principal_generator()
    if g is not None:
        rep = delta / (g * g)
        assert rep.is_integral()
        assert conductor_ideal(rep).f_delta.is_unit_ideal()
    return FundDiscData(local_components=tuple(comps), real_signs=signs, principal_rep=rep)


# ---------------------------------------------------------------------------
# class enumeration


def same_class_mod_squares(d1: Elem, d2: Elem) -> bool:
    """Whether d1/d2 is a square in K^x."""
    return (d1 * d2).is_square()


def same_class_mod_unit_squares(d1: Elem, d2: Elem) -> bool:
    """Whether d1/d2 is the square of a unit of O."""
    if d1.field.degree == 1:
        return d1 == d2
    if principal_ideal(d1) != principal_ideal(d2):
        return False
    u = d1 / d2
    return is_unit_square(u)


def _window_member(delta: Elem, eps4: Elem) -> bool:
    # |log|s1(delta)/s2(delta)|| <= 2 log eps, as two exact sign tests:
    # s1(delta^2) <= s1(eps^4) s2(delta^2) and symmetrically.
    d2 = delta * delta
    c2 = d2.conj()
    return (eps4 * c2 - d2).sign_at(0) >= 0 and (eps4 * d2 - c2).sign_at(0) >= 0


def discriminant_candidates(K: QuadField, norm_bound: int):
    """All integral delta with |N(delta)| <= norm_bound, restricted (real
    case) to the fundamental-unit window; yields every class member seen."""
    if K.degree == 1:
        for a in range(1, norm_bound + 1):
            yield K.elem(a)
            yield K.elem(-a)
        return
    t, n = K.omega_trace, K.omega_norm
    if K.is_imaginary_quadratic:
        # positive definite: |disc| y^2 <= 4N
        ymax = isqrt(4 * norm_bound // abs(K.disc)) + 1
        xc = isqrt(norm_bound) + 1
        for y in range(-ymax, ymax + 1):
            lo = (-t * y) // 2 - xc - 1
            hi = (-t * y) // 2 + xc + 1
            for x in range(lo, hi + 1):
                if x == 0 and y == 0:
                    continue
                if abs(x * x + t * x * y + n * y * y) <= norm_bound:
                    yield K.elem(x, y)
        return
    eps = fundamental_unit(K)
    eps4 = eps**4
    A, B = eps.as_sqrt_coords()
    d = K.d
    E = A + B * (isqrt(d) + 1)  # rational upper bound for sigma1(eps)
    mult = 2 if t == 1 else 1
    ymax = isqrt(int(norm_bound * E * E * mult * mult / d)) + 1
    xc = isqrt(int(norm_bound * E * E)) + 1
    for y in range(-ymax, ymax + 1):
        lo = (-t * y) // 2 - xc - 1
        hi = (-t * y) // 2 + xc + 1
        for x in range(lo, hi + 1):
            if x == 0 and y == 0:
                continue
            if abs(x * x + t * x * y + n * y * y) > norm_bound:
                continue
            delta = K.elem(x, y)
            if _window_member(delta, eps4):
                yield delta


def discriminant_classes(
    K: QuadField, norm_bound: int, sign: str = "any"
) -> list[DiscriminantInfo]:
    """Representatives of all discriminant classes modulo squares of units
    with |N(delta)| <= norm_bound, optionally restricted to totally negative
    discriminants.  The representative is the lexicographically least
    coordinate pair among class members inside the enumeration window."""
    if sign not in ("any", "totally_negative"):
        raise ValueError("sign must be 'any' or 'totally_negative'")
    cands = []
    for delta in discriminant_candidates(K, norm_bound):
        if discriminant_witness(delta) is None:
            continue
        if sign == "totally_negative" and not delta.is_totally_negative():
            continue
        cands.append(delta)
    cands.sort(key=lambda e: e.key())
    reps: list[Elem] = []
    if K.degree == 1:
        reps = cands
    else:
        groups: dict[tuple, list[Elem]] = {}
        for delta in cands:
            gkey = principal_ideal(delta).hnf
            bucket = groups.setdefault(gkey, [])
            if not any(is_unit_square(delta / r) for r in bucket):
                bucket.append(delta)
                reps.append(delta)
    return [conductor_ideal(r) for r in reps]
