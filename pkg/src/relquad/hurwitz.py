"""Hurwitz class numbers over Q: closed formula against a form-counting
oracle.

H(delta) counts SL2(Z)-classes of positive definite integral binary forms
of discriminant delta, weighting multiples of x^2+y^2 by 1/2 and of
x^2+xy+y^2 by 1/3.  The closed formula runs over divisors of the conductor
of delta; the oracle enumerates reduced forms directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import divisors, factorint, kronecker
from .discriminants import conductor_ideal
from .field import make_field

__all__ = [
    "reduced_forms",
    "form_class_number",
    "hurwitz_class_number",
    "hurwitz_class_number_forms",
    "HurwitzResult",
    "hurwitz_row",
]


def _check_disc(delta: int):
    if delta >= 0 or delta % 4 not in (0, 1):
        raise ValueError(f"need a negative discriminant (0 or 1 mod 4), got {delta}")


def reduced_forms(delta: int) -> list[tuple[int, int, int]]:
    """All reduced positive definite forms (a, b, c) of discriminant delta,
    imprimitive ones included: |b| <= a <= c with b >= 0 if |b| = a or a = c."""
    _check_disc(delta)
    out = []
    a = 1
    while 3 * a * a <= -delta:
        for b in range(-a, a + 1):
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (-b == a or a == c):
                continue
            out.append((a, b, c))
        a += 1
    return out


def form_class_number(delta: int) -> int:
    """h(delta): number of primitive reduced forms."""
    return sum(1 for a, b, c in reduced_forms(delta) if gcd(gcd(a, b), c) == 1)


def _weight_of(form: tuple[int, int, int], delta: int) -> Fraction:
    a, b, c = form
    g = gcd(gcd(a, b), c)
    core = delta // (g * g)
    if core == -3:
        return Fraction(1, 3)
    if core == -4:
        return Fraction(1, 2)
    return Fraction(1)


def hurwitz_class_number_forms(delta: int) -> Fraction:
    """Oracle: weighted count of all reduced forms of discriminant delta."""
    _check_disc(delta)
    return sum((_weight_of(f, delta) for f in reduced_forms(delta)), Fraction(0))


def _fundamental_split(delta: int) -> tuple[int, int]:
    """delta = delta0 * f^2 with delta0 the fundamental part; f computed as
    the generator of the conductor ideal over Q."""
    Q = make_field()
    info = conductor_ideal(Q.elem(delta))
    f = info.f_delta.norm_int()
    return delta // (f * f), f


def _w_of(delta0: int) -> int:
    return 6 if delta0 == -3 else 4 if delta0 == -4 else 2


def hurwitz_class_number(delta: int) -> Fraction:
    """Closed formula: h(delta0)/(w/2) * sum over d | f of
    d * prod_{p | d} (1 - chi(p)/p), where delta = delta0 f^2."""
    _check_disc(delta)
    delta0, f = _fundamental_split(delta)
    h = form_class_number(delta0)
    w = _w_of(delta0)
    total = Fraction(0)
    for d in divisors(f):
        term = Fraction(d)
        for p in factorint(d):
            term *= 1 - Fraction(kronecker(delta0, p), p)
        total += term
    return Fraction(h, w // 2) * total


@dataclass(frozen=True)
class HurwitzResult:
    delta: int
    H_formula: Fraction
    H_oracle: Fraction
    h_L: int
    w_L: int
    f_delta: int
    gamma_L: int = 1
    n: int = 1


def hurwitz_row(delta: int) -> HurwitzResult:
    delta0, f = _fundamental_split(delta)
    res = HurwitzResult(
        delta=delta,
        H_formula=hurwitz_class_number(delta),
        H_oracle=hurwitz_class_number_forms(delta),
        h_L=form_class_number(delta0),
        w_L=_w_of(delta0),
        f_delta=f,
    )
    assert res.H_formula == res.H_oracle, f"class number mismatch at {delta}"
    assert res.H_formula.denominator in (1, 2, 3, 6)
    return res
