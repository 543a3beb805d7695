"""Base field K: the rationals or a quadratic field Q(sqrt(d)).

Elements are stored as exact coordinates x + y*w over the integral basis
{1, w}, where w = (1+sqrt(d))/2 for d = 1 mod 4 and w = sqrt(d) otherwise.
All arithmetic is over fractions.Fraction; sign queries at the real
embeddings are decided by pure rational comparisons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .arith import frac_sqrt, is_squarefree

__all__ = [
    "QuadField",
    "Elem",
    "make_field",
    "fundamental_unit",
    "unit_power_decomposition",
    "is_unit_square",
    "unit_square_class_reps",
    "roots_of_unity",
    "parse_elem",
]


class QuadField:
    """Q (d is None) or Q(sqrt(d)) for squarefree d not in {0, 1}.

    Immutable; instances are interned by make_field, so identity comparison
    is safe and instances may be shared freely between threads.
    """

    def __init__(self, d: int | None):
        if d is None:
            self.d = None
            self.degree = 1
            self.disc = 1
            self.omega_trace = 0  # unused for Q
            self.omega_norm = 0
            self.signature = (1, 0)
        else:
            if d in (0, 1) or not is_squarefree(d):
                raise ValueError(f"d must be squarefree and not 0 or 1, got {d}")
            self.d = d
            self.degree = 2
            if d % 4 == 1:
                self.disc = d
                # w = (1+sqrt d)/2, w^2 - w + (1-d)/4 = 0
                self.omega_trace = 1
                self.omega_norm = (1 - d) // 4
            else:
                self.disc = 4 * d
                self.omega_trace = 0
                self.omega_norm = -d
            self.signature = (2, 0) if d > 0 else (0, 1)

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @property
    def is_real_quadratic(self) -> bool:
        return self.d is not None and self.d > 0

    @property
    def is_imaginary_quadratic(self) -> bool:
        return self.d is not None and self.d < 0

    @property
    def real_embeddings(self) -> tuple[int, ...]:
        if self.is_rational:
            return (0,)
        return (0, 1) if self.d > 0 else ()

    def elem(self, x, y=0) -> "Elem":
        x, y = Fraction(x), Fraction(y)
        if self.is_rational and y != 0:
            raise ValueError("rational field elements have no omega part")
        return Elem(self, x, y)

    __call__ = elem

    @property
    def zero(self) -> "Elem":
        return self.elem(0)

    @property
    def one(self) -> "Elem":
        return self.elem(1)

    @property
    def omega(self) -> "Elem":
        if self.is_rational:
            raise ValueError("Q has no omega")
        return self.elem(0, 1)

    @property
    def sqrt_gen(self) -> "Elem":
        """The element sqrt(d): equals 2w-1 when d = 1 mod 4, else w."""
        if self.is_rational:
            raise ValueError("Q has no sqrt generator")
        if self.d % 4 == 1:
            return self.elem(-1, 2)  # sqrt(d) = 2w - 1
        return self.elem(0, 1)

    def __repr__(self):
        return "Q" if self.is_rational else f"Q(sqrt{{{self.d}}})"

    def __eq__(self, other):
        return isinstance(other, QuadField) and self.d == other.d

    def __hash__(self):
        return hash(("QuadField", self.d))


@lru_cache(maxsize=None)
def make_field(d: int | None = None) -> QuadField:
    """Interned field constructor; d=None (or omitted) gives Q."""
    return QuadField(d)


@dataclass(frozen=True)
class Elem:
    """x + y*w with exact rational coordinates."""

    field: QuadField
    x: Fraction
    y: Fraction

    def _chk(self, other: "Elem"):
        if self.field is not other.field and self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        other = self._coerce(other)
        return Elem(self.field, self.x + other.x, self.y + other.y)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce(other)
        return Elem(self.field, self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        return Elem(self.field, -self.x, -self.y)

    def __mul__(self, other):
        other = self._coerce(other)
        # w^2 = t*w - n
        t, n = self.field.omega_trace, self.field.omega_norm
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return Elem(self.field, x1 * x2 - n * y1 * y2, x1 * y2 + y1 * x2 + t * y1 * y2)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero field element")
        if self.field.degree == 1:
            return Elem(self.field, self.x / other.x, Fraction(0))
        nm = other.norm()
        prod = self * other.conj()
        return Elem(self.field, prod.x / nm, prod.y / nm)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __pow__(self, k: int):
        if k < 0:
            return (self.field.one / self) ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _coerce(self, other) -> "Elem":
        if isinstance(other, Elem):
            self._chk(other)
            return other
        return Elem(self.field, Fraction(other), Fraction(0))

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def conj(self) -> "Elem":
        t = self.field.omega_trace
        return Elem(self.field, self.x + t * self.y, -self.y)

    def trace(self) -> Fraction:
        return 2 * self.x + self.field.omega_trace * self.y

    def norm(self) -> Fraction:
        if self.field.is_rational:
            return self.x
        t, n = self.field.omega_trace, self.field.omega_norm
        return self.x * self.x + t * self.x * self.y + n * self.y * self.y

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def as_sqrt_coords(self) -> tuple[Fraction, Fraction]:
        """(A, B) with the element equal to A + B*sqrt(d)."""
        if self.field.is_rational:
            return self.x, Fraction(0)
        if self.field.d % 4 == 1:
            return self.x + self.y / 2, self.y / 2
        return self.x, self.y

    def sign_at(self, embedding: int) -> int:
        """Exact sign (-1, 0, +1) at the given real embedding."""
        if embedding not in self.field.real_embeddings:
            raise ValueError(f"no real embedding {embedding} for {self.field}")
        if self.field.is_rational:
            x = self.x
            return (x > 0) - (x < 0)
        A, B = self.as_sqrt_coords()
        if embedding == 1:
            B = -B
        # sign of A + B*sqrt(d), d > 0
        if B == 0:
            return (A > 0) - (A < 0)
        if A == 0:
            return 1 if B > 0 else -1
        if A > 0 and B > 0:
            return 1
        if A < 0 and B < 0:
            return -1
        # opposite signs: compare A^2 with d*B^2
        if A * A > self.field.d * B * B:
            return 1 if A > 0 else -1
        return 1 if B > 0 else -1

    def is_totally_positive(self) -> bool:
        return all(self.sign_at(i) > 0 for i in self.field.real_embeddings)

    def is_totally_negative(self) -> bool:
        return all(self.sign_at(i) < 0 for i in self.field.real_embeddings)

    def is_square(self) -> bool:
        """Whether the element is a square in K."""
        if not self:
            return True
        if self.field.is_rational:
            return frac_sqrt(self.x) is not None
        # solve (u + v*w)^2 = self exactly over the rationals
        # u^2 + n? -- use sqrt-coordinates: (p + q sqrt d)^2 = p^2+q^2 d + 2pq sqrt d
        A, B = self.as_sqrt_coords()
        d = self.field.d
        if B == 0:
            # either p=0 (A = q^2 d) or q=0 (A = p^2)
            if frac_sqrt(A) is not None:
                return True
            q2 = A / d
            return frac_sqrt(q2) is not None
        # p^2 + d q^2 = A, 2pq = B  =>  p^2 solves z^2 - A z + d B^2/4 = 0
        disc = A * A - d * B * B
        r = frac_sqrt(disc)
        if r is None:
            return False
        for p2 in ((A + r) / 2, (A - r) / 2):
            p = frac_sqrt(p2)
            if p is not None and p != 0:
                q = B / (2 * p)
                if p * p + d * q * q == A:
                    return True
        return False

    def sqrt(self) -> "Elem | None":
        """An exact square root in K, or None."""
        if not self:
            return self
        K = self.field
        if K.is_rational:
            r = frac_sqrt(self.x)
            return None if r is None else K.elem(r)
        A, B = self.as_sqrt_coords()
        d = K.d

        def from_sqrt(p: Fraction, q: Fraction) -> Elem:
            # p + q sqrt(d) back to {1, w} coordinates
            if d % 4 == 1:
                return K.elem(p - q, 2 * q)
            return K.elem(p, q)

        if B == 0:
            r = frac_sqrt(A)
            if r is not None:
                return from_sqrt(r, Fraction(0))
            q = frac_sqrt(A / d)
            if q is not None:
                return from_sqrt(Fraction(0), q)
            return None
        disc = A * A - d * B * B
        r = frac_sqrt(disc)
        if r is None:
            return None
        for p2 in ((A + r) / 2, (A - r) / 2):
            p = frac_sqrt(p2)
            if p is not None and p != 0:
                q = B / (2 * p)
                if p * p + d * q * q == A:
                    return from_sqrt(p, q)
        return None

    def __str__(self):
        if self.field.is_rational:
            return str(self.x)
        if self.y == 0:
            return str(self.x)
        ytxt = f"{self.y}*w" if self.y > 0 else f"-{-self.y}*w"
        if self.x == 0:
            return ytxt
        return f"{self.x}+{ytxt}" if self.y > 0 else f"{self.x}{ytxt}"

    def key(self) -> tuple:
        """Canonical sort/equality key (field-local)."""
        return (self.x, self.y)


_ELEM_RE = re.compile(
    r"^\s*(?P<x>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?P<yterm>(?P<sign>[+-])?\s*(?:(?P<y>\d+(?:/\d+)?)\s*\*\s*)?w)?\s*$"
)


def parse_elem(K: QuadField, text: str) -> Elem:
    """Parse "x+y*w" (rationals as p/q), also plain "x", "y*w", "w", "-w"."""
    m = _ELEM_RE.match(text)
    if not m or (m.group("x") is None and m.group("yterm") is None):
        raise ValueError(f"cannot parse element {text!r}")
    x = Fraction(m.group("x")) if m.group("x") else Fraction(0)
    y = Fraction(0)
    if m.group("yterm"):
        y = Fraction(m.group("y")) if m.group("y") else Fraction(1)
        if m.group("sign") == "-":
            y = -y
        elif m.group("sign") is None and m.group("x") is not None:
            raise ValueError(f"missing sign before omega part in {text!r}")
    return K.elem(x, y)


# ---------------------------------------------------------------------------
# units


def _cf_step(P: int, Q: int, D: int, s: int) -> tuple[int, int, int]:
    # one step of the continued fraction of (P + sqrt D)/Q; returns (a, P', Q')
    a = (P + s) // Q
    P1 = a * Q - P
    Q1 = (D - P1 * P1) // Q
    return a, P1, Q1


@lru_cache(maxsize=None)
def fundamental_unit(K: QuadField) -> Elem:
    """Smallest unit > 1 of a real quadratic field, by the continued
    fraction of w.  Convergents p/q of w give elements p - q*w of norm
    p^2 - t p q + n q^2; the first with norm +-1 yields the unit."""
    if not K.is_real_quadratic:
        raise ValueError("fundamental unit requires a real quadratic field")
    d = K.d
    t, n = K.omega_trace, K.omega_norm
    if d % 4 == 1:
        P, Q, D = 1, 2, d
    else:
        P, Q, D = 0, 1, d
    s = isqrt(D)
    p_prev, p_cur = 0, 1  # p_{-2}, p_{-1}
    q_prev, q_cur = 1, 0
    for _ in range(100000):
        a, P, Q = _cf_step(P, Q, D, s)
        assert Q > 0
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        nm = p_cur * p_cur - t * p_cur * q_cur + n * q_cur * q_cur
        if abs(nm) == 1:
            eta = K.elem(p_cur, -q_cur)
            for cand in (eta, -eta, eta.conj(), -eta.conj()):
                if cand.sign_at(0) > 0 and (cand - 1).sign_at(0) > 0:
                    return cand
            raise AssertionError("no associate > 1")
    raise ArithmeticError(f"continued fraction of omega did not close for d={d}")


def roots_of_unity(K: QuadField) -> list[Elem]:
    """All roots of unity in K. mu4 for d=-1, mu6 for d=-3, else {+-1}."""
    out = [K.one, -K.one]
    if K.d == -1:
        i = K.omega  # w = sqrt(-1)
        out += [i, -i]
    elif K.d == -3:
        z = K.omega  # w = (1+sqrt(-3))/2, primitive 6th root
        out += [z, -z, z * z, -(z * z)]
    return out


def unit_power_decomposition(u: Elem) -> tuple[Elem, int]:
    """Write a unit of a real quadratic field as zeta * eps^k with
    zeta in {1,-1}; returns (zeta, k).  Exact repeated division."""
    K = u.field
    if abs(u.norm()) != 1 or not u.is_integral():
        raise ValueError("not a unit")
    eps = fundamental_unit(K)
    k = 0
    v = u
    # normalize first embedding positive
    sign = v.sign_at(0)
    if sign < 0:
        v = -v
    # now sigma1(v) > 0; shrink into [1, eps) by exact comparisons
    while (v - 1).sign_at(0) < 0:  # sigma1(v) < 1
        v = v * eps
        k -= 1
    while ((v - eps).sign_at(0) >= 0) or v == eps:  # sigma1(v) >= eps
        v = v / eps
        k += 1
        if not v.is_integral():
            raise AssertionError("unit decomposition left the ring")
    if v != K.one:
        raise AssertionError(f"residual unit {v} not 1; input was not a unit?")
    zeta = K.one if sign > 0 else -K.one
    return zeta, k


def is_unit_square(u: Elem) -> bool:
    """True iff the unit u is the square of a unit."""
    K = u.field
    if not u.is_integral() or abs(u.norm()) != 1:
        raise ValueError("not a unit")
    if K.is_rational:
        return u.x == 1
    if K.is_imaginary_quadratic:
        return any(u == z * z for z in roots_of_unity(K))
    zeta, k = unit_power_decomposition(u)
    return zeta == K.one and k % 2 == 0


def unit_square_class_reps(K: QuadField) -> list[Elem]:
    """Representatives of the unit group modulo squares of units."""
    if K.is_rational:
        return [K.one, -K.one]
    if K.is_imaginary_quadratic:
        zs = roots_of_unity(K)
        reps: list[Elem] = []
        for z in zs:
            if not any(is_unit_square(z / r) for r in reps):
                reps.append(z)
        return reps
    eps = fundamental_unit(K)
    return [K.one, -K.one, eps, -eps]
