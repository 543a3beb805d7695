"""Fractional ideals of the ring of integers of Q or a quadratic field.

A nonzero ideal is stored as an integer module in Hermite normal form over
the basis {1, w} (just a positive rational for Q), divided by a positive
integer denominator.  The representation is normalized at construction and
is unique per ideal, so equality is structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .arith import factorint, kronecker, sqrt_mod_p, xgcd
from .field import Elem, QuadField, fundamental_unit, parse_elem

__all__ = [
    "Ideal",
    "PrimeIdeal",
    "ideal_from_generators",
    "principal_ideal",
    "primes_above",
    "ideals_of_norm",
    "count_ideals_of_norm",
    "class_number",
    "minkowski_bound",
    "parse_ideal",
]

RESIDUE_ENUMERATION_BOUND = 1 << 20


def _hnf_from_vectors(vecs: list[tuple[int, int]]) -> tuple[int, int, int]:
    """HNF (a, b, c) of the Z-module spanned by integer vectors (x, y),
    meaning Z*(a, 0) + Z*(b, c), with a, c > 0 and 0 <= b < a."""
    vecs = [v for v in vecs if v != (0, 0)]
    if not vecs:
        raise ValueError("zero module")
    wx, wy = 0, 0
    for x, y in vecs:
        if y == 0:
            continue
        if wy == 0:
            wx, wy = x, y
        else:
            g, s, t = xgcd(wy, y)
            wx, wy = s * wx + t * x, g
    if wy == 0:
        raise ValueError("module has rank 1, not an ideal")
    if wy < 0:
        wx, wy = -wx, -wy
    a = 0
    for x, y in vecs:
        a = gcd(a, x - (y // wy) * wx)
    a = abs(a)
    if a == 0:
        raise ValueError("module has rank 1, not an ideal")
    return a, wx % a, wy


class Ideal:
    """Nonzero fractional ideal.  Immutable after construction."""

    __slots__ = ("field", "hnf", "den")

    def __init__(self, field: QuadField, hnf: tuple[int, ...], den: int = 1, _checked=False):
        if den <= 0:
            raise ValueError("denominator must be positive")
        if field.degree == 1:
            (n,) = hnf
            if n <= 0:
                raise ValueError("numerator must be positive")
            g = gcd(n, den)
            hnf = (n // g,)
            den //= g
        else:
            a, b, c = hnf
            if a <= 0 or c <= 0 or not 0 <= b < a:
                raise ValueError(f"not a normalized HNF triple: {hnf}")
            g = gcd(gcd(a, gcd(b, c)), den)
            hnf = (a // g, b // g, c // g)
            den //= g
            if not _checked:
                a, b, c = hnf
                t, n = field.omega_trace, field.omega_norm
                # stability under multiplication by w:
                # w*a = (0, a), w*(b+cw) = (-n c, b + t c)
                if not (_in_hnf(a, b, c, 0, a) and _in_hnf(a, b, c, -n * c, b + t * c)):
                    raise ValueError("module is not stable under the ring of integers")
        self.field = field
        self.hnf = hnf
        self.den = den

    # -- basic structure ----------------------------------------------------

    def norm(self) -> Fraction:
        if self.field.degree == 1:
            return Fraction(self.hnf[0], self.den)
        a, _, c = self.hnf
        return Fraction(a * c, self.den * self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def norm_int(self) -> int:
        if not self.is_integral():
            raise ValueError("integral ideal required")
        if self.field.degree == 1:
            return self.hnf[0]
        return self.hnf[0] * self.hnf[2]

    def basis_elems(self) -> list[Elem]:
        K = self.field
        if K.degree == 1:
            return [K.elem(Fraction(self.hnf[0], self.den))]
        a, b, c = self.hnf
        return [
            K.elem(Fraction(a, self.den)),
            K.elem(Fraction(b, self.den), Fraction(c, self.den)),
        ]

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.field == other.field
            and self.hnf == other.hnf
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.field, self.hnf, self.den))

    def __repr__(self):
        return f"Ideal({self})"

    def __str__(self):
        if self.field.degree == 1:
            return f"[{self.hnf[0]}]/{self.den}"
        a, b, c = self.hnf
        return f"[[{a},{b}],[0,{c}]]/{self.den}"

    def pretty(self) -> str:
        """Two-generator display "(a, b+c*w)", collapsing n*O to "(n)"."""
        if self.field.degree == 1:
            return f"({Fraction(self.hnf[0], self.den)})"
        a, b, c = self.hnf
        g1 = Fraction(a, self.den)
        if b == 0 and c == a:
            return f"({g1})"
        g2 = self.field.elem(Fraction(b, self.den), Fraction(c, self.den))
        return f"({g1}, {g2})"

    # -- membership and residues --------------------------------------------

    def contains(self, e: Elem) -> bool:
        x = e.x * self.den
        y = e.y * self.den
        if x.denominator != 1 or y.denominator != 1:
            return False
        if self.field.degree == 1:
            return x.numerator % self.hnf[0] == 0
        a, b, c = self.hnf
        return _in_hnf(a, b, c, x.numerator, y.numerator)

    __contains__ = contains

    def reduce(self, e: Elem) -> Elem:
        """Canonical residue of an integral element modulo an integral ideal:
        coordinates land in the HNF box [0,a) x [0,c)."""
        if not self.is_integral():
            raise ValueError("integral ideal required")
        if not e.is_integral():
            raise ValueError("integral element required")
        K = self.field
        if K.degree == 1:
            return K.elem(e.x % self.hnf[0])
        a, b, c = self.hnf
        x, y = int(e.x), int(e.y)
        q, j = divmod(y, c)
        return K.elem((x - q * b) % a, j)

    def residues(self, bound: int = RESIDUE_ENUMERATION_BOUND) -> list[Elem]:
        """All N(a) residue representatives from the HNF box."""
        if not self.is_integral():
            raise ValueError("integral ideal required")
        n = self.norm_int()
        if n > bound:
            raise ValueError(f"residue enumeration bound exceeded: {n} > {bound}")
        K = self.field
        if K.degree == 1:
            return [K.elem(i) for i in range(self.hnf[0])]
        a, _, c = self.hnf
        return [K.elem(i, j) for j in range(c) for i in range(a)]

    # -- arithmetic ----------------------------------------------------------

    def _scaled(self, q: Fraction) -> "Ideal":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("scale must be positive")
        if self.field.degree == 1:
            return Ideal(self.field, (self.hnf[0] * q.numerator,), self.den * q.denominator, _checked=True)
        a, b, c = self.hnf
        m = q.numerator
        return Ideal(
            self.field, (a * m, b * m, c * m), self.den * q.denominator, _checked=True
        )

    def __mul__(self, other):
        if isinstance(other, Ideal):
            if self.field != other.field:
                raise ValueError("ideals of different fields")
            if self.field.degree == 1:
                return Ideal(
                    self.field, (self.hnf[0] * other.hnf[0],), self.den * other.den, _checked=True
                )
            t, n = self.field.omega_trace, self.field.omega_norm
            a1, b1, c1 = self.hnf
            a2, b2, c2 = other.hnf
            vecs = []
            for x1, y1 in ((a1, 0), (b1, c1)):
                for x2, y2 in ((a2, 0), (b2, c2)):
                    vecs.append(
                        (x1 * x2 - n * y1 * y2, x1 * y2 + y1 * x2 + t * y1 * y2)
                    )
            return Ideal(self.field, _hnf_from_vectors(vecs), self.den * other.den, _checked=True)
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return self._scaled(abs(q))
        if isinstance(other, Elem):
            return self * principal_ideal(other)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> "Ideal":
        if self.field.degree == 1:
            return self
        return ideal_from_generators(self.field, [e.conj() for e in self.basis_elems()])

    def inverse(self) -> "Ideal":
        nm = self.norm()
        inv = self.conj()._scaled(1 / nm) if self.field.degree == 2 else Ideal(
            self.field, (nm.denominator,), nm.numerator, _checked=True
        )
        assert (self * inv).is_unit_ideal()
        return inv

    def __pow__(self, k: int) -> "Ideal":
        if k < 0:
            return self.inverse() ** (-k)
        out = unit_ideal(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def gcd(self, other: "Ideal") -> "Ideal":
        """gcd = sum of the two modules."""
        if self.field != other.field:
            raise ValueError("ideals of different fields")
        if self.field.degree == 1:
            n1, d1 = self.hnf[0], self.den
            n2, d2 = other.hnf[0], other.den
            return Ideal(self.field, (gcd(n1 * d2, n2 * d1),), d1 * d2, _checked=True)
        d1, d2 = self.den, other.den
        a1, b1, c1 = self.hnf
        a2, b2, c2 = other.hnf
        vecs = [
            (a1 * d2, 0),
            (b1 * d2, c1 * d2),
            (a2 * d1, 0),
            (b2 * d1, c2 * d1),
        ]
        return Ideal(self.field, _hnf_from_vectors(vecs), d1 * d2, _checked=True)

    def lcm(self, other: "Ideal") -> "Ideal":
        """lcm = intersection; computed as product / gcd."""
        return (self * other).divide_exact(self.gcd(other))

    def divide_exact(self, other: "Ideal") -> "Ideal":
        q = self * other.inverse()
        if not q.is_integral():
            raise ValueError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Ideal") -> bool:
        return (other * self.inverse()).is_integral()

    def is_unit_ideal(self) -> bool:
        if self.field.degree == 1:
            return self.hnf == (1,) and self.den == 1
        return self.hnf == (1, 0, 1) and self.den == 1

    def is_coprime(self, other: "Ideal") -> bool:
        return self.gcd(other).is_unit_ideal()

    # -- factorization --------------------------------------------------------

    def valuation(self, P: "PrimeIdeal") -> int:
        if not self.is_integral():
            num = Ideal(self.field, self.hnf, 1, _checked=True)
            den = principal_ideal(self.field.elem(self.den))
            return num.valuation(P) - den.valuation(P)
        v = 0
        x = self
        inv = P.ideal.inverse()
        while True:
            x = x * inv
            if not x.is_integral():
                return v
            v += 1

    def factor(self) -> list[tuple["PrimeIdeal", int]]:
        """Prime factorization; exponents may be negative for fractional ideals."""
        nm = self.norm()
        support = set(factorint(nm.numerator)) | set(factorint(nm.denominator))
        if self.den != 1:
            support |= set(factorint(self.den))
        out = []
        for p in sorted(support):
            for P in primes_above(self.field, p):
                v = self.valuation(P)
                if v:
                    out.append((P, v))
        rebuilt = unit_ideal(self.field)
        for P, v in out:
            rebuilt = rebuilt * P.ideal**v
        assert rebuilt == self, "factorization does not reassemble"
        return out

    def divisors(self) -> list["Ideal"]:
        """All integral divisors, sorted by (norm, hnf)."""
        if not self.is_integral():
            raise ValueError("integral ideal required")
        divs = [unit_ideal(self.field)]
        for P, e in self.factor():
            divs = [d * P.ideal**k for d in divs for k in range(e + 1)]
        return sorted(divs, key=lambda d: (d.norm_int(), d.hnf))

    def moebius(self) -> int:
        fac = self.factor()
        if any(e > 1 for _, e in fac):
            return 0
        return (-1) ** len(fac)

    def sigma(self, s: int) -> Fraction:
        """sum of N(d)^s over integral divisors d; exact rational for s in Z."""
        total = Fraction(0)
        for d in self.divisors():
            total += Fraction(d.norm_int()) ** s
        return total

    # -- principality ----------------------------------------------------------

    def principal_generator(self) -> Elem | None:
        """A generator if the ideal is principal, else None.

        Real quadratic search is restricted to the fundamental-unit box
        |log|s1(g)| - log|s2(g)|| <= 2 log eps, made exact through integer
        coefficient bounds; imaginary search is Minkowski-bounded by the
        positive definite norm form."""
        K = self.field
        if K.degree == 1:
            return K.elem(Fraction(self.hnf[0], self.den))
        num = Ideal(K, self.hnf, 1, _checked=True)
        g = _principal_generator_integral(num)
        if g is None:
            return None
        return K.elem(g.x / self.den, g.y / self.den)


def _in_hnf(a: int, b: int, c: int, x: int, y: int) -> bool:
    if y % c:
        return False
    return (x - (y // c) * b) % a == 0


def unit_ideal(K: QuadField) -> Ideal:
    if K.degree == 1:
        return Ideal(K, (1,), 1, _checked=True)
    return Ideal(K, (1, 0, 1), 1, _checked=True)


def ideal_from_generators(K: QuadField, gens) -> Ideal:
    """The fractional ideal generated by field elements (the O-module they
    span).  Idempotent: regenerating from any generating set of the same
    module gives the identical normalized representation."""
    elems = []
    for g in gens:
        if not isinstance(g, Elem):
            g = K.elem(Fraction(g))
        if g:
            elems.append(g)
    if not elems:
        raise ValueError("no nonzero generators")
    den = 1
    for g in elems:
        den = lcm(den, g.x.denominator, g.y.denominator)
    if K.degree == 1:
        n = 0
        for g in elems:
            n = gcd(n, int(g.x * den))
        return Ideal(K, (abs(n),), den)
    vecs = []
    for g in elems:
        for h in (g, g * K.omega):
            vecs.append((int(h.x * den), int(h.y * den)))
    return Ideal(K, _hnf_from_vectors(vecs), den, _checked=True)


def principal_ideal(e: Elem) -> Ideal:
    return ideal_from_generators(e.field, [e])


@dataclass(frozen=True)
class PrimeIdeal:
    p: int
    ideal: Ideal
    residue_degree: int
    ramified: bool

    def norm(self) -> int:
        return self.p**self.residue_degree

    def __str__(self):
        return self.ideal.pretty()


def primes_above(K: QuadField, p: int) -> list[PrimeIdeal]:
    """Prime ideals above the rational prime p, via the Kronecker symbol of
    the field discriminant plus explicit root-finding (both must agree)."""
    if K.degree == 1:
        return [PrimeIdeal(p, Ideal(K, (p,), 1, _checked=True), 1, False)]
    t, n = K.omega_trace, K.omega_norm
    sym = kronecker(K.disc, p)
    if sym == -1:
        return [PrimeIdeal(p, ideal_from_generators(K, [K.elem(p)]), 2, False)]
    # roots of x^2 - t x + n mod p
    if p == 2:
        roots = sorted({r % 2 for r in range(2) if (r * r - t * r + n) % 2 == 0})
    else:
        s = sqrt_mod_p(K.disc % p, p)
        assert s is not None, "kronecker symbol and root finding disagree"
        inv2 = pow(2, -1, p)
        roots = sorted({(t + s) * inv2 % p, (t - s) * inv2 % p})
    assert roots, "kronecker symbol and root finding disagree"
    out = []
    for r in roots:
        P = ideal_from_generators(K, [K.elem(p), K.omega - r])
        out.append(PrimeIdeal(p, P, 1, sym == 0))
    if sym == 1:
        assert len(out) == 2
    else:
        assert len(out) == 1 and (out[0].ideal ** 2) == ideal_from_generators(K, [K.elem(p)])
    return out


def ideals_of_norm(K: QuadField, n: int) -> list[Ideal]:
    """All integral ideals of norm exactly n, assembled multiplicatively."""
    if n < 1:
        raise ValueError("norm must be >= 1")
    out = [unit_ideal(K)]
    for p, e in sorted(factorint(n).items()):
        local: list[Ideal] = []
        if K.degree == 1:
            local = [Ideal(K, (p**e,), 1, _checked=True)]
        else:
            ps = primes_above(K, p)
            if len(ps) == 2:
                local = [ps[0].ideal ** i * ps[1].ideal ** (e - i) for i in range(e + 1)]
            elif ps[0].residue_degree == 2:
                local = [ps[0].ideal ** (e // 2)] if e % 2 == 0 else []
            else:  # ramified
                local = [ps[0].ideal ** e]
        out = [a * b for a in out for b in local]
        if not out:
            return []
    return sorted(out, key=lambda a: a.hnf)


def count_ideals_of_norm(K: QuadField, n: int, splitting: dict[int, int] | None = None) -> int:
    """Number of integral ideals of norm n.  `splitting` may carry a
    precomputed map p -> kronecker(disc, p) to speed up sieved sweeps."""
    if K.degree == 1:
        return 1
    total = 1
    for p, e in factorint(n).items():
        sym = splitting[p] if splitting is not None else kronecker(K.disc, p)
        if sym == 1:
            total *= e + 1
        elif sym == -1:
            if e % 2:
                return 0
        # ramified contributes factor 1
    return total


def minkowski_bound(K: QuadField) -> int:
    """An integer upper bound for the Minkowski constant of K: every ideal
    class contains an integral ideal of norm <= this bound."""
    if K.degree == 1:
        return 1
    D = abs(K.disc)
    # sqrt(D) <= (isqrt(D*10^8)+1)/10^4, exact integer overestimate
    s_up = isqrt(D * 10**8) + 1
    if K.d > 0:
        return s_up // (2 * 10**4) + 1
    # (2/pi) sqrt(D), pi > 3.14159265
    return (2 * s_up * 10**8) // (314159265 * 10**4) + 1


def class_number(K: QuadField) -> int:
    """Class number by Minkowski-complete enumeration plus principality tests."""
    if K.degree == 1:
        return 1
    reps: list[Ideal] = []
    for n in range(1, minkowski_bound(K) + 1):
        for a in ideals_of_norm(K, n):
            if not any((a * r.inverse()).principal_generator() is not None for r in reps):
                reps.append(a)
    return len(reps)


# -- principal generator search ------------------------------------------------


def _principal_generator_integral(I: Ideal) -> Elem | None:
    K = I.field
    N = I.norm_int()
    a, b, c = I.hnf
    t, n = K.omega_trace, K.omega_norm
    if K.is_imaginary_quadratic:
        # positive definite norm form x^2 + t x y + n y^2 = N
        # |disc| y^2 <= 4N
        ymax = isqrt(4 * N // abs(K.disc))
        for y in range(-ymax, ymax + 1):
            disc = t * t * y * y - 4 * (n * y * y - N)
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc:
                continue
            for x2 in ((-t * y + r), (-t * y - r)):
                if x2 % 2 == 0:
                    g = K.elem(x2 // 2, y)
                    if g and principal_ideal(g) == I:
                        return g
        return None
    # real quadratic: generator box bounded through the fundamental unit
    eps = fundamental_unit(K)
    A, B = eps.as_sqrt_coords()
    d = K.d
    E = A + B * (isqrt(d) + 1)  # rational upper bound for sigma1(eps)
    R2 = N * E * E  # (sqrt(N) * eps)^2 upper bound
    # y in sqrt-coords is y/2 (t=1) or y (t=0); |y_sqrt| <= sqrt(R2/d)
    mult = 2 if t == 1 else 1
    ycap = isqrt(int(R2 * mult * mult / d)) + 1
    jmax = ycap // c + 1
    xcap = isqrt(int(R2)) + 1
    for j in range(-jmax, jmax + 1):
        y = j * c
        # |x + t*y/2| <= xcap
        lo = (-t * y) // 2 - xcap - 1
        hi = (-t * y) // 2 + xcap + 1
        i_lo = (lo - j * b) // a
        i_hi = (hi - j * b) // a + 1
        for i in range(i_lo, i_hi + 1):
            x = i * a + j * b
            if x == 0 and y == 0:
                continue
            if abs(x * x + t * x * y + n * y * y) != N:
                continue
            g = K.elem(x, y)
            if principal_ideal(g) == I:
                return g
    return None


# -- parsing ---------------------------------------------------------------------

_HNF_RE = re.compile(
    r"^\s*\[\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*0\s*,\s*(-?\d+)\s*\]\]\s*(?:/\s*(\d+))?\s*$"
)
_Q_RE = re.compile(r"^\s*\[\s*(\d+)\s*\]\s*(?:/\s*(\d+))?\s*$")


def parse_ideal(K: QuadField, text: str) -> Ideal:
    """Parse "[[a,b],[0,c]]/den", "[n]/den", or a generator list "(g1, g2)"
    in element syntax (also a bare element for a principal ideal)."""
    m = _HNF_RE.match(text)
    if m:
        if K.degree == 1:
            raise ValueError("2x2 HNF given for an ideal of Q")
        a, b, c, den = int(m[1]), int(m[2]), int(m[3]), int(m[4] or 1)
        return Ideal(K, (a, b, c), den)
    m = _Q_RE.match(text)
    if m:
        if K.degree != 1:
            raise ValueError("1x1 HNF given for a quadratic field ideal")
        return Ideal(K, (int(m[1]),), int(m[2] or 1))
    inner = text.strip()
    if inner.startswith("(") and inner.endswith(")"):
        inner = inner[1:-1]
    gens = [parse_elem(K, part) for part in inner.split(",") if part.strip()]
    if not gens:
        raise ValueError(f"cannot parse ideal {text!r}")
    return ideal_from_generators(K, gens)
