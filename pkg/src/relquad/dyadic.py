"""Dyadic local fields of degree at most 2 over the 2-adics: higher unit
groups, square detection with certificates, the Hilbert symbol, and the
duality of the even-level unit filtration under the Hilbert pairing.

The seven fields are Q2 itself, its unramified quadratic extension
(basis {1, w}, w^2 = w + 1, i.e. Q2(sqrt 5)), and the six ramified
quadratic extensions Q2(sqrt c) for c in {-1, -5, 2, -2, 10, -10}.
Elements are truncated: coordinates live modulo 2^precision, which pins
the element modulo pi^(e * precision); every decision used here stabilizes
far below that depth, and the test protocol re-runs everything at
precision + 4 demanding identical answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import kronecker

__all__ = [
    "LocalField",
    "LocalElem",
    "local_field",
    "hilbert_symbol_q2_formula",
    "tame_symbol",
    "real_symbol",
    "product_formula_holds",
    "duality_report",
]

RAMIFIED_CLASSES = (-1, -5, 2, -2, 10, -10)


class LocalField:
    """One of the seven dyadic fields, at a fixed working precision
    (pi-adic digits; coordinates are carried modulo 2^precision).

    The descriptor is immutable and element operations are pure, but the
    instance carries internal square-class memo tables: confine an instance
    to one thread, or construct one per thread."""

    def __init__(self, kind: str, c: int | None = None, precision: int | None = None):
        if kind == "q2":
            self.e, self.f, self.c = 1, 1, None
        elif kind == "unram":
            self.e, self.f, self.c = 1, 2, None
        elif kind == "ram":
            if c not in RAMIFIED_CLASSES:
                raise ValueError(f"ramified class must be one of {RAMIFIED_CLASSES}")
            self.e, self.f, self.c = 2, 1, c
        else:
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.precision = precision if precision is not None else 4 * self.e + 6
        if self.precision < 2 * self.e + 6:
            raise ValueError("precision too small for stable square decisions")
        self.W = 1 << (self.precision + 6)  # coordinate modulus 2^(prec+6)
        self.dim = self.e * self.f + 2  # dim of K^x / (K^x)^2 over F2
        self._decompose_memo: dict[tuple, int] = {}
        self._norm_group_memo: dict[int, list[int]] = {}
        self._space = None

    def __repr__(self):
        tag = {"q2": "Q2", "unram": "Q2(w)", "ram": f"Q2(sqrt{{{self.c}}})"}[self.kind]
        return f"{tag}@{self.precision}"

    # -- element construction -------------------------------------------------

    def elem(self, a: int, b: int = 0) -> "LocalElem":
        if self.f == 1 and self.kind == "q2" and b:
            raise ValueError("Q2 elements have a single coordinate")
        return LocalElem(self, a % self.W, b % self.W)

    __call__ = elem

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    @property
    def pi(self) -> "LocalElem":
        if self.e == 1:
            return self.elem(2)
        if self.c % 2 == 0:
            return self.elem(0, 1)  # sqrt c
        return self.elem(1, 1)  # 1 + sqrt c

    def from_rational(self, q) -> "LocalElem":
        """Embed a nonzero rational, normalizing the even part to pi^(0 or 1)
        times a unit (enough for square-class work)."""
        q = Fraction(q)
        if not q:
            raise ValueError("nonzero rational required")
        v = 0
        num, den = q.numerator, q.denominator
        while num % 2 == 0:
            num //= 2
            v += 1
        while den % 2 == 0:
            den //= 2
            v -= 1
        u = num * pow(den, -1, self.W) % self.W
        out = self.elem(u)
        if v % 2:
            out = out * self.elem(2)
        return out

    # -- residue field ---------------------------------------------------------

    def residue(self, x: "LocalElem") -> tuple[int, int]:
        """Image in the residue field: a bit for F2, a bit pair p + q*g for F4."""
        if self.f == 2:
            return (x.a & 1, x.b & 1)
        if self.kind == "q2" or self.c % 2 == 0:
            return (x.a & 1, 0)
        # pi = 1 + sqrt c: sqrt c = 1 mod pi
        return ((x.a + x.b) & 1, 0)

    def res_mul(self, r, s):
        p1, q1 = r
        p2, q2 = s
        return ((p1 & p2) ^ (q1 & q2), (p1 & q2) ^ (q1 & p2) ^ (q1 & q2))

    def res_trace(self, r) -> int:
        """Trace to F2: identity on F2; q for p + q*g in F4."""
        return r[1] if self.f == 2 else r[0]

    def res_sqrt(self, r):
        """Inverse of Frobenius; on F4 squaring is its own inverse."""
        return self.res_mul(r, r) if self.f == 2 else r

    def artin_schreier_solve(self, r):
        """y with y^2 + y = r in the residue field; None iff trace(r) = 1."""
        if self.res_trace(r):
            return None
        cands = [(0, 0), (1, 0)] if self.f == 1 else [(0, 0), (1, 0), (0, 1), (1, 1)]
        for y in cands:
            y2 = self.res_mul(y, y)
            if ((y2[0] ^ y[0]), (y2[1] ^ y[1])) == r:
                return y
        raise AssertionError("trace-zero element without Artin-Schreier solution")

    def res_lift(self, r) -> "LocalElem":
        if self.f == 2:
            return self.elem(r[0], r[1])
        return self.elem(r[0])

    # -- square classes --------------------------------------------------------

    def space(self) -> "SquareClassSpace":
        if self._space is None:
            self._space = SquareClassSpace(self)
        return self._space


@dataclass(frozen=True)
class LocalElem:
    field: LocalField
    a: int
    b: int = 0

    def __mul__(self, other: "LocalElem") -> "LocalElem":
        F = self.field
        W = F.W
        if F.kind == "q2":
            return LocalElem(F, self.a * other.a % W, 0)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        if F.kind == "unram":  # w^2 = w + 1
            return LocalElem(
                F, (a1 * a2 + b1 * b2) % W, (a1 * b2 + b1 * a2 + b1 * b2) % W
            )
        return LocalElem(
            F, (a1 * a2 + F.c * b1 * b2) % W, (a1 * b2 + b1 * a2) % W
        )

    def __add__(self, other):
        F = self.field
        return LocalElem(F, (self.a + other.a) % F.W, (self.b + other.b) % F.W)

    def __sub__(self, other):
        F = self.field
        return LocalElem(F, (self.a - other.a) % F.W, (self.b - other.b) % F.W)

    def __neg__(self):
        F = self.field
        return LocalElem(F, -self.a % F.W, -self.b % F.W)

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def norm_int(self) -> int:
        """Norm to Q2 of the canonical representative, as an exact integer."""
        F = self.field
        if F.kind == "q2":
            return self.a
        if F.kind == "unram":
            return self.a * self.a + self.a * self.b - self.b * self.b
        return self.a * self.a - F.c * self.b * self.b

    def conj(self) -> "LocalElem":
        F = self.field
        if F.kind == "q2":
            return self
        if F.kind == "unram":
            return LocalElem(F, (self.a + self.b) % F.W, -self.b % F.W)
        return LocalElem(F, self.a, -self.b % F.W)

    def valuation(self) -> int | None:
        """pi-adic valuation; None means indistinguishable from 0 here."""
        F = self.field
        if not self:
            return None
        n = self.norm_int()
        if n == 0:
            return None
        v2 = 0
        while n % 2 == 0:
            n //= 2
            v2 += 1
        if F.kind == "q2":
            v = v2
        elif F.kind == "unram":
            assert v2 % 2 == 0
            v = v2 // 2
        else:
            v = v2
        if v > F.e * (F.precision + 2):
            return None
        return v

    def unit_inverse(self) -> "LocalElem":
        F = self.field
        n = self.norm_int()
        if n % 2 == 0:
            raise ValueError("not a unit")
        if F.kind == "q2":
            return LocalElem(F, pow(self.a, -1, F.W), 0)
        inv_n = pow(n, -1, F.W)
        c = self.conj()
        return LocalElem(F, c.a * inv_n % F.W, c.b * inv_n % F.W)

    def div_exact_pi(self) -> "LocalElem":
        F = self.field
        W = F.W
        if F.kind == "q2":
            assert self.a % 2 == 0
            return LocalElem(F, (self.a // 2) % W, 0)
        if F.kind == "unram":
            assert self.a % 2 == 0 and self.b % 2 == 0
            return LocalElem(F, (self.a // 2) % W, (self.b // 2) % W)
        if F.c % 2 == 0:  # pi = sqrt c; x / pi = b + (a / c) sqrt c
            assert self.a % 2 == 0
            u = F.c // 2
            return LocalElem(F, self.b, (self.a // 2) * pow(u, -1, W) % W)
        # pi = 1 + sqrt c: x / pi = x conj(pi) / (1 - c), v2(1 - c) = 1
        y = self * LocalElem(F, 1, -1 % W)
        u = (1 - F.c) // 2
        assert y.a % 2 == 0 and y.b % 2 == 0
        inv = pow(u, -1, W)
        return LocalElem(F, (y.a // 2) * inv % W, (y.b // 2) * inv % W)

    def div_exact_int(self, k: int) -> "LocalElem":
        assert self.a % k == 0 and self.b % k == 0
        F = self.field
        return LocalElem(F, (self.a // k) % F.W, (self.b // k) % F.W)

    def __pow__(self, k: int) -> "LocalElem":
        out = self.field.one
        base = self
        if k < 0:
            base = base.unit_inverse() if base.valuation() == 0 else None
            assert base is not None
            k = -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def key(self):
        return (self.a, self.b)


def local_field(descriptor: str, precision: int | None = None) -> LocalField:
    """Parse "q2", "unram", or "ram:c"."""
    if descriptor == "q2":
        return LocalField("q2", precision=precision)
    if descriptor == "unram":
        return LocalField("unram", precision=precision)
    if descriptor.startswith("ram:"):
        return LocalField("ram", c=int(descriptor[4:]), precision=precision)
    raise ValueError(f"unknown local field {descriptor!r}")


def all_local_fields(precision: int | None = None) -> list[LocalField]:
    return [
        LocalField("q2", precision=precision),
        LocalField("unram", precision=precision),
        *(LocalField("ram", c=c, precision=precision) for c in RAMIFIED_CLASSES),
    ]


# -- square detection --------------------------------------------------------


def unit_level(u: LocalElem) -> int:
    """max i <= 2e+1 with u in U_i = 1 + pi^i O; 2e+1 reports "at least"
    (such units are squares by the local square theorem)."""
    F = u.field
    cap = 2 * F.e + 1
    if u.valuation() != 0:
        raise ValueError("unit required")
    v = (u - F.one).valuation()
    return cap if v is None else min(v, cap)


def sqrt_certificate(x: LocalElem) -> LocalElem | None:
    """y with y^2 = x at working precision, or None if x is not a square.

    Iterative reduction: strip pi^2, take residue square roots at even
    levels below 2e, apply the trace criterion at level 2e, and finish
    with Newton above 2e (the local square theorem's range)."""
    F = x.field
    v = x.valuation()
    if v is None:
        raise ValueError("cannot decide squareness of 0 at this precision")
    if v % 2:
        return None
    half = F.pi ** (v // 2)
    u = x
    for _ in range(v):
        u = u.div_exact_pi()
    w = F.one
    two_e = 2 * F.e
    for _ in range(4 * F.e + 8):
        lvl_elem = u - F.one
        lvl = lvl_elem.valuation()
        if lvl is None or lvl >= two_e + 1:
            break
        if lvl % 2 and lvl < two_e:
            return None
        if lvl == two_e:
            # u = 1 + 4 t: square iff the residue trace of t vanishes
            t = lvl_elem.div_exact_int(4)
            y = F.artin_schreier_solve(F.residue(t))
            if y is None:
                return None
            factor = F.one + F.res_lift(y) * F.elem(2)
        else:
            # even level below 2e: divide by (1 + pi^(lvl/2) t)^2
            t_res = F.res_sqrt(F.residue(_shift_down(lvl_elem, lvl)))
            factor = F.one + F.res_lift(t_res) * F.pi ** (lvl // 2)
        w = w * factor
        u = u * (factor * factor).unit_inverse()
    else:
        raise AssertionError("square reduction did not terminate")
    z = _newton_unit_sqrt(u)
    if z is None:
        return None
    cert = half * w * z
    assert agree_at_precision(cert * cert, x), "certificate fails at precision"
    return cert


def _shift_down(x: LocalElem, v: int) -> LocalElem:
    for _ in range(v):
        x = x.div_exact_pi()
    return x


def _newton_unit_sqrt(u: LocalElem) -> LocalElem | None:
    """Square root of u in U_(2e+1) by z -> (z + u/z)/2."""
    F = u.field
    lvl = unit_level(u)
    assert lvl >= 2 * F.e + 1
    z = F.one
    for _ in range(F.precision * F.e + 8):
        nz = (z + u * z.unit_inverse()).div_exact_int(2)
        if nz == z:
            break
        z = nz
    return z


def square_mod_level(u: LocalElem, target: int) -> bool:
    """Solvability of x^2 = u mod pi^target, by residue search over
    pi^(ceil(target/2) + e); the guard digits make the search modulus
    sufficient for every valuation profile of u."""
    if target <= 0:
        return True
    F = u.field
    depth = (target + 1) // 2 + F.e
    for x in _sample_integral(F, depth):
        diff = x * x - u
        if not diff:
            return True
        v = diff.valuation()
        if v is None or v >= target:
            return True
    return False


def agree_at_precision(x: LocalElem, y: LocalElem) -> bool:
    """Indistinguishable modulo pi^(e * precision)."""
    diff = x - y
    if not diff:
        return True
    v = diff.valuation()
    return v is None or v >= x.field.e * x.field.precision


def is_square(x: LocalElem) -> bool:
    return sqrt_certificate(x) is not None


# -- square class space and the Hilbert symbol ---------------------------------


class SquareClassSpace:
    """Basis of K^x/(K^x)^2 over F2: pi first, then e*f + 1 units.

    decompose() expresses any nonzero element as a bitmask over the basis;
    it is linear (checked by the duality test suite, not assumed here)."""

    def __init__(self, F: LocalField):
        self.field = F
        units = _unit_candidates(F)
        basis_units: list[LocalElem] = []
        for cand in units:
            if len(basis_units) == F.dim - 1:
                break
            if _in_unit_span(basis_units, cand):
                continue
            basis_units.append(cand)
        assert len(basis_units) == F.dim - 1, "unit square classes not exhausted"
        self.basis = [F.pi, *basis_units]
        self.dim = F.dim

    def decompose(self, x: LocalElem) -> int:
        F = self.field
        v = x.valuation()
        if v is None:
            raise ValueError("cannot classify 0")
        u = _shift_down(x, v)
        key = (v % 2, u.key())
        memo = F._decompose_memo
        if key in memo:
            return memo[key]
        mask_pi = v % 2
        for mask in range(1 << (F.dim - 1)):
            prod = u
            m = mask
            i = 0
            while m:
                if m & 1:
                    prod = prod * self.basis[i + 1]
                m >>= 1
                i += 1
            if is_square(prod):
                out = mask_pi | (mask << 1)
                memo[key] = out
                return out
        raise AssertionError("element not in the span of the square-class basis")

    def rep(self, mask: int) -> LocalElem:
        out = self.field.one
        for i in range(self.dim):
            if mask >> i & 1:
                out = out * self.basis[i]
        return out

    def all_reps(self) -> list[LocalElem]:
        return [self.rep(m) for m in range(1 << self.dim)]


def _unit_candidates(F: LocalField):
    """Units covering all unit square classes: 1 + (digit patterns of depth
    2e+1); by the local square theorem deeper digits never change the class."""
    residues = [(0, 0), (1, 0)] if F.f == 1 else [(0, 0), (1, 0), (0, 1), (1, 1)]
    depth = 2 * F.e + 1
    cands = []

    def build(i, acc):
        if i == depth:
            if acc.valuation() == 0:
                cands.append(acc)
            return
        for r in residues:
            build(i + 1, acc + F.res_lift(r) * F.pi**i)

    build(0, F.zero)
    # prefer classically featured units first (-1, small odd integers)
    cands.sort(key=lambda u: (u.key() != (-1 % F.W, 0),))
    return cands


def _in_unit_span(basis: list[LocalElem], cand: LocalElem) -> bool:
    for mask in range(1 << len(basis)):
        prod = cand
        for i in range(len(basis)):
            if mask >> i & 1:
                prod = prod * basis[i]
        if is_square(prod):
            return True
    return False


def _gf2_reduce(rows: list[int], vec: int) -> int:
    for r in rows:
        vec = min(vec, vec ^ r)
    return vec


def _gf2_insert(rows: list[int], vec: int) -> bool:
    vec = _gf2_reduce(rows, vec)
    if vec:
        rows.append(vec)
        rows.sort(reverse=True)
        return True
    return False


def hilbert_symbol(x: LocalElem, y: LocalElem) -> int:
    """(x, y): +1 iff x u^2 + y v^2 = 1 is solvable, computed by membership
    of y's square class in the norm-class subgroup of K(sqrt x)/K."""
    F = x.field
    G = y.field
    if (F.kind, F.c, F.precision) != (G.kind, G.c, G.precision):
        raise ValueError("elements of different fields")
    space = F.space()
    cx = space.decompose(x)
    if cx == 0:
        return 1
    cy = space.decompose(y)
    if cy == 0:
        return 1
    rows = _norm_class_subgroup(F, cx)
    return 1 if _gf2_reduce(rows, cy) == 0 else -1


def _norm_class_subgroup(F: LocalField, cx: int) -> list[int]:
    """Row basis of the classes of nonzero values of u^2 - a v^2, where a
    represents class cx.  This is the norm group of K(sqrt a)/K, of index
    exactly 2; the search stops when that index is reached."""
    memo = F._norm_group_memo
    if cx in memo:
        return memo[cx]
    space = F.space()
    a = space.rep(cx)
    target = F.dim - 1
    rows: list[int] = []
    for depth in (3, 2 * F.e + 2):
        pool = _sample_integral(F, depth)
        for u in pool:
            for v in pool:
                val = u * u - a * (v * v)
                if not val or val.valuation() is None:
                    continue
                _gf2_insert(rows, space.decompose(val))
                if len(rows) == target:
                    break
            if len(rows) == target:
                break
        if len(rows) == target:
            break
    assert len(rows) == target, "norm group search did not reach index 2"
    memo[cx] = rows
    return rows


# -- classical oracles ----------------------------------------------------------


def _odd_part_mod(q: Fraction, m: int) -> tuple[int, int]:
    v = 0
    num, den = q.numerator, q.denominator
    while num % 2 == 0:
        num //= 2
        v += 1
    while den % 2 == 0:
        den //= 2
        v -= 1
    return v, num * pow(den, -1, m) % m


def hilbert_symbol_q2_formula(a, b) -> int:
    """Closed form over Q2: (-1)^(eps(u) eps(v) + alpha omega(v) + beta omega(u))."""
    a, b = Fraction(a), Fraction(b)
    if not a or not b:
        raise ValueError("nonzero arguments required")
    alpha, u = _odd_part_mod(a, 8)
    beta, v = _odd_part_mod(b, 8)
    eps_u, eps_v = (u - 1) // 2 % 2, (v - 1) // 2 % 2
    om_u, om_v = (u * u - 1) // 8 % 2, (v * v - 1) // 8 % 2
    ex = eps_u * eps_v + alpha * om_v + beta * om_u
    return -1 if ex % 2 else 1


def tame_symbol(a, b, p: int) -> int:
    """Hilbert symbol at an odd prime p."""
    a, b = Fraction(a), Fraction(b)
    alpha, u = _padic_split(a, p)
    beta, v = _padic_split(b, p)
    val = 1
    if (alpha * beta * (p - 1) // 2) % 2:
        val = -val
    if beta % 2 and kronecker(u, p) == -1:
        val = -val
    if alpha % 2 and kronecker(v, p) == -1:
        val = -val
    return val


def _padic_split(q: Fraction, p: int) -> tuple[int, int]:
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, num * pow(den, -1, p * p) % (p * p)


def real_symbol(a, b) -> int:
    return -1 if a < 0 and b < 0 else 1


def product_formula_holds(a, b, precision: int | None = None) -> bool:
    """prod over v in {2, odd p | ab, infinity} of (a, b)_v equals +1."""
    a, b = Fraction(a), Fraction(b)
    from .arith import factorint

    F = LocalField("q2", precision=precision)
    total = hilbert_symbol(F.from_rational(a), F.from_rational(b))
    total *= real_symbol(a, b)
    odd_primes = set()
    for q in (a, b):
        for n in (q.numerator, q.denominator):
            odd_primes |= {p for p in factorint(n) if p != 2}
    for p in sorted(odd_primes):
        total *= tame_symbol(a, b, p)
    return total == 1


# -- filtration and duality -------------------------------------------------------


def unit_filtration(F: LocalField) -> dict[int, list[int]]:
    """V_k = image of U_(2k) in the square classes, as GF(2) row bases,
    for k = -1 .. e+1; dimensions must match 1 + f(e-k) for 0 <= k <= e."""
    space = F.space()
    out: dict[int, list[int]] = {}
    full: list[int] = []
    for i in range(F.dim):
        _gf2_insert(full, 1 << i)
    out[-1] = full
    for k in range(0, F.e + 1):
        rows: list[int] = []
        expected = 1 + F.f * (F.e - k)
        for t in _sample_integral(F, depth=2 * F.e + 2):
            u = F.one + t * F.pi ** (2 * k)
            if u.valuation() != 0:
                continue
            vec = space.decompose(u)
            _gf2_insert(rows, vec)
        assert len(rows) == expected, (
            f"V_{k} has dimension {len(rows)}, cardinality lemma wants {expected}"
        )
        out[k] = rows
    out[F.e + 1] = []
    return out


def _sample_integral(F: LocalField, depth: int):
    residues = [(0, 0), (1, 0)] if F.f == 1 else [(0, 0), (1, 0), (0, 1), (1, 1)]
    outs = [F.zero]
    for i in range(depth):
        outs = [acc + F.res_lift(r) * F.pi**i for acc in outs for r in residues]
    return outs


def span_masks(rows: list[int]) -> set[int]:
    out = {0}
    for r in rows:
        out |= {m ^ r for m in out}
    return out


def orthogonal_complement(F: LocalField, rows: list[int]) -> list[int]:
    """All classes pairing trivially with a subspace, via the Gram matrix."""
    space = F.space()
    gram = gram_matrix(F)
    comp: list[int] = []
    for m in range(1 << F.dim):
        if all(_pair_bit(gram, m, r) == 0 for r in rows):
            _gf2_insert(comp, m)
    return comp


def _pair_bit(gram: list[list[int]], m1: int, m2: int) -> int:
    bit = 0
    for i in range(len(gram)):
        if not (m1 >> i & 1):
            continue
        for j in range(len(gram)):
            if m2 >> j & 1:
                bit ^= gram[i][j]
    return bit


def gram_matrix(F: LocalField) -> list[list[int]]:
    """Gram bits g[i][j] = (1 - hilbert(basis_i, basis_j)) / 2."""
    space = F.space()
    n = F.dim
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = (1 - hilbert_symbol(space.basis[i], space.basis[j])) // 2
    return out


def duality_report(descriptor: str, precision: int | None = None) -> dict:
    """Everything the appendix asserts about one field, as a dict of checks."""
    F = local_field(descriptor, precision)
    space = F.space()
    reps = space.all_reps()
    n = 1 << F.dim
    table = [[hilbert_symbol(reps[i], reps[j]) for j in range(n)] for i in range(n)]
    symmetric = all(table[i][j] == table[j][i] for i in range(n) for j in range(n))
    # decompose must be linear on products of representatives
    linear = all(
        space.decompose(reps[i] * reps[j]) == i ^ j for i in range(n) for j in range(n)
    )
    bilinear = all(
        table[i][j] * table[k][j] == table[i ^ k][j]
        for i in range(n)
        for k in range(n)
        for j in range(n)
    )
    gram = gram_matrix(F)
    nondeg = _gf2_rank([_row_to_mask(r) for r in gram]) == F.dim
    filtration = unit_filtration(F)
    dims = {k: len(rows) for k, rows in filtration.items()}
    duality = all(
        span_masks(orthogonal_complement(F, filtration[k]))
        == span_masks(filtration[F.e - k])
        for k in range(-1, F.e + 2)
    )
    even_pairs = _even_levels_pair_trivially(F)
    lemma_sq = _units_mod_squares_constructive(F)
    trace_crit = _trace_criterion_exhaustive(F)
    q2_oracle = True
    if F.kind == "q2":
        q2_oracle = all(
            hilbert_symbol_q2_formula(_as_rational(F, reps[i]), _as_rational(F, reps[j]))
            == table[i][j]
            for i in range(n)
            for j in range(n)
        )
    return {
        "field": descriptor,
        "precision": F.precision,
        "e": F.e,
        "f": F.f,
        "dims": dims,
        "gram": gram,
        "symmetric": symmetric,
        "decompose_linear": linear,
        "bilinear": bilinear,
        "nondegenerate": nondeg,
        "duality_ok": duality,
        "even_level_pairs_trivial": even_pairs,
        "units_mod_squares_lemma": lemma_sq,
        "trace_criterion_level_2e": trace_crit,
        "q2_closed_form_oracle": q2_oracle,
        "filtration_cardinalities_ok": all(
            dims[k] == 1 + F.f * (F.e - k) for k in range(0, F.e + 1)
        ),
    }


def _row_to_mask(row: list[int]) -> int:
    m = 0
    for i, bit in enumerate(row):
        if bit:
            m |= 1 << i
    return m


def _gf2_rank(rows: list[int]) -> int:
    basis: list[int] = []
    for r in rows:
        _gf2_insert(basis, r)
    return len(basis)


def _as_rational(F: LocalField, x: LocalElem) -> int:
    assert F.kind == "q2"
    a = x.a
    # small signed representative of the canonical coordinate
    return a - F.W if a > F.W // 2 else a


def _even_levels_pair_trivially(F: LocalField) -> bool:
    # (U_i, U_j) = 1 for even i, j >= 0 with i + j = 2e, sampled across
    # all square classes the groups meet
    for i in range(0, 2 * F.e + 1, 2):
        j = 2 * F.e - i
        us = [F.one + t * F.pi**i for t in _sample_integral(F, 2 * F.e + 2 - i)]
        vs = [F.one + t * F.pi**j for t in _sample_integral(F, 2 * F.e + 2 - j)]
        us = [u for u in us if u.valuation() == 0]
        vs = [v for v in vs if v.valuation() == 0]
        seen_u = {}
        for u in us:
            seen_u.setdefault(F.space().decompose(u), u)
        seen_v = {}
        for v in vs:
            seen_v.setdefault(F.space().decompose(v), v)
        for u in seen_u.values():
            for v in seen_v.values():
                if hilbert_symbol(u, v) != 1:
                    return False
    return True


def _units_mod_squares_constructive(F: LocalField) -> bool:
    # U_2k = U_(2k+1) U_k^2 for 0 <= k <= e-1, constructively
    for k in range(0, F.e):
        for t in _sample_integral(F, 2):
            u = F.one + t * F.pi ** (2 * k)
            if u.valuation() != 0:
                continue
            lvl_elem = u - F.one
            lvl = lvl_elem.valuation()
            if lvl is None or lvl < 2 * k:
                continue
            if lvl >= 2 * k + 1:
                continue  # already in U_(2k+1), factor (1)^2
            t_res = F.res_sqrt(F.residue(_shift_down(lvl_elem, 2 * k)))
            factor = F.one + F.res_lift(t_res) * F.pi**k
            rem = u * (factor * factor).unit_inverse()
            lv = (rem - F.one).valuation()
            if lv is not None and lv < 2 * k + 1:
                return False
    return True


def _trace_criterion_exhaustive(F: LocalField) -> bool:
    # on U_2e = 1 + 4x: square iff residue trace of x vanishes; the
    # certificate's unit part must sit in U_e (up to sign)
    for x in _sample_integral(F, 2):
        u = F.one + x * F.elem(4)
        if u.valuation() != 0:
            continue
        expect = F.res_trace(F.residue(x)) == 0
        cert = sqrt_certificate(u)
        if (cert is not None) != expect:
            return False
        if cert is not None:
            ok = False
            for w in (cert, -cert):
                lv = (w - F.one).valuation()
                if lv is None or lv >= F.e:
                    ok = True
            if not ok:
                return False
    return True
