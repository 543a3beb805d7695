import random
from itertools import islice

import pytest

from relquad.arith import kronecker
from relquad.characters import QuadCharacter
from relquad.discriminants import conductor_ideal, discriminant_classes
from relquad.field import make_field
from relquad.ideals import (
    ideal_from_generators,
    ideals_of_norm,
    primes_above,
    principal_ideal,
    unit_ideal,
)


def brute_symbol(chi, P):
    """Oracle for the prime symbol: full solvability search of
    x^2 = delta mod 4P over all residues of 4P."""
    four_p = P.ideal * 4
    return 1 if any((x * x - chi.delta) in four_p for x in four_p.residues()) else -1


def test_at_prime_examples(Q, Q10):
    chi5 = QuadCharacter(Q.elem(5))
    p11 = primes_above(Q, 11)[0]
    assert chi5.at_prime(p11) == 1  # 4^2 = 16 = 5 mod 11
    p2 = primes_above(Q, 2)[0]
    assert chi5.at_prime(p2) == -1  # 5 is not in {0,1,4} mod 8
    chim2 = QuadCharacter(Q10.elem(-2))
    p3 = next(
        P for P in primes_above(Q10, 3) if P.ideal == ideal_from_generators(Q10, [Q10.elem(3), Q10.sqrt_gen + 1])
    )
    assert chim2.at_prime(p3) == 1  # -2 = 1 = 1^2 in F_3
    for P in (p11, p2, p3):
        chi = chi5 if P.p != 3 else chim2
        assert chi.at_prime(P) == brute_symbol(chi, P)


def test_at_prime_rejects_dividing(Q):
    chi = QuadCharacter(Q.elem(12))
    with pytest.raises(ValueError):
        chi.at_prime(primes_above(Q, 3)[0])


def test_on_ideal_examples(Q):
    chi12 = QuadCharacter(Q.elem(12))
    assert chi12.on_ideal(unit_ideal(Q)) == 1
    assert chi12.on_ideal(principal_ideal(Q.elem(11))) == 1
    assert chi12.on_ideal(principal_ideal(Q.elem(5))) == -1
    with pytest.raises(ValueError):
        chi12.on_ideal(principal_ideal(Q.elem(6)))


def test_on_ideal_matches_kronecker(Q):
    rng = random.Random(23)
    for delta in (5, 12, -4, -16, 21, -24, 40):
        chi = QuadCharacter(Q.elem(delta))
        for _ in range(40):
            n = rng.randint(1, 400)
            from math import gcd

            if gcd(n, 4 * abs(delta)) not in (1,):
                if gcd(n, abs(delta)) != 1:
                    continue
            if gcd(n, abs(delta)) != 1:
                continue
            assert chi.on_ideal(principal_ideal(Q.elem(n))) == kronecker(delta, n)


def test_on_element_examples(Q):
    chim4 = QuadCharacter(Q.elem(-4))
    assert chim4.on_element(Q.elem(3)) == -1
    assert chim4.on_element(Q.elem(-1)) == -1
    assert chim4.on_element(Q.elem(5)) == 1
    assert chim4.on_element(Q.elem(1)) == 1
    chi12 = QuadCharacter(Q.elem(12))
    vals = [chi12.on_element(Q.elem(a)) for a in (1, 5, 7, 11)]
    assert vals == [1, -1, -1, 1]  # the mod-12 character of Q(sqrt 3)


def test_conductor_exhaustive_examples(Q, Q10):
    chi = QuadCharacter(Q.elem(-12))
    cond, _, wits = chi.conductor_exhaustive()
    assert cond == principal_ideal(Q.elem(3)) == chi.conductor
    assert set(wits) == {P for P, _ in cond.factor()}
    chi = QuadCharacter(Q.elem(-4))
    cond, _, _ = chi.conductor_exhaustive()
    assert cond == principal_ideal(Q.elem(4)) == chi.conductor
    chi = QuadCharacter(Q10.elem(2))
    cond, table, _ = chi.conductor_exhaustive()
    assert cond.is_unit_ideal()
    assert set(table.values()) == {1}


def test_hecke_property_and_conductor_small(test_fields):
    for K in test_fields:
        for info in discriminant_classes(K, 40):
            chi = QuadCharacter(info)
            cond, _, wits = chi.conductor_exhaustive()
            assert cond == info.rel_disc
            for Q_, (a, b) in wits.items():
                D = cond.divide_exact(Q_.ideal)
                assert D.reduce(a) == D.reduce(b)
                assert chi.on_element(a) != chi.on_element(b)


def test_primitive_examples(Q):
    chi = QuadCharacter(Q.elem(-12))
    two = principal_ideal(Q.elem(2))
    assert chi.primitive(two) == -1  # kronecker(-3, 2), -3 = 5 mod 8
    # coprime-to-delta ideals: primitive == plain symbol
    for n in (5, 7, 11, 25):
        a = principal_ideal(Q.elem(n))
        assert chi.primitive(a) == chi.on_ideal(a)
    # primes dividing the conductor give 0
    assert chi.primitive(principal_ideal(Q.elem(3))) == 0


def test_primitive_independent_of_auxiliary(Q10, Q5):
    for K in (Q10, Q5):
        for info in discriminant_classes(K, 20):
            chi = QuadCharacter(info)
            mod = chi.modulus
            for n in range(2, 12):
                for a in ideals_of_norm(K, n):
                    if a.gcd(mod).is_unit_ideal() or not a.gcd(chi.conductor).is_unit_ideal():
                        continue
                    vals = {
                        chi.primitive_via(P, alpha)
                        for P, alpha in islice(chi.auxiliary_splits(a), 3)
                    }
                    assert len(vals) == 1
                    assert vals.pop() == chi.primitive(a)


def test_primitive_class_invariance(Q10, Q):
    rng = random.Random(9)
    for K in (Q10, Q):
        for info in discriminant_classes(K, 25):
            chi = QuadCharacter(info)
            c = K.elem(3) if K.degree == 1 else K.elem(1, 1)
            if not c.norm():
                continue
            chi2 = QuadCharacter(info.delta * c * c)
            for n in range(1, 30):
                for a in ideals_of_norm(K, n):
                    if a.gcd(chi.modulus).is_unit_ideal() and a.gcd(chi2.modulus).is_unit_ideal():
                        assert chi.on_ideal(a) == chi2.on_ideal(a)


def test_extended_examples(Q):
    chi16 = QuadCharacter(Q.elem(-16))
    assert chi16.extended(principal_ideal(Q.elem(4))) == 2
    assert chi16.extended(unit_ideal(Q)) == 1
    chi12 = QuadCharacter(Q.elem(12))
    assert chi12.extended(principal_ideal(Q.elem(5))) == -1  # kronecker(12, 5)


def test_coefficients_examples(Q, Q5):
    chi = QuadCharacter(Q.elem(-4))
    _, sums = chi.coefficients(5)
    assert sums[1:] == [1, 0, -1, 0, 1]
    # a square discriminant gives the coefficients of zeta_K-like positivity
    chisq = QuadCharacter(Q.elem(4))
    _, sums = chisq.coefficients(8)
    assert all(v >= 0 for v in sums[1:])
    chi5 = QuadCharacter(make_field(5).elem(-4))
    per_ideal, _ = chi5.coefficients(20)
    for a, v in per_ideal.items():
        fac = a.factor()
        if len(fac) == 1 and fac[0][1] == 1 and a.gcd(chi5.modulus).is_unit_ideal():
            assert v == chi5.at_prime(fac[0][0])


def test_divisor_sum_identity_per_ideal(test_fields):
    # chi(a) = sum over t | f, d | f/t with t d^2 | a of
    #          mu(t) chi'(t) N(d) chi'(a / t d^2)
    for K in test_fields:
        for info in discriminant_classes(K, 20):
            chi = QuadCharacter(info)
            f = info.f_delta
            tds = [
                (t, dd)
                for t in f.divisors()
                for dd in f.divide_exact(t).divisors()
            ]
            for n in range(1, 40):
                for a in ideals_of_norm(K, n):
                    total = 0
                    for t, dd in tds:
                        td2 = t * dd * dd
                        if not td2.divides(a):
                            continue
                        total += (
                            t.moebius()
                            * chi.primitive(t)
                            * dd.norm_int()
                            * chi.primitive(a.divide_exact(td2))
                        )
                    assert total == chi.extended(a), (info.delta, a)


def test_multiplicativity_coprime(test_fields):
    rng = random.Random(31)
    for K in test_fields:
        infos = discriminant_classes(K, 20)
        pool = [a for n in range(1, 30) for a in ideals_of_norm(K, n)]
        for info in infos[:6]:
            chi = QuadCharacter(info)
            done = 0
            while done < 40:
                a, b = rng.choice(pool), rng.choice(pool)
                if not a.gcd(b).is_unit_ideal():
                    continue
                assert chi.extended(a * b) == chi.extended(a) * chi.extended(b)
                done += 1
