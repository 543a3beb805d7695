import random
from fractions import Fraction

import pytest

from relquad.field import make_field
from relquad.ideals import (
    Ideal,
    class_number,
    count_ideals_of_norm,
    ideal_from_generators,
    ideals_of_norm,
    parse_ideal,
    primes_above,
    principal_ideal,
    unit_ideal,
)


def p2_of(K10):
    return ideal_from_generators(K10, [K10.elem(2), K10.sqrt_gen])


def test_from_generators_examples(Q10):
    p2 = p2_of(Q10)
    assert p2.norm() == 2
    assert unit_ideal(Q10) == ideal_from_generators(Q10, [Q10.one])
    p3 = ideal_from_generators(Q10, [Q10.elem(3), Q10.sqrt_gen + 1])
    assert p3.norm() == 3  # HNF determinant
    with pytest.raises(ValueError):
        ideal_from_generators(Q10, [Q10.zero])


def test_hnf_unique_under_regeneration(Q10, Q5):
    rng = random.Random(11)
    for K in (Q10, Q5):
        for _ in range(40):
            gens = [
                K.elem(rng.randint(-9, 9), rng.randint(-9, 9))
                for _ in range(3)
            ]
            if not any(gens):
                continue
            I = ideal_from_generators(K, gens)
            rng.shuffle(gens)
            # rescale by a unit and regenerate from products
            J = ideal_from_generators(K, [g * -1 for g in gens] + [gens[0] + gens[1]])
            assert I == J and I.hnf == J.hnf and I.den == J.den


def test_arithmetic_examples(Q10, Q):
    p2 = p2_of(Q10)
    assert p2 * p2 == principal_ideal(Q10.elem(2))  # 2 ramifies, 2 | 40
    a = ideal_from_generators(Q10, [Q10.elem(3, 1), Q10.elem(7, 2)])
    assert a * a.inverse() == unit_ideal(Q10)
    four, six = principal_ideal(Q.elem(4)), principal_ideal(Q.elem(6))
    assert four.gcd(six) == principal_ideal(Q.elem(2))
    assert four.gcd(six) * four.lcm(six) == four * six


def test_norm_multiplicative_random(test_fields):
    rng = random.Random(3)
    for K in test_fields:
        pool = [a for n in range(1, 40) for a in ideals_of_norm(K, n)]
        for _ in range(2500):
            a, b = rng.choice(pool), rng.choice(pool)
            assert (a * b).norm() == a.norm() * b.norm()


def test_factor_examples(Q10, Q5, Q):
    p2 = p2_of(Q10)
    f = principal_ideal(Q10.elem(-4)).factor()
    assert f == [(next(P for P, _ in f), 4)] and f[0][0].ideal == p2
    f12 = principal_ideal(Q.elem(12)).factor()
    assert [(P.p, e) for P, e in f12] == [(2, 2), (3, 1)]
    delta = Q5.elem(-2, -1)  # -(5+sqrt5)/2, norm 5
    fd = principal_ideal(delta).factor()
    assert len(fd) == 1 and fd[0][1] == 1 and fd[0][0].p == 5 and fd[0][0].ramified


@pytest.mark.parametrize("bound", [500])
def test_factor_roundtrip_sweep(test_fields, bound):
    # factor() asserts that the prime powers reassemble to the input
    for K in test_fields:
        for n in range(1, bound + 1):
            for a in ideals_of_norm(K, n):
                a.factor()


def test_residues_examples(Q10):
    two = principal_ideal(Q10.elem(2))
    reps = two.residues()
    assert len(reps) == 4
    assert {(int(r.x), int(r.y)) for r in reps} == {(0, 0), (1, 0), (0, 1), (1, 1)}
    p2 = p2_of(Q10)
    assert len(p2.residues()) == 2
    assert [e.x for e in unit_ideal(Q10).residues()] == [0]
    with pytest.raises(ValueError):
        (p2 * Fraction(1, 2)).residues()


def test_residues_pairwise_incongruent(Q10, Qm15):
    for K in (Q10, Qm15):
        a = ideals_of_norm(K, 12)[0]
        reps = a.residues()
        assert len(reps) == 12
        seen = {a.reduce(r).key() for r in reps}
        assert len(seen) == 12


def test_crt_bijective(test_fields):
    rng = random.Random(5)
    for K in test_fields:
        pool = [i for n in range(2, 15) for i in ideals_of_norm(K, n)]
        done = 0
        while done < 6:
            a, b = rng.choice(pool), rng.choice(pool)
            if not a.is_coprime(b):
                continue
            ab = a * b
            if ab.norm_int() > 200:
                continue
            images = {(a.reduce(r).key(), b.reduce(r).key()) for r in ab.residues()}
            assert len(images) == ab.norm_int() == a.norm_int() * b.norm_int()
            done += 1


def test_principal_examples(Q10, Q5):
    s5 = principal_ideal(Q5.sqrt_gen)
    g = s5.principal_generator()
    assert g is not None and principal_ideal(g) == s5
    assert p2_of(Q10).principal_generator() is None  # class number 2
    p3 = ideal_from_generators(Q10, [Q10.elem(3), Q10.sqrt_gen + 1])
    assert p3.principal_generator() is None
    # fractional principal
    half = principal_ideal(Q10.elem(Fraction(3, 2), Fraction(1, 2)))
    g = half.principal_generator()
    assert g is not None and principal_ideal(g) == half


def test_principal_matches_norm_form_oracle(Q10):
    # p principal in Q(sqrt 10) iff x^2 - 10 y^2 = +-p has a solution;
    # box bound 70 covers norms <= 100 since |x| <= sqrt(p)*eps < 62.
    # (The class split is 11 principal / 16 not at this bound; an exact
    # 50/50 split only holds asymptotically.)
    prime_ideals = []
    for p in range(2, 101):
        if all(p % q for q in range(2, p)):
            prime_ideals += [P for P in primes_above(Q10, p) if P.norm() <= 100]
    by_class = {True: 0, False: 0}
    for P in prime_ideals:
        found = P.ideal.principal_generator() is not None
        if P.residue_degree == 1:
            p = P.p
            sol = any(
                abs(x * x - 10 * y * y) == p
                for x in range(71)
                for y in range(71)
            )
            assert sol == found
        by_class[found] += 1
    assert by_class[True] == 11 and by_class[False] == 16


def test_divisor_sums(Q10, Q):
    p2 = p2_of(Q10)
    assert p2.moebius() == -1
    assert (p2 * p2).moebius() == 0
    two = principal_ideal(Q10.elem(2))
    assert two.divisors() == [unit_ideal(Q10), p2, two]
    assert principal_ideal(Q.elem(2)).sigma(1) == 3
    assert principal_ideal(Q.elem(6)).sigma(-1) == Fraction(12, 6)


def test_ideals_of_norm(Q10):
    assert ideals_of_norm(Q10, 2) == [p2_of(Q10)]
    assert len(ideals_of_norm(Q10, 3)) == 2  # kronecker(40,3)=1, split
    assert ideals_of_norm(Q10, 1) == [unit_ideal(Q10)]
    for n in range(1, 80):
        assert len(ideals_of_norm(Q10, n)) == count_ideals_of_norm(Q10, n)


def test_class_numbers():
    assert class_number(make_field(5)) == 1
    assert class_number(make_field(10)) == 2
    assert class_number(make_field(-15)) == 2
    assert class_number(make_field(-1)) == 1
    assert class_number(make_field(195)) == 4  # Cl(K) = [2,2] for disc 780


def test_valuation_fractional(Q10):
    p2 = p2_of(Q10)
    a = p2.ideal if hasattr(p2, "ideal") else p2
    frac = a * Fraction(1, 2)
    # v_p2((1/2) * p2) = 1 - 2 = -1
    P2 = next(P for P, _ in principal_ideal(Q10.elem(2)).factor())
    assert frac.valuation(P2) == -1


def test_parse_and_pretty(Q10, Q):
    p2 = p2_of(Q10)
    assert parse_ideal(Q10, str(p2)) == p2
    assert parse_ideal(Q10, "(2, w)") == p2
    assert parse_ideal(Q10, p2.pretty()) == p2
    assert parse_ideal(Q, "[12]/5") == principal_ideal(Q.elem(Fraction(12, 5)))
    assert principal_ideal(Q10.elem(2)).pretty() == "(2)"
    with pytest.raises(ValueError):
        parse_ideal(Q, "[[1,0],[0,1]]")
