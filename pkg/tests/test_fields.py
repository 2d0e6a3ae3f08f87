import random

import pytest

from g2real.fields import (
    CubicAlgebra,
    EnumerationError,
    FieldError,
    PrimeField,
    QuadraticEtale,
    RationalField,
    cubic_is_irreducible,
    norm_one_elements,
    norm_quotient_report,
)

k7 = PrimeField(7)
k5 = PrimeField(5)


# ---------------------------------------------------------------------------
# ground fields
# ---------------------------------------------------------------------------

def test_prime_field_rejects_bad_moduli():
    with pytest.raises(FieldError):
        PrimeField(6)
    with pytest.raises(FieldError):
        PrimeField(2)
    with pytest.raises(FieldError):
        PrimeField(2**31 + 11)


def test_prime_field_arithmetic():
    assert k7.mul(3, 5) == 1
    assert k7.inv(3) == 5
    assert k7.sqrt(2) in (3, 4)
    with pytest.raises(FieldError):
        k7.sqrt(3)


def test_tonelli_shanks_large_prime():
    p = PrimeField(2**31 - 1)
    for a in (2, 5, 1234567):
        sq = p.mul(a, a)
        r = p.sqrt(sq)
        assert p.mul(r, r) == sq


def test_rationals_lowest_terms():
    Q = RationalField()
    x = Q.div(Q.element(6), Q.element(4))
    assert Q.to_text(x) == "3/2"
    assert Q.is_square(Q.element(4) / 9)
    assert not Q.is_square(Q.element(-4))


# ---------------------------------------------------------------------------
# quadratic etale algebras
# ---------------------------------------------------------------------------

def test_sigma_field_case():
    L = QuadraticEtale(k7, 3)
    assert L.sigma((1, 2)) == (1, 5)


def test_sigma_split_case_swaps():
    L = QuadraticEtale(k7)
    assert L.sigma((4, 1)) == (1, 4)


def test_sigma_is_an_involution():
    L = QuadraticEtale(k7, 3)
    rng = random.Random(1)
    for _ in range(100):
        x = L.random(rng)
        assert L.eq(L.sigma(L.sigma(x)), x)


def test_sigma_fixed_set_is_exactly_k():
    for L in (QuadraticEtale(k7, 3), QuadraticEtale(k7)):
        fixed = [x for x in L.elements() if L.eq(L.sigma(x), x)]
        assert len(fixed) == 7
        assert all(L.in_base(x) for x in fixed)


def test_sigma_is_multiplicative():
    L = QuadraticEtale(k5, 2)
    rng = random.Random(2)
    for _ in range(100):
        x, y = L.random(rng), L.random(rng)
        assert L.eq(L.sigma(L.mul(x, y)), L.mul(L.sigma(x), L.sigma(y)))


def test_norm_and_trace():
    L = QuadraticEtale(k7, 3)
    assert L.norm((1, 2)) == 3  # 1 - 4*3 = -11 = 3 mod 7
    assert L.trace((1, 2)) == 2
    Ls = QuadraticEtale(k7)
    assert Ls.norm((3, 4)) == 5  # split norm is the product
    assert L.norm(L.one) == 1


def test_norm_is_multiplicative_and_onto():
    L = QuadraticEtale(k7, 3)
    rng = random.Random(3)
    for _ in range(100):
        x, y = L.random(rng), L.random(rng)
        assert k7.eq(L.norm(L.mul(x, y)), k7.mul(L.norm(x), L.norm(y)))
    image = {L.norm(x) for x in L.elements() if L.is_unit(x)}
    assert image == set(range(1, 7))


def test_split_algebra_needs_square_c():
    with pytest.raises(FieldError):
        QuadraticEtale(k7, 2)  # 2 = 3^2 mod 7 is a square
    QuadraticEtale(k7, 3)  # fine


# ---------------------------------------------------------------------------
# cubic algebras
# ---------------------------------------------------------------------------

def test_cubic_norm_of_generator_is_constant_term():
    # E = L[t]/(t^3 - a) has N(t) = a
    L = QuadraticEtale(k7, 3)
    E = CubicAlgebra(L, (-4, 0, 0))
    assert L.eq(E.norm(E.gen), L.embed(4))


def test_cubic_norm_of_scalar_is_cube():
    L = QuadraticEtale(k5, 2)
    E = CubicAlgebra(L, (1, 1, 0))
    rng = random.Random(4)
    for _ in range(20):
        lam = L.random(rng)
        assert L.eq(E.norm(E.embed(lam)), L.pow(lam, 3))


def test_cubic_norm_multiplicative_on_units():
    L = QuadraticEtale(k5, 2)
    E = CubicAlgebra(L, (1, 1, 0))
    rng = random.Random(5)
    count = 0
    while count < 1000:
        x, y = E.random(rng), E.random(rng)
        if not (E.is_unit(x) and E.is_unit(y)):
            continue
        assert L.eq(E.norm(E.mul(x, y)), L.mul(E.norm(x), E.norm(y)))
        count += 1


def test_cubic_norm_surjective_on_units():
    # exhaustive over E = F_{5^6}: the norm image on units is all of L*
    L = QuadraticEtale(k5, 2)
    E = CubicAlgebra(L, (1, 1, 0))
    assert E.is_field()
    image = set()
    for x in E.elements():
        if E.is_unit(x):
            image.add(E.norm(x))
    units = {x for x in L.elements() if L.is_unit(x)}
    assert image == units


def test_sigma_E_is_an_involution_extending_sigma():
    L = QuadraticEtale(k5, 2)
    E = CubicAlgebra(L, (1, 1, 0))
    rng = random.Random(6)
    for _ in range(100):
        x, y = E.random(rng), E.random(rng)
        assert E.eq(E.sigma(E.sigma(x)), x)
        assert E.eq(E.sigma(E.mul(x, y)), E.mul(E.sigma(x), E.sigma(y)))
    lam = L.random(rng)
    assert E.eq(E.sigma(E.embed(lam)), E.embed(L.sigma(lam)))


def test_sigma_E_fixed_set_is_the_k_coefficient_subalgebra():
    L = QuadraticEtale(k5, 2)
    E = CubicAlgebra(L, (1, 1, 0))
    fixed = sum(1 for x in E.elements() if E.eq(E.sigma(x), x))
    assert fixed == 5**3


def test_cubic_is_irreducible_examples():
    # cubes mod 7 are {1, 6}: X^3 - 4 has no root
    assert cubic_is_irreducible(k7, (-4, 0, 0))
    assert not cubic_is_irreducible(k7, (-1, 0, 0))  # root 1
    # (X - 2)^3 = X^3 - 6X^2 + 12X - 8
    assert not cubic_is_irreducible(k7, (-8, 12, -6))


def test_cubic_is_irreducible_over_rationals():
    Q = RationalField()
    assert cubic_is_irreducible(Q, (Q.element(-1), Q.element(-3), Q.zero))
    assert not cubic_is_irreducible(Q, (Q.element(-8), Q.zero, Q.zero))  # root 2


def test_cubic_is_irreducible_large_prime():
    p = PrimeField(1000003)
    assert p.p % 3 == 1
    # find a non-cube quickly and check the binomial criterion matches
    e = (p.p - 1) // 3
    a = next(x for x in range(2, 50) if pow(x, e, p.p) != 1)
    assert cubic_is_irreducible(p, (p.neg(a), 0, 0))


def test_non_etale_cubic_accepted_with_flag():
    L = QuadraticEtale(k7, 3)
    E = CubicAlgebra(L, (-8, 12, -6))  # (X - 2)^3
    assert not E.etale
    assert not E.is_field()


# ---------------------------------------------------------------------------
# norm-one groups and quotients
# ---------------------------------------------------------------------------

def test_norm_one_count_quadratic_field():
    L = QuadraticEtale(k7, 3)
    assert sum(1 for _ in norm_one_elements(L)) == 8  # q + 1


def test_norm_one_split():
    L = QuadraticEtale(k7)
    elems = list(norm_one_elements(L))
    assert len(elems) == 6  # q - 1
    assert all(k7.eq(k7.mul(a, b), k7.one) for a, b in elems)


def test_norm_one_cubic_algebra():
    L = QuadraticEtale(k5, 2)
    E = CubicAlgebra(L, (1, 1, 0))
    elems = list(norm_one_elements(E))
    assert len(elems) == 5**3 + 1  # kernel of the norm to the fixed field
    for x in elems[:10]:
        assert E.eq(E.mul(x, E.sigma(x)), E.one)


def test_norm_one_rejects_rationals():
    Q = RationalField()
    L = QuadraticEtale(Q, -1)
    with pytest.raises(EnumerationError):
        list(norm_one_elements(L))


def test_norm_quotient_report_f5():
    L = QuadraticEtale(k5, 2)
    E = CubicAlgebra(L, (1, 1, 0))
    assert norm_quotient_report(E) == (1, 1)


def test_norm_quotient_report_reducible_chi():
    # E not a field: quotients on the unit group of the etale algebra
    L = QuadraticEtale(k5, 2)
    E = CubicAlgebra(L, (2, -2, -1))  # (X - 1)(X^2 - 2)
    assert norm_quotient_report(E) == (1, 1)


def test_norm_quotient_rejects_rationals():
    Q = RationalField()
    L = QuadraticEtale(Q, -1)
    E = CubicAlgebra(L, (-1, -3, 0))
    with pytest.raises(EnumerationError):
        norm_quotient_report(E)


# ---------------------------------------------------------------------------
# exact ring axioms (seeded sample)
# ---------------------------------------------------------------------------

def test_ring_axioms_sampled():
    L = QuadraticEtale(k7, 3)
    E = CubicAlgebra(L, (-4, 0, 0))
    rng = random.Random(7)
    for _ in range(200):
        x, y, z = E.random(rng), E.random(rng), E.random(rng)
        assert E.eq(E.mul(E.add(x, y), z), E.add(E.mul(x, z), E.mul(y, z)))
        assert E.eq(E.mul(x, E.mul(y, z)), E.mul(E.mul(x, y), z))
        assert E.eq(E.mul(x, y), E.mul(y, x))
        assert E.eq(E.mul(x, E.one), x)


def test_norm_equation_solver_large_prime():
    from g2real.composition import _solve_norm

    p = PrimeField(1000003)
    L = QuadraticEtale(p, p.nonsquare())
    for target in (2, 3, 999983):
        s = _solve_norm(L, p.element(target))
        assert s is not None
        assert p.eq(L.norm(s), p.element(target))
