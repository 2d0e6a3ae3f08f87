import random

import pytest

from g2real import linalg
from g2real.automorphisms import (
    certify_automorphism,
    extract_sl3_matrix,
    extract_su_matrix,
    hermitian_form,
    in_su,
    involution_conjugacy_classes,
    involution_from_quaternion,
    involution_from_symmetric,
    quadratic_subfield_frame,
    random_sl3,
    random_su,
    semidirect_split,
    sl1_action,
    sl3_embed,
    split_frame_from_idempotent,
    su_embed,
    zorn_split_frame,
    zorn_swap,
)
from g2real.composition import (
    hermitian_space,
    octonion_from_hermitian,
    orthogonal_complement,
    zorn_algebra,
)
from g2real.automorphisms import build_rho_on_zorn_diagonal
from g2real.fields import FieldError, PrimeField, QuadraticEtale

k5 = PrimeField(5)
k7 = PrimeField(7)


@pytest.fixture(scope="module")
def zorn7():
    return zorn_algebra(k7)


@pytest.fixture(scope="module")
def frame7(zorn7):
    return zorn_split_frame(zorn7)


@pytest.fixture(scope="module")
def su_setup():
    L = QuadraticEtale(k5, 2)
    O = octonion_from_hermitian(hermitian_space(L, (1, 1, 1)))
    fr = quadratic_subfield_frame(O, O.basis_vec(1))
    return L, O, fr


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

def test_identity_certifies(zorn7):
    out = certify_automorphism(linalg.identity(k7, 8), zorn7)
    assert out.certified


def test_minus_identity_fails_at_one(zorn7):
    M = linalg.scalar_mat(k7, k7.neg(k7.one), linalg.identity(k7, 8))
    out = certify_automorphism(M, zorn7)
    assert not out.certified
    assert out.failure == "one"


def test_non_multiplicative_map_reports_first_bad_pair(zorn7):
    M = [list(r) for r in linalg.identity(k7, 8)]
    M[1][1] = k7.element(2)  # scaling one coordinate breaks multiplicativity
    out = certify_automorphism(linalg.mat(M), zorn7)
    assert not out.certified
    assert isinstance(out.failure, tuple)


def test_sl3_embed_certifies_random(zorn7, frame7):
    rng = random.Random(1)
    for _ in range(10):
        A = random_sl3(k7, rng)
        t = sl3_embed(A, frame7)
        assert t.certified


def test_certified_maps_preserve_norm_and_trace_zero_space(zorn7, frame7):
    rng = random.Random(2)
    A = random_sl3(k7, rng)
    t = sl3_embed(A, frame7)
    for _ in range(300):
        x = zorn7.random(rng)
        assert k7.eq(zorn7.norm(t.apply(x)), zorn7.norm(x))
        assert k7.eq(zorn7.trace(t.apply(x)), zorn7.trace(x))


def test_sl3_embed_rejects_det_not_one(frame7):
    A = ((k7.element(2), k7.zero, k7.zero), (k7.zero, k7.one, k7.zero), (k7.zero, k7.zero, k7.one))
    with pytest.raises(FieldError):
        sl3_embed(A, frame7)


# ---------------------------------------------------------------------------
# SL(3) embedding
# ---------------------------------------------------------------------------

def test_sl3_identity(frame7):
    I = linalg.identity(k7, 3)
    assert sl3_embed(I, frame7).is_identity()


def test_sl3_homomorphism(frame7):
    rng = random.Random(3)
    for _ in range(50):
        A = random_sl3(k7, rng)
        B = random_sl3(k7, rng)
        lhs = sl3_embed(A, frame7).compose(sl3_embed(B, frame7))
        rhs = sl3_embed(linalg.mat_mul(k7, A, B), frame7)
        assert lhs.eq(rhs)


def test_sl3_fixed_subalgebra_is_diagonal(frame7):
    rng = random.Random(4)
    A = random_sl3(k7, rng, avoid_eigenvalue_one=True)
    t = sl3_embed(A, frame7)
    fixed = t.fixed_space()
    assert len(fixed) == 2
    # all fixed vectors are diagonal: only coordinates 0 and 7 nonzero
    for v in fixed:
        assert all(k7.is_zero(v[i]) for i in range(1, 7))


def test_sl3_injective(frame7):
    rng = random.Random(5)
    A = random_sl3(k7, rng)
    B = random_sl3(k7, rng)
    if not linalg.mat_eq(k7, A, B):
        assert not sl3_embed(A, frame7).eq(sl3_embed(B, frame7))


def test_sl3_on_nonstandard_frame(zorn7):
    fr = split_frame_from_idempotent(zorn7, zorn7.basis_vec(0))
    rng = random.Random(6)
    A = random_sl3(k7, rng)
    B = random_sl3(k7, rng)
    lhs = sl3_embed(A, fr).compose(sl3_embed(B, fr))
    assert lhs.eq(sl3_embed(linalg.mat_mul(k7, A, B), fr))


def test_extract_roundtrip(frame7):
    rng = random.Random(7)
    A = random_sl3(k7, rng)
    t = sl3_embed(A, frame7)
    assert linalg.mat_eq(k7, extract_sl3_matrix(t, frame7), A)


# ---------------------------------------------------------------------------
# the swap and the conjugation extension
# ---------------------------------------------------------------------------

def test_swap_is_an_involution(zorn7):
    rho = zorn_swap(zorn7)
    assert rho.certified
    assert rho.compose(rho).is_identity()


def test_swap_conjugation_identity(zorn7, frame7):
    rho = zorn_swap(zorn7)
    rng = random.Random(8)
    for _ in range(25):
        A = random_sl3(k7, rng)
        lhs = rho.compose(sl3_embed(A, frame7)).compose(rho)
        At_inv = linalg.transpose(linalg.inverse3(k7, A))
        assert lhs.eq(sl3_embed(At_inv, frame7))


def test_general_rho_construction_matches_swap_on_standard_frame(zorn7):
    rho = build_rho_on_zorn_diagonal(zorn7)
    assert rho.eq(zorn_swap(zorn7))


def test_rho_restricted_to_diagonal_swaps(zorn7):
    rho = zorn_swap(zorn7)
    e0 = zorn7.basis_vec(0)
    e7 = zorn7.basis_vec(7)
    assert zorn7.eq(rho.apply(e0), e7)
    assert zorn7.eq(rho.apply(e7), e0)


def test_rho_normalizes_the_pointwise_stabilizer(zorn7, frame7):
    rho = zorn_swap(zorn7)
    rng = random.Random(9)
    for _ in range(20):
        A = random_sl3(k7, rng)
        g = rho.compose(sl3_embed(A, frame7)).compose(rho)
        # conjugate still fixes the diagonal pointwise
        assert zorn7.eq(g.apply(zorn7.basis_vec(0)), zorn7.basis_vec(0))
        assert zorn7.eq(g.apply(zorn7.basis_vec(7)), zorn7.basis_vec(7))


def test_semidirect_split_roundtrip(zorn7, frame7):
    rho = zorn_swap(zorn7)
    rng = random.Random(10)
    g0, e0 = semidirect_split(rho, frame7)
    assert e0 == 1 and g0.is_identity()
    for _ in range(25):
        A = random_sl3(k7, rng)
        h = sl3_embed(A, frame7)
        g, eps = semidirect_split(h, frame7)
        assert eps == 0 and g.eq(h)
        h2 = h.compose(rho)
        g2, eps2 = semidirect_split(h2, frame7)
        assert eps2 == 1
        recomposed = g2.compose(rho) if eps2 else g2
        assert recomposed.eq(h2)


def test_semidirect_split_rejects_non_stabilizing(zorn7, frame7):
    # an automorphism fixing a different split etale algebra pointwise moves
    # the diagonal
    e2 = zorn7.add(zorn7.basis_vec(0), zorn7.basis_vec(1))  # (1, e1; 0, 0)
    assert zorn7.eq(zorn7.mul(e2, e2), e2)
    fr2 = split_frame_from_idempotent(zorn7, e2)
    rng = random.Random(99)
    h = None
    for _ in range(20):
        A = random_sl3(k7, rng, avoid_eigenvalue_one=True)
        cand = sl3_embed(A, fr2)
        img0 = cand.apply(zorn7.basis_vec(0))
        img7 = cand.apply(zorn7.basis_vec(7))
        diag_ok = all(k7.is_zero(img0[i]) for i in range(1, 7)) and all(
            k7.is_zero(img7[i]) for i in range(1, 7)
        )
        if not diag_ok:
            h = cand
            break
    assert h is not None
    with pytest.raises(FieldError):
        semidirect_split(h, frame7)


# ---------------------------------------------------------------------------
# involutions
# ---------------------------------------------------------------------------

def test_involution_from_quaternion(zorn7):
    g = zorn7.sub(zorn7.basis_vec(0), zorn7.basis_vec(7))
    a = zorn7.add(zorn7.basis_vec(1), zorn7.basis_vec(4))
    D = (zorn7.one, g, a, zorn7.mul(g, a))
    iota = involution_from_quaternion(zorn7, D)
    assert iota.certified
    assert iota.compose(iota).is_identity()
    fixed = iota.fixed_space()
    assert len(fixed) == 4
    assert linalg.rank(k7, linalg.mat(tuple(fixed) + D)) == 4


def test_involution_from_quaternion_rejects_degenerate(zorn7):
    bad = (zorn7.one, zorn7.basis_vec(1), zorn7.basis_vec(2), zorn7.basis_vec(3))
    with pytest.raises(FieldError):
        involution_from_quaternion(zorn7, bad)


def test_involution_from_symmetric(frame7):
    S = linalg.identity(k7, 3)
    iota = involution_from_symmetric(S, frame7)
    assert iota.eq(zorn_swap(frame7.alg))
    rng = random.Random(11)
    count = 0
    while count < 25:
        A = random_sl3(k7, rng)
        # build a symmetric determinant-1 matrix as T A with T the first
        # symmetric intertwiner; easier: S = A tA scaled to det 1 when possible
        S = linalg.mat_mul(k7, A, linalg.transpose(A))
        d = linalg.det3(k7, S)
        # d is a square; rescale to det 1 if d is a cube
        fixed = None
        for c in range(1, 7):
            if k7.eq(k7.mul(d, pow(c, 3, 7)), k7.one):
                fixed = linalg.scalar_mat(k7, c, S)
                break
        if fixed is None:
            continue
        iota = involution_from_symmetric(fixed, frame7)
        assert iota.compose(iota).is_identity()
        count += 1


def test_involution_from_symmetric_rejects_asymmetric(frame7):
    A = ((k7.one, k7.one, k7.zero), (k7.zero, k7.one, k7.zero), (k7.zero, k7.zero, k7.one))
    with pytest.raises(FieldError):
        involution_from_symmetric(A, frame7)


def test_nonsymmetric_composition_is_not_an_involution(frame7):
    # (sl3(S) rho)^2 = sl3(S tS^-1): not the identity when S is asymmetric
    S = ((k7.one, k7.one, k7.zero), (k7.zero, k7.one, k7.zero), (k7.zero, k7.zero, k7.one))
    rho = zorn_swap(frame7.alg)
    m = sl3_embed(S, frame7).compose(rho)
    assert not m.compose(m).is_identity()


def test_sl3_rho_composition_identity(frame7):
    # (sl3(P) rho)(sl3(Q) rho) = sl3(P tQ^-1)
    rng = random.Random(12)
    rho = zorn_swap(frame7.alg)
    for _ in range(25):
        P = random_sl3(k7, rng)
        Qm = random_sl3(k7, rng)
        lhs = sl3_embed(P, frame7).compose(rho).compose(sl3_embed(Qm, frame7)).compose(rho)
        rhs = sl3_embed(
            linalg.mat_mul(k7, P, linalg.transpose(linalg.inverse3(k7, Qm))), frame7
        )
        assert lhs.eq(rhs)


# ---------------------------------------------------------------------------
# norm-one quaternion action
# ---------------------------------------------------------------------------

def _quaternion_data(alg):
    from g2real.automorphisms import _orthogonal_anisotropic

    g = alg.sub(alg.basis_vec(0), alg.basis_vec(7))
    a = alg.add(alg.basis_vec(1), alg.basis_vec(4))
    D = (alg.one, g, a, alg.mul(g, a))
    b = _orthogonal_anisotropic(alg, D)
    return D, b


def _random_norm_one(alg, D, rng):
    F = alg.field
    while True:
        coeffs = [F.random(rng) for _ in D]
        p = alg.zero_vec()
        for c, d in zip(coeffs, D):
            p = alg.add(p, alg.scale(c, d))
        n = alg.norm(p)
        if F.is_zero(n):
            continue
        if F.is_square(F.inv(n)):
            s = F.sqrt(F.inv(n))
            return alg.scale(s, p)


def test_sl1_identity_and_minus_one():
    Z = zorn_algebra(k5)
    D, b = _quaternion_data(Z)
    t1 = sl1_action(Z, D, b, Z.one)
    assert t1.is_identity()
    tm = sl1_action(Z, D, b, Z.neg(Z.one))
    assert tm.eq(involution_from_quaternion(Z, D))


def test_sl1_homomorphism():
    Z = zorn_algebra(k5)
    D, b = _quaternion_data(Z)
    rng = random.Random(13)
    for _ in range(25):
        p = _random_norm_one(Z, D, rng)
        q = _random_norm_one(Z, D, rng)
        lhs = sl1_action(Z, D, b, p).compose(sl1_action(Z, D, b, q))
        rhs = sl1_action(Z, D, b, Z.mul(p, q))
        assert lhs.eq(rhs)


def test_sl1_commutes_with_quaternion_involution():
    Z = zorn_algebra(k5)
    D, b = _quaternion_data(Z)
    iota = involution_from_quaternion(Z, D)
    rng = random.Random(14)
    for _ in range(10):
        p = _random_norm_one(Z, D, rng)
        t = sl1_action(Z, D, b, p)
        assert t.compose(iota).eq(iota.compose(t))


def test_sl1_rejects_non_norm_one():
    Z = zorn_algebra(k5)
    D, b = _quaternion_data(Z)
    with pytest.raises(FieldError):
        sl1_action(Z, D, b, Z.scale(k5.element(2), Z.one))


# ---------------------------------------------------------------------------
# SU(3) embedding
# ---------------------------------------------------------------------------

def test_su_identity(su_setup):
    L, O, fr = su_setup
    assert su_embed(linalg.identity(L, 3), fr).is_identity()


def test_frame_hermitian_values(su_setup):
    # direct evaluation of the form on the doubling frame: h(f_i, f_i) = 2 N(f_i)
    L, O, fr = su_setup
    k = O.field
    for i, fv in enumerate(fr.fs):
        hv = hermitian_form(fr, fv, fv)
        assert L.in_base(hv)
        assert k.eq(L.to_base(hv), k.mul(k.element(2), O.norm(fv)))
        assert k.eq(fr.H[i], L.to_base(hv))
    # off-diagonal values vanish: the frame is orthogonal
    for i in range(3):
        for j in range(i + 1, 3):
            assert L.is_zero(hermitian_form(fr, fr.fs[i], fr.fs[j]))


def test_su_homomorphism(su_setup):
    L, O, fr = su_setup
    rng = random.Random(15)
    for _ in range(25):
        A = random_su(L, fr.H, rng)
        B = random_su(L, fr.H, rng)
        lhs = su_embed(A, fr).compose(su_embed(B, fr))
        rhs = su_embed(linalg.mat_mul(L, A, B), fr)
        assert lhs.eq(rhs)


def test_su_rejects_non_unitary(su_setup):
    L, O, fr = su_setup
    A = linalg.scalar_mat(L, L.embed(k5.element(2)), linalg.identity(L, 3))
    with pytest.raises(FieldError):
        su_embed(A, fr)


def test_su_extract_roundtrip(su_setup):
    L, O, fr = su_setup
    rng = random.Random(16)
    A = random_su(L, fr.H, rng)
    t = su_embed(A, fr)
    assert linalg.mat_eq(L, extract_su_matrix(t, fr), A)


def test_frame_rho_properties(su_setup):
    L, O, fr = su_setup
    rho = fr.rho
    assert rho.certified
    assert rho.compose(rho).is_identity()
    # restriction to L is sigma: the generator is negated
    assert O.eq(rho.apply(fr.g), O.neg(fr.g))
    assert O.eq(rho.apply(fr.one), fr.one)
    # conjugation by rho applies sigma to the matrix entries
    rng = random.Random(17)
    A = random_su(L, fr.H, rng)
    Abar = linalg.map_entries(L.sigma, A)
    assert rho.compose(su_embed(A, fr)).compose(rho).eq(su_embed(Abar, fr))


def test_su_random_sampler_members(su_setup):
    L, O, fr = su_setup
    rng = random.Random(18)
    for _ in range(20):
        A = random_su(L, fr.H, rng)
        assert in_su(A, L, fr.H)


# ---------------------------------------------------------------------------
# involution conjugacy classes
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", [5, 7])
def test_involution_classes_single(p):
    alg = zorn_algebra(PrimeField(p))
    count, wit = involution_conjugacy_classes(alg)
    assert count == 1
    conj, i1, i2 = wit["conjugator"], wit["iota1"], wit["iota2"]
    assert conj.certified
    assert conj.compose(i1).compose(conj.inverse()).eq(i2)
    assert not i1.eq(i2)
