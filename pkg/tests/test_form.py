"""The invariant form F, its kernel and the multiplication decomposition."""

import pytest

from quadact.catalog import TypeParams, build_corank1, build_type
from quadact.errors import DegreeNotTwo
from quadact.form import (
    choose_b0,
    compute_F,
    decompose_multiplication,
    invariance_identity_violations,
)
from quadact.scalars import ExactField, QI


def test_F_normalization_and_kernel_b0():
    A = build_type(TypeParams("B0", p=3))
    F = compute_F(A)
    f = A.field
    # F(1, b0) = -1 and F(1, w) = 0 on W
    assert f.is_zero(F.apply(A.unit(), F.b0) + f.one)
    for w in A.W.basis:
        assert f.is_zero(F.apply(A.unit(), list(w)))
    # F(e_i, e_j) = delta_ij on the e-block, kernel = <mu1, mu2>
    for i in range(3, 6):
        for j in range(3, 6):
            want = f.one if i == j else f.zero
            assert f.is_zero(F.matrix[i][j] - want)
    assert F.corank == 2
    assert F.kernel.contains(A.basis_vec(1)) and F.kernel.contains(A.basis_vec(2))
    assert F.kernel_in_W()


def test_choose_b0_requires_degree_two():
    f = ExactField()
    from quadact.algebra import LocalAlgebra
    labels = ["1", "x", "x2"]
    table = {(1, 1): {2: f.one}}
    P = LocalAlgebra(f, labels, table, [[f.zero, f.one, f.zero],
                                        [f.zero, f.zero, f.one]])
    with pytest.raises(DegreeNotTwo):
        choose_b0(P)


def test_choose_b0_recovers_catalog_vector():
    A = build_type(TypeParams("C2", s=1, p=1, delta=1, lam=[[3]]))
    b0 = choose_b0(A)
    assert b0 == A.basis_vec(A.dim - 1)


def test_corank_spread():
    assert compute_F(build_corank1([[1, 0], [0, 2]])).corank == 1
    from quadact.catalog import build_corank0
    assert compute_F(build_corank0(3)).corank == 0


def test_invariance_identity_all_types():
    for prm in (TypeParams("A2", s=1, p=2, delta=1, lam=[[1, 0], [0, 2]]),
                TypeParams("C1", s=2, delta=0),
                TypeParams("B1", s=2, delta=1)):
        A = build_type(prm)
        F = compute_F(A)
        assert invariance_identity_violations(A, F) == []


def test_invariance_identity_detects_corruption():
    A = build_type(TypeParams("B0", p=3))
    f = A.field
    # corrupt e1^2 so that triple products escape W; the derivation identity
    # at d = 2 is exactly the m^3-inside-W property, so the corrupted table
    # fails against the original form
    table = dict(A.table)
    table[(3, 3)] = {A.dim - 1: f.one, 3: f.one}
    from quadact.algebra import LocalAlgebra
    B = LocalAlgebra(f, A.labels, table, [list(r) for r in A.W.basis])
    F = compute_F(A)
    assert invariance_identity_violations(B, F) != []


def test_decomposition_identity_and_triangularity():
    A = build_type(TypeParams("B0", p=3))
    F = compute_F(A)
    dec = decompose_multiplication(A, F)
    assert dec.identity_holds(A, F)
    f = A.field
    # mu1 * m = 0 and mu2 * m inside <mu1>
    mu1, mu2 = dec.mus
    for i in range(1, A.dim):
        img1 = A.multiply(mu1, A.basis_vec(i))
        assert all(f.is_zero(x) for x in img1)
    # V1(mu2, mu2) = 1 for B0; V2 vanishes identically on V^(1) x W
    i_mu2 = 2
    assert f.is_zero(dec.V[0][i_mu2][i_mu2] - f.one)
    assert all(f.is_zero(x) for row in dec.V[1] for x in row)


def test_decomposition_corank_zero():
    from quadact.catalog import build_corank0
    A = build_corank0(3)
    F = compute_F(A)
    dec = decompose_multiplication(A, F)
    assert dec.mus == []
    assert dec.identity_holds(A, F)


def test_lemma_m2_inside_kernel_plus_b0():
    for prm in (TypeParams("A1", s=2, delta=1), TypeParams("C0", p=3, delta=0)):
        A = build_type(prm)
        F = compute_F(A)
        f = A.field
        m2 = A.power_subspace(2)
        from quadact.linalg import Subspace
        span = Subspace(f, A.dim, [list(r) for r in F.kernel.basis] + [list(F.b0)])
        assert span.contains_space(m2)
