"""LocalAlgebra axioms, powers, degree and annihilators."""

import random

import pytest

from quadact.algebra import AlgebraElement, LocalAlgebra
from quadact.catalog import TypeParams, build_lowdim, build_type
from quadact.errors import NotAssociative, NotLocal
from quadact.linalg import Subspace
from quadact.scalars import ExactField, QI


def _basis_rows(field, n, idxs):
    rows = []
    for k in idxs:
        r = [field.zero] * n
        r[k] = field.one
        rows.append(r)
    return rows


def test_validate_b0_catalog():
    A = build_type(TypeParams("B0", p=3))
    rep = A.validate()
    assert rep.valid and rep.nilpotency_index == 3 and rep.degree == 2


def test_validate_rejects_nonassociative():
    f = ExactField()
    labels = ["1", "x", "y", "z"]
    # (x*x)*y = y*y = z but x*(x*y) = x*z = 0
    table = {(1, 1): {2: f.one}, (1, 2): {3: f.one}, (2, 2): {3: f.one}}
    A = LocalAlgebra(f, labels, table, _basis_rows(f, 4, [1, 2]))
    with pytest.raises(NotAssociative) as err:
        A.validate()
    assert err.value.witness is not None


def test_validate_rejects_idempotent():
    f = ExactField()
    labels = ["1", "x"]
    table = {(1, 1): {1: f.one}}  # x*x = x blocks nilpotency
    A = LocalAlgebra(f, labels, table, _basis_rows(f, 2, [1]))
    with pytest.raises(NotLocal):
        A.validate()


def test_multiply_bilinearity_in_b0():
    from quadact.catalog import build_lowdim
    A = build_lowdim("ld4_b0")
    f = A.field
    e1 = AlgebraElement(A, A.basis_vec(3))
    mu2 = AlgebraElement(A, A.basis_vec(2))
    mu1 = AlgebraElement(A, A.basis_vec(1))
    b0 = AlgebraElement(A, A.basis_vec(A.dim - 1))
    assert e1 * e1 == b0
    assert mu2 * mu2 == mu1
    two_e1 = AlgebraElement(A, [c * QI(2) for c in A.basis_vec(3)])
    assert (two_e1 + mu2) * mu2 == mu1
    one = AlgebraElement(A, A.unit())
    assert one * e1 == e1


def test_multiply_against_double_loop_oracle():
    A = build_type(TypeParams("A2", s=1, p=1, delta=1, lam=[[2]]))
    f = A.field
    rng = random.Random(11)
    for _ in range(10):
        x = [QI(rng.randint(-2, 2)) for _ in range(A.dim)]
        y = [QI(rng.randint(-2, 2)) for _ in range(A.dim)]
        got = A.multiply(x, y)
        want = [f.zero] * A.dim
        for i in range(A.dim):
            for j in range(A.dim):
                prod = A.product_of_basis(i, j)
                for k in range(A.dim):
                    want[k] = want[k] + x[i] * y[j] * prod[k]
        assert all(f.is_zero(a - b) for a, b in zip(got, want))


def test_power_subspace_chain():
    A = build_type(TypeParams("B0", p=3))
    m1 = A.power_subspace(1)
    m2 = A.power_subspace(2)
    m3 = A.power_subspace(3)
    assert m1.dim == A.dim - 1
    assert m2.dim == 2
    assert m3.dim == 0
    # chain is monotone and stabilizes at zero
    A2 = build_type(TypeParams("A1", s=2, delta=1))
    dims = [A2.power_subspace(k).dim for k in range(1, A2.dim + 1)]
    assert dims == sorted(dims, reverse=True)
    assert dims[-1] == 0


def test_dim_m2_reads_delta():
    A = build_type(TypeParams("A1", s=2, delta=1))
    assert A.power_subspace(2).dim == 3
    B = build_type(TypeParams("A1", s=2, delta=0))
    assert B.power_subspace(2).dim == 2


def test_degree():
    A = build_type(TypeParams("C0", p=2, delta=1))
    assert A.degree() == 2
    # projective-space pair: W = m gives the degree-1 marker
    f = ExactField()
    labels = ["1", "x", "x2"]
    table = {(1, 1): {2: f.one}}
    P = LocalAlgebra(f, labels, table, _basis_rows(f, 3, [1, 2]))
    assert P.degree() == 1
    # K[t]/(t^4) with the hyperplane missing t^3: cubic hypersurface
    labels = ["1", "t", "t2", "t3"]
    table = {(1, 1): {2: f.one}, (1, 2): {3: f.one}}
    C = LocalAlgebra(f, labels, table,
                     [[f.zero, f.one, f.zero, f.zero],
                      [f.zero, f.zero, f.one, f.zero]])
    assert C.degree() == 3


def test_annihilator_basics():
    A = build_type(TypeParams("B0", p=3))
    f = A.field
    m = A.maximal_ideal()
    zero = Subspace(f, A.dim)
    assert A.annihilator(zero, m) == m
    # {a in W : a * KerF = 0} excludes mu2 (mu2^2 = mu1)
    ker = Subspace(f, A.dim, _basis_rows(f, A.dim, [1, 2]))
    ann = A.annihilator(ker, A.W)
    assert ann.dim == A.W.dim - 1
    assert ann.contains(A.basis_vec(1))
    assert not ann.contains(A.basis_vec(2))


def test_annihilator_monotone():
    A = build_type(TypeParams("C0", p=2, delta=1))
    f = A.field
    small = Subspace(f, A.dim, _basis_rows(f, A.dim, [1]))
    large = Subspace(f, A.dim, _basis_rows(f, A.dim, [1, 2]))
    ann_small = A.annihilator(small, A.W)
    ann_large = A.annihilator(large, A.W)
    assert ann_small.contains_space(ann_large)
