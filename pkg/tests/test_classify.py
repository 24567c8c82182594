"""Flow-chart tags, structure-sequence invariants and terminal outcomes."""

import pytest

from quadact.catalog import (
    TypeParams,
    build_corank1,
    build_fixed_locus,
    build_type,
)
from quadact.classify import (
    classify_pair,
    fix_locus,
    has_unfixed_singularities,
    run_flowchart,
)
from quadact.errors import CorankNotTwo, FixedSingularLocus
from quadact.form import compute_F

TAGGED = [
    (TypeParams("A1", s=2, delta=1), ("A", 2, 2)),
    (TypeParams("A2", s=2, p=1, delta=0, lam=[[1]]), ("A", 2, 2)),
    (TypeParams("B0", p=3), ("B", 1, 0)),
    (TypeParams("B1", s=3, delta=0), ("B", 4, 3)),
    (TypeParams("B2", s=1, p=2, delta=1, lam=None), ("B", 2, 1)),
    (TypeParams("C0", p=2, delta=1), ("C", 1, 0)),
    (TypeParams("C1", s=1, delta=0), ("C", 2, 1)),
    (TypeParams("C2", s=2, p=1, delta=1, lam=[[0]]), ("C", 3, 2)),
]


@pytest.mark.parametrize("prm,expect", TAGGED, ids=[p.label for p, _ in TAGGED])
def test_flowchart_tags_roundtrip(prm, expect):
    A = build_type(prm)
    F = compute_F(A)
    assert has_unfixed_singularities(A, F)
    tag, seq = run_flowchart(A, F)
    assert (tag.x, tag.t, tag.s) == expect
    assert tag.type_label == prm.label
    assert seq.check_chain(A, tag.s)
    assert len(seq.upper) <= A.W.dim + 1


def test_codim_one_statements():
    A = build_type(TypeParams("C2", s=3, p=2, delta=0, lam=None))
    F = compute_F(A)
    tag, seq = run_flowchart(A, F)
    # codim(V^(1), W) = 1 under unfixed singularities
    assert seq.upper[0].dim - seq.upper[1].dim == 1
    for k in range(len(seq.upper) - 1):
        assert seq.upper[k].dim - seq.upper[k + 1].dim <= 1
    for k in range(tag.s):
        assert seq.lower[k + 1].dim - seq.lower[k].dim <= 1


def test_fix_locus_b0():
    A = build_type(TypeParams("B0", p=3))
    S = fix_locus(A)
    # span{mu1, b0}
    assert S.dim == 2
    assert S.contains(A.basis_vec(1))
    assert S.contains(A.basis_vec(A.dim - 1))


def test_fixed_locus_terminal_outcome():
    A = build_fixed_locus([[1, 0], [0, 2]], [[0, 1], [1, 0]])
    F = compute_F(A)
    assert not has_unfixed_singularities(A, F)
    with pytest.raises(FixedSingularLocus):
        run_flowchart(A, F)
    out = classify_pair(A)
    assert out.kind == "fixed_locus"
    L1, L2 = out.fixed_pair
    f = A.field
    assert f.is_zero(L1[0][0] - f.one) and f.is_zero(L1[1][1] - f.from_int(2))
    assert f.is_zero(L2[0][1] - f.one)


def test_corank_guard():
    A = build_corank1([[1, 0], [0, 2]])
    F = compute_F(A)
    with pytest.raises(CorankNotTwo):
        run_flowchart(A, F)
    assert classify_pair(A).kind == "corank1"


def test_corank0_is_unique_outcome():
    from quadact.catalog import build_corank0
    out = classify_pair(build_corank0(4))
    assert out.kind == "corank0"


def test_out_of_scope_degree():
    from quadact.algebra import LocalAlgebra
    from quadact.scalars import ExactField
    f = ExactField()
    labels = ["1", "t", "t2", "t3"]
    table = {(1, 1): {2: f.one}, (1, 2): {3: f.one}}
    C = LocalAlgebra(f, labels, table,
                     [[f.zero, f.one, f.zero, f.zero],
                      [f.zero, f.zero, f.one, f.zero]])
    out = classify_pair(C)
    assert out.kind == "out_of_scope" and out.degree == 3


def test_flowchart_terminates_within_dim_w():
    for prm in (TypeParams("B1", s=3, delta=1), TypeParams("A1", s=3, delta=0)):
        A = build_type(prm)
        F = compute_F(A)
        tag, seq = run_flowchart(A, F)
        assert len(seq.upper) - 1 <= A.W.dim
