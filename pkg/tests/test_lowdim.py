"""The dim W <= 4 case tree: self-classification, invariants and the
plus-minus rule for the coefficient family."""

import pytest

from quadact.catalog import LOWDIM_CASES, build_lowdim
from quadact.classify import classify_pair
from quadact.equivalence import actions_equivalent, random_conjugate
from quadact.errors import DimensionOutOfRange
from quadact.scalars import QI


def _variants(case):
    if case == "ld4_ii1":
        return [{"lam": 2}, {"lam": -1}]
    if case == "ld4_b0":
        return [{"lam": None}, {"lam": [[1, 0], [0, 2]]}]
    if case in ("ld4_ii2", "ld4_a1s1", "ld4_b1s1"):
        return [{"delta": 0}, {"delta": 1}]
    return [{}]


@pytest.mark.parametrize("case", LOWDIM_CASES)
def test_lowdim_selfclassification(case):
    for kw in _variants(case):
        A = build_lowdim(case, **kw)
        out = classify_pair(A)
        ns = out.normalized
        assert ns.lowdim_case == case
        if "delta" in kw:
            assert ns.delta == kw["delta"]
        if case == "ld4_ii1":
            f = A.field
            assert f.is_zero(ns.lam_low - f.from_int(kw["lam"]))


@pytest.mark.parametrize("case", LOWDIM_CASES)
def test_lowdim_conjugation_stability(case):
    for kw in _variants(case)[:1]:
        if case == "ld4_ii1":
            kw = {"lam": 3}
        A = build_lowdim(case, **kw)
        for seed in (0, 1, 2):
            B = random_conjugate(A, seed)
            v = actions_equivalent(A, B)
            assert v.equivalent, (case, seed, v.detail)


def test_plus_minus_lambda_rule():
    A = build_lowdim("ld4_ii1", lam=2)
    B = build_lowdim("ld4_ii1", lam=-2)
    C = build_lowdim("ld4_ii1", lam=3)
    assert actions_equivalent(A, B).equivalent
    assert not actions_equivalent(A, C).equivalent


def test_distinct_lowdim_cases_inequivalent():
    reps = {}
    for case in LOWDIM_CASES:
        kw = _variants(case)[0]
        if case == "ld4_ii1":
            kw = {"lam": 2}
        reps[case] = build_lowdim(case, **kw)
    cases = list(reps)
    for i, c1 in enumerate(cases):
        for c2 in cases[i + 1:]:
            a, b = reps[c1], reps[c2]
            if a.dim != b.dim:
                continue
            v = actions_equivalent(a, b)
            assert not v.equivalent, (c1, c2)


def test_delta_variants_inequivalent():
    for case in ("ld4_ii2", "ld4_a1s1", "ld4_b1s1"):
        A = build_lowdim(case, delta=0)
        B = build_lowdim(case, delta=1)
        assert not actions_equivalent(A, B).equivalent, case


def test_lowdim_routing_guard():
    from quadact.catalog import build_type, TypeParams
    from quadact.form import compute_F
    from quadact.lowdim import classify_lowdim
    A = build_type(TypeParams("B0", p=3))  # dim W = 5
    F = compute_F(A)
    with pytest.raises(DimensionOutOfRange):
        classify_lowdim(A, F, None)


def test_x5_realizes_truncated_power_series():
    """The dim-3 case with dim m^2 = 3 is the K[x]/(x^5) action."""
    A = build_lowdim("ld3_ii_x5")
    f = A.field
    e = A.basis_vec(3)
    x2 = A.multiply(e, e)
    x3 = A.multiply(x2, e)
    x4 = A.multiply(x3, e)
    x5 = A.multiply(x4, e)
    assert any(not f.is_zero(c) for c in x4)
    assert all(f.is_zero(c) for c in x5)
    # mu2 = x^3, mu1 = x^4
    assert x3 == A.basis_vec(2) and x4 == A.basis_vec(1)
