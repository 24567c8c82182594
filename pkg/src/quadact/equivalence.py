"""Equivalence of classified actions.

Canonical matrices are compared under the elementary transformations of the
uniqueness theorem: block permutation, scalar multiplication and adding a
scalar matrix.  The matrix-level decision (`affine_similar`) never extracts
eigenvalues: candidates for the scalar come from the first nonvanishing
trace power, and similarity is settled through invariant factors of xI - M,
so it works verbatim over radical towers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import LocalAlgebra
from .classify import classify_pair
from .errors import SingularTransform, UnsplittableCharPoly
from .linalg import (
    mat_identity,
    mat_mul,
    poly_divmod,
    poly_monic,
    poly_trim,
    rref,
    sum_values,
)
from .scalars import ExactField, QI, migrate_value


@dataclass
class EquivalenceVerdict:
    equivalent: bool
    detail: str = ""
    witness: object = None    # (a, h) scalar pair when applicable

    def __bool__(self):
        return self.equivalent


# -- polynomial-matrix Smith form -------------------------------------------


def invariant_factors(field, M):
    """Nonunit invariant factors of xI - M, low degree first per factor."""
    n = len(M)
    P = [[[-M[i][j]] if i != j else [-M[i][j], field.one] for j in range(n)]
         for i in range(n)]
    P = [[poly_trim(field, e) for e in row] for row in P]
    factors = []
    for t in range(n):
        if not _smith_pivot(field, P, t, n):
            break
        piv = poly_monic(field, P[t][t])
        factors.append(piv)
    return [fac for fac in factors if len(fac) > 1]


def _smith_pivot(field, P, t, n):
    while True:
        best = None
        for i in range(t, n):
            for j in range(t, n):
                e = P[i][j]
                if e and (best is None or len(e) < len(P[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return False
        bi, bj = best
        P[t], P[bi] = P[bi], P[t]
        for row in P:
            row[t], row[bj] = row[bj], row[t]
        piv = P[t][t]
        dirty = False
        for i in range(t + 1, n):
            if P[i][t]:
                q, r = poly_divmod(field, P[i][t], piv)
                for j in range(t, n):
                    P[i][j] = poly_trim(field, _poly_sub(field, P[i][j],
                                                         _poly_mul(field, q, P[t][j])))
                if poly_trim(field, r):
                    dirty = True
        for j in range(t + 1, n):
            if P[t][j]:
                q, r = poly_divmod(field, P[t][j], piv)
                for i in range(t, n):
                    P[i][j] = poly_trim(field, _poly_sub(field, P[i][j],
                                                         _poly_mul(field, q, P[i][t])))
                if poly_trim(field, r):
                    dirty = True
        if dirty:
            continue
        off = [(i, j) for i in range(t + 1, n) for j in range(t + 1, n) if P[i][j]]
        bad = None
        for i, j in off:
            _, r = poly_divmod(field, P[i][j], piv)
            if poly_trim(field, r):
                bad = (i, j)
                break
        if bad is None:
            return True
        # make divisibility hold: add the offending row to the pivot row
        bi, bj = bad
        for j in range(t, n):
            P[t][j] = poly_trim(field, _poly_add(field, P[t][j], P[bi][j]))


def _poly_add(field, p, q):
    out = [field.zero] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return out


def _poly_sub(field, p, q):
    out = [field.zero] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] - c
    return out


def _poly_mul(field, p, q):
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def similar(field, M, N):
    """Similarity over the field via equal invariant factors."""
    if len(M) != len(N):
        return False
    fm = invariant_factors(field, M)
    fn = invariant_factors(field, N)
    if len(fm) != len(fn):
        return False
    for p, q in zip(fm, fn):
        if len(p) != len(q):
            return False
        for a, b in zip(p, q):
            if not field.is_zero(a - b):
                return False
    return True


# -- affine similarity of symmetric matrices ---------------------------------


def _trace_power(field, M, k):
    P = M
    for _ in range(k - 1):
        P = mat_mul(field, P, M)
    return sum_values(field, (P[i][i] for i in range(len(M))))


def _is_nilpotent(field, M):
    n = len(M)
    P = mat_identity(field, n)
    for _ in range(n):
        P = mat_mul(field, M, P)
    return all(field.is_zero(x) for row in P for x in row)


def _roots_of_unity(field, k):
    if k == 1:
        return [field.one]
    if k == 2:
        return [field.one, -field.one]
    if k == 4:
        return [field.one, field.i, -field.one, -field.i]
    if k == 3:
        s3 = field.kth_root(field.from_int(3), 2)
        w = (field.from_int(-1) + field.i * s3) / field.from_int(2)
        return [field.one, w, w * w]
    if k == 6:
        return [u * v for u in _roots_of_unity(field, 2)
                for v in _roots_of_unity(field, 3)]
    raise UnsplittableCharPoly(f"roots of unity of order {k} are not provided")


def affine_similar(field, L1, L2):
    """Is L2 similar to a*L1 + h*I for some a != 0?  Returns (a, h) or None."""
    p = len(L1)
    if p != len(L2):
        return None
    if p == 0:
        return (field.one, field.zero)
    pinv = field.one / field.from_int(p)
    tr1 = sum_values(field, (L1[i][i] for i in range(p)))
    tr2 = sum_values(field, (L2[i][i] for i in range(p)))
    M1 = [[L1[i][j] - (tr1 * pinv if i == j else field.zero) for j in range(p)]
          for i in range(p)]
    M2 = [[L2[i][j] - (tr2 * pinv if i == j else field.zero) for j in range(p)]
          for i in range(p)]
    n1 = _is_nilpotent(field, M1)
    n2 = _is_nilpotent(field, M2)
    if n1 != n2:
        return None
    if n1:
        if similar(field, M1, M2):
            return (field.one, tr2 * pinv - tr1 * pinv)
        # nilpotent parts may still match after a scalar twist: block sizes
        # are scale-invariant, so plain similarity is the whole test
        return None
    k = None
    for kk in range(2, p + 1):
        if not field.is_zero(_trace_power(field, M1, kk)):
            k = kk
            break
    if k is None:
        return None
    t1 = _trace_power(field, M1, k)
    t2 = _trace_power(field, M2, k)
    if field.is_zero(t2):
        return None
    base = field.kth_root(t2 / t1, k)
    for zeta in _roots_of_unity(field, k):
        a = base * zeta
        if field.is_zero(a):
            continue
        h = (tr2 - a * tr1) * pinv
        cand = [[a * L1[i][j] + (h if i == j else field.zero) for j in range(p)]
                for i in range(p)]
        if similar(field, cand, L2):
            return (a, h)
    return None


# -- spec-level operations ----------------------------------------------------


def elementary_equivalent(cm1, cm2):
    """Block-data decision: do the canonical matrices differ by a block
    permutation plus an affine map a*lambda + h of eigenvalues?"""
    field = cm1.field
    b1 = list(cm1.blocks)
    b2 = list(cm2.blocks)
    if sum(q for _, q in b1) != sum(q for _, q in b2):
        return EquivalenceVerdict(False, "sizes differ")
    if sorted(q for _, q in b1) != sorted(q for _, q in b2):
        return EquivalenceVerdict(False, "block size multisets differ")
    d1 = _distinct(field, b1)
    d2 = _distinct(field, b2)
    if len(d1) != len(d2):
        return EquivalenceVerdict(False, "numbers of distinct eigenvalues differ")
    if len(d1) <= 1:
        h = field.zero if not d1 else d2[0][0] - d1[0][0]
        return EquivalenceVerdict(True, "single eigenvalue class",
                                  witness=(field.one, h))
    anchors = sorted(d1, key=lambda t: (-t[1], field.sort_key(t[0])))[:2]
    (l1, _), (l2, _) = anchors
    for n1, _ in d2:
        for n2, _ in d2:
            if field.is_zero(n1 - n2):
                continue
            a = (n1 - n2) / (l1 - l2)
            h = n1 - a * l1
            if field.is_zero(a):
                continue
            mapped = [(a * lam + h, q) for lam, q in b1]
            if _block_multisets_equal(field, mapped, b2):
                return EquivalenceVerdict(True, "affine eigenvalue match",
                                          witness=(a, h))
    return EquivalenceVerdict(False, "no affine map matches the block data")


def _distinct(field, blocks):
    out = []
    for lam, q in blocks:
        for entry in out:
            if field.is_zero(lam - entry[0]):
                entry[1] += q
                break
        else:
            out.append([lam, q])
    return [(lam, mult) for lam, mult in out]


def _block_multisets_equal(field, b1, b2):
    rem = list(b2)
    for lam, q in b1:
        hit = None
        for t, (nu, r) in enumerate(rem):
            if r == q and field.is_zero(lam - nu):
                hit = t
                break
        if hit is None:
            return False
        rem.pop(hit)
    return not rem


def corank1_equivalent(field, lam1, lam2):
    """Corank-one criterion: Lambda' = A^T (a Lambda + h I) A reduces to
    affine similarity of the symmetric matrices."""
    if len(lam1) != len(lam2):
        return EquivalenceVerdict(False, "matrix sizes differ")
    if len(lam1) == 0:
        return EquivalenceVerdict(True, "corank-0 actions are unique")
    hit = affine_similar(field, lam1, lam2)
    if hit is None:
        return EquivalenceVerdict(False, "Jordan data differ under all affine maps")
    return EquivalenceVerdict(True, "affine similarity", witness=hit)


def _common_field(A, B, va, vb):
    """Values from two exact sessions rebuilt over one comparison field."""
    if A.field is B.field:
        return A.field, va, vb

    cmp_field = ExactField(A.field.config)

    def mig(v):
        if isinstance(v, list):
            return [mig(x) for x in v]
        return migrate_value(cmp_field, v)

    return cmp_field, mig(va), mig(vb)


def actions_equivalent(A, B, validate=False):
    """Theorem-level decision through the full pipeline on both pairs."""
    oa = classify_pair(A, validate=validate)
    ob = classify_pair(B, validate=validate)
    if oa.kind != ob.kind:
        return EquivalenceVerdict(False, f"kind mismatch: {oa.kind} vs {ob.kind}")
    if oa.kind == "corank0":
        return EquivalenceVerdict(True, "smooth quadric actions are unique")
    if oa.kind == "corank1":
        field, la, lb = _common_field(A, B, oa.corank1_lam, ob.corank1_lam)
        return corank1_equivalent(field, la, lb)
    if oa.kind in ("fixed_locus", "out_of_scope"):
        return EquivalenceVerdict(False, f"{oa.kind} inputs are not decided here")
    na, nb = oa.normalized, ob.normalized
    if na.type_label != nb.type_label:
        return EquivalenceVerdict(False,
                                  f"type mismatch: {na.type_label} vs {nb.type_label}")
    for attr in ("s", "p", "delta", "l", "lowdim_case"):
        if getattr(na, attr) != getattr(nb, attr):
            return EquivalenceVerdict(
                False, f"{attr} mismatch: {getattr(na, attr)} vs {getattr(nb, attr)}")
    if na.lowdim_case == "ld4_ii1":
        field, la, lb = _common_field(A, B, na.lam_low, nb.lam_low)
        if field.is_zero(la - lb) or field.is_zero(la + lb):
            return EquivalenceVerdict(True, "coefficients agree up to sign")
        return EquivalenceVerdict(False, "coefficient lambda differs beyond sign")
    if na.lam_raw is not None:
        field, la, lb = _common_field(A, B, na.lam_raw, nb.lam_raw)
        hit = affine_similar(field, la, lb)
        if hit is None:
            return EquivalenceVerdict(False,
                                      "canonical matrices are not elementary-equivalent")
        return EquivalenceVerdict(True, "normalized structures match", witness=hit)
    return EquivalenceVerdict(True, "normalized structures match")


# -- the conjugation oracle ---------------------------------------------------

# integral Gaussian entries keep the transported tables sparse and the
# rational arithmetic denominator-free until normalization
_ENTRY_POOL = [QI(0), QI(0), QI(0), QI(0), QI(1), QI(1), QI(-1), QI(2),
               QI(0, 1), QI(1, 1), QI(1, -1)]


def random_conjugate(A, seed, max_tries=50):
    """Transport the structure constants along a random invertible linear map
    fixing the unit; the result is isomorphic to A by construction.

    The conjugate gets a fresh exact field so radical sessions stay
    independent across seeds."""
    f = A.field
    if f.backend != "exact":
        raise SingularTransform("the conjugation oracle runs on the exact backend")
    out_field = ExactField(f.config)
    rng = random.Random(seed)
    n = A.dim
    for _ in range(max_tries):
        T = [[f.zero] * n for _ in range(n)]
        T[0][0] = f.one
        for i in range(1, n):
            for j in range(1, n):
                T[i][j] = rng.choice(_ENTRY_POOL)
        inv = _try_invert(f, T)
        if inv is not None:
            break
    else:
        raise SingularTransform("no invertible transform found within the budget")
    tinv_cols = [[inv[i][j] for i in range(n)] for j in range(n)]
    table = {}
    for i in range(1, n):
        for j in range(i, n):
            prod = A.multiply(tinv_cols[i], tinv_cols[j])
            vec = [sum_values(f, (T[r][t] * prod[t] for t in range(n)))
                   for r in range(n)]
            cell = {k: v for k, v in enumerate(vec) if not f.is_zero(v)}
            if cell:
                table[(i, j)] = cell
    W_rows = []
    for row in A.W.basis:
        W_rows.append([sum_values(f, (T[r][t] * row[t] for t in range(n)))
                       for r in range(n)])
    return LocalAlgebra(out_field, [f"x{k}" for k in range(n)], table, W_rows)


def _try_invert(field, M):
    n = len(M)
    aug = [list(M[i]) + [field.one if i == j else field.zero for j in range(n)]
           for i in range(n)]
    red, piv = rref(field, aug)
    if piv != list(range(n)):
        return None
    return [row[n:] for row in red]
