"""Classification of corank-two actions with unfixed singularities in
dimensions dim W = 3 and 4.

The case tree follows computable invariants only: whether the kernel
squares to zero, whether V_(1) equals Ker F or V^(1), dim(V^(1) * W),
dim m^2, m^3 and the square behaviour of the hyperbolic pair.  Each leaf
normalizes onto its presentation table and is re-verified against the
catalog constructor.
"""

from __future__ import annotations

from .errors import DimensionOutOfRange, InternalCheckFailed
from .linalg import Subspace, solve
from .normalize import (
    Frame,
    NormalizedStructure,
    _scaled,
    _sub,
    gram_schmidt_F,
    mu_basis,
    normalize_b0,
    verify_presentation,
)


def classify_lowdim(A, F, seq):
    n = A.W.dim
    if n == 4:
        return _classify_dim4(A, F, seq)
    if n == 3:
        return _classify_dim3(A, F)
    raise DimensionOutOfRange(f"low-dimensional classifier needs dim W in {{3, 4}}, got {n}")


def _product_space(A, S, T):
    prods = [A.multiply(list(u), list(v)) for u in S.basis for v in T.basis]
    return Subspace(A.field, A.dim, prods)


def _make_ns(A, label_case, names, cols, s, p, delta, blocks, lam_raw, lam_low, l):
    ns = NormalizedStructure(
        type_label=label_case, s=s, p=p, delta=delta, l=l,
        blocks=blocks, lam_raw=lam_raw, lam_low=lam_low,
        basis_names=names,
        change_of_basis=[[cols[j][i] for j in range(len(cols))] for i in range(A.dim)],
        lowdim_case=label_case)
    verify_presentation(A, ns)
    return ns


def _classify_dim4(A, F, seq):
    f = A.field
    mu1, mu2 = mu_basis(A, F)
    mu2sq = A.multiply(mu2, mu2)
    if any(not f.is_zero(c) for c in mu2sq):
        return normalize_b0(A, F)
    V1 = seq.upper[1]
    Vlo1 = seq.lower[1]
    if Vlo1 == F.kernel:
        vw = _product_space(A, V1, A.W).dim
        if vw == 3:
            return _dim4_ii1(A, F, mu1, mu2, V1)
        if vw == 2:
            return _dim4_ii2(A, F, mu1, mu2, V1)
        raise InternalCheckFailed(f"dim(V^(1) W) = {vw} is impossible in case ii")
    if Vlo1 == V1:
        return _dim4_iii(A, F, mu1, mu2, V1)
    raise InternalCheckFailed("V_(1) is neither Ker F nor V^(1) in dimension 4")


def _hyperbolic_pair(A, F, V1):
    """g in V^(1) \\ Ker F and f outside V^(1), two flavours of scaling."""
    f = A.field
    g1 = F.kernel.complement_rows_in(V1)
    if len(g1) != 1:
        raise InternalCheckFailed("V^(1) / Ker F is not a line")
    g1 = g1[0]
    f1 = A.W.first_row_outside(V1)
    return g1, f1


def _dim4_ii1(A, F, mu1, mu2, V1):
    f = A.field
    g1, f1 = _hyperbolic_pair(A, F, V1)
    ng = F.apply(g1, g1)
    if f.is_zero(ng):
        raise InternalCheckFailed("case ii needs F(g1, g1) != 0")
    g1 = _scaled(f.kth_root(f.one / ng, 2), g1)
    c = F.apply(f1, g1)
    if not f.is_zero(c):
        f1 = _sub(f1, c, g1)
    nf = F.apply(f1, f1)
    if f.is_zero(nf):
        raise InternalCheckFailed("case ii needs F(f1, f1) != 0")
    f1 = _scaled(f.kth_root(f.one / nf, 2), f1)
    b0 = A.multiply(g1, g1)
    new_mu2 = A.multiply(f1, g1)
    if solve(f, [mu1], new_mu2) is not None:
        raise InternalCheckFailed("case ii.1 needs f1*g1 outside <mu1>")
    new_mu1 = A.multiply(f1, new_mu2)
    if all(f.is_zero(x) for x in new_mu1):
        raise InternalCheckFailed("f1 * mu2 vanished in case ii.1")
    frame = Frame(A, new_mu1, new_mu2, b0)
    c_self = frame.decomp(A.multiply(f1, f1))[0]
    if not f.is_zero(c_self):
        f1 = _sub(f1, c_self / f.from_int(2), new_mu2)
    fsq = frame.decomp(A.multiply(f1, f1))
    lam = fsq[1]
    names = ["1", "mu1", "mu2", "g1", "f1", "b0"]
    cols = [A.unit(), new_mu1, new_mu2, g1, f1, b0]
    return _make_ns(A, "ld4_ii1", names, cols, s=0, p=0, delta=1,
                    blocks=None, lam_raw=None, lam_low=lam,
                    l=A.power_subspace(2).dim)


def _dim4_ii2(A, F, mu1, mu2, V1):
    f = A.field
    g1, f1 = _hyperbolic_pair(A, F, V1)
    ng = F.apply(g1, g1)
    if f.is_zero(ng):
        raise InternalCheckFailed("case ii needs F(g1, g1) != 0")
    g1 = _scaled(f.kth_root(f.one / ng, 2), g1)
    c = F.apply(f1, g1)
    if not f.is_zero(c):
        f1 = _sub(f1, c, g1)
    nf = F.apply(f1, f1)
    f1 = _scaled(f.kth_root(f.one / nf, 2), f1)
    b0 = A.multiply(g1, g1)
    frame = Frame(A, mu1, mu2, b0)
    c_pair = frame.c_mu1(f1, mu2)
    if f.is_zero(c_pair):
        raise InternalCheckFailed("f1 * mu2 = 0 contradicts unfixed singularities")
    cg = frame.c_mu1(g1, f1)
    if not f.is_zero(cg):
        g1 = _sub(g1, cg / c_pair, mu2)
    cf = frame.c_mu1(f1, f1)
    if not f.is_zero(cf):
        f1 = _sub(f1, cf / (c_pair + c_pair), mu2)
    d1 = frame.c_mu2(f1, f1)
    if f.is_zero(d1):
        delta = 0
        new_mu2 = list(mu2)
    else:
        delta = 1
        new_mu2 = _scaled(d1, mu2)
    new_mu1 = A.multiply(f1, new_mu2)
    names = ["1", "mu1", "mu2", "g1", "f1", "b0"]
    cols = [A.unit(), new_mu1, new_mu2, g1, f1, b0]
    return _make_ns(A, "ld4_ii2", names, cols, s=0, p=0, delta=delta,
                    blocks=None, lam_raw=None, lam_low=None,
                    l=A.power_subspace(2).dim)


def _dim4_iii(A, F, mu1, mu2, V1):
    f = A.field
    g1, f1 = _hyperbolic_pair(A, F, V1)
    pairing = F.apply(f1, g1)
    if f.is_zero(pairing):
        raise InternalCheckFailed("case iii needs F(f1, g1) != 0")
    g1 = _scaled(f.one / pairing, g1)
    cf = F.apply(f1, f1)
    if not f.is_zero(cf):
        f1 = _sub(f1, cf / f.from_int(2), g1)
    b0 = A.multiply(f1, g1)
    frame = Frame(A, mu1, mu2, b0)
    c = frame.c_mu1(f1, mu2)
    if f.is_zero(c):
        raise InternalCheckFailed("f1 * mu2 = 0 contradicts unfixed singularities")
    t = frame.c_mu1(f1, f1)
    if not f.is_zero(t):
        f1 = _sub(f1, t / (c + c), mu2)
    l = A.power_subspace(2).dim
    gsq = frame.decomp(A.multiply(g1, g1))
    if not f.is_zero(gsq[2]):
        raise InternalCheckFailed("g1^2 has a b0 component with F(g1,g1) = 0")
    if l == 2:
        h = gsq[0] / c   # relative to mu1' = f1*mu2
        new_mu1 = A.multiply(f1, mu2)
        if f.is_zero(h):
            names = ["1", "mu1", "mu2", "g1", "f1", "b0"]
            cols = [A.unit(), new_mu1, list(mu2), g1, f1, b0]
            return _make_ns(A, "ld4_a1s1", names, cols, 0, 0, 0, None, None, None, l)
        q = f.kth_root(h, 4)
        q2 = q * q
        new_mu1 = _scaled(q2, new_mu1)
        new_mu2 = _scaled(q, mu2)
        f1 = _scaled(q, f1)
        g1 = _scaled(f.one / q, g1)
        names = ["1", "mu1", "mu2", "g1", "f1", "b0"]
        cols = [A.unit(), new_mu1, new_mu2, g1, f1, b0]
        return _make_ns(A, "ld4_b1s1", names, cols, 0, 0, 0, None, None, None, l)
    if l != 3:
        raise InternalCheckFailed(f"dim m^2 = {l} impossible in case iii")
    b = gsq[1]
    if f.is_zero(b):
        # g1^2 in <mu1>; f1^2 must carry the mu2 direction
        e_co = frame.c_mu2(f1, f1)
        if f.is_zero(e_co):
            raise InternalCheckFailed("dim m^2 = 3 with no mu2 in any square")
        new_mu2 = _scaled(e_co, mu2)
        new_mu1 = A.multiply(f1, new_mu2)
        frame2 = Frame(A, new_mu1, new_mu2, b0)
        h = frame2.decomp(A.multiply(g1, g1))[0]
        if f.is_zero(h):
            names = ["1", "mu1", "mu2", "g1", "f1", "b0"]
            cols = [A.unit(), new_mu1, new_mu2, g1, f1, b0]
            return _make_ns(A, "ld4_a1s1", names, cols, 0, 0, 1, None, None, None, l)
        phi = f.kth_root(h, 5)
        f1 = _scaled(phi, f1)
        g1 = _scaled(f.one / phi, g1)
        new_mu2 = _scaled(phi * phi, new_mu2)
        new_mu1 = A.multiply(f1, new_mu2)
        names = ["1", "mu1", "mu2", "g1", "f1", "b0"]
        cols = [A.unit(), new_mu1, new_mu2, g1, f1, A.multiply(f1, g1)]
        return _make_ns(A, "ld4_b1s1", names, cols, 0, 0, 1, None, None, None, l)
    # b != 0: shift mu2 so that g1^2 = b * mu2 exactly
    a_co = gsq[0]
    if not f.is_zero(a_co):
        mu2 = [x + (a_co / b) * y for x, y in zip(mu2, mu1)]
        frame = Frame(A, mu1, mu2, b0)
        t = frame.c_mu1(f1, f1)
        if not f.is_zero(t):
            c = frame.c_mu1(f1, mu2)
            f1 = _sub(f1, t / (c + c), mu2)
        frame = Frame(A, mu1, mu2, b0)
    e_co = frame.c_mu2(f1, f1)
    c = frame.c_mu1(f1, mu2)
    if f.is_zero(e_co):
        gamma = f.one
        phi = f.one
    else:
        phi = f.kth_root(b / e_co, 4)
        gamma = f.one / phi
    f1 = _scaled(phi, f1)
    g1 = _scaled(gamma, g1)
    new_mu2 = _scaled(gamma * gamma * b, mu2)
    new_mu1 = A.multiply(f1, new_mu2)
    b0 = A.multiply(f1, g1)
    case = "ld4_iii2c" if f.is_zero(e_co) else "ld4_iii2b"
    names = ["1", "mu1", "mu2", "g1", "f1", "b0"]
    cols = [A.unit(), new_mu1, new_mu2, g1, f1, b0]
    return _make_ns(A, case, names, cols, 0, 0, 1, None, None, None, l)


def _classify_dim3(A, F):
    f = A.field
    mu1, mu2 = mu_basis(A, F)
    e = gram_schmidt_F(F, F.kernel.complement_rows_in(A.W))
    if len(e) != 1:
        raise InternalCheckFailed("dim W = 3 must leave a single e generator")
    e = e[0]
    mu2sq = A.multiply(mu2, mu2)
    if any(not f.is_zero(c) for c in mu2sq):
        # case i: normalize mu1 = mu2^2, kill e*mu2
        new_mu1 = mu2sq
        coeffs = solve(f, [new_mu1], A.multiply(e, mu2))
        if coeffs is None:
            raise InternalCheckFailed("e * mu2 escapes <mu2^2>")
        if not f.is_zero(coeffs[0]):
            e = _sub(e, coeffs[0], mu2)
        b0 = A.multiply(e, e)
        rho_vec = A.multiply(e, b0)
        rho_c = solve(f, [new_mu1], rho_vec)
        if rho_c is None:
            raise InternalCheckFailed("e^3 escapes <mu1> in case i")
        rho = rho_c[0]
        if f.is_zero(rho):
            case = "ld3_i_flat"
        else:
            case = "ld3_i_cusp"
            prt = f.kth_root(rho, 2)
            mu2 = _scaled(prt, mu2)
            new_mu1 = A.multiply(mu2, mu2)
            b0 = A.multiply(e, e)
        names = ["1", "mu1", "mu2", "e", "b0"]
        cols = [A.unit(), new_mu1, mu2, e, b0]
        return _make_ns(A, case, names, cols, 0, 0, 0, None, None, None,
                        A.power_subspace(2).dim)
    # case ii: mu2 * e spans mu1
    b0 = A.multiply(e, e)
    new_mu1 = A.multiply(e, mu2)
    if all(f.is_zero(c) for c in new_mu1):
        raise InternalCheckFailed("case ii needs e * mu2 != 0")
    frame = Frame(A, new_mu1, mu2, b0)
    e3 = frame.decomp(A.multiply(e, b0))
    rho, sigma = e3[0], e3[1]
    if not f.is_zero(sigma):
        mu2 = [x + (rho / sigma) * y for x, y in zip(mu2, new_mu1)]
        mu2 = _scaled(sigma, mu2)
        new_mu1 = A.multiply(e, mu2)
        names = ["1", "mu1", "mu2", "e", "b0"]
        cols = [A.unit(), new_mu1, mu2, e, b0]
        return _make_ns(A, "ld3_ii_x5", names, cols, 0, 0, 1, None, None, None,
                        A.power_subspace(2).dim)
    if not f.is_zero(rho):
        mu2 = _scaled(rho, mu2)
        new_mu1 = A.multiply(e, mu2)
        names = ["1", "mu1", "mu2", "e", "b0"]
        cols = [A.unit(), new_mu1, mu2, e, b0]
        return _make_ns(A, "ld3_ii_chain", names, cols, 0, 0, 0, None, None, None,
                        A.power_subspace(2).dim)
    names = ["1", "mu1", "mu2", "e", "b0"]
    cols = [A.unit(), new_mu1, mu2, e, b0]
    return _make_ns(A, "ld3_ii_flat", names, cols, 0, 0, 0, None, None, None,
                    A.power_subspace(2).dim)
