"""Deterministic linear algebra over a backend field.

Matrices are lists of row lists of raw field values; every zero decision is
delegated to the owning field so the same code runs on both backends.
Echelon forms are fully reduced (RREF) with pivots chosen in ambient column
order, which makes subspace representations unique.
"""

from __future__ import annotations

import mpmath

from .errors import (
    IllConditioned,
    NotCommuting,
    NotNilpotent,
    UnsplittableCharPoly,
)
from .scalars import QI, TowerElt


def mat_zero(field, n, m=None):
    m = n if m is None else m
    return [[field.zero for _ in range(m)] for _ in range(n)]


def mat_identity(field, n):
    out = mat_zero(field, n)
    for j in range(n):
        out[j][j] = field.one
    return out


def mat_copy(M):
    return [list(r) for r in M]


def mat_mul(field, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = mat_zero(field, n, m)
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if isinstance(a, QI) and a.is_zero():
                continue
            Bt = B[t]
            for j in range(m):
                row[j] = row[j] + a * Bt[j]
    return out


def mat_vec(field, A, v):
    return [sum_values(field, (A[i][j] * v[j] for j in range(len(v)))) for i in range(len(A))]


def sum_values(field, it):
    acc = field.zero
    for x in it:
        acc = acc + x
    return acc


def mat_transpose(M):
    return [list(col) for col in zip(*M)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def mat_eq(field, A, B):
    return all(field.is_zero(a - b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def rref(field, rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        best = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][c]):
                if field.backend == "exact":
                    pr = i
                    break
                mag = abs(field.numeric(rows[i][c]))
                if best is None or mag > best:
                    best, pr = mag, i
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(field, M):
    return len(rref(field, M)[0])


def solve(field, cols, v):
    """Solve sum_j x_j * cols[j] = v; returns coefficient list or None."""
    n = len(v)
    aug = [[cols[j][i] for j in range(len(cols))] + [v[i]] for i in range(n)]
    red, pivots = rref(field, aug)
    m = len(cols)
    if m in pivots:
        return None
    x = [field.zero] * m
    for row, p in zip(red, pivots):
        x[p] = row[m]
    # verify (guards tolerance issues on the approx backend)
    for i in range(n):
        acc = sum_values(field, (cols[j][i] * x[j] for j in range(m)))
        if not field.is_zero(acc - v[i], scale=_row_scale(field, v)):
            return None
    return x


def _row_scale(field, v):
    if field.backend == "exact":
        return None
    return max([1.0] + [abs(field.numeric(x)) for x in v])


class Subspace:
    """Subspace of K^n held as a unique reduced row echelon basis."""

    def __init__(self, field, ambient_dim, rows=()):
        self.field = field
        self.ambient_dim = ambient_dim
        basis, pivots = rref(field, [list(r) for r in rows])
        self.basis = basis
        self.pivots = pivots

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        """Residue of v after elimination against the basis."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if not self.field.is_zero(c):
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, v):
        res = self.reduce(v)
        sc = _row_scale(self.field, list(v))
        return all(self.field.is_zero(x, scale=sc) for x in res)

    def contains_space(self, other):
        return all(self.contains(r) for r in other.basis)

    def __eq__(self, other):
        return (self.ambient_dim == other.ambient_dim
                and self.dim == other.dim and self.contains_space(other))

    def sum(self, other):
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    def intersect(self, other):
        """Zassenhaus-free intersection via kernel of stacked coordinates."""
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.field, self.ambient_dim)
        # x = sum a_i u_i = sum b_j w_j  =>  [U^T | -W^T] (a,b)^T = 0
        cols = [list(r) for r in self.basis] + [[-x for x in r] for r in other.basis]
        M = mat_transpose(cols)
        ker = kernel(self.field, M)
        vecs = []
        for kv in ker.basis:
            vec = [self.field.zero] * self.ambient_dim
            for i, row in enumerate(self.basis):
                vec = [x + kv[i] * y for x, y in zip(vec, row)]
            vecs.append(vec)
        return Subspace(self.field, self.ambient_dim, vecs)

    def complement_rows_in(self, super_space):
        """Echelon rows of ``super_space`` independent from self, in order."""
        out = []
        grow = Subspace(self.field, self.ambient_dim, self.basis)
        for r in super_space.basis:
            if not grow.contains(r):
                out.append(list(r))
                grow = Subspace(self.field, self.ambient_dim, grow.basis + [r])
        return out

    def first_row_outside(self, sub):
        """First echelon basis row not contained in ``sub``."""
        for r in self.basis:
            if not sub.contains(r):
                return list(r)
        return None

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel(field, M):
    """Right kernel of a rectangular matrix as a Subspace."""
    if not M:
        return Subspace(field, 0)
    ncols = len(M[0])
    red, pivots = rref(field, M)
    free = [c for c in range(ncols) if c not in pivots]
    vecs = []
    for c in free:
        v = [field.zero] * ncols
        v[c] = field.one
        for row, p in zip(red, pivots):
            v[p] = -row[c]
        vecs.append(v)
    return Subspace(field, ncols, vecs)


# -- polynomials over the field (coefficient lists, low degree first) -------


def poly_trim(field, p):
    while p and field.is_zero(p[-1]):
        p = p[:-1]
    return p


def poly_mul(field, p, q):
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if field.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return poly_trim(field, out)


def poly_divmod(field, num, den):
    num = list(num)
    den = poly_trim(field, list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [field.zero] * max(0, len(num) - len(den) + 1)
    inv = field.one / den[-1]
    while len(poly_trim(field, num)) >= len(den):
        num = poly_trim(field, num)
        c = num[-1] * inv
        off = len(num) - len(den)
        q[off] = c
        for j, dc in enumerate(den):
            num[off + j] = num[off + j] - c * dc
        num = num[:-1]
    return poly_trim(field, q), poly_trim(field, num)


def poly_monic(field, p):
    p = poly_trim(field, p)
    if not p:
        return p
    inv = field.one / p[-1]
    return [c * inv for c in p]


def poly_gcd(field, p, q):
    p, q = poly_trim(field, p), poly_trim(field, q)
    while q:
        _, r = poly_divmod(field, p, q)
        p, q = q, poly_trim(field, r)
    return poly_monic(field, p)


def poly_eval(field, p, x):
    acc = field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def charpoly(field, M):
    """Characteristic polynomial det(xI - M) by Faddeev-LeVerrier."""
    n = len(M)
    coeffs = [field.zero] * (n + 1)
    coeffs[n] = field.one
    Mk = mat_identity(field, n)
    for k in range(1, n + 1):
        Mk = mat_mul(field, M, Mk)
        tr = sum_values(field, (Mk[j][j] for j in range(n)))
        c = -(tr / field.from_int(k))
        coeffs[n - k] = c
        for j in range(n):
            Mk[j][j] = Mk[j][j] + c
    return coeffs


def minpoly(field, M):
    """Minimal polynomial via the first linear dependency among powers."""
    n = len(M)
    powers = [mat_identity(field, n)]
    vecs = [[powers[0][i][j] for i in range(n) for j in range(n)]]
    for _ in range(n):
        powers.append(mat_mul(field, M, powers[-1]))
        vecs.append([powers[-1][i][j] for i in range(n) for j in range(n)])
        cols = [list(v) for v in vecs[:-1]]
        sol = solve(field, cols, vecs[-1])
        if sol is not None:
            return poly_trim(field, [-c for c in sol] + [field.one])
    raise UnsplittableCharPoly("no minimal polynomial found (numerical issue)")


# -- exact root extraction ---------------------------------------------------


def _all_qi(coeffs):
    return all(isinstance(c, (QI, int)) for c in coeffs)


def _qqi_to_field(field, v):
    import sympy
    from sympy.polys.domains import QQ_I

    expr = QQ_I.to_sympy(v) if not isinstance(v, sympy.Expr) else sympy.nsimplify(v)
    re, im = expr.as_real_imag()
    from fractions import Fraction
    return field.from_fractions(Fraction(int(sympy.Rational(re).p), int(sympy.Rational(re).q)),
                                Fraction(int(sympy.Rational(im).p), int(sympy.Rational(im).q)))


def _roots_radical(field, coeffs):
    """Roots of a monic polynomial of degree <= 4 by radicals."""
    coeffs = poly_monic(field, coeffs)
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-coeffs[0]]
    if deg == 2:
        c0, c1 = coeffs[0], coeffs[1]
        disc = c1 * c1 - 4 * c0
        s = field.kth_root(disc, 2)
        half = field.from_fractions(1, 0) / field.from_int(2)
        return [(-c1 + s) * half, (-c1 - s) * half]
    if deg == 3:
        c0, c1, c2 = coeffs[0], coeffs[1], coeffs[2]
        third = field.one / field.from_int(3)
        shift = c2 * third
        # depressed cubic t^3 + p t + q
        p = c1 - c2 * c2 * third
        q = c0 - c1 * c2 * third + 2 * c2 * c2 * c2 * third * third * third
        if field.is_zero(q):
            s = field.kth_root(-p, 2)
            ts = [field.zero, s, -s]
        elif field.is_zero(p):
            u = field.kth_root(-q, 3)
            w = _omega(field)
            ts = [u, w * u, w * w * u]
        else:
            half = field.one / field.from_int(2)
            disc = q * q * half * half + p * p * p / field.from_int(27)
            sq = field.kth_root(disc, 2)
            u = field.kth_root(-q * half + sq, 3)
            if field.is_zero(u):
                u = field.kth_root(-q * half - sq, 3)
            v = -p * third / u
            w = _omega(field)
            ts = [u + v, w * u + w * w * v, w * w * u + w * v]
        return [t - shift for t in ts]
    if deg == 4:
        # Ferrari: resolve via the resolvent cubic
        c0, c1, c2, c3 = coeffs[0], coeffs[1], coeffs[2], coeffs[3]
        quarter = field.one / field.from_int(4)
        shift = c3 * quarter
        # depressed quartic t^4 + p t^2 + q t + r
        p = c2 - field.from_int(3) * c3 * c3 / field.from_int(8)
        q = c1 - c2 * c3 / field.from_int(2) + c3 * c3 * c3 / field.from_int(8)
        r = (c0 - c1 * c3 * quarter + c2 * c3 * c3 / field.from_int(16)
             - field.from_int(3) * c3 * c3 * c3 * c3 / field.from_int(256))
        if field.is_zero(q):
            # biquadratic
            ys = _roots_radical(field, [r, p, field.one])
            out = []
            for y in ys:
                s = field.kth_root(y, 2)
                out.extend([s - shift, -s - shift])
            return out
        res = [-q * q, p * p - 4 * r, 2 * p, field.one]
        ys = _roots_radical(field, res)
        y = None
        for cand in ys:
            if not field.is_zero(cand):
                y = cand
                break
        if y is None:
            raise UnsplittableCharPoly("degenerate quartic resolvent")
        s = field.kth_root(y, 2)
        half = field.one / field.from_int(2)
        a1 = (p + y) * half - q * half / s
        a2 = (p + y) * half + q * half / s
        r1 = _roots_radical(field, [a1, s, field.one])
        r2 = _roots_radical(field, [a2, -s, field.one])
        return [t - shift for t in r1 + r2]
    raise UnsplittableCharPoly(f"degree {deg} is beyond radical solving")


def _omega(field):
    """Primitive cube root of unity (-1 + i*sqrt(3))/2."""
    s3 = field.kth_root(field.from_int(3), 2)
    return (field.from_int(-1) + field.i * s3) / field.from_int(2)


def exact_roots(field, coeffs):
    """All roots of a polynomial over the EXACT field, with multiplicity."""
    coeffs = poly_monic(field, poly_trim(field, list(coeffs)))
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    if _all_qi(coeffs):
        roots, hard = _sympy_factor_roots(field, coeffs)
        for fac, mult in hard:
            if len(fac) - 1 > 4:
                raise UnsplittableCharPoly(
                    f"irreducible factor of degree {len(fac) - 1}; use the approx backend")
            rr = _roots_radical(field, fac)
            for r in rr:
                roots.extend([r] * mult)
        return roots
    # tower coefficients: check the all-roots-equal shape first
    n = field.from_int(deg)
    c = -coeffs[deg - 1] / n
    shifted = _binomial_power_check(field, coeffs, c)
    if shifted:
        return [c] * deg
    if deg <= 4:
        return _roots_radical(field, coeffs)
    raise UnsplittableCharPoly(
        "cannot split a tower-coefficient polynomial of degree > 4")


def _binomial_power_check(field, coeffs, c):
    """Is the monic polynomial equal to (x - c)^deg?"""
    deg = len(coeffs) - 1
    from math import comb
    for j in range(deg):
        expect = field.from_int(comb(deg, j)) * _power(field, -c, deg - j)
        if not field.is_zero(coeffs[j] - expect):
            return False
    return True


def _power(field, x, e):
    acc = field.one
    for _ in range(e):
        acc = acc * x
    return acc


def _sympy_factor_roots(field, coeffs):
    """Linear roots plus irreducible non-linear factors over QQ(i)."""
    import sympy
    from sympy.polys.domains import QQ_I

    x = sympy.symbols("x")
    expr = sympy.Integer(0)
    for e, c in enumerate(coeffs):
        c = QI(c) if isinstance(c, int) else c
        expr += (sympy.Rational(c.a, c.d) + sympy.Rational(c.b, c.d) * sympy.I) * x ** e
    poly = sympy.Poly(expr, x, domain=QQ_I)
    roots = []
    hard = []
    for fac, mult in poly.factor_list()[1]:
        fc = [_qqi_to_field(field, c) for c in reversed(fac.all_coeffs())]
        if fac.degree() == 1:
            root = -fc[0] / fc[1]
            roots.extend([root] * mult)
        else:
            hard.append((poly_monic(field, fc), mult))
    return roots, hard


# -- jordan data -------------------------------------------------------------


def eigen_multiplicities(field, M):
    """Distinct eigenvalues with algebraic multiplicities."""
    if field.backend == "exact":
        roots = exact_roots(field, charpoly(field, M))
        distinct = []
        for r in roots:
            for d in distinct:
                if field.is_zero(r - d[0]):
                    d[1] += 1
                    break
            else:
                distinct.append([r, 1])
        return [(d[0], d[1]) for d in distinct]
    return _approx_eigen_clusters(field, M)


def jordan_data(field, M):
    """Multiset of (eigenvalue, block size) pairs, canonically sorted."""
    n = len(M)
    if n == 0:
        return []
    distinct = eigen_multiplicities(field, M)
    blocks = []
    for lam, mult in distinct:
        shifted = [[M[i][j] - (lam if i == j else field.zero) for j in range(n)]
                   for i in range(n)]
        sizes = _block_sizes(field, shifted, mult)
        blocks.extend((lam, s) for s in sizes)
    blocks.sort(key=lambda b: (field.sort_key(b[0]), -b[1]))
    return blocks


def _block_sizes(field, N, mult):
    """Jordan block sizes for eigenvalue 0 of N with algebraic multiplicity mult."""
    n = len(N)
    ranks = [n]
    P = mat_identity(field, n)
    k = 0
    while ranks[-1] > n - mult and k < n:
        P = mat_mul(field, N, P)
        ranks.append(rank(field, P))
        k += 1
    # blocks of size >= k: ranks[k-1] - ranks[k]
    geq = [ranks[j] - ranks[j + 1] for j in range(len(ranks) - 1)]
    sizes = []
    for sz in range(len(geq), 0, -1):
        count = geq[sz - 1] - (geq[sz] if sz < len(geq) else 0)
        sizes.extend([sz] * count)
    if sum(sizes) != mult:
        raise IllConditioned(
            f"rank profile inconsistent with multiplicity ({sum(sizes)} vs {mult})")
    return sorted(sizes, reverse=True)


def _approx_eigen_clusters(field, M):
    n = len(M)
    with mpmath.workprec(field.prec):
        mat = mpmath.matrix([[mpmath.mpc(x) for x in row] for row in M])
        eigs = mpmath.eig(mat, left=False, right=False)
        scale = max([mpmath.mpf(1)] + [abs(e) for e in eigs])
        tol = mpmath.mpf(1000) * field.eps * scale
        clusters = []
        for e in sorted(eigs, key=lambda z: (mpmath.re(z), mpmath.im(z))):
            for c in clusters:
                if abs(e - c[0]) <= tol:
                    c[1] += 1
                    c[0] = c[0] + (e - c[0]) / c[1]
                    break
            else:
                clusters.append([e, 1])
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                d = abs(clusters[i][0] - clusters[j][0])
                if tol < d < 4 * tol:
                    raise IllConditioned("eigenvalue clusters are ambiguous")
        return [(c[0], c[1]) for c in clusters]


def nilpotency_index(field, M):
    """Smallest k with M^k = 0, or None if M is not nilpotent."""
    n = len(M)
    P = mat_identity(field, n)
    for k in range(1, n + 1):
        P = mat_mul(field, M, P)
        if all(field.is_zero(x) for row in P for x in row):
            return k
    return None


def nilpotent_exp(field, N):
    """exp(N) as a finite sum; raises NotNilpotent otherwise."""
    n = len(N)
    idx = nilpotency_index(field, N)
    if idx is None:
        raise NotNilpotent("matrix exponential requested for non-nilpotent input")
    out = mat_identity(field, n)
    term = mat_identity(field, n)
    fact = 1
    for k in range(1, idx):
        term = mat_mul(field, N, term)
        fact *= k
        finv = field.one / field.from_int(fact)
        out = mat_add(out, mat_scale(finv, term))
    return out


def simultaneous_triangularize(field, operators, space):
    """Basis (m_1..m_l) of ``space`` with every operator mapping m_i into
    the span of m_1..m_{i-1}.  Operators act on ambient coordinates."""
    amb = space.ambient_dim
    for A in operators:
        for B in operators:
            AB = mat_mul(field, A, B)
            BA = mat_mul(field, B, A)
            if not mat_eq(field, AB, BA):
                raise NotCommuting("operators do not commute")
    for A in operators:
        P = [list(r) for r in space.basis]
        for _ in range(space.dim + 1):
            P = [mat_vec(field, A, v) for v in P]
        if any(not field.is_zero(x) for v in P for x in v):
            raise NotNilpotent("operator is not nilpotent on the subspace")
    basis = []
    current = Subspace(field, amb)
    while current.dim < space.dim:
        # x in `space` (coordinates w.r.t. its echelon basis) with A x in
        # `current` for every operator A
        coords = [list(r) for r in space.basis]
        filtered = []
        for A in operators:
            imgs = [mat_vec(field, A, v) for v in coords]
            reduced = [current.reduce(img) for img in imgs]
            for col in range(amb):
                filtered.append([reduced[j][col] for j in range(len(coords))])
        ker = kernel(field, filtered) if filtered else Subspace(field, len(coords),
                                                                mat_identity(field, len(coords)))
        next_vecs = []
        for kv in ker.basis:
            vec = [field.zero] * amb
            for j, row in enumerate(coords):
                vec = [x + kv[j] * y for x, y in zip(vec, row)]
            next_vecs.append(vec)
        enlarged = Subspace(field, amb, [list(b) for b in current.basis] + next_vecs)
        if enlarged.dim == current.dim:
            raise NotNilpotent("triangularization stalled; operators not nilpotent?")
        new_rows = current.complement_rows_in(enlarged)
        basis.extend(new_rows)
        current = enlarged
    return basis
