"""Canonical symmetric matrices under complex orthogonal congruence.

A block for eigenvalue lam of size q is  lam*I + S/2 + i*T/2  where S has
ones on the first off-diagonals and T carries +1 on the anti-superdiagonal
(row+col = q-1, 0-indexed) and -1 on the anti-subdiagonal (row+col = q+1).
Each block is symmetric and similar to a single Jordan block, so a block
list is exactly Jordan data.  ``orthogonal_reduce`` constructs an explicit
complex orthogonal change of basis onto the canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalCheckFailed
from .linalg import (
    Subspace,
    eigen_multiplicities,
    jordan_data,
    kernel,
    mat_eq,
    mat_identity,
    mat_mul,
    mat_transpose,
    mat_vec,
    rref,
    sum_values,
)


def canonical_block(field, lam, q):
    f = field
    half = f.one / f.from_int(2)
    ihalf = f.i * half
    M = [[f.zero] * q for _ in range(q)]
    for r in range(q):
        M[r][r] = lam
        for c in range(q):
            if abs(r - c) == 1:
                M[r][c] = M[r][c] + half
            if r + c == q - 2:      # anti-superdiagonal, 0-indexed
                M[r][c] = M[r][c] + ihalf
            if r + c == q:          # anti-subdiagonal
                M[r][c] = M[r][c] - ihalf
    return M


def sort_blocks(field, blocks):
    return sorted(blocks, key=lambda b: (field.sort_key(b[0]), -b[1]))


def assemble_blocks(field, blocks):
    """Block-diagonal canonical matrix from a sorted block list."""
    blocks = sort_blocks(field, blocks)
    p = sum(q for _, q in blocks)
    M = [[field.zero] * p for _ in range(p)]
    off = 0
    for lam, q in blocks:
        B = canonical_block(field, lam, q)
        for r in range(q):
            for c in range(q):
                M[off + r][off + c] = B[r][c]
        off += q
    return M


@dataclass
class CanonicalMatrix:
    """Block list (eigenvalue, size) of a symmetric matrix, canonically sorted."""
    field: object
    blocks: list

    @property
    def size(self):
        return sum(q for _, q in self.blocks)

    def matrix(self):
        return assemble_blocks(self.field, self.blocks)

    def size_multiset(self):
        return sorted((q for _, q in self.blocks), reverse=True)


def canonical_matrix(field, L):
    """Jordan block data of a symmetric matrix as a CanonicalMatrix."""
    return CanonicalMatrix(field, sort_blocks(field, jordan_data(field, L)))


def _b(field, x, y):
    return sum_values(field, (a * b for a, b in zip(x, y)))


def _phi_for_size(field, q, _cache={}):
    """Matrix sending a Hankel-normalized Jordan chain onto the canonical
    block coordinates: columns of C*Phi are b-orthonormal and the block
    acts on them as canonical_block(0, q)."""
    key = (id(field), q)
    if key in _cache:
        return _cache[key]
    N = canonical_block(field, field.zero, q)
    # basis powers of N applied to a chain seed z with z^T N^k z = delta(k, q-1)
    z = _chain_seed(field, N, q)
    cols = []
    v = z
    for _ in range(q):
        cols.append(v)
        v = mat_vec(field, N, v)
    C = mat_transpose(cols)      # columns are the chain of N
    Phi = _mat_inverse(field, C)
    _cache[key] = Phi
    return Phi


def _mat_inverse(field, M):
    n = len(M)
    aug = [list(M[i]) + [field.one if i == j else field.zero for j in range(n)]
           for i in range(n)]
    red, piv = rref(field, aug)
    if piv != list(range(n)):
        raise InternalCheckFailed("matrix inversion of singular matrix")
    return [row[n:] for row in red]


def _chain_seed(field, N, q):
    """Vector z of height q with z^T N^k z = delta(k, q-1)."""
    # max-height vectors: complement of ker(N^{q-1})
    P = mat_identity(field, q)
    for _ in range(q - 1):
        P = mat_mul(field, N, P)
    ker_rows = kernel(field, P)
    full = Subspace(field, q, mat_identity(field, q))
    cands = ker_rows.complement_rows_in(full)
    z = _tau_nonzero_candidate(field, N, cands, q)
    return _hankel_normalize(field, N, z, q)


def _tau_nonzero_candidate(field, N, cands, h):
    """Candidate with b(v, N^{h-1} v) != 0 from vectors of height h."""
    imgs = []
    for v in cands:
        w = list(v)
        for _ in range(h - 1):
            w = mat_vec(field, N, w)
        imgs.append(w)
    for v, w in zip(cands, imgs):
        if not field.is_zero(_b(field, v, w)):
            return list(v)
    for a in range(len(cands)):
        for bidx in range(a + 1, len(cands)):
            if not field.is_zero(_b(field, cands[a], imgs[bidx])):
                return [x + y for x, y in zip(cands[a], cands[bidx])]
    raise InternalCheckFailed("no chain seed with nonzero self-pairing exists")


def _hankel_normalize(field, N, v, h):
    """Adjust v so that b(v, N^j v) = delta(j, h-1) for 0 <= j <= h-1."""
    def taus(u):
        out = []
        w = list(u)
        for _ in range(h):
            out.append(_b(field, u, w))
            w = mat_vec(field, N, w)
        return out

    t = taus(v)
    for j in range(h - 2, -1, -1):
        if field.is_zero(t[j]):
            continue
        alpha = -(t[j] / (t[h - 1] + t[h - 1]))
        step = list(v)
        for _ in range(h - 1 - j):
            step = mat_vec(field, N, step)
        v = [x + alpha * y for x, y in zip(v, step)]
        t = taus(v)
    scale = field.kth_root(field.one / t[h - 1], 2)
    v = [scale * x for x in v]
    return v


def orthogonal_reduce(field, L):
    """Complex orthogonal O with O^T L O equal to the canonical form of L.

    Returns (O, CanonicalMatrix).  L must be symmetric over the field.
    """
    p = len(L)
    if p == 0:
        return [], CanonicalMatrix(field, [])
    eigs = eigen_multiplicities(field, L)
    pieces = []  # (lam, h, chain columns)
    for lam, mult in eigs:
        N = [[L[i][j] - (lam if i == j else field.zero) for j in range(p)]
             for i in range(p)]
        Pm = mat_identity(field, p)
        for _ in range(mult):
            Pm = mat_mul(field, N, Pm)
        K = kernel(field, Pm)
        if K.dim != mult:
            raise InternalCheckFailed("generalized eigenspace has wrong dimension")
        S = K
        while S.dim > 0:
            h = _restricted_height(field, N, S)
            chain = _extract_chain(field, N, S, h)
            pieces.append((lam, h, chain))
            S = _b_complement(field, S, chain)
    blocks = [(lam, h) for lam, h, _ in pieces]
    order = sorted(range(len(pieces)),
                   key=lambda t: (field.sort_key(pieces[t][0]), -pieces[t][1]))
    cols = []
    for t in order:
        lam, h, chain = pieces[t]
        Phi = _phi_for_size(field, h)
        C = mat_transpose(chain)          # p x h, columns are the chain
        Wcols = mat_mul(field, C, Phi)
        for c in range(h):
            cols.append([Wcols[r][c] for r in range(p)])
    O = mat_transpose(cols)
    cm = CanonicalMatrix(field, sort_blocks(field, blocks))
    OtO = mat_mul(field, mat_transpose(O), O)
    if not mat_eq(field, OtO, mat_identity(field, p)):
        raise InternalCheckFailed("reduction basis is not b-orthonormal")
    OtLO = mat_mul(field, mat_mul(field, mat_transpose(O), L), O)
    if not mat_eq(field, OtLO, cm.matrix()):
        raise InternalCheckFailed("orthogonal reduction does not reach the canonical form")
    return O, cm


def _restricted_height(field, N, S):
    h = 0
    rows = [list(r) for r in S.basis]
    while any(not field.is_zero(x) for r in rows for x in r):
        rows = [mat_vec(field, N, r) for r in rows]
        h += 1
    return h


def _extract_chain(field, N, S, h):
    """One b-selfdual Jordan chain of length h inside S; returns the chain
    vectors [v, Nv, ..., N^{h-1} v] with b(v, N^{h-1} v) = 1."""
    # vectors of height exactly h: S-rows outside ker(N^{h-1}) cap S
    P = mat_identity(field, len(N))
    for _ in range(h - 1):
        P = mat_mul(field, N, P)
    lower = kernel(field, P).intersect(S)
    cands = lower.complement_rows_in(S)
    v = _tau_nonzero_candidate(field, N, cands, h)
    v = _hankel_normalize(field, N, v, h)
    chain = []
    w = list(v)
    for _ in range(h):
        chain.append(list(w))
        w = mat_vec(field, N, w)
    return chain


def _b_complement(field, S, chain):
    """{x in S : b(x, c) = 0 for all chain vectors c}."""
    coords = [list(r) for r in S.basis]
    if not coords:
        return S
    rows = []
    for c in chain:
        rows.append([_b(field, base, c) for base in coords])
    ker = kernel(field, rows)
    vecs = []
    for kv in ker.basis:
        vec = [field.zero] * S.ambient_dim
        for t, base in enumerate(coords):
            vec = [a + kv[t] * b for a, b in zip(vec, base)]
        vecs.append(vec)
    return Subspace(field, S.ambient_dim, vecs)
