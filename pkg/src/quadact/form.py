"""The invariant bilinear form of a pair (R, W) and the multiplication
decomposition  a*a' = F(a,a')*b0 + sum_i V_i(a,a')*mu_i  on the maximal ideal."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeNotTwo, InternalCheckFailed
from .linalg import Subspace, kernel, simultaneous_triangularize, solve, sum_values


def choose_b0(A):
    """Deterministic element of m^2 \\ W with y0(b0) = 1.

    Taken as the unique echelon-complement row of m^2 over m^2 and W, so a
    table whose basis already contains such a vector gets it back verbatim.
    """
    if A.degree() != 2:
        raise DegreeNotTwo(f"pair has degree {A.degree()}, not 2")
    m2 = A.power_subspace(2)
    inter = m2.intersect(A.W)
    rows = inter.complement_rows_in(m2)
    if len(rows) != 1:
        raise InternalCheckFailed("m^2 / (m^2 cap W) is not one-dimensional")
    return rows[0]


class BilinearForm:
    """Symmetric matrix of F over the basis of R, with kernel data."""

    def __init__(self, A, b0, matrix):
        self.algebra = A
        self.field = A.field
        self.b0 = b0
        self.matrix = matrix
        self.kernel = kernel(A.field, matrix)
        self.corank = self.kernel.dim

    def apply(self, x, y):
        f = self.field
        out = f.zero
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            row = self.matrix[i]
            out = out + xi * sum_values(f, (row[j] * y[j] for j in range(len(y))
                                            if not f.is_zero(y[j])))
        return out

    def kernel_in_W(self):
        """Lemma-level sanity: Ker(F) must sit inside W."""
        return self.algebra.W.contains_space(self.kernel)


def compute_F(A, b0=None):
    """Invariant bilinear form with the normalization F(1, b0) = -1."""
    f = A.field
    b0 = list(b0) if b0 is not None else choose_b0(A)
    # y0: projection onto the b0 coordinate in the basis 1, W, b0
    cols = [A.unit()] + [list(r) for r in A.W.basis] + [b0]
    ncols = len(cols)
    if ncols != A.dim:
        raise DegreeNotTwo("W is not a hyperplane of the maximal ideal")

    def y0(x):
        sol = solve(f, cols, list(x))
        if sol is None:
            raise InternalCheckFailed("vector outside span(1, W, b0)")
        return sol[-1]

    n = A.dim
    M = [[f.zero] * n for _ in range(n)]
    for i in range(1, n):
        for j in range(i, n):
            val = y0(A.product_of_basis(i, j))
            M[i][j] = val
            M[j][i] = val
    for j in range(1, n):
        val = -y0(A.basis_vec(j))
        M[0][j] = val
        M[j][0] = val
    return BilinearForm(A, b0, M)


@dataclass
class MultiplicationDecomposition:
    b0: list
    mus: list                 # triangular basis of Ker F
    V: list                   # V_i matrices on the basis of R (indices >= 1)

    def identity_holds(self, A, F):
        """Check a*a' = F b0 + sum V_i mu_i on all basis pairs of m."""
        f = A.field
        for i in range(1, A.dim):
            for j in range(i, A.dim):
                prod = A.product_of_basis(i, j)
                acc = [F.matrix[i][j] * c for c in self.b0]
                for t, mu in enumerate(self.mus):
                    acc = [a + self.V[t][i][j] * m for a, m in zip(acc, mu)]
                if any(not f.is_zero(a - b) for a, b in zip(acc, prod)):
                    return False
        return True


def decompose_multiplication(A, F, mus=None):
    """Triangular kernel basis and the V_i coefficient matrices."""
    f = A.field
    if A.degree() != 2:
        raise DegreeNotTwo("decomposition requires a quadric pair")
    if mus is None:
        ops = [A.mult_operator(A.basis_vec(i)) for i in range(1, A.dim)]
        mus = simultaneous_triangularize(f, ops, F.kernel)
    cols = [list(mu) for mu in mus] + [list(F.b0)]
    n = A.dim
    V = [[[f.zero] * n for _ in range(n)] for _ in mus]
    for i in range(1, n):
        for j in range(i, n):
            prod = A.product_of_basis(i, j)
            resid = [p - F.matrix[i][j] * c for p, c in zip(prod, F.b0)]
            sol = solve(f, cols[:-1], resid)
            if sol is None:
                raise InternalCheckFailed(
                    "m^2 is not contained in Ker(F) + <b0> (Lemma violated)")
            for t in range(len(mus)):
                V[t][i][j] = sol[t]
                V[t][j][i] = sol[t]
    return MultiplicationDecomposition(b0=list(F.b0), mus=[list(m) for m in mus], V=V)


def invariance_identity_violations(A, F, limit=1):
    """Witnesses (a, b1, b2) of F(a*b1, b2) + F(b1, a*b2) != 0, a in W."""
    f = A.field
    out = []
    for a in A.W.basis:
        for i in range(A.dim):
            b1 = A.basis_vec(i)
            ab1 = A.multiply(list(a), b1)
            for j in range(i, A.dim):
                b2 = A.basis_vec(j)
                ab2 = A.multiply(list(a), b2)
                val = F.apply(ab1, b2) + F.apply(b1, ab2)
                if not f.is_zero(val):
                    out.append((list(a), i, j))
                    if len(out) >= limit:
                        return out
    return out
