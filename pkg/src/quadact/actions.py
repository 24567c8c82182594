"""The group action itself: exponential matrices, invariance checks, orbit
dimensions, the boundary maximum, and the cone extension that recovers
higher-corank actions from a corank-one base."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    InvalidBase,
    InvarianceViolated,
    WitnessMismatch,
    ZeroElement,
)
from .linalg import Subspace, kernel, mat_identity, mat_mul, mat_vec, nilpotent_exp


def exp_action(A, g):
    """Matrix of multiplication by exp(sum g_i w_i) on R, where the w_i run
    over the echelon basis of W."""
    if len(g) != A.W.dim:
        raise DimensionMismatch(f"need {A.W.dim} group coordinates, got {len(g)}")
    f = A.field
    w = [f.zero] * A.dim
    for gi, row in zip(g, A.W.basis):
        if f.is_zero(gi):
            continue
        w = [a + gi * b for a, b in zip(w, row)]
    N = A.mult_operator(w)
    return nilpotent_exp(f, N)


def action_is_homomorphism(A, g, h):
    f = A.field
    lhs = mat_mul(f, exp_action(A, g), exp_action(A, h))
    rhs = exp_action(A, [a + b for a, b in zip(g, h)])
    return all(f.is_zero(a - b) for r1, r2 in zip(lhs, rhs) for a, b in zip(r1, r2))


def verify_invariance(A, F, trials=None):
    """F(rho(g) x, rho(g) y) = F(x, y) on basis grids; raises with a witness
    on failure.  ``trials`` selects specific g vectors, default: every W
    direction plus their sum."""
    f = A.field
    n = A.dim
    gs = trials
    if gs is None:
        gs = []
        for k in range(A.W.dim):
            g = [f.zero] * A.W.dim
            g[k] = f.one
            gs.append(g)
        gs.append([f.one] * A.W.dim)
    for g in gs:
        rho = exp_action(A, g)
        cols = [[rho[i][j] for i in range(n)] for j in range(n)]
        for i in range(n):
            for j in range(i, n):
                val = F.apply(cols[i], cols[j])
                if not f.is_zero(val - F.matrix[i][j]):
                    raise InvarianceViolated(
                        "the action does not preserve the form",
                        witness=(list(g), i, j))
    return True


def orbit_dimension(A, r):
    """dim(r * W), the tangent-space dimension of the orbit through [r]."""
    f = A.field
    if all(f.is_zero(c) for c in r):
        raise ZeroElement("orbit of the zero vector is undefined")
    prods = [A.multiply(list(r), list(row)) for row in A.W.basis]
    return Subspace(f, A.dim, prods).dim


def _witness_element(A, ns):
    """Boundary element with maximal orbit per the classified type."""
    f = A.field
    n = A.dim
    cols = [[ns.change_of_basis[i][j] for i in range(n)] for j in range(n)]
    names = ns.basis_names
    idx = {nm: k for k, nm in enumerate(names)}
    if ns.type_label == "B0":
        w = [a + f.i * b + c for a, b, c in
             zip(cols[idx["e1"]], cols[idx["e2"]], cols[idx["mu2"]])]
        return w
    if ns.type_label == "C0":
        p = ns.p
        w = [a + f.i * b for a, b in
             zip(cols[idx[f"e{p + 1}"]], cols[idx["e1"]])]
        return w
    return cols[idx["f1"]]


def boundary_max_orbit(A, outcome):
    """l = dim m^2 with the witness-element cross-check (main branch only)."""
    if outcome.normalized is None or outcome.normalized.lowdim_case is not None:
        raise WitnessMismatch(
            "boundary orbit bound via dim m^2 needs a main-branch instance "
            "(the identity can fail below dim W = 5)")
    ns = outcome.normalized
    l = A.power_subspace(2).dim
    if l != ns.l:
        raise WitnessMismatch("stored l disagrees with dim m^2")
    w = _witness_element(A, ns)
    F = outcome.F
    if not A.field.is_zero(F.apply(w, w)):
        raise WitnessMismatch("witness element does not lie on the quadric")
    d = orbit_dimension(A, w)
    if d != l:
        raise WitnessMismatch(f"witness orbit has dim {d}, expected l = {l}")
    return l


# -- cone extension (simple recovery) ----------------------------------------


@dataclass
class RecoveredAction:
    """Block matrices of the extended action on V + K^r."""
    base: object            # the corank-one LocalAlgebra
    r: int
    form_matrix: list       # extended quadratic form (F padded by zeros)

    @property
    def dim(self):
        return self.base.dim + self.r

    def rho(self, g, h):
        """Matrix of the extended action for base parameter g and cone
        parameter h (the displayed cone formula)."""
        from .actions import exp_action as _exp
        f = self.base.field
        if len(h) != self.r:
            raise DimensionMismatch(f"need {self.r} cone coordinates")
        n = self.base.dim
        base_rho = _exp(self.base, g)
        out = [[f.zero] * (n + self.r) for _ in range(n + self.r)]
        for i in range(n):
            for j in range(n):
                out[i][j] = base_rho[i][j]
        for t in range(self.r):
            out[n + t][n + t] = f.one
            # z_t + h_t * x0 where x0 reads the unit coefficient, which the
            # base action preserves
            for j in range(n):
                out[n + t][j] = h[t] * base_rho[0][j]
        return out


def simple_recovery(base, r):
    """Extend a corank-one action to the cone with an r-dimensional vertex."""
    if r < 1:
        raise InvalidBase("the cone extension needs r >= 1")
    from .form import compute_F
    try:
        F = compute_F(base)
    except Exception as exc:
        raise InvalidBase(f"base pair does not carry a quadric form: {exc}")
    if F.corank != 1:
        raise InvalidBase(f"base must have corank 1, got {F.corank}")
    f = base.field
    n = base.dim
    ext = [[f.zero] * (n + r) for _ in range(n + r)]
    for i in range(n):
        for j in range(n):
            ext[i][j] = F.matrix[i][j]
    return RecoveredAction(base=base, r=r, form_matrix=ext)


def recovered_corank(rec):
    return kernel(rec.base.field, rec.form_matrix).dim


def recovered_invariance_check(rec, g, h):
    """F'(rho x, rho y) = F'(x, y) for the extended data."""
    f = rec.base.field
    rho = rec.rho(g, h)
    n = rec.dim
    cols = [[rho[i][j] for i in range(n)] for j in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = f.zero
            for a in range(n):
                if f.is_zero(cols[i][a]):
                    continue
                row = rec.form_matrix[a]
                for b in range(n):
                    acc = acc + cols[i][a] * row[b] * cols[j][b]
            if not f.is_zero(acc - rec.form_matrix[i][j]):
                return False
    return True
