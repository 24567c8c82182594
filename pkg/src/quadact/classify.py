"""The structure-sequence flow chart for corank-two pairs.

Starting from V^(0) = W and V_(0) = Ker(F), each step passes to the
annihilator of the current lower space inside the current upper space and
the kernel of F restricted there.  The exit conditions are tested in order:
upper * lower = 0 gives (A, k); lower not contained in the next lower gives
(B, k+1); stabilization gives (C, k+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    CorankNotTwo,
    DimensionOutOfRange,
    FixedSingularLocus,
    InternalCheckFailed,
)
from .linalg import Subspace, kernel


def fix_locus(A):
    """S' = {r in R : r * W = 0}; Fix(Q) is its projectivization."""
    full = Subspace(A.field, A.dim, [A.basis_vec(i) for i in range(A.dim)])
    return A.annihilator(A.W, full)


def kernel_times_m_is_zero(A, F):
    f = A.field
    for mu in F.kernel.basis:
        for i in range(1, A.dim):
            prod = A.multiply(list(mu), A.basis_vec(i))
            if any(not f.is_zero(x) for x in prod):
                return False
    return True


def has_unfixed_singularities(A, F):
    """Ker(F) * m != 0, equivalently Sing(Q) not inside Fix(Q)."""
    if F.corank == 0:
        return False
    return not kernel_times_m_is_zero(A, F)


def restricted_kernel(A, F, space):
    """Ker(F restricted to `space`) as a subspace of the ambient."""
    f = A.field
    coords = [list(r) for r in space.basis]
    if not coords:
        return space
    rows = []
    for s in space.basis:
        rows.append([F.apply(v, list(s)) for v in coords])
    ker = kernel(f, rows)
    vecs = []
    for kv in ker.basis:
        vec = [f.zero] * A.dim
        for t, base in enumerate(coords):
            vec = [a + kv[t] * b for a, b in zip(vec, base)]
        vecs.append(vec)
    return Subspace(f, A.dim, vecs)


def spaces_multiply_to_zero(A, S, T):
    f = A.field
    for u in S.basis:
        for v in T.basis:
            prod = A.multiply(list(u), list(v))
            if any(not f.is_zero(x) for x in prod):
                return False
    return True


@dataclass
class OutputTag:
    x: str
    t: int
    s: int
    terminal_projective: bool

    @property
    def subscript(self):
        if self.x in ("B", "C") and self.s == 0:
            return 0
        return 1 if self.terminal_projective else 2

    @property
    def type_label(self):
        return f"{self.x}{self.subscript}"


@dataclass
class StructureSequence:
    upper: list          # V^(0), V^(1), ...
    lower: list          # V_(0), V_(1), ...
    mu1_line: object = None

    def check_chain(self, A, s):
        """The chain containments up to step s plus the codimension-one and
        annihilation properties of every computed step."""
        for k in range(len(self.upper) - 1):
            if not self.upper[k].contains_space(self.upper[k + 1]):
                return False
            if self.upper[k].dim - self.upper[k + 1].dim > 1:
                return False
            if not spaces_multiply_to_zero(A, self.upper[k + 1], self.lower[k]):
                return False
        for k in range(s):
            if not self.lower[k + 1].contains_space(self.lower[k]):
                return False
            if self.lower[k + 1].dim - self.lower[k].dim > 1:
                return False
        return self.upper[s].contains_space(self.lower[s])


def run_flowchart(A, F):
    """Iterate the structure sequence; returns (OutputTag, StructureSequence)."""
    if F.corank != 2:
        raise CorankNotTwo(f"flow chart requires corank 2, got {F.corank}")
    if kernel_times_m_is_zero(A, F):
        raise FixedSingularLocus("the singular locus is pointwise fixed")
    n = A.W.dim
    if n < 3:
        raise DimensionOutOfRange("no corank-2 pair with unfixed singularities "
                                  "has dim W < 3")
    upper = [A.W]
    lower = [F.kernel]
    k = 0
    while True:
        if spaces_multiply_to_zero(A, upper[k], lower[k]):
            tag = OutputTag("A", k, k, upper[k] == lower[k])
            break
        upper.append(A.annihilator(lower[k], upper[k]))
        lower.append(restricted_kernel(A, F, upper[k + 1]))
        if not lower[k + 1].contains_space(lower[k]):
            s = k
            tag = OutputTag("B", k + 1, s, upper[s] == lower[s] and s >= 1)
            break
        if lower[k + 1] == lower[k]:
            s = k
            tag = OutputTag("C", k + 1, s, upper[s + 1] == lower[s + 1] and s >= 1)
            break
        k += 1
        if k > n:
            raise InternalCheckFailed("flow chart failed to terminate")
    seq = StructureSequence(upper=upper, lower=lower)
    if tag.x == "A" and tag.s == 0:
        raise InternalCheckFailed(
            "output (A, 0) contradicts the unfixed-singularity hypothesis")
    return tag, seq


@dataclass
class ClassificationOutcome:
    kind: str                 # main | lowdim | corank1 | corank0 | fixed_locus | out_of_scope
    corank: int = -1
    degree: int = -1
    F: object = None
    tag: object = None
    seq: object = None
    normalized: object = None
    corank1_lam: object = None        # raw symmetric matrix for corank <= 1
    corank1_blocks: object = None     # canonical blocks when splittable
    fixed_pair: object = None         # (Lambda_1, Lambda_2) for fixed loci
    reason: str = ""

    @property
    def type_label(self):
        if self.normalized is not None:
            return self.normalized.type_label
        return self.kind


def classify_pair(A, validate=True):
    """Full pipeline on a pair (R, W); never raises for in-scope inputs.

    The outcome is cached on the algebra object (tables are immutable)."""
    from .form import compute_F
    from .lowdim import classify_lowdim
    from .normalize import normalize

    cached = getattr(A, "_outcome", None)
    if cached is not None:
        return cached
    if validate:
        A.validate()
    degree = A.degree()
    if degree != 2:
        out = ClassificationOutcome(
            kind="out_of_scope", degree=degree,
            reason=f"pair represents a degree-{degree} hypersurface, not a quadric")
        A._outcome = out
        return out
    F = compute_F(A)
    c = F.corank
    if c == 0:
        out = ClassificationOutcome(kind="corank0", corank=0, degree=2, F=F,
                                     reason="smooth quadric; the action is unique")
        A._outcome = out
        return out
    if c == 1:
        lam, blocks = _corank1_data(A, F)
        out = ClassificationOutcome(kind="corank1", corank=1, degree=2, F=F,
                                     corank1_lam=lam, corank1_blocks=blocks)
        A._outcome = out
        return out
    if c >= 3:
        return ClassificationOutcome(
            kind="out_of_scope", corank=c, degree=2, F=F,
            reason=f"corank {c} is outside the classified range")
    if kernel_times_m_is_zero(A, F):
        pair = _fixed_locus_pair(A, F)
        return ClassificationOutcome(
            kind="fixed_locus", corank=2, degree=2, F=F, fixed_pair=pair,
            reason="singular locus fixed pointwise; pair of symmetric matrices "
                   "emitted, canonicalization out of scope")
    n = A.W.dim
    if n < 3:
        return ClassificationOutcome(
            kind="out_of_scope", corank=2, degree=2, F=F,
            reason="corank-2 pairs with unfixed singularities need dim W >= 3")
    tag, seq = run_flowchart(A, F)
    if n <= 4:
        ns = classify_lowdim(A, F, seq)
        out = ClassificationOutcome(kind="lowdim", corank=2, degree=2, F=F,
                                    tag=tag, seq=seq, normalized=ns)
    else:
        ns = normalize(A, F, tag, seq)
        out = ClassificationOutcome(kind="main", corank=2, degree=2, F=F,
                                    tag=tag, seq=seq, normalized=ns)
    A._outcome = out
    return out


def _corank1_data(A, F):
    from .canonical import orthogonal_reduce
    from .errors import UnsplittableCharPoly
    from .form import choose_b0
    from .linalg import solve
    from .normalize import gram_schmidt_F

    f = A.field
    mu1 = list(F.kernel.basis[0])
    es = gram_schmidt_F(F, F.kernel.complement_rows_in(A.W))
    b0 = F.b0
    p = len(es)
    lam = [[f.zero] * p for _ in range(p)]
    for i in range(p):
        for j in range(i, p):
            prod = A.multiply(es[i], es[j])
            if i == j:
                prod = [a - b for a, b in zip(prod, b0)]
            coeffs = solve(f, [mu1], prod)
            if coeffs is None:
                raise InternalCheckFailed("corank-1 products escape <mu1, b0>")
            lam[i][j] = coeffs[0]
            lam[j][i] = coeffs[0]
    try:
        _, blocks = orthogonal_reduce(f, lam)
    except UnsplittableCharPoly:
        blocks = None
    return lam, blocks


def _fixed_locus_pair(A, F):
    from .linalg import solve
    from .normalize import gram_schmidt_F

    f = A.field
    mus = [list(r) for r in F.kernel.basis]
    es = gram_schmidt_F(F, F.kernel.complement_rows_in(A.W))
    p = len(es)
    lams = [[[f.zero] * p for _ in range(p)] for _ in range(2)]
    for i in range(p):
        for j in range(i, p):
            prod = A.multiply(es[i], es[j])
            if i == j:
                prod = [a - b for a, b in zip(prod, F.b0)]
            coeffs = solve(f, mus, prod)
            if coeffs is None:
                raise InternalCheckFailed("fixed-locus products escape the kernel span")
            for t in range(2):
                lams[t][i][j] = coeffs[t]
                lams[t][j][i] = coeffs[t]
    return lams[0], lams[1]
