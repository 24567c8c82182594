"""Finite-dimensional commutative local algebras with a marked hyperplane.

A :class:`LocalAlgebra` is a structure-constant table over a backend field
together with the subspace W of the maximal ideal m that encodes the group
action.  Index 0 of the basis is always the unit; products are stored
sparsely for unordered index pairs, so commutativity holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    DimensionMismatch,
    NotAssociative,
    NotLocal,
    NotUnital,
    WNotGenerating,
    WNotInMaximalIdeal,
)
from .linalg import Subspace, kernel, sum_values
from .scalars import QI


class LocalAlgebra:
    """Pair (R, W): structure constants plus the distinguished hyperplane."""

    def __init__(self, field, labels, table, W_rows):
        self.field = field
        self.labels = list(labels)
        self.dim = len(labels)
        # sparse unordered table: {(i, j) with 1 <= i <= j: {k: value}}
        self.table = {}
        for (i, j), vec in table.items():
            if i > j:
                i, j = j, i
            cleaned = {k: v for k, v in vec.items() if not field.is_zero(v)}
            if cleaned:
                self.table[(i, j)] = cleaned
        self.W = Subspace(field, self.dim, W_rows)
        self._pow_cache = None

    # -- element helpers ----------------------------------------------------

    def zero_vec(self):
        return [self.field.zero] * self.dim

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.field.one
        return v

    def unit(self):
        return self.basis_vec(0)

    def product_of_basis(self, i, j):
        """e_i * e_j as a dense vector."""
        if i == 0:
            return self.basis_vec(j)
        if j == 0:
            return self.basis_vec(i)
        if i > j:
            i, j = j, i
        vec = self.zero_vec()
        for k, c in self.table.get((i, j), {}).items():
            vec[k] = c
        return vec

    def multiply(self, x, y):
        """Bilinear extension of the table to coordinate vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("element length does not match the algebra")
        f = self.field
        out = self.zero_vec()
        x0, y0 = x[0], y[0]
        if not f.is_zero(x0):
            for k in range(self.dim):
                out[k] = out[k] + x0 * y[k]
        if not f.is_zero(y0):
            for k in range(1, self.dim):
                out[k] = out[k] + y0 * x[k]
        nz_x = [(i, x[i]) for i in range(1, self.dim)
                if not (isinstance(x[i], QI) and x[i].is_zero())]
        nz_y = [(j, y[j]) for j in range(1, self.dim)
                if not (isinstance(y[j], QI) and y[j].is_zero())]
        for i, xi in nz_x:
            for j, yj in nz_y:
                a, b = (i, j) if i <= j else (j, i)
                cell = self.table.get((a, b))
                if cell:
                    c = xi * yj
                    for k, v in cell.items():
                        out[k] = out[k] + c * v
        return out

    def mult_operator(self, w):
        """Matrix of multiplication by the element w acting on R."""
        cols = [self.multiply(w, self.basis_vec(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    # -- subspace structure ---------------------------------------------------

    def maximal_ideal(self):
        return Subspace(self.field, self.dim,
                        [self.basis_vec(i) for i in range(1, self.dim)])

    def power_subspace(self, k):
        """Span of all k-fold products of maximal-ideal elements."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if self._pow_cache is None:
            chain = [self.maximal_ideal()]
            mbasis = [self.basis_vec(i) for i in range(1, self.dim)]
            while chain[-1].dim > 0:
                prods = [self.multiply(u, v) for u in chain[-1].basis for v in mbasis]
                nxt = Subspace(self.field, self.dim, prods)
                if nxt.dim == chain[-1].dim:
                    break
                chain.append(nxt)
            self._pow_cache = chain
        chain = self._pow_cache
        if k <= len(chain):
            return chain[k - 1]
        return chain[-1]

    def nilpotency_index(self):
        """Smallest d with m^d = 0, or None if m is not nilpotent."""
        k = 1
        prev = None
        while True:
            p = self.power_subspace(k)
            if p.dim == 0:
                return k
            if prev is not None and p.dim == prev:
                return None
            prev = p.dim
            k += 1

    def degree(self):
        """Maximal d with m^d not contained in W (1 if W = m)."""
        d = None
        for k in range(1, self.dim + 2):
            p = self.power_subspace(k)
            if p.dim == 0:
                break
            if not self.W.contains_space(p):
                d = k
        return d if d is not None else 1

    def annihilator(self, S, inside):
        """{alpha in `inside` : alpha * S = 0} as a Subspace."""
        f = self.field
        coords = [list(r) for r in inside.basis]
        if not coords:
            return Subspace(f, self.dim)
        rows = []
        for s in S.basis:
            imgs = [self.multiply(v, s) for v in coords]
            for col in range(self.dim):
                rows.append([imgs[t][col] for t in range(len(coords))])
        if not rows:
            return inside
        ker = kernel(f, rows)
        vecs = []
        for kv in ker.basis:
            vec = [f.zero] * self.dim
            for t, base in enumerate(coords):
                vec = [a + kv[t] * b for a, b in zip(vec, base)]
            vecs.append(vec)
        return Subspace(f, self.dim, vecs)

    # -- validation -----------------------------------------------------------

    def validate(self):
        """Check all pair axioms; returns a ValidationReport or raises."""
        f = self.field
        n = self.dim
        for (i, j), cell in self.table.items():
            if 0 in cell and not f.is_zero(cell[0]):
                raise NotLocal(
                    f"product {self.labels[i]}*{self.labels[j]} has a unit component",
                    witness=(i, j))
        unit_ok = all(self.product_of_basis(0, j) == self.basis_vec(j) for j in range(n))
        if not unit_ok:
            raise NotUnital("basis element 0 does not act as the unit")
        # the associator is skew in its outer arguments for commutative tables,
        # so i <= k with a free middle index j covers every triple
        for j in range(1, n):
            for i in range(1, n):
                eij = self.product_of_basis(i, j)
                for k in range(i, n):
                    left = self.multiply(eij, self.basis_vec(k))
                    right = self.multiply(self.basis_vec(i), self.product_of_basis(j, k))
                    for c in range(n):
                        if not f.is_zero(left[c] - right[c]):
                            raise NotAssociative(
                                f"(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})",
                                witness=(i, j, k))
        nil = self.nilpotency_index()
        if nil is None:
            raise NotLocal("maximal ideal is not nilpotent (idempotent present)")
        munit = self.maximal_ideal()
        if not munit.contains_space(self.W):
            raise WNotInMaximalIdeal("W is not contained in the maximal ideal")
        span = Subspace(f, n, [self.unit()] + [list(r) for r in self.W.basis])
        while True:
            prods = [self.multiply(u, v) for u in span.basis for v in self.W.basis]
            bigger = Subspace(f, n, [list(r) for r in span.basis] + prods)
            if bigger.dim == span.dim:
                break
            span = bigger
        if span.dim != n:
            raise WNotGenerating(
                f"W generates a {span.dim}-dimensional subalgebra of dimension-{n} R")
        return ValidationReport(valid=True, dim=n, nilpotency_index=nil,
                                w_generates=True, degree=self.degree())

    def __repr__(self):
        return f"LocalAlgebra(dim={self.dim}, labels={self.labels})"


@dataclass
class ValidationReport:
    valid: bool
    dim: int
    nilpotency_index: int
    w_generates: bool
    degree: int
    notes: list = dc_field(default_factory=list)


class AlgebraElement:
    """Coordinate vector in an algebra basis, with ring operations."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        if len(coords) != algebra.dim:
            raise DimensionMismatch("coordinate length does not match the algebra")
        self.algebra = algebra
        self.coords = list(coords)

    def __add__(self, other):
        return AlgebraElement(self.algebra,
                              [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return AlgebraElement(self.algebra,
                              [a - b for a, b in zip(self.coords, other.coords)])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.algebra,
                                  self.algebra.multiply(self.coords, other.coords))
        return AlgebraElement(self.algebra, [c * other for c in self.coords])

    __rmul__ = __mul__

    def is_zero(self):
        f = self.algebra.field
        return all(f.is_zero(c) for c in self.coords)

    def __eq__(self, other):
        return (self.algebra is other.algebra
                and all(self.algebra.field.is_zero(a - b)
                        for a, b in zip(self.coords, other.coords)))

    def __repr__(self):
        parts = [f"{c!r}*{self.algebra.labels[k]}"
                 for k, c in enumerate(self.coords)
                 if not self.algebra.field.is_zero(c)]
        return " + ".join(parts) if parts else "0"
