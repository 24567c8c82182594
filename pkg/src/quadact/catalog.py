"""Constructors for canonical instances of every classified type.

Basis order is always ``1, mu1, mu2, g_1..g_s, e_1..e_p, (f_{s+1}), f_s..f_1,
b0`` (types without some group simply omit it), with W spanned by everything
between the unit and b0.  All products not implied by the presentation are
zero; b0 annihilates the maximal ideal in every main-branch type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LocalAlgebra
from .canonical import assemble_blocks, sort_blocks
from .errors import InadmissibleParams
from .scalars import ExactField, QI

MAIN_TYPES = ("A1", "A2", "B0", "B1", "B2", "C0", "C1", "C2")

LOWDIM_CASES = (
    # dim W = 4
    "ld4_b0",        # Ker F * Ker F != 0: four-dimensional B0 with p = 2
    "ld4_ii1",       # Ker F = V_(1), dim(V^(1)*W) = 3, coefficient lambda
    "ld4_ii2",       # Ker F = V_(1), dim(V^(1)*W) = 2, delta in {0, 1}
    "ld4_a1s1",      # V_(1) = V^(1), V^(1)*V^(1) = 0, delta in {0, 1}
    "ld4_b1s1",      # V_(1) = V^(1), V^(1)*V^(1) != 0, dim(V^(1)W) = 2, delta
    "ld4_iii2b",     # V_(1) = V^(1), dim(V^(1)W) = 3, f1^2 = mu2
    "ld4_iii2c",     # V_(1) = V^(1), dim(V^(1)W) = 3, f1^2 = 0
    # dim W = 3
    "ld3_i_cusp",    # mu2^2 = mu1, e^3 = mu1
    "ld3_i_flat",    # mu2^2 = mu1, e^3 = 0
    "ld3_ii_chain",  # mu2*e = mu1, e^3 = mu1
    "ld3_ii_flat",   # mu2*e = mu1, e^3 = 0
    "ld3_ii_x5",     # mu2*e = mu1, e^3 = mu2 (the K[x]/(x^5) action)
)

# case ids that carry a free parameter
LOWDIM_WITH_DELTA = {"ld4_ii2", "ld4_a1s1", "ld4_b1s1"}
LOWDIM_WITH_LAMBDA = {"ld4_ii1"}
LOWDIM_WITH_MATRIX = {"ld4_b0"}


@dataclass
class TypeParams:
    label: str
    s: int = 0
    p: int = 0
    delta: int = 0
    lam: object = None   # None | symmetric matrix | block list [(eig, size)]

    def dim_W(self):
        base = {"A1": 2 + 2 * self.s, "B1": 2 + 2 * self.s,
                "A2": 2 + 2 * self.s + self.p, "B2": 2 + 2 * self.s + self.p,
                "B0": 2 + self.p, "C0": 3 + self.p,
                "C1": 3 + 2 * self.s, "C2": 3 + 2 * self.s + self.p}
        return base[self.label]


def _check_admissible(params):
    t = params.label
    if t not in MAIN_TYPES:
        raise InadmissibleParams(f"unknown type label {t!r}")
    if t in ("A1", "B1", "C1"):
        if params.s < 1:
            raise InadmissibleParams(f"{t} requires s >= 1")
        if params.p != 0:
            raise InadmissibleParams(f"{t} has no e-generators (p must be 0)")
    if t in ("A2", "B2", "C2") and (params.s < 1 or params.p < 1):
        raise InadmissibleParams(f"{t} requires s >= 1 and p >= 1")
    if t in ("B0", "C0") and params.p < 1:
        raise InadmissibleParams(f"{t} requires p >= 1")
    if t == "B0" and params.delta:
        raise InadmissibleParams("B0 carries no delta parameter")
    if params.delta not in (0, 1):
        raise InadmissibleParams("delta must be 0 or 1")
    if params.dim_W() < 5:
        raise InadmissibleParams(
            f"main-branch types need dim W >= 5 (got {params.dim_W()}); "
            "use build_lowdim for smaller actions")


def lambda_matrix(field, lam, p):
    """Normalize a Lambda specification to a symmetric p x p matrix."""
    if lam is None:
        return [[field.zero] * p for _ in range(p)]
    if lam and isinstance(lam, (list, tuple)) and isinstance(lam[0], tuple):
        blocks = [(_to_val(field, e), int(q)) for e, q in lam]
        if sum(q for _, q in blocks) != p:
            raise InadmissibleParams("Lambda block sizes do not sum to p")
        return assemble_blocks(field, blocks)
    M = [[_to_val(field, x) for x in row] for row in lam]
    if len(M) != p or any(len(r) != p for r in M):
        raise InadmissibleParams(f"Lambda must be {p}x{p}")
    for i in range(p):
        for j in range(p):
            if not field.is_zero(M[i][j] - M[j][i]):
                raise InadmissibleParams("Lambda must be symmetric")
    return M


def _to_val(field, x):
    if isinstance(x, int):
        return field.from_int(x)
    if isinstance(x, Fraction):
        return field.from_fractions(x)
    return x


def build_type(params, field=None):
    """Structure-constant table realizing a main-branch presentation."""
    _check_admissible(params)
    field = field or ExactField()
    t, s, p, delta = params.label, params.s, params.p, params.delta

    labels = ["1", "mu1", "mu2"]
    labels += [f"g{i}" for i in range(1, s + 1)]
    labels += [f"e{k}" for k in range(1, p + 1)]
    if t in ("C1", "C2"):
        labels += [f"f{s + 1}"]
    labels += [f"f{i}" for i in range(s, 0, -1)]
    if t == "C0":
        labels = ["1", "mu1", "mu2"] + [f"e{k}" for k in range(1, p + 2)]
    labels += ["b0"]

    idx = {name: k for k, name in enumerate(labels)}
    one = field.one
    table = {}

    def put(a, b, *terms):
        vec = {}
        for name, val in terms:
            vec[idx[name]] = _to_val(field, val)
        i, j = idx[a], idx[b]
        table[(min(i, j), max(i, j))] = vec

    if t == "B0":
        put("mu2", "mu2", ("mu1", one))
    if t == "C0":
        L = lambda_matrix(field, params.lam, p)
        for k in range(1, p + 1):
            for l in range(k, p + 1):
                terms = []
                if k == l:
                    terms.append(("b0", one))
                if not field.is_zero(L[k - 1][l - 1]):
                    terms.append(("mu1", L[k - 1][l - 1]))
                if terms:
                    put(f"e{k}", f"e{l}", *terms)
        ep1 = f"e{p + 1}"
        terms = [("b0", one)]
        if delta:
            terms.append(("mu2", one))
        put(ep1, ep1, *terms)
        put(ep1, "mu2", ("mu1", one))
    if t in ("A1", "A2", "B1", "B2", "C1", "C2"):
        for i in range(1, s + 1):
            put(f"f{i}", f"g{i}", ("b0", one))
        for i in range(2, s + 1):
            put(f"f{i}", f"g{i - 1}", ("mu1", one))
        put("f1", "mu2", ("mu1", one))
        if delta:
            put("f1", "f1", ("mu2", one))
    if t in ("B1", "B2"):
        gs = f"g{s}"
        put(gs, gs, ("mu1", one))
    if t in ("C1", "C2"):
        fs1 = f"f{s + 1}"
        put(fs1, fs1, ("b0", one))
        put(fs1, f"g{s}", ("mu1", one))
    if t in ("A2", "B2", "C2"):
        L = lambda_matrix(field, params.lam, p)
        for k in range(1, p + 1):
            for l in range(k, p + 1):
                terms = []
                if k == l:
                    terms.append(("b0", one))
                if not field.is_zero(L[k - 1][l - 1]):
                    terms.append(("mu1", L[k - 1][l - 1]))
                if terms:
                    put(f"e{k}", f"e{l}", *terms)
    if t == "B0":
        L = lambda_matrix(field, params.lam, p)
        for k in range(1, p + 1):
            for l in range(k, p + 1):
                terms = []
                if k == l:
                    terms.append(("b0", one))
                if not field.is_zero(L[k - 1][l - 1]):
                    terms.append(("mu1", L[k - 1][l - 1]))
                if terms:
                    put(f"e{k}", f"e{l}", *terms)

    W_rows = [_basis_row(field, len(labels), k) for k in range(1, len(labels) - 1)]
    return LocalAlgebra(field, labels, table, W_rows)


def _basis_row(field, n, k):
    row = [field.zero] * n
    row[k] = field.one
    return row


def _lowdim_table(field, labels, prods):
    idx = {name: k for k, name in enumerate(labels)}
    table = {}
    for (a, b), terms in prods.items():
        vec = {idx[name]: _to_val(field, val) for name, val in terms.items()
               if not field.is_zero(_to_val(field, val))}
        i, j = idx[a], idx[b]
        if vec:
            table[(min(i, j), max(i, j))] = vec
    W_rows = [_basis_row(field, len(labels), k) for k in range(1, len(labels) - 1)]
    return LocalAlgebra(field, labels, table, W_rows)


def build_lowdim(case, field=None, delta=0, lam=None):
    """One of the low-dimensional (dim W <= 4) presentations."""
    field = field or ExactField()
    one = field.one
    if case not in LOWDIM_CASES:
        raise InadmissibleParams(f"unknown low-dimensional case {case!r}")
    if delta not in (0, 1):
        raise InadmissibleParams("delta must be 0 or 1")
    if case in LOWDIM_WITH_LAMBDA and lam is None:
        raise InadmissibleParams(f"{case} requires the coefficient lambda")
    if case not in LOWDIM_WITH_DELTA and delta:
        raise InadmissibleParams(f"{case} carries no delta parameter")

    if case == "ld4_b0":
        return build_b0_p2(field, lam)

    W4 = ["1", "mu1", "mu2", "g1", "f1", "b0"]
    W3 = ["1", "mu1", "mu2", "e", "b0"]

    if case == "ld4_ii1":
        lamv = _to_val(field, lam)
        return _lowdim_table(field, W4, {
            ("g1", "g1"): {"b0": one},
            ("f1", "g1"): {"mu2": one},
            ("f1", "f1"): {"b0": one, "mu2": lamv},
            ("f1", "mu2"): {"mu1": one},
            ("b0", "g1"): {"mu1": one},
        })
    if case == "ld4_ii2":
        return _lowdim_table(field, W4, {
            ("g1", "g1"): {"b0": one},
            ("f1", "f1"): {"b0": one, "mu2": field.from_int(delta)},
            ("f1", "mu2"): {"mu1": one},
        })
    if case == "ld4_a1s1":
        return _lowdim_table(field, W4, {
            ("f1", "g1"): {"b0": one},
            ("f1", "mu2"): {"mu1": one},
            ("f1", "f1"): {"mu2": field.from_int(delta)},
        })
    if case == "ld4_b1s1":
        return _lowdim_table(field, W4, {
            ("f1", "g1"): {"b0": one},
            ("f1", "mu2"): {"mu1": one},
            ("f1", "f1"): {"mu2": field.from_int(delta)},
            ("g1", "g1"): {"mu1": one},
        })
    if case == "ld4_iii2b":
        return _lowdim_table(field, W4, {
            ("f1", "g1"): {"b0": one},
            ("f1", "mu2"): {"mu1": one},
            ("f1", "f1"): {"mu2": one},
            ("g1", "g1"): {"mu2": one},
            ("b0", "g1"): {"mu1": one},
        })
    if case == "ld4_iii2c":
        return _lowdim_table(field, W4, {
            ("f1", "g1"): {"b0": one},
            ("f1", "mu2"): {"mu1": one},
            ("g1", "g1"): {"mu2": one},
            ("b0", "g1"): {"mu1": one},
        })
    if case == "ld3_i_cusp":
        return _lowdim_table(field, W3, {
            ("mu2", "mu2"): {"mu1": one},
            ("e", "e"): {"b0": one},
            ("e", "b0"): {"mu1": one},
        })
    if case == "ld3_i_flat":
        return _lowdim_table(field, W3, {
            ("mu2", "mu2"): {"mu1": one},
            ("e", "e"): {"b0": one},
        })
    if case == "ld3_ii_chain":
        return _lowdim_table(field, W3, {
            ("mu2", "e"): {"mu1": one},
            ("e", "e"): {"b0": one},
            ("e", "b0"): {"mu1": one},
        })
    if case == "ld3_ii_flat":
        return _lowdim_table(field, W3, {
            ("mu2", "e"): {"mu1": one},
            ("e", "e"): {"b0": one},
        })
    if case == "ld3_ii_x5":
        return _lowdim_table(field, W3, {
            ("mu2", "e"): {"mu1": one},
            ("e", "e"): {"b0": one},
            ("e", "b0"): {"mu2": one},
            ("b0", "b0"): {"mu1": one},
        })
    raise InadmissibleParams(case)


def build_b0_p2(field, lam):
    """Four-dimensional version of B0 (p = 2)."""
    one = field.one
    L = lambda_matrix(field, lam, 2)
    labels = ["1", "mu1", "mu2", "e1", "e2", "b0"]
    prods = {
        ("mu2", "mu2"): {"mu1": one},
        ("e1", "e1"): {"b0": one, "mu1": L[0][0]},
        ("e2", "e2"): {"b0": one, "mu1": L[1][1]},
        ("e1", "e2"): {"mu1": L[0][1]},
    }
    return _lowdim_table(field, labels, prods)


def build_corank1(lam, field=None):
    """Corank-one reference pair: e_i e_j = delta_ij b0 + Lambda_ij mu1."""
    field = field or ExactField()
    q = len(lam) if lam else 1
    L = lambda_matrix(field, lam, q)
    one = field.one
    labels = ["1", "mu1"] + [f"e{k}" for k in range(1, q + 1)] + ["b0"]
    prods = {}
    for k in range(1, q + 1):
        for l in range(k, q + 1):
            terms = {}
            if k == l:
                terms["b0"] = one
            if not field.is_zero(L[k - 1][l - 1]):
                terms["mu1"] = L[k - 1][l - 1]
            if terms:
                prods[(f"e{k}", f"e{l}")] = terms
    return _lowdim_table(field, labels, prods)


def build_corank0(n, field=None):
    """The unique smooth-quadric action: e_i e_j = delta_ij b0."""
    field = field or ExactField()
    one = field.one
    labels = ["1"] + [f"e{k}" for k in range(1, n + 1)] + ["b0"]
    prods = {(f"e{k}", f"e{k}"): {"b0": one} for k in range(1, n + 1)}
    return _lowdim_table(field, labels, prods)


def build_fixed_locus(lam1, lam2, field=None):
    """Corank-two pair whose singular locus is pointwise fixed."""
    field = field or ExactField()
    q = len(lam1)
    L1 = lambda_matrix(field, lam1, q)
    L2 = lambda_matrix(field, lam2, q)
    one = field.one
    labels = ["1", "mu1", "mu2"] + [f"e{k}" for k in range(1, q + 1)] + ["b0"]
    prods = {}
    for k in range(1, q + 1):
        for l in range(k, q + 1):
            terms = {}
            if k == l:
                terms["b0"] = one
            if not field.is_zero(L1[k - 1][l - 1]):
                terms["mu1"] = L1[k - 1][l - 1]
            if not field.is_zero(L2[k - 1][l - 1]):
                terms["mu2"] = L2[k - 1][l - 1]
            if terms:
                prods[(f"e{k}", f"e{l}")] = terms
    return _lowdim_table(field, labels, prods)
