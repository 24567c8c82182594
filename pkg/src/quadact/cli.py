"""Command-line interface: file ingestion, classification reports, the
equivalence decision, catalog generation and the self-test sweep.

Exit codes: 0 success/equivalent, 1 inequivalent, 2 invalid input,
3 out-of-scope instance, 4 internal assertion.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from .algebra import LocalAlgebra
from .catalog import (
    LOWDIM_CASES,
    LOWDIM_WITH_DELTA,
    LOWDIM_WITH_LAMBDA,
    MAIN_TYPES,
    TypeParams,
    build_corank1,
    build_lowdim,
    build_type,
)
from .classify import classify_pair
from .actions import exp_action, verify_invariance
from .equivalence import actions_equivalent, random_conjugate
from .errors import (
    InadmissibleParams,
    InternalCheckFailed,
    ParseError,
    QuadactError,
    ValidationError,
)
from .scalars import QI, FieldConfig, make_field, parse_literal

EXIT_OK = 0
EXIT_INEQUIVALENT = 1
EXIT_INVALID = 2
EXIT_OUT_OF_SCOPE = 3
EXIT_INTERNAL = 4


# -- file format ---------------------------------------------------------------


def load_algebra(path, backend=None, tol=None):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}")
    return algebra_from_doc(doc, backend=backend, tol=tol)


def algebra_from_doc(doc, backend=None, tol=None):
    fdoc = doc.get("field", {})
    config = FieldConfig(
        backend=backend or fdoc.get("backend", "exact"),
        epsilon=tol if tol is not None else float(fdoc.get("epsilon", 1e-9)),
        precision=int(fdoc.get("precision", 256)))
    field = make_field(config)
    labels = doc.get("basis")
    if not labels or not isinstance(labels, list):
        raise ParseError("missing basis label list")
    unit = doc.get("unit", labels[0])
    if unit not in labels:
        raise ParseError(f"unit label {unit!r} is not in the basis")
    if labels.index(unit) != 0:
        order = [unit] + [x for x in labels if x != unit]
        raise ParseError(f"the unit must come first in the basis; use {order}")
    idx = {name: k for k, name in enumerate(labels)}
    n = len(labels)
    table = {}
    for key, cell in doc.get("products", {}).items():
        parts = key.split(",")
        if len(parts) != 2 or parts[0] not in idx or parts[1] not in idx:
            raise ParseError(f"bad product key {key!r}")
        i, j = idx[parts[0]], idx[parts[1]]
        if i == 0 or j == 0:
            raise ParseError(f"products with the unit are implicit ({key!r})")
        vec = {}
        for name, lit in cell.items():
            if name not in idx:
                raise ParseError(f"unknown basis label {name!r} in {key!r}")
            vec[idx[name]] = parse_literal(field, lit)
        table[(min(i, j), max(i, j))] = vec
    W_spec = doc.get("W")
    if W_spec is None:
        raise ParseError("missing W")
    W_rows = []
    for item in W_spec:
        if isinstance(item, str):
            if item not in idx:
                raise ParseError(f"unknown W label {item!r}")
            row = [field.zero] * n
            row[idx[item]] = field.one
        else:
            if len(item) != n:
                raise ParseError("W vector length does not match the basis")
            row = [parse_literal(field, lit) for lit in item]
        W_rows.append(row)
    return LocalAlgebra(field, labels, table, W_rows)


def algebra_to_doc(A):
    field = A.field
    products = {}
    for (i, j), cell in sorted(A.table.items()):
        key = f"{A.labels[i]},{A.labels[j]}"
        products[key] = {A.labels[k]: field.literal(v)
                         for k, v in sorted(cell.items())}
    return {
        "field": {"backend": field.backend,
                  "epsilon": field.config.epsilon,
                  "precision": field.config.precision},
        "basis": list(A.labels),
        "unit": A.labels[0],
        "W": [[field.literal(x) for x in row] for row in A.W.basis],
        "products": products,
    }


def dump_algebra(A, path):
    doc = algebra_to_doc(A)
    text = json.dumps(doc, indent=2, sort_keys=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def _digest(doc):
    return hashlib.sha256(
        json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]


# -- reports -------------------------------------------------------------------


def _scalar_str(field, v):
    try:
        lit = field.literal(v)
        return lit if isinstance(lit, str) else json.dumps(lit, sort_keys=True)
    except (ParseError, AttributeError):
        return repr(v)


def classification_report(A, outcome, elapsed):
    field = A.field
    rep = {
        "digest": _digest(algebra_to_doc(A)) if field.backend == "exact" else None,
        "backend": field.backend,
        "valid": True,
        "dim": A.dim,
        "dim_W": A.W.dim,
        "degree": outcome.degree,
        "corank": outcome.corank,
        "outcome": outcome.kind,
        "seconds": round(elapsed, 4),
    }
    if outcome.reason:
        rep["reason"] = outcome.reason
    if outcome.tag is not None:
        rep["flow_chart"] = {"x": outcome.tag.x, "t": outcome.tag.t,
                             "s": outcome.tag.s,
                             "terminal_projective": outcome.tag.terminal_projective}
    ns = outcome.normalized
    if ns is not None:
        rep["type"] = ns.type_label
        rep["parameters"] = {"s": ns.s, "p": ns.p, "delta": ns.delta, "l": ns.l}
        if ns.lowdim_case:
            rep["lowdim_case"] = ns.lowdim_case
        if ns.lam_low is not None:
            rep["lambda_coefficient"] = _scalar_str(field, ns.lam_low)
        if ns.blocks is not None:
            rep["canonical_blocks"] = [
                {"eigenvalue": _scalar_str(field, lam), "size": q}
                for lam, q in ns.blocks.blocks]
        elif ns.lam_raw is not None:
            rep["lambda_matrix_raw"] = [[_scalar_str(field, x) for x in row]
                                        for row in ns.lam_raw]
        rep["change_of_basis"] = [[_scalar_str(field, x) for x in row]
                                  for row in ns.change_of_basis]
        rep["normalized_basis"] = list(ns.basis_names)
    if outcome.corank1_blocks is not None:
        rep["canonical_blocks"] = [
            {"eigenvalue": _scalar_str(field, lam), "size": q}
            for lam, q in outcome.corank1_blocks.blocks]
    elif outcome.corank1_lam is not None:
        rep["lambda_matrix_raw"] = [[_scalar_str(field, x) for x in row]
                                    for row in outcome.corank1_lam]
    if outcome.fixed_pair is not None:
        rep["fixed_pair"] = [[[_scalar_str(field, x) for x in row] for row in lam]
                             for lam in outcome.fixed_pair]
    return rep


def _print_report(rep, as_json):
    if as_json:
        print(json.dumps(rep, indent=2, sort_keys=True))
        return
    order = ["outcome", "type", "lowdim_case", "parameters", "flow_chart",
             "corank", "degree", "lambda_coefficient", "canonical_blocks",
             "reason", "seconds"]
    for key in order:
        if key in rep and rep[key] is not None:
            print(f"{key}: {rep[key]}")


# -- commands ------------------------------------------------------------------


def cmd_validate(args):
    try:
        A = load_algebra(args.path, backend=args.backend, tol=args.tol)
        rep = A.validate()
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(f"invalid: {exc} (witness {exc.witness})", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps({"valid": True, "dim": rep.dim,
                      "nilpotency_index": rep.nilpotency_index,
                      "degree": rep.degree,
                      "w_generates": rep.w_generates}, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_classify(args):
    try:
        A = load_algebra(args.path, backend=args.backend, tol=args.tol)
        t0 = time.time()
        outcome = classify_pair(A)
        rep = classification_report(A, outcome, time.time() - t0)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InternalCheckFailed as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except QuadactError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_SCOPE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(rep, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _print_report(rep, args.report == "json")
    if outcome.kind == "out_of_scope":
        return EXIT_OUT_OF_SCOPE
    return EXIT_OK


def cmd_equiv(args):
    try:
        A = load_algebra(args.patha, backend=args.backend, tol=args.tol)
        B = load_algebra(args.pathb, backend=args.backend, tol=args.tol)
        A.validate()
        B.validate()
        verdict = actions_equivalent(A, B)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except QuadactError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_SCOPE
    wit = None
    if verdict.witness is not None:
        a, h = verdict.witness
        wit = {"a": repr(a), "h": repr(h)}
    print(json.dumps({"equivalent": verdict.equivalent,
                      "detail": verdict.detail, "witness": wit},
                     indent=2, sort_keys=True))
    return EXIT_OK if verdict.equivalent else EXIT_INEQUIVALENT


def _parse_lam(text):
    """--lam accepts a JSON matrix [[..]] or {"blocks": [[eig, size], ..]}."""
    if text is None:
        return None
    data = json.loads(text)
    if isinstance(data, dict) and "blocks" in data:
        from fractions import Fraction
        return [(QI(e) if isinstance(e, int)
                 else QI.from_fractions(Fraction(str(e))), int(q))
                for e, q in data["blocks"]]
    return data


def cmd_generate(args):
    try:
        if args.type in MAIN_TYPES:
            params = TypeParams(args.type, s=args.s, p=args.p,
                                delta=args.delta, lam=_parse_lam(args.lam))
            A = build_type(params)
        elif args.type in LOWDIM_CASES:
            kw = {}
            if args.type in LOWDIM_WITH_DELTA:
                kw["delta"] = args.delta
            if args.type in LOWDIM_WITH_LAMBDA:
                if args.lam is None:
                    raise InadmissibleParams(f"{args.type} needs --lam")
                kw["lam"] = QI(int(args.lam))
            if args.type == "ld4_b0":
                kw["lam"] = _parse_lam(args.lam)
            A = build_lowdim(args.type, **kw)
        elif args.type == "corank1":
            A = build_corank1(_parse_lam(args.lam) or [[0]])
        else:
            raise InadmissibleParams(f"unknown type {args.type!r}")
    except (InadmissibleParams, ValueError, json.JSONDecodeError) as exc:
        print(f"inadmissible parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    dump_algebra(A, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_act(args):
    try:
        A = load_algebra(args.path, backend=args.backend, tol=args.tol)
        A.validate()
        g = [parse_literal(A.field, part) for part in args.g.split(",")]
        rho = exp_action(A, g)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except QuadactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps({"rho": [[_scalar_str(A.field, x) for x in row]
                              for row in rho]}, indent=2, sort_keys=True))
    if args.check:
        from .form import compute_F
        F = compute_F(A)
        verify_invariance(A, F, trials=[g])
        print("invariance check passed")
    return EXIT_OK


def _selftest_instances(max_s, max_p):
    out = []
    for label in MAIN_TYPES:
        for s in range(1, max_s + 1):
            for p in range(0, max_p + 1):
                for delta in (0, 1):
                    try:
                        params = TypeParams(label, s=s if label not in ("B0", "C0") else 0,
                                            p=p, delta=delta if label != "B0" else 0,
                                            lam=None)
                        build_type(params)
                    except InadmissibleParams:
                        continue
                    out.append(params)
    seen = set()
    uniq = []
    for prm in out:
        key = (prm.label, prm.s, prm.p, prm.delta)
        if key not in seen:
            seen.add(key)
            uniq.append(prm)
    return uniq


def cmd_selftest(args):
    instances = _selftest_instances(args.max_s, args.max_p)
    passed = failed = 0
    first_failure = None
    for prm in sorted(instances, key=lambda q: (q.label, q.s, q.p, q.delta)):
        A = build_type(prm)
        out = classify_pair(A)
        ns = out.normalized
        ok = (ns is not None and ns.type_label == prm.label and ns.s == prm.s
              and ns.p == prm.p and (prm.label == "B0" or ns.delta == prm.delta))
        for it in range(args.iterations):
            if not ok:
                break
            B = random_conjugate(A, args.seed + it)
            verdict = actions_equivalent(A, B)
            ok = ok and verdict.equivalent
        status = "pass" if ok else "FAIL"
        if ok:
            passed += 1
        else:
            failed += 1
            if first_failure is None:
                first_failure = (prm.label, prm.s, prm.p, prm.delta)
        print(f"{status} {prm.label} s={prm.s} p={prm.p} delta={prm.delta}")
    print(f"selftest: {passed} passed, {failed} failed"
          + (f", first failure {first_failure}" if first_failure else ""))
    return EXIT_OK if failed == 0 else EXIT_INTERNAL


def build_parser():
    ap = argparse.ArgumentParser(
        prog="quadact",
        description="classify additive actions on corank-two hyperquadrics")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--backend", choices=["exact", "approx"], default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=20240901)

    p = sub.add_parser("validate", help="check the algebra axioms of a file")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="run the full classification pipeline")
    p.add_argument("path")
    p.add_argument("--report", choices=["json", "text"], default="text")
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("equiv", help="decide equivalence of two actions")
    p.add_argument("patha")
    p.add_argument("pathb")
    common(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("generate", help="emit a catalog instance as a file")
    p.add_argument("type")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--lam", default=None,
                   help="JSON matrix, JSON block list, or integer coefficient")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("act", help="print the action matrix for a parameter")
    p.add_argument("path")
    p.add_argument("--g", required=True, help="comma-separated W coordinates")
    p.add_argument("--check", action="store_true")
    common(p)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("selftest", help="sweep, conjugate and re-classify")
    p.add_argument("--iterations", type=int, default=3)
    p.add_argument("--max-s", type=int, default=2)
    p.add_argument("--max-p", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
