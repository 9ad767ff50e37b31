"""Command-line front end.

    cobordism-classes fgl --degree 4
    cobordism-classes class --kind Q --r 0 --bundle "O(1)@CP2"
    cobordism-classes expand --kind Q --r 1 --rank 2 --degree 5 --difference
    cobordism-classes pushforward --fiber-dim 2 --expr "t^2 + u*t"
    cobordism-classes verify --suite examples
    cobordism-classes genus --eval "b1^2 - b2" --named todd

Exit status: 0 on success, 1 when a verification fails, 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .char_classes import (DEFAULT_R_FLOOR, compute_class, p_minus_q, universal_class)
from .coeff_ring import parse_coeffpoly
from .formal_group import fgl
from .graded_series import Var
from .pushforward import cohomology_pushforward, trivial_proj_pushforward
from .space_models import BundleSpec, parse_bundle
from .verification import SUITES, genus_stretch, parse_series

SCHEMA = 1
DEGREE_ENV = "COBORDISM_MAX_DEGREE"
EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _default_degree() -> int:
    raw = os.environ.get(DEGREE_ENV, "4")
    try:
        value = int(raw)
    except ValueError:
        raise InputError("%s must be an integer, got %r" % (DEGREE_ENV, raw))
    if value < 1:
        raise InputError("%s must be >= 1" % DEGREE_ENV)
    return value


def _degree(args) -> int:
    d = args.degree if args.degree is not None else _default_degree()
    if d < 1:
        raise InputError("--degree must be >= 1")
    return d


# ---------------------------------------------------------------------------
# commands; each returns (exit status, json payload, text lines)


def cmd_fgl(args):
    d = _degree(args)
    F = fgl(d)
    payload = {"degree": d, "law": F.law.to_json(), "log": F.log.to_json(),
               "exp": F.exp.to_json(), "inverse": F.chi.to_json()}
    lines = ["F = %s" % F.law]
    if args.all:
        lines += ["log = %s" % F.log, "exp = %s" % F.exp, "chi = %s" % F.chi]
    return EXIT_OK, payload, lines


def _class_bundle(args) -> BundleSpec:
    if args.bundle and args.rank is not None:
        raise InputError("give either --bundle or --rank, not both")
    if args.bundle:
        try:
            return parse_bundle(args.bundle)
        except ValueError as exc:
            raise InputError(str(exc))
    if args.rank is None:
        raise InputError("--bundle or --rank is required")
    if args.rank < 1:
        raise InputError("--rank must be >= 1")
    return BundleSpec.formal(args.rank, _degree(args))


def cmd_class(args):
    xi = _class_bundle(args)
    kw = {}
    if args.kind == "Q":
        kw["route"] = args.route
        if args.r < DEFAULT_R_FLOOR and not args.allow_low_r:
            raise InputError("r below %d needs --allow-low-r" % DEFAULT_R_FLOOR)
    if args.kind == "P":
        kw["extension"] = args.extension
    try:
        res = compute_class(args.kind, args.r, xi, **kw)
    except ValueError as exc:
        raise InputError(str(exc))
    text = str(res)
    payload = res.to_json()
    if xi.universal:
        payload["degree"] = int(xi.order)
    return EXIT_OK, payload, [text]


def cmd_expand(args):
    d = _degree(args)
    if args.rank < 1:
        raise InputError("--rank must be >= 1")
    kw = {"extension": True} if args.kind == "P" else {}
    try:
        res = universal_class(args.kind, args.r, args.rank, d, **kw)
    except ValueError as exc:
        raise InputError(str(exc))
    exp = res.expansion()
    comps = exp.homogeneous_components()
    payload = {"kind": args.kind, "r": args.r, "rank": args.rank, "degree": d,
               "value": exp.to_json(),
               "components": {str(k): v.to_json() for k, v in comps.items()}}
    lines = ["%s_%d, rank %d, exact through degree %d:" % (args.kind, args.r, args.rank, d),
             "  %s" % exp]
    for k, v in comps.items():
        lines.append("  degree %d: %s" % (k, v))
    if args.difference:
        diff = p_minus_q(args.r, args.rank, d)
        payload["p_minus_q"] = {
            "vanishes_through": diff.vanishes_through(),
            "components": {str(k): diff.component(k).to_json() for k in range(0, d + 1)}}
        lines.append("P_%d - Q_%d by degree:" % (args.r, args.r))
        for k in range(0, d + 1):
            lines.append("  degree %d: %s" % (k, diff.component(k)))
        lines.append("  zero through degree %d" % diff.vanishes_through())
    return EXIT_OK, payload, lines


def cmd_pushforward(args):
    k = args.fiber_dim
    if k < 0:
        raise InputError("--fiber-dim must be >= 0")
    base = [Var(name) for name in (args.base_vars.split(",") if args.base_vars else [])
            if name]
    base_caps = {}
    if args.space:
        from .space_models import parse_space
        try:
            space = parse_space(args.space)
        except ValueError as exc:
            raise InputError(str(exc))
        base = list(space.vars)
        base_caps = dict(zip(space.names, space.dims))
    fiber = args.fiber_var
    try:
        f = parse_series(args.expr, tuple(base) + (Var(fiber),))
    except Exception as exc:  # sympy raises a variety of parse errors
        raise InputError("cannot parse expression: %s" % exc)
    top = max((m[-1] for m in f.terms), default=0)
    f = f.with_caps({fiber: max(k, top)})
    if args.cohomology:
        out = cohomology_pushforward(f, k, fiber)
    else:
        out = trivial_proj_pushforward(f, k, fiber)
    if base_caps:
        out = out.embed(tuple(v for v in f.vars if v.name != fiber))
    return EXIT_OK, {"fiber_dim": k, "value": out.to_json()}, [str(out)]


def cmd_verify(args):
    suite = args.suite
    if suite == "all":
        names = [s for s in SUITES]
    else:
        names = [suite]
    reports = []
    for name in names:
        fn = SUITES[name]
        if name == "examples" and args.bundles is not None:
            reports.append(fn([b for b in args.bundles.split(";")]))
        else:
            reports.append(fn())
    lines = []
    status = EXIT_OK
    for rep in reports:
        counts = rep.counts()
        lines.append("suite %s: %d pass, %d fail, %d warn"
                     % (rep.suite, counts["PASS"], counts["FAIL"], counts["WARN"]))
        for c in rep.checks:
            if args.verbose or c.status != "PASS":
                lines.append("  " + c.line().replace("\n", "\n  "))
        if not rep.ok:
            status = EXIT_VERIFY
    payload = {"suites": [{"suite": r.suite, "ok": r.ok, "counts": r.counts(),
                           "checks": [c.to_json() for c in r.checks]} for r in reports]}
    return status, payload, lines


def cmd_genus(args):
    from .chern_dold import Genus, apply_genus
    import sympy

    try:
        p = parse_coeffpoly(args.eval)
    except Exception as exc:
        raise InputError("cannot parse coefficient expression: %s" % exc)
    length = max(p.max_generator(), 1)
    if args.named and args.lambdas:
        raise InputError("give either --named or --lambda")
    if args.lambdas:
        try:
            vals = [sympy.sympify(v) for v in args.lambdas.split(",")]
        except sympy.SympifyError as exc:
            raise InputError(str(exc))
        genus = Genus(tuple(vals), "custom")
    else:
        named = args.named or "symbolic"
        makers = {"todd": Genus.todd, "chi_y": Genus.chi_y, "elliptic": Genus.ochanine,
                  "symbolic": Genus.symbolic, "trivial": Genus.trivial}
        genus = makers[named](length)
    try:
        value = apply_genus(p, genus)
    except ValueError as exc:
        raise InputError(str(exc))
    return EXIT_OK, {"input": str(p), "genus": genus.name, "value": str(value)}, [str(value)]


def cmd_stretch(args):
    checks, reports = genus_stretch()
    lines = [c.line() for c in checks]
    for r in reports:
        lines += r.lines()
    payload = {"checks": [c.to_json() for c in checks],
               "reports": [{"bundle": r.bundle, "pushed": str(r.pushed),
                            "values": {k: str(v) for k, v in r.values.items()}}
                           for r in reports]}
    return EXIT_OK, payload, lines


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cobordism-classes",
                                     description="Characteristic classes in complex cobordism.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def degree_arg(p):
        p.add_argument("--degree", type=int, default=None,
                       help="truncation degree (default from $%s, else 4)" % DEGREE_ENV)

    p = sub.add_parser("fgl", help="formal group law table")
    degree_arg(p)
    p.add_argument("--all", action="store_true", help="also print log, exp and inverse")
    p.set_defaults(func=cmd_fgl)

    p = sub.add_parser("class", help="a characteristic class of one bundle")
    p.add_argument("--kind", choices=("Q", "P", "Phi", "D", "c"), required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--bundle", help='e.g. "O(1)+O(1)@CP2"')
    p.add_argument("--rank", type=int, help="universal bundle of this rank")
    p.add_argument("--route", choices=("direct", "via_phi"), default="direct")
    p.add_argument("--extension", action="store_true",
                   help="allow Grassmann bundles with 1 < r < n - 1")
    p.add_argument("--allow-low-r", action="store_true")
    degree_arg(p)
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("expand", help="universal expansion in Chern classes")
    p.add_argument("--kind", choices=("Q", "P", "Phi", "D", "c"), required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--difference", action="store_true", help="also print P_r - Q_r by degree")
    degree_arg(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("pushforward", help="pushforward along M x CP^k -> M")
    p.add_argument("--fiber-dim", type=int, required=True)
    p.add_argument("--expr", required=True, help='polynomial in the fiber variable, e.g. "t^2"')
    p.add_argument("--fiber-var", default="t")
    p.add_argument("--base-vars", default="", help="comma-separated free base variables")
    p.add_argument("--space", help="base space model, e.g. CP2 (generator u)")
    p.add_argument("--cohomology", action="store_true",
                   help="ordinary cohomology: t^k -> 1, other powers -> 0")
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), required=True)
    p.add_argument("--bundles", default=None,
                   help='";"-separated bundles for generic checks (examples suite)')
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("genus", help="evaluate a genus on a coefficient polynomial")
    p.add_argument("--eval", required=True)
    p.add_argument("--lambda", dest="lambdas", help="comma-separated logarithm coefficients")
    p.add_argument("--named", choices=("todd", "chi_y", "elliptic", "symbolic", "trivial"))
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("genus-report", help="genera of P_1 - Q_1 pushed to a point")
    p.set_defaults(func=cmd_stretch)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status, payload, lines = args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": args.command, "status": status}
        doc.update(payload)
        text = json.dumps(doc, indent=2, sort_keys=True)
    else:
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
