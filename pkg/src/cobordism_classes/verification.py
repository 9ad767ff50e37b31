"""Verification suites shared by the command line and the acceptance tests.

Every check produces a :class:`Check` with status PASS, FAIL or WARN.  WARN
marks a known misprint in the literature value: the computed value is
reported next to the printed one and the suite does not fail because of it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .char_classes import (_euler_product, d1_class, naive_whitney_rhs, p_class,
                           p_minus_q, phi_classes, q_class, universal_expansion,
                           verify_sum_formula)
from .chern_dold import (log_exp_identity, n_series_check, rr_projective, rr_trivial)
from .coeff_ring import CoeffPoly, augment, generator, parse_coeffpoly
from .formal_group import fgl, formal_inverse, apply_law
from .graded_series import GradedSeries, Var
from .pushforward import quillen_pushforward, segre_pushforward, trivial_proj_pushforward
from .space_models import BundleSpec, parse_bundle

PASS, FAIL, WARN = "PASS", "FAIL", "WARN"


@dataclass
class Check:
    name: str
    status: str
    expected: str = ""
    computed: str = ""
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        for key in ("expected", "computed", "note"):
            if getattr(self, key):
                out[key] = getattr(self, key)
        return out

    def line(self) -> str:
        text = "%s  %s" % (self.status, self.name)
        if self.status != PASS and (self.expected or self.computed):
            text += "\n      expected: %s\n      computed: %s" % (self.expected, self.computed)
        if self.note:
            text += "\n      note: %s" % self.note
        return text


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, WARN: 0}
        for c in self.checks:
            out[c.status] += 1
        return out


def equal_check(name: str, computed, expected, note: str = "") -> Check:
    ok = _equal(computed, expected)
    return Check(name, PASS if ok else FAIL, str(expected), str(computed), note)


def _equal(a, b) -> bool:
    if isinstance(a, GradedSeries) and isinstance(b, GradedSeries):
        a, b = a._align(b)
        return (a - b).is_zero()
    return a == b


def truth_check(name: str, ok: bool, note: str = "", computed: str = "") -> Check:
    return Check(name, PASS if ok else FAIL, "true" if not ok else "", computed, note)


def model_series(text: str, bundle: BundleSpec) -> GradedSeries:
    """``"1 + (b1^2 - b2)*u^2"`` as an element of the bundle's model ring."""
    return parse_series(text, bundle.ring)


def parse_series(text: str, vars: Sequence[Var]) -> GradedSeries:
    """Parse a polynomial in the ring variables with coefficients in ``Q[b_1, ...]``."""
    import sympy
    from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                            standard_transformations)

    names = {v.name: sympy.Symbol(v.name) for v in vars}
    expr = parse_expr(text, local_dict=dict(names),
                      transformations=standard_transformations + (convert_xor,))
    expr = sympy.expand(expr)
    gens = [names[v.name] for v in vars]
    stray = [s for s in expr.free_symbols if s.name not in names
             and not (s.name.startswith("b") and s.name[1:].isdigit())]
    if stray:
        raise ValueError("unknown symbols: %s" % ", ".join(sorted(s.name for s in stray)))
    poly = sympy.Poly(expr, *gens) if gens else None
    terms = {}
    if poly is None:
        terms[()] = parse_coeffpoly(str(expr))
    else:
        for exps, coeff in poly.terms():
            terms[exps] = parse_coeffpoly(str(coeff))
    return GradedSeries(tuple(vars), terms)


# ---------------------------------------------------------------------------
# suites


def suite_fgl(degree: int = 6) -> SuiteReport:
    rep = SuiteReport("fgl")
    F = fgl(max(degree, 3))
    b1, b2 = generator(1), generator(2)
    rep.add(equal_check("a11 = -[CP1]", F.coefficient(1, 1), -b1))
    rep.add(equal_check("a12 = [CP1]^2 - [CP2]", F.coefficient(1, 2), b1 * b1 - b2))
    rep.add(equal_check("a21 = [CP1]^2 - [CP2]", F.coefficient(2, 1), b1 * b1 - b2))
    ring = (Var("x"), Var("y"), Var("z"))
    x, y, z = (GradedSeries.variable(n, ring, degree) for n in ("x", "y", "z"))
    rep.add(truth_check("commutativity to degree %d" % degree, apply_law(x, y) == apply_law(y, x)))
    rep.add(truth_check("associativity to degree %d" % degree,
                        apply_law(apply_law(x, y), z) == apply_law(x, apply_law(y, z))))
    zero = GradedSeries.zero(ring, degree)
    rep.add(truth_check("unit F(x, 0) = x", apply_law(x, zero) == x))
    rep.add(truth_check("inverse F(x, chi(x)) = 0", apply_law(x, formal_inverse(x)).is_zero()))
    return rep


_PUBLISHED_Q_MINUS_ONE = "b1 + (b2 - b1^2)*u"


def suite_examples(bundles: Iterable[str] | None = None) -> SuiteReport:
    """Literature values; with ``bundles`` given, generic checks over those bundles instead."""
    if bundles is not None:
        return _bundle_invariants(list(bundles))
    rep = SuiteReport("examples")
    for check in suite_fgl(3).checks[:3]:
        rep.add(check)

    for a in (-2, -1, 1, 2, 3):
        xi = parse_bundle("O(%d)@CP1" % a)
        rep.add(equal_check("Q_0(O(%d)) = 1 over CP1" % a, q_class(0, xi).value,
                            model_series("1", xi)))
    xi = parse_bundle("O(1)@CP1")
    rep.add(equal_check("Q_1(O(1)) = u over CP1", q_class(1, xi).value, model_series("u", xi)))
    for text in ("O(1)+O(-1)@CP1", "O(1)+O(1)+O(2)@CP1", "O(2)+O(0)+O(-1)+O(3)@CP1"):
        b = parse_bundle(text)
        rep.add(equal_check("Q_0 = 1 for rank-%d %s" % (b.rank, text), q_class(0, b).value,
                            model_series("1", b)))
    qm1 = q_class(-1, xi).value
    printed = model_series(_PUBLISHED_Q_MINUS_ONE, xi)
    rep.add(truth_check("Q_-1(O(1)) over CP1 is nonzero", not qm1.is_zero(), computed=str(qm1)))
    rep.add(Check("Q_-1(O(1)) over CP1 printed value", PASS if _equal(qm1, printed) else WARN,
                  _PUBLISHED_Q_MINUS_ONE, str(qm1),
                  "" if _equal(qm1, printed) else
                  "the u-coefficient cancels once the u t^2 term of F is included"))
    b = parse_bundle("O(1)@CP2")
    rep.add(equal_check("Q_0(O(1)) over CP2", q_class(0, b).value,
                        model_series("1 + (b1^2 - b2)*u^2", b)))
    b = parse_bundle("O(1)+O(1)@CP2")
    q1 = q_class(1, b).value
    rep.add(equal_check("Q_1(O(1)+O(1)) over CP2", q1, model_series("2*u - b1*u^2", b)))
    rep.add(truth_check("Whitney sum formula fails: Q_1 != 2u",
                        not _equal(q1, naive_whitney_rhs(parse_bundle("O(1)@CP2"),
                                                         parse_bundle("O(1)@CP2"), 1)),
                        computed=str(q1)))
    rep.add(equal_check("c_1(O(1)+O(1)) = 2u over CP2", b.chern(1), model_series("2*u", b)))
    o = parse_bundle("O(1)@CP2")
    s = verify_sum_formula(o, o, 1)
    rep.add(equal_check("sum formula, O(1)+O(1) over CP2, r=1", s.rhs,
                        model_series("2*u - b1*u^2", b)))
    for text in ("O(1)+O(2)@CP2", "O(1)+O(-1)+O(1)@CP3", "O(1,0)+O(0,1)@CP1xCP2"):
        b = parse_bundle(text)
        e = b.chern(b.rank)
        rep.add(equal_check("Q_n = e^U for %s" % text, q_class(b.rank, b).value, e))
        rep.add(equal_check("P_n = e^U for %s" % text, p_class(b.rank, b).value, e))
    b = parse_bundle("O(1)+O(-1)@CP2")
    rep.add(equal_check("D_1(O(1)+O(-1)) = 0 over CP2", d1_class(b).value,
                        GradedSeries.zero(b.ring)))

    expected = "c1 - b1*c2 + (b1^2 - b2)*c1*c2"
    cvars2 = (Var("c1", None, 1), Var("c2", None, 2))
    cvars3 = cvars2 + (Var("c3", None, 3),)
    q1 = universal_expansion("Q", 1, 2, 3)
    rep.add(equal_check("Q_1 rank 2 through degree 3", q1, parse_series(expected, cvars2)))
    misprint = "c1 + b1*c2 + (b1^2 - b2)*c1*c2"
    rep.add(Check("Q_1 rank 2, alternative printed sign", WARN, misprint, str(q1),
                  "the printed +[CP1]c2 contradicts the computed and the second printed expansion"))
    rep.add(equal_check("P_1 rank 2 through degree 3", universal_expansion("P", 1, 2, 3),
                        parse_series(expected, cvars2)))
    expected3 = "c2 - 2*b1*c3 + (b1^2 - b2)*c1*c3"
    rep.add(equal_check("Q_2 rank 3 through degree 4", universal_expansion("Q", 2, 3, 4),
                        parse_series(expected3, cvars3)))
    rep.add(equal_check("P_2 rank 3 through degree 4", universal_expansion("P", 2, 3, 4),
                        parse_series(expected3, cvars3)))

    for k in range(5):
        t = GradedSeries.variable("t", (Var("t", k + 1),))
        for i in range(k + 2):
            got = trivial_proj_pushforward(t ** i, k, "t")
            want = generator(k - i) if i <= k else CoeffPoly()
            rep.add(equal_check("p_!(t^%d) over CP%d" % (i, k), got.constant_coeff(), want))
    return rep


def _bundle_invariants(texts: list[str]) -> SuiteReport:
    rep = SuiteReport("examples")
    for text in texts:
        if not text.strip():
            continue
        b = parse_bundle(text)
        n = b.rank
        rep.add(equal_check("Q_n = e^U for %s" % text, q_class(n, b).value, b.chern(n)))
        rep.add(equal_check("P_n = e^U for %s" % text, p_class(n, b).value, b.chern(n)))
        if tuple(b.space.dims) == (1,):
            rep.add(equal_check("Q_0 = 1 over CP1 for %s" % text, q_class(0, b).value,
                                GradedSeries.constant(1, b.ring)))
        for r in range(-2, n + 1):
            q = q_class(r, b, r_min=-2)
            rep.add(equal_check("Q_%d direct = via Phi for %s" % (r, text), q.value,
                                q_class(r, b, "via_phi", r_min=-2).value))
            # model Chern classes carry coefficients (c_1 of O(2) is 2u - b1 u^2)
            classical = b.chern(r) if 0 <= r <= n else GradedSeries.zero(b.ring)
            classical = classical.map_coeffs(lambda c: type(c).constant(augment(c)))
            rep.add(equal_check("augmented Q_%d = c_%d for %s" % (r, r, text),
                                q.augmented(), classical))
    return rep


def suite_routes(max_rank: int = 4, degree: int = 6, r_floor: int = -2,
                 models: Sequence[str] = ("O(1)@CP1", "O(1)+O(2)@CP2",
                                          "O(1)+O(-1)+O(2)@CP3", "O(1,1)+O(2,0)@CP1xCP2")) -> SuiteReport:
    rep = SuiteReport("routes")
    bundles = [("formal rank %d" % n, BundleSpec.formal(n, degree)) for n in range(1, max_rank + 1)]
    bundles += [(m, parse_bundle(m)) for m in models]
    for label, b in bundles:
        for r in range(r_floor, b.rank + 1):
            direct = q_class(r, b, "direct", r_min=r_floor).value
            via = q_class(r, b, "via_phi", r_min=r_floor).value
            rep.add(equal_check("Q_%d direct = via Phi, %s" % (r, label), direct, via))
    return rep


def suite_sum_formula(degree: int = 5,
                      models: Sequence[tuple[str, str]] = (("O(1)@CP2", "O(1)@CP2"),
                                                           ("O(1)@CP2", "O(2)+O(-1)@CP2"),
                                                           ("O(1)+O(1)@CP2", "O(-1)+O(2)@CP2")),
                      ) -> SuiteReport:
    rep = SuiteReport("sum-formula")
    cases = []
    for a, b in ((1, 1), (1, 2), (2, 2)):
        cases.append(("formal ranks (%d,%d)" % (a, b),
                      BundleSpec.formal(a, degree, "s"), BundleSpec.formal(b, degree, "w")))
    for x, y in models:
        cases.append(("%s and %s" % (x, y), parse_bundle(x), parse_bundle(y)))
    for label, xi, eta in cases:
        for r in range(-1, xi.rank + eta.rank + 1):
            report = verify_sum_formula(xi, eta, r)
            rep.add(Check("deformed sum formula r=%d, %s" % (r, label),
                          PASS if report.holds else FAIL, str(report.lhs), str(report.rhs)))
            rep.add(truth_check("augmented sum formula is Whitney, r=%d, %s" % (r, label),
                                report.classical_holds))
    o = parse_bundle("O(1)@CP2")
    q1 = q_class(1, o + o).value
    rep.add(truth_check("Whitney counterexample Q_1(O(1)+O(1)) != 2u",
                        not _equal(q1, naive_whitney_rhs(o, o, 1)), computed=str(q1)))
    return rep


def suite_riemann_roch(models: Sequence[str] = ("O(1)@CP1", "O(-1)@CP1", "O(1)+O(1)@CP1",
                                                "O(1)@CP2", "O(2)@CP2", "O(1)+O(1)@CP2",
                                                "O(1)+O(-1)@CP2", "O(1)+O(2)+O(-1)@CP2"),
                       r_floor: int = -2, projective_degree: int = 5) -> SuiteReport:
    rep = SuiteReport("riemann-roch")
    rep.add(truth_check("g(g^-1(x)) = x to degree 6", log_exp_identity(6)))
    for text in models:
        b = parse_bundle(text)
        cap = b.rank - r_floor
        E = _euler_product(b, cap)
        for r in range(r_floor, b.rank + 1):
            k = b.rank - r
            report = rr_trivial(E.with_caps({"t": k}) if k != cap else E, k)
            rep.add(Check("ch Q_%d = p_*(ch e T), %s" % (r, text),
                          PASS if report.holds else FAIL,
                          str(report.cohomology_side), str(report.cobordism_side)))
    x = GradedSeries.variable("x")
    for n in (1, 2, 3):
        roots = ["t%d" % (i + 1) for i in range(n)]
        for power in range(0, n + 2):
            report = rr_projective(x ** power, roots, projective_degree)
            rep.add(Check("ch p_!(x^%d) along P(xi*), rank %d" % (power, n),
                          PASS if report.holds else FAIL,
                          str(report.cohomology_side), str(report.cobordism_side)))
    for n in (1, 2, 3):
        report = n_series_check(BundleSpec.formal(n, 5))
        rep.add(Check("ch D_1 = sum N c_1^(i+1), formal rank %d" % n,
                      PASS if report.holds else FAIL, str(report.rhs), str(report.lhs)))
    report = n_series_check(parse_bundle("O(1)+O(1)@CP2"))
    rep.add(Check("ch D_1 = sum N c_1^(i+1), O(1)+O(1) over CP2",
                  PASS if report.holds else FAIL, str(report.rhs), str(report.lhs)))
    return rep


def suite_pushforward(max_k: int = 4, degree: int = 5) -> SuiteReport:
    rep = SuiteReport("pushforward")
    x = GradedSeries.variable("x")
    for k in range(max_k + 1):
        roots = ["t%d" % (i + 1) for i in range(k + 1)]
        for i in range(k + 1):
            out = quillen_pushforward(x ** i, roots, k)
            at_zero = out.constant_coeff()
            rep.add(equal_check("P(C^%d): x^%d -> [CP^%d]" % (k + 1, i, k - i), at_zero,
                                generator(k - i)))
    for n in range(1, 5):
        roots = ["t%d" % (i + 1) for i in range(n)]
        tvars = [GradedSeries.variable(r, tuple(Var(s) for s in roots)) for r in roots]
        from .graded_series import elementary_symmetric
        chern = [elementary_symmetric(k, tvars) for k in range(1, n + 1)]
        for m in range(0, degree + n):
            target = m - n + 1
            if target < 0 or target > degree:
                continue
            out = quillen_pushforward(x ** m, roots, degree)
            aug = out.map_coeffs(lambda c: CoeffPoly.constant(augment(c)))
            segre = segre_pushforward(x ** m, chern, "x")
            rep.add(equal_check("augmented p_!(x^%d) = Segre, rank %d" % (m, n), aug, segre))
    return rep


def suite_degeneration(max_rank: int = 3, degree: int = 4) -> SuiteReport:
    rep = SuiteReport("degeneration")
    for n in range(1, max_rank + 1):
        b = BundleSpec.formal(n, degree)
        phis = phi_classes(b, -2)
        for r in range(-2, n + 2):
            classical = b.chern(r) if 0 <= r <= n else GradedSeries.zero(b.ring, degree)
            q = q_class(r, b, r_min=-2)
            rep.add(equal_check("augmented Q_%d, rank %d" % (r, n), q.augmented(), classical))
            if r in phis:
                rep.add(equal_check("augmented Phi_%d, rank %d" % (r, n), phis[r].augmented(),
                                    classical))
            if 0 <= r:
                p = p_class(r, b, extension=True)
                rep.add(equal_check("augmented P_%d, rank %d" % (r, n), p.augmented(), classical))
    return rep


def suite_thresholds() -> SuiteReport:
    rep = SuiteReport("thresholds")
    for r, n, zero_through, reported in ((1, 2, 4, 5), (2, 3, 5, 6)):
        d = p_minus_q(r, n, reported)
        vanish = d.vanishes_through()
        rep.add(truth_check("P_%d - Q_%d, rank %d, zero in degrees <= %d" % (r, r, n, zero_through),
                            vanish >= zero_through, computed="zero through degree %d" % vanish))
        comp = d.component(reported)
        rep.add(Check("P_%d - Q_%d, rank %d, degree-%d component nonzero" % (r, r, n, reported),
                      FAIL if comp.is_zero() else PASS, "nonzero", str(comp),
                      "first nonzero component is in degree %d" % (vanish + 1)))
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "fgl": suite_fgl,
    "examples": suite_examples,
    "routes": suite_routes,
    "sum-formula": suite_sum_formula,
    "riemann-roch": suite_riemann_roch,
    "pushforward": suite_pushforward,
    "degeneration": suite_degeneration,
    "thresholds": suite_thresholds,
}


# ---------------------------------------------------------------------------
# report-only: genera of P_1 - Q_1 pushed to a point


@dataclass
class GenusReport:
    bundle: str
    pushed: CoeffPoly
    values: dict

    def lines(self) -> list[str]:
        out = ["P_1 - Q_1 of %s pushed to a point: %s" % (self.bundle, self.pushed)]
        for name, val in self.values.items():
            out.append("  %s: %s" % (name, val))
        return out


def genus_stretch(bundles: Sequence[str] = ("O(1,1)+O(1,-1)@CP2xCP3", "O(1)+O(2)@CP5",
                                             "O(1,0)+O(1,2)@CP3xCP3", "O(1,1)+O(2,-1)@CP3xCP3"),
                  ) -> tuple[list[Check], list[GenusReport]]:
    """Genera of ``p_!(P_1 - Q_1)`` for rank-2 bundles over products of projective spaces.

    Returns consistency checks of the symbolic genus (it specializes to Todd and
    chi_y) and one report per bundle.
    """
    import sympy
    from .chern_dold import Genus, apply_genus, push_to_point

    length = 8
    symbolic = Genus.symbolic(length)
    todd, chiy, ell = Genus.todd(length), Genus.chi_y(length), Genus.ochanine(length)
    checks = []
    probe = generator(1) ** 2 * generator(3) - generator(2) * generator(4) + generator(5) / 3
    lam = [sympy.Symbol("lam%d" % (i + 1)) for i in range(length)]
    for g in (todd, chiy):
        subs = dict(zip(lam, g.lambdas))
        val = sympy.expand(apply_genus(probe, symbolic).subs(subs))
        checks.append(truth_check("symbolic genus specializes to %s" % g.name,
                                  sympy.simplify(val - apply_genus(probe, g)) == 0))
    reports = []
    for text in bundles:
        b = parse_bundle(text)
        diff = p_class(1, b).value - q_class(1, b).value
        pushed = push_to_point(diff, dict(zip(b.space.names, b.space.dims)))
        values = {g.name: apply_genus(pushed, g) for g in (symbolic, todd, chiy, ell)}
        reports.append(GenusReport(text, pushed, values))
    return checks, reports
