"""Chern-Dold character, the generalized Todd class and Riemann-Roch cross-checks.

``ch: U*(X) -> H*(X; U*(pt) (x) Q)`` is the identity on coefficients and sends the
first Chern class of a line bundle to ``g^-1`` of its ordinary first Chern
class.  Riemann-Roch, ``ch p_!(x) = p_*(ch(x) T(tau))``, then compares a
cobordism pushforward with a purely cohomological one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import sympy

from .coeff_ring import CoeffPoly, augment
from .formal_group import exp_series, log_series
from .graded_series import (INF, GradedSeries, Var, _merge_vars, elementary_symmetric,
                            substitute)
from .pushforward import (cohomology_pushforward, quillen_pushforward, segre_pushforward,
                          trivial_proj_pushforward)


def cohomology_name(name: str) -> str:
    """``u -> z``, ``u2 -> z2``, ``t3 -> w3``; other names get an ``h`` prefix."""
    m = re.fullmatch(r"([a-z_]*?)(\d*)", name)
    stem, idx = (m.group(1), m.group(2)) if m else (name, "")
    table = {"u": "z", "t": "w", "_t": "_w"}
    if stem in table:
        return table[stem] + idx
    return "h" + name


# ---------------------------------------------------------------------------
# the character


def _exp_in(name: str, var: Var, order: float) -> GradedSeries:
    """``g^-1(z)`` in the single variable ``name`` carrying ``var``'s cap and weight."""
    if var.weight != 1:
        raise ValueError("the character is defined on weight-one generators only")
    if var.cap is not None:
        return exp_series(max(var.cap, 1), name).with_caps({name: var.cap})
    if order == INF:
        raise ValueError("free variable %r needs a finite order" % var.name)
    return exp_series(max(int(order), 1), name)


def ch(x: GradedSeries, names: Callable[[str], str] = cohomology_name,
       only: Sequence[str] | None = None) -> GradedSeries:
    """Chern-Dold character: each generator ``v`` goes to ``g^-1(z_v)``.

    ``only`` limits the substitution to some variables (the rest are renamed
    but kept as they are, which is right for classes already in cohomology).
    """
    targets = [v for v in x.vars if only is None or v.name in only]
    ring = tuple(Var(names(v.name), v.cap, v.weight) for v in x.vars)
    mapping = {}
    for v in x.vars:
        new = names(v.name)
        if v in targets:
            mapping[v.name] = _exp_in(new, v, x.order).embed(ring)
        else:
            mapping[v.name] = GradedSeries.variable(new, ring, x.order)
    if not mapping:
        return x
    return substitute(x, mapping).embed(ring)


@lru_cache(maxsize=None)
def todd_series(order: int, var: str = "z") -> GradedSeries:
    """``z / g^-1(z)`` through degree ``order``."""
    e = exp_series(order + 1, var)
    shifted = GradedSeries((Var(var),), {(m[0] - 1,): c for m, c in e.items()}, order)
    return shifted.inverse()


def todd_of(root: GradedSeries) -> GradedSeries:
    """``T`` of a line bundle whose ordinary first Chern class is ``root``."""
    if root.is_zero():
        return GradedSeries.constant(1, root.vars, root.order)
    cap = sum(v.cap for v in root.vars if v.cap is not None and v.name in root.variables_used())
    order = root.order if root.order != INF else 0
    order = int(order) + cap
    return substitute(todd_series(max(order, 1), "_z"), {"_z": root})


def todd_class(roots: Sequence[GradedSeries]) -> GradedSeries:
    """``prod_i z_i / g^-1(z_i)`` over ordinary Chern roots; 1 for no roots."""
    out = None
    for r in roots:
        factor = todd_of(r)
        out = factor if out is None else out * factor
    if out is None:
        return GradedSeries.constant(1)
    return out


# ---------------------------------------------------------------------------
# Riemann-Roch


@dataclass
class RRReport:
    label: str
    cobordism_side: GradedSeries
    cohomology_side: GradedSeries

    @property
    def residual(self) -> GradedSeries:
        a, b = self.cobordism_side._align(self.cohomology_side)
        return a - b

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()


def rr_trivial(f: GradedSeries, k: int, fiber_var: str = "t", label: str = "") -> RRReport:
    """Riemann-Roch along ``M x CP^k -> M``; ``f`` must have ``fiber_var^(k+1) = 0``."""
    v = f.var(fiber_var)
    if v.cap != k:
        f = f.with_caps({fiber_var: k})
    lhs = ch(trivial_proj_pushforward(f, k, fiber_var).drop_unused(
        [w.name for w in f.vars if w.name != fiber_var]))
    zname = cohomology_name(fiber_var)
    chf = ch(f)
    z = GradedSeries.variable(zname, chf.vars, chf.order)
    # tangent bundle of CP^k is stably (k+1) copies of O(1)
    integrand = chf * todd_of(z) ** (k + 1)
    rhs = cohomology_pushforward(integrand, k, zname)
    return RRReport(label or "trivial CP%d" % k, lhs, rhs)


def rr_projective(f: GradedSeries, roots: Sequence[str], target: int, fiber_var: str = "x",
                  label: str = "") -> RRReport:
    """Riemann-Roch along ``P(xi*) -> M`` for a bundle with formal roots ``roots``.

    The cohomology side uses only ``prod_j (z - w_j) = 0`` and
    ``tau + C = gamma* (x) xi*`` with ordinary roots ``z - w_j``.
    """
    n = len(roots)
    lhs = ch(quillen_pushforward(f, roots, target, fiber_var))
    work = target + n
    ring = _merge_vars(tuple(v for v in f.vars if v.name != fiber_var),
                       tuple(Var(r) for r in roots))
    ring = _merge_vars(ring, (Var(fiber_var),))
    lifted = f.embed(ring).truncate(work)
    chf = ch(lifted)
    zname = cohomology_name(fiber_var)
    z = GradedSeries.variable(zname, chf.vars, work)
    ws = [GradedSeries.variable(cohomology_name(r), chf.vars, work) for r in roots]
    integrand = chf * todd_class([z - w for w in ws])
    # forget the truncation: terms beyond ``work`` only reach degrees above ``target``
    poly = GradedSeries(integrand.vars, integrand.terms, INF)
    chern = [elementary_symmetric(k, ws) for k in range(1, n + 1)]
    chern = [GradedSeries(c.vars, c.terms, INF) for c in chern]
    rhs = segre_pushforward(poly, chern, zname).truncate(target)
    return RRReport(label or "projective rank %d" % n, lhs, rhs)


# ---------------------------------------------------------------------------
# [N^(2i)] and D_1


def log_exp_identity(order: int) -> bool:
    """``g(g^-1(x)) = x`` and ``g^-1(g(x)) = x`` through ``order``."""
    g, e = log_series(order), exp_series(order)
    x = GradedSeries.variable("x", g.vars, order)
    return substitute(g, {"x": e}) == x and substitute(e, {"x": g}) == x


@dataclass
class NSeriesReport:
    label: str
    lhs: GradedSeries
    rhs: GradedSeries

    @property
    def holds(self) -> bool:
        a, b = self.lhs._align(self.rhs)
        return (a - b).is_zero()


def n_series_rhs(c1: GradedSeries, length: int) -> GradedSeries:
    """``sum_i [N^(2i)] c_1^(i+1)`` with ``[N^(2i)]`` the coefficients of ``g^-1``."""
    return substitute(exp_series(max(length, 1)), {"x": c1})


def n_series_check(bundle, length: int | None = None, label: str = "") -> NSeriesReport:
    """``ch D_1(xi) = sum [N^(2i)] c_1(xi)^(i+1)`` with ``c_1`` ordinary."""
    from .char_classes import d1_class

    d1 = d1_class(bundle).value
    lhs = ch(d1)
    # ordinary c_1 is the sum of the ordinary roots g(ch(root))
    total = None
    for r in bundle.roots:
        chr_ = ch(r.embed(bundle.ring))
        order = chr_.order if chr_.order != INF else _capacity(chr_)
        h = substitute(log_series(max(int(order), 1)), {"x": chr_}) if not chr_.is_zero() \
            else chr_
        total = h if total is None else total + h
    length = length if length is not None else (
        int(lhs.order) if lhs.order != INF else _capacity(lhs))
    rhs = n_series_rhs(total, length)
    return NSeriesReport(label or str(bundle), lhs, rhs)


def _capacity(s: GradedSeries) -> int:
    return sum(v.cap for v in s.vars if v.cap is not None)


# ---------------------------------------------------------------------------
# genera


@dataclass(frozen=True)
class Genus:
    """A genus given by the coefficients ``lambda_i`` of its logarithm ``x + sum lambda_i x^(i+1)``."""

    lambdas: tuple
    name: str = "genus"

    def value_of_generator(self, i: int):
        """Image of ``[CP^i]``: ``(i+1) lambda_i``."""
        if i == 0:
            return sympy.Integer(1)
        if i > len(self.lambdas):
            raise ValueError("%s is only specified through [CP^%d]" % (self.name, len(self.lambdas)))
        return sympy.expand((i + 1) * sympy.sympify(self.lambdas[i - 1]))

    @classmethod
    def from_logarithm(cls, log_expr, x: sympy.Symbol, length: int, name: str = "genus"):
        ser = sympy.series(log_expr, x, 0, length + 2).removeO()
        coeffs = tuple(sympy.simplify(ser.coeff(x, i + 1)) for i in range(1, length + 1))
        if sympy.simplify(ser.coeff(x, 1) - 1) != 0:
            raise ValueError("logarithm must start with x")
        return cls(coeffs, name)

    @classmethod
    def symbolic(cls, length: int, prefix: str = "lam") -> "Genus":
        return cls(tuple(sympy.Symbol("%s%d" % (prefix, i + 1)) for i in range(length)),
                   "symbolic")

    @classmethod
    def trivial(cls, length: int) -> "Genus":
        return cls((0,) * length, "augmentation")

    @classmethod
    def todd(cls, length: int) -> "Genus":
        return cls(tuple(sympy.Rational(1, i + 2) for i in range(length)), "Todd")

    @classmethod
    def chi_y(cls, length: int, y=None) -> "Genus":
        y = sympy.Symbol("y") if y is None else y
        vals = tuple(sympy.expand(sum((-y) ** k for k in range(i + 2)) / (i + 2))
                     for i in range(length))
        return cls(vals, "chi_y")

    @classmethod
    def ochanine(cls, length: int, delta=None, eps=None) -> "Genus":
        """Elliptic genus with ``log'(x) = (1 - 2 delta x^2 + eps x^4)^(-1/2)``."""
        delta = sympy.Symbol("delta") if delta is None else delta
        eps = sympy.Symbol("epsilon") if eps is None else eps
        x = sympy.Symbol("x")
        deriv = sympy.series((1 - 2 * delta * x ** 2 + eps * x ** 4) ** sympy.Rational(-1, 2),
                             x, 0, length + 1).removeO()
        log = sympy.integrate(deriv, x)
        vals = tuple(sympy.expand(log.coeff(x, i + 2)) for i in range(length))
        return cls(vals, "elliptic")


def apply_genus(p: CoeffPoly, genus: Genus):
    """Ring map ``[CP^i] -> (i+1) lambda_i`` applied to ``p`` (a sympy value)."""
    total = sympy.Integer(0)
    for m, c in p.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for i, e in enumerate(m):
            if e:
                term = term * genus.value_of_generator(i + 1) ** e
        total += term
    return sympy.expand(total)


def genus_agrees_with_augment(p: CoeffPoly) -> bool:
    width = max(p.max_generator(), 1)
    val = apply_genus(p, Genus.trivial(width))
    aug = augment(p)
    return val == sympy.Rational(int(aug.numerator), int(aug.denominator))


# ---------------------------------------------------------------------------
# pushing to a point


def push_to_point(x: GradedSeries, dims: Mapping[str, int]) -> CoeffPoly:
    """Cobordism pushforward ``prod CP^(m_i) -> pt``: ``prod u_i^(e_i) -> prod [CP^(m_i - e_i)]``."""
    from .coeff_ring import generator

    out = CoeffPoly()
    idx = {v.name: i for i, v in enumerate(x.vars)}
    for m, c in x.items():
        term = c
        ok = True
        for name, dim in dims.items():
            e = m[idx[name]] if name in idx else 0
            if e > dim:
                ok = False
                break
            term = term * generator(dim - e)
        if ok:
            out = out + term
    return out


__all__ = [
    "ch", "todd_series", "todd_of", "todd_class", "RRReport", "rr_trivial", "rr_projective",
    "log_exp_identity", "n_series_check", "n_series_rhs", "NSeriesReport", "Genus",
    "apply_genus", "genus_agrees_with_augment", "push_to_point", "cohomology_name",
]
