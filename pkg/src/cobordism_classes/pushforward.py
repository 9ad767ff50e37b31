"""Gysin pushforwards in complex cobordism (and the cohomological ones used as oracles).

Three fibrations are handled:

* the trivial projectivization ``M x CP^k -> M``: ``p_!(t^i) = [CP^(k-i)]``;
* the projective bundle of an arbitrary bundle, by the residue formula
  ``sum_i f(x_i) / prod_(j != i) F(t_i, chi(t_j))`` evaluated exactly with
  divided differences;
* Grassmann bundles ``Gr_r(xi*)``, with ``r = 1`` and ``r = n - 1`` reduced to
  projective bundles and general ``r`` through the subset-residue formula.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .coeff_ring import generator
from .formal_group import apply_law, formal_inverse
from .graded_series import (GradedSeries, Var, _merge_vars, elementary_symmetric,
                            exact_divide_linear, rewrite_in_elementary, substitute)


@dataclass(frozen=True)
class PushforwardContext:
    """Working-order contract of a pushforward.

    ``working_order`` is the order at which roots are introduced; each exact
    linear division costs one degree, so results are exact through
    ``target``.
    """

    kind: str
    fiber_var: str
    target: int
    rank: int = 1
    r: int = 1

    @property
    def divisions(self) -> int:
        if self.kind == "trivial":
            return 0
        if self.kind == "grassmann-residue":
            return 1 + self.rank * (self.rank - 1) // 2
        return self.rank

    @property
    def working_order(self) -> int:
        return self.target + self.divisions

    @classmethod
    def projective(cls, rank: int, target: int, fiber_var: str = "x") -> "PushforwardContext":
        return cls("projective", fiber_var, target, rank)

    @classmethod
    def grassmann(cls, rank: int, r: int, target: int, residue: bool = False,
                  fiber_var: str = "y") -> "PushforwardContext":
        kind = "grassmann-residue" if residue else "grassmann"
        return cls(kind, fiber_var, target, rank, r)


# ---------------------------------------------------------------------------
# trivial projectivizations


def trivial_proj_pushforward(f: GradedSeries, k: int, fiber_var: str = "t") -> GradedSeries:
    """Push ``f`` along ``M x CP^k -> M``: ``t^i -> [CP^(k-i)]`` for ``i <= k``."""
    if fiber_var not in f.names:
        return f.scale(generator(k)).drop_unused()
    v = f.var(fiber_var)
    if v.cap is not None and v.cap < k:
        raise ValueError("fiber variable is truncated at %d < k = %d" % (v.cap, k))
    result = None
    for i in range(k + 1):
        part = f.coefficient_of(fiber_var, i).scale(generator(k - i))
        result = part if result is None else result + part
    return result


def cohomology_pushforward(f: GradedSeries, k: int, fiber_var: str = "z") -> GradedSeries:
    """Ordinary-cohomology pushforward along ``M x CP^k -> M``: ``z^k -> 1``, else 0."""
    if fiber_var not in f.names:
        return GradedSeries.zero(f.vars, f.order) if k else f
    return f.coefficient_of(fiber_var, k)


# ---------------------------------------------------------------------------
# projective bundles


@lru_cache(maxsize=None)
def _inverse_tangent_factor(order: int, dual: bool) -> GradedSeries:
    """``(a - b) / F(a, chi(b))`` (or with ``chi`` on ``a`` when ``dual``) in variables a, b."""
    ring = (Var("a"), Var("b"))
    a = GradedSeries.variable("a", ring, order)
    b = GradedSeries.variable("b", ring, order)
    e = apply_law(formal_inverse(a), b) if dual else apply_law(a, formal_inverse(b))
    h = exact_divide_linear(e, "a", "b")
    return h.inverse()


def _root_ring(f_vars: Sequence[Var], roots: Sequence[str], fiber_var: str):
    base = tuple(v for v in f_vars if v.name != fiber_var)
    return _merge_vars(base, tuple(Var(r) for r in roots))


def _tangent_inverse(ti: str, tj: str, order: int, dual: bool, ring) -> GradedSeries:
    # the quotient by (a - b) loses one degree
    return _inverse_tangent_factor(order, dual).rename({"a": ti, "b": tj}) \
        .embed(ring).truncate(order - 1)


def quillen_pushforward(f: GradedSeries, roots: Sequence[str], target: int,
                        fiber_var: str = "x", dual: bool = False) -> GradedSeries:
    """Push ``f(x)`` along a projective bundle with formal Chern roots ``roots``.

    With ``dual=False`` the bundle is ``P(xi*)`` (lines in the dual of the bundle
    with roots ``t_i``) and ``x`` is the first Chern class of the dual of the
    tautological line, so ``x`` restricts to ``t_i`` at the i-th fixed point.
    With ``dual=True`` it is ``P(xi)`` and ``x`` restricts to ``chi(t_i)``.

    ``f`` may involve the roots and other base variables; it must be exact (or
    exact through the working order ``target + len(roots)``).  The result is a
    symmetric series in the roots exact through ``target``.
    """
    roots = list(roots)
    n = len(roots)
    if n == 0:
        raise ValueError("projective bundle of a rank-0 bundle is empty")
    ctx = PushforwardContext.projective(n, target, fiber_var)
    W = ctx.working_order
    ring = _root_ring(f.vars, roots, fiber_var)
    T = {r: GradedSeries.variable(r, ring, W) for r in roots}
    nodes = {r: (formal_inverse(T[r]) if dual else T[r]) for r in roots}
    if fiber_var in f.names:
        fv = f.var(fiber_var)
        if not fv.free:
            raise ValueError("fiber variable must be free")

    def f_at(r):
        if fiber_var in f.names:
            return substitute(f, {fiber_var: nodes[r]}).embed(ring)
        return f.embed(ring).truncate(W)

    if n == 1:
        return f_at(roots[0]).truncate(target)

    values = []
    for i, ri in enumerate(roots):
        g = f_at(ri)
        for j, rj in enumerate(roots):
            if i != j:
                g = g * _tangent_inverse(ri, rj, W, dual, ring)
        values.append(g)
    # Newton divided differences: A(i..k) = (A(i..k-1) - A(i+1..k)) / (t_i - t_k)
    for level in range(1, n):
        values = [exact_divide_linear(values[i] - values[i + 1], roots[i], roots[i + level])
                  for i in range(n - level)]
    return values[0].truncate(target)


def grassmann_pushforward(f: GradedSeries, roots: Sequence[str], r: int, target: int,
                          fiber_prefix: str = "y", extension: bool = False,
                          method: str = "auto") -> GradedSeries:
    """Push a symmetric function ``f(y_1..y_r)`` of the roots of ``gamma*`` along ``Gr_r(xi*)``.

    ``method="auto"`` uses the projective-bundle paths for ``r = 1`` and
    ``r = n - 1`` and the subset-residue formula otherwise (only when
    ``extension`` is set); ``method="residue"`` forces the subset-residue path.
    """
    roots = list(roots)
    n = len(roots)
    ys = ["%s%d" % (fiber_prefix, k + 1) for k in range(r)]
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    if method == "residue":
        return _subset_residue(f, roots, r, target, ys)
    if r == 0:
        return f.truncate(target)
    if r == n:
        ring = _root_ring(f.vars, roots, None)
        T = {rt: GradedSeries.variable(rt, ring, target) for rt in roots}
        return substitute(f, {y: T[rt] for y, rt in zip(ys, roots)}).truncate(target)
    if r == 1:
        return quillen_pushforward(f.rename({ys[0]: "x"}), roots, target, "x")
    if r == n - 1:
        return _dual_projective_route(f, roots, target, ys)
    if not extension:
        raise ValueError("Gr_%d of a rank-%d bundle needs extension=True" % (r, n))
    return _subset_residue(f, roots, r, target, ys)


def _dual_projective_route(f, roots, target, ys):
    # Gr_(n-1)(xi*) = P(xi): gamma* = xi / lambda, x = c_1(lambda*), c_1(lambda) = chi(x)
    n = len(roots)
    W = PushforwardContext.projective(n, target).working_order
    e_names = ["_e%d" % (k + 1) for k in range(n - 1)]
    fe = rewrite_in_elementary(f, ys, e_names)
    ring = _root_ring(fe.vars, roots, None)
    ring = tuple(v for v in ring if v.name not in e_names)
    ring = _merge_vars(ring, (Var("x"),))
    T = [GradedSeries.variable(rt, ring, W) for rt in roots]
    x = GradedSeries.variable("x", ring, W)
    line = formal_inverse(x)
    chern = [GradedSeries.constant(1, ring, W)] + [elementary_symmetric(k, T)
                                                   for k in range(1, n + 1)]
    quot = [chern[0]]
    for k in range(1, n):
        quot.append(chern[k] - quot[k - 1] * line)
    g = substitute(fe, {nm: quot[k + 1] for k, nm in enumerate(e_names)})
    return quillen_pushforward(g, roots, target, "x", dual=True)


def _subset_residue(f, roots, r, target, ys):
    n = len(roots)
    ctx = PushforwardContext.grassmann(n, r, target, residue=True)
    W = ctx.working_order
    ring = _root_ring(f.vars, roots, None)
    ring = tuple(v for v in ring if v.name not in ys)
    T = {rt: GradedSeries.variable(rt, ring, W) for rt in roots}
    total = GradedSeries.zero(ring, W - 1)
    for I in itertools.combinations(range(n), r):
        J = [j for j in range(n) if j not in I]
        term = substitute(f, {y: T[roots[i]] for y, i in zip(ys, I)}).embed(ring) \
            if ys else f.embed(ring)
        for i in I:
            for j in J:
                term = term * _tangent_inverse(roots[i], roots[j], W, False, ring)
        sign = (-1) ** sum(1 for a in J for b in I if a < b)
        poly = GradedSeries.constant(sign, ring, W)
        for group in (I, J):
            for a, b in itertools.combinations(group, 2):
                poly = poly * (T[roots[a]] - T[roots[b]])
        total = total + term * poly
    for a, b in itertools.combinations(range(n), 2):
        total = exact_divide_linear(total, roots[a], roots[b])
    return total.truncate(target)


# ---------------------------------------------------------------------------
# cohomological oracle


def segre_pushforward(f: GradedSeries, chern: Sequence[GradedSeries], fiber_var: str = "x",
                      dual: bool = False) -> GradedSeries:
    """Cohomological pushforward along a projective bundle from Chern classes alone.

    Uses only the relation ``x^n = c_1 x^(n-1) - c_2 x^(n-2) + ...`` (for ``P(xi*)``;
    with ``dual`` the relation ``x^n = -c_1 x^(n-1) - c_2 x^(n-2) - ...`` of
    ``P(xi)``) and ``p_*(x^(n-1)) = 1``, ``p_*(x^i) = 0`` for ``i < n - 1``.
    ``chern`` is ``[c_1, ..., c_n]``; ``f`` must be polynomial in ``x``.
    """
    n = len(chern)
    if fiber_var not in f.names:
        top = max(0, n - 1)
        return GradedSeries.zero(f.vars, f.order) if top else f
    degs = [m[f.index(fiber_var)] for m in f._terms]
    top = max(degs, default=0)
    base_vars = tuple(v for v in f.vars if v.name != fiber_var)
    ring = base_vars
    for c in chern:
        ring = _merge_vars(ring, c.vars)
    s: list[GradedSeries] = []
    for m in range(top + 1):
        if m < n - 1:
            s.append(GradedSeries.zero(ring))
        elif m == n - 1:
            s.append(GradedSeries.constant(1, ring))
        else:
            acc = GradedSeries.zero(ring)
            for k in range(1, n + 1):
                if m - k >= 0:
                    sign = -1 if dual else (1 if k % 2 else -1)
                    acc = acc + chern[k - 1].embed(ring) * s[m - k] * sign
            s.append(acc)
    out = GradedSeries.zero(ring)
    for m in range(top + 1):
        if not s[m].is_zero():
            out = out + f.coefficient_of(fiber_var, m).embed(ring) * s[m]
    return out
