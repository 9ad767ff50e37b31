"""The formal group law of complex cobordism, built from its logarithm.

The logarithm is ``g(x) = sum_i [CP^i] x^(i+1) / (i+1)``; the group law is
``F(u, v) = g^-1(g(u) + g(v))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .coeff_ring import CoeffPoly, generator
from .graded_series import INF, GradedSeries, Var, substitute

_X = Var("x")


@lru_cache(maxsize=None)
def log_series(order: int, var: str = "x") -> GradedSeries:
    """``x + b1 x^2/2 + ... + b_(N-1) x^N / N``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    v = (Var(var),)
    terms = {(i + 1,): generator(i) / (i + 1) for i in range(order)}
    return GradedSeries(v, terms, order)


@lru_cache(maxsize=None)
def exp_series(order: int, var: str = "x") -> GradedSeries:
    """Compositional inverse of :func:`log_series`, by Lagrange inversion.

    ``[x^k] g^-1 = (1/k) [x^(k-1)] (x / g(x))^k``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    v = (Var(var),)
    # g(x)/x = 1 + b1 x/2 + b2 x^2/3 + ...
    g_over_x = GradedSeries(v, {(i,): generator(i) / (i + 1) for i in range(order)},
                            order - 1)
    ratio = g_over_x.inverse()
    terms = {(1,): CoeffPoly.constant(1)}
    power = ratio
    for k in range(2, order + 1):
        power = power * ratio
        terms[(k,)] = power.coeff((k - 1,)) / k
    return GradedSeries(v, terms, order)


@lru_cache(maxsize=None)
def chi_series(order: int, var: str = "x") -> GradedSeries:
    """Formal inverse: solve ``F(x, chi(x)) = 0`` one degree at a time."""
    law = _bivariate_law(order)
    v = (Var(var),)
    x = GradedSeries.variable(var, v, order)
    chi = -x
    for k in range(2, order + 1):
        residual = substitute(law, {"u": x, "v": chi})
        # chi_k enters F(x, chi) at degree k only through the linear term v
        ck = residual.coeff((k,))
        chi = chi - GradedSeries(v, {(k,): ck}, order)
    return chi


@lru_cache(maxsize=None)
def _bivariate_law(order: int) -> GradedSeries:
    ring = (Var("u"), Var("v"))
    gu = log_series(order).rename({"x": "u"}).embed(ring)
    gv = log_series(order).rename({"x": "v"}).embed(ring)
    return substitute(exp_series(order), {"x": gu + gv})


@dataclass(frozen=True)
class FormalGroupLaw:
    """Truncated tables of the cobordism formal group law through degree ``order``."""

    order: int
    log: GradedSeries
    exp: GradedSeries
    law: GradedSeries
    chi: GradedSeries

    def coefficient(self, i: int, j: int) -> CoeffPoly:
        """``a_ij``, the coefficient of ``u^i v^j`` in ``F(u, v)``."""
        if i + j > self.order:
            raise ValueError("a_%d%d lies beyond order %d" % (i, j, self.order))
        return self.law.coeff((i, j))

    def table(self) -> dict[tuple[int, int], CoeffPoly]:
        return {m: c for m, c in self.law.sorted_items()}

    def __call__(self, a: GradedSeries, b: GradedSeries) -> GradedSeries:
        return substitute(self.law, {"u": a, "v": b})


@lru_cache(maxsize=None)
def fgl(order: int) -> FormalGroupLaw:
    if order < 1:
        raise ValueError("order must be >= 1")
    return FormalGroupLaw(order, log_series(order), exp_series(order),
                          _bivariate_law(order), chi_series(order))


# ---------------------------------------------------------------------------
# evaluation on arbitrary series


def _common_ring(series: Sequence[GradedSeries]):
    vars: tuple = ()
    for s in series:
        vars = tuple(vars) + tuple(v for v in s.vars if v.name not in {x.name for x in vars})
    return vars


def _working_order(series: Sequence[GradedSeries]) -> tuple[int, int]:
    """Target order of the result and the nilpotent capacity to provision for."""
    ring = _common_ring(series)
    used = set()
    for s in series:
        used |= s.variables_used()
    capacity = sum(v.cap for v in ring if v.cap is not None and v.name in used)
    target = min((s.order for s in series), default=INF)
    if target == INF:
        target = 0
    return int(target), capacity


def _apply_log(a: GradedSeries, order: int) -> GradedSeries:
    return substitute(log_series(order), {"x": a})


def _apply_exp(s: GradedSeries, order: int) -> GradedSeries:
    return substitute(exp_series(order), {"x": s})


_PAIR_CACHE: dict = {}


def apply_law(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    """``F(a, b)``, exact through ``min(order(a), order(b))``."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    a, b = a._align(b)
    target, capacity = _working_order([a, b])
    key = _bare_pair_key(a, b, target)
    if key is not None:
        cached = _PAIR_CACHE.get(key)
        if cached is None:
            va, vb = key[0], key[1]
            pa = GradedSeries.variable(va.name, (va, vb), target)
            pb = GradedSeries.variable(vb.name, (va, vb), target)
            cached = _PAIR_CACHE[key] = _apply_exp(
                _apply_log(pa, target + capacity) + _apply_log(pb, target + capacity),
                target + capacity)
        return cached.embed(a.vars).truncate(min(a.order, b.order))
    n = target + capacity
    return _apply_exp(_apply_log(a, n) + _apply_log(b, n), n)


def _bare_pair_key(a: GradedSeries, b: GradedSeries, target: int):
    ua, ub = a.variables_used(), b.variables_used()
    if len(ua) != 1 or len(ub) != 1 or ua == ub or len(a) != 1 or len(b) != 1:
        return None
    (ma, ca), = a.items()
    (mb, cb), = b.items()
    if ca != 1 or cb != 1 or sum(ma) != 1 or sum(mb) != 1:
        return None
    va, vb = a.var(ua.pop()), b.var(ub.pop())
    if va.weight != 1 or vb.weight != 1:
        return None
    return (va, vb, target)


def formal_inverse(a: GradedSeries) -> GradedSeries:
    """``chi(a)``: the first Chern class of the dual line bundle."""
    if a.is_zero():
        return a
    target, capacity = _working_order([a])
    return substitute(chi_series(max(target + capacity, 1)), {"x": a})


def formal_sum(roots: Sequence[GradedSeries], order: float | None = None) -> GradedSeries:
    """``g^-1(g(t_1) + ... + g(t_k))``."""
    roots = [r for r in roots if not r.is_zero()]
    if not roots:
        return GradedSeries.zero()
    if len(roots) == 1:
        out = roots[0]
    else:
        ring = _common_ring(roots)
        roots = [r.embed(ring) for r in roots]
        if order is not None:
            roots = [r.truncate(order) for r in roots]
        target, capacity = _working_order(roots)
        n = target + capacity
        total = _apply_log(roots[0], n)
        for r in roots[1:]:
            total = total + _apply_log(r, n)
        out = _apply_exp(total, n)
    if order is not None:
        out = out.truncate(order)
    return out


def formal_multiple(k: int, a: GradedSeries) -> GradedSeries:
    """``[k]_F(a)``: k-fold formal sum of ``a`` (of ``chi(a)`` when k < 0)."""
    if k == 0 or a.is_zero():
        return GradedSeries.zero(a.vars, a.order)
    base = a if k > 0 else formal_inverse(a)
    if abs(k) == 1:
        return base
    target, capacity = _working_order([base])
    n = target + capacity
    return _apply_exp(_apply_log(base, n).scale(abs(k)), n)


def euler_tensor(x: GradedSeries, roots: Sequence[GradedSeries]) -> GradedSeries:
    """``prod_i F(x, t_i)``: Euler class of (line with first Chern class x) tensor xi."""
    result = None
    for r in roots:
        factor = apply_law(x, r)
        result = factor if result is None else result * factor
    if result is None:
        return GradedSeries.constant(1, x.vars, INF)
    return result
