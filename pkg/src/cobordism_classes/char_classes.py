"""Cobordism characteristic classes of degeneracy loci.

``Q_r`` resolves the locus where ``n - r + 1`` generic sections become dependent
through the projectivization of a trivial bundle; ``P_r`` resolves it through a
Grassmann bundle of the dual.  ``Phi_r`` are the coefficients of
``prod_i F(t, t_i)`` in powers of ``t``; they satisfy the ordinary Whitney sum
formula and are related to ``Q_r`` by an upper-triangular transition matrix
with entries ``[CP^k]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .coeff_ring import CoeffPoly, augment, generator, invert_unit_coeff_series
from .formal_group import euler_tensor, exp_series, formal_sum
from .graded_series import (INF, GradedSeries, Var, _merge_vars, rewrite_in_elementary,
                            substitute)
from .pushforward import grassmann_pushforward, trivial_proj_pushforward
from .space_models import BundleSpec

FIBER = "t"
DEFAULT_R_FLOOR = -2
KINDS = ("Q", "P", "Phi", "D", "c")


@dataclass(frozen=True)
class ClassResult:
    """A characteristic class together with how it was computed.

    For a bundle over a space model ``value`` lives in the model ring.  For a
    universal bundle it is a symmetric series in formal roots, exact through
    ``value.order``; :meth:`expansion` rewrites it in ``c_1..c_n``.
    """

    kind: str
    r: int
    value: GradedSeries
    bundle: BundleSpec = field(compare=False)
    route: str = field(default="", compare=False)

    @property
    def universal(self) -> bool:
        return self.bundle.universal

    @property
    def order(self) -> float:
        return self.value.order

    def expansion(self) -> GradedSeries:
        if not self.universal:
            return self.value
        names = self.bundle.root_names()
        return rewrite_in_elementary(self.value, names,
                                     ["c%d" % (k + 1) for k in range(len(names))])

    def augmented(self) -> GradedSeries:
        return self.value.map_coeffs(lambda c: CoeffPoly.constant(augment(c)))

    def is_homogeneous(self) -> bool:
        return self.value.class_degrees() <= {self.r}

    def components(self) -> dict[int, GradedSeries]:
        """Pieces of the (expanded) class by degree of the variable part."""
        return self.expansion().homogeneous_components()

    def __str__(self) -> str:
        return str(self.expansion())

    def to_json(self) -> dict:
        return {"kind": self.kind, "r": self.r, "bundle": str(self.bundle),
                "route": self.route, "value": self.expansion().to_json()}


def _ring_with_fiber(bundle: BundleSpec, cap: int) -> tuple[Var, ...]:
    return _merge_vars(bundle.ring, (Var(FIBER, cap),))


_EULER_CACHE: dict = {}


def _euler_product(bundle: BundleSpec, cap: int) -> GradedSeries:
    """``prod_i F(t, t_i)`` with ``t^(cap+1) = 0``."""
    key = (tuple(r.cache_key() for r in bundle.roots), cap)
    hit = _EULER_CACHE.get(key)
    if hit is None:
        if len(_EULER_CACHE) > 256:
            _EULER_CACHE.clear()
        hit = _EULER_CACHE[key] = _euler_product_uncached(bundle, cap)
    return hit


def _euler_product_uncached(bundle: BundleSpec, cap: int) -> GradedSeries:
    ring = _ring_with_fiber(bundle, cap)
    t = GradedSeries.variable(FIBER, ring, bundle.order)
    roots = [r.embed(ring) for r in bundle.roots]
    return euler_tensor(t, roots)


def _fiber_cap(bundle: BundleSpec, r_min: int) -> int:
    return max(bundle.rank - min(r_min, bundle.rank), 0)


def chern_u(r: int, xi: BundleSpec) -> ClassResult:
    """``c_r^U``: elementary symmetric polynomial of the roots."""
    if r < 0 or r > xi.rank:
        raise ValueError("c_%d is defined for 0 <= r <= %d" % (r, xi.rank))
    return ClassResult("c", r, xi.chern(r), xi, "roots")


def phi_classes(xi: BundleSpec, r_min: int = 0) -> dict[int, ClassResult]:
    """``Phi_r`` for ``r_min <= r <= n``: ``Phi_(n-j)`` is the ``t^j`` coefficient of ``prod F(t, t_i)``.

    ``Phi_r`` vanishes for ``r > n`` but not for ``r < 0``.
    """
    n = xi.rank
    cap = _fiber_cap(xi, r_min)
    E = _euler_product(xi, cap)
    out = {}
    for r in range(min(r_min, n), n + 1):
        out[r] = ClassResult("Phi", r, E.coefficient_of(FIBER, n - r).embed(xi.ring), xi,
                             "euler-coefficients")
    return out


def _zero(xi: BundleSpec, kind: str, r: int) -> ClassResult:
    return ClassResult(kind, r, GradedSeries.zero(xi.ring, xi.order), xi, "vanishing")


def q_class(r: int, xi: BundleSpec, route: str = "direct",
            r_min: int | None = None) -> ClassResult:
    """``Q_r(xi) = p_! e^U(gamma* (x) p* xi)`` over ``M x CP^(n-r)``.

    ``route="direct"`` pushes the Euler class forward; ``route="via_phi"`` sums
    ``Phi_(r+k) [CP^k]``.  ``r_min`` only sets the size of the shared cache.
    """
    n = xi.rank
    if r > n:
        return _zero(xi, "Q", r)
    k = n - r
    cap = _fiber_cap(xi, r if r_min is None else min(r_min, r))
    if route == "direct":
        E = _euler_product(xi, cap)
        if cap != k:
            E = E.with_caps({FIBER: k})
        value = trivial_proj_pushforward(E, k, FIBER).embed(xi.ring)
    elif route == "via_phi":
        phis = phi_classes(xi, r if r_min is None else min(r_min, r))
        value = q_from_phi({s: p.value for s, p in phis.items()}, r, n)
    else:
        raise ValueError("unknown route %r" % route)
    return ClassResult("Q", r, value, xi, route)


def _formal_bundle_for(xi: BundleSpec, order: int) -> BundleSpec:
    return BundleSpec.formal(xi.rank, order, prefix="_t")


def _specialize(universal: GradedSeries, formal: BundleSpec, xi: BundleSpec) -> GradedSeries:
    names = formal.root_names()
    mapping = {nm: r.embed(xi.ring) for nm, r in zip(names, xi.roots)}
    return substitute(universal, mapping).embed(xi.ring)


def _with_formal_roots(xi: BundleSpec, compute) -> GradedSeries:
    """Run ``compute(root_names, order)`` on formal roots and specialize to ``xi``."""
    if xi.universal:
        return compute(xi.root_names(), int(xi.order))
    formal = _formal_bundle_for(xi, xi.space.dimension)
    return _specialize(compute(formal.root_names(), xi.space.dimension), formal, xi)


def p_class(r: int, xi: BundleSpec, extension: bool = False) -> ClassResult:
    """``P_r(xi) = p_! e^U(gamma*)^(n-r+1)`` along ``Gr_r(xi*) -> M``."""
    n = xi.rank
    if r > n:
        return _zero(xi, "P", r)
    if r < 0:
        raise ValueError("P_r is defined for r >= 0")
    if r == 0:
        return ClassResult("P", 0, GradedSeries.constant(1, xi.ring, xi.order), xi, "trivial")
    if r == n:
        return ClassResult("P", r, xi.chern(n), xi, "euler")
    ring = tuple(Var("y%d" % (k + 1)) for k in range(r))
    top = GradedSeries.constant(1, ring)
    for k in range(r):
        top = top * GradedSeries.variable("y%d" % (k + 1), ring)
    f = top ** (n - r + 1)

    def compute(names, order):
        return grassmann_pushforward(f, names, r, order, extension=extension)

    route = "projective" if r == 1 else "dual-projective" if r == n - 1 else "subset-residue"
    return ClassResult("P", r, _with_formal_roots(xi, compute), xi, route)


def d1_class(xi: BundleSpec) -> ClassResult:
    """``D_1 = c_1^U(det xi)``, the formal sum of the roots."""
    if xi.rank == 0:
        return _zero(xi, "D", 1)
    value = formal_sum(list(xi.roots))
    value = value.embed(xi.ring) if value.vars != xi.ring else value
    return ClassResult("D", 1, value, xi, "formal-sum")


def compute_class(kind: str, r: int, xi: BundleSpec, **kw) -> ClassResult:
    if kind == "Q":
        return q_class(r, xi, **kw)
    if kind == "P":
        return p_class(r, xi, **kw)
    if kind == "Phi":
        if r > xi.rank:
            return _zero(xi, "Phi", r)
        return phi_classes(xi, r)[r]
    if kind == "D":
        if r != 1:
            raise ValueError("only D_1 is defined")
        return d1_class(xi)
    if kind == "c":
        return chern_u(r, xi)
    raise ValueError("unknown class kind %r" % kind)


# ---------------------------------------------------------------------------
# transition between Q and Phi


@lru_cache(maxsize=None)
def m_series(length: int) -> tuple[CoeffPoly, ...]:
    """``[M^0..M^length]`` with ``sum [M^i] x^i = 1 / (1 + sum [CP^i] x^i)``."""
    return tuple(invert_unit_coeff_series([generator(i) for i in range(length + 1)], length))


def exp_coefficients(length: int) -> tuple[CoeffPoly, ...]:
    """``[N^0], [N^2], ...``: ``g^-1(x) = sum_i [N^(2i)] x^(i+1)``."""
    e = exp_series(length + 1)
    return tuple(e.coeff((i + 1,)) for i in range(length + 1))


def q_from_phi(phi: Mapping[int, GradedSeries], r: int, n: int) -> GradedSeries:
    """``Q_r = sum_(k=0)^(n-r) Phi_(r+k) [CP^k]``."""
    if r > n:
        some = next(iter(phi.values()))
        return GradedSeries.zero(some.vars, some.order)
    out = None
    for k in range(n - r + 1):
        term = phi[r + k].scale(generator(k))
        out = term if out is None else out + term
    return out


def phi_from_q(q: Mapping[int, GradedSeries], r: int, n: int) -> GradedSeries:
    """``Phi_r = sum_(i>=0) Q_(r+i) [M^i]``; ``Q_s`` vanishes for ``s > n``."""
    if r > n:
        some = next(iter(q.values()))
        return GradedSeries.zero(some.vars, some.order)
    M = m_series(n - r)
    out = None
    for i in range(n - r + 1):
        term = q[r + i].scale(M[i])
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------
# the deformed Whitney formula


@dataclass
class SumFormulaReport:
    r: int
    lhs: GradedSeries
    rhs: GradedSeries
    classical_lhs: GradedSeries
    classical_rhs: GradedSeries
    classical_chern: GradedSeries | None = None
    classical_whitney: GradedSeries | None = None

    @property
    def residual(self) -> GradedSeries:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()

    @property
    def classical_holds(self) -> bool:
        """Augmented sides agree and equal the ordinary Whitney formula."""
        if not (self.classical_lhs - self.classical_rhs).is_zero():
            return False
        if self.classical_chern is None:
            return True
        lhs, chern = self.classical_lhs._align(self.classical_chern)
        _, whitney = self.classical_lhs._align(self.classical_whitney)
        return (lhs - chern).is_zero() and (chern - whitney).is_zero()


def _augment_series(s: GradedSeries) -> GradedSeries:
    return s.map_coeffs(lambda c: CoeffPoly.constant(augment(c)))


def sum_formula_rhs(xi: BundleSpec, eta: BundleSpec, r: int) -> GradedSeries:
    """``sum Q_(l+i)(xi) Q_(r-l+k+j)(eta) [M^i][M^j][CP^k]`` over its finite support."""
    a, b = xi.rank, eta.rank
    ring = _merge_vars(xi.ring, eta.ring)
    lo_x, lo_e = r - b, r - a
    qx = {s: q_class(s, xi, r_min=lo_x).value.embed(ring) for s in range(lo_x, a + 1)}
    qe = {s: q_class(s, eta, r_min=lo_e).value.embed(ring) for s in range(lo_e, b + 1)}
    M = m_series(a + b + max(0, -r) + 1)
    order = min(xi.order, eta.order)
    total = GradedSeries.zero(ring, order)
    for l in range(r - b, a + 1):
        for i in range(a - l + 1):
            left = qx[l + i].scale(M[i])
            budget = b - r + l
            inner = GradedSeries.zero(ring, order)
            for k in range(budget + 1):
                for j in range(budget - k + 1):
                    inner = inner + qe[r - l + k + j].scale(M[j] * generator(k))
            total = total + left * inner
    return total


def verify_sum_formula(xi: BundleSpec, eta: BundleSpec, r: int) -> SumFormulaReport:
    whole = xi + eta
    lhs = q_class(r, whole).value
    rhs = sum_formula_rhs(xi, eta, r)
    lhs, rhs = lhs._align(rhs)
    if 0 <= r <= whole.rank:
        c_lhs = whole.chern(r)
        c_rhs = None
        for j in range(r + 1):
            term = xi.chern(j).embed(whole.ring) * eta.chern(r - j).embed(whole.ring)
            c_rhs = term if c_rhs is None else c_rhs + term
    else:
        c_lhs = c_rhs = GradedSeries.zero(whole.ring)
    return SumFormulaReport(r, lhs, rhs, _augment_series(lhs), _augment_series(rhs),
                            _augment_series(c_lhs), _augment_series(c_rhs))


def naive_whitney_rhs(xi: BundleSpec, eta: BundleSpec, r: int) -> GradedSeries:
    """``sum_j Q_j(xi) Q_(r-j)(eta)``, which the classes do not satisfy."""
    ring = _merge_vars(xi.ring, eta.ring)
    out = GradedSeries.zero(ring)
    for j in range(0, r + 1):
        out = out + q_class(j, xi).value.embed(ring) * q_class(r - j, eta).value.embed(ring)
    return out


# ---------------------------------------------------------------------------
# universal expansions


def universal_class(kind: str, r: int, rank: int, degree: int, **kw) -> ClassResult:
    """A class of the universal rank-``rank`` bundle, exact through ``degree`` in the roots."""
    xi = BundleSpec.formal(rank, degree)
    return compute_class(kind, r, xi, **kw)


def universal_expansion(kind: str, r: int, rank: int, degree: int, **kw) -> GradedSeries:
    """The class as a polynomial in ``c_1..c_n`` with coefficients in ``Q[b_1, b_2, ...]``."""
    return universal_class(kind, r, rank, degree, **kw).expansion()


@dataclass
class DifferenceReport:
    r: int
    rank: int
    degree: int
    difference: GradedSeries

    def component(self, d: int) -> GradedSeries:
        return self.difference.homogeneous_components().get(
            d, GradedSeries.zero(self.difference.vars, self.difference.order))

    def vanishes_through(self) -> int:
        """Largest ``d`` such that every component of degree ``<= d`` is zero."""
        comps = self.difference.homogeneous_components()
        nonzero = [d for d, c in comps.items() if not c.is_zero()]
        return (min(nonzero) - 1) if nonzero else int(self.degree)


def p_minus_q(r: int, rank: int, degree: int) -> DifferenceReport:
    """``P_r - Q_r`` of the universal bundle, expanded in Chern classes."""
    p = universal_expansion("P", r, rank, degree, extension=True)
    q = universal_expansion("Q", r, rank, degree)
    return DifferenceReport(r, rank, degree, p - q)


__all__ = [
    "ClassResult", "chern_u", "phi_classes", "q_class", "p_class", "d1_class",
    "compute_class", "m_series", "exp_coefficients", "q_from_phi", "phi_from_q",
    "verify_sum_formula", "sum_formula_rhs", "naive_whitney_rhs", "SumFormulaReport",
    "universal_class", "universal_expansion", "p_minus_q", "DifferenceReport",
    "DEFAULT_R_FLOOR", "KINDS", "INF",
]
