"""Finite models of U*(CP^m1 x ... x CP^mk) and vector bundles over them.

``U*(CP^m) = U*(pt)[u] / (u^(m+1))`` with ``u`` the class of a hyperplane,
which is also the first Chern class of O(1).  Bundles are described by their
Chern roots (splitting principle): either ring elements of a model, or formal
free variables for universal computations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .formal_group import formal_multiple, formal_sum
from .graded_series import (INF, GradedSeries, PrecisionError, Var,
                            elementary_symmetric)


@dataclass(frozen=True)
class SpaceModel:
    """Product of projective spaces ``CP^dims[0] x CP^dims[1] x ...``."""

    dims: tuple[int, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in dims):
            raise ValueError("projective space dimensions must be >= 0")
        object.__setattr__(self, "dims", dims)
        if not self.names:
            names = ("u",) if len(dims) == 1 else tuple("u%d" % (i + 1) for i in range(len(dims)))
            object.__setattr__(self, "names", names)
        if len(self.names) != len(dims):
            raise ValueError("need one generator name per factor")

    @classmethod
    def cp(cls, *dims: int) -> "SpaceModel":
        return cls(tuple(dims))

    @property
    def vars(self) -> tuple[Var, ...]:
        return tuple(Var(n, d) for n, d in zip(self.names, self.dims))

    @property
    def dimension(self) -> int:
        return sum(self.dims)

    def gen(self, i: int = 0) -> GradedSeries:
        return GradedSeries.variable(self.names[i], self.vars)

    def one(self) -> GradedSeries:
        return GradedSeries.constant(1, self.vars)

    def zero(self) -> GradedSeries:
        return GradedSeries.zero(self.vars)

    def element(self, terms) -> GradedSeries:
        return GradedSeries(self.vars, terms)

    def basis(self) -> list[tuple[int, ...]]:
        import itertools
        return list(itertools.product(*(range(d + 1) for d in self.dims)))

    def __str__(self) -> str:
        return "x".join("CP%d" % d for d in self.dims)


def reduce(x: GradedSeries, space: SpaceModel) -> GradedSeries:
    """Impose ``u_i^(m_i+1) = 0`` on an expression in the generators of ``space``."""
    caps = dict(zip(space.names, space.dims))
    for v in x.vars:
        if v.name in caps and v.cap is not None and v.cap != caps[v.name]:
            if v.cap < caps[v.name]:
                raise ValueError("%s already truncated at %d" % (v.name, v.cap))
    out = x.with_caps({n: c for n, c in caps.items() if n in x.names})
    missing = [v for v in space.vars if v.name not in out.names]
    if missing:
        out = out.embed(out.vars + tuple(missing))
    return out


@dataclass(frozen=True)
class BundleSpec:
    """A complex vector bundle given by its Chern roots.

    ``space`` is ``None`` for universal bundles whose roots are formal
    variables.
    """

    roots: tuple[GradedSeries, ...]
    space: SpaceModel | None = None
    label: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.roots)

    @property
    def universal(self) -> bool:
        return self.space is None

    @classmethod
    def formal(cls, rank: int, order: int, prefix: str = "t") -> "BundleSpec":
        vars = tuple(Var("%s%d" % (prefix, i + 1)) for i in range(rank))
        roots = tuple(GradedSeries.variable(v.name, vars, order) for v in vars)
        return cls(roots, None, "formal rank %d" % rank)

    @property
    def ring(self) -> tuple[Var, ...]:
        if self.space is not None:
            return self.space.vars
        vars: tuple = ()
        for r in self.roots:
            vars = vars + tuple(v for v in r.vars if v.name not in {x.name for x in vars})
        return vars

    @property
    def order(self) -> float:
        return min((r.order for r in self.roots), default=INF)

    def root_names(self) -> list[str] | None:
        """Names of the roots when every root is a bare free variable."""
        names = []
        for r in self.roots:
            used = r.variables_used()
            if len(used) != 1 or len(r) != 1:
                return None
            name = used.pop()
            (m, c), = r.items()
            if c != 1 or sum(m) != 1 or not r.var(name).free:
                return None
            names.append(name)
        if len(set(names)) != len(names):
            return None
        return names

    def chern(self, k: int) -> GradedSeries:
        if k == 0:
            return GradedSeries.constant(1, self.ring, self.order)
        if k < 0 or k > self.rank:
            return GradedSeries.zero(self.ring, self.order)
        return elementary_symmetric(k, [r.embed(self.ring) for r in self.roots])

    def __add__(self, other: "BundleSpec") -> "BundleSpec":
        if self.space != other.space:
            raise ValueError("bundles live over different spaces")
        label = " + ".join(x for x in (self.label, other.label) if x)
        return BundleSpec(self.roots + other.roots, self.space, label)

    def __str__(self) -> str:
        if self.label:
            return self.label
        return "bundle[%s]" % ", ".join(str(r) for r in self.roots)


def direct_sum(*bundles: BundleSpec) -> BundleSpec:
    out = bundles[0]
    for b in bundles[1:]:
        out = out + b
    return out


def line_bundle(space: SpaceModel, factor: int = 0, twist: int = 1) -> BundleSpec:
    """``O(twist)`` pulled back from factor ``factor`` of ``space``."""
    twists = [0] * len(space.dims)
    twists[factor] = twist
    return line_bundle_multi(space, twists)


def line_bundle_multi(space: SpaceModel, twists: Sequence[int]) -> BundleSpec:
    """``O(a_1) x ... x O(a_k)`` over a product; root ``F([a_1]u_1, ..., [a_k]u_k)``."""
    if len(twists) != len(space.dims):
        raise ValueError("need one twist per factor of %s" % space)
    parts = [formal_multiple(a, space.gen(i)) for i, a in enumerate(twists) if a]
    root = formal_sum(parts) if parts else space.zero()
    root = root.embed(space.vars) if root.vars != space.vars else root
    label = "O(%s)" % ",".join(str(a) for a in twists)
    return BundleSpec((root,), space, label)


def trivial_bundle(space: SpaceModel | None, rank: int) -> BundleSpec:
    vars = space.vars if space is not None else ()
    return BundleSpec(tuple(GradedSeries.zero(vars) for _ in range(rank)), space,
                      "C^%d" % rank)


def quotient_chern_classes(total: BundleSpec | Sequence[GradedSeries],
                           sub_roots: Sequence[GradedSeries]) -> list[GradedSeries]:
    """Chern classes ``c_0..c_(n-s)`` of ``total / sub`` from ``c(total) = c(sub) c(quot)``."""
    chern = ([total.chern(k) for k in range(total.rank + 1)]
             if isinstance(total, BundleSpec) else list(total))
    n = len(chern) - 1
    s = len(sub_roots)
    if s > n:
        raise ValueError("sub-bundle rank exceeds total rank")
    quot = list(chern)
    for x in sub_roots:
        # divide by (1 + x): q_k = c_k - x q_(k-1)
        new = [quot[0]]
        for k in range(1, len(quot)):
            new.append(quot[k] - new[k - 1] * x)
        quot = new
    return quot[: n - s + 1]


def quotient_roots(total: BundleSpec, sub_roots: Sequence[GradedSeries]) -> BundleSpec:
    """Roots of ``total / sub``.

    When ``sub_roots`` are literally among the roots of ``total`` the remaining
    roots are returned.  When the quotient has rank one its root is
    ``c_1(total) - sum(sub)``, subject to the remaining Whitney identities.
    """
    remaining = list(total.roots)
    literal = True
    for x in sub_roots:
        for i, r in enumerate(remaining):
            if r == x:
                del remaining[i]
                break
        else:
            literal = False
            break
    if literal:
        return BundleSpec(tuple(remaining), total.space)
    rank = total.rank - len(sub_roots)
    if rank == 0:
        roots: tuple = ()
    elif rank == 1:
        roots = (total.chern(1) - sum(sub_roots[1:], sub_roots[0]),)
    else:
        raise ValueError("quotient roots of rank %d are not expressible; "
                         "use quotient_chern_classes" % rank)
    candidate = list(sub_roots) + list(roots)
    for k in range(1, total.rank + 1):
        lhs = elementary_symmetric(k, candidate)
        if not (lhs - total.chern(k)).is_zero():
            raise ValueError("inconsistent Whitney identities at e_%d" % k)
    return BundleSpec(roots, total.space)


_TERM = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?O\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*$")


def parse_space(text: str) -> SpaceModel:
    """Parse ``CP2`` or ``CP1xCP2``."""
    parts = [p.strip() for p in re.split(r"[x×]", text.strip()) if p.strip()]
    dims = []
    for p in parts:
        m = re.fullmatch(r"CP\^?\{?(\d+)\}?", p)
        if not m:
            raise ValueError("cannot parse space factor %r" % p)
        dims.append(int(m.group(1)))
    if not dims:
        raise ValueError("empty space description")
    return SpaceModel(tuple(dims))


def parse_bundle(text: str) -> BundleSpec:
    """Parse ``"O(1)+O(1)@CP2"``, ``"O(1,0)+O(0,1)@CP1xCP2"``, ``"2O(1)@CP1"``."""
    if "@" not in text:
        raise ValueError("bundle description needs '@<space>': %r" % text)
    terms_text, space_text = text.rsplit("@", 1)
    space = parse_space(space_text)
    bundle = BundleSpec((), space)
    labels = []
    for term in (t for t in terms_text.split("+") if t.strip()):
        m = _TERM.match(term)
        if not m:
            raise ValueError("cannot parse bundle term %r" % term)
        mult = int(m.group(1) or 1)
        twists = [int(a) for a in m.group(2).split(",")]
        if len(twists) == 1 and len(space.dims) > 1:
            raise ValueError("O(a) on %s needs one twist per factor" % space)
        for _ in range(mult):
            bundle = bundle + line_bundle_multi(space, twists)
            labels.append("O(%s)" % ",".join(map(str, twists)))
    return BundleSpec(bundle.roots, space, " + ".join(labels) + " @ " + str(space))


def restrict(bundle: BundleSpec, space: SpaceModel) -> BundleSpec:
    """Pull back along ``CP^m' x ... -> CP^m x ...`` (m' <= m, linear inclusion)."""
    if len(space.dims) != len(bundle.space.dims):
        raise ValueError("restriction must keep the number of factors")
    caps = dict(zip(space.names, space.dims))
    roots = tuple(r.with_caps(caps) for r in bundle.roots)
    return BundleSpec(roots, space, bundle.label)


__all__ = [
    "SpaceModel", "BundleSpec", "reduce", "line_bundle", "line_bundle_multi",
    "trivial_bundle", "quotient_chern_classes", "quotient_roots", "parse_bundle",
    "parse_space", "restrict", "direct_sum", "PrecisionError",
]
