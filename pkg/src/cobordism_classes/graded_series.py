"""Degree-truncated multivariate power series with ``CoeffPoly`` coefficients.

A series lives in a ring

    Q[b_1, b_2, ...][x_1, ..., x_k] / (nilpotency relations, truncation ideal)

Each variable is either *free* or *nilpotent*.  A nilpotent variable ``u`` with
cap ``m`` satisfies ``u^(m+1) = 0`` exactly (it models the hyperplane class of
CP^m, or a fiber class of a trivial projectivization).  Free variables carry a
positive weight and are truncated: ``order = N`` means that every term whose
weighted free degree is at most ``N`` is exact.  Nilpotent variables never count
toward that degree, so the truncation ideal is a monomial ideal and all ring
operations remain exact modulo it.

Precision bookkeeping is explicit: operations that lose precision (linear
division, substitution of series that carry nilpotent parts) lower ``order``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .coeff_ring import CoeffPoly, bmono_mul, render_terms, to_rational

INF = math.inf


class PrecisionError(ArithmeticError):
    """Raised when an operation would leave no exact terms."""


class DivisibilityError(ArithmeticError):
    """Raised by exact division when the remainder does not vanish."""


@dataclass(frozen=True)
class Var:
    name: str
    cap: int | None = None
    weight: int = 1

    @property
    def free(self) -> bool:
        return self.cap is None


def _merge_vars(a: Sequence[Var], b: Sequence[Var]) -> tuple[Var, ...]:
    if tuple(a) == tuple(b):
        return tuple(a)
    out = list(a)
    seen = {v.name: v for v in a}
    for v in b:
        old = seen.get(v.name)
        if old is None:
            out.append(v)
            seen[v.name] = v
        elif old != v:
            raise ValueError("incompatible declarations for variable %r: %s vs %s"
                             % (v.name, old, v))
    return tuple(out)


def _as_coeff(c) -> CoeffPoly:
    return c if isinstance(c, CoeffPoly) else CoeffPoly.constant(c)


class GradedSeries:
    """Truncated power series; treated as immutable."""

    __slots__ = ("vars", "order", "_terms")

    def __init__(self, vars: Sequence[Var], terms: Mapping[tuple, object] | None = None,
                 order: float = INF):
        self.vars = tuple(vars)
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %s" % names)
        self.order = self._normalize_order(self.vars, order)
        clean: dict[tuple, CoeffPoly] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != len(self.vars):
                raise ValueError("monomial %s does not match variables %s" % (m, names))
            c = _as_coeff(c)
            if c and self._admissible(m):
                prev = clean.get(m)
                c = c if prev is None else prev + c
                if c:
                    clean[m] = c
                else:
                    clean.pop(m, None)
        self._terms = clean

    @staticmethod
    def _normalize_order(vars: Sequence[Var], order: float) -> float:
        if order < 0:
            raise PrecisionError("series would have negative valid order %s" % order)
        if not any(v.free for v in vars):
            return INF
        return order

    @classmethod
    def _raw(cls, vars: tuple[Var, ...], terms: dict, order: float) -> "GradedSeries":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.order = cls._normalize_order(vars, order)
        obj._terms = terms
        return obj

    # construction ----------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[Var] = (), order: float = INF) -> "GradedSeries":
        return cls(vars, {}, order)

    @classmethod
    def constant(cls, c, vars: Sequence[Var] = (), order: float = INF) -> "GradedSeries":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): _as_coeff(c)}, order)

    @classmethod
    def variable(cls, name: str, vars: Sequence[Var] | None = None, order: float = INF,
                 cap: int | None = None, weight: int = 1) -> "GradedSeries":
        """The series consisting of one variable, inside the ring ``vars``."""
        if vars is None:
            vars = (Var(name, cap, weight),)
        vars = tuple(vars)
        idx = [v.name for v in vars].index(name)
        m = tuple(1 if i == idx else 0 for i in range(len(vars)))
        return cls(vars, {m: CoeffPoly.constant(1)}, order)

    @classmethod
    def from_dict(cls, vars: Sequence[Var], terms: Mapping[tuple, object],
                  order: float = INF) -> "GradedSeries":
        return cls(vars, terms, order)

    # basic queries ----------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    def var(self, name: str) -> Var:
        for v in self.vars:
            if v.name == name:
                return v
        raise KeyError(name)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def _admissible(self, m: tuple) -> bool:
        deg = 0
        for v, e in zip(self.vars, m):
            if v.cap is None:
                deg += v.weight * e
            elif e > v.cap:
                return False
        return deg <= self.order

    def free_degree(self, m: tuple) -> int:
        return sum(v.weight * e for v, e in zip(self.vars, m) if v.cap is None)

    def total_degree(self, m: tuple) -> int:
        """Weighted degree counting nilpotent variables too (complex degree)."""
        return sum(v.weight * e for v, e in zip(self.vars, m))

    @property
    def terms(self) -> dict[tuple, CoeffPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, mono: Mapping[str, int] | tuple | None = None) -> CoeffPoly:
        """Coefficient of a monomial, given as an exponent tuple or ``{name: exp}``."""
        if mono is None:
            mono = {}
        if isinstance(mono, Mapping):
            for k in mono:
                if k not in self.names and mono[k]:
                    return CoeffPoly()
            mono = tuple(mono.get(n, 0) for n in self.names)
        return self._terms.get(tuple(mono), CoeffPoly())

    def constant_coeff(self) -> CoeffPoly:
        return self._terms.get((0,) * len(self.vars), CoeffPoly())

    def variables_used(self) -> set[str]:
        used = set()
        for m in self._terms:
            for v, e in zip(self.vars, m):
                if e:
                    used.add(v.name)
        return used

    def nilpotent_capacity(self) -> int:
        """Sum of caps of nilpotent variables occurring in the terms."""
        used = self.variables_used()
        return sum(v.cap for v in self.vars if v.cap is not None and v.name in used)

    def min_free_degree(self) -> int | None:
        if not self._terms:
            return None
        return min(self.free_degree(m) for m in self._terms)

    # ring embedding ---------------------------------------------------------

    def embed(self, vars: Sequence[Var]) -> "GradedSeries":
        """Same element viewed in a ring with more variables (superset of names)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        merged = _merge_vars(vars, self.vars)
        if len(merged) != len(vars):
            raise ValueError("target ring lacks variables %s"
                             % [v.name for v in merged[len(vars):]])
        pos = [[v.name for v in vars].index(n) for n in self.names]
        terms = {}
        for m, c in self._terms.items():
            nm = [0] * len(vars)
            for p, e in zip(pos, m):
                nm[p] = e
            terms[tuple(nm)] = c
        out = GradedSeries(vars, terms, self.order)
        return out

    def _align(self, other: "GradedSeries"):
        if self.vars == other.vars:
            return self, other
        vars = _merge_vars(self.vars, other.vars)
        return self.embed(vars), other.embed(vars)

    def truncate(self, order: float) -> "GradedSeries":
        if order >= self.order:
            return self
        return GradedSeries(self.vars, self._terms, order)

    def with_caps(self, caps: Mapping[str, int]) -> "GradedSeries":
        """Impose nilpotency ``v^(cap+1) = 0`` on (currently free) variables.

        Valid only if the series is exact through the total capacity imposed on
        previously free variables; the resulting order is reduced accordingly.
        """
        vars = []
        lost = 0
        for v in self.vars:
            if v.name in caps:
                cap = caps[v.name]
                if v.cap is None:
                    lost += cap * v.weight
                elif v.cap < cap:
                    raise ValueError("cannot loosen cap of %r" % v.name)
                vars.append(Var(v.name, cap, 1))
            else:
                vars.append(v)
        order = self.order - lost if self.order != INF else INF
        if order < 0:
            raise PrecisionError("series of order %s cannot be reduced to caps %s"
                                 % (self.order, dict(caps)))
        return GradedSeries(vars, self._terms, order)

    def rename(self, mapping: Mapping[str, str]) -> "GradedSeries":
        vars = tuple(Var(mapping.get(v.name, v.name), v.cap, v.weight) for v in self.vars)
        return GradedSeries._raw(vars, self._terms, self.order)

    def drop_unused(self, keep: Iterable[str] = ()) -> "GradedSeries":
        used = self.variables_used() | set(keep)
        idx = [i for i, v in enumerate(self.vars) if v.name in used]
        vars = tuple(self.vars[i] for i in idx)
        terms = {tuple(m[i] for i in idx): c for m, c in self._terms.items()}
        return GradedSeries._raw(vars, terms, self.order)

    # arithmetic ---------------------------------------------------------------

    def _coerce(self, other) -> "GradedSeries":
        if isinstance(other, GradedSeries):
            return other
        return GradedSeries.constant(_as_coeff(other), self.vars, INF)

    def __add__(self, other) -> "GradedSeries":
        a, b = self._align(self._coerce(other))
        order = min(a.order, b.order)
        terms = {}
        for src in (a, b):
            for m, c in src._terms.items():
                prev = terms.get(m)
                terms[m] = c if prev is None else prev + c
        return GradedSeries(a.vars, terms, order)

    __radd__ = __add__

    def __neg__(self) -> "GradedSeries":
        return GradedSeries._raw(self.vars, {m: -c for m, c in self._terms.items()},
                                 self.order)

    def __sub__(self, other) -> "GradedSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "GradedSeries":
        return self._coerce(other) - self

    def scale(self, c) -> "GradedSeries":
        c = _as_coeff(c)
        if c.is_constant():
            k = c.constant_term()
            if not k:
                return GradedSeries.zero(self.vars, self.order)
            return GradedSeries._raw(self.vars, {m: v * k for m, v in self._terms.items()},
                                     self.order)
        return GradedSeries(self.vars, {m: v * c for m, v in self._terms.items()}, self.order)

    def __mul__(self, other) -> "GradedSeries":
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        a, b = self._align(other)
        return _mul(a, b)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GradedSeries":
        c = to_rational(other)
        return self.scale(1 / c)

    def __pow__(self, n: int) -> "GradedSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = GradedSeries.constant(1, self.vars, INF)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        if result.order > self.order and any(v.free for v in self.vars):
            result = result.truncate(self.order)
        return result

    def map_coeffs(self, fn) -> "GradedSeries":
        return GradedSeries(self.vars, {m: fn(c) for m, c in self._terms.items()}, self.order)

    def inverse(self) -> "GradedSeries":
        """Multiplicative inverse of a series whose constant term is a nonzero rational."""
        c0 = self.constant_coeff()
        if not c0 or not c0.is_constant():
            raise ZeroDivisionError("series is not a unit: constant term %s" % c0)
        k = 1 / c0.constant_term()
        zero = (0,) * len(self.vars)
        rest = GradedSeries._raw(self.vars,
                                 {m: c * (-k) for m, c in self._terms.items() if m != zero},
                                 self.order)
        if rest.is_zero():
            return GradedSeries.constant(k, self.vars, self.order)
        if self.order == INF and any(v.free for v in self.vars
                                     if v.name in rest.variables_used()):
            raise PrecisionError("inverse of an exact polynomial in free variables "
                                 "needs a finite order")
        # 1/(c0 (1 - r)) = k * sum r^j; r^j vanishes once j exceeds order + capacity
        total = GradedSeries.constant(1, self.vars, self.order)
        power = total
        while True:
            power = power * rest
            if power.is_zero():
                break
            total = total + power
        return total.scale(k)

    # comparison ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        try:
            a, b = self._align(other)
        except ValueError:
            return False
        order = min(a.order, b.order)
        return a.truncate(order)._terms == b.truncate(order)._terms

    __hash__ = None

    def cache_key(self) -> tuple:
        """Hashable identity (ring, order and exact terms); not compatible with ``==``."""
        return (self.vars, self.order, frozenset(self._terms.items()))

    def differs_at(self, other: "GradedSeries") -> list[tuple[tuple, CoeffPoly]]:
        diff = self - other
        return sorted(diff._terms.items(), key=lambda kv: diff._sort_key(kv[0]))

    # substitution --------------------------------------------------------------

    def substitute(self, mapping: Mapping[str, "GradedSeries"]) -> "GradedSeries":
        return substitute(self, mapping)

    def coefficient_of(self, name: str, e: int) -> "GradedSeries":
        """Coefficient of ``name^e`` as a series in the remaining variables."""
        i = self.index(name)
        vars = self.vars[:i] + self.vars[i + 1:]
        terms = {m[:i] + m[i + 1:]: c for m, c in self._terms.items() if m[i] == e}
        v = self.vars[i]
        order = self.order
        if v.free and order != INF:
            order = order - v.weight * e
            if order < 0:
                raise PrecisionError("coefficient of %s^%d is beyond the valid order"
                                     % (name, e))
        if not any(x.free for x in vars) and order < 0:
            raise PrecisionError("no exact terms")
        return GradedSeries(vars, terms, order)

    def swap(self, a: str, b: str) -> "GradedSeries":
        i, j = self.index(a), self.index(b)
        terms = {}
        for m, c in self._terms.items():
            m = list(m)
            m[i], m[j] = m[j], m[i]
            terms[tuple(m)] = c
        return GradedSeries._raw(self.vars, terms, self.order)

    def homogeneous_components(self) -> dict[int, "GradedSeries"]:
        """Split by total complex degree of the variable part."""
        parts: dict[int, dict] = {}
        for m, c in self._terms.items():
            parts.setdefault(self.total_degree(m), {})[m] = c
        return {d: GradedSeries._raw(self.vars, t, self.order) for d, t in sorted(parts.items())}

    def class_degrees(self) -> set[int]:
        """Total degrees (variables plus coefficients) present in the series."""
        out = set()
        for m, c in self._terms.items():
            d = self.total_degree(m)
            out.update(d + k for k in c.degrees())
        return out

    # rendering ----------------------------------------------------------------

    def _sort_key(self, m: tuple):
        return (self.total_degree(m), tuple(-e for e in m))

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def format_monomial(self, m: tuple) -> str:
        parts = []
        for v, e in zip(self.vars, m):
            if e == 1:
                parts.append(v.name)
            elif e:
                parts.append("%s^%d" % (v.name, e))
        return "*".join(parts)

    def __str__(self) -> str:
        pieces = []
        for m, c in self.sorted_items():
            mono = self.format_monomial(m)
            if len(c) == 1:
                (bm, q), = c.items()
                from .coeff_ring import format_bmono
                bt = format_bmono(bm)
                text = "*".join(p for p in (bt, mono) if p)
                pieces.append((text, q))
            else:
                inner = str(c)
                pieces.append(("(%s)*%s" % (inner, mono) if mono else "(%s)" % inner,
                               mpq(1)))
        return render_terms(pieces)

    def __repr__(self) -> str:
        order = "exact" if self.order == INF else "O(%d)" % (self.order + 1)
        return "GradedSeries(%s; %s)" % (self, order)

    def to_json(self) -> dict:
        return {
            "vars": [{"name": v.name, "cap": v.cap, "weight": v.weight} for v in self.vars],
            "valid_order": None if self.order == INF else int(self.order),
            "terms": [{"exps": {v.name: e for v, e in zip(self.vars, m) if e},
                       "coeff": c.to_json()} for m, c in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedSeries":
        vars = tuple(Var(v["name"], v["cap"], v["weight"]) for v in data["vars"])
        names = [v.name for v in vars]
        terms = {}
        for entry in data["terms"]:
            m = tuple(int(entry["exps"].get(n, 0)) for n in names)
            terms[m] = CoeffPoly.from_json(entry["coeff"])
        order = INF if data["valid_order"] is None else data["valid_order"]
        return cls(vars, terms, order)


# ---------------------------------------------------------------------------
# core kernels


def _prepared(s: GradedSeries):
    rows = [(m, s.free_degree(m), c._terms) for m, c in s._terms.items()]
    rows.sort(key=lambda r: r[1])
    return rows


def _mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    vars = a.vars
    order = min(a.order, b.order)
    caps = [(i, v.cap) for i, v in enumerate(vars) if v.cap is not None]
    if len(a) > len(b):
        a, b = b, a
    rows_a = _prepared(a)
    rows_b = _prepared(b)
    acc: dict[tuple, dict] = {}
    for ma, da, ca in rows_a:
        for mb, db, cb in rows_b:
            if da + db > order:
                break
            m = tuple([x + y for x, y in zip(ma, mb)])
            if caps and any(m[i] > cap for i, cap in caps):
                continue
            target = acc.get(m)
            if target is None:
                target = acc[m] = {}
            for ba, qa in ca.items():
                for bb, qb in cb.items():
                    k = bmono_mul(ba, bb)
                    target[k] = target.get(k, 0) + qa * qb
    terms = {}
    for m, t in acc.items():
        t = {k: q for k, q in t.items() if q}
        if t:
            terms[m] = CoeffPoly._raw(t)
    return GradedSeries._raw(vars, terms, order)


def series_add(a: GradedSeries, b) -> GradedSeries:
    return a + b


def series_mul(a: GradedSeries, b) -> GradedSeries:
    return a * b


def scale(a: GradedSeries, c) -> GradedSeries:
    return a.scale(c)


def substitute(f: GradedSeries, mapping: Mapping[str, GradedSeries]) -> GradedSeries:
    """Simultaneously replace variables of ``f`` by series.

    Each replacement must have no constant term and each of its terms must have
    degree (free plus nilpotent) at least the weight of the replaced variable.
    The result is exact through ``min(order(g), order(f) - C)`` where ``C`` is
    the total nilpotent capacity carried by the replacements.
    """
    mapping = {k: v for k, v in mapping.items() if k in f.names}
    if not mapping:
        return f
    subs_idx = [f.index(k) for k in mapping]
    keep_idx = [i for i in range(len(f.vars)) if i not in subs_idx]
    rest_vars = tuple(f.vars[i] for i in keep_idx)
    ring = rest_vars
    for g in mapping.values():
        ring = _merge_vars(ring, g.vars)

    capacity_vars = set()
    order = INF
    for name, g in mapping.items():
        v = f.var(name)
        gg = g.embed(ring)
        for m in gg._terms:
            free = gg.free_degree(m)
            nil = sum(e for x, e in zip(gg.vars, m) if x.cap is not None)
            if free + nil < (v.weight if v.free else 1):
                raise ValueError("substituting %s: replacement has a term of degree "
                                 "below %d (%s)" % (name, v.weight, gg.format_monomial(m)))
        order = min(order, g.order)
        for x in gg.vars:
            if x.cap is not None and x.name in gg.variables_used():
                capacity_vars.add(x)
    capacity = sum(x.cap for x in capacity_vars)
    if f.order != INF:
        order = min(order, f.order - capacity)
    if order < 0 and any(v.free for v in ring):
        raise PrecisionError("substitution leaves no exact terms (order %s, capacity %d)"
                             % (f.order, capacity))
    if order < 0:
        raise PrecisionError("order %s of the substituted series is below the "
                             "nilpotent capacity %d" % (f.order, capacity))

    gs = {name: g.embed(ring).truncate(order) for name, g in mapping.items()}
    powers = {name: [GradedSeries.constant(1, ring, order)] for name in gs}

    def power(name, e):
        lst = powers[name]
        while len(lst) <= e:
            lst.append(lst[-1] * gs[name])
        return lst[e]

    for name in gs:
        v = f.var(name)
        if v.cap is not None and not power(name, v.cap + 1).is_zero():
            raise ValueError("replacement for nilpotent %s does not satisfy %s^%d = 0"
                             % (name, name, v.cap + 1))

    groups: dict[tuple, dict] = {}
    for m, c in f._terms.items():
        key = tuple(m[i] for i in subs_idx)
        groups.setdefault(key, {})[tuple(m[i] for i in keep_idx)] = c
    names = list(mapping)
    result = GradedSeries.zero(ring, order)
    for key, part in groups.items():
        prod = GradedSeries.constant(1, ring, order)
        for name, e in zip(names, key):
            if e:
                prod = prod * power(name, e)
                if prod.is_zero():
                    break
        if prod.is_zero():
            continue
        rest = GradedSeries(rest_vars, part, INF).embed(ring).truncate(order)
        result = result + rest * prod
    return result


def exact_divide_linear(f: GradedSeries, xi: str, xj: str) -> GradedSeries:
    """Return ``q`` with ``q * (xi - xj) = f``; the valid order drops by one."""
    i, j = f.index(xi), f.index(xj)
    for n in (xi, xj):
        v = f.var(n)
        if not v.free or v.weight != 1:
            raise ValueError("linear division needs free weight-1 variables, got %s" % v)
    remainder: dict[tuple, CoeffPoly] = {}
    quotient: dict[tuple, CoeffPoly] = {}
    for m, c in f._terms.items():
        a, b = m[i], m[j]
        r = list(m)
        r[i], r[j] = 0, a + b
        r = tuple(r)
        prev = remainder.get(r)
        remainder[r] = c if prev is None else prev + c
        for l in range(a):
            q = list(m)
            q[i], q[j] = a - 1 - l, b + l
            q = tuple(q)
            prev = quotient.get(q)
            quotient[q] = c if prev is None else prev + c
    bad = [(r, c) for r, c in remainder.items() if c]
    if bad:
        bad.sort(key=lambda kv: f._sort_key(kv[0]))
        r, c = bad[0]
        raise DivisibilityError("%s is not divisible by (%s - %s): residue term (%s)*%s"
                                % ("series", xi, xj, c, f.format_monomial(r) or "1"))
    order = f.order - 1 if f.order != INF else INF
    return GradedSeries(f.vars, quotient, order)


# ---------------------------------------------------------------------------
# symmetric functions


def _int_poly_mul(a: dict, b: dict, n: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _elementary_int(k: int, n: int) -> dict:
    return {tuple(1 if i in s else 0 for i in range(n)): 1
            for s in itertools.combinations(range(n), k)}


class _EProducts:
    """Cache of expansions of ``e_1^g1 ... e_n^gn`` in ``n`` roots."""

    def __init__(self, n: int):
        self.n = n
        self.cache = {(0,) * n: {(0,) * n: 1}}
        self.elem = [None] + [_elementary_int(k, n) for k in range(1, n + 1)]

    def get(self, gamma: tuple) -> dict:
        res = self.cache.get(gamma)
        if res is None:
            k = max(i for i, g in enumerate(gamma) if g)
            prev = list(gamma)
            prev[k] -= 1
            res = _int_poly_mul(self.get(tuple(prev)), self.elem[k + 1], self.n)
            self.cache[gamma] = res
        return res


def check_symmetric(f: GradedSeries, roots: Sequence[str]):
    """Return ``None`` if ``f`` is symmetric in ``roots``, else the failing transposition."""
    for a, b in zip(roots, roots[1:]):
        if f.swap(a, b)._terms != f._terms:
            return (a, b)
    return None


def elementary_symmetric(k: int, roots: Sequence[GradedSeries]) -> GradedSeries:
    """``e_k`` of a list of series (``e_0 = 1``)."""
    if k < 0 or k > len(roots):
        vars = roots[0].vars if roots else ()
        return GradedSeries.zero(vars)
    # e_k via the running product prod(1 + r_i z)
    vars: tuple = ()
    for r in roots:
        vars = _merge_vars(vars, r.vars)
    es = [GradedSeries.constant(1, vars)] + [GradedSeries.zero(vars) for _ in roots]
    for i, r in enumerate(roots):
        for j in range(min(i + 1, k), 0, -1):
            es[j] = es[j] + es[j - 1] * r
    return es[k]


def rewrite_in_elementary(f: GradedSeries, roots: Sequence[str],
                          names: Sequence[str] | None = None) -> GradedSeries:
    """Express a symmetric series in the elementary symmetric polynomials of ``roots``.

    The result is a series in new free variables ``names`` (default
    ``e1..en``) of weights ``1..n``, together with the other variables of ``f``.
    """
    n = len(roots)
    names = list(names) if names is not None else ["e%d" % (k + 1) for k in range(n)]
    for r in roots:
        v = f.var(r)
        if not v.free or v.weight != 1:
            raise ValueError("roots must be free weight-1 variables, got %s" % v)
    witness = check_symmetric(f, roots)
    if witness is not None:
        raise ValueError("series is not symmetric under the transposition %s <-> %s"
                         % witness)
    ridx = [f.index(r) for r in roots]
    oidx = [i for i in range(len(f.vars)) if i not in ridx]
    other_vars = tuple(f.vars[i] for i in oidx)
    evars = tuple(Var(nm, None, k + 1) for k, nm in enumerate(names))
    out_vars = evars + other_vars

    groups: dict[tuple, dict] = {}
    for m, c in f._terms.items():
        groups.setdefault(tuple(m[i] for i in oidx), {})[tuple(m[i] for i in ridx)] = c

    eprod = _EProducts(n)
    terms = {}
    for okey, part in groups.items():
        part = dict(part)
        while part:
            alpha = max(part)
            c = part[alpha]
            if any(alpha[i] < alpha[i + 1] for i in range(n - 1)):
                raise ValueError("leading monomial %s is not a partition; input is not "
                                 "symmetric" % (alpha,))
            gamma = tuple(alpha[i] - (alpha[i + 1] if i + 1 < n else 0) for i in range(n))
            terms[gamma + okey] = c
            for mono, k in eprod.get(gamma).items():
                v = part.get(mono, CoeffPoly()) - c * k
                if v:
                    part[mono] = v
                else:
                    part.pop(mono, None)
    return GradedSeries(out_vars, terms, f.order)


def back_substitute_elementary(f: GradedSeries, names: Sequence[str],
                               roots: Sequence[GradedSeries]) -> GradedSeries:
    """Inverse of :func:`rewrite_in_elementary`: replace ``e_k`` by ``e_k(roots)``."""
    mapping = {nm: elementary_symmetric(k + 1, roots) for k, nm in enumerate(names)}
    return substitute(f, mapping).drop_unused()
