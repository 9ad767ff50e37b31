"""Exact arithmetic in Q[b_1, b_2, ...], the rational cobordism coefficient ring.

The generator ``b_i`` stands for the class of the complex projective space
CP^i.  Degrees use the complex convention: ``deg b_i = -i``.

A monomial is stored as a tuple of exponents ``(e_1, e_2, ..., e_B)`` with
trailing zeros stripped, so ``()`` is the unit monomial and ``(2, 1)`` is
``b1^2*b2``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from gmpy2 import mpq

Rational = mpq
BMonomial = tuple

Scalar = Union[int, Fraction, "mpq"]

_BMUL_CACHE: dict[tuple[BMonomial, BMonomial], BMonomial] = {}


def to_rational(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def bmono_mul(a: BMonomial, b: BMonomial) -> BMonomial:
    key = (a, b)
    res = _BMUL_CACHE.get(key)
    if res is None:
        if len(a) < len(b):
            a, b = b, a
        res = tuple([x + y for x, y in zip(a, b)]) + a[len(b):]
        _BMUL_CACHE[key] = res
    return res


def bmono_degree(m: BMonomial) -> int:
    return -sum((i + 1) * e for i, e in enumerate(m))


def _strip(exps: Sequence[int]) -> BMonomial:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _lex_desc_key(m: BMonomial, width: int):
    padded = m + (0,) * (width - len(m))
    return tuple(-e for e in padded)


class CoeffPoly:
    """Sparse polynomial in the generators ``b_i = [CP^i]`` over Q.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BMonomial, Scalar] | None = None):
        clean: dict[BMonomial, mpq] = {}
        if terms:
            for m, c in terms.items():
                c = to_rational(c)
                if c:
                    m = _strip(m)
                    clean[m] = clean.get(m, mpq(0)) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[BMonomial, mpq]) -> "CoeffPoly":
        # caller guarantees stripped keys and nonzero values
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, c: Scalar) -> "CoeffPoly":
        c = to_rational(c)
        return cls._raw({(): c} if c else {})

    @property
    def terms(self) -> dict[BMonomial, mpq]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_term(self) -> mpq:
        return self._terms.get((), mpq(0))

    def max_generator(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    def degrees(self) -> set[int]:
        return {bmono_degree(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Complex degree of a homogeneous polynomial (0 for the zero polynomial)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous: degrees %s" % sorted(degs))
        return degs.pop() if degs else 0

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "CoeffPoly":
        if isinstance(other, CoeffPoly):
            return other
        return CoeffPoly.constant(other)

    @staticmethod
    def _foreign(other) -> bool:
        return not isinstance(other, (CoeffPoly, int, Fraction, type(mpq(0)), str))

    def __add__(self, other) -> "CoeffPoly":
        if self._foreign(other):
            return NotImplemented
        other = self._coerce(other)
        res = dict(self._terms)
        for m, c in other._terms.items():
            v = res.get(m, 0) + c
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return CoeffPoly._raw(res)

    __radd__ = __add__

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "CoeffPoly":
        if self._foreign(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CoeffPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CoeffPoly":
        if self._foreign(other):
            return NotImplemented
        if not isinstance(other, CoeffPoly):
            c = to_rational(other)
            if not c:
                return CoeffPoly()
            return CoeffPoly._raw({m: v * c for m, v in self._terms.items()})
        res: dict[BMonomial, mpq] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = bmono_mul(ma, mb)
                res[m] = res.get(m, 0) + ca * cb
        return CoeffPoly._raw({m: c for m, c in res.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CoeffPoly":
        c = to_rational(other)
        return self * (1 / c)

    def __pow__(self, n: int) -> "CoeffPoly":
        if n < 0:
            raise ValueError("negative power")
        result = CoeffPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CoeffPoly):
            return self._terms == other._terms
        try:
            return self._terms == CoeffPoly.constant(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # rendering ------------------------------------------------------------

    def sorted_items(self):
        width = self.max_generator()
        return sorted(self._terms.items(),
                      key=lambda kv: (-bmono_degree(kv[0]), _lex_desc_key(kv[0], width)))

    def __str__(self) -> str:
        return render_terms([(format_bmono(m), c) for m, c in self.sorted_items()])

    def __repr__(self) -> str:
        return "CoeffPoly(%s)" % self

    def to_json(self) -> dict:
        return {"monomials": [
            {"exps": {str(i + 1): e for i, e in enumerate(m) if e},
             "num": str(c.numerator), "den": str(c.denominator)}
            for m, c in self.sorted_items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "CoeffPoly":
        terms = {}
        for entry in data["monomials"]:
            exps = {int(k): int(v) for k, v in entry["exps"].items()}
            width = max(exps, default=0)
            m = tuple(exps.get(i, 0) for i in range(1, width + 1))
            terms[m] = mpq(int(entry["num"]), int(entry["den"]))
        return cls(terms)


def format_bmono(m: BMonomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append("b%d" % (i + 1))
        elif e:
            parts.append("b%d^%d" % (i + 1, e))
    return "*".join(parts)


def render_terms(terms: Iterable[tuple[str, mpq]]) -> str:
    """Join ``(monomial_text, coefficient)`` pairs into ``"a - 2*b + 1/2*c"``."""
    out = []
    for mono, c in terms:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = "%s*%s" % (a, mono)
        out.append((sign, body))
    if not out:
        return "0"
    first_sign, first = out[0]
    text = ("-" + first) if first_sign == "-" else first
    for sign, body in out[1:]:
        text += " %s %s" % (sign, body)
    return text


def generator(i: int) -> CoeffPoly:
    """The class ``[CP^i]``; ``generator(0)`` is the unit."""
    if i < 0:
        raise ValueError("generator index must be >= 0")
    if i == 0:
        return CoeffPoly.constant(1)
    return CoeffPoly._raw({(0,) * (i - 1) + (1,): mpq(1)})


def augment(p: CoeffPoly) -> mpq:
    """Send every ``b_i`` to zero; the image in ordinary cohomology of a point."""
    return p.constant_term()


def invert_unit_coeff_series(c: Sequence[CoeffPoly], order: int) -> list[CoeffPoly]:
    """Coefficients ``m_0..m_order`` of ``1 / sum(c_i x^i)`` when ``c_0 = 1``."""
    c = [CoeffPoly._coerce(x) for x in c]
    if not c or c[0] != 1:
        raise ValueError("series is not a unit: constant coefficient must be 1")
    m = [CoeffPoly.constant(1)]
    for k in range(1, order + 1):
        acc = CoeffPoly()
        for i in range(1, min(k, len(c) - 1) + 1):
            acc = acc + c[i] * m[k - i]
        m.append(-acc)
    return m


def parse_coeffpoly(text: str) -> CoeffPoly:
    """Parse text such as ``"b1^2 - b2"`` or ``"3/2 - b2/3"``."""
    import sympy
    from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                            standard_transformations)

    expr = parse_expr(text, transformations=standard_transformations + (convert_xor,),
                      evaluate=True)
    syms = sorted(expr.free_symbols, key=lambda s: s.name)
    index = {}
    for s in syms:
        name = s.name
        if not (name.startswith("b") and name[1:].isdigit() and int(name[1:]) >= 1):
            raise ValueError("unknown symbol %r in coefficient expression" % name)
        index[s] = int(name[1:])
    if not syms:
        val = sympy.Rational(expr)
        return CoeffPoly.constant(mpq(int(val.p), int(val.q)))
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for exps, coeff in poly.terms():
        coeff = sympy.Rational(coeff)
        width = max(index.values())
        m = [0] * width
        for s, e in zip(syms, exps):
            m[index[s] - 1] += e
        terms[tuple(m)] = mpq(int(coeff.p), int(coeff.q))
    return CoeffPoly(terms)
