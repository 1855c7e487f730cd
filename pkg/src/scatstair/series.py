"""Exact rank-two lattice arithmetic and truncated Laurent power series.

The coefficient ring is Q (``fractions.Fraction``); every operation in this
module is exact.  A :class:`TruncatedSeries` is an element of the ring of
Laurent polynomials in two variables x, y with a formal parameter t, known
modulo t^K for a fixed truncation order K.  Terms are stored sparsely as a
map (a, b, k) -> coefficient for the monomial x^a y^b t^k, with no zero
coefficients and every k < K.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

Vec = Tuple[int, int]
TermKey = Tuple[int, int, int]


def wedge(v: Vec, w: Vec) -> int:
    """Determinant of the 2x2 matrix with columns v, w."""
    return v[0] * w[1] - v[1] * w[0]


def rot90(v: Vec) -> Vec:
    """Counterclockwise quarter turn (a, b) -> (-b, a)."""
    return (-v[1], v[0])


def is_primitive(v: Vec) -> bool:
    return v != (0, 0) and math.gcd(abs(v[0]), abs(v[1])) == 1


def primitive_part(v: Vec) -> Tuple[Vec, int]:
    """Write v = j*p with p primitive and j = gcd(|a|, |b|) > 0.

    Raises ValueError on the zero vector.
    """
    if v == (0, 0):
        raise ValueError("zero vector has no primitive part")
    g = math.gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g), g


def _coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def canonical_term_order(key: TermKey) -> Tuple[int, int, int]:
    """Sort key: t-degree ascending, then z-exponent lexicographic."""
    a, b, k = key
    return (k, a, b)


class TruncationMismatch(ValueError):
    """Raised when two series with different truncation orders are combined."""


class TruncatedSeries:
    """An exact series sum c_{a,b,k} x^a y^b t^k, truncated at t^order."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Optional[Mapping[TermKey, Fraction]] = None):
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        self.order = order
        clean: Dict[TermKey, Fraction] = {}
        if terms:
            for (a, b, k), c in terms.items():
                if k < 0:
                    raise ValueError("negative t-degree")
                if k >= order:
                    continue
                c = _coeff(c)
                if c != 0:
                    clean[(a, b, k)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, {(0, 0, 0): Fraction(1)})

    @classmethod
    def monomial(cls, order: int, exponent: Vec, t_degree: int, coeff=1) -> "TruncatedSeries":
        return cls(order, {(exponent[0], exponent[1], t_degree): _coeff(coeff)})

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.order, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, {self.to_text()!r})"

    def __iter__(self) -> Iterator[Tuple[TermKey, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: canonical_term_order(kv[0])))

    def _check_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise TruncationMismatch(
                f"mixed truncation orders {self.order} and {other.order}"
            )

    def coefficient(self, exponent: Vec, t_degree: int) -> Fraction:
        return self.terms.get((exponent[0], exponent[1], t_degree), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0, 0), Fraction(0))

    def is_unit(self) -> bool:
        """Constant term 1 and everything else of t-degree >= 1."""
        if self.constant_term() != 1:
            return False
        return all(k >= 1 for (a, b, k) in self.terms if (a, b, k) != (0, 0, 0))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries(self.order, {(0, 0, 0): _coeff(other)})
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_order(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, Fraction(0)) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        res = TruncatedSeries.__new__(TruncatedSeries)
        res.order = self.order
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        res = TruncatedSeries.__new__(TruncatedSeries)
        res.order = self.order
        res.terms = {key: -c for key, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries(self.order, {(0, 0, 0): _coeff(other)})
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            c = _coeff(other)
            if c == 0:
                return TruncatedSeries.zero(self.order)
            res = TruncatedSeries.__new__(TruncatedSeries)
            res.order = self.order
            res.terms = {key: v * c for key, v in self.terms.items()}
            return res
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_order(other)
        order = self.order
        out: Dict[TermKey, Fraction] = {}
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        for (a1, b1, k1), c1 in small.items():
            for (a2, b2, k2), c2 in big.items():
                k = k1 + k2
                if k >= order:
                    continue
                key = (a1 + a2, b1 + b2, k)
                s = out.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        res = TruncatedSeries.__new__(TruncatedSeries)
        res.order = order
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncatedSeries":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one(self.order)
        base = self
        e = n
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a unit 1 + g with g in the ideal (t), via the geometric series."""
        if not self.is_unit():
            raise ValueError("only units (constant term 1, rest in (t)) are invertible")
        g = self - 1
        acc = TruncatedSeries.one(self.order)
        power = TruncatedSeries.one(self.order)
        for _ in range(1, self.order):
            power = power * (-g)
            if not power:
                break
            acc = acc + power
        return acc

    def log(self) -> "TruncatedSeries":
        """log(1 + g) = sum_{j>=1} (-1)^(j+1) g^j / j, finite modulo t^order."""
        if self.constant_term() != 1:
            raise ValueError("log requires constant term exactly 1")
        if not self.is_unit():
            raise ValueError("log requires all non-constant terms in the ideal (t)")
        g = self - 1
        acc = TruncatedSeries.zero(self.order)
        power = TruncatedSeries.one(self.order)
        for j in range(1, self.order):
            power = power * g
            if not power:
                break
            acc = acc + power * Fraction((-1) ** (j + 1), j)
        return acc

    def exp(self) -> "TruncatedSeries":
        """exp(g) = sum g^j / j! for g with zero constant term, in the ideal (t)."""
        if self.constant_term() != 0:
            raise ValueError("exp requires zero constant term")
        if any(k < 1 for (_, _, k) in self.terms):
            raise ValueError("exp requires the argument to lie in the ideal (t)")
        acc = TruncatedSeries.one(self.order)
        power = TruncatedSeries.one(self.order)
        factorial = 1
        for j in range(1, self.order):
            power = power * self
            if not power:
                break
            factorial *= j
            acc = acc + power * Fraction(1, factorial)
        return acc

    # -- reshaping -----------------------------------------------------------

    def truncate(self, new_order: int) -> "TruncatedSeries":
        """Reduce the truncation order, discarding terms of t-degree >= new_order."""
        if new_order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        return TruncatedSeries(new_order, {k: c for k, c in self.terms.items() if k[2] < new_order})

    def shift(self, exponent: Vec) -> "TruncatedSeries":
        """Multiply by the Laurent monomial z^exponent (t-degrees unchanged)."""
        da, db = exponent
        res = TruncatedSeries.__new__(TruncatedSeries)
        res.order = self.order
        res.terms = {(a + da, b + db, k): c for (a, b, k), c in self.terms.items()}
        return res

    def z_support(self) -> List[Vec]:
        return sorted({(a, b) for (a, b, _) in self.terms})

    def min_t_degree(self) -> Optional[int]:
        if not self.terms:
            return None
        return min(k for (_, _, k) in self.terms)

    # -- rendering -------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form, e.g. ``1 + 2*t*x + t^2*x^2``."""
        if not self.terms:
            return "0"
        parts: List[str] = []
        for (a, b, k), c in self:
            factors: List[str] = []
            if k == 1:
                factors.append("t")
            elif k != 0:
                factors.append(f"t^{k}")
            if a == 1:
                factors.append("x")
            elif a != 0:
                factors.append(f"x^{a}")
            if b == 1:
                factors.append("y")
            elif b != 0:
                factors.append(f"y^{b}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    @classmethod
    def from_text(cls, order: int, text: str) -> "TruncatedSeries":
        """Parse the canonical text form produced by :meth:`to_text`."""
        text = text.strip()
        if text == "0":
            return cls.zero(order)
        tokens = text.replace("- ", "+ -").split("+ ")
        terms: Dict[TermKey, Fraction] = {}
        for token in tokens:
            token = token.strip()
            if not token:
                continue
            sign = 1
            if token.startswith("-"):
                sign = -1
                token = token[1:]
            coeff = Fraction(1)
            a = b = k = 0
            for factor in token.split("*"):
                factor = factor.strip()
                if factor.startswith("t"):
                    k = int(factor[2:]) if factor.startswith("t^") else 1
                elif factor.startswith("x"):
                    a = int(factor[2:]) if factor.startswith("x^") else 1
                elif factor.startswith("y"):
                    b = int(factor[2:]) if factor.startswith("y^") else 1
                else:
                    coeff = Fraction(factor)
            key = (a, b, k)
            terms[key] = terms.get(key, Fraction(0)) + sign * coeff
        return cls(order, terms)

    def term_records(self) -> List[dict]:
        """JSON-ready list of {a, b, k, num, den} records in canonical order."""
        return [
            {"a": a, "b": b, "k": k, "num": c.numerator, "den": c.denominator}
            for (a, b, k), c in self
        ]

    @classmethod
    def from_records(cls, order: int, records: Iterable[Mapping]) -> "TruncatedSeries":
        terms: Dict[TermKey, Fraction] = {}
        for rec in records:
            key = (int(rec["a"]), int(rec["b"]), int(rec["k"]))
            terms[key] = terms.get(key, Fraction(0)) + Fraction(int(rec["num"]), int(rec["den"]))
        return cls(order, terms)


def geometric_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Module-level alias for the unit inverse (used by wall-crossing powers)."""
    return f.inverse()
