"""Four-dimensional ellipsoid-embedding numerics.

Weight sequences of rational aspect ratios, exceptional-class enumeration with
Cremona reduction, the sharp obstruction supremum, the infinite Fibonacci
staircase of the ball, its stabilized counterpart, and the folding upper bound
3a/(a+1).  Square roots are never evaluated: values on the volume branch are
returned as an exact :class:`SqrtValue` marker and compared by squaring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union


def fib(i: int) -> int:
    """Fibonacci numbers with fib(-1) = 1, fib(0) = 0."""
    if i < -1:
        raise ValueError("index must be >= -1")
    if i == -1:
        return 1
    a, b = 0, 1
    for _ in range(i):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class WeightSequence:
    """Nonincreasing square side-lengths tiling a 1 x (p/q) box."""

    target: Fraction
    weights: Tuple[Fraction, ...]
    multiplicities: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.weights)

    def square_sum(self) -> Fraction:
        return sum((w * w for w in self.weights), Fraction(0))


def weight_sequence(p: int, q: int) -> WeightSequence:
    """Weight sequence of a = p/q > 1 via the Euclidean algorithm on (p, q).

    The multiplicities of the distinct weights are the continued-fraction
    coefficients of a, the weights are nonincreasing, start at 1, and their
    squares sum to a.
    """
    import math

    if q < 1 or p <= q:
        raise ValueError("need p > q >= 1")
    if math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    weights: List[Fraction] = []
    mults: List[int] = []
    num, den = p, q
    while den > 0:
        m, r = divmod(num, den)
        weights.extend([Fraction(den, q)] * m)
        mults.append(m)
        num, den = den, r
    return WeightSequence(Fraction(p, q), tuple(weights), tuple(mults))


# ---------------------------------------------------------------------------
# exceptional classes


@dataclass(frozen=True)
class ExceptionalClass:
    """Degree and nonincreasing multiplicities of a (-1)-sphere class."""

    degree: int
    multiplicities: Tuple[int, ...]

    def chern(self) -> int:
        return 3 * self.degree - sum(self.multiplicities)

    def self_intersection(self) -> int:
        return self.degree ** 2 - sum(m * m for m in self.multiplicities)


def cremona_reduces(degree: int, multiplicities: Sequence[int]) -> bool:
    """Iterated standard Cremona moves terminate at (0; -1)."""
    d = degree
    ms = sorted((m for m in multiplicities if m != 0), reverse=True)
    while True:
        if d == 0:
            return ms == [-1]
        if d < 0:
            return False
        top = (ms + [0, 0, 0])[:3]
        c = d - sum(top)
        if c >= 0:
            return False
        d += c
        ms = sorted([m + c for m in top] + ms[3:], reverse=True)
        ms = [m for m in ms if m != 0]


def is_exceptional_class(cls: ExceptionalClass) -> bool:
    """Numerical conditions d^2 - sum m^2 = -1, 3d - sum m = 1, plus Cremona reduction."""
    if cls.self_intersection() != -1 or cls.chern() != 1:
        return False
    if any(m < 0 for m in cls.multiplicities):
        return False
    return cremona_reduces(cls.degree, cls.multiplicities)


def enumerate_exceptional_classes(degree: int, max_length: int) -> Iterator[ExceptionalClass]:
    """All valid classes of the given degree with at most ``max_length`` positive
    multiplicities, by pruned search over nonincreasing tuples."""
    target_sum = 3 * degree - 1
    target_sq = degree * degree + 1

    def recurse(prefix: List[int], remaining_sum: int, remaining_sq: int, bound: int, slots: int):
        if remaining_sum == 0:
            if remaining_sq == 0:
                cls = ExceptionalClass(degree, tuple(prefix))
                if cremona_reduces(degree, prefix):
                    yield cls
            return
        if slots == 0 or remaining_sq <= 0:
            return
        top = min(bound, remaining_sum)
        for m in range(top, 0, -1):
            sq = m * m
            if sq > remaining_sq:
                continue
            # remaining slots at value <= m must be able to reach the sums
            if m * (slots - 1) < remaining_sum - m:
                continue
            yield from recurse(prefix + [m], remaining_sum - m, remaining_sq - sq, m, slots - 1)

    if degree >= 1 and target_sum > 0:
        yield from recurse([], target_sum, target_sq, degree, max_length)


def obstruction_sup(
    p: int, q: int, d_max: int
) -> Tuple[Fraction, Optional[ExceptionalClass]]:
    """Largest (sum m_i w_i)/d over valid classes of degree <= d_max, with the
    weights of p/q padded or truncated to the class length; returns the
    achieving class (None when no class exists)."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    wt = weight_sequence(p, q)
    best = Fraction(0)
    best_cls: Optional[ExceptionalClass] = None
    k = len(wt)
    for d in range(1, d_max + 1):
        for cls in enumerate_exceptional_classes(d, k):
            total = Fraction(0)
            for m, w in zip(cls.multiplicities, wt.weights):
                total += m * w
            ratio = total / d
            if ratio > best:
                best = ratio
                best_cls = cls
    return best, best_cls


# ---------------------------------------------------------------------------
# the staircase and its stabilization


@dataclass(frozen=True)
class SqrtValue:
    """Exact marker for the square root of a rational number."""

    radicand: Fraction

    def squared(self) -> Fraction:
        return self.radicand

    def __lt__(self, other) -> bool:
        if isinstance(other, SqrtValue):
            return self.radicand < other.radicand
        other = Fraction(other)
        return other > 0 and self.radicand < other * other

    def __gt__(self, other) -> bool:
        if isinstance(other, SqrtValue):
            return self.radicand > other.radicand
        other = Fraction(other)
        return other <= 0 or self.radicand > other * other

    def __eq__(self, other) -> bool:
        if isinstance(other, SqrtValue):
            return self.radicand == other.radicand
        other = Fraction(other)
        return other >= 0 and self.radicand == other * other

    def __hash__(self):
        return hash(("sqrt", self.radicand))

    def __str__(self):
        return f"sqrt({self.radicand})"


class Unspecified:
    """Sentinel for the transitional window where no closed form is implemented."""

    _instance: Optional["Unspecified"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unspecified"


UNSPECIFIED = Unspecified()

StaircaseValue = Union[Fraction, SqrtValue, Unspecified]

# Transitional window of the ball embedding function.
WINDOW_LOW = Fraction(7)
WINDOW_HIGH = Fraction(7) + Fraction(1) + Fraction(1, 36)  # 8 + 1/36


def below_tau4(a: Fraction) -> bool:
    """Exact test a <= tau^4 (equality impossible for rational a)."""
    n, d = a.numerator, a.denominator
    return not (n * n + d * d - 7 * n * d > 0 and 2 * n > 7 * d)


def _rational_sqrt(a: Fraction) -> Optional[Fraction]:
    import math

    rn, rd = math.isqrt(a.numerator), math.isqrt(a.denominator)
    if rn * rn == a.numerator and rd * rd == a.denominator:
        return Fraction(rn, rd)
    return None


def outer_corner(k: int) -> Fraction:
    """x-value fib(2k+5)/fib(2k+1) of the k-th outer staircase corner, k >= -1."""
    return Fraction(fib(2 * k + 5), fib(2 * k + 1))


def inner_corner(k: int) -> Fraction:
    """x-value fib(2k+3)^2/fib(2k+1)^2 of the k-th inner staircase corner."""
    return Fraction(fib(2 * k + 3) ** 2, fib(2 * k + 1) ** 2)


def step_height(k: int) -> Fraction:
    """Constant value fib(2k+5)/fib(2k+3) of the k-th staircase step."""
    return Fraction(fib(2 * k + 5), fib(2 * k + 3))


def ball_embedding_value(a: Fraction) -> StaircaseValue:
    """The ellipsoid-into-ball embedding function of the four-ball at aspect a.

    Piecewise on [1, tau^4]: linear a * fib(2k+1)/fib(2k+3) on
    [inner_corner(k), outer_corner(k)] and constant step_height(k) up to the
    next inner corner; (a + 1)/3 on [tau^4, 7]; the volume bound sqrt(a) from
    8 + 1/36 on; unspecified in between.
    """
    a = Fraction(a)
    if a < 1:
        raise ValueError("aspect ratio must be >= 1")
    if not below_tau4(a):
        if a <= WINDOW_LOW:
            return (a + 1) / 3
        if a < WINDOW_HIGH:
            return UNSPECIFIED
        root = _rational_sqrt(a)
        return root if root is not None else SqrtValue(a)
    k = -1
    while True:
        if a <= outer_corner(k):
            return a * Fraction(fib(2 * k + 1), fib(2 * k + 3))
        if a <= inner_corner(k + 1):
            return step_height(k)
        k += 1


def stabilized_value(a: Fraction, stab_factors: int = 1) -> Fraction:
    """Stabilized embedding value: the staircase below tau^4, else 3a/(a+1).

    Independent of the number of stabilizing factors (kept as an argument to
    mirror the definition)."""
    if stab_factors < 1:
        raise ValueError("need at least one stabilizing factor")
    a = Fraction(a)
    if a < 1:
        raise ValueError("aspect ratio must be >= 1")
    if below_tau4(a):
        value = ball_embedding_value(a)
        assert isinstance(value, Fraction)
        return value
    return 3 * a / (a + 1)


def folding_bound(a: Fraction) -> Fraction:
    """The folding upper bound 3a/(a+1) for the stabilized problem."""
    a = Fraction(a)
    if a < 1:
        raise ValueError("aspect ratio must be >= 1")
    return 3 * a / (a + 1)


# ---------------------------------------------------------------------------
# sampling and plots


def staircase_samples(
    lo: Fraction, hi: Fraction, count: int
) -> List[Tuple[Fraction, StaircaseValue, Fraction, Fraction]]:
    """Rows (a, ball value, stabilized, folding bound) on an evenly spaced
    rational grid with ``count`` points."""
    lo, hi = Fraction(lo), Fraction(hi)
    if count < 2 or hi <= lo:
        raise ValueError("need count >= 2 and hi > lo")
    rows = []
    step = (hi - lo) / (count - 1)
    for i in range(count):
        a = lo + i * step
        rows.append((a, ball_embedding_value(a), stabilized_value(a), folding_bound(a)))
    return rows


def _value_text(v: StaircaseValue) -> str:
    if isinstance(v, Unspecified):
        return "unspecified"
    return str(v)


def samples_to_csv(rows) -> str:
    lines = ["a,ball,stabilized,folding"]
    for a, ball, stab, fold in rows:
        lines.append(f"{a},{_value_text(ball)},{stab},{fold}")
    return "\n".join(lines) + "\n"


def samples_to_json(rows) -> str:
    payload = [
        {
            "a": str(a),
            "ball": _value_text(ball),
            "stabilized": str(stab),
            "folding": str(fold),
        }
        for a, ball, stab, fold in rows
    ]
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _plot_y(v: StaircaseValue) -> Optional[float]:
    if isinstance(v, Unspecified):
        return None
    if isinstance(v, SqrtValue):
        return float(v.radicand) ** 0.5
    return float(v)


def staircase_svg(lo: Fraction, hi: Fraction, count: int, provenance: str = "") -> str:
    """Static SVG of the ball staircase and the folding curve, with the outer
    and inner corners in range marked."""
    rows = staircase_samples(lo, hi, count)
    width, height = 640, 420
    pad = 40.0
    xs = [float(a) for a, *_ in rows]
    ys = [y for _, ball, stab, fold in rows for y in (_plot_y(ball), float(fold)) if y is not None]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys) - 0.1, max(ys) + 0.1

    def px(x: float) -> float:
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def py(y: float) -> float:
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<!-- range: [{lo}, {hi}] samples: {count} -->",
    ]
    if provenance:
        out.append(f"<!-- {provenance} -->")
    stair_pts = [
        f"{px(float(a)):.2f},{py(_plot_y(ball)):.2f}"
        for a, ball, _, _ in rows
        if _plot_y(ball) is not None
    ]
    fold_pts = [f"{px(float(a)):.2f},{py(float(h)):.2f}" for a, _, _, h in rows]
    out.append(
        f'<polyline fill="none" stroke="#204080" stroke-width="1.6" points="{" ".join(stair_pts)}"/>'
    )
    out.append(
        f'<polyline fill="none" stroke="#a04040" stroke-width="1.2" '
        f'stroke-dasharray="5 3" points="{" ".join(fold_pts)}"/>'
    )
    # corners accumulate below tau^4, so cap the index once they are closer
    # together than any plausible plot resolution
    for k in range(-1, 25):
        ak = outer_corner(k)
        if ak > hi:
            break
        if ak >= lo:
            out.append(
                f'<circle cx="{px(float(ak)):.2f}" cy="{py(float(step_height(k))):.2f}" '
                f'r="3" fill="#204080"/>'
            )
        gk = inner_corner(k + 1)
        if lo <= gk <= hi:
            out.append(
                f'<circle cx="{px(float(gk)):.2f}" cy="{py(float(step_height(k))):.2f}" '
                f'r="3" fill="none" stroke="#204080"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
