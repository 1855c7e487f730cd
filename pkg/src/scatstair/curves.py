"""Numerics of plane curves with one distinguished (p, q) cusp: index and
double-point counts, the Diophantine classification of index-zero parameter
pairs, the cusp-parameter symmetries, embedding bounds, the degeneration
inequality, and the scattering cross-check pipeline.

Everything is exact; the golden-ratio threshold tau^4 = (7 + 3*sqrt(5))/2 is
only ever used through the sign of the quadratic x^2 - 7x + 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .series import Vec, primitive_part
from .scattering import (
    ScatteringDiagram,
    change_of_lattice,
    initial_diagram,
    ks_complete,
    log_coefficient,
    ray_spectrum,
)
from .staircase import fib

# Lattice generators of the reference model; the cross-check transports the
# standard-lattice computation along them.
M1: Vec = (-1, -3)
M2: Vec = (1, 0)


def curve_index(d: int, p: int, q: int) -> int:
    """Expected real dimension 2*(3d - p - q) of the constrained moduli space."""
    if d < 1 or p < 1 or q < 1:
        raise ValueError("inputs must be positive")
    return 2 * (3 * d - p - q)


def double_point_count(d: int, p: int, q: int) -> Fraction:
    """((d-1)(d-2) - (p-1)(q-1)) / 2 for a rational plane curve of degree d.

    Realizable parameters require a nonnegative integer; the caller interprets
    anything else as non-realizability.
    """
    if d < 1 or p < 1 or q < 1:
        raise ValueError("inputs must be positive")
    return Fraction((d - 1) * (d - 2) - (p - 1) * (q - 1), 2)


def unicuspidal_families(d_max: int) -> List[Tuple[str, int, int, int]]:
    """All members (tag, d, p, q) of the six classified families with d <= d_max."""
    if d_max < 3:
        raise ValueError("d_max must be at least 3")
    out: List[Tuple[str, int, int, int]] = []
    for d in range(3, d_max + 1):
        out.append(("a", d, d, d - 1))
    for d in range(4, d_max + 1, 2):
        out.append(("b", d, 2 * d - 1, d // 2))
    k = 1
    while fib(2 * k + 3) * fib(2 * k + 1) <= d_max:
        out.append(
            ("c", fib(2 * k + 3) * fib(2 * k + 1), fib(2 * k + 3) ** 2, fib(2 * k + 1) ** 2)
        )
        k += 1
    k = 1
    while fib(2 * k + 3) <= d_max:
        out.append(("d", fib(2 * k + 3), fib(2 * k + 5), fib(2 * k + 1)))
        k += 1
    if d_max >= 8:
        out.append(("e", 8, 22, 3))
    if d_max >= 16:
        out.append(("f", 16, 43, 6))
    return out


def diophantine_value(p: int, q: int) -> int:
    """p^2 + q^2 - 7pq + 9; nonnegative exactly on realizable coprime parameters."""
    if p < 1 or q < 1:
        raise ValueError("inputs must be positive")
    return p * p + q * q - 7 * p * q + 9


def exceeds_tau4(p: int, q: int) -> bool:
    """Exact test p/q > tau^4, via the larger root of x^2 - 7x + 1."""
    if p < 1 or q < 1:
        raise ValueError("inputs must be positive")
    return p * p + q * q - 7 * p * q > 0 and 2 * p > 7 * q


def fraction_exceeds_tau4(x: Fraction) -> bool:
    if x <= 0:
        return False
    return exceeds_tau4(x.numerator, x.denominator)


FIBONACCI_OUTER = "fibonacci_outer"
SUPERCRITICAL = "supercritical"
NOT_REALIZABLE = "not_realizable"


@dataclass(frozen=True)
class Classification:
    p: int
    q: int
    verdict: str
    fibonacci_index: Optional[int]
    diophantine: int
    divisible_by_three: bool
    coprime: bool

    def realizable(self) -> bool:
        return self.verdict != NOT_REALIZABLE

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "verdict": self.verdict,
            "fibonacci_index": self.fibonacci_index,
            "diophantine": self.diophantine,
            "divisible_by_three": self.divisible_by_three,
            "coprime": self.coprime,
        }


def fibonacci_outer_index(p: int, q: int) -> Optional[int]:
    """k >= -1 with (p, q) = (fib(2k+5), fib(2k+1)), or None."""
    k = -1
    while True:
        fp = fib(2 * k + 5)
        if fp > p:
            return None
        if fp == p and fib(2 * k + 1) == q:
            return k
        k += 1


def classify_pair(p: int, q: int) -> Classification:
    """Realizability verdict for a coprime pair p >= q >= 1.

    The divisibility of p + q by 3 is reported but not enforced: the verdict
    follows the ratio test alone.
    """
    if q < 1 or p < q:
        raise ValueError("need p >= q >= 1")
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) is not coprime")
    k = fibonacci_outer_index(p, q)
    if k is not None:
        verdict = FIBONACCI_OUTER
    elif exceeds_tau4(p, q):
        verdict = SUPERCRITICAL
    else:
        verdict = NOT_REALIZABLE
    return Classification(
        p=p,
        q=q,
        verdict=verdict,
        fibonacci_index=k,
        diophantine=diophantine_value(p, q),
        divisible_by_three=(p + q) % 3 == 0,
        coprime=True,
    )


# ---------------------------------------------------------------------------
# cusp-parameter symmetries


def phi_map(p: int, q: int) -> Tuple[int, int]:
    """First mutation symmetry on cusp parameters; an involution.

    A single zero coordinate is allowed: the boundary classes (p, 0) are the
    smooth-point tangency data and the maps exchange them with honest pairs.
    """
    if p < 0 or q < 0 or (p, q) == (0, 0):
        raise ValueError("inputs must be nonnegative and not both zero")
    if 7 * p >= q:
        return (p, 7 * p - q)
    r = q - 7 * p
    return (r, p + 7 * r)


def psi_map(p: int, q: int) -> Tuple[int, int]:
    """Second mutation symmetry on cusp parameters; an involution."""
    if p < 0 or q < 0 or (p, q) == (0, 0):
        raise ValueError("inputs must be nonnegative and not both zero")
    if p >= 7 * q:
        return (q + 7 * (p - 7 * q), p - 7 * q)
    return (7 * q - p, q)


def shift_s(x: Fraction) -> Fraction:
    """The shift symmetry S(x) = 7 - 1/x of the realizable ratio set."""
    if x == 0:
        raise ValueError("S has a pole at 0")
    return 7 - 1 / Fraction(x)


def reflect_r(x: Fraction) -> Fraction:
    """The reflection symmetry R(x) = 7 + 1/(x - 7); an involution fixing 8."""
    x = Fraction(x)
    if x == 7:
        raise ValueError("R has a pole at 7")
    return 7 + 1 / (x - 7)


def shift_decomposition_index(x: Fraction) -> int:
    """The unique i >= 0 with x in S^i([7, oo)), for rational x > tau^4.

    Computed by iterating the inverse shift x -> 1/(7 - x) until reaching
    [7, oo); terminates for every rational above the fixed point.
    """
    x = Fraction(x)
    if not fraction_exceeds_tau4(x):
        raise ValueError(f"{x} is not above tau^4")
    i = 0
    while x < 7:
        x = 1 / (7 - x)
        i += 1
    return i


# ---------------------------------------------------------------------------
# embedding bounds and the degeneration inequality


def obstruction_lower_bound(p: int, q: int, area: Fraction) -> Fraction:
    """Lower bound p*q/area for the stabilized embedding function at (p, q)."""
    if p < 1 or q < 1:
        raise ValueError("inputs must be positive")
    area = Fraction(area)
    if area == 0:
        raise ZeroDivisionError("area must be nonzero")
    return Fraction(p * q) / area


def inflation_upper_bound(
    p: int, q: int, self_intersection: int, c: Fraction
) -> Optional[Fraction]:
    """The bound c when the class satisfies self_intersection >= p*q, else None."""
    if p < 1 or q < 1:
        raise ValueError("inputs must be positive")
    if self_intersection >= p * q:
        return Fraction(c)
    return None


def visible_area(r: Fraction, p: int, q: int) -> Fraction:
    """Area r*p*q of the visible curve over a slope-(p, q) segment of length scale r."""
    r = Fraction(r)
    if r <= 0 or p < 1 or q < 1:
        raise ValueError("inputs must be positive")
    return r * p * q


def degeneration_admissible(
    target: Tuple[int, int], parts: Sequence[Tuple[int, int]]
) -> Tuple[bool, Optional[Vec]]:
    """Exact check of sum_i min(a1*p_i, a2*q_i) >= min(a1*p, a2*q) for all a > 0.

    Normalizing a = (1, s), the difference is piecewise linear in s, so it
    suffices to test the two asymptotic slopes and every breakpoint
    s in {p_i/q_i} u {p/q}.  Returns (admissible, witness): on failure the
    witness is a primitive integer vector a with the inequality violated.
    """
    p, q = target
    if p < 1 or q < 1 or not parts:
        raise ValueError("need a positive target and a nonempty parts list")
    for pi, qi in parts:
        if pi < 1 or qi < 1:
            raise ValueError("parts must be positive")

    def deficit(s: Fraction) -> Fraction:
        total = sum(min(Fraction(pi), s * qi) for pi, qi in parts)
        return total - min(Fraction(p), s * q)

    def witness(s: Fraction) -> Vec:
        a1, a2 = s.denominator, s.numerator
        g = math.gcd(a1, a2)
        return (a1 // g, a2 // g)

    # s -> 0+: deficit ~ s * (sum q_i - q); s -> oo: deficit -> sum p_i - p.
    breakpoints = sorted({Fraction(pi, qi) for pi, qi in parts} | {Fraction(p, q)})
    if sum(qi for _, qi in parts) < q:
        s = breakpoints[0] / 2
        return (False, witness(s))
    if sum(pi for pi, _ in parts) < p:
        s = breakpoints[-1] * 2
        return (False, witness(s))
    for s in breakpoints:
        if deficit(s) < 0:
            return (False, witness(s))
    return (True, None)


# ---------------------------------------------------------------------------
# the scattering cross-check
#
# Dictionary between coprime cusp pairs and standard-lattice scattering rays.
# A coprime pair (p, q) with p >= q corresponds to the monomial
# z^w, w = (-(p+q)/3, q - 2p), in the diagram seeded along M1, M2; pulled back
# to the standard lattice this is the ray (a, b) = ((2p-q)/3, (p-2q)/3), and
# the mirror order (q, p) lands on the swapped ray (b, a).  The map is fixed
# by three facts checked in the test suite: the two seed rays carry the basic
# exceptional pairs (2, 1) and (1, 2); integrality holds exactly when
# 3 | (p + q); and the staircase pairs (fib(2k+5), fib(2k+1)) land on the
# discrete Fibonacci fan of the completed diagram.  A pair is detected when
# the log of the consolidated label on its ray has a nonzero z^(a,b)
# coefficient, and detectable at truncation K once a + b = p - q < K.


def pair_to_ray(p: int, q: int) -> Optional[Vec]:
    """Standard-lattice ray detecting the sorted coprime pair (p, q), or None
    when the pair is invisible to this lattice (3 does not divide p + q)."""
    if q < 1 or p < q:
        raise ValueError("need p >= q >= 1")
    if (p + q) % 3:
        return None
    a, b = (2 * p - q) // 3, (p - 2 * q) // 3
    if b < 0:
        return None
    return (a, b)


def ray_to_pair(a: int, b: int) -> Optional[Tuple[int, int]]:
    """Sorted coprime pair carried by the standard ray (a, b), or None.

    Rays with slope strictly between 1/2 and 2 carry no coprime pair, and
    rays whose nominal pair is non-coprime (3 | a + b) carry only multiple
    data; both give None.
    """
    if a < 0 or b < 0 or (a, b) == (0, 0):
        raise ValueError("need a nonzero ray in the closed first quadrant")
    if math.gcd(a, b) != 1:
        return None
    if a >= 2 * b:
        p, q = 2 * a - b, a - 2 * b
    elif b >= 2 * a:
        p, q = 2 * b - a, b - 2 * a
    else:
        return None
    if q < 1 or math.gcd(p, q) != 1:
        return None
    return (p, q)


@dataclass(frozen=True)
class CrossCheckRow:
    p: int
    q: int
    rays: Tuple[Vec, ...]
    native_rays: Tuple[Vec, ...]
    grade: int
    detected: bool
    log_coefficient: Fraction
    classification: Classification

    def consistent(self) -> bool:
        return self.detected == self.classification.realizable()


@dataclass(frozen=True)
class CrossCheckReport:
    order: int
    rows: Tuple[CrossCheckRow, ...]
    agreement: bool
    native_spectrum: Tuple[Tuple[Vec, int, Fraction], ...]

    def reachable_pairs(self) -> List[Tuple[int, int]]:
        return sorted((r.p, r.q) for r in self.rows)

    def detected_pairs(self) -> List[Tuple[int, int]]:
        return sorted((r.p, r.q) for r in self.rows if r.detected)

    def expected_pairs(self) -> List[Tuple[int, int]]:
        return sorted((r.p, r.q) for r in self.rows if r.classification.realizable())

    def mismatches(self) -> List[Tuple[int, int]]:
        return sorted((r.p, r.q) for r in self.rows if not r.consistent())

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "agreement": self.agreement,
            "reachable": [list(p) for p in self.reachable_pairs()],
            "detected": [list(p) for p in self.detected_pairs()],
            "expected": [list(p) for p in self.expected_pairs()],
            "mismatches": [list(p) for p in self.mismatches()],
            "rows": [
                {
                    "p": r.p,
                    "q": r.q,
                    "rays": [list(v) for v in r.rays],
                    "native_rays": [list(v) for v in r.native_rays],
                    "grade": r.grade,
                    "detected": r.detected,
                    "log_coefficient": str(r.log_coefficient),
                    "classification": r.classification.to_json(),
                }
                for r in self.rows
            ],
            "native_spectrum": [
                {"dir": list(d), "order": o, "coeff": str(c)}
                for d, o, c in self.native_spectrum
            ],
        }

    def json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"

    def to_table(self) -> str:
        lines = [
            f"cross-check at truncation order {self.order}",
            f"{'pair':>10}  {'ray':>8}  {'grade':>5}  {'coeff':>8}  {'detected':>8}  verdict",
        ]
        for r in sorted(self.rows, key=lambda r: (r.grade, r.p, r.q)):
            ray = f"({r.rays[0][0]},{r.rays[0][1]})"
            verdict = r.classification.verdict
            if r.classification.fibonacci_index is not None:
                verdict += f"(k={r.classification.fibonacci_index})"
            mark = "" if r.consistent() else "   <-- MISMATCH"
            lines.append(
                f"({r.p:>3},{r.q:>3})  {ray:>8}  {r.grade:>5}  {str(r.log_coefficient):>8}  "
                f"{str(r.detected):>8}  {verdict}{mark}"
            )
        lines.append(f"agreement: {self.agreement}")
        return "\n".join(lines) + "\n"


def scattering_cross_check(
    order: int,
    term_cap: Optional[int] = 500_000,
    classifier: Callable[[int, int], Classification] = classify_pair,
    diagram: Optional[ScatteringDiagram] = None,
) -> CrossCheckReport:
    """Cross-verify the Diophantine classification against wall detection.

    Completes the thrice-weighted standard seed diagram at the given order,
    transports it along (M1, M2), and compares, over every coprime pair
    reachable below the truncation, scattering detection against the
    classifier's verdict.
    """
    if order < 3:
        raise ValueError("order must be at least 3")
    if diagram is None:
        diagram = ks_complete(initial_diagram([((1, 0), 3), ((0, 1), 3)], order), term_cap)
    native = change_of_lattice(diagram, M1, M2)

    by_pair: Dict[Tuple[int, int], List[Vec]] = {}
    for s in range(1, order):
        for a in range(0, s + 1):
            b = s - a
            if math.gcd(a, b) != 1:
                continue
            pair = ray_to_pair(a, b)
            if pair is None:
                continue
            by_pair.setdefault(pair, []).append((a, b))

    rows = []
    for (p, q), rays in sorted(by_pair.items()):
        coeffs = [log_coefficient(diagram, ray, 1) for ray in rays]
        nonzero = [c for c in coeffs if c != 0]
        if nonzero and len(set(nonzero)) != 1:
            raise RuntimeError(f"mirror rays of pair ({p},{q}) disagree: {coeffs}")
        native_rays = tuple(
            primitive_part((r[0] * M1[0] + r[1] * M2[0], r[0] * M1[1] + r[1] * M2[1]))[0]
            for r in rays
        )
        rows.append(
            CrossCheckRow(
                p=p,
                q=q,
                rays=tuple(rays),
                native_rays=native_rays,
                grade=rays[0][0] + rays[0][1],
                detected=bool(nonzero),
                log_coefficient=nonzero[0] if nonzero else Fraction(0),
                classification=classifier(p, q),
            )
        )
    agreement = all(r.consistent() for r in rows)
    return CrossCheckReport(
        order=order,
        rows=tuple(rows),
        agreement=agreement,
        native_spectrum=tuple(ray_spectrum(native)),
    )
