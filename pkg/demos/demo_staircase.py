"""The ellipsoid-into-ball embedding function and its stabilization.

Below the accumulation point tau^4 = (7 + 3*sqrt(5))/2 the function is an
infinite staircase with corners at ratios of Fibonacci numbers; beyond it the
stabilized function is the rational curve 3a/(a+1), which touches the
staircase exactly at its outer corners.
"""

from fractions import Fraction

from scatstair import (
    ball_embedding_value,
    fib,
    folding_bound,
    inner_corner,
    obstruction_sup,
    outer_corner,
    stabilized_value,
    step_height,
    weight_sequence,
)
from scatstair.staircase import staircase_samples, samples_to_csv

print("first staircase corners (outer corner, step height, next inner corner):")
for k in range(-1, 4):
    print(f"  k={k}: {outer_corner(k)} -> {step_height(k)} -> {inner_corner(k + 1)}")

print("\npoint values:")
for a in (Fraction(4), Fraction(5), Fraction(13, 2), Fraction(7), Fraction(8), Fraction(9)):
    print(
        f"  a={a}: ball={ball_embedding_value(a)}, "
        f"stabilized={stabilized_value(a)}, folding={folding_bound(a)}"
    )

print("\nweight sequence of 17/5:", [str(w) for w in weight_sequence(17, 5).weights])

print("\nsharp obstruction at a = 5 comes from the quintuple-point conic class:")
value, cls = obstruction_sup(5, 1, 3)
print(f"  value {value} via degree {cls.degree} with multiplicities {cls.multiplicities}")

print("\ncorner contact: stabilized == folding at outer corners")
for k in range(0, 5):
    a = outer_corner(k)
    print(f"  k={k}: both equal {stabilized_value(a)} at a = {a}")

rows = staircase_samples(Fraction(1), Fraction(9), 9)
print("\nsampled CSV preview:")
print("\n".join(samples_to_csv(rows).splitlines()[:5]))
