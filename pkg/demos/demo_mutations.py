"""Mutation calculus on edge-blowup data.

The reference model ((-1,-3), (1,0)) is equivalent to its double mutations
but not to either single mutation; iterating the induced parameter
symmetries from the two seed pairs sweeps out exactly the staircase pairs.
"""

from scatstair import (
    ToricModel,
    gl2z_equivalent,
    mutate,
    mutation_orbit,
    phi_map,
    psi_map,
    w_t0,
    w_t0_inverse,
)
from scatstair.toric import apply_word, format_model

T0 = ToricModel(((-1, -3), (1, 0)))
print("reference model:", format_model(T0))
print("mutate 1:", format_model(mutate(T0, 1)))
print("mutate 1 then 2:", format_model(apply_word(T0, [1, 2])))
print("equivalent to original via", gl2z_equivalent(T0, apply_word(T0, [1, 2])))
print("single mutation equivalent?", gl2z_equivalent(T0, mutate(T0, 1)))

print("\norbit to depth 3 (classes up to unordered GL(2,Z)):")
for node in mutation_orbit(T0, 3):
    word = ",".join(map(str, node.word)) or "-"
    print(f"  word {word}: {format_model(node.model)}")

print("\nfan-ray map of the reference model:")
for pair in [(2, 1), (1, 2), (1, 1), (5, 1)]:
    print(f"  {pair} -> {w_t0(*pair)}")
print("inverse of (-1, 0):", w_t0_inverse((-1, 0)))

print("\nalternating parameter symmetries from the two seeds:")
for seed in ((2, 1), (1, 2)):
    pair, chain = seed, [seed]
    for step in range(4):
        pair = phi_map(*pair) if step % 2 == 0 else psi_map(*pair)
        chain.append(pair)
    print(f"  {seed}: {chain}")
