"""Interpolation list decoding on a folded code, checked against brute force.

Encodes a message, plants symbol errors at the edge of the decoding
radius, and prints every codeword the decoder returns.  A final section
decodes a uniformly random word, where the list usually holds more than
one candidate, and compares against exhaustive search over all 29^4
messages.
"""

import numpy as np

from picodes import (
    FamilySpec,
    brute_force_list,
    build_code,
    hamming_agreement,
    johnson_params,
    list_decode_johnson,
)
from picodes.rng import SplitMix64


def show(word):
    return "  ".join("(" + ",".join(str(x) for x in row) + ")" for row in word)


def main():
    code = build_code(FamilySpec(family="frs", p=29, n=8, s=2, k=4, gamma=2))
    params = johnson_params(code, r=2)
    print(f"code: n={code.n} blocks of s={code.s} symbols over F_29, "
          f"k={code.k}, rate {code.rate:.3f}")
    print(f"decoder: multiplicity r={params.r}, interpolation degree "
          f"D={params.D}, keeps candidates agreeing on >= {params.t_min} blocks")
    budget = code.n - params.t_min
    print(f"error budget: {budget} of {code.n} blocks\n")

    rng = SplitMix64(2024)
    msg = [5, 0, 17, 3]
    word = code.encode(msg)
    print("message", msg)
    print("sent    ", show(word))
    for i in rng.sample(code.n, budget):
        word[i, rng.next_below(code.s)] += 1 + rng.next_below(28)
        word[i] %= 29
    print("received", show(word), f"({budget} corrupted blocks)\n")

    cands = list_decode_johnson(code, word, params)
    print(f"decoder returned {len(cands)} candidate(s):")
    for f in cands:
        agree = hamming_agreement(code.encode(list(f) + [0] * (4 - len(f))), word)
        print(f"  {list(f)}  agrees on {agree}/{code.n} blocks")

    print("\nrandom word (not near any codeword):")
    word = np.array([[rng.next_below(29) for _ in range(code.s)]
                     for _ in range(code.n)])
    cands = {tuple(f) + (0,) * (4 - len(f)) for f in
             list_decode_johnson(code, word, params)}
    oracle = {f for f, _ in brute_force_list(code, word, params.t_min)}
    print(f"  decoder list size {len(cands)}, exhaustive search list size "
          f"{len(oracle)}, equal: {cands == oracle}")


if __name__ == "__main__":
    main()
