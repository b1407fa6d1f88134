"""A rate-1/2 folded code corrected past the Johnson radius.

At rate R the interpolation decoder cannot certify more than a
1 - sqrt(R) fraction of errors no matter how high its multiplicity.
The operator-composition decoder sidesteps that bound: it never forms
a bivariate interpolant, only a linear system whose solution space is
guaranteed to stay small.  This script builds a 10-block code where the
crossover is visible, plants one error more than any Johnson setting
tolerates, and recovers the message.
"""

import math

from picodes import (
    FamilySpec,
    build_code,
    build_scheme,
    johnson_params,
    list_decode_capacity,
)
from picodes.harness import _capacity_contains
from picodes.rng import SplitMix64

P, N, S, K, M = 769, 10, 64, 320, 8


def main():
    # gamma=11 generates the whole multiplicative group mod 769, so its
    # orbits are 64-long windows in one 768-cycle; these ten starting
    # points make the windows pairwise disjoint
    points = tuple(pow(11, 64 * i, P) for i in range(N))
    code = build_code(FamilySpec(family="frs", p=P, n=N, s=S, k=K,
                                 gamma=11, points=points))
    print(f"code: n={N} blocks of s={S} symbols over F_{P}, k={K}, "
          f"rate {code.rate:.2f}\n")

    print("interpolation decoder, increasing multiplicity:")
    for r in (2, 4, 8, 32):
        jp = johnson_params(code, r=r)
        print(f"  r={r:>2}: threshold {jp.t_min} -> corrects {N - jp.t_min}")
    radius = math.floor(N * (1 - math.sqrt(K / (S * N))))
    print(f"  limit at rate 1/2: floor(10(1 - sqrt(1/2))) = {radius} errors\n")

    scheme = build_scheme(code, M)
    budget = N - scheme.t_min
    print(f"composition decoder, m={M} combined operators:")
    print(f"  tracking rows r={scheme.r}, degree D={scheme.D}, "
          f"threshold {scheme.t_min} -> corrects {budget}\n")

    rng = SplitMix64(99)
    msg = [rng.next_below(P) for _ in range(K)]
    word = code.encode(msg)
    for i in rng.sample(N, budget):
        word[i, rng.next_below(S)] += 1 + rng.next_below(P - 1)
        word[i] %= P
    print(f"planted {budget} block errors (one past the Johnson limit)")

    res = list_decode_capacity(code, scheme, word, enumeration_cap=0)
    ok = _capacity_contains(res, msg, P)
    print(f"solution space dimension: {res.dimension} (guaranteed <= {M - 1})")
    print(f"transmitted message inside the solution space: {ok}")


if __name__ == "__main__":
    main()
