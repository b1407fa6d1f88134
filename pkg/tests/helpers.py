"""Shared builders for the code instances the suites keep coming back to."""

from picodes import FamilySpec, PolyIdealCode, build_code


def rs_code(p=29, n=16, k=4, points=None) -> PolyIdealCode:
    return build_code(FamilySpec("rs", p=p, n=n, s=1, k=k, points=points))


def frs_code(p=29, n=8, s=2, k=4, gamma=2, points=None) -> PolyIdealCode:
    return build_code(FamilySpec("frs", p=p, n=n, s=s, k=k, gamma=gamma, points=points))


def additive_code(p=29, n=8, s=2, k=4, beta=1, points=None) -> PolyIdealCode:
    return build_code(
        FamilySpec("additive_frs", p=p, n=n, s=s, k=k, beta=beta, points=points)
    )


def mult_code(p=29, n=8, s=2, k=4, points=None) -> PolyIdealCode:
    return build_code(FamilySpec("mult", p=p, n=n, s=s, k=k, points=points))


def affine_code(p=29, n=4, s=4, k=4, alpha=12, beta=1, points=None) -> PolyIdealCode:
    # default alpha=12 has order 4 mod 29, so the orbit fills a full modulus
    return build_code(
        FamilySpec("affine_frs", p=p, n=n, s=s, k=k, alpha=alpha, beta=beta, points=points)
    )


def random_message(rng, p: int, k: int) -> list[int]:
    return [rng.next_below(p) for _ in range(k)]


def pad_tuple(f, k: int) -> tuple:
    """Fixed-width coefficient tuple for set comparisons across list decoders."""
    return tuple(list(f) + [0] * (k - len(f)))
