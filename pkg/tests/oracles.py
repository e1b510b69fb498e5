"""Brute-force counters used as independent oracles.

Nothing here imports the library's enumerators: each count is computed
from first principles over plain integers.
"""

import itertools


def count_bijections(n: int) -> int:
    return sum(1 for p in itertools.product(range(n), repeat=n) if len(set(p)) == n)


def count_functions(n: int, m: int) -> int:
    """Functions from an m-element set to an n-element set."""
    return sum(1 for _ in itertools.product(range(n), repeat=m))


def linearity_ok(phi, src_tags, tgt_tags) -> bool:
    """Each linear source position is hit exactly once, from a linear target."""
    for i, tag in enumerate(src_tags):
        if tag != "L":
            continue
        pre = [j for j, k in enumerate(phi) if k == i]
        if len(pre) != 1 or tgt_tags[pre[0]] != "L":
            return False
    return True


def q_hom_count(src_tags, tgt_tags) -> int:
    n, m = len(src_tags), len(tgt_tags)
    return sum(1 for phi in itertools.product(range(n), repeat=m) if linearity_ok(phi, src_tags, tgt_tags))


def tag_vectors(n: int):
    return list(itertools.product("LN", repeat=n))


def monotone_maps(n: int, m: int) -> int:
    """Monotone maps from the n-chain to the m-chain (functors between chains)."""
    return sum(1 for f in itertools.product(range(m), repeat=n) if all(f[i] <= f[i + 1] for i in range(n - 1)))
